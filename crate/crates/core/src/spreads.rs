//! Line spreads of PG(2N-1, 2) and the correspondence with PG(N-1, 4).
//!
//! The Desarguesian spread is built by field reduction: every point `<v>` of
//! PG(N-1, 4) becomes the GF(2) line `{v, w*v, w^2*v}` read in GF(2)^{2N}.

use std::collections::BTreeMap;

use crate::error::{parameter, GeometryError, Result};
use crate::galois::{field_lift, field_reduce, Gf2Matrix, Gf4};
use crate::projgeom::{enumerate_points, Gf2Subspace, Gf4Point, Gf4Subspace, Point, Subspace};

/// Qubit counts accepted by the spread constructions.
pub const SPREAD_N_RANGE: std::ops::RangeInclusive<usize> = 2..=6;

/// Whether PG(d, q) admits a t-spread, i.e. `(t + 1) | (d + 1)`.
pub fn spread_admissible(d: usize, t: usize) -> bool {
    (d + 1).is_multiple_of(t + 1)
}

/// A set of pairwise disjoint lines covering every point of PG(2N-1, 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spread {
    n: usize,
    lines: Vec<Gf2Subspace>,
}

impl Spread {
    /// Validates `lines` as a line spread of PG(2n-1, 2).
    pub fn new(n: usize, lines: Vec<Gf2Subspace>) -> Result<Self> {
        if n == 0 || 2 * n > 32 {
            return Err(parameter(format!("half-dimension {n} out of range")));
        }
        if !is_spread(&lines, 2 * n - 1) {
            return Err(GeometryError::Structure(format!(
                "{} lines do not partition the points of PG({},2)",
                lines.len(),
                2 * n - 1
            )));
        }
        Ok(Spread { n, lines })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Length of the ambient GF(2) vectors, `2N`.
    pub fn ambient(&self) -> usize {
        2 * self.n
    }

    pub fn lines(&self) -> &[Gf2Subspace] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// For every packed point value, the index of the spread line through it.
    /// Entry 0 (the zero vector) is `usize::MAX`.
    pub fn line_index_table(&self) -> Vec<usize> {
        let mut table = vec![usize::MAX; 1 << self.ambient()];
        for (i, line) in self.lines.iter().enumerate() {
            for p in line.points() {
                table[p.vector().bits() as usize] = i;
            }
        }
        table
    }

    /// The image spread under an invertible linear map.
    pub fn transform(&self, map: &Gf2Matrix) -> Result<Spread> {
        if !map.is_invertible() {
            return Err(parameter("spread transport needs an invertible map"));
        }
        let lines = self.lines.iter().map(|l| l.image(map)).collect::<Result<Vec<_>>>()?;
        Spread::new(self.n, lines)
    }
}

/// The Desarguesian line spread of PG(2N-1, 2), one line per point of
/// PG(N-1, 4) in point order.
pub fn desarguesian_line_spread(n: usize) -> Result<Spread> {
    if !SPREAD_N_RANGE.contains(&n) {
        return Err(parameter(format!("N = {n} is outside 2..=6")));
    }
    let lines = enumerate_points::<Gf4>(n - 1)?
        .into_iter()
        .map(|p| {
            let v = p.vector();
            Subspace::span(2 * n, &[field_reduce(&v), field_reduce(&v.scale(Gf4::OMEGA))])
        })
        .collect::<Result<Vec<_>>>()?;
    Spread::new(n, lines)
}

/// True iff `candidates` are lines of PG(d, 2) that are pairwise disjoint and
/// cover every point.
pub fn is_spread(candidates: &[Gf2Subspace], d: usize) -> bool {
    let len = d + 1;
    if len > 24 {
        return false;
    }
    if candidates.iter().any(|l| l.ambient() != len || l.rank() != 2) {
        return false;
    }
    let mut hits = vec![0u8; 1 << len];
    for line in candidates {
        for p in line.points() {
            let slot = &mut hits[p.vector().bits() as usize];
            if *slot > 0 {
                return false;
            }
            *slot = 1;
        }
    }
    hits[1..].iter().all(|&h| h == 1)
}

/// First pair of spread lines (by index) whose span is not partitioned by
/// the spread lines it contains, if any.
pub fn non_geometric_pair(s: &Spread) -> Option<(usize, usize)> {
    let table = s.line_index_table();
    let lines = s.lines();
    let mut hits: BTreeMap<usize, u8> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let solid = lines[i].join(&lines[j]).expect("same ambient");
            let points = solid.points();
            hits.clear();
            for p in &points {
                *hits.entry(table[p.vector().bits() as usize]).or_default() += 1;
            }
            // every spread line met by the solid must lie inside it, and there are 5 of them
            let partitioned = points.len() == 15 && hits.len() == 5 && hits.values().all(|&c| c == 3);
            if !partitioned {
                return Some((i, j));
            }
        }
    }
    None
}

/// Whether the spread induces a line spread on the solid spanned by every pair
/// of its lines.
pub fn is_geometric(s: &Spread) -> bool {
    non_geometric_pair(s).is_none()
}

/// The incidence structure of PG(N-1, 4) read off a geometric line spread:
/// spread lines are its points and solids spanned by two spread lines are its
/// lines.
#[derive(Clone, Debug)]
pub struct SegreModel {
    spread: Spread,
    points: Vec<Gf4Point>,
    solids: Vec<(Gf2Subspace, Gf4Subspace)>,
}

/// Builds the correspondence for a Desarguesian spread.
///
/// Each spread line is sent to the lift of its smallest point. The call fails
/// if the spread is not geometric or if some line does not lift to a single
/// GF(4) point.
pub fn segre_model(s: &Spread) -> Result<SegreModel> {
    if let Some((i, j)) = non_geometric_pair(s) {
        return Err(GeometryError::Structure(format!(
            "spread is not geometric: lines {i} and {j} span a solid it does not partition"
        )));
    }
    let n = s.n();
    let mut points = Vec::with_capacity(s.len());
    for (i, line) in s.lines().iter().enumerate() {
        let pts = line.points();
        let image = Point::new(field_lift(&pts[0].vector())?)?;
        for p in &pts[1..] {
            if Point::new(field_lift(&p.vector())?)? != image {
                return Err(GeometryError::Structure(format!(
                    "spread line {i} {line} is not a GF(4) point under field reduction"
                )));
            }
        }
        points.push(image);
    }
    let mut solids: BTreeMap<Gf2Subspace, Gf4Subspace> = BTreeMap::new();
    let lines = s.lines();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let solid = lines[i].join(&lines[j])?;
            if let std::collections::btree_map::Entry::Vacant(e) = solids.entry(solid) {
                let image = Subspace::from_points(n, &[points[i], points[j]])?;
                e.insert(image);
            }
        }
    }
    Ok(SegreModel { spread: s.clone(), points, solids: solids.into_iter().collect() })
}

impl SegreModel {
    pub fn spread(&self) -> &Spread {
        &self.spread
    }

    /// Image of the spread line with index `line`.
    pub fn point_of(&self, line: usize) -> Gf4Point {
        self.points[line]
    }

    pub fn points(&self) -> &[Gf4Point] {
        &self.points
    }

    /// Pair-spanned solids with their GF(4) lines, sorted by solid.
    pub fn solids(&self) -> &[(Gf2Subspace, Gf4Subspace)] {
        &self.solids
    }

    /// Image of an arbitrary spread line given as a subspace.
    pub fn image_of_line(&self, line: &Gf2Subspace) -> Option<Gf4Point> {
        self.spread.lines().iter().position(|l| l == line).map(|i| self.points[i])
    }

    /// Whether the point map hits every point of PG(N-1, 4) exactly once.
    pub fn is_point_bijection(&self) -> bool {
        let mut images = self.points.clone();
        images.sort_unstable();
        match enumerate_points::<Gf4>(self.spread.n() - 1) {
            Ok(all) => images == all,
            Err(_) => false,
        }
    }

    /// Whether distinct solids go to distinct lines and every line of
    /// PG(N-1, 4) is hit.
    pub fn is_line_bijection(&self) -> bool {
        let mut images: Vec<&Gf4Subspace> = self.solids.iter().map(|(_, l)| l).collect();
        images.sort_unstable();
        images.dedup();
        images.len() == self.solids.len()
            && images.iter().all(|l| l.rank() == 2)
            && crate::projgeom::line_count(self.spread.n() - 1, 4) == images.len() as u128
    }

    /// First (spread line, solid) pair where containment of the line in the
    /// solid disagrees with incidence of their images.
    pub fn incidence_violation(&self) -> Option<(usize, usize)> {
        for (si, (solid, image)) in self.solids.iter().enumerate() {
            for (li, line) in self.spread.lines().iter().enumerate() {
                if solid.contains_subspace(line) != image.contains_point(&self.points[li]) {
                    return Some((li, si));
                }
            }
        }
        None
    }

    /// The same correspondence carried through an invertible linear map of
    /// GF(2)^{2N}: each spread line and solid is replaced by its image while
    /// keeping its GF(4) label.
    pub fn transported(&self, map: &Gf2Matrix) -> Result<SegreModel> {
        let spread = self.spread.transform(map)?;
        let mut solids = self.solids.iter().map(|(s, l)| Ok((s.image(map)?, l.clone()))).collect::<Result<Vec<_>>>()?;
        solids.sort();
        Ok(SegreModel { spread, points: self.points.clone(), solids })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{Gf2, Gf2Vector, Gf4Vector};
    use crate::projgeom::enumerate_lines;

    #[test]
    fn admissibility() {
        assert!(spread_admissible(7, 1));
        assert!(!spread_admissible(4, 1));
        assert!(spread_admissible(5, 1));
        assert!(spread_admissible(8, 2));
    }

    #[test]
    fn desarguesian_line_counts() {
        for (n, lines) in [(2, 5), (3, 21), (4, 85)] {
            let s = desarguesian_line_spread(n).unwrap();
            assert_eq!(s.len(), lines);
            assert_eq!(3 * s.len(), (1 << (2 * n)) - 1);
        }
        assert!(desarguesian_line_spread(1).is_err());
        assert!(desarguesian_line_spread(7).is_err());
    }

    #[test]
    fn cover_by_brute_force() {
        let s = desarguesian_line_spread(2).unwrap();
        // oracle: every nonzero vector of GF(2)^4 in exactly one line
        for x in 1u32..16 {
            let v = Gf2Vector::from_bits(4, x).unwrap();
            assert_eq!(s.lines().iter().filter(|l| l.contains(&v)).count(), 1);
        }
        for (i, a) in s.lines().iter().enumerate() {
            for b in &s.lines()[i + 1..] {
                assert_eq!(a.intersection(b).unwrap().rank(), 0);
            }
        }
    }

    #[test]
    fn spread_lines_are_gf4_proportional() {
        for n in 2..=4 {
            let s = desarguesian_line_spread(n).unwrap();
            for line in s.lines() {
                let lifted: Vec<Gf4Vector> = line.points().iter().map(|p| field_lift(&p.vector()).unwrap()).collect();
                for v in &lifted[1..] {
                    let ratio = [Gf4::ONE, Gf4::OMEGA, Gf4::OMEGA2].into_iter().find(|&r| lifted[0].scale(r) == *v);
                    assert!(ratio.is_some());
                }
            }
        }
    }

    #[test]
    fn broken_spreads_are_rejected() {
        let s = desarguesian_line_spread(2).unwrap();
        let mut lines = s.lines().to_vec();
        assert!(is_spread(&lines, 3));
        assert!(!is_spread(&lines[..4], 3));
        // replace line 0 by a line meeting line 1
        let p0 = lines[0].points()[0].vector();
        let p1 = lines[1].points()[0].vector();
        lines[0] = Subspace::span(4, &[p0, p1]).unwrap();
        assert!(!is_spread(&lines, 3));
        assert!(Spread::new(2, lines).is_err());
    }

    #[test]
    fn spreads_of_pg32_are_geometric() {
        let s = desarguesian_line_spread(2).unwrap();
        assert!(is_geometric(&s));
        // a different spread: image under a non-GF(4)-linear map
        let cols: Vec<Gf2Vector> =
            [0b0001u32, 0b0011, 0b0111, 0b1111].iter().map(|&b| Gf2Vector::from_bits(4, b).unwrap()).collect();
        let map = Gf2Matrix::from_columns(&cols).unwrap();
        let moved = s.transform(&map).unwrap();
        assert!(is_geometric(&moved));
    }

    #[test]
    fn desarguesian_is_geometric() {
        for n in 2..=4 {
            assert!(is_geometric(&desarguesian_line_spread(n).unwrap()), "N = {n}");
        }
    }

    /// Replaces a regulus inside one solid of the PG(5,2) spread with its
    /// opposite regulus.
    fn derived_spread() -> Vec<Gf2Subspace> {
        let s = desarguesian_line_spread(3).unwrap();
        let lines = s.lines().to_vec();
        let solid = lines[0].join(&lines[1]).unwrap();
        let inside: Vec<usize> = (0..lines.len()).filter(|&i| solid.contains_subspace(&lines[i])).collect();
        assert_eq!(inside.len(), 5);
        let regulus = &inside[..3];
        let transversals: Vec<Gf2Subspace> = enumerate_lines::<Gf2>(5)
            .unwrap()
            .into_iter()
            .filter(|t| solid.contains_subspace(t))
            .filter(|t| regulus.iter().all(|&i| t.intersection(&lines[i]).unwrap().rank() == 1))
            .collect();
        assert_eq!(transversals.len(), 3);
        let mut mutated: Vec<Gf2Subspace> =
            lines.iter().enumerate().filter(|(i, _)| !regulus.contains(i)).map(|(_, l)| l.clone()).collect();
        mutated.extend(transversals);
        mutated
    }

    #[test]
    fn derived_spread_is_not_geometric() {
        let mutated = derived_spread();
        if is_spread(&mutated, 5) {
            let s = Spread::new(3, mutated).unwrap();
            assert!(!is_geometric(&s));
            assert!(segre_model(&s).is_err());
        } else {
            panic!("replacing a regulus by its opposite should keep the cover");
        }
    }

    #[test]
    fn segre_small_cases() {
        let model = segre_model(&desarguesian_line_spread(2).unwrap()).unwrap();
        assert_eq!(model.points().len(), 5);
        assert_eq!(model.solids().len(), 1);
        assert!(model.is_point_bijection());
        assert!(model.is_line_bijection());
        assert_eq!(model.incidence_violation(), None);

        let model = segre_model(&desarguesian_line_spread(3).unwrap()).unwrap();
        assert_eq!(model.solids().len(), 21);
        assert!(model.is_point_bijection());
        assert!(model.is_line_bijection());
        assert_eq!(model.incidence_violation(), None);
    }

    #[test]
    fn segre_rejects_moved_spread() {
        // a generic linear image is still a spread but not GF(4)-aligned
        let s = desarguesian_line_spread(2).unwrap();
        let cols: Vec<Gf2Vector> =
            [0b0001u32, 0b0011, 0b0100, 0b1000].iter().map(|&b| Gf2Vector::from_bits(4, b).unwrap()).collect();
        let moved = s.transform(&Gf2Matrix::from_columns(&cols).unwrap()).unwrap();
        assert!(matches!(segre_model(&moved), Err(GeometryError::Structure(_))));
    }

    #[test]
    fn transported_model_keeps_labels() {
        let model = segre_model(&desarguesian_line_spread(2).unwrap()).unwrap();
        let cols: Vec<Gf2Vector> =
            [0b0001u32, 0b0011, 0b0100, 0b1000].iter().map(|&b| Gf2Vector::from_bits(4, b).unwrap()).collect();
        let map = Gf2Matrix::from_columns(&cols).unwrap();
        let moved = model.transported(&map).unwrap();
        for (i, line) in model.spread().lines().iter().enumerate() {
            let image = line.image(&map).unwrap();
            assert_eq!(moved.image_of_line(&image), Some(model.point_of(i)));
        }
        assert_eq!(moved.incidence_violation(), None);
    }
}
