//! Points and subspaces of PG(d, q) for q in {2, 4}.
//!
//! A subspace is kept as the reduced row-echelon basis of the underlying
//! vector subspace: rows are sorted by pivot (the first nonzero coordinate),
//! each pivot entry is one and every pivot column is zero in the other rows.
//! Equal subspaces therefore have identical bases.

use std::fmt;

use crate::error::{parameter, GeometryError, Result};
use crate::galois::{Field, Gf2, Gf2Matrix, Gf4, Vector};

/// Enumerations refuse to produce more objects than this.
pub const ENUMERATION_BUDGET: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldOrder {
    Two,
    Four,
}

impl FieldOrder {
    pub fn order(self) -> u32 {
        match self {
            FieldOrder::Two => Gf2::ORDER,
            FieldOrder::Four => Gf4::ORDER,
        }
    }
}

impl TryFrom<u32> for FieldOrder {
    type Error = GeometryError;

    fn try_from(q: u32) -> Result<Self> {
        match q {
            2 => Ok(FieldOrder::Two),
            4 => Ok(FieldOrder::Four),
            other => Err(parameter(format!("unsupported field order {other}; expected 2 or 4"))),
        }
    }
}

/// Number of points of PG(d, q), i.e. `(q^{d+1} - 1) / (q - 1)`.
pub fn point_count(d: usize, q: u32) -> u128 {
    let q = q as u128;
    (q.pow(d as u32 + 1) - 1) / (q - 1)
}

/// Number of lines of PG(d, q).
pub fn line_count(d: usize, q: u32) -> u128 {
    let p = point_count(d, q);
    let q = q as u128;
    p * (p - 1) / (q * (q + 1))
}

fn check_budget(requested: u128) -> Result<()> {
    if requested > ENUMERATION_BUDGET {
        Err(GeometryError::Budget { requested, limit: ENUMERATION_BUDGET })
    } else {
        Ok(())
    }
}

fn check_ambient<F: Field>(d: usize) -> Result<()> {
    if d < 1 {
        return Err(parameter("projective dimension must be at least 1"));
    }
    if d + 1 > Vector::<F>::MAX_LEN {
        return Err(parameter(format!(
            "PG({d},{}) needs {} coordinates; at most {} are supported",
            F::ORDER,
            d + 1,
            Vector::<F>::MAX_LEN
        )));
    }
    Ok(())
}

/// A point of PG(d, q), held by its canonical representative: the nonzero
/// vector scaled so that its first nonzero coordinate is one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point<F>(Vector<F>);

pub type Gf2Point = Point<Gf2>;
pub type Gf4Point = Point<Gf4>;

impl<F: Field> Point<F> {
    pub fn new(v: Vector<F>) -> Result<Self> {
        if v.is_zero() {
            return Err(parameter("the zero vector is not a projective point"));
        }
        Ok(Point(v.normalized()))
    }

    pub fn vector(&self) -> Vector<F> {
        self.0
    }

    /// Coordinate count, i.e. `d + 1` for a point of PG(d, q).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl<F: Field> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl<F: Field> fmt::Debug for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point{}", self.0)
    }
}

/// All points of PG(d, q), ordered by the packed value of their canonical vector.
pub fn enumerate_points<F: Field>(d: usize) -> Result<Vec<Point<F>>> {
    check_ambient::<F>(d)?;
    check_budget(point_count(d, F::ORDER))?;
    Ok(Vector::<F>::all(d + 1).filter(|v| !v.is_zero() && v.normalized() == *v).map(Point).collect())
}

/// All lines of PG(d, q), each once, sorted by canonical basis.
pub fn enumerate_lines<F: Field>(d: usize) -> Result<Vec<Subspace<F>>> {
    check_ambient::<F>(d)?;
    check_budget(line_count(d, F::ORDER))?;
    let points = enumerate_points::<F>(d)?;
    let table = 1usize << ((d as u32 + 1) * F::BITS);
    let mut lines = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let mut covered = vec![false; table];
        for r in &points[i + 1..] {
            if covered[r.0.bits() as usize] {
                continue;
            }
            let line = Subspace::span(d + 1, &[p.0, r.0])?;
            let on_line = line.points();
            for x in &on_line {
                covered[x.0.bits() as usize] = true;
            }
            if on_line[0] == *p {
                lines.push(line);
            }
        }
    }
    lines.sort();
    Ok(lines)
}

/// A linear subspace of F^n, seen projectively as a subspace of PG(n-1, q).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace<F> {
    ambient: u8,
    rows: Vec<Vector<F>>,
}

pub type Gf2Subspace = Subspace<Gf2>;
pub type Gf4Subspace = Subspace<Gf4>;

impl<F: Field> Subspace<F> {
    /// The zero subspace (projective dimension -1) of F^n.
    pub fn zero(ambient: usize) -> Self {
        assert!(ambient <= Vector::<F>::MAX_LEN);
        Subspace { ambient: ambient as u8, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient: ambient as u8, rows: (0..ambient).map(|i| Vector::unit(ambient, i)).collect() }
    }

    /// Linear closure of `generators` inside F^ambient.
    pub fn span(ambient: usize, generators: &[Vector<F>]) -> Result<Self> {
        if ambient > Vector::<F>::MAX_LEN {
            return Err(parameter(format!("ambient length {ambient} is not supported")));
        }
        let mut s = Subspace::zero(ambient);
        for g in generators {
            if g.len() != ambient {
                return Err(GeometryError::Dimension {
                    expected: format!("vectors of length {ambient}"),
                    actual: g.len(),
                });
            }
            s.insert(*g);
        }
        Ok(s)
    }

    pub fn from_points(ambient: usize, points: &[Point<F>]) -> Result<Self> {
        let vs: Vec<Vector<F>> = points.iter().map(Point::vector).collect();
        Self::span(ambient, &vs)
    }

    /// Number of coordinates of the ambient vector space.
    pub fn ambient(&self) -> usize {
        self.ambient as usize
    }

    pub fn rows(&self) -> &[Vector<F>] {
        &self.rows
    }

    /// Dimension of the underlying vector space.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn projective_dim(&self) -> isize {
        self.rows.len() as isize - 1
    }

    /// Residue of `v` after elimination against the pivots.
    pub fn reduce(&self, v: Vector<F>) -> Vector<F> {
        self.rows.iter().fold(v, |acc, row| {
            let pivot = row.leading_index().expect("basis rows are nonzero");
            let c = acc.get(pivot);
            if c == F::ZERO {
                acc
            } else {
                acc + row.scale(c)
            }
        })
    }

    /// Adds `v` to the subspace. Returns false when `v` was already inside.
    pub fn insert(&mut self, v: Vector<F>) -> bool {
        debug_assert_eq!(v.len(), self.ambient());
        let residue = self.reduce(v);
        if residue.is_zero() {
            return false;
        }
        let residue = residue.normalized();
        let pivot = residue.leading_index().expect("nonzero");
        for row in &mut self.rows {
            let c = row.get(pivot);
            if c != F::ZERO {
                *row += residue.scale(c);
            }
        }
        let at = self.rows.partition_point(|r| r.leading_index() < Some(pivot));
        self.rows.insert(at, residue);
        true
    }

    pub fn contains(&self, v: &Vector<F>) -> bool {
        v.len() == self.ambient() && self.reduce(*v).is_zero()
    }

    pub fn contains_point(&self, p: &Point<F>) -> bool {
        self.contains(&p.0)
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.ambient == self.ambient && other.rows.iter().all(|r| self.contains(r))
    }

    /// The subspace spanned by `self` and `other`.
    pub fn join(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.same_ambient(other)?;
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(*r);
        }
        Ok(s)
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.same_ambient(other)?;
        // A n B = (A^0 + B^0)^0 for the annihilator under the standard dot product.
        Ok(self.annihilator().join(&other.annihilator())?.annihilator())
    }

    /// All x with `r . x = 0` for every row r, under the bilinear dot product.
    pub fn annihilator(&self) -> Subspace<F> {
        let n = self.ambient();
        let pivots: Vec<usize> = self.rows.iter().map(|r| r.leading_index().expect("nonzero")).collect();
        let mut out = Subspace::zero(n);
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut x = Vector::unit(n, free);
            for (row, &p) in self.rows.iter().zip(&pivots) {
                // char 2: -r[free] = r[free]
                x = x.with(p, row.get(free));
            }
            out.insert(x);
        }
        out
    }

    /// Canonical points of the subspace, sorted.
    pub fn points(&self) -> Vec<Point<F>> {
        let k = self.rank();
        let mut pts: Vec<Point<F>> = Vector::<F>::all(k)
            .filter(|c| !c.is_zero() && c.normalized() == *c)
            .map(|c| {
                let v = self
                    .rows
                    .iter()
                    .enumerate()
                    .fold(Vector::zero(self.ambient()), |acc, (i, r)| acc + r.scale(c.get(i)));
                // first nonzero coefficient is one and hits the leading pivot, so `v` is canonical
                Point(v)
            })
            .collect();
        pts.sort_unstable();
        pts
    }

    fn same_ambient(&self, other: &Subspace<F>) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(GeometryError::Dimension {
                expected: format!("ambient length {}", self.ambient),
                actual: other.ambient(),
            });
        }
        Ok(())
    }
}

impl Subspace<Gf2> {
    /// Image under an invertible linear map.
    pub fn image(&self, map: &Gf2Matrix) -> Result<Subspace<Gf2>> {
        if map.size() != self.ambient() {
            return Err(GeometryError::Dimension {
                expected: format!("{}x{} matrix", self.ambient(), self.ambient()),
                actual: map.size(),
            });
        }
        let mapped: Vec<_> = self.rows.iter().map(|r| map.apply(r)).collect();
        Subspace::span(self.ambient(), &mapped)
    }
}

impl<F: Field> fmt::Display for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(">")
    }
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace{self}")
    }
}
