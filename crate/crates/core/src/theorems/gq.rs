use serde_json::json;

use crate::error::{GeometryError, Result};
use crate::forms::{hermitian_variety, standard_hermitian};
use crate::galois::Field;
use crate::projgeom::{enumerate_lines, Gf4Point};

use super::report::{ensure, Pipeline, VerificationReport};

/// A finite incidence structure of labelled points and lines.
///
/// Lines hold sorted point indices. Collinearity is read off the lines only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointLineGeometry {
    point_labels: Vec<String>,
    lines: Vec<Vec<usize>>,
    params: Option<(usize, usize)>,
}

impl PointLineGeometry {
    pub fn new(point_labels: Vec<String>, lines: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(lines.len());
        for mut line in lines {
            line.sort_unstable();
            line.dedup();
            if let Some(&bad) = line.iter().find(|&&p| p >= point_labels.len()) {
                return Err(GeometryError::Structure(format!("line refers to unknown point {bad}")));
            }
            sorted.push(line);
        }
        let mut check = sorted.clone();
        check.sort();
        if check.windows(2).any(|w| w[0] == w[1]) {
            return Err(GeometryError::Structure("repeated line".into()));
        }
        let mut g = PointLineGeometry { point_labels, lines: sorted, params: None };
        g.params = g.uniform_params();
        Ok(g)
    }

    /// Points and lines of PG(d, q) for a field of order q.
    pub fn of_projective_space<F: Field>(d: usize) -> Result<Self> {
        let lines = enumerate_lines::<F>(d)?;
        let mut points: Vec<_> = lines.iter().flat_map(|l| l.points()).collect();
        points.sort();
        points.dedup();
        let index = |p| points.binary_search(&p).expect("point of a listed line");
        let incidence = lines.iter().map(|l| l.points().into_iter().map(index).collect()).collect();
        PointLineGeometry::new(points.iter().map(|p| p.to_string()).collect(), incidence)
    }

    pub fn point_count(&self) -> usize {
        self.point_labels.len()
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn point_labels(&self) -> &[String] {
        &self.point_labels
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// `(s, t)` when every line has `s + 1` points and every point lies on
    /// `t + 1` lines.
    pub fn params(&self) -> Option<(usize, usize)> {
        self.params
    }

    pub fn point_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.point_count()];
        for line in &self.lines {
            for &p in line {
                deg[p] += 1;
            }
        }
        deg
    }

    fn uniform_params(&self) -> Option<(usize, usize)> {
        let size = self.lines.first()?.len();
        if size == 0 || self.lines.iter().any(|l| l.len() != size) {
            return None;
        }
        let deg = self.point_degrees();
        let t1 = *deg.first()?;
        if t1 == 0 || deg.iter().any(|&d| d != t1) {
            return None;
        }
        Some((size - 1, t1 - 1))
    }

    /// Lines through each point.
    fn lines_through(&self) -> Vec<Vec<usize>> {
        let mut through = vec![Vec::new(); self.point_count()];
        for (i, line) in self.lines.iter().enumerate() {
            for &p in line {
                through[p].push(i);
            }
        }
        through
    }
}

/// The Hermitian surface H(3, 4) with the 27 lines of PG(3, 4) it contains.
pub fn gq_from_hermitian_surface() -> Result<PointLineGeometry> {
    let points: Vec<Gf4Point> = hermitian_variety(&standard_hermitian(4)?)?;
    let mut lines = Vec::new();
    for line in enumerate_lines(3)? {
        let members: Option<Vec<usize>> = line.points().iter().map(|p| points.binary_search(p).ok()).collect();
        if let Some(m) = members {
            lines.push(m);
        }
    }
    PointLineGeometry::new(points.iter().map(|p| p.to_string()).collect(), lines)
}

/// Points and lines swapped; point `i` of the dual is line `i` of `g`.
pub fn dual_geometry(g: &PointLineGeometry) -> PointLineGeometry {
    let labels = (0..g.line_count()).map(|i| format!("L{i}")).collect();
    let through = g.lines_through();
    // distinct points of a geometry may share a pencil, so duplicates are dropped
    let mut lines: Vec<Vec<usize>> = Vec::with_capacity(through.len());
    for pencil in through {
        if !pencil.is_empty() && !lines.contains(&pencil) {
            lines.push(pencil);
        }
    }
    let mut dual = PointLineGeometry { point_labels: labels, lines, params: None };
    dual.params = dual.uniform_params();
    dual
}

/// Exhaustive check of the generalized-quadrangle axioms.
pub fn verify_gq_axioms(g: &PointLineGeometry) -> VerificationReport {
    let mut p = Pipeline::new("gq_axioms");
    p.put("points", g.point_count());
    p.put("lines", g.line_count());
    let outcome = (|| {
        let (s, t) = g.params.ok_or_else(|| {
            super::report::StageFailure::new("regularity", json!({"reason": "line sizes or point degrees vary"}))
        })?;
        p.put("s", s);
        p.put("t", t);
        ensure(s >= 1 && t >= 1, "regularity", || json!({"s": s, "t": t}))?;

        let n = g.point_count();
        let mut common = vec![0u8; n * n];
        for line in &g.lines {
            for &a in line {
                for &b in line {
                    if a < b {
                        let c = &mut common[a * n + b];
                        *c += 1;
                        if *c > 1 {
                            return Err(super::report::StageFailure::new(
                                "two_points_one_line",
                                json!({"points": [&g.point_labels[a], &g.point_labels[b]]}),
                            ));
                        }
                    }
                }
            }
        }
        let collinear = |a: usize, b: usize| a != b && common[a.min(b) * n + a.max(b)] == 1;

        let mut anti_flags = 0usize;
        for (li, line) in g.lines.iter().enumerate() {
            for pt in 0..n {
                if line.binary_search(&pt).is_ok() {
                    continue;
                }
                anti_flags += 1;
                let hits = line.iter().filter(|&&q| collinear(pt, q)).count();
                ensure(
                    hits == 1,
                    "anti_flag",
                    || json!({"point": &g.point_labels[pt], "line": li, "collinear_points": hits}),
                )?;
            }
        }
        p.put("anti_flags", anti_flags);

        let st1 = s * t + 1;
        ensure(n == (s + 1) * st1, "point_count", || json!({"expected": (s + 1) * st1, "actual": n}))?;
        ensure(
            g.line_count() == (t + 1) * st1,
            "line_count",
            || json!({"expected": (t + 1) * st1, "actual": g.line_count()}),
        )?;
        Ok(())
    })();
    p.finish(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Gf2;

    #[test]
    fn hermitian_surface_is_gq42() {
        let g = gq_from_hermitian_surface().unwrap();
        assert_eq!((g.point_count(), g.line_count()), (45, 27));
        assert_eq!(g.params(), Some((4, 2)));
        let r = verify_gq_axioms(&g);
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.detail("anti_flags").unwrap(), 27 * 40);
    }

    #[test]
    fn dual_is_gq24() {
        let g = gq_from_hermitian_surface().unwrap();
        let d = dual_geometry(&g);
        assert_eq!((d.point_count(), d.line_count()), (27, 45));
        assert_eq!(d.params(), Some((2, 4)));
        assert!(verify_gq_axioms(&d).pass());
        let mut sizes: Vec<usize> = d.lines().iter().map(Vec::len).collect();
        let mut degrees = g.point_degrees();
        sizes.sort();
        degrees.sort();
        assert_eq!(sizes, degrees);
        assert_eq!(dual_geometry(&d).lines(), g.lines());
    }

    #[test]
    fn fano_plane_fails_anti_flag() {
        let fano = PointLineGeometry::of_projective_space::<Gf2>(2).unwrap();
        assert_eq!(fano.params(), Some((2, 2)));
        let r = verify_gq_axioms(&fano);
        assert!(!r.pass());
        assert_eq!(r.witness().unwrap()["stage"], "anti_flag");
        assert_eq!(r.witness().unwrap()["collinear_points"], 3);
    }

    #[test]
    fn grid_is_thin_quadrangle() {
        // 2x2 grid: GQ(1,1)
        let g = PointLineGeometry::new(
            (0..4).map(|i| i.to_string()).collect(),
            vec![vec![0, 1], vec![2, 3], vec![0, 2], vec![1, 3]],
        )
        .unwrap();
        assert_eq!(g.params(), Some((1, 1)));
        assert!(verify_gq_axioms(&g).pass());
    }

    #[test]
    fn constructor_rejects_bad_lines() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(PointLineGeometry::new(labels.clone(), vec![vec![0, 2]]).is_err());
        assert!(PointLineGeometry::new(labels, vec![vec![0, 1], vec![1, 0]]).is_err());
    }
}
