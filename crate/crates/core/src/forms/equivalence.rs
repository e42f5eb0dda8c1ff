use crate::error::{GeometryError, Result};
use crate::galois::{Gf2Matrix, Gf2Vector};
use crate::projgeom::Subspace;

use super::{classify_quadric, QuadraticForm, QuadricKind};

/// Vectors up to this dimension get an exhaustive post-check.
const POST_CHECK_MAX_DIM: usize = 20;

/// Splits a nondegenerate form into orthogonal 2-dimensional blocks.
///
/// Returns `(e_1, f_1, ..., e_N, f_N)` such that the form reads as the
/// standard form of the returned kind in these coordinates: every block but
/// the last is a hyperbolic pair (`Q(e) = Q(f) = 0`, `B(e, f) = 1`), and the
/// last block is hyperbolic or has `Q(e) = Q(f) = B(e, f) = 1`.
pub fn witt_basis(q: &QuadraticForm) -> Result<(QuadricKind, Vec<Gf2Vector>)> {
    let n = q.dim();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(GeometryError::Dimension { expected: "even dimension".into(), actual: n });
    }
    let b = q.polar();
    if !b.is_nondegenerate() {
        return Err(GeometryError::NoEquivalence("form is degenerate".into()));
    }
    let mut space: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
    let mut basis = Vec::with_capacity(n);
    while space.len() > 2 {
        // a nondegenerate form in dimension >= 3 always has a singular vector
        let e = (1u64..1u64 << space.len())
            .map(|c| combine(&space, c))
            .find(|&x| !q.eval_bits(x))
            .ok_or_else(|| GeometryError::Internal("no singular vector in dimension >= 3".into()))?;
        let partner = *space
            .iter()
            .find(|&&w| b.eval_bits(e, w))
            .ok_or_else(|| GeometryError::Internal("polar form degenerate on a block".into()))?;
        let f = if q.eval_bits(partner) { partner ^ e } else { partner };
        basis.push(e);
        basis.push(f);
        let projected: Vec<Gf2Vector> = space
            .iter()
            .map(|&w| {
                let mut x = w;
                if b.eval_bits(w, f) {
                    x ^= e;
                }
                if b.eval_bits(w, e) {
                    x ^= f;
                }
                Gf2Vector::from_raw(n, x)
            })
            .collect();
        space = Subspace::span(n, &projected)?.rows().iter().map(|r| r.bits()).collect();
        if space.len() + basis.len() != n {
            return Err(GeometryError::Internal("orthogonal complement has the wrong dimension".into()));
        }
    }
    let (u, v) = (space[0], space[1]);
    let singular: Vec<u32> = [u, v, u ^ v].into_iter().filter(|&x| !q.eval_bits(x)).collect();
    let kind = match singular.len() {
        2 => {
            basis.push(singular[0]);
            basis.push(singular[1]);
            QuadricKind::Hyperbolic
        }
        0 => {
            basis.push(u);
            basis.push(v);
            QuadricKind::Elliptic
        }
        k => return Err(GeometryError::Internal(format!("final block has {k} singular vectors"))),
    };
    Ok((kind, basis.into_iter().map(|x| Gf2Vector::from_raw(n, x)).collect()))
}

fn combine(space: &[u32], coeffs: u64) -> u32 {
    space.iter().enumerate().filter(|(i, _)| (coeffs >> i) & 1 == 1).fold(0, |acc, (_, &w)| acc ^ w)
}

/// An invertible `T` with `Q2(T x) = Q1(x)` for every `x`.
pub fn form_equivalence_map(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<Gf2Matrix> {
    if q1.dim() != q2.dim() {
        return Err(GeometryError::NoEquivalence(format!("dimensions differ: {} vs {}", q1.dim(), q2.dim())));
    }
    let kind1 = classify_quadric(q1)?;
    let kind2 = classify_quadric(q2)?;
    if kind1 == QuadricKind::Degenerate || kind2 == QuadricKind::Degenerate {
        return Err(GeometryError::NoEquivalence("degenerate form".into()));
    }
    if kind1 != kind2 {
        return Err(GeometryError::NoEquivalence(format!("{kind1} form is not equivalent to {kind2} form")));
    }
    let (witt1, basis1) = witt_basis(q1)?;
    let (witt2, basis2) = witt_basis(q2)?;
    if witt1 != kind1 || witt2 != kind2 {
        return Err(GeometryError::Internal("Witt decomposition disagrees with point count".into()));
    }
    // Q1(P1 y) = Q2(P2 y) = standard(y), so T = P2 P1^{-1}.
    let p1 = Gf2Matrix::from_columns(&basis1)?;
    let p2 = Gf2Matrix::from_columns(&basis2)?;
    let p1_inv = p1.inverse().ok_or_else(|| GeometryError::Internal("Witt basis is not a basis".into()))?;
    let t = p2.compose(&p1_inv);
    if q1.dim() <= POST_CHECK_MAX_DIM {
        let bad = (0u32..1 << q1.dim()).find(|&x| q2.eval_bits(t.apply_bits(x)) != q1.eval_bits(x));
        if let Some(x) = bad {
            return Err(GeometryError::Internal(format!("equivalence map fails at {x:#b}")));
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{pullback_quadratic, standard_form, standard_hermitian};

    fn check(q1: &QuadraticForm, q2: &QuadraticForm, t: &Gf2Matrix) {
        assert!(t.is_invertible());
        for x in Gf2Vector::all(q1.dim()) {
            assert_eq!(q2.eval(&t.apply(&x)).unwrap(), q1.eval(&x).unwrap());
        }
    }

    #[test]
    fn identity_case() {
        let q = standard_form(QuadricKind::Hyperbolic, 2).unwrap();
        let t = form_equivalence_map(&q, &q).unwrap();
        check(&q, &q, &t);
    }

    #[test]
    fn two_dimensional_hyperbolic_pair() {
        let q1 = QuadraticForm::from_terms(2, &[(0, 1)]).unwrap();
        let q2 = QuadraticForm::from_terms(2, &[(0, 0), (0, 1)]).unwrap();
        let t = form_equivalence_map(&q1, &q2).unwrap();
        check(&q1, &q2, &t);
        // oracle: some element of GL(2,2) works
        let witnesses = (0u32..16)
            .filter_map(|m| {
                let cols = [Gf2Vector::from_bits(2, m & 3).unwrap(), Gf2Vector::from_bits(2, m >> 2).unwrap()];
                Gf2Matrix::from_columns(&cols).ok()
            })
            .filter(|m| m.is_invertible())
            .filter(|m| Gf2Vector::all(2).all(|x| q2.eval(&m.apply(&x)).unwrap() == q1.eval(&x).unwrap()))
            .count();
        assert!(witnesses > 0);
    }

    #[test]
    fn hermitian_pullback_to_standard() {
        let q1 = standard_form(QuadricKind::Hyperbolic, 4).unwrap();
        let q2 = pullback_quadratic(&standard_hermitian(4).unwrap()).unwrap();
        let t = form_equivalence_map(&q1, &q2).unwrap();
        check(&q1, &q2, &t);
        let q3 = pullback_quadratic(&standard_hermitian(3).unwrap()).unwrap();
        let e3 = standard_form(QuadricKind::Elliptic, 3).unwrap();
        check(&e3, &q3, &form_equivalence_map(&e3, &q3).unwrap());
    }

    #[test]
    fn mismatched_kinds_rejected() {
        let h = standard_form(QuadricKind::Hyperbolic, 3).unwrap();
        let e = standard_form(QuadricKind::Elliptic, 3).unwrap();
        assert!(matches!(form_equivalence_map(&h, &e), Err(GeometryError::NoEquivalence(_))));
        let d = QuadraticForm::from_terms(6, &[(0, 1)]).unwrap();
        assert!(matches!(form_equivalence_map(&d, &d), Err(GeometryError::NoEquivalence(_))));
        let h2 = standard_form(QuadricKind::Hyperbolic, 2).unwrap();
        assert!(matches!(form_equivalence_map(&h, &h2), Err(GeometryError::NoEquivalence(_))));
    }

    #[test]
    fn witt_basis_has_standard_gram() {
        for kind in [QuadricKind::Hyperbolic, QuadricKind::Elliptic] {
            let q = standard_form(kind, 3).unwrap().compose(&shear(6)).unwrap();
            let (k, basis) = witt_basis(&q).unwrap();
            assert_eq!(k, kind);
            let b = q.polar();
            for (i, x) in basis.iter().enumerate() {
                for (j, y) in basis.iter().enumerate() {
                    let paired = i != j && i / 2 == j / 2;
                    assert_eq!(b.eval(x, y).unwrap(), paired);
                }
            }
        }
    }

    fn shear(n: usize) -> Gf2Matrix {
        let cols: Vec<Gf2Vector> =
            (0..n).map(|j| Gf2Vector::from_bits(n, (1u32 << j) | if j > 0 { 1 } else { 0 }).unwrap()).collect();
        Gf2Matrix::from_columns(&cols).unwrap()
    }
}
