//! Quadratic, bilinear, symplectic and Hermitian forms, the point sets they
//! cut out, and the search for their maximal totally singular subspaces.
//!
//! Coordinates of GF(2)^{2N} are grouped in adjacent pairs `(x_{2i}, x_{2i+1})`.
//! The standard hyperbolic form is `x_0 x_1 + x_2 x_3 + ...`, and the
//! symplectic pairing couples coordinate `2i` with `2i+1`.

mod equivalence;
mod generators;
mod hermitian;

use std::fmt;

pub use equivalence::{form_equivalence_map, witt_basis};
pub use generators::{enumerate_generators, generator_families, maximal_isotropic_subspaces, same_family};
pub use hermitian::{hermitian_variety, pullback_quadratic, standard_hermitian, HermitianForm};

use crate::error::{parameter, GeometryError, Result};
use crate::galois::{Gf2Matrix, Gf2Vector};
use crate::projgeom::{Gf2Point, Gf2Subspace, Point, Subspace};

const LOW_BITS: u32 = 0x5555_5555;

fn parity(x: u32) -> bool {
    x.count_ones() & 1 == 1
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(GeometryError::Dimension { expected: format!("length {expected}"), actual });
    }
    Ok(())
}

/// Type of a quadric in PG(2N-1, 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuadricKind {
    Hyperbolic,
    Elliptic,
    Degenerate,
}

impl fmt::Display for QuadricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadricKind::Hyperbolic => "hyperbolic",
            QuadricKind::Elliptic => "elliptic",
            QuadricKind::Degenerate => "degenerate",
        })
    }
}

/// `|Q+(2N-1, 2)| = 2^{2N-1} + 2^{N-1} - 1`.
pub fn hyperbolic_point_count(n: usize) -> u64 {
    (1u64 << (2 * n - 1)) + (1u64 << (n - 1)) - 1
}

/// `|Q-(2N-1, 2)| = 2^{2N-1} - 2^{N-1} - 1`.
pub fn elliptic_point_count(n: usize) -> u64 {
    (1u64 << (2 * n - 1)) - (1u64 << (n - 1)) - 1
}

/// A symmetric bilinear form over GF(2) given by its Gram matrix rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    n: usize,
    gram: Vec<u32>,
}

impl BilinearForm {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn eval(&self, x: &Gf2Vector, y: &Gf2Vector) -> Result<bool> {
        check_len(self.n, x.len())?;
        check_len(self.n, y.len())?;
        Ok(self.eval_bits(x.bits(), y.bits()))
    }

    pub(crate) fn eval_bits(&self, x: u32, y: u32) -> bool {
        let mut acc = 0u32;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            acc ^= self.gram[i] & y;
            rest &= rest - 1;
        }
        parity(acc)
    }

    pub fn is_alternating(&self) -> bool {
        (0..self.n).all(|i| (self.gram[i] >> i) & 1 == 0)
            && (0..self.n).all(|i| (0..self.n).all(|j| ((self.gram[i] >> j) & 1) == ((self.gram[j] >> i) & 1)))
    }

    /// Vectors orthogonal to everything.
    pub fn radical(&self) -> Gf2Subspace {
        let rows: Vec<Gf2Vector> = self.gram.iter().map(|&r| Gf2Vector::from_raw(self.n, r)).collect();
        Subspace::span(self.n, &rows).expect("rows have the form's length").annihilator()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().rank() == 0
    }
}

/// The pairing `<(a|b), (a'|b')> = a.b' + a'.b` on GF(2)^{2N}, with `a_i` at
/// coordinate `2i` and `b_i` at `2i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticForm {
    n: usize,
}

impl SymplecticForm {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 16 {
            return Err(parameter(format!("symplectic rank {n} out of range 1..=16")));
        }
        Ok(SymplecticForm { n })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn pair(&self, x: &Gf2Vector, y: &Gf2Vector) -> Result<bool> {
        check_len(2 * self.n, x.len())?;
        check_len(2 * self.n, y.len())?;
        Ok(symplectic_pair_bits(x.bits(), y.bits()))
    }

    pub fn as_bilinear(&self) -> BilinearForm {
        let gram = (0..2 * self.n).map(|i| 1u32 << (i ^ 1)).collect();
        BilinearForm { n: 2 * self.n, gram }
    }
}

pub(crate) fn symplectic_pair_bits(x: u32, y: u32) -> bool {
    let swapped = ((y & LOW_BITS) << 1) | ((y >> 1) & LOW_BITS);
    parity(x & swapped)
}

/// `Q(x) = sum_{i <= j} U[i][j] x_i x_j` over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    n: usize,
    /// Row `i` holds `U[i][j]` at bit `j`, only for `j >= i`.
    upper: Vec<u32>,
}

impl QuadraticForm {
    pub fn from_upper(n: usize, upper: Vec<u32>) -> Result<Self> {
        if n > 32 || upper.len() != n {
            return Err(parameter(format!("expected {n} coefficient rows, got {}", upper.len())));
        }
        for (i, &row) in upper.iter().enumerate() {
            let below = (1u64 << i) - 1;
            let beyond = if n == 32 { 0 } else { !((1u64 << n) - 1) };
            if (row as u64) & (below | beyond) != 0 {
                return Err(parameter(format!("row {i} has coefficients outside the upper triangle")));
            }
        }
        Ok(QuadraticForm { n, upper })
    }

    /// Builds a form from monomials `x_i x_j`; repeated terms cancel.
    pub fn from_terms(n: usize, terms: &[(usize, usize)]) -> Result<Self> {
        let mut upper = vec![0u32; n];
        for &(i, j) in terms {
            let (i, j) = (i.min(j), i.max(j));
            if j >= n {
                return Err(parameter(format!("term x{i}*x{j} outside dimension {n}")));
            }
            upper[i] ^= 1 << j;
        }
        Self::from_upper(n, upper)
    }

    /// Recovers the coefficients of a function known to be a quadratic form,
    /// from its values on unit vectors and their pairwise sums.
    pub(crate) fn from_evaluator(n: usize, f: impl Fn(u32) -> bool) -> Self {
        let mut upper = vec![0u32; n];
        for (i, row) in upper.iter_mut().enumerate() {
            let ei = 1u32 << i;
            if f(ei) {
                *row |= ei;
            }
            for j in i + 1..n {
                let ej = 1u32 << j;
                if f(ei | ej) ^ f(ei) ^ f(ej) {
                    *row |= ej;
                }
            }
        }
        QuadraticForm { n, upper }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, i: usize, j: usize) -> bool {
        i <= j && (self.upper[i] >> j) & 1 == 1
    }

    pub fn eval(&self, x: &Gf2Vector) -> Result<bool> {
        check_len(self.n, x.len())?;
        Ok(self.eval_bits(x.bits()))
    }

    pub(crate) fn eval_bits(&self, x: u32) -> bool {
        let mut acc = 0u32;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            acc ^= self.upper[i] & x;
            rest &= rest - 1;
        }
        parity(acc)
    }

    /// The polar form `B(x, y) = Q(x + y) + Q(x) + Q(y)`.
    pub fn polar(&self) -> BilinearForm {
        let mut gram = vec![0u32; self.n];
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.coeff(i, j) {
                    gram[i] |= 1 << j;
                    gram[j] |= 1 << i;
                }
            }
        }
        BilinearForm { n: self.n, gram }
    }

    /// The form `x -> Q(T x)`.
    pub fn compose(&self, map: &Gf2Matrix) -> Result<QuadraticForm> {
        check_len(self.n, map.size())?;
        Ok(QuadraticForm::from_evaluator(self.n, |x| self.eval_bits(map.apply_bits(x))))
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticForm({self})")
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                if self.coeff(i, j) {
                    terms.push(if i == j { format!("x{i}^2") } else { format!("x{i}x{j}") });
                }
            }
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// `polar_form` under its usual name.
pub fn polar_form(q: &QuadraticForm) -> BilinearForm {
    q.polar()
}

pub fn eval_quadratic(q: &QuadraticForm, x: &Gf2Vector) -> Result<bool> {
    q.eval(x)
}

/// The standard hyperbolic or elliptic form on GF(2)^{2N}.
pub fn standard_form(kind: QuadricKind, n: usize) -> Result<QuadraticForm> {
    if n == 0 || 2 * n > 32 {
        return Err(parameter(format!("half-dimension {n} out of range 1..=16")));
    }
    let mut terms: Vec<(usize, usize)> = (0..n).map(|i| (2 * i, 2 * i + 1)).collect();
    match kind {
        QuadricKind::Hyperbolic => {}
        QuadricKind::Elliptic => {
            terms.push((2 * n - 2, 2 * n - 2));
            terms.push((2 * n - 1, 2 * n - 1));
        }
        QuadricKind::Degenerate => return Err(parameter("there is no standard degenerate form")),
    }
    QuadraticForm::from_terms(2 * n, &terms)
}

/// Points of PG(n-1, 2) on the quadric, in packed order.
pub fn quadric_points(q: &QuadraticForm) -> Vec<Gf2Point> {
    Gf2Vector::all(q.n).skip(1).filter(|x| !q.eval_bits(x.bits())).map(|x| Point::new(x).expect("nonzero")).collect()
}

/// Classifies a form on GF(2)^{2N} by its radical and point count.
pub fn classify_quadric(q: &QuadraticForm) -> Result<QuadricKind> {
    if q.n == 0 || !q.n.is_multiple_of(2) {
        return Err(GeometryError::Dimension { expected: "even dimension".into(), actual: q.n });
    }
    if !q.polar().is_nondegenerate() {
        return Ok(QuadricKind::Degenerate);
    }
    let n = q.n / 2;
    let count = quadric_points(q).len() as u64;
    if count == hyperbolic_point_count(n) {
        Ok(QuadricKind::Hyperbolic)
    } else if count == elliptic_point_count(n) {
        Ok(QuadricKind::Elliptic)
    } else {
        Err(GeometryError::Internal(format!(
            "nondegenerate form on GF(2)^{} has {count} points, matching neither type",
            q.n
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(len: usize, bits: u32) -> Gf2Vector {
        Gf2Vector::from_bits(len, bits).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let hyp = standard_form(QuadricKind::Hyperbolic, 1).unwrap();
        assert!(hyp.eval(&v(2, 0b11)).unwrap());
        let ell = standard_form(QuadricKind::Elliptic, 1).unwrap();
        assert!(ell.eval(&v(2, 0b01)).unwrap());
        for q in [&hyp, &ell] {
            assert!(!q.eval(&Gf2Vector::zero(2)).unwrap());
        }
        assert!(hyp.eval(&v(3, 0)).is_err());
        assert_eq!(ell.to_string(), "x0^2 + x0x1 + x1^2");
    }

    #[test]
    fn polar_examples() {
        let hyp = standard_form(QuadricKind::Hyperbolic, 1).unwrap();
        let b = polar_form(&hyp);
        assert!(b.eval(&v(2, 0b01), &v(2, 0b10)).unwrap());
        assert!(b.is_alternating());
        let four = standard_form(QuadricKind::Elliptic, 4).unwrap();
        let b4 = four.polar();
        for x in (0u32..256).step_by(3) {
            assert!(!b4.eval_bits(x, x));
        }
    }

    #[test]
    fn polar_identity_exhaustive() {
        for kind in [QuadricKind::Hyperbolic, QuadricKind::Elliptic] {
            let q = standard_form(kind, 4).unwrap();
            let b = q.polar();
            for x in 0u32..256 {
                for y in 0u32..256 {
                    assert_eq!(q.eval_bits(x ^ y), q.eval_bits(x) ^ q.eval_bits(y) ^ b.eval_bits(x, y));
                }
            }
        }
    }

    #[test]
    fn standard_polar_is_symplectic() {
        let q = standard_form(QuadricKind::Hyperbolic, 3).unwrap();
        let sp = SymplecticForm::new(3).unwrap();
        assert_eq!(q.polar(), sp.as_bilinear());
        for x in 0u32..64 {
            for y in 0u32..64 {
                assert_eq!(q.polar().eval_bits(x, y), symplectic_pair_bits(x, y));
            }
        }
    }

    #[test]
    fn standard_point_counts() {
        // brute-force oracle over all points
        let brute = |q: &QuadraticForm| (1u32..1 << q.dim()).filter(|&x| !q.eval_bits(x)).count();
        assert_eq!(brute(&standard_form(QuadricKind::Hyperbolic, 2).unwrap()), 9);
        assert_eq!(brute(&standard_form(QuadricKind::Elliptic, 2).unwrap()), 5);
        assert_eq!(brute(&standard_form(QuadricKind::Hyperbolic, 4).unwrap()), 135);
        assert_eq!(quadric_points(&standard_form(QuadricKind::Hyperbolic, 2).unwrap()).len(), 9);
        assert_eq!(quadric_points(&standard_form(QuadricKind::Elliptic, 3).unwrap()).len(), 27);
        assert_eq!(quadric_points(&standard_form(QuadricKind::Elliptic, 4).unwrap()).len(), 119);
        for n in 2..=4 {
            let hyp = standard_form(QuadricKind::Hyperbolic, n).unwrap();
            let ell = standard_form(QuadricKind::Elliptic, n).unwrap();
            assert_eq!(quadric_points(&hyp).len() as u64, hyperbolic_point_count(n));
            assert_eq!(quadric_points(&ell).len() as u64, elliptic_point_count(n));
        }
        assert!(standard_form(QuadricKind::Degenerate, 2).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify_quadric(&standard_form(QuadricKind::Hyperbolic, 3).unwrap()).unwrap(),
            QuadricKind::Hyperbolic
        );
        assert_eq!(classify_quadric(&standard_form(QuadricKind::Elliptic, 4).unwrap()).unwrap(), QuadricKind::Elliptic);
        let degenerate = QuadraticForm::from_terms(4, &[(0, 1)]).unwrap();
        assert_eq!(classify_quadric(&degenerate).unwrap(), QuadricKind::Degenerate);
        let radical = degenerate.polar().radical();
        assert!(radical.contains(&Gf2Vector::unit(4, 2)));
        assert!(radical.contains(&Gf2Vector::unit(4, 3)));
        assert!(classify_quadric(&QuadraticForm::from_terms(3, &[(0, 1)]).unwrap()).is_err());
    }

    #[test]
    fn upper_triangle_is_enforced() {
        assert!(QuadraticForm::from_upper(2, vec![0b01, 0b01]).is_err());
        assert!(QuadraticForm::from_upper(2, vec![0b100, 0]).is_err());
        assert!(QuadraticForm::from_upper(2, vec![0b11, 0b10]).is_ok());
    }

    #[test]
    fn evaluator_recovers_coefficients() {
        let q = QuadraticForm::from_terms(5, &[(0, 0), (0, 3), (1, 4), (2, 2), (3, 4)]).unwrap();
        assert_eq!(QuadraticForm::from_evaluator(5, |x| q.eval_bits(x)), q);
        let id = Gf2Matrix::identity(5);
        assert_eq!(q.compose(&id).unwrap(), q);
    }
}
