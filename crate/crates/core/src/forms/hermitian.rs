use std::fmt;

use crate::error::{parameter, GeometryError, Result};
use crate::galois::{Gf2Vector, Gf4, Gf4Vector};
use crate::projgeom::{enumerate_points, Gf4Point, Subspace};

use super::QuadraticForm;

/// A Hermitian form `h(u, v) = sum u_i M[i][j] conj(v_j)` on GF(4)^N, with the
/// conjugation applied to the second argument.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HermitianForm {
    n: usize,
    gram: Vec<Gf4>,
}

impl HermitianForm {
    /// Requires `gram` square with `M[j][i] = conj(M[i][j])`.
    pub fn new(gram: Vec<Vec<Gf4>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 || n > Gf4Vector::MAX_LEN {
            return Err(parameter(format!("Hermitian form of dimension {n} is not supported")));
        }
        if let Some(row) = gram.iter().find(|r| r.len() != n) {
            return Err(GeometryError::Dimension { expected: format!("{n} columns"), actual: row.len() });
        }
        for (i, row) in gram.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if gram[j][i] != entry.conj() {
                    return Err(parameter(format!("entry ({i},{j}) breaks conjugate symmetry")));
                }
            }
        }
        Ok(HermitianForm { n, gram: gram.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> Gf4 {
        self.gram[i * self.n + j]
    }

    pub fn eval(&self, u: &Gf4Vector, v: &Gf4Vector) -> Result<Gf4> {
        for x in [u, v] {
            if x.len() != self.n {
                return Err(GeometryError::Dimension { expected: format!("length {}", self.n), actual: x.len() });
            }
        }
        Ok(self.eval_unchecked(u, v))
    }

    fn eval_unchecked(&self, u: &Gf4Vector, v: &Gf4Vector) -> Gf4 {
        let mut acc = Gf4::ZERO;
        for i in 0..self.n {
            let ui = u.get(i);
            if ui == Gf4::ZERO {
                continue;
            }
            for j in 0..self.n {
                acc = acc + ui * self.entry(i, j) * v.get(j).conj();
            }
        }
        acc
    }

    /// `h(v, v)`, which always lies in the subfield {0, 1}.
    pub fn norm(&self, v: &Gf4Vector) -> Result<Gf4> {
        self.eval(v, v)
    }

    pub fn is_nonsingular(&self) -> bool {
        let rows: Vec<Gf4Vector> = (0..self.n)
            .map(|i| Gf4Vector::from_coords(&self.gram[i * self.n..(i + 1) * self.n]).expect("n <= 16"))
            .collect();
        Subspace::span(self.n, &rows).map(|s| s.rank() == self.n).unwrap_or(false)
    }
}

impl fmt::Debug for HermitianForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j).to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "HermitianForm[{}]", rows.join("; "))
    }
}

/// The identity-Gram form `h(u, v) = sum u_i conj(v_i)`.
pub fn standard_hermitian(n: usize) -> Result<HermitianForm> {
    let gram = (0..n).map(|i| (0..n).map(|j| if i == j { Gf4::ONE } else { Gf4::ZERO }).collect()).collect();
    HermitianForm::new(gram)
}

/// Points of PG(N-1, 4) with `h(v, v) = 0`.
pub fn hermitian_variety(h: &HermitianForm) -> Result<Vec<Gf4Point>> {
    if !h.is_nonsingular() {
        return Err(parameter("Hermitian form is singular"));
    }
    if h.n < 2 {
        return Ok(Vec::new());
    }
    Ok(enumerate_points::<Gf4>(h.n - 1)?
        .into_iter()
        .filter(|p| h.eval_unchecked(&p.vector(), &p.vector()) == Gf4::ZERO)
        .collect())
}

/// The quadratic form `w -> h(lift w, lift w)` on GF(2)^{2N}.
pub fn pullback_quadratic(h: &HermitianForm) -> Result<QuadraticForm> {
    if !h.is_nonsingular() {
        return Err(parameter("Hermitian form is singular"));
    }
    Ok(QuadraticForm::from_evaluator(2 * h.n, |bits| pulled_back_norm(h, &Gf2Vector::from_raw(2 * h.n, bits))))
}

/// Hermitian norm of the lift of a GF(2) vector, read as a bit.
pub(crate) fn pulled_back_norm(h: &HermitianForm, w: &Gf2Vector) -> bool {
    let v = Gf4Vector::from_raw(h.n, w.bits());
    h.eval_unchecked(&v, &v) == Gf4::ONE
}
