//! The N-qubit Pauli group modulo phases, as points of W(2N-1, 2).
//!
//! Qubit `i` of an operator occupies coordinates `2i` (X part `a_i`) and
//! `2i + 1` (Z part `b_i`), so I = (0,0), X = (1,0), Y = (1,1), Z = (0,1).
//! The leftmost label character is qubit 0.

use std::fmt;
use std::str::FromStr;

use crate::error::{parameter, GeometryError, Result};
use crate::forms::{maximal_isotropic_subspaces, symplectic_pair_bits};
use crate::galois::Gf2Vector;
use crate::projgeom::{Gf2Point, Gf2Subspace};

pub const SYMMETRIC_N_RANGE: std::ops::RangeInclusive<usize> = 2..=6;
pub const COMMUTING_N_RANGE: std::ops::RangeInclusive<usize> = 2..=4;

const LOW_BITS: u32 = 0x5555_5555;

/// A non-identity Pauli operator up to phase.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliOperator {
    bits: u32,
    n: u8,
}

impl PauliOperator {
    pub fn from_point(v: &Gf2Vector) -> Result<Self> {
        if !v.len().is_multiple_of(2) || v.len() < 4 {
            return Err(GeometryError::Dimension { expected: "even length >= 4".into(), actual: v.len() });
        }
        if v.is_zero() {
            return Err(parameter("the identity is not a point of W(2N-1,2)"));
        }
        Ok(PauliOperator { bits: v.bits(), n: (v.len() / 2) as u8 })
    }

    pub fn qubits(&self) -> usize {
        self.n as usize
    }

    /// The operator as a vector of GF(2)^{2N}.
    pub fn vector(&self) -> Gf2Vector {
        Gf2Vector::from_raw(2 * self.qubits(), self.bits)
    }

    pub fn point(&self) -> Gf2Point {
        Gf2Point::new(self.vector()).expect("operator is never the identity")
    }

    /// The X part `a`.
    pub fn x_part(&self) -> Gf2Vector {
        Gf2Vector::from_raw(self.qubits(), compress(self.bits & LOW_BITS))
    }

    /// The Z part `b`.
    pub fn z_part(&self) -> Gf2Vector {
        Gf2Vector::from_raw(self.qubits(), compress((self.bits >> 1) & LOW_BITS))
    }

    pub fn factor(&self, qubit: usize) -> char {
        match (self.bits >> (2 * qubit)) & 3 {
            0 => 'I',
            1 => 'X',
            3 => 'Y',
            _ => 'Z',
        }
    }

    pub fn label(&self) -> String {
        (0..self.qubits()).map(|i| self.factor(i)).collect()
    }

    /// Symmetric (equal to its transpose) iff `a . b = 0`, i.e. an even
    /// number of Y factors.
    pub fn is_symmetric(&self) -> bool {
        let ys = self.bits & (self.bits >> 1) & LOW_BITS;
        ys.count_ones().is_multiple_of(2)
    }
}

/// Packs the even-position bits of `x` into consecutive low bits.
fn compress(x: u32) -> u32 {
    (0..16).fold(0, |acc, i| acc | (((x >> (2 * i)) & 1) << i))
}

impl FromStr for PauliOperator {
    type Err = GeometryError;

    fn from_str(label: &str) -> Result<Self> {
        let n = label.chars().count();
        if !(2..=16).contains(&n) {
            return Err(GeometryError::Parse(format!("label {label:?} must have 2 to 16 factors")));
        }
        let mut bits = 0u32;
        for (i, c) in label.chars().enumerate() {
            let pair = match c {
                'I' => 0,
                'X' => 1,
                'Z' => 2,
                'Y' => 3,
                other => return Err(GeometryError::Parse(format!("illegal Pauli factor {other:?} in {label:?}"))),
            };
            bits |= pair << (2 * i);
        }
        if bits == 0 {
            return Err(GeometryError::Parse("the identity label is excluded".into()));
        }
        Ok(PauliOperator { bits, n: n as u8 })
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({})", self.label())
    }
}

/// Whether the two operators commute: `a.b' + a'.b = 0`.
pub fn commutes(p: &PauliOperator, q: &PauliOperator) -> Result<bool> {
    if p.n != q.n {
        return Err(parameter(format!("operators act on {} and {} qubits", p.n, q.n)));
    }
    Ok(!symplectic_pair_bits(p.bits, q.bits))
}

pub fn is_symmetric(p: &PauliOperator) -> bool {
    p.is_symmetric()
}

fn check_range(n: usize, range: &std::ops::RangeInclusive<usize>) -> Result<()> {
    if range.contains(&n) {
        Ok(())
    } else {
        Err(parameter(format!("N = {n} is outside {}..={}", range.start(), range.end())))
    }
}

/// All symmetric N-qubit operators, in packed order.
pub fn symmetric_set(n: usize) -> Result<Vec<PauliOperator>> {
    check_range(n, &SYMMETRIC_N_RANGE)?;
    Ok((1u32..1 << (2 * n))
        .map(|bits| PauliOperator { bits, n: n as u8 })
        .filter(PauliOperator::is_symmetric)
        .collect())
}

/// Maximal totally isotropic subspaces of W(2N-1, 2), one per maximal set
/// of pairwise commuting operators.
pub fn maximal_commuting_sets(n: usize) -> Result<Vec<Gf2Subspace>> {
    check_range(n, &COMMUTING_N_RANGE)?;
    maximal_isotropic_subspaces(2 * n, |_| true, |x, y| !symplectic_pair_bits(x, y))
}

/// The nonidentity operators in a subspace of GF(2)^{2N}.
pub fn operators_in(s: &Gf2Subspace) -> Result<Vec<PauliOperator>> {
    s.points().iter().map(|p| PauliOperator::from_point(&p.vector())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(label: &str) -> PauliOperator {
        label.parse().unwrap()
    }

    #[test]
    fn label_encoding() {
        let xz = op("XZ");
        assert_eq!(xz.x_part().bits(), 0b01);
        assert_eq!(xz.z_part().bits(), 0b10);
        let yy = op("YY");
        assert_eq!(yy.x_part().bits(), 0b11);
        assert_eq!(yy.z_part().bits(), 0b11);
        assert_eq!(op("XIZY").label(), "XIZY");
    }

    #[test]
    fn label_errors() {
        for bad in ["", "II", "XA", "X", "xz"] {
            assert!(matches!(bad.parse::<PauliOperator>(), Err(GeometryError::Parse(_))), "{bad:?}");
        }
    }

    #[test]
    fn commutation_examples() {
        assert!(!commutes(&op("XI"), &op("ZI")).unwrap());
        assert!(commutes(&op("XX"), &op("ZZ")).unwrap());
        assert!(commutes(&op("XI"), &op("IZ")).unwrap());
        assert!(commutes(&op("XI"), &op("XIZ")).is_err());
    }

    #[test]
    fn symmetry_examples() {
        assert!(op("YY").is_symmetric());
        assert!(!op("XY").is_symmetric());
        assert!(op("XZ").is_symmetric());
    }

    #[test]
    fn two_qubit_symmetric_set() {
        let mut labels: Vec<String> = symmetric_set(2).unwrap().iter().map(|p| p.label()).collect();
        labels.sort();
        let mut expected = vec!["IX", "IZ", "XI", "ZI", "XX", "XZ", "ZX", "ZZ", "YY"];
        expected.sort();
        assert_eq!(labels, expected);
        assert!(symmetric_set(1).is_err());
        assert!(symmetric_set(7).is_err());
    }

    #[test]
    fn pairing_is_bilinear_and_symmetric() {
        let all: Vec<u32> = (1u32..16).collect();
        for &p in &all {
            assert!(!symplectic_pair_bits(p, p));
            for &q1 in &all {
                assert_eq!(symplectic_pair_bits(p, q1), symplectic_pair_bits(q1, p));
                for &q2 in &all {
                    assert_eq!(
                        symplectic_pair_bits(p, q1 ^ q2),
                        symplectic_pair_bits(p, q1) ^ symplectic_pair_bits(p, q2)
                    );
                }
            }
        }
    }

    #[test]
    fn small_commuting_sets() {
        let sets = maximal_commuting_sets(2).unwrap();
        assert_eq!(sets.len(), 15);
        for s in &sets {
            let ops = operators_in(s).unwrap();
            assert_eq!(ops.len(), 3);
            for a in &ops {
                for b in &ops {
                    assert!(commutes(a, b).unwrap());
                }
            }
        }
        assert!(maximal_commuting_sets(5).is_err());
    }

    /// Gaussian-integer matrices for the literal operator check.
    type C = (i32, i32);

    fn cmul(a: C, b: C) -> C {
        (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
    }

    fn single(c: char) -> [[C; 2]; 2] {
        let (o, z, i) = ((1, 0), (0, 0), (0, 1));
        match c {
            'I' => [[o, z], [z, o]],
            'X' => [[z, o], [o, z]],
            'Z' => [[o, z], [z, (-1, 0)]],
            _ => [[z, (0, -1)], [i, z]],
        }
    }

    fn kron(label: &str) -> [[C; 4]; 4] {
        let chars: Vec<char> = label.chars().collect();
        let (a, b) = (single(chars[0]), single(chars[1]));
        let mut m = [[(0, 0); 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                m[r][c] = cmul(a[r / 2][c / 2], b[r % 2][c % 2]);
            }
        }
        m
    }

    fn matmul(a: &[[C; 4]; 4], b: &[[C; 4]; 4]) -> [[C; 4]; 4] {
        let mut m = [[(0, 0); 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                for k in 0..4 {
                    let t = cmul(a[r][k], b[k][c]);
                    m[r][c] = (m[r][c].0 + t.0, m[r][c].1 + t.1);
                }
            }
        }
        m
    }

    #[test]
    fn matrix_oracle_two_qubits() {
        let labels: Vec<String> = (1u32..16).map(|b| PauliOperator { bits: b, n: 2 }.label()).collect();
        for l in &labels {
            let m = kron(l);
            let transpose_equal = (0..4).all(|r| (0..4).all(|c| m[r][c] == m[c][r]));
            assert_eq!(op(l).is_symmetric(), transpose_equal, "{l}");
            for k in &labels {
                let n = kron(k);
                let literal = matmul(&m, &n) == matmul(&n, &m);
                assert_eq!(commutes(&op(l), &op(k)).unwrap(), literal, "{l} {k}");
            }
        }
    }
}
