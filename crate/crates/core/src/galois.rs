//! Scalars and bit-packed vectors over GF(2) and GF(4).
//!
//! GF(4) = {0, 1, w, w^2} with w^2 = w + 1. A scalar is stored as a 2-bit
//! code `x0 + 2*x1` for `x = x0 + x1*w`, so addition is XOR of codes and the
//! codes are 0 -> 0, 1 -> 1, w -> 2, w^2 -> 3.
//!
//! Vectors pack coordinate `i` into bits `[i*B, (i+1)*B)` of a `u32`, where
//! `B` is 1 for GF(2) and 2 for GF(4). With this layout a GF(4) vector of
//! length N and its field reduction in GF(2)^{2N} share the same bits.

use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Mul};

use crate::error::{GeometryError, Result};

/// A finite field of characteristic two whose elements fit in a few bits.
pub trait Field:
    Copy + Eq + Ord + Hash + fmt::Debug + fmt::Display + Add<Output = Self> + Mul<Output = Self> + Send + Sync + 'static
{
    const ORDER: u32;
    /// Bits used per coordinate in a packed vector.
    const BITS: u32;
    const ZERO: Self;
    const ONE: Self;

    fn code(self) -> u32;
    fn from_code(code: u32) -> Self;
    fn inv(self) -> Option<Self>;
    fn elements() -> &'static [Self];
    fn nonzero_elements() -> &'static [Self] {
        &Self::elements()[1..]
    }
    /// Multiplies every coordinate of a packed vector by `by`.
    fn scale_packed(bits: u32, by: Self) -> u32;

    /// Bilinear dot product `sum x_i y_i` of two packed vectors of length `len`.
    fn dot_packed(x: u32, y: u32, len: usize) -> Self {
        let mask = (1u32 << Self::BITS) - 1;
        (0..len).fold(Self::ZERO, |acc, i| {
            let shift = i as u32 * Self::BITS;
            acc + Self::from_code((x >> shift) & mask) * Self::from_code((y >> shift) & mask)
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gf2(u8);

impl Gf2 {
    pub const fn new(bit: bool) -> Self {
        Gf2(bit as u8)
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

impl Add for Gf2 {
    type Output = Gf2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Mul for Gf2 {
    type Output = Gf2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Gf2 {
    const ORDER: u32 = 2;
    const BITS: u32 = 1;
    const ZERO: Self = Gf2(0);
    const ONE: Self = Gf2(1);

    fn code(self) -> u32 {
        self.0 as u32
    }

    fn from_code(code: u32) -> Self {
        Gf2((code & 1) as u8)
    }

    fn inv(self) -> Option<Self> {
        (self.0 == 1).then_some(self)
    }

    fn elements() -> &'static [Self] {
        &[Gf2(0), Gf2(1)]
    }

    fn scale_packed(bits: u32, by: Self) -> u32 {
        if by.0 == 0 {
            0
        } else {
            bits
        }
    }

    fn dot_packed(x: u32, y: u32, _len: usize) -> Self {
        Gf2(((x & y).count_ones() & 1) as u8)
    }
}

/// An element of GF(4), stored as its 2-bit code.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gf4(u8);

const GF4_MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const OMEGA: Gf4 = Gf4(2);
    pub const OMEGA2: Gf4 = Gf4(3);

    /// Frobenius conjugation `x -> x^2`.
    pub fn conj(self) -> Gf4 {
        // swaps w and w^2, fixes 0 and 1
        Gf4(match self.0 {
            2 => 3,
            3 => 2,
            c => c,
        })
    }

    /// Absolute trace `x + x^2`, always 0 or 1.
    pub fn trace(self) -> Gf2 {
        Gf2((self.0 >> 1) & 1)
    }

    /// The GF(2) coordinates `(x0, x1)` of `x = x0 + x1*w`.
    pub fn to_gf2_pair(self) -> (Gf2, Gf2) {
        (Gf2(self.0 & 1), Gf2(self.0 >> 1))
    }

    /// Returns the subfield element if `self` lies in GF(2).
    pub fn to_gf2(self) -> Option<Gf2> {
        (self.0 < 2).then_some(Gf2(self.0))
    }
}

impl Add for Gf4 {
    type Output = Gf4;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Mul for Gf4 {
    type Output = Gf4;
    fn mul(self, rhs: Gf4) -> Gf4 {
        Gf4(GF4_MUL[self.0 as usize][rhs.0 as usize])
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "0",
            1 => "1",
            2 => "w",
            _ => "w^2",
        })
    }
}

const LOW_BITS: u32 = 0x5555_5555;

impl Field for Gf4 {
    const ORDER: u32 = 4;
    const BITS: u32 = 2;
    const ZERO: Self = Gf4(0);
    const ONE: Self = Gf4(1);

    fn code(self) -> u32 {
        self.0 as u32
    }

    fn from_code(code: u32) -> Self {
        Gf4((code & 3) as u8)
    }

    fn inv(self) -> Option<Self> {
        match self.0 {
            0 => None,
            1 => Some(self),
            c => Some(Gf4(c ^ 1)),
        }
    }

    fn elements() -> &'static [Self] {
        &[Gf4(0), Gf4(1), Gf4(2), Gf4(3)]
    }

    fn scale_packed(bits: u32, by: Self) -> u32 {
        // (x0 + x1 w) * w = x1 + (x0 + x1) w
        let times_omega = |b: u32| {
            let lo = b & LOW_BITS;
            let hi = (b >> 1) & LOW_BITS;
            hi | ((lo ^ hi) << 1)
        };
        match by.0 {
            0 => 0,
            1 => bits,
            2 => times_omega(bits),
            _ => times_omega(times_omega(bits)),
        }
    }
}

/// A coordinate vector over `F`, packed into a single machine word.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vector<F> {
    bits: u32,
    len: u8,
    field: PhantomData<F>,
}

pub type Gf2Vector = Vector<Gf2>;
pub type Gf4Vector = Vector<Gf4>;

impl<F: Field> Vector<F> {
    /// Largest supported length.
    pub const MAX_LEN: usize = (32 / F::BITS) as usize;

    fn mask(len: usize) -> u32 {
        let width = len as u32 * F::BITS;
        if width == 32 {
            u32::MAX
        } else {
            (1u32 << width) - 1
        }
    }

    pub(crate) fn from_raw(len: usize, bits: u32) -> Self {
        debug_assert!(len <= Self::MAX_LEN && bits & !Self::mask(len) == 0);
        Vector { bits, len: len as u8, field: PhantomData }
    }

    /// The zero vector of length `len`.
    ///
    /// Panics if `len` exceeds [`Self::MAX_LEN`].
    pub fn zero(len: usize) -> Self {
        assert!(len <= Self::MAX_LEN, "vector length {len} exceeds {}", Self::MAX_LEN);
        Self::from_raw(len, 0)
    }

    pub fn from_bits(len: usize, bits: u32) -> Result<Self> {
        if len > Self::MAX_LEN {
            return Err(GeometryError::Dimension { expected: format!("length <= {}", Self::MAX_LEN), actual: len });
        }
        if bits & !Self::mask(len) != 0 {
            return Err(GeometryError::Parameter(format!(
                "bit pattern {bits:#x} does not fit a vector of length {len}"
            )));
        }
        Ok(Self::from_raw(len, bits))
    }

    pub fn from_coords(coords: &[F]) -> Result<Self> {
        if coords.len() > Self::MAX_LEN {
            return Err(GeometryError::Dimension {
                expected: format!("length <= {}", Self::MAX_LEN),
                actual: coords.len(),
            });
        }
        let bits = coords.iter().enumerate().fold(0u32, |acc, (i, c)| acc | (c.code() << (i as u32 * F::BITS)));
        Ok(Self::from_raw(coords.len(), bits))
    }

    /// The `i`-th standard basis vector.
    pub fn unit(len: usize, i: usize) -> Self {
        assert!(i < len);
        Self::zero(len).with(i, F::ONE)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn get(&self, i: usize) -> F {
        debug_assert!(i < self.len());
        F::from_code(self.bits >> (i as u32 * F::BITS))
    }

    #[must_use]
    pub fn with(self, i: usize, value: F) -> Self {
        let shift = i as u32 * F::BITS;
        let cleared = self.bits & !(((1u32 << F::BITS) - 1) << shift);
        Self::from_raw(self.len(), cleared | (value.code() << shift))
    }

    pub fn coords(&self) -> Vec<F> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Index of the first nonzero coordinate.
    pub fn leading_index(&self) -> Option<usize> {
        (self.bits != 0).then(|| (self.bits.trailing_zeros() / F::BITS) as usize)
    }

    #[must_use]
    pub fn scale(self, by: F) -> Self {
        Self::from_raw(self.len(), F::scale_packed(self.bits, by))
    }

    /// Scales so that the first nonzero coordinate is one. Zero stays zero.
    #[must_use]
    pub fn normalized(self) -> Self {
        match self.leading_index() {
            None => self,
            Some(i) => {
                let lead = self.get(i);
                self.scale(lead.inv().expect("leading coordinate is nonzero"))
            }
        }
    }

    pub fn dot(&self, other: &Self) -> F {
        debug_assert_eq!(self.len, other.len);
        F::dot_packed(self.bits, other.bits, self.len())
    }

    /// All `ORDER^len` vectors of length `len` in packed-integer order.
    pub fn all(len: usize) -> impl Iterator<Item = Self> {
        assert!(len <= Self::MAX_LEN);
        let count = 1u64 << (len as u32 * F::BITS);
        (0..count).map(move |b| Self::from_raw(len, b as u32))
    }
}

impl<F: Field> Add for Vector<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.len, rhs.len);
        Self::from_raw(self.len(), self.bits ^ rhs.bits)
    }
}

impl<F: Field> AddAssign for Vector<F> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<F: Field> fmt::Display for Vector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for i in 0..self.len() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        f.write_str(")")
    }
}

impl<F: Field> fmt::Debug for Vector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector{self}")
    }
}

impl Gf2Vector {
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }
}

/// Reads a GF(4)^N vector as a GF(2)^{2N} vector in the basis {1, w}.
/// Component `i` lands on coordinates `2i` (coefficient of 1) and `2i+1`
/// (coefficient of w).
pub fn field_reduce(v: &Gf4Vector) -> Gf2Vector {
    Gf2Vector::from_raw(2 * v.len(), v.bits())
}

/// Inverse of [`field_reduce`].
pub fn field_lift(w: &Gf2Vector) -> Result<Gf4Vector> {
    if !w.len().is_multiple_of(2) {
        return Err(GeometryError::Dimension { expected: "even length".into(), actual: w.len() });
    }
    Ok(Gf4Vector::from_raw(w.len() / 2, w.bits()))
}

/// A square matrix over GF(2), stored by columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    n: usize,
    cols: Vec<u32>,
}

impl Gf2Matrix {
    pub fn identity(n: usize) -> Self {
        assert!(n <= 32);
        Gf2Matrix { n, cols: (0..n).map(|j| 1u32 << j).collect() }
    }

    pub fn from_columns(cols: &[Gf2Vector]) -> Result<Self> {
        let n = cols.len();
        if let Some(bad) = cols.iter().find(|c| c.len() != n) {
            return Err(GeometryError::Dimension { expected: format!("column length {n}"), actual: bad.len() });
        }
        Ok(Gf2Matrix { n, cols: cols.iter().map(|c| c.bits()).collect() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> Gf2Vector {
        Gf2Vector::from_raw(self.n, self.cols[j])
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        (self.cols[j] >> i) & 1 == 1
    }

    pub(crate) fn apply_bits(&self, x: u32) -> u32 {
        let mut out = 0;
        let mut rest = x;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            out ^= self.cols[j];
            rest &= rest - 1;
        }
        out
    }

    pub fn apply(&self, x: &Gf2Vector) -> Gf2Vector {
        assert_eq!(x.len(), self.n, "matrix/vector size mismatch");
        Gf2Vector::from_raw(self.n, self.apply_bits(x.bits()))
    }

    /// The product `self * rhs`.
    pub fn compose(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.n, rhs.n);
        Gf2Matrix { n: self.n, cols: rhs.cols.iter().map(|&c| self.apply_bits(c)).collect() }
    }

    pub fn inverse(&self) -> Option<Gf2Matrix> {
        // Gauss-Jordan on rows of [A | I].
        let n = self.n;
        let mut rows: Vec<(u32, u32)> = (0..n)
            .map(|i| {
                let row = (0..n).fold(0u32, |acc, j| acc | (((self.cols[j] >> i) & 1) << j));
                (row, 1u32 << i)
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| (rows[r].0 >> col) & 1 == 1)?;
            rows.swap(col, pivot);
            let (pr, pi) = rows[col];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && (row.0 >> col) & 1 == 1 {
                    row.0 ^= pr;
                    row.1 ^= pi;
                }
            }
        }
        let cols = (0..n).map(|j| (0..n).fold(0u32, |acc, i| acc | (((rows[i].1 >> j) & 1) << i))).collect();
        Some(Gf2Matrix { n, cols })
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.n, self.n)?;
        for i in 0..self.n {
            let row: String = (0..self.n).map(|j| if self.entry(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: Gf4 = Gf4::OMEGA;
    const W2: Gf4 = Gf4::OMEGA2;

    #[test]
    fn gf4_products() {
        assert_eq!(W * W, W2);
        assert_eq!(W * W2, Gf4::ONE);
        for &x in Gf4::elements() {
            assert_eq!(Gf4::ZERO * x, Gf4::ZERO);
        }
        // defining relation
        assert_eq!(W * W, W + Gf4::ONE);
    }

    #[test]
    fn gf4_field_laws_exhaustive() {
        let all = Gf4::elements();
        for &x in all {
            for &y in all {
                assert_eq!(x * y, y * x);
                assert_eq!((x * y).conj(), x.conj() * y.conj());
                assert_eq!((x + y).conj(), x.conj() + y.conj());
                assert_eq!((x + y).trace(), x.trace() + y.trace());
                for &z in all {
                    assert_eq!((x * y) * z, x * (y * z));
                    assert_eq!(x * (y + z), x * y + x * z);
                }
            }
            if x != Gf4::ZERO {
                assert_eq!(x * x * x, Gf4::ONE);
                assert_eq!(x * x.inv().unwrap(), Gf4::ONE);
            }
        }
        assert_eq!(W.inv(), Some(W2));
        assert_eq!(Gf4::ONE.inv(), Some(Gf4::ONE));
        assert_eq!(Gf4::ZERO.inv(), None);
    }

    #[test]
    fn conjugation_and_trace() {
        assert_eq!(W.conj(), W2);
        assert_eq!(Gf4::ONE.conj(), Gf4::ONE);
        assert_eq!(W2.conj().conj(), W2);
        let fixed: Vec<Gf4> = Gf4::elements().iter().copied().filter(|x| x.conj() == *x).collect();
        assert_eq!(fixed, vec![Gf4::ZERO, Gf4::ONE]);
        for &x in Gf4::elements() {
            assert_eq!(x.conj(), x * x);
            assert_eq!(Gf4::from_code(x.trace().code()), x + x * x);
        }
        assert_eq!(Gf4::ZERO.trace(), Gf2::ZERO);
        assert_eq!(Gf4::ONE.trace(), Gf2::ZERO);
        assert_eq!(W.trace(), Gf2::ONE);
        let kernel = Gf4::elements().iter().filter(|x| x.trace() == Gf2::ZERO).count();
        assert_eq!(kernel, 2);
    }

    #[test]
    fn packed_scaling_matches_table() {
        for v in Gf4Vector::all(3) {
            for &s in Gf4::elements() {
                let scaled = v.scale(s);
                for i in 0..3 {
                    assert_eq!(scaled.get(i), v.get(i) * s);
                }
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let v = Gf4Vector::from_coords(&[W]).unwrap();
        assert_eq!(field_reduce(&v).coords(), vec![Gf2::ZERO, Gf2::ONE]);
        let v = Gf4Vector::from_coords(&[W2]).unwrap();
        assert_eq!(field_reduce(&v).coords(), vec![Gf2::ONE, Gf2::ONE]);
        let v = Gf4Vector::from_coords(&[Gf4::ONE, Gf4::ZERO]).unwrap();
        assert_eq!(field_reduce(&v).coords(), vec![Gf2::ONE, Gf2::ZERO, Gf2::ZERO, Gf2::ZERO]);
    }

    #[test]
    fn reduce_uses_basis_one_omega_per_component() {
        for v in Gf4Vector::all(3) {
            let w = field_reduce(&v);
            for i in 0..3 {
                let (x0, x1) = v.get(i).to_gf2_pair();
                assert_eq!(w.get(2 * i), x0);
                assert_eq!(w.get(2 * i + 1), x1);
            }
        }
    }

    #[test]
    fn lift_examples_and_errors() {
        let w = Gf2Vector::from_coords(&[Gf2::ZERO, Gf2::ONE]).unwrap();
        assert_eq!(field_lift(&w).unwrap().coords(), vec![W]);
        assert!(field_lift(&Gf2Vector::zero(4)).unwrap().is_zero());
        assert_eq!(field_lift(&Gf2Vector::zero(4)).unwrap().len(), 2);
        assert!(matches!(field_lift(&Gf2Vector::zero(3)), Err(GeometryError::Dimension { .. })));
        for v in Gf4Vector::all(3) {
            assert_eq!(field_lift(&field_reduce(&v)).unwrap(), v);
        }
    }

    #[test]
    fn reduce_is_additive_exhaustive() {
        for u in Gf4Vector::all(2) {
            for v in Gf4Vector::all(2) {
                assert_eq!(field_reduce(&(u + v)), field_reduce(&u) + field_reduce(&v));
            }
        }
    }

    #[test]
    fn vector_basics() {
        let v = Gf4Vector::from_coords(&[Gf4::ZERO, W, Gf4::ONE]).unwrap();
        assert_eq!(v.leading_index(), Some(1));
        assert_eq!(v.normalized().coords(), vec![Gf4::ZERO, Gf4::ONE, W2]);
        assert_eq!(v.to_string(), "(0,w,1)");
        assert!(Gf2Vector::from_bits(2, 0b100).is_err());
        assert!(Gf4Vector::from_coords(&[Gf4::ONE; 17]).is_err());
        assert_eq!(Gf2Vector::all(32).nth(5).unwrap().bits(), 5);
    }

    #[test]
    fn matrix_inverse_roundtrip() {
        let cols: Vec<Gf2Vector> =
            [0b011u32, 0b110, 0b001].iter().map(|&b| Gf2Vector::from_bits(3, b).unwrap()).collect();
        let m = Gf2Matrix::from_columns(&cols).unwrap();
        let inv = m.inverse().expect("invertible");
        assert_eq!(m.compose(&inv), Gf2Matrix::identity(3));
        assert_eq!(inv.compose(&m), Gf2Matrix::identity(3));
        let singular = Gf2Matrix::from_columns(&[cols[0], cols[0], cols[2]]).unwrap();
        assert!(!singular.is_invertible());
    }
}
