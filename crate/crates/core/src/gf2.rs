//! Linear algebra over GF(2) on bitmask-encoded vectors.
//!
//! A vector of `Z_2^n` is stored as an integer whose bit `i` is the
//! coefficient of `e_{i+1}`, so `e1 + e3` in any dimension is `0b101 = 5`.
//! Addition is XOR. All routines here work on short lists (the facet vectors
//! at a single vertex) and favour plain Gaussian elimination or exhaustive
//! subset enumeration.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Largest ambient dimension supported by the bitmask encoding.
pub const MAX_DIM: usize = 16;

/// Largest list accepted by [`circuits`]; enumeration is `2^len`.
pub const MAX_CIRCUIT_INPUT: usize = 16;

/// An element of `Z_2^n`, bit `i` set iff the coefficient of `e_{i+1}` is 1.
#[derive(
    Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct BitVector(pub u32);

impl BitVector {
    pub const ZERO: BitVector = BitVector(0);

    /// The standard basis vector `e_{i+1}` (zero-based `i`).
    pub fn basis(i: usize) -> Self {
        BitVector(1 << i)
    }

    /// Builds a vector from one-based basis indices, `from_basis(&[1, 3])` is `e1 + e3`.
    pub fn from_basis(indices: &[usize]) -> Self {
        indices
            .iter()
            .fold(BitVector::ZERO, |acc, &i| acc ^ BitVector::basis(i - 1))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    pub fn parity(self) -> Parity {
        parity(self)
    }

    /// True when no bit at position `>= n` is set.
    pub fn fits(self, n: usize) -> bool {
        n >= 32 || self.0 >> n == 0
    }

    /// Coefficient of `e_{i+1}`.
    pub fn coefficient(self, i: usize) -> u8 {
        ((self.0 >> i) & 1) as u8
    }

    /// Shifts the coordinates up by `offset`, embedding `Z_2^k` into a later block.
    pub fn shifted(self, offset: usize) -> Self {
        BitVector(self.0 << offset)
    }
}

impl BitXor for BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: BitVector) -> BitVector {
        BitVector(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for BitVector {
    fn bitxor_assign(&mut self, rhs: BitVector) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// Writes the vector as a sum of basis vectors, e.g. `e1+e2+e4`, or `0`.
impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for i in 0..32 {
            if self.coefficient(i) == 1 {
                if !first {
                    f.write_str("+")?;
                }
                write!(f, "e{}", i + 1)?;
                first = false;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

/// Parity of a sum is the XOR of the parities.
impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

pub fn parity(v: BitVector) -> Parity {
    if v.weight() % 2 == 1 {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// Reduced echelon basis of a span, keyed by leading bit.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<BitVector>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors(vectors: &[BitVector]) -> Self {
        let mut basis = Self::new();
        for &v in vectors {
            basis.insert(v);
        }
        basis
    }

    /// Reduces `v` against the basis; zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: BitVector) -> BitVector {
        for &row in &self.rows {
            let lead = 31 - row.0.leading_zeros();
            if v.0 >> lead & 1 == 1 {
                v ^= row;
            }
        }
        v
    }

    /// Adds `v` to the span. Returns false when it was already there.
    pub fn insert(&mut self, v: BitVector) -> bool {
        let r = self.reduce(v);
        if r.is_zero() {
            return false;
        }
        // Keep rows ordered by decreasing leading bit so a single pass reduces.
        let lead = r.0.leading_zeros();
        let pos = self
            .rows
            .iter()
            .position(|row| row.0.leading_zeros() > lead)
            .unwrap_or(self.rows.len());
        self.rows.insert(pos, r);
        true
    }

    pub fn contains(&self, v: BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub fn rank(vectors: &[BitVector]) -> usize {
    EchelonBasis::from_vectors(vectors).rank()
}

pub fn is_independent(vectors: &[BitVector]) -> bool {
    rank(vectors) == vectors.len()
}

pub fn in_span(v: BitVector, vectors: &[BitVector]) -> bool {
    EchelonBasis::from_vectors(vectors).contains(v)
}

/// Every inclusion-minimal subset of positions whose vectors XOR to zero.
///
/// Subsets are visited by increasing size; a zero-sum subset is a circuit
/// exactly when it contains no circuit found earlier. Each circuit is sorted
/// and the list is lexicographic.
pub fn circuits(vectors: &[BitVector]) -> Result<Vec<Vec<usize>>, Error> {
    if let Some(index) = vectors.iter().position(|v| v.is_zero()) {
        return Err(Error::ZeroVector { index });
    }
    let k = vectors.len();
    if k > MAX_CIRCUIT_INPUT {
        return Err(Error::TooManyVectors {
            len: k,
            max: MAX_CIRCUIT_INPUT,
        });
    }
    let mut masks: Vec<u32> = (1u32..(1u32 << k)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));

    let mut found: Vec<u32> = Vec::new();
    for mask in masks {
        let sum = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .fold(BitVector::ZERO, |acc, i| acc ^ vectors[i]);
        if sum.is_zero() && found.iter().all(|&c| c & mask != c) {
            found.push(mask);
        }
    }
    let mut out: Vec<Vec<usize>> = found
        .into_iter()
        .map(|m| (0..k).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    out.sort();
    Ok(out)
}
