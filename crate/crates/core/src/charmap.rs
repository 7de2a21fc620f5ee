//! Characteristic maps over `Z_2^n`.
//!
//! A [`CharMap`] assigns a nonzero vector to every facet. It is non-singular
//! at a vertex when the `n` vectors there are independent. Where that fails,
//! the offending minimal dependent subsets (circuits) are faces of the
//! polytope; those are the [`BadFace`]s the resolution step truncates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BitVector, Parity, MAX_DIM};
use crate::polytope::{FaceSet, Polytope};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    General,
    /// Every vector has an odd number of nonzero coordinates.
    Oriented,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::General => "general",
            Mode::Oriented => "oriented",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharMap {
    n: usize,
    mode: Mode,
    vectors: Vec<BitVector>,
}

impl CharMap {
    pub fn new(n: usize, mode: Mode, vectors: Vec<BitVector>) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::UnsupportedDimension(n));
        }
        for (index, &v) in vectors.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::ZeroVector { index });
            }
            if !v.fits(n) {
                return Err(Error::VectorTooWide {
                    index,
                    value: v.bits(),
                    n,
                });
            }
            if mode == Mode::Oriented && v.parity() == Parity::Even {
                return Err(Error::EvenVectorInOrientedMap {
                    index,
                    value: v.bits(),
                });
            }
        }
        Ok(CharMap { n, mode, vectors })
    }

    pub fn from_bits(n: usize, mode: Mode, bits: &[u32]) -> Result<Self> {
        Self::new(n, mode, bits.iter().map(|&b| BitVector(b)).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn vectors(&self) -> &[BitVector] {
        &self.vectors
    }

    pub fn vector(&self, facet: usize) -> BitVector {
        self.vectors[facet]
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors_at(&self, facets: &[usize]) -> Vec<BitVector> {
        facets.iter().map(|&i| self.vectors[i]).collect()
    }

    /// Appends the vector for a newly created facet.
    pub fn extended(&self, v: BitVector) -> Result<CharMap> {
        let mut vectors = self.vectors.clone();
        vectors.push(v);
        CharMap::new(self.n, self.mode, vectors)
    }

    /// Block-diagonal map for a product polytope: `self` on the first
    /// coordinates and facets, `other` shifted past them.
    pub fn stack(&self, other: &CharMap) -> Result<CharMap> {
        let vectors = self
            .vectors
            .iter()
            .copied()
            .chain(other.vectors.iter().map(|v| v.shifted(self.n)))
            .collect();
        let mode = if self.mode == Mode::Oriented && other.mode == Mode::Oriented {
            Mode::Oriented
        } else {
            Mode::General
        };
        CharMap::new(self.n + other.n, mode, vectors)
    }

    pub fn check_aligned(&self, p: &Polytope) -> Result<()> {
        if self.n != p.dim() || self.vectors.len() != p.facet_count() {
            return Err(Error::MapMismatch {
                map_dim: self.n,
                map_len: self.vectors.len(),
                dim: p.dim(),
                facets: p.facet_count(),
            });
        }
        Ok(())
    }
}

/// A face whose facet vectors form a circuit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadFace {
    pub face: FaceSet,
    pub circuit_size: usize,
    pub witness_vertex: FaceSet,
}

pub fn is_nonsingular_at(l: &CharMap, vertex: &[usize]) -> bool {
    gf2::is_independent(&l.vectors_at(vertex))
}

/// Every bad face, sorted by circuit size then lexicographically.
///
/// A face found from several vertices is reported once, with the smallest
/// witness vertex.
pub fn bad_faces(p: &Polytope, l: &CharMap) -> Result<Vec<BadFace>> {
    l.check_aligned(p)?;
    let mut found: BTreeMap<(usize, FaceSet), FaceSet> = BTreeMap::new();
    for v in p.vertices() {
        if is_nonsingular_at(l, v) {
            continue;
        }
        for circuit in gf2::circuits(&l.vectors_at(v))? {
            let face: FaceSet = circuit.iter().map(|&i| v[i]).collect();
            // vertices are visited in lexicographic order, so the first witness is smallest
            found.entry((face.len(), face)).or_insert_with(|| v.clone());
        }
    }
    Ok(found
        .into_iter()
        .map(|((circuit_size, face), witness_vertex)| BadFace {
            face,
            circuit_size,
            witness_vertex,
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedColoring {
    /// Color of each facet; the color id is the facet's vector.
    pub coloring: Vec<BitVector>,
    pub proper: bool,
    pub colors_used: usize,
}

pub fn induced_coloring(p: &Polytope, l: &CharMap) -> Result<InducedColoring> {
    l.check_aligned(p)?;
    let proper = p.vertices().iter().all(|v| {
        let mut seen = BTreeSet::new();
        v.iter().all(|&i| seen.insert(l.vector(i)))
    });
    let colors_used = l.vectors.iter().collect::<BTreeSet<_>>().len();
    Ok(InducedColoring {
        coloring: l.vectors.clone(),
        proper,
        colors_used,
    })
}

pub fn oriented_valid(l: &CharMap) -> bool {
    l.vectors.iter().all(|v| v.parity() == Parity::Odd)
}

/// Integer determinant of the 0/1 matrix whose columns are the vectors.
///
/// Bareiss fraction-free elimination, exact in `i128`.
pub fn integer_determinant(vectors: &[BitVector]) -> i128 {
    let n = vectors.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = (0..n)
        .map(|row| {
            vectors
                .iter()
                .map(|v| v.coefficient(row) as i128)
                .collect()
        })
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexDeterminant {
    pub vertex: FaceSet,
    pub determinant: i128,
}

/// Determinants of the naive 0/1 lift at every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub determinants: Vec<VertexDeterminant>,
    /// Vertices where `|det| != 1`.
    pub failures: Vec<VertexDeterminant>,
    pub all_odd: bool,
}

pub fn lift_determinant_report(p: &Polytope, l: &CharMap) -> Result<LiftReport> {
    l.check_aligned(p)?;
    let determinants: Vec<VertexDeterminant> = p
        .vertices()
        .iter()
        .map(|v| VertexDeterminant {
            vertex: v.clone(),
            determinant: integer_determinant(&l.vectors_at(v)),
        })
        .collect();
    let failures = determinants
        .iter()
        .filter(|d| d.determinant.abs() != 1)
        .cloned()
        .collect();
    let all_odd = determinants.iter().all(|d| d.determinant % 2 != 0);
    Ok(LiftReport {
        determinants,
        failures,
        all_odd,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// The fixed decoration of the dual of `C^4(15)`.
    PaperExample,
    /// Facets in order onto the odd-weight vectors, increasing; needs `m = 2^(n-1)`.
    OddBijection,
    /// `e_1, …, e_n` first, then the smallest unused nonzero masks.
    IdentityFirst,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::PaperExample => "paper-example",
            Preset::OddBijection => "odd-bijection",
            Preset::IdentityFirst => "identity-first",
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-example" => Ok(Preset::PaperExample),
            "odd-bijection" => Ok(Preset::OddBijection),
            "identity-first" => Ok(Preset::IdentityFirst),
            other => Err(Error::PresetMismatch {
                preset: other.to_string(),
                reason: "unknown preset".to_string(),
            }),
        }
    }
}

/// `F_i ↦` vector, as one-based basis indices.
const EXAMPLE_DECORATION: [&[usize]; 15] = [
    &[1],
    &[1, 2],
    &[3],
    &[4],
    &[1, 4],
    &[1, 2, 4],
    &[2, 4],
    &[2],
    &[2, 3],
    &[1, 2, 3],
    &[1, 3],
    &[1, 3, 4],
    &[3, 4],
    &[2, 3, 4],
    &[1, 2, 3, 4],
];

pub fn preset(name: Preset, n: usize, m: usize) -> Result<CharMap> {
    let mismatch = |reason: String| Error::PresetMismatch {
        preset: name.name().to_string(),
        reason,
    };
    if n == 0 || n > MAX_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    match name {
        Preset::PaperExample => {
            if n != 4 || m != 15 {
                return Err(mismatch(format!(
                    "needs dimension 4 with 15 facets, got dimension {n} with {m}"
                )));
            }
            let vectors = EXAMPLE_DECORATION
                .iter()
                .map(|b| BitVector::from_basis(b))
                .collect();
            CharMap::new(4, Mode::General, vectors)
        }
        Preset::OddBijection => {
            let want = 1usize << (n - 1);
            if m != want {
                return Err(mismatch(format!("needs {want} facets in dimension {n}, got {m}")));
            }
            let vectors = (1u32..1 << n)
                .map(BitVector)
                .filter(|v| v.parity() == Parity::Odd)
                .collect();
            CharMap::new(n, Mode::Oriented, vectors)
        }
        Preset::IdentityFirst => {
            let cap = (1usize << n) - 1;
            if m > cap || m < n {
                return Err(mismatch(format!(
                    "needs between {n} and {cap} facets, got {m}"
                )));
            }
            let mut vectors: Vec<BitVector> = (0..n).map(BitVector::basis).collect();
            let mut next = 1u32;
            while vectors.len() < m {
                let v = BitVector(next);
                if !vectors.contains(&v) {
                    vectors.push(v);
                }
                next += 1;
            }
            CharMap::new(n, Mode::General, vectors)
        }
    }
}
