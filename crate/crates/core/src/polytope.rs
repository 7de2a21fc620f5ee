//! Combinatorial simple polytopes.
//!
//! A simple `n`-polytope is stored by its vertex–facet incidences: every
//! vertex is the sorted `n`-set of facets meeting there. Because the polytope
//! is simple, a codimension-`k` face is identified with the `k`-set of facets
//! containing it, and such a set is a face exactly when some vertex contains
//! it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A face, written as the sorted set of facet indices containing it.
pub type FaceSet = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    facets: Vec<String>,
    vertices: Vec<FaceSet>,
}

/// A violated structural invariant together with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    DimensionTooSmall { dim: usize },
    TooFewFacets { facets: usize, dim: usize },
    WrongArity { vertex: Vec<usize>, expected: usize },
    RepeatedFacet { vertex: Vec<usize> },
    FacetOutOfRange { vertex: Vec<usize>, facet: usize },
    DuplicateVertex { vertex: Vec<usize> },
    SparseFacet { facet: usize, vertices: usize, required: usize },
    EdgeCondition { edge: Vec<usize>, endpoints: usize },
}

impl Diagnostic {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Diagnostic::DimensionTooSmall { .. } => "dimension",
            Diagnostic::TooFewFacets { .. } => "too-few-facets",
            Diagnostic::WrongArity { .. } => "wrong-arity",
            Diagnostic::RepeatedFacet { .. } => "repeated-facet",
            Diagnostic::FacetOutOfRange { .. } => "facet-out-of-range",
            Diagnostic::DuplicateVertex { .. } => "duplicate-vertex",
            Diagnostic::SparseFacet { .. } => "sparse-facet",
            Diagnostic::EdgeCondition { .. } => "edge-condition",
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::DimensionTooSmall { dim } => write!(f, "dimension {dim} is below 1"),
            Diagnostic::TooFewFacets { facets, dim } => {
                write!(f, "{facets} facets is too few for dimension {dim}")
            }
            Diagnostic::WrongArity { vertex, expected } => write!(
                f,
                "vertex {vertex:?} lies on {} facets, expected {expected}",
                vertex.len()
            ),
            Diagnostic::RepeatedFacet { vertex } => {
                write!(f, "vertex {vertex:?} repeats a facet")
            }
            Diagnostic::FacetOutOfRange { vertex, facet } => {
                write!(f, "vertex {vertex:?} names facet {facet}, which does not exist")
            }
            Diagnostic::DuplicateVertex { vertex } => write!(f, "vertex {vertex:?} is listed twice"),
            Diagnostic::SparseFacet {
                facet,
                vertices,
                required,
            } => write!(
                f,
                "facet {facet} has {vertices} vertices, a simple facet needs at least {required}"
            ),
            Diagnostic::EdgeCondition { edge, endpoints } => {
                write!(f, "edge {edge:?} has {endpoints} endpoints, expected 2")
            }
        }
    }
}

pub fn default_labels(m: usize) -> Vec<String> {
    (0..m).map(|i| format!("F{i}")).collect()
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    // both sorted
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

impl Polytope {
    /// Canonicalizes the vertex list and rejects anything that fails [`Polytope::validate`].
    pub fn new(dim: usize, facets: Vec<String>, vertices: Vec<Vec<usize>>) -> Result<Self> {
        let p = Self::from_raw(dim, facets, vertices);
        let diags = p.validate();
        if diags.is_empty() {
            Ok(p)
        } else {
            Err(Error::InvalidPolytope(diags))
        }
    }

    pub fn with_default_labels(dim: usize, m: usize, vertices: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(dim, default_labels(m), vertices)
    }

    /// Sorts each vertex set and the vertex list without checking anything.
    /// Duplicates are kept so that [`Polytope::validate`] can report them.
    pub fn from_raw(dim: usize, facets: Vec<String>, mut vertices: Vec<Vec<usize>>) -> Self {
        for v in &mut vertices {
            v.sort_unstable();
        }
        vertices.sort();
        Polytope {
            dim,
            facets,
            vertices,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.facets
    }

    pub fn label(&self, facet: usize) -> &str {
        &self.facets[facet]
    }

    pub fn vertices(&self) -> &[FaceSet] {
        &self.vertices
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let n = self.dim;
        let m = self.facets.len();
        let mut diags = Vec::new();
        if n < 1 {
            diags.push(Diagnostic::DimensionTooSmall { dim: n });
            return diags;
        }
        if m < n + 1 {
            diags.push(Diagnostic::TooFewFacets { facets: m, dim: n });
        }

        let mut well_formed = true;
        for v in &self.vertices {
            if v.len() != n {
                diags.push(Diagnostic::WrongArity {
                    vertex: v.clone(),
                    expected: n,
                });
                well_formed = false;
            }
            if v.windows(2).any(|w| w[0] == w[1]) {
                diags.push(Diagnostic::RepeatedFacet { vertex: v.clone() });
                well_formed = false;
            }
            if let Some(&facet) = v.iter().find(|&&i| i >= m) {
                diags.push(Diagnostic::FacetOutOfRange {
                    vertex: v.clone(),
                    facet,
                });
                well_formed = false;
            }
        }
        for w in self.vertices.windows(2) {
            if w[0] == w[1] {
                diags.push(Diagnostic::DuplicateVertex {
                    vertex: w[0].clone(),
                });
            }
        }
        if !well_formed {
            return diags;
        }

        let mut occurrences = vec![0usize; m];
        for &i in self.vertices.iter().flatten() {
            occurrences[i] += 1;
        }
        for (facet, &count) in occurrences.iter().enumerate() {
            if count < n {
                diags.push(Diagnostic::SparseFacet {
                    facet,
                    vertices: count,
                    required: n,
                });
            }
        }

        let distinct: BTreeSet<&FaceSet> = self.vertices.iter().collect();
        let mut edges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for v in distinct {
            for edge in v.iter().copied().combinations(n - 1) {
                *edges.entry(edge).or_default() += 1;
            }
        }
        for (edge, endpoints) in edges {
            if endpoints != 2 {
                diags.push(Diagnostic::EdgeCondition { edge, endpoints });
            }
        }
        diags
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// True iff the facet set (in any order) lies in some vertex.
    pub fn is_face(&self, face: &[usize]) -> bool {
        let mut s = face.to_vec();
        s.sort_unstable();
        self.vertices.iter().any(|v| is_subset(&s, v))
    }

    /// Vertices lying on the face.
    pub fn vertices_on<'a>(&'a self, face: &'a [usize]) -> impl Iterator<Item = &'a FaceSet> + 'a {
        self.vertices.iter().filter(move |v| is_subset(face, v))
    }

    pub fn faces_of_codim(&self, k: usize) -> Vec<FaceSet> {
        if k == 0 || k > self.dim {
            return Vec::new();
        }
        let faces: BTreeSet<FaceSet> = self
            .vertices
            .iter()
            .flat_map(|v| v.iter().copied().combinations(k))
            .collect();
        faces.into_iter().collect()
    }

    /// `[f_0, f_1, …, f_{n-1}]`, with `f_j` the number of `j`-dimensional faces.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.dim)
            .map(|j| {
                if j == 0 {
                    self.vertices.len()
                } else {
                    self.faces_of_codim(self.dim - j).len()
                }
            })
            .collect()
    }

    /// `f_0 - f_1 + f_2 - …` over the proper faces.
    pub fn euler_sum(&self) -> i64 {
        alternating_sum(&self.f_vector())
    }

    pub fn facet_adjacency(&self) -> Vec<Vec<bool>> {
        let m = self.facets.len();
        let mut adj = vec![vec![false; m]; m];
        for v in &self.vertices {
            for (&i, &j) in v.iter().tuple_combinations() {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
        adj
    }

    /// Cuts off a face of codimension at least 2.
    ///
    /// Each vertex `V` on the face is replaced by `(V \ {s}) ∪ {new}` for every
    /// facet `s` of the face; the new facet gets index `m` and label
    /// `T(<labels of the face>)`.
    pub fn truncate_face(&self, face: &[usize]) -> Result<(Polytope, usize)> {
        let mut s = face.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() < 2 || s.len() > self.dim {
            return Err(Error::NotTruncatable { face: s });
        }
        if !self.is_face(&s) {
            return Err(Error::NotAFace { face: s });
        }
        let new_facet = self.facets.len();
        let mut vertices = Vec::with_capacity(self.vertices.len() + s.len());
        for v in &self.vertices {
            if is_subset(&s, v) {
                for &drop in &s {
                    let mut nv: Vec<usize> = v.iter().copied().filter(|&i| i != drop).collect();
                    nv.push(new_facet);
                    vertices.push(nv);
                }
            } else {
                vertices.push(v.clone());
            }
        }
        let mut facets = self.facets.clone();
        facets.push(format!(
            "T({})",
            s.iter().map(|&i| self.facets[i].as_str()).join(",")
        ));
        let p = Polytope::new(self.dim, facets, vertices)?;
        Ok((p, new_facet))
    }
}

pub fn alternating_sum(f: &[usize]) -> i64 {
    f.iter()
        .enumerate()
        .map(|(j, &c)| if j % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// The value `f_0 - f_1 + … ± f_{n-1}` takes on every simple `n`-polytope.
pub fn expected_euler_sum(dim: usize) -> i64 {
    if dim.is_multiple_of(2) {
        0
    } else {
        2
    }
}
