//! Removing bad faces by truncation.
//!
//! Each round detects the bad faces of the current map, cuts off the one
//! with the smallest circuit (edges before vertices in dimension 4) and gives
//! the new facet a vector that keeps every newly created vertex non-singular.
//! Bad faces never appear at new vertices, so the bad set shrinks by at least
//! the truncated face each round.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::charmap::{bad_faces, BadFace, CharMap, Mode};
use crate::error::{Error, Result};
use crate::gf2::{BitVector, EchelonBasis, Parity};
use crate::polytope::{FaceSet, Polytope};

pub const DEFAULT_BUDGET: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionStep {
    pub face: FaceSet,
    pub circuit_size: usize,
    pub new_facet_index: usize,
    pub chosen_vector: BitVector,
    pub vertices_removed: usize,
    pub vertices_added: usize,
    /// Bad faces by circuit size when this face was selected.
    pub pending_by_size: BTreeMap<usize, usize>,
    /// Bad faces left after the truncation.
    pub remaining_bad: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Success,
    BudgetExhausted,
    NoVectorFound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionReport {
    pub initial_bad_count: usize,
    pub initial_bad_faces: Vec<BadFace>,
    pub steps: Vec<ResolutionStep>,
    pub terminated: Termination,
    /// The face the loop could not resolve, when `terminated` is `no_vector_found`.
    pub stalled_face: Option<FaceSet>,
    pub final_polytope: Polytope,
    pub final_map: CharMap,
}

impl ResolutionReport {
    pub fn succeeded(&self) -> bool {
        self.terminated == Termination::Success
    }
}

/// Smallest vector for the facet created by truncating `face` such that
/// every new vertex `(V \ {s}) ∪ {new}` is non-singular.
///
/// Candidates are tried in increasing bitmask order; oriented maps only
/// consider odd vectors.
pub fn resolution_vector(p: &Polytope, l: &CharMap, face: &[usize]) -> Result<BitVector> {
    l.check_aligned(p)?;
    let mut s = face.to_vec();
    s.sort_unstable();
    if !p.is_face(&s) {
        return Err(Error::NotAFace { face: s });
    }
    let n = l.dim();
    let no_vector = || Error::NoVectorFound { face: s.clone() };

    // One span per prospective new vertex; the new vector must avoid all of them.
    let mut spans = Vec::new();
    for v in p.vertices_on(&s) {
        for &drop in &s {
            let rest: Vec<BitVector> = v
                .iter()
                .filter(|&&i| i != drop)
                .map(|&i| l.vector(i))
                .collect();
            let basis = EchelonBasis::from_vectors(&rest);
            if basis.rank() < rest.len() {
                return Err(no_vector());
            }
            spans.push(basis);
        }
    }
    (1u32..1 << n)
        .map(BitVector)
        .filter(|w| l.mode() == Mode::General || w.parity() == Parity::Odd)
        .find(|&w| spans.iter().all(|b| !b.contains(w)))
        .ok_or_else(no_vector)
}

fn count_by_size(bad: &[BadFace]) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for b in bad {
        *counts.entry(b.circuit_size).or_default() += 1;
    }
    counts
}

/// Truncates bad faces until none remain or `budget` steps have been taken.
///
/// Only edges and vertices are cut; a bad face of dimension two or more
/// stops the loop with [`Termination::NoVectorFound`].
pub fn resolve(p: &Polytope, l: &CharMap, budget: usize) -> Result<ResolutionReport> {
    l.check_aligned(p)?;
    let mut poly = p.clone();
    let mut map = l.clone();
    let initial_bad_faces = bad_faces(&poly, &map)?;
    let mut bad = initial_bad_faces.clone();
    let mut steps: Vec<ResolutionStep> = Vec::new();
    let mut stalled_face = None;

    let terminated = loop {
        if let Some(last) = steps.last_mut() {
            debug_assert!(bad.len() < last.pending_by_size.values().sum::<usize>());
            last.remaining_bad = bad.len();
        }
        let Some(target) = bad.first() else {
            break Termination::Success;
        };
        if steps.len() >= budget {
            break Termination::BudgetExhausted;
        }
        let face = target.face.clone();
        if face.len() + 1 < poly.dim() {
            stalled_face = Some(face);
            break Termination::NoVectorFound;
        }
        let chosen = match resolution_vector(&poly, &map, &face) {
            Ok(w) => w,
            Err(Error::NoVectorFound { .. }) => {
                stalled_face = Some(face);
                break Termination::NoVectorFound;
            }
            Err(e) => return Err(e),
        };
        let removed = poly.vertices_on(&face).count();
        let (next, new_facet_index) = poly.truncate_face(&face)?;
        map = map.extended(chosen)?;
        steps.push(ResolutionStep {
            circuit_size: target.circuit_size,
            new_facet_index,
            chosen_vector: chosen,
            vertices_removed: removed,
            vertices_added: removed * face.len(),
            pending_by_size: count_by_size(&bad),
            remaining_bad: 0,
            face,
        });
        poly = next;
        bad = bad_faces(&poly, &map)?;
    };

    Ok(ResolutionReport {
        initial_bad_count: initial_bad_faces.len(),
        initial_bad_faces,
        steps,
        terminated,
        stalled_face,
        final_polytope: poly,
        final_map: map,
    })
}
