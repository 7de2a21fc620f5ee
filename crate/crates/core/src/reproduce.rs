//! Scripted end-to-end runs for the three constructions.
//!
//! * `main`: dual of `C^4(15)` with the fixed decoration, resolved to a
//!   4-polytope with chromatic number 15 carrying a characteristic map.
//! * `main2`: dual of `C^4(8)` with the odd-weight bijection, an oriented
//!   4-dimensional example with chromatic number 8.
//! * `main3`: dual of `C^5(16)` with the odd-weight bijection, an oriented
//!   5-dimensional example with chromatic number 16.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use itertools::Itertools;
use serde::Serialize;

use crate::charmap::{
    bad_faces, induced_coloring, is_nonsingular_at, lift_determinant_report, oriented_valid,
    preset, BadFace, CharMap, Preset,
};
use crate::chromatic::{chromatic_number, ChromaticCertificate};
use crate::error::{Error, Result};
use crate::generators::dual_cyclic;
use crate::gf2::Parity;
use crate::polytope::{alternating_sum, expected_euler_sum, FaceSet, Polytope};
use crate::resolution::{resolution_vector, resolve, ResolutionReport, DEFAULT_BUDGET};

/// Face counts printed alongside the worked decoration, `[f_0, f_1, f_2, f_3]`.
pub const PRINTED_F_VECTOR: [usize; 4] = [193, 386, 228, 45];

/// Bad edges printed for the worked decoration, in printed order.
pub const PRINTED_BAD_EDGES: [[usize; 3]; 13] = [
    [2, 7, 8],
    [1, 2, 9],
    [3, 10, 11],
    [2, 3, 12],
    [4, 5, 7],
    [7, 9, 10],
    [7, 12, 13],
    [0, 3, 4],
    [0, 5, 6],
    [0, 8, 9],
    [0, 11, 12],
    [0, 13, 14],
    [0, 1, 7],
];

/// Bad vertices printed for the worked decoration, in printed order.
pub const PRINTED_BAD_VERTICES: [[usize; 4]; 17] = [
    [3, 4, 5, 6],
    [3, 4, 8, 9],
    [3, 4, 11, 12],
    [3, 4, 13, 14],
    [4, 5, 9, 10],
    [4, 5, 12, 13],
    [5, 6, 8, 9],
    [5, 6, 11, 12],
    [5, 6, 13, 14],
    [6, 7, 10, 11],
    [8, 9, 11, 12],
    [8, 9, 13, 14],
    [9, 10, 12, 13],
    [11, 12, 13, 14],
    [0, 1, 4, 5],
    [0, 1, 9, 10],
    [0, 1, 12, 13],
];

/// Outcome of truncating exactly a given list of faces.
#[derive(Clone, Debug, Serialize)]
pub struct ListedTruncation {
    pub faces: usize,
    pub f_vector: Vec<usize>,
    pub euler_sum: i64,
    /// Bad faces still present afterwards.
    pub remaining_bad: Vec<FaceSet>,
}

/// Truncates `faces` in order, each new facet getting its resolving vector.
pub fn truncate_listed(
    p: &Polytope,
    l: &CharMap,
    faces: &[FaceSet],
) -> Result<(Polytope, CharMap, ListedTruncation)> {
    let mut poly = p.clone();
    let mut map = l.clone();
    for face in faces {
        let w = resolution_vector(&poly, &map, face)?;
        let (next, _) = poly.truncate_face(face)?;
        poly = next;
        map = map.extended(w)?;
    }
    let f = poly.f_vector();
    let summary = ListedTruncation {
        faces: faces.len(),
        euler_sum: alternating_sum(&f),
        f_vector: f,
        remaining_bad: bad_faces(&poly, &map)?.into_iter().map(|b| b.face).collect(),
    };
    Ok((poly, map, summary))
}

/// The printed bad faces, edges first.
pub fn printed_bad_faces() -> Vec<FaceSet> {
    PRINTED_BAD_EDGES
        .iter()
        .map(|e| e.to_vec())
        .chain(PRINTED_BAD_VERTICES.iter().map(|v| v.to_vec()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Main,
    Main2,
    Main3,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Main => "main",
            Target::Main2 => "main2",
            Target::Main3 => "main3",
        }
    }

    fn setup(self) -> (usize, usize, Preset) {
        match self {
            Target::Main => (4, 15, Preset::PaperExample),
            Target::Main2 => (4, 8, Preset::OddBijection),
            Target::Main3 => (5, 16, Preset::OddBijection),
        }
    }

    fn expected_chi(self) -> usize {
        match self {
            Target::Main => 15,
            Target::Main2 => 8,
            Target::Main3 => 16,
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "main" => Ok(Target::Main),
            "main2" => Ok(Target::Main2),
            "main3" => Ok(Target::Main3),
            other => Err(Error::Schema(format!("unknown reproduce target `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftSummary {
    pub vertices: usize,
    pub all_odd: bool,
    /// Vertices where the 0/1 lift has `|det| != 1`; reported, not required.
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub target: Target,
    pub notes: Vec<String>,
    pub dim: usize,
    pub initial_facets: usize,
    pub preset: String,
    pub initial_bad_edges: usize,
    pub initial_bad_vertices: usize,
    pub initial_bad_by_size: BTreeMap<usize, usize>,
    /// Whether the initially bad edges share no endpoint.
    pub bad_edges_vertex_disjoint: bool,
    pub steps: usize,
    pub steps_by_size: BTreeMap<usize, usize>,
    /// Circuit sizes seen among the bad faces at any step. Bad sets only
    /// shrink, so every face seen is already among the initial ones.
    pub circuit_sizes_observed: BTreeSet<usize>,
    pub final_f_vector: Vec<usize>,
    pub euler_sum: i64,
    pub euler_expected: i64,
    pub colors_used_by_map: usize,
    pub chi: usize,
    pub chi_exact: bool,
    pub clique: Vec<usize>,
    pub lift: LiftSummary,
    /// Detected bad faces missing from the printed lists, and printed ones not detected.
    pub unlisted_bad_faces: Vec<FaceSet>,
    pub listed_but_not_bad: Vec<FaceSet>,
    /// Truncating only the printed faces, for comparison with the printed counts.
    pub listed_only: Option<ListedTruncation>,
    pub checks: Vec<Check>,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One-line digest, e.g. `bad edges: 13, bad vertices: 17, steps: 30, …`.
    pub fn headline(&self) -> String {
        match self.target {
            Target::Main => format!(
                "bad edges: {}, bad vertices: {}, steps: {}, f = [{}], chi = {}",
                self.initial_bad_edges,
                self.initial_bad_vertices,
                self.steps,
                self.final_f_vector.iter().join(", "),
                self.chi
            ),
            Target::Main2 => format!(
                "oriented: {}, chi = {}",
                self.check_passed("oriented throughout"),
                self.chi
            ),
            Target::Main3 => format!(
                "size-3 circuits observed: {}, chi = {}",
                self.initial_bad_by_size.get(&3).copied().unwrap_or(0),
                self.chi
            ),
        }
    }

    fn check_passed(&self, name: &str) -> bool {
        self.checks.iter().any(|c| c.name == name && c.passed)
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "target: {}", self.target.name())?;
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        writeln!(f, "{}", self.headline())?;
        writeln!(
            f,
            "start: dual of C^{}({}) with preset {}",
            self.dim, self.initial_facets, self.preset
        )?;
        writeln!(
            f,
            "initial bad faces by circuit size: {:?}; bad edges vertex-disjoint: {}",
            self.initial_bad_by_size, self.bad_edges_vertex_disjoint
        )?;
        writeln!(f, "steps by circuit size: {:?}", self.steps_by_size)?;
        writeln!(
            f,
            "euler sum: {} (expected {})",
            self.euler_sum, self.euler_expected
        )?;
        writeln!(
            f,
            "chromatic number: {} ({}), clique of size {}, map uses {} colors",
            self.chi,
            if self.chi_exact { "exact" } else { "bounds only" },
            self.clique.len(),
            self.colors_used_by_map
        )?;
        writeln!(
            f,
            "integer lift: {} vertices, all determinants odd: {}, |det| != 1 at {} vertices",
            self.lift.vertices, self.lift.all_odd, self.lift.failures
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "[{}] {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Reproduction {
    pub summary: Summary,
    pub report: ResolutionReport,
    pub certificate: ChromaticCertificate,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

fn edges_vertex_disjoint(bad: &[BadFace], dim: usize, vertices: &[Vec<usize>]) -> bool {
    let edges: Vec<&BadFace> = bad.iter().filter(|b| b.face.len() + 1 == dim).collect();
    let mut seen = BTreeSet::new();
    for e in edges {
        for v in vertices
            .iter()
            .filter(|v| e.face.iter().all(|i| v.contains(i)))
        {
            if !seen.insert(v.clone()) {
                return false;
            }
        }
    }
    true
}

pub fn reproduce(target: Target) -> Result<Reproduction> {
    reproduce_with(target, DEFAULT_BUDGET, crate::chromatic::DEFAULT_TIME_BUDGET)
}

pub fn reproduce_with(
    target: Target,
    budget: usize,
    time_budget: Duration,
) -> Result<Reproduction> {
    let (n, m, preset_name) = target.setup();
    let start = dual_cyclic(n, m)?;
    let map = preset(preset_name, n, m)?;
    let report = resolve(&start, &map, budget)?;
    let final_p = &report.final_polytope;
    let final_l = &report.final_map;

    let mut notes = Vec::new();
    if target == Target::Main3 {
        notes.push(
            "the 5-dimensional construction is read as starting from the dual of C^5(16), \
             the only 16-facet dual cyclic polytope of dimension 5"
                .to_string(),
        );
    }

    let initial_bad_by_size: BTreeMap<usize, usize> =
        report.initial_bad_faces.iter().fold(BTreeMap::new(), |mut acc, b| {
            *acc.entry(b.circuit_size).or_default() += 1;
            acc
        });
    let mut steps_by_size = BTreeMap::new();
    for s in &report.steps {
        *steps_by_size.entry(s.circuit_size).or_default() += 1;
    }
    let mut circuit_sizes_observed: BTreeSet<usize> =
        initial_bad_by_size.keys().copied().collect();
    for s in &report.steps {
        circuit_sizes_observed.extend(s.pending_by_size.keys().copied());
    }

    let f = final_p.f_vector();
    let euler_sum = alternating_sum(&f);
    let euler_expected = expected_euler_sum(n);
    let induced = induced_coloring(final_p, final_l)?;
    let cert = chromatic_number(final_p, Some(final_l), time_budget)?;
    let lift = lift_determinant_report(final_p, final_l)?;

    let mut checks = vec![
        check(
            "resolution succeeded",
            report.succeeded(),
            format!("{:?} after {} steps", report.terminated, report.steps.len()),
        ),
        check(
            "non-singular at every vertex",
            final_p.vertices().iter().all(|v| is_nonsingular_at(final_l, v)),
            format!("{} vertices", final_p.vertices().len()),
        ),
        check(
            "final polytope valid",
            final_p.is_valid(),
            "structural checks",
        ),
        check(
            "euler relation",
            euler_sum == euler_expected,
            format!("alternating sum {euler_sum}, expected {euler_expected}"),
        ),
        check(
            "induced coloring proper",
            induced.proper,
            format!("{} colors", induced.colors_used),
        ),
        check(
            "chromatic number",
            cert.is_exact() && cert.chi == target.expected_chi(),
            format!(
                "chi = {}, expected {}, clique {}",
                cert.chi,
                target.expected_chi(),
                cert.clique.len()
            ),
        ),
        check(
            "integer lift determinants odd",
            lift.all_odd,
            format!("{} of {} vertices have |det| != 1", lift.failures.len(), lift.determinants.len()),
        ),
    ];

    let mut unlisted: Vec<FaceSet> = Vec::new();
    let mut listed_but_not_bad: Vec<FaceSet> = Vec::new();
    let mut listed_only = None;
    match target {
        Target::Main => {
            let detected: BTreeSet<FaceSet> =
                report.initial_bad_faces.iter().map(|b| b.face.clone()).collect();
            let printed: BTreeSet<FaceSet> = printed_bad_faces().into_iter().collect();
            unlisted = detected.difference(&printed).cloned().collect();
            listed_but_not_bad = printed.difference(&detected).cloned().collect();
            let edges = initial_bad_by_size.get(&3).copied().unwrap_or(0);
            let verts = initial_bad_by_size.get(&4).copied().unwrap_or(0);
            checks.push(check(
                "initial bad faces",
                detected == printed,
                format!(
                    "{edges} edges, {verts} vertices; not in the printed lists: {unlisted:?}; \
                     printed but not bad: {listed_but_not_bad:?}"
                ),
            ));
            checks.push(check(
                "step count",
                report.steps.len() == 30,
                format!("{} steps, expected 30", report.steps.len()),
            ));
            let printed_f = PRINTED_F_VECTOR;
            let matches_printed =
                f[0] == printed_f[0] && f[1] == printed_f[1] && f[3] == printed_f[3];
            checks.push(check(
                "final face counts",
                matches_printed && f[2] == 238,
                format!("f = {f:?}, expected [193, 386, 238, 45]"),
            ));
            notes.push(format!(
                "the printed counts {printed_f:?} give f0 - f1 + f2 - f3 = {}, not 0; \
                 with f0, f1, f3 as printed the ridge count must be 238",
                alternating_sum(&printed_f)
            ));
            for face in &unlisted {
                let vectors = map.vectors_at(face).iter().map(ToString::to_string).join(" + ");
                notes.push(format!(
                    "bad face {{{}}} is not in the printed lists: {vectors} = 0",
                    face.iter().join(",")
                ));
            }
            let (_, _, listed) = truncate_listed(&start, &map, &printed_bad_faces())?;
            notes.push(format!(
                "truncating only the {} printed faces gives f = {:?} with {} bad faces left",
                listed.faces,
                listed.f_vector,
                listed.remaining_bad.len()
            ));
            listed_only = Some(listed);
            checks.push(check(
                "map colors",
                induced.colors_used == 15,
                format!("{} distinct vectors", induced.colors_used),
            ));
        }
        Target::Main2 | Target::Main3 => {
            let oriented = oriented_valid(&map)
                && oriented_valid(final_l)
                && report
                    .steps
                    .iter()
                    .all(|s| s.chosen_vector.parity() == Parity::Odd);
            checks.push(check(
                "oriented throughout",
                oriented,
                "every initial and chosen vector has odd weight",
            ));
            let forbidden: Vec<usize> = if n == 5 { vec![3, 5] } else { vec![3] };
            let seen: Vec<usize> = forbidden
                .iter()
                .copied()
                .filter(|k| circuit_sizes_observed.contains(k))
                .collect();
            checks.push(check(
                "odd-size circuits absent",
                seen.is_empty(),
                format!("sizes {forbidden:?} observed: {seen:?}"),
            ));
            checks.push(check(
                "oriented color bound",
                induced.colors_used <= 1 << (n - 1),
                format!("{} colors, bound {}", induced.colors_used, 1 << (n - 1)),
            ));
        }
    }

    let summary = Summary {
        target,
        notes,
        dim: n,
        initial_facets: m,
        preset: preset_name.name().to_string(),
        initial_bad_edges: initial_bad_by_size.get(&(n - 1)).copied().unwrap_or(0),
        initial_bad_vertices: initial_bad_by_size.get(&n).copied().unwrap_or(0),
        bad_edges_vertex_disjoint: edges_vertex_disjoint(
            &report.initial_bad_faces,
            n,
            start.vertices(),
        ),
        initial_bad_by_size,
        steps: report.steps.len(),
        steps_by_size,
        circuit_sizes_observed,
        final_f_vector: f,
        euler_sum,
        euler_expected,
        colors_used_by_map: induced.colors_used,
        chi: cert.chi,
        chi_exact: cert.is_exact(),
        clique: cert.clique.clone(),
        lift: LiftSummary {
            vertices: lift.determinants.len(),
            all_odd: lift.all_odd,
            failures: lift.failures.len(),
        },
        unlisted_bad_faces: unlisted,
        listed_but_not_bad,
        listed_only,
        checks,
    };
    Ok(Reproduction {
        summary,
        report,
        certificate: cert,
    })
}
