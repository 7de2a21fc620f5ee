//! Exact chromatic number of the facet-adjacency graph, with certificates.
//!
//! The lower bound is a maximum clique, the upper bound a proper coloring.
//! For the polytopes built here the clique is huge (every pair of original
//! facets meets) and a characteristic map already colors with that many
//! colors, so the two bounds usually meet without any coloring search. The
//! DSATUR branch and bound only runs when they do not.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::charmap::{induced_coloring, CharMap};
use crate::error::{Error, Result};
use crate::polytope::Polytope;

pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(10);

/// Fixed-width bitset over graph nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
struct NodeSet {
    words: Vec<u64>,
}

impl NodeSet {
    fn empty(n: usize) -> Self {
        NodeSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn intersect(&self, other: &NodeSet) -> NodeSet {
        NodeSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }
}

/// Simple undirected graph on nodes `0..n`.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<NodeSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![NodeSet::empty(n); n],
        }
    }

    pub fn from_adjacency(matrix: &[Vec<bool>]) -> Self {
        let mut g = Graph::new(matrix.len());
        for (i, row) in matrix.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                if a && i != j {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn from_polytope(p: &Polytope) -> Self {
        Self::from_adjacency(&p.facet_adjacency())
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        if i != j {
            self.adj[i].insert(j);
            self.adj[j].insert(i);
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].iter().count()
    }

    pub fn is_clique(&self, nodes: &[usize]) -> bool {
        nodes
            .iter()
            .enumerate()
            .all(|(k, &a)| nodes[k + 1..].iter().all(|&b| a != b && self.adjacent(a, b)))
    }

    pub fn is_proper(&self, coloring: &[usize]) -> bool {
        coloring.len() == self.n
            && (0..self.n).all(|i| self.adj[i].iter().all(|j| coloring[i] != coloring[j]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Status {
    Exact,
    BoundsOnly { lower: usize, upper: usize },
}

/// What establishes the lower bound of an exact answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Optimality {
    /// The clique is as large as the coloring.
    Clique,
    /// The coloring search finished without finding fewer colors.
    ExhaustiveSearch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChromaticCertificate {
    /// The chromatic number when exact; otherwise the best upper bound.
    pub chi: usize,
    pub clique: Vec<usize>,
    /// Color of each node in `0..upper`, numbered by first occurrence.
    pub coloring: Vec<usize>,
    pub status: Status,
    /// Set when `status` is exact.
    pub optimality: Option<Optimality>,
}

impl ChromaticCertificate {
    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }

    pub fn colors_used(&self) -> usize {
        self.coloring.iter().max().map_or(0, |&c| c + 1)
    }

    /// Re-checks both halves of the certificate against the graph.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let fail = |what: &str| Err(Error::CertificateFailed(what.to_string()));
        if !g.is_clique(&self.clique) {
            return fail("clique has a non-adjacent pair");
        }
        if !g.is_proper(&self.coloring) {
            return fail("coloring is not proper");
        }
        match self.status {
            Status::Exact => {
                if self.chi != self.colors_used() || self.clique.len() > self.chi {
                    return fail("exact value disagrees with its witnesses");
                }
                match self.optimality {
                    Some(Optimality::Clique) if self.clique.len() == self.chi => {}
                    Some(Optimality::ExhaustiveSearch) => {}
                    _ => return fail("exact status without a matching proof"),
                }
            }
            Status::BoundsOnly { lower, upper } => {
                if lower != self.clique.len()
                    || upper != self.colors_used()
                    || lower >= upper
                    || self.optimality.is_some()
                {
                    return fail("bounds do not match the witnesses");
                }
            }
        }
        Ok(())
    }
}

/// Renumbers colors by first occurrence in node order.
pub fn canonical_coloring<T: PartialEq + Copy>(colors: &[T]) -> Vec<usize> {
    let mut seen: Vec<T> = Vec::new();
    colors
        .iter()
        .map(|c| match seen.iter().position(|s| s == c) {
            Some(k) => k,
            None => {
                seen.push(*c);
                seen.len() - 1
            }
        })
        .collect()
}

struct Deadline {
    at: Instant,
    hit: bool,
    ticks: u32,
}

impl Deadline {
    fn new(budget: Duration) -> Self {
        Deadline {
            at: Instant::now() + budget,
            hit: false,
            ticks: 0,
        }
    }

    fn expired(&mut self) -> bool {
        if !self.hit {
            self.ticks = self.ticks.wrapping_add(1);
            if self.ticks.is_multiple_of(256) && Instant::now() >= self.at {
                self.hit = true;
            }
        }
        self.hit
    }
}

/// Greedy sequential coloring of `candidates`, returned in increasing color
/// order with the color count reached so far (the bound used for pruning).
fn color_sort(g: &Graph, candidates: &NodeSet) -> Vec<(usize, usize)> {
    let mut uncolored = candidates.clone();
    let mut out = Vec::new();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut available = uncolored.clone();
        while let Some(v) = available.first() {
            available.remove(v);
            uncolored.remove(v);
            out.push((v, color));
            for u in g.adj[v].iter() {
                available.remove(u);
            }
        }
    }
    out
}

fn expand_clique(
    g: &Graph,
    current: &mut Vec<usize>,
    mut candidates: NodeSet,
    best: &mut Vec<usize>,
    deadline: &mut Deadline,
) {
    let order = color_sort(g, &candidates);
    for &(v, bound) in order.iter().rev() {
        if current.len() + bound <= best.len() || deadline.expired() {
            return;
        }
        current.push(v);
        let next = candidates.intersect(&g.adj[v]);
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand_clique(g, current, next, best, deadline);
        }
        current.pop();
        candidates.remove(v);
    }
}

/// Maximum clique by branch and bound with coloring bounds. The result is
/// sorted; when the deadline hits it is the best clique found so far.
fn max_clique(g: &Graph, deadline: &mut Deadline) -> Vec<usize> {
    let mut best = Vec::new();
    if g.n > 0 {
        expand_clique(g, &mut Vec::new(), NodeSet::full(g.n), &mut best, deadline);
    }
    best.sort_unstable();
    best
}

pub fn maximum_clique(g: &Graph, budget: Duration) -> (Vec<usize>, bool) {
    let mut deadline = Deadline::new(budget);
    let clique = max_clique(g, &mut deadline);
    (clique, !deadline.hit)
}

/// DSATUR greedy coloring.
pub fn dsatur(g: &Graph) -> Vec<usize> {
    let n = g.n;
    let mut color: Vec<Option<usize>> = vec![None; n];
    let mut neighbor_colors: Vec<Vec<bool>> = vec![vec![false; n + 1]; n];
    let mut saturation = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v].is_none())
            .max_by_key(|&v| (saturation[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("uncolored node remains");
        let c = (0..=n).find(|&c| !neighbor_colors[v][c]).expect("n + 1 colors suffice");
        color[v] = Some(c);
        for u in g.adj[v].iter() {
            if !neighbor_colors[u][c] {
                neighbor_colors[u][c] = true;
                saturation[u] += 1;
            }
        }
    }
    color.into_iter().map(|c| c.expect("all colored")).collect()
}

struct ColoringSearch<'a> {
    g: &'a Graph,
    color: Vec<Option<usize>>,
    /// `forbidden[v][c]` counts colored neighbours of `v` with color `c`.
    forbidden: Vec<Vec<u32>>,
    best: Vec<usize>,
    best_count: usize,
    lower: usize,
}

impl ColoringSearch<'_> {
    fn saturation(&self, v: usize) -> usize {
        self.forbidden[v].iter().filter(|&&k| k > 0).count()
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = Some(c);
        for u in self.g.adj[v].iter() {
            self.forbidden[u][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = None;
        for u in self.g.adj[v].iter() {
            self.forbidden[u][c] -= 1;
        }
    }

    fn search(&mut self, used: usize, deadline: &mut Deadline) {
        if self.best_count <= self.lower || deadline.expired() {
            return;
        }
        let next = (0..self.g.n)
            .filter(|&v| self.color[v].is_none())
            .max_by_key(|&v| (self.saturation(v), self.g.degree(v), std::cmp::Reverse(v)));
        let Some(v) = next else {
            self.best = self.color.iter().map(|c| c.expect("complete")).collect();
            self.best_count = used;
            return;
        };
        // a new color is only useful while it keeps us below the incumbent
        let limit = (used + 1).min(self.best_count - 1);
        for c in 0..limit {
            if self.forbidden[v][c] == 0 {
                self.assign(v, c);
                self.search(used.max(c + 1), deadline);
                self.unassign(v, c);
                if self.best_count <= self.lower || deadline.hit {
                    return;
                }
            }
        }
    }
}

/// Improves `start` by exhaustive DSATUR branch and bound, with the clique
/// nodes pre-colored `0..k`. Returns the best coloring found and whether the
/// search ran to completion (in which case it is optimal).
fn exact_coloring(
    g: &Graph,
    clique: &[usize],
    start: Vec<usize>,
    deadline: &mut Deadline,
) -> (Vec<usize>, bool) {
    let start_count = start.iter().max().map_or(0, |&c| c + 1);
    let mut s = ColoringSearch {
        g,
        color: vec![None; g.n],
        forbidden: vec![vec![0; g.n + 1]; g.n],
        best: start,
        best_count: start_count,
        lower: clique.len(),
    };
    for (c, &v) in clique.iter().enumerate() {
        s.assign(v, c);
    }
    s.search(clique.len(), deadline);
    (s.best, !deadline.hit)
}

/// Chromatic number of an arbitrary graph. `hint` is tried as the first
/// upper bound when it is a proper coloring.
pub fn graph_chromatic_number(
    g: &Graph,
    hint: Option<&[usize]>,
    budget: Duration,
) -> Result<ChromaticCertificate> {
    let mut deadline = Deadline::new(budget);
    let clique = max_clique(g, &mut deadline);

    let mut upper = canonical_coloring(&dsatur(g));
    if let Some(h) = hint.filter(|h| g.is_proper(h)) {
        let h = canonical_coloring(h);
        if count(&h) <= count(&upper) {
            upper = h;
        }
    }
    let mut searched = false;
    if count(&upper) > clique.len() && !deadline.hit {
        let (best, complete) = exact_coloring(g, &clique, upper, &mut deadline);
        upper = canonical_coloring(&best);
        searched = complete;
    }

    let lower = clique.len();
    let colors = count(&upper);
    let (status, optimality) = if colors == lower {
        (Status::Exact, Some(Optimality::Clique))
    } else if searched {
        (Status::Exact, Some(Optimality::ExhaustiveSearch))
    } else {
        (
            Status::BoundsOnly {
                lower,
                upper: colors,
            },
            None,
        )
    };
    let cert = ChromaticCertificate {
        chi: colors,
        clique,
        coloring: upper,
        status,
        optimality,
    };
    cert.verify(g)?;
    Ok(cert)
}

fn count(coloring: &[usize]) -> usize {
    coloring.iter().max().map_or(0, |&c| c + 1)
}

/// Chromatic number of the facets of `p`, facets adjacent when they share a vertex.
pub fn chromatic_number(
    p: &Polytope,
    hint: Option<&CharMap>,
    budget: Duration,
) -> Result<ChromaticCertificate> {
    let g = Graph::from_polytope(p);
    let hint_coloring = match hint {
        Some(l) => {
            let induced = induced_coloring(p, l)?;
            induced
                .proper
                .then(|| canonical_coloring(&induced.coloring))
        }
        None => None,
    };
    graph_chromatic_number(&g, hint_coloring.as_deref(), budget)
}
