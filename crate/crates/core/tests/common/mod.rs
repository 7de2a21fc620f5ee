//! Brute-force oracles shared by the integration tests. None of these call
//! into the code paths they are used to check.

#![allow(dead_code)]

use std::collections::BTreeMap;

use itertools::Itertools;

use smallcover::charmap::{preset, Preset};
use smallcover::generators::{dual_cyclic, product, segment};
use smallcover::{BitVector, CharMap, Polytope, ResolutionReport};

fn xor_of(vectors: &[BitVector], mask: u32) -> u32 {
    (0..vectors.len())
        .filter(|i| mask >> i & 1 == 1)
        .fold(0, |acc, i| acc ^ vectors[i].bits())
}

/// All subsets XORing to zero, filtered to the minimal ones by checking every
/// proper subset.
pub fn circuits_oracle(vectors: &[BitVector]) -> Vec<Vec<usize>> {
    let k = vectors.len();
    let zero_sum: Vec<u32> = (1u32..1 << k).filter(|&m| xor_of(vectors, m) == 0).collect();
    let mut out: Vec<Vec<usize>> = zero_sum
        .iter()
        .filter(|&&m| {
            // proper nonempty submasks
            let mut sub = (m - 1) & m;
            while sub > 0 {
                if xor_of(vectors, sub) == 0 {
                    return false;
                }
                sub = (sub - 1) & m;
            }
            true
        })
        .map(|&m| (0..k).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

/// Every facet subset lying in a vertex whose vectors form a circuit, with
/// the smallest vertex containing it.
pub fn bad_faces_oracle(p: &Polytope, l: &CharMap) -> Vec<(usize, Vec<usize>, Vec<usize>)> {
    let mut found: BTreeMap<(usize, Vec<usize>), Vec<usize>> = BTreeMap::new();
    let m = p.facet_count();
    for k in 1..=p.dim() {
        for subset in (0..m).combinations(k) {
            let witness = p
                .vertices()
                .iter()
                .filter(|v| subset.iter().all(|i| v.contains(i)))
                .min();
            if let Some(w) = witness {
                let vs: Vec<BitVector> = subset.iter().map(|&i| l.vector(i)).collect();
                let full = (1u32 << k) - 1;
                if xor_of(&vs, full) == 0 && circuits_oracle(&vs).iter().any(|c| c.len() == k) {
                    found.insert((k, subset.clone()), w.clone());
                }
            }
        }
    }
    found.into_iter().map(|((k, face), w)| (k, face, w)).collect()
}

/// Exact determinant by cofactor expansion.
fn det(a: &[Vec<i128>]) -> i128 {
    let n = a.len();
    if n == 1 {
        return a[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = a[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * a[0][j] * det(&minor)
        })
        .sum()
}

/// Facets of the cyclic polytope on `m` points of the moment curve
/// `t ↦ (t, t², …, tⁿ)` at `t = 1..=m`, found geometrically: an `n`-subset is
/// a facet when every other point lies strictly on one side of its hyperplane.
pub fn cyclic_facets_geometric(n: usize, m: usize) -> Vec<Vec<usize>> {
    let point = |t: usize| -> Vec<i128> {
        let t = (t + 1) as i128;
        std::iter::once(1).chain((1..=n as u32).map(|e| t.pow(e))).collect()
    };
    let mut facets = Vec::new();
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let mut sign = 0i128;
        let mut ok = true;
        for x in (0..m).filter(|x| !subset.contains(x)) {
            let rows: Vec<Vec<i128>> = subset.iter().chain([&x]).map(|&t| point(t)).collect();
            let s = det(&rows).signum();
            if s == 0 || (sign != 0 && s != sign) {
                ok = false;
                break;
            }
            sign = s;
        }
        if ok {
            facets.push(subset.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return facets;
            }
            i -= 1;
            if subset[i] < m - n + i {
                subset[i] += 1;
                for j in i + 1..n {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Smallest k admitting a proper coloring, by trying every assignment.
pub fn chromatic_oracle(n: usize, edges: &[(usize, usize)]) -> usize {
    if n == 0 {
        return 0;
    }
    for k in 1..=n {
        let total = k.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let colors: Vec<usize> = (0..n)
                .map(|_| {
                    let x = c % k;
                    c /= k;
                    x
                })
                .collect();
            if edges.iter().all(|&(a, b)| colors[a] != colors[b]) {
                return k;
            }
        }
    }
    n
}

pub fn cube(n: usize) -> Polytope {
    let mut p = segment();
    for _ in 1..n {
        p = product(&p, &segment()).unwrap();
    }
    p
}

/// Re-applies the recorded truncations, yielding every intermediate polytope
/// and map (initial first, final last).
pub fn replay(
    start: &Polytope,
    map: &CharMap,
    report: &ResolutionReport,
) -> Vec<(Polytope, CharMap)> {
    let mut out = vec![(start.clone(), map.clone())];
    for step in &report.steps {
        let (p, l) = out.last().unwrap();
        let (next, idx) = p.truncate_face(&step.face).unwrap();
        assert_eq!(idx, step.new_facet_index);
        out.push((next, l.extended(step.chosen_vector).unwrap()));
    }
    out
}

/// Named small polytopes plus the dual cyclic family used throughout.
pub fn corpus() -> Vec<(String, Polytope)> {
    let mut out = vec![
        ("segment".to_string(), segment()),
        ("square".to_string(), cube(2)),
        ("cube3".to_string(), cube(3)),
        ("cube4".to_string(), cube(4)),
        (
            "pentagonal prism".to_string(),
            product(&dual_cyclic(2, 5).unwrap(), &segment()).unwrap(),
        ),
    ];
    for (n, m) in [(2, 5), (2, 7), (3, 6), (3, 8), (4, 5), (4, 8), (4, 10), (4, 15), (5, 8), (5, 16)] {
        out.push((format!("dual C^{n}({m})"), dual_cyclic(n, m).unwrap()));
    }
    out
}

pub fn example() -> (Polytope, CharMap) {
    (
        dual_cyclic(4, 15).unwrap(),
        preset(Preset::PaperExample, 4, 15).unwrap(),
    )
}
