//! Starting polytopes: duals of cyclic polytopes, products, the segment.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::polytope::Polytope;

/// Gale's evenness condition for an `n`-subset of `0..m` (sorted).
///
/// Any two points `i < j` outside the subset must be separated by an even
/// number of its elements.
pub fn satisfies_gale(subset: &[usize], m: usize) -> bool {
    let outside: Vec<usize> = (0..m).filter(|x| subset.binary_search(x).is_err()).collect();
    outside.iter().tuple_combinations().all(|(&i, &j)| {
        subset.iter().filter(|&&k| i < k && k < j).count() % 2 == 0
    })
}

/// The simple polytope dual to the cyclic polytope `C^n(m)`.
///
/// Facet `i` is dual to the `i`-th point on the moment curve; the vertices are
/// the facets of `C^n(m)`, i.e. the `n`-subsets passing Gale's test.
pub fn dual_cyclic(n: usize, m: usize) -> Result<Polytope> {
    if n < 2 || m <= n {
        return Err(Error::BadCyclicParameters { n, m });
    }
    let vertices: Vec<Vec<usize>> = (0..m)
        .combinations(n)
        .filter(|s| satisfies_gale(s, m))
        .collect();
    Polytope::with_default_labels(n, m, vertices)
}

/// The segment `I`: dimension 1, facets are its two endpoints.
pub fn segment() -> Polytope {
    Polytope::with_default_labels(1, 2, vec![vec![0], vec![1]]).expect("segment is valid")
}

/// Cartesian product. Facets of `p` keep their indices, facets of `q` follow.
pub fn product(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    let offset = p.facet_count();
    let vertices = p
        .vertices()
        .iter()
        .cartesian_product(q.vertices())
        .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&i| i + offset)).collect())
        .collect();
    let labels = p.labels().iter().chain(q.labels()).cloned().collect();
    Polytope::new(p.dim() + q.dim(), labels, vertices)
}
