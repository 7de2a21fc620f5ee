mod common;

use std::collections::BTreeSet;

use smallcover::charmap::{
    bad_faces, integer_determinant, is_nonsingular_at, lift_determinant_report, preset, Mode,
    Preset,
};
use smallcover::generators::{dual_cyclic, product, segment};
use smallcover::io::to_canonical_json;
use smallcover::resolution::{resolve, DEFAULT_BUDGET};
use smallcover::{BitVector, CharMap, Parity, Polytope, Termination};

use common::{bad_faces_oracle, example, replay};

fn as_tuples(p: &Polytope, l: &CharMap) -> Vec<(usize, Vec<usize>, Vec<usize>)> {
    bad_faces(p, l)
        .unwrap()
        .into_iter()
        .map(|b| (b.circuit_size, b.face, b.witness_vertex))
        .collect()
}

fn instances() -> Vec<(String, Polytope, CharMap)> {
    let (p, l) = example();
    let mut out = vec![("example".to_string(), p, l)];
    for (n, m, name) in [(4, 8, Preset::OddBijection), (5, 16, Preset::OddBijection)] {
        out.push((
            format!("dual C^{n}({m}) odd"),
            dual_cyclic(n, m).unwrap(),
            preset(name, n, m).unwrap(),
        ));
    }
    for (n, m) in [(4, 8), (4, 10), (3, 7), (5, 9)] {
        out.push((
            format!("dual C^{n}({m}) identity-first"),
            dual_cyclic(n, m).unwrap(),
            preset(Preset::IdentityFirst, n, m).unwrap(),
        ));
    }
    out
}

#[test]
fn bad_faces_match_oracle_on_small_instances() {
    let mut checked = 0;
    for (name, p, l) in instances() {
        let report = resolve(&p, &l, DEFAULT_BUDGET).unwrap();
        for (q, lq) in replay(&p, &l, &report) {
            if q.vertices().len() > 100 {
                continue;
            }
            assert_eq!(as_tuples(&q, &lq), bad_faces_oracle(&q, &lq), "{name}");
            checked += 1;
        }
    }
    assert!(checked >= 10, "only {checked} instances");
}

#[test]
fn example_bad_faces() {
    let (p, l) = example();
    let bad = bad_faces(&p, &l).unwrap();
    let edges: BTreeSet<Vec<usize>> = bad.iter().filter(|b| b.face.len() == 3).map(|b| b.face.clone()).collect();
    let vertices: BTreeSet<Vec<usize>> = bad.iter().filter(|b| b.face.len() == 4).map(|b| b.face.clone()).collect();
    assert_eq!(vertices.len(), 17);
    assert_eq!(edges.len(), 14);
    // the one edge beyond the printed thirteen: e4 + (e2+e4) + e2 = 0
    assert!(edges.contains(&vec![3, 6, 7]));
    assert!(edges.contains(&vec![2, 7, 8]));
    assert!(edges.contains(&vec![0, 1, 7]));
    let v = BitVector::from_basis;
    assert_eq!(v(&[4]) ^ v(&[2, 4]) ^ v(&[2]), BitVector(0));
    // a bad edge's witness is the smallest vertex containing it
    let e = bad.iter().find(|b| b.face == vec![3, 6, 7]).unwrap();
    assert_eq!(e.witness_vertex, vec![2, 3, 6, 7]);
}

#[test]
fn resolution_invariants() {
    for (name, p, l) in instances() {
        let report = resolve(&p, &l, DEFAULT_BUDGET).unwrap();
        // identity-first maps in dimension 5 can leave a bad polygon, which is not cut
        match report.terminated {
            Termination::Success => assert!(report.stalled_face.is_none()),
            Termination::NoVectorFound => {
                let face = report.stalled_face.clone().unwrap();
                assert!(face.len() + 1 < p.dim(), "{name}: stalled on {face:?}");
            }
            Termination::BudgetExhausted => panic!("{name}: budget"),
        }
        let chain = replay(&p, &l, &report);
        let mut prev = report.initial_bad_count;
        for (step, pair) in report.steps.iter().zip(chain.windows(2)) {
            let (before, _) = &pair[0];
            let (after, lafter) = &pair[1];
            let now = bad_faces(after, lafter).unwrap().len();
            assert!(now < prev, "{name}: {now} !< {prev}");
            assert_eq!(now, step.remaining_bad);
            prev = now;
            assert!(after.is_valid(), "{name}");
            assert!(!after.is_face(&step.face));
            for v in after.vertices().iter().filter(|v| v.contains(&step.new_facet_index)) {
                assert!(is_nonsingular_at(lafter, v), "{name}: {v:?}");
            }
            // earlier colors are untouched
            assert_eq!(&lafter.vectors()[..before.facet_count()], pair[0].1.vectors());
            if l.mode() == Mode::Oriented {
                assert!(lafter.vectors().iter().all(|v| v.parity() == Parity::Odd));
                assert!(step.pending_by_size.keys().all(|k| k % 2 == 0), "{name}");
            }
        }
        let (last, llast) = chain.last().unwrap();
        assert_eq!(last, &report.final_polytope);
        assert_eq!(llast, &report.final_map);
        if report.succeeded() {
            assert!(last.vertices().iter().all(|v| is_nonsingular_at(llast, v)));
        }
    }
}

#[test]
fn resolution_is_deterministic() {
    let (p, l) = example();
    let a = resolve(&p, &l, DEFAULT_BUDGET).unwrap();
    let b = resolve(&p, &l, DEFAULT_BUDGET).unwrap();
    assert_eq!(to_canonical_json(&a), to_canonical_json(&b));
    assert_eq!(a.steps.len(), 31);
    assert_eq!(a.steps.iter().filter(|s| s.circuit_size == 3).count(), 14);
    // the edges go first
    assert!(a.steps[..14].iter().all(|s| s.face.len() == 3));
}

#[test]
fn budget_is_respected() {
    let (p, l) = example();
    let r = resolve(&p, &l, 5).unwrap();
    assert_eq!(r.terminated, Termination::BudgetExhausted);
    assert_eq!(r.steps.len(), 5);
    let r = resolve(&p, &l, 0).unwrap();
    assert_eq!(r.steps.len(), 0);
    assert_eq!(r.final_polytope, p);
}

#[test]
fn product_maps_resolve_nothing_new() {
    // stacking a non-singular map with the segment's map stays non-singular
    let (p, l) = example();
    let r = resolve(&p, &l, DEFAULT_BUDGET).unwrap();
    let seg_map = CharMap::from_bits(1, Mode::General, &[1, 1]).unwrap();
    let q = product(&r.final_polytope, &segment()).unwrap();
    let lq = r.final_map.stack(&seg_map).unwrap();
    assert!(q.is_valid());
    assert!(bad_faces(&q, &lq).unwrap().is_empty());
    assert_eq!(q.vertices().len(), 2 * r.final_polytope.vertices().len());
}

fn cofactor_det(a: &[Vec<i128>]) -> i128 {
    if a.len() == 1 {
        return a[0][0];
    }
    (0..a.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> = a[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            (if j % 2 == 0 { 1 } else { -1 }) * a[0][j] * cofactor_det(&minor)
        })
        .sum()
}

#[test]
fn determinant_matches_cofactor_expansion() {
    // every 4-subset of the 15 nonzero vectors of Z_2^4
    let all: Vec<BitVector> = (1u32..16).map(BitVector).collect();
    let mut n = 0;
    for a in 0..15 {
        for b in a + 1..15 {
            for c in b + 1..15 {
                for d in c + 1..15 {
                    let vs = [all[a], all[b], all[c], all[d]];
                    let m: Vec<Vec<i128>> = (0..4)
                        .map(|r| vs.iter().map(|v| v.coefficient(r) as i128).collect())
                        .collect();
                    let expected = cofactor_det(&m);
                    assert_eq!(integer_determinant(&vs), expected, "{vs:?}");
                    // mod 2 it agrees with independence
                    assert_eq!(expected % 2 != 0, smallcover::gf2::is_independent(&vs));
                    n += 1;
                }
            }
        }
    }
    assert_eq!(n, 1365);
}

#[test]
fn lift_report_on_resolved_example() {
    let (p, l) = example();
    let r = resolve(&p, &l, DEFAULT_BUDGET).unwrap();
    let lift = lift_determinant_report(&r.final_polytope, &r.final_map).unwrap();
    assert_eq!(lift.determinants.len(), r.final_polytope.vertices().len());
    assert!(lift.all_odd);
    assert!(lift.failures.iter().all(|d| d.determinant.abs() != 1));
}
