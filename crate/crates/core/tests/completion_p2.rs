//! Exhaustive checks of the completion involutions and the p = 2
//! counting route: every bijection must be a fixed-point free
//! involution closed on its union of families, and the per-case parity
//! identities must reproduce the c2 invariance of completed graphs.

use std::collections::BTreeMap;

use feyncomb::bipartition::{
    bipartitions, c2_p2_via_counts, involution_r_double, involution_r_single, involution_s,
    involution_s_swapped, verify_completion_p2, BipartitionError, CaseContext, CaseTag,
};
use feyncomb::corpus::four_regular_corpus;
use feyncomb::graphs::{circulant_12, complete};
use feyncomb::{EdgeBipartition, Multigraph};

/// C8(1,3): every adjacent pair shares no neighbours, so all pairs are
/// R-case.
fn circulant_13() -> Multigraph {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..8 {
        edges.push((i.min((i + 1) % 8), i.max((i + 1) % 8)));
        edges.push((i.min((i + 3) % 8), i.max((i + 3) % 8)));
    }
    edges.sort_unstable();
    Multigraph::new(8, edges).unwrap()
}

/// Two K4 blocks joined by a perfect matching. 4-regular, but every
/// decompletion keeps one K4 intact and so has a subdivergence.
fn k4_pair() -> Multigraph {
    let mut edges = Vec::new();
    for s in [0, 4] {
        for i in s..s + 4 {
            for j in (i + 1)..s + 4 {
                edges.push((i, j));
            }
        }
    }
    for i in 0..4 {
        edges.push((i, i + 4));
    }
    Multigraph::new(8, edges).unwrap()
}

/// Collect the named families into one map, asserting disjointness.
fn family_union(
    ctx: &CaseContext,
    shapes: &[(&str, &str)],
) -> BTreeMap<EdgeBipartition, usize> {
    let mut union = BTreeMap::new();
    for (i, (left, right)) in shapes.iter().enumerate() {
        let family = bipartitions(ctx.h(), &ctx.partition(left, right)).unwrap();
        for b in family {
            assert!(
                union.insert(b, i).is_none(),
                "families {shapes:?} are not disjoint"
            );
        }
    }
    union
}

/// Every map in the completion proof is an involution without fixed
/// points whose image stays inside the union of families.
fn assert_fpf_involution<F>(union: &BTreeMap<EdgeBipartition, usize>, op: F)
where
    F: Fn(&EdgeBipartition) -> Result<EdgeBipartition, BipartitionError>,
{
    assert!(!union.is_empty(), "involution check needs instances");
    assert_eq!(union.len() % 2, 0, "fpf involution forces even size");
    for b in union.keys() {
        let image = op(b).unwrap();
        assert_ne!(&image, b, "fixed point");
        assert!(union.contains_key(&image), "image left the families");
        assert_eq!(&op(&image).unwrap(), b, "not an involution");
    }
}

const S_SINGLETONS: [(&str, &str); 4] =
    [("a", "bcde"), ("b", "acde"), ("d", "abce"), ("e", "abcd")];
const S_SWAPPED: [(&str, &str); 4] =
    [("ac", "bde"), ("bc", "ade"), ("cd", "abe"), ("ce", "abd")];
const R_SINGLETONS: [(&str, &str); 6] = [
    ("a", "bcdef"),
    ("b", "acdef"),
    ("c", "abdef"),
    ("d", "abcef"),
    ("e", "abcdf"),
    ("f", "abcde"),
];
const R_PAIRS: [(&str, &str); 6] = [
    ("bc", "adef"),
    ("ac", "bdef"),
    ("ab", "cdef"),
    ("ef", "abcd"),
    ("df", "abce"),
    ("de", "abcf"),
];

#[test]
fn s_involution_exhaustive() {
    for g in [circulant_12(7), circulant_12(8)] {
        let ctx = CaseContext::new(&g, 0, 2).unwrap();
        assert_eq!(ctx.tag(), CaseTag::S);
        let union = family_union(&ctx, &S_SINGLETONS);
        assert_fpf_involution(&union, |b| involution_s(&ctx, b));
    }
}

#[test]
fn s_swapped_involution_exhaustive() {
    for g in [circulant_12(7), circulant_12(8)] {
        let ctx = CaseContext::new(&g, 0, 2).unwrap();
        let union = family_union(&ctx, &S_SWAPPED);
        assert_fpf_involution(&union, |b| involution_s_swapped(&ctx, b));
    }
}

#[test]
fn r_single_control_involution_exhaustive() {
    // In C8(1,3) - {v,w} no two labels of the same trio are adjacent,
    // so every 2-part family there is empty; the K4 pair provides the
    // non-trivial instances.
    let g = k4_pair();
    for (v, w) in [(0, 4), (1, 5)] {
        let ctx = CaseContext::new(&g, v, w).unwrap();
        assert_eq!(ctx.tag(), CaseTag::R);
        let union = family_union(&ctx, &R_PAIRS);
        assert_fpf_involution(&union, |b| involution_r_single(&ctx, b));
    }
    let ctx = CaseContext::new(&circulant_13(), 0, 1).unwrap();
    assert!(family_union(&ctx, &R_PAIRS).is_empty());
}

#[test]
fn r_double_control_involution_exhaustive() {
    let c8 = circulant_13();
    let k4p = k4_pair();
    for (g, v, w) in [(&c8, 0, 1), (&c8, 0, 3), (&k4p, 0, 4)] {
        let ctx = CaseContext::new(g, v, w).unwrap();
        assert_eq!(ctx.tag(), CaseTag::R);
        let union = family_union(&ctx, &R_SINGLETONS);
        assert_fpf_involution(&union, |b| involution_r_double(&ctx, b));
    }
}

#[test]
fn counting_route_is_reduction_vertex_independent() {
    let g = circulant_12(7);
    // In G - 0 the 3-valent vertices are the old neighbours of 0.
    let residues: Vec<u64> = [0, 1, 4, 5]
        .into_iter()
        .map(|u| c2_p2_via_counts(&g, 0, u).unwrap())
        .collect();
    assert!(residues.windows(2).all(|w| w[0] == w[1]));
    // A vertex that stayed 4-valent is rejected.
    assert_eq!(
        c2_p2_via_counts(&g, 0, 2).unwrap_err(),
        BipartitionError::NotThreeValent(2)
    );
}

#[test]
fn completion_check_on_named_graphs() {
    let report = verify_completion_p2(&complete(5)).unwrap();
    assert_eq!(report.residue, 1);
    assert!(report
        .pairs
        .iter()
        .all(|&(_, _, tag)| tag == CaseTag::AllShared));
    assert_eq!(report.identities, 0);

    let report = verify_completion_p2(&circulant_12(7)).unwrap();
    let t = report.pairs.iter().filter(|p| p.2 == CaseTag::T).count();
    let s = report.pairs.iter().filter(|p| p.2 == CaseTag::S).count();
    assert_eq!((t, s), (7, 7));
    assert!(report.identities > 0);

    let report = verify_completion_p2(&circulant_12(8)).unwrap();
    let t = report.pairs.iter().filter(|p| p.2 == CaseTag::T).count();
    let s = report.pairs.iter().filter(|p| p.2 == CaseTag::S).count();
    assert_eq!((t, s), (8, 8));

    let report = verify_completion_p2(&circulant_13()).unwrap();
    assert!(report.pairs.iter().all(|&(_, _, tag)| tag == CaseTag::R));
    assert_eq!(report.pairs.len(), 16);
}

#[test]
fn completion_check_survives_subdivergent_decompletions() {
    let report = verify_completion_p2(&k4_pair()).unwrap();
    assert_eq!(report.residue, 0);
    let t = report.pairs.iter().filter(|p| p.2 == CaseTag::T).count();
    let r = report.pairs.iter().filter(|p| p.2 == CaseTag::R).count();
    assert_eq!((t, r), (12, 4));
}

#[test]
fn completion_check_on_corpus() {
    for g in four_regular_corpus(3) {
        let report = verify_completion_p2(&g).unwrap();
        assert_eq!(report.counting.len(), g.vertex_count());
        assert!(report.residue <= 1);
    }
}
