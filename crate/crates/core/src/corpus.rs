//! Deterministic graph and polynomial families for tests and the
//! acceptance suite: named examples, exhaustive enumeration of small
//! connected multigraphs up to isomorphism, and seeded random corpora.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graphs::{circulant_12, complete, k4, Multigraph};
use crate::poly::SparsePoly;

/// Wheel with `rim` spokes: cycle 0..rim plus a hub joined to every rim
/// vertex. W4 is the smallest log-divergent graph after K4.
pub fn wheel(rim: usize) -> Multigraph {
    assert!(rim >= 3, "wheel needs at least 3 rim vertices");
    let hub = rim;
    let mut edges: Vec<(usize, usize)> = (0..rim).map(|i| (i, (i + 1) % rim)).collect();
    edges.extend((0..rim).map(|i| (i, hub)));
    Multigraph::new(rim + 1, edges).expect("wheel is well-formed")
}

/// Two triangles glued along a vertex pair, both keeping their own copy
/// of the glued edge: the classic log-divergent weight-drop graph.
pub fn two_vertex_join_of_triangles() -> Multigraph {
    Multigraph::new(
        4,
        vec![(0, 1), (0, 1), (0, 2), (1, 2), (0, 3), (1, 3)],
    )
    .expect("join is well-formed")
}

/// K4 with a two-edge handle through a fifth vertex: log-divergent, and
/// the K4 side of the 2-edge cut is a divergent proper subgraph
/// (6 edges, 3 loops), so c2 vanishes by the subdivergence criterion.
pub fn subdivergent_graph() -> Multigraph {
    Multigraph::new(
        5,
        vec![
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (2, 3),
            (1, 3),
            (0, 4),
            (1, 4),
        ],
    )
    .expect("handle graph is well-formed")
}

/// Cycle of length 4 with two doubled edges; log-divergent with a
/// doubled edge, hence weight drop.
pub fn doubled_square() -> Multigraph {
    Multigraph::new(
        4,
        vec![(0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (3, 0)],
    )
    .expect("square is well-formed")
}

/// Two copies of K4 minus an edge, glued along the missing pair
/// {0, 1}: primitive and log-divergent, but two-vertex-reducible at
/// the glue pair, so its denominator reduction hits a weight drop.
pub fn two_vertex_reducible() -> Multigraph {
    Multigraph::new(
        6,
        vec![
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3),
            (0, 4),
            (0, 5),
            (1, 4),
            (1, 5),
            (4, 5),
        ],
    )
    .expect("glued graph is well-formed")
}

/// Decompletion of the zigzag completion C_{ell+2}(1,2) at vertex 0.
pub fn zigzag_decompletion(ell: usize) -> Multigraph {
    assert!(ell >= 3);
    circulant_12(ell + 2)
        .decompletion(0)
        .expect("circulant decompletion")
}

fn normalized_edges(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut list: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    list.sort_unstable();
    list
}

/// Apply a vertex relabelling to an edge list and normalize.
fn relabel(edges: &[(usize, usize)], perm: &[usize]) -> Vec<(usize, usize)> {
    let mapped: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| (perm[a], perm[b]))
        .collect();
    normalized_edges(&mapped)
}

fn for_each_class_perm(classes: &[Vec<usize>], nv: usize, f: &mut impl FnMut(&[usize])) {
    // Assemble permutations that only shuffle labels within one class;
    // every isomorphism between degree-sorted labelings lives in this
    // subgroup.
    fn rec(
        classes: &[Vec<usize>],
        idx: usize,
        perm: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if idx == classes.len() {
            f(perm);
            return;
        }
        let class = &classes[idx];
        let mut arrangement: Vec<usize> = class.clone();
        permute(&mut arrangement, 0, &mut |arr| {
            for (&slot, &v) in class.iter().zip(arr.iter()) {
                perm[slot] = v;
            }
            rec(classes, idx + 1, perm, f);
        });
    }
    fn permute(arr: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == arr.len() {
            f(arr);
            return;
        }
        for i in k..arr.len() {
            arr.swap(k, i);
            permute(arr, k + 1, f);
            arr.swap(k, i);
        }
    }
    let mut perm: Vec<usize> = (0..nv).collect();
    rec(classes, 0, &mut perm, f);
}

/// Canonical key of a multigraph under isomorphism: relabel vertices in
/// degree-sorted order, then take the minimum normalized edge list over
/// relabellings that permute within a degree class.
pub fn canonical_key(g: &Multigraph) -> (usize, Vec<(usize, usize)>) {
    let nv = g.vertex_count();
    let edges: Vec<(usize, usize)> = (1..=g.edge_count())
        .map(|e| g.endpoints(e).expect("edge exists"))
        .collect();
    let mut deg = vec![0usize; nv];
    for &(a, b) in &edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by_key(|&v| deg[v]);
    let mut base = vec![0usize; nv];
    for (position, &v) in order.iter().enumerate() {
        base[v] = position;
    }
    let base_edges = relabel(&edges, &base);
    // Positions grouped into runs of equal degree.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (position, &v) in order.iter().enumerate() {
        match classes.last_mut() {
            Some(run) if deg[order[run[0]]] == deg[v] => run.push(position),
            _ => classes.push(vec![position]),
        }
    }
    let mut best: Option<Vec<(usize, usize)>> = None;
    for_each_class_perm(&classes, nv, &mut |perm| {
        let candidate = relabel(&base_edges, perm);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    });
    (nv, best.expect("at least the identity permutation"))
}

/// All connected multigraphs (no self-loops, no isolated vertices) with
/// 1..=max_edges edges, one representative per isomorphism class,
/// generated by growing an edge at a time.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Multigraph> {
    let single = Multigraph::new(2, vec![(0, 1)]).expect("K2");
    let mut all: Vec<Multigraph> = Vec::new();
    let mut seen: BTreeSet<(usize, Vec<(usize, usize)>)> = BTreeSet::new();
    let mut level: Vec<Multigraph> = vec![single.clone()];
    seen.insert(canonical_key(&single));
    all.push(single);
    for _ in 1..max_edges {
        let mut next: Vec<Multigraph> = Vec::new();
        for g in &level {
            let nv = g.vertex_count();
            let mut edges: Vec<(usize, usize)> = (1..=g.edge_count())
                .map(|e| g.endpoints(e).expect("edge exists"))
                .collect();
            // New edge between existing vertices (parallels allowed) or
            // out to a fresh vertex; both keep the graph connected and
            // together reach every connected multigraph.
            let mut candidates: Vec<(usize, (usize, usize))> = Vec::new();
            for a in 0..nv {
                for b in (a + 1)..nv {
                    candidates.push((nv, (a, b)));
                }
                candidates.push((nv + 1, (a, nv)));
            }
            for (vcount, e) in candidates {
                edges.push(e);
                let candidate =
                    Multigraph::new(vcount, edges.clone()).expect("grown graph is well-formed");
                edges.pop();
                let key = canonical_key(&candidate);
                if seen.insert(key) {
                    next.push(candidate);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

/// The log-divergent (edges = 2*loops) members of the exhaustive corpus.
pub fn log_divergent_multigraphs(max_edges: usize) -> Vec<Multigraph> {
    connected_multigraphs(max_edges)
        .into_iter()
        .filter(|g| g.edge_count() == 2 * g.loop_order())
        .collect()
}

/// Seeded random connected multigraph: a random spanning tree plus
/// random extra edges (parallels allowed, no self-loops).
pub fn random_connected_multigraph(rng: &mut impl Rng, edges: usize) -> Multigraph {
    assert!(edges >= 1);
    let nv = rng.gen_range(2..=edges.min(6) + 1);
    let mut list: Vec<(usize, usize)> = Vec::with_capacity(edges);
    for v in 1..nv {
        list.push((rng.gen_range(0..v), v));
    }
    while list.len() < edges {
        let a = rng.gen_range(0..nv);
        let b = rng.gen_range(0..nv);
        if a != b {
            list.push((a.min(b), a.max(b)));
        }
    }
    list.shuffle(rng);
    Multigraph::new(nv, list).expect("random graph is well-formed")
}

/// Criterion corpus for divisibility checks: named families plus seeded
/// random connected multigraphs covering every edge count from 3 to 8.
pub fn divisibility_corpus() -> Vec<Multigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    let mut corpus: Vec<Multigraph> = vec![
        k4(),
        wheel(4),
        two_vertex_join_of_triangles(),
        doubled_square(),
        complete(4),
        zigzag_decompletion(4),
        two_vertex_reducible(),
    ];
    for edges in 3..=8 {
        for _ in 0..6 {
            corpus.push(random_connected_multigraph(&mut rng, edges));
        }
    }
    corpus
}

/// Seeded random simple connected 4-regular graph on nv vertices via the
/// pairing model with rejection.
pub fn random_four_regular(rng: &mut impl Rng, nv: usize) -> Multigraph {
    assert!(nv >= 5, "4-regular needs at least 5 vertices");
    loop {
        let mut stubs: Vec<usize> = (0..nv).flat_map(|v| std::iter::repeat(v).take(4)).collect();
        stubs.shuffle(rng);
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(2 * nv);
        let mut simple = true;
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        for pair in stubs.chunks(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a == b || !seen.insert((a, b)) {
                simple = false;
                break;
            }
            edges.push((a, b));
        }
        if !simple {
            continue;
        }
        let g = Multigraph::new(nv, edges).expect("pairing is well-formed");
        if g.is_connected() {
            return g;
        }
    }
}

/// The named 4-regular completion family plus seeded random ones.
pub fn four_regular_corpus(random_count: usize) -> Vec<Multigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4e9);
    let mut corpus = vec![complete(5), circulant_12(7), circulant_12(8)];
    for _ in 0..random_count {
        let nv = rng.gen_range(5..=8);
        corpus.push(random_four_regular(&mut rng, nv));
    }
    corpus
}

/// Seeded random word pairs and cut sets for Dodgson identity checks:
/// disjoint I, J of equal size 1 or 2 and a small disjoint K.
pub fn random_dodgson_words(
    rng: &mut impl Rng,
    edge_count: usize,
) -> (Vec<usize>, Vec<usize>, BTreeSet<usize>) {
    let size = if edge_count >= 5 && rng.gen_bool(0.4) { 2 } else { 1 };
    let mut pool: Vec<usize> = (1..=edge_count).collect();
    pool.shuffle(rng);
    let i_word: Vec<usize> = pool[0..size].to_vec();
    let j_word: Vec<usize> = pool[size..2 * size].to_vec();
    let mut k = BTreeSet::new();
    if pool.len() > 2 * size && rng.gen_bool(0.5) {
        k.insert(pool[2 * size]);
    }
    (i_word, j_word, k)
}

/// Seeded random polynomial with nvars = deg (the Chevalley-Warning
/// boundary shape), small coefficients, at least one term of full degree.
pub fn random_cw_poly(rng: &mut impl Rng, n: usize) -> SparsePoly {
    let deg = n as u16;
    let nterms = rng.gen_range(2..=5);
    let mut terms: Vec<(Vec<u16>, BigInt)> = Vec::new();
    // One term of exact degree n so that deg f = n holds.
    let mut top = vec![0u16; n];
    for _ in 0..deg {
        top[rng.gen_range(0..n)] += 1;
    }
    terms.push((top, BigInt::from(rng.gen_range(1..=3))));
    for _ in 0..nterms {
        let mut exps = vec![0u16; n];
        let d = rng.gen_range(0..=deg);
        for _ in 0..d {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = rng.gen_range(-3i64..=3);
        if c != 0 {
            terms.push((exps, BigInt::from(c)));
        }
    }
    SparsePoly::from_terms(n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_families_are_well_formed() {
        assert_eq!(wheel(4).edge_count(), 8);
        assert_eq!(wheel(4).loop_order(), 4);
        let join = two_vertex_join_of_triangles();
        assert_eq!(join.edge_count(), 2 * join.loop_order());
        let sub = subdivergent_graph();
        assert_eq!(sub.edge_count(), 2 * sub.loop_order());
        assert!(!sub.is_primitive().unwrap());
        assert_eq!(doubled_square().edge_count(), 6);
        let tvr = two_vertex_reducible();
        assert_eq!(tvr.edge_count(), 2 * tvr.loop_order());
        assert!(tvr.is_primitive().unwrap());
        let z4 = zigzag_decompletion(4);
        assert_eq!(z4.vertex_count(), 5);
        assert_eq!(z4.edge_count(), 8);
    }

    #[test]
    fn enumeration_matches_hand_counts() {
        // Connected multigraphs without self-loops up to isomorphism:
        // 1 edge: K2. 2 edges: path, doubled edge. 3 edges: path, star,
        // triangle, tripled edge, doubled edge with a pendant.
        let all = connected_multigraphs(3);
        let by_edges = |e: usize| all.iter().filter(|g| g.edge_count() == e).count();
        assert_eq!(by_edges(1), 1);
        assert_eq!(by_edges(2), 2);
        assert_eq!(by_edges(3), 5);
        for g in &all {
            assert!(g.is_connected());
        }
    }

    #[test]
    fn canonical_key_is_relabelling_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in connected_multigraphs(4) {
            let nv = g.vertex_count();
            let edges: Vec<(usize, usize)> = (1..=g.edge_count())
                .map(|e| g.endpoints(e).unwrap())
                .collect();
            let key = canonical_key(&g);
            for _ in 0..5 {
                let mut perm: Vec<usize> = (0..nv).collect();
                perm.shuffle(&mut rng);
                let h = Multigraph::new(nv, relabel(&edges, &perm)).unwrap();
                assert_eq!(canonical_key(&h), key);
            }
        }
    }

    #[test]
    fn enumeration_has_no_isomorphic_duplicates() {
        // Soundness of the degree-class key: distinct full-permutation
        // canonical forms for everything enumerated.
        let all = connected_multigraphs(4);
        let mut full_keys = BTreeSet::new();
        for g in &all {
            let nv = g.vertex_count();
            let edges: Vec<(usize, usize)> = (1..=g.edge_count())
                .map(|e| g.endpoints(e).unwrap())
                .collect();
            let mut full: Option<Vec<(usize, usize)>> = None;
            let everything = vec![(0..nv).collect::<Vec<usize>>()];
            for_each_class_perm(&everything, nv, &mut |perm| {
                let cand = relabel(&edges, perm);
                if full.as_ref().is_none_or(|b| cand < *b) {
                    full = Some(cand);
                }
            });
            assert!(full_keys.insert((nv, full.unwrap())));
        }
        assert_eq!(full_keys.len(), all.len());
    }

    #[test]
    fn random_generators_are_deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        let ga = random_connected_multigraph(&mut a, 6);
        let gb = random_connected_multigraph(&mut b, 6);
        assert_eq!(ga.to_text(), gb.to_text());
        let fa = random_four_regular(&mut a, 6);
        assert!(fa.is_connected());
        assert!((0..fa.vertex_count()).all(|v| fa.degree(v) == 4));
    }

    #[test]
    fn divisibility_corpus_is_connected_and_sized() {
        let corpus = divisibility_corpus();
        assert!(corpus.len() >= 40);
        for g in &corpus {
            assert!(g.is_connected());
            assert!(g.edge_count() >= 3 || g.loop_order() >= 1);
        }
        for e in 3..=8 {
            assert!(corpus.iter().any(|g| g.edge_count() == e));
        }
    }

    #[test]
    fn cw_polys_have_boundary_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2usize, 3] {
            for _ in 0..10 {
                let f = random_cw_poly(&mut rng, n);
                assert_eq!(f.nvars(), n);
                assert_eq!(f.degree(), Some(n as u32));
            }
        }
    }
}
