//! The p = 2 completion machinery: counting edge bipartitions of
//! G - {v,w} into a spanning tree and a compatible spanning 2-forest,
//! and the fixed-point free involutions (2-valent swap, one control
//! vertex, two control vertices) that prove c2 at 2 is independent of
//! the choice of decompletion vertex.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::c2::{c2_coeff, c2_definition, C2Error};
use crate::graphs::{EdgeBipartition, GraphError, Multigraph, VertexPartition};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BipartitionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    C2(#[from] C2Error),
    #[error("graph is not simple: parallel edges or self-loops present")]
    NotSimple,
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("vertex {0} does not have three distinct neighbours here")]
    NotThreeValent(usize),
    #[error("vertex {0} does not have two distinct neighbours here")]
    NotTwoValent(usize),
    #[error("the edges at vertex {0} do not split between psi and phi")]
    EdgesNotSplit(usize),
    #[error("bipartition does not have the required shape: {0}")]
    ShapeMismatch(String),
}

/// Classification of an adjacent vertex pair in a 4-regular graph by
/// how many neighbours they share.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// Three common neighbours; the two decompletions are isomorphic.
    AllShared,
    /// Two common neighbours, which form a double triangle with the pair.
    T,
    /// One common neighbour, 2-valent after deleting the pair.
    S,
    /// No common neighbours.
    R,
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            CaseTag::AllShared => "all-shared",
            CaseTag::T => "T",
            CaseTag::S => "S",
            CaseTag::R => "R",
        };
        write!(f, "{name}")
    }
}

/// An adjacent pair v, w of a 4-regular graph together with the reduced
/// graph H = G - {v,w} and the neighbour labelling.
///
/// Labels are letters in the fixed order a, b, c, ... where w carries
/// the early letters and v the late ones; shared neighbours sit in the
/// middle and get their designated letters (b, c in the T-case, c in
/// the S-case). Within each group the labels follow ascending vertex
/// ids of the original graph.
#[derive(Debug, Clone)]
pub struct CaseContext {
    g: Multigraph,
    v: usize,
    w: usize,
    tag: CaseTag,
    h: Multigraph,
    labels: Vec<usize>,
}

impl CaseContext {
    pub fn new(g: &Multigraph, v: usize, w: usize) -> Result<Self, BipartitionError> {
        if !is_simple(g) {
            return Err(BipartitionError::NotSimple);
        }
        for x in 0..g.vertex_count() {
            let d = g.degree(x);
            if d != 4 {
                return Err(GraphError::NotFourRegular {
                    vertex: x,
                    degree: d,
                }
                .into());
            }
        }
        if !g.is_connected() {
            return Err(GraphError::Disconnected.into());
        }
        if v >= g.vertex_count() {
            return Err(GraphError::VertexOutOfRange(v).into());
        }
        if w >= g.vertex_count() {
            return Err(GraphError::VertexOutOfRange(w).into());
        }
        if v == w || g.edges_between(v, w).is_empty() {
            return Err(BipartitionError::NotAdjacent(v, w));
        }
        let nv = g.neighbours(v);
        let nw = g.neighbours(w);
        let shared: Vec<usize> = nv
            .intersection(&nw)
            .copied()
            .filter(|x| *x != v && *x != w)
            .collect();
        let w_only: Vec<usize> = nw
            .iter()
            .copied()
            .filter(|x| *x != v && !shared.contains(x))
            .collect();
        let v_only: Vec<usize> = nv
            .iter()
            .copied()
            .filter(|x| *x != w && !shared.contains(x))
            .collect();
        let tag = match shared.len() {
            3 => CaseTag::AllShared,
            2 => CaseTag::T,
            1 => CaseTag::S,
            0 => CaseTag::R,
            n => unreachable!("4-regular adjacent pair with {n} shared neighbours"),
        };
        let (lo, hi) = (v.min(w), v.max(w));
        let h = g.delete_vertex(hi)?.delete_vertex(lo)?;
        let map = |x: usize| x - usize::from(x > lo) - usize::from(x > hi);
        let mut labels: Vec<usize> = Vec::new();
        labels.extend(w_only.iter().map(|&x| map(x)));
        labels.extend(shared.iter().map(|&x| map(x)));
        labels.extend(v_only.iter().map(|&x| map(x)));
        Ok(CaseContext {
            g: g.clone(),
            v,
            w,
            tag,
            h,
            labels,
        })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.g
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.v, self.w)
    }

    pub fn tag(&self) -> CaseTag {
        self.tag
    }

    /// The reduced graph G - {v,w}.
    pub fn h(&self) -> &Multigraph {
        &self.h
    }

    /// Neighbour labels as vertex ids of `h`, in letter order. Length 3,
    /// 4, 5 or 6 for all-shared, T, S, R.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// All labelled neighbours as a set.
    pub fn marked(&self) -> BTreeSet<usize> {
        self.labels.iter().copied().collect()
    }

    fn letter(&self, ch: char) -> usize {
        let idx = (ch as usize) - ('a' as usize);
        self.labels[idx]
    }

    /// Build the 2-part vertex partition named by letter strings, e.g.
    /// `partition("ab", "cde")`.
    pub fn partition(&self, left: &str, right: &str) -> VertexPartition {
        let p0: BTreeSet<usize> = left.chars().map(|ch| self.letter(ch)).collect();
        let p1: BTreeSet<usize> = right.chars().map(|ch| self.letter(ch)).collect();
        VertexPartition::new(vec![p0, p1]).expect("letter parts are disjoint")
    }

    /// t_P / s_P / r_P for the partition named by letters.
    pub fn count(&self, left: &str, right: &str) -> Result<usize, BipartitionError> {
        Ok(count_bipartitions(&self.h, &self.partition(left, right))?)
    }
}

fn is_simple(g: &Multigraph) -> bool {
    let mut seen = BTreeSet::new();
    g.edges()
        .iter()
        .all(|&(t, h)| t != h && seen.insert((t.min(h), t.max(h))))
}

/// Edge ids (1-based) incident to v, paired with the other endpoint.
fn edges_at(g: &Multigraph, v: usize) -> Vec<(usize, usize)> {
    g.edges()
        .iter()
        .enumerate()
        .filter_map(|(i, &(t, h))| {
            if t == v {
                Some((i + 1, h))
            } else if h == v {
                Some((i + 1, t))
            } else {
                None
            }
        })
        .collect()
}

fn is_spanning_tree(g: &Multigraph, edges: &BTreeSet<usize>) -> bool {
    let n = g.vertex_count();
    if edges.len() + 1 != n {
        return false;
    }
    let mut uf = crate::graphs::UnionFind::new(n);
    for &e in edges {
        let (t, h) = g.edges()[e - 1];
        if t == h || !uf.union(t, h) {
            return false;
        }
    }
    true
}

fn is_two_forest(g: &Multigraph, edges: &BTreeSet<usize>) -> bool {
    let n = g.vertex_count();
    if edges.len() + 2 != n {
        return false;
    }
    let mut uf = crate::graphs::UnionFind::new(n);
    for &e in edges {
        let (t, h) = g.edges()[e - 1];
        if t == h || !uf.union(t, h) {
            return false;
        }
    }
    true
}

/// Component representative per vertex under the edge set.
fn components(g: &Multigraph, edges: &BTreeSet<usize>) -> Vec<usize> {
    let mut uf = crate::graphs::UnionFind::new(g.vertex_count());
    for &e in edges {
        let (t, h) = g.edges()[e - 1];
        uf.union(t, h);
    }
    (0..g.vertex_count()).map(|v| uf.find(v)).collect()
}

/// How a 2-forest splits a marked vertex set: the part containing the
/// smallest marked vertex first.
fn forest_split(
    g: &Multigraph,
    phi: &BTreeSet<usize>,
    marked: &BTreeSet<usize>,
) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let comp = components(g, phi);
    let first = *marked.iter().next().expect("marked set is non-empty");
    let root = comp[first];
    let mut p0 = BTreeSet::new();
    let mut p1 = BTreeSet::new();
    for &m in marked {
        if comp[m] == root {
            p0.insert(m);
        } else {
            p1.insert(m);
        }
    }
    (p0, p1)
}

/// All edge bipartitions (psi, phi) of h where psi is a spanning tree
/// and the complement phi is a spanning 2-forest compatible with the
/// 2-part partition. Empty when h is disconnected or the edge count is
/// not 2|V| - 3 (no complement can then be a 2-forest).
pub fn bipartitions(
    h: &Multigraph,
    partition: &VertexPartition,
) -> Result<Vec<EdgeBipartition>, GraphError> {
    partition.validate(h)?;
    if partition.parts().len() != 2 {
        return Err(GraphError::InvalidPartition(format!(
            "need exactly 2 parts, got {}",
            partition.parts().len()
        )));
    }
    if !h.is_connected() || h.edge_count() + 3 != 2 * h.vertex_count() {
        return Ok(Vec::new());
    }
    let p0 = &partition.parts()[0];
    let p1 = &partition.parts()[1];
    let mut out = Vec::new();
    for tree in h.spanning_trees()? {
        let psi: BTreeSet<usize> = tree.iter().copied().collect();
        let phi: BTreeSet<usize> = (1..=h.edge_count()).filter(|e| !psi.contains(e)).collect();
        if !is_two_forest(h, &phi) {
            continue;
        }
        let comp = components(h, &phi);
        let r0 = comp[*p0.iter().next().expect("non-empty part")];
        let r1 = comp[*p1.iter().next().expect("non-empty part")];
        if r0 == r1
            || !p0.iter().all(|&v| comp[v] == r0)
            || !p1.iter().all(|&v| comp[v] == r1)
        {
            continue;
        }
        out.push(EdgeBipartition::from_parts(psi, phi));
    }
    Ok(out)
}

/// |{(psi, phi)}| for the partition: the quantities t_P, s_P, r_P.
pub fn count_bipartitions(
    h: &Multigraph,
    partition: &VertexPartition,
) -> Result<usize, GraphError> {
    Ok(bipartitions(h, partition)?.len())
}

/// c2 at p = 2 of G - v by reducing with respect to a 3-valent vertex u
/// of G - v: the parity of the number of edge bipartitions of G - {u,v}
/// whose 2-forest separates one neighbour of u from the other two. The
/// parity is the same for all three choices of the singled-out
/// neighbour, which is asserted.
///
/// `u` is a vertex id of G - v (ids above v shift down by one).
pub fn c2_p2_via_counts(
    g: &Multigraph,
    v: usize,
    u: usize,
) -> Result<u64, BipartitionError> {
    let gv = g.delete_vertex(v)?;
    let nbrs: Vec<usize> = gv.neighbours(u).into_iter().collect();
    if gv.degree(u) != 3 || nbrs.len() != 3 {
        return Err(BipartitionError::NotThreeValent(u));
    }
    let h = gv.delete_vertex(u)?;
    let m: Vec<usize> = nbrs
        .iter()
        .map(|&x| if x > u { x - 1 } else { x })
        .collect();
    let mut parities = Vec::with_capacity(3);
    for i in 0..3 {
        let single: BTreeSet<usize> = [m[i]].into();
        let pair: BTreeSet<usize> = (0..3).filter(|&j| j != i).map(|j| m[j]).collect();
        let p = VertexPartition::new(vec![single, pair]).expect("neighbours are distinct");
        parities.push((count_bipartitions(&h, &p)? % 2) as u64);
    }
    assert!(
        parities[0] == parities[1] && parities[1] == parities[2],
        "neighbour ordering changed the parity: {parities:?}"
    );
    Ok(parities[0])
}

/// Swap the two edges at a 2-valent vertex c between psi and phi. Valid
/// whenever both parts of the forest's vertex bipartition contain a
/// marked vertex other than c; then exactly one edge at c lies in each
/// side, and the swap yields another bipartition in which c may have
/// moved to the other tree.
pub fn swap_two_valent(
    h: &Multigraph,
    b: &EdgeBipartition,
    c: usize,
) -> Result<EdgeBipartition, BipartitionError> {
    let inc = edges_at(h, c);
    if inc.len() != 2 || h.neighbours(c).len() != 2 {
        return Err(BipartitionError::NotTwoValent(c));
    }
    let in_psi: Vec<usize> = inc
        .iter()
        .map(|&(e, _)| e)
        .filter(|e| b.psi().contains(e))
        .collect();
    if in_psi.len() != 1 {
        return Err(BipartitionError::EdgesNotSplit(c));
    }
    let e_psi = in_psi[0];
    let e_phi = inc
        .iter()
        .map(|&(e, _)| e)
        .find(|e| *e != e_psi)
        .expect("two incident edges");
    apply_swaps(h, b, &[(e_psi, e_phi)])
}

/// Exchange (psi edge, phi edge) pairs and re-verify both sides.
fn apply_swaps(
    h: &Multigraph,
    b: &EdgeBipartition,
    swaps: &[(usize, usize)],
) -> Result<EdgeBipartition, BipartitionError> {
    let mut psi = b.psi().clone();
    let mut phi = b.phi().clone();
    for &(ep, ef) in swaps {
        if !psi.remove(&ep) || !phi.remove(&ef) {
            return Err(BipartitionError::ShapeMismatch(format!(
                "swap pair ({ep}, {ef}) is not split across psi and phi"
            )));
        }
        psi.insert(ef);
        phi.insert(ep);
    }
    if !is_spanning_tree(h, &psi) || !is_two_forest(h, &phi) {
        return Err(BipartitionError::ShapeMismatch(
            "swap broke the tree/2-forest structure".into(),
        ));
    }
    Ok(EdgeBipartition::from_parts(psi, phi))
}

/// Which placement of the special vertex pins down the control vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ControlMode {
    /// x must land in the 2-part after removing the control vertex.
    InTwoPart,
    /// x is the control vertex itself or lands in a singleton.
    SingletonOrSelf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ControlCase {
    TwoValent,
    SingleControl,
    DoubleControl,
}

/// Control vertices plus the (psi edge, phi edge) swap pairs selected
/// for them by the involution branch that applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlVertexResult {
    pub vertices: Vec<usize>,
    pub case: ControlCase,
    pub swaps: Vec<(usize, usize)>,
}

/// The tree of phi containing all of `part`, as (vertex set, adjacency
/// of phi edges inside it). Errors when the part straddles both trees.
fn part_tree(
    h: &Multigraph,
    b: &EdgeBipartition,
    part: &BTreeSet<usize>,
) -> Result<(BTreeSet<usize>, BTreeMap<usize, Vec<(usize, usize)>>), BipartitionError> {
    let comp = components(h, b.phi());
    let root = comp[*part.iter().next().expect("non-empty part")];
    if part.iter().any(|&x| comp[x] != root) {
        return Err(BipartitionError::ShapeMismatch(
            "part is not contained in one tree of phi".into(),
        ));
    }
    let verts: BTreeSet<usize> = (0..h.vertex_count()).filter(|&x| comp[x] == root).collect();
    let mut adj: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for &e in b.phi() {
        let (t, hd) = h.edges()[e - 1];
        if verts.contains(&t) {
            adj.entry(t).or_default().push((e, hd));
            adj.entry(hd).or_default().push((e, t));
        }
    }
    Ok((verts, adj))
}

/// Component representative of each tree vertex after removing `gone`
/// (one or two vertices) and their incident tree edges.
fn tree_components_without(
    adj: &BTreeMap<usize, Vec<(usize, usize)>>,
    verts: &BTreeSet<usize>,
    gone: &[usize],
) -> BTreeMap<usize, usize> {
    let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = crate::graphs::UnionFind::new(verts.len());
    for (&x, nbrs) in adj {
        if gone.contains(&x) {
            continue;
        }
        for &(_, y) in nbrs {
            if x < y && !gone.contains(&y) {
                uf.union(index[&x], index[&y]);
            }
        }
    }
    verts
        .iter()
        .filter(|v| !gone.contains(v))
        .map(|&v| (v, uf.find(index[&v])))
        .collect()
}

/// How removing `gone` from the part's tree groups the remaining part
/// members: map from component representative to members inside it.
fn part_groups(
    comp: &BTreeMap<usize, usize>,
    part: &BTreeSet<usize>,
    gone: &[usize],
) -> BTreeMap<usize, Vec<usize>> {
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &m in part {
        if !gone.contains(&m) {
            groups.entry(comp[&m]).or_default().push(m);
        }
    }
    groups
}

/// The unique psi edge at a leaf v, with its neighbour.
fn psi_leaf_edge(
    h: &Multigraph,
    b: &EdgeBipartition,
    v: usize,
) -> Result<(usize, usize), BipartitionError> {
    let at: Vec<(usize, usize)> = edges_at(h, v)
        .into_iter()
        .filter(|&(e, _)| b.psi().contains(&e))
        .collect();
    if at.len() != 1 {
        return Err(BipartitionError::ShapeMismatch(format!(
            "vertex {v} is not a leaf in psi"
        )));
    }
    Ok(at[0])
}

/// Find the control vertex for a 4-element part whose tree is t: the
/// unique vertex of t whose removal splits the part into a 2-part plus
/// singletons, positioned against the special vertex x per `mode`.
/// Also selects the swap pair: the psi edge at the control vertex, and
/// the t-edge towards its psi neighbour when that neighbour lies in t,
/// otherwise towards x (mode in-2-part) or towards the 2-part (mode
/// singleton-or-self).
pub fn find_control_vertex(
    h: &Multigraph,
    b: &EdgeBipartition,
    part: &BTreeSet<usize>,
    x: usize,
    mode: ControlMode,
) -> Result<ControlVertexResult, BipartitionError> {
    if part.len() != 4 || !part.contains(&x) {
        return Err(BipartitionError::ShapeMismatch(format!(
            "need a 4-part containing the special vertex, got {part:?} with x = {x}"
        )));
    }
    let (verts, adj) = part_tree(h, b, part)?;
    let mut found: Option<(usize, BTreeMap<usize, usize>)> = None;
    for &cand in &verts {
        let comp = tree_components_without(&adj, &verts, &[cand]);
        let groups = part_groups(&comp, part, &[cand]);
        let mut sizes: Vec<usize> = groups.values().map(|g| g.len()).collect();
        sizes.sort_unstable();
        let split_ok = if part.contains(&cand) {
            sizes == [1, 2]
        } else {
            sizes == [1, 1, 2]
        };
        if !split_ok {
            continue;
        }
        let mode_ok = match mode {
            ControlMode::InTwoPart => {
                cand != x && groups.values().any(|g| g.len() == 2 && g.contains(&x))
            }
            ControlMode::SingletonOrSelf => {
                cand == x || groups.values().any(|g| g.len() == 1 && g.contains(&x))
            }
        };
        if !mode_ok {
            continue;
        }
        if let Some((prev, _)) = found {
            return Err(BipartitionError::ShapeMismatch(format!(
                "control vertex is not unique: {prev} and {cand}"
            )));
        }
        found = Some((cand, comp));
    }
    let (v, comp) = found.ok_or_else(|| {
        BipartitionError::ShapeMismatch("no control vertex found".into())
    })?;
    let deg_t = adj.get(&v).map_or(0, |n| n.len());
    if part.contains(&v) {
        assert_eq!(deg_t, 2, "control vertex in the part must be 2-valent in t");
    } else {
        assert_eq!(deg_t, 3, "control vertex outside the part must be 3-valent in t");
    }
    let (eta_v, n_v) = psi_leaf_edge(h, b, v)?;
    let groups = part_groups(&comp, part, &[v]);
    let target = if verts.contains(&n_v) {
        comp[&n_v]
    } else {
        match mode {
            ControlMode::InTwoPart => comp[&x],
            ControlMode::SingletonOrSelf => *groups
                .iter()
                .find(|(_, g)| g.len() == 2)
                .expect("a 2-part exists")
                .0,
        }
    };
    let eta = adj[&v]
        .iter()
        .find(|&&(_, y)| comp[&y] == target)
        .map(|&(e, _)| e)
        .expect("tree edge towards the target component");
    Ok(ControlVertexResult {
        vertices: vec![v],
        case: ControlCase::SingleControl,
        swaps: vec![(eta_v, eta)],
    })
}

/// Find the two control vertices for a 5-element part: the unique
/// non-adjacent pair of tree vertices whose joint removal splits the
/// part into singletons. Swap pairs follow the double-control branch:
/// towards each psi neighbour that lies in t, or, when neither does,
/// towards each other.
pub fn find_two_control_vertices(
    h: &Multigraph,
    b: &EdgeBipartition,
    part: &BTreeSet<usize>,
) -> Result<ControlVertexResult, BipartitionError> {
    if part.len() != 5 {
        return Err(BipartitionError::ShapeMismatch(format!(
            "need a 5-part, got {part:?}"
        )));
    }
    let (verts, adj) = part_tree(h, b, part)?;
    let vlist: Vec<usize> = verts.iter().copied().collect();
    let mut found: Option<(usize, usize)> = None;
    for i in 0..vlist.len() {
        for j in i + 1..vlist.len() {
            let (v, w) = (vlist[i], vlist[j]);
            if adj.get(&v).is_some_and(|n| n.iter().any(|&(_, y)| y == w)) {
                continue;
            }
            let comp = tree_components_without(&adj, &verts, &[v, w]);
            let groups = part_groups(&comp, part, &[v, w]);
            if !groups.values().all(|g| g.len() == 1) {
                continue;
            }
            if let Some(prev) = found {
                return Err(BipartitionError::ShapeMismatch(format!(
                    "control pair is not unique: {prev:?} and {:?}",
                    (v, w)
                )));
            }
            found = Some((v, w));
        }
    }
    let (v, w) = found.ok_or_else(|| {
        BipartitionError::ShapeMismatch("no control vertex pair found".into())
    })?;
    for ctrl in [v, w] {
        let deg_t = adj.get(&ctrl).map_or(0, |n| n.len());
        if part.contains(&ctrl) {
            assert_eq!(deg_t, 2, "control vertex in the part must be 2-valent in t");
        } else {
            assert_eq!(deg_t, 3, "control vertex outside the part must be 3-valent in t");
        }
    }
    let (eta_v, n_v) = psi_leaf_edge(h, b, v)?;
    let (eta_w, n_w) = psi_leaf_edge(h, b, w)?;
    assert!(n_v != w && n_w != v, "control vertices must not be psi-adjacent");
    let mut swaps = Vec::new();
    if verts.contains(&n_v) || verts.contains(&n_w) {
        // Crossed configuration: each psi neighbour lies beyond the
        // other control vertex. Cutting both edges towards the psi
        // neighbours would isolate the middle of the tree and the two
        // reinserted edges would close a cycle, so the swap targets
        // cross over instead.
        let crossing = verts.contains(&n_v) && verts.contains(&n_w) && {
            let no_w = tree_components_without(&adj, &verts, &[w]);
            let no_v = tree_components_without(&adj, &verts, &[v]);
            no_w[&v] != no_w[&n_v] && no_v[&w] != no_v[&n_w]
        };
        let targets = if crossing {
            [(v, eta_v, Some(n_w)), (w, eta_w, Some(n_v))]
        } else {
            [
                (v, eta_v, verts.contains(&n_v).then_some(n_v)),
                (w, eta_w, verts.contains(&n_w).then_some(n_w)),
            ]
        };
        for (ctrl, eta_c, target) in targets {
            let Some(target) = target else { continue };
            let comp = tree_components_without(&adj, &verts, &[ctrl]);
            let eta = adj[&ctrl]
                .iter()
                .find(|&&(_, y)| comp[&y] == comp[&target])
                .map(|&(e, _)| e)
                .expect("tree edge towards the swap target");
            swaps.push((eta_c, eta));
        }
    } else {
        for (ctrl, eta_c, other) in [(v, eta_v, w), (w, eta_w, v)] {
            let comp = tree_components_without(&adj, &verts, &[ctrl]);
            let eta = adj[&ctrl]
                .iter()
                .find(|&&(_, y)| comp[&y] == comp[&other])
                .map(|&(e, _)| e)
                .expect("tree edge towards the other control vertex");
            swaps.push((eta_c, eta));
        }
    }
    Ok(ControlVertexResult {
        vertices: vec![v, w],
        case: ControlCase::DoubleControl,
        swaps,
    })
}

/// Shape of b's forest against the context's marked vertices, as the
/// two label groups (part containing the smallest label first).
fn marked_split(ctx: &CaseContext, b: &EdgeBipartition) -> (BTreeSet<usize>, BTreeSet<usize>) {
    forest_split(&ctx.h, b.phi(), &ctx.marked())
}

/// The S-case involution on bipartitions shaped {x} | {c,*,*,*}: swap
/// around the 2-valent shared neighbour c when its psi neighbour stays
/// in the 4-part's tree; otherwise swap around the control vertex, and
/// when that swap leaves the tree, swap around c afterwards as well.
pub fn involution_s(
    ctx: &CaseContext,
    b: &EdgeBipartition,
) -> Result<EdgeBipartition, BipartitionError> {
    if ctx.tag != CaseTag::S {
        return Err(BipartitionError::ShapeMismatch("not an S-case context".into()));
    }
    let c = ctx.letter('c');
    let (p0, p1) = marked_split(ctx, b);
    let (four, _single) = if p0.len() == 4 && p0.contains(&c) {
        (p0, p1)
    } else if p1.len() == 4 && p1.contains(&c) {
        (p1, p0)
    } else {
        return Err(BipartitionError::ShapeMismatch(format!(
            "expected shape {{*}} | {{c,*,*,*}}, got {p0:?} | {p1:?}"
        )));
    };
    let comp = components(&ctx.h, b.phi());
    let (_, n_c) = psi_leaf_edge(&ctx.h, b, c)?;
    if comp[n_c] == comp[c] {
        return swap_two_valent(&ctx.h, b, c);
    }
    let cv = find_control_vertex(&ctx.h, b, &four, c, ControlMode::InTwoPart)?;
    let (eta_v, _) = cv.swaps[0];
    let n_v = {
        let (t, hd) = ctx.h.edges()[eta_v - 1];
        if t == cv.vertices[0] { hd } else { t }
    };
    let out = apply_swaps(&ctx.h, b, &cv.swaps)?;
    if comp[n_v] == comp[c] {
        Ok(out)
    } else {
        swap_two_valent(&ctx.h, &out, c)
    }
}

/// The swapped S-case involution on shapes {c,*} | {*,*,*}: when c's
/// psi neighbour lies in c's own tree just swap around c; otherwise
/// swap c out first, then around the control vertex, swapping c back
/// only when the control swap stayed inside its tree.
pub fn involution_s_swapped(
    ctx: &CaseContext,
    b: &EdgeBipartition,
) -> Result<EdgeBipartition, BipartitionError> {
    if ctx.tag != CaseTag::S {
        return Err(BipartitionError::ShapeMismatch("not an S-case context".into()));
    }
    let c = ctx.letter('c');
    let (p0, p1) = marked_split(ctx, b);
    let two = if p0.len() == 2 && p0.contains(&c) {
        p0
    } else if p1.len() == 2 && p1.contains(&c) {
        p1
    } else {
        return Err(BipartitionError::ShapeMismatch(format!(
            "expected shape {{c,*}} | {{*,*,*}}, got {p0:?} | {p1:?}"
        )));
    };
    let comp = components(&ctx.h, b.phi());
    let (_, n_c) = psi_leaf_edge(&ctx.h, b, c)?;
    if comp[n_c] == comp[c] {
        return swap_two_valent(&ctx.h, b, c);
    }
    let b1 = swap_two_valent(&ctx.h, b, c)?;
    let mut four: BTreeSet<usize> = ctx.marked().difference(&two).copied().collect();
    four.insert(c);
    let cv = find_control_vertex(&ctx.h, &b1, &four, c, ControlMode::InTwoPart)?;
    let (eta_v, _) = cv.swaps[0];
    let n_v = {
        let (t, hd) = ctx.h.edges()[eta_v - 1];
        if t == cv.vertices[0] { hd } else { t }
    };
    let comp1 = components(&ctx.h, b1.phi());
    let out = apply_swaps(&ctx.h, &b1, &cv.swaps)?;
    if comp1[n_v] == comp1[c] {
        swap_two_valent(&ctx.h, &out, c)
    } else {
        Ok(out)
    }
}

/// The single-control R-case involution on shapes {y,z} | {x,*,*,*}
/// where {x,y,z} is one of the two neighbour trios and x is the lone
/// trio member in the 4-part.
pub fn involution_r_single(
    ctx: &CaseContext,
    b: &EdgeBipartition,
) -> Result<EdgeBipartition, BipartitionError> {
    if ctx.tag != CaseTag::R {
        return Err(BipartitionError::ShapeMismatch("not an R-case context".into()));
    }
    let trio_w: BTreeSet<usize> = ctx.labels[0..3].iter().copied().collect();
    let trio_v: BTreeSet<usize> = ctx.labels[3..6].iter().copied().collect();
    let (p0, p1) = marked_split(ctx, b);
    let (two, four) = if p0.len() == 2 {
        (p0, p1)
    } else if p1.len() == 2 {
        (p1, p0)
    } else {
        return Err(BipartitionError::ShapeMismatch(format!(
            "expected shape {{*,*}} | {{*,*,*,*}}, got {p0:?} | {p1:?}"
        )));
    };
    let trio = if two.is_subset(&trio_w) {
        &trio_w
    } else if two.is_subset(&trio_v) {
        &trio_v
    } else {
        return Err(BipartitionError::ShapeMismatch(
            "2-part straddles both neighbour trios".into(),
        ));
    };
    let x = *trio
        .difference(&two)
        .next()
        .expect("trio has a member outside the 2-part");
    let cv = find_control_vertex(&ctx.h, b, &four, x, ControlMode::SingletonOrSelf)?;
    apply_swaps(&ctx.h, b, &cv.swaps)
}

/// The double-control R-case involution on shapes {x} | {*,*,*,*,*}.
pub fn involution_r_double(
    ctx: &CaseContext,
    b: &EdgeBipartition,
) -> Result<EdgeBipartition, BipartitionError> {
    if ctx.tag != CaseTag::R {
        return Err(BipartitionError::ShapeMismatch("not an R-case context".into()));
    }
    let (p0, p1) = marked_split(ctx, b);
    let five = if p0.len() == 5 {
        p0
    } else if p1.len() == 5 {
        p1
    } else {
        return Err(BipartitionError::ShapeMismatch(format!(
            "expected shape {{*}} | {{*,*,*,*,*}}, got {p0:?} | {p1:?}"
        )));
    };
    let cv = find_two_control_vertices(&ctx.h, b, &five)?;
    apply_swaps(&ctx.h, b, &cv.swaps)
}

/// Per-vertex and per-pair record of a completion check at p = 2.
#[derive(Debug, Clone)]
pub struct CompletionReport {
    /// The common c2 residue at 2 of every decompletion.
    pub residue: u64,
    /// Residue per vertex via the bipartition counting route.
    pub counting: Vec<u64>,
    /// Residue per vertex via an independent c2 computation.
    pub independent: Vec<u64>,
    /// Each adjacent pair with its case classification.
    pub pairs: Vec<(usize, usize, CaseTag)>,
    /// Total number of parity identities that were checked.
    pub identities: usize,
}

impl std::fmt::Display for CompletionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "c2 at p=2 of every decompletion: {}", self.residue)?;
        writeln!(f, "vertex  counts  c2")?;
        for (v, (a, b)) in self.counting.iter().zip(&self.independent).enumerate() {
            writeln!(f, "{v:>6}  {a:>6}  {b:>2}")?;
        }
        let mut tally: BTreeMap<String, usize> = BTreeMap::new();
        for &(_, _, tag) in &self.pairs {
            *tally.entry(tag.to_string()).or_default() += 1;
        }
        let cases: Vec<String> = tally.iter().map(|(t, n)| format!("{t}: {n}")).collect();
        writeln!(f, "adjacent pairs by case: {}", cases.join(", "))?;
        write!(f, "parity identities checked: {}", self.identities)
    }
}

/// Check completion invariance of c2 at p = 2 on a connected 4-regular
/// graph: every decompletion's residue is computed via the counting
/// route and via an independent c2 route, all values are asserted
/// equal, and the T/S/R parity identities are run for every adjacent
/// pair.
pub fn verify_completion_p2(g: &Multigraph) -> Result<CompletionReport, BipartitionError> {
    let n = g.vertex_count();
    let mut counting = Vec::with_capacity(n);
    let mut independent = Vec::with_capacity(n);
    for v in 0..n {
        let gv = g.delete_vertex(v)?;
        let u = (0..gv.vertex_count())
            .find(|&x| gv.degree(x) == 3)
            .expect("deleting a vertex of a 4-regular graph leaves 3-valent ones");
        counting.push(c2_p2_via_counts(g, v, u)?);
        // The coefficient identity needs primitivity; decompletions
        // with subdivergences fall back to the definition.
        let c2 = match c2_coeff(&gv, 2, None) {
            Ok(value) => value,
            Err(C2Error::Subdivergent) => c2_definition(&gv, 2)?,
            Err(e) => return Err(e.into()),
        };
        independent.push(c2.residue());
    }
    for v in 1..n {
        assert_eq!(
            counting[v], counting[0],
            "counting route differs between decompletions 0 and {v}"
        );
        assert_eq!(
            independent[v], independent[0],
            "c2 differs between decompletions 0 and {v}"
        );
    }
    assert_eq!(
        counting[0], independent[0],
        "counting route disagrees with the c2 routes"
    );
    let mut pairs = Vec::new();
    let mut identities = 0;
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(t, h) in g.edges() {
        let (v, w) = (t.min(h), t.max(h));
        if !seen.insert((v, w)) {
            continue;
        }
        let ctx = CaseContext::new(g, v, w)?;
        identities += match ctx.tag() {
            CaseTag::AllShared => 0,
            CaseTag::T => t_case_identities(&ctx)?,
            CaseTag::S => s_case_identities(&ctx)?,
            CaseTag::R => r_case_identities(&ctx)?,
        };
        pairs.push((v, w, ctx.tag()));
    }
    Ok(CompletionReport {
        residue: counting[0],
        counting,
        independent,
        pairs,
        identities,
    })
}

/// T-case identities: the expansions of t_{a|bc} and t_{d|bc} over the
/// free vertex (exact), the two 2-valent-swap parities, and equality of
/// the two decompletion residues.
fn t_case_identities(ctx: &CaseContext) -> Result<usize, BipartitionError> {
    let t_a_bc = ctx.count("a", "bc")?;
    let t_d_bc = ctx.count("d", "bc")?;
    let t_a_bcd = ctx.count("a", "bcd")?;
    let t_d_abc = ctx.count("d", "abc")?;
    let t_ad_bc = ctx.count("ad", "bc")?;
    let t_ab_cd = ctx.count("ab", "cd")?;
    assert_eq!(t_a_bc, t_a_bcd + t_ad_bc, "t_{{a|bc}} expansion");
    assert_eq!(t_d_bc, t_d_abc + t_ad_bc, "t_{{d|bc}} expansion");
    assert_eq!((t_a_bcd + t_ab_cd) % 2, 0, "swap around b parity");
    assert_eq!((t_d_abc + t_ab_cd) % 2, 0, "swap around c parity");
    assert_eq!(t_a_bc % 2, t_d_bc % 2, "T-case decompletion residues");
    Ok(5)
}

/// S-case identities: the two decompletion residues agree, the
/// 2-valent swap parity, the four-set control-vertex parities, and the
/// six-term difference expansion.
fn s_case_identities(ctx: &CaseContext) -> Result<usize, BipartitionError> {
    let s_c_ab = ctx.count("c", "ab")?;
    let s_c_de = ctx.count("c", "de")?;
    assert_eq!(s_c_ab % 2, s_c_de % 2, "S-case decompletion residues");
    let terms = [
        ctx.count("cd", "abe")?,
        ctx.count("ce", "abd")?,
        ctx.count("ab", "cde")?,
        ctx.count("ac", "bde")?,
        ctx.count("bc", "ade")?,
        ctx.count("de", "abc")?,
    ];
    assert_eq!(
        terms.iter().sum::<usize>() % 2,
        0,
        "six-term S difference parity"
    );
    let s_abc_de = ctx.count("abc", "de")?;
    assert_eq!((s_abc_de + terms[2]) % 2, 0, "swap around c parity");
    let singles = [
        ctx.count("a", "bcde")?,
        ctx.count("b", "acde")?,
        ctx.count("d", "abce")?,
        ctx.count("e", "abcd")?,
    ];
    assert_eq!(
        singles.iter().sum::<usize>() % 2,
        0,
        "control vertex union parity"
    );
    assert_eq!(
        (terms[3] + terms[4] + terms[0] + terms[1]) % 2,
        0,
        "swapped control vertex union parity"
    );
    // Exact expansion of s_{c|ab} over the free vertices d, e.
    let s_c_abde = ctx.count("c", "abde")?;
    let s_cde_ab = ctx.count("cde", "ab")?;
    assert_eq!(
        s_c_ab,
        s_c_abde + terms[0] + terms[1] + s_cde_ab,
        "s_{{c|ab}} expansion"
    );
    Ok(6)
}

/// R-case identities: all six 3-marked counts pair up into the two
/// decompletion residues, the singleton six-set parity, the per-trio
/// single-control parities, and an exact expansion oracle.
fn r_case_identities(ctx: &CaseContext) -> Result<usize, BipartitionError> {
    let w_trio = [
        ctx.count("a", "bc")?,
        ctx.count("b", "ac")?,
        ctx.count("c", "ab")?,
    ];
    let v_trio = [
        ctx.count("d", "ef")?,
        ctx.count("e", "df")?,
        ctx.count("f", "de")?,
    ];
    for c in w_trio.iter().chain(&v_trio) {
        assert_eq!(c % 2, w_trio[0] % 2, "R-case reduction choices");
    }
    let singletons = [
        ctx.count("a", "bcdef")?,
        ctx.count("b", "acdef")?,
        ctx.count("c", "abdef")?,
        ctx.count("d", "abcef")?,
        ctx.count("e", "abcdf")?,
        ctx.count("f", "abcde")?,
    ];
    assert_eq!(
        singletons.iter().sum::<usize>() % 2,
        0,
        "double control union parity"
    );
    let pairs = [
        ctx.count("bc", "adef")?,
        ctx.count("ac", "bdef")?,
        ctx.count("ab", "cdef")?,
        ctx.count("ef", "abcd")?,
        ctx.count("df", "abce")?,
        ctx.count("de", "abcf")?,
    ];
    assert_eq!(
        pairs.iter().sum::<usize>() % 2,
        0,
        "single control union parity"
    );
    // Exact expansion of r_{a|bc} over the free vertices d, e, f.
    let expansion = singletons[0]
        + ctx.count("ad", "bcef")?
        + ctx.count("ae", "bcdf")?
        + ctx.count("af", "bcde")?
        + ctx.count("ade", "bcf")?
        + ctx.count("adf", "bce")?
        + ctx.count("aef", "bcd")?
        + ctx.count("adef", "bc")?;
    assert_eq!(w_trio[0], expansion, "r_{{a|bc}} expansion");
    Ok(4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{circulant_12, complete, cycle};

    /// C8(1,3), the smallest 4-regular graph with an adjacent pair
    /// sharing no neighbours.
    fn circulant_13() -> Multigraph {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for i in 0..8 {
            edges.push((i.min((i + 1) % 8), i.max((i + 1) % 8)));
            edges.push((i.min((i + 3) % 8), i.max((i + 3) % 8)));
        }
        edges.sort_unstable();
        edges.dedup();
        Multigraph::new(8, edges).unwrap()
    }

    fn k3_partition(single: usize, pair: [usize; 2]) -> VertexPartition {
        VertexPartition::new(vec![[single].into(), pair.into()]).unwrap()
    }

    #[test]
    fn triangle_counts_match_forest_enumeration() {
        let k3 = complete(3);
        for (single, pair) in [(0, [1, 2]), (1, [0, 2]), (2, [0, 1])] {
            let p = k3_partition(single, pair);
            let count = count_bipartitions(&k3, &p).unwrap();
            // Oracle from the opposite direction: enumerate compatible
            // 2-forests and test each complement for treeness.
            let oracle = k3
                .spanning_2forests(&p)
                .unwrap()
                .into_iter()
                .filter(|forest| {
                    let phi: BTreeSet<usize> = forest.iter().copied().collect();
                    let psi: BTreeSet<usize> =
                        (1..=k3.edge_count()).filter(|e| !phi.contains(e)).collect();
                    is_spanning_tree(&k3, &psi)
                })
                .count();
            assert_eq!(count, oracle);
            assert_eq!(count, 1);
        }
    }

    #[test]
    fn bipartitions_validate_both_sides() {
        let k3 = complete(3);
        let p = k3_partition(0, [1, 2]);
        for b in bipartitions(&k3, &p).unwrap() {
            EdgeBipartition::new(&k3, &p, b.psi().clone()).unwrap();
        }
        // Wrong edge balance: a 4-cycle has 4 edges but needs 2*4-3 = 5.
        let p4 = VertexPartition::new(vec![[0].into(), [2].into()]).unwrap();
        assert!(bipartitions(&cycle(4), &p4).unwrap().is_empty());
    }

    #[test]
    fn k5_counting_route_gives_one() {
        let k5 = complete(5);
        for v in 0..5 {
            for u in 0..4 {
                assert_eq!(c2_p2_via_counts(&k5, v, u).unwrap(), 1);
            }
        }
    }

    #[test]
    fn case_context_classification_and_labels() {
        let k5 = complete(5);
        assert_eq!(CaseContext::new(&k5, 0, 1).unwrap().tag(), CaseTag::AllShared);

        let c6 = circulant_12(6);
        let ctx = CaseContext::new(&c6, 0, 1).unwrap();
        assert_eq!(ctx.tag(), CaseTag::T);
        // w = 1 has outside neighbour 3, v = 0 has 4, shared are 2 and 5;
        // in H ids drop by two.
        assert_eq!(ctx.labels(), &[1, 0, 3, 2]);
        assert_eq!(ctx.h().vertex_count(), 4);
        assert_eq!(ctx.h().edge_count(), 5);

        let c7 = circulant_12(7);
        let ctx = CaseContext::new(&c7, 0, 2).unwrap();
        assert_eq!(ctx.tag(), CaseTag::S);
        // Shared neighbour 1 maps to label c; w-only 3, 4; v-only 5, 6.
        assert_eq!(ctx.labels(), &[1, 2, 0, 3, 4]);

        let c8 = circulant_13();
        let ctx = CaseContext::new(&c8, 0, 1).unwrap();
        assert_eq!(ctx.tag(), CaseTag::R);
        assert_eq!(ctx.labels().len(), 6);

        assert_eq!(
            CaseContext::new(&c8, 0, 2).unwrap_err(),
            BipartitionError::NotAdjacent(0, 2)
        );
        assert!(CaseContext::new(&cycle(5), 0, 1).is_err());
    }

    #[test]
    fn swap_two_valent_is_a_fixed_point_free_involution() {
        let c6 = circulant_12(6);
        let ctx = CaseContext::new(&c6, 0, 1).unwrap();
        let b_label = ctx.letter('b');
        for (left, right) in [("a", "bcd"), ("ab", "cd")] {
            let family = bipartitions(ctx.h(), &ctx.partition(left, right)).unwrap();
            for b in family {
                let image = swap_two_valent(ctx.h(), &b, b_label).unwrap();
                assert_ne!(image, b);
                let back = swap_two_valent(ctx.h(), &image, b_label).unwrap();
                assert_eq!(back, b);
            }
        }
    }

    #[test]
    fn swap_two_valent_rejects_bad_vertices() {
        let c6 = circulant_12(6);
        let ctx = CaseContext::new(&c6, 0, 1).unwrap();
        let family = bipartitions(ctx.h(), &ctx.partition("a", "bcd")).unwrap();
        // Vertex a is 3-valent in H.
        let a = ctx.letter('a');
        assert_eq!(
            swap_two_valent(ctx.h(), &family[0], a),
            Err(BipartitionError::NotTwoValent(a))
        );
    }

    #[test]
    fn control_vertex_mode_in_two_part_never_returns_x() {
        let c7 = circulant_12(7);
        let ctx = CaseContext::new(&c7, 0, 2).unwrap();
        let c = ctx.letter('c');
        for x in ["a", "b", "d", "e"] {
            let four: BTreeSet<usize> = ctx
                .marked()
                .into_iter()
                .filter(|&m| m != ctx.letter(x.chars().next().unwrap()))
                .collect();
            let family = bipartitions(
                ctx.h(),
                &ctx.partition(x, &"abcde".replace(x, "")),
            )
            .unwrap();
            for b in family {
                let cv =
                    find_control_vertex(ctx.h(), &b, &four, c, ControlMode::InTwoPart).unwrap();
                assert_eq!(cv.case, ControlCase::SingleControl);
                assert_ne!(cv.vertices[0], c);
                // The control vertex is a leaf in psi.
                assert!(psi_leaf_edge(ctx.h(), &b, cv.vertices[0]).is_ok());
            }
        }
    }

    /// Cross-check of the path formulation: for shapes {x} | {c,*,*,*}
    /// the control vertex is the junction where the paths from exactly
    /// two of the non-c part members towards c first meet, provided the
    /// control vertex is not itself a part member.
    #[test]
    fn control_vertex_matches_path_junction_formulation() {
        // C8(1,2) rather than C7(1,2): the cross-check needs a vertex
        // of H outside the marked set, and G - {v,w} must be bigger
        // than the five labels for that.
        let c8 = circulant_12(8);
        let ctx = CaseContext::new(&c8, 0, 2).unwrap();
        assert_eq!(ctx.tag(), CaseTag::S);
        let c = ctx.letter('c');
        let mut checked = 0;
        for x in ['a', 'b', 'd', 'e'] {
            let four: BTreeSet<usize> = ctx
                .marked()
                .into_iter()
                .filter(|&m| m != ctx.letter(x))
                .collect();
            let family = bipartitions(
                ctx.h(),
                &ctx.partition(&x.to_string(), &"abcde".replace(x, "")),
            )
            .unwrap();
            for b in family {
                let cv =
                    find_control_vertex(ctx.h(), &b, &four, c, ControlMode::InTwoPart).unwrap();
                let v = cv.vertices[0];
                if four.contains(&v) {
                    continue;
                }
                let (verts, adj) = part_tree(ctx.h(), &b, &four).unwrap();
                let paths: Vec<Vec<usize>> = four
                    .iter()
                    .filter(|&&m| m != c)
                    .map(|&m| tree_path(&adj, &verts, m, c))
                    .collect();
                let on = paths.iter().filter(|p| p.contains(&v)).count();
                assert_eq!(on, 2, "control vertex lies on exactly two paths to c");
                let junction = paths
                    .iter()
                    .filter(|p| p.contains(&v))
                    .map(|p| p.iter().position(|&y| y == v).unwrap())
                    .collect::<Vec<_>>();
                // First common vertex: everything before the junction
                // index in either path is disjoint from the other path.
                let two: Vec<&Vec<usize>> = paths.iter().filter(|p| p.contains(&v)).collect();
                for (path, &cut) in two.iter().zip(&junction) {
                    for &y in &path[..cut] {
                        assert!(!two.iter().any(|q| q != path && q.contains(&y)));
                    }
                }
                checked += 1;
            }
        }
        assert!(checked > 0, "cross-check needs non-degenerate instances");
    }

    /// Path between two vertices inside the part tree.
    fn tree_path(
        adj: &BTreeMap<usize, Vec<(usize, usize)>>,
        verts: &BTreeSet<usize>,
        from: usize,
        to: usize,
    ) -> Vec<usize> {
        let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
        let mut stack = vec![from];
        let mut seen: BTreeSet<usize> = [from].into();
        while let Some(x) = stack.pop() {
            if x == to {
                break;
            }
            for &(_, y) in adj.get(&x).into_iter().flatten() {
                if verts.contains(&y) && seen.insert(y) {
                    prev.insert(y, x);
                    stack.push(y);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[&cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    #[test]
    fn two_control_vertices_are_unique_and_non_adjacent() {
        let c8 = circulant_13();
        let ctx = CaseContext::new(&c8, 0, 1).unwrap();
        let five: BTreeSet<usize> = ctx
            .marked()
            .into_iter()
            .filter(|&m| m != ctx.letter('a'))
            .collect();
        let family = bipartitions(ctx.h(), &ctx.partition("a", "bcdef")).unwrap();
        assert!(!family.is_empty());
        for b in family {
            let cv = find_two_control_vertices(ctx.h(), &b, &five).unwrap();
            assert_eq!(cv.case, ControlCase::DoubleControl);
            let &[v, w] = &cv.vertices[..] else {
                panic!("two vertices")
            };
            assert!(ctx.h().edges_between(v, w).iter().all(|e| {
                !b.phi().contains(e) && !b.psi().contains(e)
            }));
        }
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let c8 = circulant_13();
        let ctx = CaseContext::new(&c8, 0, 1).unwrap();
        let family = bipartitions(ctx.h(), &ctx.partition("a", "bcdef")).unwrap();
        let b = &family[0];
        let tiny: BTreeSet<usize> = [0, 1].into();
        assert!(matches!(
            find_two_control_vertices(ctx.h(), b, &tiny),
            Err(BipartitionError::ShapeMismatch(_))
        ));
        assert!(matches!(
            find_control_vertex(ctx.h(), b, &tiny, 0, ControlMode::InTwoPart),
            Err(BipartitionError::ShapeMismatch(_))
        ));
        // Wrong-shape bipartition for the involutions.
        assert!(matches!(
            involution_r_single(&ctx, b),
            Err(BipartitionError::ShapeMismatch(_))
        ));
    }
}
