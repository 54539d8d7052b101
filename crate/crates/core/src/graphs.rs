//! Multigraphs with a stable 1-based edge order, plus the combinatorial
//! operations the graph-polynomial layer is built on: spanning tree and
//! 2-forest enumeration, superficial degree of divergence, primitivity,
//! completed-primitivity, decompletion and double triangle reduction.
//!
//! Everything here enumerates edge subsets directly, so costs are
//! exponential in the edge count. That is the point: these are the
//! ground-truth objects the polynomial identities are tested against.
//! Hard caps keep accidental large inputs from hanging.

use itertools::Itertools;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Enumeration cap for subset scans (`is_primitive`, tree listings).
pub(crate) const MAX_ENUM_EDGES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("cannot contract self-loop {0}")]
    ContractLoop(usize),
    #[error("graph is not 4-regular: vertex {vertex} has degree {degree}")]
    NotFourRegular { vertex: usize, degree: usize },
    #[error("graph needs at least {0} vertices here")]
    TooFewVertices(usize),
    #[error("double triangle reduction not applicable: {0}")]
    DtrNotApplicable(String),
    #[error("edge count {0} exceeds the enumeration cap {MAX_ENUM_EDGES}")]
    TooManyEdges(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Union-find over 0-based vertex ids.
#[derive(Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when x and y were already joined.
    pub(crate) fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[rx.max(ry)] = rx.min(ry);
        true
    }
}

/// A multigraph with 0-based vertices and 1-based edges. The edge list
/// order is the fixed edge order iota used by every polynomial; edge i
/// is `edges[i-1]`, stored as (tail, head), which also fixes the
/// orientation used by the signed incidence matrix. Self-loops are
/// allowed where they make sense and rejected by the operations whose
/// context forbids them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multigraph {
    vcount: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vcount: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if vcount == 0 {
            return Err(GraphError::TooFewVertices(1));
        }
        for &(t, h) in &edges {
            if t >= vcount {
                return Err(GraphError::VertexOutOfRange(t));
            }
            if h >= vcount {
                return Err(GraphError::VertexOutOfRange(h));
            }
        }
        Ok(Multigraph { vcount, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vcount
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Endpoints of edge e (1-based).
    pub fn endpoints(&self, e: usize) -> Result<(usize, usize), GraphError> {
        self.edges
            .get(e.checked_sub(1).ok_or(GraphError::EdgeOutOfRange(e))?)
            .copied()
            .ok_or(GraphError::EdgeOutOfRange(e))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(t, h)| (t == v) as usize + (h == v) as usize)
            .sum()
    }

    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(t, h))| t == v || h == v)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Distinct neighbours of v, sorted (a self-loop makes v its own
    /// neighbour).
    pub fn neighbours(&self, v: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &(t, h) in &self.edges {
            if t == v {
                out.insert(h);
            }
            if h == v {
                out.insert(t);
            }
        }
        out
    }

    pub fn edges_between(&self, u: usize, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(t, h))| (t, h) == (u, v) || (t, h) == (v, u))
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vcount);
        let mut comps = self.vcount;
        for &(t, h) in &self.edges {
            if uf.union(t, h) {
                comps -= 1;
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// First Betti number E - V + C (the loop order when connected).
    pub fn loop_order(&self) -> usize {
        self.edges.len() + self.component_count() - self.vcount
    }

    /// Superficial degree of divergence 4*loop_order - 2*E.
    pub fn sdd(&self) -> i64 {
        4 * self.loop_order() as i64 - 2 * self.edges.len() as i64
    }

    /// Delete edge e; remaining edges keep their relative order and are
    /// re-compacted to 1..E-1 (old f maps to f-1 for f > e).
    pub fn delete_edge(&self, e: usize) -> Result<Multigraph, GraphError> {
        self.endpoints(e)?;
        let mut edges = self.edges.clone();
        edges.remove(e - 1);
        Ok(Multigraph {
            vcount: self.vcount,
            edges,
        })
    }

    /// Contract edge e (not a self-loop): its endpoints merge into the
    /// smaller vertex id, vertex ids re-compact, edge order is preserved.
    pub fn contract_edge(&self, e: usize) -> Result<Multigraph, GraphError> {
        let (t, h) = self.endpoints(e)?;
        if t == h {
            return Err(GraphError::ContractLoop(e));
        }
        let keep = t.min(h);
        let gone = t.max(h);
        let remap = |v: usize| {
            let v = if v == gone { keep } else { v };
            if v > gone {
                v - 1
            } else {
                v
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| i + 1 != e)
            .map(|(_, &(a, b))| (remap(a), remap(b)))
            .collect();
        Ok(Multigraph {
            vcount: self.vcount - 1,
            edges,
        })
    }

    /// Delete vertex v with all incident edges; ids above v shift down,
    /// surviving edges keep their relative order.
    pub fn delete_vertex(&self, v: usize) -> Result<Multigraph, GraphError> {
        if v >= self.vcount {
            return Err(GraphError::VertexOutOfRange(v));
        }
        if self.vcount == 1 {
            return Err(GraphError::TooFewVertices(2));
        }
        let remap = |x: usize| if x > v { x - 1 } else { x };
        let edges = self
            .edges
            .iter()
            .filter(|&&(t, h)| t != v && h != v)
            .map(|&(t, h)| (remap(t), remap(h)))
            .collect();
        Ok(Multigraph {
            vcount: self.vcount - 1,
            edges,
        })
    }

    /// Loop order of the subgraph spanned by an edge subset on its induced
    /// vertex set.
    fn subgraph_loop_order(&self, edge_set: &[usize]) -> usize {
        let mut verts = BTreeSet::new();
        for &e in edge_set {
            let (t, h) = self.edges[e - 1];
            verts.insert(t);
            verts.insert(h);
        }
        let index: BTreeMap<usize, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(verts.len());
        let mut comps = verts.len();
        for &e in edge_set {
            let (t, h) = self.edges[e - 1];
            if uf.union(index[&t], index[&h]) {
                comps -= 1;
            }
        }
        edge_set.len() + comps - verts.len()
    }

    /// All spanning trees as ascending edge-id lists, enumerated in
    /// lexicographic order of the lists.
    pub fn spanning_trees(&self) -> Result<Vec<Vec<usize>>, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if self.edges.len() > MAX_ENUM_EDGES {
            return Err(GraphError::TooManyEdges(self.edges.len()));
        }
        let n = self.vcount;
        let mut out = Vec::new();
        if n == 1 {
            out.push(Vec::new());
            return Ok(out);
        }
        for combo in (1..=self.edges.len()).combinations(n - 1) {
            let mut uf = UnionFind::new(n);
            let mut ok = true;
            for &e in &combo {
                let (t, h) = self.edges[e - 1];
                if t == h || !uf.union(t, h) {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(combo);
            }
        }
        Ok(out)
    }

    /// All spanning 2-forests compatible with a 2-part vertex partition:
    /// exactly two trees, each containing one part entirely and nothing
    /// from the other. Unmarked vertices may fall in either tree.
    pub fn spanning_2forests(
        &self,
        partition: &VertexPartition,
    ) -> Result<Vec<Vec<usize>>, GraphError> {
        partition.validate(self)?;
        if partition.parts().len() != 2 {
            return Err(GraphError::InvalidPartition(format!(
                "need exactly 2 parts, got {}",
                partition.parts().len()
            )));
        }
        if self.edges.len() > MAX_ENUM_EDGES {
            return Err(GraphError::TooManyEdges(self.edges.len()));
        }
        let n = self.vcount;
        if n < 2 {
            return Err(GraphError::TooFewVertices(2));
        }
        let p0: Vec<usize> = partition.parts()[0].iter().copied().collect();
        let p1: Vec<usize> = partition.parts()[1].iter().copied().collect();
        let mut out = Vec::new();
        for combo in (1..=self.edges.len()).combinations(n - 2) {
            let mut uf = UnionFind::new(n);
            let mut ok = true;
            for &e in &combo {
                let (t, h) = self.edges[e - 1];
                if t == h || !uf.union(t, h) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            // Acyclic with n-2 edges: exactly two trees. Compatibility:
            // each part inside one tree, the parts in different trees.
            let r0 = uf.find(p0[0]);
            if !p0.iter().all(|&v| uf.find(v) == r0) {
                continue;
            }
            let r1 = uf.find(p1[0]);
            if r0 == r1 || !p1.iter().all(|&v| uf.find(v) == r1) {
                continue;
            }
            out.push(combo);
        }
        Ok(out)
    }

    /// Primitive divergent: E = 2*loop_order and every non-empty proper
    /// subgraph (edge subset with induced vertices) has E(g) > 2*l(g).
    pub fn is_primitive(&self) -> Result<bool, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let m = self.edges.len();
        if m > MAX_ENUM_EDGES {
            return Err(GraphError::TooManyEdges(m));
        }
        if m != 2 * self.loop_order() {
            return Ok(false);
        }
        // Every proper non-empty edge subset must be subdivergence-free.
        for mask in 1u64..((1u64 << m) - 1) {
            let subset: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            if subset.len() <= 2 * self.subgraph_loop_order(&subset) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Completed primitive: connected, 4-regular, at least 3 vertices, and
    /// every 4-edge cut is trivial (isolates a single vertex).
    pub fn is_completed_primitive(&self) -> Result<bool, GraphError> {
        if self.vcount < 3 {
            return Err(GraphError::TooFewVertices(3));
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        for v in 0..self.vcount {
            let d = self.degree(v);
            if d != 4 {
                return Err(GraphError::NotFourRegular { vertex: v, degree: d });
            }
        }
        for combo in (1..=self.edges.len()).combinations(4) {
            let removed: BTreeSet<usize> = combo.iter().copied().collect();
            let mut uf = UnionFind::new(self.vcount);
            let mut comps = self.vcount;
            for (i, &(t, h)) in self.edges.iter().enumerate() {
                if !removed.contains(&(i + 1)) && uf.union(t, h) {
                    comps -= 1;
                }
            }
            if comps == 1 {
                continue;
            }
            if comps > 2 {
                return Ok(false);
            }
            // Exactly two components: trivial iff one is a lone vertex.
            let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
            for v in 0..self.vcount {
                *sizes.entry(uf.find(v)).or_insert(0) += 1;
            }
            if !sizes.values().any(|&s| s == 1) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Decompletion: delete vertex v and re-compact. The surviving edges
    /// keep their iota order.
    pub fn decompletion(&self, v: usize) -> Result<Multigraph, GraphError> {
        self.delete_vertex(v)
    }

    /// Third vertices of the triangles through edge e, with one entry per
    /// edge-triangle (a doubled side contributes its vertex twice).
    pub fn triangle_apexes(&self, e: usize) -> Result<Vec<usize>, GraphError> {
        let (a, b) = self.endpoints(e)?;
        if a == b {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for w in 0..self.vcount {
            if w == a || w == b {
                continue;
            }
            let m = self.edges_between(a, w).len() * self.edges_between(b, w).len();
            for _ in 0..m {
                out.push(w);
            }
        }
        Ok(out)
    }

    /// Double triangle reduction at edge e = (A,B) lying in exactly two
    /// triangles (A,B,C) and (A,B,D): the head endpoint B is removed and
    /// replaced by the new edge (C,D); every edge from B to a vertex
    /// outside the triangles is reattached to A. Surviving edges keep
    /// their iota order; the new (C,D) edge comes next, then the
    /// reattached edges in their old order.
    pub fn double_triangle_reduce(&self, e: usize) -> Result<Multigraph, GraphError> {
        let (a, b) = self.endpoints(e)?;
        if a == b {
            return Err(GraphError::DtrNotApplicable(format!(
                "edge {e} is a self-loop"
            )));
        }
        let apexes = self.triangle_apexes(e)?;
        if apexes.len() != 2 || apexes[0] == apexes[1] {
            return Err(GraphError::DtrNotApplicable(format!(
                "edge {e} lies in {} triangle(s) on {} distinct third vertices",
                apexes.len(),
                apexes.iter().collect::<BTreeSet<_>>().len()
            )));
        }
        let (c, d) = (apexes[0], apexes[1]);
        if self.edges_between(a, b).len() > 1 {
            return Err(GraphError::DtrNotApplicable(format!(
                "edge {e} has a parallel copy"
            )));
        }
        if !self.edges_between(b, b).is_empty() {
            return Err(GraphError::DtrNotApplicable(format!(
                "vertex {b} carries a self-loop"
            )));
        }
        let remap = |x: usize| if x > b { x - 1 } else { x };
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut reattached: Vec<(usize, usize)> = Vec::new();
        for &(t, h) in &self.edges {
            if t != b && h != b {
                edges.push((remap(t), remap(h)));
                continue;
            }
            let other = if t == b { h } else { t };
            if other == a || other == c || other == d {
                // Absorbed into the reduction.
                continue;
            }
            reattached.push((remap(a), remap(other)));
        }
        edges.push((remap(c), remap(d)));
        edges.extend(reattached);
        Ok(Multigraph {
            vcount: self.vcount - 1,
            edges,
        })
    }

    /// Text format: header `V E`, then E lines `tail head` (0-based); the
    /// line order defines edge ids 1..E.
    pub fn parse(text: &str) -> Result<Multigraph, GraphError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| {
            GraphError::Parse("empty graph text".into())
        })?;
        let mut parts = header.split_whitespace();
        let v: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| GraphError::Parse(format!("bad header '{header}'")))?;
        let e: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| GraphError::Parse(format!("bad header '{header}'")))?;
        if parts.next().is_some() {
            return Err(GraphError::Parse(format!("trailing tokens in header '{header}'")));
        }
        let mut edges = Vec::with_capacity(e);
        for line in lines {
            let mut it = line.split_whitespace();
            let t: usize = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| GraphError::Parse(format!("bad edge line '{line}'")))?;
            let h: usize = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| GraphError::Parse(format!("bad edge line '{line}'")))?;
            if it.next().is_some() {
                return Err(GraphError::Parse(format!("trailing tokens in edge line '{line}'")));
            }
            edges.push((t, h));
        }
        if edges.len() != e {
            return Err(GraphError::Parse(format!(
                "header says {e} edges, found {}",
                edges.len()
            )));
        }
        Multigraph::new(v, edges)
    }

    /// graph6 (simple graphs, n <= 62). Edges are sorted lexicographically
    /// as (min,max) pairs and oriented min -> max.
    pub fn from_graph6(s: &str) -> Result<Multigraph, GraphError> {
        let bytes: Vec<u8> = s.trim().bytes().collect();
        if bytes.is_empty() {
            return Err(GraphError::Parse("empty graph6 string".into()));
        }
        if bytes[0] == 126 {
            return Err(GraphError::Parse("extended graph6 sizes unsupported".into()));
        }
        let n = (bytes[0] as usize)
            .checked_sub(63)
            .ok_or_else(|| GraphError::Parse("bad graph6 size byte".into()))?;
        let need_bits = n * n.saturating_sub(1) / 2;
        let need_bytes = need_bits.div_ceil(6);
        if bytes.len() != 1 + need_bytes {
            return Err(GraphError::Parse(format!(
                "graph6 length mismatch: n = {n} needs {need_bytes} data bytes"
            )));
        }
        let mut bits = Vec::with_capacity(need_bytes * 6);
        for &b in &bytes[1..] {
            let v = b
                .checked_sub(63)
                .ok_or_else(|| GraphError::Parse("bad graph6 data byte".into()))?;
            if v >= 64 {
                return Err(GraphError::Parse("bad graph6 data byte".into()));
            }
            for k in (0..6).rev() {
                bits.push(v >> k & 1 == 1);
            }
        }
        let mut edges = Vec::new();
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if bits[idx] {
                    edges.push((i, j));
                }
                idx += 1;
            }
        }
        edges.sort();
        Multigraph::new(n.max(1), edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.vcount, self.edges.len());
        for &(t, h) in &self.edges {
            out.push_str(&format!("{t} {h}\n"));
        }
        out
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// A partition of a subset of the vertices into disjoint non-empty parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPartition {
    parts: Vec<BTreeSet<usize>>,
}

impl VertexPartition {
    pub fn new(parts: Vec<BTreeSet<usize>>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for part in &parts {
            if part.is_empty() {
                return Err(GraphError::InvalidPartition("empty part".into()));
            }
            for &v in part {
                if !seen.insert(v) {
                    return Err(GraphError::InvalidPartition(format!(
                        "vertex {v} appears in two parts"
                    )));
                }
            }
        }
        Ok(VertexPartition { parts })
    }

    pub fn parts(&self) -> &[BTreeSet<usize>] {
        &self.parts
    }

    pub fn validate(&self, g: &Multigraph) -> Result<(), GraphError> {
        for part in &self.parts {
            for &v in part {
                if v >= g.vertex_count() {
                    return Err(GraphError::InvalidPartition(format!(
                        "unknown vertex {v}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Which part contains v, if any.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&v))
    }
}

impl fmt::Display for VertexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self
            .parts
            .iter()
            .map(|p| p.iter().map(|v| v.to_string()).join(","))
            .collect();
        write!(f, "{}", rendered.join("|"))
    }
}

/// A bipartition of the edge set of a graph into a spanning tree `psi`
/// and a spanning 2-forest `phi` compatible with a fixed 2-part vertex
/// partition. These are the objects counted mod 2 by the completion
/// bijections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeBipartition {
    psi: BTreeSet<usize>,
    phi: BTreeSet<usize>,
}

impl EdgeBipartition {
    /// Build from the tree side; `phi` is the complement and both sides
    /// are verified against the graph and partition.
    pub fn new(
        g: &Multigraph,
        partition: &VertexPartition,
        psi: BTreeSet<usize>,
    ) -> Result<Self, GraphError> {
        let phi: BTreeSet<usize> = (1..=g.edge_count()).filter(|e| !psi.contains(e)).collect();
        let trees = g.spanning_trees()?;
        let psi_v: Vec<usize> = psi.iter().copied().collect();
        if !trees.contains(&psi_v) {
            return Err(GraphError::InvalidPartition(
                "psi is not a spanning tree".into(),
            ));
        }
        let forests = g.spanning_2forests(partition)?;
        let phi_v: Vec<usize> = phi.iter().copied().collect();
        if !forests.contains(&phi_v) {
            return Err(GraphError::InvalidPartition(
                "phi is not a compatible spanning 2-forest".into(),
            ));
        }
        Ok(EdgeBipartition { psi, phi })
    }

    /// Unchecked constructor for enumeration loops that have already
    /// verified both sides.
    pub(crate) fn from_parts(psi: BTreeSet<usize>, phi: BTreeSet<usize>) -> Self {
        EdgeBipartition { psi, phi }
    }

    pub fn psi(&self) -> &BTreeSet<usize> {
        &self.psi
    }

    pub fn phi(&self) -> &BTreeSet<usize> {
        &self.phi
    }
}

/// K4 with the canonical labelling used throughout: vertex 0 the hub,
/// star edges 1,2,3 then triangle edges 4 = (1,2), 5 = (2,3), 6 = (1,3).
pub fn k4() -> Multigraph {
    Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 3)]).unwrap()
}

/// Complete graph on n vertices, edges lexicographic.
pub fn complete(n: usize) -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    Multigraph::new(n, edges).unwrap()
}

/// Circulant graph C_n(1,2): the zigzag completions live here.
pub fn circulant_12(n: usize) -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
    }
    for i in 0..n {
        edges.push((i, (i + 2) % n));
    }
    edges = edges
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    edges.sort();
    Multigraph::new(n, edges).unwrap()
}

/// Cycle graph C_n.
pub fn cycle(n: usize) -> Multigraph {
    let edges = (0..n).map(|i| (i, (i + 1) % n)).map(|(a, b)| (a.min(b), a.max(b))).collect();
    Multigraph::new(n, edges).unwrap()
}
