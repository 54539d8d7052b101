//! Graph polynomials built on the expanded Laplacian: Kirchhoff and
//! Dodgson polynomials, spanning forest polynomials, the Dodgson-to-forest
//! expansion, the 5-invariant, and zigzag period constants.
//!
//! Conventions, fixed once for the whole crate: edges are numbered 1..=E
//! in the graph's stored order, vertices come after edges when indexing
//! the expanded Laplacian, and the incidence matrix drops the
//! highest-numbered vertex. Dodgson values depend on the stored edge
//! orientations (tail, head); all identities hold for any fixed choice.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graphs::{GraphError, Multigraph, UnionFind, VertexPartition, MAX_ENUM_EDGES};
use crate::poly::SparsePoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphPolyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("need exactly five distinct edges")]
    FiveDistinct,
    #[error("index words must be disjoint here, both contain edge {0}")]
    OverlappingWords(usize),
    #[error("zigzag graphs start at loop order 3, got {0}")]
    ZigzagOrder(u64),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Sign of a word of edge labels: 0 when a label repeats, otherwise the
/// sign of the permutation that sorts the word ascending.
pub fn word_sign(word: &[usize]) -> i8 {
    for (a, &x) in word.iter().enumerate() {
        if word[..a].contains(&x) {
            return 0;
        }
    }
    let mut inversions = 0usize;
    for a in 0..word.len() {
        for b in a + 1..word.len() {
            if word[a] > word[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The expanded Laplacian L = [[Lambda, E^T], [E, 0]] where Lambda is the
/// diagonal of edge variables and E is the signed incidence matrix with
/// one vertex row dropped.
pub struct ExpandedLaplacian {
    matrix: Vec<Vec<SparsePoly>>,
    removed_vertex: usize,
    edge_count: usize,
}

impl ExpandedLaplacian {
    /// Standard choice: drop the highest-numbered vertex.
    pub fn new(g: &Multigraph) -> Self {
        Self::with_removed_vertex(g, g.vertex_count() - 1)
            .expect("last vertex always exists")
    }

    /// Same matrix with a caller-chosen dropped vertex. Dodgson values do
    /// not depend on this choice; the test suite relies on that.
    pub fn with_removed_vertex(g: &Multigraph, removed: usize) -> Result<Self, GraphPolyError> {
        let nv = g.vertex_count();
        if removed >= nv {
            return Err(GraphError::VertexOutOfRange(removed).into());
        }
        let m = g.edge_count();
        let kept: Vec<usize> = (0..nv).filter(|&v| v != removed).collect();
        let size = m + kept.len();
        let mut matrix = vec![vec![SparsePoly::zero(m); size]; size];
        for e in 1..=m {
            matrix[e - 1][e - 1] = SparsePoly::var(m, e);
        }
        for (vi, &v) in kept.iter().enumerate() {
            for e in 1..=m {
                let (t, h) = g.endpoints(e)?;
                let inc = if t == v && h == v {
                    0
                } else if t == v {
                    1
                } else if h == v {
                    -1
                } else {
                    0
                };
                if inc != 0 {
                    matrix[m + vi][e - 1] = SparsePoly::constant(m, inc);
                    matrix[e - 1][m + vi] = SparsePoly::constant(m, inc);
                }
            }
        }
        Ok(ExpandedLaplacian {
            matrix,
            removed_vertex: removed,
            edge_count: m,
        })
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn removed_vertex(&self) -> usize {
        self.removed_vertex
    }

    pub fn entry(&self, row: usize, col: usize) -> &SparsePoly {
        &self.matrix[row][col]
    }

    pub fn determinant(&self) -> SparsePoly {
        bareiss_det(self.matrix.clone(), self.edge_count)
    }

    /// det of the matrix with edge-rows `i`, edge-columns `j` removed and
    /// the variables in `k` set to zero.
    fn minor_det(&self, i: &[usize], j: &[usize], k: &BTreeSet<usize>) -> SparsePoly {
        let drop_rows: BTreeSet<usize> = i.iter().map(|e| e - 1).collect();
        let drop_cols: BTreeSet<usize> = j.iter().map(|e| e - 1).collect();
        let size = self.size();
        let zero = SparsePoly::zero(self.edge_count);
        let sub: Vec<Vec<SparsePoly>> = (0..size)
            .filter(|r| !drop_rows.contains(r))
            .map(|r| {
                (0..size)
                    .filter(|c| !drop_cols.contains(c))
                    .map(|c| {
                        if r == c && r < self.edge_count && k.contains(&(r + 1)) {
                            zero.clone()
                        } else {
                            self.matrix[r][c].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        bareiss_det(sub, self.edge_count)
    }
}

/// Fraction-free Bareiss elimination. Pivots pick the nonzero candidate
/// with the fewest terms (ties go to the lowest row) so incidence entries
/// are preferred over symbolic ones; every interior division is exact.
fn bareiss_det(mut a: Vec<Vec<SparsePoly>>, nvars: usize) -> SparsePoly {
    let n = a.len();
    if n == 0 {
        return SparsePoly::one(nvars);
    }
    let mut negate = false;
    let mut prev = SparsePoly::one(nvars);
    for k in 0..n - 1 {
        let pivot = (k..n)
            .filter(|&r| !a[r][k].is_zero())
            .min_by_key(|&r| (a[r][k].num_terms(), r));
        let Some(p) = pivot else {
            return SparsePoly::zero(nvars);
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss elimination divides exactly");
            }
            a[i][k] = SparsePoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Integer determinant by the same fraction-free scheme; used for the
/// incidence minors whose values are always -1, 0 or 1.
fn int_det(mut a: Vec<Vec<i64>>) -> i64 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut negate = false;
    let mut prev = 1i64;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| a[r][k] != 0) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    if negate {
        -a[n - 1][n - 1]
    } else {
        a[n - 1][n - 1]
    }
}

/// Kirchhoff (first Symanzik) polynomial: sum over spanning trees of the
/// product of the variables off the tree.
pub fn kirchhoff(g: &Multigraph) -> Result<SparsePoly, GraphPolyError> {
    let trees = g.spanning_trees()?;
    let m = g.edge_count();
    let terms = trees.into_iter().map(|t| {
        let inside: BTreeSet<usize> = t.into_iter().collect();
        let mut exps = vec![0u16; m];
        for e in 1..=m {
            if !inside.contains(&e) {
                exps[e - 1] = 1;
            }
        }
        (exps, BigInt::one())
    });
    Ok(SparsePoly::from_terms(m, terms))
}

/// Index data for a Dodgson polynomial: row word `i`, column word `j`,
/// and the set `k` of variables to zero out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DodgsonSpec {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub k: BTreeSet<usize>,
}

impl DodgsonSpec {
    pub fn new(
        i: Vec<usize>,
        j: Vec<usize>,
        k: impl IntoIterator<Item = usize>,
    ) -> Self {
        DodgsonSpec {
            i,
            j,
            k: k.into_iter().collect(),
        }
    }

    pub fn pair(i: Vec<usize>, j: Vec<usize>) -> Self {
        Self::new(i, j, [])
    }
}

/// Dodgson polynomial
///   Psi^{I,J}_K = (-1)^(|V| + iota_I + iota_J - 1) sgn(I) sgn(J)
///                 det L(I,J)_K,
/// where iota_W is the sum of the letters of W. Zero when |I| != |J| or a
/// word repeats a letter; the empty minor has determinant 1.
pub fn dodgson(g: &Multigraph, spec: &DodgsonSpec) -> Result<SparsePoly, GraphPolyError> {
    let m = g.edge_count();
    for &e in spec.i.iter().chain(&spec.j).chain(&spec.k) {
        if e == 0 || e > m {
            return Err(GraphPolyError::EdgeOutOfRange(e));
        }
    }
    if spec.i.len() != spec.j.len() {
        return Ok(SparsePoly::zero(m));
    }
    let si = word_sign(&spec.i);
    let sj = word_sign(&spec.j);
    if si == 0 || sj == 0 {
        return Ok(SparsePoly::zero(m));
    }
    let lap = ExpandedLaplacian::new(g);
    let det = lap.minor_det(&spec.i, &spec.j, &spec.k);
    let iota: usize = spec.i.iter().chain(&spec.j).sum();
    let mut flips = (g.vertex_count() + iota + 1) % 2;
    if si * sj < 0 {
        flips += 1;
    }
    Ok(if flips % 2 == 1 { det.neg() } else { det })
}

/// Spanning forests of `g` avoiding `banned`, with exactly one tree per
/// part, each tree containing its whole part and no vertex of another.
fn compatible_forests(
    g: &Multigraph,
    banned: &BTreeSet<usize>,
    parts: &[BTreeSet<usize>],
) -> Result<Vec<Vec<usize>>, GraphPolyError> {
    let m = g.edge_count();
    if m > MAX_ENUM_EDGES {
        return Err(GraphError::TooManyEdges(m).into());
    }
    let nv = g.vertex_count();
    let k = parts.len();
    if nv < k {
        return Ok(Vec::new());
    }
    let allowed: Vec<usize> = (1..=m).filter(|e| !banned.contains(e)).collect();
    let roots: Vec<Vec<usize>> = parts
        .iter()
        .map(|p| p.iter().copied().collect())
        .collect();
    let mut out = Vec::new();
    for combo in allowed.into_iter().combinations(nv - k) {
        let mut uf = UnionFind::new(nv);
        let mut ok = true;
        for &e in &combo {
            let (t, h) = g.endpoints(e)?;
            if t == h || !uf.union(t, h) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let reps: Vec<usize> = roots.iter().map(|p| uf.find(p[0])).collect();
        let distinct = reps.iter().collect::<BTreeSet<_>>().len() == k;
        let grouped = roots
            .iter()
            .zip(&reps)
            .all(|(p, &r)| p.iter().all(|&v| uf.find(v) == r));
        if distinct && grouped {
            out.push(combo);
        }
    }
    Ok(out)
}

/// Spanning forest polynomial Phi_G^P: sum over compatible spanning
/// forests of the product of variables off the forest. All coefficients
/// are +1.
pub fn spanning_forest_poly(
    g: &Multigraph,
    partition: &VertexPartition,
) -> Result<SparsePoly, GraphPolyError> {
    forest_poly_avoiding(g, &BTreeSet::new(), partition)
}

/// Phi of the edge-deleted graph G minus `banned`, written in G's own
/// variables (the banned variables simply never occur). This is the form
/// the Dodgson expansion sums over.
pub fn forest_poly_avoiding(
    g: &Multigraph,
    banned: &BTreeSet<usize>,
    partition: &VertexPartition,
) -> Result<SparsePoly, GraphPolyError> {
    partition.validate(g)?;
    let m = g.edge_count();
    for &e in banned {
        if e == 0 || e > m {
            return Err(GraphPolyError::EdgeOutOfRange(e));
        }
    }
    let forests = compatible_forests(g, banned, partition.parts())?;
    let terms = forests.into_iter().map(|f| {
        let inside: BTreeSet<usize> = f.into_iter().collect();
        let mut exps = vec![0u16; m];
        for e in 1..=m {
            if !inside.contains(&e) && !banned.contains(&e) {
                exps[e - 1] = 1;
            }
        }
        (exps, BigInt::one())
    });
    Ok(SparsePoly::from_terms(m, terms))
}

/// All set partitions of `items` into exactly `nparts` nonempty blocks,
/// in restricted-growth order.
fn set_partitions(items: &[usize], nparts: usize) -> Vec<Vec<BTreeSet<usize>>> {
    fn rec(
        items: &[usize],
        idx: usize,
        nparts: usize,
        parts: &mut Vec<BTreeSet<usize>>,
        out: &mut Vec<Vec<BTreeSet<usize>>>,
    ) {
        if parts.len() + (items.len() - idx) < nparts {
            return;
        }
        if idx == items.len() {
            if parts.len() == nparts {
                out.push(parts.clone());
            }
            return;
        }
        let v = items[idx];
        for pi in 0..parts.len() {
            parts[pi].insert(v);
            rec(items, idx + 1, nparts, parts, out);
            parts[pi].remove(&v);
        }
        if parts.len() < nparts {
            parts.push(BTreeSet::from([v]));
            rec(items, idx + 1, nparts, parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, 0, nparts, &mut Vec::new(), &mut out);
    out
}

fn union_is_spanning_tree(g: &Multigraph, forest: &[usize], word: &[usize]) -> bool {
    let nv = g.vertex_count();
    if forest.len() + word.len() != nv - 1 {
        return false;
    }
    let mut uf = UnionFind::new(nv);
    for &e in forest.iter().chain(word) {
        let (t, h) = g.endpoints(e).expect("validated edge");
        if t == h || !uf.union(t, h) {
            return false;
        }
    }
    true
}

/// Sign correction for reading a Dodgson term off the minor L(I,J): the
/// alpha diagonal is offset inside the minor, so extracting the Leibniz
/// fixed points of a monomial S costs (-1) for every pair (s, letter)
/// with the letter below s.
fn offset_sign(monomial_support: &[usize], i_word: &[usize], j_word: &[usize]) -> i64 {
    let crossings: usize = monomial_support
        .iter()
        .map(|&s| {
            i_word.iter().filter(|&&x| x < s).count()
                + j_word.iter().filter(|&&x| x < s).count()
        })
        .sum();
    if crossings % 2 == 0 {
        1
    } else {
        -1
    }
}

/// det of the incidence columns `forest + word` (ascending edge order),
/// rows all vertices but the last.
fn incidence_minor_det(g: &Multigraph, forest: &[usize], word: &[usize]) -> i64 {
    let nv = g.vertex_count();
    let cols: Vec<usize> = forest
        .iter()
        .chain(word)
        .copied()
        .sorted()
        .collect();
    let a: Vec<Vec<i64>> = (0..nv - 1)
        .map(|v| {
            cols.iter()
                .map(|&e| {
                    let (t, h) = g.endpoints(e).expect("validated edge");
                    if t == v && h == v {
                        0
                    } else if t == v {
                        1
                    } else if h == v {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    int_det(a)
}

/// Expansion of Psi^{I,J} (disjoint words, no zeroed variables) as a
/// signed sum of spanning forest polynomials of G minus (I u J):
///   Psi^{I,J} = sum_P f_P Phi^P,  f_P in {-1, +1}.
///
/// The partitions run over the endpoints of I u J, and a partition takes
/// part exactly when every compatible forest completes to a spanning tree
/// under both words. Each sign comes from a product of incidence minors
/// and the diagonal-offset sign for one representative forest; the
/// overall sign is anchored so the sum reconstructs `dodgson` exactly.
/// The list is empty when the Dodgson polynomial is zero.
pub fn dodgson_forest_expansion(
    g: &Multigraph,
    i_word: &[usize],
    j_word: &[usize],
) -> Result<Vec<(i8, VertexPartition)>, GraphPolyError> {
    let m = g.edge_count();
    for &e in i_word.iter().chain(j_word) {
        if e == 0 || e > m {
            return Err(GraphPolyError::EdgeOutOfRange(e));
        }
    }
    if let Some(&e) = i_word.iter().find(|e| j_word.contains(e)) {
        return Err(GraphPolyError::OverlappingWords(e));
    }
    let target = dodgson(g, &DodgsonSpec::pair(i_word.to_vec(), j_word.to_vec()))?;
    let mut expansion: Vec<(i8, VertexPartition)> = Vec::new();
    if i_word.len() == j_word.len() && word_sign(i_word) != 0 && word_sign(j_word) != 0 {
        let banned: BTreeSet<usize> = i_word.iter().chain(j_word).copied().collect();
        let mut marked = BTreeSet::new();
        for &e in &banned {
            let (t, h) = g.endpoints(e)?;
            marked.insert(t);
            marked.insert(h);
        }
        let marked: Vec<usize> = marked.into_iter().collect();
        // A compatible forest can only complete to a spanning tree under
        // a word of length w when it has exactly w+1 trees, so only
        // partitions with |I|+1 parts can qualify.
        for parts in set_partitions(&marked, i_word.len() + 1) {
            let forests = compatible_forests(g, &banned, &parts)?;
            if forests.is_empty() {
                continue;
            }
            let qualifies = forests.iter().all(|f| {
                union_is_spanning_tree(g, f, i_word) && union_is_spanning_tree(g, f, j_word)
            });
            if !qualifies {
                continue;
            }
            let rep = &forests[0];
            let support: Vec<usize> = (1..=m)
                .filter(|e| !rep.contains(e) && !banned.contains(e))
                .collect();
            let product = incidence_minor_det(g, rep, i_word)
                * incidence_minor_det(g, rep, j_word)
                * offset_sign(&support, i_word, j_word);
            debug_assert!(product == 1 || product == -1);
            let sign = if product >= 0 { 1i8 } else { -1i8 };
            expansion.push((sign, VertexPartition::new(parts)?));
        }
        let mut reconstructed = SparsePoly::zero(m);
        for (sign, p) in &expansion {
            let phi = forest_poly_avoiding(g, &banned, p)?;
            let signed = if *sign < 0 { phi.neg() } else { phi };
            reconstructed = reconstructed.add(&signed);
        }
        if reconstructed == target.neg() && !target.is_zero() {
            for entry in &mut expansion {
                entry.0 = -entry.0;
            }
        } else if reconstructed != target {
            return Err(GraphPolyError::Internal(
                "forest expansion does not reconstruct the Dodgson polynomial".into(),
            ));
        }
    } else if !target.is_zero() {
        return Err(GraphPolyError::Internal(
            "degenerate words with a nonzero Dodgson polynomial".into(),
        ));
    }
    Ok(expansion)
}

/// 5-invariant of five distinct edges, sign-normalised:
///   det [[Psi^{12,34}_5, Psi^{13,24}_5], [Psi^{125,345}, Psi^{135,245}]]
/// with the given edges in the five slots. Any edge permutation changes
/// this by at most a sign.
pub fn five_invariant(g: &Multigraph, edges: &[usize]) -> Result<SparsePoly, GraphPolyError> {
    let m = g.edge_count();
    if edges.len() != 5 || edges.iter().collect::<BTreeSet<_>>().len() != 5 {
        return Err(GraphPolyError::FiveDistinct);
    }
    for &e in edges {
        if e == 0 || e > m {
            return Err(GraphPolyError::EdgeOutOfRange(e));
        }
    }
    let [e1, e2, e3, e4, e5] = [edges[0], edges[1], edges[2], edges[3], edges[4]];
    let a = dodgson(g, &DodgsonSpec::new(vec![e1, e2], vec![e3, e4], [e5]))?;
    let b = dodgson(g, &DodgsonSpec::pair(vec![e1, e3, e5], vec![e2, e4, e5]))?;
    let c = dodgson(g, &DodgsonSpec::new(vec![e1, e3], vec![e2, e4], [e5]))?;
    let d = dodgson(g, &DodgsonSpec::pair(vec![e1, e2, e5], vec![e3, e4, e5]))?;
    let (normalised, _) = a.mul(&b).sub(&c.mul(&d)).normalize_sign();
    Ok(normalised)
}

/// Coefficient of zeta(2l-3) in the zigzag period P(Z_l), together with
/// the weight 2l-3:
///   4 binom(2l-2, l-1)/l * (1 - (1 - (-1)^l) / 2^(2l-3)).
pub fn zigzag_period_coefficient(ell: u64) -> Result<(BigRational, u64), GraphPolyError> {
    if ell < 3 {
        return Err(GraphPolyError::ZigzagOrder(ell));
    }
    let weight = 2 * ell - 3;
    let factorial = |n: u64| -> BigInt {
        let mut acc = BigInt::one();
        for i in 2..=n {
            acc *= i;
        }
        acc
    };
    let base = BigRational::new(
        BigInt::from(4) * factorial(2 * ell - 2),
        factorial(ell) * factorial(ell - 1),
    );
    let parity_term = if ell % 2 == 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::from(2), BigInt::from(2).pow(weight as u32))
    };
    Ok((base * (BigRational::one() - parity_term), weight))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::k4;

    fn poly(nvars: usize, terms: &[(&[u16], i64)]) -> SparsePoly {
        SparsePoly::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), BigInt::from(*c))),
        )
    }

    #[test]
    fn word_signs() {
        assert_eq!(word_sign(&[]), 1);
        assert_eq!(word_sign(&[7]), 1);
        assert_eq!(word_sign(&[3, 1]), -1);
        assert_eq!(word_sign(&[1, 3]), 1);
        assert_eq!(word_sign(&[2, 2]), 0);
        assert_eq!(word_sign(&[3, 1, 2]), 1);
    }

    #[test]
    fn kirchhoff_of_doubled_edge_and_triangle() {
        let banana = Multigraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert_eq!(
            kirchhoff(&banana).unwrap(),
            poly(2, &[(&[1, 0], 1), (&[0, 1], 1)])
        );
        let triangle = Multigraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(
            kirchhoff(&triangle).unwrap(),
            poly(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)])
        );
    }

    #[test]
    fn kirchhoff_matches_laplacian_determinant() {
        for g in [
            k4(),
            Multigraph::new(2, vec![(0, 1), (0, 1)]).unwrap(),
            Multigraph::new(3, vec![(0, 1), (1, 2), (0, 2), (0, 2)]).unwrap(),
        ] {
            let det = ExpandedLaplacian::new(&g).determinant();
            let signed = if (g.vertex_count() - 1) % 2 == 1 {
                det.neg()
            } else {
                det
            };
            assert_eq!(kirchhoff(&g).unwrap(), signed);
        }
    }

    #[test]
    fn laplacian_shape() {
        let lap = ExpandedLaplacian::new(&k4());
        assert_eq!(lap.size(), 9);
        assert_eq!(lap.removed_vertex(), 3);
        assert_eq!(lap.entry(0, 0), &SparsePoly::var(6, 1));
        assert!(lap.entry(7, 8).is_zero());
    }

    #[test]
    fn dodgson_empty_words_is_kirchhoff() {
        let g = k4();
        let spec = DodgsonSpec::pair(vec![], vec![]);
        assert_eq!(dodgson(&g, &spec).unwrap(), kirchhoff(&g).unwrap());
    }

    #[test]
    fn dodgson_k4_values() {
        let g = k4();
        // Psi^{12,13} is the Kirchhoff polynomial of the triangle 4,5,6
        // up to the orientation-dependent overall sign.
        let p = dodgson(&g, &DodgsonSpec::pair(vec![1, 2], vec![1, 3])).unwrap();
        assert_eq!(
            p.normalize_sign().0,
            poly(6, &[(&[0, 0, 0, 1, 0, 0], 1), (&[0, 0, 0, 0, 1, 0], 1), (&[0, 0, 0, 0, 0, 1], 1)])
        );
        // Psi^{2,3}_1 is the single common spanning tree {5}.
        let q = dodgson(&g, &DodgsonSpec::new(vec![2], vec![3], [1])).unwrap();
        assert_eq!(q.normalize_sign().0, poly(6, &[(&[0, 0, 0, 1, 0, 1], 1)]));
        // Unequal word lengths give the zero polynomial.
        let z = dodgson(&g, &DodgsonSpec::pair(vec![1], vec![1, 2])).unwrap();
        assert!(z.is_zero());
        // A repeated letter kills the word sign.
        let r = dodgson(&g, &DodgsonSpec::pair(vec![1, 1], vec![2, 3])).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn dodgson_is_independent_of_removed_vertex() {
        let g = k4();
        let spec = DodgsonSpec::new(vec![1, 4], vec![2, 5], [3]);
        let reference = dodgson(&g, &spec).unwrap();
        for v in 0..4 {
            let lap = ExpandedLaplacian::with_removed_vertex(&g, v).unwrap();
            let det = lap.minor_det(&spec.i, &spec.j, &spec.k);
            let iota = 1 + 4 + 2 + 5;
            let flips = (4 + iota + 1) % 2;
            let value = if flips == 1 { det.neg() } else { det };
            assert_eq!(value, reference, "removed vertex {v}");
        }
    }

    #[test]
    fn dodgson_degree_formula() {
        let g = k4();
        let p = dodgson(&g, &DodgsonSpec::pair(vec![1, 2], vec![1, 3])).unwrap();
        assert_eq!(p.degree(), Some(1));
        let q = dodgson(&g, &DodgsonSpec::new(vec![2], vec![3], [1])).unwrap();
        assert_eq!(q.degree(), Some(2));
    }

    #[test]
    fn forest_poly_triangle() {
        let triangle = Multigraph::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        let p = VertexPartition::new(vec![
            BTreeSet::from([0]),
            BTreeSet::from([1]),
        ])
        .unwrap();
        // Forests separating 0 from 1: {2} (vertex 2 with 0) and {3}
        // (vertex 2 with 1); complements a1*a3 and a1*a2.
        assert_eq!(
            spanning_forest_poly(&triangle, &p).unwrap(),
            poly(3, &[(&[1, 0, 1], 1), (&[1, 1, 0], 1)])
        );
    }

    #[test]
    fn forest_poly_coefficients_are_plus_one() {
        let g = k4();
        let p = VertexPartition::new(vec![
            BTreeSet::from([0, 2]),
            BTreeSet::from([1]),
        ])
        .unwrap();
        let phi = spanning_forest_poly(&g, &p).unwrap();
        assert!(!phi.is_zero());
        assert!(phi.terms().all(|(_, c)| c == &BigInt::one()));
    }

    #[test]
    fn forest_expansion_reconstructs_k4_pair() {
        let g = k4();
        let expansion = dodgson_forest_expansion(&g, &[1], &[2]).unwrap();
        assert!(!expansion.is_empty());
        let banned = BTreeSet::from([1, 2]);
        let mut sum = SparsePoly::zero(6);
        for (sign, p) in &expansion {
            let phi = forest_poly_avoiding(&g, &banned, p).unwrap();
            sum = sum.add(&if *sign < 0 { phi.neg() } else { phi });
        }
        let direct = dodgson(&g, &DodgsonSpec::pair(vec![1], vec![2])).unwrap();
        assert_eq!(sum, direct);
    }

    #[test]
    fn forest_expansion_rejects_overlap() {
        let g = k4();
        assert_eq!(
            dodgson_forest_expansion(&g, &[1, 2], &[2, 3]),
            Err(GraphPolyError::OverlappingWords(2))
        );
    }

    #[test]
    fn five_invariant_on_k4() {
        let g = k4();
        let base = five_invariant(&g, &[1, 2, 3, 4, 5]).unwrap();
        // Permuting the edges changes the 5-invariant by at most a sign,
        // and both orders normalise to the same polynomial.
        let permuted = five_invariant(&g, &[2, 1, 3, 5, 4]).unwrap();
        assert_eq!(base, permuted);
        // K4 has 6 edges and loop order 3: degree must be l - 2 + l - 3.
        assert!(!base.is_zero());
    }

    #[test]
    fn five_invariant_validation() {
        let g = k4();
        assert_eq!(
            five_invariant(&g, &[1, 2, 3, 4]),
            Err(GraphPolyError::FiveDistinct)
        );
        assert_eq!(
            five_invariant(&g, &[1, 2, 3, 4, 4]),
            Err(GraphPolyError::FiveDistinct)
        );
        assert_eq!(
            five_invariant(&g, &[1, 2, 3, 4, 7]),
            Err(GraphPolyError::EdgeOutOfRange(7))
        );
    }

    #[test]
    fn zigzag_coefficients() {
        let (c3, w3) = zigzag_period_coefficient(3).unwrap();
        assert_eq!((c3, w3), (BigRational::from(BigInt::from(6)), 3));
        let (c4, w4) = zigzag_period_coefficient(4).unwrap();
        assert_eq!((c4, w4), (BigRational::from(BigInt::from(20)), 5));
        let (c5, w5) = zigzag_period_coefficient(5).unwrap();
        assert_eq!(
            (c5, w5),
            (
                BigRational::new(BigInt::from(441), BigInt::from(8)),
                7
            )
        );
        assert_eq!(
            zigzag_period_coefficient(2),
            Err(GraphPolyError::ZigzagOrder(2))
        );
    }
}
