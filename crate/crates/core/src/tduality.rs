//! T-duality: the cyclic shift on decorated permutations and the
//! matching fill algorithm on Le diagrams, sending a co-loopless
//! diagram of type (k,n) to a loopless diagram of type (k+1,n) with
//! the dimension relation dim(D) = dim(D-hat) - 2k + (n-1).
//!
//! The worked direction is pi-hat -> pi (left shift). Row a_n of the
//! dual diagram, where a_n = pi-hat(1), has no corresponding source
//! row; it is treated as a virtual all-0 row whose leftmost + sits at
//! the sentinel column n+1, which lets it share the type-I code path.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::positroid::{
    anti_excedances, cell_dimension, is_le, le_to_perm, BorderLabels, DecoratedPermutation,
    Decoration, LeDiagram, PositroidError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TdualityError {
    #[error(transparent)]
    Positroid(#[from] PositroidError),
    #[error("co-loop at {0}; T-duality needs a co-loopless source")]
    CoLoop(usize),
    #[error("loop at {0}; the reverse shift needs a loopless source")]
    Loop(usize),
    #[error("not a T-dual pair: {0}")]
    Inconsistent(String),
}

/// How a row of the dual diagram is filled: (I) no + in the source box
/// (label, a_n) or no such box, (II) a + there, (III) the row a_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowType {
    I,
    II,
    III,
}

/// Per-row bookkeeping for the fill.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowContext {
    /// Row label b_u in the dual diagram.
    pub label: usize,
    /// Column of the leftmost + in the corresponding source row; the
    /// sentinel n+1 for row a_n, whose virtual row is all 0's.
    pub leftmost: usize,
    /// Label of the next row below in the dual shape, or n+1.
    pub next_below: usize,
    pub row_type: RowType,
}

/// One L-shape of the dual diagram: a vertical part in column `col`
/// spanning rows top..=bottom with s + t + 1 +'s (topmost at `top`),
/// and a horizontal string of +'s in row `bottom` over columns
/// m..=col-1 (empty when m == col).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LShape {
    pub col: usize,
    pub top: usize,
    pub bottom: usize,
    pub m: usize,
    /// Non-last +'s in column `col` of the source diagram.
    pub s: usize,
    /// Last +'s of type-II rows in column `col` of the source diagram.
    pub t: usize,
}

/// Standalone string of +'s in `row` over the column labels
/// first..=last (labels grow leftward).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlusString {
    pub row: usize,
    pub first: usize,
    pub last: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Piece {
    L(LShape),
    String(PlusString),
}

/// Chain of pieces between two consecutive rows of the dual diagram,
/// named by its bottom row; right to left, glued at the bottom-most +
/// of the previous vertical part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub row: usize,
    pub pieces: Vec<Piece>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IterationStatus {
    /// All requested steps ran.
    Done,
    /// A co-loop row appeared after this many steps, so the map cannot
    /// be applied again.
    CoLoop { steps: usize, row: usize },
}

/// Left shift pi(i) = pi-hat(i+1), pi(n) = pi-hat(1), with the fixed
/// points of the image decorated co-loop (forced: the image of the
/// shift is loopless). Takes k anti-excedances to k+1.
pub fn tdual_perm(phat: &DecoratedPermutation) -> Result<DecoratedPermutation, TdualityError> {
    let n = phat.n();
    if let Some(i) = (1..=n).find(|&i| phat.is_coloop(i)) {
        return Err(TdualityError::CoLoop(i));
    }
    let images: Vec<usize> = (1..=n).map(|i| phat.image(i % n + 1)).collect();
    let decorations = (1..=n)
        .filter(|&i| images[i - 1] == i)
        .map(|i| (i, Decoration::CoLoop))
        .collect();
    let p = DecoratedPermutation::new(images, decorations).expect("shift of a permutation");
    assert_eq!(
        anti_excedances(&p).len(),
        anti_excedances(phat).len() + 1,
        "the shift must gain exactly one anti-excedance"
    );
    Ok(p)
}

/// Right shift, the inverse of `tdual_perm`: pi-hat(i) = pi(i-1),
/// pi-hat(1) = pi(n), fixed points decorated loop.
pub fn tdual_perm_inverse(p: &DecoratedPermutation) -> Result<DecoratedPermutation, TdualityError> {
    let n = p.n();
    if let Some(i) = (1..=n).find(|&i| p.is_loop(i)) {
        return Err(TdualityError::Loop(i));
    }
    let images: Vec<usize> = (1..=n)
        .map(|i| p.image(if i == 1 { n } else { i - 1 }))
        .collect();
    let decorations = (1..=n)
        .filter(|&i| images[i - 1] == i)
        .map(|i| (i, Decoration::Loop))
        .collect();
    let phat = DecoratedPermutation::new(images, decorations).expect("shift of a permutation");
    assert_eq!(
        anti_excedances(&phat).len() + 1,
        anti_excedances(p).len(),
        "the reverse shift must lose exactly one anti-excedance"
    );
    Ok(phat)
}

/// Label of the first all-0 (or width-0) row, if any; such a row is a
/// co-loop of the associated permutation.
pub fn coloop_row(d: &LeDiagram) -> Option<usize> {
    let border = d.border();
    (0..d.k()).find_map(|r| {
        let empty = (0..d.shape()[r]).all(|c| !d.entry(r, c));
        empty.then(|| border.rows()[r])
    })
}

/// Shape of the dual diagram with its row labels, top to bottom: the
/// source column a_n becomes a row, inserted so the labels stay
/// ordered, and the parts follow the piecewise formula around the
/// insertion index.
pub fn tdual_shape(dhat: &LeDiagram) -> Result<(Vec<usize>, Vec<usize>), TdualityError> {
    let (_, shape, rows) = dual_rows(dhat)?;
    Ok((shape, rows))
}

fn dual_rows(dhat: &LeDiagram) -> Result<(usize, Vec<usize>, Vec<usize>), TdualityError> {
    if let Some(b) = coloop_row(dhat) {
        return Err(TdualityError::CoLoop(b));
    }
    let n = dhat.n();
    let k = dhat.k();
    let a_n = le_to_perm(dhat).image(1);
    let b = dhat.border().rows().to_vec();
    let lam_hat = dhat.shape();
    // paper's insertion index is j + 1: everything before stays, loses
    // one box to the removed column; everything after keeps its width
    let j = b.iter().take_while(|&&x| x < a_n).count();
    let mut shape = Vec::with_capacity(k + 1);
    let mut rows = Vec::with_capacity(k + 1);
    for u in 0..j {
        shape.push(lam_hat[u] - 1);
        rows.push(b[u]);
    }
    shape.push(n - (k + 1) - (a_n - (j + 1)));
    rows.push(a_n);
    for u in j..k {
        shape.push(lam_hat[u]);
        rows.push(b[u]);
    }
    assert_eq!(shape[0], n - (k + 1), "first dual row must be full width");
    debug_assert_eq!(BorderLabels::walk(n, k + 1, &shape).rows(), &rows[..]);
    Ok((a_n, shape, rows))
}

/// Fill contexts for the rows of the dual diagram, top to bottom.
pub fn row_contexts(dhat: &LeDiagram) -> Result<Vec<RowContext>, TdualityError> {
    let (a_n, _, rows) = dual_rows(dhat)?;
    Ok(contexts_for(dhat, a_n, &rows))
}

fn contexts_for(dhat: &LeDiagram, a_n: usize, rows: &[usize]) -> Vec<RowContext> {
    let n = dhat.n();
    let ghat = Grid::new(dhat);
    rows.iter()
        .enumerate()
        .map(|(r, &label)| {
            let next_below = rows.get(r + 1).copied().unwrap_or(n + 1);
            let (leftmost, row_type) = if label == a_n {
                (n + 1, RowType::III)
            } else {
                let leftmost = ghat.leftmost_plus(label).expect("co-loopless row");
                let row_type = if ghat.get(label, a_n) == Some(true) {
                    RowType::II
                } else {
                    RowType::I
                };
                (leftmost, row_type)
            };
            RowContext {
                label,
                leftmost,
                next_below,
                row_type,
            }
        })
        .collect()
}

/// The Ch. 5 algorithm: fill the dual shape row by row, right to left.
/// Step 1 puts +'s from the diagonal to the next row below; Step 2
/// decides the middle stretch from the source diagram; Step 3 zeroes
/// everything from the source row's leftmost + on. Type-II rows copy
/// the source row beyond column a_n instead; the type-III row a_n runs
/// the type-I steps against its virtual all-0 source row.
///
/// The output is asserted to be a Le diagram, loopless, and of
/// dimension dim(source) - 2k + (n-1).
pub fn tdual_fill(dhat: &LeDiagram) -> Result<LeDiagram, TdualityError> {
    let (a_n, shape, rows) = dual_rows(dhat)?;
    let n = dhat.n();
    let k = dhat.k();
    let ctxs = contexts_for(dhat, a_n, &rows);
    let ghat = Grid::new(dhat);
    let hat_rows = dhat.border().rows().to_vec();
    let dual_border = BorderLabels::walk(n, k + 1, &shape);

    let mut fill = Vec::with_capacity(k + 1);
    for (r, ctx) in ctxs.iter().enumerate() {
        let row: Vec<bool> = (0..shape[r])
            .map(|c| {
                let l = dual_border.cols()[c];
                if ctx.row_type == RowType::II && l > a_n {
                    ghat.get(ctx.label, l) == Some(true)
                } else if l < ctx.next_below && l < ctx.leftmost {
                    true
                } else if l >= ctx.leftmost {
                    false
                } else {
                    step2(&ghat, &hat_rows, ctx.label, l)
                }
            })
            .collect();
        fill.push(row);
    }

    let d = LeDiagram::new(n, k + 1, shape, fill).expect("dual shape is valid");
    assert!(is_le(&d), "dual fill violates the Le-condition");
    let loopless = (0..n - (k + 1)).all(|c| (0..d.col_height(c)).any(|r| d.entry(r, c)));
    assert!(loopless, "dual fill left an all-0 column");
    assert_eq!(
        cell_dimension(&d) + 2 * k,
        cell_dimension(dhat) + n - 1,
        "dimension identity"
    );
    Ok(d)
}

/// Step 2 at box (b, l): a + goes in when the source row itself has a
/// + there (i), or some source row below does with only unrestricted
/// 0's in-between (ii), or every source row below l is unrestricted
/// there (iii). A 0 is restricted when its row has a + strictly to its
/// left, i.e. the row's leftmost + lies beyond l.
fn step2(ghat: &Grid, hat_rows: &[usize], b: usize, l: usize) -> bool {
    if ghat.get(b, l) == Some(true) {
        return true;
    }
    for &c in hat_rows.iter().filter(|&&c| c > b && c < l) {
        if ghat.get(c, l) == Some(true) {
            return true;
        }
        if ghat.leftmost_plus(c).expect("co-loopless row") > l {
            return false;
        }
    }
    true
}

/// Verifies that `d` decomposes into the predicted tiling for the
/// source `dhat`: per section, a chain of one L-shape per +-bearing
/// source column (other than a_n), glued at the bottom-most + of the
/// previous vertical part, with at most one trailing string of +'s
/// over the all-0 source columns. Every + of `d` is covered exactly
/// once; columns over all-0 source columns carry exactly one +.
pub fn lshape_decompose(dhat: &LeDiagram, d: &LeDiagram) -> Result<Vec<Section>, TdualityError> {
    let (a_n, shape, rows) = dual_rows(dhat)?;
    let n = dhat.n();
    let k = dhat.k();
    if d.n() != n || d.k() != k + 1 || d.shape() != shape {
        return Err(TdualityError::Inconsistent(
            "shape differs from the dual shape".into(),
        ));
    }

    let ghat = Grid::new(dhat);
    let g = Grid::new(d);
    let hat_rows = dhat.border().rows().to_vec();
    let mut dcols: Vec<usize> = g.cols.clone();
    dcols.sort_unstable();

    let col_plus = |l: usize| -> Vec<usize> {
        rows.iter()
            .copied()
            .filter(|&b| b < l && g.get(b, l) == Some(true))
            .collect()
    };
    let hat_plus_rows = |l: usize| -> Vec<usize> {
        hat_rows
            .iter()
            .copied()
            .filter(|&b| ghat.get(b, l) == Some(true))
            .collect()
    };

    let mut sections = Vec::new();
    let mut covered = 0usize;
    let mut st_total = 0usize;
    for (r, &b) in rows.iter().enumerate() {
        let next = rows.get(r + 1).copied().unwrap_or(n + 1);
        let mut pieces = Vec::new();
        let mut glue_row = b;
        let mut start = b + 1;
        for &l in dcols.iter().filter(|&&l| l > b && l < next) {
            let sources = hat_plus_rows(l);
            if sources.is_empty() {
                continue;
            }
            for c in start..l {
                single_plus_column(&g, &rows, c, glue_row)?;
            }
            covered += l - start;

            let plus_rows = col_plus(l);
            let s = sources
                .iter()
                .filter(|&&b2| ghat.leftmost_plus(b2).expect("co-loopless row") > l)
                .count();
            let t = sources
                .iter()
                .filter(|&&b2| {
                    ghat.leftmost_plus(b2).expect("co-loopless row") == l
                        && ghat.get(b2, a_n) == Some(true)
                })
                .count();
            if plus_rows.len() != s + t + 1 {
                return Err(TdualityError::Inconsistent(format!(
                    "column {l} holds {} +'s, want {}",
                    plus_rows.len(),
                    s + t + 1
                )));
            }
            let (&top, &last) = (
                plus_rows.first().expect("s + t + 1 >= 1"),
                plus_rows.last().expect("s + t + 1 >= 1"),
            );
            if top >= glue_row || last > glue_row {
                return Err(TdualityError::Inconsistent(format!(
                    "+'s of column {l} escape the L-shape rows {top}..{glue_row}"
                )));
            }
            covered += plus_rows.len();
            st_total += s + t;
            pieces.push(Piece::L(LShape {
                col: l,
                top,
                bottom: glue_row,
                m: start,
                s,
                t,
            }));
            glue_row = last;
            start = l + 1;
        }
        if start < next {
            for c in start..next {
                single_plus_column(&g, &rows, c, glue_row)?;
            }
            covered += next - start;
            pieces.push(Piece::String(PlusString {
                row: glue_row,
                first: start,
                last: next - 1,
            }));
        }
        sections.push(Section { row: b, pieces });
    }

    if covered != cell_dimension(d) {
        return Err(TdualityError::Inconsistent(format!(
            "tiling covers {covered} +'s of {}",
            cell_dimension(d)
        )));
    }
    if st_total + k != cell_dimension(dhat) {
        return Err(TdualityError::Inconsistent(format!(
            "sum of s + t is {st_total}, want dim - k = {}",
            cell_dimension(dhat) - k
        )));
    }
    Ok(sections)
}

fn single_plus_column(
    g: &Grid,
    rows: &[usize],
    col: usize,
    want: usize,
) -> Result<(), TdualityError> {
    let plus: Vec<usize> = rows
        .iter()
        .copied()
        .filter(|&b| b < col && g.get(b, col) == Some(true))
        .collect();
    if plus != [want] {
        return Err(TdualityError::Inconsistent(format!(
            "column {col} should hold a single + in row {want}, found {plus:?}"
        )));
    }
    Ok(())
}

/// Applies `tdual_fill` repeatedly, stopping early when a co-loop row
/// appears (the map needs a co-loopless source). Returns the produced
/// diagrams in order.
pub fn iterate_tduality(dhat: &LeDiagram, steps: usize) -> (Vec<LeDiagram>, IterationStatus) {
    let mut seq = Vec::new();
    let mut current = dhat.clone();
    for done in 0..steps {
        if let Some(row) = coloop_row(&current) {
            return (seq, IterationStatus::CoLoop { steps: done, row });
        }
        current = tdual_fill(&current).expect("co-looplessness checked");
        seq.push(current.clone());
    }
    (seq, IterationStatus::Done)
}

/// Label-indexed view of a diagram's boxes.
struct Grid<'a> {
    d: &'a LeDiagram,
    row_pos: BTreeMap<usize, usize>,
    col_pos: BTreeMap<usize, usize>,
    cols: Vec<usize>,
}

impl<'a> Grid<'a> {
    fn new(d: &'a LeDiagram) -> Self {
        let border = d.border();
        Grid {
            d,
            row_pos: border.rows().iter().enumerate().map(|(r, &b)| (b, r)).collect(),
            col_pos: border.cols().iter().enumerate().map(|(c, &j)| (j, c)).collect(),
            cols: border.cols().to_vec(),
        }
    }

    fn get(&self, i: usize, j: usize) -> Option<bool> {
        let &r = self.row_pos.get(&i)?;
        let &c = self.col_pos.get(&j)?;
        (c < self.d.shape()[r]).then(|| self.d.entry(r, c))
    }

    /// Largest column label with a + in row i (its drawing-leftmost +).
    fn leftmost_plus(&self, i: usize) -> Option<usize> {
        let &r = self.row_pos.get(&i)?;
        (0..self.d.shape()[r])
            .find(|&c| self.d.entry(r, c))
            .map(|c| self.cols[c])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> DecoratedPermutation {
        s.parse().unwrap()
    }

    fn diagram(s: &str) -> LeDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(tdual_perm(&perm("2,3,1")).unwrap(), perm("3,1,2"));
        assert_eq!(
            tdual_perm(&perm("1_,2_,3_,4_")).unwrap(),
            perm("2,3,4,1")
        );
        assert_eq!(
            tdual_perm(&perm("1^,2_")),
            Err(TdualityError::CoLoop(1))
        );

        assert_eq!(tdual_perm_inverse(&perm("3,1,2")).unwrap(), perm("2,3,1"));
        assert_eq!(
            tdual_perm_inverse(&perm("2,1,3_")),
            Err(TdualityError::Loop(3))
        );

        let p = perm("2,1,4,3");
        assert_eq!(tdual_perm_inverse(&tdual_perm(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn dual_shape_examples() {
        // type (1,3) all-+ row: a_n = 2 becomes the second row
        let (shape, rows) = tdual_shape(&diagram("3 1\n2\n++\n")).unwrap();
        assert_eq!(shape, vec![1, 1]);
        assert_eq!(rows, vec![1, 2]);

        // empty diagram: single full row labelled 1
        let (shape, rows) = tdual_shape(&diagram("4 0\n\n")).unwrap();
        assert_eq!(shape, vec![3]);
        assert_eq!(rows, vec![1]);

        // a_n = n: a width-0 row labelled n at the bottom
        let (shape, rows) = tdual_shape(&diagram("3 1\n2\n+0\n")).unwrap();
        assert_eq!(shape, vec![1, 0]);
        assert_eq!(rows, vec![1, 3]);

        assert_eq!(
            tdual_shape(&diagram("3 1\n2\n00\n")),
            Err(TdualityError::CoLoop(1))
        );
    }

    #[test]
    fn contexts_track_rows() {
        let ctxs = row_contexts(&diagram("3 1\n2\n++\n")).unwrap();
        assert_eq!(
            ctxs,
            vec![
                RowContext {
                    label: 1,
                    leftmost: 3,
                    next_below: 2,
                    row_type: RowType::II
                },
                RowContext {
                    label: 2,
                    leftmost: 4,
                    next_below: 4,
                    row_type: RowType::III
                },
            ]
        );
    }

    #[test]
    fn fill_small_examples() {
        // (1,3) all-+ -> both boxes of the (1,1) staircase, perm (3,1,2)
        let d = tdual_fill(&diagram("3 1\n2\n++\n")).unwrap();
        assert_eq!(d, diagram("3 2\n1,1\n+\n+\n"));
        assert_eq!(le_to_perm(&d), perm("3,1,2"));

        // empty source: one full row of +'s, the cyclic shift
        let d = tdual_fill(&diagram("5 0\n\n")).unwrap();
        assert_eq!(d, diagram("5 1\n4\n++++\n"));
        assert_eq!(le_to_perm(&d), perm("2,3,4,5,1"));

        // a_n = n: the dual has a co-loop row labelled n
        let d = tdual_fill(&diagram("3 1\n2\n+0\n")).unwrap();
        assert_eq!(d, diagram("3 2\n1,0\n+\n"));
        assert_eq!(le_to_perm(&d), perm("2,1,3^"));
        assert_eq!(coloop_row(&d), Some(3));
    }

    #[test]
    fn decompose_small_example() {
        let dhat = diagram("3 1\n2\n++\n");
        let d = tdual_fill(&dhat).unwrap();
        let sections = lshape_decompose(&dhat, &d).unwrap();
        assert_eq!(sections.len(), 2);
        assert_eq!(sections[0], Section { row: 1, pieces: vec![] });
        assert_eq!(
            sections[1],
            Section {
                row: 2,
                pieces: vec![Piece::L(LShape {
                    col: 3,
                    top: 1,
                    bottom: 2,
                    m: 3,
                    s: 0,
                    t: 1
                })],
            }
        );

        // a foreign diagram of the right shape is rejected
        let wrong = diagram("3 2\n1,1\n+\n0\n");
        assert!(matches!(
            lshape_decompose(&dhat, &wrong),
            Err(TdualityError::Inconsistent(_))
        ));
    }

    #[test]
    fn iteration_shifts_twice_and_stops() {
        let start = diagram("4 0\n\n");
        let (seq, status) = iterate_tduality(&start, 3);
        assert_eq!(status, IterationStatus::Done);
        assert_eq!(seq.len(), 3);
        assert_eq!(seq[0], tdual_fill(&start).unwrap());
        let twice = tdual_perm(&tdual_perm(&le_to_perm(&start)).unwrap()).unwrap();
        assert_eq!(le_to_perm(&seq[1]), twice);
        assert_eq!(le_to_perm(&seq[2]), perm("4,1,2,3"));

        // a_n = n produces a co-loop, stopping the iteration
        let (seq, status) = iterate_tduality(&diagram("3 1\n2\n+0\n"), 5);
        assert_eq!(seq.len(), 1);
        assert_eq!(status, IterationStatus::CoLoop { steps: 1, row: 3 });
    }
}
