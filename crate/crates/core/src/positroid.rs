//! Decorated permutations, Le diagrams, and the pipe-dream bijection
//! between them.
//!
//! Boxes are addressed as (row label, column label), where the labels
//! 1..n come from reading the SE border of the shape (inside its
//! k x (n-k) bounding rectangle) as a lattice path from the top-right
//! corner: vertical steps label rows, horizontal steps label columns.
//! Column labels therefore grow LEFTWARD in the usual left-justified
//! drawing; the text format prints rows left to right, so the column
//! with the smallest label is the rightmost character of its line.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PositroidError {
    #[error("images are not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("fixed point {0} needs a loop or co-loop decoration")]
    UndecoratedFixedPoint(usize),
    #[error("{0} is decorated but is not a fixed point")]
    DecoratedNonFixedPoint(usize),
    #[error("type ({0},{1}) needs k <= n")]
    BadType(usize, usize),
    #[error("shape does not fit in a {0} x {1} rectangle")]
    ShapeTooLarge(usize, usize),
    #[error("shape is not weakly decreasing")]
    ShapeNotWeaklyDecreasing,
    #[error("filling does not match the shape")]
    FillShapeMismatch,
    #[error("expected {0} anti-excedances, found {1}")]
    AntiExcedances(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Colour of a fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decoration {
    Loop,
    CoLoop,
}

/// Permutation of [n] with every fixed point coloured as a loop
/// (`i_`) or a co-loop (`i^`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedPermutation {
    images: Vec<usize>,
    decorations: BTreeMap<usize, Decoration>,
}

impl DecoratedPermutation {
    pub fn new(
        images: Vec<usize>,
        decorations: BTreeMap<usize, Decoration>,
    ) -> Result<Self, PositroidError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            if j == 0 || j > n || seen[j - 1] {
                return Err(PositroidError::NotAPermutation(n));
            }
            seen[j - 1] = true;
        }
        for i in 1..=n {
            if images[i - 1] == i && !decorations.contains_key(&i) {
                return Err(PositroidError::UndecoratedFixedPoint(i));
            }
        }
        for &i in decorations.keys() {
            if i == 0 || i > n || images[i - 1] != i {
                return Err(PositroidError::DecoratedNonFixedPoint(i));
            }
        }
        Ok(Self { images, decorations })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// pi(i), 1-based.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// pi^{-1}(j), 1-based; the paper calls this the position of j.
    pub fn position(&self, j: usize) -> usize {
        self.images
            .iter()
            .position(|&x| x == j)
            .map(|p| p + 1)
            .expect("image of some element")
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn decoration(&self, i: usize) -> Option<Decoration> {
        self.decorations.get(&i).copied()
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.decoration(i) == Some(Decoration::Loop)
    }

    pub fn is_coloop(&self, i: usize) -> bool {
        self.decoration(i) == Some(Decoration::CoLoop)
    }
}

impl fmt::Display for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &j) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
            match self.decoration(i + 1) {
                Some(Decoration::Loop) => write!(f, "_")?,
                Some(Decoration::CoLoop) => write!(f, "^")?,
                None => {}
            }
        }
        Ok(())
    }
}

impl FromStr for DecoratedPermutation {
    type Err = PositroidError;

    fn from_str(s: &str) -> Result<Self, PositroidError> {
        let mut images = Vec::new();
        let mut decorations = BTreeMap::new();
        for (idx, token) in s.trim().split(',').enumerate() {
            let token = token.trim();
            let (digits, deco) = match (token.strip_suffix('_'), token.strip_suffix('^')) {
                (Some(d), _) => (d, Some(Decoration::Loop)),
                (_, Some(d)) => (d, Some(Decoration::CoLoop)),
                _ => (token, None),
            };
            let j: usize = digits
                .parse()
                .map_err(|_| PositroidError::Parse(format!("bad image {token:?}")))?;
            images.push(j);
            if let Some(deco) = deco {
                decorations.insert(idx + 1, deco);
            }
        }
        DecoratedPermutation::new(images, decorations)
    }
}

/// 0/+ filling of a Young shape of type (k,n). The shape keeps all k
/// parts, zero parts included; `fill[r][c]` is row r (top to bottom)
/// and drawing column c (left to right), true printing as `+`.
///
/// The Le-condition is NOT enforced on construction; `is_le` checks it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeDiagram {
    n: usize,
    k: usize,
    shape: Vec<usize>,
    fill: Vec<Vec<bool>>,
}

impl LeDiagram {
    pub fn new(
        n: usize,
        k: usize,
        shape: Vec<usize>,
        fill: Vec<Vec<bool>>,
    ) -> Result<Self, PositroidError> {
        if k > n {
            return Err(PositroidError::BadType(k, n));
        }
        if shape.len() > k || shape.iter().any(|&part| part > n - k) {
            return Err(PositroidError::ShapeTooLarge(k, n - k));
        }
        if shape.windows(2).any(|w| w[1] > w[0]) {
            return Err(PositroidError::ShapeNotWeaklyDecreasing);
        }
        if fill.len() != shape.len() || fill.iter().zip(&shape).any(|(row, &w)| row.len() != w) {
            return Err(PositroidError::FillShapeMismatch);
        }
        let mut shape = shape;
        let mut fill = fill;
        shape.resize(k, 0);
        fill.resize(k, Vec::new());
        Ok(Self { n, k, shape, fill })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// All k parts, zeros included.
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    /// Box in row r, drawing column c (both 0-based).
    pub fn entry(&self, r: usize, c: usize) -> bool {
        self.fill[r][c]
    }

    /// Number of boxes in drawing column c.
    pub fn col_height(&self, c: usize) -> usize {
        self.shape.iter().take_while(|&&part| part > c).count()
    }

    pub fn border(&self) -> BorderLabels {
        BorderLabels::walk(self.n, self.k, &self.shape)
    }

    /// Filling at paper coordinates (row label, column label), or None
    /// when there is no such box.
    pub fn box_at(&self, row: usize, col: usize) -> Option<bool> {
        let border = self.border();
        let r = border.rows.iter().position(|&x| x == row)?;
        let c = border.cols.iter().position(|&x| x == col)?;
        (c < self.shape[r]).then(|| self.fill[r][c])
    }
}

impl fmt::Display for LeDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.k)?;
        writeln!(f, "{}", self.shape.iter().join(","))?;
        for row in &self.fill {
            if row.is_empty() {
                continue;
            }
            let line: String = row.iter().map(|&b| if b { '+' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl FromStr for LeDiagram {
    type Err = PositroidError;

    fn from_str(s: &str) -> Result<Self, PositroidError> {
        let mut lines = s.lines();
        let header = lines
            .next()
            .ok_or_else(|| PositroidError::Parse("missing `n k` header".into()))?;
        let (n, k) = header
            .split_whitespace()
            .map(|w| w.parse::<usize>())
            .collect_tuple()
            .and_then(|(a, b)| Some((a.ok()?, b.ok()?)))
            .ok_or_else(|| PositroidError::Parse(format!("bad header {header:?}")))?;
        let shape_line = lines
            .next()
            .ok_or_else(|| PositroidError::Parse("missing shape line".into()))?;
        let shape: Vec<usize> = if shape_line.trim().is_empty() {
            Vec::new()
        } else {
            shape_line
                .trim()
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| PositroidError::Parse(format!("bad shape part {t:?}")))
                })
                .collect::<Result<_, _>>()?
        };
        let mut fill = Vec::new();
        for &part in &shape {
            if part == 0 {
                fill.push(Vec::new());
                continue;
            }
            let line = lines
                .next()
                .ok_or_else(|| PositroidError::Parse(format!("missing row of width {part}")))?;
            let row = line
                .trim()
                .chars()
                .map(|ch| match ch {
                    '+' => Ok(true),
                    '0' => Ok(false),
                    other => Err(PositroidError::Parse(format!("bad fill character {other:?}"))),
                })
                .collect::<Result<_, _>>()?;
            fill.push(row);
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(PositroidError::Parse("trailing content after the fill".into()));
        }
        LeDiagram::new(n, k, shape, fill)
    }
}

/// SE border path labels of a shape inside its k x (n-k) rectangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderLabels {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl BorderLabels {
    pub(crate) fn walk(n: usize, k: usize, shape: &[usize]) -> BorderLabels {
        let width = n - k;
        let mut rows = Vec::with_capacity(k);
        let mut cols = vec![0; width];
        let mut x = width;
        let mut next = 1;
        for &part in shape {
            while x > part {
                x -= 1;
                cols[x] = next;
                next += 1;
            }
            rows.push(next);
            next += 1;
        }
        while x > 0 {
            x -= 1;
            cols[x] = next;
            next += 1;
        }
        debug_assert_eq!(next, n + 1);
        BorderLabels { rows, cols }
    }

    /// Row labels, top to bottom (always increasing).
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Column labels, left to right in the drawing (always decreasing).
    pub fn cols(&self) -> &[usize] {
        &self.cols
    }
}

/// Le-condition: no 0 with a + above it in its column and a + to its
/// left in its row.
pub fn is_le(d: &LeDiagram) -> bool {
    for r in 0..d.k {
        for c in 0..d.shape[r] {
            if d.fill[r][c] {
                continue;
            }
            let above = (0..r).any(|r2| d.fill[r2][c]);
            let left = (0..c).any(|c2| d.fill[r][c2]);
            if above && left {
                return false;
            }
        }
    }
    true
}

/// Number of +'s, which is the dimension of the indexed positroid cell.
pub fn cell_dimension(d: &LeDiagram) -> usize {
    d.fill
        .iter()
        .map(|row| row.iter().filter(|&&b| b).count())
        .sum()
}

/// Anti-excedances of p: every i with position(i) > i plus every
/// co-loop.
pub fn anti_excedances(p: &DecoratedPermutation) -> BTreeSet<usize> {
    (1..=p.n())
        .filter(|&i| p.position(i) > i || p.is_coloop(i))
        .collect()
}

/// Reads the decorated permutation off the pipe dream of `d`: every 0
/// becomes a crossing, every + an elbow joint (enter from below, exit
/// left; enter from the right, exit up), and pipe i runs from SE
/// border edge i to NW border edge pi(i). All-0 rows come back as
/// co-loops, all-0 columns as loops.
///
/// Panics if two pipes cross twice or the anti-excedances disagree
/// with the row labels; both hold for every genuine Le filling.
pub fn le_to_perm(d: &LeDiagram) -> DecoratedPermutation {
    let border = d.border();
    let mut images = vec![0usize; d.n];
    let mut decorations = BTreeMap::new();
    let mut crossings: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();

    for i in 1..=d.n {
        let (end, from_row) = trace_pipe(d, &border, i, &mut crossings);
        images[i - 1] = end;
        if end == i {
            let deco = if from_row {
                Decoration::CoLoop
            } else {
                Decoration::Loop
            };
            decorations.insert(i, deco);
        }
    }

    let mut pairs = BTreeSet::new();
    for pipes in crossings.values() {
        debug_assert_eq!(pipes.len(), 2, "each 0 box carries two pipes");
        let pair = (pipes[0].min(pipes[1]), pipes[0].max(pipes[1]));
        assert!(
            pairs.insert(pair),
            "pipes {} and {} cross twice",
            pair.0,
            pair.1
        );
    }

    let p = DecoratedPermutation::new(images, decorations).expect("pipes end on distinct edges");
    assert!(
        anti_excedances(&p).iter().eq(border.rows().iter()),
        "anti-excedances disagree with the row labels"
    );
    p
}

/// Follows one pipe from SE edge `start` to the NW border, recording
/// every 0 box it runs straight through. Returns the NW label and
/// whether the pipe started on a row edge (settles loop vs co-loop).
fn trace_pipe(
    d: &LeDiagram,
    border: &BorderLabels,
    start: usize,
    crossings: &mut BTreeMap<(usize, usize), Vec<usize>>,
) -> (usize, bool) {
    // Heading is where the pipe came IN from: Left means it entered
    // through the right edge of the box, Up through the bottom edge.
    let (mut r, mut c, mut entered_from_right, from_row);
    if let Some(row) = border.rows.iter().position(|&x| x == start) {
        if d.shape[row] == 0 {
            return (start, true);
        }
        (r, c, entered_from_right, from_row) = (row, d.shape[row] - 1, true, true);
    } else {
        let col = border
            .cols
            .iter()
            .position(|&x| x == start)
            .expect("border label");
        let height = d.col_height(col);
        if height == 0 {
            return (start, false);
        }
        (r, c, entered_from_right, from_row) = (height - 1, col, false, false);
    }

    loop {
        let elbow = d.fill[r][c];
        if !elbow {
            crossings.entry((r, c)).or_default().push(start);
        }
        // Elbow: bottom -> left, right -> top. Cross: straight through.
        let exit_left = elbow != entered_from_right;
        if exit_left {
            if c == 0 {
                return (border.rows[r], from_row);
            }
            c -= 1;
            entered_from_right = true;
        } else {
            if r == 0 {
                return (border.cols[c], from_row);
            }
            r -= 1;
            entered_from_right = false;
        }
    }
}

/// Inverse of the pipe-dream map: the unique Le diagram of type (k,n)
/// whose pipes read off `p`. Found by exhaustive search over the Le
/// fillings of every admissible shape, memoized per (n,k); exponential
/// in k(n-k), intended as an independent oracle at small n.
pub fn perm_to_le(p: &DecoratedPermutation, k: usize) -> Result<LeDiagram, PositroidError> {
    let found = anti_excedances(p).len();
    if found != k {
        return Err(PositroidError::AntiExcedances(k, found));
    }
    Ok(le_table(p.n(), k)
        .get(p)
        .cloned()
        .expect("pipe-dream map is onto"))
}

type LeTable = BTreeMap<DecoratedPermutation, LeDiagram>;

fn le_table(n: usize, k: usize) -> Arc<LeTable> {
    static TABLES: OnceLock<Mutex<HashMap<(usize, usize), Arc<LeTable>>>> = OnceLock::new();
    let mut guard = TABLES
        .get_or_init(|| Mutex::new(HashMap::new()))
        .lock()
        .expect("le table lock");
    guard
        .entry((n, k))
        .or_insert_with(|| {
            Arc::new(
                le_diagrams(n, k)
                    .into_iter()
                    .map(|d| (le_to_perm(&d), d))
                    .collect(),
            )
        })
        .clone()
}

/// Every Le diagram of type (k,n).
pub fn le_diagrams(n: usize, k: usize) -> Vec<LeDiagram> {
    assert!(k <= n, "type ({k},{n}) needs k <= n");
    let mut out = Vec::new();
    for shape in shapes(k, n - k) {
        let nonzero = shape.iter().filter(|&&part| part > 0).count();
        for fill in le_fillings(&shape[..nonzero]) {
            let d = LeDiagram::new(n, k, shape[..nonzero].to_vec(), fill)
                .expect("enumerated shape is valid");
            out.push(d);
        }
    }
    out
}

/// Every decorated permutation of [n], all 2^(#fixed points) colourings.
pub fn decorated_permutations(n: usize) -> Vec<DecoratedPermutation> {
    let mut out = Vec::new();
    for perm in (1..=n).permutations(n) {
        let fixed: Vec<usize> = (1..=n).filter(|&i| perm[i - 1] == i).collect();
        for mask in 0u32..(1 << fixed.len()) {
            let decorations = fixed
                .iter()
                .enumerate()
                .map(|(b, &i)| {
                    let deco = if mask & (1 << b) != 0 {
                        Decoration::CoLoop
                    } else {
                        Decoration::Loop
                    };
                    (i, deco)
                })
                .collect();
            out.push(
                DecoratedPermutation::new(perm.clone(), decorations)
                    .expect("enumerated permutation is valid"),
            );
        }
    }
    out
}

/// Weakly decreasing shapes with exactly k parts (zeros included) and
/// parts at most `width`.
fn shapes(k: usize, width: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for part in (0..=max).rev() {
            cur.push(part);
            rec(k, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, width, &mut Vec::with_capacity(k), &mut out);
    out
}

/// All Le fillings of a shape (nonzero parts only), by backtracking in
/// row-major order: a 0 is legal unless it already has a + above and a
/// + to its left.
fn le_fillings(shape: &[usize]) -> Vec<Vec<Vec<bool>>> {
    fn rec(
        boxes: &[(usize, usize)],
        idx: usize,
        fill: &mut Vec<Vec<bool>>,
        out: &mut Vec<Vec<Vec<bool>>>,
    ) {
        let Some(&(r, c)) = boxes.get(idx) else {
            out.push(fill.clone());
            return;
        };
        let above = (0..r).any(|r2| fill[r2][c]);
        let left = (0..c).any(|c2| fill[r][c2]);
        if !(above && left) {
            fill[r][c] = false;
            rec(boxes, idx + 1, fill, out);
        }
        fill[r][c] = true;
        rec(boxes, idx + 1, fill, out);
        fill[r][c] = false;
    }

    let boxes: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &w)| (0..w).map(move |c| (r, c)))
        .collect();
    let mut fill: Vec<Vec<bool>> = shape.iter().map(|&w| vec![false; w]).collect();
    let mut out = Vec::new();
    rec(&boxes, 0, &mut fill, &mut out);
    out
}
