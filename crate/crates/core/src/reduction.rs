//! Denominator reduction along an edge order, in the standard linear
//! flavour and the quadratic flavour that tracks squared denominators.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graphpoly::{dodgson, five_invariant, DodgsonSpec, GraphPolyError};
use crate::graphs::{GraphError, Multigraph};
use crate::poly::SparsePoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] GraphPolyError),
    #[error("edge order needs at least 3 edges, got {0}")]
    OrderTooShort(usize),
    #[error("edge {0} repeats in the reduction order")]
    DuplicateEdge(usize),
    #[error("edge {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("graph needs at least 3 edges, got {0}")]
    TooFewEdges(usize),
}

/// What happened after the stage holding this status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageStatus {
    /// The next stage exists and follows in the trace.
    Continuing,
    /// This stage is zero or the next one would be: the reduction ends
    /// with weight drop.
    WeightDrop,
    /// The stage polynomial is not of a reducible shape; the deeper
    /// invariants do not exist along this order.
    NotFactorable,
    /// The edge order (or the edge supply) ran out.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    /// Number of edges integrated out; the polynomial only involves the
    /// variables of the remaining edges.
    pub n: usize,
    pub poly: SparsePoly,
    pub status: StageStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub edge_order: Vec<usize>,
    pub stages: Vec<Stage>,
    /// False for the linear reduction (stage n holds D^n), true for the
    /// quadratic one (stage n holds the quadratic n-invariant).
    pub quadratic: bool,
}

impl ReductionTrace {
    pub fn deepest(&self) -> &Stage {
        self.stages.last().expect("a trace always has stage 3")
    }

    pub fn stage(&self, n: usize) -> Option<&Stage> {
        self.stages.iter().find(|s| s.n == n)
    }

    /// Weight drop: some invariant along this order vanishes.
    pub fn has_weight_drop(&self) -> bool {
        self.stages
            .iter()
            .any(|s| s.status == StageStatus::WeightDrop || s.poly.is_zero())
    }
}

fn validate_order(g: &Multigraph, order: &[usize]) -> Result<(), ReductionError> {
    let m = g.edge_count();
    if m < 3 {
        return Err(ReductionError::TooFewEdges(m));
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    if order.len() < 3 {
        return Err(ReductionError::OrderTooShort(order.len()));
    }
    let mut seen = BTreeSet::new();
    for &e in order {
        if e == 0 || e > m {
            return Err(ReductionError::EdgeOutOfRange(e));
        }
        if !seen.insert(e) {
            return Err(ReductionError::DuplicateEdge(e));
        }
    }
    Ok(())
}

/// d/d(var) of a polynomial.
fn derivative_in(f: &SparsePoly, var: usize) -> SparsePoly {
    let m = f.nvars();
    let mut acc = SparsePoly::zero(m);
    for e in 1..=f.degree_in(var) {
        let part = f
            .coeff_in_var(var, e)
            .mul(&SparsePoly::var(m, var).pow(u32::from(e) - 1))
            .mul_scalar(i64::from(e));
        acc = acc.add(&part);
    }
    acc
}

/// Pseudo-remainder of a by b in the chosen variable: repeatedly scale by
/// b's leading coefficient and cancel the top term. Content is allowed to
/// accumulate; callers only use the result up to var-free factors.
fn pseudo_rem(a: &SparsePoly, b: &SparsePoly, var: usize) -> SparsePoly {
    let m = a.nvars();
    let db = b.degree_in(var);
    let lb = b.coeff_in_var(var, db);
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(var);
        if dr < db {
            break;
        }
        let lr = r.coeff_in_var(var, dr);
        let shift = SparsePoly::var(m, var).pow(u32::from(dr - db));
        r = r.mul(&lb).sub(&lr.mul(&shift).mul(b));
    }
    r
}

/// Last nonzero element of the pseudo-remainder sequence of (f, f') in
/// the chosen variable; a pseudo-gcd, correct up to var-free content.
fn pseudo_gcd_with_derivative(f: &SparsePoly, var: usize) -> SparsePoly {
    let mut a = f.clone();
    let mut b = derivative_in(f, var);
    while !b.is_zero() && b.degree_in(var) > 0 {
        let r = pseudo_rem(&a, &b, var);
        a = b;
        b = r;
    }
    if b.is_zero() {
        a
    } else {
        b
    }
}

enum StepOutcome {
    Next(SparsePoly),
    Zero,
    Stuck,
}

/// One linear reduction step: D must be (A v + B)(C v + D') up to
/// content, detected through a square discriminant; the next invariant is
/// the resultant of the factors.
fn linear_step(d: &SparsePoly, var: usize) -> StepOutcome {
    if d.degree_in(var) > 2 {
        return StepOutcome::Stuck;
    }
    let a = d.coeff_in_var(var, 2);
    let b = d.coeff_in_var(var, 1);
    let c = d.coeff_in_var(var, 0);
    let disc = b.mul(&b).sub(&a.mul(&c).mul_scalar(4));
    if disc.is_zero() {
        return StepOutcome::Zero;
    }
    match disc.poly_sqrt() {
        Some(s) => StepOutcome::Next(s.normalize_sign().0),
        None => StepOutcome::Stuck,
    }
}

/// One quadratic reduction step on S, the current squared invariant.
///
/// Shapes handled, with v the reduction variable:
///  - S = (A v^2 + B v + C)^2        -> B^2 - 4AC,
///  - S = (D v^2 + E v + F)(H v + J)^2 -> D J^2 - E H J + F H^2,
///    located through a degree-1 pseudo-gcd of (S, dS/dv) and certified
///    by exact divisions, or read directly when S is squarefree of
///    v-degree at most 2 (H = 0, J = 1).
/// Anything else ends the reduction conservatively.
fn quadratic_step(s: &SparsePoly, var: usize) -> StepOutcome {
    let deg = s.degree_in(var);
    if deg > 4 {
        return StepOutcome::Stuck;
    }
    if let Some(t) = s.poly_sqrt() {
        let a = t.coeff_in_var(var, 2);
        let b = t.coeff_in_var(var, 1);
        let c = t.coeff_in_var(var, 0);
        let next = b.mul(&b).sub(&a.mul(&c).mul_scalar(4));
        return if next.is_zero() {
            StepOutcome::Zero
        } else {
            StepOutcome::Next(next)
        };
    }
    let g = pseudo_gcd_with_derivative(s, var);
    match g.degree_in(var) {
        0 => {
            // Squarefree in v: only (quadratic) * (0 v + 1)^2 is possible.
            if deg == 2 {
                StepOutcome::Next(s.coeff_in_var(var, 2))
            } else if deg < 2 {
                StepOutcome::Zero
            } else {
                StepOutcome::Stuck
            }
        }
        1 => {
            let h = g.coeff_in_var(var, 1);
            let j = g.coeff_in_var(var, 0);
            let h2 = h.mul(&h);
            let Some(q) = s.mul(&h2).exact_div(&g.mul(&g)) else {
                return StepOutcome::Stuck;
            };
            if q.degree_in(var) > 2 {
                return StepOutcome::Stuck;
            }
            let d = q.coeff_in_var(var, 2);
            let e = q.coeff_in_var(var, 1);
            let f = q.coeff_in_var(var, 0);
            let numerator = d.mul(&j.mul(&j)).sub(&e.mul(&h).mul(&j)).add(&f.mul(&h2));
            let Some(next) = numerator.exact_div(&h2) else {
                return StepOutcome::Stuck;
            };
            if next.is_zero() {
                StepOutcome::Zero
            } else {
                StepOutcome::Next(next)
            }
        }
        _ => StepOutcome::Stuck,
    }
}

fn run_reduction(
    g: &Multigraph,
    order: &[usize],
    quadratic: bool,
) -> Result<ReductionTrace, ReductionError> {
    validate_order(g, order)?;
    let m = g.edge_count();
    let limit = order.len().min(m);
    let (e1, e2, e3) = (order[0], order[1], order[2]);
    let d3 = dodgson(g, &DodgsonSpec::pair(vec![e1, e3], vec![e2, e3]))?
        .mul(&dodgson(g, &DodgsonSpec::new(vec![e1], vec![e2], [e3]))?);
    let seed = if quadratic {
        d3.mul(&d3)
    } else {
        d3.normalize_sign().0
    };
    let mut stages = vec![Stage {
        n: 3,
        poly: seed,
        status: StageStatus::Continuing,
    }];
    loop {
        let last = stages.last_mut().expect("nonempty");
        if last.poly.is_zero() {
            last.status = StageStatus::WeightDrop;
            break;
        }
        let n = last.n;
        if n >= limit {
            last.status = StageStatus::Exhausted;
            break;
        }
        let next_var = order[n];
        let outcome = if quadratic {
            quadratic_step(&last.poly, next_var)
        } else if n == 3 {
            // Closed form for the fourth invariant.
            let p = dodgson(g, &DodgsonSpec::pair(vec![e1, e3], vec![e2, next_var]))?
                .mul(&dodgson(g, &DodgsonSpec::pair(vec![e1, next_var], vec![e2, e3]))?);
            if p.is_zero() {
                StepOutcome::Zero
            } else {
                StepOutcome::Next(p.normalize_sign().0)
            }
        } else if n == 4 {
            let p = five_invariant(g, &order[..5])?;
            if p.is_zero() {
                StepOutcome::Zero
            } else {
                StepOutcome::Next(p)
            }
        } else {
            linear_step(&last.poly, next_var)
        };
        match outcome {
            StepOutcome::Next(poly) => {
                last.status = StageStatus::Continuing;
                stages.push(Stage {
                    n: n + 1,
                    poly,
                    status: StageStatus::Continuing,
                });
            }
            StepOutcome::Zero => {
                last.status = StageStatus::WeightDrop;
                break;
            }
            StepOutcome::Stuck => {
                last.status = StageStatus::NotFactorable;
                break;
            }
        }
    }
    Ok(ReductionTrace {
        edge_order: order.to_vec(),
        stages,
        quadratic,
    })
}

/// Standard denominator reduction: stage n holds the n-invariant D^n
/// (sign-normalised), starting from
///   D^3 = Psi^{13,23} Psi^{1,2}_3
/// in the first three edges of the order, with the closed fourth and
/// fifth invariants and the resultant step beyond.
pub fn denominator_reduce(
    g: &Multigraph,
    order: &[usize],
) -> Result<ReductionTrace, ReductionError> {
    run_reduction(g, order, false)
}

/// Quadratic denominator reduction: stage n holds the quadratic
/// n-invariant, starting from (D^3)^2. Stage values here are canonical,
/// not sign-normalised: Legendre sums distinguish S from -S whenever
/// -1 is a non-residue, and flipping a sign can even turn a non-square
/// stage into a square, derailing the case analysis.
pub fn quadratic_reduce(
    g: &Multigraph,
    order: &[usize],
) -> Result<ReductionTrace, ReductionError> {
    run_reduction(g, order, true)
}

/// Whether the reduction along this order ends in weight drop.
pub fn has_weight_drop(g: &Multigraph, order: &[usize]) -> Result<bool, ReductionError> {
    Ok(denominator_reduce(g, order)?.has_weight_drop())
}
