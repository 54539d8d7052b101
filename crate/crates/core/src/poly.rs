//! Sparse multivariate polynomials over the integers, plus prime-field
//! point counting and Legendre sums.
//!
//! Variables are named by 1-based index (`a1`, `a2`, ...) so that a graph
//! polynomial's variable i is literally edge i. Terms are kept in a
//! `BTreeMap` keyed by graded-lex monomial order, which makes every
//! iteration (display, hashing, leading terms) canonical.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Enumeration budget for point counts: refuse when `N * log2(p)` exceeds
/// this many bits (the full ambient space would pass 2^26 points).
const ENUM_BUDGET_BITS: f64 = 26.0;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = 2 has no quadratic character; legendre_sum needs an odd prime")]
    EvenCharacteristic,
    #[error("ambient dimension {ambient} with p = {p} exceeds the enumeration budget")]
    Budget { p: u64, ambient: usize },
    #[error("polynomial involves variable a{var} beyond ambient dimension {ambient}")]
    AmbientTooSmall { var: usize, ambient: usize },
}

/// Exponent vector with graded-lex ordering (total degree first, then lex
/// with a1 > a2 > ...).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise quotient, `None` when not divisible.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len(), "monomial arity mismatch");
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer polynomial in `nvars` variables. Zero coefficients are never
/// stored; the zero polynomial has an empty term map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The variable `a<index>` (1-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index >= 1 && index <= nvars, "variable index out of range");
        let mut exps = vec![0u16; nvars];
        exps[index - 1] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial(exps), BigInt::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u16>, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector arity mismatch");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Greatest term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient_of(&self, exps: &[u16]) -> BigInt {
        assert_eq!(exps.len(), self.nvars, "exponent vector arity mismatch");
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn vars_present(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    out.insert(i + 1);
                }
            }
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = SparsePoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: impl Into<BigInt>) -> SparsePoly {
        let c = c.into();
        if c.is_zero() {
            return SparsePoly::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * &c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut out = SparsePoly::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Replace variable `index` (1-based) by `value`.
    pub fn substitute(&self, index: usize, value: &SparsePoly) -> SparsePoly {
        assert!(index >= 1 && index <= self.nvars, "variable index out of range");
        assert_eq!(self.nvars, value.nvars, "polynomial arity mismatch");
        let mut pow_cache: Vec<SparsePoly> = vec![SparsePoly::one(self.nvars)];
        let mut out = SparsePoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[index - 1] as usize;
            while pow_cache.len() <= e {
                let next = pow_cache.last().unwrap().mul(value);
                pow_cache.push(next);
            }
            let mut rest = m.clone();
            rest.0[index - 1] = 0;
            let base = SparsePoly {
                nvars: self.nvars,
                terms: BTreeMap::from([(rest, c.clone())]),
            };
            out = out.add(&base.mul(&pow_cache[e]));
        }
        out
    }

    /// Maximum exponent of variable `index` (1-based).
    pub fn degree_in(&self, index: usize) -> u16 {
        assert!(index >= 1 && index <= self.nvars);
        self.terms
            .keys()
            .map(|m| m.0[index - 1])
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of `a<index>^e` as a polynomial (same arity, with the
    /// variable's exponent cleared).
    pub fn coeff_in_var(&self, index: usize, e: u16) -> SparsePoly {
        assert!(index >= 1 && index <= self.nvars);
        let mut out = SparsePoly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[index - 1] == e {
                let mut rest = m.clone();
                rest.0[index - 1] = 0;
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Re-express in `new_nvars` variables, sending old variable i to
    /// `map[i-1]` (1-based). The map must be injective on present variables.
    pub fn embed(&self, new_nvars: usize, map: &[usize]) -> SparsePoly {
        assert_eq!(map.len(), self.nvars, "variable map arity mismatch");
        let mut out = SparsePoly::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; new_nvars];
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let target = map[i];
                    assert!(target >= 1 && target <= new_nvars, "variable map out of range");
                    assert_eq!(exps[target - 1], 0, "variable map not injective");
                    exps[target - 1] = e;
                }
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Flip the overall sign if the leading graded-lex coefficient is
    /// negative; returns the canonical polynomial and the sign applied.
    pub fn normalize_sign(&self) -> (SparsePoly, i8) {
        match self.leading() {
            Some((_, c)) if c.is_negative() => (self.neg(), -1),
            _ => (self.clone(), 1),
        }
    }

    /// Exact division; `None` when `other` does not divide `self` over Z.
    pub fn exact_div(&self, other: &SparsePoly) -> Option<SparsePoly> {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        assert!(!other.is_zero(), "division by zero polynomial");
        let (gm, gc) = other.leading().unwrap();
        let mut r = self.clone();
        let mut q = SparsePoly::zero(self.nvars);
        while let Some((rm, rc)) = r.leading() {
            let m = rm.div(gm)?;
            let (c, rem) = num_integer::Integer::div_rem(rc, gc);
            if !rem.is_zero() {
                return None;
            }
            let step = SparsePoly {
                nvars: self.nvars,
                terms: BTreeMap::from([(m, c)]),
            };
            r = r.sub(&step.mul(other));
            q = q.add(&step);
        }
        Some(q)
    }

    /// Polynomial square root with the positive-leading-coefficient
    /// normalization; `None` when `self` is not a perfect square.
    ///
    /// Recursive coefficient matching: pick the lowest present variable x,
    /// require even degree in x, take the square root of the top
    /// x-coefficient recursively, then peel the remaining x-coefficients
    /// top-down by exact division by twice that root.
    pub fn poly_sqrt(&self) -> Option<SparsePoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let vars = self.vars_present();
        let x = match vars.first() {
            None => {
                // Non-zero constant.
                let c = self.coefficient_of(&vec![0; self.nvars]);
                if c.is_negative() {
                    return None;
                }
                let s = c.sqrt();
                if &s * &s != c {
                    return None;
                }
                return Some(SparsePoly::constant(self.nvars, s));
            }
            Some(&x) => x,
        };
        let d2 = self.degree_in(x);
        if d2 % 2 != 0 {
            return None;
        }
        let d = d2 / 2;
        let top = self.coeff_in_var(x, d2);
        let s_top = top.poly_sqrt()?;
        let two_s_top = s_top.mul_scalar(2);
        let xd = {
            let mut exps = vec![0u16; self.nvars];
            exps[x - 1] = d;
            SparsePoly::from_terms(self.nvars, [(exps, BigInt::one())])
        };
        let mut s = s_top.mul(&xd);
        loop {
            let r = self.sub(&s.mul(&s));
            if r.is_zero() {
                let (canon, _) = s.normalize_sign();
                return Some(canon);
            }
            let e = r.degree_in(x);
            if e < d {
                return None;
            }
            let j = e - d;
            if j >= d {
                return None;
            }
            let c_e = r.coeff_in_var(x, e);
            let s_j = c_e.exact_div(&two_s_top)?;
            if s_j.degree_in(x) > 0 {
                return None;
            }
            let xj = {
                let mut exps = vec![0u16; self.nvars];
                exps[x - 1] = j;
                SparsePoly::from_terms(self.nvars, [(exps, BigInt::one())])
            };
            s = s.add(&s_j.mul(&xj));
        }
    }
}

impl fmt::Display for SparsePoly {
    /// Descending graded-lex, `c*a<i>^<e>` pieces: e.g. `a1^2*a3 - 2*a2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut pieces: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_unit() {
                pieces.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => pieces.push(format!("a{}", i + 1)),
                    _ => pieces.push(format!("a{}^{}", i + 1, e)),
                }
            }
            write!(f, "{}", pieces.join("*"))?;
        }
        Ok(())
    }
}

/// A prime field F_p, with p checked prime by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, PolyError> {
        if p < 2 {
            return Err(PolyError::NotPrime(p));
        }
        let mut d = 2u64;
        while d.saturating_mul(d) <= p {
            if p % d == 0 {
                return Err(PolyError::NotPrime(p));
            }
            d += 1;
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn reduce_bigint(&self, c: &BigInt) -> u64 {
        use num_traits::ToPrimitive;
        let m = c % BigInt::from(self.p);
        let m = if m.is_negative() { m + BigInt::from(self.p) } else { m };
        m.to_u64().unwrap()
    }

    /// Legendre symbol of a mod p (p odd): 0, 1 or -1.
    pub fn legendre(&self, a: u64) -> i64 {
        debug_assert!(self.p > 2);
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        // Euler's criterion by fast exponentiation.
        let mut base = a as u128;
        let mut exp = (self.p - 1) / 2;
        let m = self.p as u128;
        let mut acc: u128 = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        if acc == 1 {
            1
        } else {
            -1
        }
    }
}

/// Terms of `f` reduced mod p and restricted to its present variables,
/// ready for exhaustive evaluation.
struct Evaluator {
    p: u64,
    support: Vec<usize>,
    /// For each term: coefficient mod p and (position-in-support, exponent) pairs.
    terms: Vec<(u64, Vec<(usize, u16)>)>,
    /// pow_table[s][x] = x^{max exponent profile}? Precomputed per (support pos, value, exp).
    pow: Vec<Vec<Vec<u64>>>,
}

impl Evaluator {
    fn new(f: &SparsePoly, field: &PrimeField) -> Evaluator {
        let p = field.p();
        let support: Vec<usize> = f.vars_present().into_iter().collect();
        let pos_of: BTreeMap<usize, usize> =
            support.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut max_exp = vec![0u16; support.len()];
        let mut terms = Vec::new();
        for (m, c) in f.terms() {
            let cm = field.reduce_bigint(c);
            if cm == 0 {
                continue;
            }
            let mut prof = Vec::new();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let s = pos_of[&(i + 1)];
                    max_exp[s] = max_exp[s].max(e);
                    prof.push((s, e));
                }
            }
            terms.push((cm, prof));
        }
        let pow = support
            .iter()
            .enumerate()
            .map(|(s, _)| {
                (0..p)
                    .map(|x| {
                        let mut row = Vec::with_capacity(max_exp[s] as usize + 1);
                        let mut acc = 1u64;
                        row.push(acc);
                        for _ in 0..max_exp[s] {
                            acc = (acc as u128 * x as u128 % p as u128) as u64;
                            row.push(acc);
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        Evaluator { p, support, terms, pow }
    }

    fn support_len(&self) -> usize {
        self.support.len()
    }

    /// Iterate all points of F_p^support, calling `visit` with f(point).
    fn for_each_value(&self, mut visit: impl FnMut(u64)) {
        let s = self.support.len();
        let mut point = vec![0u64; s];
        loop {
            let mut total: u64 = 0;
            for (c, prof) in &self.terms {
                let mut t = *c;
                for &(pos, e) in prof {
                    t = (t as u128 * self.pow[pos][point[pos] as usize][e as usize] as u128
                        % self.p as u128) as u64;
                }
                total = (total + t) % self.p;
            }
            visit(total);
            // Odometer step.
            let mut i = 0;
            loop {
                if i == s {
                    return;
                }
                point[i] += 1;
                if point[i] < self.p {
                    break;
                }
                point[i] = 0;
                i += 1;
            }
        }
    }
}

fn check_budget(f: &SparsePoly, field: &PrimeField, ambient: usize) -> Result<(), PolyError> {
    if let Some(&v) = f.vars_present().last() {
        if v > ambient {
            return Err(PolyError::AmbientTooSmall { var: v, ambient });
        }
    }
    if ambient as f64 * (field.p() as f64).log2() > ENUM_BUDGET_BITS {
        return Err(PolyError::Budget { p: field.p(), ambient });
    }
    Ok(())
}

/// Number of zeros of `f` on F_p^ambient. The ambient dimension may exceed
/// the polynomial's support; absent coordinates multiply the count by p each.
pub fn point_count(f: &SparsePoly, field: &PrimeField, ambient: usize) -> Result<BigInt, PolyError> {
    check_budget(f, field, ambient)?;
    let ev = Evaluator::new(f, field);
    let mut zeros: u64 = 0;
    ev.for_each_value(|v| {
        if v == 0 {
            zeros += 1;
        }
    });
    let free = ambient - ev.support_len();
    Ok(BigInt::from(zeros) * BigInt::from(field.p()).pow(free as u32))
}

/// Sum of Legendre symbols (f(x)/p) over x in F_p^ambient; p must be odd.
pub fn legendre_sum(f: &SparsePoly, field: &PrimeField, ambient: usize) -> Result<BigInt, PolyError> {
    if field.p() == 2 {
        return Err(PolyError::EvenCharacteristic);
    }
    check_budget(f, field, ambient)?;
    let chi: Vec<i64> = (0..field.p()).map(|a| field.legendre(a)).collect();
    let ev = Evaluator::new(f, field);
    let mut total: i64 = 0;
    ev.for_each_value(|v| total += chi[v as usize]);
    let free = ambient - ev.support_len();
    Ok(BigInt::from(total) * BigInt::from(field.p()).pow(free as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize, i: usize) -> SparsePoly {
        SparsePoly::var(n, i)
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let n = 3;
        let p = a(n, 1)
            .mul(&a(n, 1))
            .mul(&a(n, 3))
            .add(&a(n, 2).mul_scalar(-2))
            .add(&SparsePoly::one(n));
        assert_eq!(p.to_string(), "a1^2*a3 - 2*a2 + 1");
    }

    #[test]
    fn coefficient_lookup() {
        let n = 2;
        let p = a(n, 1).mul(&a(n, 2)).mul_scalar(7).add(&a(n, 2));
        assert_eq!(p.coefficient_of(&[1, 1]), BigInt::from(7));
        assert_eq!(p.coefficient_of(&[0, 1]), BigInt::from(1));
        assert_eq!(p.coefficient_of(&[2, 0]), BigInt::from(0));
    }

    #[test]
    fn exact_division_roundtrip() {
        let n = 3;
        let f = a(n, 1).add(&a(n, 2));
        let g = a(n, 2).add(&a(n, 3)).mul_scalar(3);
        let prod = f.mul(&g);
        assert_eq!(prod.exact_div(&f).unwrap(), g);
        assert_eq!(prod.exact_div(&g).unwrap(), f);
        // Non-divisor: remainder appears.
        assert!(prod.add(&SparsePoly::one(n)).exact_div(&f).is_none());
    }

    #[test]
    fn sqrt_of_square_roundtrips() {
        let n = 3;
        let s = a(n, 1)
            .mul(&a(n, 2))
            .add(&a(n, 3).mul_scalar(-5))
            .add(&SparsePoly::constant(n, 2));
        let sq = s.mul(&s);
        let r = sq.poly_sqrt().unwrap();
        let (canon, _) = s.normalize_sign();
        assert_eq!(r, canon);
        assert!(sq.add(&SparsePoly::one(n)).poly_sqrt().is_none());
        assert!(a(n, 1).poly_sqrt().is_none());
    }

    #[test]
    fn sqrt_of_negative_leading_square() {
        let n = 2;
        let s = a(n, 1).mul_scalar(-3).add(&a(n, 2));
        let sq = s.mul(&s);
        let r = sq.poly_sqrt().unwrap();
        // Canonical root has positive leading coefficient.
        assert_eq!(r, s.neg());
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(97).is_ok());
        for bad in [0, 1, 4, 6, 9, 91] {
            assert!(PrimeField::new(bad).is_err());
        }
    }

    #[test]
    fn point_count_quadric() {
        // x^2 over F_3, one variable: only x = 0 vanishes.
        let f = a(1, 1).mul(&a(1, 1));
        let p3 = PrimeField::new(3).unwrap();
        assert_eq!(point_count(&f, &p3, 1).unwrap(), BigInt::from(1));
        // Ambient bigger than support: multiplies by p per free coordinate.
        assert_eq!(point_count(&f, &p3, 3).unwrap(), BigInt::from(9));
    }

    #[test]
    fn legendre_sum_examples() {
        // x^2 over F_3, N = 1: chi(0) + chi(1) + chi(1) = 2.
        let f = a(1, 1).mul(&a(1, 1));
        let p3 = PrimeField::new(3).unwrap();
        assert_eq!(legendre_sum(&f, &p3, 1).unwrap(), BigInt::from(2));
        let p2 = PrimeField::new(2).unwrap();
        assert!(matches!(
            legendre_sum(&f, &p2, 1),
            Err(PolyError::EvenCharacteristic)
        ));
    }

    #[test]
    fn budget_guard() {
        let f = a(1, 1);
        let p3 = PrimeField::new(3).unwrap();
        assert!(matches!(
            point_count(&f, &p3, 40),
            Err(PolyError::Budget { .. })
        ));
        assert!(matches!(
            point_count(&f, &p3, 0),
            Err(PolyError::AmbientTooSmall { .. })
        ));
    }

    #[test]
    fn substitute_and_embed() {
        let n = 2;
        // f = a1^2 + a2; a1 := a2 + 1 gives a2^2 + 3 a2 + 1.
        let f = a(n, 1).mul(&a(n, 1)).add(&a(n, 2));
        let v = a(n, 2).add(&SparsePoly::one(n));
        let g = f.substitute(1, &v);
        let expect = a(n, 2)
            .mul(&a(n, 2))
            .add(&a(n, 2).mul_scalar(3))
            .add(&SparsePoly::one(n));
        assert_eq!(g, expect);
        let h = f.embed(4, &[3, 1]);
        let expect2 = SparsePoly::var(4, 3)
            .pow(2)
            .add(&SparsePoly::var(4, 1));
        assert_eq!(h, expect2);
    }
}
