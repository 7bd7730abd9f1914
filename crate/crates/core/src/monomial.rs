//! Monomials and monomial ideals with canonical minimal generating sets.
//!
//! Variables are indexed from 0 internally; `x1` is index 0. Exponent
//! arithmetic is checked, so an overflow surfaces as an error rather than a
//! wrapped value.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("ambient mismatch: expected {expected} variables, found {found}")]
    MixedAmbient { expected: usize, found: usize },
    #[error("exponent overflow")]
    Overflow,
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A monomial `x1^a1 * ... * xk^ak`, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    /// The constant monomial 1 in `k` variables.
    pub fn one(k: usize) -> Self {
        Monomial { exponents: vec![0; k] }
    }

    /// The variable with 0-based index `i` in `k` variables.
    pub fn var(k: usize, i: usize) -> Self {
        let mut e = vec![0; k];
        e[i] = 1;
        Monomial { exponents: e }
    }

    /// Product of all `k` variables.
    pub fn squarefree_all(k: usize) -> Self {
        Monomial { exponents: vec![1; k] }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn variable_count(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }

    /// Bitmask of the variables with positive exponent, folded mod 64.
    pub fn support_mask(&self) -> u64 {
        self.exponents.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (i, _)| m | 1 << (i % 64))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, MonomialError> {
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a.checked_add(*b).ok_or(MonomialError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Monomial { exponents })
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        let exponents =
            self.exponents.iter().zip(&other.exponents).map(|(a, b)| a.checked_sub(*b)).collect::<Option<_>>()?;
        Some(Monomial { exponents })
    }

    fn ensure_ambient(&self, k: usize) -> Result<(), MonomialError> {
        if self.exponents.len() != k {
            return Err(MonomialError::MixedAmbient { expected: k, found: self.exponents.len() });
        }
        Ok(())
    }
}

impl Ord for Monomial {
    /// Graded order: degree first; within a degree, larger exponents on
    /// earlier variables come first (so `x1^2 < x1*x2 < x2^2`).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    /// Human form such as `x1^2*x3`, or `1` for the constant monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl Monomial {
    /// Space-separated exponent vector, the line format of monomial files.
    pub fn to_exponent_string(&self) -> String {
        self.exponents.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl FromStr for Monomial {
    type Err = MonomialError;

    /// Parses a space-separated exponent vector.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let exponents = s
            .split_whitespace()
            .map(|t| t.parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| MonomialError::Parse { line: 1, message: e.to_string() })?;
        Ok(Monomial { exponents })
    }
}

/// A monomial ideal kept as its canonical minimal generating set.
///
/// The zero ideal has no generators; the unit ideal is generated by `1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    variable_count: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero(k: usize) -> Self {
        MonomialIdeal { variable_count: k, generators: Vec::new() }
    }

    pub fn unit(k: usize) -> Self {
        MonomialIdeal { variable_count: k, generators: vec![Monomial::one(k)] }
    }

    /// The ideal generated by the variables with the given 0-based indices.
    pub fn prime(k: usize, vars: &[usize]) -> Self {
        let gens = vars.iter().map(|&i| Monomial::var(k, i)).collect();
        minimalize(k, gens).expect("variables share the ambient")
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Number of minimal generators.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].degree() == 0
    }

    /// Initial degree α: least degree of a generator (`None` for the zero ideal).
    pub fn alpha(&self) -> Option<u64> {
        self.generators.first().map(Monomial::degree)
    }

    /// Largest degree of a minimal generator.
    pub fn omega(&self) -> Option<u64> {
        self.generators.iter().map(Monomial::degree).max()
    }

    pub fn contains(&self, w: &Monomial) -> Result<bool, MonomialError> {
        w.ensure_ambient(self.variable_count)?;
        Ok(self.generators.iter().any(|g| g.divides(w)))
    }

    fn ensure_same(&self, other: &MonomialIdeal) -> Result<(), MonomialError> {
        if self.variable_count != other.variable_count {
            return Err(MonomialError::MixedAmbient { expected: self.variable_count, found: other.variable_count });
        }
        Ok(())
    }
}

/// Removes every monomial divisible by another and sorts the remainder into
/// canonical order.
pub fn minimalize(k: usize, mut gens: Vec<Monomial>) -> Result<MonomialIdeal, MonomialError> {
    for g in &gens {
        g.ensure_ambient(k)?;
    }
    gens.par_sort_unstable();
    gens.dedup();

    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    let mut masks: Vec<u64> = Vec::with_capacity(gens.len());
    // Candidates of one degree can only be divided by strictly smaller
    // degrees, so each degree level is filtered against everything kept so far.
    let mut start = 0;
    while start < gens.len() {
        let d = gens[start].degree();
        let end = start + gens[start..].partition_point(|g| g.degree() == d);
        let level = &gens[start..end];
        let survivors: Vec<bool> = level
            .par_iter()
            .map(|c| {
                let cm = c.support_mask();
                !kept.iter().zip(&masks).any(|(g, &gm)| gm & !cm == 0 && g.divides(c))
            })
            .collect();
        for (c, keep) in level.iter().zip(survivors) {
            if keep {
                masks.push(c.support_mask());
                kept.push(c.clone());
            }
        }
        start = end;
    }
    Ok(MonomialIdeal { variable_count: k, generators: kept })
}

/// Intersection `I ∩ J`: minimalized pairwise lcms.
pub fn intersect(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal, MonomialError> {
    i.ensure_same(j)?;
    let gens = i.generators.iter().flat_map(|a| j.generators.iter().map(move |b| a.lcm(b))).collect();
    minimalize(i.variable_count, gens)
}

/// Intersection of many ideals, folding from the smallest generating set up.
pub fn intersect_all(k: usize, ideals: &[MonomialIdeal]) -> Result<MonomialIdeal, MonomialError> {
    let mut order: Vec<&MonomialIdeal> = ideals.iter().collect();
    order.sort_by_key(|i| i.len());
    order.into_iter().try_fold(MonomialIdeal::unit(k), |acc, i| intersect(&acc, i))
}

/// Product `I * J`: minimalized pairwise products.
pub fn multiply(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal, MonomialError> {
    i.ensure_same(j)?;
    let gens = i
        .generators
        .iter()
        .flat_map(|a| j.generators.iter().map(move |b| a.checked_mul(b)))
        .collect::<Result<Vec<_>, _>>()?;
    minimalize(i.variable_count, gens)
}

/// Ordinary power `I^r`, with `I^0 = (1)`.
pub fn power(i: &MonomialIdeal, r: u32) -> Result<MonomialIdeal, MonomialError> {
    let mut acc = MonomialIdeal::unit(i.variable_count);
    for _ in 0..r {
        acc = multiply(&acc, i)?;
    }
    Ok(acc)
}

/// Decides `w ∈ M^slack * I^r`, where `M` is the ideal of all variables.
///
/// Equivalently: some product `g` of `r` generators divides `w` with
/// `deg(w) - deg(g) >= slack`. The search tries generators dividing `w` in
/// descending degree, prunes on the remaining degree budget, and memoizes
/// failed `(residual, r)` states with the largest budget that failed.
pub fn member_of_power(w: &Monomial, i: &MonomialIdeal, r: u32, slack: u64) -> Result<bool, MonomialError> {
    w.ensure_ambient(i.variable_count)?;
    let deg = w.degree();
    if slack > deg {
        return Ok(false);
    }
    let budget = deg - slack;
    if r == 0 {
        return Ok(true);
    }
    let mut candidates: Vec<&Monomial> = i.generators.iter().filter(|g| g.divides(w)).collect();
    if candidates.is_empty() {
        return Ok(false);
    }
    candidates.sort_by(|a, b| b.degree().cmp(&a.degree()).then_with(|| a.cmp(b)));
    let min_degree = candidates.iter().map(|g| g.degree()).min().unwrap_or(0);
    let mut search = PowerSearch { candidates, min_degree, failed: HashMap::new() };
    Ok(search.feasible(w.clone(), r, budget))
}

struct PowerSearch<'a> {
    candidates: Vec<&'a Monomial>,
    min_degree: u64,
    /// Largest budget known to fail for a `(residual, remaining)` state.
    failed: HashMap<(Monomial, u32), u64>,
}

impl PowerSearch<'_> {
    fn feasible(&mut self, residual: Monomial, remaining: u32, budget: u64) -> bool {
        if remaining == 0 {
            return true;
        }
        if budget < self.min_degree * remaining as u64 {
            return false;
        }
        let key = (residual, remaining);
        if self.failed.get(&key).is_some_and(|&b| b >= budget) {
            return false;
        }
        let rest = self.min_degree * (remaining as u64 - 1);
        for idx in 0..self.candidates.len() {
            let g = self.candidates[idx];
            let gd = g.degree();
            if gd + rest > budget {
                continue;
            }
            if let Some(next) = key.0.quotient(g) {
                if self.feasible(next, remaining - 1, budget - gd) {
                    return true;
                }
            }
        }
        let entry = self.failed.entry(key).or_insert(0);
        *entry = (*entry).max(budget);
        false
    }
}

/// Membership in `M^slack * I^r` by plain enumeration of generator multisets,
/// without memoization. Exponential; used to audit witnesses.
pub fn member_of_power_exhaustive(w: &Monomial, i: &MonomialIdeal, r: u32, slack: u64) -> Result<bool, MonomialError> {
    w.ensure_ambient(i.variable_count)?;
    let deg = w.degree();
    if slack > deg {
        return Ok(false);
    }
    let dividing: Vec<&Monomial> = i.generators.iter().filter(|g| g.divides(w)).collect();

    fn walk(w: &Monomial, gens: &[&Monomial], from: usize, left: u32, product_degree: u64, limit: u64) -> bool {
        if left == 0 {
            return product_degree <= limit;
        }
        (from..gens.len()).any(|j| match w.quotient(gens[j]) {
            Some(rest) => walk(&rest, gens, j, left - 1, product_degree + gens[j].degree(), limit),
            None => false,
        })
    }
    Ok(walk(w, &dividing, 0, r, 0, deg - slack))
}

/// Parses the plain-text monomial format: a `vars: k` header followed by
/// one space-separated exponent vector per line. Blank lines and lines
/// starting with `#` are ignored.
pub fn parse_monomials(text: &str) -> Result<(usize, Vec<Monomial>), MonomialError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) =
        lines.next().ok_or(MonomialError::Parse { line: 1, message: "missing `vars: k` header".into() })?;
    let k = header
        .strip_prefix("vars:")
        .and_then(|v| v.trim().parse::<usize>().ok())
        .ok_or_else(|| MonomialError::Parse { line: hline, message: format!("bad header `{header}`") })?;
    let mut out = Vec::new();
    for (line, l) in lines {
        let m: Monomial = l.parse().map_err(|e| match e {
            MonomialError::Parse { message, .. } => MonomialError::Parse { line, message },
            other => other,
        })?;
        if m.variable_count() != k {
            return Err(MonomialError::Parse {
                line,
                message: format!("expected {k} exponents, found {}", m.variable_count()),
            });
        }
        out.push(m);
    }
    Ok((k, out))
}

/// Renders monomials in the plain-text format read by [`parse_monomials`].
pub fn format_monomials(k: usize, monomials: &[Monomial]) -> String {
    let mut s = format!("vars: {k}\n");
    for m in monomials {
        s.push_str(&m.to_exponent_string());
        s.push('\n');
    }
    s
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}
