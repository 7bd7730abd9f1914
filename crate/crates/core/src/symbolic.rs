//! Symbolic powers of squarefree monomial ideals given by their primes.
//!
//! A squarefree monomial ideal is the intersection of the primes `p_σ`
//! generated by the variables in each support `σ`, and its m-th symbolic
//! power is `∩ p_σ^m`. A monomial lies in `p_σ^m` exactly when its exponents
//! on `σ` sum to at least `m`, which gives a linear-time membership test
//! independent of the generator computation.

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, SteinerSystem, VertexSet, MAX_VERTICES};
use crate::limits::{LimitExceeded, Limits};
use crate::monomial::{minimalize, Monomial, MonomialError, MonomialIdeal};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("prime decomposition has no supports")]
    NoSupports,
    #[error("variable count must be between 1 and {MAX_VERTICES}, got {0}")]
    VariableCount(usize),
    #[error("empty support")]
    EmptySupport,
    #[error("support {support} exceeds {variable_count} variables")]
    SupportOutOfRange { support: VertexSet, variable_count: usize },
    #[error("the design uses every n-subset, so its complement is empty")]
    ComplementEmpty,
    #[error("symbolic exponent must be at least 1")]
    ZeroExponent,
    #[error("resource limit: {0}")]
    ResourceLimit(#[from] LimitExceeded),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

/// Where a decomposition came from. Steiner complements carry their
/// parameters so closed-form values can be reported alongside computed ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    Custom,
    Cover,
    SteinerComplement { v: usize, n: usize, t: usize },
}

/// A squarefree ideal presented as `∩ p_σ` over an antichain of supports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeDecomposition {
    variable_count: usize,
    supports: Vec<VertexSet>,
    origin: Origin,
}

impl PrimeDecomposition {
    /// Builds a decomposition in `variable_count` variables. Supports that
    /// contain another support are dropped, since they do not change the
    /// intersection.
    pub fn new(variable_count: usize, supports: Vec<VertexSet>) -> Result<Self, SymbolicError> {
        Self::with_origin(variable_count, supports, Origin::Custom)
    }

    pub fn with_origin(
        variable_count: usize,
        mut supports: Vec<VertexSet>,
        origin: Origin,
    ) -> Result<Self, SymbolicError> {
        if supports.is_empty() {
            return Err(SymbolicError::NoSupports);
        }
        if variable_count == 0 || variable_count > MAX_VERTICES {
            return Err(SymbolicError::VariableCount(variable_count));
        }
        let full = VertexSet::full(variable_count);
        for &s in &supports {
            if s.is_empty() {
                return Err(SymbolicError::EmptySupport);
            }
            if !s.is_subset(full) {
                return Err(SymbolicError::SupportOutOfRange { support: s, variable_count });
            }
        }
        supports.sort();
        supports.dedup();
        let before = supports.len();
        let normalized: Vec<VertexSet> =
            supports.iter().copied().filter(|&s| !supports.iter().any(|&o| o != s && o.is_subset(s))).collect();
        let origin = if normalized.len() != before {
            log::info!("dropped {} embedded supports", before - normalized.len());
            Origin::Custom
        } else {
            origin
        };
        Ok(PrimeDecomposition { variable_count, supports: normalized, origin })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn supports(&self) -> &[VertexSet] {
        &self.supports
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    /// Largest support size (the big height).
    pub fn big_height(&self) -> usize {
        self.supports.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn min_height(&self) -> usize {
        self.supports.iter().map(|s| s.len()).min().unwrap_or(0)
    }
}

/// The cover ideal `J_H = ∩_{e ∈ E} p_e`.
pub fn cover_ideal(h: &Hypergraph) -> PrimeDecomposition {
    PrimeDecomposition::with_origin(h.vertex_count(), h.edges().to_vec(), Origin::Cover)
        .expect("hypergraph edges are nonempty and in range")
}

/// The monomial model of a Steiner complement: `∩ p_σ` over the n-subsets
/// of `{1..v}` that are not blocks, in `v` variables.
pub fn complement_ideal(s: &SteinerSystem) -> Result<PrimeDecomposition, SymbolicError> {
    let supports = s.complement_blocks();
    if supports.is_empty() {
        return Err(SymbolicError::ComplementEmpty);
    }
    PrimeDecomposition::with_origin(s.v(), supports, Origin::SteinerComplement { v: s.v(), n: s.n(), t: s.t() })
}

/// Sum of the exponents of `w` over the variables in `support`.
fn support_degree(w: &Monomial, support: VertexSet) -> u64 {
    support.iter().map(|v| w.exponents()[v - 1] as u64).sum()
}

/// `w ∈ P^(m)`: every support carries at least `m` of the degree of `w`.
pub fn member_of_symbolic(w: &Monomial, p: &PrimeDecomposition, m: u32) -> Result<bool, MonomialError> {
    if w.variable_count() != p.variable_count {
        return Err(MonomialError::MixedAmbient { expected: p.variable_count, found: w.variable_count() });
    }
    Ok(p.supports.iter().all(|&s| support_degree(w, s) >= m as u64))
}

/// Minimal generators of `P^(m) = ∩ p_σ^m`.
///
/// Folds the prime powers into a running intersection, smallest supports
/// first. Intersecting with `p_σ^m` keeps each generator already in `p_σ^m`
/// and otherwise replaces it by every way of raising its σ-exponents to a
/// σ-degree of exactly `m`; these are the minimal lcms with the degree-m
/// monomials in σ.
pub fn symbolic_power(p: &PrimeDecomposition, m: u32, limits: &Limits) -> Result<MonomialIdeal, SymbolicError> {
    if m == 0 {
        return Err(SymbolicError::ZeroExponent);
    }
    let k = p.variable_count;
    let mut order: Vec<VertexSet> = p.supports.clone();
    order.sort_by_key(|s| (s.len(), *s));
    let mut acc = MonomialIdeal::unit(k);
    for support in order {
        limits.check_time()?;
        acc = intersect_with_prime_power(&acc, support, m, limits)?;
    }
    Ok(acc)
}

/// `I ∩ p_σ^m` for a monomial ideal `I`.
pub fn intersect_with_prime_power(
    i: &MonomialIdeal,
    support: VertexSet,
    m: u32,
    limits: &Limits,
) -> Result<MonomialIdeal, SymbolicError> {
    let vars: Vec<usize> = support.iter().map(|v| v - 1).collect();
    let mut candidates = Vec::new();
    for g in i.generators() {
        let have = support_degree(g, support);
        if have >= m as u64 {
            candidates.push(g.clone());
            continue;
        }
        let deficit = (m as u64 - have) as u32;
        let mut current = g.exponents().to_vec();
        raise(&vars, 0, deficit, &mut current, &mut candidates)?;
        limits.check_count(candidates.len())?;
    }
    Ok(minimalize(i.variable_count(), candidates)?)
}

/// Pushes every exponent vector obtained by distributing `left` extra units
/// over `vars[from..]`.
fn raise(
    vars: &[usize],
    from: usize,
    left: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) -> Result<(), MonomialError> {
    if left == 0 {
        out.push(Monomial::new(current.clone()));
        return Ok(());
    }
    if from + 1 == vars.len() {
        let slot = &mut current[vars[from]];
        let old = *slot;
        *slot = old.checked_add(left).ok_or(MonomialError::Overflow)?;
        out.push(Monomial::new(current.clone()));
        current[vars[from]] = old;
        return Ok(());
    }
    for take in (0..=left).rev() {
        let old = current[vars[from]];
        current[vars[from]] = old.checked_add(take).ok_or(MonomialError::Overflow)?;
        raise(vars, from + 1, left - take, current, out)?;
        current[vars[from]] = old;
    }
    Ok(())
}

/// Least degree of an element of `P^(m)` with a minimizing monomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Alpha {
    pub m: u32,
    pub degree: u64,
    #[serde(serialize_with = "serialize_monomial")]
    pub witness: Monomial,
}

fn serialize_monomial<S: serde::Serializer>(m: &Monomial, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&m.to_exponent_string())
}

/// Initial degree `α(P^(m))`, found by branch and bound on the integer
/// program "minimize Σ a_i subject to Σ_{i∈σ} a_i >= m for every σ",
/// without building the generators.
pub fn alpha(p: &PrimeDecomposition, m: u32) -> Result<Alpha, SymbolicError> {
    if m == 0 {
        return Err(SymbolicError::ZeroExponent);
    }
    let k = p.variable_count;
    let supports: Vec<Vec<usize>> = p.supports.iter().map(|s| s.iter().map(|v| v - 1).collect()).collect();
    let mut count = vec![0usize; k];
    for s in &supports {
        for &i in s {
            count[i] += 1;
        }
    }
    let mut order: Vec<usize> = (0..k).filter(|&i| count[i] > 0).collect();
    order.sort_by(|&a, &b| count[b].cmp(&count[a]).then(a.cmp(&b)));
    let mut position = vec![usize::MAX; k];
    for (pos, &i) in order.iter().enumerate() {
        position[i] = pos;
    }
    let last = supports.iter().map(|s| s.iter().map(|&i| position[i]).max().unwrap_or(0)).collect();
    let mut containing = vec![Vec::new(); k];
    for (j, s) in supports.iter().enumerate() {
        for &i in s {
            containing[i].push(j);
        }
    }

    let mut bb = AlphaSearch {
        supports: &supports,
        containing,
        order,
        last,
        deficit: vec![m as i64; supports.len()],
        values: vec![0; k],
        best: u64::MAX,
        best_values: Vec::new(),
        free_count: vec![0; k],
    };
    bb.descend(0, 0);
    Ok(Alpha { m, degree: bb.best, witness: Monomial::new(bb.best_values) })
}

struct AlphaSearch<'a> {
    supports: &'a [Vec<usize>],
    containing: Vec<Vec<usize>>,
    order: Vec<usize>,
    /// Last position in `order` of a variable of each support.
    last: Vec<usize>,
    deficit: Vec<i64>,
    values: Vec<u32>,
    best: u64,
    best_values: Vec<u32>,
    free_count: Vec<u64>,
}

impl AlphaSearch<'_> {
    /// Lower bound on the degree still needed, or `None` if infeasible.
    fn lower_bound(&mut self, pos: usize) -> Option<u64> {
        let mut total = 0i64;
        let mut max_def = 0i64;
        for c in self.free_count.iter_mut() {
            *c = 0;
        }
        for (j, &d) in self.deficit.iter().enumerate() {
            if d <= 0 {
                continue;
            }
            if self.last[j] < pos {
                return None;
            }
            total += d;
            max_def = max_def.max(d);
            for &i in &self.supports[j] {
                self.free_count[i] += 1;
            }
        }
        if total == 0 {
            return Some(0);
        }
        // Each unit on a free variable reduces the total deficit by at most
        // the number of deficient supports containing it.
        let widest = self.order[pos..].iter().map(|&i| self.free_count[i]).max().unwrap_or(0);
        if widest == 0 {
            return None;
        }
        let averaged = (total as u64).div_ceil(widest);
        Some(averaged.max(max_def as u64))
    }

    fn descend(&mut self, pos: usize, sum: u64) {
        let Some(lb) = self.lower_bound(pos) else { return };
        if lb == 0 {
            if sum < self.best {
                self.best = sum;
                self.best_values = self.values.clone();
            }
            return;
        }
        if sum + lb >= self.best || pos == self.order.len() {
            return;
        }
        let var = self.order[pos];
        let top = self.containing[var].iter().map(|&j| self.deficit[j]).max().unwrap_or(0).max(0) as u32;
        for value in (0..=top).rev() {
            for &j in &self.containing[var] {
                self.deficit[j] -= value as i64;
            }
            self.values[var] = value;
            self.descend(pos + 1, sum + value as u64);
            self.values[var] = 0;
            for &j in &self.containing[var] {
                self.deficit[j] += value as i64;
            }
        }
    }
}

/// Closed-form `α(I^(m))` for the complement of a Steiner system S(t,n,v):
/// with `m = pn + q`, `0 <= q < n`, the value is `pv` plus `0`, `v - n`, or
/// `v - n + q` for `q = 0`, `q = 1`, `q >= 2` respectively.
pub fn steiner_complement_alpha(v: u64, n: u64, m: u64) -> u64 {
    let (p, q) = (m / n, m % n);
    let base = match q {
        0 => 0,
        1 => v - n,
        _ => v - n + q,
    };
    base + p * v
}

/// `α(P^(m))` for `m = 1..=max_m` with the Waldschmidt envelope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaTable {
    /// `(m, α(P^(m)))` in increasing `m`.
    pub entries: Vec<(u32, u64)>,
    /// `min_m α(P^(m))/m`, an upper bound for the Waldschmidt constant.
    #[serde(serialize_with = "rational::serialize")]
    pub waldschmidt_upper: Rational,
    /// Every `m` attaining the upper bound.
    pub attained_at: Vec<u32>,
    /// Known exact value (`v/n` for Steiner complements).
    #[serde(serialize_with = "rational::serialize_opt")]
    pub waldschmidt_exact: Option<Rational>,
}

impl AlphaTable {
    pub fn get(&self, m: u32) -> Option<u64> {
        self.entries.iter().find(|(mm, _)| *mm == m).map(|(_, a)| *a)
    }

    /// Strict growth and `α(a+b) <= α(a) + α(b)` across the table.
    pub fn is_consistent(&self) -> bool {
        let increasing = self.entries.windows(2).all(|w| w[0].1 < w[1].1);
        let subadditive = self
            .entries
            .iter()
            .all(|&(a, aa)| self.entries.iter().all(|&(b, ab)| self.get(a + b).is_none_or(|s| s <= aa + ab)));
        increasing && subadditive
    }
}

pub fn alpha_table(p: &PrimeDecomposition, max_m: u32) -> Result<AlphaTable, SymbolicError> {
    if max_m == 0 {
        return Err(SymbolicError::ZeroExponent);
    }
    let entries = (1..=max_m).map(|m| alpha(p, m).map(|a| (m, a.degree))).collect::<Result<Vec<_>, _>>()?;
    let ratio = |(m, a): (u32, u64)| Rational::new(a as i64, m as i64);
    let waldschmidt_upper = entries.iter().copied().map(ratio).min().expect("max_m >= 1");
    let attained_at = entries.iter().copied().filter(|&e| ratio(e) == waldschmidt_upper).map(|(m, _)| m).collect();
    let waldschmidt_exact = match p.origin {
        Origin::SteinerComplement { v, n, .. } => Some(Rational::new(v as i64, n as i64)),
        _ => None,
    };
    Ok(AlphaTable { entries, waldschmidt_upper, attained_at, waldschmidt_exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{builtin_fano, builtin_sqs8};

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    #[test]
    fn path_ideal_first_power() {
        let p = PrimeDecomposition::new(3, vec![vs(&[1, 2]), vs(&[2, 3])]).unwrap();
        let i = symbolic_power(&p, 1, &Limits::default()).unwrap();
        assert_eq!(i.generators(), &[m(&[0, 1, 0]), m(&[1, 0, 1])]);
    }

    #[test]
    fn single_prime_powers() {
        let p = PrimeDecomposition::new(3, vec![vs(&[1, 3])]).unwrap();
        let i = symbolic_power(&p, 3, &Limits::default()).unwrap();
        assert_eq!(i.len(), 4);
        assert!(i.generators().iter().all(|g| g.degree() == 3 && g.exponents()[1] == 0));
        let t = alpha_table(&p, 4).unwrap();
        assert_eq!(t.entries, vec![(1, 1), (2, 2), (3, 3), (4, 4)]);
        assert_eq!(t.waldschmidt_upper, Rational::from_integer(1));
    }

    #[test]
    fn normalization_drops_embedded_supports() {
        let p = PrimeDecomposition::new(3, vec![vs(&[1, 2]), vs(&[1, 2, 3]), vs(&[1, 2])]).unwrap();
        assert_eq!(p.supports(), &[vs(&[1, 2])]);
        assert!(matches!(PrimeDecomposition::new(3, vec![]), Err(SymbolicError::NoSupports)));
        assert!(matches!(PrimeDecomposition::new(2, vec![vs(&[3])]), Err(SymbolicError::SupportOutOfRange { .. })));
    }

    #[test]
    fn cover_and_complement_shapes() {
        let fano = builtin_fano();
        let cover = cover_ideal(&fano.hypergraph());
        assert_eq!(cover.supports().len(), 7);
        assert_eq!(cover.big_height(), 3);
        let comp = complement_ideal(&fano).unwrap();
        assert_eq!(comp.supports().len(), 28);
        assert_eq!(comp.variable_count(), 7);
        assert_eq!(complement_ideal(&builtin_sqs8()).unwrap().supports().len(), 56);
        let whole = SteinerSystem::validate(3, 3, 2, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(complement_ideal(&whole), Err(SymbolicError::ComplementEmpty));
    }

    #[test]
    fn symbolic_membership() {
        let cover = cover_ideal(&builtin_fano().hypergraph());
        let all = Monomial::squarefree_all(7);
        assert!(member_of_symbolic(&all, &cover, 3).unwrap());
        assert!(!member_of_symbolic(&all, &cover, 4).unwrap());
        assert!(!member_of_symbolic(&Monomial::var(7, 0), &cover, 1).unwrap());
        assert!(member_of_symbolic(&Monomial::one(3), &cover, 1).is_err());
    }

    #[test]
    fn steiner_formula_values() {
        let got: Vec<u64> = (1..=6).map(|m| steiner_complement_alpha(7, 3, m)).collect();
        assert_eq!(got, vec![4, 6, 7, 11, 13, 14]);
        assert_eq!(steiner_complement_alpha(8, 4, 4), 8);
    }

    #[test]
    fn fano_complement_alpha_matches_generators() {
        let comp = complement_ideal(&builtin_fano()).unwrap();
        for m in 1..=2 {
            let a = alpha(&comp, m).unwrap();
            assert!(member_of_symbolic(&a.witness, &comp, m).unwrap());
            let gens = symbolic_power(&comp, m, &Limits::default()).unwrap();
            assert_eq!(gens.alpha(), Some(a.degree));
        }
    }

    #[test]
    fn zero_exponent_rejected() {
        let p = PrimeDecomposition::new(2, vec![vs(&[1])]).unwrap();
        assert_eq!(alpha(&p, 0), Err(SymbolicError::ZeroExponent));
        assert!(symbolic_power(&p, 0, &Limits::default()).is_err());
    }

    #[test]
    fn generator_cap_is_enforced() {
        let comp = complement_ideal(&builtin_fano()).unwrap();
        let limits = Limits::default().with_generator_cap(10);
        assert!(matches!(
            symbolic_power(&comp, 2, &limits),
            Err(SymbolicError::ResourceLimit(LimitExceeded::GeneratorCap { cap: 10, .. }))
        ));
    }
}
