//! Containment of symbolic powers in (multiples of) ordinary powers.
//!
//! Every check answers `P^(m) ⊆ M^slack * I^r` where `I = P^(1)` and `M` is
//! the ideal of all variables. Both sides are monomial ideals, so it is
//! enough to test the minimal generators of `P^(m)`. Negative answers carry
//! a witness that is re-checked through the linear symbolic membership test
//! and an unmemoized enumeration before it is reported.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::limits::{LimitExceeded, Limits};
use crate::monomial::{member_of_power, member_of_power_exhaustive, power, Monomial, MonomialError, MonomialIdeal};
use crate::rational::{self, Rational};
use crate::symbolic::{
    alpha, member_of_symbolic, steiner_complement_alpha, symbolic_power, Alpha, Origin, PrimeDecomposition,
    SymbolicError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContainmentError {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("resource limit after {} generators: {}", .0.generators_checked, .0.reason)]
    ResourceLimit(Box<PartialReport>),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("the ambient dimension n must be given for ideals that are not Steiner complements")]
    MissingAmbientDimension,
    #[error("degenerate region: s0/r0 = {s0_over_r0} does not exceed the asymptotic resurgence {asymptotic}")]
    DegenerateRegion { s0_over_r0: Rational, asymptotic: Rational },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Symbolic(SymbolicError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

impl From<SymbolicError> for ContainmentError {
    fn from(e: SymbolicError) -> Self {
        match e {
            SymbolicError::Monomial(m) => ContainmentError::Monomial(m),
            other => ContainmentError::Symbolic(other),
        }
    }
}

/// Does `P^(m) ⊆ M^slack * I^r` hold?
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ContainmentQuery {
    pub m: u32,
    pub r: u32,
    pub slack: u64,
}

impl ContainmentQuery {
    pub fn new(m: u32, r: u32, slack: u64) -> Self {
        ContainmentQuery { m, r, slack }
    }

    pub fn plain(m: u32, r: u32) -> Self {
        ContainmentQuery { m, r, slack: 0 }
    }

    fn validate(&self) -> Result<(), ContainmentError> {
        if self.m == 0 || self.r == 0 {
            return Err(ContainmentError::InvalidQuery(format!(
                "m and r must be at least 1 (m={}, r={})",
                self.m, self.r
            )));
        }
        Ok(())
    }
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// A least-degree element of `P^(m)` is too small to lie in `M^slack I^r`.
    DegreeObstruction,
    /// Every minimal generator of `P^(m)` was tested.
    GeneratorScan,
    /// Steiner complement with `α(P^(m)) >= r * reg(I)`; only when enabled.
    RegularityBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub m: u32,
    pub r: u32,
    pub slack: u64,
    pub holds: bool,
    #[serde(serialize_with = "serialize_witness")]
    pub witness: Option<Monomial>,
    pub alpha_m: u64,
    pub alpha_r: u64,
    /// Largest generating degree of `I^r`, when it was computed.
    pub omega_r: Option<u64>,
    pub method: Method,
    pub generators_checked: usize,
    #[serde(serialize_with = "serialize_ms")]
    pub elapsed_ms: Duration,
}

/// Progress made by a check that ran out of budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialReport {
    pub m: u32,
    pub r: u32,
    pub slack: u64,
    pub alpha_m: Option<u64>,
    pub alpha_r: Option<u64>,
    pub generators_checked: usize,
    pub generators_total: Option<usize>,
    pub reason: LimitExceeded,
    #[serde(serialize_with = "serialize_ms")]
    pub elapsed_ms: Duration,
}

fn serialize_witness<S: Serializer>(w: &Option<Monomial>, s: S) -> Result<S::Ok, S::Error> {
    match w {
        Some(w) => s.serialize_str(&w.to_exponent_string()),
        None => s.serialize_none(),
    }
}

fn serialize_ms<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EngineOptions {
    /// Materialize `I^r` to report `ω(I^r)` and cross-check `α(I^r)`.
    pub audit_degrees: bool,
    /// For Steiner complements, accept `α(P^(m)) >= r(v - n + 1)` as proof of
    /// containment without scanning generators.
    pub trust_regularity_bound: bool,
}

/// Containment checks against one prime decomposition, with symbolic powers
/// and initial degrees cached across queries.
pub struct ContainmentEngine {
    decomposition: PrimeDecomposition,
    base: MonomialIdeal,
    limits: Limits,
    options: EngineOptions,
    powers: RwLock<HashMap<u32, Arc<MonomialIdeal>>>,
    alphas: RwLock<HashMap<u32, Alpha>>,
}

impl ContainmentEngine {
    pub fn new(decomposition: PrimeDecomposition, limits: Limits) -> Result<Self, ContainmentError> {
        Self::with_options(decomposition, limits, EngineOptions::default())
    }

    pub fn with_options(
        decomposition: PrimeDecomposition,
        limits: Limits,
        options: EngineOptions,
    ) -> Result<Self, ContainmentError> {
        let base = symbolic_power(&decomposition, 1, &limits)?;
        let mut powers = HashMap::new();
        powers.insert(1, Arc::new(base.clone()));
        Ok(ContainmentEngine {
            decomposition,
            base,
            limits,
            options,
            powers: RwLock::new(powers),
            alphas: RwLock::new(HashMap::new()),
        })
    }

    pub fn decomposition(&self) -> &PrimeDecomposition {
        &self.decomposition
    }

    /// The ideal `I = P^(1)`.
    pub fn base_ideal(&self) -> &MonomialIdeal {
        &self.base
    }

    pub fn big_height(&self) -> u32 {
        self.decomposition.big_height() as u32
    }

    /// Cached `P^(m)`.
    pub fn symbolic(&self, m: u32) -> Result<Arc<MonomialIdeal>, ContainmentError> {
        self.symbolic_within(m, &self.limits.restarted())
    }

    fn symbolic_within(&self, m: u32, limits: &Limits) -> Result<Arc<MonomialIdeal>, ContainmentError> {
        if let Some(i) = self.powers.read().expect("cache lock").get(&m) {
            return Ok(Arc::clone(i));
        }
        let computed = Arc::new(symbolic_power(&self.decomposition, m, limits)?);
        let mut cache = self.powers.write().expect("cache lock");
        Ok(Arc::clone(cache.entry(m).or_insert(computed)))
    }

    /// Cached `α(P^(m))` with a minimizing monomial.
    pub fn alpha(&self, m: u32) -> Result<Alpha, ContainmentError> {
        if let Some(a) = self.alphas.read().expect("cache lock").get(&m) {
            return Ok(a.clone());
        }
        let a = alpha(&self.decomposition, m)?;
        self.alphas.write().expect("cache lock").insert(m, a.clone());
        Ok(a)
    }

    fn base_alpha(&self) -> u64 {
        self.base.alpha().expect("a squarefree ideal with supports is nonzero")
    }

    /// Decides `P^(m) ⊆ M^slack * I^r`.
    pub fn check(&self, q: ContainmentQuery) -> Result<ContainmentReport, ContainmentError> {
        q.validate()?;
        let limits = self.limits.restarted();
        let started = Instant::now();
        let alpha_m = self.alpha(q.m)?;
        let alpha_r = self.base_alpha() * q.r as u64;

        let omega_r = if self.options.audit_degrees {
            let pow = self.audited_power(q.r, &limits)?;
            if pow.alpha() != Some(alpha_r) {
                return Err(ContainmentError::InternalInconsistency(format!(
                    "alpha(I^{}) = {:?} but r * alpha(I) = {alpha_r}",
                    q.r,
                    pow.alpha()
                )));
            }
            pow.omega()
        } else {
            None
        };

        let report = |holds, witness, method, checked| ContainmentReport {
            m: q.m,
            r: q.r,
            slack: q.slack,
            holds,
            witness,
            alpha_m: alpha_m.degree,
            alpha_r,
            omega_r,
            method,
            generators_checked: checked,
            elapsed_ms: started.elapsed(),
        };

        if alpha_m.degree < alpha_r + q.slack {
            let w = alpha_m.witness.clone();
            self.verify_witness(&w, q)?;
            return Ok(report(false, Some(w), Method::DegreeObstruction, 0));
        }

        if self.options.trust_regularity_bound {
            if let Origin::SteinerComplement { v, n, .. } = self.decomposition.origin() {
                let reg = (v - n + 1) as u64;
                if q.slack == 0 && alpha_m.degree >= q.r as u64 * reg {
                    return Ok(report(true, None, Method::RegularityBound, 0));
                }
            }
        }

        let partial = |checked, total, reason| {
            ContainmentError::ResourceLimit(Box::new(PartialReport {
                m: q.m,
                r: q.r,
                slack: q.slack,
                alpha_m: Some(alpha_m.degree),
                alpha_r: Some(alpha_r),
                generators_checked: checked,
                generators_total: total,
                reason,
                elapsed_ms: started.elapsed(),
            }))
        };

        let gens = match self.symbolic_within(q.m, &limits) {
            Ok(g) => g,
            Err(ContainmentError::Symbolic(SymbolicError::ResourceLimit(reason))) => {
                return Err(partial(0, None, reason))
            }
            Err(e) => return Err(e),
        };
        let mut last_log = Instant::now();
        for (checked, g) in gens.generators().iter().enumerate() {
            if let Err(reason) = limits.check_time() {
                return Err(partial(checked, Some(gens.len()), reason));
            }
            if last_log.elapsed() >= limits.progress_interval {
                log::info!("m={} r={} slack={}: {checked}/{} generators", q.m, q.r, q.slack, gens.len());
                last_log = Instant::now();
            }
            if !member_of_power(g, &self.base, q.r, q.slack)? {
                self.verify_witness(g, q)?;
                return Ok(report(false, Some(g.clone()), Method::GeneratorScan, checked + 1));
            }
        }
        Ok(report(true, None, Method::GeneratorScan, gens.len()))
    }

    fn audited_power(&self, r: u32, limits: &Limits) -> Result<MonomialIdeal, ContainmentError> {
        let bound = (self.base.len() as f64).powi(r as i32);
        if bound > limits.generator_cap as f64 {
            return Err(ContainmentError::Symbolic(SymbolicError::ResourceLimit(LimitExceeded::GeneratorCap {
                count: bound.min(usize::MAX as f64) as usize,
                cap: limits.generator_cap,
            })));
        }
        Ok(power(&self.base, r)?)
    }

    /// Confirms `w ∈ P^(m)` and `w ∉ M^slack I^r` through code paths that do
    /// not share state with the generator scan.
    fn verify_witness(&self, w: &Monomial, q: ContainmentQuery) -> Result<(), ContainmentError> {
        if !member_of_symbolic(w, &self.decomposition, q.m)? {
            return Err(ContainmentError::InternalInconsistency(format!(
                "witness {w} is not in the symbolic power {}",
                q.m
            )));
        }
        if member_of_power_exhaustive(w, &self.base, q.r, q.slack)? {
            return Err(ContainmentError::InternalInconsistency(format!(
                "witness {w} lies in M^{} I^{}",
                q.slack, q.r
            )));
        }
        Ok(())
    }

    /// `P^(hr) ⊆ I^r` with `h` the big height. This always holds, so a
    /// failure is reported as an engine bug.
    pub fn check_els(&self, r: u32) -> Result<ContainmentReport, ContainmentError> {
        let q = ContainmentQuery::plain(self.big_height() * r, r);
        let report = self.check(q)?;
        if !report.holds {
            return Err(ContainmentError::InternalInconsistency(format!(
                "I^({}) is not contained in I^{r}, contradicting the big-height bound",
                q.m
            )));
        }
        Ok(report)
    }

    /// `P^(hr - h + 1) ⊆ I^r` for each `r` in `r_lo..=r_hi`.
    pub fn stable_harbourne_scan(&self, r_lo: u32, r_hi: u32) -> Result<ConjectureVerdict, ContainmentError> {
        check_range(r_lo, r_hi)?;
        let h = self.big_height();
        let instances = (r_lo..=r_hi)
            .map(|r| {
                self.check(ContainmentQuery::plain(h * r - h + 1, r)).map(|report| Instance::Containment { r, report })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let analytic_threshold = match self.decomposition.origin() {
            Origin::SteinerComplement { v, n, .. } if n > 1 => {
                let ratio = Rational::new(v as i64, n as i64 - 1);
                Some(AnalyticThreshold { ratio, min_r: rational::ceil(ratio) })
            }
            _ => None,
        };
        Ok(ConjectureVerdict::new(Conjecture::StableHarbourne, instances, analytic_threshold))
    }

    /// Harbourne–Huneke containments for `r` in `r_lo..=r_hi`:
    /// form 1 is `P^(hr) ⊆ M^{r(h-1)} I^r`, form 2 is
    /// `P^(hr-h+1) ⊆ M^{(r-1)(h-1)} I^r`.
    pub fn harbourne_huneke_scan(
        &self,
        r_lo: u32,
        r_hi: u32,
        form: HarbourneHunekeForm,
    ) -> Result<ConjectureVerdict, ContainmentError> {
        check_range(r_lo, r_hi)?;
        let h = self.big_height();
        let instances = (r_lo..=r_hi)
            .map(|r| {
                let q = form.query(h, r);
                self.check(q).map(|report| Instance::Containment { r, report })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ConjectureVerdict::new(form.conjecture(), instances, None))
    }

    /// Tests every `(m, r)` with `r < m`, `m <= m_max`, `r <= r_max` and
    /// returns the failures. The largest failing `m/r` is a lower bound for
    /// the resurgence. Pairs with `m <= r` are skipped: their ratio is at
    /// most 1 and the resurgence is always at least 1.
    pub fn resurgence_search(&self, m_max: u32, r_max: u32) -> Result<ResurgenceSearch, ContainmentError> {
        if m_max == 0 || r_max == 0 {
            return Err(ContainmentError::InvalidParameter("search bounds must be at least 1".into()));
        }
        let pairs: Vec<(u32, u32)> = (1..=r_max).flat_map(|r| (r + 1..=m_max).map(move |m| (m, r))).collect();
        // Warm the cache in increasing m so concurrent checks only read it.
        for m in 1..=m_max {
            if pairs.iter().any(|&(pm, _)| pm == m) {
                let _ = self.symbolic(m);
            }
        }
        let reports =
            pairs.par_iter().map(|&(m, r)| self.check(ContainmentQuery::plain(m, r))).collect::<Result<Vec<_>, _>>()?;

        // Symbolic powers descend in m, so for fixed r the failures must be
        // an initial segment.
        for r in 1..=r_max {
            let column: Vec<&ContainmentReport> = reports.iter().filter(|c| c.r == r).collect();
            if let Some(pos) = column.iter().position(|c| c.holds) {
                if let Some(bad) = column[pos..].iter().find(|c| !c.holds) {
                    return Err(ContainmentError::InternalInconsistency(format!(
                        "I^({}) ⊆ I^{r} holds but I^({}) ⊆ I^{r} fails",
                        column[pos].m, bad.m
                    )));
                }
            }
        }

        let failures: Vec<Failure> = reports
            .iter()
            .filter(|c| !c.holds)
            .map(|c| Failure {
                m: c.m,
                r: c.r,
                ratio: Rational::new(c.m as i64, c.r as i64),
                witness: c.witness.clone().expect("failed checks carry a witness"),
            })
            .collect();
        let max_ratio = failures.iter().map(|f| f.ratio).max();
        Ok(ResurgenceSearch { m_max, r_max, checked: reports.len(), failures, max_ratio })
    }

    fn ambient(&self, ambient_n: Option<u32>) -> Result<u32, ContainmentError> {
        match (ambient_n, self.decomposition.origin()) {
            (Some(n), _) if n >= 1 => Ok(n),
            (Some(_), _) => Err(ContainmentError::InvalidParameter("ambient dimension must be positive".into())),
            (None, Origin::SteinerComplement { n, .. }) => Ok(n as u32),
            (None, _) => Err(ContainmentError::MissingAmbientDimension),
        }
    }

    /// `α(P^(h))/h >= (α(I) + n - 1)/n` for `2 <= h <= h_max`, in exact
    /// rationals. For Steiner complements `n` defaults to the block size.
    pub fn chudnovsky_check(&self, ambient_n: Option<u32>, h_max: u32) -> Result<ConjectureVerdict, ContainmentError> {
        let n = self.ambient(ambient_n)? as i64;
        let a1 = self.alpha(1)?.degree as i64;
        let rhs = Rational::new(a1 + n - 1, n);
        let instances = self.inequality_instances(h_max, rhs)?;
        Ok(ConjectureVerdict::new(Conjecture::Chudnovsky, instances, None))
    }

    /// `α(P^(h))/h >= (α(P^(m)) + n - 1)/(m + n - 1)` for `2 <= h <= h_max`.
    /// For Steiner complements the right-hand side is also evaluated from
    /// the closed-form initial degrees and the two must agree.
    pub fn demailly_check(
        &self,
        ambient_n: Option<u32>,
        m: u32,
        h_max: u32,
    ) -> Result<ConjectureVerdict, ContainmentError> {
        if m == 0 {
            return Err(ContainmentError::InvalidParameter("m must be at least 1".into()));
        }
        let n = self.ambient(ambient_n)? as i64;
        let am = self.alpha(m)?.degree as i64;
        let rhs = Rational::new(am + n - 1, m as i64 + n - 1);
        if let Origin::SteinerComplement { v, n: block, .. } = self.decomposition.origin() {
            if ambient_n.is_none() || ambient_n == Some(block as u32) {
                let expected = demailly_rhs_formula(v as i64, block as i64, m as i64);
                if expected != rhs {
                    return Err(ContainmentError::InternalInconsistency(format!(
                        "Demailly bound {rhs} differs from the closed form {expected}"
                    )));
                }
            }
        }
        let instances = self.inequality_instances(h_max, rhs)?;
        Ok(ConjectureVerdict::new(Conjecture::Demailly, instances, None))
    }

    fn inequality_instances(&self, h_max: u32, rhs: Rational) -> Result<Vec<Instance>, ContainmentError> {
        (2..=h_max)
            .map(|h| {
                let lhs = Rational::new(self.alpha(h)?.degree as i64, h as i64);
                Ok(Instance::Inequality { h, lhs, rhs, holds: lhs >= rhs })
            })
            .collect()
    }
}

fn check_range(lo: u32, hi: u32) -> Result<(), ContainmentError> {
    if lo == 0 || lo > hi {
        return Err(ContainmentError::InvalidParameter(format!("need 1 <= r_lo <= r_hi, got {lo}..={hi}")));
    }
    Ok(())
}

/// Right-hand side of the Demailly inequality for a Steiner complement
/// S(t,n,v), from the closed-form initial degrees. With `m = pn + q`:
/// `q >= 2` gives `((p+1)v + q - 1)/((p+1)n + q - 1)`, `q = 1` gives
/// `((p+1)v - 1)/((p+1)n)`, and `q = 0` gives `(pv + n - 1)/(pn + n - 1)`.
pub fn demailly_rhs_formula(v: i64, n: i64, m: i64) -> Rational {
    let (p, q) = (m / n, m % n);
    match q {
        0 => Rational::new(p * v + n - 1, p * n + n - 1),
        1 => Rational::new((p + 1) * v - 1, (p + 1) * n),
        _ => Rational::new((p + 1) * v + q - 1, (p + 1) * n + q - 1),
    }
}

/// `α(I^(m))` from the closed form, for cross-checks in reports.
pub fn expected_complement_alpha(origin: Origin, m: u32) -> Option<u64> {
    match origin {
        Origin::SteinerComplement { v, n, .. } => Some(steiner_complement_alpha(v as u64, n as u64, m as u64)),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjecture {
    HarbourneHuneke1,
    HarbourneHuneke2,
    StableHarbourne,
    Chudnovsky,
    Demailly,
    Els,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarbourneHunekeForm {
    /// `I^(hr) ⊆ M^{r(h-1)} I^r`
    First,
    /// `I^(hr-h+1) ⊆ M^{(r-1)(h-1)} I^r`
    Second,
}

impl HarbourneHunekeForm {
    pub fn query(self, h: u32, r: u32) -> ContainmentQuery {
        match self {
            HarbourneHunekeForm::First => ContainmentQuery::new(h * r, r, (r * (h - 1)) as u64),
            HarbourneHunekeForm::Second => ContainmentQuery::new(h * r - h + 1, r, ((r - 1) * (h - 1)) as u64),
        }
    }

    fn conjecture(self) -> Conjecture {
        match self {
            HarbourneHunekeForm::First => Conjecture::HarbourneHuneke1,
            HarbourneHunekeForm::Second => Conjecture::HarbourneHuneke2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Instance {
    Containment {
        r: u32,
        report: ContainmentReport,
    },
    Inequality {
        h: u32,
        #[serde(serialize_with = "rational::serialize")]
        lhs: Rational,
        #[serde(serialize_with = "rational::serialize")]
        rhs: Rational,
        holds: bool,
    },
}

impl Instance {
    pub fn holds(&self) -> bool {
        match self {
            Instance::Containment { report, .. } => report.holds,
            Instance::Inequality { holds, .. } => *holds,
        }
    }
}

/// `r >= ratio` guarantees the stable containment for a Steiner complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AnalyticThreshold {
    #[serde(serialize_with = "rational::serialize")]
    pub ratio: Rational,
    pub min_r: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureVerdict {
    pub name: Conjecture,
    pub instances: Vec<Instance>,
    pub all_hold: bool,
    pub analytic_threshold: Option<AnalyticThreshold>,
}

impl ConjectureVerdict {
    fn new(name: Conjecture, instances: Vec<Instance>, analytic_threshold: Option<AnalyticThreshold>) -> Self {
        let all_hold = instances.iter().all(Instance::holds);
        ConjectureVerdict { name, instances, all_hold, analytic_threshold }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub m: u32,
    pub r: u32,
    #[serde(serialize_with = "rational::serialize")]
    pub ratio: Rational,
    #[serde(serialize_with = "serialize_monomial")]
    pub witness: Monomial,
}

fn serialize_monomial<S: Serializer>(m: &Monomial, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&m.to_exponent_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResurgenceSearch {
    pub m_max: u32,
    pub r_max: u32,
    pub checked: usize,
    pub failures: Vec<Failure>,
    #[serde(serialize_with = "rational::serialize_opt")]
    pub max_ratio: Option<Rational>,
}

impl ResurgenceSearch {
    pub fn fails(&self, m: u32, r: u32) -> bool {
        self.failures.iter().any(|f| f.m == m && f.r == r)
    }
}

/// Finite search region for the resurgence when the asymptotic resurgence
/// is `h(1 - 1/r1)` and a failing ratio `s0/r0` above it is known: only
/// `r <= n / ((s0/r0)/(h(1 - 1/r1)) - 1)` and `s <= (r + n) h (1 - 1/r1)`
/// need to be examined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResurgenceRegion {
    pub big_height: u32,
    pub ambient_n: u32,
    #[serde(serialize_with = "rational::serialize")]
    pub r1: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub s0_over_r0: Rational,
    /// `h(1 - 1/r1)`.
    #[serde(serialize_with = "rational::serialize")]
    pub asymptotic_resurgence: Rational,
    /// The exact bound on `r` before rounding up.
    #[serde(serialize_with = "rational::serialize")]
    pub r_bound: Rational,
    pub r_max: i64,
}

impl ResurgenceRegion {
    /// Upper bound on `s` for a given `r`: `(r + n) h (1 - 1/r1)`.
    pub fn s_max(&self, r: i64) -> Rational {
        Rational::from_integer(r + self.ambient_n as i64) * self.asymptotic_resurgence
    }
}

pub fn resurgence_region(
    big_height: u32,
    ambient_n: u32,
    r1: Rational,
    s0_over_r0: Rational,
) -> Result<ResurgenceRegion, ContainmentError> {
    if big_height == 0 || ambient_n == 0 {
        return Err(ContainmentError::InvalidParameter("h and n must be positive".into()));
    }
    let one = Rational::from_integer(1);
    if r1 <= one {
        return Err(ContainmentError::InvalidParameter(format!("r1 must exceed 1, got {r1}")));
    }
    let asymptotic = Rational::from_integer(big_height as i64) * (one - one / r1);
    if s0_over_r0 <= asymptotic {
        return Err(ContainmentError::DegenerateRegion { s0_over_r0, asymptotic });
    }
    let r_bound = Rational::from_integer(ambient_n as i64) / (s0_over_r0 / asymptotic - one);
    Ok(ResurgenceRegion {
        big_height,
        ambient_n,
        r1,
        s0_over_r0,
        asymptotic_resurgence: asymptotic,
        r_bound,
        r_max: rational::ceil(r_bound),
    })
}

/// One-shot form of [`ContainmentEngine::check`].
pub fn check_containment(
    p: &PrimeDecomposition,
    q: ContainmentQuery,
    limits: &Limits,
) -> Result<ContainmentReport, ContainmentError> {
    ContainmentEngine::new(p.clone(), *limits)?.check(q)
}
