//! Acceptance gate: one PASS/FAIL line per criterion, failing the test if
//! any criterion fails.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_integer::binomial;
use steiner_core::containment::{
    demailly_rhs_formula, resurgence_region, ContainmentEngine, ContainmentError, ContainmentQuery, ContainmentReport,
};
use steiner_core::hypergraph::{
    builtin_fano, builtin_sqs8, chromatic_number, is_colourable, is_coverable, Colourability, Coverability,
};
use steiner_core::io::load_design;
use steiner_core::monomial::{member_of_power, member_of_power_exhaustive};
use steiner_core::symbolic::{
    alpha_table, complement_ideal, cover_ideal, member_of_symbolic, steiner_complement_alpha,
};
use steiner_core::{Limits, Monomial, PrimeDecomposition, Rational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(started: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let took = started.elapsed();
    ensure(took < budget, format!("{what} took {took:?}, budget {budget:?}"))
}

fn fano_complement() -> PrimeDecomposition {
    complement_ideal(&builtin_fano()).unwrap()
}

fn engine(p: PrimeDecomposition, limits: Limits) -> ContainmentEngine {
    ContainmentEngine::new(p, limits).unwrap()
}

fn first_vars(k: usize, n: usize) -> Monomial {
    Monomial::new((0..k).map(|i| u32::from(i < n)).collect())
}

fn c1_fano_validation() -> Outcome {
    let started = Instant::now();
    let s = load_design("builtin:fano").map_err(|e| e.to_string())?;
    ensure((s.v(), s.n(), s.t()) == (7, 3, 2), "not S(2,3,7)")?;
    let expected = binomial(7u64, 2) / binomial(3u64, 2);
    ensure(s.blocks().len() as u64 == expected, format!("|B| = {}, C(7,2)/C(3,2) = {expected}", s.blocks().len()))?;
    let c = s.complement_blocks().len();
    ensure(c == 28, format!("complement has {c} blocks"))?;
    within(started, Duration::from_secs(1), "validation")?;
    Ok(format!("S(2,3,7), |B|=7, complement 28 blocks in {:?}", started.elapsed()))
}

fn c2_alpha_table() -> Outcome {
    let started = Instant::now();
    let table = alpha_table(&fano_complement(), 6).map_err(|e| e.to_string())?;
    let got: Vec<u64> = table.entries.iter().map(|&(_, a)| a).collect();
    ensure(got == [4, 6, 7, 11, 13, 14], format!("alpha = {got:?}"))?;
    for &(m, a) in &table.entries {
        ensure(a == steiner_complement_alpha(7, 3, m as u64), format!("closed form disagrees at m={m}"))?;
    }
    within(started, Duration::from_secs(60), "alpha table")?;
    Ok(format!("alpha = {got:?} in {:?}", started.elapsed()))
}

fn c3_waldschmidt() -> Outcome {
    let table = alpha_table(&fano_complement(), 6).map_err(|e| e.to_string())?;
    ensure(table.waldschmidt_upper == Rational::new(7, 3), format!("min = {}", table.waldschmidt_upper))?;
    ensure(table.attained_at == [3, 6], format!("attained at {:?}", table.attained_at))?;
    ensure(table.waldschmidt_exact == Some(Rational::new(7, 3)), "v/n not reported")?;
    Ok("min alpha(m)/m = 7/3 at m = 3, 6; v/n = 7/3".into())
}

fn verify_report(e: &ContainmentEngine, rep: &ContainmentReport) -> Result<(), String> {
    if let Some(w) = &rep.witness {
        let p = e.decomposition();
        ensure(member_of_symbolic(w, p, rep.m).unwrap(), format!("witness {w} not in I^({})", rep.m))?;
        ensure(
            !member_of_power_exhaustive(w, e.base_ideal(), rep.r, rep.slack).unwrap(),
            format!("witness {w} lies in the ordinary side"),
        )?;
    }
    Ok(())
}

fn c4_harbourne_huneke() -> Outcome {
    let e = engine(fano_complement(), Limits::default().with_time_budget(Duration::from_secs(600)));
    let r1 = e.check(ContainmentQuery::new(3, 1, 3)).map_err(|e| e.to_string())?;
    ensure(r1.holds, "I^(3) ⊄ M^3 I")?;
    let r2 = match e.check(ContainmentQuery::new(6, 2, 6)) {
        Ok(rep) => {
            ensure(rep.holds, format!("I^(6) ⊄ M^6 I^2, witness {:?}", rep.witness))?;
            format!("r=2 holds ({} generators, {} ms)", rep.generators_checked, rep.elapsed_ms.as_millis())
        }
        Err(ContainmentError::ResourceLimit(partial)) => {
            format!("r=2 hit a resource limit after {} generators", partial.generators_checked)
        }
        Err(other) => return Err(other.to_string()),
    };
    Ok(format!("r=1 holds; {r2}"))
}

fn c5_els() -> Outcome {
    let cover = engine(cover_ideal(&builtin_fano().hypergraph()), Limits::default());
    let comp = engine(fano_complement(), Limits::default());
    for (name, e, r) in [("cover", &cover, 1), ("cover", &cover, 2), ("complement", &comp, 1)] {
        let rep = e.check_els(r).map_err(|err| format!("{name} r={r}: {err}"))?;
        ensure(rep.holds, format!("{name} r={r} fails"))?;
    }
    Ok("cover r=1,2 and complement r=1 hold".into())
}

fn c6_colouring() -> Outcome {
    let budget = Duration::from_secs(10);
    let fano = builtin_fano().hypergraph();
    let sqs8 = builtin_sqs8().hypergraph();
    let t = Instant::now();
    ensure(chromatic_number(&fano) == Ok(3), "chi(Fano) != 3")?;
    within(t, budget, "chromatic number")?;
    let t = Instant::now();
    ensure(is_colourable(&fano, 2) == Colourability::NotColourable, "Fano 2-colourable")?;
    within(t, budget, "2-colourability")?;
    for c in [2, 3] {
        let t = Instant::now();
        ensure(is_coverable(&fano, c) == Coverability::NotCoverable, format!("Fano {c}-coverable"))?;
        within(t, budget, "coverability")?;
    }
    let t = Instant::now();
    ensure(is_coverable(&sqs8, 3) == Coverability::NotCoverable, "SQS(8) 3-coverable")?;
    within(t, budget, "SQS(8) coverability")?;
    Ok("chi(Fano)=3, Fano not 2-colourable, not 2-/3-coverable; SQS(8) not 3-coverable".into())
}

fn c7_witnesses() -> Outcome {
    let fano = engine(cover_ideal(&builtin_fano().hypergraph()), Limits::default());
    let rep = fano.check(ContainmentQuery::plain(3, 2)).map_err(|e| e.to_string())?;
    ensure(!rep.holds, "Fano J^(3) ⊆ J^2")?;
    ensure(rep.witness == Some(first_vars(7, 7)), format!("Fano witness {:?}", rep.witness))?;
    verify_report(&fano, &rep)?;

    let sqs = engine(cover_ideal(&builtin_sqs8().hypergraph()), Limits::default());
    let rep = sqs.check(ContainmentQuery::plain(3, 2)).map_err(|e| e.to_string())?;
    ensure(!rep.holds, "SQS(8) J^(3) ⊆ J^2")?;
    let x7 = first_vars(8, 7);
    ensure(rep.witness.as_ref() == Some(&x7), format!("SQS(8) witness {:?}", rep.witness))?;
    verify_report(&sqs, &rep)?;
    ensure(!member_of_power(&x7, sqs.base_ideal(), 2, 0).unwrap(), "x1..x7 in J^2 (memoized)")?;

    let rep = sqs.check(ContainmentQuery::plain(4, 3)).map_err(|e| e.to_string())?;
    ensure(!rep.holds, "SQS(8) J^(4) ⊆ J^3")?;
    verify_report(&sqs, &rep)?;
    Ok(format!(
        "Fano (3,2) and SQS(8) (3,2) witness x1..x7; SQS(8) (4,3) witness {}",
        rep.witness.unwrap().to_exponent_string()
    ))
}

fn c8_chudnovsky_demailly() -> Outcome {
    let e = engine(fano_complement(), Limits::default());
    let v = e.chudnovsky_check(None, 6).map_err(|e| e.to_string())?;
    ensure(v.all_hold && v.instances.len() == 5, "Chudnovsky fails")?;
    let waldschmidt = Rational::new(7, 3);
    for m in [1, 3, 4, 6] {
        let v = e.demailly_check(None, m, 6).map_err(|e| e.to_string())?;
        ensure(v.all_hold, format!("Demailly fails for m={m}"))?;
        let bound = demailly_rhs_formula(7, 3, m as i64);
        ensure(bound <= waldschmidt, format!("m={m}: {bound} > 7/3"))?;
    }
    Ok("Chudnovsky h=2..6, Demailly m in {1,3,4,6} h=2..6; all bounds <= 7/3".into())
}

fn c9_region() -> Outcome {
    let r = resurgence_region(3, 3, Rational::from_integer(2), Rational::from_integer(2)).map_err(|e| e.to_string())?;
    ensure(r.r_max == 9, format!("r_max = {}", r.r_max))?;
    for k in 1..=9 {
        ensure(r.s_max(k) == Rational::new(3 * (k + 3), 2), format!("s_max({k}) = {}", r.s_max(k)))?;
    }
    Ok("r_max = 9, s_max(r) = 3(r+3)/2".into())
}

fn c10_properties() -> Outcome {
    common::check_arithmetic(0xacce, 200);
    common::check_power_membership(0xacce, 200);
    common::check_symbolic(0xacce, 200);
    common::check_searches(0xacce, 100);
    common::check_cover_implies_colour(0xacce, 100);
    let e = engine(fano_complement(), Limits::default());
    let v = e.stable_harbourne_scan(1, 3).map_err(|e| e.to_string())?;
    ensure(v.all_hold, "stable containment fails for some r <= 3")?;
    let t = v.analytic_threshold.ok_or("no analytic threshold")?;
    ensure(t.ratio == Rational::new(7, 2) && t.min_r == 4, "wrong analytic threshold")?;
    Ok("200 ideals, 200 decompositions, 100 hypergraphs agree with oracles; stable scan r<=3, analytic r>=4".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("Fano validation", c1_fano_validation),
        ("alpha table of the Fano complement", c2_alpha_table),
        ("Waldschmidt constant 7/3", c3_waldschmidt),
        ("Harbourne-Huneke instance", c4_harbourne_huneke),
        ("ELS sanity", c5_els),
        ("colouring and coverability", c6_colouring),
        ("non-containment witnesses", c7_witnesses),
        ("Chudnovsky and Demailly", c8_chudnovsky_demailly),
        ("resurgence region", c9_region),
        ("property suites", c10_properties),
    ];
    // Written to the process stdout directly so the verdicts show up without
    // --nocapture.
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => writeln!(out, "PASS criterion {}: {name}: {detail}", i + 1).unwrap(),
            Err(why) => {
                writeln!(out, "FAIL criterion {}: {name}: {why}", i + 1).unwrap();
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
