//! Built-in list of reproducible claims about the bundled designs.

use std::time::Instant;

use serde::Serialize;

use crate::containment::{
    demailly_rhs_formula, resurgence_region, ContainmentEngine, ContainmentError, ContainmentQuery, HarbourneHunekeForm,
};
use crate::hypergraph::{
    builtin_fano, builtin_sqs8, builtin_sts7, chromatic_number, is_colourable, is_coverable, Colourability,
    Coverability,
};
use crate::limits::Limits;
use crate::monomial::Monomial;
use crate::rational::Rational;
use crate::symbolic::{alpha_table, complement_ideal, cover_ideal, steiner_complement_alpha, PrimeDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

type Check = fn(&Limits) -> Result<(bool, String), String>;

pub struct Claim {
    pub id: &'static str,
    pub summary: &'static str,
    check: Check,
}

impl Claim {
    pub fn run(&self, limits: &Limits) -> ClaimResult {
        let started = Instant::now();
        let (passed, detail) = match (self.check)(limits) {
            Ok(outcome) => outcome,
            Err(e) => (false, format!("error: {e}")),
        };
        ClaimResult { id: self.id.to_string(), passed, detail, elapsed_ms: started.elapsed().as_millis() }
    }
}

pub fn claims() -> Vec<Claim> {
    vec![
        Claim {
            id: "validate-fano",
            summary: "Fano plane is an S(2,3,7) with 7 blocks and 28 complement blocks",
            check: validate_fano,
        },
        Claim { id: "validate-sqs8", summary: "SQS(8) is an S(3,4,8) with 14 blocks", check: validate_sqs8 },
        Claim {
            id: "alpha-fano",
            summary: "initial degrees of the Fano complement ideal for m = 1..6",
            check: alpha_fano,
        },
        Claim {
            id: "alpha-sqs8",
            summary: "initial degrees of the SQS(8) complement ideal match the closed form",
            check: alpha_sqs8,
        },
        Claim { id: "waldschmidt-fano", summary: "min alpha(m)/m over m <= 6 is v/n = 7/3", check: waldschmidt_fano },
        Claim { id: "chromatic-fano", summary: "chi(Fano) = 3 and Fano is not 2-colourable", check: chromatic_fano },
        Claim { id: "coverability-fano", summary: "Fano is neither 2- nor 3-coverable", check: coverability_fano },
        Claim { id: "coverability-sqs8", summary: "SQS(8) is not 3-coverable", check: coverability_sqs8 },
        Claim {
            id: "noncontainment-fano-cover",
            summary: "J^(3) not in J^2 for the Fano cover ideal, witness x1..x7",
            check: noncontainment_fano,
        },
        Claim {
            id: "noncontainment-sqs8-cover",
            summary: "J^(3) not in J^2 and J^(4) not in J^3 for the SQS(8) cover ideal",
            check: noncontainment_sqs8,
        },
        Claim {
            id: "harbourne-huneke-fano",
            summary: "I^(3r) in M^(3r) I^r for the Fano complement, r = 1, 2",
            check: harbourne_huneke_fano,
        },
        Claim {
            id: "els-fano",
            summary: "I^(hr) in I^r for the Fano cover (r = 1, 2) and complement (r = 1)",
            check: els_fano,
        },
        Claim {
            id: "stable-harbourne-fano",
            summary: "I^(hr-h+1) in I^r for the Fano complement, r = 1..3, threshold 7/2",
            check: stable_fano,
        },
        Claim {
            id: "chudnovsky-fano",
            summary: "Chudnovsky bound for the Fano complement, h <= 6",
            check: chudnovsky_fano,
        },
        Claim {
            id: "demailly-fano",
            summary: "Demailly bound for the Fano complement, h <= 6, m in {1,3,4,6}",
            check: demailly_fano,
        },
        Claim {
            id: "resurgence-region",
            summary: "region for h = n = 3, r1 = 2, s0/r0 = 2: r <= 9, s <= 3(r+3)/2",
            check: region,
        },
    ]
}

/// Runs every claim, or only those whose id is listed. Unknown ids are
/// reported as failures.
pub fn run_claims(only: &[String], limits: &Limits) -> Vec<ClaimResult> {
    let all = claims();
    if only.is_empty() {
        return all.iter().map(|c| c.run(limits)).collect();
    }
    only.iter()
        .map(|id| match all.iter().find(|c| c.id == id) {
            Some(c) => c.run(limits),
            None => {
                ClaimResult { id: id.clone(), passed: false, detail: "unknown claim id".to_string(), elapsed_ms: 0 }
            }
        })
        .collect()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn engine(p: PrimeDecomposition, limits: &Limits) -> Result<ContainmentEngine, String> {
    ContainmentEngine::new(p, *limits).map_err(err)
}

fn fano_complement(limits: &Limits) -> Result<ContainmentEngine, String> {
    engine(complement_ideal(&builtin_fano()).map_err(err)?, limits)
}

fn validate_fano(_: &Limits) -> Result<(bool, String), String> {
    let s = builtin_fano();
    let c = s.complement_blocks().len();
    let ok = s.blocks().len() == 7 && c == 28 && builtin_sts7().blocks().len() == 7;
    Ok((ok, format!("|B|={} complement={c}", s.blocks().len())))
}

fn validate_sqs8(_: &Limits) -> Result<(bool, String), String> {
    let s = builtin_sqs8();
    Ok((s.blocks().len() == 14, format!("|B|={}", s.blocks().len())))
}

fn alpha_fano(_: &Limits) -> Result<(bool, String), String> {
    let p = complement_ideal(&builtin_fano()).map_err(err)?;
    let table = alpha_table(&p, 6).map_err(err)?;
    let got: Vec<u64> = table.entries.iter().map(|&(_, a)| a).collect();
    let detail = table.entries.iter().map(|(m, a)| format!("{m}:{a}")).collect::<Vec<_>>().join(" ");
    Ok((got == [4, 6, 7, 11, 13, 14], detail))
}

fn alpha_sqs8(_: &Limits) -> Result<(bool, String), String> {
    let p = complement_ideal(&builtin_sqs8()).map_err(err)?;
    let table = alpha_table(&p, 5).map_err(err)?;
    let ok = table.entries.iter().all(|&(m, a)| a == steiner_complement_alpha(8, 4, m as u64));
    let detail = table.entries.iter().map(|(m, a)| format!("{m}:{a}")).collect::<Vec<_>>().join(" ");
    Ok((ok, detail))
}

fn waldschmidt_fano(_: &Limits) -> Result<(bool, String), String> {
    let p = complement_ideal(&builtin_fano()).map_err(err)?;
    let table = alpha_table(&p, 6).map_err(err)?;
    let ok = table.waldschmidt_upper == Rational::new(7, 3)
        && table.attained_at == [3, 6]
        && table.waldschmidt_exact == Some(Rational::new(7, 3));
    Ok((ok, format!("{} at m={:?}", table.waldschmidt_upper, table.attained_at)))
}

fn chromatic_fano(_: &Limits) -> Result<(bool, String), String> {
    let h = builtin_fano().hypergraph();
    let chi = chromatic_number(&h).map_err(err)?;
    let two = is_colourable(&h, 2);
    Ok((chi == 3 && two == Colourability::NotColourable, format!("chi={chi}")))
}

fn coverability_fano(_: &Limits) -> Result<(bool, String), String> {
    let h = builtin_fano().hypergraph();
    let ok = [2, 3].iter().all(|&c| is_coverable(&h, c) == Coverability::NotCoverable);
    Ok((ok, "c=2 NotCoverable, c=3 NotCoverable".to_string()))
}

fn coverability_sqs8(_: &Limits) -> Result<(bool, String), String> {
    let h = builtin_sqs8().hypergraph();
    Ok((is_coverable(&h, 3) == Coverability::NotCoverable, "c=3 NotCoverable".to_string()))
}

fn witness_of(e: &ContainmentEngine, m: u32, r: u32) -> Result<Option<Monomial>, String> {
    let rep = e.check(ContainmentQuery::plain(m, r)).map_err(err)?;
    Ok(if rep.holds { None } else { rep.witness })
}

fn product_of_first(k: usize, n: usize) -> Monomial {
    Monomial::new((0..k).map(|i| u32::from(i < n)).collect())
}

fn noncontainment_fano(limits: &Limits) -> Result<(bool, String), String> {
    let e = engine(cover_ideal(&builtin_fano().hypergraph()), limits)?;
    let w = witness_of(&e, 3, 2)?;
    let expected = product_of_first(7, 7);
    let ok = w.as_ref() == Some(&expected);
    Ok((ok, format!("witness {}", w.map_or("none".into(), |w| w.to_exponent_string()))))
}

fn noncontainment_sqs8(limits: &Limits) -> Result<(bool, String), String> {
    use crate::monomial::member_of_power_exhaustive;
    use crate::symbolic::member_of_symbolic;
    let p = cover_ideal(&builtin_sqs8().hypergraph());
    let e = engine(p.clone(), limits)?;
    let w3 = witness_of(&e, 3, 2)?;
    let w4 = witness_of(&e, 4, 3)?;
    let x7 = product_of_first(8, 7);
    let x7_ok = member_of_symbolic(&x7, &p, 3).map_err(err)?
        && !member_of_power_exhaustive(&x7, e.base_ideal(), 2, 0).map_err(err)?;
    let ok = w3.is_some() && w4.is_some() && x7_ok;
    Ok((
        ok,
        format!(
            "(3,2) witness {}, (4,3) witness {}, x1..x7 separates: {x7_ok}",
            w3.map_or("none".into(), |w| w.to_exponent_string()),
            w4.map_or("none".into(), |w| w.to_exponent_string())
        ),
    ))
}

fn harbourne_huneke_fano(limits: &Limits) -> Result<(bool, String), String> {
    let e = fano_complement(limits)?;
    let v = e.harbourne_huneke_scan(1, 2, HarbourneHunekeForm::First).map_err(err)?;
    Ok((v.all_hold, format!("r=1..2 all hold: {}", v.all_hold)))
}

fn els_fano(limits: &Limits) -> Result<(bool, String), String> {
    let cover = engine(cover_ideal(&builtin_fano().hypergraph()), limits)?;
    let comp = fano_complement(limits)?;
    for (e, r) in [(&cover, 1), (&cover, 2), (&comp, 1)] {
        match e.check_els(r) {
            Ok(_) => {}
            Err(ContainmentError::InternalInconsistency(msg)) => return Ok((false, msg)),
            Err(other) => return Err(err(other)),
        }
    }
    Ok((true, "cover r=1,2 and complement r=1 hold".to_string()))
}

fn stable_fano(limits: &Limits) -> Result<(bool, String), String> {
    let v = fano_complement(limits)?.stable_harbourne_scan(1, 3).map_err(err)?;
    let t = v.analytic_threshold.ok_or("missing threshold")?;
    let ok = v.all_hold && t.ratio == Rational::new(7, 2) && t.min_r == 4;
    Ok((ok, format!("r=1..3 hold: {}, analytic for r >= {} ({})", v.all_hold, t.min_r, t.ratio)))
}

fn chudnovsky_fano(limits: &Limits) -> Result<(bool, String), String> {
    let v = fano_complement(limits)?.chudnovsky_check(None, 6).map_err(err)?;
    Ok((v.all_hold, format!("h=2..6 hold: {}", v.all_hold)))
}

fn demailly_fano(limits: &Limits) -> Result<(bool, String), String> {
    let e = fano_complement(limits)?;
    let mut parts = Vec::new();
    let mut ok = true;
    for m in [1, 3, 4, 6] {
        let v = e.demailly_check(None, m, 6).map_err(err)?;
        ok &= v.all_hold;
        parts.push(format!("m={m}: bound {}", demailly_rhs_formula(7, 3, m as i64)));
    }
    Ok((ok, parts.join(", ")))
}

fn region(_: &Limits) -> Result<(bool, String), String> {
    let r = resurgence_region(3, 3, Rational::from_integer(2), Rational::from_integer(2)).map_err(err)?;
    let ok = r.r_max == 9 && (1..=9).all(|k| r.s_max(k) == Rational::new(3 * (k + 3), 2));
    Ok((ok, format!("r_max={} s_max(r)=(r+3)*{}", r.r_max, r.asymptotic_resurgence)))
}
