//! Exact rationals for degree ratios and resurgence bounds.

use num_rational::Ratio;
use num_traits::Zero;
use serde::Serializer;

pub type Rational = Ratio<i64>;

/// Parses `a/b` or a bare integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => s.parse::<i64>().ok().map(Rational::from_integer),
    }
}

/// Smallest integer `>= x`.
pub fn ceil(x: Rational) -> i64 {
    x.ceil().to_integer()
}

pub(crate) fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub(crate) fn serialize_opt<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}
