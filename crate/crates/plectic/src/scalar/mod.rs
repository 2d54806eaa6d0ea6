//! Exact rational functions in chart coordinates.

mod chart;
mod expr;
mod parse;
pub mod poly;

pub use chart::Chart;
pub use expr::{Display, ScalarExpr};
pub use parse::{eval_scalar, parse_ast, parse_expr, Ast};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational number.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let t = s.trim();
    let bad = || crate::Error::Invalid(format!("`{s}` is not a rational number"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Nearest `f64` to a rational.
pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}
