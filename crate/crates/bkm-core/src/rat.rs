//! Exact rational scalars and their string form.
//!
//! All arithmetic in this crate is exact: scalars are arbitrary-precision
//! rationals, serialized as `"p/q"` strings (or `"p"` when the denominator
//! is 1) so that no precision is lost in JSON round-trips.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// The scalar type used everywhere in this crate.
pub type Rat = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"`, `"-p"` or `"p/q"` into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator: {s:?}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational denominator: {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in rational: {s:?}"));
    }
    Ok(Rat::new(n, d))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise (q > 0).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True iff `r` is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// True iff `r` is a non-negative integer.
pub fn is_nonneg_integer(r: &Rat) -> bool {
    is_integer(r) && !r.is_negative()
}
