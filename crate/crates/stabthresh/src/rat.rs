//! Exact rational scalars: parsing, formatting, and small integer helpers.
//!
//! Every quantity that feeds a threshold verdict is a [`Rat`]; floating
//! point never appears in a computation path.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};
use num::Integer;
use std::fmt::Write as _;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;
/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Rational from an integer literal.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Rational `p/q` from integer literals. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// Renders a rational as `p` or `p/q`, lowest terms, `q > 0`.
pub fn fmt_rat(r: &Rat) -> String {
    let mut s = String::new();
    write!(s, "{}", r.numer()).unwrap();
    if !r.denom().is_one() {
        write!(s, "/{}", r.denom()).unwrap();
    }
    s
}

/// Parses `p`, `-p`, or `p/q` into an exact rational.
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty rational literal".to_string());
    }
    let (num_str, den_str) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (t, None),
    };
    let numer: Int = num_str
        .parse()
        .map_err(|_| format!("invalid integer `{num_str}` in rational `{t}`"))?;
    let denom: Int = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| format!("invalid denominator `{d}` in rational `{t}`"))?,
        None => Int::one(),
    };
    if denom.is_zero() {
        return Err(format!("zero denominator in rational `{t}`"));
    }
    Ok(Rat::new(numer, denom))
}

/// Greatest common divisor of a slice, always nonnegative; 0 for all-zero input.
pub fn gcd_all(values: &[Int]) -> Int {
    let mut g = Int::zero();
    for v in values {
        g = g.gcd(v);
    }
    g
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denominator_lcm(values: &[Rat]) -> Int {
    let mut l = Int::one();
    for v in values {
        l = l.lcm(v.denom());
    }
    l
}

/// Scales a rational vector to a primitive integer vector pointing the same way.
///
/// Returns `None` for the zero vector.
pub fn primitive_direction(coords: &[Rat]) -> Option<Vec<Int>> {
    if coords.iter().all(|c| c.is_zero()) {
        return None;
    }
    let l = denominator_lcm(coords);
    let ints: Vec<Int> = coords.iter().map(|c| (c * &l).to_integer()).collect();
    let g = gcd_all(&ints);
    Some(ints.iter().map(|v| v / &g).collect())
}
