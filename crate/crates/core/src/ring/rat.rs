use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn half() -> Rat {
    rat(1, 2)
}

/// Parses `-3`, `3/4` or `-7/2`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg}: `{s}`"),
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| bad("bad rational numerator"))?;
    let den: BigInt = d.parse().map_err(|_| bad("bad rational denominator"))?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rat::new(num, den))
}

/// Parses a comma-separated list of rationals.
pub fn parse_rat_list(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(parse_rat).collect()
}

/// LaTeX form: `\frac{1}{2}`, `-\frac{3}{4}`, `5`.
pub fn rat_latex(r: &Rat) -> String {
    if r.is_integer() {
        return r.to_integer().to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
}

pub fn is_unit_magnitude(r: &Rat) -> bool {
    r.abs().is_one()
}

/// Serializes a rational as its decimal string `n/d`.
pub fn ser_rat<Z: serde::Serializer>(r: &Rat, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
    s.serialize_str(&r.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat(" -6/8 ").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat("5").unwrap(), int(5));
        assert_eq!(parse_rat("1/0"), Err(Error::DivisionByZero));
        assert!(parse_rat("x").is_err());
        assert_eq!(parse_rat_list("1,0,1/2").unwrap(), vec![int(1), int(0), half()]);
    }

    #[test]
    fn latex_forms() {
        assert_eq!(rat_latex(&half()), "\\frac{1}{2}");
        assert_eq!(rat_latex(&rat(-3, 4)), "-\\frac{3}{4}");
        assert_eq!(rat_latex(&int(-2)), "-2");
    }
}
