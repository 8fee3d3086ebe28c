//! Normalized quotients of polynomials.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::grading::{Grading, WeightedDegree};
use super::poly::{Monomial, Poly};
use super::rat::Rat;
use super::symbol::Symbol;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic in the graded
/// lexicographic order. The zero function is `0 / 1`.
#[derive(Debug, Clone)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    /// Builds and normalizes `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> RatFn {
        if num.is_zero() {
            return RatFn::zero();
        }
        if let Some(c) = den.as_constant() {
            return RatFn {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff().recip();
        RatFn {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    /// Wraps a pair already known to be in normal form.
    fn raw(num: Poly, den: Poly) -> RatFn {
        RatFn { num, den }
    }

    pub fn zero() -> RatFn {
        RatFn::raw(Poly::zero(), Poly::one())
    }

    pub fn one() -> RatFn {
        RatFn::raw(Poly::one(), Poly::one())
    }

    pub fn constant(c: Rat) -> RatFn {
        RatFn::raw(Poly::constant(c), Poly::one())
    }

    pub fn var(s: Symbol) -> RatFn {
        RatFn::raw(Poly::var(s), Poly::one())
    }

    pub fn from_poly(p: Poly) -> RatFn {
        RatFn::raw(p, Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_constant() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn vars(&self) -> Vec<Symbol> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort();
        v.dedup();
        v
    }

    pub fn recip(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFn) -> Result<RatFn> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn::raw(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: i32) -> Result<RatFn> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFn::raw(base.num.pow(k), base.den.pow(k)))
    }

    /// Substitutes rational functions for symbols; unbound symbols stay fixed.
    pub fn substitute(&self, bindings: &HashMap<Symbol, RatFn>) -> Result<RatFn> {
        let (nn, nd) = subst_poly(&self.num, bindings);
        let (dn, dd) = subst_poly(&self.den, bindings);
        if dn.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        Ok(Self::normalized(&nn * &dd, &nd * &dn))
    }

    /// Evaluates at a rational point; every occurring symbol must be bound.
    pub fn eval(&self, point: &HashMap<Symbol, Rat>) -> Result<Rat> {
        let lookup = |s: Symbol| point.get(&s).cloned();
        let missing = || Error::Config("evaluation point misses a symbol".into());
        let n = self.num.eval(&lookup).ok_or_else(missing)?;
        let d = self.den.eval(&lookup).ok_or_else(missing)?;
        if d.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        Ok(n / d)
    }

    pub fn derivative(&self, s: Symbol) -> RatFn {
        let dn = self.num.derivative(s);
        if self.den.is_constant() {
            return RatFn::raw(dn, self.den.clone());
        }
        let dd = self.den.derivative(s);
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalized(top, &self.den * &self.den)
    }

    /// `deg(num) - deg(den)` when both are homogeneous.
    pub fn weighted_degree(&self, g: &Grading) -> WeightedDegree {
        match (self.num.weighted_degree(g), self.den.weighted_degree(g)) {
            (WeightedDegree::Zero, _) => WeightedDegree::Zero,
            (WeightedDegree::Homogeneous(a), WeightedDegree::Homogeneous(b)) => WeightedDegree::Homogeneous(a - b),
            (WeightedDegree::Unweighted, _) | (_, WeightedDegree::Unweighted) => WeightedDegree::Unweighted,
            _ => WeightedDegree::Inhomogeneous,
        }
    }

    /// Equality by cross-multiplication, independent of normalization.
    pub fn cross_eq(&self, other: &RatFn) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn latex(&self) -> String {
        if self.den.is_one() {
            self.num.latex()
        } else {
            format!("\\frac{{{}}}{{{}}}", self.num.latex(), self.den.latex())
        }
    }
}

/// Substitutes into a polynomial, returning an unnormalized `(num, den)`.
fn subst_poly(p: &Poly, bindings: &HashMap<Symbol, RatFn>) -> (Poly, Poly) {
    let vars: Vec<Symbol> = p.vars().into_iter().filter(|s| bindings.contains_key(s)).collect();
    // common denominator: prod over bound symbols of den(s)^deg_s(p)
    let max_deg: Vec<u32> = vars.iter().map(|&s| p.degree_in(s)).collect();
    let mut den = Poly::one();
    for (s, &d) in vars.iter().zip(&max_deg) {
        let b = &bindings[s];
        if !b.den.is_one() {
            den = &den * &b.den.pow(d);
        }
    }
    let mut num_pows: HashMap<(Symbol, u32), Poly> = HashMap::new();
    let mut den_pows: HashMap<(Symbol, u32), Poly> = HashMap::new();
    let mut num = Poly::zero();
    for (m, c) in p.terms() {
        let mut free = Vec::new();
        let mut t = Poly::constant(c.clone());
        for &(s, e) in m.factors() {
            match bindings.get(&s) {
                None => free.push((s, e)),
                Some(b) => {
                    let np = num_pows.entry((s, e)).or_insert_with(|| b.num.pow(e));
                    t = &t * np;
                    if !b.den.is_one() {
                        let md = max_deg[vars.iter().position(|&v| v == s).unwrap()];
                        let dp = den_pows.entry((s, md - e)).or_insert_with(|| b.den.pow(md - e));
                        t = &t * dp;
                    }
                }
            }
        }
        // bound symbols absent from this monomial still need their full den power
        for (k, &s) in vars.iter().enumerate() {
            let b = &bindings[&s];
            if !b.den.is_one() && m.exponent(s) == 0 {
                let md = max_deg[k];
                let dp = den_pows.entry((s, md)).or_insert_with(|| b.den.pow(md));
                t = &t * dp;
            }
        }
        if !free.is_empty() {
            t = t.mul_monomial(&Monomial::from_pairs(free), &Rat::one());
        }
        num = &num + &t;
    }
    (num, den)
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        (self.num == other.num && self.den == other.den) || self.cross_eq(other)
    }
}

impl Eq for RatFn {}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            if p.num_terms() > 1 || p.leading_coeff() < Rat::zero() {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl FromStr for RatFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_ratfn(s)
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        RatFn::from_poly(p)
    }
}

impl From<Rat> for RatFn {
    fn from(c: Rat) -> Self {
        RatFn::constant(c)
    }
}

impl From<Symbol> for RatFn {
    fn from(s: Symbol) -> Self {
        RatFn::var(s)
    }
}

impl Add<&RatFn> for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFn::raw(num, Poly::one());
            }
            return RatFn::normalized(num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFn::raw(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return RatFn::raw(&(&rhs.num * &self.den) + &self.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFn::normalized(num, &(&a * &b) * &g)
    }
}

impl Sub<&RatFn> for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul<&RatFn> for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFn::raw(&self.num * &rhs.num, Poly::one());
        }
        // cross-cancel before multiplying
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading_coeff().recip();
        RatFn::raw(num.scale(&lc), den.scale(&lc))
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn::raw(-&self.num, self.den.clone())
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

impl Div<&RatFn> for &RatFn {
    type Output = RatFn;
    /// Panics on a zero divisor; use [`RatFn::checked_div`] for a `Result`.
    fn div(self, rhs: &RatFn) -> RatFn {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<RatFn> for RatFn {
            type Output = RatFn;
            fn $f(self, rhs: RatFn) -> RatFn { (&self).$f(&rhs) }
        }
        impl $tr<&RatFn> for RatFn {
            type Output = RatFn;
            fn $f(self, rhs: &RatFn) -> RatFn { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Zero for RatFn {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFn {
    fn one() -> Self {
        RatFn::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat::{half, int};

    fn v(s: Symbol) -> RatFn {
        RatFn::var(s)
    }

    fn disc() -> RatFn {
        &(&v(Symbol::X21) * &v(Symbol::X21)) + &v(Symbol::X32)
    }

    fn x_alpha() -> RatFn {
        (v(Symbol::X21).scale(&half()) - v(Symbol::X31)) / disc()
    }

    #[test]
    fn additive_inverse() {
        assert!((&v(Symbol::X21) + &(-v(Symbol::X21))).is_zero());
    }

    #[test]
    fn cancellation() {
        let q = disc() / v(Symbol::X21);
        let r = &q * &v(Symbol::X21);
        assert_eq!(r, disc());
        assert!(r.is_polynomial());
    }

    // oracle: cross-multiplied equality against an unnormalized build
    #[test]
    fn normalized_equals_unnormalized_build() {
        let q = (-v(Symbol::X32)) / disc();
        let extra = &v(Symbol::X31) + &RatFn::constant(int(2));
        let unnormalized = RatFn::raw(
            (-Poly::var(Symbol::X32)) * extra.num().clone(),
            disc().num().clone() * extra.num().clone(),
        );
        assert!(q.cross_eq(&unnormalized));
        assert_eq!(q, unnormalized);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(v(Symbol::X21).checked_div(&RatFn::zero()), Err(Error::DivisionByZero));
        assert_eq!(
            RatFn::new(Poly::one(), Poly::zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn denominator_is_monic() {
        let q = v(Symbol::X21) / disc().scale(&int(-4));
        assert_eq!(q.den().leading_coeff(), Rat::one());
        assert_eq!(q.num().leading_coeff(), Rat::new((-1).into(), 4.into()));
    }

    #[test]
    fn substitute_single_variable() {
        let b = HashMap::from([(Symbol::X21, &v(Symbol::T) * &v(Symbol::X21))]);
        assert_eq!(v(Symbol::X21).substitute(&b).unwrap(), &v(Symbol::T) * &v(Symbol::X21));
    }

    #[test]
    fn substitute_scaling_of_x_alpha() {
        let t = v(Symbol::T);
        let b = HashMap::from([
            (Symbol::X21, &t * &v(Symbol::X21)),
            (Symbol::X31, &t * &v(Symbol::X31)),
            (Symbol::X32, &(&t * &t) * &v(Symbol::X32)),
        ]);
        let scaled = x_alpha().substitute(&b).unwrap();
        assert_eq!(scaled, x_alpha() / t);
    }

    #[test]
    fn substitute_at_rational_point() {
        let b = HashMap::from([
            (Symbol::X21, RatFn::constant(int(1))),
            (Symbol::X31, RatFn::zero()),
            (Symbol::X32, RatFn::zero()),
        ]);
        assert_eq!(x_alpha().substitute(&b).unwrap(), RatFn::constant(half()));
    }

    #[test]
    fn vanishing_denominator_detected() {
        let b = HashMap::from([(Symbol::X32, -(&v(Symbol::X21) * &v(Symbol::X21)))]);
        assert_eq!(x_alpha().substitute(&b), Err(Error::VanishingDenominator));
    }

    #[test]
    fn weighted_degrees() {
        let g = Grading::d0_scaling();
        assert_eq!(disc().weighted_degree(&g), WeightedDegree::Homogeneous(2));
        assert_eq!(RatFn::one().weighted_degree(&g), WeightedDegree::Homogeneous(0));
        assert_eq!(x_alpha().weighted_degree(&g), WeightedDegree::Homogeneous(-1));
        let inhom = &v(Symbol::X21) + &v(Symbol::X32);
        assert_eq!(inhom.weighted_degree(&g), WeightedDegree::Inhomogeneous);
    }

    #[test]
    fn quotient_rule() {
        let d = x_alpha().derivative(Symbol::X31);
        assert_eq!(d, -(RatFn::one() / disc()));
    }

    #[test]
    fn display_and_latex() {
        assert_eq!(x_alpha().to_string(), "(1/2*x21 - x31)/(x21^2 + x32)");
        assert_eq!(
            x_alpha().latex(),
            "\\frac{\\frac{1}{2}x_{21}-x_{31}}{x_{21}^{2}+x_{32}}"
        );
    }
}
