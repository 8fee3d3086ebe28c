//! Sparse multivariate polynomials over [`Rat`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::grading::{Grading, WeightedDegree};
use super::rat::{int, rat_latex, Rat};
use super::symbol::Symbol;

/// A power product, stored as `(symbol, exponent)` pairs sorted by symbol with
/// no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Symbol, u32)>) -> Self {
        let mut acc: BTreeMap<Symbol, u32> = BTreeMap::new();
        for (s, e) in pairs {
            *acc.entry(s).or_default() += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, s: Symbol) -> u32 {
        self.0.iter().find(|&&(v, _)| v == s).map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(s, e) in &self.0 {
            let mut e = e;
            if j < other.0.len() && other.0[j].0 < s {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == s {
                if other.0[j].1 > e {
                    return None;
                }
                e -= other.0[j].1;
                j += 1;
            }
            if e > 0 {
                out.push((s, e));
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(s, e)| {
                    let f = other.exponent(s);
                    (f > 0).then_some((s, e.min(f)))
                })
                .collect(),
        )
    }

    pub fn without(&self, s: Symbol) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(v, _)| v != s).collect())
    }

    pub fn weighted_degree(&self, g: &Grading) -> Option<i64> {
        self.0.iter().map(|&(s, e)| g.weight(s).map(|w| w * e as i64)).sum()
    }

    fn write_text(&self, f: &mut impl fmt::Write) -> fmt::Result {
        for (k, &(s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_char('*')?;
            }
            if e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }

    fn latex(&self) -> String {
        self.0
            .iter()
            .map(|&(s, e)| {
                if e == 1 {
                    s.latex()
                } else {
                    format!("{}^{{{e}}}", s.latex())
                }
            })
            .collect()
    }
}

/// Graded lexicographic order: total degree first, then the exponent of the
/// earliest symbol decides (higher exponent is larger).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let mut i = 0;
        loop {
            match (a.get(i), b.get(i)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(sa, ea)), Some(&(sb, eb))) => {
                    if sa != sb {
                        // the side holding the earlier symbol has the larger exponent there
                        return if sa < sb { Ordering::Greater } else { Ordering::Less };
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
            i += 1;
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn var(s: Symbol) -> Self {
        Poly::term(Rat::one(), Monomial::var(s))
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending term order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading_term().map_or_else(Rat::zero, |(_, c)| c.clone())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Symbols that occur, in symbol order.
    pub fn vars(&self) -> Vec<Symbol> {
        let mut present = [false; Symbol::COUNT];
        for m in self.terms.keys() {
            for &(s, _) in m.factors() {
                present[s.index()] = true;
            }
        }
        Symbol::all().filter(|s| present[s.index()]).collect()
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    /// Coefficients with respect to `s`: entry `k` multiplies `s^k`.
    pub fn coeffs_in(&self, s: Symbol) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(s) as usize + 1];
        for (m, c) in &self.terms {
            out[m.exponent(s) as usize].add_term(m.without(s), c.clone());
        }
        out
    }

    pub fn lc_in(&self, s: Symbol) -> Poly {
        self.coeffs_in(s).pop().unwrap_or_default()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(n, k)| (n.mul(m), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading_term()?;
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    pub fn derivative(&self, s: Symbol) -> Poly {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(s);
            (e > 0).then(|| {
                let rest = m.without(s).mul(&Monomial::from_pairs([(s, e - 1)]));
                (rest, c * int(e as i64))
            })
        }))
    }

    pub fn eval(&self, point: &impl Fn(Symbol) -> Option<Rat>) -> Option<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(s, e) in m.factors() {
                t *= num_traits::pow(point(s)?, e as usize);
            }
            acc += t;
        }
        Some(acc)
    }

    pub fn weighted_degree(&self, g: &Grading) -> WeightedDegree {
        let mut deg = None;
        for m in self.terms.keys() {
            let Some(d) = m.weighted_degree(g) else {
                return WeightedDegree::Unweighted;
            };
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return WeightedDegree::Inhomogeneous,
                _ => {}
            }
        }
        deg.map_or(WeightedDegree::Zero, WeightedDegree::Homogeneous)
    }

    /// Positive rational `c` with `self / c` having coprime integer coefficients.
    pub fn rational_content(&self) -> Rat {
        use num_integer::Integer;
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            Rat::one()
        } else {
            Rat::new(num, den)
        }
    }

    pub fn latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if k > 0 {
                out.push('+');
            }
            let a = c.abs();
            if m.is_one() {
                out.push_str(&rat_latex(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&rat_latex(&a));
                }
                out.push_str(&m.latex());
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let a = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                m.write_text(f)?;
            }
        }
        Ok(())
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Self {
        Poly::constant(c)
    }
}

impl From<Symbol> for Poly {
    fn from(s: Symbol) -> Self {
        Poly::var(s)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { (&self).$f(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat::{half, rat};

    fn v(s: Symbol) -> Poly {
        Poly::var(s)
    }

    #[test]
    fn grlex_order() {
        let x21 = Monomial::var(Symbol::X21);
        let x31 = Monomial::var(Symbol::X31);
        let x32 = Monomial::var(Symbol::X32);
        let x21sq = x21.mul(&x21);
        assert!(x21 > x31);
        assert!(x31 > x32);
        assert!(x21sq > x32);
        assert!(x21.mul(&x31) > x21.mul(&x32));
        assert!(Monomial::one() < x32);
    }

    #[test]
    fn display_orders_terms() {
        let p = &(&v(Symbol::X21) * &v(Symbol::X21)) + &v(Symbol::X32);
        assert_eq!(p.to_string(), "x21^2 + x32");
        let q = &v(Symbol::X21).scale(&half()) - &v(Symbol::X31);
        assert_eq!(q.to_string(), "1/2*x21 - x31");
        assert_eq!(q.latex(), "\\frac{1}{2}x_{21}-x_{31}");
        assert_eq!(Poly::constant(rat(-3, 4)).to_string(), "-3/4");
    }

    #[test]
    fn exact_division() {
        let a = &v(Symbol::X21) + &v(Symbol::X31);
        let b = &v(Symbol::X21) - &v(Symbol::X32);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&b), None);
    }

    #[test]
    fn derivative_and_coeffs() {
        let x = v(Symbol::X21);
        let p = &(&x * &x) * &v(Symbol::X31);
        assert_eq!(p.derivative(Symbol::X21), (&x * &v(Symbol::X31)).scale(&int(2)));
        let cs = p.coeffs_in(Symbol::X21);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], v(Symbol::X31));
        assert!(cs[0].is_zero());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let p = &v(Symbol::X21) + &Poly::one();
        assert_eq!(p.pow(3), &(&p * &p) * &p);
        assert_eq!(p.pow(0), Poly::one());
    }
}
