//! Multivariate gcd over the rationals by recursive content removal and a
//! primitive pseudo-remainder sequence in one main variable.

use super::poly::{Monomial, Poly};
use super::symbol::Symbol;

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    gcd_rec(a, b).monic()
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.is_monomial() {
        return monomial_gcd(a, b);
    }
    if b.is_monomial() {
        return monomial_gcd(b, a);
    }
    if a == b {
        return a.clone();
    }

    let va = a.vars();
    let vb = b.vars();
    // a variable occurring on one side only divides out through the content
    if let Some(&s) = va.iter().find(|s| !vb.contains(s)) {
        return gcd_rec(&content_in(a, s), b);
    }
    if let Some(&s) = vb.iter().find(|s| !va.contains(s)) {
        return gcd_rec(a, &content_in(b, s));
    }

    // cheap divisibility shortcut
    if a.total_degree() >= b.total_degree() {
        if a.div_exact(b).is_some() {
            return b.clone();
        }
    } else if b.div_exact(a).is_some() {
        return a.clone();
    }

    let main = *va
        .iter()
        .min_by_key(|&&s| (a.degree_in(s).min(b.degree_in(s)), s))
        .expect("non-constant polynomial has a variable");

    let ca = content_in(a, main);
    let cb = content_in(b, main);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let gc = gcd_rec(&ca, &cb);
    let gp = primitive_prs(pa, pb, main);
    &gc * &gp
}

fn monomial_gcd(mono: &Poly, other: &Poly) -> Poly {
    let (m, _) = mono.leading_term().expect("monomial is nonzero");
    let g = other.terms().fold(m.clone(), |acc, (n, _)| acc.gcd(n));
    Poly::term(num_traits::One::one(), g)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `s`.
pub fn content_in(p: &Poly, s: Symbol) -> Poly {
    let mut coeffs: Vec<Poly> = p.coeffs_in(s).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| (c.num_terms(), c.total_degree()));
    let mut acc = Poly::zero();
    for c in &coeffs {
        acc = gcd_rec(&acc, c);
        if acc.is_constant() {
            return Poly::one();
        }
    }
    acc.monic()
}

fn primitive_part_in(p: &Poly, s: Symbol) -> Poly {
    let c = content_in(p, s);
    p.div_exact(&c).expect("content divides")
}

/// `lc(b)^k * a mod b` with respect to `s`.
pub fn pseudo_remainder(a: &Poly, b: &Poly, s: Symbol) -> Poly {
    let db = b.degree_in(s);
    let lcb = b.lc_in(s);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(s) >= db {
        let dr = r.degree_in(s);
        let lcr = r.lc_in(s);
        let shift = Monomial::from_pairs([(s, dr - db)]);
        let top = (&lcr * b).mul_monomial(&shift, &num_traits::One::one());
        r = &(&r * &lcb) - &top;
    }
    r
}

fn primitive_prs(a: Poly, b: Poly, s: Symbol) -> Poly {
    let (mut a, mut b) = if a.degree_in(s) >= b.degree_in(s) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if b.degree_in(s) == 0 {
            return Poly::one();
        }
        let r = pseudo_remainder(&a, &b, s);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(s) == 0 {
            return Poly::one();
        }
        a = b;
        b = primitive_part_in(&r, s);
    }
}
