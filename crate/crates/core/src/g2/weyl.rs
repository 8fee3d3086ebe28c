//! The Weyl group (dihedral of order 12), reduced words, and canonical
//! representatives built from the simple root vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::g2::lie::LieCoords;
use crate::g2::roots::{bilinear_form, root_vector, CharLattice, Root};
use crate::mat7::Mat7;
use crate::ring::{int, Poly, Rat, RatFn, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    Alpha,
    Beta,
}

impl Letter {
    pub fn root(self) -> Root {
        match self {
            Letter::Alpha => Root::ALPHA,
            Letter::Beta => Root::BETA,
        }
    }

    /// Matrix of the reflection on coefficient pairs `(p, q)` of `pα + qβ`.
    fn reflection(self) -> [[i64; 2]; 2] {
        match self {
            // s_α(pα + qβ) = (-p + 3q)α + qβ
            Letter::Alpha => [[-1, 3], [0, 1]],
            // s_β(pα + qβ) = pα + (p - q)β
            Letter::Beta => [[1, 0], [1, -1]],
        }
    }

    fn other(self) -> Letter {
        match self {
            Letter::Alpha => Letter::Beta,
            Letter::Beta => Letter::Alpha,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::Alpha => "α",
            Letter::Beta => "β",
        })
    }
}

/// A word `w_1 ⋯ w_r` in the simple reflections; acts by applying `w_r` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WeylWord(pub Vec<Letter>);

impl WeylWord {
    pub fn empty() -> Self {
        WeylWord(Vec::new())
    }

    pub fn alternating(first: Letter, len: usize) -> Self {
        let mut out = Vec::with_capacity(len);
        let mut l = first;
        for _ in 0..len {
            out.push(l);
            l = l.other();
        }
        WeylWord(out)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// The group element as an integer matrix on `(p, q)`.
    pub fn action_matrix(&self) -> [[i64; 2]; 2] {
        self.0
            .iter()
            .fold([[1, 0], [0, 1]], |acc, l| mat2_mul(acc, l.reflection()))
    }

    pub fn element(&self) -> WeylElem {
        WeylElem(self.action_matrix())
    }

    pub fn length(&self) -> usize {
        table().length_of(self.element())
    }

    pub fn is_reduced(&self) -> bool {
        self.len() == self.length()
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }

    /// Fails with a message naming a shorter word for the same element.
    pub fn check_reduced(&self) -> Result<()> {
        let e = self.element();
        let t = table();
        let len = t.length_of(e);
        if len == self.len() {
            return Ok(());
        }
        let shorter = &t.entry(e).reduced_words[0];
        Err(Error::NotReduced(format!(
            "`{self}` has length {} but equals the reduced word `{shorter}` of length {len}",
            self.len()
        )))
    }
}

fn mat2_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for WeylWord {
    type Err = Error;

    /// Accepts `α`/`a`/`A` and `β`/`b`/`B`, ignoring separators; `e` or the
    /// empty string is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "e" || t == "1" {
            return Ok(WeylWord::empty());
        }
        let mut out = Vec::new();
        for c in t.chars() {
            match c {
                'α' | 'a' | 'A' => out.push(Letter::Alpha),
                'β' | 'b' | 'B' => out.push(Letter::Beta),
                ' ' | ',' | '.' | '·' | '*' | '_' | '-' => {}
                _ => {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("bad letter `{c}` in Weyl word"),
                    })
                }
            }
        }
        Ok(WeylWord(out))
    }
}

impl Serialize for WeylWord {
    fn serialize<Z: serde::Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A Weyl group element, identified by its action on `(α, β)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElem(pub [[i64; 2]; 2]);

impl WeylElem {
    pub fn identity() -> Self {
        WeylElem([[1, 0], [0, 1]])
    }

    pub fn apply(&self, chi: &CharLattice) -> CharLattice {
        let m = self.0;
        CharLattice::new(
            int(m[0][0]) * &chi.alpha + int(m[0][1]) * &chi.beta,
            int(m[1][0]) * &chi.alpha + int(m[1][1]) * &chi.beta,
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WeylEntry {
    pub length: usize,
    pub reduced_words: Vec<WeylWord>,
    /// Images of α and β.
    pub image_alpha: CharLattice,
    pub image_beta: CharLattice,
    pub representative: Mat7<Rat>,
    /// Every reduced word gives the same product.
    pub words_agree: bool,
}

#[derive(Debug, Clone)]
pub struct WeylTable {
    pub lambda_alpha: Rat,
    pub lambda_beta: Rat,
    pub w_alpha: Mat7<Rat>,
    pub w_beta: Mat7<Rat>,
    pub w_long: Mat7<Rat>,
    /// `ẇ_l ẇ_β⁻¹`.
    pub w0: Mat7<Rat>,
    entries: BTreeMap<WeylElem, WeylEntry>,
}

impl WeylTable {
    fn entry(&self, e: WeylElem) -> &WeylEntry {
        &self.entries[&e]
    }

    fn length_of(&self, e: WeylElem) -> usize {
        self.entry(e).length
    }

    /// Entries sorted by length, then by first reduced word.
    pub fn entries(&self) -> Vec<&WeylEntry> {
        let mut v: Vec<&WeylEntry> = self.entries.values().collect();
        v.sort_by(|a, b| (a.length, &a.reduced_words[0]).cmp(&(b.length, &b.reduced_words[0])));
        v
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }
}

static TABLE: OnceLock<WeylTable> = OnceLock::new();

/// The table of representatives, built once.
pub fn table() -> &'static WeylTable {
    TABLE.get_or_init(|| build_table().expect("Weyl table construction is an internal invariant"))
}

pub fn build_table() -> Result<WeylTable> {
    let (lambda_alpha, w_alpha) = solve_simple_rep(Letter::Alpha)?;
    let (lambda_beta, w_beta) = solve_simple_rep(Letter::Beta)?;

    // all words of length ≤ 7 cover the dihedral group of order 12
    let mut by_elem: BTreeMap<WeylElem, Vec<WeylWord>> = BTreeMap::new();
    let mut min_len: BTreeMap<WeylElem, usize> = BTreeMap::new();
    for len in 0..=7usize {
        for bits in 0..(1u32 << len) {
            let w = WeylWord(
                (0..len)
                    .map(|i| {
                        if bits & (1 << i) == 0 {
                            Letter::Alpha
                        } else {
                            Letter::Beta
                        }
                    })
                    .collect(),
            );
            let e = w.element();
            let l = *min_len.entry(e).or_insert(len);
            if l == len {
                by_elem.entry(e).or_default().push(w);
            }
        }
    }

    let simple = |l: Letter| if l == Letter::Alpha { &w_alpha } else { &w_beta };
    let mut entries = BTreeMap::new();
    for (e, mut words) in by_elem {
        words.sort();
        let reps: Vec<Mat7<Rat>> = words
            .iter()
            .map(|w| w.0.iter().fold(Mat7::identity(), |acc, &l| &acc * simple(l)))
            .collect();
        let words_agree = reps.windows(2).all(|p| p[0] == p[1]);
        entries.insert(
            e,
            WeylEntry {
                length: words[0].len(),
                image_alpha: e.apply(&Root::ALPHA.to_char()),
                image_beta: e.apply(&Root::BETA.to_char()),
                representative: reps[0].clone(),
                reduced_words: words,
                words_agree,
            },
        );
    }

    let long = WeylWord::alternating(Letter::Alpha, 6);
    let w_long = entries[&long.element()].representative.clone();
    let w0 = &w_long * &w_beta.inverse()?;
    Ok(WeylTable {
        lambda_alpha,
        lambda_beta,
        w_alpha,
        w_beta,
        w_long,
        w0,
        entries,
    })
}

/// Solves `x_γ(1) exp(λ Y_γ) x_γ(1) ∈ N(T)` for the simple root `γ`, where
/// `Y_γ` is the `-γ` coordinate matrix. Returns the unique `λ` and the
/// representative.
pub fn solve_simple_rep(l: Letter) -> Result<(Rat, Mat7<Rat>)> {
    let gamma = l.root();
    let lam = RatFn::var(Symbol::LAM);
    let xg = root_vector(gamma, RatFn::one())?;
    let y = LieCoords::<RatFn>::zero().with((-gamma).coordinate()?, lam)?.exp()?;
    let ansatz = &(&xg * &y) * &xg;

    let mut candidates: Vec<Rat> = Vec::new();
    for row in ansatz.rows() {
        for e in row {
            if !e.is_polynomial() {
                return Err(Error::NoNormalizer(format!("{gamma}: non-polynomial entry")));
            }
            for r in rational_roots(e.num(), Symbol::LAM)? {
                if !candidates.contains(&r) {
                    candidates.push(r);
                }
            }
        }
    }
    candidates.sort();
    let mut found = Vec::new();
    for c in candidates {
        let m = ansatz.try_map(|e| e.eval(&[(Symbol::LAM, c.clone())].into_iter().collect()))?;
        if m.is_monomial() {
            found.push((c, m));
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one solution")),
        0 => Err(Error::NoNormalizer(gamma.to_string())),
        n => Err(Error::NoNormalizer(format!(
            "{gamma}: {n} solutions, expected a unique one"
        ))),
    }
}

/// Rational roots of a univariate polynomial by the rational root theorem.
fn rational_roots(p: &Poly, s: Symbol) -> Result<Vec<Rat>> {
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let coeffs: Vec<Rat> = p
        .coeffs_in(s)
        .into_iter()
        .map(|c| c.as_constant().ok_or_else(|| Error::Config("not univariate".into())))
        .collect::<Result<_>>()?;
    let lcm = coeffs
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<i64> = coeffs
        .iter()
        .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer().to_i64())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Config("coefficients too large".into()))?;
    let low = ints.iter().position(|&c| c != 0).expect("nonzero polynomial");
    let mut out = Vec::new();
    if low > 0 {
        out.push(Rat::zero());
    }
    let c0 = ints[low];
    let cn = *ints.last().expect("nonconstant");
    for num in divisors(c0.unsigned_abs()) {
        for den in divisors(cn.unsigned_abs()) {
            for sign in [1i64, -1] {
                let r = Rat::new((sign * num as i64).into(), (den as i64).into());
                let v = coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * &r + c);
                if v.is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    Ok(out)
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n)
        .take_while(|d| d * d <= n)
        .filter(|d| n.is_multiple_of(*d))
        .flat_map(|d| [d, n / d])
        .collect()
}

/// The canonical representative of a reduced word.
pub fn weyl_rep(w: &WeylWord) -> Result<Mat7<Rat>> {
    w.check_reduced()?;
    Ok(table().entry(w.element()).representative.clone())
}

/// Action on characters through the reflection formulas.
pub fn weyl_action(w: &WeylWord, chi: &CharLattice) -> CharLattice {
    w.element().apply(chi)
}

/// Action on characters through `w.χ(H) = χ(ẇ⁻¹ H ẇ)` with `H` the generic
/// diagonal element of the Lie algebra.
pub fn weyl_action_by_conjugation(w: &WeylWord, chi: &CharLattice) -> Result<CharLattice> {
    let t = table();
    let rep = w.0.iter().fold(Mat7::<Rat>::identity(), |acc, &l| {
        &acc * if l == Letter::Alpha { &t.w_alpha } else { &t.w_beta }
    });
    let rep = rep.map(|x| RatFn::constant(x.clone()));
    let h = LieCoords::<RatFn>::zero()
        .with(Symbol::A, RatFn::var(Symbol::A))?
        .with(Symbol::B, RatFn::var(Symbol::B))?
        .to_matrix();
    let conj = &(&rep.inverse()? * &h) * &rep;
    if !conj.is_diagonal() {
        return Err(Error::NoNormalizer(format!("{w} does not normalize the torus")));
    }
    // α(H) = b and β(H) = a - b
    let a2 = conj[(0, 0)].clone();
    let b2 = conj[(1, 1)].clone();
    let val = &b2.scale(&chi.alpha) + &(&a2 - &b2).scale(&chi.beta);
    let ca = linear_coeff(&val, Symbol::A)?;
    let cb = linear_coeff(&val, Symbol::B)?;
    Ok(CharLattice::new(&ca + &cb, ca))
}

fn linear_coeff(f: &RatFn, s: Symbol) -> Result<Rat> {
    f.derivative(s)
        .as_constant()
        .ok_or_else(|| Error::Config(format!("{f} is not linear in {s}")))
}

/// `(w·χ₁, w·χ₂) = (χ₁, χ₂)` for both generators on the basis pairs.
pub fn form_invariance_checks() -> Vec<(String, bool)> {
    let basis = [Root::ALPHA.to_char(), Root::BETA.to_char()];
    let mut out = Vec::new();
    for l in [Letter::Alpha, Letter::Beta] {
        let w = WeylWord(vec![l]);
        for (i, x) in basis.iter().enumerate() {
            for y in basis.iter().skip(i) {
                let lhs = bilinear_form(&weyl_action(&w, x), &weyl_action(&w, y));
                out.push((format!("s_{l}: ({x}, {y})"), lhs == bilinear_form(x, y)));
            }
        }
    }
    out
}

/// Nonzero entries `(row, col, value)`, 1-based, of the representatives as
/// they are displayed in the literature.
pub const DISPLAYED_W_ALPHA: [(usize, usize, i64); 7] = [
    (1, 6, -1),
    (2, 5, 1),
    (3, 4, 1),
    (4, 3, -1),
    (5, 2, 1),
    (6, 1, 1),
    (7, 7, -1),
];
pub const DISPLAYED_W_BETA: [(usize, usize, i64); 7] = [
    (1, 2, 1),
    (2, 1, -1),
    (3, 3, 1),
    (4, 5, 1),
    (5, 4, -1),
    (6, 6, 1),
    (7, 7, 1),
];
pub const DISPLAYED_W_LONG: [(usize, usize, i64); 7] = [
    (1, 4, 1),
    (2, 5, 1),
    (3, 6, 1),
    (4, 1, 1),
    (5, 2, 1),
    (6, 3, 1),
    (7, 7, -1),
];
pub const DISPLAYED_W0: [(usize, usize, i64); 7] = [
    (1, 5, -1),
    (2, 4, 1),
    (3, 6, 1),
    (4, 2, -1),
    (5, 1, 1),
    (6, 3, 1),
    (7, 7, -1),
];

pub fn from_entries(entries: &[(usize, usize, i64)]) -> Mat7<Rat> {
    let mut m = Mat7::zero();
    for &(i, j, v) in entries {
        m[(i - 1, j - 1)] = int(v);
    }
    m
}

/// Matches between the computed and displayed representatives.
pub fn displayed_matches() -> Vec<(&'static str, bool)> {
    let t = table();
    vec![
        ("w_alpha", t.w_alpha == from_entries(&DISPLAYED_W_ALPHA)),
        ("w_beta", t.w_beta == from_entries(&DISPLAYED_W_BETA)),
        ("w_long", t.w_long == from_entries(&DISPLAYED_W_LONG)),
        ("w0", t.w0 == from_entries(&DISPLAYED_W0)),
    ]
}

/// A reduced word for `w0 = w_l w_β`, which fixes β and sends α to a
/// negative root.
pub fn w0_word() -> WeylWord {
    WeylWord::alternating(Letter::Alpha, 5)
}

/// Determinants of all twelve representatives.
pub fn rep_determinants() -> Vec<Rat> {
    table().entries().iter().map(|e| e.representative.det()).collect()
}

/// Absolute value helper for reports.
pub fn abs_det_is_one(r: &Rat) -> bool {
    r.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn w(s: &str) -> WeylWord {
        s.parse().unwrap()
    }

    #[test]
    fn group_has_order_twelve() {
        let t = table();
        assert_eq!(t.order(), 12);
        assert!(t.entries().iter().all(|e| e.words_agree));
        let long = t.entries().into_iter().filter(|e| e.length == 6).collect::<Vec<_>>();
        assert_eq!(long.len(), 1);
        assert_eq!(long[0].reduced_words.len(), 2);
    }

    #[test]
    fn lambda_regression() {
        let t = table();
        assert_eq!(t.lambda_alpha, int(-1));
        assert_eq!(t.lambda_beta, int(-1));
    }

    #[test]
    fn displayed_representatives() {
        for (name, ok) in displayed_matches() {
            assert!(ok, "{name}");
        }
        assert_eq!(weyl_rep(&w("")).unwrap(), Mat7::identity());
        assert_eq!(weyl_rep(&w("ababab")).unwrap(), weyl_rep(&w("bababa")).unwrap());
    }

    #[test]
    fn w_beta_squared_is_torus() {
        let t = table();
        let sq = &t.w_beta * &t.w_beta;
        assert!(sq.is_diagonal());
        assert_eq!(
            sq.diagonal().map(|x| x.to_string()),
            ["-1", "-1", "1", "-1", "-1", "1", "1"]
        );
    }

    #[test]
    fn non_reduced_word_names_reduction() {
        let err = weyl_rep(&w("abba")).unwrap_err();
        match err {
            Error::NotReduced(msg) => assert!(msg.contains("`e`"), "{msg}"),
            other => panic!("{other:?}"),
        }
        assert!(weyl_rep(&w("abababa")).is_err());
    }

    #[test]
    fn reflection_formulas() {
        let a = Root::ALPHA.to_char();
        let b = Root::BETA.to_char();
        assert_eq!(weyl_action(&w("a"), &b), CharLattice::ints(3, 1));
        assert_eq!(weyl_action(&w("b"), &a), CharLattice::ints(1, 1));
        assert_eq!(weyl_action(&w("a"), &a), CharLattice::ints(-1, 0));
        let img = weyl_action(&w0_word(), &b);
        assert_eq!(img, b);
        assert!(weyl_action(&w0_word(), &a).alpha < Rat::zero());
    }

    #[test]
    fn both_action_routes_agree() {
        let chis = [
            CharLattice::ints(1, 0),
            CharLattice::ints(0, 1),
            CharLattice::new(rat(5, 2), rat(-1, 3)),
        ];
        for e in table().entries() {
            for word in &e.reduced_words {
                for chi in &chis {
                    assert_eq!(
                        weyl_action(word, chi),
                        weyl_action_by_conjugation(word, chi).unwrap(),
                        "{word} on {chi}"
                    );
                }
            }
        }
    }

    #[test]
    fn form_is_invariant() {
        let checks = form_invariance_checks();
        assert_eq!(checks.len(), 6);
        assert!(checks.iter().all(|(_, ok)| *ok));
        let wa = weyl_action(&w("b"), &Root::ALPHA.to_char());
        assert_eq!(bilinear_form(&wa, &wa), int(1));
    }

    #[test]
    fn representatives_are_monomial_with_unit_det() {
        for e in table().entries() {
            assert!(e.representative.is_monomial());
        }
        assert!(rep_determinants().iter().all(abs_det_is_one));
    }

    #[test]
    fn representatives_normalize_torus() {
        let t1 = RatFn::var(Symbol::T1);
        let t2 = RatFn::var(Symbol::T2);
        let t = crate::g2::roots::torus(&t1, &t2).unwrap();
        for e in table().entries() {
            let r = e.representative.map(|x| RatFn::constant(x.clone()));
            let c = &(&r.inverse().unwrap() * &t) * &r;
            assert!(c.is_diagonal());
        }
    }

    #[test]
    fn word_parsing() {
        assert_eq!(w("α,β"), w("ab"));
        assert_eq!(w("e"), WeylWord::empty());
        assert!("abc".parse::<WeylWord>().is_err());
        assert_eq!(w("aba").to_string(), "αβα");
    }
}
