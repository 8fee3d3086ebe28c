//! Multiplication in `N̄`, the compact family `N̄_κ` as valuation boxes, and
//! the closure / equivariance / `U₁`-invariance certificate.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::g2::{LieCoords, NbarCoords};
use crate::levi::{um, zm};
use crate::mat7::Mat7;
use crate::ring::padic::prime_power;
use crate::ring::parse::parse_ratfn;
use crate::ring::{vp, Grading, PadicVal, Poly, Prime, Rat, RatFn, Symbol};
use crate::scalar::Scalar;

/// `log(exp(y) exp(y'))`.
pub fn nbar_mul<S: Scalar>(y: &NbarCoords<S>, yp: &NbarCoords<S>) -> Result<NbarCoords<S>> {
    NbarCoords::from_group(&(&y.exp()? * &yp.exp()?))
}

/// `log(exp(y)⁻¹)`.
pub fn nbar_inverse<S: Scalar>(y: &NbarCoords<S>) -> Result<NbarCoords<S>> {
    NbarCoords::from_group(&y.exp()?.inverse()?)
}

/// A rational function known to be a polynomial.
pub fn as_poly(f: &RatFn) -> Result<Poly> {
    let d = f
        .den()
        .as_constant()
        .ok_or_else(|| Error::InconsistentSystem(format!("{f} is not a polynomial")))?;
    Ok(f.num().scale(&d.recip()))
}

/// Evaluates a polynomial with values in any scalar.
pub fn eval_poly<S: Scalar>(p: &Poly, val: impl Fn(Symbol) -> S) -> S {
    let mut acc = S::zero();
    for (m, c) in p.terms() {
        let mut t = S::from_rat(c);
        for &(s, e) in m.factors() {
            let v = val(s);
            for _ in 0..e {
                t = t * v.clone();
            }
        }
        acc = acc + t;
    }
    acc
}

/// The five `z`-polynomials in `y10..y32, y10'..y32'`.
#[derive(Debug, Clone)]
pub struct GroupLaw {
    pub z: [Poly; 5],
}

impl GroupLaw {
    pub fn apply<S: Scalar>(&self, y: &NbarCoords<S>, yp: &NbarCoords<S>) -> NbarCoords<S> {
        let (a, b) = (y.to_array(), yp.to_array());
        let val = |s: Symbol| {
            if let Some(i) = Symbol::NBAR.iter().position(|&t| t == s) {
                a[i].clone()
            } else if let Some(i) = Symbol::NBAR_P.iter().position(|&t| t == s) {
                b[i].clone()
            } else {
                panic!("group law involves foreign symbol {s}")
            }
        };
        NbarCoords::from_array(std::array::from_fn(|k| eval_poly(&self.z[k], val)))
    }

    pub fn as_ratfns(&self) -> NbarCoords<RatFn> {
        NbarCoords::from_array(self.z.clone().map(RatFn::from_poly))
    }
}

static GROUP_LAW: OnceLock<Result<GroupLaw>> = OnceLock::new();

/// The group law derived from the matrix product at the generic pair.
pub fn group_law() -> Result<&'static GroupLaw> {
    GROUP_LAW
        .get_or_init(|| {
            let z = nbar_mul(&NbarCoords::generic(), &NbarCoords::generic_primed())?;
            let polys = z.to_array().iter().map(as_poly).collect::<Result<Vec<_>>>()?;
            Ok(GroupLaw {
                z: polys.try_into().expect("five coordinates"),
            })
        })
        .as_ref()
        .map_err(Clone::clone)
}

/// How an unparseable or doubtful symbol in a printed formula is read.
#[derive(Debug, Clone, Serialize)]
pub struct PrintedReading {
    pub coordinate: &'static str,
    pub reading: &'static str,
    pub adopted: bool,
    pub formula: String,
}

const Z31_TEMPLATE: &str = "1/2*(-y10*y11*{} + y11*y10'^2 + y10^2*y11' - y10*y10'*y11') \
                            + 3/2*(y21*y10' - y10*y21') + y31 + y31'";
const Z32_TEMPLATE: &str = "1/2*(-y11^2*y10' + y10*y11*y11' + y11*y10'*y11' - y10*y11'^2 - y11*{}) \
                            + 3/2*y21*y11' - y11*y21' + y32 + y32'";

/// The printed `z`-formulas under every reading considered.
pub fn printed_readings() -> Vec<PrintedReading> {
    let r = |coordinate, reading, adopted, formula: String| PrintedReading {
        coordinate,
        reading,
        adopted,
        formula,
    };
    vec![
        r("z10", "literal", true, "y10 + y10'".into()),
        r("z11", "literal", true, "y11 + y11'".into()),
        r("z21", "literal", true, "y11*y10' - y10*y11' + y21 + y21'".into()),
        r("z31", "z10' read as y10'", true, Z31_TEMPLATE.replace("{}", "y10'")),
        r(
            "z31",
            "z10' read as z10 = y10 + y10'",
            false,
            Z31_TEMPLATE.replace("{}", "(y10 + y10')"),
        ),
        r("z32", "literal", false, Z32_TEMPLATE.replace("{}", "y21")),
        r(
            "z32",
            "y11 y21 read as y11 y21'",
            true,
            Z32_TEMPLATE.replace("{}", "y21'"),
        ),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct ReadingCheck {
    pub coordinate: &'static str,
    pub reading: &'static str,
    pub adopted: bool,
    pub matches: bool,
    /// `derived - printed`.
    pub residual: String,
}

pub fn compare_printed_group_law() -> Result<Vec<ReadingCheck>> {
    let law = group_law()?.as_ratfns().to_array();
    printed_readings()
        .into_iter()
        .map(|r| {
            let k = ["z10", "z11", "z21", "z31", "z32"]
                .iter()
                .position(|&c| c == r.coordinate)
                .expect("known coordinate");
            let printed = parse_ratfn(&r.formula)?;
            let residual = &law[k] - &printed;
            Ok(ReadingCheck {
                coordinate: r.coordinate,
                reading: r.reading,
                adopted: r.adopted,
                matches: residual.is_zero(),
                residual: residual.to_string(),
            })
        })
        .collect()
}

/// True when every adopted reading matches and every rejected one does not.
pub fn printed_group_law_resolved(checks: &[ReadingCheck]) -> bool {
    checks.iter().all(|c| c.matches == c.adopted)
}

#[derive(Debug, Clone, Serialize)]
pub struct AssociativityReport {
    pub symbolic: bool,
    pub sampled_triples: usize,
    pub sampled_failures: usize,
}

/// Symbolic associativity in fifteen variables through the derived law, and
/// sampled associativity through the matrix route.
pub fn associativity(samples: usize, seed: u64) -> Result<AssociativityReport> {
    let law = group_law()?;
    let (a, b, c) = (
        NbarCoords::generic(),
        NbarCoords::generic_primed(),
        NbarCoords::generic_double_primed(),
    );
    let symbolic = law.apply(&law.apply(&a, &b), &c) == law.apply(&a, &law.apply(&b, &c));
    let failures = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<bool> {
            let mut rng = stream(seed, i as u64);
            let mut pick = || NbarCoords::from_array(std::array::from_fn(|_| small_rat(&mut rng)));
            let (x, y, z) = (pick(), pick(), pick());
            Ok(nbar_mul(&nbar_mul(&x, &y)?, &z)? != nbar_mul(&x, &nbar_mul(&y, &z)?)?)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|&f| f)
        .count();
    Ok(AssociativityReport {
        symbolic,
        sampled_triples: samples,
        sampled_failures: failures,
    })
}

/// `exp(y)⁻¹ = exp(-y)`, and `y · y⁻¹ = 0` through the derived law.
pub fn inverse_certificate() -> Result<bool> {
    let y = NbarCoords::generic();
    let inv = nbar_inverse(&y)?;
    let neg = NbarCoords::from_array(y.to_array().map(|v| -v));
    Ok(inv == neg && group_law()?.apply(&y, &inv) == NbarCoords::zero())
}

fn stream(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(
        BigInt::from(rng.gen_range(-9i64..=9)),
        BigInt::from(rng.gen_range(1i64..=5)),
    )
}

/// Lower bounds on `v_p(y10), ..., v_p(y32)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValVec {
    pub v10: PadicVal,
    pub v11: PadicVal,
    pub v21: PadicVal,
    pub v31: PadicVal,
    pub v32: PadicVal,
}

impl ValVec {
    pub fn from_array([v10, v11, v21, v31, v32]: [PadicVal; 5]) -> Self {
        ValVec {
            v10,
            v11,
            v21,
            v31,
            v32,
        }
    }

    pub fn to_array(self) -> [PadicVal; 5] {
        [self.v10, self.v11, self.v21, self.v31, self.v32]
    }

    pub fn infinite() -> Self {
        Self::from_array([PadicVal::Infinite; 5])
    }

    /// Componentwise `self ≥ other`, i.e. the box of `self` lies in that of `other`.
    pub fn dominates(&self, other: &ValVec) -> bool {
        self.to_array().iter().zip(other.to_array()).all(|(a, b)| *a >= b)
    }

    pub fn contains(&self, y: &NbarCoords<Rat>, p: Prime) -> bool {
        y.to_array().iter().zip(self.to_array()).all(|(v, b)| vp(v, p) >= b)
    }
}

/// `N̄_κ = {n̄ : v_p(y) ≥ (-κ², -κ, -κ³, -κ⁵, -κ⁴)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KappaBox {
    pub kappa: u32,
    pub p: Prime,
    pub bounds: ValVec,
}

impl KappaBox {
    pub fn new(kappa: u32, p: Prime) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::Config("κ must be positive".into()));
        }
        let k = kappa as i64;
        let b = [k * k, k, k.pow(3), k.pow(5), k.pow(4)].map(|e| PadicVal::Finite(-e));
        Ok(KappaBox {
            kappa,
            p,
            bounds: ValVec::from_array(b),
        })
    }

    pub fn finite_bounds(&self) -> [i64; 5] {
        self.bounds
            .to_array()
            .map(|b| b.finite().expect("box bounds are finite"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TropMode {
    /// Ignores the valuations of the rational constants; needs `p ≥ 5`.
    Plain,
    /// Adds `v_p` of each constant.
    ConstantAware,
}

impl TropMode {
    pub fn default_for(p: Prime) -> Self {
        if p.get() >= 5 {
            TropMode::Plain
        } else {
            TropMode::ConstantAware
        }
    }
}

/// `min` over monomials of `Σ e·bound + v_p(c)`.
pub fn trop_poly(f: &Poly, bound: &impl Fn(Symbol) -> PadicVal, p: Prime, mode: TropMode) -> PadicVal {
    f.terms()
        .map(|(m, c)| {
            let base = match mode {
                TropMode::Plain => PadicVal::Finite(0),
                TropMode::ConstantAware => vp(c, p),
            };
            m.factors().iter().fold(base, |acc, &(s, e)| acc + bound(s).scale(e))
        })
        .min()
        .unwrap_or(PadicVal::Infinite)
}

fn check_mode(p: Prime, mode: TropMode) -> Result<()> {
    if mode == TropMode::Plain && p.get() < 5 {
        return Err(Error::PrimeTooSmall(p.get()));
    }
    Ok(())
}

fn pair_bounds(b: &ValVec, b2: &ValVec) -> impl Fn(Symbol) -> PadicVal {
    let (a, c) = (b.to_array(), b2.to_array());
    move |s| {
        if let Some(i) = Symbol::NBAR.iter().position(|&t| t == s) {
            a[i]
        } else if let Some(i) = Symbol::NBAR_P.iter().position(|&t| t == s) {
            c[i]
        } else {
            PadicVal::Finite(0)
        }
    }
}

/// Guaranteed lower bounds on `v_p(z)` for `z = y · y'` with `y`, `y'` in the given boxes.
pub fn trop_mul_bound(b: &ValVec, b2: &ValVec, p: Prime, mode: TropMode) -> Result<ValVec> {
    check_mode(p, mode)?;
    let law = group_law()?;
    let f = pair_bounds(b, b2);
    Ok(ValVec::from_array(std::array::from_fn(|k| {
        trop_poly(&law.z[k], &f, p, mode)
    })))
}

/// A sampled coordinate `unit · p^v`, or zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PadicSample {
    pub v: i64,
    pub unit: i64,
}

impl PadicSample {
    pub fn to_rat(self, p: Prime) -> Rat {
        prime_power(p, self.v) * Rat::from_integer(BigInt::from(self.unit))
    }
}

/// Exact valuation of a polynomial at sampled points, computed with integer
/// arithmetic modulo `p^K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OracleVal {
    Exact(i64),
    /// All digits up to the working precision cancelled.
    AtLeast(i64),
    Zero,
}

impl OracleVal {
    /// `Some(true)` if the value certainly satisfies `v ≥ bound`, `Some(false)` if it
    /// certainly does not, `None` if precision ran out first.
    pub fn respects(self, bound: PadicVal) -> Option<bool> {
        match (self, bound) {
            (OracleVal::Zero, _) => Some(true),
            (_, PadicVal::Infinite) => Some(false),
            (OracleVal::Exact(v), PadicVal::Finite(b)) => Some(v >= b),
            (OracleVal::AtLeast(v), PadicVal::Finite(b)) => (v >= b).then_some(true),
        }
    }
}

struct ModP {
    p: i128,
    k: u32,
    m: i128,
}

impl ModP {
    fn new(p: Prime) -> Self {
        let p = p.get() as i128;
        let mut k = 0;
        let mut m: i128 = 1;
        while m * p < (1i128 << 62) {
            m *= p;
            k += 1;
        }
        ModP { p, k, m }
    }

    fn reduce(&self, x: i128) -> i128 {
        x.rem_euclid(self.m)
    }

    fn inv(&self, a: i128) -> i128 {
        let e = BigInt::from(a).extended_gcd(&BigInt::from(self.m));
        debug_assert!(e.gcd.is_one());
        self.reduce(e.x.mod_floor(&BigInt::from(self.m)).to_i128().expect("fits"))
    }

    /// `c = p^v · u` with `u` a unit, returned as `(v, u mod p^K)`.
    fn split(&self, c: &Rat, prime: Prime) -> (i64, i128) {
        let v = vp(c, prime).finite().expect("nonzero constant");
        let u = c / prime_power(prime, v);
        let m = BigInt::from(self.m);
        let n = u.numer().mod_floor(&m).to_i128().expect("fits");
        let d = u.denom().mod_floor(&m).to_i128().expect("fits");
        (v, self.reduce(n * self.inv(d)))
    }
}

pub fn oracle_valuation(f: &Poly, point: &impl Fn(Symbol) -> Option<PadicSample>, p: Prime) -> OracleVal {
    let md = ModP::new(p);
    let mut terms: Vec<(i64, i128)> = Vec::new();
    'terms: for (m, c) in f.terms() {
        let (mut v, mut u) = md.split(c, p);
        for &(s, e) in m.factors() {
            let Some(x) = point(s) else { continue 'terms };
            for _ in 0..e {
                v += x.v;
                u = md.reduce(u * md.reduce(x.unit as i128));
            }
        }
        terms.push((v, u));
    }
    let Some(low) = terms.iter().map(|t| t.0).min() else {
        return OracleVal::Zero;
    };
    let mut s: i128 = 0;
    for (v, u) in terms {
        let d = (v - low) as u32;
        if d < md.k {
            s = md.reduce(s + md.reduce(u * md.p.pow(d)));
        }
    }
    if s == 0 {
        return OracleVal::AtLeast(low + md.k as i64);
    }
    let mut v = low;
    while s % md.p == 0 {
        s /= md.p;
        v += 1;
    }
    OracleVal::Exact(v)
}

/// Symbolic conjugation `c y c⁻¹` on the generic `n̄`, as polynomials.
fn conjugated_nbar(c: &Mat7<RatFn>) -> Result<[RatFn; 5]> {
    let g = &(c * &NbarCoords::generic().exp()?) * &c.inverse()?;
    let log = g.log_unipotent()?;
    Ok(NbarCoords::from_lie(&LieCoords::from_matrix(&log)?)?.to_array())
}

/// Exponents `w` with `z n̄ z⁻¹ = (t^w10 y10, ..., t^w32 y32)` for `z = Z_M(t)`.
pub fn zm_weights_on_nbar() -> Result<[i64; 5]> {
    let t = RatFn::var(Symbol::T);
    let conj = conjugated_nbar(&zm(t.clone())?)?;
    let g = Grading::new([(Symbol::T, 1)].into_iter().chain(Symbol::NBAR.iter().map(|&s| (s, 0))));
    let mut w = [0i64; 5];
    for (k, f) in conj.iter().enumerate() {
        let y = RatFn::var(Symbol::NBAR[k]);
        let ratio = f.checked_div(&y)?;
        let d = ratio
            .weighted_degree(&g)
            .degree()
            .ok_or_else(|| Error::InconsistentSystem(format!("{f} is not t-homogeneous")))?;
        if ratio != t.pow(d as i32)? {
            return Err(Error::InconsistentSystem(format!(
                "{f} is not a monomial multiple of {y}"
            )));
        }
        w[k] = d;
    }
    Ok(w)
}

/// `u n̄ u⁻¹` for `u = U_M(x)`, as polynomials in `x` and the `y`'s.
pub fn um_conjugation_polys() -> Result<[Poly; 5]> {
    let conj = conjugated_nbar(&um(RatFn::var(Symbol::X))?)?;
    let polys = conj.iter().map(as_poly).collect::<Result<Vec<_>>>()?;
    Ok(polys.try_into().expect("five coordinates"))
}

pub const DEFAULT_U1_LEVELS: [i64; 4] = [0, -2, -6, -12];

#[derive(Debug, Clone, Serialize)]
pub struct LemmaConfig {
    pub p: Prime,
    pub kappa_lo: u32,
    pub kappa_hi: u32,
    pub samples: usize,
    pub seed: u64,
    /// `U₁ = {U_M(x) : v_p(x) ≥ c}` for each level `c`.
    pub u1_levels: Vec<i64>,
    pub u1_samples: usize,
}

impl LemmaConfig {
    pub fn new(p: Prime, kappa_lo: u32, kappa_hi: u32, samples: usize, seed: u64) -> Result<Self> {
        if kappa_lo == 0 || kappa_lo > kappa_hi {
            return Err(Error::Config(format!("bad κ range {kappa_lo}..{kappa_hi}")));
        }
        Ok(LemmaConfig {
            p,
            kappa_lo,
            kappa_hi,
            samples,
            seed,
            u1_levels: DEFAULT_U1_LEVELS.to_vec(),
            u1_samples: 200,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KappaRow {
    pub kappa: u32,
    pub bounds: [i64; 5],
    pub product_bounds: ValVec,
    pub closure: bool,
    pub inversion: bool,
    /// Coordinates whose product bound falls below the box.
    pub failing: Vec<&'static str>,
}

#[derive(Debug, Clone, Serialize)]
pub struct U1Row {
    pub level: i64,
    /// Per κ in range, whether the tropical bound keeps conjugates in the box.
    pub certified: Vec<(u32, bool)>,
    pub kappa0: Option<u32>,
    pub sampled: usize,
    pub sampled_violations: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SoundnessReport {
    pub samples: usize,
    pub violations: usize,
    pub inconclusive: usize,
    /// Samples also recomputed through the exact matrix route.
    pub matrix_cross_checks: usize,
    pub matrix_mismatches: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaCertificate {
    pub config: LemmaConfig,
    pub mode: TropMode,
    pub rows: Vec<KappaRow>,
    pub minimal_certified_kappa: Option<u32>,
    pub zm_weights: [i64; 5],
    pub zm_depends_only_on_abs_t: bool,
    pub u1: Vec<U1Row>,
    pub soundness: SoundnessReport,
}

impl LemmaCertificate {
    pub fn passed(&self) -> bool {
        self.minimal_certified_kappa.is_some()
            && self.zm_depends_only_on_abs_t
            && self.soundness.violations == 0
            && self.soundness.matrix_mismatches == 0
            && self.u1.iter().all(|r| r.sampled_violations == 0)
    }
}

const Z_NAMES: [&str; 5] = ["z10", "z11", "z21", "z31", "z32"];

/// Smallest `κ` such that every `κ' ≥ κ` in the range passes.
fn minimal_tail(flags: &[(u32, bool)]) -> Option<u32> {
    let mut best = None;
    for &(k, ok) in flags.iter().rev() {
        if !ok {
            break;
        }
        best = Some(k);
    }
    best
}

pub fn lemma_certificate(cfg: &LemmaConfig) -> Result<LemmaCertificate> {
    let p = cfg.p;
    let mode = TropMode::default_for(p);
    let kappas: Vec<u32> = (cfg.kappa_lo..=cfg.kappa_hi).collect();
    let boxes = kappas
        .iter()
        .map(|&k| KappaBox::new(k, p))
        .collect::<Result<Vec<_>>>()?;

    let inverse = nbar_inverse(&NbarCoords::generic())?
        .to_array()
        .iter()
        .map(as_poly)
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for b in &boxes {
        let prod = trop_mul_bound(&b.bounds, &b.bounds, p, mode)?;
        let f = pair_bounds(&b.bounds, &ValVec::infinite());
        let inv = ValVec::from_array(std::array::from_fn(|k| trop_poly(&inverse[k], &f, p, mode)));
        let failing = Z_NAMES
            .iter()
            .zip(prod.to_array().iter().zip(b.bounds.to_array()))
            .filter(|(_, (z, bound))| *z < bound)
            .map(|(n, _)| *n)
            .collect::<Vec<_>>();
        rows.push(KappaRow {
            kappa: b.kappa,
            bounds: b.finite_bounds(),
            product_bounds: prod,
            closure: failing.is_empty(),
            inversion: inv.dominates(&b.bounds),
            failing,
        });
    }
    let flags: Vec<(u32, bool)> = rows.iter().map(|r| (r.kappa, r.closure && r.inversion)).collect();
    let minimal_certified_kappa = minimal_tail(&flags);

    let zm = zm_weights_on_nbar();
    let zm_depends_only_on_abs_t = zm.is_ok();
    let zm_weights = zm.unwrap_or_default();
    let u1 = u1_rows(cfg, &boxes, mode)?;
    let soundness = soundness(cfg, &boxes, mode)?;
    Ok(LemmaCertificate {
        config: cfg.clone(),
        mode,
        rows,
        minimal_certified_kappa,
        zm_weights,
        zm_depends_only_on_abs_t,
        u1,
        soundness,
    })
}

fn random_unit(rng: &mut ChaCha8Rng, p: i64) -> i64 {
    loop {
        let u = rng.gen_range(1..p.pow(4));
        if u % p != 0 {
            return if rng.gen_bool(0.5) { u } else { -u };
        }
    }
}

/// A point of the box, on its boundary in most coordinates.
fn boundary_point(rng: &mut ChaCha8Rng, b: &KappaBox) -> [Option<PadicSample>; 5] {
    let p = b.p.get();
    b.finite_bounds().map(|bound| {
        if rng.gen_ratio(1, 16) {
            return None;
        }
        let extra = if rng.gen_ratio(3, 4) { 0 } else { rng.gen_range(1..=2) };
        Some(PadicSample {
            v: bound + extra,
            unit: random_unit(rng, p),
        })
    })
}

fn lookup(
    pts: &[(&[Symbol; 5], [Option<PadicSample>; 5])],
    extra: &[(Symbol, PadicSample)],
) -> impl Fn(Symbol) -> Option<PadicSample> {
    let mut map: HashMap<Symbol, Option<PadicSample>> = HashMap::new();
    for (syms, vals) in pts {
        for (s, v) in syms.iter().zip(vals) {
            map.insert(*s, *v);
        }
    }
    for (s, v) in extra {
        map.insert(*s, Some(*v));
    }
    move |s| map.get(&s).copied().flatten()
}

fn to_rat_coords(y: &[Option<PadicSample>; 5], p: Prime) -> NbarCoords<Rat> {
    NbarCoords::from_array(y.map(|v| v.map_or_else(Rat::zero, |s| s.to_rat(p))))
}

fn soundness(cfg: &LemmaConfig, boxes: &[KappaBox], mode: TropMode) -> Result<SoundnessReport> {
    let law = group_law()?;
    let p = cfg.p;
    let bounds = boxes
        .iter()
        .map(|b| trop_mul_bound(&b.bounds, &b.bounds, p, mode))
        .collect::<Result<Vec<_>>>()?;
    let outcomes = (0..cfg.samples)
        .into_par_iter()
        .map(|i| -> Result<(usize, usize, bool, bool)> {
            let mut rng = stream(cfg.seed, i as u64);
            let bi = rng.gen_range(0..boxes.len());
            let b = &boxes[bi];
            let y = boundary_point(&mut rng, b);
            let yp = boundary_point(&mut rng, b);
            let point = lookup(&[(&Symbol::NBAR, y), (&Symbol::NBAR_P, yp)], &[]);
            let vals: [OracleVal; 5] = std::array::from_fn(|k| oracle_valuation(&law.z[k], &point, p));
            let (mut bad, mut unsure) = (0, 0);
            for (v, bound) in vals.iter().zip(bounds[bi].to_array()) {
                match v.respects(bound) {
                    Some(true) => {}
                    Some(false) => bad += 1,
                    None => unsure += 1,
                }
            }
            let cross = b.kappa <= 2 && i % 8 == 0;
            let mut mismatch = false;
            if cross {
                let z = nbar_mul(&to_rat_coords(&y, p), &to_rat_coords(&yp, p))?;
                mismatch = z.to_array().iter().zip(vals).any(|(zk, v)| match (vp(zk, p), v) {
                    (PadicVal::Infinite, OracleVal::Zero) => false,
                    (PadicVal::Finite(a), OracleVal::Exact(b)) => a != b,
                    (PadicVal::Finite(a), OracleVal::AtLeast(b)) => a < b,
                    (PadicVal::Infinite, OracleVal::AtLeast(_)) => false,
                    _ => true,
                });
            }
            Ok((bad, unsure, cross, mismatch))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SoundnessReport {
        samples: cfg.samples,
        violations: outcomes.iter().map(|o| o.0).sum(),
        inconclusive: outcomes.iter().map(|o| o.1).sum(),
        matrix_cross_checks: outcomes.iter().filter(|o| o.2).count(),
        matrix_mismatches: outcomes.iter().filter(|o| o.3).count(),
    })
}

fn u1_rows(cfg: &LemmaConfig, boxes: &[KappaBox], mode: TropMode) -> Result<Vec<U1Row>> {
    let polys = um_conjugation_polys()?;
    let p = cfg.p;
    cfg.u1_levels
        .iter()
        .enumerate()
        .map(|(li, &level)| {
            let certified: Vec<(u32, bool)> = boxes
                .iter()
                .map(|b| {
                    let bb = b.bounds.to_array();
                    let f = move |s: Symbol| {
                        if s == Symbol::X {
                            PadicVal::Finite(level)
                        } else {
                            Symbol::NBAR
                                .iter()
                                .position(|&t| t == s)
                                .map_or(PadicVal::Finite(0), |i| bb[i])
                        }
                    };
                    let ok = polys
                        .iter()
                        .zip(b.bounds.to_array())
                        .all(|(f0, bound)| trop_poly(f0, &f, p, mode) >= bound);
                    (b.kappa, ok)
                })
                .collect();
            let kappa0 = minimal_tail(&certified);
            let eligible: Vec<&KappaBox> = boxes.iter().filter(|b| kappa0.is_some_and(|k| b.kappa >= k)).collect();
            let sampled = if eligible.is_empty() { 0 } else { cfg.u1_samples };
            let violations = (0..sampled)
                .into_par_iter()
                .map(|i| {
                    let mut rng = stream(cfg.seed ^ 0x5531_0000 ^ li as u64, i as u64);
                    let b = eligible[rng.gen_range(0..eligible.len())];
                    let y = boundary_point(&mut rng, b);
                    let x = PadicSample {
                        v: level,
                        unit: random_unit(&mut rng, p.get()),
                    };
                    let point = lookup(&[(&Symbol::NBAR, y)], &[(Symbol::X, x)]);
                    polys
                        .iter()
                        .zip(b.bounds.to_array())
                        .filter(|(f, bound)| oracle_valuation(f, &point, p).respects(*bound) != Some(true))
                        .count()
                })
                .sum();
            Ok(U1Row {
                level,
                certified,
                kappa0,
                sampled,
                sampled_violations: violations,
            })
        })
        .collect()
}

impl Serialize for KappaRange {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}..{}", self.0, self.1))
    }
}

/// A `κ` range written `lo..hi` (inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KappaRange(pub u32, pub u32);

impl std::str::FromStr for KappaRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("expected a range like 1..6, got `{s}`"));
        let (a, b) = s.split_once("..").ok_or_else(bad)?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let lo: u32 = a.trim().parse().map_err(|_| bad())?;
        let hi: u32 = b.trim().parse().map_err(|_| bad())?;
        if lo == 0 || lo > hi {
            return Err(bad());
        }
        Ok(KappaRange(lo, hi))
    }
}
