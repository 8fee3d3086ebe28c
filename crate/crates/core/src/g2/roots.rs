//! Roots, the character lattice of the maximal torus, the invariant form and
//! the constants of the normalized unramified character.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::g2::lie::LieCoords;
use crate::mat7::Mat7;
use crate::ring::{half, int, rat, Rat, RatFn, Symbol};
use crate::scalar::Scalar;

/// `pα + qβ` with integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root {
    pub alpha: i64,
    pub beta: i64,
}

impl Root {
    pub const ALPHA: Root = Root::new(1, 0);
    pub const BETA: Root = Root::new(0, 1);

    pub const fn new(alpha: i64, beta: i64) -> Root {
        Root { alpha, beta }
    }

    /// Positive roots in increasing height: α, β, α+β, 2α+β, 3α+β, 3α+2β.
    pub const POSITIVE: [Root; 6] = [
        Root::new(1, 0),
        Root::new(0, 1),
        Root::new(1, 1),
        Root::new(2, 1),
        Root::new(3, 1),
        Root::new(3, 2),
    ];

    pub fn all() -> impl Iterator<Item = Root> {
        Self::POSITIVE.into_iter().chain(Self::POSITIVE.into_iter().map(|r| -r))
    }

    pub fn is_root(self) -> bool {
        Self::all().any(|r| r == self)
    }

    pub fn is_positive(self) -> bool {
        Self::POSITIVE.contains(&self)
    }

    pub fn height(self) -> i64 {
        self.alpha + self.beta
    }

    /// Whether the root space lies in the unipotent radical `N`, i.e. the
    /// root is positive with nonzero α-coefficient.
    pub fn in_radical(self) -> bool {
        self.is_positive() && self.alpha > 0
    }

    /// The coordinate of the realization carrying this root space.
    pub fn coordinate(self) -> Result<Symbol> {
        let idx = Self::POSITIVE
            .iter()
            .position(|&r| r == self || -r == self)
            .ok_or_else(|| Error::NegativeRoot(format!("{self} is not a root")))?;
        let pos = [
            Symbol::X10,
            Symbol::X01,
            Symbol::X11,
            Symbol::X21,
            Symbol::X31,
            Symbol::X32,
        ];
        let neg = [
            Symbol::Y10,
            Symbol::Y01,
            Symbol::Y11,
            Symbol::Y21,
            Symbol::Y31,
            Symbol::Y32,
        ];
        Ok(if self.is_positive() { pos[idx] } else { neg[idx] })
    }

    /// Value on the torus element [`torus`]`(t1, t2)`.
    pub fn value_on_torus<S: Scalar>(self, t1: &S, t2: &S) -> Result<S> {
        CharLattice::from(self).value_on_torus_int(t1, t2)
    }

    pub fn to_char(self) -> CharLattice {
        self.into()
    }
}

impl Neg for Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root::new(-self.alpha, -self.beta)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&CharLattice::from(*self), f)
    }
}

/// A rational character `pα + qβ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CharLattice {
    #[serde(serialize_with = "crate::ring::rat::ser_rat")]
    pub alpha: Rat,
    #[serde(serialize_with = "crate::ring::rat::ser_rat")]
    pub beta: Rat,
}

impl CharLattice {
    pub fn new(alpha: Rat, beta: Rat) -> Self {
        CharLattice { alpha, beta }
    }

    pub fn ints(alpha: i64, beta: i64) -> Self {
        CharLattice::new(int(alpha), int(beta))
    }

    pub fn zero() -> Self {
        CharLattice::ints(0, 0)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        CharLattice::new(&self.alpha * c, &self.beta * c)
    }

    /// On `diag(t1, t2, ...)` the character `pα + qβ` is `t1^q t2^(p-q)`.
    pub fn torus_exponents(&self) -> (Rat, Rat) {
        (self.beta.clone(), &self.alpha - &self.beta)
    }

    /// When the character restricted to the Levi torus is a power of the
    /// determinant, that power.
    pub fn det_exponent(&self) -> Option<Rat> {
        let (e1, e2) = self.torus_exponents();
        (e1 == e2).then_some(e1)
    }

    fn value_on_torus_int<S: Scalar>(&self, t1: &S, t2: &S) -> Result<S> {
        let (e1, e2) = self.torus_exponents();
        if !e1.is_integer() || !e2.is_integer() {
            return Err(Error::Config(format!("{self} is not integral")));
        }
        Ok(int_pow(t1, e1.to_integer().try_into().unwrap_or(i64::MAX))?
            * int_pow(t2, e2.to_integer().try_into().unwrap_or(i64::MAX))?)
    }
}

fn int_pow<S: Scalar>(x: &S, e: i64) -> Result<S> {
    let base = if e < 0 {
        x.try_inv().ok_or(Error::ZeroTorusParameter)?
    } else {
        x.clone()
    };
    let mut acc = S::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc * base.clone();
    }
    Ok(acc)
}

impl From<Root> for CharLattice {
    fn from(r: Root) -> Self {
        CharLattice::ints(r.alpha, r.beta)
    }
}

impl Add for &CharLattice {
    type Output = CharLattice;
    fn add(self, o: &CharLattice) -> CharLattice {
        CharLattice::new(&self.alpha + &o.alpha, &self.beta + &o.beta)
    }
}

impl Sub for &CharLattice {
    type Output = CharLattice;
    fn sub(self, o: &CharLattice) -> CharLattice {
        CharLattice::new(&self.alpha - &o.alpha, &self.beta - &o.beta)
    }
}

impl fmt::Display for CharLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: &Rat, name: &str| -> Option<String> {
            if c.is_zero() {
                None
            } else if c.is_one() {
                Some(name.to_string())
            } else if *c == -Rat::one() {
                Some(format!("-{name}"))
            } else {
                Some(format!("{c}{name}"))
            }
        };
        match (term(&self.alpha, "α"), term(&self.beta, "β")) {
            (None, None) => f.write_str("0"),
            (Some(a), None) => f.write_str(&a),
            (None, Some(b)) => f.write_str(&b),
            (Some(a), Some(b)) => match b.strip_prefix('-') {
                Some(rest) => write!(f, "{a} - {rest}"),
                None => write!(f, "{a} + {b}"),
            },
        }
    }
}

/// The diagonal torus element with `α = t2` and `β = t1/t2`:
/// `diag(t1, t2, (t1 t2)⁻¹, t1⁻¹, t2⁻¹, t1 t2, 1)`.
pub fn torus<S: Scalar>(t1: &S, t2: &S) -> Result<Mat7<S>> {
    let i1 = t1.try_inv().ok_or(Error::ZeroTorusParameter)?;
    let i2 = t2.try_inv().ok_or(Error::ZeroTorusParameter)?;
    let p = t1.clone() * t2.clone();
    Ok(Mat7::diag([
        t1.clone(),
        t2.clone(),
        i1.clone() * i2.clone(),
        i1,
        i2,
        p,
        S::one(),
    ]))
}

/// `(aα + bβ, a'α + b'β) = aa' + 3bb' - 3/2 ab' - 3/2 a'b`.
pub fn bilinear_form(x: &CharLattice, y: &CharLattice) -> Rat {
    let three_halves = rat(3, 2);
    &x.alpha * &y.alpha + int(3) * &x.beta * &y.beta
        - &three_halves * &x.alpha * &y.beta
        - &three_halves * &y.alpha * &x.beta
}

/// `2⟨χ, γ⟩ / (γ, γ)`.
pub fn coroot_pairing(chi: &CharLattice, gamma: &CharLattice) -> Rat {
    int(2) * bilinear_form(chi, gamma) / bilinear_form(gamma, gamma)
}

/// Sum of the roots in the unipotent radical.
pub fn two_rho() -> CharLattice {
    Root::POSITIVE
        .into_iter()
        .filter(|r| r.in_radical())
        .fold(CharLattice::zero(), |acc, r| &acc + &r.to_char())
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterConstants {
    pub two_rho: CharLattice,
    /// Multiplier in `α̃ = c·ρ` as asserted for the unramified character.
    #[serde(serialize_with = "crate::ring::rat::ser_rat")]
    pub tilde_alpha_factor: Rat,
    /// Exponent of `|det m|` in `m ↦ q^{⟨α̃, H_M(m)⟩}`.
    #[serde(serialize_with = "crate::ring::rat::ser_rat")]
    pub hm_det_exponent: Rat,
    /// Exponent of `|t|` in `q^{⟨2ρ, H_M(z)⟩}` for `z = diag(t, t)`.
    #[serde(serialize_with = "crate::ring::rat::ser_rat")]
    pub z_exponent: Rat,
    /// `ρ` restricted to the Levi torus as a power of det.
    #[serde(serialize_with = "crate::ring::rat::ser_rat")]
    pub rho_det_exponent: Rat,
    /// `2(ρ, α)/(α, α)` computed from the bilinear form.
    #[serde(serialize_with = "crate::ring::rat::ser_rat")]
    pub rho_alpha_pairing: Rat,
    /// `⟨α̃, α⟩` computed from the form with `α̃ = 4ρ`.
    #[serde(serialize_with = "crate::ring::rat::ser_rat")]
    pub tilde_alpha_pairing_derived: Rat,
    /// Value asserted for `⟨α̃, α⟩` in the local-coefficient formula.
    #[serde(serialize_with = "crate::ring::rat::ser_rat")]
    pub tilde_alpha_pairing_claimed: Rat,
    /// `hm_det_exponent = 4·rho_det_exponent` and
    /// `z_exponent = 2·det_exponent(2ρ)`.
    pub consistent: bool,
}

pub const TILDE_ALPHA_FACTOR: i64 = 4;
pub const CLAIMED_HM_DET_EXPONENT: i64 = 10;
pub const CLAIMED_Z_EXPONENT: i64 = 10;
pub const CLAIMED_TILDE_ALPHA_PAIRING: i64 = 20;

pub fn character_constants() -> CharacterConstants {
    let two_rho = two_rho();
    let rho = two_rho.scale(&half());
    let factor = int(TILDE_ALPHA_FACTOR);
    let factors_through_det = rho.det_exponent().is_some() && two_rho.det_exponent().is_some();
    let rho_det = rho.det_exponent().unwrap_or_else(Rat::zero);
    let hm = &factor * &rho_det;
    // z = diag(t, t) has det t², so |χ(z)| = |t|^(2·e) when χ = det^e
    let z = int(2) * two_rho.det_exponent().unwrap_or_else(Rat::zero);
    let pairing = coroot_pairing(&rho, &Root::ALPHA.to_char());
    let consistent = factors_through_det && hm == int(CLAIMED_HM_DET_EXPONENT) && z == int(CLAIMED_Z_EXPONENT);
    CharacterConstants {
        two_rho,
        tilde_alpha_factor: factor.clone(),
        hm_det_exponent: hm,
        z_exponent: z,
        rho_det_exponent: rho_det,
        tilde_alpha_pairing_derived: &factor * &pairing,
        rho_alpha_pairing: pairing,
        tilde_alpha_pairing_claimed: int(CLAIMED_TILDE_ALPHA_PAIRING),
        consistent,
    }
}

/// Per-root outcome of conjugating a root vector by a generic torus element.
#[derive(Debug, Clone, Serialize)]
pub struct RootSpaceCheck {
    pub root: String,
    pub coordinate: String,
    pub scale: String,
    pub pass: bool,
}

/// For every root `γ`, `t X_γ t⁻¹ = γ(t) X_γ` with `t = torus(t1, t2)` symbolic.
pub fn root_space_certificate() -> Vec<RootSpaceCheck> {
    let t1 = RatFn::var(Symbol::T1);
    let t2 = RatFn::var(Symbol::T2);
    let t = torus(&t1, &t2).expect("symbolic torus is invertible");
    let tinv = t.inverse().expect("symbolic torus is invertible");
    Root::all()
        .map(|r| {
            let sym = r.coordinate().expect("every root has a coordinate");
            let x = LieCoords::<RatFn>::zero()
                .with(sym, RatFn::one())
                .expect("root coordinate")
                .to_matrix();
            let conj = &(&t * &x) * &tinv;
            let chi = r.value_on_torus(&t1, &t2).expect("nonzero torus");
            RootSpaceCheck {
                root: r.to_string(),
                coordinate: sym.to_string(),
                scale: chi.to_string(),
                pass: conj == x.scale(&chi),
            }
        })
        .collect()
}

/// `x_γ(u) = exp(u X_γ)` for a positive root `γ`.
pub fn root_vector<S: Scalar>(gamma: Root, u: S) -> Result<Mat7<S>> {
    if !gamma.is_positive() {
        return Err(Error::NegativeRoot(gamma.to_string()));
    }
    LieCoords::<S>::zero().with(gamma.coordinate()?, u)?.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_roots_and_heights() {
        assert_eq!(Root::all().count(), 12);
        assert_eq!(Root::POSITIVE.iter().map(|r| r.height()).max(), Some(5));
        assert!(Root::new(3, 2).is_root());
        assert!(!Root::new(2, 2).is_root());
        assert_eq!(Root::new(3, 1).coordinate().unwrap(), Symbol::X31);
        assert_eq!((-Root::BETA).coordinate().unwrap(), Symbol::Y01);
        assert_eq!(Root::new(2, 1).to_string(), "2α + β");
        assert_eq!((-Root::new(1, 1)).to_string(), "-α - β");
    }

    #[test]
    fn form_values() {
        let a = Root::ALPHA.to_char();
        let b = Root::BETA.to_char();
        assert_eq!(bilinear_form(&a, &a), int(1));
        assert_eq!(bilinear_form(&b, &b), int(3));
        assert_eq!(bilinear_form(&a, &b), rat(-3, 2));
    }

    #[test]
    fn two_rho_and_constants() {
        let c = character_constants();
        assert_eq!(c.two_rho, CharLattice::ints(10, 5));
        assert_eq!(c.hm_det_exponent, int(10));
        assert_eq!(c.z_exponent, int(10));
        assert_eq!(c.rho_det_exponent, rat(5, 2));
        assert!(c.consistent);
        assert_eq!(c.rho_alpha_pairing, rat(5, 2));
        assert_ne!(c.tilde_alpha_pairing_derived, c.tilde_alpha_pairing_claimed);
    }

    #[test]
    fn root_spaces_scale_by_characters() {
        let checks = root_space_certificate();
        assert_eq!(checks.len(), 12);
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }

    #[test]
    fn root_vectors() {
        assert!(root_vector(Root::ALPHA, int(0)).unwrap().is_identity());
        let b1 = root_vector(Root::BETA, int(1)).unwrap();
        assert_eq!(&b1 * &b1, root_vector(Root::BETA, int(2)).unwrap());
        assert!(matches!(root_vector(-Root::ALPHA, int(1)), Err(Error::NegativeRoot(_))));
    }

    #[test]
    fn torus_conjugates_root_vectors() {
        let t = torus(&int(2), &rat(1, 3)).unwrap();
        for r in Root::POSITIVE {
            let u = rat(5, 7);
            let lhs = root_vector(r, u.clone()).unwrap().conjugate_by(&t).unwrap();
            let chi = r.value_on_torus(&int(2), &rat(1, 3)).unwrap();
            assert_eq!(lhs, root_vector(r, chi * u).unwrap(), "{r}");
        }
    }
}
