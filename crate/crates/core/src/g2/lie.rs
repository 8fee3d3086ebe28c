//! The 14-dimensional realization of the Lie algebra of split G2 inside 7×7
//! matrices.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat7::Mat7;
use crate::ring::{Rat, RatFn, Symbol};
use crate::scalar::Scalar;

pub const DIM: usize = 14;

/// Coordinate names in storage order. They coincide with the first fourteen
/// entries of the global symbol namespace.
pub const COORD_NAMES: [&str; DIM] = [
    "a", "b", "x01", "x10", "x11", "x21", "x31", "x32", "y01", "y10", "y11", "y21", "y31", "y32",
];

const A: usize = 0;
const B: usize = 1;
const X01: usize = 2;
const X10: usize = 3;
const X11: usize = 4;
const X21: usize = 5;
const X31: usize = 6;
const X32: usize = 7;
const Y01: usize = 8;
const Y10: usize = 9;
const Y11: usize = 10;
const Y21: usize = 11;
const Y31: usize = 12;
const Y32: usize = 13;

/// `(row, col, coefficient, coordinate)`; an entry is the sum of its rows.
#[rustfmt::skip]
const LAYOUT: [(usize, usize, i64, usize); 44] = [
    (0, 0, 1, A), (0, 1, 1, X01), (0, 2, 1, X32), (0, 4, -1, X21), (0, 5, 1, Y10), (0, 6, 2, X11),
    (1, 0, 1, Y01), (1, 1, 1, B), (1, 2, 1, X31), (1, 3, 1, X21), (1, 5, -1, Y11), (1, 6, 2, X10),
    (2, 0, 1, Y32), (2, 1, 1, Y31), (2, 2, -1, A), (2, 2, -1, B), (2, 3, -1, Y10), (2, 4, 1, Y11),
    (2, 6, 2, Y21),
    (3, 1, 1, Y21), (3, 2, -1, X10), (3, 3, -1, A), (3, 4, -1, Y01), (3, 5, -1, Y32), (3, 6, 2, Y11),
    (4, 0, -1, Y21), (4, 2, 1, X11), (4, 3, -1, X01), (4, 4, -1, B), (4, 5, -1, Y31), (4, 6, 2, Y10),
    (5, 0, 1, X10), (5, 1, -1, X11), (5, 3, -1, X32), (5, 4, -1, X31), (5, 5, 1, A), (5, 5, 1, B),
    (5, 6, 2, X21),
    (6, 0, 1, Y11), (6, 1, 1, Y10), (6, 2, 1, X21), (6, 3, 1, X11), (6, 4, 1, X10), (6, 5, 1, Y21),
];

/// Entries from which each coordinate is read back, all with coefficient 1.
const READ: [(usize, usize); DIM] = [
    (0, 0),
    (1, 1),
    (0, 1),
    (5, 0),
    (4, 2),
    (1, 3),
    (1, 2),
    (0, 2),
    (1, 0),
    (0, 5),
    (2, 4),
    (3, 1),
    (2, 1),
    (2, 0),
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LieCoords<S> {
    pub a: S,
    pub b: S,
    pub x01: S,
    pub x10: S,
    pub x11: S,
    pub x21: S,
    pub x31: S,
    pub x32: S,
    pub y01: S,
    pub y10: S,
    pub y11: S,
    pub y21: S,
    pub y31: S,
    pub y32: S,
}

impl<S: Scalar> LieCoords<S> {
    pub fn zero() -> Self {
        Self::from_array(std::array::from_fn(|_| S::zero()))
    }

    pub fn from_array(c: [S; DIM]) -> Self {
        let [a, b, x01, x10, x11, x21, x31, x32, y01, y10, y11, y21, y31, y32] = c;
        LieCoords {
            a,
            b,
            x01,
            x10,
            x11,
            x21,
            x31,
            x32,
            y01,
            y10,
            y11,
            y21,
            y31,
            y32,
        }
    }

    pub fn to_array(&self) -> [S; DIM] {
        [
            self.a.clone(),
            self.b.clone(),
            self.x01.clone(),
            self.x10.clone(),
            self.x11.clone(),
            self.x21.clone(),
            self.x31.clone(),
            self.x32.clone(),
            self.y01.clone(),
            self.y10.clone(),
            self.y11.clone(),
            self.y21.clone(),
            self.y31.clone(),
            self.y32.clone(),
        ]
    }

    /// The coordinate vector with a single 1 in slot `k`.
    pub fn unit(k: usize) -> Self {
        Self::from_array(std::array::from_fn(|i| if i == k { S::one() } else { S::zero() }))
    }

    pub fn basis() -> Vec<Self> {
        (0..DIM).map(Self::unit).collect()
    }

    pub fn with(mut self, s: Symbol, v: S) -> Result<Self> {
        let k = s.index();
        if k >= DIM {
            return Err(Error::UnknownSymbol(format!("{s} is not a Lie coordinate")));
        }
        let mut arr = self.to_array();
        arr[k] = v;
        self = Self::from_array(arr);
        Ok(self)
    }

    pub fn to_matrix(&self) -> Mat7<S> {
        let c = self.to_array();
        let mut m = Mat7::<S>::zero();
        for &(i, j, k, idx) in &LAYOUT {
            if c[idx].is_zero() {
                continue;
            }
            let term = c[idx].clone() * S::from_i64(k);
            m[(i, j)] = m[(i, j)].clone() + term;
        }
        m
    }

    /// Reads the coordinates back and checks that they rebuild `m` exactly.
    pub fn from_matrix(m: &Mat7<S>) -> Result<Self> {
        let c = Self::from_array(std::array::from_fn(|k| m[READ[k]].clone()));
        let rebuilt = c.to_matrix();
        for i in 0..7 {
            for j in 0..7 {
                if rebuilt[(i, j)] != m[(i, j)] {
                    return Err(Error::NotInRealization(format!(
                        "entry ({},{}) is {:?}, the realization forces {:?}",
                        i + 1,
                        j + 1,
                        m[(i, j)],
                        rebuilt[(i, j)]
                    )));
                }
            }
        }
        Ok(c)
    }

    pub fn exp(&self) -> Result<Mat7<S>> {
        self.to_matrix().exp_nilpotent()
    }
}

impl LieCoords<RatFn> {
    /// Every coordinate replaced by its own symbol.
    pub fn generic() -> Self {
        Self::from_array(std::array::from_fn(|k| {
            RatFn::var(Symbol::from_index(k).expect("lie coordinates are symbols"))
        }))
    }
}

impl<S: fmt::Display> fmt::Display for LieCoords<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals = [
            &self.a, &self.b, &self.x01, &self.x10, &self.x11, &self.x21, &self.x31, &self.x32, &self.y01, &self.y10,
            &self.y11, &self.y21, &self.y31, &self.y32,
        ];
        let parts: Vec<String> = COORD_NAMES.iter().zip(vals).map(|(n, v)| format!("{n}={v}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Outcome of bracketing every pair of basis vectors.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    pub pairs_checked: usize,
    pub failures: Vec<String>,
    /// Number of nonzero structure constants `[e_i, e_j] = Σ c_ij^k e_k`.
    pub nonzero_structure_constants: usize,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.pairs_checked == DIM * (DIM - 1) / 2 && self.failures.is_empty()
    }
}

pub fn closure_certificate() -> ClosureReport {
    let basis: Vec<Mat7<Rat>> = LieCoords::<Rat>::basis().iter().map(|c| c.to_matrix()).collect();
    let mut failures = Vec::new();
    let mut pairs = 0;
    let mut nonzero = 0;
    for i in 0..DIM {
        for j in i + 1..DIM {
            pairs += 1;
            match LieCoords::from_matrix(&basis[i].commutator(&basis[j])) {
                Ok(c) => nonzero += c.to_array().iter().filter(|v| !v.is_zero()).count(),
                Err(e) => failures.push(format!("[{}, {}]: {e}", COORD_NAMES[i], COORD_NAMES[j])),
            }
        }
    }
    ClosureReport {
        pairs_checked: pairs,
        failures,
        nonzero_structure_constants: nonzero,
    }
}

/// The argument `x01 + x10` of the generic character on `u ∈ U`; the additive
/// character itself is never evaluated.
pub fn generic_character_functional<S: Scalar>(u: &Mat7<S>) -> Result<S> {
    let c = LieCoords::from_matrix(&u.log_unipotent()?)?;
    let arr = c.to_array();
    let outside: Vec<&str> = [A, B, Y01, Y10, Y11, Y21, Y31, Y32]
        .into_iter()
        .filter(|&k| !arr[k].is_zero())
        .map(|k| COORD_NAMES[k])
        .collect();
    if !outside.is_empty() {
        return Err(Error::NotInSubgroup {
            subgroup: "U",
            detail: format!("nonzero coordinates {}", outside.join(", ")),
        });
    }
    Ok(c.x01 + c.x10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;
    use proptest::prelude::*;

    #[test]
    fn zero_and_single_coordinate() {
        assert!(LieCoords::<Rat>::zero().to_matrix().is_zero());
        let c = LieCoords::<Rat>::zero().with(Symbol::X32, int(1)).unwrap();
        let m = c.to_matrix();
        assert_eq!(m[(0, 2)], int(1));
        assert_eq!(m[(5, 3)], int(-1));
        let nonzero = m.rows().iter().flatten().filter(|v| **v != int(0)).count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn trace_balancing_diagonal() {
        let m = LieCoords::<RatFn>::generic().to_matrix();
        let a = RatFn::var(Symbol::A);
        let b = RatFn::var(Symbol::B);
        assert_eq!(m[(2, 2)], -(&a + &b));
        assert_eq!(m[(5, 5)], &a + &b);
        assert_eq!(m[(6, 6)], RatFn::zero());
        assert_eq!(m[(1, 6)], RatFn::var(Symbol::X10).scale(&int(2)));
    }

    #[test]
    fn generic_round_trip() {
        let c = LieCoords::<RatFn>::generic();
        assert_eq!(LieCoords::from_matrix(&c.to_matrix()).unwrap(), c);
    }

    #[test]
    fn rejects_foreign_matrix() {
        let mut m = Mat7::<Rat>::zero();
        m[(0, 3)] = int(1);
        assert!(matches!(LieCoords::from_matrix(&m), Err(Error::NotInRealization(_))));
    }

    #[test]
    fn basis_closes_under_bracket() {
        let r = closure_certificate();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.pairs_checked, 91);
    }

    #[test]
    fn generic_character_argument() {
        use crate::g2::roots::{root_vector, Root};
        assert_eq!(generic_character_functional(&Mat7::<Rat>::identity()).unwrap(), int(0));
        let u = root_vector(Root::BETA, int(3)).unwrap();
        assert_eq!(generic_character_functional(&u).unwrap(), int(3));
        let u = root_vector(Root::new(2, 1), int(5)).unwrap();
        assert_eq!(generic_character_functional(&u).unwrap(), int(0));
        let u = &root_vector(Root::BETA, int(2)).unwrap() * &root_vector(Root::ALPHA, int(7)).unwrap();
        assert_eq!(generic_character_functional(&u).unwrap(), int(9));
        assert_eq!(
            generic_character_functional(&Mat7::<Rat>::zero()),
            Err(Error::NotUnipotent)
        );
        let y = LieCoords::<Rat>::zero()
            .with(Symbol::Y10, int(1))
            .unwrap()
            .exp()
            .unwrap();
        assert!(matches!(
            generic_character_functional(&y),
            Err(Error::NotInSubgroup { .. })
        ));
    }

    fn coords() -> impl Strategy<Value = LieCoords<Rat>> {
        prop::collection::vec(-6i64..=6, DIM).prop_map(|v| LieCoords::from_array(std::array::from_fn(|k| int(v[k]))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bracket_of_random_elements_closes(c1 in coords(), c2 in coords()) {
            let br = c1.to_matrix().commutator(&c2.to_matrix());
            prop_assert!(LieCoords::from_matrix(&br).is_ok());
        }

        #[test]
        fn round_trip(c in coords()) {
            prop_assert_eq!(LieCoords::from_matrix(&c.to_matrix()).unwrap(), c);
        }
    }
}
