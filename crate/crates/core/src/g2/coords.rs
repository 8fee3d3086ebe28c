//! Five-coordinate tuples for the unipotent radical `N` and its opposite `N̄`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::g2::lie::LieCoords;
use crate::mat7::Mat7;
use crate::ring::{RatFn, Symbol};
use crate::scalar::Scalar;

macro_rules! unipotent_coords {
    ($name:ident, $group:literal, $syms:expr, [$($f:ident),*]) => {
        #[derive(Clone, Debug, PartialEq, Serialize)]
        pub struct $name<S> {
            $(pub $f: S,)*
        }

        impl<S: Scalar> $name<S> {
            pub fn new($($f: S),*) -> Self {
                $name { $($f),* }
            }

            pub fn zero() -> Self {
                $name { $($f: S::zero()),* }
            }

            pub fn from_array(c: [S; 5]) -> Self {
                let [$($f),*] = c;
                $name { $($f),* }
            }

            pub fn to_array(&self) -> [S; 5] {
                [$(self.$f.clone()),*]
            }

            pub fn symbols() -> [Symbol; 5] {
                $syms
            }

            pub fn to_lie(&self) -> LieCoords<S> {
                let mut arr: [S; 14] = std::array::from_fn(|_| S::zero());
                for (s, v) in Self::symbols().into_iter().zip(self.to_array()) {
                    arr[s.index()] = v;
                }
                LieCoords::from_array(arr)
            }

            pub fn to_matrix(&self) -> Mat7<S> {
                self.to_lie().to_matrix()
            }

            pub fn exp(&self) -> Result<Mat7<S>> {
                self.to_matrix().exp_nilpotent()
            }

            /// The five coordinates, after checking every other coordinate vanishes.
            pub fn from_lie(c: &LieCoords<S>) -> Result<Self> {
                let arr = c.to_array();
                let ours = Self::symbols();
                for (k, v) in arr.iter().enumerate() {
                    let s = Symbol::from_index(k).expect("lie coordinate");
                    if !ours.contains(&s) && !v.is_zero() {
                        return Err(Error::NotInSubgroup {
                            subgroup: $group,
                            detail: format!("coordinate {s} is {v:?}"),
                        });
                    }
                }
                Ok(Self::from_array(ours.map(|s| arr[s.index()].clone())))
            }

            /// Coordinates of `log g`.
            pub fn from_group(g: &Mat7<S>) -> Result<Self> {
                let log = g.log_unipotent()?;
                Self::from_lie(&LieCoords::from_matrix(&log)?)
            }

            pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> $name<T> {
                $name { $($f: f(&self.$f)),* }
            }
        }

        impl $name<RatFn> {
            /// Each coordinate replaced by its own symbol.
            pub fn generic() -> Self {
                Self::from_array(Self::symbols().map(RatFn::var))
            }
        }

        impl<S: fmt::Display> fmt::Display for $name<S> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts = [$(self.$f.to_string()),*];
                write!(f, "({})", parts.join(", "))
            }
        }
    };
}

unipotent_coords!(NCoords, "N", Symbol::N, [x10, x11, x21, x31, x32]);
unipotent_coords!(NbarCoords, "N-bar", Symbol::NBAR, [y10, y11, y21, y31, y32]);

impl NbarCoords<RatFn> {
    /// The generic tuple in the primed symbols `y10', ..., y32'`.
    pub fn generic_primed() -> Self {
        NbarCoords::from_array(Symbol::NBAR_P.map(RatFn::var))
    }

    /// The generic tuple in the double-primed symbols.
    pub fn generic_double_primed() -> Self {
        NbarCoords::from_array(Symbol::NBAR_PP.map(RatFn::var))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat, Rat};

    #[test]
    fn n_round_trip_through_exp_log() {
        let n = NCoords::new(int(1), rat(1, 2), int(-3), int(2), rat(5, 7));
        assert_eq!(NCoords::from_group(&n.exp().unwrap()).unwrap(), n);
        let nb = NbarCoords::new(int(2), int(-1), rat(1, 3), int(4), int(1));
        assert_eq!(NbarCoords::from_group(&nb.exp().unwrap()).unwrap(), nb);
    }

    #[test]
    fn symbolic_round_trip() {
        let n = NCoords::generic();
        assert_eq!(NCoords::from_group(&n.exp().unwrap()).unwrap(), n);
        let nb = NbarCoords::generic();
        assert_eq!(NbarCoords::from_group(&nb.exp().unwrap()).unwrap(), nb);
    }

    #[test]
    fn membership_enforced() {
        let nb = NbarCoords::new(int(1), int(0), int(0), int(0), int(0));
        let err = NCoords::<Rat>::from_group(&nb.exp().unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotInSubgroup { subgroup: "N", .. }));
    }

    #[test]
    fn x32_layout() {
        let m = NCoords::new(int(0), int(0), int(0), int(0), int(1)).to_matrix();
        assert_eq!(m[(0, 2)], int(1));
        assert_eq!(m[(5, 3)], int(-1));
    }
}
