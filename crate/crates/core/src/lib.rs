pub mod bigcell;
pub mod error;
pub mod g2;
pub mod levi;
pub mod mat7;
pub mod nbar;
pub mod ring;
pub mod scalar;
pub mod stability;
pub mod suite;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use ring::{Rat, RatFn};

/// Exact 7×7 matrices over ℚ.
pub type RatMat7 = mat7::Mat7<Rat>;
/// 7×7 matrices whose entries are rational functions of the coordinates.
pub type SymMat7 = mat7::Mat7<RatFn>;
/// Floating-point matrices for quick numerical sanity checks.
pub type Mat7f64 = mat7::Mat7<f64>;
pub type RatGL2 = levi::GL2Elem<Rat>;
pub type RatNCoords = g2::NCoords<Rat>;
pub type SymNCoords = g2::NCoords<RatFn>;
