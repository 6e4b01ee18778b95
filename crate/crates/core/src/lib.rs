#![no_std]
//! Exact arithmetic on diagonal quartic surfaces `a x⁴ + b y⁴ + c z⁴ + d w⁴ = 0`
//! whose coefficient product is a square: the two elliptic fibrations, the
//! endomorphisms `e₁, e₂`, torsion classification on fibres and orbit
//! generation.

extern crate alloc;

pub mod error;
pub mod exact;
pub mod fibration;
pub mod linalg;
pub mod poly;
pub mod surface;
pub mod endo;
pub mod ellcurve;
pub mod torsion;
pub mod orbit;
pub mod props;

pub use error::{Error, ExitClass, Result};
pub use exact::{Int, P1Point, ProjPoint, Rat};
pub use fibration::{FibreId, RulingPair};
pub use surface::{Pairing, PointClass, SignAut, Surface};
