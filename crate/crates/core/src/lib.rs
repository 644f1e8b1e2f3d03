//! Distance distribution functions, the modified Levy metric, t-norms and
//! triangle functions, and finite probabilistic metric spaces.
//!
//! Everything is generic over a [`Scalar`]: `f64`, `f32` or the exact
//! rational `Rational64`. The aliases below fix the common choices.

pub mod ddf;
pub mod error;
pub mod levy;
pub mod pmspace;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod theorems;
pub mod triangle;

pub use ddf::{merged_abscissae, weak_convergence_report, Ddf, Extended};
pub use error::{Error, Result};
pub use levy::{condition_holds, dist_to_h0, in_h0_ball, levy_distance, LEVY_TOLERANCE};
pub use pmspace::{Boundedness, PmSpace, PointSeq, Separation, Subset, TbMode};
pub use report::{CheckReport, Outcome, Trace, Witness, WitnessValue};
pub use scalar::Scalar;
pub use theorems::{
    baire_check, cantor_check, diameter_report, heine_borel_report, subsequence_check,
    tb_bounded_report, CompactnessParams,
};
pub use triangle::{check_tnorm_axioms, check_triangle_axioms, TNorm, TriangleFn};

pub use num_rational::Rational64;

pub type Ddf64 = Ddf<f64>;
pub type Ddf32 = Ddf<f32>;
pub type DdfRational = Ddf<Rational64>;
pub type PmSpace64 = PmSpace<f64>;
pub type PmSpace32 = PmSpace<f32>;
pub type PmSpaceRational = PmSpace<Rational64>;
