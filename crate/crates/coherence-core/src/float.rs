//! Scalar abstraction for the analytic core.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float as NumFloat, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar the closed-form machinery is generic over.
pub trait Float:
    NumFloat + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Shorthand for lossy conversion from `f64` literals.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 conversion")
    }
}

impl Float for f32 {}
impl Float for f64 {}
