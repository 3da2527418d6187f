//! Scalar abstraction for the numeric modules.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar usable by the matrix, RRWP, and kernel modules.
///
/// Implemented by `f32` and `f64`; the rest of the crate (plans, refinement,
/// oracles) is purely combinatorial and takes no scalar parameter.
pub trait Real:
    Float + NumAssign + FromPrimitive + Default + Debug + Display + Send + Sync + 'static
{
    fn of_f64(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 conversion")
    }
    fn of_usize(x: usize) -> Self {
        <Self as FromPrimitive>::from_usize(x).expect("usize conversion")
    }
}

impl<T> Real for T where
    T: Float + NumAssign + FromPrimitive + Default + Debug + Display + Send + Sync + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum_of_halves<R: Real>(k: usize) -> R {
        let half = R::of_f64(0.5);
        let mut acc = R::zero();
        for _ in 0..k {
            acc += half;
        }
        acc
    }

    #[test]
    fn works_for_both_widths() {
        assert_eq!(sum_of_halves::<f64>(4), 2.0);
        assert_eq!(sum_of_halves::<f32>(4), 2.0);
    }
}
