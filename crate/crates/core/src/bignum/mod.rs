//! Exact rationals, base-10 fixed point, quadratic surds and interval balls.

mod ball;
mod fixed;
pub mod rational;
mod surd;

pub use ball::Ball;
pub use fixed::{arith, pow_int, rational_to_fixed, rational_to_fixed_ceil, sqrt, ArithOp, BigFixed};
pub use rational::Rational;
pub use surd::Surd;

/// Evaluates `f` at increasing working scales until its ball is narrow
/// enough to round to `scale` faithfully.
///
/// `f` receives the working scale. Guard digits start at 10 and double up to
/// `max_guard`; a radius of at most half a unit at `scale` leaves the rounded
/// midpoint within one unit of the exact value. Returns the rounded value and
/// the radius of the ball it came from.
pub fn settle<F>(scale: u32, max_guard: u32, mut f: F) -> crate::Result<(BigFixed, BigFixed)>
where
    F: FnMut(u32) -> crate::Result<Ball>,
{
    let mut guard = 10;
    loop {
        let w = scale + guard;
        let ball = f(w)?;
        // rad ≤ 0.5·10^-scale at working scale w: 2·rad ≤ 10^guard
        if &(ball.rad() * 2u32) <= &rational::pow10(guard) {
            return Ok((ball.mid_fixed().round_to(scale), ball.rad_fixed()));
        }
        if guard >= max_guard {
            return Err(crate::Error::PrecisionCap {
                cap: scale + guard,
                what: "interval did not narrow".into(),
            });
        }
        guard *= 2;
    }
}
