//! Exact rational scalars, sample points, and the q-shifted factorial
//! primitives every other module is built on.

mod poch;
mod point;
mod rational;

pub use poch::{qbinom, qpoch, qpoch_multi, qpoch_recip, qpow};
pub use point::{check_base, x_name, ParamPoint, INDEX_NAMES};
pub use rational::{ratio, QRational};
