//! Exact ℚ/ℤ scalars and the abelian cocycle data on a group.

mod bichar;
mod phase;
mod quadratic;

pub use bichar::{descend, orthogonal_complement, phase_kernel, radical, Bicharacter, Descent};
pub use phase::{in_multiple_of, phase_of_power, Phase};
pub use quadratic::{QuadraticForm, TwistFunction};
