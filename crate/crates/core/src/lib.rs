//! Exact condensation calculus for simple current extensions.
//!
//! Given a group Γ of invertible simple objects in a braided tensor category
//! described by finite data, this crate decides whether the simple current
//! algebra `A = ⊕_{g∈Γ} E_g` exists and is commutative, classifies the simple
//! (local) `A`-modules, and evaluates the ribbon, finiteness and
//! non-degeneracy criteria for the category of local modules.
//!
//! All scalars are exact elements of ℚ/ℤ ([`forms::Phase`]); nothing in the
//! crate uses floating point.
//!
//! Module map:
//!
//! * [`abgroup`]: finitely generated abelian groups, Smith normal form.
//! * [`forms`]: phases, bicharacters, quadratic forms, twists.
//! * [`cohomology`]: normalized cochains and ℚ/ℤ-linear solvers.
//! * [`projrep`]: twisted group algebras of finite abelian groups.
//! * [`engine`]: spectrum tables, module census and verdicts.
//! * [`pointed`]: metric groups, condensation and the brute-force oracle.
//! * [`unrolled`]: unrolled quantum group family.
//! * [`gl11`]: unrolled `gl(1|1)` family.

pub mod abgroup;
pub mod cohomology;
pub mod engine;
pub mod error;
pub mod forms;
pub mod gl11;
pub mod pointed;
pub mod projrep;
pub mod unrolled;

pub use error::{Error, Result};

/// Library version string, echoed into reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
