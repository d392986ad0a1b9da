pub mod cli;
pub mod cochain;
pub mod coquasi;
pub mod error;
pub mod group;
pub mod io;
pub mod report;
pub mod scalar;
pub mod ydmodule;
pub mod zesting;

pub use cochain::{Coefficients, NormalizedCochain, SubgroupCoefficients, UnityScalars};
pub use error::{Error, Result};
pub use group::{Character, FiniteGroup, GroupElement, GroupSpec, QuotientGroup, Subgroup};
pub use report::VerificationReport;
pub use scalar::TorsionScalar;

/// Cochains with values in nonzero scalars (ω, t).
pub type ScalarCochain = NormalizedCochain<UnityScalars>;
/// Cochains with values in an abelian subgroup of Γ (λ).
pub type GroupCochain = NormalizedCochain<SubgroupCoefficients>;
