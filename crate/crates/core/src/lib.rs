//! Exact cyclic operads with multiplication and the structures they carry:
//! Hochschild and Cotor cohomology with their Batalin–Vilkovisky algebra,
//! cyclic cohomology with its degree −2 Lie bracket, and exhaustive
//! machine checks of the chain-level identities behind them.
//!
//! Two families of operads are built from structure constants:
//! [`endo::EndOperad`] for a symmetric (Frobenius) algebra and
//! [`cobar::CobarOperad`] for a Hopf algebra with a modular pair in
//! involution. Everything is computed over ℚ or 𝔽ₚ with exact arithmetic.

pub mod cobar;
pub mod cohomology;
pub mod cyclic;
pub mod endo;
pub mod exactfield;
pub mod input;
pub mod linalg;
pub mod operad;
pub mod report;

pub use cobar::{build_cobar_operad, CobarOperad, HopfPresentation};
pub use cohomology::{CohomologyClass, NormalizedComplex};
pub use cyclic::CyclicStructure;
pub use endo::{build_endo_operad, AlgebraPresentation, BuildMode, EndOperad};
pub use exactfield::{Field, FieldSpec, PrimeField, Rational, Rationals};
pub use operad::{Cochain, Operad};
pub use report::Check;
