//! Exact intersection theory on projective bundles over a polarised base,
//! and the adiabatic expansion of the Donaldson-Futaki invariant of the
//! test configurations induced by subbundles.
//!
//! * [`ring`]: the base intersection ring, given by rational structure constants
//! * [`chern`]: Chern and Segre calculus for bundles on the base
//! * [`fibered`]: classes on a projectivisation, pushforward via Segre classes
//! * [`kpoly`]: polynomials in the adiabatic parameter `k`
//! * [`futaki`]: the localised Futaki expansion, closed-form oracles, verdicts
//!
//! All arithmetic is over [`Rational`].
//!
//! ```
//! use std::sync::Arc;
//! use adiabatic_core::rational::rat;
//! use adiabatic_core::{BundleData, DfReport, GradedClass, IntersectionRing, TestConfigInput, Verdict};
//!
//! # fn main() -> adiabatic_core::Result<()> {
//! let ring = Arc::new(IntersectionRing::surface(&["H"], &[vec![rat(1)]])?);
//! let h = ring.basis_class("H")?;
//! let sub = BundleData::from_classes(&ring, 2, &[GradedClass::zero(), ring.point()])?;
//! let quot = BundleData::trivial(&ring, 1)?;
//! let input = TestConfigInput::new(ring.clone(), h.clone(), h.scaled(&rat(3)), sub, quot)?;
//! let report = DfReport::compute(&input, None)?;
//! assert_eq!(report.verdict, Verdict::UnstableWrtSubbundle);
//! # Ok(())
//! # }
//! ```

pub mod algebra;
pub mod chern;
pub mod error;
pub mod fibered;
pub mod futaki;
pub mod kpoly;
pub mod rational;
pub mod ring;

pub use chern::BundleData;
pub use error::{Error, Result};
pub use fibered::{FiberedClass, FiberedRing, KExpansion};
pub use futaki::{
    closed_form, crosscheck, filtration_combine, futaki_k_polynomial, verdict, Bracket,
    CrosscheckReport, DfReport, FutakiExpansion, Slopes, TestConfigInput, Verdict,
};
pub use kpoly::KPolynomial;
pub use rational::Rational;
pub use ring::{BasisIndex, GradedClass, IntersectionRing};
