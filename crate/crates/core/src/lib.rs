//! Dirac spectra with multiplicities, and η-invariants, as explicit functions of
//! the spin structure.
//!
//! Covered families: the circle and flat tori (all `2ⁿ` spin structures),
//! round spheres and spherical space forms `Γ\S^(2m−1)` (through their
//! Poincaré series and a closed character sum for η), the qualitative
//! collapse of circle bundles, a table of η-invariants of flat 3-manifolds
//! with an integrality check between spin structures, and the spectrum
//! type of hyperbolic link complements decided from linking parities.

pub mod collapse;
pub mod cyclotomic;
pub mod error;
pub mod exact;
pub mod integrality;
pub mod lattice;
pub mod links;
pub mod spaceform;
pub mod spectrum;
pub mod sphere;
pub mod torus;

pub use error::{Error, Result};
pub use exact::{ExactReal, Q};
pub use spectrum::Spectrum;
