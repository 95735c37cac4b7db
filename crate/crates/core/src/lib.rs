//! Roots of scalar quadratics `a x^2 + b x + c` with real or complex
//! coefficients, computed through a standardized form
//! `y^2 - 2 beta y + e` so that every root is element-wise mixed stable.
//!
//! Alongside the solver the crate ships a small stability bench:
//!
//! * [`oracle`] evaluates roots and recomposed coefficients in extended
//!   precision so errors are measured against ground truth,
//! * [`stability`] turns those measurements into forward, element-wise
//!   backward, mixed and norm-wise figures, and hosts the ulp-grid search
//!   showing that element-wise backward stability cannot always be reached,
//! * [`experiment`] generates seeded random corpora and writes CSV reports,
//! * [`format`] parses and prints the complex literals used on the command line.
//!
//! ```
//! use quadroot::{solve, Quadratic};
//!
//! let roots = solve(&Quadratic::real(1.0, -2.5, 1.0)).unwrap();
//! assert_eq!((roots.x1.re, roots.x2.re), (2.0, 0.5));
//! ```

mod error;

pub mod experiment;
pub mod format;
pub mod oracle;
pub mod scalar;
pub mod solver;
pub mod stability;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use oracle::{ExtendedComplex, ExtendedScalar};
pub use solver::{solve, solve_with_diagnostics, Kind, Quadratic, RootCase, RootPair, Solution};
pub use stability::{assess, StabilityReport};
