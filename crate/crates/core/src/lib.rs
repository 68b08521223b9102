//! Exact computations for the `sl(2n+2)` contact grading and its
//! quaternionic subalgebra: Spencer cohomology, the long exact sequence
//! relating absolute and relative complexes, Kostant's description of the
//! absolute groups, isotypic decompositions, and the obstruction class of
//! a quaternionic contact bracket.
//!
//! ```
//! use spencer_core::decomp::{decompose, format_formula};
//! use spencer_core::spencer::{Complex, Spencer};
//!
//! let s = Spencer::new(2)?;
//! let h = s.cohomology(0, 2, Complex::Relative)?;
//! let parts = decompose(&h.character)?;
//! assert_eq!(h.dim, 43);
//! assert_eq!(format_formula(s.algebra().m(), &parts), "S²H+ES³H+(Triv+S²E*)S⁴H+ES⁵H");
//! # Ok::<(), spencer_core::Error>(())
//! ```

pub mod cli;
pub mod crq;
pub mod decomp;
pub mod error;
pub mod exactla;
pub mod gla;
pub mod kostant;
pub mod roots;
pub mod spencer;

pub use error::{Error, Result};
