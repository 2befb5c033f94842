//! Exact computation with augmented directed complexes.
//!
//! The crate builds the chain complexes of finite posets and simplicial
//! complexes, the strict ∞-categories their cells generate (orientals), and
//! the certificates (base criteria, contractions, quasi-initial objects)
//! that make statements about those categories checkable by exact integer
//! arithmetic.
//!
//! Modules mirror the layers of the construction:
//!
//! * [`chains`]: integer chains over named basis elements, with the
//!   coefficientwise order, meet, and positive/negative parts.
//! * [`adc`]: augmented directed complexes, their morphisms, homotopies and
//!   duals.
//! * [`steiner`]: cells as two-row tables: composition, atoms, base
//!   criteria, enumeration, duality, truncation.
//! * [`simplicial`]: posets and simplicial complexes, their chain
//!   complexes, orientals, and nerves.
//! * [`contraction`]: chain contractions, negligible cells, connecting
//!   cells, and quasi-initial certificates.
//! * [`homcat`]: hom-categories between parallel cells of poset orientals:
//!   two-cell witnesses, interval splitting, 2-truncation.

pub mod acceptance;
pub mod adc;
pub mod chains;
pub mod contraction;
pub mod homcat;
pub mod simplicial;
pub(crate) mod solve;
pub mod steiner;

pub use adc::{Adc, AdcError, AdcHomotopy, AdcMorphism, Report, Violation};
pub use chains::{BasisElement, Chain, ChainError, Name};
pub use contraction::{Contraction, ContractionData, ContractionError, QuasiInitialCertificate};
pub use homcat::{HomcatError, RestrictionReport, TwoTruncation};
pub use steiner::{Cell, CellData, CellError};
