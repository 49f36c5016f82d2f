//! Positively multiplicative graphs: exact Laurent-polynomial linear algebra,
//! multiplicative bases, structure constants, roots, expansions and the
//! crystal families used as test material.

pub mod laurent;

pub use laurent::{LaurentError, LaurentPoly, Monomial, PolyFraction, Rational};
pub mod linalg;

pub use linalg::{FracMatrix, PolyMatrix, PolyUnivariate};
pub mod graph;

pub use graph::{GraphError, MonomialDigraph, WeightedDigraph};
pub mod pm;

pub use pm::{compute_basis, GenPerm, MultiplicativeBasis, PmError, StructureConstants};
pub mod crystals;
pub mod spectral;

pub use spectral::{DimensionVector, PFResult, Specialization, SpectralError};
pub mod expansion;

pub use expansion::{ExpNode, ExpansionGraph, HarmonicAssignment};
pub mod symmetrize;

pub use symmetrize::{ModuleAutomorphism, SymmetrizedBasis};
