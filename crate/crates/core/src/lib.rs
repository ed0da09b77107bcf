//! Exact computations with subspace lattices, operator algebras and their
//! collineation groups.
//!
//! All linear algebra is exact over a [`Scalar`] field: [`Rational`] (ℚ) or
//! [`GaussianRational`] (ℚ(i)). Subspaces are kept in a canonical echelon form
//! so that equality is structural. The `C*` aliases fix the field to ℚ(i) and
//! the `Q*` aliases to ℚ.

pub mod algops;
pub mod collineation;
pub mod duality;
pub mod error;
pub mod funcnest;
pub mod lattice;
pub mod matrix;
pub mod medial;
pub mod poset;
pub mod rng;
pub mod scalar;
pub mod subspace;

pub use algops::{OperatorAlgebra, ProbeReport};
pub use collineation::Collineation;
pub use duality::ConjugateOperator;
pub use error::{Error, Result};
pub use lattice::SubspaceLattice;
pub use matrix::Matrix;
pub use medial::{MedialKind, MedialRealization};
pub use poset::{FiniteLattice, LatticeAutomorphism, LatticeShape};
pub use rng::Lcg64;
pub use scalar::{GaussianRational, Rational, Scalar};
pub use subspace::Subspace;

pub type CMatrix = Matrix<GaussianRational>;
pub type CSubspace = Subspace<GaussianRational>;
pub type CLattice = SubspaceLattice<GaussianRational>;
pub type CAlgebra = OperatorAlgebra<GaussianRational>;
pub type CCollineation = Collineation<GaussianRational>;
pub type CMedial = MedialRealization<GaussianRational>;
pub type CConjugate = ConjugateOperator<GaussianRational>;

pub type QMatrix = Matrix<Rational>;
pub type QSubspace = Subspace<Rational>;
pub type QLattice = SubspaceLattice<Rational>;
pub type QAlgebra = OperatorAlgebra<Rational>;
pub type QCollineation = Collineation<Rational>;
pub type QMedial = MedialRealization<Rational>;
