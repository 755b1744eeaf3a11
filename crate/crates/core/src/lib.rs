//! Exact-arithmetic engine for hom-space linear algebra over finitely
//! presented k-linear additive categories.
//!
//! The crate is organised around a small stack:
//!
//! * [`field`] / [`matrix`] — exact scalars (ℚ, 𝔽_p) and the echelon-form
//!   kernel/image/homology toolkit everything else reduces to;
//! * [`cat`] — finite presentations of k-linear categories, formal direct
//!   sums, block morphisms and matrix-valued functors;
//! * [`diagram`] — pairing-diagram categories on one object / one morphism /
//!   one endomorphism / one unbraided object, truncated to a word-length
//!   window;
//! * [`complex`] — bounded complexes, cones, homotopy classes of chain maps;
//! * [`noy`] — the kernel-completion category whose objects are morphisms,
//!   with its hom formula, kernels and induced functors;
//! * [`kernels`] — canonical and homological kernel invariants, prexactness
//!   and flatness certificates;
//! * [`sites`] — additive sieves, Grothendieck-topology enumeration on a
//!   finite skeleton, and functor-induced topologies.
//!
//! ```
//! use homkern::{algebras, cat, kernels, AddObject, FieldSpec};
//! use homkern::cat::MorphismExpr;
//!
//! // the free-module skeleton of k[x]/x² over the rationals
//! let c = algebras::dual_numbers(FieldSpec::Rationals)?;
//! let x = MorphismExpr::from_basis(&c, c.find_basis("x").unwrap());
//! let r = AddObject::single(c.find_object("R").unwrap());
//!
//! // the canonical kernel of x at R vanishes, with a complete window
//! let w = kernels::Window::with_all_generators(&c);
//! let value = kernels::canonical_sigma(&c, &r, &x, &w)?;
//! assert_eq!(value.dimension(), 0);
//! # Ok::<(), homkern::Error>(())
//! ```

pub mod algebras;
pub mod cat;
pub mod complex;
pub mod diagram;
pub mod error;
pub mod field;
pub mod kernels;
pub mod matrix;
pub mod noy;
pub mod sites;

pub use cat::{AddObject, BasisMor, CatPresentation, Category, FunctorSpec, LinComb, LinearFunctor, MonoidalCategory, MorphismExpr, ObjId};
pub use error::Error;
pub use field::{FieldSpec, Scalar};
pub use matrix::{ExactMatrix, SubQuotient};

pub type Result<T> = std::result::Result<T, Error>;
