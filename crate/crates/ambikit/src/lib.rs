//! Exact computer algebra for birational implicitization of statistical models.
//!
//! A statistical model is often given parametrically: a map α sends a
//! parameter vector θ (entries of a concentration matrix, structural-equation
//! coefficients, branch probabilities of a probability tree, a drift matrix of
//! a stochastic process, …) to a point of the model (a covariance matrix, a
//! joint distribution).  For many families of interest the map α is not just
//! rational but *birational*: it admits a rational inverse β, and both maps
//! become mutually inverse ring isomorphisms after inverting finitely many
//! denominator polynomials that are strictly positive on the spaces involved.
//!
//! This crate turns that structure into algorithms.  Working over exact
//! rational arithmetic throughout, it can
//!
//! * represent the parametrization and its inverse as a pair of pullbacks
//!   between localized polynomial rings ([`birational::BirationalIso`]),
//!   verify the inverse identities symbolically, and enlarge the localizing
//!   monoids until the pair becomes a full isomorphism;
//! * push parameter-side constraints (equations, inequalities, inequations)
//!   through the inverse pullback and extract sign-preserved numerators,
//!   yielding a finite implicit description of the model
//!   ([`implicitize::markov_property`]);
//! * compute the vanishing ideal of the model as a monoid saturation of the
//!   transferred equations ([`implicitize::vanishing_ideal`]), which is
//!   drastically cheaper than classical elimination on the same instances;
//! * decide model equivalence exactly, producing a certificate polynomial or
//!   a violating rational point when two models differ
//!   ([`implicitize::model_equiv`]);
//! * build all of the above for concrete families: linear and polyhedral
//!   concentration models, Gaussian DAG / structural equation models
//!   (including colored, interventional, and a confounded instance), staged
//!   trees, and Lyapunov models ([`modelzoo`]).
//!
//! The computational substrate is a deterministic Buchberger engine
//! ([`groebner`]) with block elimination orders, ideal saturation, and
//! cooperative cancellation, on top of sparse multivariate polynomials with
//! arbitrary-precision rational coefficients ([`polyring`], [`fraction`]).
//!
//! No floating point is used anywhere: every emitted identity is exact.

pub mod birational;
pub mod fraction;
pub mod groebner;
pub mod implicitize;
pub mod modelzoo;
pub mod parallel;
pub mod polyring;

pub use num::{BigInt, BigRational};
