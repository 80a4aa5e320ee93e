//! Exact computer algebra for generalized intersection matrices (GIMs) of
//! N-fold affinization and the level-one Fock-space vertex representation of
//! quantum N-toroidal algebras in simply-laced types.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar`] — the coefficient field ℚ(v) with q = v², q-integers and
//!   Gaussian binomials;
//! * [`rootdata`] — finite and affine Cartan data for types A–G;
//! * [`gim`] — GIMs of N-fold affinization and their Dynkin diagrams;
//! * [`fock`] — the Fock module S(ĥ⁻) ⊗ 𝕂[Q] with Heisenberg, lattice and
//!   zero-mode actions;
//! * [`vertex`] — vertex operators, mode extraction and contraction series;
//! * [`relcheck`] — the relation catalogs, the generic verifier, the GIM
//!   dictionary, the simplified-generator tower and the τ symmetry check.
//!
//! The command-line front end lives in `src/bin/ntoroidal.rs`.

pub mod fock;
pub mod gim;
pub mod poly;
pub mod relcheck;
pub mod rootdata;
pub mod scalar;
pub mod vertex;

pub use scalar::Scalar;
