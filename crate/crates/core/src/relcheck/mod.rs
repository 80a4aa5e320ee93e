//! Relation catalogs and the generic verifier.
//!
//! Every displayed relation of the algebra presentations is encoded as a
//! [`RelationSpec`](expr::RelationSpec) — a pair of evaluable operator
//! expressions — and checked exactly on a truncated basis of the Fock module:
//!
//! * [`expr`] — operator expression trees, memoized evaluation, q-brackets;
//! * [`verify`] — the verifier with budget guard and deterministic reports;
//! * [`catalog`] — the toroidal-algebra relation catalog in mode form;
//! * [`gimcat`] — the GIM-algebra relations composed with the generator
//!   dictionary;
//! * [`tower`] — the simplified-generator tower and its three-way agreement
//!   checks;
//! * [`tau`] — the purely symbolic direction-inversion symmetry check.

pub mod catalog;
pub mod expr;
pub mod gimcat;
pub mod tau;
pub mod tower;
pub mod verify;
