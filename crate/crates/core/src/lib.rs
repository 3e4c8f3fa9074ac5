//! Normalization and decidable equality for a simply-typed λ-calculus with
//! lists, where the definitional equality is extended with the list monoid,
//! functor and fusion laws on neutral terms.
//!
//! Two independent normalizers are provided: a staged reduction machine
//! ([`staged`]) and a normalization-by-evaluation engine ([`nbe`]). The
//! latter backs [`decide_eq`].

pub mod decision;
pub mod harness;
pub mod nbe;
pub mod rewrite;
pub mod staged;
pub mod surface;
pub mod syntax;

pub use decision::{decide_eq, EqError, EqVerdict};
pub use nbe::norm;
pub use staged::staged_norm;
pub use syntax::{infer, Ctx, Ne, Nf, Ope, Term, Ty};
