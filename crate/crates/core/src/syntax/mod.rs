//! Types, contexts, order-preserving embeddings, terms and normal forms.

mod ctx;
mod infer;
mod nf;
mod subst;
mod term;
mod ty;

pub use ctx::{Ctx, Emb, Ope, DEFAULT_BASES};
pub use infer::{check, infer, TypeError};
pub use nf::{check_standard, nf_eq, Ne, Nf, StdList};
pub use subst::{instantiate, Subst};
pub use term::Term;
pub use ty::Ty;
