use std::sync::Arc;

use super::{infer, Ctx, Term, TypeError};

/// A parallel substitution from `src` to `tgt`: one term per source slot,
/// oldest slot first, each typed in `tgt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subst {
    src: Ctx,
    tgt: Ctx,
    terms: Vec<Term>,
}

impl Subst {
    pub fn id(ctx: &Ctx) -> Subst {
        let n = ctx.len();
        Subst { src: ctx.clone(), tgt: ctx.clone(), terms: (0..n).map(|k| Term::Var(n - 1 - k)).collect() }
    }

    /// Builds a substitution from explicit entries, checking each against
    /// the source slot's type.
    pub fn new(src: &Ctx, tgt: &Ctx, terms: Vec<Term>) -> Result<Subst, TypeError> {
        assert_eq!(src.len(), terms.len(), "one term per source slot");
        for (ty, t) in src.tys().iter().zip(&terms) {
            super::check(tgt, t, ty)?;
        }
        Ok(Subst { src: src.clone(), tgt: tgt.clone(), terms })
    }

    /// Extends the source with one more slot mapped to `t`, without
    /// re-checking `t`.
    pub fn extend(mut self, t: Term) -> Subst {
        let ty = infer(&self.tgt, &t).expect("substitution entry must be well typed");
        self.src.push(ty);
        self.terms.push(t);
        self
    }

    /// The substitution `[0 ↦ arg]` on `ctx, ty` used to contract a β-redex.
    pub fn single(ctx: &Ctx, arg: Term) -> Subst {
        Subst::id(ctx).extend(arg)
    }

    pub fn src(&self) -> &Ctx {
        &self.src
    }

    pub fn tgt(&self) -> &Ctx {
        &self.tgt
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn apply(&self, t: &Term) -> Term {
        self.apply_under(0, t)
    }

    fn apply_under(&self, depth: usize, t: &Term) -> Term {
        match t {
            Term::Var(i) if *i < depth => Term::Var(*i),
            Term::Var(i) => {
                let n = self.terms.len();
                let k = i - depth;
                assert!(k < n, "variable {k} outside substitution domain");
                self.terms[n - 1 - k].shift(depth)
            }
            Term::Lam(d, b) => Term::lam(d.clone(), self.apply_under(depth + 1, b)),
            _ => {
                let mut out = t.clone();
                for (i, c) in t.children().into_iter().enumerate() {
                    out = out.with_child(i, Arc::new(self.apply_under(depth, c)));
                }
                out
            }
        }
    }
}

/// Contracts `(\x. body) arg`: substitutes `arg` for index 0 of `body`
/// and lowers the remaining free indices.
pub fn instantiate(body: &Term, arg: &Term) -> Term {
    instantiate_at(body, arg, 0)
}

fn instantiate_at(t: &Term, arg: &Term, depth: usize) -> Term {
    match t {
        Term::Var(i) if *i < depth => Term::Var(*i),
        Term::Var(i) if *i == depth => arg.shift(depth),
        Term::Var(i) => Term::Var(i - 1),
        Term::Lam(d, b) => Term::lam(d.clone(), instantiate_at(b, arg, depth + 1)),
        _ => {
            let mut out = t.clone();
            for (i, c) in t.children().into_iter().enumerate() {
                out = out.with_child(i, Arc::new(instantiate_at(c, arg, depth)));
            }
            out
        }
    }
}
