use std::sync::Arc;

use crate::syntax::{Ctx, Term, Ty};

/// η-long values: neutrals appear only at base type or as stuck lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EtaVal {
    /// A neutral at base type.
    Ne(EtaNe),
    /// A stuck list.
    List(EtaList),
    Lam(Ty, Arc<EtaVal>),
    TT,
    Pair(Arc<EtaVal>, Arc<EtaVal>),
    Nil(Ty),
    Cons(Arc<EtaVal>, Arc<EtaVal>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EtaNe {
    Var(usize),
    App(Arc<EtaNe>, Arc<EtaVal>),
    Fst(Arc<EtaNe>),
    Snd(Arc<EtaNe>),
    /// `fold c n l`, with the result type.
    Fold(Arc<EtaVal>, Arc<EtaVal>, Arc<EtaList>, Ty),
}

/// Stuck lists: a neutral of list type under maps and appends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EtaList {
    Ne(EtaNe),
    /// `map f l`, with the codomain of `f`.
    Map(Arc<EtaVal>, Arc<EtaList>, Ty),
    Append(Arc<EtaList>, Arc<EtaVal>),
}

impl EtaVal {
    pub fn embed(&self) -> Term {
        match self {
            EtaVal::Ne(n) => n.embed(),
            EtaVal::List(l) => l.embed(),
            EtaVal::Lam(d, b) => Term::lam(d.clone(), b.embed()),
            EtaVal::TT => Term::TT,
            EtaVal::Pair(a, b) => Term::pair(a.embed(), b.embed()),
            EtaVal::Nil(e) => Term::nil(e.clone()),
            EtaVal::Cons(h, t) => Term::cons(h.embed(), t.embed()),
        }
    }
}

impl EtaNe {
    pub fn embed(&self) -> Term {
        match self {
            EtaNe::Var(i) => Term::Var(*i),
            EtaNe::App(f, a) => Term::app(f.embed(), a.embed()),
            EtaNe::Fst(p) => Term::fst(p.embed()),
            EtaNe::Snd(p) => Term::snd(p.embed()),
            EtaNe::Fold(c, n, l, ret) => Term::fold(c.embed(), n.embed(), l.embed(), ret.clone()),
        }
    }

    pub fn ty(&self, ctx: &Ctx) -> Option<Ty> {
        match self {
            EtaNe::Var(i) => ctx.lookup(*i).cloned(),
            EtaNe::App(f, _) => f.ty(ctx)?.as_arrow().map(|(_, c)| c.clone()),
            EtaNe::Fst(p) => p.ty(ctx)?.as_prod().map(|(l, _)| l.clone()),
            EtaNe::Snd(p) => p.ty(ctx)?.as_prod().map(|(_, r)| r.clone()),
            EtaNe::Fold(_, _, _, ret) => Some(ret.clone()),
        }
    }
}

impl EtaList {
    pub fn embed(&self) -> Term {
        match self {
            EtaList::Ne(n) => n.embed(),
            EtaList::Map(f, l, cod) => Term::map(f.embed(), l.embed(), cod.clone()),
            EtaList::Append(l, v) => Term::append(l.embed(), v.embed()),
        }
    }

    /// Element type of the stuck list.
    pub fn elem_ty(&self, ctx: &Ctx) -> Option<Ty> {
        match self {
            EtaList::Ne(n) => n.ty(ctx)?.as_list().cloned(),
            EtaList::Map(_, _, cod) => Some(cod.clone()),
            EtaList::Append(l, _) => l.elem_ty(ctx),
        }
    }
}
