use std::sync::Arc;

use super::{Ctx, Ope, Term, Ty};

/// Neutral normal forms: a variable under a spine of stuck eliminators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ne {
    Var(usize),
    App(Arc<Ne>, Arc<Nf>),
    Fst(Arc<Ne>),
    Snd(Arc<Ne>),
    /// A fold stuck on a genuine neutral list.
    Fold(Arc<Nf>, Arc<Nf>, Arc<Ne>),
}

/// Standard forms: η-long, βδι-normal, with stuck lists rearranged by the
/// list monoid, functor and fusion laws into a single [`StdList`] layer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Nf {
    /// A neutral; only at base type.
    Ne(Ne),
    /// A stuck list.
    Mapp(Arc<StdList>),
    Lam(Ty, Arc<Nf>),
    TT,
    Pair(Arc<Nf>, Arc<Nf>),
    Nil(Ty),
    Cons(Arc<Nf>, Arc<Nf>),
}

/// `(map fun nut) ++ rest` with `nut` a neutral list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StdList {
    pub fun: Nf,
    pub nut: Ne,
    pub rest: Nf,
}

impl Ne {
    pub fn var(i: usize) -> Ne {
        Ne::Var(i)
    }

    pub fn app(f: Ne, a: Nf) -> Ne {
        Ne::App(Arc::new(f), Arc::new(a))
    }

    pub fn fst(n: Ne) -> Ne {
        Ne::Fst(Arc::new(n))
    }

    pub fn snd(n: Ne) -> Ne {
        Ne::Snd(Arc::new(n))
    }

    pub fn fold(c: Nf, n: Nf, xs: Ne) -> Ne {
        Ne::Fold(Arc::new(c), Arc::new(n), Arc::new(xs))
    }

    pub fn embed(&self) -> Term {
        match self {
            Ne::Var(i) => Term::Var(*i),
            Ne::App(f, a) => Term::app(f.embed(), a.embed()),
            Ne::Fst(n) => Term::fst(n.embed()),
            Ne::Snd(n) => Term::snd(n.embed()),
            Ne::Fold(c, n, xs) => Term::fold(c.embed(), n.embed(), xs.embed(), c.fold_result_ty().clone()),
        }
    }

    pub fn weaken(&self, ope: &Ope) -> Ne {
        if ope.is_id() {
            return self.clone();
        }
        self.rename(0, &|i| ope.apply_index(i))
    }

    pub(crate) fn rename(&self, depth: usize, f: &dyn Fn(usize) -> usize) -> Ne {
        match self {
            Ne::Var(i) if *i < depth => Ne::Var(*i),
            Ne::Var(i) => Ne::Var(f(i - depth) + depth),
            Ne::App(g, a) => Ne::app(g.rename(depth, f), a.rename(depth, f)),
            Ne::Fst(n) => Ne::fst(n.rename(depth, f)),
            Ne::Snd(n) => Ne::snd(n.rename(depth, f)),
            Ne::Fold(c, n, xs) => Ne::fold(c.rename(depth, f), n.rename(depth, f), xs.rename(depth, f)),
        }
    }

    /// The type of a neutral, read bottom-up from its head variable.
    pub fn ty(&self, ctx: &Ctx) -> Option<Ty> {
        match self {
            Ne::Var(i) => ctx.lookup(*i).cloned(),
            Ne::App(f, _) => f.ty(ctx)?.as_arrow().map(|(_, c)| c.clone()),
            Ne::Fst(n) => n.ty(ctx)?.as_prod().map(|(l, _)| l.clone()),
            Ne::Snd(n) => n.ty(ctx)?.as_prod().map(|(_, r)| r.clone()),
            Ne::Fold(c, _, _) => Some(c.fold_result_ty().clone()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Ne::Var(_) => 1,
            Ne::App(f, a) => 1 + f.size() + a.size(),
            Ne::Fst(n) | Ne::Snd(n) => 1 + n.size(),
            Ne::Fold(c, n, xs) => 1 + c.size() + n.size() + xs.size(),
        }
    }
}

impl Nf {
    pub fn lam(dom: Ty, body: Nf) -> Nf {
        Nf::Lam(dom, Arc::new(body))
    }

    pub fn pair(l: Nf, r: Nf) -> Nf {
        Nf::Pair(Arc::new(l), Arc::new(r))
    }

    pub fn cons(h: Nf, t: Nf) -> Nf {
        Nf::Cons(Arc::new(h), Arc::new(t))
    }

    pub fn mapp(fun: Nf, nut: Ne, rest: Nf) -> Nf {
        Nf::Mapp(Arc::new(StdList { fun, nut, rest }))
    }

    /// For an algebra `\x. \acc. _` of a fold, the accumulator type.
    fn fold_result_ty(&self) -> &Ty {
        match self {
            Nf::Lam(_, body) => match body.as_ref() {
                Nf::Lam(ret, _) => ret,
                _ => panic!("fold algebra is not a curried binary lambda"),
            },
            _ => panic!("fold algebra is not a lambda"),
        }
    }

    /// Element type of a list-typed standard form.
    pub fn list_elem_ty(&self) -> &Ty {
        match self {
            Nf::Nil(e) => e,
            Nf::Cons(_, t) => t.list_elem_ty(),
            Nf::Mapp(s) => s.rest.list_elem_ty(),
            _ => panic!("not a list normal form"),
        }
    }

    /// The term a normal form stands for; `Mapp` becomes `(map f xs) ++ ys`.
    pub fn embed(&self) -> Term {
        match self {
            Nf::Ne(n) => n.embed(),
            Nf::Mapp(s) => {
                Term::append(Term::map(s.fun.embed(), s.nut.embed(), self.list_elem_ty().clone()), s.rest.embed())
            }
            Nf::Lam(d, b) => Term::lam(d.clone(), b.embed()),
            Nf::TT => Term::TT,
            Nf::Pair(a, b) => Term::pair(a.embed(), b.embed()),
            Nf::Nil(e) => Term::nil(e.clone()),
            Nf::Cons(h, t) => Term::cons(h.embed(), t.embed()),
        }
    }

    pub fn weaken(&self, ope: &Ope) -> Nf {
        if ope.is_id() {
            return self.clone();
        }
        self.rename(0, &|i| ope.apply_index(i))
    }

    pub(crate) fn rename(&self, depth: usize, f: &dyn Fn(usize) -> usize) -> Nf {
        match self {
            Nf::Ne(n) => Nf::Ne(n.rename(depth, f)),
            Nf::Mapp(s) => Nf::mapp(s.fun.rename(depth, f), s.nut.rename(depth, f), s.rest.rename(depth, f)),
            Nf::Lam(d, b) => Nf::lam(d.clone(), b.rename(depth + 1, f)),
            Nf::TT => Nf::TT,
            Nf::Pair(a, b) => Nf::pair(a.rename(depth, f), b.rename(depth, f)),
            Nf::Nil(e) => Nf::Nil(e.clone()),
            Nf::Cons(h, t) => Nf::cons(h.rename(depth, f), t.rename(depth, f)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Nf::Ne(n) => n.size(),
            Nf::Mapp(s) => 3 + s.fun.size() + s.nut.size() + s.rest.size(),
            Nf::Lam(_, b) => 1 + b.size(),
            Nf::TT | Nf::Nil(_) => 1,
            Nf::Pair(a, b) | Nf::Cons(a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// Equality of normal forms up to α-conversion, which is plain structural
/// equality on nameless trees.
pub fn nf_eq(a: &Nf, b: &Nf) -> bool {
    a == b
}

/// Checks that `nf` is a standard form of type `ty` in `ctx`: neutrals only
/// at base type, every stuck list a single `Mapp` layer over a genuine
/// neutral, everything η-long.
pub fn check_standard(ctx: &Ctx, ty: &Ty, nf: &Nf) -> Result<(), String> {
    let mut ctx = ctx.clone();
    check_nf(&mut ctx, ty, nf)
}

fn check_nf(ctx: &mut Ctx, ty: &Ty, nf: &Nf) -> Result<(), String> {
    match (ty, nf) {
        (Ty::Base(_), Nf::Ne(n)) => {
            let got = check_ne(ctx, n)?;
            if &got == ty {
                Ok(())
            } else {
                Err(format!("neutral of type {got} where {ty} expected"))
            }
        }
        (Ty::Unit, Nf::TT) => Ok(()),
        (Ty::Prod(l, r), Nf::Pair(a, b)) => {
            check_nf(ctx, l, a)?;
            check_nf(ctx, r, b)
        }
        (Ty::Arrow(d, c), Nf::Lam(dom, body)) => {
            if dom != d.as_ref() {
                return Err(format!("lambda annotated {dom} at domain {d}"));
            }
            ctx.push(dom.clone());
            let r = check_nf(ctx, c, body);
            ctx.pop();
            r
        }
        (Ty::List(e), Nf::Nil(e2)) if e.as_ref() == e2 => Ok(()),
        (Ty::List(e), Nf::Cons(h, t)) => {
            check_nf(ctx, e, h)?;
            check_nf(ctx, ty, t)
        }
        (Ty::List(e), Nf::Mapp(s)) => {
            let nut_ty = check_ne(ctx, &s.nut)?;
            let dom = nut_ty.as_list().ok_or_else(|| format!("stuck list nut has type {nut_ty}"))?;
            check_nf(ctx, &Ty::arrow(dom.clone(), (**e).clone()), &s.fun)?;
            check_nf(ctx, ty, &s.rest)
        }
        _ => Err(format!("{nf:?} is not a standard form of type {ty}")),
    }
}

fn check_ne(ctx: &mut Ctx, ne: &Ne) -> Result<Ty, String> {
    match ne {
        Ne::Var(i) => ctx.lookup(*i).cloned().ok_or_else(|| format!("unbound #{i}")),
        Ne::App(f, a) => {
            let ft = check_ne(ctx, f)?;
            let (d, c) = ft.as_arrow().ok_or_else(|| format!("applying neutral of type {ft}"))?;
            check_nf(ctx, d, a)?;
            Ok(c.clone())
        }
        Ne::Fst(n) | Ne::Snd(n) => {
            let t = check_ne(ctx, n)?;
            let (l, r) = t.as_prod().ok_or_else(|| format!("projecting neutral of type {t}"))?;
            Ok(if matches!(ne, Ne::Fst(_)) { l.clone() } else { r.clone() })
        }
        Ne::Fold(c, n, xs) => {
            let xt = check_ne(ctx, xs)?;
            let elem = xt.as_list().ok_or_else(|| format!("folding neutral of type {xt}"))?;
            let ret = match c.as_ref() {
                Nf::Lam(_, b) => match b.as_ref() {
                    Nf::Lam(r, _) => r.clone(),
                    _ => return Err("fold algebra is not binary".into()),
                },
                _ => return Err("fold algebra is not a lambda".into()),
            };
            check_nf(ctx, &Ty::arrow(elem.clone(), Ty::arrow(ret.clone(), ret.clone())), c)?;
            check_nf(ctx, &ret, n)?;
            Ok(ret)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::infer;

    fn pub_ty() -> Ty {
        Ty::prod(Ty::Unit, Ty::base(0))
    }

    fn expanded_id() -> Nf {
        Nf::lam(pub_ty(), Nf::pair(Nf::TT, Nf::Ne(Ne::snd(Ne::var(0)))))
    }

    #[test]
    fn embed_unit() {
        assert_eq!(Nf::TT.embed(), Term::TT);
    }

    #[test]
    fn embed_mapp_as_map_then_append() {
        let nf = Nf::mapp(expanded_id(), Ne::var(0), Nf::Nil(pub_ty()));
        let t = nf.embed();
        let expected = Term::append(
            Term::map(Term::lam(pub_ty(), Term::pair(Term::TT, Term::snd(Term::var(0)))), Term::var(0), pub_ty()),
            Term::nil(pub_ty()),
        );
        assert_eq!(t, expected);
        let ctx = Ctx::from_tys(2, [Ty::list(pub_ty())]);
        assert_eq!(infer(&ctx, &t), Ok(Ty::list(pub_ty())));
        assert!(check_standard(&ctx, &Ty::list(pub_ty()), &nf).is_ok());
    }

    #[test]
    fn embed_eta_long_application() {
        // \x:'0. f x   with f : '0 -> '0
        let nf = Nf::lam(Ty::base(0), Nf::Ne(Ne::app(Ne::var(1), Nf::Ne(Ne::var(0)))));
        assert_eq!(nf.embed(), Term::lam(Ty::base(0), Term::app(Term::var(1), Term::var(0))));
    }

    #[test]
    fn grammar_rejects_neutral_lists_and_non_eta_long_functions() {
        let ctx = Ctx::from_tys(2, [Ty::list(Ty::base(0)), Ty::arrow(Ty::base(0), Ty::base(0))]);
        let bare = Nf::Ne(Ne::var(1));
        assert!(check_standard(&ctx, &Ty::list(Ty::base(0)), &bare).is_err());
        let f = Nf::Ne(Ne::var(0));
        assert!(check_standard(&ctx, &Ty::arrow(Ty::base(0), Ty::base(0)), &f).is_err());
    }

    #[test]
    fn equality_is_structural() {
        assert!(nf_eq(&Nf::TT, &Nf::TT));
        assert!(!nf_eq(&Nf::Nil(Ty::Unit), &Nf::cons(Nf::TT, Nf::Nil(Ty::Unit))));
    }
}
