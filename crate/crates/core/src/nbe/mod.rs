//! Normalization by evaluation into a Kripke model with semantic lists.
//!
//! Evaluation is structurally recursive on terms and reification on types,
//! so [`norm`] needs no fuel. Unlike textbook NbE, evaluation itself calls
//! reify and reflect: a fold stuck on a neutral list has to be turned back
//! into syntax to extend the spine of stuck eliminators.

mod model;

pub use model::{Kripke, NeKripke, Sem, SemEnv, SemList};

use std::sync::Arc;

use crate::syntax::{infer, Ctx, Ne, Nf, Ope, Term, Ty, TypeError};

/// Evaluates `t` in `env`.
pub fn eval(t: &Term, env: &SemEnv) -> Sem {
    match t {
        Term::Var(i) => env.lookup(*i).clone(),
        Term::Lam(_, body) => {
            let body = body.clone();
            let env = env.clone();
            Sem::Fun(Kripke::new(move |ope, s| {
                let mut inner = env.weaken(ope);
                inner.push(s);
                eval(&body, &inner)
            }))
        }
        Term::App(f, a) => {
            let fv = eval(f, env);
            let av = eval(a, env);
            fv.as_fun().call(&Ope::id(env.ctx()), av)
        }
        Term::TT => Sem::Unit,
        Term::Pair(a, b) => Sem::pair(eval(a, env), eval(b, env)),
        Term::Fst(p) => eval(p, env).fst(),
        Term::Snd(p) => eval(p, env).snd(),
        Term::Nil(_) => Sem::List(SemList::Nil),
        Term::Cons(h, tl) => Sem::List(SemList::cons(eval(h, env), eval(tl, env).as_list().clone())),
        Term::Append(xs, ys) => {
            let xs = eval(xs, env);
            let ys = eval(ys, env);
            Sem::List(vappend(xs.as_list(), ys.as_list()))
        }
        Term::Map(f, xs, _) => {
            let f = eval(f, env);
            let xs = eval(xs, env);
            Sem::List(vmap(env.ctx(), f.as_fun(), xs.as_list()))
        }
        Term::Fold(c, n, xs, ret) => {
            let c = eval(c, env);
            let n = eval(n, env);
            let xs = eval(xs, env);
            vfold(env.ctx(), ret, &c, &n, xs.as_list())
        }
    }
}

/// Semantic append.
pub fn vappend(xs: &SemList, zs: &SemList) -> SemList {
    match xs {
        SemList::Nil => zs.clone(),
        SemList::Cons(h, t) => SemList::Cons(h.clone(), Arc::new(vappend(t, zs))),
        SemList::Mapp { fun, dom, nut, rest } => {
            SemList::Mapp { fun: fun.clone(), dom: dom.clone(), nut: nut.clone(), rest: Arc::new(vappend(rest, zs)) }
        }
    }
}

/// Semantic map; on a stuck list the function is composed into the stored
/// one.
pub fn vmap(ctx: &Ctx, f: &Kripke, xs: &SemList) -> SemList {
    match xs {
        SemList::Nil => SemList::Nil,
        SemList::Cons(h, t) => SemList::cons(f.call(&Ope::id(ctx), (**h).clone()), vmap(ctx, f, t)),
        SemList::Mapp { fun, dom, nut, rest } => SemList::Mapp {
            fun: NeKripke::after(f, fun),
            dom: dom.clone(),
            nut: nut.clone(),
            rest: Arc::new(vmap(ctx, f, rest)),
        },
    }
}

/// Semantic fold with result type `ret`. On a stuck list the algebra is
/// fused with the stored function and the fold over the rest becomes the
/// new seed; the result is reflected as a stuck fold over the nut.
pub fn vfold(ctx: &Ctx, ret: &Ty, c: &Sem, n: &Sem, xs: &SemList) -> Sem {
    match xs {
        SemList::Nil => n.clone(),
        SemList::Cons(h, t) => {
            let id = Ope::id(ctx);
            let partial = c.as_fun().call(&id, (**h).clone());
            partial.as_fun().call(&id, vfold(ctx, ret, c, n, t))
        }
        SemList::Mapp { fun, dom, nut, rest } => {
            let inner = ctx.extend(dom.clone()).extend(ret.clone());
            let into = Ope::weak(ctx, dom.clone()).step(ret.clone());
            let x = fun.call(&into, Ne::Var(1));
            let partial = c.as_fun().call(&into, x);
            let y = reflect(ret, Ne::Var(0));
            let body = partial.as_fun().call(&Ope::id(&inner), y);
            let algebra = Nf::lam(dom.clone(), Nf::lam(ret.clone(), reify(&inner, ret, &body)));
            let seed = reify(ctx, ret, &vfold(ctx, ret, c, n, rest));
            reflect(ret, Ne::fold(algebra, seed, nut.clone()))
        }
    }
}

/// Reads a normal form of type `ty` back from a value in `ctx`.
pub fn reify(ctx: &Ctx, ty: &Ty, v: &Sem) -> Nf {
    match ty {
        Ty::Unit => Nf::TT,
        Ty::Base(_) => match v {
            Sem::Ne(n) => Nf::Ne(n.clone()),
            other => panic!("base-type value is not neutral: {other:?}"),
        },
        Ty::Prod(l, r) => Nf::pair(reify(ctx, l, &v.fst()), reify(ctx, r, &v.snd())),
        Ty::Arrow(d, c) => {
            let inner = ctx.extend((**d).clone());
            let x = reflect(d, Ne::Var(0));
            let body = v.as_fun().call(&Ope::weak(ctx, (**d).clone()), x);
            Nf::lam((**d).clone(), reify(&inner, c, &body))
        }
        Ty::List(e) => list_reify(ctx, e, v.as_list()),
    }
}

/// Reification of lists with elements of type `elem`.
pub fn list_reify(ctx: &Ctx, elem: &Ty, xs: &SemList) -> Nf {
    match xs {
        SemList::Nil => Nf::Nil(elem.clone()),
        SemList::Cons(h, t) => Nf::cons(reify(ctx, elem, h), list_reify(ctx, elem, t)),
        SemList::Mapp { fun, dom, nut, rest } => {
            let inner = ctx.extend(dom.clone());
            let body = fun.call(&Ope::weak(ctx, dom.clone()), Ne::Var(0));
            let f = Nf::lam(dom.clone(), reify(&inner, elem, &body));
            Nf::mapp(f, nut.clone(), list_reify(ctx, elem, rest))
        }
    }
}

/// Injects a neutral of type `ty` into the model, η-expanding.
pub fn reflect(ty: &Ty, n: Ne) -> Sem {
    match ty {
        Ty::Unit => Sem::Unit,
        Ty::Base(_) => Sem::Ne(n),
        Ty::Prod(l, r) => Sem::pair(reflect(l, Ne::fst(n.clone())), reflect(r, Ne::snd(n))),
        Ty::Arrow(d, c) => {
            let (d, c) = ((**d).clone(), (**c).clone());
            Sem::Fun(Kripke::new(move |ope, arg| {
                let here = ope.tgt();
                reflect(&c, Ne::app(n.weaken(ope), reify(here, &d, &arg)))
            }))
        }
        Ty::List(e) => Sem::List(list_reflect(e, n)),
    }
}

/// A neutral list becomes `(map id xs) ++ []` with the reflecting identity
/// as the stored function.
pub fn list_reflect(elem: &Ty, n: Ne) -> SemList {
    let e = elem.clone();
    SemList::Mapp {
        fun: NeKripke::new(move |_, x| reflect(&e, x)),
        dom: elem.clone(),
        nut: n,
        rest: Arc::new(SemList::Nil),
    }
}

/// Every variable of `ctx` reflected in `ctx` itself.
pub fn diagonal(ctx: &Ctx) -> SemEnv {
    let n = ctx.len();
    let vals = ctx.tys().iter().enumerate().map(|(k, ty)| reflect(ty, Ne::Var(n - 1 - k))).collect();
    SemEnv::new(ctx, vals)
}

/// Normalizes a well-typed term: evaluate in the diagonal environment,
/// then reify at the inferred type.
pub fn norm(ctx: &Ctx, t: &Term) -> Result<Nf, TypeError> {
    let ty = infer(ctx, t)?;
    Ok(norm_at(ctx, &ty, t))
}

/// [`norm`] for a term already known to have type `ty`.
pub fn norm_at(ctx: &Ctx, ty: &Ty, t: &Term) -> Nf {
    reify(ctx, ty, &eval(t, &diagonal(ctx)))
}

#[cfg(test)]
mod tests;
