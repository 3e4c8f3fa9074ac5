//! The staged normalizer: weak-head βδι evaluation with closures, then
//! type-directed η-expansion, then standardization of stuck lists. Later
//! stages call back into evaluation (composing functions, distributing a
//! map over an append, fusing a fold), so every run carries a fuel budget.

mod eta;
mod wh;

pub use eta::{EtaList, EtaNe, EtaVal};
pub use wh::{Wh, WhEnv, WhNe};

use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{infer, Ctx, Ne, Nf, Ope, StdList, Term, Ty, TypeError};

/// Default number of stage re-entries and β-steps a run may perform.
pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StagedError {
    #[error("fuel exhausted")]
    FuelExhausted,
    #[error(transparent)]
    IllTyped(#[from] TypeError),
    /// An eliminator met a value of the wrong shape. Only reachable on
    /// ill-typed input or through a bug.
    #[error("shape violation: {0}")]
    ShapeViolation(String),
}

type Result<T> = std::result::Result<T, StagedError>;

fn shape<T>(msg: impl Into<String>) -> Result<T> {
    Err(StagedError::ShapeViolation(msg.into()))
}

/// An eliminator together with its non-principal arguments.
#[derive(Clone, Debug)]
pub enum Elim {
    App(Wh),
    Fst,
    Snd,
    /// `map f _` producing elements of the given type.
    Map(Wh, Ty),
    /// `_ ++ ys`.
    Append(Wh),
    /// `fold c n _` at the given result type.
    Fold(Wh, Wh, Ty),
}

/// The intermediate results of one staged run.
#[derive(Clone, Debug)]
pub struct StagedTrace {
    pub ty: Ty,
    pub wh: Wh,
    pub eta: EtaVal,
    pub nf: Nf,
    pub fuel_used: u64,
}

/// Evaluation state shared by all stages of one run.
#[derive(Debug)]
pub struct Machine {
    fuel: u64,
    used: u64,
}

impl Machine {
    pub fn new(fuel: u64) -> Machine {
        Machine { fuel, used: 0 }
    }

    pub fn fuel_left(&self) -> u64 {
        self.fuel
    }

    pub fn fuel_used(&self) -> u64 {
        self.used
    }

    fn tick(&mut self) -> Result<()> {
        if self.fuel == 0 {
            return Err(StagedError::FuelExhausted);
        }
        self.fuel -= 1;
        self.used += 1;
        Ok(())
    }

    /// The environment machine: constructors evaluate to constructors,
    /// lambdas capture the environment, eliminators go through
    /// [`Machine::eliminate`].
    pub fn whnorm(&mut self, env: &WhEnv, t: &Term) -> Result<Wh> {
        match t {
            Term::Var(i) => env.lookup(*i).cloned().ok_or_else(|| {
                StagedError::ShapeViolation(format!("variable #{i} outside an environment of {}", env.len()))
            }),
            Term::Lam(dom, body) => Ok(Wh::Closure { dom: dom.clone(), body: body.clone(), env: env.clone() }),
            Term::App(f, a) => {
                let f = self.whnorm(env, f)?;
                let a = self.whnorm(env, a)?;
                self.eliminate(f, Elim::App(a))
            }
            Term::TT => Ok(Wh::TT),
            Term::Pair(a, b) => Ok(Wh::pair(self.whnorm(env, a)?, self.whnorm(env, b)?)),
            Term::Fst(p) => {
                let p = self.whnorm(env, p)?;
                self.eliminate(p, Elim::Fst)
            }
            Term::Snd(p) => {
                let p = self.whnorm(env, p)?;
                self.eliminate(p, Elim::Snd)
            }
            Term::Nil(_) => Ok(Wh::Nil),
            Term::Cons(h, tl) => Ok(Wh::cons(self.whnorm(env, h)?, self.whnorm(env, tl)?)),
            Term::Append(xs, ys) => {
                let xs = self.whnorm(env, xs)?;
                let ys = self.whnorm(env, ys)?;
                self.eliminate(xs, Elim::Append(ys))
            }
            Term::Map(f, xs, cod) => {
                let f = self.whnorm(env, f)?;
                let xs = self.whnorm(env, xs)?;
                self.eliminate(xs, Elim::Map(f, cod.clone()))
            }
            Term::Fold(c, n, xs, ret) => {
                let c = self.whnorm(env, c)?;
                let n = self.whnorm(env, n)?;
                let xs = self.whnorm(env, xs)?;
                self.eliminate(xs, Elim::Fold(c, n, ret.clone()))
            }
        }
    }

    /// Fires a computation rule when the principal argument is a
    /// constructor, and builds a stuck value when it is neutral.
    pub fn eliminate(&mut self, scrutinee: Wh, elim: Elim) -> Result<Wh> {
        match (scrutinee, elim) {
            (Wh::Ne(m), elim) => Ok(Wh::Ne(stuck(m, elim))),
            (Wh::Closure { body, env, .. }, Elim::App(a)) => {
                self.tick()?;
                self.whnorm(&env.extend(a), &body)
            }
            (Wh::Pair(a, _), Elim::Fst) => Ok((*a).clone()),
            (Wh::Pair(_, b), Elim::Snd) => Ok((*b).clone()),
            (Wh::Nil, Elim::Map(..)) => Ok(Wh::Nil),
            (Wh::Cons(h, t), Elim::Map(f, cod)) => {
                let h = self.eliminate(f.clone(), Elim::App((*h).clone()))?;
                let t = self.eliminate((*t).clone(), Elim::Map(f, cod))?;
                Ok(Wh::cons(h, t))
            }
            (Wh::Nil, Elim::Append(ys)) => Ok(ys),
            (Wh::Cons(h, t), Elim::Append(ys)) => {
                let t = self.eliminate((*t).clone(), Elim::Append(ys))?;
                Ok(Wh::Cons(h, Arc::new(t)))
            }
            (Wh::Nil, Elim::Fold(_, n, _)) => Ok(n),
            (Wh::Cons(h, t), Elim::Fold(c, n, ret)) => {
                let rec = self.eliminate((*t).clone(), Elim::Fold(c.clone(), n, ret))?;
                let partial = self.eliminate(c, Elim::App((*h).clone()))?;
                self.eliminate(partial, Elim::App(rec))
            }
            (w, elim) => shape(format!("cannot eliminate {w:?} with {elim:?}")),
        }
    }

    /// Restarts evaluation of a syntactic value in `ctx`.
    fn reload(&mut self, ctx: &Ctx, t: &Term) -> Result<Wh> {
        self.tick()?;
        self.whnorm(&WhEnv::diagonal(ctx), t)
    }

    /// From weak-head normal forms to η-long values at type `ty`.
    pub fn etanorm(&mut self, ctx: &Ctx, ty: &Ty, w: Wh) -> Result<EtaVal> {
        match ty {
            Ty::Base(_) => match w {
                Wh::Ne(m) => Ok(EtaVal::Ne(self.etaneut(ctx, &m)?)),
                other => shape(format!("base-type value {other:?} is not neutral")),
            },
            Ty::List(elem) => match w {
                Wh::Nil => Ok(EtaVal::Nil((**elem).clone())),
                Wh::Cons(h, t) => {
                    let h = self.etanorm(ctx, elem, (*h).clone())?;
                    let t = self.etanorm(ctx, ty, (*t).clone())?;
                    Ok(EtaVal::Cons(Arc::new(h), Arc::new(t)))
                }
                Wh::Ne(m) => Ok(EtaVal::List(self.etalist(ctx, &m)?)),
                other => shape(format!("list-type value {other:?}")),
            },
            Ty::Unit => Ok(EtaVal::TT),
            Ty::Prod(l, r) => {
                let a = self.eliminate(w.clone(), Elim::Fst)?;
                let b = self.eliminate(w, Elim::Snd)?;
                let a = self.etanorm(ctx, l, a)?;
                let b = self.etanorm(ctx, r, b)?;
                Ok(EtaVal::Pair(Arc::new(a), Arc::new(b)))
            }
            Ty::Arrow(d, c) => {
                let d = (**d).clone();
                let inner = ctx.extend(d.clone());
                let w = w.weaken(&Ope::weak(ctx, d.clone()));
                let body = self.eliminate(w, Elim::App(Wh::Ne(WhNe::Var(0))))?;
                let body = self.etanorm(&inner, c, body)?;
                Ok(EtaVal::Lam(d, Arc::new(body)))
            }
        }
    }

    fn etaneut(&mut self, ctx: &Ctx, m: &WhNe) -> Result<EtaNe> {
        match m {
            WhNe::Var(i) => Ok(EtaNe::Var(*i)),
            WhNe::App(f, a) => {
                let fty = self.ne_ty(ctx, f)?;
                let Some((dom, _)) = fty.as_arrow() else { return shape(format!("applying a {fty}")) };
                let a = self.etanorm(ctx, dom, (**a).clone())?;
                Ok(EtaNe::App(Arc::new(self.etaneut(ctx, f)?), Arc::new(a)))
            }
            WhNe::Fst(p) => Ok(EtaNe::Fst(Arc::new(self.etaneut(ctx, p)?))),
            WhNe::Snd(p) => Ok(EtaNe::Snd(Arc::new(self.etaneut(ctx, p)?))),
            WhNe::Fold(c, n, xs, ret) => {
                let elem = self.list_elem(ctx, xs)?;
                let cty = Ty::arrow(elem, Ty::arrow(ret.clone(), ret.clone()));
                let c = self.etanorm(ctx, &cty, (**c).clone())?;
                let n = self.etanorm(ctx, ret, (**n).clone())?;
                let l = self.etalist(ctx, xs)?;
                Ok(EtaNe::Fold(Arc::new(c), Arc::new(n), Arc::new(l), ret.clone()))
            }
            WhNe::Map(..) | WhNe::Append(..) => shape("stuck list where a neutral spine was expected"),
        }
    }

    fn etalist(&mut self, ctx: &Ctx, m: &WhNe) -> Result<EtaList> {
        match m {
            WhNe::Map(f, xs, cod) => {
                let dom = self.list_elem(ctx, xs)?;
                let f = self.etanorm(ctx, &Ty::arrow(dom, cod.clone()), (**f).clone())?;
                let l = self.etalist(ctx, xs)?;
                Ok(EtaList::Map(Arc::new(f), Arc::new(l), cod.clone()))
            }
            WhNe::Append(xs, ys) => {
                let lty = self.ne_ty(ctx, xs)?;
                let l = self.etalist(ctx, xs)?;
                let v = self.etanorm(ctx, &lty, (**ys).clone())?;
                Ok(EtaList::Append(Arc::new(l), Arc::new(v)))
            }
            other => Ok(EtaList::Ne(self.etaneut(ctx, other)?)),
        }
    }

    fn ne_ty(&self, ctx: &Ctx, m: &WhNe) -> Result<Ty> {
        m.ty(ctx).ok_or_else(|| StagedError::ShapeViolation(format!("cannot type stuck value {m:?}")))
    }

    fn list_elem(&self, ctx: &Ctx, m: &WhNe) -> Result<Ty> {
        let t = self.ne_ty(ctx, m)?;
        match t.as_list() {
            Some(e) => Ok(e.clone()),
            None => shape(format!("list operation on a {t}")),
        }
    }

    /// η-expansion followed by standardization.
    pub fn standard(&mut self, ctx: &Ctx, ty: &Ty, w: Wh) -> Result<Nf> {
        self.tick()?;
        let v = self.etanorm(ctx, ty, w)?;
        self.nfnorm(ctx, ty, &v)
    }

    /// From η-long values to standard forms.
    pub fn nfnorm(&mut self, ctx: &Ctx, ty: &Ty, v: &EtaVal) -> Result<Nf> {
        match (ty, v) {
            (Ty::Base(_), EtaVal::Ne(n)) => Ok(Nf::Ne(self.nfneut(ctx, n)?)),
            (Ty::List(elem), EtaVal::List(l)) => Ok(Nf::Mapp(Arc::new(self.nflist(ctx, elem, l)?))),
            (Ty::List(_), EtaVal::Nil(e)) => Ok(Nf::Nil(e.clone())),
            (Ty::List(elem), EtaVal::Cons(h, t)) => Ok(Nf::cons(self.nfnorm(ctx, elem, h)?, self.nfnorm(ctx, ty, t)?)),
            (Ty::Arrow(_, c), EtaVal::Lam(d, b)) => {
                let inner = ctx.extend(d.clone());
                Ok(Nf::lam(d.clone(), self.nfnorm(&inner, c, b)?))
            }
            (Ty::Unit, EtaVal::TT) => Ok(Nf::TT),
            (Ty::Prod(l, r), EtaVal::Pair(a, b)) => Ok(Nf::pair(self.nfnorm(ctx, l, a)?, self.nfnorm(ctx, r, b)?)),
            (ty, v) => shape(format!("{v:?} is not an η-long value of type {ty}")),
        }
    }

    fn nfneut(&mut self, ctx: &Ctx, n: &EtaNe) -> Result<Ne> {
        match n {
            EtaNe::Var(i) => Ok(Ne::Var(*i)),
            EtaNe::App(f, a) => {
                let fty = f.ty(ctx).ok_or_else(|| StagedError::ShapeViolation("untypable spine".into()))?;
                let Some((dom, _)) = fty.as_arrow() else { return shape(format!("applying a {fty}")) };
                let a = self.nfnorm(ctx, dom, a)?;
                Ok(Ne::app(self.nfneut(ctx, f)?, a))
            }
            EtaNe::Fst(p) => Ok(Ne::fst(self.nfneut(ctx, p)?)),
            EtaNe::Snd(p) => Ok(Ne::snd(self.nfneut(ctx, p)?)),
            EtaNe::Fold(c, z, l, ret) => {
                let elem = l.elem_ty(ctx).ok_or_else(|| StagedError::ShapeViolation("untypable list".into()))?;
                let s = self.nflist(ctx, &elem, l)?;
                self.nffold(ctx, c, z, s, ret)
            }
        }
    }

    /// Flattens a stuck list with elements of type `elem` into one
    /// `(map f nut) ++ rest` layer.
    fn nflist(&mut self, ctx: &Ctx, elem: &Ty, l: &EtaList) -> Result<StdList> {
        match l {
            EtaList::Ne(n) => {
                let id = self.identity(ctx, elem)?;
                Ok(StdList { fun: id, nut: self.nfneut(ctx, n)?, rest: Nf::Nil(elem.clone()) })
            }
            EtaList::Map(f, inner, cod) => {
                let inner_elem =
                    inner.elem_ty(ctx).ok_or_else(|| StagedError::ShapeViolation("untypable list".into()))?;
                let s = self.nflist(ctx, &inner_elem, inner)?;
                self.nfmap(ctx, f, s, cod)
            }
            EtaList::Append(xs, ys) => {
                let s = self.nflist(ctx, elem, xs)?;
                let zs = self.nfnorm(ctx, &Ty::list(elem.clone()), ys)?;
                self.nfappend(ctx, elem, s, &zs)
            }
        }
    }

    /// The standard form of the identity at `ty`.
    fn identity(&mut self, ctx: &Ctx, ty: &Ty) -> Result<Nf> {
        let id = Wh::Closure { dom: ty.clone(), body: Arc::new(Term::Var(0)), env: WhEnv::default() };
        self.standard(ctx, &Ty::arrow(ty.clone(), ty.clone()), id)
    }

    fn nut_elem(&self, ctx: &Ctx, nut: &Ne) -> Result<Ty> {
        match nut.ty(ctx).as_ref().and_then(Ty::as_list) {
            Some(e) => Ok(e.clone()),
            None => shape(format!("nut {nut:?} is not a list")),
        }
    }

    /// `map f ((map g xs) ++ ys)` = `(map (f ∘ g) xs) ++ map f ys`.
    fn nfmap(&mut self, ctx: &Ctx, f: &EtaVal, s: StdList, cod: &Ty) -> Result<StdList> {
        let dom = self.nut_elem(ctx, &s.nut)?;
        let fw = self.reload(ctx, &f.embed())?;
        let gw = self.reload(ctx, &s.fun.embed())?;
        let ysw = self.reload(ctx, &s.rest.embed())?;
        let fg = self.standard(ctx, &Ty::arrow(dom.clone(), cod.clone()), compose(fw.clone(), gw, dom))?;
        let mapped = self.eliminate(ysw, Elim::Map(fw, cod.clone()))?;
        let fys = self.standard(ctx, &Ty::list(cod.clone()), mapped)?;
        Ok(StdList { fun: fg, nut: s.nut, rest: fys })
    }

    /// `((map f xs) ++ ys) ++ zs` = `(map f xs) ++ (ys ++ zs)`.
    fn nfappend(&mut self, ctx: &Ctx, elem: &Ty, s: StdList, zs: &Nf) -> Result<StdList> {
        let ysw = self.reload(ctx, &s.rest.embed())?;
        let zsw = self.reload(ctx, &zs.embed())?;
        let yzs = self.eliminate(ysw, Elim::Append(zsw))?;
        let rest = self.standard(ctx, &Ty::list(elem.clone()), yzs)?;
        Ok(StdList { fun: s.fun, nut: s.nut, rest })
    }

    /// `fold c n ((map f xs) ++ ys)` = `fold (c ∘ f) (fold c n ys) xs`.
    fn nffold(&mut self, ctx: &Ctx, c: &EtaVal, n: &EtaVal, s: StdList, ret: &Ty) -> Result<Ne> {
        let dom = self.nut_elem(ctx, &s.nut)?;
        let cw = self.reload(ctx, &c.embed())?;
        let nw = self.reload(ctx, &n.embed())?;
        let fw = self.reload(ctx, &s.fun.embed())?;
        let ysw = self.reload(ctx, &s.rest.embed())?;
        let alg_ty = Ty::arrow(dom.clone(), Ty::arrow(ret.clone(), ret.clone()));
        let cf = self.standard(ctx, &alg_ty, compose(cw.clone(), fw, dom))?;
        let folded = self.eliminate(ysw, Elim::Fold(cw, nw, ret.clone()))?;
        let ih = self.standard(ctx, ret, folded)?;
        Ok(Ne::fold(cf, ih, s.nut))
    }
}

/// The closure of `\x:dom. f (g x)`; nothing is evaluated under it.
pub fn compose(f: Wh, g: Wh, dom: Ty) -> Wh {
    let body = Term::app(Term::var(2), Term::app(Term::var(1), Term::var(0)));
    Wh::Closure { dom, body: Arc::new(body), env: WhEnv::new(vec![f, g]) }
}

fn stuck(m: WhNe, elim: Elim) -> WhNe {
    let m = Arc::new(m);
    match elim {
        Elim::App(a) => WhNe::App(m, Arc::new(a)),
        Elim::Fst => WhNe::Fst(m),
        Elim::Snd => WhNe::Snd(m),
        Elim::Map(f, cod) => WhNe::Map(Arc::new(f), m, cod),
        Elim::Append(ys) => WhNe::Append(m, Arc::new(ys)),
        Elim::Fold(c, n, ret) => WhNe::Fold(Arc::new(c), Arc::new(n), m, ret),
    }
}

/// Runs all three stages and keeps the intermediate values.
pub fn staged_trace(ctx: &Ctx, t: &Term, fuel: u64) -> Result<StagedTrace> {
    let ty = infer(ctx, t)?;
    let mut m = Machine::new(fuel);
    let wh = m.whnorm(&WhEnv::diagonal(ctx), t)?;
    let eta = m.etanorm(ctx, &ty, wh.clone())?;
    let nf = m.nfnorm(ctx, &ty, &eta)?;
    Ok(StagedTrace { ty, wh, eta, nf, fuel_used: m.fuel_used() })
}

/// Normalizes `t` by evaluation, η-expansion and standardization.
pub fn staged_norm(ctx: &Ctx, t: &Term, fuel: u64) -> Result<Nf> {
    staged_trace(ctx, t, fuel).map(|tr| tr.nf)
}

#[cfg(test)]
mod tests;
