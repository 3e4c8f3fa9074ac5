use std::sync::Arc;

use crate::syntax::{Ctx, Ope, Term, Ty};

/// Weak-head βδι-normal values. Lambdas stay closures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Wh {
    Ne(WhNe),
    Closure { dom: Ty, body: Arc<Term>, env: WhEnv },
    TT,
    Pair(Arc<Wh>, Arc<Wh>),
    Nil,
    Cons(Arc<Wh>, Arc<Wh>),
}

/// Stuck eliminations; the principal argument is always itself stuck.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WhNe {
    Var(usize),
    App(Arc<WhNe>, Arc<Wh>),
    Fst(Arc<WhNe>),
    Snd(Arc<WhNe>),
    /// `fold c n m`, with the result type.
    Fold(Arc<Wh>, Arc<Wh>, Arc<WhNe>, Ty),
    /// `map f m`, with the codomain of `f`.
    Map(Arc<Wh>, Arc<WhNe>, Ty),
    Append(Arc<WhNe>, Arc<Wh>),
}

/// Closure environments: one value per slot of the closure's source
/// context, oldest first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WhEnv(Arc<Vec<Wh>>);

impl WhEnv {
    pub fn new(vals: Vec<Wh>) -> WhEnv {
        WhEnv(Arc::new(vals))
    }

    /// Each variable of `ctx` mapped to itself.
    pub fn diagonal(ctx: &Ctx) -> WhEnv {
        let n = ctx.len();
        WhEnv::new((0..n).map(|k| Wh::Ne(WhNe::Var(n - 1 - k))).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Wh] {
        &self.0
    }

    pub fn lookup(&self, idx: usize) -> Option<&Wh> {
        let n = self.0.len();
        (idx < n).then(|| &self.0[n - 1 - idx])
    }

    pub fn extend(&self, w: Wh) -> WhEnv {
        let mut vals = (*self.0).clone();
        vals.push(w);
        WhEnv::new(vals)
    }

    pub fn weaken(&self, ope: &Ope) -> WhEnv {
        WhEnv::new(self.0.iter().map(|w| w.weaken(ope)).collect())
    }
}

impl Wh {
    pub fn pair(a: Wh, b: Wh) -> Wh {
        Wh::Pair(Arc::new(a), Arc::new(b))
    }

    pub fn cons(h: Wh, t: Wh) -> Wh {
        Wh::Cons(Arc::new(h), Arc::new(t))
    }

    /// Weakening; closures weaken their captured environment.
    pub fn weaken(&self, ope: &Ope) -> Wh {
        if ope.is_id() {
            return self.clone();
        }
        match self {
            Wh::Ne(m) => Wh::Ne(m.weaken(ope)),
            Wh::Closure { dom, body, env } => {
                Wh::Closure { dom: dom.clone(), body: body.clone(), env: env.weaken(ope) }
            }
            Wh::TT => Wh::TT,
            Wh::Pair(a, b) => Wh::pair(a.weaken(ope), b.weaken(ope)),
            Wh::Nil => Wh::Nil,
            Wh::Cons(h, t) => Wh::cons(h.weaken(ope), t.weaken(ope)),
        }
    }
}

impl WhNe {
    pub fn weaken(&self, ope: &Ope) -> WhNe {
        let w = |x: &Arc<Wh>| Arc::new(x.weaken(ope));
        let m = |x: &Arc<WhNe>| Arc::new(x.weaken(ope));
        match self {
            WhNe::Var(i) => WhNe::Var(ope.apply_index(*i)),
            WhNe::App(f, a) => WhNe::App(m(f), w(a)),
            WhNe::Fst(p) => WhNe::Fst(m(p)),
            WhNe::Snd(p) => WhNe::Snd(m(p)),
            WhNe::Fold(c, n, xs, ret) => WhNe::Fold(w(c), w(n), m(xs), ret.clone()),
            WhNe::Map(f, xs, cod) => WhNe::Map(w(f), m(xs), cod.clone()),
            WhNe::Append(xs, ys) => WhNe::Append(m(xs), w(ys)),
        }
    }

    /// Type of a stuck value, read bottom-up from its head variable.
    pub fn ty(&self, ctx: &Ctx) -> Option<Ty> {
        match self {
            WhNe::Var(i) => ctx.lookup(*i).cloned(),
            WhNe::App(f, _) => f.ty(ctx)?.as_arrow().map(|(_, c)| c.clone()),
            WhNe::Fst(p) => p.ty(ctx)?.as_prod().map(|(l, _)| l.clone()),
            WhNe::Snd(p) => p.ty(ctx)?.as_prod().map(|(_, r)| r.clone()),
            WhNe::Fold(_, _, _, ret) => Some(ret.clone()),
            WhNe::Map(_, _, cod) => Some(Ty::list(cod.clone())),
            WhNe::Append(xs, _) => xs.ty(ctx),
        }
    }
}
