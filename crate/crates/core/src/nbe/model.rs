use std::fmt;
use std::sync::Arc;

use crate::syntax::{Ctx, Ne, Ope, Ty};

type FunImpl = dyn Fn(&Ope, Sem) -> Sem + Send + Sync;
type NeFunImpl = dyn Fn(&Ope, Ne) -> Sem + Send + Sync;

/// A Kripke function living in some context Γ: it accepts any embedding
/// Γ ⊆ Δ together with an argument in Δ and produces a result in Δ.
///
/// Implementations must be pure: the model relies on calling the same
/// function at many future contexts.
#[derive(Clone)]
pub struct Kripke(Arc<FunImpl>);

/// The function part of a stuck `map`: consumes a neutral element of the
/// nut's element type, in any extension of the current context.
#[derive(Clone)]
pub struct NeKripke(Arc<NeFunImpl>);

impl Kripke {
    pub fn new(f: impl Fn(&Ope, Sem) -> Sem + Send + Sync + 'static) -> Kripke {
        Kripke(Arc::new(f))
    }

    pub fn call(&self, ope: &Ope, arg: Sem) -> Sem {
        (self.0)(ope, arg)
    }

    /// Pre-composes an embedding: the result lives in `ope.tgt()`.
    pub fn weaken(&self, ope: &Ope) -> Kripke {
        if ope.is_id() {
            return self.clone();
        }
        let f = self.clone();
        let ope = ope.clone();
        Kripke::new(move |next, s| f.call(&ope.then(next), s))
    }
}

impl NeKripke {
    pub fn new(f: impl Fn(&Ope, Ne) -> Sem + Send + Sync + 'static) -> NeKripke {
        NeKripke(Arc::new(f))
    }

    pub fn call(&self, ope: &Ope, arg: Ne) -> Sem {
        (self.0)(ope, arg)
    }

    pub fn weaken(&self, ope: &Ope) -> NeKripke {
        if ope.is_id() {
            return self.clone();
        }
        let f = self.clone();
        let ope = ope.clone();
        NeKripke::new(move |next, n| f.call(&ope.then(next), n))
    }

    /// `F ∘ G`: apply `G`, then `F`, both along the same embedding.
    pub fn after(f: &Kripke, g: &NeKripke) -> NeKripke {
        let f = f.clone();
        let g = g.clone();
        NeKripke::new(move |ope, n| f.call(ope, g.call(ope, n)))
    }
}

/// Elements of the model, indexed (implicitly) by a type and a context.
#[derive(Clone)]
pub enum Sem {
    Unit,
    /// A neutral at base type.
    Ne(Ne),
    Pair(Arc<Sem>, Arc<Sem>),
    Fun(Kripke),
    List(SemList),
}

/// Semantic lists: nil, cons, or a stuck `(map F xs) ++ YS` whose function
/// keeps its computational content.
#[derive(Clone)]
pub enum SemList {
    Nil,
    Cons(Arc<Sem>, Arc<SemList>),
    Mapp {
        fun: NeKripke,
        /// Element type of `nut`.
        dom: Ty,
        nut: Ne,
        rest: Arc<SemList>,
    },
}

impl Sem {
    pub fn pair(a: Sem, b: Sem) -> Sem {
        Sem::Pair(Arc::new(a), Arc::new(b))
    }

    pub fn fst(&self) -> Sem {
        match self {
            Sem::Pair(a, _) => (**a).clone(),
            other => panic!("first projection of a non-pair {other:?}"),
        }
    }

    pub fn snd(&self) -> Sem {
        match self {
            Sem::Pair(_, b) => (**b).clone(),
            other => panic!("second projection of a non-pair {other:?}"),
        }
    }

    pub fn as_fun(&self) -> &Kripke {
        match self {
            Sem::Fun(f) => f,
            other => panic!("application of a non-function {other:?}"),
        }
    }

    pub fn as_list(&self) -> &SemList {
        match self {
            Sem::List(l) => l,
            other => panic!("list operation on {other:?}"),
        }
    }

    /// Transports a value along an embedding of its context.
    pub fn weaken(&self, ope: &Ope) -> Sem {
        if ope.is_id() {
            return self.clone();
        }
        match self {
            Sem::Unit => Sem::Unit,
            Sem::Ne(n) => Sem::Ne(n.weaken(ope)),
            Sem::Pair(a, b) => Sem::pair(a.weaken(ope), b.weaken(ope)),
            Sem::Fun(f) => Sem::Fun(f.weaken(ope)),
            Sem::List(l) => Sem::List(l.weaken(ope)),
        }
    }
}

impl SemList {
    pub fn cons(h: Sem, t: SemList) -> SemList {
        SemList::Cons(Arc::new(h), Arc::new(t))
    }

    pub fn weaken(&self, ope: &Ope) -> SemList {
        match self {
            SemList::Nil => SemList::Nil,
            SemList::Cons(h, t) => SemList::cons(h.weaken(ope), t.weaken(ope)),
            SemList::Mapp { fun, dom, nut, rest } => SemList::Mapp {
                fun: fun.weaken(ope),
                dom: dom.clone(),
                nut: nut.weaken(ope),
                rest: Arc::new(rest.weaken(ope)),
            },
        }
    }
}

/// A semantic environment: one value per slot of a source context, all
/// living in the target context `ctx`.
#[derive(Clone, Debug)]
pub struct SemEnv {
    ctx: Ctx,
    vals: Vec<Sem>,
}

impl SemEnv {
    pub fn empty(ctx: &Ctx) -> SemEnv {
        SemEnv { ctx: ctx.clone(), vals: Vec::new() }
    }

    /// Values oldest first.
    pub fn new(ctx: &Ctx, vals: Vec<Sem>) -> SemEnv {
        SemEnv { ctx: ctx.clone(), vals }
    }

    /// The target context the values live in.
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn lookup(&self, idx: usize) -> &Sem {
        &self.vals[self.vals.len() - 1 - idx]
    }

    pub fn push(&mut self, s: Sem) {
        self.vals.push(s);
    }

    pub fn weaken(&self, ope: &Ope) -> SemEnv {
        SemEnv { ctx: ope.tgt().clone(), vals: self.vals.iter().map(|s| s.weaken(ope)).collect() }
    }
}

impl fmt::Debug for Sem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sem::Unit => write!(f, "()"),
            Sem::Ne(n) => write!(f, "{n:?}"),
            Sem::Pair(a, b) => write!(f, "({a:?}, {b:?})"),
            Sem::Fun(_) => write!(f, "<fun>"),
            Sem::List(l) => write!(f, "{l:?}"),
        }
    }
}

impl fmt::Debug for SemList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemList::Nil => write!(f, "[]"),
            SemList::Cons(h, t) => write!(f, "{h:?} :: {t:?}"),
            SemList::Mapp { nut, rest, .. } => write!(f, "<map _ {nut:?}> ++ {rest:?}"),
        }
    }
}
