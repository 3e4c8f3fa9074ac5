use std::sync::Arc;

use super::{Ope, Ty};

/// Typed de Bruijn terms.
///
/// Binders and the list primitives carry just enough type annotations for
/// [`infer`](super::infer) to be syntax-directed and for neutral spines to
/// be typed bottom-up: `Map` records the element type of the list it
/// produces, `Fold` records its result type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    Lam(Ty, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    TT,
    Pair(Arc<Term>, Arc<Term>),
    Fst(Arc<Term>),
    Snd(Arc<Term>),
    /// The empty list, annotated with its element type.
    Nil(Ty),
    Cons(Arc<Term>, Arc<Term>),
    Append(Arc<Term>, Arc<Term>),
    /// `map f xs`, annotated with the codomain of `f`.
    Map(Arc<Term>, Arc<Term>, Ty),
    /// `fold c n xs`, annotated with its result type.
    Fold(Arc<Term>, Arc<Term>, Arc<Term>, Ty),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn lam(dom: Ty, body: Term) -> Term {
        Term::Lam(dom, Arc::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    pub fn pair(l: Term, r: Term) -> Term {
        Term::Pair(Arc::new(l), Arc::new(r))
    }

    pub fn fst(t: Term) -> Term {
        Term::Fst(Arc::new(t))
    }

    pub fn snd(t: Term) -> Term {
        Term::Snd(Arc::new(t))
    }

    pub fn nil(elem: Ty) -> Term {
        Term::Nil(elem)
    }

    pub fn cons(hd: Term, tl: Term) -> Term {
        Term::Cons(Arc::new(hd), Arc::new(tl))
    }

    pub fn append(xs: Term, ys: Term) -> Term {
        Term::Append(Arc::new(xs), Arc::new(ys))
    }

    pub fn map(f: Term, xs: Term, cod: Ty) -> Term {
        Term::Map(Arc::new(f), Arc::new(xs), cod)
    }

    pub fn fold(c: Term, n: Term, xs: Term, ret: Ty) -> Term {
        Term::Fold(Arc::new(c), Arc::new(n), Arc::new(xs), ret)
    }

    /// Node count; type annotations are not counted.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn children(&self) -> Vec<&Arc<Term>> {
        match self {
            Term::Var(_) | Term::TT | Term::Nil(_) => vec![],
            Term::Lam(_, b) => vec![b],
            Term::Fst(t) | Term::Snd(t) => vec![t],
            Term::App(a, b) | Term::Pair(a, b) | Term::Cons(a, b) | Term::Append(a, b) | Term::Map(a, b, _) => {
                vec![a, b]
            }
            Term::Fold(a, b, c, _) => vec![a, b, c],
        }
    }

    /// Rebuilds this node with child `i` replaced.
    pub fn with_child(&self, i: usize, new: Arc<Term>) -> Term {
        let pick = |j: usize, old: &Arc<Term>| if i == j { new.clone() } else { old.clone() };
        match self {
            Term::Var(_) | Term::TT | Term::Nil(_) => panic!("leaf has no child {i}"),
            Term::Lam(d, b) => Term::Lam(d.clone(), pick(0, b)),
            Term::App(a, b) => Term::App(pick(0, a), pick(1, b)),
            Term::Pair(a, b) => Term::Pair(pick(0, a), pick(1, b)),
            Term::Fst(t) => Term::Fst(pick(0, t)),
            Term::Snd(t) => Term::Snd(pick(0, t)),
            Term::Cons(a, b) => Term::Cons(pick(0, a), pick(1, b)),
            Term::Append(a, b) => Term::Append(pick(0, a), pick(1, b)),
            Term::Map(a, b, ty) => Term::Map(pick(0, a), pick(1, b), ty.clone()),
            Term::Fold(a, b, c, ty) => Term::Fold(pick(0, a), pick(1, b), pick(2, c), ty.clone()),
        }
    }

    /// The subterm at `path` (a sequence of child indices).
    pub fn at_path(&self, path: &[usize]) -> Option<&Term> {
        let mut t = self;
        for &i in path {
            t = t.children().get(i)?;
        }
        Some(t)
    }

    /// Replaces the subterm at `path`.
    pub fn replace_at(&self, path: &[usize], new: Term) -> Term {
        match path.split_first() {
            None => new,
            Some((&i, rest)) => {
                let child = self.children()[i];
                self.with_child(i, Arc::new(child.replace_at(rest, new)))
            }
        }
    }

    /// Applies `f` to every free variable index, going under binders.
    pub fn rename(&self, f: &dyn Fn(usize) -> usize) -> Term {
        self.rename_from(0, f)
    }

    fn rename_from(&self, depth: usize, f: &dyn Fn(usize) -> usize) -> Term {
        let go = |t: &Arc<Term>| Arc::new(t.rename_from(depth, f));
        match self {
            Term::Var(i) if *i < depth => Term::Var(*i),
            Term::Var(i) => Term::Var(f(i - depth) + depth),
            Term::Lam(d, b) => Term::Lam(d.clone(), Arc::new(b.rename_from(depth + 1, f))),
            Term::App(a, b) => Term::App(go(a), go(b)),
            Term::TT => Term::TT,
            Term::Pair(a, b) => Term::Pair(go(a), go(b)),
            Term::Fst(t) => Term::Fst(go(t)),
            Term::Snd(t) => Term::Snd(go(t)),
            Term::Nil(ty) => Term::Nil(ty.clone()),
            Term::Cons(a, b) => Term::Cons(go(a), go(b)),
            Term::Append(a, b) => Term::Append(go(a), go(b)),
            Term::Map(a, b, ty) => Term::Map(go(a), go(b), ty.clone()),
            Term::Fold(a, b, c, ty) => Term::Fold(go(a), go(b), go(c), ty.clone()),
        }
    }

    /// Weakening along an order-preserving embedding.
    pub fn weaken(&self, ope: &Ope) -> Term {
        if ope.is_id() {
            return self.clone();
        }
        self.rename(&|i| ope.apply_index(i))
    }

    /// Shifts every free variable up by `by`.
    pub fn shift(&self, by: usize) -> Term {
        if by == 0 {
            return self.clone();
        }
        self.rename(&|i| i + by)
    }

    /// Whether de Bruijn index `idx` occurs free.
    pub fn mentions(&self, idx: usize) -> bool {
        match self {
            Term::Var(i) => *i == idx,
            Term::Lam(_, b) => b.mentions(idx + 1),
            _ => self.children().iter().any(|c| c.mentions(idx)),
        }
    }

    /// Removes variable 0 and shifts the rest down. Only meaningful when
    /// index 0 does not occur.
    pub fn strengthen(&self) -> Option<Term> {
        if self.mentions(0) {
            return None;
        }
        Some(self.rename(&|i| i - 1))
    }

    /// A syntactic neutral: a variable under a spine of eliminators,
    /// following the principal argument of each.
    pub fn is_neutral(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::App(f, _) => f.is_neutral(),
            Term::Fst(t) | Term::Snd(t) => t.is_neutral(),
            Term::Append(xs, _) | Term::Map(_, xs, _) | Term::Fold(_, _, xs, _) => xs.is_neutral(),
            _ => false,
        }
    }
}
