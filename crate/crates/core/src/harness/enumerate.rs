use std::collections::HashMap;
use std::sync::Arc;

use crate::syntax::{Ctx, Term, Ty};

/// The types an enumeration may pass through a cut: the argument of an
/// application, the discarded half of a projected pair, and the element
/// type of a mapped or folded list. Lambda domains and `nil` annotations
/// are dictated by the goal type and need no universe.
///
/// Without such a bound even a size-4 term like `map (\x:T. a) nil:[T]`
/// has infinitely many choices of `T`.
pub fn universe(ctx: &Ctx, goals: &[Ty]) -> Vec<Ty> {
    let mut out = Vec::new();
    for t in ctx.tys().iter().chain(goals) {
        t.subformulas(&mut out);
    }
    out.sort();
    out
}

type Key = (Vec<Ty>, Ty, usize);

/// Memoized enumeration of well-typed terms by exact size.
pub struct Enumerator {
    universe: Vec<Ty>,
    memo: HashMap<Key, Arc<Vec<Term>>>,
    bounds: HashMap<(Vec<Ty>, Ty), usize>,
}

impl Enumerator {
    pub fn new(universe: Vec<Ty>) -> Enumerator {
        Enumerator { universe, memo: HashMap::new(), bounds: HashMap::new() }
    }

    pub fn universe(&self) -> &[Ty] {
        &self.universe
    }

    /// Every term of type `ty` in `ctx` with at most `bound` nodes whose cut
    /// types lie in the universe, smallest first.
    pub fn up_to(&mut self, ctx: &Ctx, ty: &Ty, bound: usize) -> Vec<Term> {
        let mut out = Vec::new();
        for n in 1..=bound {
            out.extend(self.exactly(ctx.tys(), ty, n).iter().cloned());
        }
        out
    }

    /// Terms of exactly `n` nodes.
    fn exactly(&mut self, ctx: &[Ty], ty: &Ty, n: usize) -> Arc<Vec<Term>> {
        if self.lower_bound(ctx, ty) > n {
            return Arc::new(Vec::new());
        }
        let key = (ctx.to_vec(), ty.clone(), n);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let terms = Arc::new(self.build(ctx, ty, n));
        self.memo.insert(key, terms.clone());
        terms
    }

    /// A size below which `ty` has no inhabitant in `ctx`.
    ///
    /// An elimination whose spine does not start at a variable has at
    /// least four nodes (a redex or a fold), and one that does start at a
    /// variable produces a type reachable from it by codomains and
    /// projections.
    fn lower_bound(&mut self, ctx: &[Ty], ty: &Ty) -> usize {
        let key = (ctx.to_vec(), ty.clone());
        if let Some(&b) = self.bounds.get(&key) {
            return b;
        }
        let b = if matches!(ty, Ty::Unit | Ty::List(_)) || ctx.contains(ty) {
            1
        } else {
            let intro = match ty {
                Ty::Prod(l, r) => 1 + self.lower_bound(ctx, l) + self.lower_bound(ctx, r),
                Ty::Arrow(d, c) => {
                    let mut inner = ctx.to_vec();
                    inner.push((**d).clone());
                    1 + self.lower_bound(&inner, c)
                }
                _ => usize::MAX / 4,
            };
            let elim = if ctx.iter().any(|v| reaches(v, ty)) { 2 } else { 4 };
            intro.min(elim)
        };
        self.bounds.insert(key, b);
        b
    }

    /// All `(a, b)` with `a` of size `i`, `b` of size `n - i`.
    fn pairs(&mut self, ctx: &[Ty], ta: &Ty, tb: &Ty, n: usize, mut f: impl FnMut(&Term, &Term)) {
        for i in 1..n {
            let xs = self.exactly(ctx, ta, i);
            if xs.is_empty() {
                continue;
            }
            let ys = self.exactly(ctx, tb, n - i);
            for a in xs.iter() {
                for b in ys.iter() {
                    f(a, b);
                }
            }
        }
    }

    fn triples(&mut self, ctx: &[Ty], ts: [&Ty; 3], n: usize, mut f: impl FnMut(&Term, &Term, &Term)) {
        for i in 1..n {
            let xs = self.exactly(ctx, ts[0], i);
            if xs.is_empty() {
                continue;
            }
            for j in 1..n - i {
                let ys = self.exactly(ctx, ts[1], j);
                if ys.is_empty() {
                    continue;
                }
                let zs = self.exactly(ctx, ts[2], n - i - j);
                for a in xs.iter() {
                    for b in ys.iter() {
                        for c in zs.iter() {
                            f(a, b, c);
                        }
                    }
                }
            }
        }
    }

    fn build(&mut self, ctx: &[Ty], ty: &Ty, n: usize) -> Vec<Term> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        if n == 1 {
            for (k, t) in ctx.iter().rev().enumerate() {
                if t == ty {
                    out.push(Term::var(k));
                }
            }
            match ty {
                Ty::Unit => out.push(Term::TT),
                Ty::List(e) => out.push(Term::nil((**e).clone())),
                _ => {}
            }
            return out;
        }
        let universe = self.universe.clone();
        let m = n - 1;

        match ty {
            Ty::Arrow(d, c) => {
                let mut inner = ctx.to_vec();
                inner.push((**d).clone());
                for body in self.exactly(&inner, c, m).iter() {
                    out.push(Term::lam((**d).clone(), body.clone()));
                }
            }
            Ty::Prod(l, r) => {
                self.pairs(ctx, l, r, m, |a, b| out.push(Term::pair(a.clone(), b.clone())));
            }
            Ty::List(e) => {
                self.pairs(ctx, e, ty, m, |a, b| out.push(Term::cons(a.clone(), b.clone())));
                self.pairs(ctx, ty, ty, m, |a, b| out.push(Term::append(a.clone(), b.clone())));
                for a in &universe {
                    let f_ty = Ty::arrow(a.clone(), (**e).clone());
                    let xs_ty = Ty::list(a.clone());
                    self.pairs(ctx, &f_ty, &xs_ty, m, |f, xs| {
                        out.push(Term::map(f.clone(), xs.clone(), (**e).clone()))
                    });
                }
            }
            Ty::Base(_) | Ty::Unit => {}
        }

        for a in &universe {
            let f_ty = Ty::arrow(a.clone(), ty.clone());
            self.pairs(ctx, &f_ty, a, m, |f, x| out.push(Term::app(f.clone(), x.clone())));
        }
        for b in &universe {
            for p in self.exactly(ctx, &Ty::prod(ty.clone(), b.clone()), m).iter() {
                out.push(Term::fst(p.clone()));
            }
            for p in self.exactly(ctx, &Ty::prod(b.clone(), ty.clone()), m).iter() {
                out.push(Term::snd(p.clone()));
            }
        }
        for a in &universe {
            let c_ty = Ty::arrow(a.clone(), Ty::arrow(ty.clone(), ty.clone()));
            let xs_ty = Ty::list(a.clone());
            self.triples(ctx, [&c_ty, ty, &xs_ty], m, |c, z, xs| {
                out.push(Term::fold(c.clone(), z.clone(), xs.clone(), ty.clone()))
            });
        }
        out
    }
}

/// Whether eliminating a value of type `from` can produce a `to`.
fn reaches(from: &Ty, to: &Ty) -> bool {
    from == to
        || match from {
            Ty::Arrow(_, c) => reaches(c, to),
            Ty::Prod(l, r) => reaches(l, to) || reaches(r, to),
            _ => false,
        }
}

/// Well-typed terms of `ty` in `ctx` up to `bound` nodes, with cut types
/// drawn from the sub-formulas of the context and `ty`.
pub fn enum_terms(ctx: &Ctx, ty: &Ty, bound: usize) -> Vec<Term> {
    let mut e = Enumerator::new(universe(ctx, std::slice::from_ref(ty)));
    e.up_to(ctx, ty, bound)
}

/// The cut types of a well-typed term, in the sense of [`universe`].
pub fn cut_types(ctx: &Ctx, t: &Term) -> Vec<Ty> {
    use crate::syntax::infer;
    let mut out = Vec::new();
    fn go(ctx: &Ctx, t: &Term, out: &mut Vec<Ty>) {
        let ty = |u: &Term| infer(ctx, u).expect("well-typed subterm");
        match t {
            Term::App(_, a) => out.push(ty(a)),
            Term::Fst(p) => out.push(ty(p).as_prod().expect("pair").1.clone()),
            Term::Snd(p) => out.push(ty(p).as_prod().expect("pair").0.clone()),
            Term::Map(_, xs, _) | Term::Fold(_, _, xs, _) => out.push(ty(xs).as_list().expect("list").clone()),
            _ => {}
        }
        match t {
            Term::Lam(d, b) => go(&ctx.extend(d.clone()), b, out),
            _ => {
                for c in t.children() {
                    go(ctx, c, out);
                }
            }
        }
    }
    go(ctx, t, &mut out);
    out
}
