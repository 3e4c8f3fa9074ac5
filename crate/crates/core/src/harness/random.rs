use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::syntax::{Ctx, Term, Ty};

/// Random well-typed terms with cut types drawn from a fixed universe.
pub struct Generator<'a> {
    universe: &'a [Ty],
    rng: ChaCha8Rng,
}

#[derive(Clone, Copy)]
enum Shape {
    Var,
    Intro,
    App,
    Redex,
    Proj,
    Append,
    Map,
    Fold,
}

const SHAPES: [(Shape, u32); 8] = [
    (Shape::Var, 3),
    (Shape::Intro, 4),
    (Shape::App, 2),
    (Shape::Redex, 3),
    (Shape::Proj, 2),
    (Shape::Append, 2),
    (Shape::Map, 3),
    (Shape::Fold, 2),
];

impl<'a> Generator<'a> {
    pub fn new(universe: &'a [Ty], rng: ChaCha8Rng) -> Generator<'a> {
        Generator { universe, rng }
    }

    fn pick_ty(&mut self) -> Ty {
        self.universe[self.rng.random_range(0..self.universe.len())].clone()
    }

    /// A term of type `ty` with at most `budget` nodes, if one is found.
    pub fn term(&mut self, ctx: &Ctx, ty: &Ty, budget: usize) -> Option<Term> {
        if budget == 0 {
            return None;
        }
        for _ in 0..6 {
            let total: u32 = SHAPES.iter().map(|(_, w)| w).sum();
            let mut roll = self.rng.random_range(0..total);
            let mut shape = Shape::Var;
            for (s, w) in SHAPES {
                if roll < w {
                    shape = s;
                    break;
                }
                roll -= w;
            }
            if let Some(t) = self.shaped(ctx, ty, budget, shape) {
                return Some(t);
            }
        }
        self.leaf(ctx, ty).or_else(|| self.shaped(ctx, ty, budget, Shape::Intro))
    }

    fn leaf(&mut self, ctx: &Ctx, ty: &Ty) -> Option<Term> {
        let vars: Vec<usize> = (0..ctx.len()).filter(|&i| ctx.lookup(i) == Some(ty)).collect();
        if !vars.is_empty() {
            return Some(Term::var(vars[self.rng.random_range(0..vars.len())]));
        }
        match ty {
            Ty::Unit => Some(Term::TT),
            Ty::List(e) => Some(Term::nil((**e).clone())),
            _ => None,
        }
    }

    /// Splits `budget - 1` between two children, generating left first.
    fn two(&mut self, ctx: &Ctx, a: &Ty, b: &Ty, budget: usize) -> Option<(Term, Term)> {
        if budget < 3 {
            return None;
        }
        let first = self.rng.random_range(1..budget - 1);
        let x = self.term(ctx, a, first)?;
        let y = self.term(ctx, b, budget - 1 - x.size())?;
        Some((x, y))
    }

    fn shaped(&mut self, ctx: &Ctx, ty: &Ty, budget: usize, shape: Shape) -> Option<Term> {
        match shape {
            Shape::Var => self.leaf(ctx, ty),
            Shape::Intro => match ty {
                Ty::Unit => Some(Term::TT),
                Ty::Arrow(d, c) => {
                    let body = self.term(&ctx.extend((**d).clone()), c, budget.checked_sub(1)?)?;
                    Some(Term::lam((**d).clone(), body))
                }
                Ty::Prod(l, r) => self.two(ctx, l, r, budget).map(|(a, b)| Term::pair(a, b)),
                Ty::List(e) => {
                    if budget < 3 || self.rng.random_bool(0.3) {
                        return Some(Term::nil((**e).clone()));
                    }
                    self.two(ctx, e, ty, budget).map(|(h, t)| Term::cons(h, t))
                }
                Ty::Base(_) => None,
            },
            Shape::App => {
                let a = self.pick_ty();
                self.two(ctx, &Ty::arrow(a.clone(), ty.clone()), &a, budget).map(|(f, x)| Term::app(f, x))
            }
            Shape::Redex => {
                let a = self.pick_ty();
                if budget < 4 {
                    return None;
                }
                let body_budget = self.rng.random_range(1..budget - 2);
                let body = self.term(&ctx.extend(a.clone()), ty, body_budget)?;
                let arg = self.term(ctx, &a, budget - 2 - body.size())?;
                Some(Term::app(Term::lam(a, body), arg))
            }
            Shape::Proj => {
                let b = self.pick_ty();
                let left = self.rng.random_bool(0.5);
                let pty = if left { Ty::prod(ty.clone(), b) } else { Ty::prod(b, ty.clone()) };
                let p = self.term(ctx, &pty, budget.checked_sub(1)?)?;
                Some(if left { Term::fst(p) } else { Term::snd(p) })
            }
            Shape::Append => {
                let Ty::List(_) = ty else { return None };
                self.two(ctx, ty, ty, budget).map(|(a, b)| Term::append(a, b))
            }
            Shape::Map => {
                let Ty::List(e) = ty else { return None };
                let a = self.pick_ty();
                let (f, xs) = self.two(ctx, &Ty::arrow(a.clone(), (**e).clone()), &Ty::list(a), budget)?;
                Some(Term::map(f, xs, (**e).clone()))
            }
            Shape::Fold => {
                if budget < 4 {
                    return None;
                }
                let a = self.pick_ty();
                let c_ty = Ty::arrow(a.clone(), Ty::arrow(ty.clone(), ty.clone()));
                let first = self.rng.random_range(1..budget - 2);
                let c = self.term(ctx, &c_ty, first)?;
                let (n, xs) = self.two(ctx, ty, &Ty::list(a), budget - c.size())?;
                Some(Term::fold(c, n, xs, ty.clone()))
            }
        }
    }
}

/// `count` random terms, the `i`-th at goal `goals[i % goals.len()]`, each
/// with at most `max_size` nodes. Item `i` depends only on `seed` and `i`.
pub fn random_terms(
    ctx: &Ctx,
    goals: &[Ty],
    universe: &[Ty],
    count: usize,
    max_size: usize,
    seed: u64,
) -> Vec<(Term, Ty)> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let goal = &goals[i % goals.len()];
            let mut g = Generator::new(universe, rng);
            for _ in 0..10_000 {
                if let Some(t) = g.term(ctx, goal, max_size) {
                    return (t, goal.clone());
                }
            }
            panic!("no inhabitant of {goal} found within {max_size} nodes")
        })
        .collect()
}
