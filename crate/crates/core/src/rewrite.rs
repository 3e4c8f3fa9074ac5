//! The equational theory as a one-step rewrite relation, and a bounded
//! bidirectional search for conversion paths between two terms.

use std::cell::RefCell;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::nbe::norm;
use crate::syntax::{infer, instantiate, Ctx, Term, Ty, TypeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleName {
    Beta,
    EtaArrow,
    EtaProd,
    EtaUnit,
    MapNil,
    MapCons,
    AppendNil,
    AppendCons,
    FoldNil,
    FoldCons,
    NuAppendNilR,
    NuAppendAssoc,
    NuMapId,
    NuMapMap,
    NuMapAppend,
    NuFoldMap,
    NuFoldAppend,
}

impl RuleName {
    pub const ALL: [RuleName; 17] = [
        RuleName::Beta,
        RuleName::EtaArrow,
        RuleName::EtaProd,
        RuleName::EtaUnit,
        RuleName::MapNil,
        RuleName::MapCons,
        RuleName::AppendNil,
        RuleName::AppendCons,
        RuleName::FoldNil,
        RuleName::FoldCons,
        RuleName::NuAppendNilR,
        RuleName::NuAppendAssoc,
        RuleName::NuMapId,
        RuleName::NuMapMap,
        RuleName::NuMapAppend,
        RuleName::NuFoldMap,
        RuleName::NuFoldAppend,
    ];

    /// The direction in which the rule belongs to the reduction relation.
    pub fn reducing_direction(self) -> Direction {
        match self {
            RuleName::NuAppendNilR | RuleName::NuMapId => Direction::RightToLeft,
            _ => Direction::LeftToRight,
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::LeftToRight => Direction::RightToLeft,
            Direction::RightToLeft => Direction::LeftToRight,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::LeftToRight => "->",
            Direction::RightToLeft => "<-",
        })
    }
}

/// One rule instance applied at `path`; `result` is the whole rewritten term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteStep {
    pub rule: RuleName,
    pub direction: Direction,
    pub path: Vec<usize>,
    pub result: Term,
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} at {:?}", self.rule, self.direction, self.path)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error(transparent)]
    IllTyped(#[from] TypeError),
    #[error("expected a term of type {expected}, got {got}")]
    WrongType { expected: Ty, got: Ty },
}

/// All one-step rewrites of `t`, at every position.
///
/// With `bidirectional` unset this is the reduction relation: every rule
/// left to right except the two identity laws, which run right to left,
/// and η as guarded expansion. With it set, rules also run backwards,
/// except the reverses of β, `EtaUnit`, `MapNil` and `FoldNil`, which
/// would have to invent arbitrary subterms.
pub fn one_step(ctx: &Ctx, t: &Term, bidirectional: bool) -> Result<Vec<RewriteStep>, TypeError> {
    infer(ctx, t)?;
    let mut local = Vec::new();
    let mut path = Vec::new();
    collect(ctx, t, bidirectional, &mut path, &mut local);
    Ok(local
        .into_iter()
        .map(|(rule, direction, path, new)| {
            let result = t.replace_at(&path, new);
            RewriteStep { rule, direction, path, result }
        })
        .collect())
}

type Local = (RuleName, Direction, Vec<usize>, Term);

fn collect(ctx: &Ctx, t: &Term, bi: bool, path: &mut Vec<usize>, out: &mut Vec<Local>) {
    let ty = infer(ctx, t).expect("subterm of a well-typed term");
    let mut emit = |rule: RuleName, dir: Direction, new: Term| {
        if bi || dir == rule.reducing_direction() {
            out.push((rule, dir, path.clone(), new));
        }
    };
    root_steps(ctx, t, &ty, bi, &mut emit);
    for (i, child) in t.children().into_iter().enumerate() {
        let cctx = match t {
            Term::Lam(d, _) => ctx.extend(d.clone()),
            _ => ctx.clone(),
        };
        path.push(i);
        collect(&cctx, child, bi, path, out);
        path.pop();
    }
}

use Direction::{LeftToRight as L2R, RightToLeft as R2L};

fn root_steps(ctx: &Ctx, t: &Term, ty: &Ty, bi: bool, emit: &mut dyn FnMut(RuleName, Direction, Term)) {
    use RuleName::*;

    // η, both ways. Expansion skips terms already in constructor form.
    match ty {
        Ty::Arrow(d, _) if !matches!(t, Term::Lam(..)) => {
            emit(EtaArrow, L2R, Term::lam((**d).clone(), Term::app(t.shift(1), Term::var(0))))
        }
        Ty::Prod(..) if !matches!(t, Term::Pair(..)) => {
            emit(EtaProd, L2R, Term::pair(Term::fst(t.clone()), Term::snd(t.clone())))
        }
        Ty::Unit if *t != Term::TT => emit(EtaUnit, L2R, Term::TT),
        _ => {}
    }
    if bi {
        if let Term::Lam(_, body) = t {
            if let Term::App(f, a) = &**body {
                if **a == Term::var(0) {
                    if let Some(f) = f.strengthen() {
                        emit(EtaArrow, R2L, f);
                    }
                }
            }
        }
        if let Term::Pair(a, b) = t {
            if let (Term::Fst(p), Term::Snd(q)) = (&**a, &**b) {
                if p == q {
                    emit(EtaProd, R2L, (**p).clone());
                }
            }
        }
    }

    // β and the computation rules, forwards.
    match t {
        Term::App(f, a) => {
            if let Term::Lam(_, body) = &**f {
                emit(Beta, L2R, instantiate(body, a));
            }
        }
        Term::Fst(p) => {
            if let Term::Pair(a, _) = &**p {
                emit(Beta, L2R, (**a).clone());
            }
        }
        Term::Snd(p) => {
            if let Term::Pair(_, b) = &**p {
                emit(Beta, L2R, (**b).clone());
            }
        }
        Term::Map(f, xs, cod) => match &**xs {
            Term::Nil(_) => emit(MapNil, L2R, Term::nil(cod.clone())),
            Term::Cons(h, tl) => emit(
                MapCons,
                L2R,
                Term::cons(Term::App(f.clone(), h.clone()), Term::Map(f.clone(), tl.clone(), cod.clone())),
            ),
            _ => {}
        },
        Term::Append(xs, ys) => match &**xs {
            Term::Nil(_) => emit(AppendNil, L2R, (**ys).clone()),
            Term::Cons(h, tl) => {
                emit(AppendCons, L2R, Term::Cons(h.clone(), Arc::new(Term::Append(tl.clone(), ys.clone()))))
            }
            _ => {}
        },
        Term::Fold(c, n, xs, ret) => match &**xs {
            Term::Nil(_) => emit(FoldNil, L2R, (**n).clone()),
            Term::Cons(h, tl) => {
                let rec = Term::Fold(c.clone(), n.clone(), tl.clone(), ret.clone());
                emit(FoldCons, L2R, Term::app(Term::App(c.clone(), h.clone()), rec));
            }
            _ => {}
        },
        _ => {}
    }

    // Computation rules, backwards.
    if bi {
        if let Ty::List(elem) = ty {
            emit(AppendNil, R2L, Term::append(Term::nil((**elem).clone()), t.clone()));
        }
        match t {
            Term::Cons(fh, rest) => {
                if let (Term::App(f, h), Term::Map(g, tl, cod)) = (&**fh, &**rest) {
                    if f == g {
                        emit(
                            MapCons,
                            R2L,
                            Term::Map(f.clone(), Arc::new(Term::Cons(h.clone(), tl.clone())), cod.clone()),
                        );
                    }
                }
                if let Term::Append(tl, ys) = &**rest {
                    emit(AppendCons, R2L, Term::Append(Arc::new(Term::Cons(fh.clone(), tl.clone())), ys.clone()));
                }
            }
            Term::App(ch, rec) => {
                if let (Term::App(c, h), Term::Fold(c2, n, tl, ret)) = (&**ch, &**rec) {
                    if c == c2 {
                        let xs = Arc::new(Term::Cons(h.clone(), tl.clone()));
                        emit(FoldCons, R2L, Term::Fold(c.clone(), n.clone(), xs, ret.clone()));
                    }
                }
            }
            _ => {}
        }
    }

    nu_steps(ctx, t, ty, emit);
}

/// The rules on neutral lists. Each fires only when its nut position holds
/// a syntactic neutral. Directions the caller does not want are filtered
/// by `emit`.
fn nu_steps(ctx: &Ctx, t: &Term, ty: &Ty, emit: &mut dyn FnMut(RuleName, Direction, Term)) {
    use RuleName::*;

    if let Ty::List(elem) = ty {
        if t.is_neutral() {
            emit(NuAppendNilR, R2L, Term::append(t.clone(), Term::nil((**elem).clone())));
            let id = eta_identity(ctx.bases(), elem);
            emit(NuMapId, R2L, Term::map(id, t.clone(), (**elem).clone()));
        }
    }

    match t {
        Term::Append(xs, ys) if xs.is_neutral() => {
            if let Term::Nil(_) = &**ys {
                emit(NuAppendNilR, L2R, (**xs).clone());
            }
            if let Term::Append(xs1, ys1) = &**xs {
                if xs1.is_neutral() {
                    let inner = Arc::new(Term::Append(ys1.clone(), ys.clone()));
                    emit(NuAppendAssoc, L2R, Term::Append(xs1.clone(), inner));
                }
            }
            if let Term::Append(ys1, zs) = &**ys {
                let outer = Arc::new(Term::Append(xs.clone(), ys1.clone()));
                emit(NuAppendAssoc, R2L, Term::Append(outer, zs.clone()));
            }
            if let (Term::Map(f, xs1, cod), Term::Map(g, ys1, cod2)) = (&**xs, &**ys) {
                if f == g && cod == cod2 && xs1.is_neutral() {
                    let app = Arc::new(Term::Append(xs1.clone(), ys1.clone()));
                    emit(NuMapAppend, R2L, Term::Map(f.clone(), app, cod.clone()));
                }
            }
        }
        Term::Map(f, xs, cod) if xs.is_neutral() => {
            let dom = list_elem(ctx, xs);
            if is_identity(ctx.bases(), f, &dom) {
                emit(NuMapId, L2R, (**xs).clone());
            }
            match &**xs {
                Term::Map(g, xs1, _) if xs1.is_neutral() => {
                    let inner = list_elem(ctx, xs1);
                    emit(NuMapMap, L2R, Term::Map(Arc::new(compose(f, g, &inner)), xs1.clone(), cod.clone()));
                }
                Term::Append(xs1, ys) if xs1.is_neutral() => {
                    let l = Term::Map(f.clone(), xs1.clone(), cod.clone());
                    let r = Term::Map(f.clone(), ys.clone(), cod.clone());
                    emit(NuMapAppend, L2R, Term::append(l, r));
                }
                _ => {}
            }
            if let Some((f1, g1, mid)) = decompose(ctx, f) {
                let inner = Term::Map(Arc::new(g1), xs.clone(), mid);
                emit(NuMapMap, R2L, Term::Map(Arc::new(f1), Arc::new(inner), cod.clone()));
            }
        }
        Term::Fold(c, n, xs, ret) if xs.is_neutral() => {
            match &**xs {
                Term::Map(f, xs1, _) if xs1.is_neutral() => {
                    let dom = list_elem(ctx, xs1);
                    emit(
                        NuFoldMap,
                        L2R,
                        Term::Fold(Arc::new(compose(c, f, &dom)), n.clone(), xs1.clone(), ret.clone()),
                    );
                }
                Term::Append(xs1, ys) if xs1.is_neutral() => {
                    let seed = Arc::new(Term::Fold(c.clone(), n.clone(), ys.clone(), ret.clone()));
                    emit(NuFoldAppend, L2R, Term::Fold(c.clone(), seed, xs1.clone(), ret.clone()));
                }
                _ => {}
            }
            if let Some((c1, f1, mid)) = decompose(ctx, c) {
                let inner = Term::Map(Arc::new(f1), xs.clone(), mid);
                emit(NuFoldMap, R2L, Term::Fold(Arc::new(c1), n.clone(), Arc::new(inner), ret.clone()));
            }
            if let Term::Fold(c2, n1, ys, ret2) = &**n {
                if c == c2 && ret == ret2 {
                    let app = Arc::new(Term::Append(xs.clone(), ys.clone()));
                    emit(NuFoldAppend, R2L, Term::Fold(c.clone(), n1.clone(), app, ret.clone()));
                }
            }
        }
        _ => {}
    }
}

fn list_elem(ctx: &Ctx, xs: &Term) -> Ty {
    match infer(ctx, xs) {
        Ok(Ty::List(e)) => (*e).clone(),
        other => panic!("list position holds {other:?}"),
    }
}

/// `\x:dom. f (g x)`.
pub fn compose(f: &Term, g: &Term, dom: &Ty) -> Term {
    Term::lam(dom.clone(), Term::app(f.shift(1), Term::app(g.shift(1), Term::var(0))))
}

/// Splits `\x. f (g x)` into `f`, `g` and the type of `g x`, when neither
/// `f` nor `g` mentions `x`.
fn decompose(ctx: &Ctx, h: &Term) -> Option<(Term, Term, Ty)> {
    let Term::Lam(dom, body) = h else { return None };
    let Term::App(f, gx) = &**body else { return None };
    let Term::App(g, x) = &**gx else { return None };
    if **x != Term::var(0) {
        return None;
    }
    let f = f.strengthen()?;
    let g = g.strengthen()?;
    let gty = infer(ctx, &g).ok()?;
    let (gdom, mid) = gty.as_arrow()?;
    (gdom == dom).then(|| (f, g.clone(), mid.clone()))
}

/// The η-long identity at `ty`, as produced by the normalizer.
pub fn eta_identity(bases: u32, ty: &Ty) -> Term {
    thread_local! {
        static CACHE: RefCell<HashMap<(u32, Ty), Term>> = RefCell::new(HashMap::new());
    }
    CACHE.with(|cache| {
        cache
            .borrow_mut()
            .entry((bases, ty.clone()))
            .or_insert_with(|| {
                let id = Term::lam(ty.clone(), Term::var(0));
                norm(&Ctx::new(bases), &id).expect("identity is well-typed").embed()
            })
            .clone()
    })
}

fn is_identity(bases: u32, f: &Term, dom: &Ty) -> bool {
    match f {
        Term::Lam(d, body) if d == dom => **body == Term::var(0) || *f == eta_identity(bases, dom),
        _ => false,
    }
}

/// Whether `step` rewrites `from` in one step, read in either direction
/// (a step may be the reverse of one that `one_step` only lists forwards).
pub fn valid_step(ctx: &Ctx, from: &Term, step: &RewriteStep) -> bool {
    let forward = one_step(ctx, from, true).map(|steps| steps.contains(step)).unwrap_or(false);
    if forward {
        return true;
    }
    let back = RewriteStep {
        rule: step.rule,
        direction: step.direction.flip(),
        path: step.path.clone(),
        result: from.clone(),
    };
    one_step(ctx, &step.result, true).map(|steps| steps.contains(&back)).unwrap_or(false)
}

/// Replays a path from `t`, returning the final term if every step checks.
pub fn replay(ctx: &Ctx, t: &Term, path: &[RewriteStep]) -> Option<Term> {
    let mut cur = t.clone();
    for step in path {
        if !valid_step(ctx, &cur, step) {
            return None;
        }
        cur = step.result.clone();
    }
    Some(cur)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conversion {
    /// A replayable chain of steps from the left term to the right one.
    Yes(Vec<RewriteStep>),
    /// The search ran out of budget. Says nothing about convertibility.
    Unknown,
}

impl Conversion {
    pub fn is_yes(&self) -> bool {
        matches!(self, Conversion::Yes(_))
    }
}

type Parent = Option<(Term, RuleName, Direction, Vec<usize>)>;

struct Side {
    seen: HashMap<Term, Parent>,
    queue: VecDeque<Term>,
}

impl Side {
    fn new(start: &Term) -> Side {
        Side { seen: HashMap::from([(start.clone(), None)]), queue: VecDeque::from([start.clone()]) }
    }

    /// The chain of `(term, step into it)` from the start to `end`.
    fn chain(&self, end: &Term) -> Vec<(Term, RuleName, Direction, Vec<usize>, Term)> {
        let mut out = Vec::new();
        let mut cur = end.clone();
        while let Some(Some((prev, rule, dir, path))) = self.seen.get(&cur) {
            out.push((prev.clone(), *rule, *dir, path.clone(), cur.clone()));
            cur = prev.clone();
        }
        out.reverse();
        out
    }
}

/// Breadth-first search from both ends over bidirectional one-step
/// rewrites, visiting at most `budget` distinct terms per side.
pub fn convertible_bounded(ctx: &Ctx, ty: &Ty, t: &Term, u: &Term, budget: usize) -> Result<Conversion, RewriteError> {
    for side in [t, u] {
        let got = infer(ctx, side)?;
        if got != *ty {
            return Err(RewriteError::WrongType { expected: ty.clone(), got });
        }
    }
    if t == u {
        return Ok(Conversion::Yes(Vec::new()));
    }
    let mut sides = [Side::new(t), Side::new(u)];
    loop {
        let open: Vec<usize> = (0..2).filter(|&i| !sides[i].queue.is_empty() && sides[i].seen.len() < budget).collect();
        let Some(&k) = open.iter().min_by_key(|&&i| sides[i].queue.len()) else {
            return Ok(Conversion::Unknown);
        };
        let layer: Vec<Term> = sides[k].queue.drain(..).collect();
        for cur in layer {
            let steps = one_step(ctx, &cur, true)?;
            for step in steps {
                if sides[k].seen.contains_key(&step.result) {
                    continue;
                }
                let next = step.result.clone();
                sides[k].seen.insert(next.clone(), Some((cur.clone(), step.rule, step.direction, step.path)));
                if sides[1 - k].seen.contains_key(&next) {
                    return Ok(Conversion::Yes(join(&sides[0], &sides[1], &next)));
                }
                if sides[k].seen.len() >= budget {
                    break;
                }
                sides[k].queue.push_back(next);
            }
            if sides[k].seen.len() >= budget {
                break;
            }
        }
    }
}

fn join(left: &Side, right: &Side, meet: &Term) -> Vec<RewriteStep> {
    let mut path: Vec<RewriteStep> = left
        .chain(meet)
        .into_iter()
        .map(|(_, rule, direction, path, result)| RewriteStep { rule, direction, path, result })
        .collect();
    // The right side was searched from `u`, so its steps are reversed.
    for (prev, rule, dir, p, _) in right.chain(meet).into_iter().rev() {
        path.push(RewriteStep { rule, direction: dir.flip(), path: p, result: prev });
    }
    path
}
