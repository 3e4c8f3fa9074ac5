use std::collections::{BTreeSet, HashMap};

use super::*;
use crate::nbe::norm;
use crate::syntax::{infer, Ctx, Nf};

fn a() -> Ty {
    Ty::base(0)
}

/// Every syntax tree with `n` nodes over `vars` variables, with annotations
/// from `anns`. Knows nothing about typing.
fn raw(vars: usize, n: usize, anns: &[Ty], memo: &mut HashMap<(usize, usize), Vec<Term>>) -> Vec<Term> {
    if let Some(hit) = memo.get(&(vars, n)) {
        return hit.clone();
    }
    let mut out = Vec::new();
    if n == 1 {
        out.extend((0..vars).map(Term::var));
        out.push(Term::TT);
        out.extend(anns.iter().map(|t| Term::nil(t.clone())));
    } else {
        for d in anns {
            for b in raw(vars + 1, n - 1, anns, memo) {
                out.push(Term::lam(d.clone(), b));
            }
        }
        for t in raw(vars, n - 1, anns, memo) {
            out.push(Term::fst(t.clone()));
            out.push(Term::snd(t));
        }
        for i in 1..n - 1 {
            let ls = raw(vars, i, anns, memo);
            let rs = raw(vars, n - 1 - i, anns, memo);
            for l in &ls {
                for r in &rs {
                    out.push(Term::app(l.clone(), r.clone()));
                    out.push(Term::pair(l.clone(), r.clone()));
                    out.push(Term::cons(l.clone(), r.clone()));
                    out.push(Term::append(l.clone(), r.clone()));
                    for c in anns {
                        out.push(Term::map(l.clone(), r.clone(), c.clone()));
                    }
                }
            }
        }
        for i in 1..n - 1 {
            for j in 1..n - 1 - i {
                let k = n - 1 - i - j;
                for x in raw(vars, i, anns, memo) {
                    for y in raw(vars, j, anns, memo) {
                        for z in raw(vars, k, anns, memo) {
                            for r in anns {
                                out.push(Term::fold(x.clone(), y.clone(), z.clone(), r.clone()));
                            }
                        }
                    }
                }
            }
        }
    }
    memo.insert((vars, n), out.clone());
    out
}

/// Cut types collected by direct recursion, written apart from the
/// enumerator.
fn cuts_ok(ctx: &Ctx, t: &Term, allowed: &[Ty]) -> bool {
    let ty = |u: &Term| infer(ctx, u).unwrap();
    let here = match t {
        Term::App(_, x) => Some(ty(x)),
        Term::Fst(p) => ty(p).as_prod().map(|(_, r)| r.clone()),
        Term::Snd(p) => ty(p).as_prod().map(|(l, _)| l.clone()),
        Term::Map(_, xs, _) | Term::Fold(_, _, xs, _) => ty(xs).as_list().cloned(),
        _ => None,
    };
    if let Some(c) = here {
        if !allowed.contains(&c) {
            return false;
        }
    }
    match t {
        Term::Lam(d, b) => cuts_ok(&ctx.extend(d.clone()), b, allowed),
        _ => t.children().iter().all(|c| cuts_ok(ctx, c, allowed)),
    }
}

fn oracle(ctx: &Ctx, goal: &Ty, bound: usize) -> BTreeSet<Term> {
    let u = universe(ctx, std::slice::from_ref(goal));
    let mut anns = u.clone();
    for x in &u {
        anns.push(Ty::list(x.clone()));
        for y in &u {
            anns.push(Ty::arrow(x.clone(), y.clone()));
        }
    }
    anns.sort();
    anns.dedup();
    let mut memo = HashMap::new();
    let mut out = BTreeSet::new();
    for n in 1..=bound {
        for t in raw(ctx.len(), n, &anns, &mut memo) {
            if infer(ctx, &t).as_ref() == Ok(goal) && cuts_ok(ctx, &t, &u) {
                out.insert(t);
            }
        }
    }
    out
}

#[test]
fn single_node_terms() {
    assert_eq!(enum_terms(&Ctx::empty(), &Ty::Unit, 1), vec![Term::TT]);
    assert_eq!(enum_terms(&Ctx::empty(), &Ty::list(a()), 1), vec![Term::nil(a())]);
}

#[test]
fn hand_counts_for_a_single_variable() {
    // x alone at three nodes; at four, also (\y. y) x, (\y. x) x, fst (x, x), snd (x, x).
    let ctx = Ctx::from_tys(2, [a()]);
    assert_eq!(enum_terms(&ctx, &a(), 3), vec![Term::var(0)]);
    assert_eq!(enum_terms(&ctx, &a(), 4).len(), 5);
}

#[test]
fn agrees_with_brute_force() {
    let cases = [
        (Ctx::from_tys(2, [a()]), a(), 4),
        (Ctx::empty(), Ty::Unit, 4),
        (Ctx::from_tys(2, [Ty::arrow(a(), a()), Ty::list(a())]), Ty::list(a()), 4),
        (Ctx::from_tys(2, [Ty::prod(a(), Ty::base(1))]), Ty::prod(Ty::base(1), a()), 4),
        (Ctx::from_tys(2, [Ty::list(a())]), Ty::arrow(a(), a()), 4),
    ];
    for (ctx, goal, bound) in cases {
        let got = enum_terms(&ctx, &goal, bound);
        let set: BTreeSet<Term> = got.iter().cloned().collect();
        assert_eq!(set.len(), got.len(), "duplicates at {goal}");
        assert_eq!(set, oracle(&ctx, &goal, bound), "at {goal}");
    }
}

#[test]
fn enumeration_is_deterministic_and_sorted_by_size() {
    let ctx = Ctx::from_tys(2, [Ty::arrow(a(), a()), Ty::list(a())]);
    let first = enum_terms(&ctx, &Ty::list(a()), 5);
    assert_eq!(first, enum_terms(&ctx, &Ty::list(a()), 5));
    assert!(first.windows(2).all(|w| w[0].size() <= w[1].size()));
}

#[test]
fn enumerated_cut_types_stay_in_universe() {
    let corpus = Corpus::default_with_bound(5);
    let u = corpus.universe();
    for (t, ty) in &corpus.terms {
        assert_eq!(infer(corpus.scope.ctx(), t).as_ref(), Ok(ty));
        assert!(cut_types(corpus.scope.ctx(), t).iter().all(|c| u.contains(c)));
    }
}

#[test]
fn closed_unit_terms_normalize_to_tt() {
    for t in enum_terms(&Ctx::empty(), &Ty::Unit, 6) {
        assert_eq!(norm(&Ctx::empty(), &t).unwrap(), Nf::TT);
    }
}

#[test]
fn random_terms_are_typed_bounded_and_reproducible() {
    let corpus = Corpus::default_with_bound(1);
    let xs = corpus.random(300, RANDOM_MAX_SIZE, 7);
    assert_eq!(xs, corpus.random(300, RANDOM_MAX_SIZE, 7));
    assert_ne!(xs, corpus.random(300, RANDOM_MAX_SIZE, 8));
    for (t, ty) in &xs {
        assert!(t.size() <= RANDOM_MAX_SIZE);
        assert_eq!(infer(corpus.scope.ctx(), t).as_ref(), Ok(ty));
    }
    let big = xs.iter().filter(|(t, _)| t.size() >= 8).count();
    assert!(big > 50, "only {big} terms of size >= 8");
}

#[test]
fn suites_pass_on_a_small_corpus() {
    let corpus = Corpus::default_with_bound(4);
    let scope = &corpus.scope;
    assert!(check_rule_soundness(scope, &corpus.terms).passed());
    let agree = check_agreement(scope, &corpus.terms, DEFAULT_FUEL);
    assert!(agree.passed() && agree.exhausted.is_empty(), "{:?}", agree.failures);
    for r in check_properties(scope, &corpus.terms).reports() {
        assert!(r.passed(), "{r}: {:?}", r.failures);
    }
    let terms: Vec<Term> = corpus.terms.iter().map(|(t, _)| t.clone()).collect();
    assert!(check_round_trip(scope, &terms).passed());
}
