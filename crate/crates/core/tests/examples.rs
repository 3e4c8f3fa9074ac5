use nulam_core::decision::{decide_eq, EqVerdict};
use nulam_core::nbe::{list_reflect, list_reify, norm};
use nulam_core::rewrite::{convertible_bounded, one_step, Conversion, Direction, RuleName};
use nulam_core::staged::{staged_norm, DEFAULT_FUEL};
use nulam_core::surface::{pretty_nf, read_term, Scope};
use nulam_core::syntax::{infer, nf_eq, Ctx, Ne, Nf, Subst, Term, Ty, TypeError};

const RUNNING: &str = "(\\x:[Unit*'0] -> [Unit*'0]. x) (\\x:[Unit*'0]. x)";
const RUNNING_NF: &str = "\\x0:[Unit*'0]. (map (\\x1:Unit*'0. ((), snd x1)) x0) ++ nil:[Unit*'0]";

fn read(ctx: &str, src: &str) -> (Scope, Term, Ty) {
    read_term(2, ctx, src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn normal(ctx: &str, src: &str) -> String {
    let (scope, t, _) = read(ctx, src);
    pretty_nf(scope.names(), &norm(scope.ctx(), &t).unwrap())
}

fn bidirectional(ctx: &str, src: &str) -> (Scope, Vec<(RuleName, Direction, Term)>) {
    let (scope, t, _) = read(ctx, src);
    let steps = one_step(scope.ctx(), &t, true).unwrap();
    (scope, steps.into_iter().map(|s| (s.rule, s.direction, s.result)).collect())
}

#[test]
fn typing() {
    assert_eq!(read("", "\\x:'0. x").2, Ty::arrow(Ty::base(0), Ty::base(0)));
    let (_, _, ty) = read("xs : [Unit*'0]", "map (\\p:Unit*'0. p) xs");
    assert_eq!(ty, Ty::list(Ty::prod(Ty::Unit, Ty::base(0))));
    let err = infer(&Ctx::empty(), &Term::fst(Term::TT)).unwrap_err();
    assert!(matches!(err, TypeError::TypeMismatch { .. }), "{err}");
}

#[test]
fn substitution_under_a_binder() {
    // z : Unit, y : Unit -> '0, x : '0; put y z for x in \w:'1. x
    let sig = Ty::base(0);
    let ctx = Ctx::from_tys(2, [sig.clone(), Ty::arrow(Ty::Unit, sig.clone()), Ty::Unit]);
    let yz = Term::app(Term::var(1), Term::var(0));
    let rho = Subst::id(&ctx).extend(yz);
    let src = ctx.extend(sig);
    assert_eq!(rho.src(), &src);
    let t = Term::lam(Ty::base(1), Term::var(1));
    assert_eq!(rho.apply(&t), Term::lam(Ty::base(1), Term::app(Term::var(2), Term::var(1))));
}

#[test]
fn running_example_in_both_engines() {
    assert_eq!(normal("", RUNNING), RUNNING_NF);
    let (scope, t, _) = read("", RUNNING);
    let staged = staged_norm(scope.ctx(), &t, DEFAULT_FUEL).unwrap();
    assert!(nf_eq(&staged, &norm(scope.ctx(), &t).unwrap()));
}

#[test]
fn map_into_unit_forgets_the_function() {
    let ctx = "f : '0 -> Unit, g : '0 -> Unit";
    let want = "\\x0:['0]. (map (\\x1:'0. ()) x0) ++ nil:[Unit]";
    assert_eq!(normal(ctx, "\\xs:['0]. map f xs"), want);
    let (scope, t, _) = read(ctx, "\\xs:['0]. map f xs");
    let (_, u, _) = read(ctx, "\\xs:['0]. map g xs");
    let verdict = decide_eq(scope.ctx(), &t, &u).unwrap();
    let EqVerdict::Convertible(nf) = verdict else { panic!("{verdict:?}") };
    assert_eq!(pretty_nf(scope.names(), &nf), want);
}

#[test]
fn swap_twice_is_identity() {
    let swap = |a: &str, b: &str| format!("(\\p:{a}*{b}. (snd p, fst p))");
    let twice = format!("\\xs:['0*'1]. map {} (map {} xs)", swap("'1", "'0"), swap("'0", "'1"));
    let want = "\\x0:['0*'1]. (map (\\x1:'0*'1. (fst x1, snd x1)) x0) ++ nil:['0*'1]";
    assert_eq!(normal("", &twice), want);
    let (scope, t, _) = read("", "\\xs:['0*'1]. xs");
    let (_, u, _) = read("", &twice);
    let verdict = decide_eq(scope.ctx(), &t, &u).unwrap();
    let EqVerdict::Convertible(nf) = verdict else { panic!("{verdict:?}") };
    assert_eq!(pretty_nf(scope.names(), &nf), want);
}

#[test]
fn append_to_itself_is_distinct() {
    let (scope, t, ty) = read("xs : ['0]", "xs");
    let (_, u, _) = read("xs : ['0]", "xs ++ xs");
    assert!(!decide_eq(scope.ctx(), &t, &u).unwrap().is_convertible());
    let search = convertible_bounded(scope.ctx(), &ty, &t, &u, 10_000).unwrap();
    assert_eq!(search, Conversion::Unknown);
}

#[test]
fn reflected_list_reifies_expanded() {
    let elem = Ty::prod(Ty::Unit, Ty::base(0));
    let ctx = Ctx::from_tys(2, [Ty::list(elem.clone())]);
    let got = list_reify(&ctx, &elem, &list_reflect(&elem, Ne::var(0)));
    let body = Nf::pair(Nf::TT, Nf::Ne(Ne::snd(Ne::var(0))));
    let want = Nf::mapp(Nf::lam(elem.clone(), body), Ne::var(0), Nf::Nil(elem));
    assert_eq!(got, want);
}

#[test]
fn rewrite_instances() {
    let (_, steps) = bidirectional("f : '0 -> '0, x : '0, xs : ['0]", "map f (x :: xs)");
    let (_, want, _) = read("f : '0 -> '0, x : '0, xs : ['0]", "f x :: map f xs");
    assert!(steps.contains(&(RuleName::MapCons, Direction::LeftToRight, want)));

    let (_, steps) = bidirectional("", "(\\x:Unit. x) ()");
    assert!(steps.contains(&(RuleName::Beta, Direction::LeftToRight, Term::TT)));

    let ctx = "xs : ['0], ys : ['0], zs : ['0]";
    let (_, steps) = bidirectional(ctx, "(xs ++ ys) ++ zs");
    let (_, want, _) = read(ctx, "xs ++ (ys ++ zs)");
    assert!(steps.contains(&(RuleName::NuAppendAssoc, Direction::LeftToRight, want)));
}

#[test]
fn search_finds_right_unit() {
    let (scope, t, ty) = read("xs : ['0]", "xs ++ nil:['0]");
    let (_, u, _) = read("xs : ['0]", "xs");
    let Conversion::Yes(path) = convertible_bounded(scope.ctx(), &ty, &t, &u, 10_000).unwrap() else {
        panic!("no path")
    };
    assert_eq!(path.len(), 1);
    assert_eq!(path[0].rule, RuleName::NuAppendNilR);
}

#[test]
fn fold_over_fused_map() {
    let ctx = "c : '0 -> '1 -> '1, n : '1, f : '0 -> '0, xs : ['0]";
    let got = normal(ctx, "fold c n (map f xs)");
    assert_eq!(got, "fold (\\x0:'0. \\x1:'1. c (f x0) x1) n xs");
}
