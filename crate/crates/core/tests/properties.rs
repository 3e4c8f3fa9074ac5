use std::sync::OnceLock;

use proptest::prelude::*;

use nulam_core::harness::{random_terms, universe, Corpus};
use nulam_core::nbe::norm;
use nulam_core::rewrite::one_step;
use nulam_core::staged::{staged_norm, DEFAULT_FUEL};
use nulam_core::surface::{elaborate, parse_term, pretty_term, Scope};
use nulam_core::syntax::{check_standard, infer, nf_eq, Ctx, Ope, Subst, Term, Ty};

struct Signature {
    scope: Scope,
    goals: Vec<Ty>,
    universe: Vec<Ty>,
}

fn signature() -> &'static Signature {
    static SIG: OnceLock<Signature> = OnceLock::new();
    SIG.get_or_init(|| {
        let c = Corpus::default_with_bound(1);
        let universe = universe(c.scope.ctx(), &c.goals);
        Signature { scope: c.scope, goals: c.goals, universe }
    })
}

fn term(seed: u64) -> (Term, Ty) {
    let sig = signature();
    random_terms(sig.scope.ctx(), &sig.goals, &sig.universe, 1, 12, seed).pop().unwrap()
}

/// Inserts a `Unit` entry before each slot whose flag is set.
fn widen(ctx: &Ctx, insert: &[bool]) -> Ope {
    let mut tgt = Ctx::new(ctx.bases());
    let mut keep = Vec::new();
    for (ty, &ins) in ctx.tys().iter().zip(insert.iter().chain(std::iter::repeat(&false))) {
        if ins {
            tgt.push(Ty::Unit);
            keep.push(false);
        }
        tgt.push(ty.clone());
        keep.push(true);
    }
    Ope::from_mask(&tgt, &keep)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weakening_composes(seed: u64, first in prop::collection::vec(any::<bool>(), 6), second in prop::collection::vec(any::<bool>(), 12)) {
        let ctx = signature().scope.ctx();
        let (t, ty) = term(seed);
        let o1 = widen(ctx, &first);
        let o2 = widen(o1.tgt(), &second);
        let stepwise = t.weaken(&o1).weaken(&o2);
        prop_assert_eq!(&stepwise, &t.weaken(&o1.then(&o2)));
        prop_assert_eq!(infer(o2.tgt(), &stepwise).unwrap(), ty);
    }

    #[test]
    fn normalization_commutes_with_weakening(seed: u64, insert in prop::collection::vec(any::<bool>(), 6)) {
        let ctx = signature().scope.ctx();
        let (t, _) = term(seed);
        let o = widen(ctx, &insert);
        let lhs = norm(o.tgt(), &t.weaken(&o)).unwrap();
        prop_assert!(nf_eq(&lhs, &norm(ctx, &t).unwrap().weaken(&o)));
    }

    #[test]
    fn identity_substitution(seed: u64) {
        let ctx = signature().scope.ctx();
        let (t, _) = term(seed);
        prop_assert_eq!(Subst::id(ctx).apply(&t), t);
    }

    #[test]
    fn normal_forms_are_stable(seed: u64) {
        let ctx = signature().scope.ctx();
        let (t, ty) = term(seed);
        let nf = norm(ctx, &t).unwrap();
        prop_assert!(check_standard(ctx, &ty, &nf).is_ok());
        prop_assert_eq!(&norm(ctx, &nf.embed()).unwrap(), &nf);
        prop_assert!(nf_eq(&staged_norm(ctx, &t, DEFAULT_FUEL).unwrap(), &nf));
    }

    #[test]
    fn steps_preserve_normal_forms(seed: u64) {
        let ctx = signature().scope.ctx();
        let (t, ty) = term(seed);
        let nf = norm(ctx, &t).unwrap();
        for step in one_step(ctx, &t, true).unwrap() {
            prop_assert_eq!(infer(ctx, &step.result).unwrap(), ty.clone());
            prop_assert!(nf_eq(&norm(ctx, &step.result).unwrap(), &nf), "{}", step);
        }
    }

    #[test]
    fn printing_round_trips(seed: u64) {
        let scope = &signature().scope;
        let (t, ty) = term(seed);
        let printed = pretty_term(scope.names(), &t);
        let (back, back_ty) = elaborate(scope, &parse_term(&printed).unwrap()).unwrap();
        prop_assert_eq!(back, t);
        prop_assert_eq!(back_ty, ty);
    }
}
