use super::*;
use crate::nbe::norm;

fn pub_ty() -> Ty {
    Ty::prod(Ty::Unit, Ty::base(0))
}

fn id_term(ty: Ty) -> Term {
    Term::lam(ty, Term::var(0))
}

/// `(\x:l->l. x) (\x:l. x)`
fn id_id(l: &Ty) -> Term {
    Term::app(id_term(Ty::arrow(l.clone(), l.clone())), id_term(l.clone()))
}

#[test]
fn variable_is_its_own_value() {
    let ctx = Ctx::from_tys(2, [Ty::base(0)]);
    let mut m = Machine::new(DEFAULT_FUEL);
    let w = m.whnorm(&WhEnv::diagonal(&ctx), &Term::var(0)).unwrap();
    assert_eq!(w, Wh::Ne(WhNe::Var(0)));
}

#[test]
fn identity_applied_to_identity_is_a_closure() {
    let l = Ty::list(pub_ty());
    let t = id_id(&l);
    let mut m = Machine::new(DEFAULT_FUEL);
    let w = m.whnorm(&WhEnv::default(), &t).unwrap();
    assert_eq!(w, Wh::Closure { dom: l, body: Arc::new(Term::var(0)), env: WhEnv::default() });
}

#[test]
fn map_over_variable_is_stuck() {
    let ctx = Ctx::from_tys(2, [Ty::arrow(Ty::base(0), Ty::base(1)), Ty::list(Ty::base(0))]);
    let t = Term::map(Term::var(1), Term::var(0), Ty::base(1));
    let mut m = Machine::new(DEFAULT_FUEL);
    let w = m.whnorm(&WhEnv::diagonal(&ctx), &t).unwrap();
    let f = Wh::Ne(WhNe::Var(1));
    assert_eq!(w, Wh::Ne(WhNe::Map(Arc::new(f), Arc::new(WhNe::Var(0)), Ty::base(1))));
}

#[test]
fn computation_rules() {
    let mut m = Machine::new(DEFAULT_FUEL);
    let ys = Wh::Ne(WhNe::Var(0));
    assert_eq!(m.eliminate(Wh::Nil, Elim::Append(ys.clone())).unwrap(), ys);

    // fold c n (h :: []) unfolds to c h n, stuck on the variable c.
    let c = Wh::Ne(WhNe::Var(2));
    let n = Wh::Ne(WhNe::Var(1));
    let h = Wh::Ne(WhNe::Var(0));
    let got = m.eliminate(Wh::cons(h.clone(), Wh::Nil), Elim::Fold(c, n.clone(), Ty::base(1))).unwrap();
    let ch = WhNe::App(Arc::new(WhNe::Var(2)), Arc::new(h));
    assert_eq!(got, Wh::Ne(WhNe::App(Arc::new(ch), Arc::new(n))));
}

#[test]
fn eta_at_unit_and_base() {
    let ctx = Ctx::from_tys(2, [Ty::base(0)]);
    let mut m = Machine::new(DEFAULT_FUEL);
    assert_eq!(m.etanorm(&ctx, &Ty::Unit, Wh::Ne(WhNe::Var(0))).unwrap(), EtaVal::TT);
    assert_eq!(m.etanorm(&ctx, &Ty::base(0), Wh::Ne(WhNe::Var(0))).unwrap(), EtaVal::Ne(EtaNe::Var(0)));
}

#[test]
fn eta_long_identity_on_lists() {
    let l = Ty::list(pub_ty());
    let w = Wh::Closure { dom: l.clone(), body: Arc::new(Term::var(0)), env: WhEnv::default() };
    let mut m = Machine::new(DEFAULT_FUEL);
    let v = m.etanorm(&Ctx::empty(), &Ty::arrow(l.clone(), l.clone()), w).unwrap();
    assert_eq!(v, EtaVal::Lam(l, Arc::new(EtaVal::List(EtaList::Ne(EtaNe::Var(0))))));
}

#[test]
fn running_example() {
    let l = Ty::list(pub_ty());
    let t = id_id(&l);
    let nf = staged_norm(&Ctx::empty(), &t, DEFAULT_FUEL).unwrap();
    let f = Nf::lam(pub_ty(), Nf::pair(Nf::TT, Nf::Ne(Ne::snd(Ne::var(0)))));
    let want = Nf::lam(l, Nf::mapp(f, Ne::var(0), Nf::Nil(pub_ty())));
    assert_eq!(nf, want);
}

#[test]
fn mapping_into_unit_forgets_the_function() {
    let ctx = Ctx::from_tys(2, [Ty::arrow(Ty::base(0), Ty::Unit)]);
    let l = Ty::list(Ty::base(0));
    let t = Term::lam(l.clone(), Term::map(Term::var(1), Term::var(0), Ty::Unit));
    let nf = staged_norm(&ctx, &t, DEFAULT_FUEL).unwrap();
    let want = Nf::lam(l, Nf::mapp(Nf::lam(Ty::base(0), Nf::TT), Ne::var(0), Nf::Nil(Ty::Unit)));
    assert_eq!(nf, want);
}

#[test]
fn append_and_fold_fusion_agree_with_nbe() {
    let a = Ty::base(0);
    let l = Ty::list(a.clone());
    // f : '0 -> '0, xs : ['0], ys : ['0]
    let ctx = Ctx::from_tys(2, [Ty::arrow(a.clone(), a.clone()), l.clone(), l.clone()]);
    let xs = || Term::var(1);
    let ys = || Term::var(0);
    let f = || Term::var(2);
    let terms = [
        Term::append(Term::append(xs(), ys()), xs()),
        Term::map(f(), Term::append(Term::map(f(), xs(), a.clone()), ys()), a.clone()),
    ];
    for t in &terms {
        assert_eq!(staged_norm(&ctx, t, DEFAULT_FUEL).unwrap(), norm(&ctx, t).unwrap());
    }

    let good = Term::fold(
        Term::lam(a.clone(), Term::lam(l.clone(), Term::cons(Term::app(f().shift(2), Term::var(1)), Term::var(0)))),
        ys(),
        Term::append(Term::map(f(), xs(), a.clone()), ys()),
        l,
    );
    assert_eq!(staged_norm(&ctx, &good, DEFAULT_FUEL).unwrap(), norm(&ctx, &good).unwrap());
}

#[test]
fn nested_fold_fusion() {
    let a = Ty::base(0);
    let l = Ty::list(a.clone());
    let ctx = Ctx::from_tys(2, [l.clone()]);
    let cons = Term::lam(a.clone(), Term::lam(l.clone(), Term::cons(Term::var(1), Term::var(0))));
    let inner = Term::fold(cons.clone(), Term::nil(a.clone()), Term::var(0), l.clone());
    let outer = Term::fold(cons, Term::var(0), inner, l);
    assert_eq!(staged_norm(&ctx, &outer, DEFAULT_FUEL).unwrap(), norm(&ctx, &outer).unwrap());
}

#[test]
fn unit_is_tt() {
    assert_eq!(staged_norm(&Ctx::empty(), &Term::TT, DEFAULT_FUEL).unwrap(), Nf::TT);
}

#[test]
fn fuel_exhaustion_is_reported() {
    let l = Ty::list(pub_ty());
    let t = id_id(&l);
    assert_eq!(staged_norm(&Ctx::empty(), &t, 1), Err(StagedError::FuelExhausted));
}

#[test]
fn ill_typed_input_is_rejected() {
    let t = Term::fst(Term::TT);
    assert!(matches!(staged_norm(&Ctx::empty(), &t, DEFAULT_FUEL), Err(StagedError::IllTyped(_))));
}
