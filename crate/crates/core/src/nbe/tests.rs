use super::*;

fn pub_ty() -> Ty {
    Ty::prod(Ty::Unit, Ty::base(0))
}

fn expanded_pub_id() -> Nf {
    Nf::lam(pub_ty(), Nf::pair(Nf::TT, Nf::Ne(Ne::snd(Ne::var(0)))))
}

#[test]
fn variable_looks_up_environment() {
    let ctx = Ctx::from_tys(2, [Ty::base(0)]);
    let env = SemEnv::new(&ctx, vec![Sem::Ne(Ne::var(0))]);
    let v = eval(&Term::var(0), &env);
    assert_eq!(reify(&ctx, &Ty::base(0), &v), Nf::Ne(Ne::var(0)));
}

#[test]
fn closed_pair_of_units() {
    let ctx = Ctx::empty();
    let v = eval(&Term::pair(Term::TT, Term::TT), &SemEnv::empty(&ctx));
    assert!(matches!(v, Sem::Pair(ref a, ref b) if matches!(**a, Sem::Unit) && matches!(**b, Sem::Unit)));
}

#[test]
fn append_cases() {
    let ctx = Ctx::from_tys(2, [Ty::list(Ty::base(0)), Ty::base(0)]);
    let zs = SemList::cons(Sem::Ne(Ne::var(0)), SemList::Nil);
    let elem = Ty::base(0);
    let r = vappend(&SemList::Nil, &zs);
    assert_eq!(list_reify(&ctx, &elem, &r), list_reify(&ctx, &elem, &zs));

    let xs = SemList::cons(Sem::Ne(Ne::var(0)), SemList::Nil);
    let r = vappend(&xs, &zs);
    let x = Nf::Ne(Ne::var(0));
    assert_eq!(list_reify(&ctx, &elem, &r), Nf::cons(x.clone(), Nf::cons(x.clone(), Nf::Nil(elem.clone()))));

    let stuck = list_reflect(&elem, Ne::var(1));
    let r = vappend(&stuck, &zs);
    let id = Nf::lam(elem.clone(), Nf::Ne(Ne::var(0)));
    assert_eq!(list_reify(&ctx, &elem, &r), Nf::mapp(id, Ne::var(1), Nf::cons(x, Nf::Nil(elem.clone()))));
}

#[test]
fn map_cases() {
    // f : '0 -> '1, xs : ['0], a : '0
    let ctx = Ctx::from_tys(2, [Ty::arrow(Ty::base(0), Ty::base(1)), Ty::list(Ty::base(0)), Ty::base(0)]);
    let env = diagonal(&ctx);
    let f = eval(&Term::var(2), &env);
    let f = f.as_fun();
    assert!(matches!(vmap(&ctx, f, &SemList::Nil), SemList::Nil));

    let one = SemList::cons(Sem::Ne(Ne::var(0)), SemList::Nil);
    let got = list_reify(&ctx, &Ty::base(1), &vmap(&ctx, f, &one));
    let fa = Nf::Ne(Ne::app(Ne::var(2), Nf::Ne(Ne::var(0))));
    assert_eq!(got, Nf::cons(fa, Nf::Nil(Ty::base(1))));

    let stuck = list_reflect(&Ty::base(0), Ne::var(1));
    let got = list_reify(&ctx, &Ty::base(1), &vmap(&ctx, f, &stuck));
    let composed = Nf::lam(Ty::base(0), Nf::Ne(Ne::app(Ne::var(3), Nf::Ne(Ne::var(0)))));
    assert_eq!(got, Nf::mapp(composed, Ne::var(1), Nf::Nil(Ty::base(1))));
}

#[test]
fn fold_cases() {
    // c : '0 -> '1 -> '1, n : '1, xs : ['0], a : '0
    let a0 = Ty::base(0);
    let a1 = Ty::base(1);
    let ctx = Ctx::from_tys(
        2,
        [Ty::arrow(a0.clone(), Ty::arrow(a1.clone(), a1.clone())), a1.clone(), Ty::list(a0.clone()), a0.clone()],
    );
    let env = diagonal(&ctx);
    let c = eval(&Term::var(3), &env);
    let n = eval(&Term::var(2), &env);

    let r = vfold(&ctx, &a1, &c, &n, &SemList::Nil);
    assert_eq!(reify(&ctx, &a1, &r), Nf::Ne(Ne::var(2)));

    let one = SemList::cons(Sem::Ne(Ne::var(0)), SemList::Nil);
    let r = vfold(&ctx, &a1, &c, &n, &one);
    let expected = Ne::app(Ne::app(Ne::var(3), Nf::Ne(Ne::var(0))), Nf::Ne(Ne::var(2)));
    assert_eq!(reify(&ctx, &a1, &r), Nf::Ne(expected));

    // Hand unfolding of the stuck case on (map id xs) ++ []: the algebra is
    // \x.\y. c x y read in the context extended by x and y, the seed is n.
    let stuck = list_reflect(&a0, Ne::var(1));
    let r = vfold(&ctx, &a1, &c, &n, &stuck);
    let algebra = Nf::lam(
        a0.clone(),
        Nf::lam(a1.clone(), Nf::Ne(Ne::app(Ne::app(Ne::var(5), Nf::Ne(Ne::var(1))), Nf::Ne(Ne::var(0))))),
    );
    assert_eq!(reify(&ctx, &a1, &r), Nf::Ne(Ne::fold(algebra, Nf::Ne(Ne::var(2)), Ne::var(1))));
}

#[test]
fn reify_and_reflect_basics() {
    let ctx = Ctx::from_tys(2, [Ty::base(0)]);
    assert_eq!(reify(&ctx, &Ty::Unit, &Sem::Unit), Nf::TT);
    assert_eq!(reify(&ctx, &Ty::base(0), &reflect(&Ty::base(0), Ne::var(0))), Nf::Ne(Ne::var(0)));
    assert!(matches!(reflect(&Ty::Unit, Ne::var(0)), Sem::Unit));
    let any_fn = Sem::Fun(Kripke::new(|_, _| Sem::Unit));
    assert_eq!(reify(&ctx, &Ty::arrow(Ty::Unit, Ty::Unit), &any_fn), Nf::lam(Ty::Unit, Nf::TT));
}

#[test]
fn reflected_neutral_list_reifies_expanded() {
    let ctx = Ctx::from_tys(2, [Ty::list(pub_ty())]);
    let got = list_reify(&ctx, &pub_ty(), &list_reflect(&pub_ty(), Ne::var(0)));
    assert_eq!(got, Nf::mapp(expanded_pub_id(), Ne::var(0), Nf::Nil(pub_ty())));
}

#[test]
fn weakening_values() {
    let ctx = Ctx::from_tys(2, [Ty::base(0)]);
    let v = Sem::Ne(Ne::var(0));
    let id = Ope::id(&ctx);
    assert_eq!(reify(&ctx, &Ty::base(0), &v.weaken(&id)), Nf::Ne(Ne::var(0)));
    let wk = Ope::weak(&ctx, Ty::Unit);
    assert_eq!(reify(wk.tgt(), &Ty::base(0), &v.weaken(&wk)), Nf::Ne(Ne::var(1)));

    // a stuck list weakens its nut, its rest and its function
    let xs_ctx = Ctx::from_tys(2, [Ty::arrow(Ty::base(0), Ty::base(0)), Ty::list(Ty::base(0))]);
    let env = diagonal(&xs_ctx);
    let mapped = eval(&Term::map(Term::var(1), Term::var(0), Ty::base(0)), &env);
    let wk = Ope::weak(&xs_ctx, Ty::Unit);
    let got = reify(wk.tgt(), &Ty::list(Ty::base(0)), &mapped.weaken(&wk));
    let f = Nf::lam(Ty::base(0), Nf::Ne(Ne::app(Ne::var(3), Nf::Ne(Ne::var(0)))));
    assert_eq!(got, Nf::mapp(f, Ne::var(1), Nf::Nil(Ty::base(0))));
}

#[test]
fn running_example() {
    let lt = Ty::list(pub_ty());
    let arr = Ty::arrow(lt.clone(), lt.clone());
    let t = Term::app(Term::lam(arr, Term::var(0)), Term::lam(lt.clone(), Term::var(0)));
    let nf = norm(&Ctx::empty(), &t).unwrap();
    let expected = Nf::lam(lt, Nf::mapp(expanded_pub_id(), Ne::var(0), Nf::Nil(pub_ty())));
    assert_eq!(nf, expected);
}

#[test]
fn map_swap_twice_is_identity() {
    let p = Ty::prod(Ty::base(0), Ty::base(1));
    let q = Ty::prod(Ty::base(1), Ty::base(0));
    let swap = |ty: Ty| Term::lam(ty, Term::pair(Term::snd(Term::var(0)), Term::fst(Term::var(0))));
    let body = Term::map(swap(q.clone()), Term::map(swap(p.clone()), Term::var(0), q), p.clone());
    let t = Term::lam(Ty::list(p.clone()), body);
    let nf = norm(&Ctx::empty(), &t).unwrap();
    let eta_id = Nf::lam(p.clone(), Nf::pair(Nf::Ne(Ne::fst(Ne::var(0))), Nf::Ne(Ne::snd(Ne::var(0)))));
    let expected = Nf::lam(Ty::list(p.clone()), Nf::mapp(eta_id, Ne::var(0), Nf::Nil(p)));
    assert_eq!(nf, expected);
}

#[test]
fn nil_normalizes_to_nil() {
    assert_eq!(norm(&Ctx::empty(), &Term::nil(Ty::base(0))).unwrap(), Nf::Nil(Ty::base(0)));
}

#[test]
fn ill_typed_is_an_error() {
    assert!(norm(&Ctx::empty(), &Term::fst(Term::TT)).is_err());
}
