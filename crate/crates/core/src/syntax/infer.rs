use thiserror::Error;

use super::{Ctx, Term, Ty};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable #{idx} at {path:?}")]
    UnboundVariable { idx: usize, path: Vec<usize> },
    #[error("type mismatch at {path:?}: expected {expected}, got {got}")]
    TypeMismatch { expected: String, got: Ty, path: Vec<usize> },
    #[error("base type '{index} at {path:?} is out of range (only {bases} base types)")]
    BadBaseIndex { index: u32, bases: u32, path: Vec<usize> },
}

/// Infers the type of `t` in `ctx`.
pub fn infer(ctx: &Ctx, t: &Term) -> Result<Ty, TypeError> {
    let mut ctx = ctx.clone();
    let mut path = Vec::new();
    go(&mut ctx, t, &mut path)
}

/// Checks that `t` has type `ty` in `ctx`.
pub fn check(ctx: &Ctx, t: &Term, ty: &Ty) -> Result<(), TypeError> {
    let got = infer(ctx, t)?;
    if &got == ty {
        Ok(())
    } else {
        Err(TypeError::TypeMismatch { expected: ty.to_string(), got, path: vec![] })
    }
}

fn valid(ctx: &Ctx, ty: &Ty, path: &[usize]) -> Result<(), TypeError> {
    match ty.bad_base(ctx.bases()) {
        Some(index) => Err(TypeError::BadBaseIndex { index, bases: ctx.bases(), path: path.to_vec() }),
        None => Ok(()),
    }
}

fn mismatch<T>(expected: impl ToString, got: Ty, path: &[usize]) -> Result<T, TypeError> {
    Err(TypeError::TypeMismatch { expected: expected.to_string(), got, path: path.to_vec() })
}

fn child(ctx: &mut Ctx, t: &Term, i: usize, path: &mut Vec<usize>) -> Result<Ty, TypeError> {
    path.push(i);
    let r = go(ctx, t, path);
    path.pop();
    r
}

fn expect(ctx: &mut Ctx, t: &Term, i: usize, want: &Ty, path: &mut Vec<usize>) -> Result<(), TypeError> {
    let got = child(ctx, t, i, path)?;
    if &got == want {
        Ok(())
    } else {
        path.push(i);
        let r = mismatch(want, got, path);
        path.pop();
        r
    }
}

fn list_of(ty: Ty, i: usize, path: &mut Vec<usize>) -> Result<Ty, TypeError> {
    match ty {
        Ty::List(e) => Ok((*e).clone()),
        other => {
            path.push(i);
            let r = mismatch("a list type", other, path);
            path.pop();
            r
        }
    }
}

fn go(ctx: &mut Ctx, t: &Term, path: &mut Vec<usize>) -> Result<Ty, TypeError> {
    match t {
        Term::Var(i) => {
            ctx.lookup(*i).cloned().ok_or_else(|| TypeError::UnboundVariable { idx: *i, path: path.clone() })
        }
        Term::Lam(dom, body) => {
            valid(ctx, dom, path)?;
            ctx.push(dom.clone());
            let r = child(ctx, body, 0, path);
            ctx.pop();
            Ok(Ty::arrow(dom.clone(), r?))
        }
        Term::App(f, a) => match child(ctx, f, 0, path)? {
            Ty::Arrow(dom, cod) => {
                expect(ctx, a, 1, &dom, path)?;
                Ok((*cod).clone())
            }
            other => {
                path.push(0);
                let r = mismatch("a function type", other, path);
                path.pop();
                r
            }
        },
        Term::TT => Ok(Ty::Unit),
        Term::Pair(a, b) => {
            let l = child(ctx, a, 0, path)?;
            let r = child(ctx, b, 1, path)?;
            Ok(Ty::prod(l, r))
        }
        Term::Fst(p) | Term::Snd(p) => match child(ctx, p, 0, path)? {
            Ty::Prod(l, r) => Ok(if matches!(t, Term::Fst(_)) { (*l).clone() } else { (*r).clone() }),
            other => {
                path.push(0);
                let r = mismatch("a product type", other, path);
                path.pop();
                r
            }
        },
        Term::Nil(elem) => {
            valid(ctx, elem, path)?;
            Ok(Ty::list(elem.clone()))
        }
        Term::Cons(hd, tl) => {
            let e = child(ctx, hd, 0, path)?;
            let lt = Ty::list(e);
            expect(ctx, tl, 1, &lt, path)?;
            Ok(lt)
        }
        Term::Append(xs, ys) => {
            let lt = child(ctx, xs, 0, path)?;
            list_of(lt.clone(), 0, path)?;
            expect(ctx, ys, 1, &lt, path)?;
            Ok(lt)
        }
        Term::Map(f, xs, cod) => {
            valid(ctx, cod, path)?;
            let elem = list_of(child(ctx, xs, 1, path)?, 1, path)?;
            expect(ctx, f, 0, &Ty::arrow(elem, cod.clone()), path)?;
            Ok(Ty::list(cod.clone()))
        }
        Term::Fold(c, n, xs, ret) => {
            valid(ctx, ret, path)?;
            let elem = list_of(child(ctx, xs, 2, path)?, 2, path)?;
            expect(ctx, c, 0, &Ty::arrow(elem, Ty::arrow(ret.clone(), ret.clone())), path)?;
            expect(ctx, n, 1, ret, path)?;
            Ok(ret.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity() {
        let t = Term::lam(Ty::base(0), Term::var(0));
        assert_eq!(infer(&Ctx::empty(), &t), Ok(Ty::arrow(Ty::base(0), Ty::base(0))));
    }

    #[test]
    fn map_over_pairs() {
        let e = Ty::prod(Ty::Unit, Ty::base(0));
        let ctx = Ctx::from_tys(2, [Ty::list(e.clone())]);
        let t = Term::map(Term::lam(e.clone(), Term::var(0)), Term::var(0), e.clone());
        assert_eq!(infer(&ctx, &t), Ok(Ty::list(e)));
    }

    #[test]
    fn projection_from_unit_fails() {
        let err = infer(&Ctx::empty(), &Term::fst(Term::TT)).unwrap_err();
        assert!(matches!(err, TypeError::TypeMismatch { ref path, .. } if path == &vec![0]));
    }

    #[test]
    fn unbound_and_bad_base() {
        assert!(matches!(
            infer(&Ctx::empty(), &Term::lam(Ty::Unit, Term::var(1))),
            Err(TypeError::UnboundVariable { idx: 1, .. })
        ));
        assert!(matches!(
            infer(&Ctx::empty(), &Term::nil(Ty::base(2))),
            Err(TypeError::BadBaseIndex { index: 2, bases: 2, .. })
        ));
        assert!(infer(&Ctx::new(3), &Term::nil(Ty::base(2))).is_ok());
    }

    #[test]
    fn fold_checks_algebra() {
        let ctx = Ctx::from_tys(2, [Ty::list(Ty::base(0))]);
        let c = Term::lam(Ty::base(0), Term::lam(Ty::Unit, Term::TT));
        let ok = Term::fold(c.clone(), Term::TT, Term::var(0), Ty::Unit);
        assert_eq!(infer(&ctx, &ok), Ok(Ty::Unit));
        let bad = Term::fold(c, Term::TT, Term::var(0), Ty::base(0));
        assert!(infer(&ctx, &bad).is_err());
    }
}
