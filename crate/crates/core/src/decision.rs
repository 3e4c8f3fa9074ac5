//! Deciding the extended definitional equality by comparing normal forms.

use thiserror::Error;

use crate::nbe::norm;
use crate::syntax::{infer, nf_eq, Ctx, Nf, Term, Ty, TypeError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqVerdict {
    Convertible(Nf),
    Distinct(Nf, Nf),
}

impl EqVerdict {
    pub fn is_convertible(&self) -> bool {
        matches!(self, EqVerdict::Convertible(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EqError {
    #[error("{side} side: {err}")]
    IllTyped { side: &'static str, err: TypeError },
    #[error("sides have different types: {left} and {right}")]
    TypeMismatchBetweenSides { left: Ty, right: Ty },
}

/// Normalizes both sides and compares the results up to α.
pub fn decide_eq(ctx: &Ctx, t: &Term, u: &Term) -> Result<EqVerdict, EqError> {
    let left = infer(ctx, t).map_err(|err| EqError::IllTyped { side: "left", err })?;
    let right = infer(ctx, u).map_err(|err| EqError::IllTyped { side: "right", err })?;
    if left != right {
        return Err(EqError::TypeMismatchBetweenSides { left, right });
    }
    let a = norm(ctx, t).map_err(|err| EqError::IllTyped { side: "left", err })?;
    let b = norm(ctx, u).map_err(|err| EqError::IllTyped { side: "right", err })?;
    Ok(if nf_eq(&a, &b) { EqVerdict::Convertible(a) } else { EqVerdict::Distinct(a, b) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Ne;

    fn swap(a: Ty, b: Ty) -> Term {
        Term::lam(Ty::prod(a, b), Term::pair(Term::snd(Term::var(0)), Term::fst(Term::var(0))))
    }

    #[test]
    fn functions_into_unit_are_equal_under_map() {
        let a = Ty::base(0);
        let ctx = Ctx::from_tys(2, [Ty::arrow(a.clone(), Ty::Unit), Ty::arrow(a.clone(), Ty::Unit)]);
        let l = Ty::list(a.clone());
        let t = Term::lam(l.clone(), Term::map(Term::var(2), Term::var(0), Ty::Unit));
        let u = Term::lam(l.clone(), Term::map(Term::var(1), Term::var(0), Ty::Unit));
        let want = Nf::lam(l, Nf::mapp(Nf::lam(a, Nf::TT), Ne::var(0), Nf::Nil(Ty::Unit)));
        assert_eq!(decide_eq(&ctx, &t, &u).unwrap(), EqVerdict::Convertible(want));
    }

    #[test]
    fn swapping_twice_is_the_identity() {
        let (a, b) = (Ty::base(0), Ty::base(1));
        let p = Ty::prod(a.clone(), b.clone());
        let l = Ty::list(p.clone());
        let inner = Term::map(swap(a.clone(), b.clone()), Term::var(0), Ty::prod(b.clone(), a.clone()));
        let twice = Term::lam(l.clone(), Term::map(swap(b, a), inner, p.clone()));
        let id = Term::lam(l.clone(), Term::var(0));
        let f = Nf::lam(p.clone(), Nf::pair(Nf::Ne(Ne::fst(Ne::var(0))), Nf::Ne(Ne::snd(Ne::var(0)))));
        let want = Nf::lam(l, Nf::mapp(f, Ne::var(0), Nf::Nil(p)));
        assert_eq!(decide_eq(&Ctx::empty(), &id, &twice).unwrap(), EqVerdict::Convertible(want));
    }

    #[test]
    fn list_and_its_doubling_differ() {
        let ctx = Ctx::from_tys(2, [Ty::list(Ty::base(0))]);
        let t = Term::var(0);
        let u = Term::append(Term::var(0), Term::var(0));
        assert!(matches!(decide_eq(&ctx, &t, &u).unwrap(), EqVerdict::Distinct(..)));
    }

    #[test]
    fn sides_must_agree_on_type() {
        let ctx = Ctx::from_tys(2, [Ty::base(0)]);
        let err = decide_eq(&ctx, &Term::var(0), &Term::TT).unwrap_err();
        assert!(matches!(err, EqError::TypeMismatchBetweenSides { .. }));
        let err = decide_eq(&ctx, &Term::var(3), &Term::TT).unwrap_err();
        assert!(matches!(err, EqError::IllTyped { side: "left", .. }));
    }
}
