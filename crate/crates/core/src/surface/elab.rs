use thiserror::Error;

use super::{Pos, SurfaceCtx, SurfaceTerm, SurfaceTermKind, SurfaceTy, SurfaceTyKind};
use crate::syntax::{infer, Ctx, Term, Ty, TypeError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ElabError {
    #[error("{pos}: unknown name `{name}`")]
    UnknownName { name: String, pos: Pos },
    #[error("{pos}: base type '{index} is out of range (there are {bases} base types)")]
    BadBaseIndex { index: u32, bases: u32, pos: Pos },
    #[error("{pos}: `nil` must be annotated with a list type, got {got}")]
    NilAnnotation { got: Ty, pos: Pos },
    #[error("{pos}: {err}")]
    Type { err: TypeError, pos: Pos },
}

/// A core context together with the names of its entries, oldest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scope {
    ctx: Ctx,
    names: Vec<String>,
}

impl Scope {
    pub fn new(ctx: Ctx, names: Vec<String>) -> Scope {
        assert_eq!(ctx.len(), names.len(), "one name per context entry");
        Scope { ctx, names }
    }

    pub fn empty(bases: u32) -> Scope {
        Scope { ctx: Ctx::new(bases), names: Vec::new() }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The innermost entry with this name, as a de Bruijn index.
    fn resolve(&self, name: &str) -> Option<usize> {
        self.names.iter().rev().position(|n| n == name)
    }

    fn extend(&self, name: &str, ty: Ty) -> Scope {
        let mut names = self.names.clone();
        names.push(name.to_string());
        Scope { ctx: self.ctx.extend(ty), names }
    }
}

pub fn elaborate_ty(bases: u32, st: &SurfaceTy) -> Result<Ty, ElabError> {
    Ok(match &st.kind {
        SurfaceTyKind::Base(k) if *k < bases => Ty::base(*k),
        SurfaceTyKind::Base(k) => return Err(ElabError::BadBaseIndex { index: *k, bases, pos: st.pos }),
        SurfaceTyKind::Unit => Ty::Unit,
        SurfaceTyKind::Prod(a, b) => Ty::prod(elaborate_ty(bases, a)?, elaborate_ty(bases, b)?),
        SurfaceTyKind::Arrow(a, b) => Ty::arrow(elaborate_ty(bases, a)?, elaborate_ty(bases, b)?),
        SurfaceTyKind::List(e) => Ty::list(elaborate_ty(bases, e)?),
    })
}

pub fn elaborate_ctx(bases: u32, sctx: &SurfaceCtx) -> Result<Scope, ElabError> {
    let mut scope = Scope::empty(bases);
    for (name, ty, _) in &sctx.entries {
        let ty = elaborate_ty(bases, ty)?;
        scope = scope.extend(name, ty);
    }
    Ok(scope)
}

/// Resolves names and fills in the annotations the core needs, then
/// type-checks the result.
pub fn elaborate(scope: &Scope, st: &SurfaceTerm) -> Result<(Term, Ty), ElabError> {
    let t = elab(scope, st, st, &mut Vec::new())?;
    let ty = infer(&scope.ctx, &t).map_err(|err| located(st, &[], err))?;
    Ok((t, ty))
}

/// Attaches the source position of the offending node. `prefix` is the
/// path from `root` to the subterm that was checked.
fn located(root: &SurfaceTerm, prefix: &[usize], err: TypeError) -> ElabError {
    let inner = match &err {
        TypeError::UnboundVariable { path, .. }
        | TypeError::TypeMismatch { path, .. }
        | TypeError::BadBaseIndex { path, .. } => path.clone(),
    };
    let full: Vec<usize> = prefix.iter().chain(inner.iter()).copied().collect();
    ElabError::Type { pos: root.pos_at(&full), err: with_path(err, full) }
}

fn with_path(err: TypeError, full: Vec<usize>) -> TypeError {
    match err {
        TypeError::UnboundVariable { idx, .. } => TypeError::UnboundVariable { idx, path: full },
        TypeError::TypeMismatch { expected, got, .. } => TypeError::TypeMismatch { expected, got, path: full },
        TypeError::BadBaseIndex { index, bases, .. } => TypeError::BadBaseIndex { index, bases, path: full },
    }
}

fn elab(scope: &Scope, root: &SurfaceTerm, st: &SurfaceTerm, path: &mut Vec<usize>) -> Result<Term, ElabError> {
    let mut sub = |scope: &Scope, i: usize, child: &SurfaceTerm| -> Result<Term, ElabError> {
        path.push(i);
        let r = elab(scope, root, child, path);
        path.pop();
        r
    };
    Ok(match &st.kind {
        SurfaceTermKind::Var(name) => match scope.resolve(name) {
            Some(i) => Term::var(i),
            None => return Err(ElabError::UnknownName { name: name.clone(), pos: st.pos }),
        },
        SurfaceTermKind::Lam(name, ty, body) => {
            let ty = elaborate_ty(scope.ctx.bases(), ty)?;
            let inner = scope.extend(name, ty.clone());
            Term::lam(ty, sub(&inner, 0, body)?)
        }
        SurfaceTermKind::App(f, a) => Term::app(sub(scope, 0, f)?, sub(scope, 1, a)?),
        SurfaceTermKind::TT => Term::TT,
        SurfaceTermKind::Pair(a, b) => Term::pair(sub(scope, 0, a)?, sub(scope, 1, b)?),
        SurfaceTermKind::Fst(p) => Term::fst(sub(scope, 0, p)?),
        SurfaceTermKind::Snd(p) => Term::snd(sub(scope, 0, p)?),
        SurfaceTermKind::Nil(ann) => match elaborate_ty(scope.ctx.bases(), ann)? {
            Ty::List(e) => Term::nil((*e).clone()),
            got => return Err(ElabError::NilAnnotation { got, pos: ann.pos }),
        },
        SurfaceTermKind::Cons(h, t) => Term::cons(sub(scope, 0, h)?, sub(scope, 1, t)?),
        SurfaceTermKind::Append(a, b) => Term::append(sub(scope, 0, a)?, sub(scope, 1, b)?),
        SurfaceTermKind::Map(f, xs) => {
            let f = sub(scope, 0, f)?;
            let xs = sub(scope, 1, xs)?;
            let cod = codomain(scope, root, path, &f)?;
            Term::map(f, xs, cod)
        }
        SurfaceTermKind::Fold(c, n, xs) => {
            let c = sub(scope, 0, c)?;
            let n = sub(scope, 1, n)?;
            let xs = sub(scope, 2, xs)?;
            path.push(1);
            let ret = infer(&scope.ctx, &n).map_err(|err| located(root, path, err));
            path.pop();
            Term::fold(c, n, xs, ret?)
        }
    })
}

/// The codomain of the function in a `map`, found at child 0 of `path`.
fn codomain(scope: &Scope, root: &SurfaceTerm, path: &mut Vec<usize>, f: &Term) -> Result<Ty, ElabError> {
    path.push(0);
    let r = match infer(&scope.ctx, f) {
        Ok(Ty::Arrow(_, c)) => Ok((*c).clone()),
        Ok(got) => {
            let err = TypeError::TypeMismatch { expected: "a function type".into(), got, path: vec![] };
            Err(located(root, path, err))
        }
        Err(err) => Err(located(root, path, err)),
    };
    path.pop();
    r
}
