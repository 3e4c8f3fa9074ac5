//! Named surface syntax: parsing, elaboration to the nameless core, and
//! pretty-printing back.

mod elab;
mod lexer;
mod parser;
mod pretty;

pub use elab::{elaborate, elaborate_ctx, elaborate_ty, ElabError, Scope};
pub use parser::{parse_context, parse_term, parse_type};
pub use pretty::{fresh_name, pretty_nf, pretty_term, pretty_wh};

use std::fmt;

use thiserror::Error;

use crate::syntax::{Ctx, Term, Ty};

/// A 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl SyntaxError {
    pub(crate) fn new(pos: Pos, message: impl Into<String>) -> SyntaxError {
        SyntaxError { line: pos.line, col: pos.col, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceTy {
    pub pos: Pos,
    pub kind: SurfaceTyKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceTyKind {
    Base(u32),
    Unit,
    Prod(Box<SurfaceTy>, Box<SurfaceTy>),
    Arrow(Box<SurfaceTy>, Box<SurfaceTy>),
    List(Box<SurfaceTy>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceTerm {
    pub pos: Pos,
    pub kind: SurfaceTermKind,
}

/// Children appear in the same order as in [`Term`], so a core path
/// addresses the matching surface node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceTermKind {
    Var(String),
    Lam(String, SurfaceTy, Box<SurfaceTerm>),
    App(Box<SurfaceTerm>, Box<SurfaceTerm>),
    TT,
    Pair(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Fst(Box<SurfaceTerm>),
    Snd(Box<SurfaceTerm>),
    /// Annotated with the type of the whole list.
    Nil(SurfaceTy),
    Cons(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Append(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Map(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Fold(Box<SurfaceTerm>, Box<SurfaceTerm>, Box<SurfaceTerm>),
}

impl SurfaceTerm {
    pub fn children(&self) -> Vec<&SurfaceTerm> {
        use SurfaceTermKind::*;
        match &self.kind {
            Var(_) | TT | Nil(_) => vec![],
            Lam(_, _, b) | Fst(b) | Snd(b) => vec![b],
            App(a, b) | Pair(a, b) | Cons(a, b) | Append(a, b) | Map(a, b) => vec![a, b],
            Fold(a, b, c) => vec![a, b, c],
        }
    }

    /// Position of the node at a core path, or of its deepest existing
    /// ancestor.
    pub fn pos_at(&self, path: &[usize]) -> Pos {
        let mut t = self;
        for &i in path {
            match t.children().get(i) {
                Some(c) => t = c,
                None => break,
            }
        }
        t.pos
    }
}

/// Named context entries, oldest first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurfaceCtx {
    pub entries: Vec<(String, SurfaceTy, Pos)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Elab(#[from] ElabError),
}

/// Parses and elaborates a context and a term over it.
pub fn read_term(bases: u32, ctx_src: &str, term_src: &str) -> Result<(Scope, Term, Ty), SurfaceError> {
    let sctx = parse_context(ctx_src)?;
    let scope = elaborate_ctx(bases, &sctx)?;
    let st = parse_term(term_src)?;
    let (t, ty) = elaborate(&scope, &st)?;
    Ok((scope, t, ty))
}

/// Parses and elaborates a closed-over-`scope` type.
pub fn read_type(bases: u32, src: &str) -> Result<Ty, SurfaceError> {
    Ok(elaborate_ty(bases, &parse_type(src)?)?)
}

/// Renders a context as `x : T, y : U`.
pub fn pretty_ctx(scope: &Scope) -> String {
    scope.names().iter().zip(scope.ctx().tys()).map(|(n, t)| format!("{n} : {t}")).collect::<Vec<_>>().join(", ")
}

impl Scope {
    /// A scope with generated names `x0, x1, ...` for an unnamed context.
    pub fn anonymous(ctx: &Ctx) -> Scope {
        let mut names: Vec<String> = Vec::new();
        for _ in ctx.tys() {
            let n = fresh_name(&names);
            names.push(n);
        }
        Scope::new(ctx.clone(), names)
    }
}
