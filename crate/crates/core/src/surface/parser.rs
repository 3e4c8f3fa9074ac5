use super::lexer::{lex, Tok};
use super::{Pos, SurfaceCtx, SurfaceTerm, SurfaceTermKind, SurfaceTy, SurfaceTyKind, SyntaxError};

type Result<T> = std::result::Result<T, SyntaxError>;

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Parser> {
        Ok(Parser { toks: lex(src)?, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Pos> {
        if self.peek() == &tok {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> SyntaxError {
        SyntaxError::new(self.pos(), format!("expected {what}, found {}", self.peek().describe()))
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => Err(self.unexpected("end of input")),
        }
    }

    // type ::= prod ("->" type)?
    fn ty(&mut self) -> Result<SurfaceTy> {
        let pos = self.pos();
        let dom = self.prod()?;
        if self.eat(&Tok::Arrow) {
            let cod = self.ty()?;
            return Ok(SurfaceTy { pos, kind: SurfaceTyKind::Arrow(Box::new(dom), Box::new(cod)) });
        }
        Ok(dom)
    }

    // prod ::= atomT ("*" prod)?
    fn prod(&mut self) -> Result<SurfaceTy> {
        let pos = self.pos();
        let l = self.atom_ty()?;
        if self.eat(&Tok::Star) {
            let r = self.prod()?;
            return Ok(SurfaceTy { pos, kind: SurfaceTyKind::Prod(Box::new(l), Box::new(r)) });
        }
        Ok(l)
    }

    fn atom_ty(&mut self) -> Result<SurfaceTy> {
        let pos = self.pos();
        let kind = match self.peek().clone() {
            Tok::Unit => {
                self.bump();
                SurfaceTyKind::Unit
            }
            Tok::Base(k) => {
                self.bump();
                SurfaceTyKind::Base(k)
            }
            Tok::LBrack => {
                self.bump();
                let e = self.ty()?;
                self.expect(Tok::RBrack, "`]`")?;
                SurfaceTyKind::List(Box::new(e))
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(t);
            }
            _ => return Err(self.unexpected("a type")),
        };
        Ok(SurfaceTy { pos, kind })
    }

    // term ::= "\" ident ":" type "." term | cons
    fn term(&mut self) -> Result<SurfaceTerm> {
        let pos = self.pos();
        if self.eat(&Tok::Backslash) {
            let name = self.ident()?;
            self.expect(Tok::Colon, "`:` and a type annotation")?;
            let ty = self.ty()?;
            self.expect(Tok::Dot, "`.`")?;
            let body = self.term()?;
            return Ok(SurfaceTerm { pos, kind: SurfaceTermKind::Lam(name, ty, Box::new(body)) });
        }
        self.cons()
    }

    // cons ::= app (("::" | "++") cons)?
    fn cons(&mut self) -> Result<SurfaceTerm> {
        let pos = self.pos();
        let l = self.app()?;
        let op = self.peek().clone();
        if op == Tok::ColonColon || op == Tok::PlusPlus {
            self.bump();
            let r = Box::new(self.cons()?);
            let kind = if op == Tok::ColonColon {
                SurfaceTermKind::Cons(Box::new(l), r)
            } else {
                SurfaceTermKind::Append(Box::new(l), r)
            };
            return Ok(SurfaceTerm { pos, kind });
        }
        Ok(l)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Nil | Tok::LParen)
    }

    fn app(&mut self) -> Result<SurfaceTerm> {
        let pos = self.pos();
        let mut head = match self.peek() {
            Tok::Fst => {
                self.bump();
                SurfaceTerm { pos, kind: SurfaceTermKind::Fst(Box::new(self.atom()?)) }
            }
            Tok::Snd => {
                self.bump();
                SurfaceTerm { pos, kind: SurfaceTermKind::Snd(Box::new(self.atom()?)) }
            }
            Tok::Map => {
                self.bump();
                let f = self.atom()?;
                let xs = self.atom()?;
                SurfaceTerm { pos, kind: SurfaceTermKind::Map(Box::new(f), Box::new(xs)) }
            }
            Tok::Fold => {
                self.bump();
                let c = self.atom()?;
                let n = self.atom()?;
                let xs = self.atom()?;
                SurfaceTerm { pos, kind: SurfaceTermKind::Fold(Box::new(c), Box::new(n), Box::new(xs)) }
            }
            _ => self.atom()?,
        };
        while self.starts_atom() {
            let arg = self.atom()?;
            head = SurfaceTerm { pos, kind: SurfaceTermKind::App(Box::new(head), Box::new(arg)) };
        }
        Ok(head)
    }

    // atom ::= ident | "()" | "nil" ":" atomT | "(" term ")" | "(" term "," term ")"
    fn atom(&mut self) -> Result<SurfaceTerm> {
        let pos = self.pos();
        let kind = match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                SurfaceTermKind::Var(name)
            }
            Tok::Nil => {
                self.bump();
                self.expect(Tok::Colon, "`:` and a list type after `nil`")?;
                SurfaceTermKind::Nil(self.atom_ty()?)
            }
            Tok::LParen if self.peek2() == &Tok::RParen => {
                self.bump();
                self.bump();
                SurfaceTermKind::TT
            }
            Tok::LParen => {
                self.bump();
                let a = self.term()?;
                if self.eat(&Tok::Comma) {
                    let b = self.term()?;
                    self.expect(Tok::RParen, "`)`")?;
                    SurfaceTermKind::Pair(Box::new(a), Box::new(b))
                } else {
                    self.expect(Tok::RParen, "`)` or `,`")?;
                    return Ok(a);
                }
            }
            _ => return Err(self.unexpected("a term")),
        };
        Ok(SurfaceTerm { pos, kind })
    }

    // context ::= (ident ":" type) ("," ident ":" type)*
    fn context(&mut self) -> Result<SurfaceCtx> {
        let mut entries = Vec::new();
        if self.peek() == &Tok::Eof {
            return Ok(SurfaceCtx { entries });
        }
        loop {
            let pos = self.pos();
            let name = self.ident()?;
            self.expect(Tok::Colon, "`:`")?;
            let ty = self.ty()?;
            entries.push((name, ty, pos));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        Ok(SurfaceCtx { entries })
    }
}

pub fn parse_term(src: &str) -> Result<SurfaceTerm> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_type(src: &str) -> Result<SurfaceTy> {
    let mut p = Parser::new(src)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

/// An empty (or all-whitespace) source is the empty context.
pub fn parse_context(src: &str) -> Result<SurfaceCtx> {
    let mut p = Parser::new(src)?;
    let c = p.context()?;
    p.finish()?;
    Ok(c)
}
