use std::fmt;
use std::sync::Arc;

/// Object-language types.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ty {
    /// The `k`-th opaque base type, written `'k`.
    Base(u32),
    Unit,
    Prod(Arc<Ty>, Arc<Ty>),
    Arrow(Arc<Ty>, Arc<Ty>),
    List(Arc<Ty>),
}

impl Ty {
    pub fn base(k: u32) -> Ty {
        Ty::Base(k)
    }

    pub fn prod(l: Ty, r: Ty) -> Ty {
        Ty::Prod(Arc::new(l), Arc::new(r))
    }

    pub fn arrow(dom: Ty, cod: Ty) -> Ty {
        Ty::Arrow(Arc::new(dom), Arc::new(cod))
    }

    pub fn list(elem: Ty) -> Ty {
        Ty::List(Arc::new(elem))
    }

    pub fn as_arrow(&self) -> Option<(&Ty, &Ty)> {
        match self {
            Ty::Arrow(d, c) => Some((d, c)),
            _ => None,
        }
    }

    pub fn as_prod(&self) -> Option<(&Ty, &Ty)> {
        match self {
            Ty::Prod(l, r) => Some((l, r)),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&Ty> {
        match self {
            Ty::List(e) => Some(e),
            _ => None,
        }
    }

    /// The first base index that is not below `bases`, if any.
    pub fn bad_base(&self, bases: u32) -> Option<u32> {
        match self {
            Ty::Base(k) if *k >= bases => Some(*k),
            Ty::Base(_) | Ty::Unit => None,
            Ty::Prod(a, b) | Ty::Arrow(a, b) => a.bad_base(bases).or_else(|| b.bad_base(bases)),
            Ty::List(e) => e.bad_base(bases),
        }
    }

    /// All sub-formulas, including `self`.
    pub fn subformulas(&self, out: &mut Vec<Ty>) {
        if !out.contains(self) {
            out.push(self.clone());
        }
        match self {
            Ty::Base(_) | Ty::Unit => {}
            Ty::Prod(a, b) | Ty::Arrow(a, b) => {
                a.subformulas(out);
                b.subformulas(out);
            }
            Ty::List(e) => e.subformulas(out),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // 0: arrow position, 1: product operand, 2: atomic
        match self {
            Ty::Base(k) => write!(f, "'{k}"),
            Ty::Unit => write!(f, "Unit"),
            Ty::List(e) => {
                write!(f, "[")?;
                e.fmt_prec(f, 0)?;
                write!(f, "]")
            }
            Ty::Prod(a, b) => {
                if prec > 1 {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 2)?;
                write!(f, "*")?;
                b.fmt_prec(f, 1)?;
                if prec > 1 {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Ty::Arrow(a, b) => {
                if prec > 0 {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 1)?;
                write!(f, " -> ")?;
                b.fmt_prec(f, 0)?;
                if prec > 0 {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
