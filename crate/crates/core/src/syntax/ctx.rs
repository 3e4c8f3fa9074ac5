use std::fmt;

use super::Ty;

/// Number of base types when nothing else is configured.
pub const DEFAULT_BASES: u32 = 2;

/// A typing context: a snoc list of types, most recently bound last.
///
/// The context also records how many base types the engine works with, so
/// that type annotations can be validated wherever a context is at hand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ctx {
    bases: u32,
    tys: Vec<Ty>,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx::empty()
    }
}

impl Ctx {
    pub fn empty() -> Ctx {
        Ctx::new(DEFAULT_BASES)
    }

    pub fn new(bases: u32) -> Ctx {
        Ctx { bases, tys: Vec::new() }
    }

    /// Builds a context from its entries, oldest first.
    pub fn from_tys(bases: u32, tys: impl IntoIterator<Item = Ty>) -> Ctx {
        Ctx { bases, tys: tys.into_iter().collect() }
    }

    pub fn bases(&self) -> u32 {
        self.bases
    }

    pub fn len(&self) -> usize {
        self.tys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tys.is_empty()
    }

    /// Entries, oldest first.
    pub fn tys(&self) -> &[Ty] {
        &self.tys
    }

    /// Type of de Bruijn index `idx` (0 is the most recent binding).
    pub fn lookup(&self, idx: usize) -> Option<&Ty> {
        let n = self.tys.len();
        if idx < n {
            Some(&self.tys[n - 1 - idx])
        } else {
            None
        }
    }

    pub fn extend(&self, ty: Ty) -> Ctx {
        let mut tys = self.tys.clone();
        tys.push(ty);
        Ctx { bases: self.bases, tys }
    }

    pub fn push(&mut self, ty: Ty) {
        self.tys.push(ty);
    }

    pub fn pop(&mut self) -> Option<Ty> {
        self.tys.pop()
    }
}

/// One constructor of an order-preserving embedding, read per target slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Emb {
    /// The slot is shared by source and target.
    Pop,
    /// The slot only exists in the target.
    Step,
}

/// An order-preserving embedding of `src` into `tgt`.
///
/// Stored as the map from source levels to target levels; `Pop`/`Step`
/// structure is recoverable through [`Ope::embs`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ope {
    src: Ctx,
    tgt: Ctx,
    levels: Vec<usize>,
}

impl Ope {
    /// The embedding of the empty context into itself.
    pub fn base(bases: u32) -> Ope {
        Ope { src: Ctx::new(bases), tgt: Ctx::new(bases), levels: Vec::new() }
    }

    pub fn id(ctx: &Ctx) -> Ope {
        Ope { src: ctx.clone(), tgt: ctx.clone(), levels: (0..ctx.len()).collect() }
    }

    /// `ctx` into `ctx, ty`.
    pub fn weak(ctx: &Ctx, ty: Ty) -> Ope {
        Ope::id(ctx).step(ty)
    }

    /// Extends source and target by the same type.
    pub fn pop(mut self, ty: Ty) -> Ope {
        self.levels.push(self.tgt.len());
        self.src.push(ty.clone());
        self.tgt.push(ty);
        self
    }

    /// Extends only the target.
    pub fn step(mut self, ty: Ty) -> Ope {
        self.tgt.push(ty);
        self
    }

    /// Builds the embedding of the entries of `tgt` selected by `keep`
    /// (oldest first) into `tgt`.
    pub fn from_mask(tgt: &Ctx, keep: &[bool]) -> Ope {
        assert_eq!(tgt.len(), keep.len(), "mask length must match the target context");
        let mut ope = Ope::base(tgt.bases());
        for (ty, k) in tgt.tys().iter().zip(keep) {
            ope = if *k { ope.pop(ty.clone()) } else { ope.step(ty.clone()) };
        }
        ope
    }

    pub fn src(&self) -> &Ctx {
        &self.src
    }

    pub fn tgt(&self) -> &Ctx {
        &self.tgt
    }

    pub fn is_id(&self) -> bool {
        self.src.len() == self.tgt.len()
    }

    /// The constructor used for each target slot, oldest first.
    pub fn embs(&self) -> Vec<Emb> {
        let mut out = vec![Emb::Step; self.tgt.len()];
        for &l in &self.levels {
            out[l] = Emb::Pop;
        }
        out
    }

    /// Image of a de Bruijn index of the source context.
    ///
    /// Panics if `idx` is not bound in the source.
    pub fn apply_index(&self, idx: usize) -> usize {
        let n = self.src.len();
        assert!(idx < n, "index {idx} not bound in a source context of length {n}");
        self.tgt.len() - 1 - self.levels[n - 1 - idx]
    }

    /// `self` followed by `then`: from `self.src` to `then.tgt`.
    pub fn then(&self, then: &Ope) -> Ope {
        debug_assert_eq!(self.tgt.len(), then.src.len());
        Ope {
            src: self.src.clone(),
            tgt: then.tgt.clone(),
            levels: self.levels.iter().map(|&l| then.levels[l]).collect(),
        }
    }
}

impl fmt::Display for Ope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::from("base");
        for e in self.embs() {
            s = match e {
                Emb::Pop => format!("pop({s})"),
                Emb::Step => format!("step({s})"),
            };
        }
        f.write_str(&s)
    }
}
