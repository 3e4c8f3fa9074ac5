use std::fmt;

use rayon::prelude::*;

use crate::nbe::norm;
use crate::rewrite::{convertible_bounded, one_step, replay, Conversion};
use crate::staged::{staged_norm, Machine, StagedError, Wh, WhEnv, DEFAULT_FUEL};
use crate::surface::{elaborate, parse_term, pretty_nf, pretty_term, Scope};
use crate::syntax::{check_standard, infer, nf_eq, Ctx, Nf, Ope, Term, Ty};

/// Outcome of one suite: how many things were checked and what went wrong.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checked: usize,
    pub failures: Vec<String>,
    /// Staged runs that ran out of fuel; not counted as failures.
    pub exhausted: Vec<String>,
    /// Bounded searches that gave up; not counted as failures.
    pub unknown: Vec<String>,
}

impl Report {
    fn new(suite: &str) -> Report {
        Report { suite: suite.to_string(), ..Report::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, item: Item) {
        self.checked += item.checked;
        self.failures.extend(item.failures);
        self.exhausted.extend(item.exhausted);
        self.unknown.extend(item.unknown);
    }

    fn merge(suite: &str, items: Vec<Item>) -> Report {
        let mut r = Report::new(suite);
        for item in items {
            r.absorb(item);
        }
        r
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} checked, {} failed", self.suite, self.checked, self.failures.len())?;
        if !self.exhausted.is_empty() {
            write!(f, ", {} out of fuel", self.exhausted.len())?;
        }
        if !self.unknown.is_empty() {
            write!(f, ", {} unknown", self.unknown.len())?;
        }
        Ok(())
    }
}

/// Per-item partial report, merged in item order.
#[derive(Default)]
struct Item {
    checked: usize,
    failures: Vec<String>,
    exhausted: Vec<String>,
    unknown: Vec<String>,
}

fn show(scope: &Scope, t: &Term) -> String {
    pretty_term(scope.names(), t)
}

fn show_nf(scope: &Scope, nf: &Nf) -> String {
    pretty_nf(scope.names(), nf)
}

/// Every bidirectional one-step rewrite of every term preserves its type
/// and its normal form.
pub fn check_rule_soundness(scope: &Scope, terms: &[(Term, Ty)]) -> Report {
    let ctx = scope.ctx();
    let items = terms
        .par_iter()
        .map(|(t, ty)| {
            let mut item = Item::default();
            let nt = match norm(ctx, t) {
                Ok(nf) => nf,
                Err(e) => {
                    item.failures.push(format!("{}: {e}", show(scope, t)));
                    return item;
                }
            };
            let steps = match one_step(ctx, t, true) {
                Ok(s) => s,
                Err(e) => {
                    item.failures.push(format!("{}: {e}", show(scope, t)));
                    return item;
                }
            };
            for step in steps {
                item.checked += 1;
                let lhs = show(scope, t);
                match infer(ctx, &step.result) {
                    Ok(got) if got == *ty => {}
                    other => {
                        item.failures.push(format!("{lhs} --{step}--> {}: type {other:?}", show(scope, &step.result)));
                        continue;
                    }
                }
                let nu = norm(ctx, &step.result).expect("typed above");
                if !nf_eq(&nt, &nu) {
                    item.failures.push(format!(
                        "{lhs} --{step}--> {}: {} vs {}",
                        show(scope, &step.result),
                        show_nf(scope, &nt),
                        show_nf(scope, &nu)
                    ));
                }
            }
            item
        })
        .collect();
    Report::merge("rule soundness", items)
}

/// The staged engine and the evaluation-based engine agree.
pub fn check_agreement(scope: &Scope, terms: &[(Term, Ty)], fuel: u64) -> Report {
    let ctx = scope.ctx();
    let items = terms
        .par_iter()
        .map(|(t, _)| {
            let mut item = Item { checked: 1, ..Item::default() };
            let nbe = norm(ctx, t).expect("corpus terms are well-typed");
            match staged_norm(ctx, t, fuel) {
                Ok(nf) if nf_eq(&nf, &nbe) => {}
                Ok(nf) => item.failures.push(format!(
                    "{}: staged {} vs nbe {}",
                    show(scope, t),
                    show_nf(scope, &nf),
                    show_nf(scope, &nbe)
                )),
                Err(StagedError::FuelExhausted) => item.exhausted.push(show(scope, t)),
                Err(e) => item.failures.push(format!("{}: staged error {e}", show(scope, t))),
            }
            item
        })
        .collect();
    Report::merge("engine agreement", items)
}

/// The structural properties of both normalizers.
#[derive(Clone, Debug)]
pub struct Properties {
    pub type_preservation: Report,
    pub idempotence: Report,
    pub weakening: Report,
    pub grammar: Report,
    pub constructor_head: Report,
}

impl Properties {
    pub fn reports(&self) -> [&Report; 5] {
        [&self.type_preservation, &self.idempotence, &self.weakening, &self.grammar, &self.constructor_head]
    }
}

/// Two embeddings per context: a fresh variable on top, and a fresh
/// oldest variable.
fn weakenings(ctx: &Ctx) -> Vec<Ope> {
    let top = Ope::weak(ctx, Ty::Unit);
    let mut tys = vec![Ty::list(Ty::base(0))];
    tys.extend(ctx.tys().iter().cloned());
    let tgt = Ctx::from_tys(ctx.bases(), tys);
    let mut keep = vec![true; tgt.len()];
    keep[0] = false;
    vec![top, Ope::from_mask(&tgt, &keep)]
}

pub fn check_properties(scope: &Scope, terms: &[(Term, Ty)]) -> Properties {
    let ctx = scope.ctx();
    let opes = weakenings(ctx);
    let per_item: Vec<[Item; 5]> = terms
        .par_iter()
        .map(|(t, ty)| {
            let mut out: [Item; 5] = Default::default();
            let lhs = show(scope, t);
            let nbe = norm(ctx, t).expect("corpus terms are well-typed");
            let staged = staged_norm(ctx, t, DEFAULT_FUEL);

            // type preservation of both engines
            out[0].checked += 1;
            let mut outputs = vec![("nbe", nbe.clone())];
            if let Ok(nf) = &staged {
                outputs.push(("staged", nf.clone()));
            }
            for (engine, nf) in &outputs {
                match infer(ctx, &nf.embed()) {
                    Ok(got) if got == *ty => {}
                    other => out[0].failures.push(format!("{lhs}: {engine} output has type {other:?}")),
                }
            }

            // idempotence
            out[1].checked += 1;
            match norm(ctx, &nbe.embed()) {
                Ok(again) if nf_eq(&again, &nbe) => {}
                other => out[1].failures.push(format!("{lhs}: renormalized to {other:?}")),
            }

            // weakening stability
            for ope in &opes {
                out[2].checked += 1;
                let moved = norm(ope.tgt(), &t.weaken(ope)).expect("weakening preserves typing");
                if !nf_eq(&moved, &nbe.weaken(ope)) {
                    out[2].failures.push(format!("{lhs}: not stable under {ope}"));
                }
            }

            // grammar
            for (engine, nf) in &outputs {
                out[3].checked += 1;
                if let Err(e) = check_standard(ctx, ty, nf) {
                    out[3].failures.push(format!("{lhs}: {engine} output {}: {e}", show_nf(scope, nf)));
                }
            }

            // A list normal form headed by a constructor is already one
            // after weak-head evaluation.
            if let (Ty::List(_), Nf::Nil(_) | Nf::Cons(..)) = (ty, &nbe) {
                out[4].checked += 1;
                let mut m = Machine::new(DEFAULT_FUEL);
                match m.whnorm(&WhEnv::diagonal(ctx), t) {
                    Ok(Wh::Nil) | Ok(Wh::Cons(..)) => {}
                    other => out[4].failures.push(format!("{lhs}: weak-head value {other:?}")),
                }
            }
            out
        })
        .collect();
    let mut reports = [
        Report::new("type preservation"),
        Report::new("idempotence"),
        Report::new("weakening stability"),
        Report::new("standard-form grammar"),
        Report::new("constructor-headedness"),
    ];
    for items in per_item {
        for (r, item) in reports.iter_mut().zip(items) {
            r.absorb(item);
        }
    }
    let [type_preservation, idempotence, weakening, grammar, constructor_head] = reports;
    Properties { type_preservation, idempotence, weakening, grammar, constructor_head }
}

/// Each term rewrites to the embedding of its normal form, as far as a
/// bounded search can tell.
pub fn check_soundness(scope: &Scope, terms: &[(Term, Ty)], budget: usize) -> Report {
    let ctx = scope.ctx();
    let items = terms
        .par_iter()
        .map(|(t, ty)| {
            let mut item = Item { checked: 1, ..Item::default() };
            let target = norm(ctx, t).expect("corpus terms are well-typed").embed();
            match convertible_bounded(ctx, ty, t, &target, budget) {
                Ok(Conversion::Yes(path)) => {
                    if replay(ctx, t, &path).as_ref() != Some(&target) {
                        item.failures.push(format!("{}: path does not replay", show(scope, t)));
                    }
                }
                Ok(Conversion::Unknown) => item.unknown.push(show(scope, t)),
                Err(e) => item.failures.push(format!("{}: {e}", show(scope, t))),
            }
            item
        })
        .collect();
    Report::merge("soundness search", items)
}

/// Printing and reading back gives the same core term.
pub fn check_round_trip(scope: &Scope, terms: &[Term]) -> Report {
    let items = terms
        .par_iter()
        .map(|t| {
            let mut item = Item { checked: 1, ..Item::default() };
            let printed = show(scope, t);
            let back = parse_term(&printed)
                .map_err(|e| e.to_string())
                .and_then(|st| elaborate(scope, &st).map_err(|e| e.to_string()));
            match back {
                Ok((u, _)) if u == *t => {}
                Ok((u, _)) => item.failures.push(format!("{printed} read back as {}", show(scope, &u))),
                Err(e) => item.failures.push(format!("{printed}: {e}")),
            }
            item
        })
        .collect();
    Report::merge("surface round trip", items)
}
