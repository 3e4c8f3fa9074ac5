//! Term enumeration, random generation and the differential and property
//! suites run by `nulam selftest` and the test targets.

mod checks;
mod enumerate;
mod random;

pub use checks::{
    check_agreement, check_properties, check_round_trip, check_rule_soundness, check_soundness, Properties, Report,
};
pub use enumerate::{cut_types, enum_terms, universe, Enumerator};
pub use random::{random_terms, Generator};

use crate::staged::DEFAULT_FUEL;
use crate::surface::{read_term, read_type, Scope};
use crate::syntax::{Term, Ty, DEFAULT_BASES};

/// A signature and every term over it up to a size bound.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub scope: Scope,
    pub goals: Vec<Ty>,
    pub size_bound: usize,
    pub terms: Vec<(Term, Ty)>,
}

pub const DEFAULT_CONTEXT: &str = "a : '0, p : '0*'1, f : '0 -> '0, g : '0 -> Unit, xs : ['0], ys : ['0]";
pub const DEFAULT_GOALS: [&str; 5] = ["'0", "Unit", "'0*'1", "['0]", "['0] -> ['0]"];
pub const DEFAULT_SIZE_BOUND: usize = 7;
pub const RANDOM_MAX_SIZE: usize = 15;

impl Corpus {
    /// Enumerates all terms of each goal type up to `size_bound` nodes.
    pub fn enumerate(scope: Scope, goals: Vec<Ty>, size_bound: usize) -> Corpus {
        let mut e = Enumerator::new(universe(scope.ctx(), &goals));
        let mut terms = Vec::new();
        for g in &goals {
            terms.extend(e.up_to(scope.ctx(), g, size_bound).into_iter().map(|t| (t, g.clone())));
        }
        Corpus { scope, goals, size_bound, terms }
    }

    /// The default signature at the given size bound.
    pub fn default_with_bound(size_bound: usize) -> Corpus {
        let (scope, _, _) = read_term(DEFAULT_BASES, DEFAULT_CONTEXT, "()").expect("default context parses");
        let goals = DEFAULT_GOALS.iter().map(|g| read_type(DEFAULT_BASES, g).expect("default goal parses")).collect();
        Corpus::enumerate(scope, goals, size_bound)
    }

    pub fn universe(&self) -> Vec<Ty> {
        universe(self.scope.ctx(), &self.goals)
    }

    /// Terms of at most `size` nodes.
    pub fn at_most(&self, size: usize) -> Vec<(Term, Ty)> {
        self.terms.iter().filter(|(t, _)| t.size() <= size).cloned().collect()
    }

    /// Seeded random terms over the same signature.
    pub fn random(&self, count: usize, max_size: usize, seed: u64) -> Vec<(Term, Ty)> {
        random_terms(self.scope.ctx(), &self.goals, &self.universe(), count, max_size, seed)
    }
}

impl Default for Corpus {
    fn default() -> Corpus {
        Corpus::default_with_bound(DEFAULT_SIZE_BOUND)
    }
}

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub size_bound: usize,
    pub random_count: usize,
    pub seed: u64,
    pub fuel: u64,
    pub search_size: usize,
    pub search_budget: usize,
}

impl Default for SelftestConfig {
    fn default() -> SelftestConfig {
        SelftestConfig {
            size_bound: DEFAULT_SIZE_BOUND,
            random_count: 10_000,
            seed: 0,
            fuel: DEFAULT_FUEL,
            search_size: 5,
            search_budget: 10_000,
        }
    }
}

/// Runs every suite on the default signature.
pub fn selftest(cfg: &SelftestConfig) -> Vec<Report> {
    let corpus = Corpus::default_with_bound(cfg.size_bound);
    let random = corpus.random(cfg.random_count, RANDOM_MAX_SIZE, cfg.seed);
    let mut all = corpus.terms.clone();
    all.extend(random.iter().cloned());

    let mut reports = vec![check_rule_soundness(&corpus.scope, &corpus.terms)];
    let mut agree = check_agreement(&corpus.scope, &all, cfg.fuel);
    agree.suite = "engine agreement (corpus and random)".into();
    reports.push(agree);
    reports.extend(check_properties(&corpus.scope, &corpus.terms).reports().into_iter().cloned());
    let mut sound = check_soundness(&corpus.scope, &corpus.at_most(cfg.search_size), cfg.search_budget);
    sound.suite = format!("soundness search (size <= {})", cfg.search_size);
    reports.push(sound);
    let terms: Vec<Term> = all.into_iter().map(|(t, _)| t).collect();
    reports.push(check_round_trip(&corpus.scope, &terms));
    reports
}

#[cfg(test)]
mod tests;
