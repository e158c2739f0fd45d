//! Drives a checker over its universe: full enumeration for small `n`,
//! seeded sampling otherwise. Work is split into independent shards (grand
//! menu choices, or sample chunks with their own RNG stream) so results do
//! not depend on scheduling.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dataset::ChoiceDataset;
use crate::error::{Error, Result};
use crate::lam::{all_lams, Lam};
use crate::luce::Utility;
use crate::menu::Alternative;
use crate::relation::{LinearOrder, Relation};

use super::enumerate::{default_labels, Enumerator, MAX_FULL_N};
use super::generate;
use super::theorems::{self, Check, TheoremId, Universe};

/// Sample count for `n = 4` when no budget is given.
pub const DEFAULT_BUDGET_N4: u64 = 100_000;
/// Sample count for `n ≥ 5` when no budget is given.
pub const DEFAULT_BUDGET_LARGE: u64 = 10_000;
/// Stored counterexamples per report; all are counted.
pub const COUNTEREXAMPLE_CAP: usize = 16;

const CHUNK: u64 = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Enumerate every dataset at `n = 4` instead of sampling.
    pub exhaustive: bool,
    pub budget: Option<u64>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Dataset in file grammar (or a model / utility description).
    pub instance: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub n: usize,
    pub sampled: bool,
    pub seed: Option<u64>,
    /// Size of the enumerated space, or the number of samples drawn.
    pub universe_size: u64,
    pub instances_checked: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexample_count == 0
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failures: u64,
    kept: Vec<Counterexample>,
}

impl Tally {
    fn record(&mut self, result: Check, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if let Err(detail) = result {
            self.failures += 1;
            if self.kept.len() < COUNTEREXAMPLE_CAP {
                self.kept.push(Counterexample {
                    instance: describe(),
                    detail,
                });
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failures += other.failures;
        for cx in other.kept {
            if self.kept.len() < COUNTEREXAMPLE_CAP {
                self.kept.push(cx);
            }
        }
        self
    }
}

fn describe_model(model: &Lam, u: Option<&Utility>) -> String {
    let mut text = crate::json::lam_to_json(model).to_string();
    if let Some(u) = u {
        text.push_str(" utility ");
        text.push_str(&crate::json::utility_to_json(model.consideration(), u).to_string());
    }
    text
}

fn check_dataset_instance(id: TheoremId, c: &ChoiceDataset, tally: &mut Tally) {
    if id.filters().iter().all(|f| f.accepts(c)) {
        tally.record(theorems::check_dataset(id, c), || c.to_text());
    }
}

fn exhaustive_datasets(id: TheoremId, n: usize) -> Result<(u64, Tally)> {
    let e = Enumerator::with_n(n)?;
    let total = e.count().ok_or(Error::EnumerationTooLarge(n))?;
    let tally = (0..e.shard_count())
        .into_par_iter()
        .map(|s| {
            let mut t = Tally::default();
            for i in e.shard(s) {
                check_dataset_instance(id, &e.decode(i), &mut t);
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    Ok((total, tally))
}

fn sampled<F>(budget: u64, seed: u64, per_instance: F) -> Tally
where
    F: Fn(&mut ChaCha8Rng, &mut Tally) + Sync,
{
    let chunks = budget.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let mut t = Tally::default();
            let count = CHUNK.min(budget - k * CHUNK);
            for _ in 0..count {
                per_instance(&mut rng, &mut t);
            }
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn sample_dataset_instance(id: TheoremId, n: usize, rng: &mut ChaCha8Rng, tally: &mut Tally) {
    match generate::sample_filtered(n, id.filters(), rng) {
        Some(c) => tally.record(theorems::check_dataset(id, &c), || c.to_text()),
        None => tally.record(
            Err("generator did not reach the filtered class".into()),
            String::new,
        ),
    }
    if id == TheoremId::P3Delta {
        tally.record(theorems::check_decreasing_model(n, rng), || {
            "random decreasing-threshold model".into()
        });
    }
}

fn grid_utilities(n: usize, top: i64) -> Vec<Utility> {
    let mut out = Vec::new();
    let mut digits = vec![1i64; n];
    loop {
        out.push(Utility::from_integers(&digits).expect("positive"));
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if digits[i] < top {
                digits[i] += 1;
                break;
            }
            digits[i] = 1;
            i += 1;
        }
    }
}

fn check_model(model: &Lam, utilities: &[Utility], tally: &mut Tally) {
    for u in utilities {
        if model.weak_order().agrees_with(u) {
            tally.record(theorems::check_p5(model, u), || {
                describe_model(model, Some(u))
            });
        }
    }
    tally.record(theorems::check_p5_construction(model), || {
        describe_model(model, None)
    });
}

fn all_orders(n: usize) -> Vec<LinearOrder> {
    Relation::empty(n)
        .linear_extensions()
        .expect("empty relation is acyclic")
        .collect()
}

fn random_order(n: usize, rng: &mut impl Rng) -> LinearOrder {
    let mut items: Vec<Alternative> = (0..n).map(Alternative::new).collect();
    items.shuffle(rng);
    LinearOrder::from_ascending(items).expect("permutation")
}

/// Verifies `id` over all instances of size `n` (or a seeded sample).
pub fn verify_theorem(id: TheoremId, n: usize, opts: VerifyOptions) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if opts.exhaustive && n > MAX_FULL_N {
        return Err(Error::EnumerationTooLarge(n));
    }
    let start = Instant::now();
    let full = n <= 3 || (opts.exhaustive && n == MAX_FULL_N);
    let budget = opts.budget.unwrap_or(if n <= MAX_FULL_N {
        DEFAULT_BUDGET_N4
    } else {
        DEFAULT_BUDGET_LARGE
    });
    // models and utilities are enumerable only for n ≤ 3
    let small = n <= 3;
    let seed = opts.seed;

    let (universe, tally) = match id.universe() {
        Universe::Datasets => {
            if full {
                exhaustive_datasets(id, n)?
            } else {
                (
                    budget,
                    sampled(budget, seed, |rng, t| {
                        sample_dataset_instance(id, n, rng, t)
                    }),
                )
            }
        }
        Universe::DatasetsAndModels => {
            let (size, mut tally) = if full {
                exhaustive_datasets(id, n)?
            } else {
                (
                    budget,
                    sampled(budget, seed, |rng, t| {
                        sample_dataset_instance(id, n, rng, t)
                    }),
                )
            };
            let models = if small {
                let models = all_lams(default_labels(n))?;
                let mut t = Tally::default();
                for m in &models {
                    t.record(theorems::check_p4_model(m), || describe_model(m, None));
                }
                t
            } else {
                sampled(budget, seed ^ 0x5eed, |rng, t| {
                    let m = generate::lam(n, rng);
                    t.record(theorems::check_p4_model(&m), || describe_model(&m, None));
                })
            };
            tally = tally.merge(models);
            (size, tally)
        }
        Universe::Models => {
            if small {
                let models = all_lams(default_labels(n))?;
                let grid = grid_utilities(n, 3);
                let tally = models
                    .par_iter()
                    .map(|m| {
                        let mut t = Tally::default();
                        check_model(m, &grid, &mut t);
                        t
                    })
                    .reduce(Tally::default, Tally::merge);
                (models.len() as u64, tally)
            } else {
                let tally = sampled(budget, seed, |rng, t| {
                    let m = generate::lam(n, rng);
                    let represent = rng.gen_bool(0.5);
                    let u = generate::agreeing_utility(m.weak_order(), represent, rng);
                    check_model(&m, &[u], t);
                });
                (budget, tally)
            }
        }
        Universe::Utilities => {
            if small {
                let orders = all_orders(n);
                let grid = grid_utilities(n, 5);
                let mut t = Tally::default();
                for order in &orders {
                    for a in 2..=4 {
                        t.record(theorems::check_families(order, a), || {
                            format!("families base {a} along {order}")
                        });
                    }
                    for u in &grid {
                        t.record(theorems::check_shapes(u, order), || {
                            format!("{:?} along {order}", u.values())
                        });
                    }
                }
                ((orders.len() * (grid.len() + 3)) as u64, t)
            } else {
                let tally = sampled(budget, seed, |rng, t| {
                    let order = random_order(n, rng);
                    let a = rng.gen_range(2..=4);
                    t.record(theorems::check_families(&order, a), || {
                        format!("families base {a} along {order}")
                    });
                    let u = generate::utility(n, rng);
                    t.record(theorems::check_shapes(&u, &order), || {
                        format!("{:?} along {order}", u.values())
                    });
                });
                (budget, tally)
            }
        }
    };
    let sampled_mode = match id.universe() {
        Universe::Models | Universe::Utilities => !small,
        Universe::DatasetsAndModels => !full || !small,
        Universe::Datasets => !full,
    };
    Ok(VerificationReport {
        theorem: id,
        n,
        sampled: sampled_mode,
        seed: sampled_mode.then_some(seed),
        universe_size: universe,
        instances_checked: tally.checked,
        counterexample_count: tally.failures,
        counterexamples: tally.kept,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_size() {
        assert_eq!(grid_utilities(3, 3).len(), 27);
    }

    #[test]
    fn p1_n3_exhaustive() {
        let r = verify_theorem(TheoremId::P1Uniform, 3, VerifyOptions::default()).unwrap();
        assert_eq!(r.universe_size, 189);
        assert_eq!(r.instances_checked, 189);
        assert!(r.passed(), "{:?}", r.counterexamples);
        assert!(!r.sampled);
    }

    #[test]
    fn sampled_runs_are_replayable() {
        let opts = VerifyOptions {
            budget: Some(300),
            seed: 9,
            ..VerifyOptions::default()
        };
        let a = verify_theorem(TheoremId::T1, 4, opts).unwrap();
        let b = verify_theorem(TheoremId::T1, 4, opts).unwrap();
        assert_eq!(a.instances_checked, 300);
        assert_eq!(a.counterexamples, b.counterexamples);
        assert!(a.sampled && a.seed == Some(9));
    }
}
