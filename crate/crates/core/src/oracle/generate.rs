//! Seeded random generators for sampled verification. Uniform sampling
//! almost never lands in the interesting subclasses at `n ≥ 4`, so each
//! subclass has a generator that reaches every member of it.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dataset::ChoiceDataset;
use crate::lam::{Lam, WeakOrder};
use crate::luce::Utility;
use crate::menu::{all_menus, Alternative, Menu};
use crate::rational;
use crate::relation::Relation;

use super::enumerate::{default_labels, Enumerator, Filter};

fn permutation(n: usize, rng: &mut impl Rng) -> Vec<Alternative> {
    let mut items: Vec<Alternative> = (0..n).map(Alternative::new).collect();
    items.shuffle(rng);
    items
}

fn random_subset(menu: Menu, rng: &mut impl Rng) -> Menu {
    Menu::from_alternatives(menu.members().filter(|_| rng.gen_bool(0.5)))
}

/// Random linear order (best first); `c(A)` is a random-length top segment.
/// Reaches every dataset with acyclic `R`.
pub fn threshold_topk(n: usize, rng: &mut impl Rng) -> ChoiceDataset {
    let best_first = permutation(n, rng);
    ChoiceDataset::from_fn(default_labels(n), |m| {
        let k = rng.gen_range(1..=m.len());
        Menu::from_alternatives(
            best_first
                .iter()
                .copied()
                .filter(|a| m.contains(*a))
                .take(k),
        )
    })
    .expect("valid labels")
}

/// Random competition filter, built from large menus down: `Γ(A)` keeps
/// everything considered in an immediate superset and adds a random part.
/// Reaches every dataset satisfying `α`.
pub fn competition_filter(n: usize, rng: &mut impl Rng) -> ChoiceDataset {
    let mut gamma = vec![Menu::EMPTY; 1 << n];
    let mut menus: Vec<Menu> = all_menus(n).collect();
    menus.sort_by_key(|m| std::cmp::Reverse(m.len()));
    let ground = Menu::full(n);
    for a in menus {
        let required = ground.difference(a).members().fold(Menu::EMPTY, |acc, y| {
            acc.union(gamma[a.with(y).bits() as usize].intersection(a))
        });
        let mut chosen = required.union(random_subset(a, rng));
        if chosen.is_empty() {
            let members: Vec<Alternative> = a.members().collect();
            chosen = Menu::singleton(*members.choose(rng).expect("nonempty menu"));
        }
        gamma[a.bits() as usize] = chosen;
    }
    ChoiceDataset::from_fn(default_labels(n), |m| gamma[m.bits() as usize]).expect("valid labels")
}

/// `c(A)` = union of the maxima of 1–6 random linear orders; path
/// independent by construction.
pub fn union_of_maxima(n: usize, rng: &mut impl Rng) -> ChoiceDataset {
    let k = rng.gen_range(1..=6);
    let orders: Vec<Vec<Alternative>> = (0..k).map(|_| permutation(n, rng)).collect();
    ChoiceDataset::from_fn(default_labels(n), |m| {
        orders.iter().fold(Menu::EMPTY, |acc, o| {
            acc.with(*o.iter().find(|a| m.contains(**a)).expect("nonempty menu"))
        })
    })
    .expect("valid labels")
}

/// A random acyclic relation (forward edges of a random order, each with
/// probability 1/2).
pub fn random_dag(n: usize, rng: &mut impl Rng) -> Relation {
    let order = permutation(n, rng);
    let mut rel = Relation::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                rel.insert(order[i], order[j]);
            }
        }
    }
    rel
}

/// Maximization of a random acyclic relation.
pub fn dag_maxima(n: usize, rng: &mut impl Rng) -> ChoiceDataset {
    let rel = random_dag(n, rng);
    ChoiceDataset::from_fn(default_labels(n), |m| rel.maximal_in(m)).expect("valid labels")
}

pub fn uniform(n: usize, rng: &mut impl Rng) -> ChoiceDataset {
    Enumerator::with_n(n).expect("small n").sample(rng)
}

/// Draws from a mixture of the generators until `filters` all accept.
pub fn sample_filtered(n: usize, filters: &[Filter], rng: &mut impl Rng) -> Option<ChoiceDataset> {
    for _ in 0..100_000 {
        let c = match rng.gen_range(0..5) {
            0 => uniform(n, rng),
            1 => threshold_topk(n, rng),
            2 => competition_filter(n, rng),
            3 => union_of_maxima(n, rng),
            _ => dag_maxima(n, rng),
        };
        if filters.iter().all(|f| f.accepts(&c)) {
            return Some(c);
        }
    }
    None
}

/// Random weak order: random ranks, compressed.
pub fn weak_order(n: usize, rng: &mut impl Rng) -> WeakOrder {
    let ranks: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let mut used: Vec<usize> = ranks.clone();
    used.sort_unstable();
    used.dedup();
    let classes = used
        .iter()
        .map(|r| Menu::from_alternatives((0..n).filter(|&i| ranks[i] == *r).map(Alternative::new)))
        .collect();
    WeakOrder::from_classes(n, classes).expect("partition by rank")
}

pub fn lam(n: usize, rng: &mut impl Rng) -> Lam {
    Lam::new(weak_order(n, rng), competition_filter(n, rng)).expect("generated filter")
}

/// `u = (classes − rank)·spacing + jitter`, jitter in `1..spacing`; agrees
/// with the weak order. With `represent`, jitter is constant per class.
pub fn agreeing_utility(order: &WeakOrder, represent: bool, rng: &mut impl Rng) -> Utility {
    let k = order.classes().len() as i64;
    let spacing = 8i64;
    let class_jitter: Vec<i64> = (0..k).map(|_| rng.gen_range(1..spacing)).collect();
    let values = (0..order.n())
        .map(|i| {
            let r = order.rank(Alternative::new(i));
            let jitter = if represent {
                class_jitter[r]
            } else {
                rng.gen_range(1..spacing)
            };
            rational::int((k - r as i64) * spacing + jitter)
        })
        .collect();
    Utility::new(values).expect("positive")
}

/// A random positive utility with denominators at most 16.
pub fn utility(n: usize, rng: &mut impl Rng) -> Utility {
    let values = (0..n)
        .map(|_| rational::ratio(rng.gen_range(1..=64), rng.gen_range(1..=16)))
        .collect();
    Utility::new(values).expect("positive")
}
