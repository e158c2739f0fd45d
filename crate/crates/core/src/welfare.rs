//! Welfare of menus, cumulative choice distributions, first-order stochastic
//! dominance over every linear extension of a relation, and choice overload.
//!
//! Dominance "for every linear extension and every alternative" is decided
//! through upper sets: the sets `{b : b ⪰ a}` arising in some extension are
//! exactly the nonempty up-closed sets of the relation.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms::{fast, relation_r};
use crate::dataset::ChoiceDataset;
use crate::error::{Error, Result};
use crate::luce::{logit, misaligned_pairs, regularity_violations, StochasticChoice, Utility};
use crate::menu::{Alternative, Menu};
use crate::rational::{self, Rational};
use crate::relation::{LinearOrder, Relation};

/// `W(A) = Σ_{c(A)} u² / Σ_{c(A)} u`.
pub fn welfare_value(c: &ChoiceDataset, u: &Utility, menu: Menu) -> Rational {
    let chosen = c.c(menu);
    let num = rational::sum(
        chosen
            .members()
            .map(|a| u.get(a) * u.get(a))
            .collect::<Vec<_>>()
            .iter(),
    );
    num / u.sum_over(chosen)
}

/// `Σ_{a ∈ menu} w(a) p(a, A)` for a fixed rule `p` and evaluation utility `w`.
pub fn expected_utility(p: &StochasticChoice, w: &Utility, menu: Menu) -> Rational {
    menu.members()
        .map(|a| w.get(a) * p.p(a, menu))
        .fold(rational::zero(), |acc, t| acc + t)
}

/// `Γ(a, A) = Σ_{b ⪰ a} p(b, A)`.
pub fn cumulative(
    p: &StochasticChoice,
    menu: Menu,
    order: &LinearOrder,
    a: Alternative,
) -> Rational {
    mass(p, menu, order.upper_set(a))
}

fn mass(p: &StochasticChoice, menu: Menu, set: Menu) -> Rational {
    set.intersection(menu)
        .members()
        .map(|b| p.p(b, menu))
        .fold(rational::zero(), |acc, t| acc + t)
}

/// Nonempty up-closed sets of `rel` (closed under predecessors).
pub fn upper_sets(rel: &Relation) -> Vec<Menu> {
    let n = rel.n();
    let preds: Vec<Menu> = (0..n)
        .map(|i| rel.predecessors(Alternative::new(i)))
        .collect();
    crate::menu::all_menus(n)
        .filter(|u| u.members().all(|y| preds[y.index()].is_subset_of(*u)))
        .collect()
}

/// A linear extension of `rel` that places `upper` above everything else,
/// and the lowest member of `upper` in it.
pub(crate) fn order_with_top(rel: &Relation, upper: Menu) -> Result<(LinearOrder, Alternative)> {
    let mut aug = rel.clone();
    let rest = Menu::full(rel.n()).difference(upper);
    for a in upper.members() {
        aug.insert_all(a, rest);
    }
    let order = aug.first_linear_extension()?;
    let low = order.ascending()[rel.n() - upper.len()];
    Ok((order, low))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FosdResult {
    pub holds: bool,
    /// An extension and alternative `a` with `Γ(a, A) < Γ(a, B)`.
    pub witness: Option<(LinearOrder, Alternative)>,
    /// The failing upper set `{b ⪰ a}`.
    pub failing_set: Option<Menu>,
}

/// Whether `p(A)` first-order stochastically dominates `p(B)` for every
/// linear extension of `rel`.
pub fn fosd(p: &StochasticChoice, a: Menu, b: Menu, rel: &Relation) -> Result<FosdResult> {
    if let Some(cycle) = rel.find_cycle() {
        return Err(Error::CyclicRelation {
            cycle: cycle.iter().map(|x| x.0.to_string()).collect(),
        });
    }
    for upper in upper_sets(rel) {
        if mass(p, a, upper) < mass(p, b, upper) {
            let witness = order_with_top(rel, upper)?;
            return Ok(FosdResult {
                holds: false,
                witness: Some(witness),
                failing_set: Some(upper),
            });
        }
    }
    Ok(FosdResult {
        holds: true,
        witness: None,
        failing_set: None,
    })
}

/// Reference implementation: literally every extension and every alternative.
pub fn fosd_by_extensions(p: &StochasticChoice, a: Menu, b: Menu, rel: &Relation) -> Result<bool> {
    for order in rel.linear_extensions()? {
        for x in order.ascending() {
            if cumulative(p, a, &order, *x) < cumulative(p, b, &order, *x) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `A` welfare dominates `B` under `logit(c, u)`: every evaluation utility
/// aligned with `rel` weakly prefers `p(A)`. Decided through dominance;
/// seeded samples of aligned evaluation utilities are checked as well.
pub fn welfare_dominates(
    c: &ChoiceDataset,
    u: &Utility,
    a: Menu,
    b: Menu,
    rel: &Relation,
) -> Result<bool> {
    let p = logit(c, u)?;
    let res = fosd(&p, a, b, rel)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.bits() as u64 ^ ((b.bits() as u64) << 32));
    for _ in 0..32 {
        let w = sample_aligned(rel, &mut rng, 16)?;
        let gap = expected_utility(&p, &w, a) - expected_utility(&p, &w, b);
        if res.holds && gap < rational::zero() {
            return Err(Error::Inconsistent(
                "dominance holds but a sampled aligned utility reverses it".into(),
            ));
        }
    }
    if let (false, Some(upper)) = (res.holds, res.failing_set) {
        let w = reversal_utility(&p, a, b, rel, upper)?;
        if expected_utility(&p, &w, a) >= expected_utility(&p, &w, b) {
            return Err(Error::Inconsistent(
                "dominance fails but the reversal utility does not reverse".into(),
            ));
        }
    }
    Ok(res.holds)
}

/// A random utility aligned with `rel`: random extension, then strictly
/// increasing values with denominators at most `max_den`.
pub fn sample_aligned(rel: &Relation, rng: &mut impl Rng, max_den: i64) -> Result<Utility> {
    let n = rel.n();
    // random topological order: repeatedly pick a random available minimum
    let mut placed = Menu::EMPTY;
    let mut asc = Vec::with_capacity(n);
    while asc.len() < n {
        let ready: Vec<Alternative> = (0..n)
            .map(Alternative::new)
            .filter(|x| !placed.contains(*x) && rel.successors(*x).is_subset_of(placed))
            .collect();
        if ready.is_empty() {
            return Err(Error::CyclicRelation { cycle: Vec::new() });
        }
        let pick = ready[rng.gen_range(0..ready.len())];
        placed = placed.with(pick);
        asc.push(pick);
    }
    let order = LinearOrder::from_ascending(asc)?;
    let mut value = rational::zero();
    let mut steps = Vec::with_capacity(n);
    for _ in 0..n {
        let den = rng.gen_range(1..=max_den);
        let num = rng.gen_range(1..=2 * max_den);
        value += rational::ratio(num, den);
        steps.push(value.clone());
    }
    Utility::along(&order, |i| steps[i - 1].clone())
}

/// Evaluation utility `w = K·[b ∈ U] + rank(b)`, aligned with `rel`, that
/// strictly prefers `p(B)` to `p(A)` when `p(A)` puts less mass on the
/// upper set `U`.
pub(crate) fn reversal_utility(
    p: &StochasticChoice,
    a: Menu,
    b: Menu,
    rel: &Relation,
    upper: Menu,
) -> Result<Utility> {
    let n = rel.n() as i64;
    let gap = mass(p, b, upper) - mass(p, a, upper);
    let k = rational::int(n) / gap + rational::one();
    let (order, _) = order_with_top(rel, upper)?;
    let asc = order.ascending().to_vec();
    Utility::along(&order, |i| {
        let base = rational::int(i as i64);
        if upper.contains(asc[i - 1]) {
            base + &k
        } else {
            base
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    WelfareIncreasing,
    WelfareDecreasing,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::WelfareIncreasing => "welfare_increasing",
            Classification::WelfareDecreasing => "welfare_decreasing",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverloadViolation {
    pub x: Alternative,
    pub a: Menu,
    pub b: Menu,
    pub classification: Classification,
    /// For decreasing violations: an aligned utility with `W(A) > W(B)`.
    pub witness_utility: Option<Utility>,
    pub witness_order: Option<LinearOrder>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverloadReport {
    pub overload: bool,
    pub violations: Vec<OverloadViolation>,
}

/// Searches utilities concentrated on an upper set (values `1 + iδ` on it,
/// `η(1 + iδ)` below) for one with `W(A) > W(B)` under its own logit rule.
fn overload_witness(
    c: &ChoiceDataset,
    a: Menu,
    b: Menu,
    rel: &Relation,
    hint: Option<Menu>,
) -> Result<Option<(Utility, LinearOrder)>> {
    let mut candidates: Vec<Menu> = Vec::new();
    candidates.extend(hint);
    // up-closure of c(A)
    let mut closure = c.c(a);
    loop {
        let next = closure
            .members()
            .fold(closure, |acc, y| acc.union(rel.predecessors(y)));
        if next == closure {
            break;
        }
        closure = next;
    }
    candidates.push(closure);
    candidates.extend(upper_sets(rel));
    let mut tried = std::collections::HashSet::new();
    for upper in candidates {
        if !tried.insert(upper) {
            continue;
        }
        let (order, _) = order_with_top(rel, upper)?;
        let asc = order.ascending().to_vec();
        for k in 1..=8 {
            let delta = rational::pow(2, -k);
            for e in 1..=8 {
                let eta = rational::pow(2, -e);
                let u = Utility::along(&order, |i| {
                    let base = rational::one() + &delta * rational::int(i as i64);
                    if upper.contains(asc[i - 1]) {
                        base
                    } else {
                        base * &eta
                    }
                })?;
                if welfare_value(c, &u, a) > welfare_value(c, &u, b) {
                    return Ok(Some((u, order)));
                }
            }
        }
    }
    Ok(None)
}

type ClassifiedPair = (Classification, Option<(Utility, LinearOrder)>);

/// Classifies every regularity violation of `logit(c, u)`: welfare
/// increasing iff `p(B)` dominates `p(A)` over every extension of `rel`.
/// No alignment of `u` is assumed.
pub fn classify_violations(
    c: &ChoiceDataset,
    u: &Utility,
    rel: &Relation,
) -> Result<OverloadReport> {
    let p = logit(c, u)?;
    let raw = regularity_violations(&p)?;
    let mut out = Vec::with_capacity(raw.len());
    let mut cache: HashMap<(Menu, Menu), ClassifiedPair> = HashMap::new();
    for v in raw {
        if let Entry::Vacant(slot) = cache.entry((v.a, v.b)) {
            let res = fosd(&p, v.b, v.a, rel)?;
            let entry = if res.holds {
                (Classification::WelfareIncreasing, None)
            } else {
                let found = overload_witness(c, v.a, v.b, rel, res.failing_set)?;
                if found.is_none() {
                    return Err(Error::Inconsistent(format!(
                        "no utility with W({}) > W({}) found for a welfare-decreasing violation",
                        c.format_menu(v.a),
                        c.format_menu(v.b)
                    )));
                }
                (Classification::WelfareDecreasing, found)
            };
            slot.insert(entry);
        }
        let (class, witness) = &cache[&(v.a, v.b)];
        out.push(OverloadViolation {
            x: v.x,
            a: v.a,
            b: v.b,
            classification: *class,
            witness_utility: witness.as_ref().map(|w| w.0.clone()),
            witness_order: witness.as_ref().map(|w| w.1.clone()),
        });
    }
    Ok(OverloadReport {
        overload: out
            .iter()
            .any(|v| v.classification == Classification::WelfareDecreasing),
        violations: out,
    })
}

/// Choice overload for an aligned logit rule on data with acyclic `R`;
/// the verdict is cross-checked against property `α`.
pub fn detect_overload(c: &ChoiceDataset, u: &Utility) -> Result<OverloadReport> {
    c.require_total()?;
    let r = relation_r(c);
    r.require_acyclic(c.labels())?;
    let bad = misaligned_pairs(u, &r);
    if !bad.is_empty() {
        return Err(Error::Misaligned {
            pairs: bad
                .into_iter()
                .map(|(x, y)| (c.label(x).to_string(), c.label(y).to_string()))
                .collect(),
        });
    }
    let report = classify_violations(c, u, &r)?;
    if report.overload == fast::alpha(c) {
        return Err(Error::Inconsistent(format!(
            "overload = {} but alpha = {}",
            report.overload,
            fast::alpha(c)
        )));
    }
    Ok(report)
}
