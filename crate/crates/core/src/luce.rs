//! Logit and uniform second-stage rules, regularity, and witness utilities.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::axioms::{self, fast, relation_r};
use crate::dataset::ChoiceDataset;
use crate::error::{Error, Result};
use crate::menu::{all_menus, Alternative, Menu};
use crate::rational::{self, Rational};
use crate::relation::{LinearOrder, Relation};

/// A strictly positive utility per alternative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Utility {
    values: Vec<Rational>,
}

impl Utility {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_positive()) {
            return Err(Error::NonPositiveUtility {
                alternative: i.to_string(),
            });
        }
        Ok(Utility { values })
    }

    /// Like [`Utility::new`] but names the offending alternative by label.
    pub fn for_dataset(c: &ChoiceDataset, values: Vec<Rational>) -> Result<Self> {
        if values.len() != c.n() {
            return Err(Error::InvalidArgument(format!(
                "utility has {} values for {} alternatives",
                values.len(),
                c.n()
            )));
        }
        Utility::new(values).map_err(|e| match e {
            Error::NonPositiveUtility { alternative } => Error::NonPositiveUtility {
                alternative: c.labels()[alternative.parse::<usize>().unwrap_or(0)].clone(),
            },
            other => other,
        })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Utility::new(values.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn constant(n: usize) -> Self {
        Utility {
            values: vec![rational::one(); n],
        }
    }

    /// `u(x_i) = f(i)` for `i = 1..n` along `order` (worst first).
    pub fn along(order: &LinearOrder, f: impl Fn(usize) -> Rational) -> Result<Self> {
        let mut values = vec![rational::zero(); order.len()];
        for (i, a) in order.ascending().iter().enumerate() {
            values[a.index()] = f(i + 1);
        }
        Utility::new(values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, a: Alternative) -> &Rational {
        &self.values[a.index()]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn sum_over(&self, menu: Menu) -> Rational {
        rational::sum(menu.members().map(|a| self.get(a)))
    }
}

/// Choice probabilities per menu, exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StochasticChoice {
    n: usize,
    /// Indexed by menu bits, then by alternative index; empty when unobserved.
    probs: Vec<Vec<Rational>>,
}

impl StochasticChoice {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_defined(&self, menu: Menu) -> bool {
        !self.probs[menu.bits() as usize].is_empty()
    }

    pub fn is_total(&self) -> bool {
        all_menus(self.n).all(|m| self.is_defined(m))
    }

    /// `p(x, A)`; zero for `x ∉ A`.
    pub fn p(&self, x: Alternative, menu: Menu) -> Rational {
        self.probs[menu.bits() as usize]
            .get(x.index())
            .cloned()
            .unwrap_or_else(rational::zero)
    }

    pub fn support(&self, menu: Menu) -> Menu {
        Menu::from_alternatives(
            menu.members()
                .filter(|a| self.probs[menu.bits() as usize][a.index()].is_positive()),
        )
    }

    pub fn menus(&self) -> impl Iterator<Item = Menu> + '_ {
        all_menus(self.n).filter(|m| self.is_defined(*m))
    }

    pub fn distribution(&self, menu: Menu) -> BTreeMap<Alternative, Rational> {
        menu.members().map(|a| (a, self.p(a, menu))).collect()
    }
}

/// `p(x, A) = u(x) / Σ_{c(A)} u` on `c(A)`, zero elsewhere.
pub fn logit(c: &ChoiceDataset, u: &Utility) -> Result<StochasticChoice> {
    if u.len() != c.n() {
        return Err(Error::InvalidArgument(format!(
            "utility has {} values for {} alternatives",
            u.len(),
            c.n()
        )));
    }
    let mut probs = vec![Vec::new(); 1 << c.n()];
    for menu in c.observed_menus() {
        let chosen = c.c(menu);
        let total = u.sum_over(chosen);
        let mut row = vec![rational::zero(); c.n()];
        for a in chosen.members() {
            row[a.index()] = u.get(a) / &total;
        }
        probs[menu.bits() as usize] = row;
    }
    Ok(StochasticChoice { n: c.n(), probs })
}

/// The logit rule with `u ≡ 1`.
pub fn uniform(c: &ChoiceDataset) -> StochasticChoice {
    logit(c, &Utility::constant(c.n())).expect("constant utility has the right arity")
}

/// Pairs `x rel y` with `u(x) ≤ u(y)`; empty iff `u` is aligned with `rel`.
pub fn misaligned_pairs(u: &Utility, rel: &Relation) -> Vec<(Alternative, Alternative)> {
    rel.pairs()
        .into_iter()
        .filter(|(x, y)| u.get(*x) <= u.get(*y))
        .collect()
}

pub fn is_aligned(u: &Utility, rel: &Relation) -> bool {
    rel.pairs().into_iter().all(|(x, y)| u.get(x) > u.get(y))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegularityViolation {
    pub x: Alternative,
    pub a: Menu,
    pub b: Menu,
}

/// Every `(x, A, B)` with `x ∈ A ⊆ B` and `p(x, A) < p(x, B)`.
pub fn regularity_violations(p: &StochasticChoice) -> Result<Vec<RegularityViolation>> {
    if !p.is_total() {
        return Err(Error::PartialDataset);
    }
    let mut out = Vec::new();
    for b in all_menus(p.n) {
        for a in b.submenus() {
            if a == b {
                continue;
            }
            for x in a.members() {
                if p.p(x, a) < p.p(x, b) {
                    out.push(RegularityViolation { x, a, b });
                }
            }
        }
    }
    Ok(out)
}

/// Per-menu chosen-set utility sums, indexed by menu bits.
pub(crate) fn chosen_sums(c: &ChoiceDataset, u: &Utility) -> Vec<Rational> {
    let mut sums = vec![rational::zero(); 1 << c.n()];
    for m in all_menus(c.n()) {
        sums[m.bits() as usize] = u.sum_over(c.c(m));
    }
    sums
}

/// Regularity of `logit(c, u)` decided without forming probabilities:
/// for `x ∈ A ∩ c(B)` a violation occurs iff `x ∉ c(A)` or `Σ_{c(A)} u > Σ_{c(B)} u`.
pub fn logit_is_regular(c: &ChoiceDataset, u: &Utility) -> bool {
    let sums = chosen_sums(c, u);
    all_menus(c.n()).all(|b| {
        let cb = c.c(b);
        b.submenus().all(|a| {
            let shared = cb.intersection(a);
            shared.is_empty()
                || (shared.is_subset_of(c.c(a))
                    && sums[a.bits() as usize] <= sums[b.bits() as usize])
        })
    })
}

/// The lexicographically smallest linear extension of the revealed relation.
pub fn r_extension(c: &ChoiceDataset) -> Result<LinearOrder> {
    let r = relation_r(c);
    r.require_acyclic(c.labels())?;
    r.first_linear_extension()
}

/// `u(x_i) = 2^i` along `order`.
pub fn power_utility(order: &LinearOrder) -> Utility {
    Utility::along(order, |i| rational::pow(2, i as i32)).expect("powers of two are positive")
}

/// `u(x_i) = 1 + (i-1) / (n(n+1))` along `order`: aligned with the order and
/// spread strictly less than `1/(n+1)`.
pub fn near_uniform_utility(order: &LinearOrder) -> Utility {
    let n = order.len() as i64;
    Utility::along(order, |i| {
        rational::one() + rational::ratio(i as i64 - 1, n * (n + 1))
    })
    .expect("values are at least one")
}

/// A regular aligned logit rule built from powers of two along an extension
/// of the revealed relation; `None` when path independence fails.
pub fn witness_regular_logit(c: &ChoiceDataset) -> Result<Option<Utility>> {
    c.require_total()?;
    // without path independence no witness exists, whatever R looks like
    if !fast::path_independence(c) {
        return Ok(None);
    }
    let order = r_extension(c)?;
    let u = power_utility(&order);
    if !logit_is_regular(c, &u) {
        return Err(Error::Inconsistent(
            "power-of-two utility on a path-independent dataset is irregular".into(),
        ));
    }
    Ok(Some(u))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllAlignedResult {
    pub holds: bool,
    pub counterexample: Option<Utility>,
}

/// Whether every aligned logit rule is regular (`α ∧ θ`); otherwise an
/// aligned near-uniform utility producing a violation.
pub fn all_aligned_regular(c: &ChoiceDataset) -> Result<AllAlignedResult> {
    c.require_total()?;
    let order = r_extension(c)?;
    if fast::alpha(c) && fast::theta(c) {
        return Ok(AllAlignedResult {
            holds: true,
            counterexample: None,
        });
    }
    let u = near_uniform_utility(&order);
    if logit_is_regular(c, &u) {
        return Err(Error::Inconsistent(
            "near-uniform utility is regular although alpha or theta fails".into(),
        ));
    }
    Ok(AllAlignedResult {
        holds: false,
        counterexample: Some(u),
    })
}

/// A β-failure `(x, y, A, B)`: `A ⊆ B`, `x, y ∈ c(A)`, `x ∈ c(B)`, `y ∉ c(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaCounterexample {
    pub utility: Utility,
    pub x: Alternative,
    pub y: Alternative,
    pub a: Menu,
    pub b: Menu,
    pub epsilon: Rational,
}

/// Largest `1/2^k`, `k ≥ 1`, with `ε|c(B)| < 1 − ε + ε|c(A)|` and `ε(n−1) < 1`.
fn beta_epsilon(ca: usize, cb: usize, n: usize) -> Rational {
    let (ca, cb, n) = (
        rational::int(ca as i64),
        rational::int(cb as i64),
        rational::int(n as i64),
    );
    let one = rational::one();
    (1..)
        .map(|k| rational::pow(2, -k))
        .find(|e| e * &cb < &one - e + e * &ca && e * (&n - &one) < one)
        .expect("small enough epsilon exists")
}

/// When β fails, a utility (`u(y) = 1`, every other alternative `ε`) whose
/// logit rule violates regularity at `(x, A, B)`.
pub fn beta_counterexample(c: &ChoiceDataset) -> Result<Option<BetaCounterexample>> {
    let report = axioms::check_axiom_capped(c, axioms::Axiom::Beta, 1)?;
    let Some(w) = report.witnesses.first() else {
        return Ok(None);
    };
    let (x, y, a, b) = (w.x.unwrap(), w.y.unwrap(), w.a, w.b.unwrap());
    let eps = beta_epsilon(c.c(a).len(), c.c(b).len(), c.n());
    let values = (0..c.n())
        .map(|i| {
            if i == y.index() {
                rational::one()
            } else {
                eps.clone()
            }
        })
        .collect();
    let utility = Utility::new(values)?;
    let p = logit(c, &utility)?;
    if p.p(x, a) >= p.p(x, b) {
        return Err(Error::Inconsistent(
            "beta counterexample utility does not violate regularity".into(),
        ));
    }
    Ok(Some(BetaCounterexample {
        utility,
        x,
        y,
        a,
        b,
        epsilon: eps,
    }))
}
