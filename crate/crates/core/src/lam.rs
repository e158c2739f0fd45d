//! Limited attention models: a weak order plus a competition filter
//! (consideration sets that survive menu shrinkage), the choices they induce,
//! and overload analysis of the induced logit rules.

use std::collections::HashSet;

use crate::axioms::{fast, relation_r};
use crate::dataset::ChoiceDataset;
use crate::error::{Error, Result};
use crate::luce::{is_aligned, logit, regularity_violations, StochasticChoice, Utility};
use crate::menu::{all_menus, Alternative, Menu};
use crate::rational::{self, Rational};
use crate::relation::Relation;
use crate::welfare::{
    fosd, order_with_top, reversal_utility, Classification, OverloadReport, OverloadViolation,
};

/// A total preorder as ordered indifference classes, best class first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakOrder {
    n: usize,
    classes: Vec<Menu>,
}

impl WeakOrder {
    pub fn from_classes(n: usize, classes: Vec<Menu>) -> Result<Self> {
        let mut seen = Menu::EMPTY;
        for class in &classes {
            if class.is_empty() || !class.intersection(seen).is_empty() {
                return Err(Error::InvalidArgument(
                    "indifference classes must be nonempty and disjoint".into(),
                ));
            }
            seen = seen.union(*class);
        }
        if seen != Menu::full(n) {
            return Err(Error::InvalidArgument(
                "indifference classes must cover every alternative".into(),
            ));
        }
        Ok(WeakOrder { n, classes })
    }

    /// Everything indifferent.
    pub fn total_indifference(n: usize) -> Self {
        WeakOrder {
            n,
            classes: vec![Menu::full(n)],
        }
    }

    /// Singleton classes, best first.
    pub fn strict(best_first: &[Alternative]) -> Result<Self> {
        Self::from_classes(
            best_first.len(),
            best_first.iter().map(|a| Menu::singleton(*a)).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[Menu] {
        &self.classes
    }

    /// Class index of `a`; 0 is the best class.
    pub fn rank(&self, a: Alternative) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(a))
            .expect("classes cover the ground set")
    }

    pub fn strictly_prefers(&self, a: Alternative, b: Alternative) -> bool {
        self.rank(a) < self.rank(b)
    }

    pub fn indifferent(&self, a: Alternative, b: Alternative) -> bool {
        self.rank(a) == self.rank(b)
    }

    /// The asymmetric part `≻` as a relation.
    pub fn strict_relation(&self) -> Relation {
        let mut rel = Relation::empty(self.n);
        for (i, upper) in self.classes.iter().enumerate() {
            let below = self.classes[i + 1..]
                .iter()
                .fold(Menu::EMPTY, |acc, c| acc.union(*c));
            for a in upper.members() {
                rel.insert_all(a, below);
            }
        }
        rel
    }

    /// The best elements of `menu`.
    pub fn best(&self, menu: Menu) -> Menu {
        self.classes
            .iter()
            .map(|c| c.intersection(menu))
            .find(|m| !m.is_empty())
            .unwrap_or(Menu::EMPTY)
    }

    /// Pairs `(x, y)` with `x ≻ y` but `u(x) ≤ u(y)`.
    pub fn disagreements(&self, u: &Utility) -> Vec<(Alternative, Alternative)> {
        self.strict_relation()
            .pairs()
            .into_iter()
            .filter(|(x, y)| u.get(*x) <= u.get(*y))
            .collect()
    }

    /// `x ≻ y ⇒ u(x) > u(y)`.
    pub fn agrees_with(&self, u: &Utility) -> bool {
        self.disagreements(u).is_empty()
    }

    /// `u` represents the order exactly: also `x ∼ y ⇒ u(x) = u(y)`.
    pub fn represented_by(&self, u: &Utility) -> bool {
        self.agrees_with(u)
            && self.classes.iter().all(|c| {
                let first = c.first().expect("nonempty class");
                c.members().all(|a| u.get(a) == u.get(first))
            })
    }

    /// Every weak order on `n` alternatives (ordered set partitions).
    pub fn all(n: usize) -> Vec<WeakOrder> {
        let mut out = Vec::new();
        let mut ranks = vec![0usize; n];
        fn rec(i: usize, n: usize, ranks: &mut Vec<usize>, out: &mut Vec<WeakOrder>) {
            if i == n {
                let k = ranks.iter().copied().max().map_or(0, |m| m + 1);
                let mut classes = vec![Menu::EMPTY; k];
                for (a, &r) in ranks.iter().enumerate() {
                    classes[r] = classes[r].with(Alternative::new(a));
                }
                if classes.iter().all(|c| !c.is_empty()) {
                    out.push(WeakOrder { n, classes });
                }
                return;
            }
            for r in 0..n {
                ranks[i] = r;
                rec(i + 1, n, ranks, out);
            }
        }
        rec(0, n, &mut ranks, &mut out);
        out
    }
}

/// Witness `x ∈ A ⊂ B`, `x ∈ Γ(B)`, `x ∉ Γ(A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FilterViolation {
    pub x: Alternative,
    pub a: Menu,
    pub b: Menu,
}

/// Checks the competition-filter property exhaustively over menu pairs.
pub fn is_competition_filter(consideration: &ChoiceDataset) -> Result<Option<FilterViolation>> {
    consideration.require_total()?;
    let n = consideration.n();
    for b in all_menus(n) {
        let gb = consideration.c(b);
        for a in b.submenus() {
            if a == b || a.is_empty() {
                continue;
            }
            let lost = gb.intersection(a).difference(consideration.c(a));
            if let Some(x) = lost.first() {
                return Ok(Some(FilterViolation { x, a, b }));
            }
        }
    }
    Ok(None)
}

/// A limited attention model `(⪰, Γ)`; `Γ` is stored as a total dataset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lam {
    weak_order: WeakOrder,
    consideration: ChoiceDataset,
}

impl Lam {
    pub fn new(weak_order: WeakOrder, consideration: ChoiceDataset) -> Result<Self> {
        if weak_order.n() != consideration.n() {
            return Err(Error::InvalidArgument(
                "weak order and consideration map have different ground sets".into(),
            ));
        }
        if let Some(v) = is_competition_filter(&consideration)? {
            return Err(Error::InvalidArgument(format!(
                "not a competition filter: {} considered in {} but not in {}",
                consideration.label(v.x),
                consideration.format_menu(v.b),
                consideration.format_menu(v.a)
            )));
        }
        Ok(Lam {
            weak_order,
            consideration,
        })
    }

    pub fn weak_order(&self) -> &WeakOrder {
        &self.weak_order
    }

    pub fn consideration(&self) -> &ChoiceDataset {
        &self.consideration
    }

    pub fn labels(&self) -> &[String] {
        self.consideration.labels()
    }
}

/// `c(A)` = the best considered alternatives of `A`.
pub fn lam_choice(model: &Lam) -> ChoiceDataset {
    let gamma = &model.consideration;
    ChoiceDataset::from_fn(gamma.labels().to_vec(), |a| {
        model.weak_order.best(gamma.c(a))
    })
    .expect("labels already validated; best of a nonempty set is nonempty")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrivialLam {
    /// `Γ = c` with total indifference; reproduces `c` exactly.
    Found(Lam),
    /// `α` fails while `R` is acyclic: no limited attention model exists.
    AlphaViolated,
    /// `R` is cyclic: outside threshold-Luce scope, no answer given.
    CyclicR,
}

impl TrivialLam {
    pub fn reason(&self) -> &'static str {
        match self {
            TrivialLam::Found(_) => "found",
            TrivialLam::AlphaViolated => "alpha_violated",
            TrivialLam::CyclicR => "cyclic_R",
        }
    }

    pub fn lam(&self) -> Option<&Lam> {
        match self {
            TrivialLam::Found(m) => Some(m),
            _ => None,
        }
    }
}

/// The model with `Γ = c` and total indifference, whenever `c` satisfies `α`
/// (no restriction on `R`).
pub fn alpha_lam(c: &ChoiceDataset) -> Result<Option<Lam>> {
    c.require_total()?;
    if !fast::alpha(c) {
        return Ok(None);
    }
    let model = Lam::new(WeakOrder::total_indifference(c.n()), c.clone())?;
    if lam_choice(&model) != *c {
        return Err(Error::Inconsistent(
            "trivial model does not reproduce the data".into(),
        ));
    }
    Ok(Some(model))
}

/// Limited attention representation within threshold-Luce scope.
pub fn trivial_lam(c: &ChoiceDataset) -> Result<TrivialLam> {
    c.require_total()?;
    if !relation_r(c).is_acyclic() {
        return Ok(TrivialLam::CyclicR);
    }
    Ok(match alpha_lam(c)? {
        Some(model) => TrivialLam::Found(model),
        None => TrivialLam::AlphaViolated,
    })
}

/// Every competition filter over `labels` (small ground sets only).
pub fn competition_filters(labels: Vec<String>) -> Result<Vec<ChoiceDataset>> {
    let all = crate::oracle::enumerate_correspondences(labels)?;
    let mut out = Vec::new();
    for gamma in all {
        if is_competition_filter(&gamma)?.is_none() {
            out.push(gamma);
        }
    }
    Ok(out)
}

/// Every model over `labels`: weak orders × competition filters.
pub fn all_lams(labels: Vec<String>) -> Result<Vec<Lam>> {
    let filters = competition_filters(labels.clone())?;
    let mut out = Vec::new();
    for order in WeakOrder::all(labels.len()) {
        for gamma in &filters {
            out.push(Lam {
                weak_order: order.clone(),
                consideration: gamma.clone(),
            });
        }
    }
    Ok(out)
}

/// Every distinct choice correspondence some model over `labels` induces.
pub fn lam_generated(labels: Vec<String>) -> Result<HashSet<ChoiceDataset>> {
    Ok(all_lams(labels)?.iter().map(lam_choice).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WelfareMode {
    /// Utilities agreeing with `≻`.
    Agreeing,
    /// Utilities representing `⪰` exactly (constant on indifference classes).
    Representing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverloadBranch {
    AlphaViolated,
    /// `α` holds, `R` acyclic and `u` aligned with `R`.
    Gtlm,
    MisalignedUtility,
    CyclicR,
}

impl OverloadBranch {
    pub fn name(self) -> &'static str {
        match self {
            OverloadBranch::AlphaViolated => "alpha_violated",
            OverloadBranch::Gtlm => "gtlm",
            OverloadBranch::MisalignedUtility => "misaligned_utility",
            OverloadBranch::CyclicR => "cyclic_R",
        }
    }
}

/// Which family of upper sets decided welfare dominance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WelfareRelation {
    /// Linear extensions of the revealed relation `R`.
    Revealed,
    /// Linear extensions of `≻`.
    StrictPart,
    /// Unions of top indifference classes.
    Classes,
}

impl WelfareRelation {
    pub fn name(self) -> &'static str {
        match self {
            WelfareRelation::Revealed => "revealed_R",
            WelfareRelation::StrictPart => "weak_order_strict_part",
            WelfareRelation::Classes => "indifference_classes",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LamOverloadReport {
    pub mode: WelfareMode,
    pub branch: OverloadBranch,
    pub relation: WelfareRelation,
    pub alpha: bool,
    pub choice: ChoiceDataset,
    /// Decreasing violations carry an evaluation utility `w` (consistent with
    /// the welfare relation) with `Σ w p(A) > Σ w p(B)` under the fixed rule.
    pub report: OverloadReport,
}

fn class_mass(p: &StochasticChoice, menu: Menu, top: Menu) -> Rational {
    top.intersection(menu)
        .members()
        .map(|b| p.p(b, menu))
        .fold(rational::zero(), |acc, t| acc + t)
}

/// Overload analysis of `logit(lam_choice(model), u)`. In `Gtlm` branch of
/// the agreeing mode dominance is over extensions of `R`; otherwise over
/// extensions of `≻`. The representing mode compares class-level
/// distributions.
pub fn lam_overload(model: &Lam, u: &Utility, mode: WelfareMode) -> Result<LamOverloadReport> {
    let c = lam_choice(model);
    let order = &model.weak_order;
    if u.len() != c.n() {
        return Err(Error::InvalidArgument(
            "utility has the wrong number of values".into(),
        ));
    }
    let bad = order.disagreements(u);
    if !bad.is_empty() {
        return Err(Error::Misaligned {
            pairs: bad
                .into_iter()
                .map(|(x, y)| (c.label(x).to_string(), c.label(y).to_string()))
                .collect(),
        });
    }
    if mode == WelfareMode::Representing && !order.represented_by(u) {
        return Err(Error::InvalidArgument(
            "utility is not constant on an indifference class".into(),
        ));
    }
    let alpha = fast::alpha(&c);
    let r = relation_r(&c);
    let branch = if !alpha {
        OverloadBranch::AlphaViolated
    } else if !r.is_acyclic() {
        OverloadBranch::CyclicR
    } else if !is_aligned(u, &r) {
        OverloadBranch::MisalignedUtility
    } else {
        OverloadBranch::Gtlm
    };
    let relation = match (mode, branch) {
        (WelfareMode::Representing, _) => WelfareRelation::Classes,
        (_, OverloadBranch::Gtlm) => WelfareRelation::Revealed,
        _ => WelfareRelation::StrictPart,
    };
    let p = logit(&c, u)?;
    let rel = match relation {
        WelfareRelation::Revealed => r,
        _ => order.strict_relation(),
    };
    let mut violations = Vec::new();
    let mut cache = std::collections::HashMap::new();
    for v in regularity_violations(&p)? {
        let entry = match cache.get(&(v.a, v.b)) {
            Some(e) => Clone::clone(e),
            None => {
                let e = classify_pair(&p, v.a, v.b, order, &rel, relation)?;
                cache.insert((v.a, v.b), e.clone());
                e
            }
        };
        violations.push(OverloadViolation {
            x: v.x,
            a: v.a,
            b: v.b,
            classification: entry.0,
            witness_utility: entry.1.clone(),
            witness_order: entry.2.clone(),
        });
    }
    let overload = violations
        .iter()
        .any(|v| v.classification == Classification::WelfareDecreasing);
    Ok(LamOverloadReport {
        mode,
        branch,
        relation,
        alpha,
        choice: c,
        report: OverloadReport {
            overload,
            violations,
        },
    })
}

type PairClass = (
    Classification,
    Option<Utility>,
    Option<crate::relation::LinearOrder>,
);

fn classify_pair(
    p: &StochasticChoice,
    a: Menu,
    b: Menu,
    order: &WeakOrder,
    rel: &Relation,
    relation: WelfareRelation,
) -> Result<PairClass> {
    if relation == WelfareRelation::Classes {
        let k = order.classes().len();
        let mut top = Menu::EMPTY;
        for (i, class) in order.classes().iter().enumerate() {
            top = top.union(*class);
            let gap = class_mass(p, a, top) - class_mass(p, b, top);
            if gap > rational::zero() {
                // w = (k − rank) + K·[rank ≤ i] reverses the comparison
                let big = rational::int(k as i64) / gap + rational::one();
                let w = Utility::new(
                    (0..order.n())
                        .map(|x| {
                            let r = order.rank(Alternative::new(x));
                            let base = rational::int((k - r) as i64);
                            if r <= i {
                                base + &big
                            } else {
                                base
                            }
                        })
                        .collect(),
                )?;
                return Ok((Classification::WelfareDecreasing, Some(w), None));
            }
        }
        return Ok((Classification::WelfareIncreasing, None, None));
    }
    let res = fosd(p, b, a, rel)?;
    match res.failing_set {
        None => Ok((Classification::WelfareIncreasing, None, None)),
        Some(upper) => {
            let w = reversal_utility(p, b, a, rel, upper)?;
            let (ext, _) = order_with_top(rel, upper)?;
            Ok((Classification::WelfareDecreasing, Some(w), Some(ext)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::luce::beta_counterexample;
    use crate::oracle::default_labels;
    use crate::welfare::expected_utility;

    fn alt(i: usize) -> Alternative {
        Alternative::new(i)
    }

    /// x ≻ y ≻ z, Γ({x,y,z}) = {y}, identity elsewhere.
    fn attention_example() -> Lam {
        let labels = default_labels(3);
        let gamma = ChoiceDataset::from_fn(labels, |m| {
            if m == Menu::full(3) {
                Menu::singleton(alt(1))
            } else {
                m
            }
        })
        .unwrap();
        Lam::new(WeakOrder::strict(&[alt(0), alt(1), alt(2)]).unwrap(), gamma).unwrap()
    }

    #[test]
    fn weak_orders_counted() {
        // ordered Bell (Fubini) numbers
        let counts: Vec<usize> = (1..=4).map(|n| WeakOrder::all(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 13, 75]);
    }

    #[test]
    fn strict_part_is_transitive_and_acyclic() {
        for order in WeakOrder::all(3) {
            let rel = order.strict_relation();
            assert!(rel.is_acyclic());
            for (x, y) in rel.pairs() {
                assert!(order.strictly_prefers(x, y));
            }
        }
    }

    #[test]
    fn identity_is_filter() {
        let id = ChoiceDataset::from_fn(default_labels(3), |m| m).unwrap();
        assert_eq!(is_competition_filter(&id).unwrap(), None);
    }

    #[test]
    fn example_filter_and_choices() {
        let model = attention_example();
        let c = lam_choice(&model);
        assert_eq!(c.c(Menu::full(3)), Menu::singleton(alt(1)));
        assert_eq!(
            c.c(c.menu_of(&["x", "y"]).unwrap()),
            Menu::singleton(alt(0))
        );
        assert!(!fast::alpha(&c));
        assert!(!relation_r(&c).is_acyclic());
        assert_eq!(trivial_lam(&c).unwrap(), TrivialLam::CyclicR);
    }

    #[test]
    fn non_filter_rejected() {
        // x considered in {x,y,z} but not in {x,y}
        let gamma = ChoiceDataset::from_fn(default_labels(3), |m| {
            if m.len() == 2 && m.contains(alt(0)) && m.contains(alt(1)) {
                Menu::singleton(alt(1))
            } else {
                m
            }
        })
        .unwrap();
        let v = is_competition_filter(&gamma).unwrap().unwrap();
        assert_eq!(v.x, alt(0));
        assert!(Lam::new(WeakOrder::total_indifference(3), gamma).is_err());
    }

    #[test]
    fn filter_iff_alpha_n3() {
        for c in crate::oracle::enumerate_correspondences(default_labels(3)).unwrap() {
            assert_eq!(
                is_competition_filter(&c).unwrap().is_none(),
                fast::alpha(&c)
            );
        }
    }

    #[test]
    fn chosen_together_are_indifferent() {
        for model in all_lams(default_labels(3)).unwrap() {
            let c = lam_choice(&model);
            for m in all_menus(3) {
                let chosen = c.c(m);
                let first = chosen.first().unwrap();
                assert!(chosen
                    .members()
                    .all(|a| model.weak_order().indifferent(a, first)));
            }
        }
    }

    #[test]
    fn trivial_lam_round_trips() {
        let maximizer =
            ChoiceDataset::from_fn(default_labels(3), |m| Menu::singleton(m.first().unwrap()))
                .unwrap();
        let found = trivial_lam(&maximizer).unwrap();
        assert_eq!(lam_choice(found.lam().unwrap()), maximizer);
        let alpha_violating = ChoiceDataset::parse(
            "alternatives: x y z
             {x,y,z} -> {x,y}
             {x,y} -> {y}
             {x,z} -> {x}
             {y,z} -> {y}",
        )
        .unwrap();
        assert_eq!(
            trivial_lam(&alpha_violating).unwrap(),
            TrivialLam::AlphaViolated
        );
    }

    #[test]
    fn example_overloads_for_agreeing_utilities() {
        let model = attention_example();
        for vals in [[3, 2, 1], [10, 2, 1], [3, 2, 2]] {
            let u = Utility::from_integers(&vals).unwrap();
            if !model.weak_order().agrees_with(&u) {
                continue;
            }
            let rep = lam_overload(&model, &u, WelfareMode::Agreeing).unwrap();
            assert_eq!(rep.branch, OverloadBranch::AlphaViolated);
            assert!(rep.report.overload);
        }
        let bad = Utility::from_integers(&[1, 2, 3]).unwrap();
        assert!(matches!(
            lam_overload(&model, &bad, WelfareMode::Agreeing),
            Err(Error::Misaligned { .. })
        ));
    }

    #[test]
    fn alpha_model_with_aligned_utility_has_no_overload() {
        // α and β fail-free except β: c({x,y,z}) = {x}, c({x,y}) = {x,y}
        let c = ChoiceDataset::parse(
            "alternatives: x y z
             {x,y,z} -> {x}
             {x,y} -> {x,y}
             {x,z} -> {x}
             {y,z} -> {y}",
        )
        .unwrap();
        let model = trivial_lam(&c).unwrap().lam().unwrap().clone();
        let r = relation_r(&c);
        let u = crate::luce::power_utility(&r.first_linear_extension().unwrap());
        let rep = lam_overload(&model, &u, WelfareMode::Agreeing).unwrap();
        assert_eq!(rep.branch, OverloadBranch::Gtlm);
        assert!(!rep.report.overload);

        // u(y) > u(x) misaligned with x R y → overload
        let beta = beta_counterexample(&c).unwrap().unwrap();
        let rep = lam_overload(&model, &beta.utility, WelfareMode::Agreeing).unwrap();
        assert_eq!(rep.branch, OverloadBranch::MisalignedUtility);
        assert!(rep.report.overload);
        for v in &rep.report.violations {
            let w = v.witness_utility.as_ref().unwrap();
            let p = logit(&rep.choice, &beta.utility).unwrap();
            assert!(expected_utility(&p, w, v.a) > expected_utility(&p, w, v.b));
        }

        // representing mode: u constant on the single class → no overload
        let rep = lam_overload(&model, &Utility::constant(3), WelfareMode::Representing).unwrap();
        assert!(!rep.report.overload);
    }
}
