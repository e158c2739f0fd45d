//! Utility shapes along a linear order, and menu-dependent threshold
//! representations `c(A) = {x ∈ A : max_A v − v(x) ≤ ε(A)}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::axioms::{fast, relation_q, relation_r};
use crate::dataset::ChoiceDataset;
use crate::error::{Error, Result};
use crate::feasibility::{fm_feasible, semiorder_rep_system};
use crate::luce::Utility;
use crate::menu::{all_menus, Menu};
use crate::rational::{self, Rational};
use crate::relation::{LinearOrder, Relation};

/// Largest ground set for which unrestricted order search enumerates permutations.
pub const MAX_PERMUTATION_SEARCH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `k − a^{−i}`
    Concave,
    /// `k + a^i`
    Convex,
}

/// `u(x_i) = k − a^{−i}` (concave) or `k + a^i` (convex) for `i = 1..n`
/// along `order`.
pub fn lemma2_utility(
    order: &LinearOrder,
    family: Family,
    k: &Rational,
    a: i64,
) -> Result<Utility> {
    if a < 2 {
        return Err(Error::InvalidArgument(format!(
            "base must be at least 2, got {a}"
        )));
    }
    match family {
        Family::Concave => {
            if *k <= rational::one() {
                return Err(Error::InvalidArgument(format!(
                    "concave family needs k > 1, got {}",
                    rational::format(k)
                )));
            }
            Utility::along(order, |i| k - rational::pow(a, -(i as i32)))
        }
        Family::Convex => Utility::along(order, |i| k + rational::pow(a, i as i32)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Concave,
    Convex,
    StronglyConcave,
    StronglyConvex,
    QuasiConcave,
    QuasiConvex,
}

impl Shape {
    pub const ALL: [Shape; 6] = [
        Shape::Concave,
        Shape::Convex,
        Shape::StronglyConcave,
        Shape::StronglyConvex,
        Shape::QuasiConcave,
        Shape::QuasiConvex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Shape::Concave => "concave",
            Shape::Convex => "convex",
            Shape::StronglyConcave => "strongly_concave",
            Shape::StronglyConvex => "strongly_convex",
            Shape::QuasiConcave => "quasi_concave",
            Shape::QuasiConvex => "quasi_convex",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Shape::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown shape {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeVerdict {
    pub shape: Shape,
    pub holds: bool,
    pub order_used: Option<LinearOrder>,
    /// 1-based positions `(m, k, l)` with `m > k > l` of a violating triple.
    pub witness: Option<(usize, usize, usize)>,
}

/// Whether the triple `f(m), f(k), f(l)` (`m > k > l`) satisfies `shape`'s
/// inequality.
fn triple_ok(shape: Shape, fm: &Rational, fk: &Rational, fl: &Rational) -> bool {
    match shape {
        Shape::Concave | Shape::StronglyConcave => fm - fk <= fk - fl,
        Shape::Convex | Shape::StronglyConvex => fm - fk >= fk - fl,
        // no interior dip
        Shape::QuasiConcave => !(fl > fk && fm > fk),
        // no interior peak
        Shape::QuasiConvex => !(fk > fl && fk > fm),
    }
}

/// Checks `shape` for `f(i) = u(x_i)` along `order`: consecutive triples for
/// plain concavity/convexity, all ordered triples otherwise.
pub fn shape_check(u: &Utility, order: &LinearOrder, shape: Shape) -> ShapeVerdict {
    let f: Vec<&Rational> = order.ascending().iter().map(|a| u.get(*a)).collect();
    let n = f.len();
    let consecutive = matches!(shape, Shape::Concave | Shape::Convex);
    let mut witness = None;
    'outer: for m in (3..=n).rev() {
        for k in (2..m).rev() {
            for l in (1..k).rev() {
                if consecutive && (m != k + 1 || l + 1 != k) {
                    continue;
                }
                if !triple_ok(shape, f[m - 1], f[k - 1], f[l - 1]) {
                    witness = Some((m, k, l));
                    break 'outer;
                }
            }
        }
    }
    ShapeVerdict {
        shape,
        holds: witness.is_none(),
        order_used: Some(order.clone()),
        witness,
    }
}

/// Searches the linear extensions of `restrict_to` (all permutations when
/// absent, `n ≤ 8`) for an order under which `u` has `shape`.
pub fn find_shape_order(
    u: &Utility,
    shape: Shape,
    restrict_to: Option<&Relation>,
) -> Result<Option<LinearOrder>> {
    let free;
    let rel = match restrict_to {
        Some(rel) => rel,
        None => {
            if u.len() > MAX_PERMUTATION_SEARCH {
                return Err(Error::InvalidArgument(format!(
                    "unrestricted order search is limited to {MAX_PERMUTATION_SEARCH} alternatives"
                )));
            }
            free = Relation::empty(u.len());
            &free
        }
    };
    Ok(rel
        .linear_extensions()?
        .find(|order| shape_check(u, order, shape).holds))
}

/// Utility `v` and per-menu thresholds `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdRep {
    pub v: Utility,
    pub eps: BTreeMap<Menu, Rational>,
}

impl ThresholdRep {
    /// `{x ∈ A : max_A v − v(x) ≤ ε}`.
    pub fn select(&self, menu: Menu, eps: &Rational) -> Menu {
        let top = menu
            .members()
            .map(|a| self.v.get(a))
            .max()
            .expect("menus are nonempty");
        Menu::from_alternatives(menu.members().filter(|a| top - self.v.get(*a) <= *eps))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepVerification {
    pub holds: bool,
    pub mismatched: Vec<Menu>,
}

pub fn verify_threshold_rep(c: &ChoiceDataset, rep: &ThresholdRep) -> Result<RepVerification> {
    if rep.v.len() != c.n() {
        return Err(Error::InvalidArgument(format!(
            "representation has {} utilities for {} alternatives",
            rep.v.len(),
            c.n()
        )));
    }
    let mut mismatched = Vec::new();
    for menu in c.observed_menus() {
        let eps = rep.eps.get(&menu).ok_or_else(|| Error::CoverageGap {
            menu: c.format_menu(menu),
        })?;
        if rep.select(menu, eps) != c.c(menu) {
            mismatched.push(menu);
        }
    }
    Ok(RepVerification {
        holds: mismatched.is_empty(),
        mismatched,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Monotonicity {
    Constant,
    WeaklyDecreasing,
    WeaklyIncreasing,
    None,
}

impl Monotonicity {
    pub fn name(self) -> &'static str {
        match self {
            Monotonicity::Constant => "constant",
            Monotonicity::WeaklyDecreasing => "weakly_decreasing",
            Monotonicity::WeaklyIncreasing => "weakly_increasing",
            Monotonicity::None => "none",
        }
    }
}

/// Direction of `ε` under set inclusion, over every pair of covered menus.
pub fn threshold_monotonicity(rep: &ThresholdRep) -> Monotonicity {
    let mut values = rep.eps.values();
    if let Some(first) = values.next() {
        if values.all(|v| v == first) {
            return Monotonicity::Constant;
        }
    }
    let (mut dec, mut inc) = (true, true);
    for (a, ea) in &rep.eps {
        for (b, eb) in &rep.eps {
            if a != b && a.is_subset_of(*b) {
                dec &= ea >= eb;
                inc &= ea <= eb;
            }
        }
    }
    match (dec, inc) {
        (true, true) => Monotonicity::Constant,
        (true, false) => Monotonicity::WeaklyDecreasing,
        (false, true) => Monotonicity::WeaklyIncreasing,
        (false, false) => Monotonicity::None,
    }
}

/// The concave representation together with the order generating `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcaveRep {
    pub rep: ThresholdRep,
    pub order: LinearOrder,
}

/// When `α` holds and `R` is acyclic: `v = 2 − 2^{−i}` along the smallest
/// extension of `R`, and thresholds built top-down,
/// `ε(X) = v(x^X) − v(x_X)`, `ε(A) = max(max_{B ⊋ A} ε(B), v(x^X) − v(x_A))`
/// with `x^A`, `x_A` the best and worst chosen elements of `A`.
pub fn concave_threshold_rep(c: &ChoiceDataset) -> Result<Option<ConcaveRep>> {
    c.require_total()?;
    let r = relation_r(c);
    if !fast::alpha(c) || !r.is_acyclic() {
        return Ok(None);
    }
    let order = r.first_linear_extension()?;
    let v = lemma2_utility(&order, Family::Concave, &rational::int(2), 2)?;
    let n = c.n();
    let ground = c.ground();
    let best = |m: Menu| {
        m.members()
            .map(|a| v.get(a))
            .max()
            .cloned()
            .expect("nonempty")
    };
    let worst = |m: Menu| {
        m.members()
            .map(|a| v.get(a))
            .min()
            .cloned()
            .expect("nonempty")
    };
    let top = best(c.c(ground));

    let mut table: Vec<Option<Rational>> = vec![None; 1 << n];
    let mut menus: Vec<Menu> = all_menus(n).collect();
    menus.sort_by_key(|m| std::cmp::Reverse(m.len()));
    for a in menus {
        let own = &top - worst(c.c(a));
        let inherited = ground
            .difference(a)
            .members()
            .filter_map(|y| table[a.with(y).bits() as usize].clone())
            .max();
        let eps = match inherited {
            Some(e) if e > own => e,
            _ => own,
        };
        table[a.bits() as usize] = Some(eps);
    }
    let eps = all_menus(n)
        .map(|m| (m, table[m.bits() as usize].clone().expect("filled")))
        .collect();
    let rep = ThresholdRep { v, eps };
    if !verify_threshold_rep(c, &rep)?.holds {
        return Err(Error::Inconsistent(
            "constructed concave threshold representation does not reproduce the dataset".into(),
        ));
    }
    if !matches!(
        threshold_monotonicity(&rep),
        Monotonicity::Constant | Monotonicity::WeaklyDecreasing
    ) {
        return Err(Error::Inconsistent(
            "constructed thresholds are not decreasing under inclusion".into(),
        ));
    }
    Ok(Some(ConcaveRep { rep, order }))
}

/// `ε(A) = max_A v − min_{c(A)} v` for a given `v`; reproduces `c` whenever
/// `v` is aligned with an acyclic `R`.
pub fn aligned_threshold_rep(c: &ChoiceDataset, v: &Utility) -> Result<Option<ThresholdRep>> {
    c.require_total()?;
    let eps = all_menus(c.n())
        .map(|m| {
            let top = m.members().map(|a| v.get(a)).max().expect("nonempty");
            let low = c.c(m).members().map(|a| v.get(a)).min().expect("nonempty");
            (m, top - low)
        })
        .collect();
    let rep = ThresholdRep { v: v.clone(), eps };
    Ok(verify_threshold_rep(c, &rep)?.holds.then_some(rep))
}

/// A constant-threshold (semiorder) representation found by elimination.
pub fn semiorder_rep(c: &ChoiceDataset) -> Result<Option<ThresholdRep>> {
    let sys = semiorder_rep_system(c)?;
    let res = fm_feasible(&sys)?;
    let Some(point) = res.sample else {
        return Ok(None);
    };
    let n = c.n();
    let v = Utility::new(point[..n].to_vec())?;
    let eps = all_menus(n).map(|m| (m, point[n].clone())).collect();
    let rep = ThresholdRep { v, eps };
    if !verify_threshold_rep(c, &rep)?.holds {
        return Err(Error::Inconsistent(
            "semiorder sample does not reproduce the dataset".into(),
        ));
    }
    Ok(Some(rep))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorollaryClause {
    /// `α` fails at `A ⊆ B`, so `ε(A) < ε(B)` is required.
    AlphaViolation,
    /// `α` holds at the pair but Outcast fails, so `ε(A) ≥ ε(B)` is required.
    OutcastViolation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryFailure {
    pub clause: CorollaryClause,
    pub a: Menu,
    pub b: Menu,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorollaryReport {
    pub alpha_pairs: usize,
    pub outcast_pairs: usize,
    pub failures: Vec<CorollaryFailure>,
}

impl CorollaryReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Pairwise threshold consequences of `α` and Outcast failures for a
/// representation that reproduces `c`.
pub fn corollary1_check(c: &ChoiceDataset, rep: &ThresholdRep) -> Result<CorollaryReport> {
    c.require_total()?;
    if !verify_threshold_rep(c, rep)?.holds {
        return Err(Error::UnverifiedRepresentation);
    }
    let mut report = CorollaryReport::default();
    for b in all_menus(c.n()) {
        let cb = c.c(b);
        for a in b.submenus() {
            if a == b {
                continue;
            }
            let ca = c.c(a);
            let (ea, eb) = (&rep.eps[&a], &rep.eps[&b]);
            if !cb.intersection(a).is_subset_of(ca) {
                report.alpha_pairs += 1;
                if ea >= eb {
                    report.failures.push(CorollaryFailure {
                        clause: CorollaryClause::AlphaViolation,
                        a,
                        b,
                    });
                }
            } else if cb.is_subset_of(a) && ca != cb {
                report.outcast_pairs += 1;
                if ea < eb {
                    report.failures.push(CorollaryFailure {
                        clause: CorollaryClause::OutcastViolation,
                        a,
                        b,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Acyclicity of `S = R ∪ Q`.
pub fn frick_s_acyclic(c: &ChoiceDataset) -> Result<bool> {
    c.require_total()?;
    Ok(relation_r(c).union(&relation_q(c)).is_acyclic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn semiorder() -> ChoiceDataset {
        let v = [ratio(1, 1), ratio(3, 2), ratio(2, 1)];
        ChoiceDataset::from_fn(labels(&["x1", "x2", "x3"]), |m| {
            let top = m.members().map(|a| v[a.index()].clone()).max().unwrap();
            Menu::from_alternatives(m.members().filter(|a| &top - &v[a.index()] <= ratio(3, 5)))
        })
        .unwrap()
    }

    fn lam_example() -> ChoiceDataset {
        ChoiceDataset::parse(
            "alternatives: x y z
             {x,y,z} -> {y}
             {x,y} -> {x}
             {x,z} -> {x}
             {y,z} -> {y}",
        )
        .unwrap()
    }

    #[test]
    fn lemma2_examples() {
        let order = LinearOrder::identity(3);
        let conc = lemma2_utility(&order, Family::Concave, &int(2), 2).unwrap();
        assert_eq!(conc.values(), &[ratio(3, 2), ratio(7, 4), ratio(15, 8)]);
        assert!(shape_check(&conc, &order, Shape::StronglyConcave).holds);
        let conv = lemma2_utility(&order, Family::Convex, &int(0), 2).unwrap();
        assert_eq!(conv.values(), &[int(2), int(4), int(8)]);
        assert!(shape_check(&conv, &order, Shape::StronglyConvex).holds);
        assert!(lemma2_utility(&order, Family::Concave, &int(1), 2).is_err());
    }

    #[test]
    fn single_alternative_shapes_are_vacuous() {
        let order = LinearOrder::identity(1);
        let u = lemma2_utility(&order, Family::Concave, &int(2), 3).unwrap();
        for shape in Shape::ALL {
            assert!(shape_check(&u, &order, shape).holds);
        }
    }

    #[test]
    fn linear_is_concave_but_not_strongly() {
        let order = LinearOrder::identity(4);
        let u = Utility::from_integers(&[1, 2, 3, 4]).unwrap();
        assert!(shape_check(&u, &order, Shape::Concave).holds);
        let v = shape_check(&u, &order, Shape::StronglyConcave);
        assert!(!v.holds);
        assert_eq!(v.witness, Some((4, 2, 1)));
    }

    #[test]
    fn strong_concavity_of_halving_differences() {
        // oracle: every ordered triple by hand, e.g. 1/8 ≤ 1/4
        let order = LinearOrder::identity(3);
        let u = Utility::new(vec![ratio(3, 2), ratio(7, 4), ratio(15, 8)]).unwrap();
        assert!(ratio(15, 8) - ratio(7, 4) <= ratio(7, 4) - ratio(3, 2));
        assert!(shape_check(&u, &order, Shape::StronglyConcave).holds);
        assert!(shape_check(&u, &order, Shape::QuasiConcave).holds);
    }

    #[test]
    fn order_search() {
        let u = Utility::from_integers(&[2, 4, 8]).unwrap();
        let found = find_shape_order(&u, Shape::StronglyConvex, None)
            .unwrap()
            .unwrap();
        assert_eq!(found, LinearOrder::identity(3));

        let flat = Utility::constant(3);
        for shape in [Shape::StronglyConcave, Shape::StronglyConvex] {
            for order in Relation::empty(3).linear_extensions().unwrap() {
                assert!(shape_check(&flat, &order, shape).holds);
            }
        }

        let u = Utility::from_integers(&[1, 10, 11]).unwrap();
        let ascending = LinearOrder::identity(3).as_relation();
        assert_eq!(
            find_shape_order(&u, Shape::StronglyConvex, Some(&ascending)).unwrap(),
            None
        );
        // oracle: only the permutation placing 10 lowest works (11−1 ≥ 1−10)
        let brute: Vec<LinearOrder> = Relation::empty(3)
            .linear_extensions()
            .unwrap()
            .filter(|o| {
                let f: Vec<&Rational> = o.ascending().iter().map(|a| u.get(*a)).collect();
                f[2] - f[1] >= f[1] - f[0]
            })
            .collect();
        let found = find_shape_order(&u, Shape::StronglyConvex, None).unwrap();
        assert_eq!(found, brute.first().cloned());
    }

    #[test]
    fn concave_rep_of_semiorder() {
        let c = semiorder();
        let built = concave_threshold_rep(&c).unwrap().unwrap();
        assert!(verify_threshold_rep(&c, &built.rep).unwrap().holds);
        assert!(shape_check(&built.rep.v, &built.order, Shape::StronglyConcave).holds);
        assert!(matches!(
            threshold_monotonicity(&built.rep),
            Monotonicity::Constant | Monotonicity::WeaklyDecreasing
        ));
        assert!(corollary1_check(&c, &built.rep).unwrap().holds());
    }

    #[test]
    fn concave_rep_requires_alpha() {
        assert_eq!(concave_threshold_rep(&lam_example()).unwrap(), None);
    }

    #[test]
    fn concave_rep_of_singleton() {
        let c = ChoiceDataset::parse("alternatives: x").unwrap();
        let built = concave_threshold_rep(&c).unwrap().unwrap();
        assert_eq!(built.rep.v.values(), &[ratio(3, 2)]);
        assert_eq!(
            built.rep.eps.values().cloned().collect::<Vec<_>>(),
            vec![int(0)]
        );
    }

    #[test]
    fn perturbed_threshold_is_detected() {
        let c = semiorder();
        let mut rep = concave_threshold_rep(&c).unwrap().unwrap().rep;
        let menu = c.menu_of(&["x2", "x3"]).unwrap();
        // both chosen; the gap v(x3) − v(x2) is needed
        let gap = rep.v.get(c.find("x3").unwrap()) - rep.v.get(c.find("x2").unwrap());
        rep.eps.insert(menu, gap - ratio(1, 1000));
        let res = verify_threshold_rep(&c, &rep).unwrap();
        assert!(!res.holds);
        assert_eq!(res.mismatched, vec![menu]);
    }

    #[test]
    fn huge_threshold_selects_everything() {
        let c = semiorder();
        let rep = ThresholdRep {
            v: Utility::constant(3),
            eps: all_menus(3).map(|m| (m, int(100))).collect(),
        };
        assert!(!verify_threshold_rep(&c, &rep).unwrap().holds);
        let identity = ChoiceDataset::from_fn(labels(&["a", "b", "c"]), |m| m).unwrap();
        assert!(verify_threshold_rep(&identity, &rep).unwrap().holds);
    }

    #[test]
    fn coverage_gap() {
        let c = semiorder();
        let rep = ThresholdRep {
            v: Utility::constant(3),
            eps: BTreeMap::new(),
        };
        assert!(matches!(
            verify_threshold_rep(&c, &rep),
            Err(Error::CoverageGap { .. })
        ));
    }

    #[test]
    fn monotonicity_classes() {
        let v = Utility::constant(3);
        let by_size = ThresholdRep {
            v: v.clone(),
            eps: all_menus(3).map(|m| (m, int(m.len() as i64))).collect(),
        };
        assert_eq!(
            threshold_monotonicity(&by_size),
            Monotonicity::WeaklyIncreasing
        );
        let mixed = ThresholdRep {
            v,
            eps: all_menus(3)
                .map(|m| (m, int(if m.len() == 2 { 5 } else { 1 })))
                .collect(),
        };
        assert_eq!(threshold_monotonicity(&mixed), Monotonicity::None);
    }

    #[test]
    fn corollary_on_alpha_violation() {
        // oracle: direct search over small integer reps at n = 3
        let c = ChoiceDataset::parse(
            "alternatives: x y z
             {x,y,z} -> {x,y}
             {x,y} -> {y}
             {x,z} -> {x}
             {y,z} -> {y}",
        )
        .unwrap();
        let grid: Vec<Rational> = (1..=4).map(int).collect();
        let mut found = 0;
        for a in &grid {
            for b in &grid {
                for d in &grid {
                    let v = Utility::new(vec![a.clone(), b.clone(), d.clone()]).unwrap();
                    if let Some(rep) = aligned_threshold_rep(&c, &v).unwrap() {
                        found += 1;
                        let report = corollary1_check(&c, &rep).unwrap();
                        assert!(report.holds());
                        assert!(report.alpha_pairs > 0);
                    }
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn corollary_rejects_unverified_rep() {
        let c = lam_example();
        let rep = ThresholdRep {
            v: Utility::constant(3),
            eps: all_menus(3).map(|m| (m, int(0))).collect(),
        };
        assert_eq!(
            corollary1_check(&c, &rep),
            Err(Error::UnverifiedRepresentation)
        );
    }

    #[test]
    fn rational_maximizer_corollary_empty() {
        let c = ChoiceDataset::from_fn(labels(&["x", "y", "z"]), |m| {
            Menu::singleton(m.first().unwrap())
        })
        .unwrap();
        let built = concave_threshold_rep(&c).unwrap().unwrap();
        let report = corollary1_check(&c, &built.rep).unwrap();
        assert_eq!(report, CorollaryReport::default());
        assert!(frick_s_acyclic(&c).unwrap());
    }

    #[test]
    fn s_acyclicity_of_semiorder() {
        // oracle: S pairs by definition
        let c = semiorder();
        let mut s = Relation::empty(3);
        for a in all_menus(3) {
            for x in a.members() {
                for y in a.difference(c.c(a)).members() {
                    if c.c(a).contains(x) {
                        s.insert(x, y);
                    }
                }
            }
            for x in c.ground().difference(a).members() {
                if !c.c(a).is_subset_of(c.c(a.with(x))) {
                    for y in a.members() {
                        s.insert(x, y);
                    }
                }
            }
        }
        assert_eq!(frick_s_acyclic(&c).unwrap(), s.is_acyclic());
        assert!(frick_s_acyclic(&c).unwrap());
    }

    #[test]
    fn semiorder_rep_found() {
        let c = semiorder();
        let rep = semiorder_rep(&c).unwrap().unwrap();
        assert_eq!(threshold_monotonicity(&rep), Monotonicity::Constant);
    }
}
