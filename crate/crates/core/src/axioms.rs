//! Deterministic choice axioms and the relations revealed by a dataset.
//!
//! Every checker quantifies exhaustively over the menus (or menu pairs) of a
//! total dataset. Reports keep at most `cap` witnesses but count them all.

use std::fmt;
use std::str::FromStr;

use crate::dataset::ChoiceDataset;
use crate::error::{Error, Result};
use crate::menu::{all_menus, Alternative, Menu};
use crate::relation::Relation;

pub const DEFAULT_WITNESS_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Alpha,
    Beta,
    Gamma,
    Theta,
    PathIndependence,
    Outcast,
    FixedPoint,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::Alpha,
        Axiom::Beta,
        Axiom::Gamma,
        Axiom::Theta,
        Axiom::PathIndependence,
        Axiom::Outcast,
        Axiom::FixedPoint,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Alpha => "alpha",
            Axiom::Beta => "beta",
            Axiom::Gamma => "gamma",
            Axiom::Theta => "theta",
            Axiom::PathIndependence => "path_independence",
            Axiom::Outcast => "outcast",
            Axiom::FixedPoint => "fixed_point",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown axiom {s:?}")))
    }
}

/// One instantiation of a failing quantifier.
///
/// Field usage per axiom:
/// - alpha: `x ∈ A ⊆ B`, `x ∈ c(B)`, `x ∉ c(A)`
/// - beta: `A ⊆ B`, `x, y ∈ c(A)`, `x ∈ c(B)`, `y ∉ c(B)`
/// - gamma: `x ∈ c(A) ∩ c(B)`, `x ∉ c(A ∪ B)`
/// - theta: `A ⊆ B`, `c(A) ∩ c(B) ≠ ∅`, `|c(A)| > |c(B)|`
/// - path independence: `c(A ∪ B) ≠ c(c(A) ∪ c(B))`
/// - outcast: `c(B) ⊆ A ⊆ B`, `c(A) ≠ c(B)`
/// - fixed point: menu `A` (in `a`) with no alternative chosen in all its submenus
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub x: Option<Alternative>,
    pub y: Option<Alternative>,
    pub a: Menu,
    pub b: Option<Menu>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
    /// Total number of violations found, including those beyond the cap.
    pub violation_count: usize,
}

/// Checks `axiom` on a total dataset with the default witness cap.
pub fn check_axiom(c: &ChoiceDataset, axiom: Axiom) -> Result<AxiomReport> {
    check_axiom_capped(c, axiom, DEFAULT_WITNESS_CAP)
}

pub fn check_axiom_capped(c: &ChoiceDataset, axiom: Axiom, cap: usize) -> Result<AxiomReport> {
    c.require_total()?;
    let mut out = Collector::new(cap);
    match axiom {
        Axiom::Alpha => scan_alpha(c, &mut out),
        Axiom::Beta => scan_beta(c, &mut out),
        Axiom::Gamma => scan_gamma(c, &mut out),
        Axiom::Theta => scan_theta(c, &mut out),
        Axiom::PathIndependence => scan_path_independence(c, &mut out),
        Axiom::Outcast => scan_outcast(c, &mut out),
        Axiom::FixedPoint => scan_fixed_point(c, &mut out),
    }
    Ok(AxiomReport {
        axiom,
        holds: out.count == 0,
        witnesses: out.witnesses,
        violation_count: out.count,
    })
}

/// Re-checks a witness against the definition of `axiom`.
pub fn witness_is_violation(c: &ChoiceDataset, axiom: Axiom, w: &Witness) -> bool {
    let a = w.a;
    match axiom {
        Axiom::Alpha => match (w.x, w.b) {
            (Some(x), Some(b)) => {
                a.is_subset_of(b) && a.contains(x) && c.c(b).contains(x) && !c.c(a).contains(x)
            }
            _ => false,
        },
        Axiom::Beta => match (w.x, w.y, w.b) {
            (Some(x), Some(y), Some(b)) => {
                a.is_subset_of(b)
                    && c.c(a).contains(x)
                    && c.c(a).contains(y)
                    && c.c(b).contains(x)
                    && !c.c(b).contains(y)
            }
            _ => false,
        },
        Axiom::Gamma => match (w.x, w.b) {
            (Some(x), Some(b)) => {
                c.c(a).contains(x) && c.c(b).contains(x) && !c.c(a.union(b)).contains(x)
            }
            _ => false,
        },
        Axiom::Theta => match w.b {
            Some(b) => {
                a.is_subset_of(b)
                    && !c.c(a).intersection(c.c(b)).is_empty()
                    && c.c(a).len() > c.c(b).len()
            }
            None => false,
        },
        Axiom::PathIndependence => match w.b {
            Some(b) => c.c(a.union(b)) != c.c(c.c(a).union(c.c(b))),
            None => false,
        },
        Axiom::Outcast => match w.b {
            Some(b) => c.c(b).is_subset_of(a) && a.is_subset_of(b) && c.c(a) != c.c(b),
            None => false,
        },
        Axiom::FixedPoint => !a.members().any(|x| {
            a.submenus()
                .filter(|s| s.contains(x))
                .all(|s| c.c(s).contains(x))
        }),
    }
}

struct Collector {
    cap: usize,
    count: usize,
    witnesses: Vec<Witness>,
}

impl Collector {
    fn new(cap: usize) -> Self {
        Collector {
            cap,
            count: 0,
            witnesses: Vec::new(),
        }
    }

    fn push(&mut self, w: Witness) {
        self.count += 1;
        if self.witnesses.len() < self.cap {
            self.witnesses.push(w);
        }
    }
}

fn scan_alpha(c: &ChoiceDataset, out: &mut Collector) {
    for b in all_menus(c.n()) {
        let cb = c.c(b);
        for a in b.submenus() {
            if let Some(x) = cb.intersection(a).difference(c.c(a)).first() {
                out.push(Witness {
                    x: Some(x),
                    y: None,
                    a,
                    b: Some(b),
                });
            }
        }
    }
}

fn scan_beta(c: &ChoiceDataset, out: &mut Collector) {
    for b in all_menus(c.n()) {
        let cb = c.c(b);
        for a in b.submenus() {
            let ca = c.c(a);
            let kept = ca.intersection(cb);
            let dropped = ca.difference(cb);
            if let (Some(x), Some(y)) = (kept.first(), dropped.first()) {
                out.push(Witness {
                    x: Some(x),
                    y: Some(y),
                    a,
                    b: Some(b),
                });
            }
        }
    }
}

fn scan_gamma(c: &ChoiceDataset, out: &mut Collector) {
    let menus: Vec<Menu> = all_menus(c.n()).collect();
    for (i, &a) in menus.iter().enumerate() {
        for &b in &menus[i + 1..] {
            let lost = c.c(a).intersection(c.c(b)).difference(c.c(a.union(b)));
            if let Some(x) = lost.first() {
                out.push(Witness {
                    x: Some(x),
                    y: None,
                    a,
                    b: Some(b),
                });
            }
        }
    }
}

fn scan_theta(c: &ChoiceDataset, out: &mut Collector) {
    for b in all_menus(c.n()) {
        let cb = c.c(b);
        for a in b.submenus() {
            let ca = c.c(a);
            if !ca.intersection(cb).is_empty() && ca.len() > cb.len() {
                out.push(Witness {
                    x: None,
                    y: None,
                    a,
                    b: Some(b),
                });
            }
        }
    }
}

fn scan_path_independence(c: &ChoiceDataset, out: &mut Collector) {
    let menus: Vec<Menu> = all_menus(c.n()).collect();
    for (i, &a) in menus.iter().enumerate() {
        for &b in &menus[i..] {
            if c.c(a.union(b)) != c.c(c.c(a).union(c.c(b))) {
                out.push(Witness {
                    x: None,
                    y: None,
                    a,
                    b: Some(b),
                });
            }
        }
    }
}

fn scan_outcast(c: &ChoiceDataset, out: &mut Collector) {
    for b in all_menus(c.n()) {
        let cb = c.c(b);
        // menus A with c(B) ⊆ A ⊆ B
        for a in cb.supersets_within(b) {
            if c.c(a) != cb {
                out.push(Witness {
                    x: None,
                    y: None,
                    a,
                    b: Some(b),
                });
            }
        }
    }
}

/// `good[A]`: alternatives of `A` chosen from every submenu containing them.
fn fixed_point_table(c: &ChoiceDataset) -> Vec<Menu> {
    let mut good = vec![Menu::EMPTY; 1 << c.n()];
    for a in all_menus(c.n()) {
        let mut g = c.c(a);
        for x in a.members() {
            let rest = a.without(x);
            if !rest.is_empty() {
                g = g.intersection(good[rest.bits() as usize].with(x));
            }
        }
        good[a.bits() as usize] = g;
    }
    good
}

fn scan_fixed_point(c: &ChoiceDataset, out: &mut Collector) {
    let good = fixed_point_table(c);
    for a in all_menus(c.n()) {
        if good[a.bits() as usize].is_empty() {
            out.push(Witness {
                x: None,
                y: None,
                a,
                b: None,
            });
        }
    }
}

/// Short-circuiting boolean checkers used by the enumeration oracle.
pub mod fast {
    use super::*;

    pub fn alpha(c: &ChoiceDataset) -> bool {
        all_menus(c.n()).all(|b| {
            let cb = c.c(b);
            b.submenus()
                .all(|a| cb.intersection(a).is_subset_of(c.c(a)))
        })
    }

    pub fn beta(c: &ChoiceDataset) -> bool {
        all_menus(c.n()).all(|b| {
            let cb = c.c(b);
            b.submenus().all(|a| {
                let ca = c.c(a);
                ca.intersection(cb).is_empty() || ca.is_subset_of(cb)
            })
        })
    }

    pub fn theta(c: &ChoiceDataset) -> bool {
        all_menus(c.n()).all(|b| {
            let cb = c.c(b);
            b.submenus().all(|a| {
                let ca = c.c(a);
                ca.intersection(cb).is_empty() || ca.len() <= cb.len()
            })
        })
    }

    pub fn outcast(c: &ChoiceDataset) -> bool {
        all_menus(c.n()).all(|b| {
            let cb = c.c(b);
            cb.supersets_within(b).all(|a| c.c(a) == cb)
        })
    }

    pub fn path_independence(c: &ChoiceDataset) -> bool {
        let n = c.n();
        all_menus(n).all(|a| {
            all_menus(n)
                .filter(|b| b.bits() >= a.bits())
                .all(|b| c.c(a.union(b)) == c.c(c.c(a).union(c.c(b))))
        })
    }

    pub fn gamma(c: &ChoiceDataset) -> bool {
        let n = c.n();
        all_menus(n).all(|a| {
            all_menus(n)
                .filter(|b| b.bits() > a.bits())
                .all(|b| c.c(a).intersection(c.c(b)).is_subset_of(c.c(a.union(b))))
        })
    }

    pub fn fixed_point(c: &ChoiceDataset) -> bool {
        let good = fixed_point_table(c);
        all_menus(c.n()).all(|a| !good[a.bits() as usize].is_empty())
    }

    /// Single-insertion form of θ: for `w ∉ A`, if `c(A ∪ w) ∩ c(A) ≠ ∅`
    /// then `|c(A ∪ w)| ≥ |c(A)|`.
    pub fn theta_single_insertion(c: &ChoiceDataset) -> bool {
        let ground = c.ground();
        all_menus(c.n()).all(|a| {
            let ca = c.c(a);
            ground.difference(a).members().all(|w| {
                let cw = c.c(a.with(w));
                cw.intersection(ca).is_empty() || cw.len() >= ca.len()
            })
        })
    }

    pub fn check(c: &ChoiceDataset, axiom: Axiom) -> bool {
        match axiom {
            Axiom::Alpha => alpha(c),
            Axiom::Beta => beta(c),
            Axiom::Gamma => gamma(c),
            Axiom::Theta => theta(c),
            Axiom::PathIndependence => path_independence(c),
            Axiom::Outcast => outcast(c),
            Axiom::FixedPoint => fixed_point(c),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    R,
    Q,
    S,
}

impl FromStr for RelationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" => Ok(RelationKind::R),
            "Q" => Ok(RelationKind::Q),
            "S" => Ok(RelationKind::S),
            _ => Err(Error::InvalidArgument(format!("unknown relation {s:?}"))),
        }
    }
}

/// `x R y` iff some observed menu chooses `x` and rejects `y`.
pub fn relation_r(c: &ChoiceDataset) -> Relation {
    let mut rel = Relation::empty(c.n());
    for a in c.observed_menus() {
        let ca = c.c(a);
        let rejected = a.difference(ca);
        if rejected.is_empty() {
            continue;
        }
        for x in ca.members() {
            rel.insert_all(x, rejected);
        }
    }
    rel
}

/// `x Q y` iff some menu `A ∋ y` has `c(A) ⊄ c(A ∪ {x})`.
pub fn relation_q(c: &ChoiceDataset) -> Relation {
    let mut rel = Relation::empty(c.n());
    for a in all_menus(c.n()) {
        let ca = c.c(a);
        for x in c.ground().difference(a).members() {
            if !ca.is_subset_of(c.c(a.with(x))) {
                rel.insert_all(x, a);
            }
        }
    }
    rel
}

pub fn revealed_relation(c: &ChoiceDataset, kind: RelationKind) -> Result<Relation> {
    match kind {
        RelationKind::R => Ok(relation_r(c)),
        RelationKind::Q => {
            c.require_total()?;
            Ok(relation_q(c))
        }
        RelationKind::S => {
            c.require_total()?;
            Ok(relation_r(c).union(&relation_q(c)))
        }
    }
}

/// The maxima of `rel` within `menu`.
pub fn maximize(rel: &Relation, menu: Menu) -> Menu {
    rel.maximal_in(menu)
}

/// Builds `b ≻ a iff a ∉ c({a,b})` from the binary menus and returns it when
/// it is acyclic and its maximization reproduces every menu.
pub fn rationalizable_acyclic(c: &ChoiceDataset) -> Result<Option<Relation>> {
    c.require_total()?;
    let mut rel = Relation::empty(c.n());
    for a in c.alternatives() {
        for b in c.alternatives() {
            if a != b {
                let pair = Menu::singleton(a).with(b);
                if !c.c(pair).contains(a) {
                    rel.insert(b, a);
                }
            }
        }
    }
    if !rel.is_acyclic() {
        return Ok(None);
    }
    let ok = all_menus(c.n()).all(|m| rel.maximal_in(m) == c.c(m));
    Ok(ok.then_some(rel))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example2() -> ChoiceDataset {
        ChoiceDataset::parse(
            "alternatives: x y z w
             {x,y,z,w} -> {x,y}
             {x,y,z} -> {x,y}
             {x,y,w} -> {x,y}
             {x,z,w} -> {x,z}
             {y,z,w} -> {y,w}
             {x,y} -> {x,y}
             {x,z} -> {x,z}
             {x,w} -> {x,w}
             {y,z} -> {y,z}
             {y,w} -> {y,w}
             {z,w} -> {z,w}",
        )
        .unwrap()
    }

    /// Maximization of w→y, w→z, z→t, x→t over {x,y,z,w,t}.
    fn example1() -> ChoiceDataset {
        let labels: Vec<String> = ["x", "y", "z", "w", "t"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let rel = Relation::from_pairs(
            5,
            [(3, 1), (3, 2), (2, 4), (0, 4)]
                .iter()
                .map(|&(a, b)| (Alternative::new(a), Alternative::new(b))),
        );
        ChoiceDataset::from_fn(labels, |m| rel.maximal_in(m)).unwrap()
    }

    fn linear_maximizer() -> ChoiceDataset {
        // x ≻ y ≻ z
        let labels: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        ChoiceDataset::from_fn(labels, |m| Menu::singleton(m.first().unwrap())).unwrap()
    }

    #[test]
    fn gamma_fails_on_example2_with_z() {
        let c = example2();
        let report = check_axiom(&c, Axiom::Gamma).unwrap();
        assert!(!report.holds);
        let expected = Witness {
            x: c.find("z"),
            y: None,
            a: c.menu_of(&["y", "z"]).unwrap(),
            b: Some(c.menu_of(&["z", "w"]).unwrap()),
        };
        assert!(report.witnesses.contains(&expected));
    }

    #[test]
    fn theta_fails_on_example1() {
        let c = example1();
        let report = check_axiom_capped(&c, Axiom::Theta, usize::MAX).unwrap();
        assert!(!report.holds);
        let a = c.menu_of(&["x", "y", "z"]).unwrap();
        let b = c.menu_of(&["x", "y", "z", "w"]).unwrap();
        assert_eq!(c.c(a).len(), 3);
        assert_eq!(c.c(b).len(), 2);
        assert!(report.witnesses.iter().any(|w| w.a == a && w.b == Some(b)));
        assert!(check_axiom(&c, Axiom::Alpha).unwrap().holds);
    }

    #[test]
    fn singleton_dataset_satisfies_everything() {
        let c = ChoiceDataset::parse("alternatives: x\n{x} -> {x}").unwrap();
        for axiom in Axiom::ALL {
            assert!(check_axiom(&c, axiom).unwrap().holds, "{axiom}");
        }
    }

    #[test]
    fn witnesses_recheck() {
        for c in [example1(), example2()] {
            for axiom in Axiom::ALL {
                let report = check_axiom_capped(&c, axiom, usize::MAX).unwrap();
                assert_eq!(report.holds, report.witnesses.is_empty());
                assert_eq!(report.holds, fast::check(&c, axiom), "{axiom}");
                for w in &report.witnesses {
                    assert!(witness_is_violation(&c, axiom, w), "{axiom} {w:?}");
                }
            }
        }
    }

    #[test]
    fn witness_cap_keeps_count() {
        let c = example1();
        let full = check_axiom_capped(&c, Axiom::Theta, usize::MAX).unwrap();
        let capped = check_axiom_capped(&c, Axiom::Theta, 1).unwrap();
        assert_eq!(capped.witnesses.len(), 1);
        assert_eq!(capped.violation_count, full.violation_count);
    }

    #[test]
    fn relation_of_linear_maximizer() {
        let c = linear_maximizer();
        let r = revealed_relation(&c, RelationKind::R).unwrap();
        let a = Alternative::new;
        let expected = Relation::from_pairs(3, [(a(0), a(1)), (a(0), a(2)), (a(1), a(2))]);
        assert_eq!(r, expected);
        assert_eq!(rationalizable_acyclic(&c).unwrap(), Some(expected));
    }

    #[test]
    fn example2_relation_is_cyclic() {
        let c = example2();
        let r = revealed_relation(&c, RelationKind::R).unwrap();
        assert!(!r.is_acyclic());
        let (z, w) = (c.find("z").unwrap(), c.find("w").unwrap());
        assert!(r.contains(z, w) && r.contains(w, z));
        assert_eq!(rationalizable_acyclic(&c).unwrap(), None);
    }

    #[test]
    fn example1_rationalized_by_digraph() {
        let c = example1();
        let rel = rationalizable_acyclic(&c).unwrap().unwrap();
        let pairs: Vec<(&str, &str)> = rel
            .pairs()
            .into_iter()
            .map(|(x, y)| (c.label(x), c.label(y)))
            .collect();
        let mut pairs = pairs;
        pairs.sort();
        assert_eq!(pairs, vec![("w", "y"), ("w", "z"), ("x", "t"), ("z", "t")]);
    }

    #[test]
    fn q_matches_definition() {
        // oracle: apply the definition literally, including menus containing x
        let c = example1();
        let q = revealed_relation(&c, RelationKind::Q).unwrap();
        for x in c.alternatives() {
            for y in c.alternatives() {
                let brute = all_menus(c.n())
                    .filter(|a| a.contains(y))
                    .any(|a| !c.c(a).is_subset_of(c.c(a.with(x))));
                assert_eq!(q.contains(x, y), brute);
            }
        }
        assert!(q.is_irreflexive());
    }

    #[test]
    fn partial_data_rejected_for_q() {
        let c = ChoiceDataset::parse("alternatives: x y z\npartial\n{x,y} -> {x}").unwrap();
        assert!(revealed_relation(&c, RelationKind::R).is_ok());
        assert_eq!(
            revealed_relation(&c, RelationKind::Q),
            Err(Error::PartialDataset)
        );
        assert!(matches!(
            check_axiom(&c, Axiom::Alpha),
            Err(Error::PartialDataset)
        ));
    }

    #[test]
    fn fixed_point_table_matches_definition() {
        let c = example2();
        assert_eq!(
            fast::fixed_point(&c),
            !all_menus(c.n()).any(|a| witness_is_violation(
                &c,
                Axiom::FixedPoint,
                &Witness {
                    x: None,
                    y: None,
                    a,
                    b: None
                }
            ))
        );
    }
}
