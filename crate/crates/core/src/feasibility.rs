//! Exact linear feasibility by Fourier–Motzkin elimination, and the linear
//! systems that encode regularity and constant-threshold representations.
//!
//! Strict inequalities are carried through elimination: a combined row is
//! strict iff either parent is. Feasible systems return a sample point that
//! is re-checked exactly against every original constraint; infeasible ones
//! return nonnegative multipliers on the original constraints whose sum is a
//! contradiction `0 ≥ r > 0` or `0 > r ≥ 0`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::dataset::ChoiceDataset;
use crate::error::{Error, Result};
use crate::luce::{self, logit_is_regular, Utility};
use crate::menu::{all_menus, Alternative, Menu};
use crate::rational::{self, Rational};
use crate::relation::Relation;

pub const DEFAULT_VARIABLE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cmp {
    /// `≥`
    Ge,
    /// `>`
    Gt,
}

impl Cmp {
    pub fn symbol(self) -> &'static str {
        match self {
            Cmp::Ge => ">=",
            Cmp::Gt => ">",
        }
    }
}

/// `Σ coeffs[i]·x_i  cmp  rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub cmp: Cmp,
    pub rhs: Rational,
    pub label: String,
}

impl Constraint {
    pub fn holds_at(&self, point: &[Rational]) -> bool {
        let lhs: Rational = self
            .coeffs
            .iter()
            .zip(point)
            .map(|(a, x)| a * x)
            .fold(rational::zero(), |acc, t| acc + t);
        match self.cmp {
            Cmp::Ge => lhs >= self.rhs,
            Cmp::Gt => lhs > self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub variables: Vec<String>,
    pub constraints: Vec<Constraint>,
    /// Set when the system was short-circuited to `0 ≥ 1`; explains why.
    pub sentinel: Option<String>,
}

impl LinearSystem {
    pub fn new(variables: Vec<String>) -> Self {
        LinearSystem {
            variables,
            constraints: Vec::new(),
            sentinel: None,
        }
    }

    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    /// Adds `Σ terms  cmp  rhs`, with terms given as `(variable, coefficient)`.
    pub fn push(&mut self, terms: &[(usize, Rational)], cmp: Cmp, rhs: Rational, label: String) {
        let mut coeffs = vec![rational::zero(); self.arity()];
        for (i, a) in terms {
            coeffs[*i] += a;
        }
        self.constraints.push(Constraint {
            coeffs,
            cmp,
            rhs,
            label,
        });
    }

    fn push_sentinel(&mut self, reason: String) {
        self.push(&[], Cmp::Ge, rational::one(), reason.clone());
        self.sentinel = Some(reason);
    }

    pub fn is_satisfied_by(&self, point: &[Rational]) -> bool {
        point.len() == self.arity() && self.constraints.iter().all(|c| c.holds_at(point))
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            let mut terms = Vec::new();
            for (a, v) in c.coeffs.iter().zip(&self.variables) {
                if !a.is_zero() {
                    terms.push(format!("{}*{}", rational::format(a), v));
                }
            }
            let lhs = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            };
            writeln!(f, "{lhs} {} {}", c.cmp.symbol(), rational::format(&c.rhs))?;
        }
        Ok(())
    }
}

/// Nonnegative multipliers on the original constraints whose combination
/// cancels every variable and leaves a false constant inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Variables in the order they were eliminated before the contradiction.
    pub elimination_order: Vec<usize>,
    /// `(constraint index, multiplier)`, multipliers strictly positive.
    pub multipliers: Vec<(usize, Rational)>,
}

impl Certificate {
    /// Recombines the original constraints and checks the contradiction.
    pub fn replay(&self, sys: &LinearSystem) -> bool {
        let mut coeffs = vec![rational::zero(); sys.arity()];
        let mut rhs = rational::zero();
        let mut strict = false;
        for (i, m) in &self.multipliers {
            let Some(c) = sys.constraints.get(*i) else {
                return false;
            };
            if !m.is_positive() {
                return false;
            }
            for (acc, a) in coeffs.iter_mut().zip(&c.coeffs) {
                *acc += m * a;
            }
            rhs += m * &c.rhs;
            strict |= c.cmp == Cmp::Gt;
        }
        coeffs.iter().all(Zero::is_zero) && (rhs.is_positive() || (strict && rhs.is_zero()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityResult {
    pub feasible: bool,
    pub sample: Option<Vec<Rational>>,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Rational>,
    strict: bool,
    rhs: Rational,
    /// Sparse nonnegative combination of original constraints.
    origin: BTreeMap<usize, Rational>,
}

impl Row {
    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `0 ≥ rhs` or `0 > rhs` is false.
    fn is_contradiction(&self) -> bool {
        self.rhs.is_positive() || (self.strict && self.rhs.is_zero())
    }

    /// Scales so the first nonzero coefficient has absolute value one.
    fn normalize(&mut self) {
        let Some(lead) = self.coeffs.iter().find(|a| !a.is_zero()) else {
            return;
        };
        let s = lead.abs();
        if s == rational::one() {
            return;
        }
        for a in self.coeffs.iter_mut() {
            *a /= &s;
        }
        self.rhs /= &s;
        for m in self.origin.values_mut() {
            *m /= &s;
        }
    }

    /// `p/p_k + n/(−n_k)`: cancels variable `k`.
    fn combine(p: &Row, n: &Row, k: usize) -> Row {
        let fp = p.coeffs[k].recip();
        let fnn = -n.coeffs[k].recip();
        let coeffs = p
            .coeffs
            .iter()
            .zip(&n.coeffs)
            .map(|(a, b)| a * &fp + b * &fnn)
            .collect();
        let mut origin = BTreeMap::new();
        for (i, m) in &p.origin {
            *origin.entry(*i).or_insert_with(rational::zero) += m * &fp;
        }
        for (i, m) in &n.origin {
            *origin.entry(*i).or_insert_with(rational::zero) += m * &fnn;
        }
        Row {
            coeffs,
            strict: p.strict || n.strict,
            rhs: &p.rhs * &fp + &n.rhs * &fnn,
            origin,
        }
    }

    /// `self` implies `other` (same coefficients).
    fn at_least_as_strong(&self, other: &Row) -> bool {
        self.rhs > other.rhs || (self.rhs == other.rhs && (self.strict || !other.strict))
    }
}

/// Bounds recorded for one eliminated variable, used for back-substitution.
struct Stage {
    var: usize,
    rows: Vec<Row>,
}

pub fn fm_feasible(sys: &LinearSystem) -> Result<FeasibilityResult> {
    fm_feasible_with_limit(sys, DEFAULT_VARIABLE_LIMIT)
}

pub fn fm_feasible_with_limit(sys: &LinearSystem, limit: usize) -> Result<FeasibilityResult> {
    if sys.arity() > limit {
        return Err(Error::VariableLimit {
            count: sys.arity(),
            limit,
        });
    }
    let rows: Vec<Row> = sys
        .constraints
        .iter()
        .enumerate()
        .map(|(i, c)| Row {
            coeffs: c.coeffs.clone(),
            strict: c.cmp == Cmp::Gt,
            rhs: c.rhs.clone(),
            origin: BTreeMap::from([(i, rational::one())]),
        })
        .collect();

    let mut order = Vec::new();
    let mut stages = Vec::new();
    let mut rows = match simplify(rows) {
        Ok(rows) => rows,
        Err(bad) => return Ok(infeasible(order, bad)),
    };
    let mut remaining: Vec<usize> = (0..sys.arity()).collect();

    while !remaining.is_empty() {
        let k = pick_variable(&rows, &remaining);
        remaining.retain(|&v| v != k);
        order.push(k);
        let (involved, rest): (Vec<Row>, Vec<Row>) =
            rows.into_iter().partition(|r| !r.coeffs[k].is_zero());
        let mut next = rest;
        {
            let pos: Vec<&Row> = involved
                .iter()
                .filter(|r| r.coeffs[k].is_positive())
                .collect();
            let neg: Vec<&Row> = involved
                .iter()
                .filter(|r| r.coeffs[k].is_negative())
                .collect();
            for p in &pos {
                for n in &neg {
                    next.push(Row::combine(p, n, k));
                }
            }
        }
        stages.push(Stage {
            var: k,
            rows: involved,
        });
        rows = match simplify(next) {
            Ok(rows) => rows,
            Err(bad) => return Ok(infeasible(order, bad)),
        };
    }

    let sample = back_substitute(sys.arity(), &stages);
    if !sys.is_satisfied_by(&sample) {
        return Err(Error::Inconsistent(
            "elimination sample violates the original system".into(),
        ));
    }
    Ok(FeasibilityResult {
        feasible: true,
        sample: Some(sample),
        certificate: None,
    })
}

fn infeasible(order: Vec<usize>, bad: Row) -> FeasibilityResult {
    FeasibilityResult {
        feasible: false,
        sample: None,
        certificate: Some(Certificate {
            elimination_order: order,
            multipliers: bad
                .origin
                .into_iter()
                .filter(|(_, m)| m.is_positive())
                .collect(),
        }),
    }
}

/// Drops tautologies, normalizes, deduplicates; returns a contradiction row
/// if one appears.
fn simplify(rows: Vec<Row>) -> std::result::Result<Vec<Row>, Row> {
    let mut kept: Vec<Row> = Vec::new();
    let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
    for mut row in rows {
        if row.is_trivial() {
            if row.is_contradiction() {
                return Err(row);
            }
            continue;
        }
        row.normalize();
        match index.get(&row.coeffs) {
            Some(&i) => {
                if !kept[i].at_least_as_strong(&row) {
                    kept[i] = row;
                }
            }
            None => {
                index.insert(row.coeffs.clone(), kept.len());
                kept.push(row);
            }
        }
    }
    Ok(kept)
}

/// Fewest rows mentioning the variable, then fewest generated pairs.
fn pick_variable(rows: &[Row], remaining: &[usize]) -> usize {
    *remaining
        .iter()
        .min_by_key(|&&k| {
            let pos = rows.iter().filter(|r| r.coeffs[k].is_positive()).count();
            let neg = rows.iter().filter(|r| r.coeffs[k].is_negative()).count();
            (pos + neg, pos * neg, k)
        })
        .expect("at least one variable remains")
}

fn back_substitute(arity: usize, stages: &[Stage]) -> Vec<Rational> {
    let mut x = vec![rational::zero(); arity];
    for stage in stages.iter().rev() {
        let k = stage.var;
        let mut lower: Option<Rational> = None;
        let mut upper: Option<Rational> = None;
        for row in &stage.rows {
            let a = &row.coeffs[k];
            let others: Rational = row
                .coeffs
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(i, c)| c * &x[i])
                .fold(rational::zero(), |acc, t| acc + t);
            let bound = (&row.rhs - others) / a;
            if a.is_positive() {
                if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| bound < *u) {
                upper = Some(bound);
            }
        }
        x[k] = match (lower, upper) {
            (Some(l), Some(u)) => {
                if l == u {
                    l
                } else {
                    (l + u) / rational::int(2)
                }
            }
            (Some(l), None) => l + rational::one(),
            (None, Some(u)) => u - rational::one(),
            (None, None) => rational::zero(),
        };
    }
    x
}

fn utility_variables(c: &ChoiceDataset) -> Vec<String> {
    c.labels().iter().map(|l| format!("u_{l}")).collect()
}

fn push_positivity(sys: &mut LinearSystem, c: &ChoiceDataset) {
    for a in c.alternatives() {
        sys.push(
            &[(a.index(), rational::one())],
            Cmp::Gt,
            rational::zero(),
            format!("u_{} > 0", c.label(a)),
        );
    }
}

fn push_alignment(sys: &mut LinearSystem, c: &ChoiceDataset, rel: &Relation) {
    for (x, y) in rel.pairs() {
        sys.push(
            &[(x.index(), rational::one()), (y.index(), -rational::one())],
            Cmp::Gt,
            rational::zero(),
            format!("u_{} > u_{}", c.label(x), c.label(y)),
        );
    }
}

/// The first `(x, A, B)` with `x ∈ A ∩ c(B)`, `x ∉ c(A)`: no positive utility
/// can be regular there.
fn alpha_type_failure(c: &ChoiceDataset) -> Option<(Alternative, Menu, Menu)> {
    all_menus(c.n()).find_map(|b| {
        let cb = c.c(b);
        b.submenus().find_map(|a| {
            cb.intersection(a)
                .difference(c.c(a))
                .first()
                .map(|x| (x, a, b))
        })
    })
}

/// Positivity plus `Σ_{c(B)} u − Σ_{c(A)} u ≥ 0` for every `A ⊊ B` whose
/// choice sets share an element chosen in `B`.
pub fn regularity_system(c: &ChoiceDataset) -> Result<LinearSystem> {
    c.require_total()?;
    let mut sys = LinearSystem::new(utility_variables(c));
    push_positivity(&mut sys, c);
    if let Some((x, a, b)) = alpha_type_failure(c) {
        sys.push_sentinel(format!(
            "{} is chosen from {} but not from its submenu {}",
            c.label(x),
            c.format_menu(b),
            c.format_menu(a)
        ));
        return Ok(sys);
    }
    let mut seen = HashSet::new();
    for b in all_menus(c.n()) {
        let cb = c.c(b);
        for a in b.submenus() {
            let ca = c.c(a);
            if a == b || cb.intersection(a).is_empty() {
                continue;
            }
            let plus = cb.difference(ca);
            let minus = ca.difference(cb);
            if (plus.is_empty() && minus.is_empty()) || !seen.insert((plus, minus)) {
                continue;
            }
            let mut terms: Vec<(usize, Rational)> = plus
                .members()
                .map(|v| (v.index(), rational::one()))
                .collect();
            terms.extend(minus.members().map(|v| (v.index(), -rational::one())));
            sys.push(
                &terms,
                Cmp::Ge,
                rational::zero(),
                format!("sum c{} >= sum c{}", c.format_menu(b), c.format_menu(a)),
            );
        }
    }
    Ok(sys)
}

/// Regularity system extended with `u_x > u_y` for every pair of `rel`.
pub fn aligned_regularity_system(c: &ChoiceDataset, rel: &Relation) -> Result<LinearSystem> {
    let mut sys = regularity_system(c)?;
    if sys.sentinel.is_none() {
        push_alignment(&mut sys, c, rel);
    }
    Ok(sys)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceResult {
    pub system: LinearSystem,
    pub result: FeasibilityResult,
    pub utility: Option<Utility>,
}

/// Decides whether some logit rule (aligned with `align` when given) is
/// regular; a found utility is re-verified against the dataset.
pub fn exists_regular_logit(
    c: &ChoiceDataset,
    align: Option<&Relation>,
) -> Result<ExistenceResult> {
    let system = match align {
        Some(rel) => aligned_regularity_system(c, rel)?,
        None => regularity_system(c)?,
    };
    let result = fm_feasible(&system)?;
    let utility = match &result.sample {
        Some(point) => {
            let u = Utility::new(point.clone())?;
            if !logit_is_regular(c, &u) {
                return Err(Error::Inconsistent(
                    "feasible regularity sample is irregular".into(),
                ));
            }
            Some(u)
        }
        None => None,
    };
    Ok(ExistenceResult {
        system,
        result,
        utility,
    })
}

/// Searches for a positive utility (aligned with `align` when given) whose
/// logit rule violates regularity. With a cyclic `align` no aligned utility
/// exists and the answer is `None`.
pub fn exists_irregular_logit(
    c: &ChoiceDataset,
    align: Option<&Relation>,
) -> Result<Option<Utility>> {
    c.require_total()?;
    let default = match align {
        None => Utility::constant(c.n()),
        Some(rel) => match rel.first_linear_extension() {
            Ok(order) => luce::power_utility(&order),
            Err(_) => return Ok(None),
        },
    };
    if alpha_type_failure(c).is_some() {
        return Ok(Some(default));
    }
    let mut seen = HashSet::new();
    for b in all_menus(c.n()) {
        let cb = c.c(b);
        for a in b.submenus() {
            let ca = c.c(a);
            if a == b || cb.intersection(a).is_empty() {
                continue;
            }
            // shared elements are chosen in both; violation iff Σ_{D1} > Σ_{D2}
            let d1 = ca.difference(cb);
            let d2 = cb.difference(ca);
            if d1.is_empty() || !seen.insert((d1, d2)) {
                continue;
            }
            if d2.is_empty() {
                return Ok(Some(default));
            }
            let mut sys = LinearSystem::new(utility_variables(c));
            push_positivity(&mut sys, c);
            if let Some(rel) = align {
                push_alignment(&mut sys, c, rel);
            }
            let mut terms: Vec<(usize, Rational)> =
                d1.members().map(|v| (v.index(), rational::one())).collect();
            terms.extend(d2.members().map(|v| (v.index(), -rational::one())));
            sys.push(&terms, Cmp::Gt, rational::zero(), "violation".into());
            if let Some(point) = fm_feasible(&sys)?.sample {
                let u = Utility::new(point)?;
                if logit_is_regular(c, &u) {
                    return Err(Error::Inconsistent("irregularity sample is regular".into()));
                }
                return Ok(Some(u));
            }
        }
    }
    Ok(None)
}

/// Variables `v_x` and `eps`: a constant-threshold representation of `c`.
///
/// For `x ∈ c(A)`: `v_x − v_y + eps ≥ 0` for every `y ∈ A`. For `x ∉ c(A)`:
/// `v_y − v_x − eps > 0` with `y` the first alternative of `A` that beats `x`
/// in the binary menu `{x, y}`. Any constant-threshold representation must
/// satisfy that inequality, and together with the rest it forces `x ∉ c(A)`,
/// so the system is feasible iff such a representation exists.
pub fn semiorder_rep_system(c: &ChoiceDataset) -> Result<LinearSystem> {
    c.require_total()?;
    let n = c.n();
    let mut vars: Vec<String> = c.labels().iter().map(|l| format!("v_{l}")).collect();
    vars.push("eps".into());
    let mut sys = LinearSystem::new(vars);
    let eps = n;
    let one = rational::one;
    sys.push(
        &[(eps, one())],
        Cmp::Ge,
        rational::zero(),
        "eps >= 0".into(),
    );
    for a in c.alternatives() {
        sys.push(
            &[(a.index(), one())],
            Cmp::Gt,
            rational::zero(),
            format!("v_{} > 0", c.label(a)),
        );
    }
    let mut seen = HashSet::new();
    for menu in all_menus(n) {
        let chosen = c.c(menu);
        for x in menu.members() {
            if chosen.contains(x) {
                for y in menu.without(x).members() {
                    if seen.insert((true, x, y)) {
                        sys.push(
                            &[(x.index(), one()), (y.index(), -one()), (eps, one())],
                            Cmp::Ge,
                            rational::zero(),
                            format!("v_{} + eps >= v_{}", c.label(x), c.label(y)),
                        );
                    }
                }
            } else {
                let beater = menu
                    .without(x)
                    .members()
                    .find(|y| !c.c(Menu::singleton(x).with(*y)).contains(x));
                match beater {
                    Some(y) => {
                        if seen.insert((false, x, y)) {
                            sys.push(
                                &[(y.index(), one()), (x.index(), -one()), (eps, -one())],
                                Cmp::Gt,
                                rational::zero(),
                                format!("v_{} - v_{} > eps", c.label(y), c.label(x)),
                            );
                        }
                    }
                    None => {
                        sys.push_sentinel(format!(
                            "{} is rejected from {} but chosen against each member in pairs",
                            c.label(x),
                            c.format_menu(menu)
                        ));
                        return Ok(sys);
                    }
                }
            }
        }
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn sys_of(vars: &[&str], rows: &[(&[i64], Cmp, i64)]) -> LinearSystem {
        let mut sys = LinearSystem::new(vars.iter().map(|s| s.to_string()).collect());
        for (i, (coeffs, cmp, rhs)) in rows.iter().enumerate() {
            let terms: Vec<(usize, Rational)> = coeffs
                .iter()
                .enumerate()
                .map(|(j, &a)| (j, int(a)))
                .collect();
            sys.push(&terms, *cmp, int(*rhs), format!("r{i}"));
        }
        sys
    }

    fn appendix_example() -> ChoiceDataset {
        // x y z u v
        let orders: [[usize; 5]; 3] = [[3, 0, 4, 1, 2], [2, 1, 0, 3, 4], [3, 0, 1, 2, 4]];
        let labels = ["x", "y", "z", "u", "v"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        ChoiceDataset::from_fn(labels, |m| {
            Menu::from_alternatives(orders.iter().map(|o| {
                Alternative::new(
                    *o.iter()
                        .find(|&&i| m.contains(Alternative::new(i)))
                        .unwrap(),
                )
            }))
        })
        .unwrap()
    }

    #[test]
    fn simple_feasible_system() {
        let sys = sys_of(
            &["x", "y"],
            &[
                (&[1, 0], Cmp::Gt, 0),
                (&[0, 1], Cmp::Gt, 0),
                (&[-1, 1], Cmp::Ge, 0),
            ],
        );
        let res = fm_feasible(&sys).unwrap();
        assert!(res.feasible);
        assert!(sys.is_satisfied_by(res.sample.as_ref().unwrap()));
    }

    #[test]
    fn one_step_contradiction() {
        let sys = sys_of(&["v"], &[(&[1], Cmp::Gt, 0), (&[-1], Cmp::Ge, 0)]);
        let res = fm_feasible(&sys).unwrap();
        assert!(!res.feasible);
        let cert = res.certificate.unwrap();
        assert!(cert.replay(&sys));
        assert_eq!(cert.elimination_order, vec![0]);
    }

    #[test]
    fn equality_pinned_by_two_weak_bounds() {
        let sys = sys_of(&["x"], &[(&[1], Cmp::Ge, 3), (&[-1], Cmp::Ge, -3)]);
        let res = fm_feasible(&sys).unwrap();
        assert_eq!(res.sample.unwrap(), vec![int(3)]);
    }

    #[test]
    fn strict_pair_with_equal_bounds_is_infeasible() {
        let sys = sys_of(&["x"], &[(&[1], Cmp::Gt, 3), (&[-1], Cmp::Ge, -3)]);
        assert!(!fm_feasible(&sys).unwrap().feasible);
    }

    #[test]
    fn variable_limit() {
        let sys = LinearSystem::new((0..13).map(|i| format!("x{i}")).collect());
        assert!(matches!(
            fm_feasible(&sys),
            Err(Error::VariableLimit { .. })
        ));
    }

    #[test]
    fn agrees_with_grid_on_small_systems() {
        // oracle: exhaustive search over a grid that contains a witness
        // whenever a system of this shape is feasible
        let shapes: Vec<Vec<(&[i64], Cmp, i64)>> = vec![
            vec![
                (&[1, -2], Cmp::Gt, 0),
                (&[-1, 1], Cmp::Ge, -1),
                (&[0, 1], Cmp::Gt, 0),
            ],
            vec![
                (&[1, 1], Cmp::Ge, 2),
                (&[-1, 0], Cmp::Ge, -1),
                (&[0, -1], Cmp::Gt, -1),
            ],
            vec![
                (&[2, -1], Cmp::Ge, 1),
                (&[-1, 2], Cmp::Ge, 1),
                (&[-1, -1], Cmp::Gt, -2),
            ],
        ];
        for rows in shapes {
            let sys = sys_of(&["a", "b"], &rows);
            let grid: Vec<Rational> = (-16..=16).map(|k| ratio(k, 4)).collect();
            let brute = grid.iter().any(|a| {
                grid.iter()
                    .any(|b| sys.is_satisfied_by(&[a.clone(), b.clone()]))
            });
            let res = fm_feasible(&sys).unwrap();
            assert_eq!(res.feasible, brute, "{sys}");
            if let Some(cert) = res.certificate {
                assert!(cert.replay(&sys));
            }
        }
    }

    #[test]
    fn appendix_example_is_infeasible() {
        let c = appendix_example();
        assert!(crate::axioms::fast::path_independence(&c));
        let sys = regularity_system(&c).unwrap();
        assert!(sys.sentinel.is_none());
        let res = fm_feasible(&sys).unwrap();
        assert!(!res.feasible);
        assert!(res.certificate.unwrap().replay(&sys));
    }

    #[test]
    fn rational_maximizer_system_is_feasible() {
        let labels = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let c = ChoiceDataset::from_fn(labels, |m| Menu::singleton(m.first().unwrap())).unwrap();
        let res = exists_regular_logit(&c, None).unwrap();
        assert!(res.result.feasible);
        assert!(res.utility.is_some());
        assert_eq!(exists_irregular_logit(&c, None).unwrap(), None);
    }

    #[test]
    fn uniform_point_violates_example1_system() {
        let rel = Relation::from_pairs(
            5,
            [(3, 1), (3, 2), (2, 4), (0, 4)]
                .iter()
                .map(|&(a, b)| (Alternative::new(a), Alternative::new(b))),
        );
        let labels = ["x", "y", "z", "w", "t"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let c = ChoiceDataset::from_fn(labels, |m| rel.maximal_in(m)).unwrap();
        let sys = regularity_system(&c).unwrap();
        let ones = vec![rational::one(); 5];
        assert!(sys.constraints.iter().any(|k| !k.holds_at(&ones)));
    }

    fn semiorder() -> ChoiceDataset {
        let v = [ratio(1, 1), ratio(3, 2), ratio(2, 1)];
        let labels = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        ChoiceDataset::from_fn(labels, |m| {
            let top = m.members().map(|a| v[a.index()].clone()).max().unwrap();
            Menu::from_alternatives(m.members().filter(|a| &top - &v[a.index()] <= ratio(3, 5)))
        })
        .unwrap()
    }

    #[test]
    fn semiorder_system_accepts_original_parameters() {
        let sys = semiorder_rep_system(&semiorder()).unwrap();
        let point = vec![ratio(1, 1), ratio(3, 2), ratio(2, 1), ratio(3, 5)];
        assert!(sys.is_satisfied_by(&point));
        assert!(fm_feasible(&sys).unwrap().feasible);
    }

    #[test]
    fn weak_order_semiorder_has_zero_threshold() {
        // x ~ y ≻ z
        let labels = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let rank = [1, 1, 0];
        let c = ChoiceDataset::from_fn(labels, |m| {
            let top = m.members().map(|a| rank[a.index()]).max().unwrap();
            Menu::from_alternatives(m.members().filter(|a| rank[a.index()] == top))
        })
        .unwrap();
        let sys = semiorder_rep_system(&c).unwrap();
        assert!(sys.is_satisfied_by(&[int(2), int(2), int(1), int(0)]));
        assert!(fm_feasible(&sys).unwrap().feasible);
    }

    #[test]
    fn example2_semiorder_infeasible() {
        let c = ChoiceDataset::parse(
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
        .unwrap();
        let sys = semiorder_rep_system(&c).unwrap();
        let res = fm_feasible(&sys).unwrap();
        assert!(!res.feasible);
        assert!(res.certificate.unwrap().replay(&sys));
    }
}
