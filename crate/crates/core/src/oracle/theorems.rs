//! One checker per characterization result. Each checker evaluates both
//! sides of the equivalence on one instance — the "for every utility" and
//! "there is a utility" sides through the elimination engine and through
//! the explicit witness constructions — and reports any disagreement.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::axioms::{fast, rationalizable_acyclic, relation_r};
use crate::dataset::ChoiceDataset;
use crate::error::{Error, Result};
use crate::feasibility::{exists_irregular_logit, exists_regular_logit};
use crate::lam::{
    alpha_lam, lam_choice, lam_overload, trivial_lam, Lam, OverloadBranch, TrivialLam, WelfareMode,
};
use crate::luce::{
    all_aligned_regular, beta_counterexample, is_aligned, logit, logit_is_regular, power_utility,
    r_extension, regularity_violations, uniform, witness_regular_logit, Utility,
};
use crate::menu::{all_menus, Alternative, Menu};
use crate::rational;
use crate::relation::LinearOrder;
use crate::represent::{
    aligned_threshold_rep, concave_threshold_rep, corollary1_check, lemma2_utility, shape_check,
    threshold_monotonicity, verify_threshold_rep, Family, Monotonicity, Shape, ThresholdRep,
};
use crate::welfare::{
    classify_violations, detect_overload, expected_utility, welfare_value, Classification,
};

use super::enumerate::Filter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    P1Uniform,
    P2Shapes,
    P3Delta,
    P4Lam,
    P5LamOverload,
    C1Thresholds,
    L3ThetaLocal,
    P6PartialOrder,
    PaPathPartial,
    A3Quasi,
}

impl TheoremId {
    pub const ALL: [TheoremId; 14] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::P1Uniform,
        TheoremId::P2Shapes,
        TheoremId::P3Delta,
        TheoremId::P4Lam,
        TheoremId::P5LamOverload,
        TheoremId::C1Thresholds,
        TheoremId::L3ThetaLocal,
        TheoremId::P6PartialOrder,
        TheoremId::PaPathPartial,
        TheoremId::A3Quasi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::T1 => "T1",
            TheoremId::T2 => "T2",
            TheoremId::T3 => "T3",
            TheoremId::T4 => "T4",
            TheoremId::P1Uniform => "P1_uniform",
            TheoremId::P2Shapes => "P2_shapes",
            TheoremId::P3Delta => "P3_delta",
            TheoremId::P4Lam => "P4_lam",
            TheoremId::P5LamOverload => "P5_lam_overload",
            TheoremId::C1Thresholds => "C1_thresholds",
            TheoremId::L3ThetaLocal => "L3_theta_local",
            TheoremId::P6PartialOrder => "P6_partial_order",
            TheoremId::PaPathPartial => "PA_path_partial",
            TheoremId::A3Quasi => "A3_quasi",
        }
    }

    /// One-line statement of what is checked.
    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::T1 => "alpha and beta iff every logit rule is regular",
            TheoremId::T2 => "acyclic R: path independence iff some R-aligned logit rule is regular",
            TheoremId::T3 => "acyclic R: alpha and theta iff every R-aligned logit rule is regular",
            TheoremId::T4 => "acyclic R, aligned u: alpha fails iff choice overload",
            TheoremId::P1Uniform => "alpha and theta iff the uniform rule is regular",
            TheoremId::P2Shapes => {
                "path independent, acyclic R: convex utility regular; theta fails => concave utility irregular"
            }
            TheoremId::P3Delta => {
                "acyclic R: alpha iff a strongly concave v with decreasing thresholds represents c"
            }
            TheoremId::P4Lam => "competition filter iff alpha; limited attention with acyclic R implies alpha",
            TheoremId::P5LamOverload => "limited attention: overload branches by alpha, alignment and cycles",
            TheoremId::C1Thresholds => "threshold monotonicity at alpha and outcast failures",
            TheoremId::L3ThetaLocal => "under alpha: theta iff its single-insertion form",
            TheoremId::P6PartialOrder => {
                "rationalizable by acyclic relation: theta iff every aligned logit rule is regular"
            }
            TheoremId::PaPathPartial => {
                "rationalizable by acyclic relation: path independence iff some aligned logit rule is regular"
            }
            TheoremId::A3Quasi => "strongly concave (convex) implies quasi-concave (convex)",
        }
    }

    /// Subclass of datasets the checker quantifies over.
    pub fn filters(self) -> &'static [Filter] {
        match self {
            TheoremId::T2
            | TheoremId::T3
            | TheoremId::T4
            | TheoremId::P3Delta
            | TheoremId::C1Thresholds => &[Filter::Gtlm],
            TheoremId::P2Shapes => &[Filter::Gtlm, Filter::PathIndependent],
            TheoremId::L3ThetaLocal => &[Filter::Alpha],
            TheoremId::P6PartialOrder | TheoremId::PaPathPartial => &[Filter::Rationalizable],
            _ => &[],
        }
    }

    pub fn universe(self) -> Universe {
        match self {
            TheoremId::P5LamOverload => Universe::Models,
            TheoremId::A3Quasi => Universe::Utilities,
            TheoremId::P4Lam => Universe::DatasetsAndModels,
            _ => Universe::Datasets,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Universe {
    Datasets,
    /// Limited attention models with utilities.
    Models,
    DatasetsAndModels,
    /// Utilities with orders.
    Utilities,
}

/// Outcome of one instance: `Err` carries the disagreement.
pub type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn internal(e: Error) -> String {
    format!("internal error: {e}")
}

/// Runs the dataset checker of `id` on `c` (which passed `id`'s filters).
pub fn check_dataset(id: TheoremId, c: &ChoiceDataset) -> Check {
    match id {
        TheoremId::T1 => check_t1(c),
        TheoremId::T2 => check_t2(c),
        TheoremId::T3 => check_t3(c),
        TheoremId::T4 => check_t4(c),
        TheoremId::P1Uniform => check_p1(c),
        TheoremId::P2Shapes => check_p2(c),
        TheoremId::P3Delta => check_p3(c),
        TheoremId::P4Lam => check_p4_dataset(c),
        TheoremId::C1Thresholds => check_c1(c),
        TheoremId::L3ThetaLocal => check_l3(c),
        TheoremId::P6PartialOrder => check_p6(c),
        TheoremId::PaPathPartial => check_pa(c),
        TheoremId::P5LamOverload | TheoremId::A3Quasi => Ok(()),
    }
}

fn check_t1(c: &ChoiceDataset) -> Check {
    let lhs = fast::alpha(c) && fast::beta(c);
    let irregular = exists_irregular_logit(c, None).map_err(internal)?;
    ensure!(
        lhs == irregular.is_none(),
        "alpha&beta = {lhs} but elimination found irregular utility: {}",
        irregular.is_some()
    );
    if lhs {
        let n = c.n() as i64;
        for u in [
            Utility::constant(c.n()),
            Utility::from_integers(&(1..=n).collect::<Vec<_>>()).map_err(internal)?,
        ] {
            ensure!(
                logit_is_regular(c, &u),
                "alpha&beta hold but a sample utility is irregular"
            );
        }
    } else if !fast::alpha(c) {
        ensure!(
            !logit_is_regular(c, &Utility::constant(c.n())),
            "alpha fails but the constant utility is regular"
        );
    } else {
        let cx = beta_counterexample(c).map_err(internal)?;
        let cx = cx.ok_or("beta fails but no counterexample was constructed")?;
        ensure!(
            !logit_is_regular(c, &cx.utility),
            "beta counterexample is regular"
        );
    }
    Ok(())
}

fn check_t2(c: &ChoiceDataset) -> Check {
    let r = relation_r(c);
    let lhs = fast::path_independence(c);
    let fm = exists_regular_logit(c, Some(&r)).map_err(internal)?;
    ensure!(
        lhs == fm.result.feasible,
        "path independence = {lhs}, elimination feasible = {}",
        fm.result.feasible
    );
    if let Some(cert) = &fm.result.certificate {
        ensure!(
            cert.replay(&fm.system),
            "infeasibility certificate does not replay"
        );
    }
    let witness = witness_regular_logit(c).map_err(internal)?;
    ensure!(
        lhs == witness.is_some(),
        "path independence = {lhs}, power witness = {}",
        witness.is_some()
    );
    for u in witness.iter().chain(fm.utility.iter()) {
        ensure!(
            is_aligned(u, &r) && logit_is_regular(c, u),
            "witness utility not aligned or irregular"
        );
    }
    Ok(())
}

fn check_t3(c: &ChoiceDataset) -> Check {
    let r = relation_r(c);
    let lhs = fast::alpha(c) && fast::theta(c);
    let fm_irregular = exists_irregular_logit(c, Some(&r)).map_err(internal)?;
    let constructive = all_aligned_regular(c).map_err(internal)?;
    ensure!(
        lhs == fm_irregular.is_none() && lhs == constructive.holds,
        "alpha&theta = {lhs}, elimination all-regular = {}, construction all-regular = {}",
        fm_irregular.is_none(),
        constructive.holds
    );
    for u in fm_irregular
        .iter()
        .chain(constructive.counterexample.iter())
    {
        ensure!(
            is_aligned(u, &r) && !logit_is_regular(c, u),
            "counterexample not aligned or regular"
        );
    }
    Ok(())
}

fn check_overload_witnesses(
    c: &ChoiceDataset,
    report: &crate::welfare::OverloadReport,
    r: &crate::relation::Relation,
) -> Check {
    for v in &report.violations {
        if v.classification == Classification::WelfareDecreasing {
            let w = v
                .witness_utility
                .as_ref()
                .ok_or("decreasing violation without witness")?;
            ensure!(is_aligned(w, r), "overload witness not aligned");
            ensure!(
                welfare_value(c, w, v.a) > welfare_value(c, w, v.b),
                "overload witness does not reverse welfare"
            );
        }
    }
    Ok(())
}

fn check_t4(c: &ChoiceDataset) -> Check {
    let r = relation_r(c);
    let alpha = fast::alpha(c);
    let uniform_report = classify_violations(c, &Utility::constant(c.n()), &r).map_err(internal)?;
    ensure!(
        uniform_report.overload == !alpha,
        "uniform rule: overload = {}, alpha = {alpha}",
        uniform_report.overload
    );
    check_overload_witnesses(c, &uniform_report, &r)?;
    let u = power_utility(&r_extension(c).map_err(internal)?);
    let report = detect_overload(c, &u).map_err(internal)?;
    ensure!(
        report.overload == !alpha,
        "power utility: overload = {}, alpha = {alpha}",
        report.overload
    );
    check_overload_witnesses(c, &report, &r)
}

fn check_p1(c: &ChoiceDataset) -> Check {
    let lhs = fast::alpha(c) && fast::theta(c);
    let regular = regularity_violations(&uniform(c))
        .map_err(internal)?
        .is_empty();
    ensure!(
        lhs == regular,
        "alpha&theta = {lhs}, uniform regular = {regular}"
    );
    Ok(())
}

fn check_p2(c: &ChoiceDataset) -> Check {
    let order = r_extension(c).map_err(internal)?;
    let convex = lemma2_utility(&order, Family::Convex, &rational::zero(), 2).map_err(internal)?;
    ensure!(
        shape_check(&convex, &order, Shape::StronglyConvex).holds,
        "convex family not strongly convex"
    );
    ensure!(
        logit_is_regular(c, &convex),
        "convex utility irregular on a path-independent dataset"
    );
    if !fast::theta(c) {
        let concave =
            lemma2_utility(&order, Family::Concave, &rational::int(2), 2).map_err(internal)?;
        ensure!(
            shape_check(&concave, &order, Shape::StronglyConcave).holds,
            "concave family not strongly concave"
        );
        ensure!(
            !logit_is_regular(c, &concave),
            "theta fails but the concave utility is regular"
        );
    }
    Ok(())
}

fn decreasing(rep: &ThresholdRep) -> bool {
    matches!(
        threshold_monotonicity(rep),
        Monotonicity::Constant | Monotonicity::WeaklyDecreasing
    )
}

fn check_p3(c: &ChoiceDataset) -> Check {
    let alpha = fast::alpha(c);
    let found = concave_threshold_rep(c).map_err(internal)?;
    ensure!(
        alpha == found.is_some(),
        "alpha = {alpha}, concave representation found = {}",
        found.is_some()
    );
    if let Some(cr) = found {
        ensure!(
            verify_threshold_rep(c, &cr.rep).map_err(internal)?.holds,
            "representation does not verify"
        );
        ensure!(
            shape_check(&cr.rep.v, &cr.order, Shape::StronglyConcave).holds,
            "v not strongly concave"
        );
        ensure!(decreasing(&cr.rep), "thresholds not decreasing");
        ensure!(
            corollary1_check(c, &cr.rep).map_err(internal)?.holds(),
            "threshold monotonicity clauses fail"
        );
    } else {
        let u = power_utility(&r_extension(c).map_err(internal)?);
        let rep = aligned_threshold_rep(c, &u)
            .map_err(internal)?
            .ok_or("no aligned representation")?;
        ensure!(
            !decreasing(&rep),
            "alpha fails yet an aligned representation has decreasing thresholds"
        );
    }
    Ok(())
}

/// Reverse direction of the decreasing-threshold characterization on a
/// random model: whatever decreasing thresholds select satisfies `α`.
pub fn check_decreasing_model(n: usize, rng: &mut impl Rng) -> Check {
    let v: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3 * n as i64)).collect();
    let v = Utility::from_integers(&v).map_err(internal)?;
    let mut menus: Vec<Menu> = all_menus(n).collect();
    menus.sort_by_key(|m| std::cmp::Reverse(m.len()));
    let ground = Menu::full(n);
    let mut eps = vec![rational::zero(); 1 << n];
    for a in menus {
        let inherited = ground
            .difference(a)
            .members()
            .map(|y| eps[a.with(y).bits() as usize].clone())
            .max()
            .unwrap_or_else(rational::zero);
        eps[a.bits() as usize] = inherited + rational::int(rng.gen_range(0..=n as i64));
    }
    let rep = ThresholdRep {
        v,
        eps: all_menus(n)
            .map(|m| (m, eps[m.bits() as usize].clone()))
            .collect(),
    };
    let c = ChoiceDataset::from_fn(super::default_labels(n), |m| {
        rep.select(m, &eps[m.bits() as usize])
    })
    .map_err(internal)?;
    ensure!(
        decreasing(&rep),
        "generator produced non-decreasing thresholds"
    );
    ensure!(
        fast::alpha(&c),
        "decreasing thresholds selected a dataset violating alpha:\n{}",
        c.to_text()
    );
    Ok(())
}

fn check_c1(c: &ChoiceDataset) -> Check {
    let u = power_utility(&r_extension(c).map_err(internal)?);
    let rep = aligned_threshold_rep(c, &u)
        .map_err(internal)?
        .ok_or("no aligned representation")?;
    let report = corollary1_check(c, &rep).map_err(internal)?;
    ensure!(
        report.holds(),
        "aligned representation fails {} threshold clause(s)",
        report.failures.len()
    );
    if let Some(cr) = concave_threshold_rep(c).map_err(internal)? {
        ensure!(
            corollary1_check(c, &cr.rep).map_err(internal)?.holds(),
            "concave representation fails a clause"
        );
    }
    Ok(())
}

fn check_l3(c: &ChoiceDataset) -> Check {
    let full = fast::theta(c);
    let local = fast::theta_single_insertion(c);
    ensure!(
        full == local,
        "theta = {full}, single-insertion form = {local}"
    );
    Ok(())
}

fn check_p6(c: &ChoiceDataset) -> Check {
    let rel = rationalizable_acyclic(c)
        .map_err(internal)?
        .ok_or("not rationalizable")?;
    let theta = fast::theta(c);
    let irregular = exists_irregular_logit(c, Some(&rel)).map_err(internal)?;
    ensure!(
        theta == irregular.is_none(),
        "theta = {theta}, every aligned rule regular = {}",
        irregular.is_none()
    );
    if let Some(u) = irregular {
        ensure!(
            is_aligned(&u, &rel) && !logit_is_regular(c, &u),
            "counterexample not aligned or regular"
        );
    }
    Ok(())
}

fn check_pa(c: &ChoiceDataset) -> Check {
    let rel = rationalizable_acyclic(c)
        .map_err(internal)?
        .ok_or("not rationalizable")?;
    let pi = fast::path_independence(c);
    let res = exists_regular_logit(c, Some(&rel)).map_err(internal)?;
    ensure!(
        pi == res.result.feasible,
        "path independence = {pi}, aligned regular rule exists = {}",
        res.result.feasible
    );
    if let Some(u) = &res.utility {
        ensure!(is_aligned(u, &rel), "regular utility not aligned");
    }
    Ok(())
}

fn check_p4_dataset(c: &ChoiceDataset) -> Check {
    let alpha = fast::alpha(c);
    let filter = crate::lam::is_competition_filter(c)
        .map_err(internal)?
        .is_none();
    ensure!(
        filter == alpha,
        "competition filter = {filter}, alpha = {alpha}"
    );
    let lam = alpha_lam(c).map_err(internal)?;
    ensure!(
        lam.is_some() == alpha,
        "alpha = {alpha}, trivial model = {}",
        lam.is_some()
    );
    if let Some(model) = &lam {
        ensure!(&lam_choice(model) == c, "trivial model does not round-trip");
    }
    let acyclic = relation_r(c).is_acyclic();
    let expected = match (acyclic, alpha) {
        (false, _) => "cyclic_R",
        (true, false) => "alpha_violated",
        (true, true) => "found",
    };
    let got = trivial_lam(c).map_err(internal)?;
    ensure!(
        got.reason() == expected,
        "trivial_lam gave {}, expected {expected}",
        got.reason()
    );
    if let TrivialLam::Found(model) = got {
        ensure!(&lam_choice(&model) == c, "found model does not round-trip");
    }
    Ok(())
}

/// Forward direction on a model: induced choices with acyclic `R` satisfy
/// `α`; chosen-together alternatives are indifferent.
pub fn check_p4_model(model: &Lam) -> Check {
    let c = lam_choice(model);
    if relation_r(&c).is_acyclic() {
        ensure!(
            fast::alpha(&c),
            "model induces acyclic R but violates alpha:\n{}",
            c.to_text()
        );
    }
    for m in all_menus(c.n()) {
        let chosen = c.c(m);
        let first = chosen.first().ok_or("empty choice")?;
        ensure!(
            chosen
                .members()
                .all(|a| model.weak_order().indifferent(a, first)),
            "chosen-together alternatives are not indifferent"
        );
    }
    Ok(())
}

/// Branch behaviour for one model and agreeing utility (plus the exactly
/// representing mode when `u` represents the weak order).
pub fn check_p5(model: &Lam, u: &Utility) -> Check {
    let rep = lam_overload(model, u, WelfareMode::Agreeing).map_err(internal)?;
    let has_violations = !rep.report.violations.is_empty();
    match rep.branch {
        OverloadBranch::AlphaViolated => {
            ensure!(rep.report.overload, "alpha fails without overload")
        }
        OverloadBranch::Gtlm => ensure!(
            !rep.report.overload,
            "aligned utility with acyclic R reveals overload"
        ),
        OverloadBranch::MisalignedUtility | OverloadBranch::CyclicR => ensure!(
            rep.report.overload == has_violations,
            "outside threshold-Luce scope with alpha: overload = {}, violations = {has_violations}",
            rep.report.overload
        ),
    }
    let p = logit(&rep.choice, u).map_err(internal)?;
    for v in &rep.report.violations {
        if let Some(w) = &v.witness_utility {
            ensure!(
                expected_utility(&p, w, v.a) > expected_utility(&p, w, v.b),
                "evaluation witness does not reverse welfare"
            );
        }
    }
    if model.weak_order().represented_by(u) {
        let strict = lam_overload(model, u, WelfareMode::Representing).map_err(internal)?;
        ensure!(
            strict.report.overload == !strict.alpha,
            "representing utilities: overload = {}, alpha = {}",
            strict.report.overload,
            strict.alpha
        );
    }
    Ok(())
}

/// When `α` holds and `β` fails, a utility agreeing with the weak order and
/// ranking the dropped alternative above the kept one reveals overload.
pub fn check_p5_construction(model: &Lam) -> Check {
    let c = lam_choice(model);
    if !fast::alpha(&c) || fast::beta(&c) {
        return Ok(());
    }
    let cx = beta_counterexample(&c)
        .map_err(internal)?
        .ok_or("beta fails but no witness")?;
    let order = model.weak_order();
    let k = order.classes().len() as i64;
    let big = 4 * c.n() as i64;
    let spacing = 2 * big;
    let values: Vec<i64> = (0..c.n())
        .map(|i| {
            let a = Alternative::new(i);
            (k - order.rank(a) as i64) * spacing + if a == cx.y { big } else { 1 }
        })
        .collect();
    let u = Utility::from_integers(&values).map_err(internal)?;
    ensure!(
        order.agrees_with(&u),
        "constructed utility disagrees with the weak order"
    );
    let rep = lam_overload(model, &u, WelfareMode::Agreeing).map_err(internal)?;
    ensure!(
        rep.branch != OverloadBranch::Gtlm,
        "construction stays inside threshold-Luce scope"
    );
    ensure!(
        rep.report.overload,
        "alpha holds, beta fails, constructed misaligned utility shows no overload"
    );
    Ok(())
}

/// Strong shapes imply quasi shapes; the exponential families have their
/// strong shape.
pub fn check_shapes(u: &Utility, order: &LinearOrder) -> Check {
    if shape_check(u, order, Shape::StronglyConcave).holds {
        ensure!(
            shape_check(u, order, Shape::QuasiConcave).holds,
            "strongly concave but not quasi-concave"
        );
    }
    if shape_check(u, order, Shape::StronglyConvex).holds {
        ensure!(
            shape_check(u, order, Shape::QuasiConvex).holds,
            "strongly convex but not quasi-convex"
        );
    }
    Ok(())
}

pub fn check_families(order: &LinearOrder, a: i64) -> Check {
    for (family, shape, k) in [
        (Family::Concave, Shape::StronglyConcave, rational::int(2)),
        (Family::Convex, Shape::StronglyConvex, rational::zero()),
    ] {
        let u = lemma2_utility(order, family, &k, a).map_err(internal)?;
        ensure!(
            shape_check(&u, order, shape).holds,
            "family base {a} fails {shape}"
        );
        check_shapes(&u, order)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.name().parse::<TheoremId>().unwrap(), id);
        }
        assert!(matches!(
            "T9".parse::<TheoremId>(),
            Err(Error::UnknownTheorem(_))
        ));
    }
}
