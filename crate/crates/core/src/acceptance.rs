//! The acceptance suite: eleven exact or tolerance-pinned checks, each with
//! a wall-clock budget. Used by the `verify` subcommand and the
//! `acceptance` test target.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ce::{
    cs_deformation_cohomology, defect_deformation_cohomology, lie_cohomology, SuperModule,
};
use crate::clifford::{
    bernoulli_plus, charged_character, hh0_dimension, partition_function_identity, spinor_map_rank,
    supertrace, supertrace_via_top, wheel_term, CliffordElement,
};
use crate::confint::{framed_self_linking, gauss_linking, writhe_integral, ParamCurve};
use crate::diagram::{catalog, catalog_link, LinkSpec};
use crate::kauffman::jones_polynomial;
use crate::lie::{builtin, InvariantPairing, LieAlgebraData, Representation};
use crate::linalg::QMatrix;
use crate::quantum_group::{check_yang_baxter, identity, kink_scalar, sln_fundamental_ribbon};
use crate::ring::{rat, HSeries, LaurentPoly, Rational};
use crate::rt::{
    compare_with_bracket, hbar_expand_invariant, oriented_invariant, uniform_bracket_rules,
};
use crate::weights::{check_as_ihx, generated_family, lie_weight, symmetry_factor, JacobiGraph};

pub const DEFAULT_SEED: u64 = 20240611;

/// Linking tolerances.
pub const HOPF_TOLERANCE: f64 = 1e-3;
pub const PLANAR_WRITHE_TOLERANCE: f64 = 1e-6;
pub const TWIST_TOLERANCE: f64 = 1e-2;
pub const CALUGAREANU_TOLERANCE: f64 = 0.05;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    /// The checks passed and the run stayed within budget.
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_s: u64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2}. {} ({} ms, budget {} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.index,
            self.name,
            self.elapsed_ms,
            self.budget_s,
            self.detail
        )
    }
}

type Check = fn(u64) -> Result<String, String>;

const CRITERIA: [(&str, u64, Check); 11] = [
    ("bracket equality under one uniform rule", 10, bracket_rule),
    ("Jones kink invariance and mirror symmetry", 5, jones_oracle),
    ("low-order structure of the h-expansion", 5, vassiliev),
    ("deformation-complex dimensions", 60, deformation_dims),
    ("Whitehead vanishing for sl2 modules", 30, whitehead),
    ("Clifford algebra and spinor module", 30, clifford_suite),
    (
        "charged character and partition function",
        20,
        character_identities,
    ),
    (
        "wheel term against Bernoulli coefficients",
        10,
        wheel_consistency,
    ),
    ("ribbon axioms for sl_n, n = 2, 3, 4", 20, ribbon_axioms),
    ("AS, IHX and theta weights", 60, weight_relations),
    ("numerical linking and self-linking", 60, numerical_linking),
];

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

/// Runs criterion `index` (1-based).
pub fn run_criterion(index: usize, seed: u64) -> CriterionResult {
    let (name, budget_s, check) = CRITERIA[index - 1];
    let start = Instant::now();
    let outcome =
        std::panic::catch_unwind(|| check(seed)).unwrap_or_else(|_| Err("check panicked".into()));
    let elapsed = start.elapsed();
    let in_budget = elapsed <= Duration::from_secs(budget_s);
    let (passed, mut detail) = match outcome {
        Ok(d) => (in_budget, d),
        Err(d) => (false, d),
    };
    if !in_budget {
        detail.push_str("; over time budget");
    }
    CriterionResult {
        index,
        name,
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
        budget_s,
    }
}

/// Runs every criterion concurrently; results are in criterion order.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = (1..=CRITERIA.len())
            .map(|i| scope.spawn(move || run_criterion(i, seed)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread"))
            .collect()
    })
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bracket_rule(_: u64) -> Result<String, String> {
    let mut reports = Vec::new();
    for (name, link) in catalog() {
        let r = compare_with_bracket(&link.sliced()).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.verdict, || format!("{name}: no rule matches"))?;
        reports.push(r);
    }
    let uniform = uniform_bracket_rules(&reports);
    let rule = uniform
        .first()
        .ok_or("no rule is uniform across the catalog")?;
    Ok(format!(
        "{} links; uniform rule {}",
        reports.len(),
        rule.describe()
    ))
}

fn jones_of(link: &LinkSpec) -> Result<LaurentPoly, String> {
    let pd = link.pd();
    jones_polynomial(&pd, pd.writhe()).map_err(|e| e.to_string())
}

fn jones_oracle(_: u64) -> Result<String, String> {
    for (name, link) in catalog() {
        let v = jones_of(&link)?;
        for k in [-2, -1, 1, 2] {
            let kinked = LinkSpec::new(link.braid.clone(), link.framing_kinks + k);
            ensure(jones_of(&kinked)? == v, || {
                format!("{name}: kink {k} changes V")
            })?;
        }
        ensure(
            jones_of(&link.mirror())? == v.substitute_power(-1, 1),
            || format!("{name}: mirror is not V(1/t)"),
        )?;
    }
    let right = jones_of(&catalog_link("trefoil-right").map_err(|e| e.to_string())?)?;
    let left = jones_of(&catalog_link("trefoil-left").map_err(|e| e.to_string())?)?;
    ensure(
        right != left && left == right.substitute_power(-1, 1),
        || "trefoils are not distinct mirror images".into(),
    )?;
    Ok(format!("right trefoil V = {}", right.render("t")))
}

fn vassiliev(_: u64) -> Result<String, String> {
    let rep = sln_fundamental_ribbon(2).map_err(|e| e.to_string())?;
    let unknot = oriented_invariant(
        &catalog_link("unknot").map_err(|e| e.to_string())?.sliced(),
        &rep,
    )
    .map_err(|e| e.to_string())?;
    let mut knots = 0;
    let mut trefoil_h2 = Rational::zero();
    for (name, link) in catalog() {
        if link.pd().component_count() != 1 {
            continue;
        }
        knots += 1;
        let p = oriented_invariant(&link.sliced(), &rep).map_err(|e| e.to_string())?;
        let s = hbar_expand_invariant(&p, 4, Some(&unknot)).map_err(|e| e.to_string())?;
        ensure(s.coeff(0).is_one() && s.coeff(1).is_zero(), || {
            format!("{name}: expansion starts {s}")
        })?;
        if name == "trefoil-right" {
            trefoil_h2 = s.coeff(2).clone();
        }
    }
    ensure(!trefoil_h2.is_zero(), || {
        "trefoil h^2 coefficient vanishes".into()
    })?;
    Ok(format!(
        "{knots} knots; trefoil h^2 coefficient {trefoil_h2}"
    ))
}

fn algebra(name: &str) -> Result<(LieAlgebraData, Option<Representation>), String> {
    builtin(name).map_err(|e| e.to_string())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn deformation_dims(_: u64) -> Result<String, String> {
    for name in ["sl2", "sl3"] {
        let (g, _) = algebra(name)?;
        let dims = cs_deformation_cohomology(&g).map_err(|e| e.to_string())?;
        ensure(dims == (1, 0), || format!("{name}: (H3, H4) = {dims:?}"))?;
    }
    let (g, rep) = algebra("sl2")?;
    let rep = rep.expect("fundamental");
    for boundary in [false, true] {
        let dims = defect_deformation_cohomology(&g, &rep, boundary).map_err(|e| e.to_string())?;
        ensure(dims == (0, 0), || {
            format!("sl2 defect (boundary = {boundary}): {dims:?}")
        })?;
    }
    let mut control = Vec::new();
    for d in 1..=2 {
        let g = LieAlgebraData::abelian(d);
        let rep = Representation::trivial(&g, 1);
        let got = defect_deformation_cohomology(&g, &rep, false).map_err(|e| e.to_string())?;
        // zero bracket and zero action: dim H^k = C(d, k) dim M with dim M = 3
        let expect = (binomial(d, 1) * 3, binomial(d, 2) * 3);
        ensure(got == expect, || {
            format!("abelian({d}): {got:?}, oracle {expect:?}")
        })?;
        control.push(format!("abelian({d}) {got:?}"));
    }
    Ok(format!(
        "sl2, sl3 (1, 0); sl2 defect (0, 0) both variants; {}",
        control.join(", ")
    ))
}

fn whitehead(_: u64) -> Result<String, String> {
    let (g, _) = algebra("sl2")?;
    let mut modules = vec![("trivial".to_string(), SuperModule::trivial(&g))];
    for k in [1, 2, 3, 4] {
        let (_, rep) = algebra(&format!("sl2_irrep({k})"))?;
        modules.push((
            format!("dim {}", k + 1),
            SuperModule::from_representation(&rep.expect("irrep")),
        ));
    }
    modules.push((
        "adjoint".into(),
        SuperModule::from_representation(&g.adjoint_representation()),
    ));
    for (label, m) in &modules {
        let betti = lie_cohomology(&g, m).map_err(|e| e.to_string())?;
        let h = |k: usize| betti.get(k).copied().unwrap_or(0);
        ensure(h(1) == 0 && h(2) == 0, || {
            format!("{label}: H1 = {}, H2 = {}", h(1), h(2))
        })?;
    }
    Ok(format!("H1 = H2 = 0 for {} modules", modules.len()))
}

fn clifford_suite(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for d in 1..=3usize {
        let rank = spinor_map_rank(d).map_err(|e| e.to_string())?;
        ensure(rank == 1 << (2 * d), || format!("d = {d}: rank {rank}"))?;
        let hh0 = hh0_dimension(d).map_err(|e| e.to_string())?;
        ensure(hh0 == 1, || format!("d = {d}: HH0 has dimension {hh0}"))?;
        for _ in 0..200 {
            let a = CliffordElement::random(d, &mut rng, 5);
            let b = CliffordElement::random(d, &mut rng, 5);
            let ab = a.multiply(&b).map_err(|e| e.to_string())?;
            ensure(
                ab.spinor_matrix() == a.spinor_matrix().mul(&b.spinor_matrix()),
                || format!("d = {d}: not multiplicative"),
            )?;
            ensure(
                supertrace_via_top(&a) == supertrace(&a.spinor_matrix()),
                || format!("d = {d}: supertraces differ"),
            )?;
        }
    }
    Ok("d = 1, 2, 3: rank 4^d, HH0 = 1, 200 products and supertraces each".into())
}

type CartanInput = (String, LieAlgebraData, Representation, Vec<Rational>);

/// Test inputs with `ρ(X)` diagonal: `X = H` for `sl2` and `X = H_1 + 2H_2`
/// for `sl3`.
fn cartan_inputs() -> Result<Vec<CartanInput>, String> {
    let (sl2, fund2) = algebra("sl2")?;
    let (sl3, fund3) = algebra("sl3")?;
    let mut h = vec![Rational::zero(); 3];
    h[0] = rat(1, 1);
    let mut h3 = vec![Rational::zero(); 8];
    h3[0] = rat(1, 1);
    h3[1] = rat(2, 1);
    let adj = sl2.adjoint_representation();
    Ok(vec![
        (
            "sl2 fundamental".into(),
            sl2.clone(),
            fund2.expect("fundamental"),
            h.clone(),
        ),
        ("sl2 adjoint".into(), sl2, adj, h),
        (
            "sl3 fundamental".into(),
            sl3,
            fund3.expect("fundamental"),
            h3,
        ),
    ])
}

fn is_diagonal(m: &QMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m[(i, j)].is_zero()))
}

/// `Π_μ (e^{tμ/2} - e^{-tμ/2})` over the diagonal entries `μ`.
fn weight_product(a: &QMatrix, order: usize) -> Result<HSeries, String> {
    let mut out = HSeries::one(order);
    for i in 0..a.rows() {
        let half = HSeries::variable(order).scale(&(&a[(i, i)] / rat(2, 1)));
        let plus = half.exp().map_err(|e| e.to_string())?;
        let minus = (-&half).exp().map_err(|e| e.to_string())?;
        out = &out * &(&plus - &minus);
    }
    Ok(out)
}

fn character_identities(_: u64) -> Result<String, String> {
    const ORDER: usize = 6;
    for (label, g, rho, x) in cartan_inputs()? {
        let id = partition_function_identity(&g, &rho, &x, ORDER).map_err(|e| e.to_string())?;
        ensure(id.holds, || {
            format!(
                "{label}: partition function {} vs character {}",
                id.lhs, id.rhs
            )
        })?;
        let a = rho.apply(&x);
        ensure(is_diagonal(&a), || format!("{label}: ρ(X) is not diagonal"))?;
        let ch = charged_character(&g, &rho, &x, ORDER).map_err(|e| e.to_string())?;
        ensure(ch == weight_product(&a, ORDER)?, || {
            format!("{label}: character differs from the weight product")
        })?;
    }
    Ok(format!("3 inputs to order {ORDER}"))
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * rat(k as i64, 1))
}

fn wheel_consistency(_: u64) -> Result<String, String> {
    const ORDER: usize = 8;
    let b = bernoulli_plus(ORDER);
    for (label, _, rho, x) in cartan_inputs()? {
        let series = wheel_term(&rho, &x, ORDER).map_err(|e| e.to_string())?;
        let a = rho.apply(&x);
        let mut power = identity_q(a.rows());
        for m in 1..=ORDER {
            power = power.mul(&a);
            // log(e^{-s/2} Td(s)) = -Σ_{m even} B_m s^m / (m m!)
            let expect = if m % 2 == 0 {
                &b[m] / (rat(m as i64, 1) * factorial(m)) * power.trace()
            } else {
                Rational::zero()
            };
            ensure(series.coeff(m) == &expect, || {
                format!(
                    "{label}: order {m} coefficient {} vs {expect}",
                    series.coeff(m)
                )
            })?;
        }
        ensure(series.coeff(0).is_zero(), || {
            format!("{label}: nonzero constant term")
        })?;
    }
    let (g, _) = algebra("sl2")?;
    let zero = Representation::trivial(&g, 2);
    let z =
        wheel_term(&zero, &[rat(1, 1), rat(0, 1), rat(0, 1)], ORDER).map_err(|e| e.to_string())?;
    ensure(z.is_zero(), || format!("ρ = 0 gives {z}"))?;
    Ok(format!("3 inputs through order {ORDER}; ρ = 0 gives 0"))
}

fn identity_q(n: usize) -> QMatrix {
    QMatrix::identity(n)
}

fn ribbon_axioms(_: u64) -> Result<String, String> {
    let mut twists = Vec::new();
    for n in 2..=4 {
        let rep = sln_fundamental_ribbon(n).map_err(|e| e.to_string())?;
        ensure(rep.r().mul(rep.r_inv()) == identity(n * n), || {
            format!("sl{n}: R R^-1 is not I")
        })?;
        ensure(check_yang_baxter(rep.r()).unwrap_or(false), || {
            format!("sl{n}: Yang-Baxter fails")
        })?;
        let pos = kink_scalar(&rep.kink(true)).map_err(|e| format!("sl{n}: positive kink {e}"))?;
        let neg = kink_scalar(&rep.kink(false)).map_err(|e| format!("sl{n}: negative kink {e}"))?;
        ensure(&pos * &neg == LaurentPoly::one(), || {
            format!("sl{n}: kinks are not inverse")
        })?;
        ensure(rep.verify(), || format!("sl{n}: ribbon verification fails"))?;
        twists.push(format!("sl{n} θ = {}", pos.render("q")));
    }
    Ok(twists.join(", "))
}

/// Sum over all labelings of the half-edges of the product of vertex
/// tensors `⟨[e_a, e_b], e_c⟩` and inverse-pairing entries.
fn brute_force_weight(graph: &JacobiGraph, g: &LieAlgebraData, g0: &QMatrix) -> Rational {
    let d = g.dim();
    let ginv = g0.inverse().expect("nondegenerate pairing");
    let f_low = |a: usize, b: usize, c: usize| {
        (0..d).fold(Rational::zero(), |acc, m| acc + g.f(a, b, m) * &g0[(m, c)])
    };
    let n = graph.half_edge_count();
    let mut label = vec![0usize; n];
    let mut total = Rational::zero();
    for code in 0..d.pow(n as u32) {
        let mut c = code;
        for slot in label.iter_mut() {
            *slot = c % d;
            c /= d;
        }
        let mut term = Rational::one();
        for &(a, b) in &graph.edges {
            term *= &ginv[(label[a], label[b])];
        }
        if term.is_zero() {
            continue;
        }
        for v in &graph.vertices {
            term *= f_low(label[v[0]], label[v[1]], label[v[2]]);
        }
        total += term;
    }
    total
}

fn weight_relations(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family = generated_family(&mut rng, 4);
    let mut parts = Vec::new();
    for name in ["sl2", "so3"] {
        let (g, _) = algebra(name)?;
        let k = InvariantPairing::killing(&g);
        let report = check_as_ihx(&g, &k, &family).map_err(|e| e.to_string())?;
        ensure(report.passed(), || {
            format!("{name}: {}", report.failures.join("; "))
        })?;
        let theta = JacobiGraph::theta();
        let w = lie_weight(&theta, &g, &k).map_err(|e| e.to_string())?;
        let oracle = brute_force_weight(&theta, &g, &k.orders()[0]);
        ensure(w.coeff(0) == &oracle, || {
            format!("{name}: theta {} vs oracle {oracle}", w.coeff(0))
        })?;
        parts.push(format!(
            "{name}: {} AS, {} IHX checks, theta = {oracle}",
            report.as_checks, report.ihx_checks
        ));
    }
    let sym = symmetry_factor(&JacobiGraph::theta()).map_err(|e| e.to_string())?;
    ensure(sym == 12, || format!("theta symmetry factor {sym}"))?;
    Ok(format!(
        "{} graphs; {}; |Aut(theta)| = 12",
        family.len(),
        parts.join("; ")
    ))
}

fn numerical_linking(_: u64) -> Result<String, String> {
    let e = |err: crate::confint::ConfintError| err.to_string();
    let a = ParamCurve::unit_circle(512);
    let b = ParamCurve::circle(512, [1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0], 1.0)
        .map_err(e)?;
    let lk = gauss_linking(&a, &b).map_err(e)?;
    ensure((lk.abs() - 1.0).abs() < HOPF_TOLERANCE, || {
        format!("Hopf linking {lk:.9}")
    })?;
    let planar = writhe_integral(&a).writhe;
    ensure(planar.abs() < PLANAR_WRITHE_TOLERANCE, || {
        format!("planar writhe {planar:.9e}")
    })?;
    for k in -2..=2 {
        let sl = framed_self_linking(&a.twisted_framing(k).map_err(e)?, 0.05).map_err(e)?;
        ensure((sl - k as f64).abs() < TWIST_TOLERANCE, || {
            format!("{k}-twist self-linking {sl:.9}")
        })?;
    }
    let t = ParamCurve::torus_knot(2, 3, 1024).map_err(e)?;
    let report = writhe_integral(&t);
    let sl = framed_self_linking(&t.frenet_framing().map_err(e)?, 0.1).map_err(e)?;
    let gap = (report.writhe - (sl - report.total_torsion / std::f64::consts::TAU)).abs();
    ensure(gap < CALUGAREANU_TOLERANCE, || {
        format!(
            "Wr {:.9} vs SL - Tw {:.9}",
            report.writhe,
            sl - report.total_torsion / std::f64::consts::TAU
        )
    })?;
    Ok(format!(
        "Hopf {lk:.9}; planar writhe {planar:.3e}; torus knot Wr {:.9}, SL {sl:.9}, gap {gap:.3e}",
        report.writhe
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!((binomial(2, 1), binomial(2, 2), binomial(1, 2)), (2, 1, 0));
    }

    #[test]
    fn weight_product_of_sl2_fundamental() {
        // (e^{t/2} - e^{-t/2})(e^{-t/2} - e^{t/2}) = -(t + t^3/24 + ...)^2
        let a = QMatrix::diagonal(&[rat(1, 1), rat(-1, 1)]);
        let w = weight_product(&a, 4).unwrap();
        assert_eq!(
            w.coeffs(),
            &[rat(0, 1), rat(0, 1), rat(-1, 1), rat(0, 1), rat(-1, 12)]
        );
    }

    #[test]
    fn criteria_are_numbered_in_order() {
        let r = run_criterion(9, DEFAULT_SEED);
        assert_eq!(r.index, 9);
        assert!(r.passed, "{}", r.line());
    }
}
