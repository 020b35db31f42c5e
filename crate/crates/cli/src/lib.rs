//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns the exit code with the rendered output.

use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rtfactor::acceptance::{run_all, DEFAULT_SEED};
use rtfactor::ce::{
    cs_deformation_cohomology, defect_deformation_cohomology, lie_cohomology, SuperModule,
};
use rtfactor::clifford::partition_function_identity;
use rtfactor::confint::{framed_self_linking, gauss_linking, writhe_integral, ParamCurve, Vec3};
use rtfactor::diagram::{catalog_link, catalog_names, parse_braid, LinkSpec};
use rtfactor::kauffman::{jones_polynomial, kauffman_bracket, render_bracket};
use rtfactor::lie::{builtin, InvariantPairing, LieAlgebraData, Representation};
use rtfactor::linalg::QMatrix;
use rtfactor::quantum_group::{sln_fundamental_ribbon, RibbonRep};
use rtfactor::ring::{parse_rational, rat, HSeries, LaurentPoly, Rational};
use rtfactor::rt::{
    compare_with_bracket, framed_invariant, hbar_expand_invariant, normalized_invariant,
    oriented_invariant,
};
use rtfactor::weights::{
    check_as_ihx, coupled_weight, generated_family, symmetry_factor, BicoloredGraph, JacobiGraph,
    VertexMode, WeightContext,
};

/// Environment variable overriding the seed of randomized checks.
pub const SEED_VAR: &str = "RTFACTOR_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "rtfactor",
    version,
    about = "Quantum link invariants, Lie algebra cohomology, Clifford partition functions and graph weights"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quantum invariant of a link in the vector representation of sl_n.
    Invariant(InvariantArgs),
    /// Kauffman bracket in the variable A.
    Bracket(LinkArgs),
    /// Jones polynomial in t.
    Jones(LinkArgs),
    /// Expansion at q = e^h of a link invariant or of a given polynomial.
    Expand(ExpandArgs),
    /// Betti numbers of Chevalley-Eilenberg and deformation complexes.
    Cohomology(CohomologyArgs),
    /// Both sides of the charged-fermion partition-function identity.
    Character(CharacterArgs),
    /// Lie-theoretic weight of a graph, or AS/IHX checks on a generated family.
    Weights(WeightsArgs),
    /// Gauss linking, self-linking and writhe of curves.
    Linking(LinkingArgs),
    /// Runs the acceptance suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct LinkArgs {
    /// Catalog name, braid word such as `B2:1,1,1`, or JSON link file.
    #[arg(long)]
    pub link: String,
}

#[derive(Debug, Args)]
pub struct InvariantArgs {
    #[command(flatten)]
    pub link: LinkArgs,
    /// sl2, sl3 or sl4.
    #[arg(long, default_value = "sl2")]
    pub algebra: String,
    /// Print the framed invariant (the default).
    #[arg(long, conflicts_with = "jones")]
    pub framed: bool,
    /// Print the Jones polynomial recovered from the sl2 invariant.
    #[arg(long)]
    pub jones: bool,
    /// Also print the h-expansion to this order.
    #[arg(long)]
    pub expand: Option<usize>,
    /// Use the framing-independent invariant divided by the unknot.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    /// Link to evaluate.
    #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
    pub link: Option<String>,
    /// Laurent polynomial in q, in the canonical rendering.
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long, default_value = "sl2")]
    pub algebra: String,
    #[arg(long, default_value_t = 4)]
    pub order: usize,
    /// Divide by the unknot after removing the framing dependence.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Deformation {
    None,
    Cs,
    Defect,
    DefectBoundary,
}

#[derive(Debug, Args)]
pub struct CohomologyArgs {
    /// Builtin name or JSON algebra file.
    #[arg(long)]
    pub algebra: String,
    /// `trivial` or `rep:<spec>`.
    #[arg(long, default_value = "trivial")]
    pub coefficients: String,
    #[arg(long, value_enum, default_value_t = Deformation::None)]
    pub deformation: Deformation,
}

#[derive(Debug, Args)]
pub struct CharacterArgs {
    #[arg(long)]
    pub algebra: String,
    /// `fundamental`, `adjoint`, `trivial:<n>`, a builtin name or a JSON file.
    #[arg(long, default_value = "fundamental")]
    pub rep: String,
    /// Coordinates of X, comma separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub element: String,
    #[arg(long, default_value_t = 6)]
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    /// JSON graph file, or `theta`, `fermion-loop`, `fermion-bubble`.
    #[arg(long, required_unless_present = "check_relations")]
    pub graph: Option<String>,
    #[arg(long)]
    pub algebra: String,
    /// Representation for fermion vertices.
    #[arg(long, default_value = "fundamental")]
    pub rep: String,
    /// Multiple of the Killing form used as the pairing.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub pairing_scale: String,
    /// Use the identity matrix instead of the Killing form.
    #[arg(long)]
    pub identity_pairing: bool,
    /// Vertex tensors with the classical part of the pairing only.
    #[arg(long)]
    pub classical: bool,
    /// Check AS and IHX on a seeded random family instead.
    #[arg(long)]
    pub check_relations: bool,
    /// Random graphs per vertex count for `--check-relations`.
    #[arg(long, default_value_t = 4)]
    pub per_size: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct LinkingArgs {
    /// JSON file with one curve or a list of two, or `hopf`, `trefoil`, `circle`.
    #[arg(long)]
    pub curves: String,
    /// Resample every curve to this many points.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Push-off distance for framed self-linking.
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Exit code and rendered streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A domain error with a short machine-readable kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    fn new(kind: &'static str, message: impl ToString) -> Self {
        Self {
            kind,
            message: message.to_string(),
        }
    }
}

macro_rules! failure_from {
    ($($t:ty => $kind:literal),* $(,)?) => {
        $(impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::new($kind, e)
            }
        })*
    };
}

failure_from! {
    rtfactor::diagram::DiagramError => "diagram",
    rtfactor::kauffman::KauffmanError => "kauffman",
    rtfactor::rt::RtError => "invariant",
    rtfactor::quantum_group::QuantumGroupError => "quantum_group",
    rtfactor::lie::LieError => "algebra",
    rtfactor::ce::CeError => "cohomology",
    rtfactor::clifford::CliffordError => "clifford",
    rtfactor::weights::WeightError => "weights",
    rtfactor::confint::ConfintError => "linking",
    rtfactor::ring::RingError => "parse",
    std::io::Error => "io",
}

/// Rendered result: text lines and the JSON value.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            ok: true,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let format = cli.format;
    match dispatch(cli.command) {
        Ok(report) => {
            let stdout = match format {
                Format::Text => report.text,
                Format::Json => serde_json::to_string_pretty(&report.json).expect("json") + "\n",
            };
            Outcome {
                code: if report.ok { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => match format {
            Format::Text => Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("error[{}]: {}\n", f.kind, f.message),
            },
            Format::Json => {
                let body = json!({"error": {"kind": f.kind, "message": f.message}});
                Outcome {
                    code: 1,
                    stdout: serde_json::to_string_pretty(&body).expect("json") + "\n",
                    stderr: String::new(),
                }
            }
        },
    }
}

fn dispatch(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Invariant(a) => invariant(&a),
        Command::Bracket(a) => bracket(&a),
        Command::Jones(a) => jones(&a),
        Command::Expand(a) => expand(&a),
        Command::Cohomology(a) => cohomology(&a),
        Command::Character(a) => character(&a),
        Command::Weights(a) => weights(&a),
        Command::Linking(a) => linking(&a),
        Command::Verify(a) => verify(&a),
    }
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new("io", format!("{path}: {e}")))
}

/// Catalog name, braid word or JSON file.
pub fn resolve_link(spec: &str) -> Result<LinkSpec, Failure> {
    if let Ok(link) = catalog_link(spec) {
        return Ok(link);
    }
    if spec.starts_with('B') && spec.contains(':') && !Path::new(spec).exists() {
        return Ok(LinkSpec::new(parse_braid(spec)?, 0));
    }
    if Path::new(spec).exists() {
        return Ok(LinkSpec::from_json(&read_file(spec)?)?);
    }
    Err(Failure::new(
        "diagram",
        format!(
            "`{spec}` is not a catalog link ({}), braid word or file",
            catalog_names().join(", ")
        ),
    ))
}

fn ribbon(algebra: &str) -> Result<RibbonRep, Failure> {
    let n = match algebra {
        "sl2" => 2,
        "sl3" => 3,
        "sl4" => 4,
        other => {
            return Err(Failure::new(
                "algebra",
                format!("invariants are available for sl2, sl3, sl4, not `{other}`"),
            ))
        }
    };
    Ok(sln_fundamental_ribbon(n)?)
}

fn poly_json(p: &LaurentPoly, var: &str) -> Value {
    json!(p.render(var))
}

fn series_json(s: &HSeries) -> Value {
    json!(s.render("h"))
}

/// The framed or normalized invariant and its expansion.
fn invariant(a: &InvariantArgs) -> Result<Report, Failure> {
    let link = resolve_link(&a.link.link)?;
    let rep = ribbon(&a.algebra)?;
    let sliced = link.sliced();
    let pd = link.pd();
    let (writhe, components) = (pd.writhe(), pd.component_count());
    let mut text = String::new();
    let mut out = json!({"link": link.to_json_value(), "algebra": a.algebra, "writhe": writhe, "components": components});
    if a.jones {
        if rep.n() != 2 {
            return Err(Failure::new("invariant", "--jones needs --algebra sl2"));
        }
        // θ^{-w}F/[2] = (-1)^{c-1} V(t) at t = q^{-1}
        let normalized = normalized_invariant(&sliced, &rep)?;
        let sign = if components % 2 == 1 { 1 } else { -1 };
        let v = normalized.scale(&rat(sign, 1)).substitute_power(-1, 1);
        let skein = jones_polynomial(&pd, writhe)?;
        text += &format!("V(t) = {}\n", v.render("t"));
        text += &format!("state-sum Jones agrees: {}\n", v == skein);
        out["jones"] = poly_json(&v, "t");
        out["matches_state_sum"] = json!(v == skein);
    } else {
        let (label, value) = if a.normalize {
            ("normalized", normalized_invariant(&sliced, &rep)?)
        } else {
            ("framed", framed_invariant(&sliced, &rep)?)
        };
        text += &format!("{label} invariant = {}\n", value.render("q"));
        out[label] = poly_json(&value, "q");
    }
    if let Some(order) = a.expand {
        let s = expansion(&link, &rep, order, a.normalize)?;
        text += &format!("expansion = {}\n", s.render("h"));
        out["expansion"] = series_json(&s);
    }
    Ok(Report::ok(text, out))
}

/// `F(L)` at `q = e^h`, or `θ^{-w}F(L)/F(unknot)` with `normalize`.
fn expansion(
    link: &LinkSpec,
    rep: &RibbonRep,
    order: usize,
    normalize: bool,
) -> Result<HSeries, Failure> {
    if normalize {
        let p = oriented_invariant(&link.sliced(), rep)?;
        let unknot = oriented_invariant(&catalog_link("unknot")?.sliced(), rep)?;
        Ok(hbar_expand_invariant(&p, order, Some(&unknot))?)
    } else {
        Ok(hbar_expand_invariant(
            &framed_invariant(&link.sliced(), rep)?,
            order,
            None,
        )?)
    }
}

fn bracket(a: &LinkArgs) -> Result<Report, Failure> {
    let link = resolve_link(&a.link)?;
    let pd = link.pd();
    let b = kauffman_bracket(&pd)?;
    let cmp = compare_with_bracket(&link.sliced())?;
    let rules: Vec<String> = cmp.rules.iter().map(|r| r.describe()).collect();
    let text = format!(
        "<L> = {}\nwrithe = {}\nmatching rules: {}\n",
        render_bracket(&b),
        pd.writhe(),
        if rules.is_empty() {
            "none".into()
        } else {
            rules.join("; ")
        }
    );
    Ok(Report::ok(
        text,
        json!({"bracket": poly_json(&b, "A"), "writhe": pd.writhe(), "components": pd.component_count(), "rules": rules}),
    ))
}

fn jones(a: &LinkArgs) -> Result<Report, Failure> {
    let link = resolve_link(&a.link)?;
    let pd = link.pd();
    let v = jones_polynomial(&pd, pd.writhe())?;
    Ok(Report::ok(
        format!("V(t) = {}\n", v.render("t")),
        json!({"jones": poly_json(&v, "t"), "writhe": pd.writhe()}),
    ))
}

fn expand(a: &ExpandArgs) -> Result<Report, Failure> {
    let s = match (&a.link, &a.poly) {
        (Some(link), _) => expansion(
            &resolve_link(link)?,
            &ribbon(&a.algebra)?,
            a.order,
            a.normalize,
        )?,
        (None, Some(poly)) => {
            hbar_expand_invariant(&LaurentPoly::parse(poly, "q")?, a.order, None)?
        }
        (None, None) => unreachable!("clap requires one of --link and --poly"),
    };
    Ok(Report::ok(
        format!("{}\n", s.render("h")),
        json!({"expansion": series_json(&s), "order": a.order}),
    ))
}

/// Builtin name or JSON algebra file, with the builtin's default module.
pub fn resolve_algebra(spec: &str) -> Result<(LieAlgebraData, Option<Representation>), Failure> {
    match builtin(spec) {
        Ok(found) => Ok(found),
        Err(e) if !Path::new(spec).exists() => Err(e.into()),
        Err(_) => Ok((LieAlgebraData::from_json(&read_file(spec)?)?, None)),
    }
}

/// `fundamental`, `adjoint`, `trivial:<n>`, a builtin name or a JSON file.
pub fn resolve_rep(
    g: &LieAlgebraData,
    default: Option<&Representation>,
    spec: &str,
) -> Result<Representation, Failure> {
    let mismatch = || {
        Failure::new(
            "algebra",
            format!("representation `{spec}` does not match the algebra"),
        )
    };
    match spec {
        "fundamental" | "default" => default
            .cloned()
            .ok_or_else(|| Failure::new("algebra", "this algebra has no default representation")),
        "adjoint" => Ok(g.adjoint_representation()),
        _ => {
            if let Some(n) = spec.strip_prefix("trivial:") {
                let n = n
                    .parse()
                    .map_err(|_| Failure::new("parse", format!("bad dimension in `{spec}`")))?;
                return Ok(Representation::trivial(g, n));
            }
            if Path::new(spec).exists() {
                return Ok(Representation::from_json(g, &read_file(spec)?)?);
            }
            let (h, rep) = builtin(spec)?;
            if h != *g {
                return Err(mismatch());
            }
            rep.ok_or_else(mismatch)
        }
    }
}

fn cohomology(a: &CohomologyArgs) -> Result<Report, Failure> {
    let (g, default) = resolve_algebra(&a.algebra)?;
    let coeff_rep = match a.coefficients.as_str() {
        "trivial" => None,
        other => {
            let spec = other.strip_prefix("rep:").ok_or_else(|| {
                Failure::new(
                    "parse",
                    format!("coefficients must be `trivial` or `rep:<spec>`, got `{other}`"),
                )
            })?;
            Some(resolve_rep(&g, default.as_ref(), spec)?)
        }
    };
    let (text, json) = match a.deformation {
        Deformation::None => {
            let m = coeff_rep.as_ref().map_or_else(
                || SuperModule::trivial(&g),
                SuperModule::from_representation,
            );
            let betti = lie_cohomology(&g, &m)?;
            let text = betti
                .iter()
                .enumerate()
                .map(|(k, b)| format!("H{k}={b}"))
                .collect::<Vec<_>>()
                .join(" ");
            (text, json!({"betti": betti}))
        }
        Deformation::Cs => {
            let (h3, h4) = cs_deformation_cohomology(&g)?;
            (format!("H3={h3} H4={h4}"), json!({"H3": h3, "H4": h4}))
        }
        Deformation::Defect | Deformation::DefectBoundary => {
            let rep = match coeff_rep {
                Some(r) => r,
                None => resolve_rep(&g, default.as_ref(), "fundamental")?,
            };
            let boundary = a.deformation == Deformation::DefectBoundary;
            let (h0, h1) = defect_deformation_cohomology(&g, &rep, boundary)?;
            (
                format!("H0={h0} H1={h1}"),
                json!({"H0": h0, "H1": h1, "boundary": boundary}),
            )
        }
    };
    Ok(Report::ok(text + "\n", json))
}

fn parse_coords(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|s| parse_rational(s.trim()).map_err(Failure::from))
        .collect()
}

fn character(a: &CharacterArgs) -> Result<Report, Failure> {
    let (g, default) = resolve_algebra(&a.algebra)?;
    let rho = resolve_rep(&g, default.as_ref(), &a.rep)?;
    let x = parse_coords(&a.element)?;
    let id = partition_function_identity(&g, &rho, &x, a.order)?;
    let text = format!(
        "partition function = h^{{{}}} * ({})\ncharacter          = h^{{{}}} * ({})\nidentity holds: {}\n",
        id.hbar_power,
        id.lhs.render("t"),
        id.hbar_power,
        id.rhs.render("t"),
        id.holds
    );
    let json = json!({"lhs": id.lhs.render("t"), "rhs": id.rhs.render("t"), "hbar_power": id.hbar_power, "holds": id.holds});
    Ok(Report {
        text,
        json,
        ok: id.holds,
    })
}

fn seed(explicit: Option<u64>) -> u64 {
    explicit
        .or_else(|| std::env::var(SEED_VAR).ok().and_then(|s| s.parse().ok()))
        .unwrap_or(DEFAULT_SEED)
}

enum GraphInput {
    Jacobi(JacobiGraph),
    Bicolored(BicoloredGraph),
}

fn resolve_graph(spec: &str) -> Result<GraphInput, Failure> {
    match spec {
        "theta" => return Ok(GraphInput::Jacobi(JacobiGraph::theta())),
        "fermion-loop" => return Ok(GraphInput::Bicolored(BicoloredGraph::fermion_wheel(0))),
        "fermion-bubble" => {
            return Ok(GraphInput::Bicolored(
                BicoloredGraph::fermion_two_wheel_closed(),
            ))
        }
        _ => {}
    }
    let text = read_file(spec)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::new("weights", e))?;
    let bicolored = [
        "fermion_vertices",
        "gauge_vertices",
        "fermion_edges",
        "bare_fermion_loops",
    ]
    .iter()
    .any(|k| value.get(k).is_some());
    Ok(if bicolored {
        GraphInput::Bicolored(BicoloredGraph::from_json(&text)?)
    } else {
        GraphInput::Jacobi(JacobiGraph::from_json(&text)?)
    })
}

fn weights(a: &WeightsArgs) -> Result<Report, Failure> {
    let (g, default) = resolve_algebra(&a.algebra)?;
    let scale = parse_rational(&a.pairing_scale)?;
    let base = if a.identity_pairing {
        QMatrix::identity(g.dim())
    } else {
        g.killing_form()
    };
    let lambda = InvariantPairing::classical(base.scale(&scale));
    if lambda.orders()[0].rank() < g.dim() {
        return Err(Failure::new(
            "weights",
            "the pairing is degenerate; use --identity-pairing for non-semisimple algebras",
        ));
    }
    if a.check_relations {
        let seed = seed(a.seed);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let family = generated_family(&mut rng, a.per_size);
        let report = check_as_ihx(&g, &lambda, &family)?;
        let text = format!(
            "{} graphs, {} AS checks, {} IHX checks: {}\n{}",
            report.graphs,
            report.as_checks,
            report.ihx_checks,
            if report.passed() {
                "all hold"
            } else {
                "FAILURES"
            },
            report
                .failures
                .iter()
                .map(|f| format!("  {f}\n"))
                .collect::<String>()
        );
        let json = json!({"seed": seed, "report": report});
        return Ok(Report {
            text,
            json,
            ok: report.passed(),
        });
    }
    let spec = a.graph.as_deref().expect("clap requires --graph");
    let mode = if a.classical {
        VertexMode::Classical
    } else {
        VertexMode::Full
    };
    let ctx = WeightContext::new(&g, &lambda).with_mode(mode);
    match resolve_graph(spec)? {
        GraphInput::Jacobi(graph) => {
            let w = rtfactor::weights::lie_weight_with(&ctx, &graph, &[]).map_err(|e| {
                if graph.legs.is_empty() {
                    Failure::from(e)
                } else {
                    Failure::new("weights", "open graphs need leg vectors; close all legs")
                }
            })?;
            let sym = symmetry_factor(&graph).ok();
            let text = format!(
                "weight = {}\nsymmetry factor = {}\n",
                w.render("h"),
                sym.map_or("n/a".into(), |s| s.to_string())
            );
            Ok(Report::ok(
                text,
                json!({"weight": series_json(&w), "symmetry_factor": sym, "graph": serde_json::from_str::<Value>(&graph.to_json()).expect("json")}),
            ))
        }
        GraphInput::Bicolored(graph) => {
            let rho = resolve_rep(&g, default.as_ref(), &a.rep)?;
            let w = if graph.legs.is_empty() {
                coupled_weight(&graph, &g, &rho, &lambda)?
            } else {
                return Err(Failure::new(
                    "weights",
                    "open graphs need leg vectors; close all legs",
                ));
            };
            let text = format!(
                "weight = {}\nfermion cycles = {}\n",
                w.render("h"),
                graph.fermion_cycles()
            );
            Ok(Report::ok(
                text,
                json!({"weight": series_json(&w), "graph": serde_json::from_str::<Value>(&graph.to_json()).expect("json")}),
            ))
        }
    }
}

/// Formats with 9 significant digits.
pub fn sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..9).contains(&mag) {
        format!("{:.*}", (8 - mag).max(0) as usize, x)
    } else {
        format!("{x:.8e}")
    }
}

/// Linear resampling at `n` evenly spaced parameter values.
fn resample(c: &ParamCurve, n: usize) -> Result<ParamCurve, Failure> {
    let pts = c.points();
    let m = pts.len();
    let lerp = |v: &[Vec3], s: f64| {
        let i = s.floor() as usize % m;
        let f = s - s.floor();
        let (a, b) = (v[i], v[(i + 1) % m]);
        [
            a[0] + f * (b[0] - a[0]),
            a[1] + f * (b[1] - a[1]),
            a[2] + f * (b[2] - a[2]),
        ]
    };
    let params: Vec<f64> = (0..n).map(|k| k as f64 * m as f64 / n as f64).collect();
    let points = params.iter().map(|&s| lerp(pts, s)).collect();
    let framing = c
        .framing()
        .map(|f| params.iter().map(|&s| lerp(f, s)).collect());
    Ok(ParamCurve::new(points, framing)?)
}

fn builtin_curves(spec: &str, n: usize) -> Result<Option<Vec<ParamCurve>>, Failure> {
    Ok(match spec {
        "hopf" => Some(vec![
            ParamCurve::unit_circle(n),
            ParamCurve::circle(n, [1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0], 1.0)?,
        ]),
        "trefoil" => Some(vec![ParamCurve::torus_knot(2, 3, n)?.blackboard_framing()?]),
        "circle" => Some(vec![
            ParamCurve::unit_circle(n).constant_framing([0.0, 0.0, 1.0])?
        ]),
        _ => None,
    })
}

fn linking(a: &LinkingArgs) -> Result<Report, Failure> {
    let curves = match builtin_curves(&a.curves, a.samples.unwrap_or(512))? {
        Some(c) => c,
        None => {
            let text = read_file(&a.curves)?;
            let value: Value =
                serde_json::from_str(&text).map_err(|e| Failure::new("linking", e))?;
            let raw: Vec<String> = match value {
                Value::Array(items) => items.iter().map(Value::to_string).collect(),
                other => vec![other.to_string()],
            };
            let parsed = raw
                .iter()
                .map(|t| ParamCurve::from_json(t))
                .collect::<Result<Vec<_>, _>>()?;
            match a.samples {
                Some(n) => parsed
                    .iter()
                    .map(|c| resample(c, n))
                    .collect::<Result<Vec<_>, _>>()?,
                None => parsed,
            }
        }
    };
    match curves.as_slice() {
        [c] => {
            let report = writhe_integral(c);
            let mut text = format!(
                "writhe = {}\ntotal torsion = {}\nwrithe + torsion/2pi = {}\n",
                sig9(report.writhe),
                sig9(report.total_torsion),
                sig9(report.calugareanu_sum())
            );
            let mut json = json!({"writhe": report.writhe, "total_torsion": report.total_torsion});
            if c.framing().is_some() {
                let sl = framed_self_linking(c, a.epsilon)?;
                text += &format!("framed self-linking = {}\n", sig9(sl));
                json["framed_self_linking"] = json!(sl);
            }
            Ok(Report::ok(text, json))
        }
        [c1, c2] => {
            let lk = gauss_linking(c1, c2)?;
            Ok(Report::ok(
                format!("linking number = {}\n", sig9(lk)),
                json!({"linking": lk}),
            ))
        }
        other => Err(Failure::new(
            "linking",
            format!("expected one or two curves, got {}", other.len()),
        )),
    }
}

fn verify(a: &VerifyArgs) -> Result<Report, Failure> {
    let seed = seed(a.seed);
    let results = run_all(seed);
    let ok = results.iter().all(|r| r.passed);
    let mut text: String = results.iter().map(|r| r.line() + "\n").collect();
    text += &format!(
        "{} of {} criteria passed (seed {seed})\n",
        results.iter().filter(|r| r.passed).count(),
        results.len()
    );
    Ok(Report {
        text,
        json: json!({"seed": seed, "passed": ok, "criteria": results}),
        ok,
    })
}

trait LinkJson {
    fn to_json_value(&self) -> Value;
}

impl LinkJson for LinkSpec {
    fn to_json_value(&self) -> Value {
        serde_json::from_str(&self.to_json()).expect("link json")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> String {
        let out = run(std::iter::once("rtfactor").chain(args.iter().copied()));
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        out.stdout
    }

    #[test]
    fn significant_digits() {
        assert_eq!(sig9(1.0), "1.00000000");
        assert_eq!(sig9(-0.000251), "-0.000251000000");
        assert_eq!(sig9(123.456), "123.456000");
        assert_eq!(sig9(1e-9), "1.00000000e-9");
    }

    #[test]
    fn link_resolution() {
        assert!(resolve_link("trefoil").is_ok());
        assert_eq!(
            resolve_link("B2:1,1,1").unwrap(),
            catalog_link("trefoil-right").unwrap()
        );
        assert_eq!(resolve_link("no-such-link").unwrap_err().kind, "diagram");
    }

    #[test]
    fn representation_resolution() {
        let (g, default) = resolve_algebra("sl2").unwrap();
        assert_eq!(
            resolve_rep(&g, default.as_ref(), "adjoint").unwrap().dim(),
            3
        );
        assert_eq!(
            resolve_rep(&g, default.as_ref(), "sl2_irrep(3)")
                .unwrap()
                .dim(),
            4
        );
        assert_eq!(
            resolve_rep(&g, default.as_ref(), "trivial:2")
                .unwrap()
                .dim(),
            2
        );
        assert!(resolve_rep(&g, default.as_ref(), "sl3").is_err());
    }

    #[test]
    fn resampling_keeps_linking() {
        let curves = builtin_curves("hopf", 64).unwrap().unwrap();
        let fine: Vec<ParamCurve> = curves.iter().map(|c| resample(c, 256).unwrap()).collect();
        assert!((gauss_linking(&fine[0], &fine[1]).unwrap().abs() - 1.0).abs() < 1e-2);
    }

    #[test]
    fn cohomology_text() {
        assert_eq!(
            run_ok(&["cohomology", "--algebra", "sl2", "--deformation", "cs"]),
            "H3=1 H4=0\n"
        );
        assert_eq!(
            run_ok(&[
                "cohomology",
                "--algebra",
                "sl2",
                "--coefficients",
                "rep:fundamental",
                "--deformation",
                "defect"
            ]),
            "H0=0 H1=0\n"
        );
    }
}
