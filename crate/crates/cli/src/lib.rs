//! Input resolution, report assembly and rendering behind the `fanodef`
//! binary.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use fanodef::deformation::{
    build_group_action, hull_for_polytope, verify_invariant_presentation, ActionGenerator,
    GroupAction, HullPresentation, HullReport, InvariantCertificate,
};
use fanodef::lattice_algebra::format_rational;
use fanodef::polytope::KPolystability;
use fanodef::{
    chart_atlas, classical_period, fixtures, global_t1, ChartAtlas, Error, Facet, FanoReport,
    GlobalT1, IntMatrix, LatticePolytope, LaurentPolynomial, PeriodSeries, RationalPolytope,
};
use serde::Serialize;
use serde_json::Value;

/// Largest accepted `--order` unless raised explicitly.
pub const DEFAULT_ORDER_BOUND: u32 = 12;

/// Failures of a command, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1: unreadable or malformed input, or any failed computation.
    Input(String),
    /// Exit 2: a chart outside the supported singularity types, or a
    /// configuration the T¹ gluing cannot handle.
    Unsupported(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Unsupported(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Unsupported(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedChart { .. } | Error::UnsupportedConfiguration(_) => {
                CliError::Unsupported(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn read_json(path: &str) -> CliResult<Value> {
    let text =
        fs::read_to_string(Path::new(path)).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: malformed JSON: {e}")))
}

pub fn load_polytope(input: &str) -> CliResult<LatticePolytope> {
    if input == "paper-P" {
        return Ok(fixtures::polytope_p());
    }
    let v = read_json(input)?;
    let p: LatticePolytope = serde_json::from_value(v)
        .map_err(|e| CliError::Input(format!("{input}: not a lattice polytope: {e}")))?;
    if p.is_empty() {
        return Err(CliError::Input(format!(
            "{input}: polytope has no vertices"
        )));
    }
    Ok(p)
}

pub fn load_laurent(input: &str) -> CliResult<LaurentPolynomial> {
    if input == "paper-f" {
        return Ok(fixtures::laurent_f());
    }
    Ok(LaurentPolynomial::from_json(&read_json(input)?)?)
}

/// A hull presentation: `paper-A`, the claimed invariant ring `paper-AG`,
/// or a JSON file.
pub fn load_presentation(input: &str) -> CliResult<HullPresentation> {
    match input {
        "paper-A" => Ok(fixtures::hull_a()),
        "paper-AG" => Ok(fixtures::claimed_invariant_ring()),
        _ => Ok(HullPresentation::from_json(&read_json(input)?)?),
    }
}

/// Group action on `hull`: `paper-G-action`, `trivial`, or a JSON file of
/// generators.
pub fn load_action(input: &str, hull: &HullPresentation) -> CliResult<GroupAction> {
    let generators = match input {
        "trivial" => return Ok(GroupAction::trivial(hull.nvars())),
        "paper-G-action" => fixtures::action_generators_g(),
        _ => ActionGenerator::list_from_json(&read_json(input)?)?,
    };
    Ok(build_group_action(hull, &generators)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct PolytopeSummary {
    pub polytope: LatticePolytope,
    pub facets: Vec<Facet>,
    pub lattice_points: usize,
    pub normalized_volume: String,
    pub fano: FanoReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolarSummary {
    pub polytope: RationalPolytope,
    pub lattice_points: usize,
    pub normalized_volume: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct T1Summary {
    pub h0_dim: usize,
    /// `None` when `H¹` is infinite-dimensional.
    pub h1_dim: Option<usize>,
    pub euler_holds: bool,
    pub detail: GlobalT1,
}

impl T1Summary {
    pub fn new(t1: GlobalT1) -> Self {
        T1Summary {
            h0_dim: t1.weights.len(),
            h1_dim: t1.cohomology.h1.total_dim(),
            euler_holds: t1.cohomology.euler_holds(),
            detail: t1,
        }
    }
}

/// Everything `analyze` computes. Stages that do not apply to the input
/// (an action or a Laurent polynomial only exist for the bundled data, or
/// when supplied) are absent.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub polytope: PolytopeSummary,
    pub polar: PolarSummary,
    pub k_polystable: KPolystability,
    pub atlas: ChartAtlas,
    pub t1: Option<T1Summary>,
    pub hull: Option<HullReport>,
    pub invariants: Option<InvariantCertificate>,
    pub period: Option<PeriodSeries>,
    /// Set when a later stage was refused; the report stops there.
    pub stopped: Option<String>,
}

pub fn polytope_summary(p: &LatticePolytope) -> CliResult<PolytopeSummary> {
    Ok(PolytopeSummary {
        polytope: p.clone(),
        facets: p.facets()?,
        lattice_points: p.lattice_points().len(),
        normalized_volume: format_rational(&p.normalized_volume()?),
        fano: p.fano_classify(),
    })
}

pub fn polar_summary(p: &LatticePolytope) -> CliResult<PolarSummary> {
    let q = p.polar()?;
    Ok(PolarSummary {
        lattice_points: q.lattice_points().len(),
        normalized_volume: format_rational(&q.normalized_volume()?),
        polytope: q,
    })
}

/// Optional extra stages of `analyze`.
#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    pub h2_t0_vanishes: bool,
    /// `(hull-compatible action, claimed invariant ring, max degree)`.
    pub invariants: Option<(String, String, u32)>,
    pub laurent: Option<(String, u32)>,
}

/// Runs every stage. An unsupported chart stops the pipeline; the partial
/// report is returned together with the error so callers can print both.
pub fn analyze(
    p: &LatticePolytope,
    opts: &AnalyzeOptions,
) -> CliResult<(AnalysisReport, Option<CliError>)> {
    let mut report = AnalysisReport {
        polytope: polytope_summary(p)?,
        polar: polar_summary(p)?,
        k_polystable: p.k_polystable_toric()?,
        atlas: chart_atlas(p)?,
        t1: None,
        hull: None,
        invariants: None,
        period: None,
        stopped: None,
    };
    let hull = match hull_for_polytope(p, opts.h2_t0_vanishes) {
        Ok(h) => h,
        Err(e @ Error::HullAssembly(_)) => {
            // a refused assembly is an answer, not a failure
            report.t1 = Some(T1Summary::new(global_t1(p)?));
            report.stopped = Some(e.to_string());
            return Ok((report, None));
        }
        Err(e) => {
            let e = CliError::from(e);
            if let CliError::Unsupported(msg) = &e {
                report.stopped = Some(msg.clone());
                return Ok((report, Some(e)));
            }
            return Err(e);
        }
    };
    if let Some((action, claimed, max_degree)) = &opts.invariants {
        let action = load_action(action, &hull.hull)?;
        let claimed = load_presentation(claimed)?;
        report.invariants = Some(verify_invariant_presentation(
            &hull.hull,
            &action,
            &claimed,
            *max_degree,
        )?);
    }
    if let Some((f, order)) = &opts.laurent {
        report.period = Some(classical_period(&load_laurent(f)?, *order));
    }
    report.t1 = Some(T1Summary::new(hull.t1.clone()));
    report.hull = Some(hull);
    Ok((report, None))
}

/// Pretty JSON with sorted keys, so identical inputs give identical bytes.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("reports serialize to JSON");
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values print");
    s.push('\n');
    s
}

fn vec_str<T: ToString>(v: &[T]) -> String {
    format!(
        "({})",
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    )
}

pub fn polytope_text(out: &mut String, s: &PolytopeSummary, polar: &PolarSummary) {
    let _ = writeln!(
        out,
        "polytope: {} vertices, {} facets",
        s.polytope.vertices().len(),
        s.facets.len()
    );
    for v in s.polytope.vertices() {
        let _ = writeln!(out, "  {}", vec_str(v));
    }
    let _ = writeln!(out, "lattice points: {}", s.lattice_points);
    let _ = writeln!(out, "normalized volume: {}", s.normalized_volume);
    let f = &s.fano;
    let _ = writeln!(
        out,
        "fano: {}  canonical: {}  terminal: {}  reflexive: {}  centrally symmetric: {}",
        f.fano, f.canonical, f.terminal, f.reflexive, f.centrally_symmetric
    );
    let _ = writeln!(out, "polar: {} vertices", polar.polytope.vertices().len());
    for v in polar.polytope.vertices() {
        let c: Vec<String> = v.iter().map(format_rational).collect();
        let _ = writeln!(out, "  ({})", c.join(","));
    }
    let _ = writeln!(out, "polar lattice points: {}", polar.lattice_points);
    let _ = writeln!(out, "polar normalized volume: {}", polar.normalized_volume);
}

pub fn atlas_text(out: &mut String, atlas: &ChartAtlas) {
    let _ = writeln!(out, "charts:");
    for c in atlas.facets.iter().chain(&atlas.intersections) {
        let r = &c.report;
        let mut line = format!("  {:<4} {:?}", c.id, r.kind);
        if let Some(q) = &r.quotient_type {
            line.push_str(&format!("  {q}"));
        }
        if let Some(p) = &r.presentation {
            line.push_str(&format!("  {p}"));
        }
        line.push_str(&format!(
            "  gorenstein index {}  hilbert basis {}",
            r.gorenstein_index, r.hilbert_basis_size
        ));
        if r.qg_rigid {
            line.push_str("  qG-rigid");
        }
        if let Some([a, b]) = &c.between {
            line.push_str(&format!("  ({a} ∩ {b})"));
        }
        let _ = writeln!(out, "{line}");
    }
}

pub fn t1_text(out: &mut String, t1: &T1Summary) {
    let _ = writeln!(out, "H0(T1) dimension: {}", t1.h0_dim);
    for w in &t1.detail.weights {
        let _ = writeln!(out, "  degree {}", vec_str(w));
    }
    match t1.h1_dim {
        Some(d) => {
            let _ = writeln!(out, "H1(T1) dimension: {d}");
        }
        None => {
            let _ = writeln!(out, "H1(T1) dimension: infinite");
        }
    }
    let _ = writeln!(
        out,
        "euler identity: {}",
        if t1.euler_holds { "holds" } else { "FAILS" }
    );
}

pub fn hull_text(out: &mut String, h: &HullReport) {
    for o in &h.obstructed {
        let _ = writeln!(
            out,
            "obstructed chart {}: {}",
            o.chart,
            o.hull.ideal_string()
        );
    }
    let _ = writeln!(
        out,
        "assumptions: H1(T1) = 0 {}, H2(T0) = 0 {}",
        if h.assumptions.h1_t1 {
            "computed"
        } else {
            "fails"
        },
        if h.assumptions.h2_t0 {
            "declared"
        } else {
            "not declared"
        }
    );
    let _ = writeln!(
        out,
        "hull: C[[{}]]/{}",
        h.hull
            .variables()
            .iter()
            .map(|v| v.name.as_str())
            .collect::<Vec<_>>()
            .join(","),
        h.hull.ideal_string()
    );
    for v in h.hull.variables() {
        let _ = writeln!(out, "  {} weight {}", v.name, vec_str(&v.weight));
    }
}

pub fn certificate_text(out: &mut String, c: &InvariantCertificate) {
    let _ = writeln!(out, "invariant hilbert function: {}", vec_str(&c.invariant));
    let _ = writeln!(out, "claimed hilbert function:   {}", vec_str(&c.claimed));
    match c.first_mismatch {
        None => {
            let _ = writeln!(out, "MATCH up to degree {}", c.max_degree);
        }
        Some(d) => {
            let _ = writeln!(out, "MISMATCH at degree {d}");
        }
    }
}

pub fn period_text(out: &mut String, p: &PeriodSeries) {
    let _ = writeln!(out, "{p}");
}

pub fn analysis_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    polytope_text(&mut out, &r.polytope, &r.polar);
    let _ = writeln!(
        out,
        "k-polystable: {} (polar barycentre ({}))",
        r.k_polystable.polystable,
        r.k_polystable
            .barycentre
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(",")
    );
    atlas_text(&mut out, &r.atlas);
    if let Some(t1) = &r.t1 {
        t1_text(&mut out, t1);
    }
    if let Some(h) = &r.hull {
        hull_text(&mut out, h);
    }
    if let Some(c) = &r.invariants {
        certificate_text(&mut out, c);
    }
    if let Some(p) = &r.period {
        let _ = write!(out, "period: ");
        period_text(&mut out, p);
    }
    if let Some(s) = &r.stopped {
        let _ = writeln!(out, "stopped: {s}");
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct AutomorphismReport {
    pub order: usize,
    pub elements: Vec<IntMatrix>,
}

pub fn automorphisms(p: &LatticePolytope) -> CliResult<AutomorphismReport> {
    let g = p.automorphisms()?;
    Ok(AutomorphismReport {
        order: g.order(),
        elements: g.elements().to_vec(),
    })
}

pub fn automorphism_text(a: &AutomorphismReport) -> String {
    let mut out = format!("automorphism group of order {}\n", a.order);
    for g in &a.elements {
        let rows: Vec<String> = g.to_rows().iter().map(|r| vec_str(r)).collect();
        let _ = writeln!(out, "  [{}]", rows.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_kind() {
        let e = CliError::from(Error::UnsupportedChart {
            chart: "F1".into(),
            reason: "x".into(),
        });
        assert_eq!(e.exit_code(), 2);
        assert_eq!(CliError::from(Error::Empty).exit_code(), 1);
    }

    #[test]
    fn fixtures_resolve() {
        assert_eq!(load_polytope("paper-P").unwrap().vertices().len(), 10);
        assert_eq!(load_laurent("paper-f").unwrap().num_terms(), 12);
        let a = load_presentation("paper-A").unwrap();
        assert_eq!(load_action("paper-G-action", &a).unwrap().order(), 4);
        assert_eq!(load_action("trivial", &a).unwrap().order(), 1);
        assert!(load_polytope("no-such-file.json").is_err());
    }
}
