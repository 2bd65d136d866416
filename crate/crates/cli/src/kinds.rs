use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::path::PathBuf;

use holomotion::barycentric::{barycentric_extend, CircleHomeo, RESIDUAL_TOL};
use holomotion::flow::{ExtendedMotion, FlowConfig, FlowError};
use holomotion::geometry::{
    annulus_core_length, annulus_curve_length, annulus_extension_threshold, check_short_generator_criterion,
    circle_samples, config_length_bound, length_bound_cap,
};
use holomotion::monodromy::{
    build_chirka_counterexample, build_trace_counterexample, chirka_numbers, monodromy_is_trivial, quadruples,
    restrict_to_subset, trace_monodromy_trivial, verify_property_a, CoveringMotionSpec, MonodromyError, Point,
    SpecFile,
};
use holomotion::radial::{MotionTraces, RadialError, RadialStructure};
use holomotion::words::Word;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::{from_value_at, Certificate, CliError, Kind, Overrides, Scenario, Table};

pub(crate) struct Computed {
    pub inputs: Value,
    pub results: Value,
    pub certificates: BTreeMap<String, Certificate>,
    pub tables: Vec<Table>,
}

pub(crate) fn execute(s: &Scenario, o: &Overrides) -> Result<Computed, CliError> {
    let unused = |flag: &str, set: bool| {
        if set {
            log::warn!("--{flag} has no effect on {} scenarios", s.kind);
        }
    };
    match s.kind {
        Kind::Extend => {}
        Kind::Geometry => unused("rays", o.rays.is_some()),
        Kind::Barycenter => {
            unused("samples", o.samples.is_some());
            unused("rays", o.rays.is_some());
        }
        _ => {
            unused("samples", o.samples.is_some());
            unused("rays", o.rays.is_some());
            unused("tol", o.tol.is_some());
        }
    }
    match s.kind {
        Kind::Words => words(from_value_at("payload", &s.payload)?),
        Kind::Monodromy => monodromy(from_value_at("payload", &s.payload)?),
        Kind::Counterexample => counterexample(from_value_at("payload", &s.payload)?),
        Kind::Geometry => geometry(from_value_at("payload", &s.payload)?, o),
        Kind::Extend => extend(from_value_at("payload", &s.payload)?, o),
        Kind::Barycenter => barycenter(from_value_at("payload", &s.payload)?, s, o),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

// ---------------------------------------------------------------- words

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WordsInput {
    rank: usize,
    word: String,
}

fn words(input: WordsInput) -> Result<Computed, CliError> {
    let w = Word::parse(input.rank, &input.word).map_err(|e| CliError::input("payload.word", e))?;
    let r = w.reduce();
    let deletions: Vec<Value> = (0..input.rank)
        .map(|j| {
            let d = r.delete_generator(j).expect("index below rank");
            json!({ "generator": j, "word": d.to_string(), "trivial": d.is_trivial() })
        })
        .collect();
    let filled = r.fill_infinity();
    let results = json!({
        "word": w.to_string(),
        "length": w.len(),
        "reduced": r.to_string(),
        "reduced_length": r.len(),
        "trivial": r.is_trivial(),
        "inverse": r.inverse().to_string(),
        "exponent_sums": w.exponent_sums(),
        "deletions": deletions,
        "fill_infinity": { "word": filled.to_string(), "trivial": filled.is_trivial() },
    });
    let mut certificates = BTreeMap::new();
    certificates.insert(
        "reduction_idempotent".into(),
        Certificate::check(r.reduce() == r && r.is_reduced(), "reduce(reduce(w)) = reduce(w)"),
    );
    certificates.insert(
        "exponent_sums_preserved".into(),
        Certificate::check(r.exponent_sums() == w.exponent_sums(), "free reduction keeps exponent sums"),
    );
    Ok(Computed { inputs: to_value(&input), results, certificates, tables: Vec::new() })
}

// ------------------------------------------------------------ monodromy

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonodromyInput {
    n: usize,
    z0: [f64; 2],
    points: Vec<[f64; 2]>,
    word: String,
}

fn monodromy_error(e: MonodromyError) -> CliError {
    let key = match &e {
        MonodromyError::Word(_) | MonodromyError::WordRank { .. } => "payload.word",
        MonodromyError::Json(_) => "payload",
        _ => "payload.points",
    };
    CliError::input(key, e)
}

/// Points, the moving point and the trace letters for the braid diagram.
fn schematic(spec: &CoveringMotionSpec) -> Value {
    let config = spec.config();
    let mut points = Vec::new();
    let mut index_of = BTreeMap::new();
    for p in config.all_points() {
        if let (Some(g), Some(z)) = (p.generator(), config.coordinate(p)) {
            index_of.insert(g, points.len());
            points.push(json!({ "label": p.to_string(), "x": z.re, "y": z.im }));
        }
    }
    let letters: Vec<Value> = spec
        .word()
        .reduce()
        .letters()
        .iter()
        .map(|l| json!({ "point": index_of[&l.generator], "sign": l.sign() }))
        .collect();
    json!({
        "moving": pair(config.z0()),
        "points": points,
        "letters": letters,
        "word": spec.word().reduce().to_string(),
    })
}

fn chirka_table(spec: &CoveringMotionSpec) -> (Vec<Value>, Table) {
    let mut list = Vec::new();
    let mut rows = Vec::new();
    for ((a, b), turns) in chirka_numbers(spec) {
        list.push(json!({ "a": a.to_string(), "b": b.to_string(), "turns": turns }));
        rows.push(vec![a.to_string(), b.to_string(), turns.to_string()]);
    }
    (list, Table { name: "chirka", header: vec!["a", "b", "turns"], rows })
}

fn quadruple_results(spec: &CoveringMotionSpec) -> Result<Vec<(Vec<String>, bool)>, CliError> {
    quadruples(spec.config())
        .into_iter()
        .filter(|q| q.contains(&Point::Moving))
        .map(|q| {
            let trivial = trace_monodromy_trivial(spec, &q).map_err(monodromy_error)?;
            Ok((q.iter().map(|p| p.to_string()).collect(), trivial))
        })
        .collect()
}

fn monodromy(input: MonodromyInput) -> Result<Computed, CliError> {
    let file = SpecFile { n: input.n, z0: input.z0, points: input.points.clone(), word: input.word.clone() };
    let spec = CoveringMotionSpec::from_file(&file).map_err(monodromy_error)?;
    let trivial = monodromy_is_trivial(&spec);
    let (chirka, table) = chirka_table(&spec);
    let chirka_zero = chirka_numbers(&spec).values().all(|&t| t == 0);
    let quads = quadruple_results(&spec)?;
    let all_quads = quads.iter().all(|(_, t)| *t);
    let results = json!({
        "monodromy_trivial": trivial,
        "reduced_word": spec.word().reduce().to_string(),
        "chirka": chirka,
        "chirka_all_zero": chirka_zero,
        "quadruples": quads.iter().map(|(q, t)| json!({ "points": q, "trace_trivial": t })).collect::<Vec<_>>(),
        "trace_monodromy_trivial": all_quads,
        "schematic": schematic(&spec),
    });
    let mut certificates = BTreeMap::new();
    // Trivial monodromy forces trivial winding and trace monodromy; the
    // converse is exactly what the counterexamples break.
    certificates.insert(
        "necessary_conditions".into(),
        Certificate::check(!trivial || (chirka_zero && all_quads), "trivial monodromy implies zero turns and trivial traces"),
    );
    Ok(Computed { inputs: to_value(&input), results, certificates, tables: vec![table] })
}

// ------------------------------------------------------- counterexample

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Family {
    /// Nontrivial monodromy with every quadruple trace-trivial.
    #[default]
    Trace,
    /// Nontrivial monodromy with every winding turn count zero.
    Chirka,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CounterexampleInput {
    n: usize,
    #[serde(default)]
    family: Family,
}

/// The trace word doubles in length with each point; beyond this the subset
/// enumeration dominates everything else.
const MAX_COUNTEREXAMPLE_N: usize = 10;

fn counterexample(input: CounterexampleInput) -> Result<Computed, CliError> {
    let n = input.n;
    if n > MAX_COUNTEREXAMPLE_N {
        return Err(CliError::input("payload.n", format!("must be at most {MAX_COUNTEREXAMPLE_N}, got {n}")));
    }
    let spec = match input.family {
        Family::Trace => build_trace_counterexample(n),
        Family::Chirka => build_chirka_counterexample(n),
    };
    let trivial = monodromy_is_trivial(&spec);
    let (chirka, table) = chirka_table(&spec);
    let mut certificates = BTreeMap::new();
    certificates.insert("monodromy_nontrivial".into(), Certificate::check(!trivial, "trace word is not the identity"));
    let mut results = json!({
        "n": n,
        "family": input.family,
        "spec": to_value(&spec.to_file()),
        "monodromy_trivial": trivial,
        "chirka": chirka,
        "schematic": schematic(&spec),
    });
    let mut tables = vec![table];
    match input.family {
        Family::Chirka => {
            let zero = chirka_numbers(&spec).values().all(|&t| t == 0);
            certificates.insert("chirka_all_zero".into(), Certificate::check(zero, "every pair has turn count 0"));
        }
        Family::Trace => {
            let report = verify_property_a(n);
            certificates.insert(
                "property_a".into(),
                Certificate::check(report.all_pass(), "nontrivial word dies under every deletion and under filling infinity"),
            );
            tables.push(Table {
                name: "property_a",
                header: vec!["case", "trivial", "expected_trivial", "pass"],
                rows: report
                    .cases
                    .iter()
                    .map(|c| vec![c.case.clone(), c.trivial.to_string(), c.expected_trivial.to_string(), c.pass.to_string()])
                    .collect(),
            });
            results["property_a"] = to_value(&report);

            // With n = 0 the only quadruple is E itself, whose trace monodromy
            // is the full monodromy; only proper quadruples are certified.
            let mut quads = quadruple_results(&spec)?;
            if spec.config().all_points().len() == 4 {
                quads.clear();
            }
            let all_quads = quads.iter().all(|(_, t)| *t);
            certificates.insert(
                "quadruples_trace_trivial".into(),
                Certificate::check(all_quads, format!("{} proper quadruples containing the moving point", quads.len())),
            );
            results["quadruples"] =
                quads.iter().map(|(q, t)| json!({ "points": q, "trace_trivial": t })).collect::<Vec<_>>().into();

            let restrictions = proper_restrictions(&spec)?;
            let bad: Vec<&String> = restrictions.iter().filter(|(_, t)| !t).map(|(k, _)| k).collect();
            certificates.insert(
                "proper_restrictions_trivial".into(),
                Certificate::check(
                    bad.is_empty(),
                    format!("{} proper subsets containing the moving point, {} nontrivial", restrictions.len(), bad.len()),
                ),
            );
        }
    }
    Ok(Computed { inputs: to_value(&input), results, certificates, tables })
}

/// Triviality of the restricted trace word for every proper subset of the
/// points that keeps the moving point.
fn proper_restrictions(spec: &CoveringMotionSpec) -> Result<Vec<(String, bool)>, CliError> {
    let fixed: Vec<Point> = spec.config().all_points().into_iter().filter(|p| p.is_fixed()).collect();
    let full = (1u64 << fixed.len()) - 1;
    (0..full)
        .map(|mask| {
            let mut kept: BTreeSet<Point> = BTreeSet::from([Point::Moving]);
            kept.extend(fixed.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| *p));
            let r = restrict_to_subset(spec, &kept).map_err(monodromy_error)?;
            let label = kept.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
            Ok((label, r.word.is_empty()))
        })
        .collect()
}

// ------------------------------------------------------------- geometry

fn default_quadrature() -> usize {
    4096
}

fn default_geometry_tol() -> f64 {
    1e-6
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometryInput {
    /// Systole of the configuration.
    #[serde(rename = "ellE")]
    ell_e: f64,
    #[serde(rename = "R")]
    outer: f64,
    /// Optional generator lengths for the short-generator test.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lengths: Option<Vec<f64>>,
    /// Samples on the core circle for the quadrature cross-check.
    #[serde(default = "default_quadrature")]
    samples: usize,
    #[serde(default = "default_geometry_tol")]
    tol: f64,
}

fn geometry(mut input: GeometryInput, o: &Overrides) -> Result<Computed, CliError> {
    input.samples = o.samples.unwrap_or(input.samples);
    input.tol = o.tol.unwrap_or(input.tol);
    if input.samples < 8 {
        return Err(CliError::input("payload.samples", format!("need at least 8 samples, got {}", input.samples)));
    }
    let bound = config_length_bound(input.ell_e).map_err(|e| CliError::input("payload.ellE", e))?;
    let core = annulus_core_length(input.outer).map_err(|e| CliError::input("payload.R", e))?;
    let threshold = annulus_extension_threshold(bound).ok();
    let circle = circle_samples(input.outer.sqrt(), input.samples);
    let quadrature = annulus_curve_length(input.outer, &circle).map_err(|e| CliError::Compute(e.to_string()))?;
    let short = match &input.lengths {
        Some(l) => Some(check_short_generator_criterion(l, input.ell_e).map_err(|e| CliError::input("payload.lengths", e))?),
        None => None,
    };
    let beyond = threshold.is_some_and(|t| input.outer > t);
    let results = json!({
        "L": bound,
        "cap": length_bound_cap(),
        "threshold_R": threshold,
        "core_length": core,
        "core_length_quadrature": quadrature,
        "core_shorter_than_L": core < bound,
        "extends": beyond,
        "short_generators": short,
    });
    let mut certificates = BTreeMap::new();
    certificates.insert("core_length_quadrature".into(), Certificate::below((quadrature - core).abs(), input.tol));
    // R > exp(pi^2 / L) and pi^2 / log R < L are the same condition.
    certificates.insert(
        "threshold_consistent".into(),
        Certificate::check(beyond == (core < bound), "R beyond the threshold iff the core is shorter than L"),
    );
    Ok(Computed { inputs: to_value(&input), results, certificates, tables: Vec::new() })
}

// --------------------------------------------------------------- extend

fn default_samples() -> usize {
    64
}

fn default_rays() -> usize {
    16
}

fn default_dt() -> f64 {
    FlowConfig::default().dt
}

fn default_extend_tol() -> f64 {
    1e-4
}

fn default_holomorphy_tol() -> f64 {
    1e-6
}

fn default_probes() -> usize {
    12
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtendInput {
    /// Power-series coefficients `[re, im]` of each trace `w_j`.
    traces: Vec<Vec<[f64; 2]>>,
    #[serde(default = "default_samples")]
    samples: usize,
    #[serde(default = "default_rays")]
    rays: usize,
    #[serde(default = "default_dt")]
    dt: f64,
    /// Agreement tolerance `max |phi_hat(lambda, z_j) - w_j(lambda)|`.
    #[serde(default = "default_extend_tol")]
    tol: f64,
    #[serde(default = "default_holomorphy_tol")]
    holomorphy_tol: f64,
    /// Probe points in the flow region for the holomorphy and injectivity
    /// certificates.
    #[serde(default = "default_probes")]
    probes: usize,
}

fn radial_error(e: RadialError) -> CliError {
    match e {
        RadialError::EmptyTrace(i) => CliError::input(format!("payload.traces[{i}]"), e),
        RadialError::BadSize(_) => CliError::input("payload.samples", e),
        RadialError::NoRays => CliError::input("payload.rays", e),
        RadialError::Empty | RadialError::TraceVanishes { .. } | RadialError::TracesCollide { .. } => {
            CliError::input("payload.traces", e)
        }
        e => CliError::Compute(e.to_string()),
    }
}

fn flow_error(e: FlowError) -> CliError {
    match e {
        FlowError::Radial(r) => radial_error(r),
        e => CliError::Compute(e.to_string()),
    }
}

/// Deterministic probe points spread over `1.2 r < |z| < 0.95 R`.
fn probe_points(count: usize, r: f64, outer: f64) -> Vec<Complex64> {
    let rings = 3.min(count.max(1));
    let (lo, hi) = (1.2 * r, 0.95 * outer);
    (0..count)
        .map(|i| {
            let ring = i % rings;
            let rho = lo + (hi - lo) * (ring as f64 + 0.5) / rings as f64;
            let theta = 2.0 * PI * i as f64 / count as f64 + 0.3 * ring as f64;
            Complex64::from_polar(rho, theta)
        })
        .collect()
}

const CURVE_POINTS: usize = 48;
const HOLOMORPHY_SAMPLES: usize = 64;
const AGREEMENT_SAMPLES: usize = 32;

fn extend(mut input: ExtendInput, o: &Overrides) -> Result<Computed, CliError> {
    input.samples = o.samples.unwrap_or(input.samples);
    input.rays = o.rays.unwrap_or(input.rays);
    input.tol = o.tol.unwrap_or(input.tol);
    if input.dt.is_nan() || input.dt <= 0.0 {
        return Err(CliError::input("payload.dt", format!("must be positive, got {}", input.dt)));
    }
    let traces = input
        .traces
        .iter()
        .map(|t| t.iter().copied().map(complex).collect())
        .collect::<Vec<Vec<Complex64>>>();
    let traces = MotionTraces::new(traces).map_err(radial_error)?;
    let rs = RadialStructure::build(traces, input.samples, input.rays).map_err(radial_error)?;
    let lemma = rs.verify_lemma_properties();
    let cfg = FlowConfig { dt: input.dt, ..FlowConfig::default() };
    let em = ExtendedMotion::from_structure(rs, cfg).map_err(flow_error)?;
    let rs = em.structure();
    let radii = rs.radii();

    let agreement = em.agreement_residual(AGREEMENT_SAMPLES).map_err(flow_error)?;
    let probes = probe_points(input.probes, radii.r, radii.outer);
    let mut holomorphy: f64 = 0.0;
    for &z in &probes {
        holomorphy = holomorphy.max(em.holomorphy_residual(z, HOLOMORPHY_SAMPLES).map_err(flow_error)?);
    }
    let pairs: Vec<(Complex64, Complex64)> = probes
        .iter()
        .enumerate()
        .flat_map(|(i, a)| probes[i + 1..].iter().map(move |b| (*a, *b)))
        .collect();
    let injectivity = em.injectivity_certificate(&pairs).map_err(flow_error)?;

    let curves: Vec<Value> = rs
        .ray_labels()
        .into_iter()
        .map(|th| {
            let pts: Vec<[f64; 2]> = rs.curve(0, th, CURVE_POINTS).into_iter().map(pair).collect();
            json!({ "theta": th, "points": pts })
        })
        .collect();
    let flow_lines: Vec<Value> = em
        .rays()
        .iter()
        .map(|ray| {
            let pts: Vec<[f64; 2]> = ray.points.iter().map(|p| pair(p.at_one)).collect();
            json!({ "theta": ray.theta, "points": pts })
        })
        .collect();
    let results = json!({
        "radii": radii,
        "trivial": rs.is_trivial(),
        "delta": em.flow().delta(),
        "lemma": lemma,
        "agreement_residual": agreement,
        "holomorphy_residual": holomorphy,
        "injectivity": injectivity,
        "probes": probes.iter().copied().map(pair).collect::<Vec<_>>(),
        "curves": curves,
        "flow_lines": flow_lines,
    });

    let mut certificates = BTreeMap::new();
    let failed: Vec<String> = lemma
        .items
        .iter()
        .filter(|i| i.status == holomotion::radial::LemmaStatus::Fail)
        .map(|i| format!("({}) {}", i.index, i.name))
        .collect();
    certificates.insert(
        "radial_structure".into(),
        Certificate::check(failed.is_empty(), if failed.is_empty() { "all applicable properties hold".into() } else { failed.join(", ") }),
    );
    certificates.insert("agreement".into(), Certificate::below(agreement, input.tol));
    certificates.insert("holomorphy".into(), Certificate::below(holomorphy, input.holomorphy_tol));
    certificates.insert(
        "injectivity".into(),
        Certificate {
            pass: injectivity.passed(),
            value: Some(injectivity.min_abs),
            tol: None,
            detail: Some(format!("{} pairs, max |winding| {}", injectivity.pairs, injectivity.max_abs_winding)),
        },
    );
    Ok(Computed { inputs: to_value(&input), results, certificates, tables: Vec::new() })
}

// ----------------------------------------------------------- barycenter

fn default_barycenter_tol() -> f64 {
    RESIDUAL_TOL
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BarycenterInput {
    /// CSV file with header `k,theta_k`: the lift of the circle map at
    /// `2 pi k / n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    map: Option<PathBuf>,
    /// The same lift given inline.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lift: Option<Vec<f64>>,
    points: Vec<[f64; 2]>,
    #[serde(default = "default_barycenter_tol")]
    tol: f64,
}

fn read_lift(path: &std::path::Path) -> Result<Vec<f64>, CliError> {
    let key = "payload.map";
    let mut rd = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::input(key, format!("{}: {e}", path.display())))?;
    let mut lift = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec.map_err(|e| CliError::input(key, e))?;
        let field = |c: usize, name: &str| {
            rec.get(c).ok_or_else(|| CliError::input(key, format!("row {i}: missing column `{name}`")))
        };
        let k: usize = field(0, "k")?.parse().map_err(|e| CliError::input(key, format!("row {i}: `k`: {e}")))?;
        if k != i {
            return Err(CliError::input(key, format!("row {i}: expected k = {i}, got {k}")));
        }
        let theta: f64 =
            field(1, "theta_k")?.parse().map_err(|e| CliError::input(key, format!("row {i}: `theta_k`: {e}")))?;
        lift.push(theta);
    }
    Ok(lift)
}

fn barycenter(mut input: BarycenterInput, s: &Scenario, o: &Overrides) -> Result<Computed, CliError> {
    input.tol = o.tol.unwrap_or(input.tol);
    let (lift, key) = match (&input.map, &input.lift) {
        (Some(p), None) => (read_lift(&s.resolve(p))?, "payload.map"),
        (None, Some(l)) => (l.clone(), "payload.lift"),
        _ => return Err(CliError::input("payload", "give exactly one of `map` and `lift`")),
    };
    let h = CircleHomeo::new(lift).map_err(|e| CliError::input(key, e))?;
    let mut out = Vec::new();
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for (i, &p) in input.points.iter().enumerate() {
        let z = complex(p);
        let b = barycentric_extend(&h, z).map_err(|e| CliError::input(format!("payload.points[{i}]"), e))?;
        worst = worst.max(b.residual);
        out.push(json!({ "z": p, "w": pair(b.w), "residual": b.residual, "iterations": b.iterations }));
        rows.push(vec![
            format!("{:?}", p[0]),
            format!("{:?}", p[1]),
            format!("{:?}", b.w.re),
            format!("{:?}", b.w.im),
            format!("{:?}", b.residual),
            b.iterations.to_string(),
        ]);
    }
    let results = json!({ "samples": h.len(), "points": out });
    let mut certificates = BTreeMap::new();
    certificates.insert("residual".into(), Certificate::below(worst, input.tol));
    let table = Table { name: "barycenter", header: vec!["z_re", "z_im", "w_re", "w_im", "residual", "iterations"], rows };
    Ok(Computed { inputs: to_value(&input), results, certificates, tables: vec![table] })
}
