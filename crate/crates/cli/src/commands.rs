//! One handler per subcommand. Handlers validate their settings, call into
//! the core crate and return an [`Artifact`].

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use ellsurj_core::arith::{is_prime, primes_in, PrimeModulus};
use ellsurj_core::bounds::{gamma_zero_data, genus_x0, BoundReport};
use ellsurj_core::curves::{
    count_points, count_points_bsgs, count_points_exhaustive, function_field_samples, trace_samples,
    FrobeniusDatum, PolyCurve, WeierstrassCurve,
};
use ellsurj_core::family::{chebotarev_table, scan_exceptional, FamilySpec, ScanConfig};
use ellsurj_core::groups::{
    closure, count_by_trace_det, fiber_product_generators, trace_det_closed_form, twisted_graph_generators,
    verify_mw_instance, DetVariant, Mat2Mod, MwOutcome, DEFAULT_CLOSURE_CAP,
};
use ellsurj_core::surjectivity::{certify_product, SurjectivityCertificate};

use crate::config::{ConfigError, RunConfig};
use crate::output::Artifact;
use crate::CliError;

/// Settings a subcommand accepts, with built-in defaults.
pub struct CommandSpec {
    pub name: &'static str,
    pub about: &'static str,
    pub settings: &'static [(&'static str, &'static str)],
    pub defaults: &'static [(&'static str, &'static str)],
    pub positional: Option<&'static str>,
}

pub const COMMANDS: &[CommandSpec] = &[
    CommandSpec {
        name: "constants",
        about: "Threshold constants and isogeny bounds per genus",
        settings: &[("g", "genus or inclusive range a..b"), ("n", "number of factors")],
        defaults: &[("g", "0..3"), ("n", "2")],
        positional: None,
    },
    CommandSpec {
        name: "genus-x0",
        about: "Genus of X_0(N) with its index, elliptic points and cusps",
        settings: &[("range", "level N or inclusive range N..M")],
        defaults: &[("range", "1..100")],
        positional: Some("range"),
    },
    CommandSpec {
        name: "count",
        about: "Point counts and Frobenius traces of y^2 = x^3 + a4 x + a6",
        settings: &[
            ("a4", "integer coefficient"),
            ("a6", "integer coefficient"),
            ("p", "prime or inclusive range of primes"),
            ("method", "auto, exhaustive or bsgs"),
        ],
        defaults: &[("method", "auto")],
        positional: None,
    },
    CommandSpec {
        name: "certify",
        about: "Surjectivity certificates for a product of curves",
        settings: &[
            ("curves", "inline curves `[A];[B]`, whitespace separated"),
            ("curves_file", "file with one curve per line"),
            ("ell", "level, comma list or inclusive range"),
            ("p_max", "sample primes up to this bound (curves over Q)"),
            ("p", "work over F_p(t) using all places t0 in F_p"),
        ],
        defaults: &[("p_max", "1000")],
        positional: None,
    },
    CommandSpec {
        name: "chebotarev",
        about: "Exact trace counts over the specializations t0 in F_p",
        settings: &[
            ("family", "inline family, curves whitespace separated"),
            ("family_file", "family file, one curve per line"),
            ("p", "prime characteristic"),
            ("ell", "level"),
            ("taus", "comma list of trace residues; reports one entry"),
        ],
        defaults: &[],
        positional: None,
    },
    CommandSpec {
        name: "scan",
        about: "Certify every small-height specialization of a family",
        settings: &[
            ("family", "inline family, curves whitespace separated"),
            ("family_file", "family file, one curve per line"),
            ("t", "height bound T"),
            ("ells", "levels, comma list or inclusive range"),
            ("p_max", "sample primes up to this bound"),
            ("isogeny_prime_bound", "primes used by the isogenous-pair test"),
        ],
        defaults: &[("t", "10"), ("ells", "7..97"), ("p_max", "1000"), ("isogeny_prime_bound", "100")],
        positional: None,
    },
    CommandSpec {
        name: "verify-group",
        about: "Trace/det counts in GL_2(F_l) and the fiber-product harness",
        settings: &[("ell", "prime level >= 5")],
        defaults: &[("ell", "5")],
        positional: None,
    },
];

pub fn spec(name: &str) -> Option<&'static CommandSpec> {
    COMMANDS.iter().find(|c| c.name == name)
}

pub fn execute(cfg: &RunConfig) -> Result<Artifact, CliError> {
    match cfg.command.as_str() {
        "constants" => constants(cfg),
        "genus-x0" => genus_table(cfg),
        "count" => count(cfg),
        "certify" => certify(cfg),
        "chebotarev" => chebotarev(cfg),
        "scan" => scan(cfg),
        "verify-group" => verify_group(cfg),
        other => Err(ConfigError::new("command", format!("unknown command {other:?}")).into()),
    }
}

fn constants(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let (lo, hi) = cfg.range("g")?;
    let n = cfg.positive("n")? as usize;
    let rows = (lo..=hi).map(|g| BoundReport::new(g, n)).collect::<Result<Vec<_>, _>>()?;
    let mut csv = String::from("g,c_literal,c_conservative,C,C_tilde,isogeny_ec_genus,isogeny_surface_genus\n");
    for r in &rows {
        writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            r.g, r.c_literal, r.c_conservative, r.big_c, r.c_tilde, r.isogeny_ec_genus, r.isogeny_surface_genus
        )
        .unwrap();
    }
    Ok(Artifact::table(rows, csv))
}

#[derive(Serialize)]
struct GenusRow {
    n: u64,
    genus: u64,
    index: u64,
    nu2: u64,
    nu3: u64,
    cusps: u64,
}

fn genus_table(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let (lo, hi) = cfg.range("range")?;
    if lo == 0 {
        return Err(ConfigError::new("range", "levels start at 1").into());
    }
    let mut csv = String::from("N,genus,index,nu2,nu3,cusps\n");
    let rows: Vec<GenusRow> = (lo..=hi)
        .map(|n| {
            let d = gamma_zero_data(n);
            GenusRow { n, genus: genus_x0(n), index: d.index, nu2: d.nu2, nu3: d.nu3, cusps: d.cusps }
        })
        .collect();
    for r in &rows {
        writeln!(csv, "{},{},{},{},{},{}", r.n, r.genus, r.index, r.nu2, r.nu3, r.cusps).unwrap();
    }
    Ok(Artifact::table(rows, csv))
}

#[derive(Serialize)]
struct CountResult {
    a4: i64,
    a6: i64,
    method: String,
    counts: Vec<FrobeniusDatum>,
    bad_primes: Vec<u64>,
}

fn count(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let (a4, a6) = (cfg.i64("a4")?, cfg.i64("a6")?);
    let method = cfg.require("method")?.to_string();
    let counter: fn(&WeierstrassCurve<_>) -> ellsurj_core::Result<FrobeniusDatum> = match method.as_str() {
        "auto" => count_points,
        "exhaustive" => count_points_exhaustive,
        "bsgs" => count_points_bsgs,
        other => return Err(ConfigError::new("method", format!("expected auto, exhaustive or bsgs, got {other:?}")).into()),
    };
    let (lo, hi) = cfg.range("p")?;
    let primes: Vec<u64> = if lo == hi { vec![lo] } else { primes_in(lo.max(5), hi) };
    if lo == hi && (!is_prime(lo) || lo <= 3) {
        return Err(ConfigError::new("p", format!("{lo} is not a prime > 3")).into());
    }
    let mut counts = Vec::new();
    let mut bad_primes = Vec::new();
    for p in primes {
        let m = PrimeModulus::new(p)?;
        match WeierstrassCurve::new(m.elem(a4), m.elem(a6)) {
            Ok(e) => counts.push(counter(&e)?),
            Err(_) => bad_primes.push(p),
        }
    }
    if lo == hi && counts.is_empty() {
        return Err(ellsurj_core::Error::BadReduction.into());
    }
    let mut csv = String::from("p,a_p,n_p\n");
    for d in &counts {
        writeln!(csv, "{},{},{}", d.p, d.a, d.n).unwrap();
    }
    Ok(Artifact::table(CountResult { a4, a6, method, counts, bad_primes }, csv))
}

/// Whitespace outside brackets separates curves.
fn split_inline(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if ch.is_whitespace() {
            if depth == 0 && !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            continue;
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Curve lines from `inline_key` or `file_key`, exactly one of which must
/// be set.
fn curve_lines(cfg: &RunConfig, inline_key: &str, file_key: &str) -> Result<(String, Vec<String>), ConfigError> {
    match (cfg.get(inline_key), cfg.get(file_key)) {
        (Some(_), Some(_)) => Err(ConfigError::new(inline_key, format!("give either `{inline_key}` or `{file_key}`"))),
        (None, None) => Err(ConfigError::new(inline_key, "required")),
        (Some(s), None) => Ok((inline_key.to_string(), split_inline(s))),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(Path::new(path))
                .map_err(|e| ConfigError::new(file_key, format!("{path}: {e}")))?;
            let lines = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
                .filter(|l| !l.is_empty())
                .collect();
            Ok((file_key.to_string(), lines))
        }
    }
}

fn parse_curves(cfg: &RunConfig, inline_key: &str, file_key: &str) -> Result<Vec<PolyCurve>, ConfigError> {
    let (key, lines) = curve_lines(cfg, inline_key, file_key)?;
    if lines.is_empty() {
        return Err(ConfigError::new(&key, "no curves given"));
    }
    lines
        .iter()
        .map(|l| l.parse::<PolyCurve>().map_err(|e| ConfigError::new(&key, e.to_string())))
        .collect()
}

fn parse_family(cfg: &RunConfig) -> Result<FamilySpec, ConfigError> {
    let curves = parse_curves(cfg, "family", "family_file")?;
    let key = if cfg.has("family") { "family" } else { "family_file" };
    FamilySpec::new(curves).map_err(|e| ConfigError::new(key, e.to_string()))
}

fn certify(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let curves = parse_curves(cfg, "curves", "curves_file")?;
    let ells = cfg.primes("ell")?;
    if let Some(&bad) = ells.iter().find(|&&l| l <= 5) {
        return Err(ConfigError::new("ell", format!("certification needs ell > 5, got {bad}")).into());
    }
    let mut out: Vec<SurjectivityCertificate> = Vec::new();
    if cfg.has("p") {
        let p = cfg.prime("p")?;
        if p <= 3 {
            return Err(ConfigError::new("p", "characteristic must exceed 3").into());
        }
        if ells.contains(&p) {
            return Err(ConfigError::new("ell", format!("ell must differ from p = {p}")).into());
        }
        let m = PrimeModulus::new(p)?;
        let over_fp_t = curves.iter().map(|c| c.over_fp_t(m)).collect::<Result<Vec<_>, _>>()?;
        for &ell in &ells {
            let samples = function_field_samples(&over_fp_t, m, ell);
            out.push(certify_product(&samples, curves.len(), ell)?);
        }
    } else {
        let p_max = cfg.positive("p_max")?;
        let over_q = curves
            .iter()
            .map(|c| c.over_q())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| ConfigError::new("curves", format!("{e}; set `p` to work over F_p(t)")))?;
        for &ell in &ells {
            let samples = trace_samples(&over_q, p_max, ell);
            out.push(certify_product(&samples, curves.len(), ell)?);
        }
    }
    let mut csv = String::from("ell,status,mode,samples_used\n");
    for c in &out {
        writeln!(csv, "{},{},{},{}", c.ell, label(c.status), label(c.mode), c.samples_used).unwrap();
    }
    Ok(Artifact::json(out).with_csv(csv))
}

/// Serialized name of a unit enum variant.
fn label(v: impl Serialize) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

#[derive(Serialize)]
struct ChebotarevEntry {
    taus: Vec<u64>,
    count: u64,
}

#[derive(Serialize)]
struct ChebotarevResult {
    p: u64,
    ell: u64,
    n: usize,
    good_count: u64,
    prediction: f64,
    max_deviation: f64,
    deviation_bound: f64,
    partition_holds: bool,
    entries: Vec<ChebotarevEntry>,
}

fn chebotarev(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let family = parse_family(cfg)?;
    let p = cfg.prime("p")?;
    if p <= 3 {
        return Err(ConfigError::new("p", "characteristic must exceed 3").into());
    }
    let ell = cfg.prime("ell")?;
    if ell == p {
        return Err(ConfigError::new("ell", format!("ell must differ from the characteristic p = {p}")).into());
    }
    let taus = if cfg.has("taus") { Some(cfg.list_u64("taus")?) } else { None };
    if let Some(t) = &taus {
        if t.len() != family.n() {
            return Err(ConfigError::new("taus", format!("{} residues for {} curves", t.len(), family.n())).into());
        }
    }
    let table = chebotarev_table(&family, p, ell)?;
    let entries: Vec<ChebotarevEntry> = match &taus {
        Some(t) => vec![ChebotarevEntry { taus: t.iter().map(|x| x % ell).collect(), count: table.get(t).unwrap_or(0) }],
        None => table.counts.iter().map(|(k, &c)| ChebotarevEntry { taus: k.clone(), count: c }).collect(),
    };
    let mut csv = table.to_csv();
    if taus.is_some() {
        let header = csv.lines().next().unwrap_or_default().to_string();
        csv = format!("{header}\n");
        for e in &entries {
            let cols: Vec<String> = e.taus.iter().map(u64::to_string).collect();
            writeln!(csv, "{},{}", cols.join(","), e.count).unwrap();
        }
    }
    let result = ChebotarevResult {
        p,
        ell,
        n: table.n,
        good_count: table.good_count,
        prediction: table.prediction(),
        max_deviation: table.max_deviation(),
        deviation_bound: 8.0 * (p as f64).sqrt(),
        partition_holds: table.partition_holds(),
        entries,
    };
    Ok(Artifact::table(result, csv))
}

fn scan(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let family = parse_family(cfg)?;
    let ells = cfg.primes("ells")?;
    if let Some(&bad) = ells.iter().find(|&&l| l <= 5) {
        return Err(ConfigError::new("ells", format!("scan levels must exceed 5, got {bad}")).into());
    }
    let t_bound = cfg.positive("t")?;
    if t_bound > 1_000_000 {
        return Err(ConfigError::new("t", "at most 1000000").into());
    }
    let p_max = cfg.positive("p_max")?;
    if p_max < 30 {
        return Err(ConfigError::new("p_max", "at least 30").into());
    }
    let scan_cfg = ScanConfig { t_bound, ells, p_max, isogeny_prime_bound: cfg.positive("isogeny_prime_bound")? };
    let report = scan_exceptional(&family, &scan_cfg)?;
    let csv = report.to_csv();
    Ok(Artifact::json(report).with_csv(csv))
}

#[derive(Serialize)]
struct TraceDetRow {
    tau: u32,
    det: u32,
    count: u64,
    closed_form: u64,
}

#[derive(Serialize)]
struct HarnessCase {
    name: String,
    order: usize,
    outcome: String,
    pass: bool,
}

#[derive(Serialize)]
struct GroupReport {
    ell: u32,
    trace_det: Vec<TraceDetRow>,
    column_sums_ok: bool,
    harness: Vec<HarnessCase>,
    pass: bool,
}

/// Sizes of `D` beyond ℓ = 7 exceed the closure cap.
const HARNESS_MAX_ELL: u64 = 7;

fn verify_group(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let ell = cfg.prime("ell")?;
    if !(5..=HARNESS_MAX_ELL).contains(&ell) {
        return Err(ConfigError::new("ell", format!("harness runs for ell in 5..={HARNESS_MAX_ELL}, got {ell}")).into());
    }
    let l = ell as u32;
    let mut trace_det = Vec::new();
    for det in 1..l {
        for tau in 0..l {
            trace_det.push(TraceDetRow {
                tau,
                det,
                count: count_by_trace_det(l, tau as i64, det as i64)?,
                closed_form: trace_det_closed_form(l, tau as i64, det as i64)?,
            });
        }
    }
    let sl2 = ell * (ell * ell - 1);
    let column_sums_ok = (1..l).all(|d| trace_det.iter().filter(|r| r.det == d).map(|r| r.count).sum::<u64>() == sl2);

    let f0 = Mat2Mod::new(2, 1, 1, 1, l);
    let cases = [
        ("diagonal", twisted_graph_generators(l, Mat2Mod::identity(l), false), Expect::Trivial),
        ("graph", twisted_graph_generators(l, f0, false), Expect::Trivial),
        ("twisted_graph", twisted_graph_generators(l, f0, true), Expect::Quadratic),
        ("fiber_product", fiber_product_generators(l), Expect::Full),
    ];
    let mut harness = Vec::new();
    for (name, gens, expect) in cases {
        let h = closure(&gens, DEFAULT_CLOSURE_CAP)?;
        let outcome = verify_mw_instance(&h, DetVariant::Full)?;
        let (desc, pass) = match (&outcome, expect) {
            (MwOutcome::Full, Expect::Full) => ("full".to_string(), true),
            (MwOutcome::Witness(w), Expect::Trivial | Expect::Quadratic) => {
                let ok = w.verify(&h) && w.is_trivial() == (expect == Expect::Trivial);
                let kind = if w.is_trivial() { "trivial" } else { "quadratic" };
                (format!("witness f={:?} chi={kind}", [w.f.a, w.f.b, w.f.c, w.f.d]), ok)
            }
            (MwOutcome::Full, _) => ("full".to_string(), false),
            (MwOutcome::Witness(_), _) => ("witness".to_string(), false),
        };
        harness.push(HarnessCase { name: name.to_string(), order: h.order(), outcome: desc, pass });
    }
    let pass = column_sums_ok && trace_det.iter().all(|r| r.count == r.closed_form) && harness.iter().all(|c| c.pass);
    let mut csv = String::from("tau,det,count,closed_form\n");
    for r in &trace_det {
        writeln!(csv, "{},{},{},{}", r.tau, r.det, r.count, r.closed_form).unwrap();
    }
    Ok(Artifact::json(GroupReport { ell: l, trace_det, column_sums_ok, harness, pass }).with_csv(csv))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Expect {
    Trivial,
    Quadratic,
    Full,
}
