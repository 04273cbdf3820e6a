//! Argument grammar, dispatch and rendering for the `spinspec` binary.
//!
//! [`run`] never prints; it returns the rendered document together with the
//! exit code so the binary stays a thin shell and tests can drive it
//! in-process.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use spinspec::collapse::{check_rescaled_trend, predict_collapse, CollapseInput};
use spinspec::exact::{fmt_q, parse_q, ExactReal, Q};
use spinspec::integrality::{
    bieberbach_records, bieberbach_table, bieberbach_table_json, dahl_check, dahl_check_approx,
};
use spinspec::lattice::{make_lattice, parse_basis, LatticeScale, SpinDelta};
use spinspec::links::{
    classify_by_cusp_flags, classify_link_complement, existence_lookup, existence_table_json,
    linking_parity_matrix, parse_diagram, CuspFlag, Cusps,
};
use spinspec::spaceform::{
    enumerate_spin_structures, eta_spaceform, explicit_from_json, group_label,
    poincare_multiplicities, spaceform_spectrum, theta_diff, validate_lift, Backend, GroupKind,
    SpaceFormGroup, SpinLift,
};
use spinspec::spectrum::{exact_to_json, spectrum_symmetric, symmetric_eta, weyl_report};
use spinspec::sphere::sphere_spectrum;
use spinspec::torus::{
    circle_spectrum, circle_spectrum_to, harmonic_spinor_dim, systoles, torus_spectrum, CircleSpin,
};
use spinspec::Spectrum;

#[derive(Parser, Debug)]
#[command(
    name = "spinspec",
    version,
    about = "Dirac spectra and eta invariants as functions of the spin structure"
)]
struct Cli {
    /// Emit CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    /// Write the result to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Arithmetic for space-form characters: exact or float. Overrides
    /// SPINSPEC_PRECISION.
    #[arg(long, global = true, value_name = "exact|float")]
    precision: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum of the circle of length 2π.
    Circle {
        #[arg(long, default_value = "trivial")]
        spin: String,
        #[arg(long, allow_negative_numbers = true)]
        kmin: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        kmax: Option<i64>,
        /// Return every eigenvalue with |λ| ≤ W instead of a k range.
        #[arg(long, conflicts_with_all = ["kmin", "kmax"])]
        window: Option<String>,
    },
    /// Spectrum of a flat torus ℝⁿ/Γ.
    Torus {
        /// Basis rows separated by ';', entries by spaces or commas.
        #[arg(long, required_unless_present = "basis_file", conflicts_with = "basis_file")]
        basis: Option<String>,
        #[arg(long, value_name = "FILE")]
        basis_file: Option<PathBuf>,
        /// Scale the basis by π.
        #[arg(long)]
        pi: bool,
        /// Spin twist bits, e.g. 1,0,1. Defaults to the trivial structure.
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        window: String,
        /// Also report the systole and the spin systoles.
        #[arg(long)]
        systoles: bool,
    },
    /// Spectrum of the round sphere Sⁿ.
    Sphere {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kmax: u64,
    },
    /// Lens space L(q; p₁, …, p_m) = ℤ_q\S^(2m−1).
    Lens {
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        p: Vec<i64>,
        #[command(flatten)]
        query: SpaceformQuery,
    },
    /// Space form given by an explicit element list in a JSON file.
    Spaceform {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        query: SpaceformQuery,
    },
    /// Qualitative spectrum of a collapsing circle bundle.
    Collapse {
        #[arg(long)]
        file: PathBuf,
        /// JSON array of [ℓ, λ] samples to test against the fiber index --k.
        #[arg(long, requires = "k")]
        samples: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Spectrum type of hyperbolic link complements.
    Link {
        #[command(subcommand)]
        action: LinkAction,
    },
    /// η-invariants of the 3-dimensional Bieberbach manifolds.
    Bieberbach {
        #[arg(long)]
        group: Option<String>,
    },
    /// Integrality of the η difference between two spin structures.
    Dahl {
        #[arg(long, allow_hyphen_values = true)]
        eta1: String,
        #[arg(long, allow_hyphen_values = true)]
        eta2: String,
        /// The class relating the two structures is realizable by a form.
        #[arg(long)]
        realizable: bool,
        /// Tolerance used when the η values are decimals.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Counting function against the Weyl constant.
    Weyl {
        /// Spectrum JSON, bare or under a "spectrum" key.
        #[arg(long, required_unless_present = "sphere", conflicts_with = "sphere")]
        file: Option<PathBuf>,
        /// Use the sphere Sⁿ with --kmax instead of a file.
        #[arg(long, requires = "kmax")]
        sphere: Option<usize>,
        #[arg(long)]
        kmax: Option<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<String>,
    },
}

#[derive(clap::Args, Debug)]
struct SpaceformQuery {
    /// Index of the spin structure; all structures when omitted.
    #[arg(long)]
    lift: Option<usize>,
    #[arg(long)]
    eta: bool,
    /// Expand the Poincaré series up to this order.
    #[arg(long)]
    kmax: Option<usize>,
    /// Evaluate θ₊ − θ₋ at this t ≥ 0.
    #[arg(long)]
    theta: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum LinkAction {
    /// Decide the spectrum type from the linking parities.
    Classify {
        #[arg(long)]
        file: PathBuf,
        /// State that the complement carries a finite-volume hyperbolic metric.
        #[arg(long)]
        assert_hyperbolic: bool,
    },
    /// Linking numbers modulo 2.
    Parity {
        #[arg(long)]
        file: PathBuf,
    },
    /// Spectrum type from the spin structure's restriction to each cusp.
    Cusps {
        /// Comma-separated trivial|nontrivial flags; omit for no cusps.
        #[arg(long, value_delimiter = ',')]
        flags: Vec<String>,
    },
    /// Existence of spin structures of each spectrum type.
    Table {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        cusps: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    /// Text for standard output; empty when it went to `--out`.
    pub stdout: String,
    pub exit_code: i32,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<spinspec::Error> for Failure {
    fn from(e: spinspec::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// A payload plus an optional tabular form for `--csv`.
struct Output {
    payload: Value,
    table: Option<(Vec<String>, Vec<Vec<String>>)>,
    diagnostics: Vec<String>,
}

impl Output {
    fn json(payload: Value) -> Self {
        Output {
            payload,
            table: None,
            diagnostics: Vec::new(),
        }
    }

    fn with_table(mut self, header: Vec<&str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header.into_iter().map(String::from).collect(), rows));
        self
    }

    fn with_spectrum_table(self, s: &Spectrum) -> Self {
        let rows = s.entries().iter().map(|(l, m)| vec![l.to_string(), m.to_string()]).collect();
        self.with_table(vec!["eigenvalue", "multiplicity"], rows)
    }
}

pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                failure(Failure::Usage(text.trim_end().to_string()))
            } else {
                CommandResult {
                    status: Status::Ok,
                    payload: Value::Null,
                    diagnostics: Vec::new(),
                    stdout: text,
                    exit_code: 0,
                }
            };
        }
    };
    match execute(&cli).and_then(|out| render(&cli, out)) {
        Ok(r) => r,
        Err(f) => failure(f),
    }
}

fn failure(f: Failure) -> CommandResult {
    let (msg, code) = match f {
        Failure::Usage(m) => (m, 2),
        Failure::Domain(m) => (m, 1),
    };
    CommandResult {
        status: Status::Error,
        payload: json!({ "error": msg }),
        diagnostics: vec![msg],
        stdout: String::new(),
        exit_code: code,
    }
}

fn render(cli: &Cli, out: Output) -> Outcome<CommandResult> {
    let text = if cli.csv {
        to_csv(&out)?
    } else {
        let mut s = serde_json::to_string_pretty(&out.payload).map_err(|e| Failure::Domain(e.to_string()))?;
        s.push('\n');
        s
    };
    let stdout = match &cli.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            String::new()
        }
        None => text,
    };
    Ok(CommandResult {
        status: Status::Ok,
        payload: out.payload,
        diagnostics: out.diagnostics,
        stdout,
        exit_code: 0,
    })
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn to_csv(out: &Output) -> Outcome<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure::Domain(e.to_string());
    match &out.table {
        Some((header, rows)) => {
            w.write_record(header).map_err(csv_err)?;
            for r in rows {
                w.write_record(r).map_err(csv_err)?;
            }
        }
        None => {
            // fall back to one key/value line per top-level field
            w.write_record(["key", "value"]).map_err(csv_err)?;
            if let Value::Object(map) = &out.payload {
                for (k, v) in map {
                    w.write_record([k.as_str(), &scalar_text(v)]).map_err(csv_err)?;
                }
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Failure::Domain(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Domain(e.to_string()))
}

fn read_file(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Outcome<Value> {
    serde_json::from_str(&read_file(path)?)
        .map_err(|e| Failure::Domain(format!("{}: invalid JSON: {e}", path.display())))
}

fn backend(cli: &Cli) -> Outcome<Backend> {
    match &cli.precision {
        Some(p) => p.parse().map_err(|e: spinspec::Error| Failure::Usage(e.to_string())),
        None => Backend::from_env().map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn execute(cli: &Cli) -> Outcome<Output> {
    match &cli.command {
        Command::Circle { spin, kmin, kmax, window } => circle(spin, *kmin, *kmax, window.as_deref()),
        Command::Torus { basis, basis_file, pi, delta, window, systoles } => {
            let text = match (basis, basis_file) {
                (Some(b), _) => b.replace(';', "\n").replace(',', " "),
                (None, Some(f)) => read_file(f)?,
                (None, None) => return Err(Failure::Usage("need --basis or --basis-file".into())),
            };
            torus(&text, *pi, delta.as_deref(), window, *systoles)
        }
        Command::Sphere { n, kmax } => {
            let s = sphere_spectrum(*n, *kmax)?;
            Ok(Output::json(json!({ "n": n, "spectrum": s.to_json() })).with_spectrum_table(&s))
        }
        Command::Lens { q, p, query } => {
            let g = SpaceFormGroup::cyclic(*q, p.clone())?;
            let lifts = enumerate_spin_structures(&g)?;
            spaceform(&g, lifts, query, backend(cli)?)
        }
        Command::Spaceform { file, query } => {
            let input = explicit_from_json(&read_json(file)?)?;
            if input.lifts.is_empty() {
                return Err(Failure::Domain(
                    "explicit groups need their candidate spin lifts under \"lifts\"".into(),
                ));
            }
            let lifts = input
                .lifts
                .into_iter()
                .map(|l| validate_lift(&input.group, l))
                .collect::<spinspec::Result<Vec<_>>>()?;
            spaceform(&input.group, lifts, query, backend(cli)?)
        }
        Command::Collapse { file, samples, k, tol } => collapse(file, samples.as_deref(), k.as_deref(), *tol),
        Command::Link { action } => link(action),
        Command::Bieberbach { group } => Ok(match group {
            Some(g) => {
                let e = bieberbach_table(g)?;
                let rows = e
                    .eta_values
                    .iter()
                    .map(|(v, c)| vec![e.group.to_string(), e.total_spin_structures.to_string(), fmt_q(v), c.to_string()])
                    .collect();
                Output::json(e.to_json()).with_table(vec!["group", "total_spin_structures", "eta", "count"], rows)
            }
            None => Output::json(json!({ "groups": bieberbach_table_json() })).with_table(
                vec!["group", "total_spin_structures", "eta", "count"],
                bieberbach_records().into_iter().map(Vec::from).collect(),
            ),
        }),
        Command::Dahl { eta1, eta2, realizable, tol } => dahl(eta1, eta2, *realizable, *tol),
        Command::Weyl { file, sphere, kmax, lambda } => {
            let s = match (file, sphere, kmax) {
                (Some(f), _, _) => {
                    let v = read_json(f)?;
                    Spectrum::from_json(v.get("spectrum").unwrap_or(&v))?
                }
                (None, Some(n), Some(k)) => sphere_spectrum(*n, *k)?,
                _ => return Err(Failure::Usage("need --file, or --sphere with --kmax".into())),
            };
            weyl(&s, lambda)
        }
    }
}

fn circle(spin: &str, kmin: Option<i64>, kmax: Option<i64>, window: Option<&str>) -> Outcome<Output> {
    let spin: CircleSpin = spin.parse().map_err(|e: spinspec::Error| Failure::Usage(e.to_string()))?;
    let s = match (window, kmin, kmax) {
        (Some(w), _, _) => circle_spectrum_to(spin, &parse_q(w)?)?,
        (None, Some(a), Some(b)) => circle_spectrum(spin, a, b)?,
        _ => return Err(Failure::Usage("need --kmin and --kmax, or --window".into())),
    };
    let name = match spin {
        CircleSpin::Trivial => "trivial",
        CircleSpin::Nontrivial => "nontrivial",
    };
    Ok(Output::json(json!({
        "spin": name,
        "spectrum": s.to_json(),
        "symmetric": spectrum_symmetric(&s, 0.0),
        "eta": symmetric_eta(&s).map(|e| fmt_q(&e)),
    }))
    .with_spectrum_table(&s))
}

fn torus(basis: &str, pi: bool, delta: Option<&str>, window: &str, want_systoles: bool) -> Outcome<Output> {
    let scale = if pi { LatticeScale::Pi } else { LatticeScale::Rational };
    let lat = make_lattice(parse_basis(basis)?, scale)?;
    let delta = match delta {
        Some(d) => d.parse::<SpinDelta>()?,
        None => SpinDelta::trivial(lat.dim()),
    };
    let window: ExactReal = window.parse()?;
    let s = torus_spectrum(&lat, &delta, &window)?;
    let mut payload = json!({
        "dim": lat.dim(),
        "delta": delta.to_string(),
        "spectrum": s.to_json(),
        "harmonic_spinors": harmonic_spinor_dim(&lat, &delta)?,
        "eta": symmetric_eta(&s).map(|e| fmt_q(&e)),
    });
    if want_systoles {
        let sy = systoles(&lat, &delta)?;
        payload["systoles"] = json!({
            "sys1": exact_to_json(&sy.sys1),
            "spin_sys": sy.spin_sys.as_ref().map(exact_to_json),
            "nonspin_sys": exact_to_json(&sy.nonspin_sys),
        });
    }
    Ok(Output::json(payload).with_spectrum_table(&s))
}

/// Half angles of the generator, which determine a lens-space lift.
fn generator_half_angles(g: &SpaceFormGroup, lift: &SpinLift) -> Option<Value> {
    match g.kind() {
        GroupKind::Cyclic { q, .. } if *q > 1 => {
            Some(json!(lift.half_angles(1).iter().map(fmt_q).collect::<Vec<_>>()))
        }
        _ => None,
    }
}

fn structure_report(
    g: &SpaceFormGroup,
    lift: &SpinLift,
    query: &SpaceformQuery,
    backend: Backend,
    table: &mut Option<Vec<Vec<String>>>,
) -> Outcome<Map<String, Value>> {
    let mut obj = Map::new();
    if let Some(t) = generator_half_angles(g, lift) {
        obj.insert("generator_half_angles".into(), t);
    }
    if query.eta {
        let eta = eta_spaceform(g, lift, backend)?;
        obj.insert("eta".into(), eta.to_json());
        obj.insert("eta_source".into(), json!(eta.source()));
    }
    if let Some(kmax) = query.kmax {
        let coeffs = poincare_multiplicities(g, lift, kmax, backend)?;
        let s = spaceform_spectrum(g, lift, kmax, backend)?;
        if table.is_none() {
            *table = Some(
                (0..=kmax)
                    .map(|k| vec![k.to_string(), coeffs.mu_plus[k].to_string(), coeffs.mu_minus[k].to_string()])
                    .collect(),
            );
        }
        obj.insert("multiplicities".into(), coeffs.to_json());
        obj.insert("spectrum".into(), s.to_json());
    }
    if let Some(t) = query.theta {
        obj.insert("theta".into(), json!({ "t": t, "value": theta_diff(g, lift, t)? }));
    }
    Ok(obj)
}

fn spaceform(g: &SpaceFormGroup, lifts: Vec<SpinLift>, query: &SpaceformQuery, backend: Backend) -> Outcome<Output> {
    let mut payload = Map::new();
    payload.insert("group".into(), json!(group_label(g)));
    payload.insert("order".into(), json!(g.order()));
    payload.insert("dim".into(), json!(g.manifold_dim()));
    payload.insert("spin_structures".into(), json!(lifts.len()));
    payload.insert("backend".into(), json!(backend.to_string()));
    let mut table = None;
    match query.lift {
        Some(i) => {
            let lift = lifts.get(i).ok_or_else(|| {
                Failure::Domain(format!("lift {i} does not exist; {} spin structures available", lifts.len()))
            })?;
            payload.insert("lift".into(), json!(i));
            payload.extend(structure_report(g, lift, query, backend, &mut table)?);
        }
        None => {
            let mut all = Vec::new();
            for (i, lift) in lifts.iter().enumerate() {
                let mut obj = structure_report(g, lift, query, backend, &mut None)?;
                obj.insert("lift".into(), json!(i));
                all.push(Value::Object(obj));
            }
            payload.insert("structures".into(), Value::Array(all));
        }
    }
    let out = Output::json(Value::Object(payload));
    Ok(match table {
        Some(rows) => out.with_table(vec!["k", "mu_plus", "mu_minus"], rows),
        None => out,
    })
}

fn collapse(file: &Path, samples: Option<&Path>, k: Option<&str>, tol: f64) -> Outcome<Output> {
    let input = CollapseInput::from_json(&read_json(file)?)?;
    let prediction = predict_collapse(&input)?;
    let mut payload = prediction.to_json();
    if let (Some(path), Some(k)) = (samples, k) {
        let raw = read_json(path)?;
        let pairs = raw
            .as_array()
            .ok_or_else(|| Failure::Domain("samples must be an array of [ell, lambda] pairs".into()))?
            .iter()
            .map(|p| match p.as_array().map(|a| a.as_slice()) {
                Some([l, x]) => l
                    .as_f64()
                    .zip(x.as_f64())
                    .ok_or_else(|| Failure::Domain(format!("sample {p} is not numeric"))),
                _ => Err(Failure::Domain(format!("sample {p} is not an [ell, lambda] pair"))),
            })
            .collect::<Outcome<Vec<_>>>()?;
        let k: Q = parse_q(k)?;
        payload["trend"] = check_rescaled_trend(&pairs, &k, tol)?.to_json();
    }
    let rows = prediction
        .limits_expanded()
        .iter()
        .map(|l| vec![l.to_string()])
        .collect();
    Ok(Output::json(payload).with_table(vec!["convergent_limit"], rows))
}

fn link(action: &LinkAction) -> Outcome<Output> {
    match action {
        LinkAction::Classify { file, assert_hyperbolic } => {
            let d = parse_diagram(&read_file(file)?)?;
            let m = linking_parity_matrix(&d)?;
            let c = classify_link_complement(&d)?;
            let mut out = Output::json(json!({
                "classification": c.to_string(),
                "parity_matrix": m,
                "cusps": d.component_count(),
                "hyperbolic": if *assert_hyperbolic { "asserted by caller" } else { "not asserted" },
            }));
            if !assert_hyperbolic {
                out.diagnostics.push(
                    "the classification holds for complements with a finite-volume hyperbolic metric, \
                     which is not checked; pass --assert-hyperbolic to state it"
                        .into(),
                );
            }
            Ok(out)
        }
        LinkAction::Parity { file } => {
            let d = parse_diagram(&read_file(file)?)?;
            let m = linking_parity_matrix(&d)?;
            let header: Vec<String> = (1..=m.len()).map(|i| format!("K{i}")).collect();
            let rows = m.iter().map(|r| r.iter().map(u8::to_string).collect()).collect();
            Ok(Output::json(json!({ "parity_matrix": m })).with_table(header.iter().map(String::as_str).collect(), rows))
        }
        LinkAction::Cusps { flags } => {
            let parsed = flags
                .iter()
                .filter(|f| !f.trim().is_empty())
                .map(|f| f.parse::<CuspFlag>())
                .collect::<spinspec::Result<Vec<_>>>()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let names: Vec<&str> = parsed
                .iter()
                .map(|f| match f {
                    CuspFlag::Trivial => "trivial",
                    CuspFlag::Nontrivial => "nontrivial",
                })
                .collect();
            Ok(Output::json(json!({
                "flags": names,
                "spectrum": classify_by_cusp_flags(&parsed).to_string(),
            })))
        }
        LinkAction::Table { dim, cusps } => match cusps {
            Some(n) => {
                let c = Cusps::from_count(*n);
                let r = existence_lookup(*dim, c)?;
                Ok(Output::json(json!({
                    "dim": dim,
                    "cusps": c.to_string(),
                    "discrete_possible": r.discrete_possible.to_string(),
                    "realline_possible": r.realline_possible.to_string(),
                })))
            }
            None => {
                let t = existence_table_json(*dim)?;
                let rows = t["rows"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .map(|r| {
                        ["cusps", "discrete_possible", "realline_possible"]
                            .iter()
                            .map(|k| scalar_text(&r[*k]))
                            .collect()
                    })
                    .collect();
                Ok(Output::json(t).with_table(vec!["cusps", "discrete_possible", "realline_possible"], rows))
            }
        },
    }
}

fn dahl(eta1: &str, eta2: &str, realizable: bool, tol: f64) -> Outcome<Output> {
    if let (Ok(a), Ok(b)) = (parse_q(eta1), parse_q(eta2)) {
        return Ok(Output::json(dahl_check(&a, &b, realizable).to_json()));
    }
    let num = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| Failure::Usage(format!("eta value {s:?} is neither p/q nor a decimal")))
    };
    Ok(Output::json(dahl_check_approx(num(eta1)?, num(eta2)?, realizable, tol)?.to_json()))
}

fn weyl(s: &Spectrum, lambdas: &[String]) -> Outcome<Output> {
    let mut reports = Vec::new();
    let mut rows = Vec::new();
    for text in lambdas {
        let l: ExactReal = text.parse()?;
        let r = weyl_report(s, &l)?;
        rows.push(vec![
            l.to_string(),
            r.count.to_string(),
            r.ratio.map(|x| x.to_string()).unwrap_or_default(),
            r.limit_constant.to_string(),
        ]);
        reports.push(json!({
            "lambda": exact_to_json(&l),
            "count": r.count,
            "ratio": r.ratio,
            "limit_constant": r.limit_constant,
        }));
    }
    Ok(Output::json(json!({ "dim": s.dim(), "reports": reports }))
        .with_table(vec!["lambda", "count", "ratio", "limit_constant"], rows))
}

