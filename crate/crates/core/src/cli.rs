//! Command-line front end. Every command produces one [`ReportDocument`],
//! printed as JSON (default) or as a plain table.
//!
//! Exit codes: 0 success, 1 usage, 2 parse, 3 consistency failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::crq::{deformation_family, standard_contact_bracket, BracketSpec, Obstruction};
use crate::decomp::{decompose, format_formula, Component};
use crate::error::Error;
use crate::exactla::parse_rational;
use crate::gla::{GradedAlgebra, SubspaceTable};
use crate::kostant::{format_simple, hasse_diagram};
use crate::spencer::les::{les_segment, LES_MAX_Q};
use crate::spencer::{Complex, Spencer};

pub const THREADS_ENV: &str = "SPENCER_THREADS";

#[derive(Parser, Debug)]
#[command(name = "spencer", version, about = "Exact Spencer cohomology of the quaternionic CR pair (sl(2n+2), W)")]
pub struct Cli {
    /// Print a plain table instead of JSON
    #[arg(long, global = true)]
    pub table: bool,
    /// Include wall-clock timing in the report (output is then not reproducible)
    #[arg(long, global = true)]
    pub timing: bool,
    /// Progress messages on standard error
    #[arg(long, short, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Graded dimensions, subspaces and the stabilizer of W
    Info {
        #[arg(long)]
        n: usize,
    },
    /// One Spencer cohomology group, absolute or relative to W
    Cohomology {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        p: i32,
        #[arg(long)]
        q: usize,
        /// Cochains restricted to W
        #[arg(long)]
        relative: bool,
        /// Decompose under the Levi factor
        #[arg(long)]
        decompose: bool,
    },
    /// Hasse diagram and Kostant's description of H^{•,q}
    Kostant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
    },
    /// Exactness of the long exact sequence in total degree p+q
    Les {
        #[arg(long)]
        n: usize,
        /// Total degree p+q of the segment
        #[arg(long, allow_hyphen_values = true)]
        q: i32,
    },
    /// First-order obstruction class of a bracket on the Heisenberg model
    R1 {
        #[arg(long)]
        n: usize,
        /// Bracket file (JSON with n and entries {i, j, alpha, value})
        #[arg(long)]
        bracket: PathBuf,
        /// Deform the standard bracket: L_t = L_0 + t·L with L from the file
        #[arg(long)]
        t: Option<String>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Bidegree {
    pub p: i32,
    pub q: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HighestWeight {
    pub sl2: u32,
    pub slm: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionEntry {
    pub name: String,
    pub highest_weight: HighestWeight,
    pub dim: u64,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bidegree: Option<Bidegree>,
    pub dimensions: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<DecompositionEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    pub toolchain: String,
}

impl ReportDocument {
    fn new(command: String, n: usize) -> Self {
        ReportDocument {
            command,
            n,
            bidegree: None,
            dimensions: BTreeMap::new(),
            decomposition: None,
            formula: None,
            details: Value::Null,
            timing_ms: None,
            toolchain: format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization") + "\n"
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("command     {}\n", self.command));
        s.push_str(&format!("n           {}\n", self.n));
        if let Some(b) = &self.bidegree {
            s.push_str(&format!("bidegree    ({}, {})\n", b.p, b.q));
        }
        let w = self.dimensions.keys().map(|k| k.chars().count()).max().unwrap_or(0);
        for (k, v) in &self.dimensions {
            s.push_str(&format!("  {k:<w$}  {v}\n"));
        }
        if let Some(d) = &self.decomposition {
            s.push_str("decomposition\n");
            for e in d {
                s.push_str(&format!(
                    "  {:>3} x {:<14} dim {:>5}   (a={}, λ={:?})\n",
                    e.multiplicity, e.name, e.dim, e.highest_weight.sl2, e.highest_weight.slm
                ));
            }
        }
        if let Some(f) = &self.formula {
            s.push_str(&format!("formula     {f}\n"));
        }
        if let Value::Object(map) = &self.details {
            // the raw weight list is only useful in JSON
            for (k, v) in map.iter().filter(|(k, _)| k.as_str() != "character") {
                match v {
                    Value::Array(items) => {
                        s.push_str(&format!("{k}\n"));
                        for it in items {
                            s.push_str(&format!("  {}\n", compact(it)));
                        }
                    }
                    other => s.push_str(&format!("{k}  {}\n", compact(other))),
                }
            }
        }
        if let Some(t) = self.timing_ms {
            s.push_str(&format!("timing      {t} ms\n"));
        }
        s
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", compact(v)))
            .collect::<Vec<_>>()
            .join("  "),
        other => other.to_string(),
    }
}

/// Error plus the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) | Error::Io(_) => 2,
            Error::Consistency(_) | Error::Decomposition(_) => 3,
            Error::Shape(_) | Error::Unsupported(_) | Error::Bidegree(_) => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn consistency(msg: String) -> Failure {
    Failure { code: 3, message: msg }
}

fn decomposition_entries(comps: &[Component]) -> Vec<DecompositionEntry> {
    comps
        .iter()
        .map(|c| DecompositionEntry {
            name: c.name.clone(),
            highest_weight: HighestWeight { sl2: c.irrep.sl2, slm: c.irrep.dynkin.clone() },
            dim: c.dim,
            multiplicity: c.multiplicity,
        })
        .collect()
}

struct Ctx {
    verbose: bool,
}

impl Ctx {
    fn progress(&self, msg: &str) {
        if self.verbose {
            eprintln!("[spencer] {msg}");
        }
    }
}

pub fn cmd_info(n: usize) -> Result<ReportDocument, Failure> {
    let a = GradedAlgebra::new(n)?;
    let t = SubspaceTable::of(&a)?;
    let mut r = ReportDocument::new(format!("info --n {n}"), n);
    let k = n - 1;
    let formula = 4 * k * k + 4 * k + 4;
    if t.dim_stabilizer != formula {
        return Err(consistency(format!("stabilizer of W has dimension {} instead of {formula}", t.dim_stabilizer)));
    }
    for (name, v) in [
        ("sl", t.dim_sl),
        ("g^-1", t.dim_g_minus1),
        ("g^0", t.dim_g0),
        ("g^1", t.dim_g1),
        ("W", t.dim_w),
        ("U", t.dim_u),
        ("U_perp", t.dim_u_perp),
        ("W_perp", t.dim_w_perp),
        ("stabilizer", t.dim_stabilizer),
        ("levi", t.dim_levi),
    ] {
        r.dimensions.insert(name.into(), v as u64);
    }
    r.details = json!({
        "matrix_size": a.size(),
        "rank": a.rank(),
        "stabilizer_formula": "4(n-1)^2+4(n-1)+4",
        "v_basis": a.names(crate::gla::Degree::Minus1),
    });
    Ok(r)
}

pub fn cmd_cohomology(n: usize, p: i32, q: usize, relative: bool, decomp: bool) -> Result<ReportDocument, Failure> {
    if q > 3 {
        return Err(Error::Bidegree(format!("q = {q} is outside the supported range 0..=3")).into());
    }
    let kind = if relative { Complex::Relative } else { Complex::Absolute };
    let s = Spencer::new(n)?;
    let h = s.cohomology(p, q, kind)?;
    let mut cmd = format!("cohomology --n {n} --p {p} --q {q}");
    if relative {
        cmd.push_str(" --relative");
    }
    if decomp {
        cmd.push_str(" --decompose");
    }
    let mut r = ReportDocument::new(cmd, n);
    r.bidegree = Some(Bidegree { p, q });
    r.dimensions.insert("cochains".into(), h.dim_cochains as u64);
    r.dimensions.insert("rank_in".into(), h.rank_in as u64);
    r.dimensions.insert("rank_out".into(), h.rank_out as u64);
    r.dimensions.insert("cohomology".into(), h.dim as u64);
    if h.dim_cochains != h.dim + h.rank_in + h.rank_out {
        return Err(consistency("dimension count does not close".into()));
    }
    let character: Vec<Value> = h
        .character
        .iter()
        .filter(|(_, &k)| k != 0)
        .map(|(w, k)| json!({"sl2": w.sl2, "slm": w.slm, "mult": k}))
        .collect();
    r.details = json!({
        "group": format!("H^{{{p},{q}}}({})", kind.label()),
        "character": character,
    });
    if decomp {
        let comps = decompose(&h.character)?;
        let total: u64 = comps.iter().map(|c| c.dim * c.multiplicity).sum();
        if total != h.dim as u64 {
            return Err(consistency(format!("decomposition has dimension {total}, expected {}", h.dim)));
        }
        r.formula = Some(format_formula(s.algebra().m(), &comps));
        r.decomposition = Some(decomposition_entries(&comps));
    }
    Ok(r)
}

pub fn cmd_kostant(n: usize, q: usize) -> Result<ReportDocument, Failure> {
    if q > 3 {
        return Err(Error::Bidegree(format!("q = {q} is outside the supported range 0..=3")).into());
    }
    let a = GradedAlgebra::new(n)?;
    let entries = hasse_diagram(&a, q)?;
    let mut r = ReportDocument::new(format!("kostant --n {n} --q {q}"), n);
    for p in 0..=2 {
        let d: u64 = entries.iter().filter(|e| e.p == p).map(|e| e.dim).sum();
        r.dimensions.insert(format!("H^{{{p},{q}}}"), d);
    }
    let items: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "sigma": e.label,
                "word": e.word,
                "inversions": e.inversions.iter().map(|b| format_simple(b)).collect::<Vec<_>>(),
                "sigma_theta": format_simple(&e.sigma_theta),
                "xi": format_simple(&e.xi),
                "p": e.p,
                "q": e.q,
                "highest_weight": e.omega_label,
                "omega": e.omega,
                "dim": e.dim,
            })
        })
        .collect();
    r.details = json!({ "entries": items });
    Ok(r)
}

pub fn cmd_les(n: usize, total: i32, ctx_verbose: bool) -> Result<ReportDocument, Failure> {
    let ctx = Ctx { verbose: ctx_verbose };
    let s = Spencer::new(n)?;
    ctx.progress(&format!("segment of total degree {total}"));
    let seg = les_segment(&s, total)?;
    let mut r = ReportDocument::new(format!("les --n {n} --q {total}"), n);
    for node in &seg.nodes {
        r.dimensions.insert(node.label.clone(), node.dim as u64);
    }
    let nodes: Vec<Value> = seg
        .nodes
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let check = seg.checks.iter().find(|c| c.node == i);
            json!({
                "node": x.label,
                "dim": x.dim,
                "exact": check.map(|c| Value::Bool(c.exact)).unwrap_or(Value::String("end".into())),
            })
        })
        .collect();
    let maps: Vec<Value> = seg
        .maps
        .iter()
        .map(|m| {
            json!({
                "map": format!("{:?}", m.kind).to_lowercase(),
                "from": seg.nodes[m.from].label,
                "to": seg.nodes[m.to].label,
                "rank": m.rank,
                "injective": m.injective,
                "surjective": m.surjective,
            })
        })
        .collect();
    r.details = json!({
        "exact": seg.is_exact(),
        "truncated_above_q": if seg.truncated { Value::from(LES_MAX_Q) } else { Value::Null },
        "nodes": nodes,
        "maps": maps,
    });
    if !seg.is_exact() {
        let bad: Vec<String> = seg.checks.iter().filter(|c| !c.exact).map(|c| seg.nodes[c.node].label.clone()).collect();
        return Err(Failure { code: 3, message: format!("{}\nexactness fails at {}", r.to_json(), bad.join(", ")) });
    }
    Ok(r)
}

pub fn cmd_r1(n: usize, bracket: &std::path::Path, t: Option<&str>) -> Result<ReportDocument, Failure> {
    let l = BracketSpec::read(bracket)?;
    if l.n() != n {
        return Err(Error::Parse(format!("bracket file is for n = {}, but --n {n} was given", l.n())).into());
    }
    let ob = Obstruction::with_spencer(Arc::new(Spencer::new(n)?))?;
    let (target, t_str) = match t {
        Some(t) => {
            let tv = parse_rational(t).map_err(|m| Error::Parse(format!("--t: {m}")))?;
            (deformation_family(&standard_contact_bracket(n)?, &l, &tv)?, Some(tv.to_string()))
        }
        None => (l, None),
    };
    let rep = ob.r1_class(&target)?;
    let name = bracket.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
    let mut cmd = format!("r1 --n {n} --bracket {name}");
    if let Some(t) = &t_str {
        cmd.push_str(&format!(" --t {t}"));
    }
    let mut r = ReportDocument::new(cmd, n);
    r.bidegree = Some(Bidegree { p: 0, q: 2 });
    r.dimensions.insert("U_perp_tensor_L2U".into(), ob.subspace_dim() as u64);
    r.dimensions.insert("nonzero_entries".into(), target.entries().count() as u64);
    r.details = json!({
        "vanishes": rep.vanishes,
        "components": rep.components,
        "deformation_t": t_str,
        "certificate_size": rep.certificate.as_ref().map(|c| c.len()),
        "note": rep.note,
    });
    Ok(r)
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let k: usize = v
            .trim()
            .parse()
            .map_err(|_| Failure { code: 1, message: format!("{THREADS_ENV}={v:?} is not a thread count") })?;
        // a second initialization in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<ReportDocument, Failure> {
    configure_threads()?;
    let start = Instant::now();
    let mut r = match &cli.command {
        Command::Info { n } => cmd_info(*n)?,
        Command::Cohomology { n, p, q, relative, decompose } => cmd_cohomology(*n, *p, *q, *relative, *decompose)?,
        Command::Kostant { n, q } => cmd_kostant(*n, *q)?,
        Command::Les { n, q } => cmd_les(*n, *q, cli.verbose)?,
        Command::R1 { n, bracket, t } => cmd_r1(*n, bracket, t.as_deref())?,
    };
    if cli.timing {
        r.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(r)
}

/// Parses arguments, runs the command and writes the report; returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(r) => {
            let text = if cli.table { r.to_table() } else { r.to_json() };
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
