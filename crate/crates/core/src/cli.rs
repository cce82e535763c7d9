//! Command-line front end. The binary only forwards `argv` to [`run`].
//!
//! Exit codes: 0 success, 2 input error, 3 failed mathematical precondition.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::collapse::{greedy_collapse, is_collapsible, Collapsibility, CollapseSequence};
use crate::complex::{certify_cover, closed_star_cover, nerve, parse_scx, CoverBasis, CoverCertificate, SimplicialComplex};
use crate::cover::{parse_slab, CyclicCoverLabeling};
use crate::homology::{homology, reduced_homology, Homology};
use crate::localprofile::{
    check_composition_formula, check_sum_formula, is_locally_acyclic, local_profile, CompositionReport,
    LocalTorsionProfile, LocalVerdict, ProfileError, SumFormulaReport,
};
use crate::simpmap::{parse_smap, SimplicialMap};
use crate::torsion::{whitehead_torsion, whitehead_torsion_trivial, TorsionError};

pub const SCHEMA: u32 = 1;
pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "simple-torsion", version, about = "Simple-homotopy invariants of simplicial complexes and maps")]
pub struct Cli {
    /// Emit the structured JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// A map `f: Y → X` given by the target, the source and an SMAP file.
#[derive(Debug, Args)]
pub struct MapArgs {
    /// Target complex X (SCX).
    pub x: PathBuf,
    /// Source complex Y (SCX).
    pub y: PathBuf,
    /// Vertex map Y → X (SMAP).
    pub map: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integral homology, reduced homology and Euler characteristic.
    Homology { complex: PathBuf },
    /// Per-simplex fiber profile and the local acyclicity verdict.
    Fibers {
        #[command(flatten)]
        map: MapArgs,
    },
    /// Whitehead torsion in units of Z[Z/n] modulo ±t^k.
    Torsion {
        #[command(flatten)]
        map: MapArgs,
        /// Labeling of X (SLAB).
        #[arg(required_unless_present = "trivial_pi", conflicts_with = "trivial_pi")]
        labels: Option<PathBuf>,
        /// Use the trivial group (n = 1).
        #[arg(long)]
        trivial_pi: bool,
    },
    /// Greedy collapse; with --budget, a bounded search for a collapse to a point.
    Collapse {
        complex: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Vertex-star cover, its acyclicity checks and its nerve.
    Cover { complex: PathBuf },
    /// Sum formula over a 2-piece cover of X, or composition with g: Z → Y.
    Check {
        #[command(flatten)]
        map: MapArgs,
        /// Two subcomplexes of X covering it (SCX).
        #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with = "compose", required_unless_present = "compose")]
        cover: Option<Vec<PathBuf>>,
        /// Source complex Z and map g: Z → Y (SCX, SMAP).
        #[arg(long, num_args = 2, value_names = ["Z", "G"])]
        compose: Option<Vec<PathBuf>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: Vec<String>,
    /// SHA-256 over the input files, each prefixed by its length.
    pub inputs_digest: String,
    /// One-line human verdict.
    pub summary: String,
    pub payload: Payload,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Homology { homology: Homology, reduced: Homology, euler_characteristic: i64 },
    Fibers { profile: LocalTorsionProfile, verdict: LocalVerdict },
    Torsion { modulus: usize, class: String, trivial: bool },
    Collapse { remaining: usize, greedy: CollapseSequence, search: Option<Collapsibility> },
    Cover { pieces: usize, certificate: CoverCertificate, nerve_f_vector: Vec<usize>, nerve_homology: Homology, complex_homology: Homology },
    SumFormula(SumFormulaReport),
    Composition(CompositionReport),
    Error { exit_code: i32, message: String },
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Outcome of one invocation: the exit code and what goes to each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

struct Failure {
    code: i32,
    message: String,
}

fn input(message: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_INPUT, message: message.to_string() }
}

struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new() -> Self {
        Inputs { hasher: Sha256::new() }
    }

    fn read(&mut self, p: &Path) -> Result<String, Failure> {
        let text = fs::read_to_string(p).map_err(|e| input(format!("{}: {e}", p.display())))?;
        self.hasher.update((text.len() as u64).to_le_bytes());
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn complex(&mut self, p: &Path) -> Result<SimplicialComplex, Failure> {
        let text = self.read(p)?;
        parse_scx(&text).map_err(|e| input(format!("{}: {e}", p.display())))
    }

    fn map(&mut self, source: SimplicialComplex, target: SimplicialComplex, p: &Path) -> Result<SimplicialMap, Failure> {
        let text = self.read(p)?;
        let vm = parse_smap(&text).map_err(|e| input(format!("{}: {e}", p.display())))?;
        SimplicialMap::new(source, target, vm).map_err(|e| input(format!("{}: {e}", p.display())))
    }

    fn map_args(&mut self, a: &MapArgs) -> Result<SimplicialMap, Failure> {
        let x = self.complex(&a.x)?;
        let y = self.complex(&a.y)?;
        self.map(y, x, &a.map)
    }

    fn digest(self) -> String {
        hex::encode(self.hasher.finalize())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr, report: None };
        }
    };
    let mut inputs = Inputs::new();
    let result = execute(&cli.command, &mut inputs);
    let digest = inputs.digest();
    let (code, report, text) = match result {
        Ok((summary, payload, warnings, text)) => {
            (EXIT_OK, Report { schema: SCHEMA, command: echo, inputs_digest: digest, summary, payload, warnings }, text)
        }
        Err(f) => {
            let report = Report {
                schema: SCHEMA,
                command: echo,
                inputs_digest: digest,
                summary: format!("error: {}", f.message),
                payload: Payload::Error { exit_code: f.code, message: f.message.clone() },
                warnings: Vec::new(),
            };
            let stdout = if cli.json { report.to_json() + "\n" } else { String::new() };
            return Outcome { code: f.code, stdout, stderr: format!("error: {}\n", f.message), report: Some(report) };
        }
    };
    let stdout = if cli.json { report.to_json() + "\n" } else { text };
    let stderr = report.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    Outcome { code, stdout, stderr, report: Some(report) }
}

type Success = (String, Payload, Vec<String>, String);

fn execute(cmd: &Command, inputs: &mut Inputs) -> Result<Success, Failure> {
    match cmd {
        Command::Homology { complex } => cmd_homology(&inputs.complex(complex)?),
        Command::Fibers { map } => cmd_fibers(&inputs.map_args(map)?),
        Command::Torsion { map, labels, trivial_pi } => {
            let f = inputs.map_args(map)?;
            let lab = match (labels, trivial_pi) {
                (Some(p), false) => {
                    let text = inputs.read(p)?;
                    let (n, entries) = parse_slab(&text).map_err(|e| input(format!("{}: {e}", p.display())))?;
                    Some(
                        CyclicCoverLabeling::from_entries(f.target(), n, entries)
                            .map_err(|e| input(format!("{}: {e}", p.display())))?,
                    )
                }
                _ => None,
            };
            cmd_torsion(&f, lab.as_ref())
        }
        Command::Collapse { complex, budget } => cmd_collapse(&inputs.complex(complex)?, *budget),
        Command::Cover { complex } => cmd_cover(&inputs.complex(complex)?),
        Command::Check { map, cover, compose } => {
            let f = inputs.map_args(map)?;
            match (cover, compose) {
                (Some(ab), _) => {
                    let a = inputs.complex(&ab[0])?;
                    let b = inputs.complex(&ab[1])?;
                    cmd_check_cover(&f, &a, &b)
                }
                (None, Some(zg)) => {
                    let z = inputs.complex(&zg[0])?;
                    let g = inputs.map(z, f.source().clone(), &zg[1])?;
                    cmd_check_compose(&g, &f)
                }
                (None, None) => Err(input("one of --cover or --compose is required")),
            }
        }
    }
}

/// `H0=Z H1=0 H2=Z` over degrees `lo..=hi`, listing zero groups too.
fn dense(h: &Homology, lo: i32, hi: i32) -> String {
    (lo..=hi).map(|d| format!("H{d}={}", h.get(d))).collect::<Vec<_>>().join(" ")
}

fn cmd_homology(k: &SimplicialComplex) -> Result<Success, Failure> {
    let h = homology(k);
    let rh = reduced_homology(k);
    let chi = k.euler_characteristic();
    let top = k.dim().map_or(0, |d| d as i32);
    let summary = format!("{}, chi={chi}", dense(&h, 0, top));
    let text = format!("{summary}\nreduced: {}\n", dense(&rh, -1, top));
    Ok((summary, Payload::Homology { homology: h, reduced: rh, euler_characteristic: chi }, Vec::new(), text))
}

fn cmd_fibers(f: &SimplicialMap) -> Result<Success, Failure> {
    let profile = local_profile(f);
    let verdict = is_locally_acyclic(f);
    let summary = match &verdict {
        LocalVerdict::LocallyAcyclic => "LOCALLY-ACYCLIC".to_string(),
        LocalVerdict::Fails { simplex, fiber_reduced_homology } => {
            format!("FAIL at {simplex}: reduced fiber homology {fiber_reduced_homology}")
        }
    };
    let text = format!("{}verdict: {summary}\n", profile.render_table());
    Ok((summary, Payload::Fibers { profile, verdict }, Vec::new(), text))
}

fn cmd_torsion(f: &SimplicialMap, lab: Option<&CyclicCoverLabeling>) -> Result<Success, Failure> {
    let result = match lab {
        Some(l) => whitehead_torsion(f, l),
        None => whitehead_torsion_trivial(f),
    };
    let class = result.map_err(|e| match e {
        TorsionError::NotAPiHomologyEquivalence { degree, group } | TorsionError::NotAcyclic { degree, group } => {
            Failure { code: EXIT_PRECONDITION, message: format!("not a homotopy equivalence: cone H{degree} = {group}") }
        }
        TorsionError::InternalInconsistency(m) => Failure { code: EXIT_PRECONDITION, message: m },
        other => input(other),
    })?;
    let rep = class.canonical().poly_string();
    let verdict = if class.is_trivial() { "TRIVIAL" } else { "NONTRIVIAL" };
    let summary = format!("class = {rep} ({verdict})");
    let text = format!("{summary}\nmodulus n = {}\n", class.modulus());
    let payload = Payload::Torsion { modulus: class.modulus(), class: rep, trivial: class.is_trivial() };
    Ok((summary, payload, Vec::new(), text))
}

fn cmd_collapse(k: &SimplicialComplex, budget: Option<usize>) -> Result<Success, Failure> {
    let (rest, seq) = greedy_collapse(k);
    let greedy = if seq.is_empty() && rest.len() > 1 {
        "no free faces".to_string()
    } else if rest.len() == 1 {
        format!("collapsed to point in {} moves", seq.len())
    } else {
        format!("greedy collapse stuck at {} simplices after {} moves", rest.len(), seq.len())
    };
    let search = budget.map(|b| is_collapsible(k, b));
    let mut text = format!("{greedy}\n");
    let summary = match &search {
        None => greedy,
        Some(Collapsibility::Yes(cert)) => {
            text.push_str(&format!("COLLAPSIBLE, {} moves\n{}", cert.len(), cert.to_text()));
            format!("COLLAPSIBLE, {} moves", cert.len())
        }
        Some(Collapsibility::No) => {
            text.push_str("NOT COLLAPSIBLE\n");
            "NOT COLLAPSIBLE".into()
        }
        Some(Collapsibility::BudgetExhausted) => {
            text.push_str("BUDGET EXHAUSTED\n");
            "BUDGET EXHAUSTED".into()
        }
    };
    if search.is_none() {
        text.push_str(&seq.to_text());
    }
    Ok((summary, Payload::Collapse { remaining: rest.len(), greedy: seq, search }, Vec::new(), text))
}

fn cmd_cover(k: &SimplicialComplex) -> Result<Success, Failure> {
    let cover = closed_star_cover(k, CoverBasis::Vertices);
    let cert = certify_cover(&cover, cover.len().min(4));
    let nv = nerve(&cover);
    let (nh, kh) = (homology(&nv), homology(k));
    let mut warnings = Vec::new();
    if cover.len() > 4 {
        warnings.push("intersections checked up to 4 pieces".to_string());
    }
    let matches = nh == kh;
    let summary = format!(
        "{} pieces, cover {}, nerve homology {} ({})",
        cover.len(),
        if cert.holds() { "acyclic" } else { "NOT acyclic" },
        nh,
        if matches { "matches" } else { "DIFFERS" }
    );
    let mut text = String::new();
    let centers = cover.centers().expect("star cover");
    for (i, (c, ok)) in centers.iter().zip(&cert.piece_acyclic).enumerate() {
        text.push_str(&format!("piece {i}: star({c}) {}\n", if *ok { "acyclic" } else { "NOT acyclic" }));
    }
    for chk in cert.intersections.iter().filter(|c| c.pieces.len() == 2) {
        let state = if chk.empty { "empty" } else if chk.acyclic { "acyclic" } else { "NOT acyclic" };
        text.push_str(&format!("pieces {:?}: {state}\n", chk.pieces));
    }
    text.push_str(&format!("nerve f-vector {:?}\n{summary}\n", nv.f_vector()));
    let payload = Payload::Cover {
        pieces: cover.len(),
        certificate: cert,
        nerve_f_vector: nv.f_vector(),
        nerve_homology: nh,
        complex_homology: kh,
    };
    Ok((summary, payload, warnings, text))
}

fn profile_failure(e: ProfileError) -> Failure {
    input(e)
}

fn cmd_check_cover(f: &SimplicialMap, a: &SimplicialComplex, b: &SimplicialComplex) -> Result<Success, Failure> {
    let r = check_sum_formula(f, a, b).map_err(profile_failure)?;
    let mut text = String::new();
    for d in &r.degrees {
        text.push_str(&format!(
            "degree {}: dims {:?} ranks ({}, {}) {}\n",
            d.degree,
            d.dims,
            d.rank_in,
            d.rank_out,
            if d.exact { "exact" } else { "NOT exact" }
        ));
    }
    let chi: Vec<String> = r.euler.terms.iter().map(|(k, v)| format!("chi({k})={v}")).collect();
    text.push_str(&format!("{} [{}]\n", chi.join(" "), if r.euler.holds { "holds" } else { "FAILS" }));
    let summary = if r.holds() { "sum formula: all degrees exact, Euler identity holds" } else { "sum formula: FAILED" };
    text.push_str(summary);
    text.push('\n');
    Ok((summary.into(), Payload::SumFormula(r), Vec::new(), text))
}

fn cmd_check_compose(g: &SimplicialMap, f: &SimplicialMap) -> Result<Success, Failure> {
    let r = check_composition_formula(g, f).map_err(profile_failure)?;
    let mut text = String::new();
    for d in &r.degrees {
        text.push_str(&format!("degree {}: dims {:?} {}\n", d.degree, d.dims, if d.exact { "exact" } else { "NOT exact" }));
    }
    text.push_str(&format!(
        "comparison map: chain map {}, surjective {}, acyclic kernel {}\n",
        r.comparison_is_chain_map, r.comparison_surjective, r.comparison_kernel_acyclic
    ));
    let chi: Vec<String> = r.euler.terms.iter().map(|(k, v)| format!("chi({k})={v}")).collect();
    text.push_str(&format!("{} [{}]\n", chi.join(" "), if r.euler.holds { "holds" } else { "FAILS" }));
    let summary = if r.holds() { "composition formula: exact, Euler identity holds" } else { "composition formula: FAILED" };
    text.push_str(summary);
    text.push('\n');
    Ok((summary.into(), Payload::Composition(r), Vec::new(), text))
}
