//! Command-line front end. Every command produces an [`Outcome`]: a text
//! body, a [`Report`] whose checks decide the exit status, and optionally a
//! definition file and extra artifacts for `--out`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::constructions::{direct_product, enumerate_subhypergroups, join, orbit_hypergroup, quotient, substitution, zq_family, cyclic_group, Subhypergroup, SUBHYPERGROUP_SIZE_BOUND};
use crate::demo::{run_demo, DemoParams};
use crate::duality::{character_table, double_dual, dual_hypergroup, SpectralConfig};
use crate::error::{Error, Result};
use crate::hyperfield::{build_k, exact_sequence_check, validate_hyperfield, verify_duality};
use crate::hypergroup::{validate_hypergroup, FiniteHypergroup, TAU_AXIOM};
use crate::induction::{associativity_families, build_context, build_two_sheet, lemma51_suite, verify_theorem_52, verify_theorem_53, InductionContext};
use crate::io::{self, DefinitionFile, FormatValue, Meta};
use crate::report::{sig12, Report};
use crate::scalar::{Rational, Scalar};

/// Environment variable naming a JSON [`RunConfig`] file.
pub const CONFIG_ENV: &str = "HYPERFIELD_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Report,
    Definition,
}

#[derive(Debug, Parser)]
#[command(name = "hyperfield", version, about = "Finite commutative hypergroups and hyperfield extensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Switches hypergroup files to floating point at this tolerance and
    /// overrides the character tolerance.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Seed for the character solver.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory for the report and any emitted files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// JSON config file; defaults to $HYPERFIELD_CONFIG.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Options naming a pair `(H, H0)`.
#[derive(Debug, clap::Args)]
pub struct PairArgs {
    /// Definition file or catalog name for `H`.
    pub file: String,
    /// Comma-separated element names of `H0`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sub: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Runs the axiom checker.
    Validate { file: String },
    /// Prints the Haar measure.
    Haar { file: String },
    /// Builds the dual hypergroup.
    Dual { file: String },
    /// Prints the character table.
    Characters { file: String },
    /// Lists all subhypergroups.
    Subs {
        file: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Quotient by a subhypergroup.
    Quotient(PairArgs),
    /// Direct product `A × B`.
    Product { a: String, b: String },
    /// Join `A ∨ B`.
    Join { a: String, b: String },
    /// Substitution `S(H/H0 × L : H/H0 → H)`.
    Substitute {
        h: String,
        l: String,
        #[arg(long, value_delimiter = ',', required = true)]
        sub: Vec<String>,
    },
    /// The family `Z_q(n)`.
    Zq { n: usize, q: Rational },
    /// The cyclic group `Z_N`.
    Cyclic { n: usize },
    /// Orbit hypergroup under the group generated by `--map` permutations
    /// (comma-separated images in element order); defaults to the involution.
    Orbit {
        file: String,
        #[arg(long)]
        map: Vec<String>,
    },
    #[command(name = "hyperfield-validate")]
    HyperfieldValidate { field: PathBuf },
    #[command(name = "hyperfield-build")]
    HyperfieldBuild { field: PathBuf },
    #[command(name = "verify-duality")]
    VerifyDuality { field: PathBuf },
    #[command(name = "exact-seq")]
    ExactSeq { field: PathBuf },
    /// Induced characters `ind(τ)` for every `τ`.
    Induce(PairArgs),
    /// Builds `K(Ĥ ∪ Ĥ0, Z_q(2))`.
    #[command(name = "two-sheet")]
    TwoSheet {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value = "1/2")]
        q: Rational,
    },
    #[command(name = "verify-52")]
    Verify52 {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value = "1/2")]
        q: Rational,
    },
    #[command(name = "verify-53")]
    Verify53 {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value = "1/2")]
        q: Rational,
    },
    Lemma51(PairArgs),
    /// Finite analog of a worked example: 4.1–4.7, 6.1–6.5.
    Demo {
        id: String,
        #[arg(long = "N", default_value_t = 6)]
        big_n: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value = "1/2")]
        q: Rational,
    },
}

/// Tolerances, seed, bounds and output location. Read from a JSON file and
/// overridden by flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub tau_axiom: f64,
    pub tau_char: f64,
    pub seed: u64,
    pub size_bound: usize,
    pub out: Option<PathBuf>,
    /// Load hypergroup files with floating-point constants.
    pub float_mode: bool,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tau_axiom: TAU_AXIOM,
            tau_char: SpectralConfig::default().tau_char,
            seed: SpectralConfig::default().seed,
            size_bound: SUBHYPERGROUP_SIZE_BOUND,
            out: None,
            float_mode: false,
            format: Format::Report,
        }
    }
}

impl Serialize for Format {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Format::Report => "report",
            Format::Definition => "definition",
        })
    }
}

impl<'de> Deserialize<'de> for Format {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Format::from_str(&s, false).map_err(serde::de::Error::custom)
    }
}

impl RunConfig {
    /// Config file (explicit path, else the environment variable), then flags.
    pub fn resolve(cli: &Cli) -> Result<Self> {
        let path = cli.config.clone().or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        let mut cfg = match path {
            Some(p) => serde_json::from_str(&io::read_text(&p)?).map_err(|e| Error::Schema(format!("{}: {e}", p.display())))?,
            None => RunConfig::default(),
        };
        if let Some(t) = cli.tolerance {
            cfg.tau_axiom = t;
            cfg.tau_char = t;
            cfg.float_mode = true;
        }
        if let Some(s) = cli.seed {
            cfg.seed = s;
        }
        if let Some(o) = &cli.out {
            cfg.out = Some(o.clone());
        }
        if let Some(f) = cli.format {
            cfg.format = f;
        }
        if !(cfg.tau_axiom >= 0.0 && cfg.tau_char > 0.0 && cfg.tau_axiom.is_finite() && cfg.tau_char.is_finite()) {
            return Err(Error::MalformedInput("tolerances must be positive and finite".into()));
        }
        Ok(cfg)
    }

    pub fn spectral(&self) -> SpectralConfig {
        SpectralConfig {
            seed: self.seed,
            tau_char: self.tau_char,
            ..SpectralConfig::default()
        }
    }
}

/// What a command produced.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub body: String,
    pub report: Report,
    pub definition: Option<String>,
    /// Extra files for `--out`, as (file name, contents).
    pub artifacts: Vec<(String, String)>,
}

impl Outcome {
    fn new(report: Report) -> Self {
        Outcome {
            report,
            ..Default::default()
        }
    }

    /// Text for standard output under `format`.
    pub fn render(&self, format: Format) -> String {
        match (format, &self.definition) {
            (Format::Definition, Some(d)) => d.clone(),
            _ => format!("{}{}", self.body, self.report.render()),
        }
    }
}

/// A hypergroup in whichever scalar regime the config asks for.
enum Loaded {
    Exact(FiniteHypergroup<Rational>),
    Float(FiniteHypergroup<f64>),
}

macro_rules! with_host {
    ($loaded:expr, $h:ident => $body:expr) => {
        match $loaded {
            Loaded::Exact($h) => $body,
            Loaded::Float($h) => $body,
        }
    };
}

/// Resolves a file path, falling back to the catalog's names.
fn load_raw_text(source: &str) -> Result<String> {
    let path = Path::new(source);
    if path.exists() {
        return io::read_text(path);
    }
    match catalog::lookup(source)? {
        Some(h) => Ok(io::serialize_definition(&h, None)),
        None => Err(Error::Io(format!("{source}: no such file or catalog entry"))),
    }
}

fn load(source: &str, cfg: &RunConfig) -> Result<Loaded> {
    let file = DefinitionFile::from_json(&load_raw_text(source)?)?;
    if cfg.float_mode {
        Ok(Loaded::Float(FiniteHypergroup::new(file.to_raw_f64()?, cfg.tau_axiom)?))
    } else {
        Ok(Loaded::Exact(FiniteHypergroup::exact(file.to_raw()?)?))
    }
}

fn names_to_indices<S: Scalar>(h: &FiniteHypergroup<S>, names: &[String]) -> Result<Vec<usize>> {
    let mut idx = names
        .iter()
        .map(|n| h.index_of(n.trim()).ok_or_else(|| Error::MalformedInput(format!("unknown element {n:?}"))))
        .collect::<Result<Vec<_>>>()?;
    idx.sort_unstable();
    idx.dedup();
    Ok(idx)
}

fn meta(name: impl Into<String>) -> Option<Meta> {
    Some(Meta {
        name: Some(name.into()),
        provenance: None,
    })
}

fn definition_outcome<S: FormatValue>(title: &str, h: &FiniteHypergroup<S>) -> Outcome {
    let mut report = Report::new(title);
    report.check("validates", true, format!("order {}", h.order()));
    Outcome {
        report,
        definition: Some(io::serialize_definition(h, meta(title))),
        ..Default::default()
    }
}

fn context_of(pair: &PairArgs, cfg: &RunConfig) -> Result<InductionContext> {
    with_host!(load(&pair.file, cfg)?, h => {
        let sub = Subhypergroup::new(&h, &names_to_indices(&h, &pair.sub)?)?;
        build_context(&h, &sub, &cfg.spectral())
    })
}

/// Executes one command.
pub fn run_command(command: &Command, cfg: &RunConfig) -> Result<Outcome> {
    let spectral = cfg.spectral();
    match command {
        Command::Validate { file } => {
            let text = load_raw_text(file)?;
            let def = DefinitionFile::from_json(&text)?;
            let violations = if cfg.float_mode {
                validate_hypergroup(&def.to_raw_f64()?, cfg.tau_axiom)?
            } else {
                validate_hypergroup(&def.to_raw()?, 0.0)?
            };
            let mut report = Report::new(format!("validate {file}"));
            report.check("axioms", violations.ok(), violations.to_string().trim());
            Ok(Outcome::new(report))
        }
        Command::Haar { file } => with_host!(load(file, cfg)?, h => {
            let w = h.haar()?;
            let mut body = String::new();
            for (x, v) in w.weights.iter().enumerate() {
                body.push_str(&format!("{} {}\n", h.name(x), v.format_value()));
            }
            let mut report = Report::new(format!("haar {file}"));
            report.check("invariant probability measure", true, "");
            Ok(Outcome { body, ..Outcome::new(report) })
        }),
        Command::Characters { file } => with_host!(load(file, cfg)?, h => {
            let table = character_table(&h, &spectral)?;
            let mut report = Report::new(format!("characters {file}"));
            let d = table.orthogonality_defect();
            report.check("orthogonality", d <= cfg.tau_char, format!("defect {}", sig12(d)));
            Ok(Outcome { body: table.report(), ..Outcome::new(report) })
        }),
        Command::Dual { file } => with_host!(load(file, cfg)?, h => {
            let table = character_table(&h, &spectral)?;
            let dual = dual_hypergroup(&table)?.hypergroup;
            let mut report = Report::new(format!("dual {file}"));
            let d = table.orthogonality_defect();
            report.check("orthogonality", d <= cfg.tau_char, format!("defect {}", sig12(d)));
            report.check("dual is a hypergroup", true, format!("order {}", dual.order()));
            let (_, dev) = double_dual(&table, &spectral)?;
            report.check("double dual", dev <= cfg.tau_char, format!("max deviation {}", sig12(dev)));
            Ok(Outcome {
                definition: Some(io::serialize_definition(&dual, meta(format!("dual of {file}")))),
                ..Outcome::new(report)
            })
        }),
        Command::Subs { file, bound } => with_host!(load(file, cfg)?, h => {
            let subs = enumerate_subhypergroups(&h, bound.unwrap_or(cfg.size_bound))?;
            let mut body = String::new();
            for s in &subs {
                let names: Vec<&str> = s.members().iter().map(|&x| h.name(x)).collect();
                body.push_str(&format!("{{{}}}\n", names.join(", ")));
            }
            let mut report = Report::new(format!("subhypergroups of {file}"));
            report.check("enumerated", true, format!("{} subhypergroups", subs.len()));
            Ok(Outcome { body, ..Outcome::new(report) })
        }),
        Command::Quotient(pair) => with_host!(load(&pair.file, cfg)?, h => {
            let sub = Subhypergroup::new(&h, &names_to_indices(&h, &pair.sub)?)?;
            let q = quotient(&h, &sub)?;
            Ok(definition_outcome(&format!("{} / {{{}}}", pair.file, pair.sub.join(",")), &q.target))
        }),
        Command::Product { a, b } => match (load(a, cfg)?, load(b, cfg)?) {
            (Loaded::Exact(x), Loaded::Exact(y)) => Ok(definition_outcome(&format!("{a} x {b}"), &direct_product(&x, &y))),
            (x, y) => Ok(definition_outcome(&format!("{a} x {b}"), &direct_product(&float(x, cfg), &float(y, cfg)))),
        },
        Command::Join { a, b } => match (load(a, cfg)?, load(b, cfg)?) {
            (Loaded::Exact(x), Loaded::Exact(y)) => Ok(definition_outcome(&format!("{a} v {b}"), &join(&x, &y)?)),
            (x, y) => Ok(definition_outcome(&format!("{a} v {b}"), &join(&float(x, cfg), &float(y, cfg))?)),
        },
        Command::Substitute { h, l, sub } => {
            let (hh, ll) = (load(h, cfg)?, load(l, cfg)?);
            match (hh, ll) {
                (Loaded::Exact(hh), Loaded::Exact(ll)) => {
                    let s = Subhypergroup::new(&hh, &names_to_indices(&hh, sub)?)?;
                    Ok(definition_outcome(&format!("S({h}, {l})"), &substitution(&hh, &s, &ll)?))
                }
                (hh, ll) => {
                    let hh = float(hh, cfg);
                    let ll = float(ll, cfg);
                    let s = Subhypergroup::new(&hh, &names_to_indices(&hh, sub)?)?;
                    Ok(definition_outcome(&format!("S({h}, {l})"), &substitution(&hh, &s, &ll)?))
                }
            }
        }
        Command::Zq { n, q } => Ok(definition_outcome(&format!("Zq({n},{q})"), &zq_family(*n, *q)?)),
        Command::Cyclic { n } => Ok(definition_outcome(&format!("Z{n}"), &cyclic_group(*n)?)),
        Command::Orbit { file, map } => with_host!(load(file, cfg)?, h => {
            let generators = if map.is_empty() {
                vec![h.involution().to_vec()]
            } else {
                map.iter()
                    .map(|m| names_to_images(&h, m))
                    .collect::<Result<Vec<_>>>()?
            };
            Ok(definition_outcome(&format!("orbit hypergroup of {file}"), &orbit_hypergroup(&h, &generators)?))
        }),
        Command::HyperfieldValidate { field } => {
            let f = io::load_hyperfield(field)?;
            let v = validate_hyperfield(&f)?;
            let mut report = Report::new(format!("hyperfield {}", field.display()));
            report.check("conditions", v.ok(), v.to_string().trim());
            Ok(Outcome::new(report))
        }
        Command::HyperfieldBuild { field } => {
            let f = io::load_hyperfield(field)?;
            let k = build_k(&f)?;
            let mut outcome = definition_outcome(&format!("K({})", field.display()), &k.hypergroup);
            outcome.artifacts.push(("sheet_map.json".into(), io::sheet_map_json(&k)));
            Ok(outcome)
        }
        Command::VerifyDuality { field } => Ok(Outcome::new(verify_duality(&io::load_hyperfield(field)?, &spectral)?)),
        Command::ExactSeq { field } => Ok(Outcome::new(exact_sequence_check(&build_k(&io::load_hyperfield(field)?)?)?)),
        Command::Induce(pair) => {
            let ctx = context_of(pair, cfg)?;
            let mut body = String::new();
            for t in 0..ctx.sub_dual_order() {
                let m = ctx.induce(t);
                let parts: Vec<String> = m
                    .support(ctx.tau)
                    .into_iter()
                    .map(|x| format!("{} {}", sig12(m.weights[x]), ctx.dual.name(x)))
                    .collect();
                body.push_str(&format!("ind(tau{t}) = {}\n", parts.join(" + ")));
            }
            let mut report = Report::new(format!("induction along {}", pair.file));
            report.check("fibers", true, format!("{:?}", ctx.fibers));
            Ok(Outcome { body, ..Outcome::new(report) })
        }
        Command::TwoSheet { pair, q } => {
            let ctx = context_of(pair, cfg)?;
            match build_two_sheet(&ctx, *q) {
                Ok(two) => Ok(definition_outcome(&format!("two-sheet over {} at q={q}", pair.file), &two.hypergroup)),
                Err(Error::AxiomFailure(v)) => {
                    let f = associativity_families(&v, ctx.dual_order());
                    let mut report = Report::new("two-sheet");
                    report.check("axioms", false, format!("A1 {} A2 {} A3 {} A4 {}", f[0], f[1], f[2], f[3]));
                    Ok(Outcome::new(report))
                }
                Err(e) => Err(e),
            }
        }
        Command::Verify52 { pair, q } => Ok(Outcome::new(verify_theorem_52(&context_of(pair, cfg)?, *q)?)),
        Command::Verify53 { pair, q } => Ok(Outcome::new(verify_theorem_53(&context_of(pair, cfg)?, *q, &spectral)?)),
        Command::Lemma51(pair) => Ok(Outcome::new(lemma51_suite(&context_of(pair, cfg)?))),
        Command::Demo { id, big_n, n, m, q } => {
            let params = DemoParams {
                big_n: *big_n,
                n: *n,
                m: *m,
                q: *q,
            };
            Ok(Outcome::new(run_demo(id, &params, &spectral)?))
        }
    }
}

fn float(l: Loaded, cfg: &RunConfig) -> FiniteHypergroup<f64> {
    match l {
        Loaded::Exact(h) => h.to_f64(cfg.tau_axiom),
        Loaded::Float(h) => h,
    }
}

fn names_to_images<S: Scalar>(h: &FiniteHypergroup<S>, spec: &str) -> Result<Vec<usize>> {
    let images: Vec<String> = spec.split(',').map(str::to_string).collect();
    if images.len() != h.order() {
        return Err(Error::MalformedInput(format!(
            "--map lists {} images for {} elements",
            images.len(),
            h.order()
        )));
    }
    images
        .iter()
        .map(|n| h.index_of(n.trim()).ok_or_else(|| Error::MalformedInput(format!("unknown element {n:?}"))))
        .collect()
}

/// Writes the report, definition and artifacts into `dir`.
pub fn write_outputs(dir: &Path, outcome: &Outcome) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("report.txt"), format!("{}{}", outcome.body, outcome.report.render()))?;
    if let Some(d) = &outcome.definition {
        fs::write(dir.join("definition.json"), d)?;
    }
    for (name, contents) in &outcome.artifacts {
        fs::write(dir.join(name), contents)?;
    }
    Ok(())
}

/// Parses arguments, runs, prints, and returns the exit status: 0 when every
/// check passes, 1 when some check fails, 2 on errors.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = RunConfig::resolve(&cli).and_then(|cfg| {
        let outcome = run_command(&cli.command, &cfg)?;
        if let Some(dir) = &cfg.out {
            write_outputs(dir, &outcome)?;
        }
        Ok((outcome, cfg.format))
    });
    match result {
        Ok((outcome, format)) => {
            print!("{}", outcome.render(format));
            match outcome.report.first_failure() {
                None => 0,
                Some(c) => {
                    eprintln!("failed: {} ({})", c.name, outcome.report.title);
                    1
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Name → hyperfield assignment helper for callers building files in code.
pub fn assignment_map(pairs: &[(&str, &[&str])]) -> BTreeMap<String, Vec<String>> {
    pairs
        .iter()
        .map(|(l, hs)| (l.to_string(), hs.iter().map(|s| s.to_string()).collect()))
        .collect()
}
