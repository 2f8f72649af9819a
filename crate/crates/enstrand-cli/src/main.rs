//! Command-line surface: instance files in, results (text/json/csv) out.
//!
//! Exit codes: 0 success or agreement, 1 disagreement or counterexample,
//! 2 invalid input, 3 resource cap hit. Errors print a machine-readable
//! JSON diagnostic on stderr.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use enstrand::algebra::{FieldCfg, DEFAULT_PRIME};
use enstrand::betti::{BettiError, BettiOracle};
use enstrand::combinatorics::{Clutter, SimplicialComplex};
use enstrand::encomplex::{GenComplex, Multidegree};
use enstrand::io::{
    betti_table_csv, betti_table_json, betti_table_text, InstanceFile, InstanceKind, ResultFile,
};
use enstrand::theorems::{self, suite, SuiteConfig, VerdictReport};

#[derive(Parser)]
#[command(
    name = "enstrand",
    version,
    about = "Eagon-Northcott complexes, linear strands, and exact Betti numbers of determinantal facet ideals"
)]
struct Cli {
    /// Exact field: "rat" or "fp:<p>" (env: ENSTRAND_FIELD).
    #[arg(long, global = true)]
    field: Option<String>,

    /// Worker threads for independent cells/instances.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Seed for randomized tiers.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Overrides the upper degree bound of Betti windows.
    #[arg(long, global = true)]
    window_j: Option<u32>,

    /// Cap on nonzero matrix entries assembled per Betti cell.
    #[arg(long, global = true)]
    cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Combinatorics of complexes and clutters.
    Comb {
        #[command(subcommand)]
        cmd: CombCmd,
    },
    /// The generalized Eagon-Northcott chain complex.
    Complex {
        #[command(subcommand)]
        cmd: ComplexCmd,
    },
    /// Graded Betti numbers of the minor ideal of a clutter.
    Betti {
        #[command(subcommand)]
        cmd: BettiCmd,
    },
    /// Theorem verifiers; exit code 1 on any disagreement.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
}

#[derive(Args)]
struct InstanceArg {
    /// Path to a JSON instance file, or "-" for stdin.
    instance: String,
}

#[derive(Subcommand)]
enum CombCmd {
    /// Minimal nonfaces (clutters use their clique complex).
    Nonfaces(InstanceArg),
    /// The f-vector.
    Fvector(InstanceArg),
    /// Clique complex of a clutter.
    Clique(InstanceArg),
    /// Banner predicate at index i.
    Banner {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(short = 'i', long)]
        i: u32,
    },
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Ranks and degree summary of the chain complex.
    Build {
        #[command(flatten)]
        instance: InstanceArg,
        /// Matrix row count; defaults to the clutter's m.
        #[arg(short, long)]
        m: Option<u32>,
    },
    /// Symbolic check that consecutive differentials compose to zero.
    Dsq {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(short, long)]
        m: Option<u32>,
    },
    /// Exact homology dimension of one multigraded piece.
    Homology {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(short, long)]
        m: Option<u32>,
        /// Homological index.
        #[arg(long)]
        i: usize,
        /// Multidegree "u1,..,um;g1,..,gn".
        #[arg(long)]
        degree: String,
    },
}

#[derive(Subcommand)]
enum BettiCmd {
    /// Betti table over a window via the Koszul oracle.
    Table {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long)]
        imax: Option<usize>,
        #[arg(long)]
        jmax: Option<u32>,
    },
    /// Closed-form linear-strand values.
    Strand {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long)]
        imax: Option<usize>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Strand criterion vs minimal nonface cardinalities.
    Missing {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(short, long)]
        m: Option<u32>,
    },
    /// Oracle strand values vs the closed formula.
    Linearbetti {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long)]
        imax: Option<usize>,
    },
    /// Linear resolution iff linear presentation iff completeness.
    Linearres(InstanceArg),
    /// Strand length vs clique-complex dimension.
    Projdim(InstanceArg),
    /// Strand recovery through the (m-1)-skeleton clutter.
    Skeleton {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(short, long)]
        m: u32,
    },
    /// Every verifier over exhaustive and seeded random tiers.
    Suite {
        /// Random instances per randomized tier.
        #[arg(long, default_value_t = 2)]
        trials: u32,
    },
}

enum CliError {
    Invalid(String),
    ResourceCap(String),
}

impl From<enstrand::io::IoError> for CliError {
    fn from(e: enstrand::io::IoError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<enstrand::combinatorics::CombinatoricsError> for CliError {
    fn from(e: enstrand::combinatorics::CombinatoricsError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<BettiError> for CliError {
    fn from(e: BettiError) -> Self {
        CliError::ResourceCap(e.to_string())
    }
}

impl From<theorems::VerifyError> for CliError {
    fn from(e: theorems::VerifyError) -> Self {
        match e {
            theorems::VerifyError::Betti(b) => CliError::ResourceCap(b.to_string()),
            theorems::VerifyError::Combinatorics(c) => CliError::Invalid(c.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            return fail(CliError::Invalid(e.to_string()));
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let field = match resolve_field(&cli.field) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    match run(&cli, field) {
        Ok(disagreement) => {
            if disagreement {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ExitCode {
    let (kind, message, code) = match e {
        CliError::Invalid(m) => ("invalid-input", m, 2),
        CliError::ResourceCap(m) => ("resource-cap", m, 3),
    };
    eprintln!("{}", json!({ "error": { "kind": kind, "message": message } }));
    ExitCode::from(code)
}

fn resolve_field(flag: &Option<String>) -> Result<FieldCfg, CliError> {
    let spec = flag
        .clone()
        .or_else(|| std::env::var("ENSTRAND_FIELD").ok())
        .unwrap_or_else(|| "rat".into());
    parse_field(&spec)
}

fn parse_field(spec: &str) -> Result<FieldCfg, CliError> {
    match spec {
        "rat" => Ok(FieldCfg::Rational),
        "fp" => Ok(FieldCfg::prime(DEFAULT_PRIME).expect("default prime")),
        other => {
            if let Some(p) = other.strip_prefix("fp:") {
                let p: u64 = p
                    .parse()
                    .map_err(|_| CliError::Invalid(format!("bad prime in --field {other}")))?;
                FieldCfg::prime(p).map_err(|e| CliError::Invalid(e.to_string()))
            } else {
                Err(CliError::Invalid(format!(
                    "unknown field '{other}', expected rat or fp:<p>"
                )))
            }
        }
    }
}

/// Loaded instance plus its traceability digest.
struct Loaded {
    file: InstanceFile,
    digest: String,
}

fn load_instance(arg: &str) -> Result<Loaded, CliError> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Invalid(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| CliError::Invalid(format!("cannot read {arg}: {e}")))?
    };
    let file = InstanceFile::parse(&text)?;
    let digest = file.digest()?;
    Ok(Loaded { file, digest })
}

/// A complex to work on plus the matrix height `m`: complexes need the
/// `-m` flag, clutters default to their own uniformity.
fn complex_and_m(
    loaded: &Loaded,
    m_flag: Option<u32>,
) -> Result<(SimplicialComplex, u32), CliError> {
    match loaded.file.kind {
        InstanceKind::Complex => {
            let delta = loaded.file.to_complex()?;
            let m = m_flag.ok_or_else(|| {
                CliError::Invalid("complex instances require -m for this command".into())
            })?;
            Ok((delta, m))
        }
        InstanceKind::Clutter => {
            let c = loaded.file.to_clutter()?;
            Ok((c.clique_complex(), m_flag.unwrap_or(c.m())))
        }
    }
}

fn any_complex(loaded: &Loaded) -> Result<SimplicialComplex, CliError> {
    match loaded.file.kind {
        InstanceKind::Complex => Ok(loaded.file.to_complex()?),
        InstanceKind::Clutter => Ok(loaded.file.to_clutter()?.clique_complex()),
    }
}

fn clutter_of(loaded: &Loaded) -> Result<Clutter, CliError> {
    Ok(loaded.file.to_clutter()?)
}

fn oracle_for(c: &Clutter, field: FieldCfg, cap: Option<usize>) -> BettiOracle {
    let oracle = BettiOracle::new(c, field);
    match cap {
        Some(cap) => oracle.with_cap(cap),
        None => oracle,
    }
}

struct Output<'a> {
    cli: &'a Cli,
    field: FieldCfg,
    command: String,
    digest: String,
}

impl Output<'_> {
    fn emit(&self, payload: Value, text: String) -> Result<(), CliError> {
        match self.cli.format {
            Format::Json => {
                let r = ResultFile::new(
                    self.field,
                    self.command.clone(),
                    self.digest.clone(),
                    payload,
                );
                println!("{}", r.to_json());
            }
            Format::Text => println!("{text}"),
            Format::Csv => {
                return Err(CliError::Invalid(
                    "csv output applies to betti table/strand only".into(),
                ))
            }
        }
        Ok(())
    }

    /// Betti tables support all three formats.
    fn emit_csv(&self, payload: Value, text: String, csv: String) -> Result<(), CliError> {
        if self.cli.format == Format::Csv {
            print!("{csv}");
            Ok(())
        } else {
            self.emit(payload, text)
        }
    }
}

fn run(cli: &Cli, field: FieldCfg) -> Result<bool, CliError> {
    match &cli.command {
        Command::Comb { cmd } => run_comb(cli, field, cmd),
        Command::Complex { cmd } => run_complex(cli, field, cmd),
        Command::Betti { cmd } => run_betti(cli, field, cmd),
        Command::Verify { cmd } => run_verify(cli, field, cmd),
    }
}

fn run_comb(cli: &Cli, field: FieldCfg, cmd: &CombCmd) -> Result<bool, CliError> {
    let (name, loaded) = match cmd {
        CombCmd::Nonfaces(a) => ("comb nonfaces", load_instance(&a.instance)?),
        CombCmd::Fvector(a) => ("comb fvector", load_instance(&a.instance)?),
        CombCmd::Clique(a) => ("comb clique", load_instance(&a.instance)?),
        CombCmd::Banner { instance, .. } => ("comb banner", load_instance(&instance.instance)?),
    };
    let out = Output {
        cli,
        field,
        command: name.into(),
        digest: loaded.digest.clone(),
    };
    match cmd {
        CombCmd::Nonfaces(_) => {
            let delta = any_complex(&loaded)?;
            let nf: Vec<Vec<u32>> = delta
                .minimal_nonfaces()
                .iter()
                .map(|f| f.vertices().to_vec())
                .collect();
            let text = delta
                .minimal_nonfaces()
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            out.emit(json!({ "nonfaces": nf }), format!("minimal nonfaces: {text}"))?;
        }
        CombCmd::Fvector(_) => {
            let fv = any_complex(&loaded)?.f_vector();
            out.emit(json!({ "f": fv.counts() }), format!("f-vector: {fv}"))?;
        }
        CombCmd::Clique(_) => {
            let c = clutter_of(&loaded)?;
            let delta = c.clique_complex();
            let facets: Vec<Vec<u32>> = delta
                .facets()
                .iter()
                .map(|f| f.vertices().to_vec())
                .collect();
            let text = delta
                .facets()
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            out.emit(
                json!({ "n": delta.n(), "facets": facets }),
                format!("clique complex facets: {text}"),
            )?;
        }
        CombCmd::Banner { i, .. } => {
            let delta = any_complex(&loaded)?;
            let banner = delta.is_banner(*i)?;
            let violations: Vec<Vec<u32>> = if banner {
                Vec::new()
            } else {
                delta
                    .critical_cliques()
                    .into_iter()
                    .filter(|t| t.len() >= (*i + 1) as usize && !delta.is_face(t))
                    .map(|t| t.vertices().to_vec())
                    .collect()
            };
            out.emit(
                json!({ "i": i, "banner": banner, "violations": violations }),
                format!("{i}-banner: {banner}"),
            )?;
        }
    }
    Ok(false)
}

fn run_complex(cli: &Cli, field: FieldCfg, cmd: &ComplexCmd) -> Result<bool, CliError> {
    match cmd {
        ComplexCmd::Build { instance, m } => {
            let loaded = load_instance(&instance.instance)?;
            let (delta, m) = complex_and_m(&loaded, *m)?;
            let k = GenComplex::build(&delta, m);
            let out = Output {
                cli,
                field,
                command: "complex build".into(),
                digest: loaded.digest,
            };
            let ranks = k.ranks();
            let degrees: Vec<u32> = (0..ranks.len() as u32).map(|i| m + i).collect();
            out.emit(
                json!({ "m": m, "n": delta.n(), "ranks": ranks, "generator_degrees": degrees }),
                format!(
                    "C(delta;phi) with m={m}: ranks {ranks:?}, generators in degrees {degrees:?}"
                ),
            )?;
        }
        ComplexCmd::Dsq { instance, m } => {
            let loaded = load_instance(&instance.instance)?;
            let (delta, m) = complex_and_m(&loaded, *m)?;
            let k = GenComplex::build(&delta, m);
            let out = Output {
                cli,
                field,
                command: "complex dsq".into(),
                digest: loaded.digest,
            };
            match k.d_squared_zero() {
                Ok(()) => out.emit(json!({ "ok": true }), "d^2 = 0: ok".into())?,
                Err(f) => {
                    out.emit(
                        json!({ "ok": false, "index": f.index, "row": f.position.0,
                                "col": f.position.1, "entry": f.entry }),
                        format!("d^2 = 0 FAILED: {f}"),
                    )?;
                    return Ok(true);
                }
            }
        }
        ComplexCmd::Homology {
            instance,
            m,
            i,
            degree,
        } => {
            let loaded = load_instance(&instance.instance)?;
            let (delta, m) = complex_and_m(&loaded, *m)?;
            let d = parse_degree(degree, m as usize, delta.n() as usize)?;
            let k = GenComplex::build(&delta, m);
            let dim = k.homology_dim(*i, &d, &field);
            let out = Output {
                cli,
                field,
                command: "complex homology".into(),
                digest: loaded.digest,
            };
            out.emit(
                json!({ "i": i, "degree": d, "dim": dim }),
                format!("H_{i} at degree {d} has dimension {dim}"),
            )?;
        }
    }
    Ok(false)
}

fn parse_degree(s: &str, m: usize, n: usize) -> Result<Multidegree, CliError> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 2 {
        return Err(CliError::Invalid(
            "degree must look like u1,..,um;g1,..,gn".into(),
        ));
    }
    let parse_list = |t: &str| -> Result<Vec<u32>, CliError> {
        t.split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| CliError::Invalid(format!("bad degree entry '{x}'")))
            })
            .collect()
    };
    let u = parse_list(parts[0])?;
    let gamma = parse_list(parts[1])?;
    if u.len() != m || gamma.len() != n {
        return Err(CliError::Invalid(format!(
            "degree needs {m} row and {n} column entries"
        )));
    }
    Ok(Multidegree::new(u, gamma))
}

fn run_betti(cli: &Cli, field: FieldCfg, cmd: &BettiCmd) -> Result<bool, CliError> {
    match cmd {
        BettiCmd::Table {
            instance,
            imax,
            jmax,
        } => {
            let loaded = load_instance(&instance.instance)?;
            let c = clutter_of(&loaded)?;
            let oracle = oracle_for(&c, field, cli.cap);
            let (di, dj) = oracle.default_window();
            let i_max = imax.unwrap_or(di);
            let j_max = cli.window_j.or(*jmax).unwrap_or(dj);
            let table = oracle.betti_table(i_max, j_max, cli.jobs)?;
            let out = Output {
                cli,
                field,
                command: "betti table".into(),
                digest: loaded.digest,
            };
            out.emit_csv(
                betti_table_json(&table),
                betti_table_text(&table),
                betti_table_csv(&table),
            )?;
        }
        BettiCmd::Strand { instance, imax } => {
            let loaded = load_instance(&instance.instance)?;
            let c = clutter_of(&loaded)?;
            let oracle = oracle_for(&c, field, cli.cap);
            let (di, _) = oracle.default_window();
            let i_max = imax.unwrap_or(di);
            let values: Vec<u64> = (0..=i_max).map(|i| oracle.strand_betti_formula(i)).collect();
            let out = Output {
                cli,
                field,
                command: "betti strand".into(),
                digest: loaded.digest,
            };
            let csv = format!(
                "i,{}\nbeta,{}\n",
                (0..=i_max)
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                values
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            out.emit_csv(
                json!({ "values": values, "strand_length": oracle.strand_length() }),
                format!(
                    "linear strand values {values:?}, strand length {}",
                    oracle.strand_length()
                ),
                csv,
            )?;
        }
    }
    Ok(false)
}

fn report_payload(reports: &[VerdictReport]) -> Value {
    let disagreements = reports.iter().filter(|r| !r.agreement).count();
    json!({ "reports": reports, "disagreements": disagreements })
}

fn report_text(reports: &[VerdictReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!(
            "{}: left={} right={} agree={}",
            r.verifier, r.left, r.right, r.agreement
        ));
        for w in &r.witnesses {
            out.push_str(&format!("  witness={}", serde_json::to_string(w).unwrap()));
        }
        out.push('\n');
    }
    let bad = reports.iter().filter(|r| !r.agreement).count();
    out.push_str(&format!(
        "{} report(s), {} disagreement(s)",
        reports.len(),
        bad
    ));
    out
}

fn run_verify(cli: &Cli, field: FieldCfg, cmd: &VerifyCmd) -> Result<bool, CliError> {
    let (command, reports, digest) = match cmd {
        VerifyCmd::Missing { instance, m } => {
            let loaded = load_instance(&instance.instance)?;
            let (delta, m) = complex_and_m(&loaded, *m)?;
            (
                "verify missing",
                vec![theorems::verify_theorem_missing(&delta, m, &field)],
                loaded.digest,
            )
        }
        VerifyCmd::Linearbetti { instance, imax } => {
            let loaded = load_instance(&instance.instance)?;
            let c = clutter_of(&loaded)?;
            let oracle = oracle_for(&c, field, cli.cap);
            let i_max = imax.unwrap_or(oracle.default_window().0);
            (
                "verify linearbetti",
                vec![theorems::verify_cor_linearbetti(&c, i_max, &field)?],
                loaded.digest,
            )
        }
        VerifyCmd::Linearres(instance) => {
            let loaded = load_instance(&instance.instance)?;
            let c = clutter_of(&loaded)?;
            let oracle = oracle_for(&c, field, cli.cap);
            let (i_max, dj) = oracle.default_window();
            let j_max = cli.window_j.unwrap_or(dj);
            (
                "verify linearres",
                vec![theorems::verify_thm_linear_res(&c, i_max, j_max, &field)?],
                loaded.digest,
            )
        }
        VerifyCmd::Projdim(instance) => {
            let loaded = load_instance(&instance.instance)?;
            let c = clutter_of(&loaded)?;
            (
                "verify projdim",
                vec![theorems::verify_cor_projdim(&c, &field)?],
                loaded.digest,
            )
        }
        VerifyCmd::Skeleton { instance, m } => {
            let loaded = load_instance(&instance.instance)?;
            let delta = any_complex(&loaded)?;
            (
                "verify skeleton",
                vec![theorems::verify_cor_skeleton(&delta, *m, &field)?],
                loaded.digest,
            )
        }
        VerifyCmd::Suite { trials } => {
            let config = SuiteConfig {
                seed: cli.seed,
                trials: *trials,
                field,
                jobs: cli.jobs,
            };
            let reports = suite(&config)?;
            ("verify suite", reports, format!("suite:seed={}", cli.seed))
        }
    };
    let disagree = reports.iter().any(|r| !r.agreement);
    let out = Output {
        cli,
        field,
        command: command.into(),
        digest,
    };
    out.emit(report_payload(&reports), report_text(&reports))?;
    Ok(disagree)
}
