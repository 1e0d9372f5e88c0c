use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use freearr::arrangement::{build_lattice, char_poly, parse_arrangement, write_arrangement};
use freearr::rootsys::{
    build_root_system, catalan_certificate, parse_family, parse_type_label, replay_with_source, root_name, RootError,
    SeedPolicy,
};
use freearr::theorems::{
    check_addition_deletion, check_mat, check_mat2, check_mat2_subset, check_mdt, check_mdt_subset, check_mrt_count,
    AdFacts, CertificateStep, MrtVerdict, TheoremError,
};
use freearr::{
    freeness_oracle, Arrangement, Certificate, FreenessStatus, Hyperplane, LatticeData, Multiplicity, Subspace,
};

#[derive(Parser)]
#[command(
    name = "freearr",
    version,
    about = "Freeness of central hyperplane arrangements, exactly"
)]
struct Cli {
    /// Print only the one-line result.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic and Poincaré polynomials with the Möbius table.
    Charpoly {
        /// Arrangement file or named family such as `weyl:A2`.
        input: String,
    },
    /// Decide freeness by searching logarithmic derivations.
    Solve {
        input: String,
        /// Largest derivation degree searched (default `|A|`).
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Certify `Cat^k` from `Shi^k` one root height at a time.
    CertifyCatalan {
        /// Root system such as `A2` or `B3`.
        root_type: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Take these seed exponents instead of running the oracle.
        #[arg(long, value_delimiter = ',')]
        trust_seed: Option<Vec<u32>>,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Apply one theorem to an arrangement.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Re-verify a certificate against the lattice of an arrangement.
    Replay {
        source: String,
        certificate: PathBuf,
        /// Accept seeds whose exponents were supplied rather than certified.
        #[arg(long)]
        trust_seed: bool,
    },
    /// Print a named family in the arrangement text format.
    Family {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct StepArgs {
    input: String,
    /// Exponents of the arrangement the theorem starts from.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    exp: Vec<u32>,
    /// Write the certificate step as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Multiple addition.
    Mat {
        #[command(flatten)]
        step: StepArgs,
        /// Normal of a hyperplane to add, e.g. `1,0,-1`; repeatable.
        #[arg(long = "add", required = true, allow_hyphen_values = true)]
        add: Vec<String>,
    },
    /// Generalized multiple addition.
    Mat2 {
        #[command(flatten)]
        step: StepArgs,
        #[arg(long = "add", required = true, allow_hyphen_values = true)]
        add: Vec<String>,
        /// Add only these (0-based) members of the family.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
    /// Multiple deletion.
    Mdt {
        #[command(flatten)]
        step: StepArgs,
        #[arg(long = "delete", required = true, allow_hyphen_values = true)]
        delete: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
    /// Restriction count criterion for the flat cut out by the given
    /// hyperplanes.
    Mrt {
        #[command(flatten)]
        step: StepArgs,
        #[arg(long = "flat", required = true, allow_hyphen_values = true)]
        flat: Vec<String>,
    },
    /// Addition-deletion for one hyperplane; give two of the three tuples.
    Ad {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        hyperplane: String,
        #[arg(long, value_delimiter = ',')]
        full: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        deletion: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        restriction: Option<Vec<u32>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failures mapped onto the exit-code contract. An empty message means
/// the verdict line was already printed.
#[derive(Debug)]
enum Failure {
    Parse(String),
    Unknown(String),
    Unsupported(String),
    Reject(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Unknown(_) => 3,
            Failure::Unsupported(_) => 4,
            Failure::Reject(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Unknown(m) | Failure::Unsupported(m) | Failure::Reject(m) => m,
        }
    }
}

impl From<RootError> for Failure {
    fn from(e: RootError) -> Self {
        match e {
            RootError::Unsupported(_) => Failure::Unsupported(e.to_string()),
            RootError::Stage { .. } => Failure::Reject(e.to_string()),
            RootError::Seed(_) => Failure::Unknown(e.to_string()),
            _ => Failure::Parse(e.to_string()),
        }
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        match e {
            TheoremError::Precondition(_) | TheoremError::NotAFlat | TheoremError::Arrangement(_) => {
                Failure::Parse(e.to_string())
            }
            _ => Failure::Reject(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn is_family(input: &str) -> bool {
    matches!(input.split(':').next(), Some("weyl" | "shi" | "cat" | "shiplus"))
}

fn load(input: &str) -> Result<Arrangement, Failure> {
    if is_family(input) && !Path::new(input).exists() {
        let (_, cone) = parse_family(input)?.build()?;
        return Ok(cone.arrangement);
    }
    let text = fs::read_to_string(input).map_err(|e| Failure::Parse(format!("{input}: {e}")))?;
    parse_arrangement(&text).map_err(|e| Failure::Parse(format!("{input}: {e}")))
}

fn parse_normal(s: &str, dim: usize) -> Result<Hyperplane, Failure> {
    let v = s
        .split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Parse(format!("normal {s:?}: {e}")))?;
    if v.len() != dim {
        return Err(Failure::Parse(format!("normal {s:?} needs {dim} entries")));
    }
    Hyperplane::new(v).map_err(|e| Failure::Parse(format!("normal {s:?}: {e}")))
}

fn parse_normals(ss: &[String], dim: usize) -> Result<Vec<Hyperplane>, Failure> {
    ss.iter().map(|s| parse_normal(s, dim)).collect()
}

fn tuple(e: &[u32]) -> String {
    let parts: Vec<String> = e.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn write_out(path: &Path, contents: &str) -> Outcome {
    fs::write(path, contents).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn run_charpoly(input: &str, quiet: bool) -> Outcome {
    let a = load(input)?;
    let lat = build_lattice(&a);
    let polys = char_poly(&lat);
    let expanded = polys.chi.to_string();
    match polys.chi.factored() {
        Some(f) if f != expanded => println!("chi = {f} = {expanded}"),
        _ => println!("chi = {expanded}"),
    }
    println!("pi = {}", polys.poincare);
    if !quiet {
        println!("mobius:");
        for flat in lat.flats() {
            let members: Vec<String> = flat.members.iter().map(|i| i.to_string()).collect();
            println!(
                "  codim {}  {{{}}}  mu = {}",
                flat.codim,
                members.join(","),
                flat.mobius
            );
        }
    }
    Ok(())
}

fn run_solve(input: &str, bound: Option<u32>, quiet: bool) -> Outcome {
    let a = load(input)?;
    let m = Multiplicity::simple(a.len());
    let v = freeness_oracle(&a, &m, bound);
    match v.status {
        FreenessStatus::FreeWithExponents => {
            let exps = v.exponents.unwrap_or_default();
            println!("FREE exp={}", tuple(&exps));
            if !quiet {
                for (i, theta) in v.basis.unwrap_or_default().iter().enumerate() {
                    println!("  theta_{} = {theta}", i + 1);
                }
            }
            Ok(())
        }
        FreenessStatus::NotFreeByFactorization => {
            let roots = v.char_roots.map(|r| format!(" roots={r:?}")).unwrap_or_default();
            println!("NOT FREE chi does not split over the nonnegative integers{roots}");
            Ok(())
        }
        FreenessStatus::Unknown => {
            println!("UNKNOWN");
            Err(Failure::Unknown(format!(
                "no verdict within degree bound {}",
                bound.unwrap_or(a.len() as u32)
            )))
        }
    }
}

fn run_certify_catalan(
    label: &str,
    k: u32,
    out: Option<&Path>,
    trust_seed: Option<Vec<u32>>,
    bound: Option<u32>,
    quiet: bool,
) -> Outcome {
    let (kind, rank) = parse_type_label(label)?;
    let rs = build_root_system(kind, rank)?;
    let policy = match trust_seed {
        Some(e) => SeedPolicy::Supplied(e),
        None => SeedPolicy::Oracle { bound },
    };
    let c = catalan_certificate(&rs, k, policy)?;
    let cert = &c.certificate;
    if !quiet {
        println!(
            "seed {} exp={} ({:?})",
            cert.seed.source,
            tuple(&cert.seed.exponents),
            cert.seed.verdict
        );
        for s in &c.stages {
            let names: Vec<String> = s.roots.iter().map(|r| root_name(r)).collect();
            println!(
                "stage {}: add {}  counts {}  exp={}",
                s.height,
                names.join(" "),
                tuple(&s.counts),
                tuple(&s.exponents)
            );
        }
    }
    println!("FREE Cat^{k}({rs}) exp={}", tuple(cert.final_exponents()));
    if let Some(path) = out {
        write_out(path, &cert.to_json())?;
    }
    Ok(())
}

fn report_step(step: &CertificateStep, out: Option<&Path>) -> Outcome {
    println!("{} exp {} -> {}", step.kind, tuple(&step.before), tuple(&step.after));
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(step).expect("steps serialize");
        write_out(path, &json)?;
    }
    Ok(())
}

fn run_check(cmd: CheckCommand) -> Outcome {
    match cmd {
        CheckCommand::Mat { step, add } => {
            let a = load(&step.input)?;
            let hs = parse_normals(&add, a.dim())?;
            let (_, s) = check_mat(&a, &hs, &step.exp)?;
            report_step(&s, step.out.as_deref())
        }
        CheckCommand::Mat2 { step, add, subset } => {
            let a = load(&step.input)?;
            let hs = parse_normals(&add, a.dim())?;
            let (_, s) = match subset {
                Some(sub) => check_mat2_subset(&a, &hs, &step.exp, &sub)?,
                None => check_mat2(&a, &hs, &step.exp)?,
            };
            report_step(&s, step.out.as_deref())
        }
        CheckCommand::Mdt { step, delete, subset } => {
            let a = load(&step.input)?;
            let hs = parse_normals(&delete, a.dim())?;
            let (_, s) = match subset {
                Some(sub) => check_mdt_subset(&a, &hs, &step.exp, &sub)?,
                None => check_mdt(&a, &hs, &step.exp)?,
            };
            report_step(&s, step.out.as_deref())
        }
        CheckCommand::Mrt { step, flat } => {
            let a = load(&step.input)?;
            let hs = parse_normals(&flat, a.dim())?;
            let x = Subspace::from_hyperplanes(a.dim(), hs.iter());
            match check_mrt_count(&a, &x, &step.exp)? {
                (MrtVerdict::Free { .. }, Some(s)) => report_step(&s, step.out.as_deref()),
                (MrtVerdict::Refuted { count, target }, _) => {
                    println!("REFUTED |A^X| = {count}, 1 + sum = {target}");
                    Err(Failure::Reject(String::new()))
                }
                (MrtVerdict::Free { exponents }, None) => {
                    println!("FREE exp={}", tuple(&exponents));
                    Ok(())
                }
            }
        }
        CheckCommand::Ad {
            input,
            hyperplane,
            full,
            deletion,
            restriction,
            out,
        } => {
            let a = load(&input)?;
            let h = parse_normal(&hyperplane, a.dim())?;
            let known = AdFacts {
                full,
                deletion,
                restriction,
            };
            let (_, s) = check_addition_deletion(&a, &h, &known)?;
            report_step(&s, out.as_deref())
        }
    }
}

fn run_replay(source: &str, cert_path: &Path, trust_seed: bool) -> Outcome {
    let a = load(source)?;
    let text = fs::read_to_string(cert_path).map_err(|e| Failure::Parse(format!("{}: {e}", cert_path.display())))?;
    let cert = Certificate::from_json(&text).map_err(|e| Failure::Parse(format!("{}: {e}", cert_path.display())))?;
    let data = LatticeData::from_arrangement(&a);
    match replay_with_source(&data, &cert, trust_seed) {
        Ok(exps) => {
            println!("ACCEPT exp={}", tuple(&exps));
            Ok(())
        }
        Err(e) => {
            println!("REJECT {e}");
            Err(Failure::Reject(String::new()))
        }
    }
}

fn run_family(name: &str, out: Option<&Path>) -> Outcome {
    let family = parse_family(name)?;
    let (_, cone) = family.build()?;
    let text = format!("# {family}\n{}", write_arrangement(&cone.arrangement));
    match out {
        Some(path) => write_out(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let quiet = cli.quiet;
    let result = match cli.command {
        Command::Charpoly { input } => run_charpoly(&input, quiet),
        Command::Solve { input, bound } => run_solve(&input, bound, quiet),
        Command::CertifyCatalan {
            root_type,
            k,
            out,
            trust_seed,
            bound,
        } => run_certify_catalan(&root_type, k, out.as_deref(), trust_seed, bound, quiet),
        Command::Check(cmd) => run_check(cmd),
        Command::Replay {
            source,
            certificate,
            trust_seed,
        } => run_replay(&source, &certificate, trust_seed),
        Command::Family { name, out } => run_family(&name, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message().is_empty() {
                eprintln!("freearr: {}", f.message());
            }
            ExitCode::from(f.code())
        }
    }
}
