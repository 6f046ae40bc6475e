use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;

use npcert::charp::{self, FieldId};
use npcert::genpos::SearchConfig;
use npcert::json::{self, AnyInstance, InputError, Instance};
use npcert::norm::{self, Verdict};
use npcert::ring::{BaseRing, RingId};
use npcert::suite;
use npcert::Error;

const EXIT_REJECT: u8 = 1;
const EXIT_EXHAUSTED: u8 = 2;
const EXIT_INVALID: u8 = 3;

#[derive(Parser)]
#[command(name = "npcert", version, about = "Norm-principle certificates for diagonal quadratic forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify that the norm of q_S(x) is a product of values of q.
    Certify(CertifyArgs),
    /// Check a certificate against its instance.
    Verify(VerifyArgs),
    /// Run a characteristic-p demonstration or the random suite.
    Demo(DemoArgs),
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Search seed. Falls back to the instance options, then NPCERT_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Attempts per general-position search [default: 64].
    #[arg(long)]
    max_tries: Option<usize>,
    /// Initial coordinate bound for random scalings [default: 3].
    #[arg(long)]
    bound: Option<u64>,
    /// Include the per-level reduction record.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Instance file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    certificate: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoKind {
    Char2,
    Char3,
    Randsuite,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteRing {
    Q,
    Local,
}

#[derive(Args)]
struct DemoArgs {
    kind: DemoKind,
    /// Field for the characteristic-p demos; all supported fields if omitted.
    #[arg(long)]
    field: Option<FieldId>,
    /// Number of random instances.
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "q")]
    ring: SuiteRing,
    /// Also write the report as JSON.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Exhausted(String),
    Internal(String),
    Rejected(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::Exhausted(_) => EXIT_EXHAUSTED,
            Failure::Internal(_) | Failure::Rejected(_) => EXIT_REJECT,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Exhausted(m) | Failure::Internal(m) | Failure::Rejected(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SearchExhausted { .. } => Failure::Exhausted(e.to_string()),
            Error::InternalAssertion(_) => Failure::Internal(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))
}

fn input_error(path: &Path, e: InputError) -> Failure {
    Failure::Invalid(format!("{}: {e}", path.display()))
}

fn env_seed() -> Result<Option<u64>, Failure> {
    match std::env::var("NPCERT_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Invalid(format!("NPCERT_SEED={v:?} is not an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

fn certify_with<R>(inst: &Instance<R>, args: &CertifyArgs) -> Result<(), Failure>
where
    R: BaseRing + Serialize + DeserializeOwned,
{
    let seed = match args.seed.or(inst.options.seed) {
        Some(s) => s,
        None => env_seed()?.unwrap_or(0),
    };
    let mut cfg = inst.options.search_config();
    if let Some(t) = args.max_tries {
        cfg.max_tries = t;
    }
    if let Some(b) = args.bound {
        cfg.initial_bound = b;
    }
    let trace = args.trace || inst.options.trace.unwrap_or(false);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cert = norm::certify(&inst.ext, &inst.form, &inst.x, &mut rng, &cfg)?;
    write(&args.output, &json::certificate_to_json(&cert, trace))?;
    println!(
        "target {}: {} factor(s), {} reduction level(s), written to {}",
        cert.target,
        cert.factors.len(),
        cert.trace.len(),
        args.output.display()
    );
    Ok(())
}

fn certify(args: &CertifyArgs) -> Result<(), Failure> {
    let text = read(&args.input)?;
    match json::parse_instance(&text).map_err(|e| input_error(&args.input, e))? {
        AnyInstance::Rationals(inst) => certify_with(&inst, args),
        AnyInstance::Local(inst) => certify_with(&inst, args),
    }
}

fn verify_with<R>(inst: &Instance<R>, cert_text: &str, path: &Path) -> Result<(), Failure>
where
    R: BaseRing + Serialize + DeserializeOwned,
{
    let cert = json::parse_certificate::<R>(cert_text).map_err(|e| input_error(path, e))?;
    match norm::verify(&inst.ext, &inst.form, &inst.x, &cert) {
        Verdict::Accepted => {
            println!("accepted: target {}", cert.target);
            Ok(())
        }
        Verdict::Rejected { check, detail } => Err(Failure::Rejected(format!("rejected at check {check}: {detail}"))),
    }
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let inst_text = read(&args.input)?;
    let cert_text = read(&args.certificate)?;
    match json::parse_instance(&inst_text).map_err(|e| input_error(&args.input, e))? {
        AnyInstance::Rationals(inst) => verify_with(&inst, &cert_text, &args.certificate),
        AnyInstance::Local(inst) => verify_with(&inst, &cert_text, &args.certificate),
    }
}

fn fields(requested: Option<FieldId>, defaults: [FieldId; 3]) -> Vec<FieldId> {
    requested.map_or_else(|| defaults.to_vec(), |f| vec![f])
}

fn report<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Result<(), Failure> {
    match path {
        Some(p) => write(p, &(serde_json::to_string_pretty(value).expect("serializable") + "\n")),
        None => Ok(()),
    }
}

fn demo(args: &DemoArgs) -> Result<(), Failure> {
    match args.kind {
        DemoKind::Char2 => {
            let mut reports = Vec::new();
            for id in fields(args.field, [FieldId::F2, FieldId::F4, FieldId::F8]) {
                let r = charp::char2_demo(id)?;
                println!("{r}");
                reports.push(r);
            }
            report(&args.report, &reports)?;
            if reports.iter().all(|r| r.passed()) {
                println!("squares lie in k.1 and fill it; no square is primitive");
                Ok(())
            } else {
                Err(Failure::Rejected("characteristic-2 check failed".into()))
            }
        }
        DemoKind::Char3 => {
            let mut reports = Vec::new();
            for id in fields(args.field, [FieldId::F3, FieldId::F9, FieldId::F27]) {
                let r = charp::char3_demo(id)?;
                println!("{r}");
                reports.push(r);
            }
            report(&args.report, &reports)?;
            if reports.iter().all(|r| r.passed()) {
                println!("{{x/b, c b^2}} = 0 for every qualifying b");
                Ok(())
            } else {
                Err(Failure::Rejected("characteristic-3 check failed".into()))
            }
        }
        DemoKind::Randsuite => {
            let seed = match args.seed {
                Some(s) => s,
                None => env_seed()?.unwrap_or(0),
            };
            let ring = match args.ring {
                SuiteRing::Q => RingId::Rationals,
                SuiteRing::Local => RingId::LocalQx,
            };
            let r = suite::run_suite(ring, args.count, seed, &SearchConfig::default());
            println!("{r}");
            report(&args.report, &r)?;
            if r.passed() {
                Ok(())
            } else {
                Err(Failure::Rejected(format!(
                    "{} of {} instances failed",
                    r.outcomes.len() - r.verified(),
                    r.outcomes.len()
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Certify(a) => certify(a),
        Command::Verify(a) => verify(a),
        Command::Demo(a) => demo(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("npcert: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
