use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lmod_core::cover::{build_cover, homology, Conventions, LiftName, Lifts};
use lmod_core::generators::format_factors;
use lmod_core::liftability::{curve_monodromy, is_liftable_word, parity, CurveClass};
use lmod_core::suite::express;
use lmod_core::syntax::parse_expression;
use lmod_core::{psi, Context, Error, GenerationGroup, Generator, Group, Oracle, Report, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "lmod",
    version,
    about = "Liftable and balanced superelliptic mapping class group toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct CtxArgs {
    /// The sphere has 2n+2 marked points.
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Number of sheets of the cover.
    #[arg(long, default_value_t = 3)]
    k: u32,
}

impl CtxArgs {
    fn context(self) -> Result<Context, Failure> {
        Context::new(self.n, self.k).map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two words are equal in the disk, star or sphere group.
    Eq {
        group: Group,
        u: String,
        v: String,
        #[arg(long, env = "LMOD_BUDGET_LETTERS")]
        budget_letters: Option<usize>,
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// Liftability of a mapping class word, or of a curve given as a word in x1 … x(2n+2).
    Liftable {
        kind: LiftKind,
        input: String,
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// Same as `liftable word`.
    LiftableWord {
        input: String,
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// Same as `liftable curve`.
    LiftableCurve {
        input: String,
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// Write a standard generator as a word over a small generating set.
    Express {
        target: String,
        #[arg(long, default_value = "lmod_sphere")]
        group: GenerationGroup,
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// Cover surface data and homology matrices.
    Cover {
        #[command(subcommand)]
        command: CoverCommand,
    },
    /// Run every claim of the verification suite.
    VerifyAll(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftKind {
    Word,
    Curve,
}

#[derive(Subcommand)]
enum CoverCommand {
    Info {
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        ctx: CtxArgs,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    ctx: CtxArgs,
    #[arg(long)]
    json: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "LMOD_BUDGET_LETTERS")]
    budget_letters: Option<usize>,
    #[arg(long, env = "LMOD_MAX_N_WORDS")]
    max_n_words: Option<u32>,
    #[arg(long, env = "LMOD_MAX_N_HOMOLOGY")]
    max_n_homology: Option<u32>,
    #[arg(long, env = "LMOD_MAX_K_HOMOLOGY")]
    max_k_homology: Option<u32>,
    /// Sign of the transvection for a right-handed twist.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true, value_parser = parse_sign)]
    twist_sign: i64,
    /// Leave out timings so the report is reproducible byte for byte.
    #[arg(long)]
    no_timings: bool,
}

fn parse_sign(s: &str) -> Result<i64, String> {
    match s {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err("expected 1 or -1".into()),
    }
}

enum Failure {
    Usage(String),
    Budget(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::InvalidContext(_)
            | Error::MalformedToken(_)
            | Error::IndexOutOfRange { .. }
            | Error::LetterOutsideGroup { .. }
            | Error::UnknownName(_) => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (2, m),
                Failure::Budget(m) => (3, m),
                Failure::Other(m) => (1, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn oracle(budget: Option<usize>) -> Oracle {
    budget.map(Oracle::with_budget).unwrap_or_default()
}

fn warn_small_k(ctx: &Context) {
    if ctx.k() == 2 {
        eprintln!(
            "warning: k = 2: every mapping class lifts; the parity criterion and the lifted generators assume k >= 3"
        );
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Eq {
            group,
            u,
            v,
            budget_letters,
            ctx,
        } => {
            let ctx = ctx.context()?;
            let u = parse_expression(&u, &ctx)?;
            let v = parse_expression(&v, &ctx)?;
            let equal = oracle(budget_letters).eq(group, &u, &v, &ctx)?;
            println!("{equal}");
            if group == Group::Sphere {
                println!("psi(u) = {}", psi(&u, &ctx));
                println!("psi(v) = {}", psi(&v, &ctx));
            }
            Ok(0)
        }
        Command::LiftableWord { input, ctx } => liftable(LiftKind::Word, &input, ctx),
        Command::LiftableCurve { input, ctx } => liftable(LiftKind::Curve, &input, ctx),
        Command::Liftable { kind, input, ctx } => liftable(kind, &input, ctx),
        Command::Express { target, group, ctx } => {
            let ctx = ctx.context()?;
            let target = Generator::parse(&target)?;
            target.validate_indices(&ctx)?;
            let factors = express(target, group, &ctx, &Oracle::default())?;
            println!("{target} = {}", format_factors(&factors));
            Ok(0)
        }
        Command::Cover {
            command: CoverCommand::Info { json, ctx },
        } => cover_info(&ctx.context()?, json),
        Command::VerifyAll(args) => verify_all(args),
    }
}

fn liftable(kind: LiftKind, input: &str, ctx: CtxArgs) -> Result<u8, Failure> {
    let ctx = ctx.context()?;
    warn_small_k(&ctx);
    match kind {
        LiftKind::Word => {
            let w = parse_expression(input, &ctx)?;
            let class = parity(&psi(&w, &ctx), &ctx);
            if is_liftable_word(&w, &ctx) {
                println!("liftable, {class}");
            } else {
                println!("not liftable, parity class {class}");
            }
        }
        LiftKind::Curve => {
            let c = CurveClass::parse(input, &ctx)?;
            let residue = curve_monodromy(&c, &ctx);
            if residue == 0 {
                println!("lifts (0 mod {})", ctx.k());
            } else {
                println!("does not lift ({residue} mod {})", ctx.k());
            }
        }
    }
    Ok(0)
}

fn cover_info(ctx: &Context, json: bool) -> Result<u8, Failure> {
    warn_small_k(ctx);
    let surface = build_cover(ctx);
    let h = homology(&surface)?;
    let lifts = if ctx.k() >= 3 {
        Some(Lifts::new(ctx, Conventions::default())?)
    } else {
        None
    };
    let zeta = h.matrix_of(|c| surface.deck(c))?;
    if json {
        let mut matrices = serde_json::Map::new();
        if let Some(lifts) = &lifts {
            let n = ctx.n();
            let mut names: Vec<LiftName> = (1..=2 * n + 1).map(LiftName::T).collect();
            names.extend((1..=2 * n).map(LiftName::H));
            names.extend([LiftName::R, LiftName::R1, LiftName::ZetaPrime]);
            for name in names {
                matrices.insert(name.to_string(), json!(lifts.rep(name)?));
            }
        }
        let value = json!({
            "ctx": ctx,
            "vertices": surface.vertex_count(),
            "edges": surface.edge_count(),
            "faces": surface.face_count(),
            "euler_characteristic": surface.euler_characteristic(),
            "genus": surface.genus(),
            "h1_rank": h.rank(),
            "form": h.form,
            "zeta": zeta,
            "label_offsets": lifts.as_ref().map(|l| l.offsets().to_vec()),
            "lifts": matrices,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&value).map_err(|e| Failure::Other(e.to_string()))?
        );
    } else {
        println!("n={} k={} g={}", ctx.n(), ctx.k(), ctx.g());
        println!(
            "cells: {} vertices, {} edges, {} faces; euler characteristic {}",
            surface.vertex_count(),
            surface.edge_count(),
            surface.face_count(),
            surface.euler_characteristic()
        );
        println!("genus {}, H_1 rank {}", surface.genus(), h.rank());
        if let Some(lifts) = &lifts {
            println!("sheet of gamma_i^1: {:?}", lifts.offsets());
        }
        println!("deck rotation:\n{zeta}");
    }
    Ok(0)
}

fn verify_all(args: VerifyArgs) -> Result<u8, Failure> {
    let ctx = args.ctx.context()?;
    warn_small_k(&ctx);
    let mut config = SuiteConfig::default();
    if let Some(b) = args.budget_letters {
        config.budget_letters = b;
    }
    if let Some(v) = args.max_n_words {
        config.max_n_words = v;
    }
    if let Some(v) = args.max_n_homology {
        config.max_n_homology = v;
    }
    if let Some(v) = args.max_k_homology {
        config.max_k_homology = v;
    }
    config.conventions.twist_sign = args.twist_sign;

    let report = Report::generate(&ctx, &config, !args.no_timings);
    let body = if args.json {
        report.to_json()? + "\n"
    } else {
        report.to_text()
    };
    match &args.out {
        Some(path) => {
            write_atomically(path, &body)?;
            let s = report.summary;
            println!(
                "{} passed, {} failed, {} skipped; report written to {}",
                s.pass,
                s.fail,
                s.skipped,
                path.display()
            );
        }
        None => print!("{body}"),
    }
    Ok(report.exit_code() as u8)
}

/// Writes to a sibling temporary file, then renames it over `path`.
fn write_atomically(path: &Path, body: &str) -> Result<(), Failure> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Failure::Usage(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(body.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}
