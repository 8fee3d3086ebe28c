use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use g2cert::bigcell::homogeneity_certificate;
use g2cert::bigcell::{bruhat_gl2, decompose, symbolic_decomposition, x_alpha, BigCellDecomp};
use g2cert::g2::weyl::table;
use g2cert::g2::{NCoords, Root};
use g2cert::levi::{canonical_rep, DomainKind, DomainPoint};
use g2cert::nbar::{lemma_certificate, KappaRange, LemmaConfig};
use g2cert::ring::{Prime, Rat};
use g2cert::stability::{build_ledger, expected_net_factor, net_factor, UnitAssumption};
use g2cert::suite::{emit_formula, run_suite, FormulaFormat, SuiteConfig};
use g2cert::{Error, Scalar};

#[derive(Parser)]
#[command(name = "g2", version, about = "Exact certification of the split G2 7x7 realization")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitFormat {
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Roots,
    Weyl,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    D,
    D0,
}

#[derive(clap::Args)]
struct SamplingArgs {
    /// Residue characteristic
    #[arg(long, default_value_t = 5)]
    p: i64,
    /// Inclusive κ range, e.g. 1..6
    #[arg(long, default_value = "1..6")]
    kappa: String,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SamplingArgs {
    fn config(&self) -> Result<SuiteConfig, Error> {
        Ok(SuiteConfig {
            p: Prime::new(self.p).map_err(|e| Error::Config(e.to_string()))?,
            kappa: self.kappa.parse::<KappaRange>()?,
            samples: self.samples,
            seed: self.seed,
        })
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run checks whose ids match a glob (or `all`)
    Verify {
        selector: String,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
        /// Write the report here and print a text summary
        #[arg(long)]
        out: Option<String>,
        /// Worker threads
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print the root or Weyl table
    Table {
        #[arg(value_enum)]
        kind: TableKind,
    },
    /// Fundamental-domain reduction
    Orbit {
        #[command(subcommand)]
        cmd: OrbitCmd,
    },
    /// Big-cell factorization ẇ0⁻¹ n = m n' n̄
    Bigcell {
        #[command(subcommand)]
        cmd: BigcellCmd,
    },
    /// Compact subgroups N̄_κ of the opposite unipotent
    Nbar {
        #[command(subcommand)]
        cmd: NbarCmd,
    },
    /// Character bookkeeping of the stability integrand
    Stability {
        #[command(subcommand)]
        cmd: StabilityCmd,
    },
    /// Print a derived formula family
    Emit {
        name: String,
        #[arg(long, value_enum, default_value = "latex")]
        format: EmitFormat,
    },
}

#[derive(Subcommand)]
enum OrbitCmd {
    /// Reduce n = (x10, x11, x21, x31, x32) to D or D0
    Reduce {
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        n: Vec<String>,
        #[arg(long, value_enum, default_value = "d0")]
        target: Target,
    },
}

#[derive(Subcommand)]
enum BigcellCmd {
    /// Decompose ẇ0⁻¹ n = m n' n̄ at (x21, x31, x32) or symbolically
    Decompose {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required_unless_present = "symbolic"
        )]
        point: Vec<String>,
        #[arg(long)]
        symbolic: bool,
    },
}

#[derive(Subcommand)]
enum NbarCmd {
    /// Closure / Z_M / U₁ certificate for N̄_κ
    Certify {
        #[command(flatten)]
        sampling: SamplingArgs,
    },
}

#[derive(Subcommand)]
enum StabilityCmd {
    /// Print the integrand ledger and the net factor
    Audit,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            // bad arguments, including points outside the domain a command accepts
            Error::Config(_)
            | Error::UnknownFormula(_)
            | Error::Parse { .. }
            | Error::NotPrime(_)
            | Error::PrimeTooSmall(_)
            | Error::OutsideOpenOrbit
            | Error::DiscriminantVanishes
            | Error::NotInBigCellOfM => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

// stdout is buffered and written once so that a closed pipe is not a panic
macro_rules! out {
    ($o:expr, $($t:tt)*) => {{ let _ = write!($o, $($t)*); }};
}

macro_rules! outln {
    ($o:expr, $($t:tt)*) => {{ let _ = writeln!($o, $($t)*); }};
}

fn parse_rats<const N: usize>(v: &[String]) -> Result<[Rat; N], Failure> {
    if v.len() != N {
        return Err(Failure::Usage(format!(
            "expected {N} comma-separated values, got {}",
            v.len()
        )));
    }
    let r = v.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(r.try_into().unwrap_or_else(|_| unreachable!()))
}

fn parse_rat(s: &str) -> Result<Rat, Failure> {
    s.trim()
        .parse::<Rat>()
        .map_err(|_| Failure::Usage(format!("not a rational number: `{s}`")))
}

fn print_decomp<S: Scalar + std::fmt::Display>(o: &mut String, d: &BigCellDecomp<S>) -> Result<(), Failure> {
    let b = bruhat_gl2(&d.m)?;
    let out = json!({
        "discriminant": d.discriminant.to_string(),
        "n_bar": d.nbar.to_string(),
        "m": [[d.m.a.to_string(), d.m.b.to_string()], [d.m.c.to_string(), d.m.d.to_string()]],
        "det_m": d.m.det().to_string(),
        "n_prime": d.nprime.to_string(),
        "bruhat": { "u1": b.u1_entry.to_string(), "u2": b.u2_entry.to_string(),
                    "t": [b.t1.to_string(), b.t2.to_string()] },
    });
    outln!(o, "{}", serde_json::to_string_pretty(&out).expect("serializes"));
    Ok(())
}

fn run(cli: Cli, o: &mut String) -> Result<ExitCode, Failure> {
    match cli.cmd {
        Cmd::Verify {
            selector,
            sampling,
            format,
            out,
            jobs,
        } => {
            let cfg = sampling.config()?;
            if let Some(j) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(j.max(1))
                    .build_global()
                    .map_err(|e| Failure::Usage(e.to_string()))?;
            }
            let report = run_suite(&selector, &cfg)?;
            let body = match format {
                ReportFormat::Json => report.to_json(),
                ReportFormat::Text => report.to_text(),
                ReportFormat::Latex => report.to_latex(),
            };
            match out {
                Some(path) => {
                    fs::write(&path, body).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
                    out!(o, "{}", report.to_text());
                }
                None => out!(o, "{body}"),
            }
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        Cmd::Table { kind: TableKind::Roots } => {
            outln!(o, "{:<10} {:<6} {:>6} {:<8}", "root", "coord", "height", "sign");
            let mut roots: Vec<Root> = Root::all().collect();
            roots.sort_by_key(|r| (-r.height().signum(), r.height().abs(), r.alpha, r.beta));
            for r in roots {
                let sign = if r.is_positive() { "positive" } else { "negative" };
                outln!(
                    o,
                    "{:<10} {:<6} {:>6} {:<8}",
                    r.to_string(),
                    r.coordinate()?.to_string(),
                    r.height(),
                    sign
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Table { kind: TableKind::Weyl } => {
            let t = table();
            outln!(o, "λ_α = {}, λ_β = {}", t.lambda_alpha, t.lambda_beta);
            for e in t.entries() {
                let words: Vec<String> = e.reduced_words.iter().map(ToString::to_string).collect();
                outln!(
                    o,
                    "\nlength {}  words {}  α ↦ {}  β ↦ {}",
                    e.length,
                    words.join(" = "),
                    e.image_alpha,
                    e.image_beta
                );
                out!(o, "{}", e.representative);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Orbit {
            cmd: OrbitCmd::Reduce { n, target },
        } => {
            let coords = NCoords::from_array(parse_rats::<5>(&n)?);
            let kind = match target {
                Target::D => DomainKind::D,
                Target::D0 => DomainKind::D0,
            };
            let r = canonical_rep(&coords, kind)?;
            let out = json!({
                "representative": r.rep.coords.to_string(),
                "u": r.u.to_string(),
                "t": r.t.map(|t| t.to_string()),
            });
            outln!(o, "{}", serde_json::to_string_pretty(&out).expect("serializes"));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bigcell {
            cmd: BigcellCmd::Decompose { point, symbolic },
        } => {
            if symbolic {
                print_decomp(o, symbolic_decomposition()?)?;
                outln!(o, "x_alpha = {}", x_alpha(&DomainPoint::generic_d0())?);
            } else {
                let [x21, x31, x32] = parse_rats::<3>(&point)?;
                let p = DomainPoint::d0(x21, x31, x32);
                print_decomp(o, &decompose(&p)?)?;
                outln!(o, "x_alpha = {}", x_alpha(&p)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Nbar {
            cmd: NbarCmd::Certify { sampling },
        } => {
            let cfg = sampling.config()?;
            let lc = LemmaConfig::new(cfg.p, cfg.kappa.0, cfg.kappa.1, cfg.samples, cfg.seed)?;
            let c = lemma_certificate(&lc)?;
            outln!(o, "{}", serde_json::to_string_pretty(&c).expect("serializes"));
            Ok(if c.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Stability {
            cmd: StabilityCmd::Audit,
        } => {
            let l = build_ledger(Some(homogeneity_certificate()?))?;
            out!(o, "{l}");
            let net = net_factor(&l, UnitAssumption { t_is_unit: true });
            let formal = net_factor(&l, UnitAssumption { t_is_unit: false });
            outln!(o, "\nnet factor (|t| = 1): {net}");
            outln!(o, "net factor (formal):  {formal}");
            let ok = net == expected_net_factor();
            outln!(o, "{} net factor is ω_π ω(t²)", if ok { "PASS" } else { "FAIL" });
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Emit { name, format } => {
            let f = match format {
                EmitFormat::Json => FormulaFormat::Json,
                EmitFormat::Latex => FormulaFormat::Latex,
            };
            out!(o, "{}", emit_formula(&name, f)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let mut o = String::new();
    let r = run(Cli::parse(), &mut o);
    let _ = std::io::stdout().lock().write_all(o.as_bytes());
    match r {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
