use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use recoll::aalgebra::build_aalgebra;
use recoll::algebra::Algebra;
use recoll::cofun::{self, Duality};
use recoll::io::{self, ModuleSummary};
use recoll::modcat;
use recoll::verify::{self, Fault, Suite, SubcatChoice, VerifyConfig};
use recoll::{corpus, fpfun, Error};

#[derive(Parser)]
#[command(name = "recoll", version, about = "Finitely presented functors over finite-dimensional algebras")]
struct Cli {
    /// Field characteristic, overriding the one in the input files.
    #[arg(long = "char", global = true, env = "RECOLL_CHAR")]
    field_char: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate an algebra and print its dimension and radical layers.
    CheckAlgebra { algebra: String },
    /// The endomorphism algebra of the radical-layer generator.
    Aalg {
        #[command(subcommand)]
        cmd: AalgCmd,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        algebra: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Covariant functors on the subcategory.
    Covariant {
        #[command(subcommand)]
        cmd: CovariantCmd,
    },
    /// Dualities relative to a subcategory.
    Duality {
        #[command(subcommand)]
        cmd: DualityCmd,
    },
    /// The functors between modules and finitely presented functors.
    Functor {
        #[command(subcommand)]
        cmd: FunctorCmd,
    },
    /// Run every suite on every bundled algebra.
    Report {
        /// Write the combined JSON report here ("-" for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        corpus_size: Option<usize>,
    },
}

#[derive(Subcommand)]
enum AalgCmd {
    Build {
        algebra: String,
        #[arg(long)]
        gldim_cap: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CovariantCmd {
    /// Same as `verify covariant`.
    Verify {
        algebra: String,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Subcommand)]
enum DualityCmd {
    /// The relative duality of a module, as a left module.
    Tilde {
        #[arg(long)]
        subcat: PathBuf,
        module: PathBuf,
    },
}

#[derive(Subcommand)]
enum FunctorCmd {
    /// Value of a functor file at the regular module.
    Va { functor: PathBuf },
    /// Presentation of a module by projectives.
    Valambda {
        #[arg(long)]
        subcat: PathBuf,
        module: PathBuf,
    },
    /// Restricted Hom functor of a module.
    Varho {
        #[arg(long)]
        subcat: PathBuf,
        module: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Aalgebra,
    Recollement,
    Covariant,
    Resolution,
    Crepant,
}

impl SuiteArg {
    fn suite(self) -> Suite {
        match self {
            SuiteArg::Aalgebra => Suite::AAlgebra,
            SuiteArg::Recollement => Suite::Recollement,
            SuiteArg::Covariant => Suite::Covariant,
            SuiteArg::Resolution => Suite::Resolution,
            SuiteArg::Crepant => Suite::Crepant,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SubcatArg {
    RadicalLayers,
    Projectives,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    StructureConstant,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    corpus_size: Option<usize>,
    #[arg(long)]
    gldim_cap: Option<usize>,
    #[arg(long, value_enum, default_value = "radical-layers")]
    subcat: SubcatArg,
    /// Also write the JSON report to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    #[arg(long, value_enum)]
    inject_fault: Option<FaultArg>,
}

impl RunArgs {
    fn config(&self) -> VerifyConfig {
        VerifyConfig {
            seed: self.seed,
            corpus_size: self.corpus_size,
            gldim_cap: self.gldim_cap,
            subcat: match self.subcat {
                SubcatArg::RadicalLayers => SubcatChoice::RadicalLayers,
                SubcatArg::Projectives => SubcatChoice::Projectives,
            },
            fault: self.inject_fault.map(|FaultArg::StructureConstant| Fault::StructureConstant),
            ..VerifyConfig::default()
        }
    }
}

/// A bundled algebra name or a path to an algebra file.
fn load_algebra(arg: &str, char_override: Option<u64>) -> recoll::Result<(Arc<Algebra>, String)> {
    if Path::new(arg).exists() {
        let alg = io::read_algebra(Path::new(arg))?.build(char_override)?;
        let name = Path::new(arg).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        return Ok((alg, name));
    }
    match corpus::bundled(arg) {
        Some(b) => Ok((b.build(char_override)?, b.name.to_string())),
        None => Err(Error::Input(format!("{arg} is neither a file nor a bundled algebra"))),
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn write_out(path: &Path, text: &str) -> anyhow::Result<()> {
    if path == Path::new("-") {
        println!("{text}");
        Ok(())
    } else {
        std::fs::write(path, format!("{text}\n")).with_context(|| format!("cannot write {}", path.display()))
    }
}

/// Outcome of a command: whether all verifications passed.
fn run(cli: Cli) -> anyhow::Result<bool> {
    let ch = cli.field_char;
    match cli.cmd {
        Cmd::CheckAlgebra { algebra } => {
            let (alg, name) = load_algebra(&algebra, ch)?;
            print_json(&json!({
                "algebra": name,
                "char": alg.field().p(),
                "dim": alg.dim(),
                "n": alg.nilpotency_index(),
                "radicalDims": alg.radical_dims(),
                "selfInjective": modcat::is_self_injective(&alg)?,
            }));
            Ok(true)
        }
        Cmd::Aalg { cmd: AalgCmd::Build { algebra, gldim_cap } } => {
            let (alg, _) = load_algebra(&algebra, ch)?;
            let a = build_aalgebra(&alg)?;
            let cap = gldim_cap.unwrap_or_else(|| modcat::default_gldim_cap(a.tilde()));
            let gl = a.gldim(cap)?;
            let corner = a.corner_iso_verified()?;
            print_json(&json!({
                "dimM": a.dim_generator(),
                "dimTilde": a.tilde().dim(),
                "gldimTilde": gl,
                "cornerIsoVerified": corner,
                "nilpotencyIndex": alg.nilpotency_index(),
            }));
            Ok(corner && gl.is_some())
        }
        Cmd::Verify { suite, algebra, run } => run_suite(suite.suite(), &algebra, &run, ch),
        Cmd::Covariant { cmd: CovariantCmd::Verify { algebra, run } } => run_suite(Suite::Covariant, &algebra, &run, ch),
        Cmd::Duality { cmd: DualityCmd::Tilde { subcat, module } } => {
            let (alg, sub) = io::read_subcat(&subcat, ch)?;
            let (malg, m) = io::read_module(&module, ch)?;
            if !modcat::same_algebra(&alg, &malg) {
                return Err(Error::Input("module and subcategory are over different algebras".into()).into());
            }
            let d = Duality::new(&sub)?;
            let t = cofun::relative_duality(&d, &m)?;
            print_json(&json!({ "module": ModuleSummary::of(&m)?, "relativeDual": ModuleSummary::of(&t)? }));
            Ok(true)
        }
        Cmd::Functor { cmd } => {
            match cmd {
                FunctorCmd::Va { functor } => {
                    let (_, f) = io::read_functor(&functor, ch)?;
                    let (v, _) = f.to_module();
                    print_json(&json!({ "dimAtGen": f.zeta_dim(), "value": ModuleSummary::of(&v)? }));
                }
                FunctorCmd::Valambda { subcat, module } => {
                    let (sub, m) = load_pair(&subcat, &module, ch)?;
                    let (f, iso) = fpfun::presented_by_projectives(&sub, &m)?;
                    print_json(&json!({
                        "rows": f.d.rows, "cols": f.d.cols, "entries": f.d.entries,
                        "dimAtGen": f.zeta_dim(), "counitIsIso": iso.is_iso(),
                    }));
                }
                FunctorCmd::Varho { subcat, module } => {
                    let (sub, m) = load_pair(&subcat, &module, ch)?;
                    let rh = fpfun::restricted_hom(&sub, &m)?;
                    let f = &rh.functor;
                    print_json(&json!({
                        "rows": f.d.rows, "cols": f.d.cols, "entries": f.d.entries,
                        "dimAtGen": f.zeta_dim(), "homDim": rh.hom_basis.len(),
                    }));
                }
            }
            Ok(true)
        }
        Cmd::Report { json, seed, corpus_size } => {
            let mut reports = Vec::new();
            let mut skipped = Vec::new();
            for b in corpus::BUNDLED {
                let alg = b.build(ch)?;
                for suite in Suite::ALL {
                    let cfg = VerifyConfig { seed, corpus_size, ..VerifyConfig::default() };
                    match verify::run(suite, &alg, b.name, &cfg) {
                        Ok(r) => reports.push(r),
                        Err(Error::Precondition(msg)) => {
                            skipped.push(json!({ "algebra": b.name, "suite": suite.name(), "reason": msg }))
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
            }
            let passed = reports.iter().all(|r| r.passed);
            for r in &reports {
                eprint!("{}", r.to_text());
            }
            let out = json!({ "seed": seed, "passed": passed, "reports": reports, "skipped": skipped });
            let text = serde_json::to_string_pretty(&out)?;
            match json {
                Some(p) => write_out(&p, &text)?,
                None => println!("{text}"),
            }
            Ok(passed)
        }
    }
}

fn load_pair(
    subcat: &Path,
    module: &Path,
    ch: Option<u64>,
) -> anyhow::Result<(Arc<recoll::subcat::Subcat>, recoll::modcat::Module)> {
    let (alg, sub) = io::read_subcat(subcat, ch)?;
    let (malg, m) = io::read_module(module, ch)?;
    if !modcat::same_algebra(&alg, &malg) {
        return Err(Error::Input("module and subcategory are over different algebras".into()).into());
    }
    Ok((sub, m))
}

fn run_suite(suite: Suite, algebra: &str, args: &RunArgs, ch: Option<u64>) -> anyhow::Result<bool> {
    let (alg, name) = load_algebra(algebra, ch)?;
    let report = verify::run(suite, &alg, &name, &args.config())?;
    let text = report.to_json();
    if let Some(p) = &args.json {
        write_out(p, &text)?;
    }
    match args.format {
        FormatArg::Text => print!("{}", report.to_text()),
        FormatArg::Json => println!("{text}"),
    }
    Ok(report.passed)
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Input(_) | Error::Precondition(_) | Error::Io(_) | Error::Json(_)) => 2,
        Some(_) => 1,
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
