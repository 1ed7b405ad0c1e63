use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use frobforge_cli::cache::DiskCache;
use frobforge_cli::commands::{self as cmd, Target, Verify};
use frobforge_cli::config::{parse_e_list, Format, SessionConfig};
use frobforge_cli::corpus::run_corpus;
use frobforge_cli::resolve::{load, Declarations};
use frobforge_cli::{envelope, render_table, CliError, Severity};

#[derive(Parser, Debug)]
#[command(name = "frobforge", version, about = "Frobenius twists, resolutions and depth over F_p[x]/I")]
struct Cli {
    /// Configuration file of key=value lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Persistent cache directory (overrides FROBFORGE_CACHE and the config file).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Comma-separated Frobenius exponents.
    #[arg(long, global = true)]
    e: Option<String>,
    /// Highest homological degree (default dim R + 1).
    #[arg(long, global = true)]
    imax: Option<usize>,
    /// Seed for random complexes.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Run corpus entries in parallel.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Declaration file.
    file: PathBuf,
    /// Ring name (default: the first declared ring).
    #[arg(long)]
    ring: Option<String>,
    /// Module name (default: the first declared module).
    #[arg(long)]
    module: Option<String>,
    /// Second module for tor/ext (default: the residue field).
    #[arg(long)]
    with: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Groebner basis of the defining ideal.
    Gb(Input),
    /// Krull dimensions and F_p-dimension.
    Dim(Input),
    /// Depth by Ext and by Koszul homology.
    Depth(Input),
    /// Betti numbers of the minimal resolution.
    Betti(Input),
    /// Projective dimension verdict.
    Pd(Input),
    /// Bass numbers at the maximal ideal.
    Bass(Input),
    /// Enochs-Xu numbers at the maximal ideal.
    Exnumbers(Input),
    /// Tor_i(M, N).
    Tor(Input),
    /// Ext^i(N, M) with N given by --with.
    Ext(Input),
    /// Tor_i(R^(e), M) via the twisted resolution.
    Frobtor(Input),
    /// Regularity test by Frobenius Tor.
    Kunz(Input),
    /// Presentation of F^e_* R (first exponent of --e).
    Pushforward(Input),
    /// Compares the twisted and pushforward routes to Frobenius Tor.
    Crosscheck(Input),
    /// Runs a theorem check.
    Verify {
        #[arg(value_enum)]
        which: VerifyArg,
        /// Declaration file (optional for prop-acyclicity).
        file: Option<PathBuf>,
        /// Module name (default: the first declared module).
        #[arg(long)]
        module: Option<String>,
        /// Complex to check for prop-acyclicity.
        #[arg(long)]
        complex: Option<String>,
        /// Number of seeded random complexes for prop-acyclicity.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    /// Corpus operations.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyArg {
    #[value(name = "thmA")]
    ThmA,
    #[value(name = "thmB")]
    ThmB,
    PropAcyclicity,
    CorExt,
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    /// Runs every .frob file in a directory.
    Run { dir: PathBuf },
}

fn session(cli: &Cli) -> Result<SessionConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(p) => SessionConfig::from_file(p)?,
        None => SessionConfig::default(),
    };
    if let Some(dir) = std::env::var_os("FROBFORGE_CACHE") {
        cfg.cache_dir = Some(PathBuf::from(dir));
    }
    if let Some(dir) = &cli.cache_dir {
        cfg.cache_dir = Some(dir.clone());
    }
    if let Some(f) = cli.format {
        cfg.format = match f {
            FormatArg::Json => Format::Json,
            FormatArg::Table => Format::Table,
        };
    }
    if let Some(e) = &cli.e {
        cfg.e_list = parse_e_list(e)?;
    }
    if cli.imax.is_some() {
        cfg.max_i = cli.imax;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.parallel |= cli.parallel;
    Ok(cfg)
}

fn read(path: &Path) -> Result<Declarations, CliError> {
    let src = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    load(&src).map_err(|e| CliError::Usage(format!("{}:{e}", path.display())))
}

fn target(i: &Input) -> Target {
    Target { ring: i.ring.clone(), module: i.module.clone(), with: i.with.clone(), complex: None }
}

/// Runs the command; returns its name, input label, outcome and body.
fn execute(cli: &Cli, cfg: &SessionConfig) -> (String, String, Result<(Value, Severity), CliError>) {
    let cache = match &cfg.cache_dir {
        Some(dir) => match DiskCache::open(dir) {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("warning: cache disabled, cannot open {}: {e}", dir.display());
                None
            }
        },
        None => None,
    };
    let cache = cache.as_ref();
    let single = |name: &str, i: &Input, f: &dyn Fn(&Declarations, &Target) -> Result<Value, CliError>| {
        let out = read(&i.file).and_then(|d| f(&d, &target(i))).map(|v| (v, Severity::Ok));
        (name.to_string(), i.file.display().to_string(), out)
    };
    match &cli.command {
        Command::Gb(i) => single("gb", i, &|d, t| cmd::gb(d, t, cache)),
        Command::Dim(i) => single("dim", i, &cmd::dim),
        Command::Depth(i) => single("depth", i, &cmd::depth),
        Command::Betti(i) => single("betti", i, &|d, t| cmd::betti_cmd(d, t, cfg, cache)),
        Command::Pd(i) => single("pd", i, &cmd::pd),
        Command::Bass(i) => single("bass", i, &|d, t| cmd::bass(d, t, cfg)),
        Command::Exnumbers(i) => single("exnumbers", i, &|d, t| cmd::exnumbers(d, t, cfg)),
        Command::Tor(i) => single("tor", i, &|d, t| cmd::tor_cmd(d, t, cfg)),
        Command::Ext(i) => single("ext", i, &|d, t| cmd::ext_cmd(d, t, cfg)),
        Command::Frobtor(i) => single("frobtor", i, &|d, t| cmd::frobtor(d, t, cfg)),
        Command::Kunz(i) => single("kunz", i, &|d, t| cmd::kunz(d, t, cfg)),
        Command::Pushforward(i) => single("pushforward", i, &|d, t| cmd::pushforward_cmd(d, t, cfg)),
        Command::Crosscheck(i) => single("crosscheck", i, &|d, t| cmd::crosscheck(d, t, cfg)),
        Command::Verify { which, file, module, complex, random } => {
            let which = match which {
                VerifyArg::ThmA => Verify::ThmA,
                VerifyArg::ThmB => Verify::ThmB,
                VerifyArg::PropAcyclicity => Verify::PropAcyclicity,
                VerifyArg::CorExt => Verify::CorExt,
            };
            let t = Target { module: module.clone(), complex: complex.clone(), ..Target::default() };
            let out = (|| {
                let decls = match file {
                    Some(f) => Some(read(f)?),
                    None if which == Verify::PropAcyclicity => None,
                    None => return Err(CliError::Usage("a declaration file is required".into())),
                };
                cmd::verify(which, decls.as_ref(), &t, cfg, *random).map(|v| (v, Severity::Ok))
            })();
            let input = file.as_ref().map_or(String::new(), |f| f.display().to_string());
            (format!("verify {}", cmd::verify_name(which)), input, out)
        }
        Command::Corpus { action: CorpusAction::Run { dir } } => {
            ("corpus run".into(), dir.display().to_string(), run_corpus(dir, cfg, cache))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match session(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Severity::Usage.exit_code() as u8);
        }
    };
    let (name, input, out) = execute(&cli, &cfg);
    let (report, severity) = match out {
        Ok((body, sev)) => {
            let mut r = envelope(&name, &input, Severity::Ok, body);
            if sev != Severity::Ok {
                r["status"] = json!(sev.label());
            }
            (r, sev)
        }
        Err(e) => {
            let sev = e.severity();
            eprintln!("error: {e}");
            (envelope(&name, &input, sev, json!({"message": e.to_string()})), sev)
        }
    };
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
        Format::Table => render_table(&report),
    };
    print!("{text}");
    ExitCode::from(severity.exit_code() as u8)
}
