mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use commands::{ModuleSource, Options, SubmoduleSource};
use io::CliError;

/// Cox rings, Cox-scheme charts and graded-module sheaves of toric fans,
/// with exact JSON output.
#[derive(Parser)]
#[command(name = "coxsheaf", version)]
struct Cli {
    /// Directory searched for fan names that are not paths
    /// [default: $COXSHEAF_CORPUS or the bundled corpus]
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Fan(FanCmd),
    #[command(subcommand)]
    Grading(GradingCmd),
    /// The Picard group inside the class group.
    Pic(FanArg),
    #[command(subcommand)]
    Subgroup(SubgroupCmd),
    #[command(subcommand)]
    Cox(CoxCmd),
    /// The degree-zero chart ring of one cone.
    Chart {
        #[command(flatten)]
        setup: SetupArgs,
        /// Comma-separated ray indices, e.g. 0,1.
        cone: String,
    },
    #[command(subcommand)]
    Ideal(IdealCmd),
    #[command(subcommand)]
    Module(ModuleCmd),
    #[command(subcommand)]
    Sheaf(SheafCmd),
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Subcommand)]
enum FanCmd {
    /// Parse and validate a fan.
    Validate(FanArg),
    /// Fan properties and the scheme-property report.
    Report(SetupArgs),
}

#[derive(Subcommand)]
enum GradingCmd {
    /// Class group, the map c and the ray degrees.
    Build(FanArg),
}

#[derive(Subcommand)]
enum SubgroupCmd {
    /// Index, bigness and smallness of B.
    Classify(SetupArgs),
}

#[derive(Subcommand)]
enum CoxCmd {
    /// Cox ring data for the subgroup B.
    Build {
        #[command(flatten)]
        setup: SetupArgs,
        /// Degree search bound for positivity witnesses.
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum IdealCmd {
    /// Saturation of a homogeneous ideal with respect to I_B.
    Saturate {
        #[command(flatten)]
        setup: SetupArgs,
        /// Comma-separated polynomials in Z1, ..., Zk.
        #[arg(long)]
        ideal: String,
    },
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Global sections of the associated sheaf in a window of degrees.
    Sections {
        #[command(flatten)]
        setup: SetupArgs,
        #[command(flatten)]
        module: ModuleArgs,
        /// JSON list of degrees, e.g. [[0],[1]], or a range a..b.
        #[arg(long)]
        degrees: String,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Torsion certificate and whether the sheaf vanishes.
    Torsion {
        #[command(flatten)]
        setup: SetupArgs,
        #[command(flatten)]
        module: ModuleArgs,
        #[command(flatten)]
        bounds: Bounds,
    },
}

#[derive(Subcommand)]
enum SheafCmd {
    /// Chart family of a submodule, its preimage and the saturation.
    XiCheck {
        #[command(flatten)]
        setup: SetupArgs,
        #[command(flatten)]
        module: ModuleArgs,
        #[command(flatten)]
        sub: SubmoduleArgs,
    },
    /// A finitely generated submodule with the given chart family.
    Lift {
        #[command(flatten)]
        setup: SetupArgs,
        #[command(flatten)]
        module: ModuleArgs,
        #[command(flatten)]
        sub: SubmoduleArgs,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Corpus fans and where they are looked up.
    List,
    /// Write the corpus fans as JSON files.
    Export { dir: PathBuf },
}

#[derive(Args)]
struct FanArg {
    /// Fan JSON file or corpus name.
    fan: String,
}

#[derive(Args)]
struct SetupArgs {
    /// Fan JSON file or corpus name.
    fan: String,
    /// Generators of B as a JSON list of class-group coordinates [default: A].
    #[arg(long)]
    subgroup: Option<String>,
    /// Base-ring declaration name=true|false; repeatable.
    #[arg(long = "flag")]
    flags: Vec<String>,
    /// Start from no declarations instead of the rationals.
    #[arg(long)]
    no_default_flags: bool,
}

#[derive(Args)]
struct ModuleArgs {
    /// Module JSON file [default: the Cox ring itself].
    #[arg(long)]
    module: Option<PathBuf>,
    /// Use S_B/J for the comma-separated generators of J.
    #[arg(long, conflicts_with = "module")]
    quotient: Option<String>,
}

#[derive(Args)]
struct SubmoduleArgs {
    /// Ideal generators, for modules with one generator.
    #[arg(long)]
    ideal: Option<String>,
    /// JSON file with submodule generators as lists of triples.
    #[arg(long, conflicts_with = "ideal")]
    elements: Option<PathBuf>,
}

#[derive(Args)]
struct Bounds {
    /// Denominator bound k [default: least stabilized k up to 8].
    #[arg(long)]
    k: Option<usize>,
    /// Cap on powers in torsion certificates.
    #[arg(long)]
    power_cap: Option<usize>,
}

impl SetupArgs {
    fn options(&self) -> Options<'_> {
        Options { subgroup: self.subgroup.as_deref(), flags: &self.flags, no_default_flags: self.no_default_flags }
    }
}

impl ModuleArgs {
    fn source(&self) -> ModuleSource<'_> {
        ModuleSource { module: self.module.as_ref(), quotient: self.quotient.as_deref() }
    }
}

impl SubmoduleArgs {
    fn source(&self) -> SubmoduleSource<'_> {
        SubmoduleSource { ideal: self.ideal.as_deref(), elements: self.elements.as_ref() }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Fan(FanCmd::Validate(_)) => "fan validate",
        Command::Fan(FanCmd::Report(_)) => "fan report",
        Command::Grading(_) => "grading build",
        Command::Pic(_) => "pic",
        Command::Subgroup(_) => "subgroup classify",
        Command::Cox(_) => "cox build",
        Command::Chart { .. } => "chart",
        Command::Ideal(_) => "ideal saturate",
        Command::Module(ModuleCmd::Sections { .. }) => "module sections",
        Command::Module(ModuleCmd::Torsion { .. }) => "module torsion",
        Command::Sheaf(SheafCmd::XiCheck { .. }) => "sheaf xi-check",
        Command::Sheaf(SheafCmd::Lift { .. }) => "sheaf lift",
        Command::Corpus(CorpusCmd::List) => "corpus list",
        Command::Corpus(CorpusCmd::Export { .. }) => "corpus export",
    }
}

fn run(cli: &Cli, warnings: &mut Vec<Value>) -> Result<Value, CliError> {
    let dir = cli.corpus.clone().unwrap_or_else(io::default_corpus_dir);
    let mut load = |fan: &str| {
        let s = commands::load(fan, &dir)?;
        warnings.extend(s.fan.warnings.iter().cloned());
        Ok::<_, CliError>(s)
    };
    match &cli.command {
        Command::Fan(FanCmd::Validate(a)) => Ok(commands::fan_validate(&load(&a.fan)?)),
        Command::Fan(FanCmd::Report(a)) => commands::fan_report(&load(&a.fan)?, &a.options()),
        Command::Grading(GradingCmd::Build(a)) => Ok(commands::grading_build(&load(&a.fan)?)),
        Command::Pic(a) => Ok(commands::pic(&load(&a.fan)?)),
        Command::Subgroup(SubgroupCmd::Classify(a)) => commands::subgroup_classify(&load(&a.fan)?, &a.options()),
        Command::Cox(CoxCmd::Build { setup, bound }) => commands::cox_build(&load(&setup.fan)?, &setup.options(), *bound),
        Command::Chart { setup, cone } => {
            let cone = io::parse_cone(cone)?;
            commands::chart(&load(&setup.fan)?, &setup.options(), &cone)
        }
        Command::Ideal(IdealCmd::Saturate { setup, ideal }) => {
            commands::ideal_saturate(&load(&setup.fan)?, &setup.options(), ideal)
        }
        Command::Module(ModuleCmd::Sections { setup, module, degrees, bounds }) => {
            commands::module_sections(&load(&setup.fan)?, &setup.options(), &module.source(), degrees, bounds.k)
        }
        Command::Module(ModuleCmd::Torsion { setup, module, bounds }) => commands::module_torsion(
            &load(&setup.fan)?,
            &setup.options(),
            &module.source(),
            bounds.power_cap,
            bounds.k,
        ),
        Command::Sheaf(SheafCmd::XiCheck { setup, module, sub }) => {
            commands::sheaf_xi_check(&load(&setup.fan)?, &setup.options(), &module.source(), &sub.source())
        }
        Command::Sheaf(SheafCmd::Lift { setup, module, sub }) => {
            commands::sheaf_lift(&load(&setup.fan)?, &setup.options(), &module.source(), &sub.source())
        }
        Command::Corpus(CorpusCmd::List) => Ok(commands::corpus_list(&dir)),
        Command::Corpus(CorpusCmd::Export { dir }) => commands::corpus_export(dir),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = json!({ "reason": "Usage", "message": e.to_string().trim_end() });
            print!("{}", render(&json!({ "command": Value::Null, "error": err, "warnings": [] })));
            return ExitCode::from(2);
        }
    };
    let command = name(&cli.command);
    let mut warnings = Vec::new();
    match run(&cli, &mut warnings) {
        Ok(result) => {
            print!("{}", render(&json!({ "command": command, "result": result, "warnings": warnings })));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("coxsheaf: {e}");
            print!("{}", render(&json!({ "command": command, "error": e.to_json(), "warnings": warnings })));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
