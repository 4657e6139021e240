use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use vgc::exec::ExecMode;
use vgc::fixtures::{load_group_file, FixtureError, FixtureSource};
use vgc::matgroup::{FiniteGroup, GroupTable};
use vgc::report::{run_suites, SuiteName};

/// Exact verification of the order-24 and order-216 monomial surface
/// actions: group closures, small orbits, lattice data, exclusion
/// certificates, and the function-field tower.
#[derive(Parser)]
#[command(name = "vgc", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and emit a report.
    Run(RunArgs),
    /// Load a group definition file and report its closure.
    Group(GroupArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    /// Suites to run; repeat the flag or separate names with commas.
    /// With no selection the report is empty.
    #[arg(long, value_enum, value_delimiter = ',')]
    suite: Vec<SuiteArg>,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory with group and point fixtures (defaults to the embedded
    /// copies).
    #[arg(long, env = "VGC_FIXTURES")]
    fixtures: Option<PathBuf>,
}

#[derive(clap::Args)]
struct GroupArgs {
    /// Group definition JSON file.
    #[arg(long)]
    file: PathBuf,
    /// Print only the group order.
    #[arg(long)]
    order: bool,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum SuiteArg {
    Group,
    Orbits,
    Picard,
    Noether,
    A5,
    Funfield,
    All,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

const EXIT_CONFIG: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run(args) => run_command(args),
        Command::Group(args) => group_command(args),
    };
    ExitCode::from(code)
}

fn run_command(args: RunArgs) -> u8 {
    let source = FixtureSource::resolve(args.fixtures);

    // Custom fixtures are a configuration input: refuse to start on files
    // that do not parse, pointing at the offending position.  Structurally
    // valid files with wrong content still run and fail their checks.
    if !source.is_embedded() {
        if let Err(err) = preflight(&source) {
            eprintln!("vgc: fixture error: {err}");
            return EXIT_CONFIG;
        }
    }

    let mut selected: Vec<SuiteName> = Vec::new();
    let all = args.suite.iter().any(|s| *s == SuiteArg::All);
    for suite in SuiteName::ALL {
        let wanted = all
            || args.suite.iter().any(|s| s.matches(suite));
        if wanted && !selected.contains(&suite) {
            selected.push(suite);
        }
    }

    let label = if selected.is_empty() {
        String::new()
    } else if all {
        "all".to_string()
    } else {
        selected
            .iter()
            .map(SuiteName::name)
            .collect::<Vec<_>>()
            .join(",")
    };

    if selected.is_empty() {
        eprintln!("vgc: no suites selected; emitting an empty report");
    }

    let format_name = match args.format {
        Format::Text => "text",
        Format::Json => "json",
    };
    let report = run_suites(
        &label,
        &selected,
        &source,
        ExecMode::default(),
        format_name,
    );
    let rendered = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };

    match &args.out {
        Some(path) => {
            if let Err(err) = fs::write(path, rendered) {
                eprintln!("vgc: cannot write {}: {err}", path.display());
                return EXIT_CONFIG;
            }
        }
        None => print!("{rendered}"),
    }

    report.exit_code() as u8
}

fn preflight(source: &FixtureSource) -> Result<(), FixtureError> {
    source.s4_rho()?;
    source.g216()?;
    source.lemma13_points()?;
    Ok(())
}

fn group_command(args: GroupArgs) -> u8 {
    let group = match load_group_file(&args.file) {
        Ok(g) => g,
        Err(err) => {
            eprintln!("vgc: {err}");
            return EXIT_CONFIG;
        }
    };
    let pairs = match group.generator_pairs() {
        Ok(p) => p,
        Err(err) => {
            eprintln!("vgc: {err}");
            return EXIT_CONFIG;
        }
    };
    let table = match GroupTable::generate(&pairs, GroupTable::DEFAULT_CAP) {
        Ok(t) => t,
        Err(err) => {
            eprintln!("vgc: closure failed: {err}");
            return 1;
        }
    };
    if args.order {
        println!("{}", table.order());
    } else {
        println!(
            "{}: order {} ({}), generators {}",
            group.name,
            table.order(),
            if group.projective { "projective" } else { "linear" },
            table.generator_labels().join(", ")
        );
    }
    0
}

impl SuiteArg {
    fn matches(self, suite: SuiteName) -> bool {
        matches!(
            (self, suite),
            (SuiteArg::Group, SuiteName::Group)
                | (SuiteArg::Orbits, SuiteName::Orbits)
                | (SuiteArg::Picard, SuiteName::Picard)
                | (SuiteArg::Noether, SuiteName::Noether)
                | (SuiteArg::A5, SuiteName::A5)
                | (SuiteArg::Funfield, SuiteName::Funfield)
        )
    }
}
