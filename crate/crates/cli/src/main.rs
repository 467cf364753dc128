use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use homkoszul::document::parse_field;
use homkoszul::{limits_from_env, parse_presentation, run_corpus, run_report, Bounds, CliError, Command, CorpusParams, Report};

#[derive(Parser)]
#[command(name = "homkoszul", version, about = "Koszulity checks for s-homogeneous algebras")]
struct Cli {
    /// Internal degree bound N (default 4s).
    #[arg(long, global = true)]
    max_deg: Option<usize>,
    /// Homological bound H.
    #[arg(long, global = true, default_value_t = 6)]
    hom_bound: usize,
    /// Ground field, `QQ` or `GF:p`; overrides the document.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Print the full JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Report wall_ms as 0 so that reruns are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Koszul verdict, extra and distributivity conditions, series residual.
    Check { input: PathBuf },
    /// The dual presentation.
    Dual { input: PathBuf },
    /// The associated triple, its axioms and round trip.
    Triple { input: PathBuf },
    /// Hilbert series coefficients.
    Hilbert {
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        terms: usize,
    },
    /// Seeded random presentations.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 2)]
    s_min: usize,
    #[arg(long, default_value_t = 3)]
    s_max: usize,
    #[arg(long, default_value_t = 2)]
    arrows_min: usize,
    #[arg(long, default_value_t = 3)]
    arrows_max: usize,
    #[arg(long, default_value_t = 1)]
    relations_min: usize,
    #[arg(long, default_value_t = 3)]
    relations_max: usize,
    #[arg(long, default_value_t = 1)]
    vertices_max: usize,
    #[arg(long, default_value_t = 0.25)]
    monomial_bias: f64,
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let field = cli.field.as_deref().map(parse_field).transpose()?;
    let bounds =
        Bounds { hom_bound: cli.hom_bound, max_deg: cli.max_deg, field, limits: limits_from_env()?, no_timing: cli.no_timing };
    let (input, command) = match cli.command {
        Cmd::Check { input } => (input, Command::Check),
        Cmd::Dual { input } => (input, Command::Dual),
        Cmd::Triple { input } => (input, Command::Triple),
        Cmd::Hilbert { input, terms } => (input, Command::Hilbert { terms }),
        Cmd::Corpus(a) => {
            let defaults = CorpusParams::default();
            let params = CorpusParams {
                s: (a.s_min, a.s_max),
                arrows: (a.arrows_min, a.arrows_max),
                relations: (a.relations_min, a.relations_max),
                vertices: (1, a.vertices_max.max(1)),
                monomial_bias: a.monomial_bias,
                field: field.unwrap_or(defaults.field),
                ..defaults
            };
            if params.s.0 < 2 || params.s.0 > params.s.1 || params.arrows.0 > params.arrows.1 || params.relations.0 > params.relations.1 {
                return Err(CliError::BadArgument("corpus ranges must satisfy 2 <= min <= max".into()));
            }
            return run_corpus(a.seed, a.count, &params, cli.no_timing);
        }
    };
    let doc = parse_presentation(&read_input(&input)?)?;
    run_report(&doc, command, &bounds)
}

fn text(report: &Report) -> String {
    match report.command.as_str() {
        "dual" => {
            let doc = &report.results[0].data["document"];
            serde_json::to_string_pretty(doc).expect("json") + "\n"
        }
        "corpus" => {
            report.results[0].data["documents"].as_array().into_iter().flatten().map(|d| format!("{d}\n")).collect()
        }
        "hilbert" => {
            let r = &report.results[0];
            match r.data.get("totals") {
                Some(t) => t.as_array().into_iter().flatten().map(|v| v.to_string()).collect::<Vec<_>>().join(",") + "\n",
                None => report.to_text(),
            }
        }
        _ => report.to_text(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            let out = if json { report.to_json() + "\n" } else { text(&report) };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
