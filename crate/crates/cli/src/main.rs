use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use spencer_cli::corpus;
use spencer_cli::parser::{parse, parse_frame, SystemDocument};
use spencer_cli::report::{analyze, to_text, AnalysisOptions};
use spencer_core::completion::{complete, DEFAULT_MAX_STEPS};
use spencer_core::hilbert::{hilbert_function, principal_class_series};
use spencer_core::inverse::{default_max_order, inverse_system};
use spencer_core::purity::is_pure;
use spencer_core::spencer::{is_involutive_symbol, InvolutionOptions};

const EXIT_INCONCLUSIVE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "spencer", version, about = "Formal analysis of linear PDE systems with constant coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    report: Format,
    /// Seed for the random frames tried by the involution test.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Frame to try first, as rows `a,b,c;d,e,f;...`.
    #[arg(long)]
    frame: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of a system file (`-` reads standard input).
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Involution test of the completed system at a given order.
    Involution {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Order of the symbol; defaults to the order of the completed system.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Hilbert function of a system file, or the series of a principal class.
    Hilbert {
        file: Option<PathBuf>,
        #[arg(long)]
        vars: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<usize>,
        #[arg(long, default_value_t = 8)]
        trunc: usize,
        #[arg(long, value_enum, default_value = "text")]
        report: Format,
    },
    /// Inverse system and modular equations of a finite-type system.
    Inverse {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        report: Format,
    },
    /// Codimension, localization and torsion.
    Purity {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Built-in worked examples.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    List,
    /// Runs one example by name, or `all`.
    Run {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        report: Format,
    },
    /// Prints the source text of an example.
    Show { name: String },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure { code: EXIT_INPUT, message: message.to_string() }
    }
}

fn read_doc(path: &PathBuf) -> Result<SystemDocument, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(Failure::input)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
    };
    let shown = if path.as_os_str() == "-" { "<stdin>".into() } else { path.display().to_string() };
    parse(&text).map_err(|e| Failure::input(format!("{shown}: {e}")))
}

fn involution_options(common: &Common) -> Result<InvolutionOptions, Failure> {
    let frame = common.frame.as_deref().map(parse_frame).transpose().map_err(Failure::input)?;
    Ok(InvolutionOptions { frame, ..InvolutionOptions::with_seed(common.seed) })
}

fn emit(format: Format, value: serde_json::Value, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
        Format::Text => print!("{text}"),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze { file, common, max_steps } => {
            let doc = read_doc(&file)?;
            let opts = involution_options(&common)?;
            let report = analyze(&doc.system, &AnalysisOptions { seed: common.seed, frame: opts.frame, max_steps });
            match common.report {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", to_text(&report)),
            }
            Ok(if report.is_conclusive() { 0 } else { EXIT_INCONCLUSIVE })
        }
        Command::Involution { file, common, order } => {
            let doc = read_doc(&file)?;
            let opts = involution_options(&common)?;
            let rep = complete(&doc.system, DEFAULT_MAX_STEPS, &opts).map_err(Failure::input)?;
            let t = order.unwrap_or(rep.system.order().max(1));
            let v = is_involutive_symbol(&rep.system, t, &opts).map_err(Failure::input)?;
            let text = format!(
                "order {t} involutive={}\n  certificate {:?}\n  beta {:?}\n  alpha {:?}\n",
                v.involutive, v.certificate, v.tableau.beta, v.tableau.alpha
            );
            let value = json!({
                "order": t,
                "involutive": v.involutive,
                "certificate": v.certificate,
                "beta": v.tableau.beta,
                "alpha": v.tableau.alpha,
            });
            emit(common.report, value, text);
            Ok(0)
        }
        Command::Hilbert { file, vars, degrees, trunc, report } => {
            let series = match (file, vars) {
                (Some(path), _) => hilbert_function(&read_doc(&path)?.system, trunc),
                (None, Some(n)) => principal_class_series(&degrees, n, trunc).map_err(Failure::input)?,
                (None, None) => return Err(Failure::input("give a system file or --vars with --degrees")),
            };
            emit(report, json!({ "coefficients": series.coefficients, "sum": series.sum() }), format!("{series}\n"));
            Ok(0)
        }
        Command::Inverse { file, report } => {
            let doc = read_doc(&file)?;
            let sys = &doc.system;
            let inv = inverse_system(sys, default_max_order(sys)).map_err(Failure::input)?;
            let parametric: Vec<String> = inv.parametric().iter().map(|j| sys.jet_label(j)).collect();
            let generators: Vec<String> = inv.top_generators().iter().map(|e| inv.render(e)).collect();
            let socle: Vec<String> = inv
                .socle()
                .iter()
                .map(|v| v.iter().map(|(j, c)| format!("{c}*{}", sys.jet_label(j))).collect::<Vec<_>>().join(" + "))
                .collect();
            let mut text = format!("dim {}\nparametric {}\n", inv.dim(), parametric.join(", "));
            for g in &generators {
                text.push_str(&format!("{g}\n"));
            }
            text.push_str(&format!("socle {}\n", socle.join("; ")));
            let value = json!({ "dim": inv.dim(), "parametric": parametric, "generators": generators, "socle": socle });
            emit(report, value, text);
            Ok(0)
        }
        Command::Purity { file, common } => {
            let doc = read_doc(&file)?;
            let opts = involution_options(&common)?;
            let p = is_pure(&doc.system, &opts).map_err(Failure::input)?;
            let text = format!(
                "r={} pure={}\n  localized dim {:?}\n  localized parametric [{}]\n  torsion [{}]\n  companion torsion {:?}\n",
                p.codimension,
                p.pure,
                p.localized_dimension,
                p.localized_parametric.join(", "),
                p.torsion.join(", "),
                p.companion_torsion
            );
            let value = json!({
                "codimension": p.codimension,
                "pure": p.pure,
                "leading_character": p.leading_character,
                "localized_dimension": p.localized_dimension,
                "localized_parametric": p.localized_parametric,
                "torsion": p.torsion,
                "companion_torsion": p.companion_torsion,
            });
            emit(common.report, value, text);
            Ok(0)
        }
        Command::Examples { action } => examples(action),
    }
}

fn examples(action: ExamplesAction) -> Result<u8, Failure> {
    match action {
        ExamplesAction::List => {
            for ex in corpus::examples() {
                println!("{:<16} {}", ex.name, ex.title);
            }
            Ok(0)
        }
        ExamplesAction::Show { name } => {
            let ex = corpus::find(&name).ok_or_else(|| Failure::input(format!("no example named {name}")))?;
            println!("{}", ex.source.replace("; ", "\n"));
            Ok(0)
        }
        ExamplesAction::Run { name, seed, report } => {
            let selected = if name == "all" {
                corpus::examples()
            } else {
                vec![corpus::find(&name).ok_or_else(|| Failure::input(format!("no example named {name}")))?]
            };
            let results: Vec<_> = selected.iter().map(|ex| corpus::run(ex, seed)).collect();
            let ok = results.iter().all(|r| r.passed());
            match report {
                Format::Json => println!("{}", serde_json::to_string_pretty(&results).expect("json")),
                Format::Text => {
                    for r in &results {
                        let verdict = if r.passed() { "PASS" } else { "FAIL" };
                        println!("{verdict} {} ({} values) {}", r.name, r.checks.len(), r.title);
                        if let Some(e) = &r.error {
                            println!("  error: {e}");
                        }
                        for c in r.checks.iter().filter(|c| !c.passed()) {
                            println!("  {}: expected {}, got {} [{:?}]", c.key, c.expected, c.actual, c.origin);
                        }
                        for n in &r.notes {
                            println!("  note: {n}");
                        }
                    }
                }
            }
            Ok(if ok { 0 } else { EXIT_MISMATCH })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
