//! Command-line front end: conformance checks, lifting and projection, test
//! generation and execution, the oracle batteries, and DOT export.
//!
//! Exit codes: 0 on conformance/pass/success, 1 when a check fails (the
//! witness is printed), 2 on usage or parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tioco::format::{parse, serialize_lts, serialize_ta, serialize_test, serialize_timed_test, Model};
use tioco::lab::{check_theorems, LtsParams, OracleBatch};
use tioco::testing::{
    generate_tests, lift_test, run_test_lts, run_test_ta, GenerationMode, TimedVerdict, Verdict,
};
use tioco::{
    check_ioco, check_tioco_m, check_tioco_via_projection, export_dot, lift, project_ta,
    ConformanceVerdict, Rational, TimedConformanceVerdict,
};

#[derive(Parser)]
#[command(
    name = "tioco",
    version,
    about = "Conformance checking and test generation for transition systems, \
             with single-clock timed lifting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Via {
    /// Decide over the symbolic delay quotient.
    Symbolic,
    /// Project both automata and decide the untimed relation.
    Projection,
}

#[derive(Subcommand)]
enum Command {
    /// Check untimed conformance of an implementation against a specification
    CheckIoco {
        /// Implementation model (`lts`, input-enabled)
        imp: PathBuf,
        /// Specification model (`lts`)
        spec: PathBuf,
    },
    /// Check timed conformance between canonic timed automata
    CheckTioco {
        #[arg(long, value_enum, default_value_t = Via::Symbolic)]
        via: Via,
        /// Implementation automaton (`ta`, input-enabled)
        imp: PathBuf,
        /// Specification automaton (`ta`)
        spec: PathBuf,
    },
    /// Lift a transition system into its canonic timed automaton
    Lift {
        /// Quiescence bound M, a positive integer or fraction `p/q`
        #[arg(long)]
        m: Rational,
        model: PathBuf,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Project a canonic timed automaton back onto a transition system
    Project {
        model: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a test suite for a specification
    GenTests {
        /// Choice-point budget per test
        #[arg(long)]
        depth: usize,
        /// Draw random tests instead of the exhaustive suite
        #[arg(long)]
        random: bool,
        /// Seed for random mode
        #[arg(long, default_value_t = 0, requires = "random")]
        seed: u64,
        /// Number of draws in random mode
        #[arg(long, default_value_t = 10, requires = "random")]
        count: usize,
        /// Specification model (`lts`)
        spec: PathBuf,
        /// Directory for the generated `.lts` test files
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Lift an untimed test case into a timed one
    LiftTest {
        #[arg(long)]
        m: Rational,
        test: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run one test case against an implementation model
    RunTest {
        /// Test file (`test lts` or `test ta`)
        test: PathBuf,
        /// Implementation (`lts` or `ta`, matching the test)
        imp: PathBuf,
    },
    /// Run every test file in a directory against an implementation
    RunSuite {
        dir: PathBuf,
        imp: PathBuf,
    },
    /// Machine-check the conformance and test-correspondence properties on
    /// batches of random models
    VerifyTheorems {
        #[arg(long, default_value_t = 200)]
        cases: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Test-suite depth used by the suite and verdict oracles
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Bounds to sample, comma separated
        #[arg(long = "m-set", default_value = "1,3/2,5")]
        m_set: String,
        #[arg(long, default_value_t = 6)]
        max_states: usize,
        #[arg(long, default_value_t = 2)]
        inputs: usize,
        #[arg(long, default_value_t = 2)]
        outputs: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        /// Deliberately drop δ self-loops from lifted models; the batch must
        /// then report counterexamples
        #[arg(long)]
        inject_bug: bool,
    },
    /// Export a model as a Graphviz DOT graph
    ExportDot {
        model: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_model(path: &Path) -> Result<Model, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_lts(path: &Path) -> Result<tioco::Lts, String> {
    match read_model(path)? {
        Model::Lts(m) => Ok(m),
        _ => Err(format!("{}: expected an `lts` model", path.display())),
    }
}

fn read_ta(path: &Path) -> Result<tioco::TimedAutomaton, String> {
    match read_model(path)? {
        Model::TimedAutomaton(ta) => Ok(ta),
        _ => Err(format!("{}: expected a `ta` model", path.display())),
    }
}

fn write_output(output: Option<&Path>, content: &str) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, content).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn format_set<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let body: Vec<String> = items.into_iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", body.join(", "))
}

fn report_untimed(verdict: &ConformanceVerdict) -> ExitCode {
    match verdict {
        ConformanceVerdict::Conforms => {
            println!("conforms");
            ExitCode::SUCCESS
        }
        ConformanceVerdict::Fails { witness, offending } => {
            println!("fails");
            println!("witness: {witness}");
            println!("offending: {}", format_set(offending.iter()));
            ExitCode::from(1)
        }
    }
}

fn report_timed(verdict: &TimedConformanceVerdict) -> ExitCode {
    match verdict {
        TimedConformanceVerdict::Conforms => {
            println!("conforms");
            ExitCode::SUCCESS
        }
        TimedConformanceVerdict::Fails { witness, offending } => {
            println!("fails");
            println!("witness: {witness}");
            println!("offending: {}", format_set(offending.iter()));
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::CheckIoco { imp, spec } => {
            let imp = read_lts(&imp)?;
            let spec = read_lts(&spec)?;
            let verdict = check_ioco(&imp, &spec).map_err(|e| e.to_string())?;
            Ok(report_untimed(&verdict))
        }
        Command::CheckTioco { via, imp, spec } => {
            let imp = read_ta(&imp)?;
            let spec = read_ta(&spec)?;
            let verdict = match via {
                Via::Symbolic => check_tioco_m(&imp, &spec),
                Via::Projection => check_tioco_via_projection(&imp, &spec),
            }
            .map_err(|e| e.to_string())?;
            Ok(report_timed(&verdict))
        }
        Command::Lift { m, model, output } => {
            let lts = read_lts(&model)?;
            let ta = lift(&lts, m).map_err(|e| e.to_string())?;
            write_output(output.as_deref(), &serialize_ta(&ta))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Project { model, output } => {
            let ta = read_ta(&model)?;
            let lts = project_ta(&ta).map_err(|e| e.to_string())?;
            let text = serialize_lts(&lts).map_err(|e| e.to_string())?;
            write_output(output.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::GenTests {
            depth,
            random,
            seed,
            count,
            spec,
            output,
        } => {
            let spec = read_lts(&spec)?;
            let mode = if random {
                GenerationMode::Random { seed, count }
            } else {
                GenerationMode::Exhaustive
            };
            let suite = generate_tests(&spec, depth, mode).map_err(|e| e.to_string())?;
            fs::create_dir_all(&output).map_err(|e| format!("{}: {e}", output.display()))?;
            for (index, test) in suite.iter().enumerate() {
                let path = output.join(format!("t{index:04}.lts"));
                fs::write(&path, serialize_test(test))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            println!("wrote {} tests to {}", suite.len(), output.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::LiftTest { m, test, output } => {
            let test = match read_model(&test)? {
                Model::Test(t) => t,
                _ => return Err(format!("{}: expected a `test lts` file", test.display())),
            };
            let lifted = lift_test(&test, m).map_err(|e| e.to_string())?;
            write_output(output.as_deref(), &serialize_timed_test(&lifted))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::RunTest { test, imp } => {
            match (read_model(&test)?, read_model(&imp)?) {
                (Model::Test(test), Model::Lts(imp)) => {
                    match run_test_lts(&test, &imp).map_err(|e| e.to_string())? {
                        Verdict::Pass => {
                            println!("pass");
                            Ok(ExitCode::SUCCESS)
                        }
                        Verdict::Fail { witness } => {
                            println!("fail");
                            println!("witness: {witness}");
                            Ok(ExitCode::from(1))
                        }
                    }
                }
                (Model::TimedTest(test), Model::TimedAutomaton(imp)) => {
                    match run_test_ta(&test, &imp).map_err(|e| e.to_string())? {
                        TimedVerdict::Pass => {
                            println!("pass");
                            Ok(ExitCode::SUCCESS)
                        }
                        TimedVerdict::Fail { witness } => {
                            println!("fail");
                            println!("witness: {witness}");
                            Ok(ExitCode::from(1))
                        }
                    }
                }
                (Model::Test(_), _) => Err("an untimed test needs an `lts` implementation".into()),
                (Model::TimedTest(_), _) => Err("a timed test needs a `ta` implementation".into()),
                _ => Err("first argument must be a test file".into()),
            }
        }
        Command::RunSuite { dir, imp } => run_suite_command(&dir, &imp),
        Command::VerifyTheorems {
            cases,
            seed,
            depth,
            m_set,
            max_states,
            inputs,
            outputs,
            density,
            inject_bug,
        } => {
            let mut m_samples = Vec::new();
            for part in m_set.split(',') {
                let m: Rational = part
                    .trim()
                    .parse()
                    .map_err(|e| format!("--m-set: {e}"))?;
                if !m.is_positive() {
                    return Err(format!("--m-set: bound `{m}` must be positive"));
                }
                m_samples.push(m);
            }
            let batch = OracleBatch {
                n_cases: cases as usize,
                seed,
                params: LtsParams {
                    max_states,
                    n_inputs: inputs,
                    n_outputs: outputs,
                    edge_density: density,
                },
                m_samples,
                depth,
                inject_bug,
                ..OracleBatch::default()
            };
            let report = check_theorems(&batch).map_err(|e| e.to_string())?;
            print!("{}", report.text);
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::ExportDot { model, output } => {
            let model = read_model(&model)?;
            write_output(output.as_deref(), &export_dot(&model))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_suite_command(dir: &Path, imp: &Path) -> Result<ExitCode, String> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            matches!(
                p.extension().and_then(|e| e.to_str()),
                Some("lts") | Some("ta")
            )
        })
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(format!("{}: no .lts or .ta test files found", dir.display()));
    }
    let imp_model = read_model(imp)?;
    let mut failed = 0usize;
    for path in &files {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        match (read_model(path)?, &imp_model) {
            (Model::Test(test), Model::Lts(imp)) => {
                match run_test_lts(&test, imp).map_err(|e| format!("{name}: {e}"))? {
                    Verdict::Pass => println!("{name}: pass"),
                    Verdict::Fail { witness } => {
                        println!("{name}: fail (witness: {witness})");
                        failed += 1;
                    }
                }
            }
            (Model::TimedTest(test), Model::TimedAutomaton(imp)) => {
                match run_test_ta(&test, imp).map_err(|e| format!("{name}: {e}"))? {
                    TimedVerdict::Pass => println!("{name}: pass"),
                    TimedVerdict::Fail { witness } => {
                        println!("{name}: fail (witness: {witness})");
                        failed += 1;
                    }
                }
            }
            (Model::Test(_), _) => {
                return Err(format!("{name}: untimed test but the implementation is not an `lts`"))
            }
            (Model::TimedTest(_), _) => {
                return Err(format!("{name}: timed test but the implementation is not a `ta`"))
            }
            _ => return Err(format!("{name}: not a test file")),
        }
    }
    if failed == 0 {
        println!("suite: pass ({} tests)", files.len());
        Ok(ExitCode::SUCCESS)
    } else {
        println!("suite: fail ({failed} of {} failed)", files.len());
        Ok(ExitCode::from(1))
    }
}
