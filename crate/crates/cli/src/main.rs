// Copyright contributors to the zxcc project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! `zxcc`: evaluate, rewrite, replay and certify ZX diagrams, and verify
//! the [[8,3,2]] colour code.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use zxcc_core::code::{self, ObligationReport, OBLIGATIONS, RULES_OBLIGATION};
use zxcc_core::rewrite::{check_soundness_with, default_phase_samples};
use zxcc_core::semantics::{
    evaluate_with, proportional_equal, proportional_equal_float, EvalOptions, DEFAULT_ENTRY_CAP,
};
use zxcc_core::simproc::{certify_with, replay_all, run_with, DEFAULT_STEP_BUDGET};
use zxcc_core::{
    digest, Diagram, Error, ExactMatrix, Exec, FloatMatrix, ProofTrace, RuleLibrary, Simproc,
};

#[derive(Debug, Error)]
enum CliError {
    /// The property checked does not hold.
    #[error("{0}")]
    False(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::False(_) => 1,
            CliError::Usage(_) | CliError::Read { .. } => 2,
            CliError::Core(e) if e.is_resource() => 3,
            CliError::Core(
                Error::DigestMismatch { .. } | Error::StaleMatch(_) | Error::Certification(_),
            ) => 1,
            CliError::Core(_) => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "zxcc",
    version,
    about = "ZX-calculus rewriting for the [[8,3,2]] colour code"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ExecArgs {
    /// Run data-parallel loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

impl ExecArgs {
    fn exec(self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }
}

#[derive(Args)]
struct RulesArg {
    /// Rule library JSON to use instead of the shipped rules.
    #[arg(long, value_name = "FILE")]
    rules: Option<PathBuf>,
}

impl RulesArg {
    fn load(&self) -> CliResult<RuleLibrary> {
        match &self.rules {
            Some(p) => Ok(RuleLibrary::from_json_str(&read(p)?)?),
            None => Ok(RuleLibrary::builtin().clone()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the linear map of a diagram.
    Eval {
        file: PathBuf,
        /// Text matrix (the default).
        #[arg(long, conflicts_with = "json")]
        matrix: bool,
        #[arg(long)]
        json: bool,
        /// Render entries as floating point.
        #[arg(long)]
        float: bool,
        /// Largest intermediate tensor, in entries.
        #[arg(long, default_value_t = DEFAULT_ENTRY_CAP)]
        max_entries: usize,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Exit 0 iff two diagrams denote proportional maps.
    CheckProp {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_ENTRY_CAP)]
        max_entries: usize,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Run a strategy on a diagram.
    Simp {
        /// basic_simp, reduce_phase_free, push_pauli_x or push_pauli_z.
        #[arg(long = "proc", value_name = "NAME")]
        simproc: String,
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_STEP_BUDGET)]
        budget: usize,
        #[command(flatten)]
        rules: RulesArg,
    },
    /// Replay a trace from its initial diagram.
    Replay {
        trace: PathBuf,
        #[arg(long)]
        initial: PathBuf,
        /// Also check every step semantically.
        #[arg(long)]
        certify: bool,
        /// Write the final diagram here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        rules: RulesArg,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Replay a trace and check every step semantically.
    Certify {
        trace: PathBuf,
        #[arg(long)]
        initial: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        rules: RulesArg,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Check every rule for soundness.
    RulesCheck {
        #[arg(long, default_value_t = code::RULE_CHECK_ARITY)]
        arity: usize,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        rules: RulesArg,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// The colour code.
    Code {
        #[command(subcommand)]
        command: CodeCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    Enc,
    Dec,
    CnotL,
    CnotP,
    CczL,
    CczP,
}

impl Fixture {
    fn key(self) -> &'static str {
        match self {
            Fixture::Enc => "enc",
            Fixture::Dec => "dec",
            Fixture::CnotL => "cnot-l",
            Fixture::CnotP => "cnot-p",
            Fixture::CczL => "ccz-l",
            Fixture::CczP => "ccz-p",
        }
    }
}

#[derive(Subcommand)]
enum CodeCommand {
    /// Write one code diagram as JSON.
    Emit {
        #[arg(value_enum)]
        which: Fixture,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Regenerate the fixture directory.
    Fixtures { dir: PathBuf },
    /// Check proof obligations.
    Verify {
        #[arg(long, conflicts_with = "prop")]
        all: bool,
        /// One obligation, e.g. enc-dec or pauli-x1.
        #[arg(long, value_name = "NAME")]
        prop: Option<String>,
        #[arg(long)]
        json: bool,
        /// Write proof traces here.
        #[arg(long, value_name = "DIR")]
        trace_dir: Option<PathBuf>,
        #[command(flatten)]
        rules: RulesArg,
        #[command(flatten)]
        exec: ExecArgs,
    },
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, body: &str) -> CliResult<()> {
    std::fs::write(path, body).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn load_diagram(path: &Path) -> CliResult<Diagram> {
    Ok(Diagram::from_json_str(&read(path)?)?)
}

fn load_trace(path: &Path) -> CliResult<ProofTrace> {
    Ok(ProofTrace::from_json_str(&read(path)?)?)
}

fn options(max_entries: usize, exec: ExecArgs) -> EvalOptions {
    EvalOptions {
        entry_cap: max_entries,
        exec: exec.exec(),
        ..EvalOptions::default()
    }
}

fn exact_json(m: &ExactMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "exact": true, "entries": rows })
}

fn float_json(m: &FloatMatrix) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| {
                    let v = m.get(r, c);
                    [v.re, v.im]
                })
                .collect()
        })
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "exact": false, "entries": rows })
}

/// Exact when the phases allow it and `float` is not asked for.
fn evaluate(
    d: &Diagram,
    opts: &EvalOptions,
    float: bool,
) -> CliResult<Result<ExactMatrix, FloatMatrix>> {
    if !float && d.is_clifford_t() {
        Ok(Ok(evaluate_with(d, opts)?))
    } else {
        Ok(Err(evaluate_with(d, opts)?))
    }
}

fn cmd_eval(file: &Path, json_out: bool, float: bool, opts: EvalOptions) -> CliResult<String> {
    let d = load_diagram(file)?;
    let m = evaluate(&d, &opts, float)?;
    Ok(match (m, json_out) {
        (Ok(m), true) => format!("{}\n", exact_json(&m)),
        (Err(m), true) => format!("{}\n", float_json(&m)),
        (Ok(m), false) => m.to_string(),
        (Err(m), false) => m.render(),
    })
}

fn cmd_check_prop(a: &Path, b: &Path, json_out: bool, opts: EvalOptions) -> CliResult<String> {
    let (da, db) = (load_diagram(a)?, load_diagram(b)?);
    let (proportional, witness) = if da.is_clifford_t() && db.is_clifford_t() {
        let p = proportional_equal(&evaluate_with(&da, &opts)?, &evaluate_with(&db, &opts)?)?;
        (p.proportional, p.witness.map(|z| z.to_string()))
    } else {
        let (ma, mb): (FloatMatrix, FloatMatrix) =
            (evaluate_with(&da, &opts)?, evaluate_with(&db, &opts)?);
        (proportional_equal_float(&ma, &mb, 1e-9)?, None)
    };
    let out = if json_out {
        format!(
            "{}\n",
            json!({ "proportional": proportional, "witness": witness })
        )
    } else if proportional {
        match &witness {
            Some(z) => format!("proportional: A = {z} · B\n"),
            None => "proportional (floating point)\n".to_string(),
        }
    } else {
        "not proportional\n".to_string()
    };
    if proportional {
        Ok(out)
    } else {
        Err(CliError::False(out.trim_end().to_string()))
    }
}

fn cmd_simp(
    name: &str,
    input: &Path,
    output: &Path,
    trace_path: Option<&Path>,
    budget: usize,
    lib: &RuleLibrary,
) -> CliResult<String> {
    let s = Simproc::builtin(name)?;
    let d = load_diagram(input)?;
    let (out, trace) = match run_with(lib, &s, &d, budget) {
        Ok(r) => r,
        Err(Error::StepBudget { budget, trace }) => {
            if let Some(p) = trace_path {
                write(p, &(trace.to_json_string() + "\n"))?;
            }
            return Err(Error::StepBudget { budget, trace }.into());
        }
        Err(e) => return Err(e.into()),
    };
    write(output, &(out.to_json_string() + "\n"))?;
    if let Some(p) = trace_path {
        write(p, &(trace.to_json_string() + "\n"))?;
    }
    Ok(format!(
        "{s}\n{} steps, digest {}\n",
        trace.len(),
        digest(&out)
    ))
}

fn cmd_replay(
    trace: &Path,
    initial: &Path,
    certify: bool,
    output: Option<&Path>,
    lib: &RuleLibrary,
    exec: Exec,
) -> CliResult<String> {
    let t = load_trace(trace)?;
    let d = load_diagram(initial)?;
    let path = replay_all(lib, &t, &d)?;
    let last = path.last().unwrap();
    if let Some(expected) = t.final_diagram() {
        let expected = expected?;
        if !zxcc_core::iso_equal(&expected, last) {
            return Err(CliError::False(
                "replay does not end at the recorded final diagram".into(),
            ));
        }
    }
    let mut msg = format!("replayed {} steps, digest {}\n", t.len(), digest(last));
    if certify {
        let rep = certify_with(lib, &t, &d, exec)?;
        match &rep.failure {
            None => msg.push_str(&format!("certified {} steps\n", rep.steps.len())),
            Some(f) => {
                return Err(CliError::False(format!("step {} is not sound", f.step)));
            }
        }
    }
    if let Some(p) = output {
        write(p, &(last.to_json_string() + "\n"))?;
    }
    Ok(msg)
}

fn cmd_certify(
    trace: &Path,
    initial: &Path,
    json_out: bool,
    lib: &RuleLibrary,
    exec: Exec,
) -> CliResult<String> {
    let t = load_trace(trace)?;
    let d = load_diagram(initial)?;
    let rep = certify_with(lib, &t, &d, exec)?;
    let passed = rep.passed();
    let out = if json_out {
        format!(
            "{}\n",
            json!({
                "certified": passed,
                "steps": rep.steps,
                "failed_step": rep.failure.as_ref().map(|f| f.step),
            })
        )
    } else if passed {
        format!("certified {} steps\n", rep.steps.len())
    } else {
        format!("step {} is not sound\n", rep.failure.as_ref().unwrap().step)
    };
    if passed {
        Ok(out)
    } else {
        Err(CliError::False(out.trim_end().to_string()))
    }
}

fn cmd_rules_check(
    arity: usize,
    json_out: bool,
    lib: &RuleLibrary,
    exec: Exec,
) -> CliResult<String> {
    let phases = default_phase_samples();
    let mut out = String::new();
    let mut failed = Vec::new();
    for fam in lib.families() {
        let r = check_soundness_with(fam.base(), arity, &phases, exec);
        if !r.passed() {
            failed.push(r.rule.clone());
        }
        if json_out {
            let line = json!({
                "rule": r.rule,
                "instances": r.instances,
                "passed": r.passed(),
                "counterexamples": r.counterexamples.iter().map(|c| json!({
                    "counts": c.counts,
                    "reason": c.reason,
                    "assignment": c.assignment.iter().map(|(k, v)| (k.clone(), v.to_string())).collect::<std::collections::BTreeMap<_, _>>(),
                })).collect::<Vec<_>>(),
            });
            out.push_str(&format!("{line}\n"));
        } else {
            let mark = if r.passed() { "ok  " } else { "FAIL" };
            out.push_str(&format!(
                "{mark} {:<16} {} instances\n",
                r.rule, r.instances
            ));
            for c in &r.counterexamples {
                out.push_str(&format!(
                    "     counts {:?} {:?}: {}\n",
                    c.counts, c.assignment, c.reason
                ));
            }
        }
    }
    if failed.is_empty() {
        Ok(out)
    } else if json_out {
        // Full report, still failing.
        print!("{out}");
        Err(CliError::False(String::new()))
    } else {
        Err(CliError::False(format!(
            "{out}unsound: {}",
            failed.join(", ")
        )))
    }
}

fn cmd_code(command: CodeCommand) -> CliResult<String> {
    match command {
        CodeCommand::Emit { which, output } => {
            let all = code::fixtures()?;
            let d = &all[which.key()];
            write(&output, &(d.to_json_string() + "\n"))?;
            Ok(format!("wrote {}\n", output.display()))
        }
        CodeCommand::Fixtures { dir } => {
            let written = code::write_fixtures(RuleLibrary::builtin(), &dir)?;
            Ok(written
                .iter()
                .map(|p| format!("wrote {}\n", p.display()))
                .collect())
        }
        CodeCommand::Verify {
            all,
            prop,
            json,
            trace_dir,
            rules,
            exec,
        } => {
            let lib = rules.load()?;
            let exec = exec.exec();
            let mut reports: Vec<ObligationReport> = match (&prop, all) {
                (Some(name), _) => {
                    if name != RULES_OBLIGATION && !OBLIGATIONS.contains(&name.as_str()) {
                        return Err(CliError::Usage(format!(
                            "unknown obligation `{name}`; known: {}, {RULES_OBLIGATION}",
                            OBLIGATIONS.join(", ")
                        )));
                    }
                    vec![code::verify(&lib, name, exec)?]
                }
                (None, _) => code::run_all(&lib, exec, None)?,
            };
            if let Some(dir) = &trace_dir {
                code::write_traces(&mut reports, dir)?;
            }
            let out: String = if json {
                reports.iter().map(|r| r.to_json_line() + "\n").collect()
            } else {
                let mut s: String = reports.iter().map(|r| r.render_text()).collect();
                let passed = reports.iter().filter(|r| r.passed()).count();
                s.push_str(&format!("{passed}/{} obligations pass\n", reports.len()));
                s
            };
            if reports.iter().all(|r| r.passed()) {
                Ok(out)
            } else {
                print!("{out}");
                Err(CliError::False(String::new()))
            }
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Eval {
            file,
            matrix: _,
            json,
            float,
            max_entries,
            exec,
        } => cmd_eval(&file, json, float, options(max_entries, exec)),
        Command::CheckProp {
            a,
            b,
            json,
            max_entries,
            exec,
        } => cmd_check_prop(&a, &b, json, options(max_entries, exec)),
        Command::Simp {
            simproc,
            input,
            output,
            trace,
            budget,
            rules,
        } => cmd_simp(
            &simproc,
            &input,
            &output,
            trace.as_deref(),
            budget,
            &rules.load()?,
        ),
        Command::Replay {
            trace,
            initial,
            certify,
            output,
            rules,
            exec,
        } => cmd_replay(
            &trace,
            &initial,
            certify,
            output.as_deref(),
            &rules.load()?,
            exec.exec(),
        ),
        Command::Certify {
            trace,
            initial,
            json,
            rules,
            exec,
        } => cmd_certify(&trace, &initial, json, &rules.load()?, exec.exec()),
        Command::RulesCheck {
            arity,
            json,
            rules,
            exec,
        } => cmd_rules_check(arity, json, &rules.load()?, exec.exec()),
        Command::Code { command } => cmd_code(command),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let msg = e.to_string();
            if !msg.is_empty() {
                eprintln!("zxcc: {msg}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
