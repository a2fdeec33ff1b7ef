//! `pronormal`: decide pronormality of permutation subgroups, enumerate
//! odd-index subgroups, query the simple-group classification and run the
//! reproduction scenarios.
//!
//! Exit codes: 0 success or pronormal, 1 not pronormal or a failed scenario,
//! 2 usage, parse or precondition error, 3 cap exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pronormal_core::construct::{realize, BuiltGroup, GroupSpec};
use pronormal_core::engine::{Caps, Permutation, PermutationGroup};
use pronormal_core::oracle::{classification_oracle, odd_index_subgroups, SimpleGroupId};
use pronormal_core::pronormal::{is_pronormal, is_pronormal_odd, reduction_pronormal, Verdict};
use pronormal_core::repro::{list_scenarios, run_all, scenario_claim, ReproConfig, REPRO_SEED};
use pronormal_core::GroupError;

#[derive(Parser, Debug)]
#[command(
    name = "pronormal",
    version,
    about = "Pronormality of subgroups of finite permutation groups"
)]
struct Cli {
    /// Seed for the randomized reproduction suites.
    #[arg(long, global = true, default_value_t = REPRO_SEED)]
    seed: u64,
    /// Largest join <H, H^g> a pronormality test searches.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_join: Option<u64>,
    /// Largest group order for exhaustive audits.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_order: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a group from a spec.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Decide whether a subgroup is pronormal.
    Pronormal {
        #[command(subcommand)]
        action: PronormalAction,
    },
    /// Odd-index subgroups of a group.
    Oddindex {
        #[command(subcommand)]
        action: OddindexAction,
    },
    /// Classification status of a simple group, e.g. '{"family":"PSp","n":3,"q":3}'.
    Oracle { id: String },
    /// Reproduction scenarios.
    Repro {
        #[command(subcommand)]
        action: ReproAction,
    },
}

#[derive(Subcommand, Debug)]
enum GroupAction {
    /// Print degree, order and distinguished subgroups.
    Eval { spec: String },
}

#[derive(Subcommand, Debug)]
enum PronormalAction {
    Check(CheckArgs),
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Group spec as inline JSON or a path to a JSON file.
    spec: String,
    /// Subgroup generators as a JSON list of 0-based image arrays, or the
    /// name of a distinguished subgroup such as `top`.
    subgroup: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Definition)]
    method: MethodArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Definition,
    Normsyl,
    Reduction,
}

#[derive(Subcommand, Debug)]
enum OddindexAction {
    /// List the overgroups of a Sylow 2-subgroup.
    Enumerate {
        spec: String,
        /// Also decide pronormality of one subgroup per conjugacy class.
        #[arg(long)]
        pronormal: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ReproAction {
    /// Run the scenarios whose names contain the filter.
    Run {
        #[arg(long)]
        filter: Option<String>,
        /// Include scenarios that are off by default.
        #[arg(long)]
        optional: bool,
    },
    /// List scenario names and claims.
    List,
}

/// What a command produced and the exit code it earned.
struct Output {
    value: Value,
    text: String,
    code: u8,
}

impl Output {
    fn new(value: Value, code: u8) -> Self {
        let text = to_text(&value);
        Output { value, text, code }
    }
}

enum Failure {
    Usage(String),
    Group(GroupError),
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        Failure::Group(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Group(e) if e.is_cap() => 3,
            _ => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Group(e) => e.to_string(),
        }
    }
}

fn caps(cli: &Cli) -> Caps {
    let mut caps = Caps::default();
    if let Some(j) = cli.cap_join {
        caps.join_order = j;
    }
    if let Some(o) = cli.cap_order {
        caps.audit_order = o;
    }
    caps
}

/// Inline JSON, or the contents of the named file.
fn json_arg(arg: &str) -> Result<String, Failure> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') || !Path::new(arg).is_file() {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("cannot read {arg}: {e}")))
}

fn build(spec: &str) -> Result<(GroupSpec, BuiltGroup), Failure> {
    let spec = GroupSpec::from_json(&json_arg(spec)?)?;
    let built = realize(&spec)?;
    Ok((spec, built))
}

fn subgroup(built: &BuiltGroup, arg: &str) -> Result<PermutationGroup, Failure> {
    let text = json_arg(arg)?;
    if !text.trim_start().starts_with('[') {
        return Ok(built.handle(text.trim())?.clone());
    }
    let gens: Vec<Permutation> = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("bad generator list: {e}")))?;
    let degree = built.group.degree();
    if let Some(bad) = gens.iter().find(|x| x.degree() != degree) {
        return Err(GroupError::DegreeMismatch {
            expected: degree,
            found: bad.degree(),
        }
        .into());
    }
    if let Some(bad) = gens.iter().position(|x| !built.group.contains(x)) {
        return Err(Failure::Usage(format!(
            "generator {bad} is not in the group"
        )));
    }
    Ok(PermutationGroup::new(degree, gens)?)
}

fn group_eval(spec: &str) -> Result<Output, Failure> {
    let (spec, built) = build(spec)?;
    let summary = serde_json::to_value(built.summary()).expect("summaries serialize");
    Ok(Output::new(json!({ "spec": spec, "group": summary }), 0))
}

fn pronormal_check(args: &CheckArgs, caps: &Caps) -> Result<Output, Failure> {
    let (spec, built) = build(&args.spec)?;
    let g = &built.group;
    let h = subgroup(&built, &args.subgroup)?;
    let verdict: Verdict = match args.method {
        MethodArg::Definition => is_pronormal(g, &h, caps)?,
        MethodArg::Normsyl => is_pronormal_odd(g, &h, caps)?,
        MethodArg::Reduction => reduction_pronormal(g, &h, caps)?,
    };
    let code = if verdict.is_pronormal() { 0 } else { 1 };
    let value = json!({
        "spec": spec,
        "group_order": g.order().to_string(),
        "subgroup_order": h.order().to_string(),
        "index": (g.order() / h.order()).to_string(),
        "verdict": verdict,
    });
    Ok(Output::new(value, code))
}

fn oddindex(spec: &str, decide: bool, caps: &Caps) -> Result<Output, Failure> {
    let (spec, built) = build(spec)?;
    let g = &built.group;
    let list = odd_index_subgroups(g, caps)?;
    let mut rows = Vec::new();
    for (i, s) in list.subgroups.iter().enumerate() {
        let mut row = json!({
            "order": s.group.order().to_string(),
            "index": s.index.to_string(),
            "class": s.class,
            "generators": s.group.generators(),
        });
        if decide && s.class == i {
            row["pronormal"] = json!(is_pronormal_odd(g, &s.group, caps)?.is_pronormal());
        }
        rows.push(row);
    }
    let value = json!({
        "spec": spec,
        "group_order": g.order().to_string(),
        "sylow_order": list.sylow.order().to_string(),
        "classes": list.class_reps().count(),
        "subgroups": rows,
    });
    Ok(Output::new(value, 0))
}

fn oracle(id: &str) -> Result<Output, Failure> {
    let id = SimpleGroupId::from_json(&json_arg(id)?)?;
    let status = classification_oracle(&id)?;
    Ok(Output::new(
        json!({ "id": id, "status": status.status, "citation": status.citation }),
        0,
    ))
}

fn repro_run(filter: Option<&str>, optional: bool, cli: &Cli) -> Result<Output, Failure> {
    let config = ReproConfig {
        seed: cli.seed,
        caps: caps(cli),
        optional,
    };
    let report = run_all(filter, &config);
    if report.results.is_empty() {
        return Err(GroupError::UnknownScenario(filter.unwrap_or_default().to_string()).into());
    }
    let mut text = String::new();
    for r in &report.results {
        let status = serde_json::to_value(r.status).expect("statuses serialize");
        text.push_str(&format!(
            "{:<32} {:<8} {} ms\n",
            r.name,
            status.as_str().unwrap_or_default(),
            r.elapsed_ms
        ));
    }
    text.push_str(&report.summary_line());
    text.push('\n');
    let code = if report.all_passed() { 0 } else { 1 };
    let value = serde_json::to_value(&report).expect("reports serialize");
    Ok(Output { value, text, code })
}

fn repro_list() -> Result<Output, Failure> {
    let mut rows = Vec::new();
    let mut text = String::new();
    for name in list_scenarios() {
        let claim = scenario_claim(name)?;
        text.push_str(&format!("{name:<32} {claim}\n"));
        rows.push(json!({ "name": name, "claim": claim }));
    }
    Ok(Output {
        value: Value::Array(rows),
        text,
        code: 0,
    })
}

/// Flattens JSON into `path: value` lines.
fn to_text(value: &Value) -> String {
    fn walk(v: &Value, path: &str, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let p = if path.is_empty() {
                        k.clone()
                    } else {
                        format!("{path}.{k}")
                    };
                    walk(x, &p, out);
                }
            }
            Value::Array(items) if items.iter().any(|x| x.is_object()) => {
                for (i, x) in items.iter().enumerate() {
                    walk(x, &format!("{path}[{i}]"), out);
                }
            }
            Value::String(s) => out.push_str(&format!("{path}: {s}\n")),
            other => out.push_str(&format!("{path}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk(value, "", &mut out);
    out
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    let caps = caps(cli);
    match &cli.command {
        Command::Group {
            action: GroupAction::Eval { spec },
        } => group_eval(spec),
        Command::Pronormal {
            action: PronormalAction::Check(args),
        } => pronormal_check(args, &caps),
        Command::Oddindex {
            action: OddindexAction::Enumerate { spec, pronormal },
        } => oddindex(spec, *pronormal, &caps),
        Command::Oracle { id } => oracle(id),
        Command::Repro {
            action: ReproAction::Run { filter, optional },
        } => repro_run(filter.as_deref(), *optional, cli),
        Command::Repro {
            action: ReproAction::List,
        } => repro_list(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.code());
        }
    };
    let rendered = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&output.value).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Text => output.text,
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(output.code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_flattens_nested_objects() {
        let v = json!({"a": {"b": 1, "c": "x"}, "rows": [{"d": true}], "gens": [[1, 0]]});
        assert_eq!(
            to_text(&v),
            "a.b: 1\na.c: x\ngens: [[1,0]]\nrows[0].d: true\n"
        );
    }

    #[test]
    fn inline_json_is_not_a_path() {
        assert_eq!(
            json_arg(r#"{"sym":3}"#).ok(),
            Some(r#"{"sym":3}"#.to_string())
        );
        assert_eq!(json_arg("top").ok(), Some("top".to_string()));
    }

    #[test]
    fn cap_errors_map_to_3() {
        assert_eq!(Failure::Group(GroupError::cap("join order", 5)).code(), 3);
        assert_eq!(Failure::Group(GroupError::NotSubgroup).code(), 2);
        assert_eq!(Failure::Usage("x".into()).code(), 2);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
