//! `hnp`: knot groups, H^1(k, Pic Xbar) and weak-approximation defects for
//! norm-one tori, computed from finite group data (ambient group G,
//! subgroup H, ramified decomposition groups D_v).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use hnp::census::{census_run_with_budget, CensusReport};
use hnp::obstruction::{
    decide, elementary_2_example, f_gh, first_obstruction, h1_invariant, knot_norm_one,
    three_torsion_possible, wa_defect, witness_three_torsion,
};
use hnp::oracle::{sha_omega2_with_budget, DEFAULT_BUDGET};
use hnp::perm::Perm;
use hnp::tables::{small_group_name, verify_table, GoldenTable, RowOutcome, GOLDEN_TABLES};
use hnp::{Ambient, ExtensionProblem, PermGroup};

const SCHEMA: &str = "hnp/1";
const BUDGET_ENV: &str = "HNP_ORACLE_BUDGET";

#[derive(Parser)]
#[command(
    name = "hnp",
    version,
    about = "Hasse-norm-principle obstructions for norm-one tori from group data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// F(G,H) = (H meet [G,G]) / focal subgroup.
    Fgh(ProblemArgs),
    /// First obstruction from the ramified decomposition groups.
    Firstobs(ProblemArgs),
    /// Knot group (obstruction to the Hasse norm principle).
    Knot(ProblemArgs),
    /// H^1(k, Pic Xbar) (independent of ramification).
    H1(ProblemArgs),
    /// Weak-approximation defect.
    Wa(ProblemArgs),
    /// Knot group, H^1 and WA defect together, with the rule trace.
    Decide(ProblemArgs),
    /// Recompute appendix tables (a4 s4 a5 s5 a6 a7; default all) and diff
    /// against the embedded golden data; nonzero exit on any difference.
    Tables { names: Vec<String> },
    /// Transitive-group census for one degree (2..=6).
    Census { degree: usize },
    /// Brute-force Sha^2_omega(G, J_{G/H}) (cross-check; honors HNP_ORACLE_BUDGET).
    Oracle(ProblemArgs),
    /// Constructions: elementary 2-groups as F(S_n, H) and 3-torsion witnesses.
    Examples,
}

#[derive(Args)]
struct ProblemArgs {
    /// Ambient group, e.g. "A4" or "S5" (explicit groups go through --input).
    #[arg(long)]
    ambient: Option<String>,
    /// Generator of H in cycle notation, repeatable: --H "(1,2)" --H "(3,4)".
    #[arg(long = "H", value_name = "PERM", action = ArgAction::Append)]
    subgroup: Vec<String>,
    /// One ramified decomposition group as "[(1,2),(3,4)]"; repeatable.
    #[arg(long, value_name = "GROUP", action = ArgAction::Append)]
    ramified: Vec<String>,
    /// JSON problem file: {"ambient": {"n", "kind"} | {"generators", "degree"},
    /// "H": {"generators": [...]}, "ramified": [{"generators": [...]}, ...]}.
    #[arg(long)]
    input: Option<PathBuf>,
}

/// Domain errors exit 1; usage/schema errors exit 2.
enum CliError {
    Domain(String),
    Usage(String),
}

impl From<hnp::error::Error> for CliError {
    fn from(e: hnp::error::Error) -> CliError {
        CliError::Domain(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CliResult<ExitCode> {
    match &cli.command {
        Command::Fgh(args) => {
            let prob = build_problem(args)?;
            let v = f_gh(&prob.ambient, &prob.subgroup_h)?;
            emit_invariant(cli.format, "fgh", &prob, &v);
            Ok(ExitCode::SUCCESS)
        }
        Command::Firstobs(args) => {
            let prob = build_problem(args)?;
            let v = first_obstruction(&prob)?;
            emit_invariant(cli.format, "firstobs", &prob, &v);
            Ok(ExitCode::SUCCESS)
        }
        Command::Knot(args) => {
            let prob = build_problem(args)?;
            let v = knot_norm_one(&prob)?;
            emit_invariant(cli.format, "knot", &prob, &v);
            Ok(ExitCode::SUCCESS)
        }
        Command::H1(args) => {
            let prob = build_problem(args)?;
            let v = h1_invariant(&prob)?;
            emit_invariant(cli.format, "h1", &prob, &v);
            Ok(ExitCode::SUCCESS)
        }
        Command::Wa(args) => {
            let prob = build_problem(args)?;
            let h1 = h1_invariant(&prob)?;
            let knot = knot_norm_one(&prob)?;
            let v = wa_defect(&h1, &knot)?;
            emit_invariant(cli.format, "wa", &prob, &v);
            Ok(ExitCode::SUCCESS)
        }
        Command::Decide(args) => {
            let prob = build_problem(args)?;
            let report = decide(&prob)?;
            match cli.format {
                Format::Json => {
                    let payload = json!({
                        "schema": SCHEMA,
                        "command": "decide",
                        "problem": problem_json(&prob),
                        "result": serde_json::to_value(&report)
                            .expect("report serializes"),
                    });
                    println!("{}", payload);
                }
                Format::Text => {
                    println!("ambient  {}", prob.ambient.name());
                    println!("H        {}", subgroup_name(&prob.subgroup_h));
                    println!("knot     {}", report.knot.name());
                    println!("h1       {}", report.h1.name());
                    println!("wa       {}", report.wa_defect.name());
                    println!("rules    {}", report.rule_trace.join("; "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tables { names } => run_tables(cli.format, names),
        Command::Census { degree } => {
            let report = census_run_with_budget(*degree, budget_from_env()?)?;
            emit_census(cli.format, &report);
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle(args) => {
            let prob = build_problem(args)?;
            let g = ambient_group(&prob.ambient)?;
            let v = sha_omega2_with_budget(&g, &prob.subgroup_h, budget_from_env()?)?;
            emit_invariant(cli.format, "oracle", &prob, &v);
            Ok(ExitCode::SUCCESS)
        }
        Command::Examples => {
            run_examples(cli.format);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn budget_from_env() -> CliResult<u128> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s.parse::<u128>().map_err(|_| {
            CliError::Usage(format!("{} must be a nonnegative integer, got {:?}", BUDGET_ENV, s))
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn parse_ambient_name(text: &str) -> CliResult<Ambient> {
    let bad = || {
        CliError::Usage(format!(
            "ambient must look like \"S5\" or \"A6\", got {:?}",
            text
        ))
    };
    let (kind, digits) = text.split_at(1);
    let n: usize = digits.parse().map_err(|_| bad())?;
    match kind {
        "S" | "s" => Ok(Ambient::Sym(n)),
        "A" | "a" => Ok(Ambient::Alt(n)),
        _ => Err(bad()),
    }
}

/// Split "[(1,2)(3,4),(1,3)]" into perm strings at depth-zero commas.
fn split_group_list(text: &str) -> CliResult<Vec<String>> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| {
            CliError::Usage(format!("expected a bracketed list of permutations, got {:?}", text))
        })?;
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| CliError::Usage("unbalanced parentheses".into()))?;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() || parts.is_empty() {
        parts.push(cur);
    }
    Ok(parts.into_iter().map(|p| p.trim().to_string()).collect())
}

fn parse_perms(texts: &[String], degree: usize, what: &str) -> CliResult<Vec<Perm>> {
    texts
        .iter()
        .map(|t| {
            Perm::parse(t, degree)
                .map_err(|e| CliError::Usage(format!("{}: {:?}: {}", what, t, e)))
        })
        .collect()
}

fn build_problem(args: &ProblemArgs) -> CliResult<ExtensionProblem> {
    if let Some(path) = &args.input {
        if args.ambient.is_some() || !args.subgroup.is_empty() || !args.ramified.is_empty() {
            return Err(CliError::Usage(
                "--input cannot be combined with --ambient/--H/--ramified".into(),
            ));
        }
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {}", path.display(), e)))?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: invalid JSON: {}", path.display(), e)))?;
        return problem_from_json(&v);
    }
    let ambient_text = args
        .ambient
        .as_ref()
        .ok_or_else(|| CliError::Usage("--ambient (or --input) is required".into()))?;
    let ambient = parse_ambient_name(ambient_text)?;
    let degree = ambient.degree();
    let h_gens = parse_perms(&args.subgroup, degree, "--H")?;
    let h = PermGroup::generate(h_gens, degree)?;
    let mut ramified = Vec::new();
    for spec in &args.ramified {
        let texts = split_group_list(spec)?;
        let gens = parse_perms(&texts, degree, "--ramified")?;
        ramified.push(PermGroup::generate(gens, degree)?);
    }
    Ok(ExtensionProblem::new(ambient, h, ramified)?)
}

/// Schema errors carry JSON pointer paths.
fn problem_from_json(v: &Value) -> CliResult<ExtensionProblem> {
    let bad = |ptr: &str, msg: &str| CliError::Usage(format!("{}: {}", ptr, msg));
    let amb = v
        .get("ambient")
        .ok_or_else(|| bad("/ambient", "missing"))?;
    let ambient = if let Some(kind) = amb.get("kind") {
        let kind = kind
            .as_str()
            .ok_or_else(|| bad("/ambient/kind", "must be \"S\" or \"A\""))?;
        let n = amb
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("/ambient/n", "must be a positive integer"))?
            as usize;
        match kind {
            "S" => Ambient::Sym(n),
            "A" => Ambient::Alt(n),
            _ => return Err(bad("/ambient/kind", "must be \"S\" or \"A\"")),
        }
    } else if amb.get("generators").is_some() {
        let degree = amb
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("/ambient/degree", "must be a positive integer"))?
            as usize;
        let gens = json_generators(amb, "/ambient", degree)?;
        Ambient::Explicit(PermGroup::generate(gens, degree)?)
    } else {
        return Err(bad("/ambient", "needs either {n, kind} or {generators, degree}"));
    };
    let degree = ambient.degree();
    let h_obj = v.get("H").ok_or_else(|| bad("/H", "missing"))?;
    let h = PermGroup::generate(json_generators(h_obj, "/H", degree)?, degree)?;
    let mut ramified = Vec::new();
    if let Some(ram) = v.get("ramified") {
        let arr = ram
            .as_array()
            .ok_or_else(|| bad("/ramified", "must be an array of groups"))?;
        for (i, d) in arr.iter().enumerate() {
            let ptr = format!("/ramified/{}", i);
            let gens = json_generators(d, &ptr, degree)?;
            ramified.push(PermGroup::generate(gens, degree)?);
        }
    }
    Ok(ExtensionProblem::new(ambient, h, ramified)?)
}

fn json_generators(obj: &Value, ptr: &str, degree: usize) -> CliResult<Vec<Perm>> {
    let arr = obj
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| {
            CliError::Usage(format!("{}/generators: must be an array of cycle strings", ptr))
        })?;
    arr.iter()
        .enumerate()
        .map(|(i, s)| {
            let text = s.as_str().ok_or_else(|| {
                CliError::Usage(format!("{}/generators/{}: must be a string", ptr, i))
            })?;
            Perm::parse(text, degree).map_err(|e| {
                CliError::Usage(format!("{}/generators/{}: {}", ptr, i, e))
            })
        })
        .collect()
}

fn subgroup_name(h: &PermGroup) -> String {
    format!("{} (order {})", small_group_name(h), h.order())
}

fn problem_json(prob: &ExtensionProblem) -> Value {
    json!({
        "ambient": prob.ambient.name(),
        "H": {
            "name": small_group_name(&prob.subgroup_h),
            "generators": prob.subgroup_h.generators().iter()
                .map(|p| p.to_string()).collect::<Vec<_>>(),
        },
        "ramified": prob.ramified.iter().map(|d| json!({
            "name": small_group_name(d),
            "generators": d.generators().iter()
                .map(|p| p.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn emit_invariant(
    format: Format,
    command: &str,
    prob: &ExtensionProblem,
    v: &hnp::abelian::InvariantFactors,
) {
    match format {
        Format::Json => {
            let payload = json!({
                "schema": SCHEMA,
                "command": command,
                "problem": problem_json(prob),
                "result": serde_json::to_value(v).expect("invariant factors serialize"),
            });
            println!("{}", payload);
        }
        Format::Text => println!("{}", v.name()),
    }
}

fn run_tables(format: Format, names: &[String]) -> CliResult<ExitCode> {
    let selected: Vec<&'static GoldenTable> = if names.is_empty() {
        GOLDEN_TABLES.iter().collect()
    } else {
        names
            .iter()
            .map(|n| {
                hnp::tables::table_by_name(&n.to_lowercase())
                    .ok_or_else(|| CliError::Usage(format!("no table named {:?}", n)))
            })
            .collect::<CliResult<Vec<_>>>()?
    };
    let outcomes: Vec<(
        &'static GoldenTable,
        Result<Vec<RowOutcome>, hnp::error::Error>,
    )> = selected
        .par_iter()
        .map(|t| (*t, verify_table(t, t.cover_checkable())))
        .collect();
    let mut all_ok = true;
    let mut json_tables = Vec::new();
    for (table, result) in outcomes {
        let rows = result?;
        let table_ok = rows.iter().all(|r| r.matches);
        all_ok &= table_ok;
        match format {
            Format::Text => {
                println!(
                    "table {} (G = {}{})",
                    table.name,
                    table.kind,
                    table.degree
                );
                println!("{:>6}  {:<28} {:<10} {:<10} {:<10} {}", "[K:k]", "H", "golden", "computed", "cover", "ok");
                for r in &rows {
                    println!(
                        "{:>6}  {:<28} {:<10} {:<10} {:<10} {}",
                        r.row.index,
                        r.row.label,
                        r.row.expected().name(),
                        r.computed.name(),
                        r.cover_value.as_ref().map(|v| v.name()).unwrap_or_else(|| "-".into()),
                        if r.matches { "ok" } else { "DIFF" },
                    );
                }
            }
            Format::Json => {
                json_tables.push(json!({
                    "name": table.name,
                    "rows": rows.iter().map(|r| json!({
                        "index": r.row.index,
                        "label": r.row.label,
                        "golden": r.row.h1,
                        "computed": serde_json::to_value(&r.computed).unwrap(),
                        "cover": r.cover_value.as_ref()
                            .map(|v| serde_json::to_value(v).unwrap())
                            .unwrap_or(Value::Null),
                        "matches": r.matches,
                    })).collect::<Vec<_>>(),
                    "matches": table_ok,
                }));
            }
        }
    }
    if format == Format::Json {
        let payload = json!({
            "schema": SCHEMA,
            "command": "tables",
            "result": { "tables": json_tables, "matches": all_ok },
        });
        println!("{}", payload);
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn emit_census(format: Format, report: &CensusReport) {
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => {
            let payload = json!({
                "schema": SCHEMA,
                "command": "census",
                "result": serde_json::to_value(report).expect("census serializes"),
            });
            println!("{}", payload);
        }
    }
}

fn run_examples(format: Format) {
    let two: Vec<Value> = (1..=3usize)
        .map(|k| {
            let (n, gens) = elementary_2_example(k);
            json!({
                "rank": k,
                "group": "(Z/2)^".to_owned() + &k.to_string(),
                "symmetric_degree": n,
                "h_generators": gens.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let three: Vec<Value> = (5..=13usize)
        .filter(|&n| three_torsion_possible(n))
        .map(|n| {
            let w = witness_three_torsion(n).expect("witness exists when possible");
            json!({
                "alternating_degree": n,
                "generator": w.to_string(),
            })
        })
        .collect();
    match format {
        Format::Json => {
            let payload = json!({
                "schema": SCHEMA,
                "command": "examples",
                "result": {
                    "elementary_two_groups": two,
                    "three_torsion_witnesses": three,
                },
            });
            println!("{}", payload);
        }
        Format::Text => {
            println!("elementary 2-groups as F(S_n, H):");
            for e in &two {
                println!(
                    "  (Z/2)^{} = F(S_{}, <{}>)",
                    e["rank"],
                    e["symmetric_degree"],
                    e["h_generators"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|v| v.as_str().unwrap().to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
            println!("3-torsion witnesses F(A_n, <w>) (possible degrees up to 13):");
            for e in &three {
                println!(
                    "  n = {}: w = {}",
                    e["alternating_degree"],
                    e["generator"].as_str().unwrap()
                );
            }
        }
    }
}

fn ambient_group(ambient: &Ambient) -> CliResult<PermGroup> {
    match ambient {
        Ambient::Explicit(g) => Ok(g.clone()),
        Ambient::Sym(n) if *n <= 8 => Ok(PermGroup::symmetric(*n)),
        Ambient::Alt(n) if *n <= 8 => Ok(PermGroup::alternating(*n)),
        _ => Err(CliError::Domain(format!(
            "the oracle needs an enumerable ambient group; {} is too large",
            ambient.name()
        ))),
    }
}
