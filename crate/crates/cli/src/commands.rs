use std::collections::BTreeMap;
use std::fmt::Write as _;

use posetcode::decoder::{build_table, SyndromeTable};
use posetcode::io::parse_vector;
use posetcode::metric::{min_pdistance, pweight};
use posetcode::search::{
    hierarchy_bounds, lower_neighbour, primary_decomposition, upper_neighbour, Budgets,
    PDecomposition, SearchError,
};
use posetcode::verify::{self, SuiteConfig, SuiteReport};
use posetcode::{Decomposition, ElementSet, Field, LinearCode, Poset};
use serde_json::{json, Value};

use crate::input::{self, CliError, CliResult};
use crate::{
    AnalyzeCommand, Cli, Command, DecodeArgs, Format, PosetCode, PosetCommand, PosetSource,
    SuiteArgs, VerifyCommand,
};

pub fn run(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Poset(cmd) => poset(cli, cmd),
        Command::Analyze(cmd) => analyze(cli, cmd),
        Command::Decode(args) => decode(cli, args),
        Command::Verify(cmd) => verify(cli, cmd),
    }
}

fn budgets(cli: &Cli) -> CliResult<Budgets> {
    if cli.group_budget == 0 || cli.orbit_budget == 0 || cli.coset_budget == 0 {
        return Err(CliError::validation("budgets must be positive"));
    }
    Ok(Budgets {
        group: cli.group_budget,
        orbit: cli.orbit_budget,
    })
}

fn config(cli: &Cli) -> Value {
    json!({
        "group_budget": cli.group_budget.to_string(),
        "orbit_budget": cli.orbit_budget,
        "coset_budget": cli.coset_budget.to_string(),
        "seed": cli.seed,
    })
}

/// JSON output with the run configuration attached, or the text rendering.
fn emit(cli: &Cli, mut value: Value, text: impl FnOnce() -> String) -> String {
    match cli.format {
        Format::Json => {
            value["config"] = config(cli);
            format!(
                "{}\n",
                serde_json::to_string_pretty(&value).expect("JSON values serialize")
            )
        }
        Format::Text => text(),
    }
}

fn source(src: &PosetSource) -> CliResult<Poset> {
    match (&src.poset, &src.family) {
        (Some(p), None) | (None, Some(p)) => input::poset(p),
        _ => Err(CliError::validation("give a poset file or --family")),
    }
}

fn one_based(s: ElementSet) -> String {
    s.to_string()
}

fn type_text(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn span(code: &LinearCode) -> String {
    let rows: Vec<String> = code.generator().iter().map(|r| r.to_string()).collect();
    format!("span{{{}}}", rows.join(","))
}

fn poset(cli: &Cli, cmd: &PosetCommand) -> CliResult<String> {
    match cmd {
        PosetCommand::Info(src) => {
            let p = source(src)?;
            let ls = p.level_structure();
            let flags = p.hierarchy_flags().levels();
            let autos = p.automorphisms().ok().map(|a| a.len());
            let value = json!({
                "poset": p,
                "type": ls.type_vector(),
                "levels": ls.levels.iter().map(|l| l.to_one_based()).collect::<Vec<_>>(),
                "heights": ls.heights,
                "hierarchy_levels": flags,
                "hierarchical": p.is_hierarchical(),
                "automorphisms": autos,
            });
            Ok(emit(cli, value, || {
                let mut s = String::new();
                let covers: Vec<String> = p
                    .covers()
                    .iter()
                    .map(|(a, b)| format!("{}<{}", a + 1, b + 1))
                    .collect();
                let _ = writeln!(s, "n: {}", p.n());
                let _ = writeln!(s, "covers: {}", covers.join(" "));
                let _ = writeln!(s, "type: {}", type_text(&ls.type_vector()));
                let levels: Vec<String> = ls
                    .levels
                    .iter()
                    .enumerate()
                    .map(|(i, l)| format!("H{} = {}", i + 1, one_based(*l)))
                    .collect();
                let _ = writeln!(s, "levels: {}", levels.join(", "));
                let heights: Vec<String> = ls.heights.iter().map(usize::to_string).collect();
                let _ = writeln!(s, "heights: {}", heights.join(" "));
                let flagged: Vec<String> = flags.iter().map(usize::to_string).collect();
                let _ = writeln!(s, "H(P): {{{}}}", flagged.join(","));
                let _ = writeln!(s, "hierarchical: {}", p.is_hierarchical());
                if let Some(a) = autos {
                    let _ = writeln!(s, "automorphisms: {a}");
                }
                s
            }))
        }
        PosetCommand::Neighbours(src) => {
            let p = source(src)?;
            let (up, low) = (upper_neighbour(&p), lower_neighbour(&p));
            let (tu, tl) = (
                up.level_structure().type_vector(),
                low.level_structure().type_vector(),
            );
            let value = json!({"upper": up, "upper_type": tu, "lower": low, "lower_type": tl});
            Ok(emit(cli, value, || {
                format!(
                    "P+ hierarchical {}: {}\nP- hierarchical {}: {}\n",
                    type_text(&tu),
                    serde_json::to_string(&up).expect("serializable"),
                    type_text(&tl),
                    serde_json::to_string(&low).expect("serializable"),
                )
            }))
        }
        PosetCommand::Dot(src) => Ok(source(src)?.to_dot()),
        PosetCommand::Compare { a, b } => {
            let (pa, pb) = (input::poset(a)?, input::poset(b)?);
            let ab = pa.is_finer(&pb)?;
            let ba = pb.is_finer(&pa)?;
            Ok(emit(
                cli,
                json!({"a_finer_than_b": ab, "b_finer_than_a": ba}),
                || format!("A <= B: {ab}\nB <= A: {ba}\n"),
            ))
        }
    }
}

fn load(input: &PosetCode) -> CliResult<(Poset, LinearCode)> {
    let p = input::poset(&input.poset)?;
    let c = input::code(&input.code)?;
    if p.n() != c.n() {
        return Err(CliError::validation(format!(
            "poset on {} points, code of length {}",
            p.n(),
            c.n()
        )));
    }
    Ok((p, c))
}

fn analyze(cli: &Cli, cmd: &AnalyzeCommand) -> CliResult<String> {
    match cmd {
        AnalyzeCommand::Weight { input, x } => {
            let (p, c) = load(input)?;
            if let Some(x) = x {
                let v = parse_vector(c.field(), x)?;
                let w = pweight(&p, &v)?;
                return Ok(emit(cli, json!({"x": v, "weight": w}), || {
                    format!("w_P{v} = {w}\n")
                }));
            }
            let mut dist: BTreeMap<usize, u64> = BTreeMap::new();
            for word in c.codewords()? {
                *dist.entry(pweight(&p, &word)?).or_default() += 1;
            }
            Ok(emit(cli, json!({"distribution": dist}), || {
                dist.iter()
                    .map(|(w, k)| format!("weight {w}: {k}\n"))
                    .collect()
            }))
        }
        AnalyzeCommand::Mindist(input) => {
            let (p, c) = load(input)?;
            let d = min_pdistance(&p, &c)?;
            Ok(emit(cli, json!({"min_distance": d}), || {
                format!("delta_P = {d}\n")
            }))
        }
        AnalyzeCommand::Decompose { input, primary } => {
            let (p, c) = load(input)?;
            if !primary {
                let dec = Decomposition::maximal(&c);
                let value = json!({"decomposition": dec, "min_complexity_over_groupings": posetcode::decomposition::min_complexity_over_groupings(&c)});
                return Ok(emit(cli, value, || decomposition_text(&dec)));
            }
            match primary_decomposition(&c, &p, budgets(cli)?) {
                Ok(pd) => Ok(emit(cli, pdecomposition_json(&pd, true), || {
                    pdecomposition_text(&pd, true)
                })),
                Err(SearchError::Budget {
                    source,
                    best_so_far: Some(pd),
                }) => {
                    let dump = match cli.format {
                        Format::Json => {
                            serde_json::to_string_pretty(&pdecomposition_json(&pd, false))
                                .expect("serializable")
                        }
                        Format::Text => pdecomposition_text(&pd, false),
                    };
                    Err(CliError::budget(
                        format!("{source}; best decomposition so far is not proven minimal"),
                        Some(dump),
                    ))
                }
                Err(e) => Err(e.into()),
            }
        }
        AnalyzeCommand::Bounds(input) => {
            let (p, c) = load(input)?;
            let b = hierarchy_bounds(&c, &p, budgets(cli)?)?;
            let value = json!({
                "o_upper": b.o_upper,
                "o_p": if b.o_p_proven { json!(b.o_p) } else { Value::Null },
                "o_p_best_so_far": b.o_p,
                "o_p_proven": b.o_p_proven,
                "o_lower": b.o_lower,
                "sandwich_holds": b.sandwich_holds(),
                "upper": b.upper,
                "lower": b.lower,
            });
            Ok(emit(cli, value, || {
                let op = if b.o_p_proven {
                    b.o_p.to_string()
                } else {
                    format!("<= {} (budget exceeded)", b.o_p)
                };
                format!(
                    "O(P+) = {}\nO(P) = {op}\nO(P-) = {}\nsandwich holds: {}\n",
                    b.o_upper,
                    b.o_lower,
                    b.sandwich_holds()
                )
            }))
        }
    }
}

fn pdecomposition_json(pd: &PDecomposition, proven: bool) -> Value {
    let mut v = serde_json::to_value(pd).expect("serializable");
    v["proven_minimal"] = json!(proven);
    v
}

fn matrix_text(m: &[Vec<u32>]) -> String {
    m.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(u32::to_string).collect();
            format!("  {}\n", cells.join(" "))
        })
        .collect()
}

fn decomposition_text(dec: &Decomposition) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "code: {}", span(dec.code()));
    let _ = writeln!(s, "profile: {}", dec.profile());
    let _ = writeln!(s, "complexity: {}", dec.complexity());
    let _ = writeln!(s, "j0: {}", one_based(dec.j0()));
    for (i, c) in dec.components().iter().enumerate() {
        let _ = writeln!(
            s,
            "component {}: support {}, {}",
            i + 1,
            one_based(c.support()),
            span(c)
        );
    }
    s
}

fn pdecomposition_text(pd: &PDecomposition, proven: bool) -> String {
    let mut s = String::new();
    let note = if proven { "" } else { " (not proven minimal)" };
    let _ = writeln!(s, "complexity: {}{note}", pd.complexity());
    let sigma: Vec<String> = pd
        .witness()
        .induced_order_map()
        .images()
        .iter()
        .map(|i| (i + 1).to_string())
        .collect();
    let _ = writeln!(s, "witness sigma: {}", sigma.join(" "));
    let _ = write!(s, "witness A:\n{}", matrix_text(pd.witness().triangular()));
    s.push_str(&decomposition_text(pd.decomposition()));
    s
}

fn table_for(cli: &Cli, args: &DecodeArgs, p: &Poset, c: &LinearCode) -> CliResult<SyndromeTable> {
    if let Some(path) = args.table.as_deref().filter(|p| p.exists()) {
        let t = input::table(path)?;
        if t.code() != c || t.poset() != p {
            return Err(CliError::validation(format!(
                "{} was built for another poset or code",
                path.display()
            )));
        }
        return Ok(t);
    }
    let pd = primary_decomposition(c, p, budgets(cli)?)?;
    let t = build_table(&pd, p, cli.coset_budget)?;
    if let Some(path) = &args.table {
        let text = serde_json::to_string(&t).expect("serializable");
        std::fs::write(path, text)
            .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
    }
    Ok(t)
}

fn decode(cli: &Cli, args: &DecodeArgs) -> CliResult<String> {
    let (p, c) = load(&args.input)?;
    let table = table_for(cli, args, &p, &c)?;
    let stats = table.stats();
    let stats_text = format!(
        "table entries: {} over {} component(s), complexity {}, match: {}\n",
        stats.total,
        stats.components.len(),
        stats.complexity,
        stats.matches
    );
    if args.stats_only {
        return Ok(emit(cli, json!({"stats": stats}), || stats_text));
    }
    let y = parse_vector(c.field(), args.y.as_deref().expect("clap requires --y"))?;
    let out = table.decode(&y)?;
    let value = json!({"received": y, "codeword": out.codeword, "flags": out.flags.to_one_based(), "stats": stats});
    Ok(emit(cli, value, || {
        format!(
            "codeword: {}\nflags: {}\n{stats_text}",
            out.codeword,
            one_based(out.flags)
        )
    }))
}

fn suite_config(cli: &Cli, args: &SuiteArgs) -> CliResult<SuiteConfig> {
    Field::new(args.q)?;
    if args.n == 0 || args.samples == 0 {
        return Err(CliError::validation("--n and --samples must be positive"));
    }
    Ok(SuiteConfig {
        n: args.n,
        q: args.q,
        samples: args.samples,
        seed: cli.seed,
        budgets: budgets(cli)?,
    })
}

fn finish(cli: &Cli, report: SuiteReport, extra: Option<Value>) -> CliResult<String> {
    let mut value = serde_json::to_value(&report).expect("serializable");
    if let Some(extra) = extra.clone() {
        value["witness"] = extra;
    }
    let summary = format!(
        "suite {}: {} instances, {} checks, {} skipped, seed {}: {}\n",
        report.suite,
        report.instances,
        report.checks,
        report.skipped,
        report.config.seed,
        if report.passed() { "pass" } else { "FAIL" }
    );
    if !report.passed() {
        value["config"] = config(cli);
        let dump = serde_json::to_string_pretty(&value).expect("serializable");
        return Err(CliError::violation(
            format!(
                "{} violation(s) in suite {}",
                report.violations.len(),
                report.suite
            ),
            dump,
        ));
    }
    Ok(emit(cli, value, || {
        let mut s = summary;
        if let Some(w) = &extra {
            let _ = writeln!(s, "witness: {}", w["text"].as_str().unwrap_or_default());
        }
        for note in &report.notes {
            let _ = writeln!(s, "note: {note}");
        }
        s
    }))
}

fn verify(cli: &Cli, cmd: &VerifyCommand) -> CliResult<String> {
    match cmd {
        VerifyCommand::Metric(a) => finish(cli, verify::metric_suite(suite_config(cli, a)?)?, None),
        VerifyCommand::Partition { n } => finish(cli, verify::partition_suite(*n)?, None),
        VerifyCommand::Profile(a) => {
            finish(cli, verify::profile_suite(suite_config(cli, a)?)?, None)
        }
        VerifyCommand::Monotone(a) => {
            finish(cli, verify::monotone_suite(suite_config(cli, a)?)?, None)
        }
        VerifyCommand::Bounds(a) => finish(cli, verify::bounds_suite(suite_config(cli, a)?)?, None),
        VerifyCommand::RefinementWitness { p, q, field } => {
            let (pp, qq) = (input::poset(p)?, input::poset(q)?);
            let field = Field::new(*field)?;
            let (report, witness) =
                verify::refinement_witness_suite(&pp, &qq, field, budgets(cli)?)?;
            let extra = witness.map(|mut w| {
                let code: LinearCode =
                    serde_json::from_value(w["code"].clone()).expect("emitted code re-parses");
                w["text"] = json!(format!(
                    "{}  O_P = {}, O_Q = {}",
                    span(&code),
                    w["o_p"],
                    w["o_q"]
                ));
                w
            });
            finish(cli, report, extra)
        }
    }
}
