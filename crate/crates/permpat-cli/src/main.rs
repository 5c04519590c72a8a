use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permpat::classifier::{classify_kind_form, predict_levels_form, GroupForm};
use permpat::galois::{comp_set_with, pat_set, PermSet, Strategy};
use permpat::verifier::{verify_catalog, verify_laws, verify_onset, verify_prediction, Report, Status};
use permpat::{gcomp, Error, Limits, Notation, PermGroup, Permutation};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "permpat", version, about = "Pattern operators and Comp-level predictions for permutation groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest degree that will be enumerated.
    #[arg(long, global = true, env = "PERMPAT_MAX_DEGREE", default_value_t = 11, value_parser = clap::value_parser!(u64).range(1..=16))]
    max_degree: u64,
    /// Largest number of elements held for one set or group.
    #[arg(long, global = true, default_value_t = 500_000, value_parser = clap::value_parser!(u64).range(1..))]
    element_cap: u64,
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Sets larger than this are reported by size only.
    #[arg(long, global = true, default_value_t = 64)]
    print_cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Patterns of one length of a group or a single permutation.
    Pat {
        #[command(flatten)]
        source: Source,
        /// Degree for a permutation given in cycle notation.
        #[arg(long, requires = "perm")]
        degree: Option<usize>,
        /// Pattern length.
        #[arg(long)]
        level: usize,
    },
    /// Permutations of a higher degree all of whose patterns lie in a group.
    Comp {
        /// Group descriptor such as `A:5` or `gens:6:(1 2 3 4);(3 4 5 6)`.
        #[arg(long)]
        group: String,
        /// Target degree.
        #[arg(long)]
        to: usize,
        /// Candidate generation strategy.
        #[arg(long, value_enum, default_value_t = StrategyArg::Extension)]
        strategy: StrategyArg,
    },
    /// Structural class and predicted higher levels of a group.
    Classify {
        #[arg(long)]
        group: String,
        /// Number of levels to predict.
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Check predictions or structural laws against brute force.
    Verify {
        #[command(flatten)]
        target: VerifyTarget,
        /// Number of levels checked per group.
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Seed for the randomised law suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include wall-clock time per report (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Sizes and family memberships of successive levels.
    Levels {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Group descriptor.
    #[arg(long)]
    group: Option<String>,
    /// One-line permutation, or cycle notation together with `--degree`.
    #[arg(long)]
    perm: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct VerifyTarget {
    /// Verify every subgroup of `S_n`.
    #[arg(long)]
    catalog: Option<usize>,
    /// Verify one group.
    #[arg(long)]
    group: Option<String>,
    /// Run the structural law suites.
    #[arg(long)]
    laws: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Extension,
    FullScan,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: if e.is_cap() { 3 } else { 2 }, message: e.to_string() }
    }
}

impl From<permpat::PermError> for Failure {
    fn from(e: permpat::PermError) -> Self {
        Error::from(e).into()
    }
}

struct Ctx {
    limits: Limits,
    format: Format,
    print_cap: usize,
}

impl Ctx {
    fn set_json(&self, members: impl ExactSizeIterator<Item = Permutation>) -> Value {
        let size = members.len();
        let mut v = json!({ "size": size });
        if size <= self.print_cap {
            v["elements"] = json!(members.map(|p| p.format(Notation::OneLine)).collect::<Vec<_>>());
        }
        v
    }

    fn group_json(&self, g: &PermGroup) -> Value {
        let mut v = self.set_json(g.iter());
        v["order"] = v["size"].take();
        v.as_object_mut().unwrap().remove("size");
        v
    }

    fn form(&self, text: &str) -> Result<GroupForm, Failure> {
        GroupForm::from_str(text).map_err(Failure::from)
    }

    fn group(&self, text: &str) -> Result<PermGroup, Failure> {
        Ok(self.form(text)?.materialize(&self.limits)?)
    }
}

fn parse_perm(text: &str, degree: Option<usize>) -> Result<Permutation, Failure> {
    let p = match degree {
        Some(n) => Permutation::parse(text, Notation::Cycles, Some(n))?,
        None if text.trim_start().starts_with('(') => {
            return Err(Failure { code: 2, message: "cycle notation needs --degree".into() });
        }
        None => Permutation::parse_one_line(text)?,
    };
    Ok(p)
}

fn elements_text(v: &Value) -> String {
    match v.get("elements").and_then(Value::as_array) {
        Some(els) => els.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(" "),
        None => "(not listed)".into(),
    }
}

fn cmd_pat(ctx: &Ctx, source: &Source, degree: Option<usize>, level: usize) -> Result<String, Failure> {
    let (label, set) = match (&source.group, &source.perm) {
        (Some(d), _) => (d.clone(), PermSet::from_group(&ctx.group(d)?)),
        (_, Some(p)) => {
            let p = parse_perm(p, degree)?;
            (p.format(Notation::OneLine), PermSet::new(p.degree(), [p])?)
        }
        _ => unreachable!("clap requires one source"),
    };
    let pats = pat_set(&set, level)?;
    let generated = PermGroup::closure(&pats.members(), level, &ctx.limits)?;
    let out = json!({
        "source": label,
        "degree": set.degree(),
        "level": level,
        "patterns": ctx.set_json(pats.iter()),
        "generated": ctx.group_json(&generated),
    });
    Ok(match ctx.format {
        Format::Json => out.to_string(),
        Format::Text => format!(
            "Pat^{level}: {} permutations: {}\n<Pat^{level}>: order {}: {}",
            pats.len(),
            elements_text(&out["patterns"]),
            generated.order(),
            elements_text(&out["generated"])
        ),
    })
}

fn cmd_comp(ctx: &Ctx, group: &str, to: usize, strategy: StrategyArg) -> Result<String, Failure> {
    let g = ctx.group(group)?;
    let strategy = match strategy {
        StrategyArg::Extension => Strategy::Extension,
        StrategyArg::FullScan => Strategy::FullScan,
    };
    let set = comp_set_with(&PermSet::from_group(&g), to, strategy, &ctx.limits)?;
    let mut out = ctx.set_json(set.iter());
    out["group"] = json!(group);
    out["degree"] = json!(to);
    out["is_group"] = json!(set.is_group());
    Ok(match ctx.format {
        Format::Json => out.to_string(),
        Format::Text => format!(
            "Comp^{to}({group}): {} permutations{}: {}",
            set.len(),
            if set.is_group() { ", a group" } else { "" },
            elements_text(&out)
        ),
    })
}

fn cmd_classify(ctx: &Ctx, group: &str, depth: usize) -> Result<String, Failure> {
    if depth == 0 {
        return Err(Failure { code: 2, message: "depth must be at least 1".into() });
    }
    let form = ctx.form(group)?;
    let kind = classify_kind_form(&form, &ctx.limits)?;
    let predictions = predict_levels_form(&form, depth, &ctx.limits)?;
    let first = &predictions[0];
    let mut out = first.to_json(&ctx.limits, ctx.print_cap);
    out["group"] = json!(form.descriptor());
    out["kind"] = json!(kind);
    out["degree"] = json!(form.degree());
    out["levels"] = json!(predictions
        .iter()
        .enumerate()
        .map(|(i, p)| json!({
            "level": i + 1,
            "degree": p.degree,
            "next": p.next.to_json(&ctx.limits, ctx.print_cap),
            "citations": p.citations,
        }))
        .collect::<Vec<_>>());
    if ctx.format == Format::Json {
        return Ok(out.to_string());
    }
    let mut text = format!("{group}: {kind:?}\n");
    for p in &predictions {
        let next = match p.next.exact() {
            Some(f) => f.descriptor(),
            None => format!("between {} and {}", p.next.lower().descriptor(), p.next.upper().descriptor()),
        };
        let _ = writeln!(text, "degree {}: {next} [{}]", p.degree, p.citations.join(", "));
    }
    let _ = write!(text, "eventually {} from level {}", first.eventual, first.onset_bound);
    Ok(text)
}

fn report_line(ctx: &Ctx, r: &Report, timings: bool) -> String {
    match ctx.format {
        Format::Json => {
            let mut v = serde_json::to_value(r).expect("report serializes");
            if !timings {
                v.as_object_mut().expect("report is an object").remove("elapsed_ms");
            }
            v.to_string()
        }
        Format::Text => {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let mut line = format!("{status} {} {}", r.check_id, r.scope);
            if let Some(c) = &r.counterexample {
                let _ = write!(line, " counterexample {c}");
            }
            if let Some(n) = &r.note {
                let _ = write!(line, " ({n})");
            }
            if timings {
                let _ = write!(line, " {}ms", r.elapsed_ms);
            }
            line
        }
    }
}

fn cmd_verify(ctx: &Ctx, target: &VerifyTarget, depth: usize, seed: u64, timings: bool) -> Result<ExitCode, Failure> {
    let reports = if let Some(n) = target.catalog {
        verify_catalog(n, depth, &ctx.limits)?
    } else if let Some(d) = &target.group {
        let g = ctx.group(d)?;
        vec![verify_prediction(&g, depth, &ctx.limits), verify_onset(&g, &ctx.limits)]
    } else {
        verify_laws(seed)
    };
    for r in &reports {
        println!("{}", report_line(ctx, r, timings));
    }
    let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
    let skipped = reports.iter().filter(|r| r.status == Status::Skipped).count();
    if skipped > 0 {
        eprintln!("warning: {skipped} of {} checks skipped at the configured caps", reports.len());
    }
    if failed > 0 {
        eprintln!("error: {failed} of {} checks failed", reports.len());
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_levels(ctx: &Ctx, group: &str, depth: usize) -> Result<String, Failure> {
    let g = ctx.group(group)?;
    let mut rows = Vec::new();
    let mut prev = g.clone();
    for i in 1..=depth {
        let next = gcomp(&prev, prev.degree() + 1, &ctx.limits)?;
        let families: Vec<String> = permpat::classifier::family_labels(&next).iter().map(|f| f.to_string()).collect();
        rows.push(json!({ "level": i, "degree": next.degree(), "order": next.order(), "families": families }));
        prev = next;
    }
    let out = json!({ "group": group, "degree": g.degree(), "order": g.order(), "levels": rows });
    Ok(match ctx.format {
        Format::Json => out.to_string(),
        Format::Text => {
            let mut text = format!("{group}: order {}", g.order());
            for r in &rows {
                let families: Vec<&str> = r["families"].as_array().unwrap().iter().filter_map(Value::as_str).collect();
                let _ = write!(text, "\ndegree {}: order {} [{}]", r["degree"], r["order"], families.join(", "));
            }
            text
        }
    })
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let g = &cli.global;
    if let Some(t) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure { code: 2, message: e.to_string() })?;
    }
    let ctx = Ctx {
        limits: Limits { max_degree: g.max_degree as usize, element_cap: g.element_cap as usize },
        format: g.format,
        print_cap: g.print_cap,
    };
    let out = match &cli.command {
        Command::Pat { source, degree, level } => cmd_pat(&ctx, source, *degree, *level)?,
        Command::Comp { group, to, strategy } => cmd_comp(&ctx, group, *to, *strategy)?,
        Command::Classify { group, depth } => cmd_classify(&ctx, group, *depth)?,
        Command::Verify { target, depth, seed, timings } => return cmd_verify(&ctx, target, *depth, *seed, *timings),
        Command::Levels { group, depth } => cmd_levels(&ctx, group, *depth)?,
    };
    println!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
