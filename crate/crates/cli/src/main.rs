use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lambdaq_core::family::{appendix_row, ClassificationReport, Descriptor};
use lambdaq_core::module::DEFAULT_SCAN_BUDGET;
use lambdaq_core::verify::VerifyOptions;
use lambdaq_core::{Field, LambdaFamily, ProjPoint, Side};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "lambdaq", version, about = "Homological classification of local modules over Λ(q)")]
struct Cli {
    /// `Q` for the rationals or `Fp:<prime>`.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// The parameter q, an integer or fraction.
    #[arg(long, global = true, default_value = "2", allow_hyphen_values = true)]
    q: String,
    /// Depth for bounded semi-GP and ∞-torsionfree checks.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    depth: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest exhaustive scan, counted in subspaces.
    #[arg(long, global = true, default_value_t = DEFAULT_SCAN_BUDGET)]
    budget: u128,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// A point `a,b,c`; repeatable.
    #[arg(long = "point", global = true, allow_hyphen_values = true)]
    points: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = SideArg::Left)]
    side: SideArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form and computed properties of M(p) or M'(p); the default grid without --point.
    Classify,
    /// Iterated syzygies with the matching table entries.
    Syzygy {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Λ-duals against the duality tables.
    Dual,
    /// The Ω℧-quiver around the given seeds.
    Quiver,
    /// Row of the appendix classification.
    AppendixCase,
    /// Runs the verification suite.
    Verify {
        /// Restrict to these check ids; repeatable.
        #[arg(long = "check")]
        checks: Vec<u8>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

struct Rendered {
    text: String,
    json: Value,
    dot: Option<String>,
    failed: bool,
}

type CliResult<T> = Result<T, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(failed) => {
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CliResult<bool> {
    let field = Field::parse(&cli.field, &cli.q).map_err(|e| e.to_string())?;
    let fam = LambdaFamily::new(field);
    let points = cli
        .points
        .iter()
        .map(|s| fam.parse_point(s).map_err(|e| format!("point `{s}`: {e}")))
        .collect::<CliResult<Vec<ProjPoint>>>()?;
    let side = Side::from(cli.side);
    let depth = cli.depth as usize;
    let rendered = match &cli.command {
        Command::Classify => classify(&fam, &points, side, depth)?,
        Command::Syzygy { count } => syzygy(&fam, &points, side, *count as usize)?,
        Command::Dual => dual(&fam, &points, side)?,
        Command::Quiver => quiver(&fam, &points, side, depth)?,
        Command::AppendixCase => appendix(&fam, &points, side)?,
        Command::Verify { checks } => verify(&fam, checks, depth, cli.budget)?,
    };
    let body = match cli.format {
        Format::Text => rendered.text,
        Format::Json => {
            let mut doc = json!({
                "schema": 1,
                "field": fam.field().kind().to_string(),
                "q": fam.field().q().to_string(),
            });
            if let (Value::Object(head), Value::Object(rest)) = (&mut doc, rendered.json) {
                head.extend(rest);
            }
            serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())? + "\n"
        }
        Format::Dot => rendered.dot.ok_or("DOT output is only available for `quiver`")?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{body}"),
    }
    Ok(rendered.failed)
}

fn need_points(points: &[ProjPoint]) -> CliResult<()> {
    if points.is_empty() {
        Err("at least one --point is required".into())
    } else {
        Ok(())
    }
}

fn name(side: Side, p: &ProjPoint) -> String {
    Descriptor::Local { side, point: p.clone() }.to_string()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn classify(fam: &LambdaFamily, points: &[ProjPoint], side: Side, depth: usize) -> CliResult<Rendered> {
    let points = if points.is_empty() { fam.default_grid() } else { points.to_vec() };
    let mut text = String::new();
    let mut results = Vec::new();
    let mut failed = false;
    for p in &points {
        let closed = fam.classify_closed_form(p, side);
        let comp = fam.classify_computational(p, side, depth).map_err(|e| e.to_string())?;
        let diff = closed.disagreements(&comp);
        failed |= !diff.is_empty();
        writeln!(text, "{}", name(side, p)).unwrap();
        writeln!(text, "  {:<24}{:<8}computed (depth {depth})", "property", "closed").unwrap();
        for ((label, a), (_, b)) in closed.flags().iter().zip(comp.flags()) {
            writeln!(text, "  {label:<24}{:<8}{}", yes_no(*a), yes_no(b)).unwrap();
        }
        let verdict = if diff.is_empty() { "yes".to_string() } else { format!("no, differ on {diff:?}") };
        writeln!(text, "  agree: {verdict}").unwrap();
        results.push(json!({
            "point": p,
            "module": name(side, p),
            "closed_form": flags_json(&closed),
            "computational": flags_json(&comp),
            "agree": diff.is_empty(),
            "disagreements": diff,
        }));
    }
    Ok(Rendered {
        text,
        json: json!({ "side": side, "depth": depth, "results": results }),
        dot: None,
        failed,
    })
}

fn flags_json(r: &ClassificationReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn syzygy(fam: &LambdaFamily, points: &[ProjPoint], side: Side, count: usize) -> CliResult<Rendered> {
    need_points(points)?;
    let mut text = String::new();
    let mut chains = Vec::new();
    let mut failed = false;
    for p in points {
        writeln!(text, "{}", name(side, p)).unwrap();
        let mut steps = Vec::new();
        let mut current = p.clone();
        let mut module = fam.module_m(p, side);
        for step in 1..=count {
            let formula = fam.syzygy_formula(&current, side);
            let omega = module.syzygy();
            let expected = fam.realize(&formula.descriptor);
            let certified = omega.is_isomorphic(&expected).map_err(|e| e.to_string())?.value;
            failed |= !certified;
            writeln!(
                text,
                "  Ω^{step}: dim {} top {}  ≅ {} (case {}): {}",
                omega.dim(),
                omega.top_dim(),
                formula.descriptor,
                formula.case,
                if certified { "certified" } else { "NOT isomorphic" }
            )
            .unwrap();
            steps.push(json!({
                "step": step,
                "dim": omega.dim(),
                "top_dim": omega.top_dim(),
                "formula": formula.descriptor,
                "case": formula.case,
                "certified": certified,
            }));
            let Some(next) = formula.descriptor.point().cloned() else {
                writeln!(text, "  decomposable; the chain stops here").unwrap();
                break;
            };
            if next == current {
                writeln!(text, "  fixed point: Ω-period 1").unwrap();
            } else if next == *p {
                writeln!(text, "  back at the start: Ω-period {step}").unwrap();
            }
            current = next;
            module = omega;
        }
        chains.push(json!({ "point": p, "module": name(side, p), "steps": steps }));
    }
    Ok(Rendered { text, json: json!({ "side": side, "chains": chains }), dot: None, failed })
}

fn dual(fam: &LambdaFamily, points: &[ProjPoint], side: Side) -> CliResult<Rendered> {
    need_points(points)?;
    let mut text = String::new();
    let mut results = Vec::new();
    let mut failed = false;
    for p in points {
        let formula = fam.dual_formula(p, side).map_err(|e| e.to_string())?;
        let computed = fam.module_m(p, side).dual().map_err(|e| e.to_string())?;
        let expected = fam.realize(&formula.descriptor);
        let certified = computed.is_isomorphic(&expected).map_err(|e| e.to_string())?.value;
        failed |= !certified;
        writeln!(
            text,
            "{}* : dim {} top {}  ≅ {} (case {}): {}",
            name(side, p),
            computed.dim(),
            computed.top_dim(),
            formula.descriptor,
            formula.case,
            if certified { "certified" } else { "NOT isomorphic" }
        )
        .unwrap();
        results.push(json!({
            "point": p,
            "module": name(side, p),
            "dim": computed.dim(),
            "top_dim": computed.top_dim(),
            "formula": formula.descriptor,
            "case": formula.case,
            "certified": certified,
        }));
    }
    Ok(Rendered { text, json: json!({ "side": side, "results": results }), dot: None, failed })
}

fn quiver(fam: &LambdaFamily, points: &[ProjPoint], side: Side, depth: usize) -> CliResult<Rendered> {
    need_points(points)?;
    let graph = fam.quiver_build(points, side, depth).map_err(|e| e.to_string())?;
    let failed = graph.edges.iter().any(|e| !e.certified);
    let mut text = String::new();
    for c in &graph.components {
        writeln!(text, "{}: {}", c.shape, c.nodes.join(" → ")).unwrap();
    }
    for n in &graph.nodes {
        writeln!(
            text,
            "  {:<24} dim {} Loewy {} {:?}{}",
            n.id,
            n.dim,
            n.loewy_length,
            n.category,
            if n.opaque { " (outside the family)" } else { "" }
        )
        .unwrap();
    }
    let uncertified = graph.edges.iter().filter(|e| !e.certified).count();
    writeln!(text, "{} edges, {uncertified} uncertified", graph.edges.len()).unwrap();
    let mut value = serde_json::to_value(&graph).map_err(|e| e.to_string())?;
    if let Value::Object(map) = &mut value {
        map.remove("schema");
        map.remove("field");
        map.remove("q");
    }
    Ok(Rendered { text, json: value, dot: Some(graph.to_dot()), failed })
}

fn appendix(fam: &LambdaFamily, points: &[ProjPoint], side: Side) -> CliResult<Rendered> {
    need_points(points)?;
    let mut text = String::new();
    let mut results = Vec::new();
    let mut failed = false;
    for p in points {
        let case = fam.appendix_case(&fam.module_m(p, side)).map_err(|e| e.to_string())?;
        let row = (side == Side::Left).then(|| appendix_row(p));
        failed |= row.is_some_and(|r| r != case.case);
        writeln!(
            text,
            "{}: case ({}), dim xM = {}, dim yM = {}, dim zM = {}{}",
            name(side, p),
            case.case,
            case.x_image_dim,
            case.y_image_dim,
            case.z_image_dim,
            row.map_or(String::new(), |r| format!(", coordinates give ({r})"))
        )
        .unwrap();
        results.push(json!({ "point": p, "module": name(side, p), "case": case, "coordinate_row": row }));
    }
    Ok(Rendered { text, json: json!({ "side": side, "results": results }), dot: None, failed })
}

fn verify(fam: &LambdaFamily, checks: &[u8], depth: usize, budget: u128) -> CliResult<Rendered> {
    let report = fam
        .verify(checks, VerifyOptions { depth, budget })
        .map_err(|e| e.to_string())?;
    let mut text = String::new();
    for r in &report.records {
        writeln!(text, "[{}] {:>2} {}: {}", r.status, r.id, r.name, r.topic).unwrap();
        for d in &r.details {
            writeln!(text, "       {d}").unwrap();
        }
        if let Some(cmd) = &r.repro {
            writeln!(text, "       reproduce: {cmd}").unwrap();
        }
    }
    let s = report.summary;
    writeln!(
        text,
        "{} passed, {} failed, {} undecided, {} skipped",
        s.pass, s.fail, s.undecided, s.skipped
    )
    .unwrap();
    let mut value = serde_json::to_value(&report).map_err(|e| e.to_string())?;
    if let Value::Object(map) = &mut value {
        map.remove("schema");
        map.remove("field");
        map.remove("q");
    }
    Ok(Rendered { text, json: value, dot: None, failed: !report.is_success() })
}
