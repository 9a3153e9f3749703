mod inputs;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use linkset_core::assets;
use linkset_core::catalog::{catalog_graph, catalog_lambda, GRAPH_NAMES, LAMBDA_NAMES, PETERSEN_FAMILY};
use linkset_core::certificates::{
    check_linked, lift_battery, monte_carlo_sigma, splitting_count_check, verify_linked, verify_minimal,
    CertificateBundle, MinimalityBattery,
};
use linkset_core::construct::{lambda_for_complete, ConstructOptions};
use linkset_core::synth::{synthesize, SynthOptions};
use linkset_core::witness::{catalog_battery, witness_plan};
use linkset_core::{complete_graph, enumerate_cycles, enumerate_pairs, Error, MinorMap};

use inputs::{Inputs, Loaded};
use report::{Format, RunReport};

const BATTERY_MAX_N: usize = 10;
const PARITY_MAX_N: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "linkset", version, about = "Certificates for linked sets of cycle pairs in spatial graphs")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for trials and spec verification.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Raise the default size bounds (batteries n <= 10, parity n <= 12).
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Write the main artifact (or the report) to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog graphs, Λ sets and shipped assets, or export one of them.
    Catalog {
        #[arg(long)]
        export: Option<String>,
    },
    /// Enumerate cycles or disjoint cycle pairs of a graph.
    Enumerate {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        cycles: bool,
        #[arg(long)]
        length: Option<usize>,
        /// Pair type as `p,q`.
        #[arg(long = "type", value_parser = parse_type)]
        type_pq: Option<(usize, usize)>,
        #[arg(long)]
        hamiltonian: bool,
        /// Print every item, not just the count.
        #[arg(long)]
        list: bool,
    },
    /// Verify a certificate.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Build the minimally linked set of Hamiltonian (p,q) pairs of K_{p+q}.
    Construct {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Sample random straight-line embeddings and record ς = Σ lk mod 2.
    Montecarlo {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Search for a witness diagram of a catalog graph and write its assets.
    Synthesize {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 40_000)]
        iterations: usize,
    },
}

#[derive(Args, Debug)]
struct SetArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    lambda: Option<String>,
}

#[derive(Subcommand, Debug)]
enum VerifyKind {
    Linked {
        #[command(flatten)]
        set: SetArgs,
        /// Witness diagram; the shipped one when omitted.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    Minimal {
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
        /// Certificate bundle; the shipped one when omitted.
        #[arg(long)]
        battery: Option<PathBuf>,
    },
    /// Push a battery through a minor map and re-verify it on the host.
    Lift {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        battery: Option<PathBuf>,
        /// Minor map JSON; defaults to the inclusion into a complete graph.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Size of the complete host graph when no map is given.
        #[arg(long)]
        host_n: Option<usize>,
    },
    SplittingCount {
        #[arg(long)]
        graph: String,
    },
}

fn parse_type(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s.split_once(',').ok_or("expected p,q")?;
    let p = p.trim().parse().map_err(|_| "bad p")?;
    let q = q.trim().parse().map_err(|_| "bad q")?;
    Ok((p, q))
}

enum Failure {
    Input(String),
    Certified(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) => Failure::Certified(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

type Run<T> = Result<T, Failure>;

struct Ctx {
    format: Format,
    seed: u64,
    max_n: Option<usize>,
    out: Option<PathBuf>,
}

impl Ctx {
    fn battery_bound(&self) -> usize {
        self.max_n.unwrap_or(BATTERY_MAX_N).max(BATTERY_MAX_N)
    }

    fn parity_bound(&self) -> usize {
        self.max_n.unwrap_or(PARITY_MAX_N).max(PARITY_MAX_N)
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    if cli.jobs > 1 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("warning: could not size thread pool: {e}");
        }
    }
    if let Some(n) = cli.max_n {
        if n > BATTERY_MAX_N {
            eprintln!("warning: --max-n {n} raises the default size bounds; runs may be slow");
        }
    }
    let ctx = Ctx {
        format: cli.format,
        seed: cli.seed,
        max_n: cli.max_n,
        out: cli.out.clone(),
    };
    let mut report = RunReport::new(argv.into_iter().skip(1).collect());
    let start = Instant::now();
    let result = match &cli.command {
        Command::Catalog { export: Some(name) } => return export(&ctx, name),
        Command::Catalog { export: None } => cmd_catalog(&mut report),
        Command::Enumerate {
            graph,
            cycles,
            length,
            type_pq,
            hamiltonian,
            list,
        } => cmd_enumerate(&mut report, graph, *cycles, *length, *type_pq, *hamiltonian, *list),
        Command::Verify { kind } => match kind {
            VerifyKind::Linked { set, witness } => cmd_verify_linked(&mut report, set, witness.as_deref()),
            VerifyKind::Minimal { graph, lambda, battery } => {
                cmd_verify_minimal(&ctx, &mut report, graph.as_deref(), lambda.as_deref(), battery.as_deref())
            }
            VerifyKind::Lift {
                graph,
                battery,
                map,
                host_n,
            } => cmd_verify_lift(&ctx, &mut report, graph, battery.as_deref(), map.as_deref(), *host_n),
            VerifyKind::SplittingCount { graph } => cmd_splitting(&mut report, graph),
        },
        Command::Construct { p, q } => cmd_construct(&ctx, &mut report, *p, *q),
        Command::Montecarlo { set, trials } => cmd_montecarlo(&ctx, &mut report, set, *trials),
        Command::Synthesize {
            graph,
            restarts,
            iterations,
        } => cmd_synthesize(&ctx, &mut report, graph, *restarts, *iterations),
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    match result {
        Ok(()) => {}
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Certified(msg)) => report.verdict("verification", false, msg),
    }
    let text = report.render(ctx.format);
    let writes_report = !matches!(
        cli.command,
        Command::Construct { .. }
            | Command::Synthesize { .. }
            | Command::Verify {
                kind: VerifyKind::Lift { .. }
            }
    );
    match (&ctx.out, writes_report) {
        (Some(path), true) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        _ => print!("{text}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Run<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))? + "\n";
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn export(ctx: &Ctx, name: &str) -> ExitCode {
    let value: Result<String, Error> = (|| {
        if let Ok(g) = catalog_graph(name) {
            return Ok(serde_json::to_string_pretty(&g)?);
        }
        if let Ok(l) = catalog_lambda(name) {
            return Ok(serde_json::to_string_pretty(&l)?);
        }
        assets::asset_text(name).map(|s| s.trim_end().to_string())
    })();
    match value {
        Ok(text) => {
            let text = text + "\n";
            match &ctx.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(_) => {
            eprintln!("error: unknown catalog item {name}");
            ExitCode::from(2)
        }
    }
}

fn cmd_catalog(report: &mut RunReport) -> Run<()> {
    let mut graphs = Vec::new();
    for name in GRAPH_NAMES {
        let g = catalog_graph(name)?;
        graphs.push(json!({"name": name, "vertices": g.n(), "edges": g.edge_count()}));
    }
    let mut lambdas = Vec::new();
    for name in LAMBDA_NAMES {
        let l = catalog_lambda(name)?;
        lambdas.push(json!({"name": name, "graph": format!("{} vertices", l.host().n()), "pairs": l.len()}));
    }
    let assets: Vec<&str> = assets::embedded_names().collect();
    report.count("graphs", graphs.len());
    report.count("lambdaSets", lambdas.len());
    report.count("assets", assets.len());
    report.details = json!({"graphs": graphs, "lambdaSets": lambdas, "assets": assets});
    Ok(())
}

fn cmd_enumerate(
    report: &mut RunReport,
    graph: &str,
    cycles: bool,
    length: Option<usize>,
    type_pq: Option<(usize, usize)>,
    hamiltonian: bool,
    list: bool,
) -> Run<()> {
    let g = Inputs::graph(graph)?;
    report.digest_inputs([g.text.as_str()]);
    let g = g.value;
    if g.n() > PARITY_MAX_N {
        return Err(Error::SizeBound {
            what: "pair enumeration",
            size: g.n(),
            limit: PARITY_MAX_N,
        }
        .into());
    }
    let items: Vec<String> = if cycles {
        enumerate_cycles(&g, length).iter().map(|c| c.to_string()).collect()
    } else {
        enumerate_pairs(&g, type_pq, hamiltonian)
            .iter()
            .map(|p| p.to_string())
            .collect()
    };
    report.count(if cycles { "cycles" } else { "pairs" }, items.len());
    if list {
        report.details = json!({ "items": items });
    }
    Ok(())
}

fn cmd_verify_linked(report: &mut RunReport, set: &SetArgs, witness: Option<&Path>) -> Run<()> {
    let g = Inputs::graph(&set.graph)?;
    let lam = Inputs::lambda(set.lambda.as_deref(), &set.graph, &g.value)?;
    let shipped = witness.is_none();
    let w = match witness {
        Some(p) => Inputs::diagram(p)?,
        None => Loaded::shipped_witness(&set.graph)?,
    };
    report.digest_inputs([g.text.as_str(), lam.text.as_str(), w.text.as_str()]);
    let r = check_linked(&g.value, &lam.value, &w.value)?;
    report.count("pairs", lam.value.len());
    report.count("crossings", w.value.crossings().len());
    report.count("hopfPairs", r.profile.hopf.len());
    let odd: Vec<String> = r.odd_pairs.iter().map(|((e, f), c)| format!("{{{e}, {f}}}:{c}")).collect();
    report.verdict("parity-even", r.parity_even, odd.join(" "));
    report.verdict("witness-sum-odd", r.profile.sigma == 1, format!("ς = {}", r.profile.sigma));
    let hopf: Vec<String> = r.profile.hopf.iter().map(|p| p.to_string()).collect();
    if shipped {
        report.verdict("strict-profile", r.profile.strict, hopf.join(" "));
    }
    report.details = serde_json::to_value(&r.profile).unwrap_or_default();
    Ok(())
}

fn load_bundle(graph: Option<&str>, battery: Option<&Path>) -> Run<Loaded<CertificateBundle>> {
    match (battery, graph) {
        (Some(p), _) => Inputs::bundle(p),
        (None, Some(g)) => Loaded::shipped_bundle(g),
        (None, None) => Err(Failure::Input("need --graph or --battery".into())),
    }
}

fn cmd_verify_minimal(
    ctx: &Ctx,
    report: &mut RunReport,
    graph: Option<&str>,
    lambda: Option<&str>,
    battery: Option<&Path>,
) -> Run<()> {
    let bundle = load_bundle(graph, battery)?;
    bundle.value.check()?;
    let b = &bundle.value;
    let mut texts = vec![bundle.text.clone()];
    if let Some(name) = graph {
        let g = Inputs::graph(name)?;
        if g.value != b.graph {
            return Err(Failure::Input(format!("bundle is not for graph {name}")));
        }
        texts.push(g.text);
    }
    if let Some(name) = lambda {
        let l = Inputs::lambda(Some(name), graph.unwrap_or(""), &b.graph)?;
        if l.value.pairs() != b.lambda.pairs() {
            return Err(Failure::Input(format!("bundle is not for {name}")));
        }
        texts.push(l.text);
    }
    report.digest_inputs(texts.iter().map(String::as_str));
    if b.graph.n() > ctx.battery_bound() {
        return Err(Error::SizeBound {
            what: "battery verification",
            size: b.graph.n(),
            limit: ctx.battery_bound(),
        }
        .into());
    }
    let battery = b.minimality_battery()?;
    let r = verify_minimal(&b.graph, &b.lambda, &battery)?;
    report.count("pairs", b.lambda.len());
    report.count("specs", r.specs.len());
    report.count("flippedSpecs", r.specs.iter().filter(|s| s.flips > 0).count());
    for s in &r.specs {
        let detail = if s.passed {
            format!("lk(σλ) = {}", s.lk)
        } else {
            let bad: Vec<String> = s.failures.iter().map(|f| format!("{} ({})", f.pair, f.verdict)).collect();
            format!("lk(σλ) = {}; not split: {}", s.lk, bad.join(", "))
        };
        report.verdict(s.target.to_string(), s.passed, detail);
    }
    Ok(())
}

fn cmd_verify_lift(
    ctx: &Ctx,
    report: &mut RunReport,
    graph: &str,
    battery: Option<&Path>,
    map: Option<&Path>,
    host_n: Option<usize>,
) -> Run<()> {
    let bundle = load_bundle(Some(graph), battery)?;
    bundle.value.check()?;
    let b = &bundle.value;
    let (m, map_text) = match map {
        Some(p) => {
            let l = Inputs::minor_map(p)?;
            (l.value, l.text)
        }
        None => {
            let n = host_n.unwrap_or(b.graph.n());
            let host = complete_graph(n)?;
            let m = MinorMap::identity(&b.graph).into_host(host)?;
            let text = serde_json::to_string(&m).unwrap_or_default();
            (m, text)
        }
    };
    report.digest_inputs([bundle.text.as_str(), map_text.as_str()]);
    if m.minor() != &b.graph {
        return Err(Failure::Input("minor map does not start at the bundle's graph".into()));
    }
    if m.host().n() > ctx.battery_bound() {
        return Err(Error::SizeBound {
            what: "battery verification",
            size: m.host().n(),
            limit: ctx.battery_bound(),
        }
        .into());
    }
    let cert = verify_linked(&b.graph, &b.lambda, b.witness()?)?;
    let battery: MinimalityBattery = b.minimality_battery()?;
    let (lc, lb) = lift_battery(&m, &cert, &battery)?;
    report.count("pairs", b.lambda.len());
    report.count("liftedPairs", lb.lambda().len());
    report.count("hostVertices", m.host().n());
    report.count("hostCrossings", lb.base().crossings().len());
    report.verdict("injective", lb.lambda().len() == b.lambda.len(), "");
    report.verdict("linked", lc.witness_sum() == 1, format!("ς = {}", lc.witness_sum()));
    report.verdict("minimal", true, format!("{} specs re-verified", lb.specs().len()));
    if let Some(path) = &ctx.out {
        let mut out = CertificateBundle::new(lb.lambda(), Some(lc.witness()), Some(&lb))?;
        out.minor_map = Some(m);
        write_json(path, &out)?;
    }
    Ok(())
}

fn cmd_splitting(report: &mut RunReport, graph: &str) -> Run<()> {
    if !PETERSEN_FAMILY.iter().any(|n| n.eq_ignore_ascii_case(graph.trim())) {
        return Err(Failure::Input(format!("{graph} is not in the Petersen family")));
    }
    let g = Inputs::graph(graph)?;
    report.digest_inputs([g.text.as_str()]);
    let r = splitting_count_check(graph)?;
    report.count("baseCount", r.base_count);
    report.count("splittings", r.rows.len());
    let bad: Vec<String> = r
        .rows
        .iter()
        .filter(|row| !row.increases)
        .map(|row| format!("v{} {:?}|{:?}: {}", row.vertex, row.keep, row.moved, row.count))
        .collect();
    report.verdict("count-increases", r.passed, bad.join(", "));
    report.details = serde_json::to_value(&r).unwrap_or_default();
    Ok(())
}

fn cmd_construct(ctx: &Ctx, report: &mut RunReport, p: usize, q: usize) -> Run<()> {
    let opts = ConstructOptions {
        battery_max_n: ctx.battery_bound(),
        parity_max_n: ctx.parity_bound(),
    };
    report.digest_inputs([format!("{p},{q}").as_str()]);
    let cs = lambda_for_complete(p, q, &opts)?;
    let mut summaries = Vec::new();
    for c in &cs {
        let s = c.summary();
        let tag = s.lambda.clone();
        report.count(format!("{tag} pairs"), s.pairs);
        report.verdict(format!("{tag} hamiltonian"), s.hamiltonian, "");
        match s.parity_even {
            Some(even) => report.verdict(format!("{tag} parity"), even, ""),
            None => report.verdict(format!("{tag} parity"), true, "skipped (size bound)"),
        }
        report.verdict(
            format!("{tag} certificates"),
            true,
            if s.certified { "lifted and re-verified" } else { "skipped (size bound)" },
        );
        summaries.push(s);
    }
    report.details = serde_json::to_value(&summaries).unwrap_or_default();
    if let Some(dir) = &ctx.out {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
        for c in &cs {
            let file = if c.source == "P10" && cs.len() > 1 {
                format!("K{}-prime.bundle.json", c.host().n())
            } else {
                format!("K{}-{}-{}.bundle.json", c.host().n(), c.p, c.q)
            };
            write_json(&dir.join(file), &c.bundle()?)?;
        }
    }
    Ok(())
}

fn cmd_montecarlo(ctx: &Ctx, report: &mut RunReport, set: &SetArgs, trials: usize) -> Run<()> {
    let g = Inputs::graph(&set.graph)?;
    let lam = Inputs::lambda(set.lambda.as_deref(), &set.graph, &g.value)?;
    report.digest_inputs([g.text.as_str(), lam.text.as_str()]);
    report.seed = Some(ctx.seed);
    if g.value.n() > ctx.parity_bound() {
        return Err(Error::SizeBound {
            what: "Monte-Carlo sampling",
            size: g.value.n(),
            limit: ctx.parity_bound(),
        }
        .into());
    }
    let r = monte_carlo_sigma(&g.value, &lam.value, trials, ctx.seed)?;
    report.count("trials", r.trials);
    for (s, n) in &r.histogram {
        report.count(format!("sigma={s}"), *n);
    }
    report.verdict("parity-even", r.parity_even, "");
    report.verdict("sigma-constant-one", r.all_one, "");
    Ok(())
}

fn cmd_synthesize(ctx: &Ctx, report: &mut RunReport, graph: &str, restarts: usize, iterations: usize) -> Run<()> {
    let plan = witness_plan(graph)?;
    report.seed = Some(ctx.seed);
    report.digest_inputs([plan.name]);
    let opts = SynthOptions {
        seed: ctx.seed,
        restarts,
        iterations,
        ..SynthOptions::default()
    };
    let Some(found) = synthesize(&plan.goal(), &opts)? else {
        report.verdict("witness-found", false, format!("no witness after {restarts} restarts"));
        return Ok(());
    };
    let d = &found.diagram;
    let cert = verify_linked(&plan.graph, &plan.lambda, d)?;
    let battery = catalog_battery(&plan, d, found.flip.as_ref())?;
    let r = verify_minimal(&plan.graph, &plan.lambda, &battery)?;
    report.count("crossings", d.crossings().len());
    report.count("restart", found.restart);
    report.verdict("witness-found", true, "");
    report.verdict("strict-profile", cert.profile().strict, "");
    report.verdict("minimal", r.passed, "");
    if report.passed {
        let dir = ctx.out.clone().unwrap_or_else(|| PathBuf::from("."));
        std::fs::create_dir_all(&dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
        std::fs::write(dir.join(format!("h_{}.json", plan.name)), d.to_json() + "\n")
            .map_err(|e| Failure::Input(e.to_string()))?;
        let bundle = CertificateBundle::new(&plan.lambda, Some(d), Some(&battery))?;
        let text = serde_json::to_string(&bundle).map_err(|e| Failure::Input(e.to_string()))? + "\n";
        std::fs::write(dir.join(format!("{}.battery.json", plan.name)), text)
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    Ok(())
}
