//! The `factorlab` command line.
//!
//! Exit codes: 0 when the property holds (or the command only reports),
//! 1 when it definitively fails, 2 on usage, parse or parameter errors.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::covered::{
    is_fractional_ab_covered_with, is_fractional_abk_critical_covered_with, CriticalWitness, FactorParams,
    LemmaWitness, Parallelism,
};
use crate::graph::{self, Graph, VertexSet};
use crate::graph6::{parse_graph6, read_graph6_stream, write_graph6, NumberedGraph, StreamError};
use crate::harness::{
    build_remark1, build_remark2, check_theorem3_hypothesis, remark2_p, theorem3_bound, verify_theorem3_on_stream,
    CertificateCheck, SharpnessCertificate, VerificationReport,
};
use crate::invariants::invariant_report;

/// Environment variable overriding the subset-scan and enumeration caps.
pub const MAX_N_ENV: &str = "FACTORLAB_MAX_N";
pub const DEFAULT_SCAN_CAP: usize = 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "factorlab", version, about = "Fractional [a,b]-covered graph checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads; witnesses do not depend on this.
    #[arg(long, default_value_t = 1, global = true)]
    pub workers: usize,
    /// Print full witnesses in text mode.
    #[arg(long, global = true)]
    pub witness: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct Bounds {
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub b: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide fractional [a,b]-coveredness of one graph6 graph.
    Check {
        /// graph6 line; read from standard input when absent.
        graph6: Option<String>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Decide the (a,b,k)-critical covered property.
    Critical {
        graph6: Option<String>,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long)]
        k: usize,
    },
    /// Report n, |E|, minimum degree, connectivity and independence number.
    Invariants { graph6: Option<String> },
    /// Evaluate the connectivity bound for given alpha, or for a graph.
    Bound {
        graph6: Option<String>,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        alpha: Option<usize>,
    },
    /// Check the connectivity theorem on a graph6 stream or on all labeled graphs of one order.
    Verify {
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Read graphs from this file instead of standard input.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Generate all labeled graphs of this order instead of reading input.
        #[arg(long)]
        enumerate: Option<usize>,
    },
    /// Build and replay one of the two sharpness constructions.
    Remarks {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long, default_value_t = 1)]
        a: usize,
        #[arg(long, default_value_t = 1)]
        b: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Emit a construction as graph6.
    Gen {
        #[command(subcommand)]
        what: Construction,
    },
}

#[derive(Debug, Subcommand, Clone, Copy)]
pub enum Construction {
    /// K_{3+k} joined with two isolated vertices.
    Remark1 {
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// K_{p+k} joined with m disjoint copies of K_{(a+1)/2}.
    Remark2 {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    Complete {
        #[arg(long)]
        n: usize,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    /// m disjoint copies of K_t.
    Cliques {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: usize,
    },
    /// Every labeled graph of order n, one per line.
    Labeled {
        #[arg(long)]
        n: usize,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

struct Ctx<'a> {
    format: Format,
    show_witness: bool,
    par: Parallelism,
    scan_cap: usize,
    enum_cap: usize,
    stdin: &'a mut dyn BufRead,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, max_n: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome::usage(rendered),
            };
        }
    };
    let cap = match max_n.map(str::parse::<usize>) {
        None => None,
        Some(Ok(v)) => Some(v),
        Some(Err(_)) => return Outcome::usage(format!("{MAX_N_ENV} must be a non-negative integer")),
    };
    if cli.workers == 0 {
        return Outcome::usage("--workers must be at least 1");
    }
    let mut ctx = Ctx {
        format: cli.format,
        show_witness: cli.witness,
        par: if cli.workers > 1 {
            Parallelism::Rayon
        } else {
            Parallelism::Serial
        },
        scan_cap: cap.unwrap_or(DEFAULT_SCAN_CAP),
        enum_cap: cap.unwrap_or(graph::ENUMERATION_CAP).min(graph::ENUMERATION_CAP),
        stdin,
    };
    if cli.workers > 1 {
        // Input streams are not `Send`, so the pool is the global one; within
        // a process the first requested size sticks.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build_global();
    }
    dispatch(&cli.command, &mut ctx)
}

fn dispatch(cmd: &Command, ctx: &mut Ctx<'_>) -> Outcome {
    let result = match cmd {
        Command::Check { graph6, bounds } => cmd_check(ctx, graph6.as_deref(), *bounds),
        Command::Critical { graph6, bounds, k } => cmd_critical(ctx, graph6.as_deref(), *bounds, *k),
        Command::Invariants { graph6 } => cmd_invariants(ctx, graph6.as_deref()),
        Command::Bound {
            graph6,
            bounds,
            k,
            alpha,
        } => cmd_bound(ctx, graph6.as_deref(), *bounds, *k, *alpha),
        Command::Verify {
            bounds,
            k,
            input,
            enumerate,
        } => cmd_verify(ctx, *bounds, *k, input.as_ref(), *enumerate),
        Command::Remarks { which, a, b, m, k } => cmd_remarks(ctx, *which, *a, *b, *m, *k),
        Command::Gen { what } => cmd_gen(ctx, *what),
    };
    result.unwrap_or_else(Outcome::usage)
}

type CmdResult = Result<Outcome, String>;

fn read_graph(ctx: &mut Ctx<'_>, arg: Option<&str>) -> Result<(Graph, String), String> {
    let line = match arg {
        Some(s) => s.trim().to_string(),
        None => {
            let mut buf = String::new();
            ctx.stdin
                .read_line(&mut buf)
                .map_err(|e| format!("cannot read standard input: {e}"))?;
            buf.trim().to_string()
        }
    };
    let g = parse_graph6(&line).map_err(|e| format!("invalid graph6 input: {e}"))?;
    Ok((g, line))
}

fn scan_guard(ctx: &Ctx<'_>, g: &Graph) -> Result<(), String> {
    if g.order() > ctx.scan_cap {
        return Err(format!(
            "graph order {} exceeds the subset-scan cap {} (set {MAX_N_ENV} to raise it)",
            g.order(),
            ctx.scan_cap
        ));
    }
    Ok(())
}

fn params(a: usize, b: usize, k: usize) -> Result<FactorParams, String> {
    FactorParams::new(a, b, k).map_err(|e| e.to_string())
}

/// JSON shape of a witness; ids are always in the input graph's labeling.
#[derive(Serialize)]
struct WitnessJson {
    #[serde(rename = "X")]
    x: VertexSet,
    #[serde(rename = "Y")]
    y: VertexSet,
    #[serde(rename = "U", skip_serializing_if = "Option::is_none")]
    u: Option<VertexSet>,
    theta: i64,
    epsilon: u8,
}

impl WitnessJson {
    fn new(w: &LemmaWitness, u: Option<VertexSet>) -> Self {
        WitnessJson {
            x: w.x,
            y: w.y,
            u,
            theta: w.theta,
            epsilon: w.epsilon,
        }
    }

    fn from_critical(c: &CriticalWitness) -> Option<Self> {
        c.inner.witness.as_ref().map(|w| Self::new(w, Some(c.deleted)))
    }
}

fn fmt_set(s: VertexSet) -> String {
    let ids: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", ids.join(","))
}

fn witness_text(out: &mut String, g: &Graph, w: &WitnessJson, full: bool) {
    if let Some(u) = w.u {
        let _ = writeln!(out, "deleted U = {}", fmt_set(u));
    }
    let _ = writeln!(
        out,
        "witness X = {}  theta = {}  epsilon = {}",
        fmt_set(w.x),
        w.theta,
        w.epsilon
    );
    if full {
        let rest = g
            .vertices()
            .difference(w.x)
            .difference(w.y)
            .difference(w.u.unwrap_or_default());
        let _ = writeln!(out, "        Y = {}", fmt_set(w.y));
        let _ = writeln!(out, "        W = {}", fmt_set(rest));
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CheckJson<'a> {
    command: &'static str,
    graph6: &'a str,
    params: FactorParams,
    verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
}

fn cmd_check(ctx: &mut Ctx<'_>, arg: Option<&str>, bounds: Bounds) -> CmdResult {
    let (g, line) = read_graph(ctx, arg)?;
    let p = params(bounds.a, bounds.b, 0)?;
    scan_guard(ctx, &g)?;
    let verdict = is_fractional_ab_covered_with(&g, p, ctx.par);
    let report = CheckJson {
        command: "check",
        graph6: &line,
        params: p,
        verdict: verdict.covered,
        witness: verdict.witness.as_ref().map(|w| WitnessJson::new(w, None)),
    };
    let stdout = match ctx.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "graph {line}: n = {}, |E| = {}", g.order(), g.edge_count());
            let not = if verdict.covered { "" } else { "NOT " };
            let _ = writeln!(out, "{not}fractional [{},{}]-covered", p.a, p.b);
            if let Some(w) = &report.witness {
                witness_text(&mut out, &g, w, ctx.show_witness);
            }
            out
        }
    };
    Ok(Outcome {
        code: if verdict.covered { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    })
}

fn cmd_critical(ctx: &mut Ctx<'_>, arg: Option<&str>, bounds: Bounds, k: usize) -> CmdResult {
    let (g, line) = read_graph(ctx, arg)?;
    let p = params(bounds.a, bounds.b, k)?;
    scan_guard(ctx, &g)?;
    let verdict = is_fractional_abk_critical_covered_with(&g, p, ctx.par).map_err(|e| e.to_string())?;
    let report = CheckJson {
        command: "critical",
        graph6: &line,
        params: p,
        verdict: verdict.critical_covered,
        witness: verdict.witness.as_ref().and_then(WitnessJson::from_critical),
    };
    let stdout = match ctx.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "graph {line}: n = {}, |E| = {}", g.order(), g.edge_count());
            let not = if verdict.critical_covered { "" } else { "NOT " };
            let _ = writeln!(out, "{not}fractional ({},{},{})-critical covered", p.a, p.b, p.k);
            if let Some(w) = &report.witness {
                witness_text(&mut out, &g, w, ctx.show_witness);
            }
            out
        }
    };
    Ok(Outcome {
        code: if verdict.critical_covered { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    })
}

#[derive(Serialize)]
struct InvariantsJson<'a> {
    command: &'static str,
    graph6: &'a str,
    invariants: crate::invariants::InvariantReport,
}

fn cmd_invariants(ctx: &mut Ctx<'_>, arg: Option<&str>) -> CmdResult {
    let (g, line) = read_graph(ctx, arg)?;
    let inv = invariant_report(&g).map_err(|e| e.to_string())?;
    let stdout = match ctx.format {
        Format::Json => to_json(&InvariantsJson {
            command: "invariants",
            graph6: &line,
            invariants: inv,
        }),
        Format::Text => format!(
            "graph {line}\nn = {}\n|E| = {}\ndelta = {}\nkappa = {}\nalpha = {}\n",
            inv.n, inv.edges, inv.delta, inv.kappa, inv.alpha
        ),
    };
    Ok(Outcome {
        code: 0,
        stdout,
        stderr: String::new(),
    })
}

#[derive(Serialize)]
struct BoundJson<'a> {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph6: Option<&'a str>,
    params: FactorParams,
    alpha: usize,
    bound: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    kappa: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<bool>,
}

fn cmd_bound(ctx: &mut Ctx<'_>, arg: Option<&str>, bounds: Bounds, k: usize, alpha: Option<usize>) -> CmdResult {
    let p = params(bounds.a, bounds.b, k)?;
    let (report, code) = match (alpha, arg) {
        (Some(alpha), None) => {
            let bound = theorem3_bound(p.a, p.b, p.k, alpha).map_err(|e| e.to_string())?;
            let r = BoundJson {
                command: "bound",
                graph6: None,
                params: p,
                alpha,
                bound: bound.to_string(),
                kappa: None,
                verdict: None,
            };
            (r, 0)
        }
        (None, Some(text)) => {
            let (g, _) = read_graph(ctx, arg)?;
            let r = check_theorem3_hypothesis(&g, p).map_err(|e| e.to_string())?;
            let out = BoundJson {
                command: "bound",
                graph6: Some(text.trim()),
                params: p,
                alpha: r.alpha,
                bound: r.bound.to_string(),
                kappa: Some(r.kappa),
                verdict: Some(r.hypothesis_met),
            };
            (out, if r.hypothesis_met { 0 } else { 1 })
        }
        (Some(_), Some(_)) => return Err("give either --alpha or a graph6 graph, not both".into()),
        (None, None) => return Err("bound needs --alpha or a graph6 graph".into()),
    };
    let stdout = match ctx.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut out = format!("bound = {}\n", report.bound);
            let _ = writeln!(out, "alpha = {}", report.alpha);
            if let (Some(kappa), Some(met)) = (report.kappa, report.verdict) {
                let _ = writeln!(out, "kappa = {kappa}");
                let _ = writeln!(out, "hypothesis_met = {met}");
            }
            out
        }
    };
    Ok(Outcome {
        code,
        stdout,
        stderr: String::new(),
    })
}

#[derive(Serialize)]
struct FailureJson {
    line: usize,
    graph6: String,
    kappa: usize,
    alpha: usize,
    bound: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
}

#[derive(Serialize)]
struct VerifyJson {
    command: &'static str,
    params: FactorParams,
    verdict: bool,
    graphs_scanned: usize,
    hypothesis_holders: usize,
    conclusion_failures: Vec<FailureJson>,
}

fn cmd_verify(
    ctx: &mut Ctx<'_>,
    bounds: Bounds,
    k: usize,
    input: Option<&PathBuf>,
    enumerate: Option<usize>,
) -> CmdResult {
    let p = params(bounds.a, bounds.b, k)?;
    let scan_cap = ctx.scan_cap;
    let guard = move |item: Result<NumberedGraph, StreamError>| -> Result<NumberedGraph, String> {
        let item = item.map_err(|e| e.to_string())?;
        if item.graph.order() > scan_cap {
            return Err(format!(
                "line {}: graph order {} exceeds the subset-scan cap {scan_cap}",
                item.line,
                item.graph.order()
            ));
        }
        Ok(item)
    };
    let mut guard_error: Option<String> = None;
    let report: Result<VerificationReport, String> = {
        let mut run_on = |items: &mut dyn Iterator<Item = Result<NumberedGraph, StreamError>>| {
            let checked = items.map_while(|item| match guard(item) {
                Ok(g) => Some(Ok(g)),
                Err(e) => {
                    guard_error = Some(e);
                    None
                }
            });
            verify_theorem3_on_stream(checked, p, ctx.par).map_err(|e| e.to_string())
        };
        match (enumerate, input) {
            (Some(_), Some(_)) => return Err("give either --enumerate or --input, not both".into()),
            (Some(n), None) => {
                if n > ctx.enum_cap {
                    return Err(format!("--enumerate {n} exceeds the enumeration cap {}", ctx.enum_cap));
                }
                let graphs = graph::enumerate_graphs(n).map_err(|e| e.to_string())?;
                run_on(
                    &mut graphs
                        .enumerate()
                        .map(|(i, graph)| Ok(NumberedGraph { line: i + 1, graph })),
                )
            }
            (None, Some(path)) => {
                let file = File::open(path).map_err(|e| format!("cannot open {}: {e}", path.display()))?;
                run_on(&mut read_graph6_stream(BufReader::new(file)))
            }
            (None, None) => run_on(&mut read_graph6_stream(&mut *ctx.stdin)),
        }
    };
    if let Some(e) = guard_error {
        return Err(e);
    }
    let report = report?;
    let failures: Vec<FailureJson> = report
        .conclusion_failures
        .iter()
        .map(|f| FailureJson {
            line: f.line,
            graph6: f.graph6.clone(),
            kappa: f.report.kappa,
            alpha: f.report.alpha,
            bound: f.report.bound.to_string(),
            witness: f.verdict.witness.as_ref().and_then(WitnessJson::from_critical),
        })
        .collect();
    let ok = failures.is_empty();
    let json = VerifyJson {
        command: "verify",
        params: p,
        verdict: ok,
        graphs_scanned: report.graphs_scanned,
        hypothesis_holders: report.hypothesis_holders,
        conclusion_failures: failures,
    };
    let stdout = match ctx.format {
        Format::Json => to_json(&json),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "params a = {} b = {} k = {}", p.a, p.b, p.k);
            let _ = writeln!(out, "graphs scanned: {}", json.graphs_scanned);
            let _ = writeln!(out, "hypothesis holders: {}", json.hypothesis_holders);
            let _ = writeln!(out, "conclusion failures: {}", json.conclusion_failures.len());
            for f in &json.conclusion_failures {
                let _ = writeln!(
                    out,
                    "  line {}: {} (kappa = {}, alpha = {}, bound = {})",
                    f.line, f.graph6, f.kappa, f.alpha, f.bound
                );
                if let (true, Some(w)) = (ctx.show_witness, &f.witness) {
                    let g = parse_graph6(&f.graph6).expect("written by write_graph6");
                    witness_text(&mut out, &g, w, true);
                }
            }
            let _ = writeln!(out, "elapsed: {:.3}s", report.elapsed.as_secs_f64());
            out
        }
    };
    Ok(Outcome {
        code: if ok { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    })
}

#[derive(Serialize)]
struct RemarkJson<'a> {
    command: &'static str,
    remark: u8,
    params: FactorParams,
    graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<usize>,
    expected_kappa: usize,
    expected_alpha: usize,
    witness: WitnessJson,
    check: &'a CertificateCheck,
    verdict: bool,
}

fn cmd_remarks(ctx: &mut Ctx<'_>, which: u8, a: usize, b: usize, m: usize, k: usize) -> CmdResult {
    let (cert, p): (SharpnessCertificate, Option<usize>) = match which {
        1 => (build_remark1(k).map_err(|e| e.to_string())?, None),
        _ => {
            let p = remark2_p(a, b, m).map_err(|v| {
                let names: Vec<String> = v.iter().map(ToString::to_string).collect();
                format!("invalid parameters: {}", names.join("; "))
            })?;
            (build_remark2(a, b, m, k).map_err(|e| e.to_string())?, Some(p))
        }
    };
    scan_guard(ctx, &cert.graph)?;
    let check = cert.verify().map_err(|e| e.to_string())?;
    let ok = check.all_ok();
    let json = RemarkJson {
        command: "remarks",
        remark: which,
        params: cert.params,
        graph6: write_graph6(&cert.graph).map_err(|e| e.to_string())?,
        p,
        expected_kappa: cert.expected_kappa,
        expected_alpha: cert.expected_alpha,
        witness: WitnessJson::new(&cert.witness, Some(cert.deleted)),
        check: &check,
        verdict: ok,
    };
    let stdout = match ctx.format {
        Format::Json => to_json(&json),
        Format::Text => {
            let mut out = String::new();
            let cp = cert.params;
            let _ = writeln!(
                out,
                "construction {which}: {} (n = {})",
                json.graph6,
                cert.graph.order()
            );
            let _ = writeln!(out, "params a = {} b = {} k = {}", cp.a, cp.b, cp.k);
            if let Some(p) = p {
                let _ = writeln!(out, "p = {p}");
            }
            let _ = writeln!(out, "{:<22}{:>10}{:>10}{:>6}", "quantity", "expected", "computed", "ok");
            let row = |out: &mut String, name: &str, e: String, c: String, ok: bool| {
                let _ = writeln!(out, "{name:<22}{e:>10}{c:>10}{:>6}", if ok { "yes" } else { "NO" });
            };
            row(
                &mut out,
                "kappa",
                cert.expected_kappa.to_string(),
                check.kappa.to_string(),
                check.kappa_matches,
            );
            row(
                &mut out,
                "alpha",
                cert.expected_alpha.to_string(),
                check.alpha.to_string(),
                check.alpha_matches,
            );
            row(
                &mut out,
                "boundary identity",
                "holds".into(),
                if check.boundary_holds { "holds" } else { "fails" }.into(),
                check.boundary_holds,
            );
            row(
                &mut out,
                "theta",
                "1".into(),
                cert.witness.theta.to_string(),
                check.witness_reproduced && cert.witness.theta == 1,
            );
            row(
                &mut out,
                "epsilon",
                "2".into(),
                cert.witness.epsilon.to_string(),
                check.witness_reproduced && cert.witness.epsilon == 2,
            );
            row(
                &mut out,
                "critical covered",
                "false".into(),
                check.checker.critical_covered.to_string(),
                !check.checker.critical_covered,
            );
            witness_text(&mut out, &cert.graph, &json.witness, ctx.show_witness);
            let _ = writeln!(out, "{}", if ok { "all assertions hold" } else { "ASSERTION FAILURE" });
            out
        }
    };
    Ok(Outcome {
        code: if ok { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    })
}

fn cmd_gen(ctx: &mut Ctx<'_>, what: Construction) -> CmdResult {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let graphs: Vec<Graph> = match what {
        Construction::Remark1 { k } => vec![build_remark1(k).map_err(|e| err(&e))?.graph],
        Construction::Remark2 { a, b, m, k } => vec![build_remark2(a, b, m, k).map_err(|e| err(&e))?.graph],
        Construction::Complete { n } => vec![graph::complete(n).map_err(|e| err(&e))?],
        Construction::Cycle { n } => vec![graph::cycle(n).map_err(|e| err(&e))?],
        Construction::Cliques { m, t } => vec![graph::disjoint_clique_union(m, t).map_err(|e| err(&e))?],
        Construction::Labeled { n } => {
            if n > ctx.enum_cap {
                return Err(format!("order {n} exceeds the enumeration cap {}", ctx.enum_cap));
            }
            graph::enumerate_graphs(n).map_err(|e| err(&e))?.collect()
        }
    };
    let mut stdout = String::new();
    for g in &graphs {
        let line = write_graph6(g).map_err(|e| err(&e))?;
        match ctx.format {
            Format::Text => {
                stdout.push_str(&line);
                stdout.push('\n');
            }
            Format::Json => {
                #[derive(Serialize)]
                struct GenJson<'a> {
                    graph6: &'a str,
                    n: usize,
                    edges: usize,
                }
                stdout.push_str(&to_json(&GenJson {
                    graph6: &line,
                    n: g.order(),
                    edges: g.edge_count(),
                }));
            }
        }
    }
    Ok(Outcome {
        code: 0,
        stdout,
        stderr: String::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(
            std::iter::once("factorlab").chain(args.iter().copied()),
            &mut std::io::empty(),
            None,
        )
    }

    #[test]
    fn check_exit_codes() {
        let r1 = write_graph6(&build_remark1(0).unwrap().graph).unwrap();
        let out = run_args(&["check", &r1, "--a", "1", "--b", "1"]);
        assert_eq!(out.code, 1, "{out:?}");
        assert!(out.stdout.contains("theta = 1  epsilon = 2"));
        assert_eq!(run_args(&["check", "A_", "--a", "1", "--b", "1"]).code, 0);
        assert_eq!(run_args(&["check", "A_x", "--a", "1", "--b", "1"]).code, 2);
        assert_eq!(run_args(&["check", "A_", "--a", "2", "--b", "1"]).code, 2);
        assert_eq!(run_args(&["check", "A_"]).code, 2);
    }

    #[test]
    fn scan_cap_from_env() {
        let k6 = write_graph6(&graph::complete(6).unwrap()).unwrap();
        let out = run(
            ["factorlab", "check", &k6, "--a", "1", "--b", "1"],
            &mut std::io::empty(),
            Some("5"),
        );
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("cap 5"));
        let out = run(
            ["factorlab", "check", &k6, "--a", "1", "--b", "1"],
            &mut std::io::empty(),
            Some("x"),
        );
        assert_eq!(out.code, 2);
    }

    #[test]
    fn stdin_graph() {
        let mut input: &[u8] = b"A_\n";
        let out = run(["factorlab", "check", "--a", "1", "--b", "1"], &mut input, None);
        assert_eq!(out.code, 0);
    }

    #[test]
    fn help_is_not_an_error() {
        assert_eq!(run_args(&["--help"]).code, 0);
        assert_eq!(run_args(&["frobnicate"]).code, 2);
    }
}
