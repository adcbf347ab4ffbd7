//! The `confpair` command line.
//!
//! Exit codes: 0 success, 1 malformed input, 2 invalid input, 3 a check ran
//! and failed (its report is still printed).

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use confpair_core::algebra::{
    canonical_forest, normalize_pois, normalize_siop, parse_bracket, parse_terms, reduce_bracket, render_forest_expr,
    render_lincombo,
};
use confpair_core::combinatorics::text::{
    parse_forest, parse_graph, parse_otree, parse_trees, render_forest, render_graph,
};
use confpair_core::combinatorics::{enumerate_long_graphs, enumerate_tall_forests, ordered_partitions};
use confpair_core::geometry::{eval_system, limit_check, planetary_defect, separation_bound, Epsilon};
use confpair_core::operad::{compose, cooperad, substitute, two_level_otrees};
use confpair_core::pairing::pair_trees;
use confpair_core::{BracketExpr, Forest, Graph, LinCombo, Parity};
use num_bigint::BigInt;
use serde::Serialize;

use crate::cache::{gram, ranks, Cache, GramJson};
use crate::error::{CliError, Result};
use crate::json::{forest_combo_to_json, graph_combo_to_json, Coeff, ForestJson, GraphJson};
use crate::parallel::{par_check_duality, verify_perfect_cached};
use crate::report::{edges_json, DualityJson, GeometryJson, PerfectJson};
use crate::sample::{random_torus_point, rng};

/// Largest `n` for exhaustive Gram and basis computations.
pub const MAX_N: usize = 8;
/// Identity checks in geometry reports.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;
/// Allowed increase between successive limit deviations (rounding).
pub const MONOTONE_NOISE: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "confpair", version, about = "Configuration-space pairing between forests and graphs")]
pub struct Cli {
    /// Ambient dimension (at least 2); signs depend on its parity.
    #[arg(long, global = true, default_value_t = 2)]
    pub d: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Directory for cached Gram matrices and rank tables.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Seed for every random sample.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Graphs if the input has `->` or starts with `n=`, bracket
    /// expressions if it has `x`, `.` or `·`, forests otherwise.
    Auto,
    Forest,
    Graph,
    Bracket,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Tall,
    Long,
    Partitions,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Pair a graph with a forest (trees may be in any order).
    Pair {
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        forest: Option<String>,
    },
    /// Rewrite a combination (one `coeff * element` per line) in the tall or
    /// long basis.
    Normalize {
        #[arg(long)]
        input: Option<String>,
        #[arg(long, value_enum, default_value_t = Kind::Auto)]
        kind: Kind,
    },
    /// Substitute `inner` for input `index` of `outer` and normalize.
    Compose {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        index: usize,
        #[arg(long)]
        inner: String,
        /// Stop after substitution and Leibniz expansion.
        #[arg(long)]
        raw: bool,
    },
    /// Apply the cooperad map of an o-tree such as `(*,(*,*))` to a graph.
    Cooperad {
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        tau: String,
    },
    /// Gram matrix of long graphs against tall forests with `k` vertices.
    Gram {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Betti numbers as CSV `degree,rank`.
    Ranks {
        #[arg(long)]
        n: usize,
    },
    /// List a basis.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Internal vertices (edges); all degrees if omitted.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = BasisArg::Tall)]
        basis: BasisArg,
    },
    /// Check the perfect pairing (`--n`), or operad/cooperad duality for one
    /// o-tree (`--tau`) or all two-level o-trees up to a leaf count
    /// (`--two-level`). Prints a JSON report.
    Verify {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        tau: Option<String>,
        #[arg(long)]
        two_level: Option<usize>,
    },
    /// Evaluate planetary systems on seeded samples and compare edge
    /// directions with their predicted limits. Prints a JSON report.
    GeomCheck {
        #[arg(long)]
        forest: String,
        #[arg(long)]
        graph: String,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.01,0.001")]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Largest deviation accepted at the smallest epsilon.
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
    },
}

/// What a command printed, and the reason if its check failed.
struct Outcome {
    text: String,
    failure: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, failure: None }
    }

    fn checked(text: String, passed: bool, what: &str) -> Self {
        Outcome { text, failure: (!passed).then(|| what.to_string()) }
    }
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if ok { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return if ok { 0 } else { 1 };
        }
    };
    match execute(&cli, stdin) {
        Ok(o) => {
            let mut text = o.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            if let Err(e) = out.write_all(text.as_bytes()) {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            match o.failure {
                Some(why) => {
                    let _ = writeln!(err, "verification failed: {why}");
                    3
                }
                None => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

struct Stdin<'a> {
    reader: &'a mut dyn Read,
    lines: Option<Vec<String>>,
}

impl Stdin<'_> {
    fn all(&mut self) -> Result<String> {
        let mut s = String::new();
        self.reader.read_to_string(&mut s)?;
        Ok(s)
    }

    fn next_line(&mut self, what: &str) -> Result<String> {
        if self.lines.is_none() {
            let text = self.all()?;
            self.lines = Some(text.lines().map(str::trim).filter(|l| !l.is_empty()).rev().map(String::from).collect());
        }
        self.lines.as_mut().and_then(Vec::pop).ok_or_else(|| CliError::Usage(format!("missing {what} (flag or stdin)")))
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(CliError::Usage(format!("n must be in 1..={MAX_N}")));
    }
    Ok(())
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome> {
    if cli.d < 2 {
        return Err(CliError::Usage("--d must be at least 2".into()));
    }
    let p = Parity::of(cli.d);
    let cache = cli.cache_dir.as_ref().map(Cache::new);
    let mut stdin = Stdin { reader: stdin, lines: None };
    let fmt = cli.format;
    match &cli.command {
        Command::Pair { graph, forest } => {
            let graph = match graph {
                Some(g) => g.clone(),
                None => stdin.next_line("graph")?,
            };
            let forest = match forest {
                Some(f) => f.clone(),
                None => stdin.next_line("forest")?,
            };
            let g = parse_graph(&graph)?;
            let trees = parse_trees(&forest)?;
            Forest::new(trees.clone())?;
            let r = pair_trees(&g, &trees, p)?;
            Ok(Outcome::ok(match fmt {
                Format::Text => r.value.to_string(),
                Format::Json => json(&serde_json::json!({ "value": r.value, "beta": r.beta }))?,
            }))
        }
        Command::Normalize { input, kind } => {
            let text = match input {
                Some(s) => s.clone(),
                None => stdin.all()?,
            };
            let parsed = parse_combo(&text, *kind, p)?;
            Ok(Outcome::ok(match parsed {
                Parsed::Graphs(x) => render_graphs(&normalize_siop(&x, p)?, fmt)?,
                Parsed::Forests(x, style) => render_forests(&normalize_pois(&x, p)?, style, fmt)?,
            }))
        }
        Command::Compose { outer, index, inner, raw } => {
            let (a, sa) = forest_input(outer, p)?;
            let (b, sb) = forest_input(inner, p)?;
            let r = if *raw { substitute(&a, *index, &b, p)? } else { compose(&a, *index, &b, p)? };
            Ok(Outcome::ok(render_forests(&r, sa || sb, fmt)?))
        }
        Command::Cooperad { graph, tau } => {
            let graph = match graph {
                Some(g) => g.clone(),
                None => stdin.next_line("graph")?,
            };
            let g = parse_graph(&graph)?;
            let tau = parse_otree(tau)?;
            let r = cooperad(&g, &tau, p)?;
            Ok(Outcome::ok(match fmt {
                Format::Text => {
                    let factors: Vec<String> = r.factors.iter().map(render_graph).collect();
                    format!("{} * {}", r.sign.to_i32(), factors.join(" | "))
                }
                Format::Json => {
                    let factors: Vec<GraphJson> = r.factors.iter().map(GraphJson::from).collect();
                    json(&serde_json::json!({ "sign": r.sign.to_i32(), "factors": factors }))?
                }
            }))
        }
        Command::Gram { n, k } => {
            check_n(*n)?;
            if k >= n {
                return Err(CliError::Usage(format!("k must be below n = {n}")));
            }
            let m = gram(cache.as_ref(), *n, *k, p)?;
            let text = match fmt {
                Format::Json => json(&GramJson::from(&m))?,
                Format::Text => {
                    let mut s = format!("# identity: {}\n", m.is_identity());
                    for (g, row) in m.rows.iter().zip(&m.entries) {
                        let cells: Vec<String> = row.iter().map(i32::to_string).collect();
                        s += &format!("{}\t{}\n", render_graph(g), cells.join(" "));
                    }
                    s
                }
            };
            Ok(Outcome::checked(text, m.is_identity(), "Gram matrix is not the identity"))
        }
        Command::Ranks { n } => {
            if *n == 0 {
                return Err(CliError::Usage("n must be positive".into()));
            }
            let t = ranks(cache.as_ref(), *n, cli.d)?;
            Ok(Outcome::ok(match fmt {
                Format::Text => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["degree", "rank"])?;
                    for (deg, r) in t.degrees() {
                        w.write_record([deg.to_string(), r.to_string()])?;
                    }
                    String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("ascii")
                }
                Format::Json => {
                    let rows: Vec<serde_json::Value> = t
                        .degrees()
                        .map(|(deg, r)| serde_json::json!({ "degree": deg, "rank": Coeff(BigInt::from(r.clone())) }))
                        .collect();
                    json(&serde_json::json!({
                        "n": t.n, "d": t.d, "ranks": rows, "total": Coeff(BigInt::from(t.total())),
                    }))?
                }
            }))
        }
        Command::Enumerate { n, k, basis } => {
            check_n(*n)?;
            let ks: Vec<usize> = match k {
                Some(k) if k >= n => return Err(CliError::Usage(format!("k must be below n = {n}"))),
                Some(k) => vec![*k],
                None => (0..*n).collect(),
            };
            let mut lines = Vec::new();
            let mut items = Vec::new();
            for k in ks {
                match basis {
                    BasisArg::Tall => {
                        for f in enumerate_tall_forests(*n, k) {
                            lines.push(render_forest(&f));
                            items.push(serde_json::to_value(ForestJson::from(&f))?);
                        }
                    }
                    BasisArg::Long => {
                        for g in enumerate_long_graphs(*n, k) {
                            lines.push(render_graph(&g));
                            items.push(serde_json::to_value(GraphJson::from(&g))?);
                        }
                    }
                    BasisArg::Partitions => {
                        for op in ordered_partitions(*n, k) {
                            let blocks: Vec<String> = op
                                .blocks()
                                .iter()
                                .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
                                .collect();
                            lines.push(blocks.join(" | "));
                            items.push(serde_json::to_value(op.blocks())?);
                        }
                    }
                }
            }
            Ok(Outcome::ok(match fmt {
                Format::Text => lines.join("\n"),
                Format::Json => json(&items)?,
            }))
        }
        Command::Verify { n, tau, two_level } => {
            let chosen = [n.is_some(), tau.is_some(), two_level.is_some()].iter().filter(|&&b| b).count();
            if chosen != 1 {
                return Err(CliError::Usage("verify takes exactly one of --n, --tau, --two-level".into()));
            }
            if let Some(n) = n {
                check_n(*n)?;
                let r = verify_perfect_cached(cache.as_ref(), *n, p)?;
                return Ok(Outcome::checked(json(&PerfectJson::new(&r, cli.d))?, r.passed(), "pairing not perfect"));
            }
            let taus = match (tau, two_level) {
                (Some(t), _) => vec![parse_otree(t)?],
                (_, Some(m)) if (1..=6).contains(m) => two_level_otrees(*m),
                _ => return Err(CliError::Usage("--two-level must be in 1..=6".into())),
            };
            let reports = taus.iter().map(|t| par_check_duality(t, p)).collect::<Result<Vec<_>>>()?;
            let passed = reports.iter().all(|r| r.failures.is_empty());
            let jsons: Vec<DualityJson> = reports.iter().map(|r| DualityJson::new(r, cli.d)).collect();
            let text = if tau.is_some() { json(&jsons[0])? } else { json(&jsons)? };
            Ok(Outcome::checked(text, passed, "duality fails"))
        }
        Command::GeomCheck { forest, graph, eps, samples, tol } => {
            let f = parse_forest(forest)?;
            let g = parse_graph(graph)?;
            let d = usize::try_from(cli.d).map_err(|_| CliError::Usage("--d too large".into()))?;
            if eps.is_empty() || *samples == 0 {
                return Err(CliError::Usage("need at least one epsilon and one sample".into()));
            }
            let mut r = rng(cli.seed);
            let points: Vec<_> = (0..*samples).map(|_| random_torus_point(&mut r, f.vertex_count(), d)).collect();
            let report = limit_check(&f, &g, d, eps, &points)?;
            let smallest = Epsilon::new(eps.iter().copied().fold(f64::INFINITY, f64::min))?;
            let mut defect = 0.0f64;
            let mut min_sep = f64::INFINITY;
            for u in &points {
                for &e in eps {
                    let e = Epsilon::new(e)?;
                    let c = eval_system(&f, e, u, d)?;
                    defect = defect.max(planetary_defect(&f, e, u, &c)?);
                    if e == smallest {
                        min_sep = min_sep.min(c.min_separation());
                    }
                }
            }
            let bound = separation_bound(&f, smallest);
            let converged = report.converges(*tol, MONOTONE_NOISE)
                && defect <= IDENTITY_TOLERANCE
                && (f.n() < 2 || min_sep >= bound * (1.0 - IDENTITY_TOLERANCE));
            let out = GeometryJson {
                forest: render_forest(&f),
                graph: render_graph(&g),
                d,
                eps: report.eps.clone(),
                samples: *samples,
                max_deviation: report.max_deviation.clone(),
                per_edge: edges_json(&report),
                identity_defect: defect,
                min_separation: if min_sep.is_finite() { min_sep } else { 0.0 },
                separation_bound: bound,
                converged,
            };
            Ok(Outcome::checked(json(&out)?, converged, "limits or identities out of tolerance"))
        }
    }
}

enum Parsed {
    Forests(LinCombo<Forest>, bool),
    Graphs(LinCombo<Graph>),
}

fn detect(text: &str) -> Kind {
    if text.contains("->") || text.trim_start().starts_with("n=") {
        Kind::Graph
    } else if text.contains(['x', '.', '·']) {
        Kind::Bracket
    } else {
        Kind::Forest
    }
}

fn parse_combo(text: &str, kind: Kind, p: Parity) -> Result<Parsed> {
    let kind = if kind == Kind::Auto { detect(text) } else { kind };
    Ok(match kind {
        Kind::Graph => {
            let terms = parse_terms(text, |s| Ok((parse_graph(s)?, BigInt::from(1))))?;
            Parsed::Graphs(terms.into_iter().fold(LinCombo::zero(), |mut x, (g, c)| {
                x.add_term(g, c);
                x
            }))
        }
        Kind::Bracket => {
            let terms = parse_terms(text, |s| Ok((parse_bracket(s)?, BigInt::from(1))))?;
            let x: LinCombo<BracketExpr> = terms.into_iter().fold(LinCombo::zero(), |mut x, (e, c)| {
                x.add_term(e, c);
                x
            });
            Parsed::Forests(reduce_bracket(&x, p)?, true)
        }
        Kind::Forest | Kind::Auto => {
            let terms = parse_terms(text, |s| {
                let (f, sign) = canonical_forest(parse_trees(s)?, p)?;
                Ok((f, sign.to_bigint()))
            })?;
            Parsed::Forests(
                terms.into_iter().fold(LinCombo::zero(), |mut x, (f, c)| {
                    x.add_term(f, c);
                    x
                }),
                false,
            )
        }
    })
}

fn forest_input(text: &str, p: Parity) -> Result<(LinCombo<Forest>, bool)> {
    match parse_combo(text, Kind::Auto, p)? {
        Parsed::Forests(x, style) => Ok((x, style)),
        Parsed::Graphs(_) => Err(CliError::Usage("expected forests or bracket expressions, got a graph".into())),
    }
}

fn render_forests(x: &LinCombo<Forest>, bracket_style: bool, fmt: Format) -> Result<String> {
    match fmt {
        Format::Json => json(&forest_combo_to_json(x, 0)),
        Format::Text if bracket_style => Ok(render_lincombo(x, render_forest_expr)),
        Format::Text => Ok(render_lincombo(x, render_forest)),
    }
}

fn render_graphs(x: &LinCombo<Graph>, fmt: Format) -> Result<String> {
    match fmt {
        Format::Json => json(&graph_combo_to_json(x, 0)),
        Format::Text => Ok(render_lincombo(x, render_graph)),
    }
}
