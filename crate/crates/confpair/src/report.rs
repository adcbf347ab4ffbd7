//! Machine-readable reports.

use confpair_core::algebra::render_forest_expr;
use confpair_core::combinatorics::text::{render_forest, render_graph, render_otree};
use confpair_core::geometry::{LimitReport, LimitTarget};
use confpair_core::operad::DualityReport;
use confpair_core::pairing::{DegreeReport, PerfectReport};
use serde::Serialize;

use crate::json::Coeff;

#[derive(Clone, Debug, Serialize)]
pub struct EntryFailure {
    pub graph: String,
    pub forest: String,
    pub value: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeJson {
    pub k: usize,
    /// Cohomological degree `k (d - 1)`.
    pub degree: u64,
    pub size: usize,
    pub expected_size: String,
    pub identity: bool,
    pub failures: Vec<EntryFailure>,
}

impl DegreeJson {
    fn new(r: &DegreeReport, d: u64) -> Self {
        DegreeJson {
            k: r.k,
            degree: r.k as u64 * (d - 1),
            size: r.size,
            expected_size: r.expected_size.to_string(),
            identity: r.failures.is_empty(),
            failures: r
                .failures
                .iter()
                .map(|(g, f, v)| EntryFailure { graph: render_graph(g), forest: render_forest(f), value: *v })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PerfectJson {
    pub n: usize,
    pub d: u64,
    pub parity: &'static str,
    pub passed: bool,
    pub degrees: Vec<DegreeJson>,
    pub first_degree: DegreeJson,
}

impl PerfectJson {
    pub fn new(r: &PerfectReport, d: u64) -> Self {
        PerfectJson {
            n: r.n,
            d,
            parity: r.parity.name(),
            passed: r.passed(),
            degrees: r.degrees.iter().map(|x| DegreeJson::new(x, d)).collect(),
            first_degree: DegreeJson::new(&r.first_degree, d),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityFailureJson {
    pub forests: Vec<String>,
    pub graph: String,
    pub composed: Coeff,
    pub factorwise: Coeff,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityJson {
    pub tau: String,
    pub d: u64,
    pub cases_checked: usize,
    pub failures: Vec<DualityFailureJson>,
}

impl DualityJson {
    pub fn new(r: &DualityReport, d: u64) -> Self {
        DualityJson {
            tau: render_otree(&r.tau),
            d,
            cases_checked: r.cases_checked,
            failures: r
                .failures
                .iter()
                .map(|f| DualityFailureJson {
                    forests: f.forests.iter().map(render_forest_expr).collect(),
                    graph: render_graph(&f.graph),
                    composed: Coeff(f.composed.clone()),
                    factorwise: Coeff(f.factorwise.clone()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeJson {
    pub edge: (usize, usize),
    /// `"+axis"`, `"-axis"`, `"+u3"`, `"-u0"`, ...: the predicted limit.
    pub target: String,
    pub deviations: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeometryJson {
    pub forest: String,
    pub graph: String,
    pub d: usize,
    pub eps: Vec<f64>,
    pub samples: usize,
    pub max_deviation: Vec<f64>,
    pub per_edge: Vec<EdgeJson>,
    /// Largest violation of the center and distance identities.
    pub identity_defect: f64,
    /// Smallest pairwise distance seen, and the predicted lower bound, at
    /// the smallest epsilon.
    pub min_separation: f64,
    pub separation_bound: f64,
    pub converged: bool,
}

pub fn target_name(t: &LimitTarget) -> String {
    let s = |sign: confpair_core::Sign| if sign.is_minus() { '-' } else { '+' };
    match t {
        LimitTarget::Axis(sign) => format!("{}axis", s(*sign)),
        LimitTarget::Vertex { vertex, sign } => format!("{}u{vertex}", s(*sign)),
    }
}

pub fn edges_json(r: &LimitReport) -> Vec<EdgeJson> {
    r.per_edge
        .iter()
        .map(|e| EdgeJson { edge: e.edge, target: target_name(&e.target), deviations: e.deviations.clone() })
        .collect()
}
