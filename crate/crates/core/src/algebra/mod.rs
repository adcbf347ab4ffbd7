//! Integer combinations of forests and graphs, the relations presenting the
//! Poisson operad and its dual, and rewriting to the tall and long bases.

mod bracket;
mod lincombo;
mod pois;
mod siop;

pub use bracket::{parse_bracket, reduce_bracket, reduce_bracket_expr, render_bracket, render_forest_expr, BracketExpr};
pub use lincombo::{parse_terms, render_lincombo, LinCombo};
pub use pois::{canonical_forest, normalize_pois, PoisNormalizer};
pub use siop::{normalize_graph, normalize_siop};
