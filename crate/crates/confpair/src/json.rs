//! JSON mirrors of the core types.
//!
//! Trees are `{"leaf": 3}` or `{"node": [left, right]}`; forests
//! `{"n", "trees"}` with trees in canonical order; graphs `{"n", "edges"}`
//! with edges as `[source, target]` pairs in order; o-trees `"leaf"` or
//! `{"vertex": [children...]}`; combinations `{"n", "terms": [{"coeff",
//! "element"}]}` with `coeff` a number when it fits in `i64`, else a
//! decimal string.

use std::str::FromStr;

use confpair_core::{Error as CoreError, Forest, Graph, LinCombo, OTree, Tree};
use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeJson {
    Leaf(usize),
    Node(Box<TreeJson>, Box<TreeJson>),
}

impl From<&Tree> for TreeJson {
    fn from(t: &Tree) -> Self {
        match t {
            Tree::Leaf(x) => TreeJson::Leaf(*x),
            Tree::Node(l, r) => TreeJson::Node(Box::new(l.as_ref().into()), Box::new(r.as_ref().into())),
        }
    }
}

impl From<&TreeJson> for Tree {
    fn from(t: &TreeJson) -> Self {
        match t {
            TreeJson::Leaf(x) => Tree::Leaf(*x),
            TreeJson::Node(l, r) => Tree::node(l.as_ref().into(), r.as_ref().into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestJson {
    pub n: usize,
    pub trees: Vec<TreeJson>,
}

impl From<&Forest> for ForestJson {
    fn from(f: &Forest) -> Self {
        ForestJson { n: f.n(), trees: f.trees().iter().map(TreeJson::from).collect() }
    }
}

impl TryFrom<&ForestJson> for Forest {
    type Error = CoreError;

    /// Rejects trees out of canonical order, whose reordering would carry a
    /// sign.
    fn try_from(j: &ForestJson) -> Result<Forest, CoreError> {
        let trees: Vec<Tree> = j.trees.iter().map(Tree::from).collect();
        let f = Forest::new(trees.clone())?;
        if f.trees() != trees.as_slice() {
            return Err(CoreError::Invalid("trees must be sorted by minimal leaf".into()));
        }
        if f.n() != j.n {
            return Err(CoreError::Mismatch(format!("n = {} but the trees carry {} leaves", j.n, f.n())));
        }
        Ok(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().to_vec() }
    }
}

impl TryFrom<&GraphJson> for Graph {
    type Error = CoreError;

    fn try_from(j: &GraphJson) -> Result<Graph, CoreError> {
        Graph::new(j.n, j.edges.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OTreeJson {
    Leaf,
    Vertex(Vec<OTreeJson>),
}

impl From<&OTree> for OTreeJson {
    fn from(t: &OTree) -> Self {
        match t {
            OTree::Leaf => OTreeJson::Leaf,
            OTree::Vertex(cs) => OTreeJson::Vertex(cs.iter().map(OTreeJson::from).collect()),
        }
    }
}

impl TryFrom<&OTreeJson> for OTree {
    type Error = CoreError;

    fn try_from(j: &OTreeJson) -> Result<OTree, CoreError> {
        fn build(j: &OTreeJson) -> OTree {
            match j {
                OTreeJson::Leaf => OTree::Leaf,
                OTreeJson::Vertex(cs) => OTree::Vertex(cs.iter().map(build).collect()),
            }
        }
        let t = build(j);
        t.validate()?;
        Ok(t)
    }
}

/// Integer coefficient: a JSON number when it fits in `i64`, otherwise a
/// decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coeff(pub BigInt);

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Coeff(BigInt::from(v))),
            Raw::Str(s) => BigInt::from_str(&s).map(Coeff).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson<E> {
    pub coeff: Coeff,
    pub element: E,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinComboJson<E> {
    pub n: usize,
    pub terms: Vec<TermJson<E>>,
}

fn combo_to_json<B: Ord, E>(x: &LinCombo<B>, n: usize, element: impl Fn(&B) -> E) -> LinComboJson<E> {
    LinComboJson { n, terms: x.iter().map(|(b, c)| TermJson { coeff: Coeff(c.clone()), element: element(b) }).collect() }
}

/// `n` is used for the zero combination, which has no terms to read it from.
pub fn forest_combo_to_json(x: &LinCombo<Forest>, n: usize) -> LinComboJson<ForestJson> {
    combo_to_json(x, x.keys().next().map_or(n, Forest::n), |f| ForestJson::from(f))
}

pub fn graph_combo_to_json(x: &LinCombo<Graph>, n: usize) -> LinComboJson<GraphJson> {
    combo_to_json(x, x.keys().next().map_or(n, Graph::n), |g| GraphJson::from(g))
}

fn combo_from_json<B: Ord + Clone, E>(
    j: &LinComboJson<E>,
    element: impl Fn(&E) -> Result<B, CoreError>,
    size: impl Fn(&B) -> usize,
) -> Result<LinCombo<B>, CoreError> {
    let mut out = LinCombo::zero();
    for t in &j.terms {
        let b = element(&t.element)?;
        if size(&b) != j.n {
            return Err(CoreError::Mismatch(format!("term of size {} in a combination with n = {}", size(&b), j.n)));
        }
        out.add_term(b, t.coeff.0.clone());
    }
    Ok(out)
}

pub fn forest_combo_from_json(j: &LinComboJson<ForestJson>) -> Result<LinCombo<Forest>, CoreError> {
    combo_from_json(j, |e| Forest::try_from(e), Forest::n)
}

pub fn graph_combo_from_json(j: &LinComboJson<GraphJson>) -> Result<LinCombo<Graph>, CoreError> {
    combo_from_json(j, |e| Graph::try_from(e), Graph::n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use confpair_core::combinatorics::text::{parse_forest, parse_graph, parse_otree};

    #[test]
    fn shapes() {
        let f = parse_forest("[[2,1],3]; 4").unwrap();
        let j = serde_json::to_string(&ForestJson::from(&f)).unwrap();
        assert_eq!(j, r#"{"n":4,"trees":[{"node":[{"node":[{"leaf":2},{"leaf":1}]},{"leaf":3}]},{"leaf":4}]}"#);
        let g = parse_graph("n=3; 2->1").unwrap();
        assert_eq!(serde_json::to_string(&GraphJson::from(&g)).unwrap(), r#"{"n":3,"edges":[[2,1]]}"#);
        let t = parse_otree("(*,(*,*))").unwrap();
        assert_eq!(serde_json::to_string(&OTreeJson::from(&t)).unwrap(), r#"{"vertex":["leaf",{"vertex":["leaf","leaf"]}]}"#);
    }

    #[test]
    fn big_coefficients_become_strings() {
        let big: BigInt = BigInt::from(i64::MAX) * 4;
        assert_eq!(serde_json::to_string(&Coeff(big.clone())).unwrap(), format!("\"{big}\""));
        assert_eq!(serde_json::to_string(&Coeff(BigInt::from(-3))).unwrap(), "-3");
        let back: Coeff = serde_json::from_str(&format!("\"{big}\"")).unwrap();
        assert_eq!(back.0, big);
    }

    #[test]
    fn non_canonical_forest_rejected() {
        let j = ForestJson { n: 2, trees: vec![TreeJson::Leaf(2), TreeJson::Leaf(1)] };
        assert!(Forest::try_from(&j).is_err());
    }
}
