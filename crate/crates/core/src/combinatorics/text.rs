//! Text grammar.
//!
//! ```text
//! tree   := INT | "[" tree "," tree "]"
//! forest := tree (";" tree)*
//! graph  := "n=" INT ";" [edge ("," edge)*]      edge := INT "->" INT
//! otree  := "(" [child ("," child)*] ")"        child := "*" | otree
//! ```
//! Whitespace is ignored between tokens. Rendering is byte-deterministic.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Forest, Graph, OTree, Tree};
use crate::error::{Error, Result};

pub(crate) struct Scanner<'a> {
    src: &'a str,
    pub pos: usize,
}

impl<'a> Scanner<'a> {
    pub fn new(src: &'a str) -> Self {
        Scanner { src, pos: 0 }
    }

    pub fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    pub fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err("expected integer"));
        }
        let v = self.rest()[..digits].parse().map_err(|_| self.err("integer too large"))?;
        self.pos += digits;
        Ok(v)
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

fn tree(sc: &mut Scanner) -> Result<Tree> {
    if sc.eat('[') {
        let l = tree(sc)?;
        sc.expect(',')?;
        let r = tree(sc)?;
        sc.expect(']')?;
        Ok(Tree::node(l, r))
    } else {
        Ok(Tree::Leaf(sc.int()?))
    }
}

pub fn parse_tree(text: &str) -> Result<Tree> {
    let mut sc = Scanner::new(text);
    let t = tree(&mut sc)?;
    sc.finish()?;
    t.validate()?;
    Ok(t)
}

/// Trees in the order written (not canonicalized).
pub fn parse_trees(text: &str) -> Result<Vec<Tree>> {
    let mut sc = Scanner::new(text);
    let mut trees = alloc::vec![tree(&mut sc)?];
    while sc.eat(';') {
        trees.push(tree(&mut sc)?);
    }
    sc.finish()?;
    Ok(trees)
}

/// Parses and canonicalizes; see [`Forest::with_sign`] for the sign of the
/// reordering.
pub fn parse_forest(text: &str) -> Result<Forest> {
    Forest::new(parse_trees(text)?)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut sc = Scanner::new(text);
    if !sc.eat_str("n=") {
        return Err(sc.err("expected 'n='"));
    }
    let n = sc.int()?;
    sc.expect(';')?;
    let mut edges = Vec::new();
    if !sc.at_end() {
        loop {
            let i = sc.int()?;
            if !sc.eat_str("->") {
                return Err(sc.err("expected '->'"));
            }
            edges.push((i, sc.int()?));
            if !sc.eat(',') {
                break;
            }
        }
    }
    sc.finish()?;
    Graph::new(n, edges)
}

fn otree(sc: &mut Scanner) -> Result<OTree> {
    if sc.eat('*') {
        return Ok(OTree::Leaf);
    }
    sc.expect('(')?;
    let mut cs = Vec::new();
    if !sc.eat(')') {
        loop {
            cs.push(otree(sc)?);
            if sc.eat(')') {
                break;
            }
            sc.expect(',')?;
        }
    }
    Ok(OTree::Vertex(cs))
}

pub fn parse_otree(text: &str) -> Result<OTree> {
    let mut sc = Scanner::new(text);
    let t = otree(&mut sc)?;
    sc.finish()?;
    t.validate()?;
    Ok(t)
}

pub fn render_tree(t: &Tree) -> String {
    let mut s = String::new();
    push_tree(t, &mut s);
    s
}

fn push_tree(t: &Tree, s: &mut String) {
    match t {
        Tree::Leaf(x) => s.push_str(&x.to_string()),
        Tree::Node(l, r) => {
            s.push('[');
            push_tree(l, s);
            s.push(',');
            push_tree(r, s);
            s.push(']');
        }
    }
}

pub fn render_trees(trees: &[Tree]) -> String {
    trees.iter().map(render_tree).collect::<Vec<_>>().join("; ")
}

pub fn render_forest(f: &Forest) -> String {
    render_trees(f.trees())
}

pub fn render_graph(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(i, j)| format!("{i}->{j}")).collect();
    if edges.is_empty() {
        format!("n={};", g.n())
    } else {
        format!("n={}; {}", g.n(), edges.join(", "))
    }
}

pub fn render_otree(t: &OTree) -> String {
    match t {
        OTree::Leaf => "*".to_string(),
        OTree::Vertex(cs) => format!("({})", cs.iter().map(render_otree).collect::<Vec<_>>().join(",")),
    }
}
