//! Bracket expressions and their Leibniz reduction to forests.
//!
//! Text form: variables `x1` (or `1`, or `x₁`), brackets `[a,b]`, products
//! joined by `.` (`·` and `*` are accepted on input), parentheses for
//! grouping.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::pois::canonical_forest;
use super::LinCombo;
use crate::combinatorics::text::Scanner;
use crate::combinatorics::{Forest, Tree};
use crate::error::{invalid, Error, Result};
use crate::sign::Parity;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BracketExpr {
    Var(usize),
    Dot(Box<BracketExpr>, Box<BracketExpr>),
    Bracket(Box<BracketExpr>, Box<BracketExpr>),
}

impl BracketExpr {
    pub fn dot(a: BracketExpr, b: BracketExpr) -> Self {
        BracketExpr::Dot(Box::new(a), Box::new(b))
    }

    pub fn bracket(a: BracketExpr, b: BracketExpr) -> Self {
        BracketExpr::Bracket(Box::new(a), Box::new(b))
    }

    pub fn from_tree(t: &Tree) -> Self {
        match t {
            Tree::Leaf(x) => BracketExpr::Var(*x),
            Tree::Node(l, r) => Self::bracket(Self::from_tree(l), Self::from_tree(r)),
        }
    }

    /// Dot product of the trees' bracket words, in storage order.
    pub fn from_trees(trees: &[Tree]) -> Self {
        let mut it = trees.iter().map(Self::from_tree);
        let first = it.next().expect("a forest has at least one tree");
        it.fold(first, Self::dot)
    }

    pub fn from_forest(f: &Forest) -> Self {
        Self::from_trees(f.trees())
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.push_vars(&mut out);
        out
    }

    fn push_vars(&self, out: &mut Vec<usize>) {
        match self {
            BracketExpr::Var(x) => out.push(*x),
            BracketExpr::Dot(a, b) | BracketExpr::Bracket(a, b) => {
                a.push_vars(out);
                b.push_vars(out);
            }
        }
    }

    pub fn bracket_count(&self) -> usize {
        match self {
            BracketExpr::Var(_) => 0,
            BracketExpr::Dot(a, b) => a.bracket_count() + b.bracket_count(),
            BracketExpr::Bracket(a, b) => 1 + a.bracket_count() + b.bracket_count(),
        }
    }

    pub fn relabel(&self, f: &impl Fn(usize) -> usize) -> Self {
        match self {
            BracketExpr::Var(x) => BracketExpr::Var(f(*x)),
            BracketExpr::Dot(a, b) => Self::dot(a.relabel(f), b.relabel(f)),
            BracketExpr::Bracket(a, b) => Self::bracket(a.relabel(f), b.relabel(f)),
        }
    }

    /// Replaces the variable `x_i` by `e`.
    pub fn substitute(&self, i: usize, e: &BracketExpr) -> Self {
        match self {
            BracketExpr::Var(x) if *x == i => e.clone(),
            BracketExpr::Var(_) => self.clone(),
            BracketExpr::Dot(a, b) => Self::dot(a.substitute(i, e), b.substitute(i, e)),
            BracketExpr::Bracket(a, b) => Self::bracket(a.substitute(i, e), b.substitute(i, e)),
        }
    }
}

fn subscript_digit(c: char) -> Option<u32> {
    let v = c as u32;
    (0x2080..=0x2089).contains(&v).then(|| v - 0x2080)
}

fn variable(sc: &mut Scanner) -> Result<usize> {
    sc.eat('x');
    if sc.peek().and_then(subscript_digit).is_some() {
        let mut v = 0usize;
        while let Some(d) = sc.peek().and_then(subscript_digit) {
            v = v.checked_mul(10).and_then(|v| v.checked_add(d as usize)).ok_or_else(|| sc.err("integer too large"))?;
            sc.pos += 3;
        }
        Ok(v)
    } else {
        sc.int()
    }
}

fn atom(sc: &mut Scanner) -> Result<BracketExpr> {
    if sc.eat('[') {
        let a = product(sc)?;
        sc.expect(',')?;
        let b = product(sc)?;
        sc.expect(']')?;
        Ok(BracketExpr::bracket(a, b))
    } else if sc.eat('(') {
        let a = product(sc)?;
        sc.expect(')')?;
        Ok(a)
    } else {
        Ok(BracketExpr::Var(variable(sc)?))
    }
}

fn product(sc: &mut Scanner) -> Result<BracketExpr> {
    let mut e = atom(sc)?;
    while sc.eat('.') || sc.eat('·') || sc.eat('*') {
        e = BracketExpr::dot(e, atom(sc)?);
    }
    Ok(e)
}

pub fn parse_bracket(text: &str) -> Result<BracketExpr> {
    let mut sc = Scanner::new(text);
    let e = product(&mut sc)?;
    sc.finish()?;
    check_variables(&e)?;
    Ok(e)
}

/// Variables must be exactly `1..=n`, each once; returns `n`.
fn check_variables(e: &BracketExpr) -> Result<usize> {
    let mut vars = e.variables();
    vars.sort_unstable();
    for (k, &x) in vars.iter().enumerate() {
        if x != k + 1 {
            return Err(if k > 0 && x == vars[k - 1] {
                invalid!("repeated variable x{x}")
            } else {
                invalid!("variables must be exactly x1..x{}", vars.len())
            });
        }
    }
    Ok(vars.len())
}

pub fn render_bracket(e: &BracketExpr) -> String {
    match e {
        BracketExpr::Var(x) => format!("x{x}"),
        BracketExpr::Bracket(a, b) => format!("[{},{}]", render_bracket(a), render_bracket(b)),
        BracketExpr::Dot(a, b) => {
            let wrap = |e: &BracketExpr| match e {
                BracketExpr::Dot(..) => format!("({})", render_bracket(e)),
                _ => render_bracket(e),
            };
            // products are left-associative, so only the right side needs grouping
            format!("{}.{}", render_bracket(a), wrap(b))
        }
    }
}

/// A forest written as a dot product of bracket words.
pub fn render_forest_expr(f: &Forest) -> String {
    f.trees().iter().map(|t| render_bracket(&BracketExpr::from_tree(t))).collect::<Vec<_>>().join(".")
}

/// Ordered products of pure bracket words.
type Products = LinCombo<Vec<Tree>>;

struct Reducer {
    parity: Parity,
}

impl Reducer {
    fn expr(&self, e: &BracketExpr) -> Products {
        match e {
            BracketExpr::Var(x) => LinCombo::basis(alloc::vec![Tree::Leaf(*x)]),
            BracketExpr::Dot(a, b) => {
                let (ra, rb) = (self.expr(a), self.expr(b));
                let mut out = LinCombo::zero();
                for (pa, ca) in ra.iter() {
                    for (pb, cb) in rb.iter() {
                        let mut p = pa.clone();
                        p.extend_from_slice(pb);
                        out.add_term(p, ca * cb);
                    }
                }
                out
            }
            BracketExpr::Bracket(a, b) => {
                let (ra, rb) = (self.expr(a), self.expr(b));
                let mut out = LinCombo::zero();
                for (pa, ca) in ra.iter() {
                    for (pb, cb) in rb.iter() {
                        out.add_scaled(&self.bracket(pa, pb), &(ca * cb));
                    }
                }
                out
            }
        }
    }

    /// `[a1...ar, b1...bs]` expanded by the Leibniz rule.
    fn bracket(&self, a: &[Tree], b: &[Tree]) -> Products {
        let count = |p: &[Tree]| p.iter().map(Tree::vertex_count).sum::<usize>();
        if b.len() > 1 {
            // [X, Y.Z] = s Y.[X,Z] + [X,Y].Z
            let (y, z) = (&b[..1], &b[1..]);
            let s = self.parity.leibniz(count(a), count(y));
            let mut out = LinCombo::zero();
            for (p, c) in self.bracket(a, z).iter() {
                let mut q = y.to_vec();
                q.extend_from_slice(p);
                out.add_signed(q, c, s);
            }
            for (p, c) in self.bracket(a, y).iter() {
                let mut q = p.clone();
                q.extend_from_slice(z);
                out.add_term(q, c.clone());
            }
            out
        } else if a.len() > 1 {
            let s = self.parity.antisymmetry(count(a), count(b));
            self.bracket(b, a).scaled(&s.to_bigint())
        } else {
            LinCombo::basis(alloc::vec![Tree::node(a[0].clone(), b[0].clone())])
        }
    }
}

/// Expands every product inside a bracket by the Leibniz rule and reads the
/// resulting products of bracket words as forests (not yet tall).
pub fn reduce_bracket_expr(e: &BracketExpr, p: Parity) -> Result<LinCombo<Forest>> {
    check_variables(e)?;
    let products = Reducer { parity: p }.expr(e);
    let mut out = LinCombo::zero();
    for (trees, c) in products.iter() {
        let (f, s) = canonical_forest(trees.clone(), p)?;
        out.add_signed(f, c, s);
    }
    Ok(out)
}

pub fn reduce_bracket(x: &LinCombo<BracketExpr>, p: Parity) -> Result<LinCombo<Forest>> {
    let mut out = LinCombo::zero();
    let mut n = None;
    for (e, c) in x.iter() {
        let m = e.variables().len();
        if *n.get_or_insert(m) != m {
            return Err(Error::Mismatch("expressions in different numbers of variables".to_string()));
        }
        out.add_scaled(&reduce_bracket_expr(e, p)?, c);
    }
    Ok(out)
}
