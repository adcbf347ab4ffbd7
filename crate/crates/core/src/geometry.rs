//! Planetary systems: the torus of configurations attached to a forest.
//!
//! Every internal vertex `v` at height `h(v)` (the root vertex of a tree has
//! height 1) carries a unit vector `u_v`; leaf `x` sits at the tree's center
//! `(t, 0, ..., 0)` plus `sum +- eps^{h(v)} u_v` over the vertices on its
//! root path, with `+` when the path continues left.

use alloc::vec;
use alloc::vec::Vec;

use crate::combinatorics::{Forest, Graph, Layout, Tree};
use crate::error::{invalid, mismatch, Error, Result};
use crate::sign::Sign;

pub const UNIT_TOLERANCE: f64 = 1e-12;
/// Distances below this count as coincident points.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-300;

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Epsilon(f64);

impl Epsilon {
    pub fn new(eps: f64) -> Result<Epsilon> {
        if eps > 0.0 && eps < 1.0 / 3.0 {
            Ok(Epsilon(eps))
        } else {
            Err(invalid!("epsilon {eps} outside (0, 1/3)"))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn pow(self, h: usize) -> f64 {
        (0..h).fold(1.0, |acc, _| acc * self.0)
    }
}

/// One unit vector per internal vertex, in global in-order.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint {
    vectors: Vec<Vec<f64>>,
}

impl TorusPoint {
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<TorusPoint> {
        for v in &vectors {
            if (norm(v) - 1.0).abs() > UNIT_TOLERANCE {
                return Err(invalid!("vector of norm {} is not a unit vector", norm(v)));
            }
        }
        Ok(TorusPoint { vectors })
    }

    /// Normalizes arbitrary nonzero vectors.
    pub fn from_directions(vectors: Vec<Vec<f64>>) -> Result<TorusPoint> {
        let vectors = vectors
            .into_iter()
            .map(|v| unit(&v).ok_or_else(|| Error::Numeric("zero direction".into())))
            .collect::<Result<_>>()?;
        Ok(TorusPoint { vectors })
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    pub d: usize,
    /// `points[i - 1]` is the position of label `i`.
    pub points: Vec<Vec<f64>>,
}

impl Configuration {
    pub fn point(&self, label: usize) -> Result<&[f64]> {
        self.points
            .get(label.wrapping_sub(1))
            .map(Vec::as_slice)
            .ok_or(Error::LabelOutOfRange { label, n: self.points.len() })
    }

    /// Smallest pairwise distance.
    pub fn min_separation(&self) -> f64 {
        let mut m = f64::INFINITY;
        for a in 0..self.points.len() {
            for b in a + 1..self.points.len() {
                m = m.min(dist(&self.points[a], &self.points[b]));
            }
        }
        m
    }
}

pub fn norm(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

fn unit(v: &[f64]) -> Option<Vec<f64>> {
    let r = norm(v);
    (r > COINCIDENCE_TOLERANCE).then(|| v.iter().map(|x| x / r).collect())
}

fn check(f: &Forest, u: &TorusPoint, d: usize) -> Result<()> {
    if d < 2 {
        return Err(invalid!("dimension must be at least 2"));
    }
    if u.vectors.len() != f.vertex_count() {
        return Err(mismatch!("{} vectors for {} internal vertices", u.vectors.len(), f.vertex_count()));
    }
    if u.vectors.iter().any(|v| v.len() != d) {
        return Err(mismatch!("vectors must lie in R^{d}"));
    }
    Ok(())
}

/// The configuration of the planetary system of `f` at `(eps, u)`; the
/// trees are centered at `(1,0,..)`, `(2,0,..)`, ... in storage order.
pub fn eval_system(f: &Forest, eps: Epsilon, u: &TorusPoint, d: usize) -> Result<Configuration> {
    check(f, u, d)?;
    let layout = f.layout();
    let mut points = Vec::with_capacity(f.n());
    for (tree, path) in layout.tree_of.iter().zip(&layout.paths) {
        let mut x = vec![0.0; d];
        x[0] = (tree + 1) as f64;
        for (depth, step) in path.iter().enumerate() {
            let r = eps.pow(depth + 1);
            let s = if step.right { -r } else { r };
            for (xi, ui) in x.iter_mut().zip(&u.vectors[step.vertex]) {
                *xi += s * ui;
            }
        }
        points.push(x);
    }
    Ok(Configuration { d, points })
}

/// `(x_j - x_i) / |x_j - x_i|`.
pub fn alpha(c: &Configuration, i: usize, j: usize) -> Result<Vec<f64>> {
    let (a, b) = (c.point(i)?, c.point(j)?);
    let diff: Vec<f64> = b.iter().zip(a).map(|(y, x)| y - x).collect();
    unit(&diff).ok_or_else(|| Error::Numeric(alloc::format!("points {i} and {j} coincide")))
}

/// `|x_i - x_j| / |x_i - x_k|`, infinite when `x_i = x_k`.
pub fn s_ratio(c: &Configuration, i: usize, j: usize, k: usize) -> Result<f64> {
    if i == j || j == k || i == k {
        return Err(invalid!("s_ratio needs distinct indices"));
    }
    let (a, b, e) = (c.point(i)?, c.point(j)?, c.point(k)?);
    let den = dist(a, e);
    if den <= COINCIDENCE_TOLERANCE {
        return Ok(f64::INFINITY);
    }
    Ok(dist(a, b) / den)
}

/// Largest violation, over every vertex, of the planetary-system identities:
/// each tree centered at its offset, centers as midpoints of their two
/// subtree centers, and `c(T_v^L) - c(T_v) = eps^{h(v)} u_v = c(T_v) - c(T_v^R)`.
pub fn planetary_defect(f: &Forest, eps: Epsilon, u: &TorusPoint, c: &Configuration) -> Result<f64> {
    check(f, u, c.d)?;
    let mut defect = 0.0f64;
    let mut offset = 0;
    for (ti, t) in f.trees().iter().enumerate() {
        let center = centers(t, c, eps, u, offset, 1, &mut defect)?;
        let mut expected = vec![0.0; c.d];
        expected[0] = (ti + 1) as f64;
        defect = defect.max(dist(&center, &expected));
        offset += t.vertex_count();
    }
    Ok(defect)
}

fn centers(
    t: &Tree,
    c: &Configuration,
    eps: Epsilon,
    u: &TorusPoint,
    offset: usize,
    height: usize,
    defect: &mut f64,
) -> Result<Vec<f64>> {
    match t {
        Tree::Leaf(x) => Ok(c.point(*x)?.to_vec()),
        Tree::Node(l, r) => {
            let v = offset + l.vertex_count();
            let cl = centers(l, c, eps, u, offset, height + 1, defect)?;
            let cr = centers(r, c, eps, u, v + 1, height + 1, defect)?;
            let mid: Vec<f64> = cl.iter().zip(&cr).map(|(a, b)| (a + b) / 2.0).collect();
            let radius = eps.pow(height);
            let want_l: Vec<f64> = mid.iter().zip(&u.vectors[v]).map(|(m, w)| m + radius * w).collect();
            *defect = defect.max(dist(&cl, &want_l));
            *defect = defect.max((dist(&cl, &mid) - radius).abs());
            *defect = defect.max((dist(&mid, &cr) - radius).abs());
            Ok(mid)
        }
    }
}

/// Lower bound `eps^{H} (1 - 3 eps)` on pairwise distances, `H` the largest
/// vertex height.
pub fn separation_bound(f: &Forest, eps: Epsilon) -> f64 {
    let h = f.layout().heights().into_iter().max().unwrap_or(0);
    eps.pow(h) * (1.0 - 3.0 * eps.get())
}

/// Predicted limit of the direction `x_i - x_j` along an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitTarget {
    /// `sign * (1, 0, ..., 0)` for leaves in different trees.
    Axis(Sign),
    /// `sign * u_vertex` for leaves of one tree meeting at `vertex`.
    Vertex { vertex: usize, sign: Sign },
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeLimit {
    pub edge: (usize, usize),
    pub target: LimitTarget,
    /// Largest deviation over the samples, one entry per epsilon.
    pub deviations: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    pub eps: Vec<f64>,
    pub max_deviation: Vec<f64>,
    pub per_edge: Vec<EdgeLimit>,
}

impl LimitReport {
    /// Deviations at every epsilon stay below `tol` at the last epsilon and
    /// never grow (up to `noise`) as epsilon shrinks, edge by edge.
    pub fn converges(&self, tol: f64, noise: f64) -> bool {
        self.per_edge.iter().all(|e| {
            e.deviations.last().is_none_or(|&d| d < tol) && e.deviations.windows(2).all(|w| w[1] <= w[0] + noise)
        })
    }
}

fn target(layout: &Layout, i: usize, j: usize) -> LimitTarget {
    match layout.nadir(i, j) {
        Some((vertex, i_left)) => LimitTarget::Vertex { vertex, sign: Sign::from_odd(!i_left) },
        None => {
            let (a, b) = (layout.tree_of[i - 1], layout.tree_of[j - 1]);
            LimitTarget::Axis(Sign::from_odd(a < b))
        }
    }
}

/// Compares the edge directions `theta_e = (x_i - x_j)/|x_i - x_j|` of the
/// planetary system with their predicted limits, for every edge of `g`,
/// sample and epsilon.
pub fn limit_check(f: &Forest, g: &Graph, d: usize, eps_list: &[f64], samples: &[TorusPoint]) -> Result<LimitReport> {
    if f.n() != g.n() {
        return Err(mismatch!("forest on {} leaves, graph on {} vertices", f.n(), g.n()));
    }
    let eps: Vec<Epsilon> = eps_list.iter().map(|&e| Epsilon::new(e)).collect::<Result<_>>()?;
    let layout = f.layout();
    let mut per_edge: Vec<EdgeLimit> = g
        .edges()
        .iter()
        .map(|&(i, j)| EdgeLimit { edge: (i, j), target: target(&layout, i, j), deviations: vec![0.0; eps.len()] })
        .collect();
    for u in samples {
        for (k, &e) in eps.iter().enumerate() {
            let c = eval_system(f, e, u, d)?;
            for edge in per_edge.iter_mut() {
                let (i, j) = edge.edge;
                let theta = match edge.target {
                    LimitTarget::Axis(_) => alpha(&c, j, i)?,
                    LimitTarget::Vertex { .. } => relative_direction(&layout, e, u, d, i, j)?,
                };
                let predicted: Vec<f64> = match edge.target {
                    LimitTarget::Axis(s) => {
                        let mut v = vec![0.0; d];
                        v[0] = f64::from(s.to_i32());
                        v
                    }
                    LimitTarget::Vertex { vertex, sign } => {
                        u.vectors[vertex].iter().map(|x| x * f64::from(sign.to_i32())).collect()
                    }
                };
                let dev = dist(&theta, &predicted);
                edge.deviations[k] = edge.deviations[k].max(dev);
            }
        }
    }
    let max_deviation =
        (0..eps.len()).map(|k| per_edge.iter().map(|e| e.deviations[k]).fold(0.0, f64::max)).collect();
    Ok(LimitReport { eps: eps_list.to_vec(), max_deviation, per_edge })
}

/// Direction of `x_i - x_j` for leaves of one tree, summed from the point
/// where their root paths diverge so the shared part cancels exactly.
fn relative_direction(layout: &Layout, eps: Epsilon, u: &TorusPoint, d: usize, i: usize, j: usize) -> Result<Vec<f64>> {
    let (a, b) = (&layout.paths[i - 1], &layout.paths[j - 1]);
    let common = a.iter().zip(b).take_while(|(x, y)| x.right == y.right).count();
    let mut diff = vec![0.0; d];
    for (path, s) in [(a, 1.0), (b, -1.0)] {
        for (depth, step) in path.iter().enumerate().skip(common) {
            let r = eps.pow(depth + 1) * if step.right { -s } else { s };
            for (x, w) in diff.iter_mut().zip(&u.vectors[step.vertex]) {
                *x += r * w;
            }
        }
    }
    unit(&diff).ok_or_else(|| Error::Numeric(alloc::format!("points {i} and {j} coincide")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::text::{parse_forest, parse_graph};

    fn e1(d: usize) -> Vec<f64> {
        let mut v = vec![0.0; d];
        v[0] = 1.0;
        v
    }

    #[test]
    fn two_points() {
        let f = parse_forest("[1,2]").unwrap();
        let eps = Epsilon::new(0.25).unwrap();
        let u = TorusPoint::new(vec![vec![0.0, 1.0]]).unwrap();
        let c = eval_system(&f, eps, &u, 2).unwrap();
        assert_eq!(c.points, vec![vec![1.0, 0.25], vec![1.0, -0.25]]);
        assert_eq!(alpha(&c, 2, 1).unwrap(), vec![0.0, 1.0]);
        assert!(planetary_defect(&f, eps, &u, &c).unwrap() < 1e-12);
    }

    #[test]
    fn alpha_basics() {
        let c = Configuration { d: 2, points: vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 0.0]] };
        assert_eq!(alpha(&c, 1, 2).unwrap(), e1(2));
        assert_eq!(alpha(&c, 2, 1).unwrap(), vec![-1.0, 0.0]);
        assert!(alpha(&c, 1, 3).is_err());
        assert_eq!(s_ratio(&c, 1, 3, 2).unwrap(), 0.0);
        assert_eq!(s_ratio(&c, 1, 2, 3).unwrap(), f64::INFINITY);
        assert!(s_ratio(&c, 1, 1, 2).is_err());
    }

    #[test]
    fn equilateral_ratio() {
        let h = libm::sqrt(3.0) / 2.0;
        let c = Configuration { d: 2, points: vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, h]] };
        assert!((s_ratio(&c, 1, 2, 3).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sibling_ratio_is_eps() {
        let f = parse_forest("[[1,2],3]").unwrap();
        let eps = Epsilon::new(0.01).unwrap();
        let u = TorusPoint::new(vec![e1(2), vec![0.0, 1.0]]).unwrap();
        let c = eval_system(&f, eps, &u, 2).unwrap();
        // |x1 - x2| = 2 eps^2, |x1 - x3| ~ 2 eps
        let r = s_ratio(&c, 1, 2, 3).unwrap();
        assert!((r - 0.01).abs() < 1e-3);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(Epsilon::new(0.34).is_err());
        assert!(Epsilon::new(0.0).is_err());
        assert!(TorusPoint::new(vec![vec![1.0, 1.0]]).is_err());
        let f = parse_forest("[1,2]").unwrap();
        let u = TorusPoint::new(vec![]).unwrap();
        assert!(eval_system(&f, Epsilon::new(0.1).unwrap(), &u, 2).is_err());
    }

    #[test]
    fn limits() {
        let u = |n: usize| TorusPoint::from_directions(vec![vec![0.3, 0.7, -0.2]; n]).unwrap();
        let f = parse_forest("[1,2]").unwrap();
        let r = limit_check(&f, &parse_graph("n=2; 1->2").unwrap(), 3, &[0.1, 0.01], &[u(1)]).unwrap();
        assert!(r.max_deviation.iter().all(|&d| d < 1e-12));

        let f = parse_forest("[[2,1],3]").unwrap();
        let r = limit_check(&f, &parse_graph("n=3; 1->2").unwrap(), 3, &[0.1, 0.01, 0.001], &[u(2)]).unwrap();
        assert_eq!(r.per_edge[0].target, LimitTarget::Vertex { vertex: 0, sign: Sign::Minus });
        assert!(r.converges(1e-2, 1e-12), "{r:?}");

        let f = parse_forest("[1,2]; 3").unwrap();
        let r = limit_check(&f, &parse_graph("n=3; 1->3").unwrap(), 3, &[0.1, 0.01, 0.001], &[u(1)]).unwrap();
        assert_eq!(r.per_edge[0].target, LimitTarget::Axis(Sign::Minus));
        assert!(r.converges(1e-2, 1e-12), "{r:?}");
    }
}
