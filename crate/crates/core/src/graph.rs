//! Simple graphs with a rational plane moment map.
//!
//! Vertices are numbered `1..=m`. Each edge `{i, j}` carries the slope
//! `a_ij = -(p_j - p_i) / (q_j - q_i)` of its label `y - a_ij * x`, derived
//! from the vertex points `(p, q)`. Validated graphs are in general position
//! (no three points collinear) and have pairwise distinct second
//! coordinates; a shear `(x, y) -> (x, y + t x)` is applied at validation
//! time when needed.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rat;

/// Undirected edge between 1-based vertices `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
}

impl Edge {
    /// Normalizes endpoint order. Panics on a loop.
    pub fn new(a: usize, b: usize) -> Edge {
        assert_ne!(a, b, "loop edge");
        Edge {
            i: a.min(b),
            j: a.max(b),
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.i == v || self.j == v
    }

    pub fn other(&self, v: usize) -> usize {
        if self.i == v {
            self.j
        } else {
            self.i
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.i, self.j)
    }
}

/// A point `(p, q)` of the moment map.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Point {
    pub p: Rat,
    pub q: Rat,
}

impl Point {
    pub fn new(p: impl Into<Rat>, q: impl Into<Rat>) -> Point {
        Point {
            p: p.into(),
            q: q.into(),
        }
    }

    pub fn dot(&self, xi: &(Rat, Rat)) -> Rat {
        &self.p * &xi.0 + &self.q * &xi.1
    }
}

fn collinear(a: &Point, b: &Point, c: &Point) -> bool {
    let lhs = (&b.q - &a.q) * (&c.p - &a.p);
    let rhs = (&b.p - &a.p) * (&c.q - &a.q);
    lhs == rhs
}

fn edge_slope(a: &Point, b: &Point) -> Rat {
    -((&b.p - &a.p) / (&b.q - &a.q))
}

fn first_q_collision(phi: &[Point]) -> Option<(usize, usize)> {
    let mut seen: BTreeMap<&Rat, usize> = BTreeMap::new();
    for (idx, pt) in phi.iter().enumerate() {
        if let Some(&prev) = seen.get(&pt.q) {
            return Some((prev + 1, idx + 1));
        }
        seen.insert(&pt.q, idx);
    }
    None
}

fn sheared(phi: &[Point], t: &Rat) -> Vec<Point> {
    phi.iter()
        .map(|pt| Point {
            p: pt.p.clone(),
            q: &pt.q + t * &pt.p,
        })
        .collect()
}

/// A simple graph with a plane moment map, or (in fixture mode) with raw
/// unchecked edge slopes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EmbeddedGraph {
    m: usize,
    edges: Vec<Edge>,
    slopes: Vec<Rat>,
    phi: Option<Vec<Point>>,
    shear: Option<Rat>,
    unchecked: bool,
}

fn check_edges(m: usize, edges: &[(usize, usize)]) -> Result<Vec<Edge>> {
    let mut set = BTreeSet::new();
    for &(a, b) in edges {
        if a == b {
            return Err(Error::BadEdge(format!("loop at vertex {a}")));
        }
        if a == 0 || b == 0 || a > m || b > m {
            return Err(Error::BadEdge(format!("{a}-{b} out of range 1..={m}")));
        }
        if !set.insert(Edge::new(a, b)) {
            return Err(Error::BadEdge(format!("duplicate edge {a}-{b}")));
        }
    }
    Ok(set.into_iter().collect())
}

impl EmbeddedGraph {
    /// Validate points and edges. Applies the first shear from the sequence
    /// `t = 0, 1, 1/2, 1/3, ...` that separates all second coordinates.
    pub fn validate(phi: Vec<Point>, edges: &[(usize, usize)]) -> Result<Self> {
        let m = phi.len();
        let edges = check_edges(m, edges)?;
        for a in 0..m {
            for b in a + 1..m {
                if phi[a] == phi[b] {
                    return Err(Error::DuplicatePoint(a + 1, b + 1));
                }
            }
        }
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    if collinear(&phi[a], &phi[b], &phi[c]) {
                        return Err(Error::CollinearTriple(a + 1, b + 1, c + 1));
                    }
                }
            }
        }
        let (phi, shear) = if first_q_collision(&phi).is_none() {
            (phi, None)
        } else {
            // Each colliding pair rules out at most one t, so this terminates.
            let t = (1i64..)
                .map(|n| Rat::new(1, n))
                .find(|t| first_q_collision(&sheared(&phi, t)).is_none())
                .expect("finitely many bad shears");
            (sheared(&phi, &t), Some(t))
        };
        Ok(Self::assemble(m, edges, phi, shear))
    }

    fn assemble(m: usize, edges: Vec<Edge>, phi: Vec<Point>, shear: Option<Rat>) -> Self {
        let slopes = edges
            .iter()
            .map(|e| edge_slope(&phi[e.i - 1], &phi[e.j - 1]))
            .collect();
        EmbeddedGraph {
            m,
            edges,
            slopes,
            phi: Some(phi),
            shear,
            unchecked: false,
        }
    }

    /// Fixture mode: edge slopes supplied directly. Realizability by a moment
    /// map in general position is NOT checked; only distinctness of slopes
    /// at each vertex is enforced.
    pub fn from_slopes(m: usize, edges: &[(usize, usize)], slopes: &[Rat]) -> Result<Self> {
        if edges.len() != slopes.len() {
            return Err(Error::BadEdge("one slope per edge required".into()));
        }
        let sorted = check_edges(m, edges)?;
        let by_edge: BTreeMap<Edge, Rat> = edges
            .iter()
            .zip(slopes)
            .map(|(&(a, b), s)| (Edge::new(a, b), s.clone()))
            .collect();
        let slopes: Vec<Rat> = sorted.iter().map(|e| by_edge[e].clone()).collect();
        let g = EmbeddedGraph {
            m,
            edges: sorted,
            slopes,
            phi: None,
            shear: None,
            unchecked: true,
        };
        for v in 1..=m {
            let mut seen = BTreeSet::new();
            for idx in g.incident_edge_indices(v) {
                if !seen.insert(&g.slopes[idx]) {
                    return Err(Error::BadEdge(format!(
                        "two edges at vertex {v} share slope {}",
                        g.slopes[idx]
                    )));
                }
            }
        }
        Ok(g)
    }

    /// Apply `(x, y) -> (x, y + t x)` to every point.
    pub fn shear(&self, t: &Rat) -> Result<Self> {
        let phi = self.phi.as_ref().ok_or(Error::NoCoordinates)?;
        let new_phi = sheared(phi, t);
        if first_q_collision(&new_phi).is_some() {
            return Err(Error::BadShear(t.clone()));
        }
        let total = match &self.shear {
            Some(s) => s + t,
            None => t.clone(),
        };
        let shear = if total.is_zero() { None } else { Some(total) };
        Ok(Self::assemble(self.m, self.edges.clone(), new_phi, shear))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Slopes parallel to [`edges`](Self::edges).
    pub fn slopes(&self) -> &[Rat] {
        &self.slopes
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edge_index(Edge::new(a, b)).is_some()
    }

    pub fn slope(&self, e: Edge) -> Option<&Rat> {
        self.edge_index(e).map(|idx| &self.slopes[idx])
    }

    pub fn phi(&self) -> Option<&[Point]> {
        self.phi.as_deref()
    }

    pub fn point(&self, v: usize) -> Option<&Point> {
        self.phi.as_ref().map(|phi| &phi[v - 1])
    }

    /// Shear parameter applied during validation, if any.
    pub fn applied_shear(&self) -> Option<&Rat> {
        self.shear.as_ref()
    }

    pub fn is_unchecked(&self) -> bool {
        self.unchecked
    }

    /// Slope of the segment between any two vertices (edge or not).
    pub fn pair_slope(&self, a: usize, b: usize) -> Result<Rat> {
        if let Some(s) = self.slope(Edge::new(a, b)) {
            return Ok(s.clone());
        }
        let phi = self.phi.as_ref().ok_or(Error::NoCoordinates)?;
        Ok(edge_slope(&phi[a - 1], &phi[b - 1]))
    }

    pub fn incident_edge_indices(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.contains(v))
            .map(|(idx, _)| idx)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.contains(v))
            .map(|e| e.other(v))
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.m];
        for e in &self.edges {
            deg[e.i - 1] += 1;
            deg[e.j - 1] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let first = *deg.first()?;
        deg.iter().all(|&d| d == first).then_some(first)
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(self.m, &self.edges)
    }

    pub fn num_components(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() <= 1
    }

    /// Subgraph on the listed vertices (kept in the given order and
    /// renumbered `1..`) with the listed edges, which must join kept
    /// vertices. Slopes and points are inherited.
    pub fn subgraph(&self, vertices: &[usize], edges: &[Edge]) -> Self {
        let renumber: BTreeMap<usize, usize> = vertices
            .iter()
            .enumerate()
            .map(|(idx, &v)| (v, idx + 1))
            .collect();
        let mut pairs: Vec<(Edge, Rat)> = edges
            .iter()
            .map(|e| {
                let s = self.slope(*e).expect("subgraph edge must exist").clone();
                (Edge::new(renumber[&e.i], renumber[&e.j]), s)
            })
            .collect();
        pairs.sort_by_key(|a| a.0);
        pairs.dedup_by(|a, b| a.0 == b.0);
        let phi = self
            .phi
            .as_ref()
            .map(|phi| vertices.iter().map(|&v| phi[v - 1].clone()).collect());
        EmbeddedGraph {
            m: vertices.len(),
            edges: pairs.iter().map(|(e, _)| *e).collect(),
            slopes: pairs.into_iter().map(|(_, s)| s).collect(),
            phi,
            shear: self.shear.clone(),
            unchecked: self.unchecked,
        }
    }

    /// Remove vertex `t` and its incident edges; later vertices shift down.
    pub fn delete_vertex(&self, t: usize) -> Self {
        assert!(t >= 1 && t <= self.m, "vertex {t} out of range");
        let vertices: Vec<usize> = (1..=self.m).filter(|&v| v != t).collect();
        let edges: Vec<Edge> = self.edges.iter().filter(|e| !e.contains(t)).copied().collect();
        self.subgraph(&vertices, &edges)
    }

    /// Remove vertices in `set` and their incident edges.
    pub fn delete_vertices(&self, set: &BTreeSet<usize>) -> Self {
        let vertices: Vec<usize> = (1..=self.m).filter(|v| !set.contains(v)).collect();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| !set.contains(&e.i) && !set.contains(&e.j))
            .copied()
            .collect();
        self.subgraph(&vertices, &edges)
    }

    /// Remove the edges in `removed`, keeping every vertex.
    pub fn delete_edges(&self, removed: &[Edge]) -> Self {
        let removed: BTreeSet<Edge> = removed.iter().copied().collect();
        let vertices: Vec<usize> = (1..=self.m).collect();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| !removed.contains(e))
            .copied()
            .collect();
        self.subgraph(&vertices, &edges)
    }

    /// Induced subgraph on a vertex set.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let keep: BTreeSet<usize> = vertices.iter().copied().collect();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| keep.contains(&e.i) && keep.contains(&e.j))
            .copied()
            .collect();
        self.subgraph(vertices, &edges)
    }

    /// Disjoint union; the second graph's vertices follow the first's.
    /// Requires coordinates on both sides, and the union is re-validated.
    pub fn disjoint_union(&self, other: &Self, offset: &Point) -> Result<Self> {
        let a = self.phi.as_ref().ok_or(Error::NoCoordinates)?;
        let b = other.phi.as_ref().ok_or(Error::NoCoordinates)?;
        let mut phi = a.clone();
        phi.extend(b.iter().map(|pt| Point {
            p: &pt.p + &offset.p,
            q: &pt.q + &offset.q,
        }));
        let mut edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.i, e.j)).collect();
        edges.extend(other.edges.iter().map(|e| (e.i + self.m, e.j + self.m)));
        Self::validate(phi, &edges)
    }

    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.i, e.j)).collect()
    }
}

pub(crate) fn components_of(m: usize, edges: &[Edge]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); m + 1];
    for e in edges {
        adj[e.i].push(e.j);
        adj[e.j].push(e.i);
    }
    let mut seen = vec![false; m + 1];
    let mut comps = Vec::new();
    for start in 1..=m {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Points `(t, t^2)` for `t = 1..=m`. No three points of a parabola are
/// collinear, and the second coordinates are distinct.
pub fn moment_curve(m: usize) -> Vec<Point> {
    (1..=m as i64).map(|t| Point::new(t, t * t)).collect()
}

/// Moment-curve placement of an arbitrary edge list.
pub fn on_moment_curve(m: usize, edges: &[(usize, usize)]) -> Result<EmbeddedGraph> {
    EmbeddedGraph::validate(moment_curve(m), edges)
}

pub fn complete_graph(m: usize) -> EmbeddedGraph {
    let edges: Vec<(usize, usize)> = (1..=m)
        .flat_map(|i| (i + 1..=m).map(move |j| (i, j)))
        .collect();
    on_moment_curve(m, &edges).expect("moment curve is in general position")
}

/// Cycle `1-2-...-m-1`; the moment curve puts it in convex position.
pub fn cycle_graph(m: usize) -> EmbeddedGraph {
    assert!(m >= 3, "cycle needs at least three vertices");
    let mut edges: Vec<(usize, usize)> = (1..m).map(|i| (i, i + 1)).collect();
    edges.push((1, m));
    on_moment_curve(m, &edges).expect("moment curve is in general position")
}

pub fn path_graph(m: usize) -> EmbeddedGraph {
    let edges: Vec<(usize, usize)> = (1..m).map(|i| (i, i + 1)).collect();
    on_moment_curve(m, &edges).expect("moment curve is in general position")
}

pub fn single_edge() -> EmbeddedGraph {
    complete_graph(2)
}

pub fn edgeless(m: usize) -> EmbeddedGraph {
    on_moment_curve(m, &[]).expect("moment curve is in general position")
}

/// Cartesian product with `phi(v, u) = a * phi1(v) + b * phi2(u)`, vertices
/// ordered `(v1,u1), (v1,u2), ..., (vm,un)`.
///
/// Fails with [`Error::CoordinateCollision`] rather than shearing, so that the
/// product shares the coordinate system of its factors.
pub fn cartesian_product(
    g1: &EmbeddedGraph,
    g2: &EmbeddedGraph,
    a: &Rat,
    b: &Rat,
) -> Result<EmbeddedGraph> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::PreconditionUnmet("product scale factors must be nonzero".into()));
    }
    let phi1 = g1.phi().ok_or(Error::NoCoordinates)?;
    let phi2 = g2.phi().ok_or(Error::NoCoordinates)?;
    let (m, n) = (g1.m(), g2.m());
    let index = |i: usize, s: usize| (i - 1) * n + s;
    let mut phi = Vec::with_capacity(m * n);
    for v in phi1 {
        for u in phi2 {
            phi.push(Point {
                p: a * &v.p + b * &u.p,
                q: a * &v.q + b * &u.q,
            });
        }
    }
    let mut edges = Vec::new();
    for i in 1..=m {
        for e in g2.edges() {
            edges.push((index(i, e.i), index(i, e.j)));
        }
    }
    for s in 1..=n {
        for e in g1.edges() {
            edges.push((index(e.i, s), index(e.j, s)));
        }
    }
    if first_q_collision(&phi).is_some() && m * n > 1 {
        // Still report collinearity first if present.
        EmbeddedGraph::validate(phi, &edges)?;
        return Err(Error::CoordinateCollision);
    }
    EmbeddedGraph::validate(phi, &edges)
}

/// How edges are drawn for a random instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeMode {
    /// Each pair independently with probability `percent / 100`.
    Density { percent: u32 },
    /// Uniform `d`-regular multigraph by stub pairing, rejecting loops and
    /// repeated edges.
    Regular { d: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub m: usize,
    pub mode: EdgeMode,
    /// Integer coordinates are drawn from `-range..=range`.
    pub range: i64,
}

impl RandomSpec {
    pub fn density(m: usize, percent: u32) -> Self {
        RandomSpec {
            m,
            mode: EdgeMode::Density { percent },
            range: default_range(m),
        }
    }

    pub fn regular(m: usize, d: usize) -> Self {
        RandomSpec {
            m,
            mode: EdgeMode::Regular { d },
            range: default_range(m),
        }
    }
}

fn default_range(m: usize) -> i64 {
    (4 * m as i64).max(8)
}

const MAX_REJECTIONS: usize = 10_000;

/// Deterministic random graph in general position.
pub fn random_general_position(spec: &RandomSpec, seed: u64) -> Result<EmbeddedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phi = random_points(&mut rng, spec.m, spec.range)?;
    let edges = match spec.mode {
        EdgeMode::Density { percent } => {
            let mut edges = Vec::new();
            for i in 1..=spec.m {
                for j in i + 1..=spec.m {
                    if rng.gen_range(0..100) < percent {
                        edges.push((i, j));
                    }
                }
            }
            edges
        }
        EdgeMode::Regular { d } => random_regular_edges(&mut rng, spec.m, d)?,
    };
    EmbeddedGraph::validate(phi, &edges)
}

fn random_points(rng: &mut ChaCha8Rng, m: usize, range: i64) -> Result<Vec<Point>> {
    let mut phi: Vec<Point> = Vec::with_capacity(m);
    let mut rejections = 0;
    while phi.len() < m {
        let cand = Point::new(rng.gen_range(-range..=range), rng.gen_range(-range..=range));
        let clash = phi.iter().any(|pt| pt.q == cand.q)
            || (0..phi.len())
                .any(|a| (a + 1..phi.len()).any(|b| collinear(&phi[a], &phi[b], &cand)));
        if clash {
            rejections += 1;
            if rejections > MAX_REJECTIONS {
                return Err(Error::GenerationFailed(format!(
                    "could not place {m} points in general position within range {range}"
                )));
            }
            continue;
        }
        phi.push(cand);
    }
    Ok(phi)
}

fn random_regular_edges(rng: &mut ChaCha8Rng, m: usize, d: usize) -> Result<Vec<(usize, usize)>> {
    if d == 0 {
        return Ok(Vec::new());
    }
    if d >= m || (m * d) % 2 == 1 {
        return Err(Error::GenerationFailed(format!("no simple {d}-regular graph on {m} vertices")));
    }
    let mut stubs: Vec<usize> = (1..=m).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..MAX_REJECTIONS {
        stubs.shuffle(rng);
        let mut set = BTreeSet::new();
        for pair in stubs.chunks(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b || !set.insert(Edge::new(a, b)) {
                continue 'attempt;
            }
        }
        return Ok(set.into_iter().map(|e| (e.i, e.j)).collect());
    }
    Err(Error::GenerationFailed(format!(
        "stub pairing for {d}-regular on {m} vertices kept producing loops or repeats"
    )))
}

/// On-disk graph description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<[Rat; 2]>>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slopes: Option<BTreeMap<String, Rat>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unchecked: bool,
}

fn parse_edge_key(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::Format(format!("bad slope key {key:?}, expected \"i-j\""));
    let (a, b) = key.split_once('-').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

impl GraphFile {
    pub fn into_graph(self) -> Result<EmbeddedGraph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        if let Some(slopes) = self.slopes {
            if !self.unchecked {
                return Err(Error::Format(
                    "slope fixtures must be marked \"unchecked\": true".into(),
                ));
            }
            let mut by_edge = BTreeMap::new();
            for (k, s) in slopes {
                let (a, b) = parse_edge_key(&k)?;
                if a == b {
                    return Err(Error::BadEdge(format!("loop at vertex {a}")));
                }
                by_edge.insert(Edge::new(a, b), s);
            }
            let mut values = Vec::with_capacity(edges.len());
            for &(a, b) in &edges {
                if a == b {
                    return Err(Error::BadEdge(format!("loop at vertex {a}")));
                }
                let s = by_edge
                    .get(&Edge::new(a, b))
                    .ok_or_else(|| Error::Format(format!("missing slope for edge {a}-{b}")))?;
                values.push(s.clone());
            }
            let mut g = EmbeddedGraph::from_slopes(self.m, &edges, &values)?;
            if let Some(phi) = self.phi {
                if phi.len() != self.m {
                    return Err(Error::Format("phi length differs from m".into()));
                }
                g.phi = Some(phi.into_iter().map(|[p, q]| Point { p, q }).collect());
            }
            return Ok(g);
        }
        let phi = self
            .phi
            .ok_or_else(|| Error::Format("missing \"phi\" (or \"slopes\" with \"unchecked\")".into()))?;
        if phi.len() != self.m {
            return Err(Error::Format(format!(
                "phi has {} points but m = {}",
                phi.len(),
                self.m
            )));
        }
        let phi = phi.into_iter().map(|[p, q]| Point { p, q }).collect();
        EmbeddedGraph::validate(phi, &edges)
    }

    pub fn from_graph(g: &EmbeddedGraph) -> Self {
        let phi = g
            .phi()
            .map(|phi| phi.iter().map(|pt| [pt.p.clone(), pt.q.clone()]).collect());
        let slopes = g.is_unchecked().then(|| {
            g.edges()
                .iter()
                .zip(g.slopes())
                .map(|(e, s)| (e.to_string(), s.clone()))
                .collect()
        });
        GraphFile {
            m: g.m(),
            phi,
            edges: g.edges().iter().map(|e| [e.i, e.j]).collect(),
            slopes,
            unchecked: g.is_unchecked(),
        }
    }
}

impl EmbeddedGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        file.into_graph()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphFile::from_graph(self)).expect("graph serializes")
    }
}
