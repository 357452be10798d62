//! Connectivity, minimum cuts, trimming to the maximal k-trimmed subgraph,
//! and the degree/connectivity class used by the bound on `s_{d-3}`.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graph::{EmbeddedGraph, Edge};

/// A separating set together with the two vertex classes it splits off.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutResult {
    pub size: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<usize>,
    pub sides: (Vec<usize>, Vec<usize>),
}

/// Unit-capacity residual network for Edmonds-Karp.
struct Flow {
    // (head, residual capacity, index of reverse arc)
    adj: Vec<Vec<(usize, usize, usize)>>,
}

impl Flow {
    fn new(n: usize) -> Self {
        Flow {
            adj: vec![Vec::new(); n],
        }
    }

    /// Arc `u -> v` with capacity `cap`, reverse capacity `back`.
    fn add(&mut self, u: usize, v: usize, cap: usize, back: usize) {
        let ru = self.adj[v].len();
        let rv = self.adj[u].len();
        self.adj[u].push((v, cap, ru));
        self.adj[v].push((u, back, rv));
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for (idx, &(v, cap, _)) in self.adj[u].iter().enumerate() {
                if cap > 0 && !seen[v] {
                    seen[v] = true;
                    prev[v] = Some((u, idx));
                    queue.push_back(v);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while let Some((u, idx)) = prev[v] {
            let (_, _, rev) = self.adj[u][idx];
            self.adj[u][idx].1 -= 1;
            self.adj[v][rev].1 += 1;
            v = u;
        }
        true
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit && self.augment(s, t) {
            flow += 1;
        }
        flow
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(v, cap, _) in &self.adj[u] {
                if cap > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

fn split_sides(m: usize, side: &[bool]) -> (Vec<usize>, Vec<usize>) {
    (1..=m).partition(|&v| side[v - 1])
}

fn trivial_cut(g: &EmbeddedGraph) -> CutResult {
    let comps = g.components();
    let first = comps.first().cloned().unwrap_or_default();
    let rest = comps.iter().skip(1).flatten().copied().collect::<BTreeSet<_>>();
    CutResult {
        size: 0,
        edges: Vec::new(),
        vertices: Vec::new(),
        sides: (first, rest.into_iter().collect()),
    }
}

/// Minimum edge cut separating `source` from some other vertex. Ties go to
/// the first sink in index order; the cut is the source side of the final
/// residual network.
fn min_edge_cut_from(g: &EmbeddedGraph, source: usize) -> CutResult {
    let m = g.m();
    let build = || {
        let mut f = Flow::new(m);
        for e in g.edges() {
            f.add(e.i - 1, e.j - 1, 1, 1);
        }
        f
    };
    let mut best: Option<(usize, Flow)> = None;
    for t in (1..=m).filter(|&t| t != source) {
        let limit = best.as_ref().map_or(usize::MAX, |(v, _)| *v);
        let mut f = build();
        let value = f.max_flow(source - 1, t - 1, limit);
        if value < limit {
            best = Some((value, f));
        }
    }
    let (size, flow) = best.expect("at least two vertices");
    let side = flow.reachable(source - 1);
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| side[e.i - 1] != side[e.j - 1])
        .copied()
        .collect();
    assert_eq!(edges.len(), size, "cut size must equal flow value");
    CutResult {
        size,
        edges,
        vertices: Vec::new(),
        sides: split_sides(m, &side),
    }
}

/// Global minimum edge cut. Disconnected graphs report 0 with an empty set;
/// graphs with fewer than two vertices report 0 as well.
pub fn edge_connectivity(g: &EmbeddedGraph) -> (usize, CutResult) {
    if g.m() < 2 || !g.is_connected() {
        return (0, trivial_cut(g));
    }
    let cut = min_edge_cut_from(g, 1);
    debug_assert!(!g.delete_edges(&cut.edges).is_connected());
    (cut.size, cut)
}

/// Every removal of fewer than `k` edges leaves the graph connected.
pub fn is_k_edge_connected(g: &EmbeddedGraph, k: usize) -> bool {
    k == 0 || g.m() <= 1 || edge_connectivity(g).0 >= k
}

/// Minimum number of inner vertices separating nonadjacent `s` and `t`, via
/// vertex splitting: `v_in = 2(v-1)`, `v_out = 2(v-1) + 1`.
fn min_vertex_cut_pair(g: &EmbeddedGraph, s: usize, t: usize, limit: usize) -> Option<CutResult> {
    let m = g.m();
    let big = m + 1;
    let vin = |v: usize| 2 * (v - 1);
    let vout = |v: usize| 2 * (v - 1) + 1;
    let mut f = Flow::new(2 * m);
    for v in 1..=m {
        let cap = if v == s || v == t { big } else { 1 };
        f.add(vin(v), vout(v), cap, 0);
    }
    for e in g.edges() {
        f.add(vout(e.i), vin(e.j), big, 0);
        f.add(vout(e.j), vin(e.i), big, 0);
    }
    let value = f.max_flow(vout(s), vin(t), limit);
    if value >= limit {
        return None;
    }
    let seen = f.reachable(vout(s));
    let vertices: Vec<usize> = (1..=m)
        .filter(|&v| v != s && v != t && seen[vin(v)] && !seen[vout(v)])
        .collect();
    assert_eq!(vertices.len(), value, "vertex cut size must equal flow value");
    let removed: BTreeSet<usize> = vertices.iter().copied().collect();
    let side: Vec<bool> = (1..=m)
        .map(|v| !removed.contains(&v) && seen[vout(v)])
        .collect();
    let rest: Vec<bool> = (1..=m)
        .map(|v| !removed.contains(&v) && !side[v - 1])
        .collect();
    Some(CutResult {
        size: value,
        edges: Vec::new(),
        vertices,
        sides: (
            (1..=m).filter(|&v| side[v - 1]).collect(),
            (1..=m).filter(|&v| rest[v - 1]).collect(),
        ),
    })
}

/// Minimum vertex cut. Complete graphs report `m - 1` by convention (with
/// the cut listing vertices `2..=m`); disconnected graphs report 0.
pub fn vertex_connectivity(g: &EmbeddedGraph) -> (usize, CutResult) {
    let m = g.m();
    if m < 2 || !g.is_connected() {
        return (0, trivial_cut(g));
    }
    let mut best: Option<CutResult> = None;
    for s in 1..=m {
        for t in s + 1..=m {
            if g.has_edge(s, t) {
                continue;
            }
            let limit = best.as_ref().map_or(usize::MAX, |c| c.size);
            if let Some(cut) = min_vertex_cut_pair(g, s, t, limit) {
                best = Some(cut);
            }
        }
    }
    match best {
        Some(cut) => (cut.size, cut),
        None => (
            m - 1,
            CutResult {
                size: m - 1,
                edges: Vec::new(),
                vertices: (2..=m).collect(),
                sides: (vec![1], Vec::new()),
            },
        ),
    }
}

/// Every removal of fewer than `k` vertices leaves a connected graph. Taken
/// literally, a complete graph on `m` vertices qualifies exactly for `k <= m`
/// (only removing every vertex leaves nothing).
pub fn is_k_vertex_connected(g: &EmbeddedGraph, k: usize) -> bool {
    let m = g.m();
    if k == 0 {
        return true;
    }
    if k > m {
        return false;
    }
    if g.num_edges() == m * (m - 1) / 2 {
        return true;
    }
    vertex_connectivity(g).0 >= k
}

/// Minimum degree at least `k + 1` and every component `(k+1)`-edge-connected.
pub fn is_k_trimmed(g: &EmbeddedGraph, k: usize) -> bool {
    if g.m() > 0 && g.min_degree() < k + 1 {
        return false;
    }
    g.components()
        .iter()
        .all(|comp| is_k_edge_connected(&g.induced(comp), k + 1))
}

/// Order in which trimming picks vertices, components and cut sources.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrimOrder {
    Ascending,
    Descending,
}

/// One deletion, in the labels of the input graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrimStep {
    Vertex(usize),
    Edges(Vec<(usize, usize)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrimTrace {
    pub graph: EmbeddedGraph,
    /// `labels[v-1]` is the input label of vertex `v` of the result.
    pub labels: Vec<usize>,
    pub steps: Vec<TrimStep>,
}

impl TrimTrace {
    /// Edges of the result in input labels.
    pub fn labelled_edges(&self) -> BTreeSet<(usize, usize)> {
        self.graph
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = (self.labels[e.i - 1], self.labels[e.j - 1]);
                (a.min(b), a.max(b))
            })
            .collect()
    }
}

/// Repeatedly delete a vertex of degree `<= k`, or, once none is left, a
/// minimum edge cut of size `<= k` inside some component. Stops when the
/// graph is k-trimmed (possibly empty).
pub fn trim_traced(g: &EmbeddedGraph, k: usize, order: TrimOrder) -> TrimTrace {
    let mut graph = g.clone();
    let mut labels: Vec<usize> = (1..=g.m()).collect();
    let mut steps = Vec::new();
    'outer: loop {
        let mut vertices: Vec<usize> = (1..=graph.m()).collect();
        if order == TrimOrder::Descending {
            vertices.reverse();
        }
        if let Some(&v) = vertices.iter().find(|&&v| graph.degree(v) <= k) {
            steps.push(TrimStep::Vertex(labels[v - 1]));
            labels.remove(v - 1);
            graph = graph.delete_vertex(v);
            continue;
        }
        let mut comps = graph.components();
        if order == TrimOrder::Descending {
            comps.reverse();
        }
        for comp in comps {
            let sub = graph.induced(&comp);
            if sub.m() < 2 {
                continue;
            }
            let source = match order {
                TrimOrder::Ascending => 1,
                TrimOrder::Descending => sub.m(),
            };
            let cut = min_edge_cut_from(&sub, source);
            if cut.size <= k {
                let removed: Vec<Edge> = cut
                    .edges
                    .iter()
                    .map(|e| Edge::new(comp[e.i - 1], comp[e.j - 1]))
                    .collect();
                steps.push(TrimStep::Edges(
                    removed
                        .iter()
                        .map(|e| (labels[e.i - 1], labels[e.j - 1]))
                        .collect(),
                ));
                graph = graph.delete_edges(&removed);
                continue 'outer;
            }
        }
        break;
    }
    debug_assert!(is_k_trimmed(&graph, k));
    TrimTrace {
        graph,
        labels,
        steps,
    }
}

/// The maximal k-trimmed subgraph, vertices renumbered in input order.
pub fn trim(g: &EmbeddedGraph, k: usize) -> EmbeddedGraph {
    trim_traced(g, k, TrimOrder::Ascending).graph
}

/// Degrees all in `{d-1, d}`, each component has a vertex of degree `d-1`,
/// and each component is `(d-1)`-edge-connected.
pub fn is_type_ad(g: &EmbeddedGraph, d: usize) -> bool {
    if d < 1 {
        return false;
    }
    let deg = g.degrees();
    if deg.iter().any(|&x| x != d && x + 1 != d) {
        return false;
    }
    g.components().iter().all(|comp| {
        comp.iter().any(|&v| deg[v - 1] + 1 == d) && is_k_edge_connected(&g.induced(comp), d - 1)
    })
}

/// Number of vertices of degree exactly `d`.
pub fn count_nd(g: &EmbeddedGraph, d: usize) -> usize {
    g.degrees().iter().filter(|&&x| x == d).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, on_moment_curve, path_graph, random_general_position, RandomSpec};
    use crate::profile::char_profile;
    use proptest::prelude::*;

    pub(crate) fn bridged_triangles() -> EmbeddedGraph {
        on_moment_curve(6, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (3, 4)]).unwrap()
    }

    fn k4_minus_edge() -> EmbeddedGraph {
        on_moment_curve(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]).unwrap()
    }

    /// Smallest edge set whose removal disconnects, by exhaustive search.
    fn brute_edge_connectivity(g: &EmbeddedGraph) -> usize {
        let e = g.num_edges();
        (0..1u32 << e)
            .filter(|mask| {
                let removed: Vec<Edge> = (0..e).filter(|b| mask >> b & 1 == 1).map(|b| g.edges()[b]).collect();
                !g.delete_edges(&removed).is_connected()
            })
            .map(u32::count_ones)
            .min()
            .unwrap_or(e as u32) as usize
    }

    fn brute_vertex_connectivity(g: &EmbeddedGraph) -> usize {
        let m = g.m();
        (0..1u32 << m)
            .filter(|mask| {
                let set: BTreeSet<usize> = (1..=m).filter(|v| mask >> (v - 1) & 1 == 1).collect();
                set.len() + 1 < m && !g.delete_vertices(&set).is_connected()
            })
            .map(u32::count_ones)
            .min()
            .unwrap_or(m as u32 - 1) as usize
    }

    #[test]
    fn edge_connectivity_examples() {
        for m in 2..=6 {
            assert_eq!(edge_connectivity(&complete_graph(m)).0, m - 1);
        }
        for m in 3..=7 {
            assert_eq!(edge_connectivity(&cycle_graph(m)).0, 2);
        }
        let (lambda, cut) = edge_connectivity(&bridged_triangles());
        assert_eq!(lambda, 1);
        assert_eq!(cut.edges, vec![Edge::new(3, 4)]);
        assert_eq!(cut.sides, (vec![1, 2, 3], vec![4, 5, 6]));
        assert!(is_k_edge_connected(&complete_graph(4), 3));
        assert!(!is_k_edge_connected(&complete_graph(4), 4));
    }

    #[test]
    fn vertex_connectivity_examples() {
        for m in 4..=7 {
            assert_eq!(vertex_connectivity(&cycle_graph(m)).0, 2);
        }
        let (kappa, cut) = vertex_connectivity(&path_graph(3));
        assert_eq!(kappa, 1);
        assert_eq!(cut.vertices, vec![2]);
        assert_eq!(cut.sides, (vec![1], vec![3]));
        assert_eq!(vertex_connectivity(&complete_graph(4)).0, 3);
        assert!(is_k_vertex_connected(&complete_graph(2), 2));
        assert!(!is_k_vertex_connected(&complete_graph(2), 3));
        assert!(!is_k_vertex_connected(&cycle_graph(5), 3));
    }

    #[test]
    fn cut_serializes_with_sides() {
        let (_, cut) = edge_connectivity(&bridged_triangles());
        let json = serde_json::to_string(&cut).unwrap();
        assert_eq!(json, r#"{"size":1,"edges":[{"i":3,"j":4}],"sides":[[1,2,3],[4,5,6]]}"#);
    }

    #[test]
    fn trim_examples() {
        let k4 = complete_graph(4);
        assert_eq!(trim(&k4, 2), k4);
        assert_eq!(trim(&path_graph(5), 1).m(), 0);
        let t = trim_traced(&bridged_triangles(), 1, TrimOrder::Ascending);
        assert_eq!(t.steps, vec![TrimStep::Edges(vec![(3, 4)])]);
        assert_eq!(t.graph.num_components(), 2);
        assert_eq!(t.graph.num_edges(), 6);
    }

    #[test]
    fn type_ad_examples() {
        let g = k4_minus_edge();
        assert!(is_type_ad(&g, 3));
        assert_eq!(count_nd(&g, 3), 2);
        for d in 2..=6 {
            assert!(is_type_ad(&complete_graph(d), d));
        }
        assert!(is_type_ad(&cycle_graph(5), 3));
        assert!(!is_type_ad(&complete_graph(4), 3));
        assert!(!is_type_ad(&bridged_triangles(), 3));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn connectivity_matches_brute_force(seed in 0u64..10_000, m in 2usize..8, pct in 20u32..90) {
            let g = random_general_position(&RandomSpec::density(m, pct), seed).unwrap();
            prop_assume!(g.num_edges() <= 12);
            let (lambda, cut) = edge_connectivity(&g);
            prop_assert_eq!(lambda, brute_edge_connectivity(&g));
            prop_assert!(lambda <= g.min_degree());
            if lambda > 0 {
                prop_assert!(!g.delete_edges(&cut.edges).is_connected());
            }
            if g.is_connected() {
                let (kappa, vcut) = vertex_connectivity(&g);
                prop_assert_eq!(kappa, brute_vertex_connectivity(&g));
                prop_assert!(kappa <= lambda);
                let set: BTreeSet<usize> = vcut.vertices.iter().copied().collect();
                if kappa + 1 < m {
                    prop_assert!(!g.delete_vertices(&set).is_connected());
                }
            }
        }

        #[test]
        fn trim_properties(seed in 0u64..10_000, m in 3usize..10, pct in 30u32..90, k in 1usize..4) {
            let g = random_general_position(&RandomSpec::density(m, pct), seed).unwrap();
            let asc = trim_traced(&g, k, TrimOrder::Ascending);
            let desc = trim_traced(&g, k, TrimOrder::Descending);
            prop_assert_eq!(&asc.labels, &desc.labels);
            prop_assert_eq!(asc.labelled_edges(), desc.labelled_edges());
            prop_assert!(is_k_trimmed(&asc.graph, k));
            prop_assert_eq!(trim(&asc.graph, k), asc.graph.clone());
            let before = char_profile(&g).unwrap();
            let after = char_profile(&asc.graph).unwrap();
            prop_assert_eq!(before.s_at(k as isize - 1), after.s_at(k as isize - 1));
        }
    }
}
