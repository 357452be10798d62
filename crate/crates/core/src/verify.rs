//! Executable checks of the identities and inequalities relating the
//! characteristic numbers to graph structure. Each check yields a
//! [`VerifyReport`]; theorem checks whose hypotheses fail are vacuous.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{kunneth_check, module_generators_with, omega_powers, verify_basis};
use crate::error::{Error, Result};
use crate::exact::{EchelonBasis, Rat, RatMatrix};
use crate::graph::{
    cartesian_product, complete_graph, cycle_graph, on_moment_curve, random_general_position,
    EmbeddedGraph, Edge, GraphFile, Point, RandomSpec,
};
use crate::profile::{build_mk, char_profile, defect_k, edge_vector_with_slope};
use crate::structure::{
    count_nd, edge_connectivity, is_k_edge_connected, is_k_vertex_connected, is_type_ad,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Vacuous,
    PreconditionError,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Vacuous => "vacuous",
            Verdict::PreconditionError => "precondition_error",
            Verdict::Fail => "fail",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub check: String,
    pub instance: String,
    pub claim: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    /// Diagnosis for precondition errors and internal failures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Graph and parameters, attached to every non-passing report so that it
    /// can be replayed on its own.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl VerifyReport {
    pub fn named(mut self, instance: &str) -> Self {
        self.instance = instance.to_string();
        self
    }

    pub fn is_fail(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

fn describe(g: &EmbeddedGraph) -> String {
    format!("m={} |E|={}", g.m(), g.num_edges())
}

fn witness(g: &EmbeddedGraph, params: Value) -> Value {
    json!({ "graph": GraphFile::from_graph(g), "params": params })
}

struct Draft<'a> {
    check: &'static str,
    g: &'a EmbeddedGraph,
    claim: String,
    params: Value,
}

impl Draft<'_> {
    fn finish(self, lhs: impl ToString, rhs: impl ToString, verdict: Verdict, note: Option<String>) -> VerifyReport {
        let witness = (verdict != Verdict::Pass && verdict != Verdict::Vacuous)
            .then(|| witness(self.g, self.params));
        VerifyReport {
            check: self.check.to_string(),
            instance: describe(self.g),
            claim: self.claim,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            verdict,
            note,
            witness,
        }
    }

    fn judge(self, lhs: impl ToString, rhs: impl ToString, holds: bool) -> VerifyReport {
        let verdict = if holds { Verdict::Pass } else { Verdict::Fail };
        let note = (!holds).then(|| "relation violated".to_string());
        self.finish(lhs, rhs, verdict, note)
    }

    fn precondition(self, why: impl Into<String>) -> VerifyReport {
        self.finish("-", "-", Verdict::PreconditionError, Some(why.into()))
    }

    fn vacuous(self, why: impl Into<String>) -> VerifyReport {
        self.finish("-", "-", Verdict::Vacuous, Some(why.into()))
    }

    /// An error from the profile machinery is a bug, never a counterexample.
    fn internal(self, err: &Error) -> VerifyReport {
        self.finish("-", "-", Verdict::Fail, Some(format!("internal error: {err}")))
    }
}

/// `s_k` computed directly, with `s_{-1} = |E|`.
fn s_k(g: &EmbeddedGraph, k: isize) -> usize {
    if k < 0 || g.num_edges() == 0 {
        if k < 0 {
            g.num_edges()
        } else {
            0
        }
    } else {
        defect_k(g, k as usize)
    }
}

/// Deleting a vertex of degree at most `k+1` leaves `s_k` unchanged.
pub fn verify_deleting_lemma(g: &EmbeddedGraph, t: usize, k: usize) -> VerifyReport {
    let d = Draft {
        check: "deleting_lemma",
        g,
        claim: format!("s_{k}(G) = s_{k}(G - v{t})"),
        params: json!({ "t": t, "k": k }),
    };
    if t == 0 || t > g.m() {
        return d.precondition(format!("vertex {t} out of range"));
    }
    let deg = g.degree(t);
    if deg > k + 1 {
        return d.precondition(format!("degree of v{t} is {deg} > k+1 = {}", k + 1));
    }
    let before = s_k(g, k as isize);
    let after = s_k(&g.delete_vertex(t), k as isize);
    d.judge(before, after, before == after)
}

/// `0 <= s_k(G) - s_k(G - v_t) <= max(deg(v_t) - k - 1, 0)` for any vertex.
pub fn verify_deleting_corollary(g: &EmbeddedGraph, t: usize, k: usize) -> VerifyReport {
    let d = Draft {
        check: "deleting_corollary",
        g,
        claim: format!("0 <= s_{k}(G) - s_{k}(G - v{t}) <= max(deg(v{t}) - {k} - 1, 0)"),
        params: json!({ "t": t, "k": k }),
    };
    if t == 0 || t > g.m() {
        return d.precondition(format!("vertex {t} out of range"));
    }
    let bound = g.degree(t).saturating_sub(k + 1);
    let diff = s_k(g, k as isize) as i64 - s_k(&g.delete_vertex(t), k as isize) as i64;
    d.judge(diff, bound, diff >= 0 && diff <= bound as i64)
}

/// Removing a minimal disconnecting set `F` that splits a connected graph in
/// two makes `s_k` additive for `k >= |F| - 1`.
pub fn verify_disconnecting_lemma(g: &EmbeddedGraph, f: &[Edge], k: usize) -> VerifyReport {
    let d = Draft {
        check: "disconnecting_lemma",
        g,
        claim: format!("s_{k}(G) = s_{k}(G1) + s_{k}(G2)"),
        params: json!({ "F": f, "k": k }),
    };
    if !g.is_connected() {
        return d.precondition("graph is not connected");
    }
    if let Some(e) = f.iter().find(|e| !g.has_edge(e.i, e.j)) {
        return d.precondition(format!("{e} is not an edge"));
    }
    let distinct: BTreeSet<Edge> = f.iter().copied().collect();
    if distinct.len() != f.len() || f.is_empty() {
        return d.precondition("F must be a nonempty set of distinct edges");
    }
    if k + 1 < f.len() {
        return d.precondition(format!("k = {k} < |F| - 1 = {}", f.len() - 1));
    }
    let split = g.delete_edges(f);
    let comps = split.components();
    if comps.len() != 2 {
        return d.precondition(format!("removing F leaves {} components, not 2", comps.len()));
    }
    for skip in 0..f.len() {
        let partial: Vec<Edge> = f.iter().enumerate().filter(|(n, _)| *n != skip).map(|(_, e)| *e).collect();
        if !g.delete_edges(&partial).is_connected() {
            return d.precondition(format!("F is not minimal: dropping {} still disconnects", f[skip]));
        }
    }
    let g1 = split.induced(&comps[0]);
    let g2 = split.induced(&comps[1]);
    let lhs = s_k(g, k as isize);
    let (a, b) = (s_k(&g1, k as isize), s_k(&g2, k as isize));
    d.judge(lhs, format!("{a} + {b}"), lhs == a + b)
}

/// `sum c_k = m` and `sum k c_k = |E|`.
pub fn verify_sum_rules(g: &EmbeddedGraph) -> VerifyReport {
    let d = Draft {
        check: "sum_rules",
        g,
        claim: "(sum c_k, sum k*c_k) = (m, |E|)".into(),
        params: json!({}),
    };
    let p = match char_profile(g) {
        Ok(p) => p,
        Err(e) => return d.internal(&e),
    };
    let total: usize = p.c.iter().sum();
    let weighted: usize = p.c.iter().enumerate().map(|(k, c)| k * c).sum();
    d.judge(
        format!("({total}, {weighted})"),
        format!("({}, {})", g.m(), g.num_edges()),
        total == g.m() && weighted == g.num_edges(),
    )
}

/// Greedy module generators exist in exactly the degrees counted by `c`.
pub fn verify_generator_counts(g: &EmbeddedGraph) -> VerifyReport {
    let d = Draft {
        check: "generator_counts",
        g,
        claim: "generator counts by degree = c".into(),
        params: json!({}),
    };
    let p = match char_profile(g) {
        Ok(p) => p,
        Err(e) => return d.internal(&e),
    };
    match module_generators_with(g, &p) {
        Ok(gens) => {
            let counts = gens.counts();
            d.judge(format!("{counts:?}"), format!("{:?}", p.c), counts == p.c)
        }
        Err(e) => d.internal(&e),
    }
}

/// Hypothesis shared by the connectivity and bound theorems: connected,
/// `d`-regular, `c_d = 1`. Returns `(d, c)` or the report to emit.
#[allow(clippy::result_large_err)]
fn regular_hypothesis<'a>(d: Draft<'a>, min_degree: usize) -> std::result::Result<(usize, Vec<usize>, Draft<'a>), VerifyReport> {
    let g = d.g;
    if !g.is_connected() || g.m() == 0 {
        return Err(d.precondition("graph is not connected"));
    }
    let Some(deg) = g.regular_degree() else {
        return Err(d.precondition("graph is not regular"));
    };
    if deg < min_degree {
        return Err(d.precondition(format!("degree {deg} < {min_degree}")));
    }
    let p = match char_profile(g) {
        Ok(p) => p,
        Err(e) => return Err(d.internal(&e)),
    };
    if p.c_at(deg) != 1 {
        return Err(d.vacuous(format!("c_{deg} = {} != 1", p.c_at(deg))));
    }
    Ok((deg, p.c, d))
}

/// Connected `d`-regular with `c_d = 1` implies `d`-edge-connected.
pub fn verify_edge_conn_theorem(g: &EmbeddedGraph) -> VerifyReport {
    let draft = Draft {
        check: "edge_connectivity_theorem",
        g,
        claim: "c_d = 1 => edge connectivity >= d".into(),
        params: json!({}),
    };
    let (deg, _, draft) = match regular_hypothesis(draft, 0) {
        Ok(h) => h,
        Err(r) => return r,
    };
    let lambda = if g.m() <= 1 { deg } else { edge_connectivity(g).0 };
    draft.judge(lambda, deg, is_k_edge_connected(g, deg))
}

/// Connected `d`-regular with `c_d = 1` implies `(ceil(d/2)+1)`-vertex-connected.
pub fn verify_vertex_conn_theorem(g: &EmbeddedGraph) -> VerifyReport {
    let draft = Draft {
        check: "vertex_connectivity_theorem",
        g,
        claim: "c_d = 1 => (ceil(d/2)+1)-vertex-connected".into(),
        params: json!({}),
    };
    let (deg, _, draft) = match regular_hypothesis(draft, 0) {
        Ok(h) => h,
        Err(r) => return r,
    };
    let need = deg.div_ceil(2) + 1;
    let holds = is_k_vertex_connected(g, need);
    let lhs = if holds { format!("{need}-connected") } else { "not".to_string() };
    draft.judge(lhs, need, holds)
}

/// Connected `d`-regular, `d >= 2`, `c_d = 1` implies `c_{d-1} <= (m-2)/(d-1)`.
pub fn verify_bound_theorem(g: &EmbeddedGraph) -> VerifyReport {
    let draft = Draft {
        check: "bound_theorem",
        g,
        claim: "c_d = 1 => c_{d-1} <= (m-2)/(d-1)".into(),
        params: json!({}),
    };
    let (deg, c, draft) = match regular_hypothesis(draft, 2) {
        Ok(h) => h,
        Err(r) => return r,
    };
    let lhs = c.get(deg - 1).copied().unwrap_or(0);
    let rhs = Rat::new(g.m() as i64 - 2, deg as i64 - 1);
    draft.judge(lhs, &rhs, Rat::from(lhs) <= rhs)
}

/// Type `A_d` implies `s_{d-3} <= n_d/(d-1) + pi_0`.
pub fn verify_type_ad_bound(g: &EmbeddedGraph, d: usize) -> VerifyReport {
    let draft = Draft {
        check: "type_ad_bound",
        g,
        claim: format!("s_{}(G) <= n_{d}/({d}-1) + pi_0", d as isize - 3),
        params: json!({ "d": d }),
    };
    if d < 2 {
        return draft.precondition("d must be at least 2");
    }
    if !is_type_ad(g, d) {
        return draft.precondition(format!("graph is not of type A_{d}"));
    }
    let lhs = s_k(g, d as isize - 3);
    let rhs = Rat::new(count_nd(g, d) as i64, d as i64 - 1) + Rat::from(g.num_components());
    draft.judge(lhs, &rhs, Rat::from(lhs) <= rhs)
}

/// The part of the edge-vector span vanishing outside `U` lies in the span of
/// the edge vectors of the complete graph on `U` (slopes from the moment map).
pub fn verify_self_containment(g: &EmbeddedGraph, u: &[usize], k: usize) -> VerifyReport {
    let draft = Draft {
        check: "self_containment",
        g,
        claim: format!("span(v^{k}_E) cap W_U <= span(v^{k}_K(U))"),
        params: json!({ "U": u, "k": k }),
    };
    let set: BTreeSet<usize> = u.iter().copied().collect();
    if set.is_empty() || set.iter().any(|&v| v == 0 || v > g.m()) {
        return draft.precondition("U must be a nonempty set of vertices");
    }
    let m = g.m();
    let cols = (k + 1) * m;
    let mut complete_span = EchelonBasis::new(cols);
    let verts: Vec<usize> = set.iter().copied().collect();
    for (n, &i) in verts.iter().enumerate() {
        for &j in &verts[n + 1..] {
            match g.pair_slope(i, j) {
                Ok(a) => {
                    complete_span.insert(&edge_vector_with_slope(m, Edge::new(i, j), &a, k));
                }
                Err(e) => return draft.precondition(format!("slope of {i}-{j} unavailable: {e}")),
            }
        }
    }
    let intersection = if g.num_edges() == 0 {
        Vec::new()
    } else {
        // Combinations x^T M_k whose entries outside U vanish: x in the left
        // kernel of the columns outside U.
        let mk = build_mk(g, k);
        let outside: Vec<usize> = (0..cols).filter(|c| !set.contains(&(c % m + 1))).collect();
        let coeffs = if outside.is_empty() {
            RatMatrix::identity(mk.rows()).row_vecs()
        } else {
            mk.select_cols(&outside).transpose().kernel()
        };
        coeffs
            .iter()
            .map(|x| {
                let mut v = vec![Rat::zero(); cols];
                for (r, coef) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (c, entry) in mk.row(r).iter().enumerate() {
                        if !entry.is_zero() {
                            v[c] += &(coef * entry);
                        }
                    }
                }
                debug_assert!(outside.iter().all(|&c| v[c].is_zero()));
                v
            })
            .collect::<Vec<_>>()
    };
    let mut inter_span = EchelonBasis::new(cols);
    let mut contained = true;
    for v in &intersection {
        inter_span.insert(v);
        if !complete_span.contains(v) {
            contained = false;
        }
    }
    draft.judge(
        format!("dim {}", inter_span.rank()),
        format!("dim {}", complete_span.rank()),
        contained,
    )
}

/// Characteristic numbers of a product are the convolution of the factors',
/// and products of generators are members.
pub fn verify_kunneth(g1: &EmbeddedGraph, g2: &EmbeddedGraph, a: &Rat, b: &Rat) -> Result<VerifyReport> {
    let product = cartesian_product(g1, g2, a, b)?;
    let draft = Draft {
        check: "kunneth",
        g: &product,
        claim: "c(G1 x G2) = c(G1) * c(G2), images of members are members".into(),
        params: json!({
            "G1": GraphFile::from_graph(g1),
            "G2": GraphFile::from_graph(g2),
            "a": a,
            "b": b,
        }),
    };
    let report = match kunneth_check(g1, g2, a, b) {
        Ok(r) => r,
        Err(e) => return Ok(draft.internal(&e)),
    };
    let note = report
        .non_member
        .map(|(x, y)| format!("generator pair ({x}, {y}) maps outside"));
    let holds = report.holds();
    let mut out = draft.judge(
        format!("{:?}", report.c_product),
        format!("{:?}", report.convolution),
        holds,
    );
    if note.is_some() {
        out.note = note;
    }
    Ok(out)
}

/// `1, omega, ..., omega^(m-1)` freely generate the cohomology of a complete graph.
pub fn verify_omega_basis(g: &EmbeddedGraph) -> VerifyReport {
    let draft = Draft {
        check: "omega_basis",
        g,
        claim: "omega powers form a basis".into(),
        params: json!({}),
    };
    let m = g.m();
    if g.num_edges() != m * m.saturating_sub(1) / 2 {
        return draft.precondition("graph is not complete");
    }
    match omega_powers(g) {
        Ok(cand) => {
            let holds = verify_basis(g, &cand);
            draft.judge(if holds { "basis" } else { "not a basis" }, "basis", holds)
        }
        Err(e) => draft.precondition(format!("{e}")),
    }
}

/// Which instances [`run_suite`] covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    /// The named fixture graphs and products.
    pub fixtures: bool,
    /// Complete graphs `K_2..=K_n` (0 for none).
    pub complete_max: usize,
    /// Number of random instances.
    pub random: usize,
    /// Largest vertex count for random instances.
    pub random_max_m: usize,
    /// Number of random products.
    pub random_products: usize,
}

impl CorpusSpec {
    pub fn empty() -> Self {
        CorpusSpec {
            fixtures: false,
            complete_max: 0,
            random: 0,
            random_max_m: 0,
            random_products: 0,
        }
    }

    pub fn default_corpus() -> Self {
        CorpusSpec {
            fixtures: true,
            complete_max: 0,
            random: 24,
            random_max_m: 8,
            random_products: 4,
        }
    }

    pub fn complete_graphs(max: usize) -> Self {
        CorpusSpec {
            complete_max: max,
            ..Self::empty()
        }
    }
}

/// Four points, five edges: the complete graph on four vertices minus the
/// edge 1-3, with slopes (-3, 1, 1/2, -1/3, -2).
pub fn sample_graph() -> EmbeddedGraph {
    EmbeddedGraph::validate(
        vec![
            Point::new(0, 0),
            Point::new(3, 1),
            Point::new(4, -1),
            Point::new(2, -2),
        ],
        &[(1, 2), (1, 4), (2, 3), (2, 4), (3, 4)],
    )
    .expect("sample graph is in general position")
}

/// The same graph given by raw slopes only.
pub fn sample_graph_slopes() -> EmbeddedGraph {
    let slopes = [Rat::from(-3), Rat::from(1), Rat::new(1, 2), Rat::new(-1, 3), Rat::from(-2)];
    EmbeddedGraph::from_slopes(4, &[(1, 2), (1, 4), (2, 3), (2, 4), (3, 4)], &slopes)
        .expect("distinct slopes at every vertex")
}

/// Two triangles joined by the bridge 3-4.
pub fn bridged_triangles() -> EmbeddedGraph {
    on_moment_curve(6, &[(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6)])
        .expect("moment curve is in general position")
}

pub fn k4_minus_edge() -> EmbeddedGraph {
    on_moment_curve(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]).expect("moment curve is in general position")
}

/// A single edge not parallel to any edge of the moment-curve graphs, for
/// use as a product factor.
pub fn tilted_edge() -> EmbeddedGraph {
    EmbeddedGraph::validate(vec![Point::new(0, 0), Point::new(2, -1)], &[(1, 2)])
        .expect("two points are in general position")
}

pub struct ProductFixture {
    pub name: String,
    pub g1: EmbeddedGraph,
    pub g2: EmbeddedGraph,
    pub a: Rat,
    pub b: Rat,
}

pub fn fixture_graphs() -> Vec<(String, EmbeddedGraph)> {
    let mut out = vec![
        ("sample".to_string(), sample_graph()),
        ("sample-slopes".to_string(), sample_graph_slopes()),
    ];
    for m in 1..=6 {
        out.push((format!("complete-{m}"), complete_graph(m)));
    }
    for m in 3..=8 {
        out.push((format!("cycle-{m}"), cycle_graph(m)));
    }
    out.push(("bridged-triangles".into(), bridged_triangles()));
    out.push(("k4-minus-edge".into(), k4_minus_edge()));
    for p in fixture_products() {
        let g = cartesian_product(&p.g1, &p.g2, &p.a, &p.b).expect("fixture product is in general position");
        out.push((p.name, g));
    }
    out
}

pub fn fixture_products() -> Vec<ProductFixture> {
    vec![
        ProductFixture {
            name: "k2xk2".into(),
            g1: complete_graph(2),
            g2: tilted_edge(),
            a: Rat::one(),
            b: Rat::one(),
        },
        ProductFixture {
            name: "k2xk3".into(),
            g1: tilted_edge(),
            g2: complete_graph(3),
            a: Rat::one(),
            b: Rat::from(5),
        },
    ]
}

/// A random graph from `rng`: vertex count in `3..=max_m`, either a regular
/// graph or a density sample.
pub fn random_instance(rng: &mut ChaCha8Rng, max_m: usize) -> Result<EmbeddedGraph> {
    let m = rng.gen_range(3..=max_m.max(3));
    let spec = if rng.gen_bool(0.4) {
        let choices: Vec<usize> = (2..m.min(5)).filter(|d| m * d % 2 == 0).collect();
        if choices.is_empty() {
            RandomSpec::density(m, 50)
        } else {
            RandomSpec::regular(m, choices[rng.gen_range(0..choices.len())])
        }
    } else {
        RandomSpec::density(m, rng.gen_range(25..=85))
    };
    random_general_position(&spec, rng.gen())
}

/// A random product of two small graphs with small nonzero scale factors,
/// retrying scale factors that break general position.
pub fn random_product(rng: &mut ChaCha8Rng) -> Result<ProductFixture> {
    for _ in 0..64 {
        let g1 = random_general_position(&RandomSpec::density(rng.gen_range(2..=3), 70), rng.gen())?;
        let g2 = random_general_position(&RandomSpec::density(rng.gen_range(2..=4), 60), rng.gen())?;
        let pick = |rng: &mut ChaCha8Rng| {
            let v: i64 = rng.gen_range(1..=4);
            Rat::from(if rng.gen_bool(0.5) { v } else { -v })
        };
        let (a, b) = (pick(rng), pick(rng));
        if cartesian_product(&g1, &g2, &a, &b).is_ok() {
            return Ok(ProductFixture {
                name: String::new(),
                g1,
                g2,
                a,
                b,
            });
        }
    }
    Err(Error::GenerationFailed("no general-position product found".into()))
}

/// Every check that applies to one graph.
pub fn checks_for(g: &EmbeddedGraph) -> Vec<VerifyReport> {
    let mut out = vec![verify_sum_rules(g), verify_generator_counts(g)];
    let kk = crate::profile::vanishing_index(g);
    for t in 1..=g.m() {
        for k in 0..=kk + 1 {
            if g.degree(t) <= k + 1 {
                out.push(verify_deleting_lemma(g, t, k));
            } else {
                out.push(verify_deleting_corollary(g, t, k));
            }
        }
    }
    if g.m() >= 2 && g.is_connected() {
        let (lambda, cut) = edge_connectivity(g);
        if lambda > 0 {
            for k in lambda - 1..=lambda {
                out.push(verify_disconnecting_lemma(g, &cut.edges, k));
            }
        }
    }
    if g.is_connected() && g.regular_degree().is_some() {
        out.push(verify_edge_conn_theorem(g));
        out.push(verify_vertex_conn_theorem(g));
        if g.regular_degree() >= Some(2) {
            out.push(verify_bound_theorem(g));
        }
    }
    if g.m() > 0 {
        let top = g.max_degree();
        for d in [top, top + 1] {
            if d >= 2 && is_type_ad(g, d) {
                out.push(verify_type_ad_bound(g, d));
            }
        }
    }
    if g.phi().is_some() && g.m() > 0 {
        let all: Vec<usize> = (1..=g.m()).collect();
        let half: Vec<usize> = (1..=g.m().div_ceil(2)).collect();
        out.push(verify_self_containment(g, &all, 1));
        out.push(verify_self_containment(g, &half, 1));
    }
    let m = g.m();
    if g.phi().is_some() && (1..=5).contains(&m) && g.num_edges() == m * (m - 1) / 2 {
        out.push(verify_omega_basis(g));
    }
    out
}

/// Runs every applicable check on the corpus; random instances are derived
/// from `seed`. Stops right after the first failing report.
pub fn run_suite(corpus: &CorpusSpec, seed: u64) -> Result<Vec<VerifyReport>> {
    let mut reports = Vec::new();
    run_suite_with(corpus, seed, |r| reports.push(r.clone()))?;
    Ok(reports)
}

/// Streaming form of [`run_suite`]: `emit` sees each report as soon as it is
/// produced. Returns whether the suite ran to completion without a failure.
pub fn run_suite_with(corpus: &CorpusSpec, seed: u64, mut emit: impl FnMut(&VerifyReport)) -> Result<bool> {
    let mut graphs: Vec<(String, EmbeddedGraph)> = Vec::new();
    let mut products: Vec<ProductFixture> = Vec::new();
    if corpus.fixtures {
        graphs.extend(fixture_graphs());
        products.extend(fixture_products());
    }
    for m in 2..=corpus.complete_max {
        if !corpus.fixtures || m > 6 {
            graphs.push((format!("complete-{m}"), complete_graph(m)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 0..corpus.random {
        graphs.push((format!("random-{n}"), random_instance(&mut rng, corpus.random_max_m)?));
    }
    for n in 0..corpus.random_products {
        let mut p = random_product(&mut rng)?;
        p.name = format!("random-product-{n}");
        products.push(p);
    }
    for (name, g) in &graphs {
        for r in checks_for(g) {
            let r = r.named(name);
            emit(&r);
            if r.is_fail() {
                return Ok(false);
            }
        }
    }
    for p in &products {
        let r = verify_kunneth(&p.g1, &p.g2, &p.a, &p.b)?.named(&p.name);
        emit(&r);
        if r.is_fail() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// 0 if everything passed or was vacuous, 1 on any failure, 2 if the only
/// problems are precondition errors.
pub fn exit_code(reports: &[VerifyReport]) -> i32 {
    match reports.iter().map(|r| r.verdict).max() {
        Some(Verdict::Fail) => 1,
        Some(Verdict::PreconditionError) => 2,
        _ => 0,
    }
}
