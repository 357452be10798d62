//! Edge-vector matrices `M_k`, their ranks `r_k` and relation counts `s_k`,
//! and the characteristic numbers `c_k` derived from them. Also the two
//! vertex-index statistics: indices for a generic direction and indices for
//! a vertex ordering.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Rat, RatMatrix};
use crate::graph::{EmbeddedGraph, Edge};

/// Row of `M_k` for edge `e = {i, j}` with slope `a`: block `b` holds `a^b`
/// at vertex `i` and `-a^b` at vertex `j`.
pub fn edge_vector(g: &EmbeddedGraph, e: Edge, k: usize) -> Vec<Rat> {
    let a = g.slope(e).expect("edge_vector: edge not in graph");
    edge_vector_with_slope(g.m(), e, a, k)
}

pub(crate) fn edge_vector_with_slope(m: usize, e: Edge, a: &Rat, k: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); (k + 1) * m];
    let mut power = Rat::one();
    for block in 0..=k {
        v[block * m + e.i - 1] = power.clone();
        v[block * m + e.j - 1] = -&power;
        power = &power * a;
    }
    v
}

/// `|E| x (k+1)m` matrix whose rows are the edge vectors, in edge order.
pub fn build_mk(g: &EmbeddedGraph, k: usize) -> RatMatrix {
    let cols = (k + 1) * g.m();
    let rows = g
        .edges()
        .iter()
        .zip(g.slopes())
        .map(|(e, a)| edge_vector_with_slope(g.m(), *e, a, k))
        .collect();
    RatMatrix::from_rows(cols, rows)
}

/// `r_k = rank M_k`, computed directly (no vanishing shortcut).
pub fn rank_k(g: &EmbeddedGraph, k: usize) -> usize {
    build_mk(g, k).rank()
}

/// `s_k = |E| - r_k`, computed directly.
pub fn defect_k(g: &EmbeddedGraph, k: usize) -> usize {
    g.num_edges() - rank_k(g, k)
}

/// Computation cutoff: beyond `max degree - 1` every `s_k` vanishes.
pub fn vanishing_index(g: &EmbeddedGraph) -> usize {
    g.max_degree().saturating_sub(1)
}

/// Ranks, relation counts and characteristic numbers of one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharProfile {
    /// `r_k` for `k = 0..=K`.
    pub r: Vec<usize>,
    /// `s_k` for `k = -1..=K`; `s[0]` is `s_{-1} = |E|`.
    pub s: Vec<usize>,
    /// `c_k` for `k = 0..`, without trailing zeros (always at least `c_0`).
    pub c: Vec<usize>,
    pub pi0: usize,
    #[serde(rename = "K")]
    pub k_max: usize,
}

impl CharProfile {
    /// `r_k` for any `k >= -1`.
    pub fn r_at(&self, k: isize) -> usize {
        match k {
            k if k < 0 => 0,
            k if k as usize <= self.k_max => self.r[k as usize],
            _ => *self.r.last().expect("r has K+1 entries"),
        }
    }

    /// `s_k` for any `k >= -1`.
    pub fn s_at(&self, k: isize) -> usize {
        assert!(k >= -1, "s_k is defined for k >= -1");
        if k as i64 > self.k_max as i64 {
            0
        } else {
            self.s[(k + 1) as usize]
        }
    }

    pub fn c_at(&self, k: usize) -> usize {
        self.c.get(k).copied().unwrap_or(0)
    }

    pub fn num_edges(&self) -> usize {
        self.s[0]
    }

    pub fn num_vertices(&self) -> usize {
        self.c.iter().sum()
    }

    /// `dim H^k = (k+1)m - r_k`.
    pub fn dim_hk(&self, k: usize) -> usize {
        (k + 1) * self.num_vertices() - self.r_at(k as isize)
    }
}

/// Full profile. `c_0` is cross-checked against the component count and every
/// `c_k` against the cumulative identity `sum (k+1-n) c_n = (k+1)m - r_k`.
pub fn char_profile(g: &EmbeddedGraph) -> Result<CharProfile> {
    let m = g.m();
    let e = g.num_edges();
    let k_max = vanishing_index(g);
    let pi0 = g.num_components();

    let r: Vec<usize> = if e == 0 {
        vec![0; k_max + 1]
    } else {
        (0..=k_max).map(|k| rank_k(g, k)).collect()
    };
    if r[k_max] != e {
        return Err(Error::InternalInconsistency(format!(
            "r_{k_max} = {} but |E| = {e}",
            r[k_max]
        )));
    }
    let mut s = vec![e];
    s.extend(r.iter().map(|rk| e - rk));

    let r_at = |k: isize| -> i64 {
        if k < 0 {
            0
        } else if k as usize <= k_max {
            r[k as usize] as i64
        } else {
            e as i64
        }
    };
    if m < r_at(0) as usize || m - r_at(0) as usize != pi0 {
        return Err(Error::InternalInconsistency(format!(
            "component count {pi0} differs from m - r_0 = {}",
            m as i64 - r_at(0)
        )));
    }
    let mut c: Vec<i64> = vec![pi0 as i64];
    for k in 1..=(k_max as isize + 1) {
        c.push(2 * r_at(k - 1) - r_at(k) - r_at(k - 2));
    }
    if let Some(neg) = c.iter().position(|&v| v < 0) {
        return Err(Error::InternalInconsistency(format!("c_{neg} = {} < 0", c[neg])));
    }
    for k in 0..c.len() {
        let lhs: i64 = (0..=k).map(|n| (k - n + 1) as i64 * c[n]).sum();
        let rhs = (k as i64 + 1) * m as i64 - r_at(k as isize);
        if lhs != rhs {
            return Err(Error::InternalInconsistency(format!(
                "cumulative identity fails at k = {k}: {lhs} != {rhs}"
            )));
        }
    }
    let total: i64 = c.iter().sum();
    let weighted: i64 = c.iter().enumerate().map(|(k, v)| k as i64 * v).sum();
    if total != m as i64 || weighted != e as i64 {
        return Err(Error::InternalInconsistency(format!(
            "sum rules fail: sum c = {total} (m = {m}), sum k c = {weighted} (|E| = {e})"
        )));
    }
    while c.len() > 1 && c.last() == Some(&0) {
        c.pop();
    }
    Ok(CharProfile {
        r,
        s,
        c: c.into_iter().map(|v| v as usize).collect(),
        pi0,
        k_max,
    })
}

/// `dim H^k = (k+1)m - r_k`, using `r_k = |E|` beyond the vanishing index.
pub fn dim_hk(g: &EmbeddedGraph, k: usize) -> usize {
    let r = if k > vanishing_index(g) {
        g.num_edges()
    } else {
        rank_k(g, k)
    };
    (k + 1) * g.m() - r
}

/// Indices of vertices for a generic direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiData {
    /// Per vertex: number of neighbours lower in the direction `xi`.
    pub sigma: Vec<usize>,
    /// `beta[k]` = number of vertices of index `k`.
    pub beta: Vec<usize>,
    pub xi: (Rat, Rat),
    /// False for non-regular graphs, where the counts may depend on `xi`.
    pub xi_invariant: bool,
}

/// Combinatorial Betti numbers. Without a supplied direction, tries
/// `xi = (1, N)` for `N = 1, 2, ...` until all heights differ.
pub fn betti_generic(g: &EmbeddedGraph, xi: Option<(Rat, Rat)>) -> Result<BettiData> {
    let phi = g.phi().ok_or(Error::NoCoordinates)?;
    let first_tie = |xi: &(Rat, Rat)| -> Option<(usize, usize)> {
        let heights: Vec<Rat> = phi.iter().map(|pt| pt.dot(xi)).collect();
        for a in 0..heights.len() {
            for b in a + 1..heights.len() {
                if heights[a] == heights[b] {
                    return Some((a + 1, b + 1));
                }
            }
        }
        None
    };
    let xi = match xi {
        Some(xi) => {
            if let Some((a, b)) = first_tie(&xi) {
                return Err(Error::NonGenericDirection(a, b));
            }
            xi
        }
        None => (1i64..)
            .map(|n| (Rat::one(), Rat::from(n)))
            .find(|xi| first_tie(xi).is_none())
            .expect("only finitely many directions are non-generic"),
    };
    let heights: Vec<Rat> = phi.iter().map(|pt| pt.dot(&xi)).collect();
    let sigma: Vec<usize> = (1..=g.m())
        .map(|v| {
            g.neighbors(v)
                .into_iter()
                .filter(|&w| heights[w - 1] < heights[v - 1])
                .count()
        })
        .collect();
    Ok(BettiData {
        beta: histogram(&sigma),
        sigma,
        xi,
        xi_invariant: g.regular_degree().is_some(),
    })
}

fn histogram(values: &[usize]) -> Vec<usize> {
    let len = values.iter().max().map_or(0, |&v| v + 1);
    let mut out = vec![0; len];
    for &v in values {
        out[v] += 1;
    }
    out
}

/// Indices for a vertex ordering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingData {
    /// The ordering used: `ordering[p]` is the vertex at position `p + 1`.
    pub ordering: Vec<usize>,
    /// `mu[p]`: neighbours of the vertex at position `p + 1` that come later.
    pub mu: Vec<usize>,
    /// `b[k]` = number of positions with `mu = k`.
    pub b: Vec<usize>,
}

fn check_permutation(m: usize, ordering: &[usize]) -> Result<()> {
    let set: BTreeSet<usize> = ordering.iter().copied().collect();
    if ordering.len() != m || set.len() != m || set.iter().any(|&v| v == 0 || v > m) {
        return Err(Error::BadOrdering(format!("{ordering:?} is not a permutation of 1..={m}")));
    }
    Ok(())
}

/// Ordering indices; `None` means the identity ordering.
pub fn ordering_indices(g: &EmbeddedGraph, ordering: Option<&[usize]>) -> Result<OrderingData> {
    let ordering: Vec<usize> = match ordering {
        Some(o) => {
            check_permutation(g.m(), o)?;
            o.to_vec()
        }
        None => (1..=g.m()).collect(),
    };
    let mut position = vec![0; g.m() + 1];
    for (p, &v) in ordering.iter().enumerate() {
        position[v] = p;
    }
    let mu: Vec<usize> = ordering
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .into_iter()
                .filter(|&w| position[w] > position[v])
                .count()
        })
        .collect();
    Ok(OrderingData {
        b: histogram(&mu),
        mu,
        ordering,
    })
}

/// One row of the characteristic-vs-ordering comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CumulativeComparison {
    pub k: usize,
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
}

/// Evaluate `sum_{i<=k} (k+1-i) c_i <= sum_{i<=k} (k+1-i) b_i` for
/// `k = 0..=K+1`. A failing row is reported as [`Error::PropertyViolated`].
pub fn check_ordering_bound(
    g: &EmbeddedGraph,
    ordering: Option<&[usize]>,
) -> Result<Vec<CumulativeComparison>> {
    let profile = char_profile(g)?;
    let data = ordering_indices(g, ordering)?;
    let weigh = |vals: &dyn Fn(usize) -> usize, k: usize| -> usize {
        (0..=k).map(|i| (k + 1 - i) * vals(i)).sum()
    };
    let rows: Vec<CumulativeComparison> = (0..=profile.k_max + 1)
        .map(|k| {
            let lhs = weigh(&|i| profile.c_at(i), k);
            let rhs = weigh(&|i| data.b.get(i).copied().unwrap_or(0), k);
            CumulativeComparison {
                k,
                lhs,
                rhs,
                holds: lhs <= rhs,
            }
        })
        .collect();
    if let Some(bad) = rows.iter().find(|row| !row.holds) {
        return Err(Error::PropertyViolated(format!(
            "cumulative characteristic bound fails at k = {}: {} > {}",
            bad.k, bad.lhs, bad.rhs
        )));
    }
    Ok(rows)
}
