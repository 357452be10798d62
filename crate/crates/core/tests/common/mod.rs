//! Independent oracles shared by the integration tests. Nothing here goes
//! through the edge-vector matrices or the library's elimination routines.

#![allow(dead_code)]

use std::collections::BTreeMap;

use gcohom::graph::{moment_curve, random_general_position, RandomSpec};
use gcohom::{BivarPoly, EmbeddedGraph, Point, Rat};

/// Rank by plain Gauss-Jordan over the rationals.
pub fn naive_rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot_row[c];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = &*x - &(&f * p);
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the space of tuples built from the given monomials whose
/// differences vanish on every edge line `y = a x`, found by substituting
/// each basis tuple into each edge difference and solving the resulting
/// linear conditions on the coefficients.
fn oracle_nullity(g: &EmbeddedGraph, monomials: &[(u32, u32)]) -> usize {
    let m = g.m();
    let unknowns: Vec<(usize, (u32, u32))> = (0..m)
        .flat_map(|i| monomials.iter().map(move |&mono| (i, mono)))
        .collect();
    // condition key: (edge index, power of x after substitution)
    let mut conditions: BTreeMap<(usize, u32), Vec<Rat>> = BTreeMap::new();
    for (ei, (e, a)) in g.edges().iter().zip(g.slopes()).enumerate() {
        for (u, &(vertex, (dx, dy))) in unknowns.iter().enumerate() {
            let mut parts = vec![BivarPoly::zero(); m];
            parts[vertex] = BivarPoly::monomial(Rat::one(), dx, dy);
            let diff = &parts[e.i - 1] - &parts[e.j - 1];
            let restricted = diff.substitute_y(a);
            for (&(px, py), coef) in restricted.terms() {
                assert_eq!(py, 0, "substitution must eliminate y");
                conditions
                    .entry((ei, px))
                    .or_insert_with(|| vec![Rat::zero(); unknowns.len()])[u] += coef;
            }
        }
    }
    unknowns.len() - naive_rank(conditions.into_values().collect())
}

/// Brute-force `dim H^k`: homogeneous degree-`k` tuples.
pub fn oracle_dim(g: &EmbeddedGraph, k: u32) -> usize {
    let monomials: Vec<(u32, u32)> = (0..=k).map(|n| (k - n, n)).collect();
    oracle_nullity(g, &monomials)
}

/// Brute-force dimension of all members of degree at most `k`.
pub fn oracle_dim_upto(g: &EmbeddedGraph, k: u32) -> usize {
    let monomials: Vec<(u32, u32)> = (0..=k)
        .flat_map(|d| (0..=d).map(move |n| (d - n, n)))
        .collect();
    oracle_nullity(g, &monomials)
}

/// Two placements per vertex count: the moment curve and a seeded random
/// integer placement in general position.
pub fn placements(m: usize) -> Vec<Vec<Point>> {
    let random = random_general_position(&RandomSpec::density(m, 0), 1000 + m as u64)
        .expect("random placement")
        .phi()
        .expect("coordinates")
        .to_vec();
    vec![moment_curve(m), random]
}

/// Every edge subset of the complete graph on `m` vertices.
pub fn all_edge_sets(m: usize) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (1..=m)
        .flat_map(|i| (i + 1..=m).map(move |j| (i, j)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    })
}
