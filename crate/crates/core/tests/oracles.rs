//! Library routines checked against the brute-force oracles in `common`.

mod common;

use gcohom::cohomology::{degree_basis, is_member, module_generators};
use gcohom::graph::{complete_graph, cycle_graph, random_general_position, RandomSpec};
use gcohom::profile::{build_mk, char_profile, dim_hk};
use gcohom::verify::{sample_graph, sample_graph_slopes};
use gcohom::{rat, Rat, RatMatrix};
use proptest::prelude::*;

/// Determinant by Laplace expansion along the first row.
fn det(m: &[Vec<Rat>]) -> Rat {
    if m.is_empty() {
        return rat(1, 1);
    }
    let mut total = rat(0, 1);
    for (c, v) in m[0].iter().enumerate() {
        if v == &rat(0, 1) {
            continue;
        }
        let minor: Vec<Vec<Rat>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(cc, _)| cc != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = v * &det(&minor);
        total = if c % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|b| mask >> b & 1 == 1).collect())
        .collect()
}

/// Rank as the size of the largest nonvanishing minor.
fn minor_rank(rows: &[Vec<Rat>]) -> usize {
    let (r, c) = (rows.len(), rows.first().map_or(0, Vec::len));
    (1..=r.min(c))
        .rev()
        .find(|&k| {
            subsets(r, k).iter().any(|rs| {
                subsets(c, k).iter().any(|cs| {
                    let sub: Vec<Vec<Rat>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                    det(&sub) != rat(0, 1)
                })
            })
        })
        .unwrap_or(0)
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<Rat>>> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec((-2i64..=2, 1i64..=2), c), r).prop_map(|rows| {
            rows.into_iter()
                .map(|row| row.into_iter().map(|(n, d)| rat(n, d)).collect())
                .collect()
        })
    })
}

proptest! {
    #[test]
    fn rank_matches_minors(rows in small_matrix()) {
        let cols = rows[0].len();
        let m = RatMatrix::from_rows(cols, rows.clone());
        prop_assert_eq!(m.rank(), minor_rank(&rows));
        prop_assert_eq!(m.rank(), common::naive_rank(rows));
    }

    #[test]
    fn kernel_is_annihilated(rows in small_matrix()) {
        let cols = rows[0].len();
        let m = RatMatrix::from_rows(cols, rows.clone());
        let kernel = m.kernel();
        prop_assert_eq!(kernel.len(), cols - m.rank());
        for v in &kernel {
            for row in &rows {
                let dot = row.iter().zip(v).fold(rat(0, 1), |acc, (a, b)| &acc + &(a * b));
                prop_assert_eq!(dot, rat(0, 1));
            }
        }
        prop_assert_eq!(common::naive_rank(kernel), cols - m.rank());
    }
}

#[test]
fn edge_matrix_rank_matches_gauss_jordan() {
    for seed in 0..20 {
        let g = random_general_position(&RandomSpec::density(6, 60), seed).unwrap();
        for k in 0..4 {
            assert_eq!(build_mk(&g, k).rank(), common::naive_rank(build_mk(&g, k).row_vecs()));
        }
    }
}

#[test]
fn sample_degree_one_dimension() {
    assert_eq!(common::oracle_dim(&sample_graph(), 1), 3);
    assert_eq!(common::oracle_dim(&sample_graph_slopes(), 1), 3);
}

#[test]
fn degree_bases_are_oracle_sized_members() {
    for g in [sample_graph(), complete_graph(4), cycle_graph(5)] {
        for k in 0..4 {
            let basis = degree_basis(&g, k);
            let elements = basis.elements();
            assert_eq!(elements.len(), common::oracle_dim(&g, k as u32));
            assert!(elements.iter().all(|f| is_member(&g, &f.parts)));
        }
    }
}

#[test]
fn cumulative_dimension_matches_oracle() {
    for g in [sample_graph(), complete_graph(5), cycle_graph(6)] {
        for k in 0..4u32 {
            let sum: usize = (0..=k as usize).map(|d| dim_hk(&g, d)).sum();
            assert_eq!(sum, common::oracle_dim_upto(&g, k));
        }
    }
}

#[test]
fn generator_counts_follow_oracle_dimensions() {
    // dim H^k = sum over generators of degree d <= k of (k - d + 1)
    for seed in 0..10 {
        let g = random_general_position(&RandomSpec::density(6, 50), seed).unwrap();
        let gens = module_generators(&g).unwrap();
        let p = char_profile(&g).unwrap();
        assert_eq!(gens.counts(), p.c);
        for k in 0..5u32 {
            let predicted: usize = gens.degrees().iter().filter(|&&d| d <= k as usize).map(|&d| k as usize - d + 1).sum();
            assert_eq!(predicted, common::oracle_dim(&g, k), "seed {seed}, k {k}");
        }
    }
}
