//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always print.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gcohom::cohomology::{degree_basis, is_member, kunneth_check, kunneth_map, module_generators, omega_powers, verify_basis};
use gcohom::graph::{cartesian_product, complete_graph, cycle_graph, random_general_position, RandomSpec};
use gcohom::profile::{betti_generic, char_profile, dim_hk};
use gcohom::structure::{edge_connectivity, is_k_trimmed, is_type_ad, trim, trim_traced, TrimOrder};
use gcohom::verify::{
    bridged_triangles, fixture_graphs, fixture_products, k4_minus_edge, random_instance, random_product,
    sample_graph, sample_graph_slopes, verify_bound_theorem, verify_deleting_corollary, verify_deleting_lemma,
    verify_disconnecting_lemma, verify_edge_conn_theorem, verify_kunneth, verify_sum_rules,
    verify_type_ad_bound, verify_vertex_conn_theorem, Verdict,
};
use gcohom::{EmbeddedGraph, Edge};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn example_reproduction() -> Outcome {
    let start = Instant::now();
    for (name, g) in [("coordinates", sample_graph()), ("raw slopes", sample_graph_slopes())] {
        let p = char_profile(&g).map_err(|e| e.to_string())?;
        ensure(p.r == [3, 5, 5], || format!("{name}: r = {:?}", p.r))?;
        ensure(p.s_at(0) == 2 && p.s_at(1) == 0 && p.s_at(2) == 0, || format!("{name}: s = {:?}", p.s))?;
        ensure(p.c == [1, 1, 2], || format!("{name}: c = {:?}", p.c))?;
        let gens = module_generators(&g).map_err(|e| e.to_string())?;
        ensure(gens.counts() == [1, 1, 2], || format!("{name}: generator counts {:?}", gens.counts()))?;
    }
    within(start, Duration::from_secs(1))?;
    Ok("r = (3,5,5), s = (2,0,0), c = (1,1,2), generators in degrees 0,1,2,2 on both fixtures".into())
}

fn complete_graphs() -> Outcome {
    let start = Instant::now();
    for m in 2..=6 {
        let p = char_profile(&complete_graph(m)).map_err(|e| e.to_string())?;
        for k in 0..m + 3 {
            let want = usize::from(k < m);
            ensure(p.c_at(k) == want, || format!("K_{m}: c_{k} = {}", p.c_at(k)))?;
        }
    }
    for m in 2..=5 {
        let g = complete_graph(m);
        let cand = omega_powers(&g).map_err(|e| e.to_string())?;
        ensure(verify_basis(&g, &cand), || format!("K_{m}: omega powers are not a basis"))?;
    }
    within(start, Duration::from_secs(30))?;
    Ok("c_k = 1 for k < m on K_2..K_6; omega-power bases on K_2..K_5".into())
}

fn cycles() -> Outcome {
    let start = Instant::now();
    for m in 3..=8 {
        let g = cycle_graph(m);
        let p = char_profile(&g).map_err(|e| e.to_string())?;
        ensure(p.c == [1, m - 2, 1], || format!("C_{m}: c = {:?}", p.c))?;
        let b = betti_generic(&g, None).map_err(|e| e.to_string())?;
        ensure(b.beta == [1, m - 2, 1], || format!("C_{m}: beta = {:?}", b.beta))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok("c = beta = (1, m-2, 1) for m = 3..8".into())
}

fn sum_rules() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (name, g) in fixture_graphs() {
        let r = verify_sum_rules(&g);
        ensure(r.verdict == Verdict::Pass, || format!("{name}: {} vs {}", r.lhs, r.rhs))?;
        count += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 0..120 {
        let g = random_instance(&mut rng, 10).map_err(|e| e.to_string())?;
        let r = verify_sum_rules(&g);
        ensure(r.verdict == Verdict::Pass, || format!("random {n}: {} vs {}", r.lhs, r.rhs))?;
        count += 1;
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{count} instances ({} fixtures, 120 random with m <= 10)", count - 120))
}

/// Two random blocks joined by `t` random cross edges, on points in general
/// position.
fn joined_blocks(rng: &mut ChaCha8Rng) -> (EmbeddedGraph, Vec<Edge>) {
    let m1 = rng.gen_range(3..=5);
    let m2 = rng.gen_range(3..=5);
    let m = m1 + m2;
    let points = random_general_position(&RandomSpec::density(m, 0), rng.gen()).unwrap();
    let phi = points.phi().unwrap().to_vec();
    let mut edges = Vec::new();
    for (lo, hi) in [(1, m1), (m1 + 1, m)] {
        for i in lo..=hi {
            for j in i + 1..=hi {
                if rng.gen_bool(0.75) {
                    edges.push((i, j));
                }
            }
        }
    }
    let t = rng.gen_range(1..=3);
    let mut cross = Vec::new();
    while cross.len() < t {
        let e = Edge::new(rng.gen_range(1..=m1), rng.gen_range(m1 + 1..=m));
        if !cross.contains(&e) {
            cross.push(e);
        }
    }
    edges.extend(cross.iter().map(|e| (e.i, e.j)));
    (EmbeddedGraph::validate(phi, &edges).unwrap(), cross)
}

fn deleting_and_disconnecting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut lemma, mut corollary) = (0, 0);
    while lemma + corollary < 150 || lemma < 50 {
        let g = random_instance(&mut rng, 9).map_err(|e| e.to_string())?;
        let t = rng.gen_range(1..=g.m());
        let k = rng.gen_range(0..=g.max_degree());
        let r = if g.degree(t) <= k + 1 {
            lemma += 1;
            verify_deleting_lemma(&g, t, k)
        } else {
            corollary += 1;
            verify_deleting_corollary(&g, t, k)
        };
        ensure(r.verdict == Verdict::Pass, || format!("{}: {r:?}", r.check))?;
        // the corollary holds for every vertex, including low-degree ones
        let r = verify_deleting_corollary(&g, t, k);
        ensure(r.verdict == Verdict::Pass, || format!("corollary: {r:?}"))?;
    }

    let r = verify_disconnecting_lemma(&bridged_triangles(), &[Edge::new(3, 4)], 0);
    ensure(r.verdict == Verdict::Pass && r.lhs == "2", || format!("bridge: {r:?}"))?;
    let mut cuts = 0;
    let mut attempts = 0;
    while cuts < 25 {
        attempts += 1;
        ensure(attempts < 500, || "too few minimal-cut instances".into())?;
        let (g, cross) = joined_blocks(&mut rng);
        if !g.is_connected() {
            continue;
        }
        // the planted cross edges when they form a minimal cut, else a global minimum cut
        let planted = verify_disconnecting_lemma(&g, &cross, cross.len() - 1);
        let f = if planted.verdict == Verdict::PreconditionError {
            edge_connectivity(&g).1.edges
        } else {
            cross
        };
        for k in f.len() - 1..=f.len() + 1 {
            let r = verify_disconnecting_lemma(&g, &f, k);
            ensure(r.verdict == Verdict::Pass, || format!("cut instance: {r:?}"))?;
        }
        cuts += 1;
    }
    Ok(format!(
        "{} deletion triples ({lemma} lemma, {corollary} corollary); bridge plus {cuts} minimal-cut instances",
        lemma + corollary
    ))
}

fn kunneth() -> Outcome {
    let products = fixture_products();
    let expected: [&[usize]; 2] = [&[1, 2, 1], &[1, 2, 2, 1]];
    for (p, want) in products.iter().zip(expected) {
        let r = kunneth_check(&p.g1, &p.g2, &p.a, &p.b).map_err(|e| e.to_string())?;
        ensure(r.holds() && r.c_product == want, || format!("{}: {r:?}", p.name))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut samples = 0;
    for n in 0..24 {
        let p = random_product(&mut rng).map_err(|e| e.to_string())?;
        let r = verify_kunneth(&p.g1, &p.g2, &p.a, &p.b).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::Pass, || format!("random product {n}: {r:?}"))?;
        // products of arbitrary members (not just generators) stay members
        let product = cartesian_product(&p.g1, &p.g2, &p.a, &p.b).unwrap();
        for (u, v) in degree_basis(&p.g1, 1).elements().iter().zip(degree_basis(&p.g2, 2).elements()) {
            let w = kunneth_map(u, &v);
            ensure(is_member(&product, &w.parts), || format!("random product {n}: image not a member"))?;
            samples += 1;
        }
    }
    Ok(format!("K2xK2 = (1,2,1), K2xK3 = (1,2,2,1), 24 random products, {samples} extra member images"))
}

fn regular_instances(seed: u64, count: usize) -> Vec<(String, EmbeddedGraph)> {
    let mut out: Vec<(String, EmbeddedGraph)> = fixture_graphs()
        .into_iter()
        .filter(|(_, g)| g.is_connected() && g.regular_degree().is_some())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let m = rng.gen_range(4..=10);
        let d = rng.gen_range(2..=4.min(m - 1));
        if m * d % 2 == 1 {
            continue;
        }
        if let Ok(g) = random_general_position(&RandomSpec::regular(m, d), rng.gen()) {
            if g.is_connected() {
                out.push((format!("random {m}-vertex {d}-regular"), g));
            }
        }
    }
    out
}

fn connectivity_theorems() -> Outcome {
    let mut qualifying = 0;
    let instances = regular_instances(7, 80);
    for (name, g) in &instances {
        let e = verify_edge_conn_theorem(g);
        let v = verify_vertex_conn_theorem(g);
        for r in [&e, &v] {
            ensure(r.verdict == Verdict::Pass || r.verdict == Verdict::Vacuous, || format!("{name}: {r:?}"))?;
        }
        if e.verdict == Verdict::Pass {
            qualifying += 1;
        }
    }
    ensure(qualifying > 0, || "no instance with c_d = 1".into())?;
    Ok(format!("{} regular instances, {qualifying} with c_d = 1, 0 violations", instances.len()))
}

/// Random graphs of type A_d: regular graphs with a few disjoint edges
/// removed, kept when they meet all three conditions.
fn type_ad_instances(seed: u64, count: usize) -> Vec<(usize, EmbeddedGraph)> {
    let mut out = vec![(3, k4_minus_edge()), (3, cycle_graph(5)), (4, complete_graph(4))];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while out.len() < count && attempts < 2000 {
        attempts += 1;
        let m = rng.gen_range(5..=10);
        let d = rng.gen_range(3..=4.min(m - 1));
        if m * d % 2 == 1 {
            continue;
        }
        let Ok(g) = random_general_position(&RandomSpec::regular(m, d), rng.gen()) else {
            continue;
        };
        let drop = rng.gen_range(1..=2);
        let mut removed: Vec<Edge> = Vec::new();
        for e in g.edges() {
            if removed.len() < drop && removed.iter().all(|r| !r.contains(e.i) && !r.contains(e.j)) && rng.gen_bool(0.3) {
                removed.push(*e);
            }
        }
        let h = g.delete_edges(&removed);
        if is_type_ad(&h, d) {
            out.push((d, h));
        }
    }
    out
}

fn bound_theorems() -> Outcome {
    let mut qualifying = 0;
    for (name, g) in regular_instances(8, 80) {
        let r = verify_bound_theorem(&g);
        match r.verdict {
            Verdict::Pass => qualifying += 1,
            Verdict::Vacuous | Verdict::PreconditionError => {}
            Verdict::Fail => return Err(format!("{name}: {r:?}")),
        }
    }
    for m in 3..=8 {
        let r = verify_bound_theorem(&cycle_graph(m));
        ensure(r.verdict == Verdict::Pass && r.lhs == r.rhs, || format!("C_{m} is not tight: {r:?}"))?;
    }
    let r = verify_type_ad_bound(&k4_minus_edge(), 3);
    ensure(r.verdict == Verdict::Pass && r.lhs == "2" && r.rhs == "2", || format!("K4 minus edge: {r:?}"))?;
    let instances = type_ad_instances(9, 30);
    ensure(instances.len() >= 20, || format!("only {} type A_d instances", instances.len()))?;
    for (d, g) in &instances {
        let r = verify_type_ad_bound(g, *d);
        ensure(r.verdict == Verdict::Pass, || format!("A_{d}: {r:?}"))?;
    }
    Ok(format!(
        "{qualifying} qualifying regular instances, cycles tight, {} type A_d instances",
        instances.len()
    ))
}

fn trimming() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut nonempty = 0;
    let total = 40;
    for n in 0..total {
        let m = rng.gen_range(5..=10);
        let g = random_general_position(&RandomSpec::density(m, rng.gen_range(35..=90)), rng.gen())
            .map_err(|e| e.to_string())?;
        let k = rng.gen_range(1..=3);
        let asc = trim_traced(&g, k, TrimOrder::Ascending);
        let desc = trim_traced(&g, k, TrimOrder::Descending);
        ensure(asc.labels == desc.labels && asc.labelled_edges() == desc.labelled_edges(), || {
            format!("instance {n}: orders disagree")
        })?;
        ensure(is_k_trimmed(&asc.graph, k), || format!("instance {n}: result not {k}-trimmed"))?;
        ensure(trim(&asc.graph, k) == asc.graph, || format!("instance {n}: not idempotent"))?;
        let before = char_profile(&g).map_err(|e| e.to_string())?;
        let after = char_profile(&asc.graph).map_err(|e| e.to_string())?;
        let km1 = k as isize - 1;
        ensure(before.s_at(km1) == after.s_at(km1), || {
            format!("instance {n}: s_{km1} {} -> {}", before.s_at(km1), after.s_at(km1))
        })?;
        if asc.graph.m() > 0 {
            nonempty += 1;
        }
    }
    Ok(format!("{total} random instances ({nonempty} nonempty results), two orders agree"))
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for m in 1..=5 {
        for phi in common::placements(m) {
            for edges in common::all_edge_sets(m) {
                let g = EmbeddedGraph::validate(phi.clone(), &edges).map_err(|e| e.to_string())?;
                for k in 0..=3 {
                    let fast = dim_hk(&g, k);
                    let slow = common::oracle_dim(&g, k as u32);
                    ensure(fast == slow, || format!("m={m} edges={edges:?} k={k}: {fast} != {slow}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (graph, placement, k) cases, 0 mismatches"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("sample graph reproduction", example_reproduction),
        ("complete graphs", complete_graphs),
        ("cycles", cycles),
        ("sum rules", sum_rules),
        ("deleting and disconnecting", deleting_and_disconnecting),
        ("kunneth", kunneth),
        ("connectivity theorems", connectivity_theorems),
        ("bound theorems", bound_theorems),
        ("trim", trimming),
        ("oracle equivalence", oracle_equivalence),
    ];
    // keep panics from earlier criteria from hiding later lines
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.2}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({secs:.2}s)", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
