//! Shared workloads for the benchmarks.

use gcohom::graph::{complete_graph, cycle_graph, random_general_position, RandomSpec};
use gcohom::EmbeddedGraph;

/// Named graphs of increasing size used across benchmark groups.
pub fn workloads() -> Vec<(String, EmbeddedGraph)> {
    let mut out = Vec::new();
    for m in [4, 6, 8] {
        out.push((format!("complete-{m}"), complete_graph(m)));
    }
    out.push(("cycle-12".into(), cycle_graph(12)));
    for (m, d) in [(10, 3), (12, 4)] {
        let g = random_general_position(&RandomSpec::regular(m, d), 7).expect("regular sample");
        out.push((format!("regular-{m}-{d}"), g));
    }
    out
}
