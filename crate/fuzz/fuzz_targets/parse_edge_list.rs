#![no_main]

use libfuzzer_sys::fuzz_target;
use sssp_frontier::empirical::{dijkstra, Graph};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(g) = Graph::parse_edge_list(text) else {
        return;
    };
    let back = Graph::parse_edge_list(&g.to_edge_list()).expect("serialized graph reparses");
    assert_eq!(back, g);
    if g.n() <= 4096 {
        let run = dijkstra(&g, 0).expect("vertex 0 exists");
        assert!(run.stats.settled <= u64::from(g.n()));
    }
});
