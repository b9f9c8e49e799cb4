#![no_main]
use geodetic::graph::{is_geodetic, Graph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = Graph::from_json(text) else { return };
    let back = Graph::from_json(&g.to_json()).expect("serialised graph re-parses");
    assert_eq!(back, g);
    if g.vertex_count() <= 64 {
        let _ = is_geodetic(&g);
    }
});
