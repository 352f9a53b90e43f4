#![no_main]

use libfuzzer_sys::fuzz_target;
use lstar::edges::{parse_edges, parse_graph, parse_indexed, parse_single_rooted, EdgeString};
use lstar::iso::isomorphic;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(parsed) = parse_edges(s) {
        // whatever parses must serialize and parse back to the same graph
        let again = parse_edges(&parsed.serialize().unwrap()).unwrap();
        match (&parsed, &again) {
            (EdgeString::Plain(a), EdgeString::Plain(b)) => assert!(isomorphic(a, b)),
            (EdgeString::Rooted(a), EdgeString::Rooted(b)) => assert!(isomorphic(a, b)),
            _ => panic!("kind changed on round trip"),
        }
    }
    let _ = parse_graph(s);
    let _ = parse_single_rooted(s);
    let _ = parse_indexed(s, 20);
});
