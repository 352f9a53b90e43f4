//! The checked-in fuzz seeds exercise the parsers the same way the targets do.

use std::fs;
use std::path::Path;

use lstar::appendix::load_corpus;
use lstar::edges::{parse_corpus, parse_edges, EdgeString};
use lstar::enum_maverick::parse_checkpoint_line;
use lstar::iso::isomorphic;

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.display().to_string(), fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out.into_iter().map(|(_, s)| s).collect()
}

#[test]
fn edge_string_seeds_round_trip() {
    for s in seeds("parse_edges") {
        let parsed = parse_edges(&s).unwrap();
        let again = parse_edges(&parsed.serialize().unwrap()).unwrap();
        match (&parsed, &again) {
            (EdgeString::Plain(a), EdgeString::Plain(b)) => assert!(isomorphic(a, b)),
            (EdgeString::Rooted(a), EdgeString::Rooted(b)) => assert!(isomorphic(a, b)),
            _ => panic!("kind changed for {s:?}"),
        }
    }
}

#[test]
fn corpus_seeds() {
    let results: Vec<bool> = seeds("parse_corpus").iter().map(|s| parse_corpus(s).is_ok()).collect();
    // one seed carries a duplicate label
    assert_eq!(results.iter().filter(|&&ok| !ok).count(), 1);
    for s in seeds("parse_corpus") {
        let _ = load_corpus(&s);
    }
}

#[test]
fn checkpoint_seeds() {
    for s in seeds("parse_checkpoint_line") {
        let (g, subsets) = parse_checkpoint_line(&s).unwrap();
        assert!(subsets.iter().all(|&m| m != 0 && m >> g.order() == 0));
    }
}
