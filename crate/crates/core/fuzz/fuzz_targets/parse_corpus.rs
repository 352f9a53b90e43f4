#![no_main]

use libfuzzer_sys::fuzz_target;
use lstar::appendix::load_corpus;
use lstar::edges::parse_corpus;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(lines) = parse_corpus(s) {
        let mut labels: Vec<&str> = lines.iter().map(|l| l.label.as_str()).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), lines.len());
    }
    let _ = load_corpus(s);
});
