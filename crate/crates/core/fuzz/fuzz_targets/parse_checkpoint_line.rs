#![no_main]

use libfuzzer_sys::fuzz_target;
use lstar::enum_maverick::parse_checkpoint_line;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok((g, subsets)) = parse_checkpoint_line(s) {
        assert!(subsets.iter().all(|&m| m != 0 && m >> g.order() == 0));
    }
});
