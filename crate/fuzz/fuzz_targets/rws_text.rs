#![no_main]
use geodetic::rws::{check_confluence, RewritingSystem};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(sys) = RewritingSystem::from_text(text) else { return };
    let back = RewritingSystem::from_text(&sys.to_text()).expect("written system re-parses");
    assert_eq!(back, sys);
    if sys.len() <= 32 && sys.rules().iter().all(|r| r.lhs.len() <= 8) {
        let _ = check_confluence(&sys);
    }
});
