#![no_main]
use geodetic::groups::ball::BallFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(file) = serde_json::from_slice::<BallFile>(data) else { return };
    let _ = file.to_graph();
});
