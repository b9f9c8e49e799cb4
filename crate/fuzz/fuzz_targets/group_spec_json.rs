#![no_main]
use geodetic::groups::ball::cayley_ball;
use geodetic::groups::GroupSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = GroupSpec::from_json(text) else { return };
    // Balls grow exponentially; radius 2 keeps each run cheap.
    if spec.alphabet().len() <= 12 && spec.factors().iter().all(|f| f.order() <= 64) {
        let ball = cayley_ball(&spec, 2).expect("valid spec yields a ball");
        assert_eq!(ball.identity(), 0);
    }
});
