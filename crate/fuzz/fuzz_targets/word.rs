#![no_main]
use geodetic::groups::GroupSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let spec = GroupSpec::cyclic_product(&[(2, "a"), (3, "b"), (5, "c")]).unwrap();
    let alphabet = spec.alphabet();
    let Ok(w) = alphabet.parse_word(text) else { return };
    assert_eq!(alphabet.parse_word(&alphabet.render(&w)).unwrap(), w);
    let nf = spec.normal_form(&w);
    assert!(spec.geodesic_word(&nf).len() <= w.len());
});
