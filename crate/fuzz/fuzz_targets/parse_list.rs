#![no_main]
use interval_spectra::harness::format::{parse_f64_list, parse_method_list, parse_usize_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_usize_list(text);
    if let Ok(v) = parse_f64_list(text) {
        assert!(v.iter().all(|x| x.is_finite() && *x >= 0.0));
    }
    if let Ok(m) = parse_method_list(text) {
        let mut dedup = m.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), m.len());
    }
});
