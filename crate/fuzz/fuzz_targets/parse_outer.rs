#![no_main]
use interval_spectra::harness::format::parse_outer;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(bands) = parse_outer(text) {
            assert!(bands.bands.iter().all(|b| b.lo() <= b.hi()));
            assert_eq!(bands.exact_lo.len(), bands.len());
        }
    }
});
