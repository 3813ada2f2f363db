#![no_main]
use interval_spectra::harness::format::ReportRecord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = ReportRecord::parse(text) {
        let back = ReportRecord::parse(&r.to_json()).expect("serialized report parses");
        assert_eq!(back.bands, r.bands);
        assert_eq!(back.counters, r.counters);
    }
});
