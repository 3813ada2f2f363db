#![no_main]
use interval_spectra::harness::format::{ProblemFile, ProblemKind};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = ProblemFile::parse(text) else { return };
    // Anything accepted must survive a round trip and convert cleanly.
    let back = ProblemFile::parse(&p.to_json()).expect("serialized problem parses");
    assert_eq!(back, p);
    let m = p.interval_matrix().expect("validated problem converts");
    assert_eq!((m.rows(), m.cols()), (p.rows, p.cols));
    if p.kind == ProblemKind::Symmetric {
        p.symmetric().expect("validated symmetric problem converts");
    }
});
