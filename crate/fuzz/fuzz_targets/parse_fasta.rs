#![no_main]

use lcfk::cli::parse_fasta;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(seq) = parse_fasta(data) {
        assert!(!seq.iter().any(u8::is_ascii_whitespace));
        assert!(seq.len() <= data.len());
    }
});
