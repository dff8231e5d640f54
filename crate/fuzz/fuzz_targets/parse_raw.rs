#![no_main]

use lcfk::cli::{parse_input, parse_raw, InputFormat};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let seq = parse_raw(data);
    assert!(data.starts_with(&seq));
    assert!(!seq.ends_with(b"\n"));
    assert_eq!(parse_input(data, InputFormat::Raw).unwrap(), seq);
});
