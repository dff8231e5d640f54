#![no_main]

use lcfk::oracle::lcf_k_brute;
use lcfk::{solve, MatchResult};
use libfuzzer_sys::fuzz_target;

// Layout: k, min_len, split, then the two texts.
fuzz_target!(|data: &[u8]| {
    if data.len() < 3 || data.len() > 200 {
        return;
    }
    let k = (data[0] % 4) as usize;
    let min_len = (data[1] % 8) as usize;
    let rest = &data[3..];
    let (x, y) = rest.split_at(data[2] as usize % (rest.len() + 1));
    let Ok(got) = solve(x, y, k, min_len) else {
        return;
    };
    let want = lcf_k_brute(x, y, k);
    match got {
        MatchResult::Found(m) => {
            assert_eq!(m.length, want.length);
            assert!(m.mismatches.len() <= k);
        }
        MatchResult::NotFound => assert!(want.length < min_len),
    }
});
