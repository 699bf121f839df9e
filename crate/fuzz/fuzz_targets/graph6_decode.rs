#![no_main]

use libfuzzer_sys::fuzz_target;
use resclose::graph6::{decode, decode_lines, encode};

fuzz_target!(|data: &[u8]| {
    // Decoding never panics. When it accepts, the value survives a round
    // trip, and re-encoding reproduces the input bytes exactly, except
    // that the decoder also tolerates the long order header on orders
    // that do not need it, which costs exactly three bytes.
    if let Ok(g) = decode(data) {
        let encoded = encode(&g);
        assert_eq!(decode(encoded.as_bytes()).as_ref(), Ok(&g));
        assert!(
            encoded.as_bytes() == data || encoded.len() + 3 == data.len(),
            "non-canonical accept beyond the long order header"
        );
    }

    // The line decoder shares the record parser; feed it the same bytes
    // when they form text and drain every result.
    if let Ok(text) = std::str::from_utf8(data) {
        for parsed in decode_lines(text) {
            let _ = parsed;
        }
    }
});
