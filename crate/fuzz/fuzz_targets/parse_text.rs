#![no_main]

use libfuzzer_sys::fuzz_target;
use permcover_cli::format::{parse_text, to_text};

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = parse_text(input) {
        // anything accepted must survive a round trip
        let text = to_text(&doc);
        let again = parse_text(&text).expect("emitted text parses");
        assert_eq!(again, doc);
        assert_eq!(to_text(&again), text);
    }
});
