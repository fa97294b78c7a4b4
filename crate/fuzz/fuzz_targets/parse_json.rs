#![no_main]

use libfuzzer_sys::fuzz_target;
use permcover_cli::format::{parse_json, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = parse_json(input) {
        let json = to_json(&doc);
        let again = parse_json(&json).expect("emitted JSON parses");
        assert_eq!(again, doc);
        assert_eq!(to_json(&again), json);
    }
});
