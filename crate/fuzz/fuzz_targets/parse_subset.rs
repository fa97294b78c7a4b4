#![no_main]

use libfuzzer_sys::fuzz_target;
use permcover_cli::format::parse_subset;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(set) = parse_subset(input) {
        assert!(set.windows(2).all(|w| w[0] < w[1]));
        let joined: Vec<String> = set.iter().map(usize::to_string).collect();
        assert_eq!(parse_subset(&joined.join(",")).unwrap(), set);
    }
});
