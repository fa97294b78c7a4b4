#![no_main]

use libfuzzer_sys::fuzz_target;
use permcover_cli::format::parse_document;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = parse_document(input) {
        let set = doc.to_set().expect("validated documents convert");
        assert_eq!(set.len(), doc.perms.len());
        let _ = permcover::completeness::is_minimal_complete(&set);
    }
});
