#![no_main]

use libfuzzer_sys::fuzz_target;
use permcover::Permutation;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = input.parse::<Permutation>() {
        let back: Permutation = p.to_string().parse().expect("display parses");
        assert_eq!(back, p);
        assert_eq!(
            p.compose(&p.inverse()).unwrap(),
            Permutation::identity(p.n()).unwrap()
        );
    }
});
