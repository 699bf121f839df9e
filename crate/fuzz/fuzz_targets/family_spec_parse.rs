#![no_main]

use libfuzzer_sys::fuzz_target;
use resclose::families::FamilySpec;

fuzz_target!(|text: &str| {
    // Parsing never panics. An accepted spec is already canonical, so its
    // rendering parses back to itself, and validation bounded its order,
    // so instantiation is total.
    if let Ok(spec) = text.parse::<FamilySpec>() {
        assert_eq!(spec.to_string().parse::<FamilySpec>().as_ref(), Ok(&spec));
        let g = spec.instantiate();
        assert_eq!(g.order(), spec.order());
    }
});
