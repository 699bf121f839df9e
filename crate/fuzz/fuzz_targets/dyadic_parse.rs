#![no_main]

use libfuzzer_sys::fuzz_target;
use resclose::dyadic::Dyadic;

fuzz_target!(|text: &str| {
    // Parsing never panics and an accepted value round-trips through its
    // fraction rendering. The decimal rendering is parse-only in the other
    // direction, so just prove it terminates and carries the sign.
    if let Ok(value) = text.parse::<Dyadic>() {
        assert_eq!(value.fraction().parse::<Dyadic>(), Ok(value));
        let decimal = value.decimal();
        assert_eq!(decimal.starts_with('-'), value.numer() < 0);
    }
});
