#![no_main]

use apollonia_cli::request::parse_points;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(points) = parse_points(s) {
        // Printed points parse back to the same values.
        let echoed: Vec<String> = points.iter().map(|p| p.to_string()).collect();
        let again = parse_points(&echoed.join(";")).expect("echo parses");
        assert_eq!(again, points);
    }
});
