#![no_main]

use apollonia_cli::{run_from_args, EXIT_DOMAIN, EXIT_MALFORMED, EXIT_OK};
use libfuzzer_sys::fuzz_target;

// Arguments are NUL-separated. Runs that write files or sweep for seconds are skipped.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let args: Vec<&str> = s.split('\0').collect();
    if args.iter().any(|a| a.contains("svg") || a.contains("verify") || a.contains("samples")) {
        return;
    }
    let out = run_from_args(std::iter::once("apollonia").chain(args));
    assert!([EXIT_OK, EXIT_DOMAIN, EXIT_MALFORMED].contains(&out.exit_code));
    let _ = out.stdout_text(false);
});
