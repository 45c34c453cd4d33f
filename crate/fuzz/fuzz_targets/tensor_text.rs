#![no_main]

use libfuzzer_sys::fuzz_target;
use liepowers::format::{parse_tensor_text, write_tensor};

fuzz_target!(|data: &str| {
    if let Ok(t) = parse_tensor_text(data) {
        let back = parse_tensor_text(&write_tensor(&t)).expect("written tensor parses");
        assert_eq!(back, t);
    }
});
