#![no_main]

use libfuzzer_sys::fuzz_target;
use liepowers::format::{parse_subspace_text, write_subspace};

fuzz_target!(|data: &str| {
    let Ok(text) = parse_subspace_text(data) else {
        return;
    };
    // Spanning allocates dense rows, so only small ambients go further.
    if (text.n as u64).pow(text.r as u32) > 4096 || text.rows.len() > 256 {
        return;
    }
    let span = text.span().expect("parsed rows span");
    let written = write_subspace(&span, text.n, text.r).expect("span is in T^r(V)");
    let again = parse_subspace_text(&written).expect("written text parses");
    assert_eq!(again.span().unwrap(), span);
    assert_eq!(again.rows.len(), span.dim());
});
