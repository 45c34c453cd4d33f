#![no_main]

use libfuzzer_sys::fuzz_target;
use liepowers::format::{parse_generator_grid, write_generator_grid};
use liepowers::Prime;

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let p = Prime::new([2, 3, 5, 7][selector as usize % 4]).unwrap();
    if let Ok(mats) = parse_generator_grid(p, text) {
        let back = parse_generator_grid(p, &write_generator_grid(&mats)).expect("written grid parses");
        assert_eq!(back, mats);
        assert!(mats.iter().all(|m| m.is_invertible()));
    }
});
