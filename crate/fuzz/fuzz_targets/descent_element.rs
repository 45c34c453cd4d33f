#![no_main]

use libfuzzer_sys::fuzz_target;
use liepowers::descent::Ring;
use liepowers::format::{parse_descent_element, MAX_TEXT_COEFFICIENT};
use liepowers::Prime;

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let ring = match selector % 4 {
        0 => Ring::Integer,
        1 => Ring::Modular(Prime::new(2).unwrap()),
        2 => Ring::Modular(Prime::new(3).unwrap()),
        _ => Ring::Modular(Prime::new(5).unwrap()),
    };
    let r = (selector >= 128).then_some((selector % 8) as usize + 1);
    if let Ok(e) = parse_descent_element(text, ring, r) {
        let printable = e.mask_coeffs().iter().all(|c| c.unsigned_abs() <= MAX_TEXT_COEFFICIENT);
        if printable {
            let back = parse_descent_element(&e.to_string(), ring, Some(e.r())).expect("printed element parses");
            assert_eq!(back, e);
        }
        if let (Ring::Modular(_), true) = (ring, e.r() <= 6) {
            let sq = e.multiply(&e).expect("same degree");
            assert_eq!(sq.c_map(), e.c_map().mul(&e.c_map()));
        }
    }
});
