#![no_main]

use libfuzzer_sys::fuzz_target;
use liepowers::combinat::{associated_partition, Composition, Partition};

fuzz_target!(|data: &str| {
    if let Ok(c) = data.parse::<Composition>() {
        assert_eq!(c.to_string().parse::<Composition>().unwrap(), c);
        let lambda = associated_partition(&c);
        assert_eq!(lambda.size(), c.size());
    }
    if let Ok(l) = data.parse::<Partition>() {
        assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
        assert!(l.parts().windows(2).all(|w| w[0] >= w[1]));
    }
});
