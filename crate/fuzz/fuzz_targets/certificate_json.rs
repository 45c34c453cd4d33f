#![no_main]

use libfuzzer_sys::fuzz_target;
use liepowers::format::CertificateJson;

fuzz_target!(|data: &[u8]| {
    let Ok(j) = serde_json::from_slice::<CertificateJson>(data) else {
        return;
    };
    if let Ok(cert) = j.to_certificate() {
        // Verification must reject bad data with an error, never a panic.
        let _ = cert.verify();
        let again = CertificateJson::from_certificate(&cert).expect("certificate encodes");
        assert_eq!(again.to_certificate().unwrap(), cert);
    }
});
