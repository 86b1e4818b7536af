#![no_main]

use concordance::laurent::from_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = from_json(text) {
        let out = serde_json::to_string(&p).unwrap();
        assert_eq!(from_json(&out).unwrap(), p);
        let _ = p.to_string();
    }
});
