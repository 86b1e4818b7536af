#![no_main]

use concordance::family::{nonconcordance_report, WitnessFamily};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(fam) = serde_json::from_slice::<WitnessFamily>(data) {
        let out = serde_json::to_string(&fam).unwrap();
        assert_eq!(serde_json::from_str::<WitnessFamily>(&out).unwrap(), fam);
        if fam.g <= 2 && fam.len() <= 4 {
            if let Ok(report) = nonconcordance_report(&fam) {
                assert_eq!(report.valid, report.certificates.iter().all(|c| c.valid));
            }
        }
    }
});
