#![no_main]

use concordance::knotfile::{parse_knot_file, KnotFile};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(desc) = parse_knot_file(data) {
        let text = KnotFile::from_description(&desc).to_json();
        let again = parse_knot_file(text.as_bytes()).expect("written knot file parses");
        assert_eq!(again, desc);
        let v = desc.seifert_matrix();
        assert_eq!(
            v.alexander_determinant()
                .eval_int(1)
                .map(|d| d.is_integer()),
            Some(true)
        );
    }
});
