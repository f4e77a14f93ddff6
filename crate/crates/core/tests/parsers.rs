use std::path::PathBuf;

use devilfish::certify::{certify, parse_certificate, to_json, verify_certificate, CertifyOptions, EdgeOptions};
use devilfish::fuzz::FuzzReport;
use devilfish::numfmt::{parse, shortest};
use proptest::prelude::*;

fn corpus(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| (p.clone(), std::fs::read(&p).unwrap()))
        .collect()
}

fn certificate_text() -> String {
    let c = certify(
        &CertifyOptions {
            min_width: 1e-2,
            tau: 1e-2,
            ..Default::default()
        },
        &EdgeOptions {
            tau: 1e-2,
            min_width: 1e-2,
            ..Default::default()
        },
    )
    .unwrap();
    to_json(&c)
}

#[test]
fn certificate_corpus_parses_and_verifies() {
    let mut parsed = 0;
    for (path, bytes) in corpus("certificate") {
        let Ok(cert) = parse_certificate(std::str::from_utf8(&bytes).unwrap()) else {
            continue;
        };
        parsed += 1;
        assert!(verify_certificate(&cert).sound, "{}", path.display());
        assert_eq!(
            to_json(&cert).as_bytes(),
            &bytes[..],
            "{} is not canonical",
            path.display()
        );
    }
    assert!(parsed >= 2);
}

#[test]
fn report_corpus_round_trips() {
    for (path, bytes) in corpus("fuzz_report") {
        let text = std::str::from_utf8(&bytes).unwrap();
        let report = FuzzReport::from_json(text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(report.to_json(), text);
    }
}

#[test]
fn decimal_corpus_round_trips() {
    for (_, bytes) in corpus("decimal") {
        if let Some(v) = parse(std::str::from_utf8(&bytes).unwrap()) {
            if !v.is_nan() {
                assert_eq!(parse(&shortest(v)).unwrap().to_bits(), v.to_bits());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn arbitrary_text_never_panics(s in ".{0,400}") {
        if let Ok(c) = parse_certificate(&s) {
            let _ = verify_certificate(&c);
        }
        let _ = FuzzReport::from_json(&s);
    }

    #[test]
    fn mutated_numbers_never_panic(pick in any::<prop::sample::Index>(), bits in any::<u64>()) {
        let text = certificate_text();
        let quoted: Vec<(usize, usize)> = text
            .match_indices('"')
            .map(|(i, _)| i)
            .collect::<Vec<_>>()
            .chunks(2)
            .map(|w| (w[0] + 1, w[1]))
            .collect();
        let (lo, hi) = quoted[pick.index(quoted.len())];
        let replacement = shortest(f64::from_bits(bits));
        let mutated = format!("{}{}{}", &text[..lo], replacement, &text[hi..]);
        if let Ok(c) = parse_certificate(&mutated) {
            let v = verify_certificate(&c);
            prop_assert_eq!(v.sound, v.problems.is_empty());
        }
    }
}
