use std::io::Write;

use num_bigint::BigInt;
use proptest::prelude::*;

use qseq_oeis::{Error, OeisRecord, SequenceStore, Verdict, DEFAULT_MAX_SHIFT};

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn loads_file_and_skips_comments() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# OEIS stripped subset").unwrap();
    writeln!(file, "A000108 ,1,1,2,5,14,42,").unwrap();
    writeln!(file).unwrap();
    writeln!(file, "A006318 ,1,2,6,22,90,394,").unwrap();
    let store = SequenceStore::load_stripped(file.path()).unwrap();
    assert_eq!(store.len(), 2);
    assert_eq!(store.get("A006318").unwrap().terms(), big(&[1, 2, 6, 22, 90, 394]).as_slice());
}

#[test]
fn missing_file_is_io_error() {
    let err = SequenceStore::load_stripped("/nonexistent/stripped").unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
}

#[test]
fn malformed_line_reports_line_number() {
    let err = SequenceStore::parse_stripped("# header\nA000108 ,1,1,2,\nA0001 ,1,2,\n").unwrap_err();
    match err {
        Error::Malformed { line, .. } => assert_eq!(line, 3),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn duplicate_keeps_last() {
    let store = SequenceStore::parse_stripped("A000108 ,1,1,\nA000108 ,1,1,2,5,\n").unwrap();
    assert_eq!(store.len(), 1);
    assert_eq!(store.get("A000108").unwrap().terms().len(), 4);
}

#[test]
fn bundled_fixture_carries_queueing_entries() {
    let store = SequenceStore::bundled();
    for id in ["A000108", "A001003", "A006318", "A103210", "A103211", "A107841", "A131763", "A155069"] {
        assert!(store.get(id).unwrap().terms().len() >= 20, "{id}");
    }
    assert_eq!(store.get("A006318").unwrap().terms()[..6], big(&[1, 2, 6, 22, 90, 394])[..]);
}

#[test]
fn verify_examples() {
    let store = SequenceStore::bundled();
    let little = big(&[1, 1, 3, 11, 45, 197]);
    assert_eq!(store.verify(&little, "A001003", DEFAULT_MAX_SHIFT).unwrap(), Verdict::Match { shift: 0 });

    let busy = big(&[1, 1, 2, 6, 22, 90, 394]);
    assert_eq!(store.verify(&busy, "A006318", DEFAULT_MAX_SHIFT).unwrap(), Verdict::Match { shift: -1 });
    assert_eq!(store.verify(&busy, "A155069", DEFAULT_MAX_SHIFT).unwrap(), Verdict::Match { shift: 0 });

    let moments = big(&[1, 1, 4, 36, 528, 10800]);
    assert_eq!(store.verify(&moments, "A000108", DEFAULT_MAX_SHIFT).unwrap(), Verdict::NoMatch);
}

#[test]
fn verify_partial_and_errors() {
    let store = SequenceStore::bundled();
    assert_eq!(
        store.verify(&big(&[1, 2, 6]), "A006318", 0).unwrap(),
        Verdict::PrefixMatch { shift: 0, overlap: 3 }
    );
    assert!(matches!(store.verify(&big(&[1]), "A999999", 3), Err(Error::UnknownAnumber(_))));
    assert!(matches!(store.verify(&big(&[1]), "A99", 3), Err(Error::InvalidAnumber(_))));
    assert!(store.verify(&[], "A000108", 3).is_err());
}

#[test]
fn search_examples() {
    let store = SequenceStore::bundled();
    let hits = store.search(&big(&[1, 2, 6, 22, 90]), 5).unwrap();
    assert!(hits.iter().any(|h| h.anumber == "A006318" && h.shift == 0));
    assert!(hits.iter().any(|h| h.anumber == "A155069" && h.shift == 1));
    let catalan = store.search(&big(&[1, 1, 2, 5, 14, 42]), 5).unwrap();
    assert!(catalan.iter().any(|h| h.anumber == "A000108"));
    assert!(store.search(&big(&[999999999, 123456789, 1, 2, 3]), 5).unwrap().is_empty());
    assert!(store.search(&big(&[999999999, 123456789]), 5).is_err());
    assert!(store.search(&big(&[1, 2, 6, 22, 90]), 4).is_err());
}

fn record_strategy() -> impl Strategy<Value = OeisRecord> {
    (0u32..1_000_000, prop::collection::vec(any::<i64>(), 1..30)).prop_map(|(n, terms)| {
        OeisRecord::new(&format!("A{n:06}"), big(&terms)).unwrap()
    })
}

proptest! {
    #[test]
    fn stripped_line_round_trip(record in record_strategy(), trailing in any::<bool>()) {
        let line = record.to_stripped_line();
        prop_assert_eq!(&OeisRecord::parse_line(&line).unwrap(), &record);
        let bare = line.strip_suffix(',').unwrap();
        let reparsed = OeisRecord::parse_line(if trailing { &line } else { bare }).unwrap();
        prop_assert_eq!(reparsed.to_stripped_line(), line);
    }

    #[test]
    fn nonnegative_match_is_found_by_search(
        terms in prop::collection::vec(-50i64..50, 12..24),
        start in 0usize..4,
        len in 5usize..8,
    ) {
        let mut store = SequenceStore::new();
        store.insert(OeisRecord::new("A000001", big(&terms)).unwrap());
        let candidate = big(&terms[start..start + len]);
        if let Verdict::Match { shift } = store.verify(&candidate, "A000001", 3).unwrap() {
            if shift >= 0 {
                let hits = store.search(&candidate, 5).unwrap();
                prop_assert!(hits.iter().any(|h| h.shift == shift));
            }
        } else {
            prop_assert!(false, "a run taken from the record must match");
        }
    }
}
