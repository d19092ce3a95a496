use exslope::census::{
    apply_transform, batch_verify, infer_transform, mini_dataset, parse_annotated_list, parse_csv,
    print_annotated_list, write_csv, CensusRecord, CoordTransform, Coords, Entry, FileKind, MINI_DATASET_CSV,
};
use exslope::conjectures::{check_conj1, check_conj6, Verdict};
use exslope::dataset::Certificates;
use exslope::error::CensusError;
use exslope::slope::Slope;
use exslope::sweep::Exec;
use proptest::prelude::*;

#[test]
fn embedded_rows_round_trip() {
    for r in mini_dataset() {
        for list in [&r.std, &r.snappy] {
            let text = print_annotated_list(list);
            assert_eq!(&parse_annotated_list(&text).unwrap(), list);
            assert!(MINI_DATASET_CSV.contains(&text), "{text}");
        }
    }
    let csv = write_csv(&mini_dataset(), FileKind::Verified).unwrap();
    let (back, errors) = parse_csv(&csv, FileKind::Verified);
    assert!(errors.is_empty());
    assert_eq!(back, mini_dataset());
    assert_eq!(csv.replace('\r', ""), MINI_DATASET_CSV);
}

#[test]
fn printed_pairs_are_reproduced() {
    for r in mini_dataset().into_iter().filter(|r| !r.duplicate_coords) {
        let t = r.transform().unwrap();
        for (x, y) in r.snappy.iter().zip(&r.std) {
            assert_eq!(apply_transform(t, x.slope).unwrap(), y.slope, "{}", r.name);
            assert_eq!(apply_transform(t.inverse(), y.slope).unwrap(), x.slope);
        }
    }
}

#[test]
fn csv_errors_are_collected_per_row() {
    let text = "name,standard,snappy,knot\n\
                m004,\"[(-4, 'T'), 0]\",\"[(-4, 'T'), 0]\",4_1\n\
                m006,\"[(1, 'Q')]\",\"[(1, 'Q')]\",\n\
                m007,\"[1, 2]\",\"[1]\",\n\
                bad,\"[]\",\"[]\",\n\
                m009,\"[2]\",\"[5]\",\n";
    let (records, errors) = parse_csv(text, FileKind::Verified);
    assert_eq!(
        records.iter().map(|r| r.name.as_str()).collect::<Vec<_>>(),
        ["m004", "m009"]
    );
    assert_eq!(records[0].knot_name.as_deref(), Some("4_1"));
    let rows: Vec<usize> = errors
        .iter()
        .map(|e| match e {
            CensusError::Row { row, .. } => *row,
            other => panic!("{other}"),
        })
        .collect();
    assert_eq!(rows, [3, 4, 5]);
    assert!(errors[0].to_string().contains("byte"));
}

#[test]
fn remaining_rows_carry_flags() {
    let text = "t12345,\"[(1, 'T'), 2]\",\"[(-1, 'T'), -2]\",,1,0,1\n";
    let (records, errors) = parse_csv(text, FileKind::Remaining);
    assert!(errors.is_empty(), "{errors:?}");
    assert_eq!(records[0].verified, Some([true, false, true]));
    let (_, errors) = parse_csv(text, FileKind::Verified);
    assert_eq!(errors.len(), 1);
    let (_, errors) = parse_csv("t1,\"[]\",\"[]\",,1,maybe,1\n", FileKind::Remaining);
    assert_eq!(errors.len(), 1);
}

#[test]
fn parallel_and_sequential_reports_agree() {
    let mut rows = mini_dataset();
    rows.reverse();
    let a = batch_verify(&rows, Exec::Sequential);
    let b = batch_verify(&rows, Exec::Parallel);
    assert_eq!(a, b);
    let names: Vec<&str> = a.records.iter().map(|r| r.name.as_str()).collect();
    assert_eq!(names, ["s682", "v0319", "v1359"]);
}

fn sl(s: &str) -> Slope {
    s.parse().unwrap()
}

fn arb_slope() -> impl Strategy<Value = Slope> {
    (-500i64..500, 1i64..20).prop_map(|(p, q)| Slope::new(p, q).unwrap())
}

fn arb_certs() -> impl Strategy<Value = Certificates> {
    (0u8..32).prop_map(|bits| {
        let mut c = Certificates::NONE;
        for (i, l) in [
            Certificates::C,
            Certificates::K,
            Certificates::L,
            Certificates::M,
            Certificates::T,
        ]
        .into_iter()
        .enumerate()
        {
            if bits & (1 << i) != 0 {
                c = c.union(l);
            }
        }
        c
    })
}

proptest! {
    #[test]
    fn list_print_parse_round_trip(v in proptest::collection::vec((arb_slope(), arb_certs()), 0..8)) {
        let entries: Vec<Entry> = v.into_iter().map(|(slope, certs)| Entry { slope, certs }).collect();
        let text = print_annotated_list(&entries);
        prop_assert_eq!(parse_annotated_list(&text).unwrap(), entries.clone());
        // whitespace is insignificant
        let loose = text.replace(", ", " ,  ").replace('[', " [ ");
        prop_assert_eq!(parse_annotated_list(&loose).unwrap(), entries);
    }

    #[test]
    fn inference_recovers_transform(
        neg in any::<bool>(),
        c in -1000i64..1000,
        xs in proptest::collection::vec(arb_slope(), 2..6),
    ) {
        let t = CoordTransform { epsilon: if neg { -1 } else { 1 }, offset: c };
        let pairs: Vec<(Slope, Slope)> = xs.iter().map(|&x| (x, apply_transform(t, x).unwrap())).collect();
        let distinct = xs.iter().any(|x| *x != xs[0]);
        match infer_transform(&pairs) {
            Ok(u) => prop_assert_eq!(u, t),
            Err(e) => {
                prop_assert!(!distinct);
                prop_assert_eq!(e, CensusError::Underdetermined);
            }
        }
    }

    /// Negating both columns keeps epsilon, negates the offset and mirrors
    /// every verdict.
    #[test]
    fn mirror_normalization(c in -100i64..100, xs in proptest::collection::btree_set(-20i64..20, 2..6), t_idx in 0usize..6) {
        let xs: Vec<i64> = xs.into_iter().collect();
        let t_at = xs[t_idx % xs.len()];
        let snappy: Vec<Entry> = xs
            .iter()
            .map(|&x| Entry { slope: Slope::integer(x), certs: if x == t_at { Certificates::T } else { Certificates::NONE } })
            .collect();
        let std: Vec<Entry> = snappy.iter().map(|e| Entry { slope: e.slope.mirror().checked_add_integer(c).unwrap(), certs: e.certs }).collect();
        let r = CensusRecord::new("v1000", FileKind::Verified, std, snappy, None, None).unwrap();
        let m = r.mirror();
        let (t, u) = (r.transform().unwrap(), m.transform().unwrap());
        prop_assert_eq!(u, CoordTransform { epsilon: t.epsilon, offset: -t.offset });
        for coords in [Coords::Standard, Coords::SnapPy] {
            let d = r.to_dataset(coords).unwrap();
            let e = m.to_dataset(coords).unwrap();
            prop_assert_eq!(&d.mirror(), &e);
            let key = |v: Verdict| (v.status, v.case_id, v.witnesses);
            prop_assert_eq!(key(check_conj1(&e)), key(check_conj1(&d).mirror()));
            prop_assert_eq!(key(check_conj6(&e).unwrap()), key(check_conj6(&d).unwrap().mirror()));
        }
    }

    /// Verdicts do not depend on which coordinate column is used.
    #[test]
    fn coordinates_do_not_change_status(c in -100i64..100, neg in any::<bool>()) {
        let t = CoordTransform { epsilon: if neg { -1 } else { 1 }, offset: c };
        let snappy = parse_annotated_list("[(-5/2, 'CK'), -1, (-2/3, 'C'), 0, (1, 'T')]").unwrap();
        let std: Vec<Entry> = snappy.iter().map(|e| Entry { slope: apply_transform(t, e.slope).unwrap(), certs: e.certs }).collect();
        let r = CensusRecord::new("v1359", FileKind::Verified, std, snappy, None, None).unwrap();
        let a = r.to_dataset(Coords::SnapPy).unwrap();
        let b = r.to_dataset(Coords::Standard).unwrap();
        prop_assert_eq!(check_conj1(&a).status, check_conj1(&b).status);
        let (x, y) = (check_conj6(&a).unwrap(), check_conj6(&b).unwrap());
        prop_assert_eq!((x.status, x.case_id), (y.status, y.case_id));
    }

    /// Every T certificate names an exceptional slope of the record.
    #[test]
    fn toroidal_certificates_are_exceptional(xs in proptest::collection::btree_set(-20i64..20, 1..6)) {
        let entries: Vec<Entry> = xs.iter().map(|&x| Entry { slope: Slope::integer(x), certs: Certificates::T }).collect();
        let r = CensusRecord::new("m100", FileKind::TorOnly, entries.clone(), entries, None, None).unwrap();
        let d = r.to_dataset(Coords::Standard).unwrap();
        for b in d.boundary.iter().filter(|b| b.certs.is_toroidal()) {
            prop_assert!(d.exceptional.iter().any(|e| e.slope == b.slope));
        }
    }
}

#[test]
fn meridian_pairs_are_rejected() {
    assert!(infer_transform(&[(Slope::MERIDIAN, sl("1")), (sl("0"), sl("2"))]).is_err());
    assert!(apply_transform(CoordTransform::IDENTITY, Slope::MERIDIAN).is_err());
}
