//! Verdicts for the boundary-slope bracketing conjectures.
//!
//! Weak form: some pair of boundary slopes `b1 < b2` brackets every
//! non-trivial exceptional slope. Strong form: there are NIT boundary slopes
//! `b1 <= b2` with every exceptional slope in `[floor b1, ceil b2]` and every
//! integer in `[ceil b1, floor b2]` exceptional. The witness pair of the strong
//! form falls in one of three cases by integrality: both integral (1), one
//! integral (2), neither (3).

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::dataset::SlopeDataset;
use crate::error::ConjectureError;
use crate::slope::Slope;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    /// Which of the three witness shapes applies; strong-form verdicts only.
    pub case_id: Option<u8>,
    pub witnesses: Option<(Slope, Slope)>,
    pub reason: String,
}

impl Verdict {
    fn holds(case_id: Option<u8>, b1: Ratio<i64>, b2: Ratio<i64>, reason: String) -> Self {
        Self {
            status: Status::Holds,
            case_id,
            witnesses: Some((Slope::from_ratio(b1), Slope::from_ratio(b2))),
            reason,
        }
    }

    fn no_witness(complete: bool, what: &str) -> Self {
        let (status, reason) = if complete {
            (Status::Fails, format!("no {what} among a complete boundary list"))
        } else {
            (Status::Unknown, format!("no {what} among the known boundary slopes"))
        };
        Self {
            status,
            case_id: None,
            witnesses: None,
            reason,
        }
    }

    /// The verdict for the reflected dataset.
    pub fn mirror(&self) -> Self {
        Self {
            witnesses: self.witnesses.map(|(a, b)| (b.mirror(), a.mirror())),
            ..self.clone()
        }
    }
}

fn r(s: &Slope) -> Ratio<i64> {
    s.to_ratio().expect("datasets hold finite slopes")
}

fn floor(x: Ratio<i64>) -> i64 {
    *x.floor().numer()
}

fn ceil(x: Ratio<i64>) -> i64 {
    *x.ceil().numer()
}

/// Exceptional slopes as ratios, ascending.
fn exceptional(d: &SlopeDataset) -> Vec<Ratio<i64>> {
    let mut v: Vec<Ratio<i64>> = d.exceptional.iter().map(|e| r(&e.slope)).collect();
    v.sort();
    v
}

fn boundary(d: &SlopeDataset) -> Vec<Ratio<i64>> {
    let set: BTreeSet<Ratio<i64>> = d.boundary.iter().map(|b| r(&b.slope)).collect();
    set.into_iter().collect()
}

/// Boundary slopes that are non-integral or toroidal.
fn nit_boundary(d: &SlopeDataset) -> Vec<Ratio<i64>> {
    let set: BTreeSet<Ratio<i64>> = d
        .boundary
        .iter()
        .filter(|b| !b.slope.is_integral() || d.is_toroidal(&b.slope))
        .map(|b| r(&b.slope))
        .collect();
    set.into_iter().collect()
}

pub fn check_conj1(d: &SlopeDataset) -> Verdict {
    let exc = exceptional(d);
    let (Some(&lo), Some(&hi)) = (exc.first(), exc.last()) else {
        return Verdict {
            status: Status::Holds,
            case_id: None,
            witnesses: None,
            reason: "vacuous: no non-trivial exceptional slopes".into(),
        };
    };
    let b = boundary(d);
    let mut best: Option<(Ratio<i64>, Ratio<i64>)> = None;
    for (i, &b1) in b.iter().enumerate() {
        if b1 > lo {
            break;
        }
        // the first admissible b2 is the narrowest for this b1
        if let Some(&b2) = b[i + 1..].iter().find(|&&b2| b2 >= hi) {
            let better = match best {
                None => true,
                Some((c1, c2)) => (b2 - b1, b1) < (c2 - c1, c1),
            };
            if better {
                best = Some((b1, b2));
            }
        }
    }
    match best {
        Some((b1, b2)) => Verdict::holds(
            None,
            b1,
            b2,
            format!("all {} exceptional slopes lie in [{}, {}]", exc.len(), b1, b2),
        ),
        None => Verdict::no_witness(d.boundary_complete, "bracketing pair"),
    }
}

/// The exceptional data a strong-form witness is checked against.
pub struct Conj6Target {
    exc: Vec<Ratio<i64>>,
    ints: BTreeSet<i64>,
}

impl Conj6Target {
    pub fn new(d: &SlopeDataset) -> Self {
        let exc = exceptional(d);
        let ints = exc.iter().filter(|x| x.is_integer()).map(|x| *x.numer()).collect();
        Self { exc, ints }
    }

    /// Whether `(b1, b2)` with `b1 <= b2` satisfies both strong-form clauses.
    pub fn accepts(&self, b1: Ratio<i64>, b2: Ratio<i64>) -> bool {
        debug_assert!(b1 <= b2);
        let (f1, c1, f2, c2) = (floor(b1), ceil(b1), floor(b2), ceil(b2));
        if f1 == c2 {
            // only possible for equal integral slopes
            assert!(
                b1 == b2 && b1.is_integer(),
                "floor(b1) = ceil(b2) forces b1 = b2 integral"
            );
            if self.exc.iter().any(|x| *x != Ratio::from_integer(f1)) {
                return false;
            }
        } else {
            let (lo, hi) = (Ratio::from_integer(f1), Ratio::from_integer(c2));
            if self.exc.iter().any(|x| *x < lo || *x > hi) {
                return false;
            }
        }
        if c1 <= f2 {
            let needed = (f2 as i128 - c1 as i128 + 1) as usize;
            if needed > self.ints.len() || self.ints.range(c1..=f2).count() != needed {
                return false;
            }
        }
        true
    }
}

fn case_of(b1: Ratio<i64>, b2: Ratio<i64>) -> u8 {
    match (b1.is_integer(), b2.is_integer()) {
        (true, true) => 1,
        (false, false) => 3,
        _ => 2,
    }
}

type Conj6Key = (i64, u8, Ratio<i64>, Ratio<i64>);

/// Tie-break: narrowest `[floor b1, ceil b2]`, then lowest case, then
/// narrowest `b2 - b1`, then smallest `b1`.
fn conj6_key(b1: Ratio<i64>, b2: Ratio<i64>) -> Conj6Key {
    (ceil(b2) - floor(b1), case_of(b1, b2), b2 - b1, b1)
}

fn best_pair(
    target: &Conj6Target,
    candidates: impl Iterator<Item = (Ratio<i64>, Ratio<i64>)>,
) -> Option<(Ratio<i64>, Ratio<i64>)> {
    candidates
        .filter(|&(b1, b2)| target.accepts(b1, b2))
        .min_by_key(|&(b1, b2)| conj6_key(b1, b2))
}

fn conj6_reason(b1: Ratio<i64>, b2: Ratio<i64>) -> String {
    match case_of(b1, b2) {
        1 => format!("integral toroidal slopes {b1} <= {b2} bound a run of exceptional integers"),
        2 => format!("non-integral and integral toroidal slopes {b1}, {b2}"),
        _ => format!("non-integral slopes {b1} <= {b2}"),
    }
}

pub fn check_conj6(d: &SlopeDataset) -> Result<Verdict, ConjectureError> {
    if d.exceptional.is_empty() {
        return Err(ConjectureError::NoExceptional(d.name.clone()));
    }
    let target = Conj6Target::new(d);
    let nit = nit_boundary(d);
    let pairs = nit
        .iter()
        .enumerate()
        .flat_map(|(i, &b1)| nit[i..].iter().map(move |&b2| (b1, b2)));
    Ok(match best_pair(&target, pairs) {
        Some((b1, b2)) => Verdict::holds(Some(case_of(b1, b2)), b1, b2, conj6_reason(b1, b2)),
        None => Verdict::no_witness(d.boundary_complete, "NIT witness pair"),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingleKind {
    Toroidal,
    Cyclic,
}

/// Strong form for a knot whose only non-trivial exceptional slope `m` is
/// toroidal (witness `m, m`) or cyclic (witness a boundary slope in
/// `(m - 1, m + 1)`).
pub fn check_single_exceptional(d: &SlopeDataset, kind: SingleKind) -> Result<Verdict, ConjectureError> {
    if d.exceptional.len() != 1 {
        return Err(ConjectureError::NotSingle {
            name: d.name.clone(),
            found: d.exceptional.len(),
        });
    }
    let m = d.exceptional[0].slope;
    let mr = r(&m);
    let target = Conj6Target::new(d);
    match kind {
        SingleKind::Toroidal => Ok(Verdict::holds(
            Some(case_of(mr, mr)),
            mr,
            mr,
            format!("the toroidal slope {m} is its own witness"),
        )),
        SingleKind::Cyclic => {
            if !m.is_integral() {
                return Err(ConjectureError::NonIntegralCyclic(m));
            }
            let one = Ratio::from_integer(1);
            let near = boundary(d)
                .into_iter()
                .filter(|b| !b.is_integer() && *b > mr - one && *b < mr + one)
                .map(|b| (b, b));
            Ok(match best_pair(&target, near) {
                Some((b, _)) => Verdict::holds(Some(3), b, b, format!("boundary slope {b} lies within 1 of {m}")),
                None => Verdict::no_witness(d.boundary_complete, "boundary slope within 1 of the cyclic slope"),
            })
        }
    }
}

/// Whether an integral exceptional slope `m` of an amphicheiral knot obeying
/// the strong form is compatible with the ten-slope bound: the `2|m| + 1`
/// integers of `[-|m|, |m|]` plus the meridian must number at most ten.
pub fn amphicheiral_bound(m: i64) -> bool {
    2 * u128::from(m.unsigned_abs()) + 1 < 10
}

/// Whether the integral exceptional slopes form a run of consecutive integers.
pub fn consecutive_run(d: &SlopeDataset) -> bool {
    let ints: BTreeSet<i64> = d.exceptional_slopes().filter_map(|s| s.as_integer()).collect();
    ints.iter().zip(ints.iter().skip(1)).all(|(a, b)| b - a == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Question4Report {
    pub name: String,
    /// The strong-form witness pair found by [`check_conj6`].
    pub pair: (Slope, Slope),
    /// A single non-integral slope `b` witnessing the strong form as `b, b`.
    pub single_witness: Option<Slope>,
    /// Case 3 holds, but only with two distinct slopes.
    pub counterexample_candidate: bool,
}

/// For a case-3 dataset, look for a single non-integral witness `b1 = b2`.
pub fn question4_probe(d: &SlopeDataset) -> Result<Question4Report, ConjectureError> {
    let v = check_conj6(d)?;
    let pair = match (v.status, v.case_id, v.witnesses) {
        (Status::Holds, Some(3), Some(p)) => p,
        _ => return Err(ConjectureError::NotCaseThree(d.name.clone())),
    };
    let target = Conj6Target::new(d);
    let singles = boundary(d).into_iter().filter(|b| !b.is_integer()).map(|b| (b, b));
    let single = best_pair(&target, singles).map(|(b, _)| Slope::from_ratio(b));
    Ok(Question4Report {
        name: d.name.clone(),
        pair,
        single_witness: single,
        counterexample_candidate: single.is_none(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{BoundarySlope, Certificates, ExceptionalSlope};
    use crate::slope::SlopeTag;
    use proptest::prelude::*;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    /// `exc` entries like "-2T" or "1"; `bdy` entries like "2/3C".
    fn ds(exc: &[&str], bdy: &[&str], complete: bool) -> SlopeDataset {
        let split = |s: &str| {
            let i = s.find(|c: char| c.is_ascii_alphabetic()).unwrap_or(s.len());
            (sl(&s[..i]), s[i..].to_string())
        };
        let exceptional = exc
            .iter()
            .map(|s| {
                let (slope, t) = split(s);
                let tag = match t.as_str() {
                    "T" => SlopeTag::Toroidal,
                    "S" => SlopeTag::Seifert,
                    _ => SlopeTag::ExceptionalUnclassified,
                };
                ExceptionalSlope { slope, tag }
            })
            .collect();
        let boundary = bdy
            .iter()
            .map(|s| {
                let (slope, c) = split(s);
                BoundarySlope {
                    slope,
                    certs: c.parse().unwrap(),
                }
            })
            .collect();
        SlopeDataset::new("t", exceptional, boundary, complete).unwrap()
    }

    fn pair(a: &str, b: &str) -> Option<(Slope, Slope)> {
        Some((sl(a), sl(b)))
    }

    fn v0319() -> SlopeDataset {
        ds(&["-2T", "-1", "0", "1"], &["2/3C", "14/3C"], false)
    }

    #[test]
    fn v0319_both_forms() {
        let d = v0319();
        let c1 = check_conj1(&d);
        assert_eq!((c1.status, c1.witnesses), (Status::Holds, pair("-2", "14/3")));
        let c6 = check_conj6(&d).unwrap();
        assert_eq!(
            (c6.status, c6.case_id, c6.witnesses),
            (Status::Holds, Some(2), pair("-2", "2/3"))
        );
    }

    #[test]
    fn figure_eight_bracketed_by_four() {
        let exc = ["-4T", "-3S", "-2S", "-1S", "0T", "1S", "2S", "3S", "4T"];
        let d = ds(&exc, &[], true);
        let c1 = check_conj1(&d);
        assert_eq!((c1.status, c1.witnesses), (Status::Holds, pair("-4", "4")));
        let c6 = check_conj6(&d).unwrap();
        assert_eq!((c6.case_id, c6.witnesses), (Some(1), pair("-4", "4")));
    }

    #[test]
    fn empty_boundary_is_unknown() {
        let d = ds(&["1", "2"], &[], false);
        assert_eq!(check_conj1(&d).status, Status::Unknown);
        assert_eq!(check_conj6(&d).unwrap().status, Status::Unknown);
        let d = ds(&["1", "2"], &[], true);
        assert_eq!(check_conj1(&d).status, Status::Fails);
    }

    #[test]
    fn s682_single_slope() {
        let d = ds(&["-1", "0"], &["-3/2C", "-1/3C"], false);
        let c6 = check_conj6(&d).unwrap();
        assert_eq!((c6.case_id, c6.witnesses), (Some(3), pair("-1/3", "-1/3")));
        let q = question4_probe(&d).unwrap();
        assert_eq!(q.single_witness, Some(sl("-1/3")));
        assert!(!q.counterexample_candidate);
        // the two-slope witness also satisfies both clauses
        let t = Conj6Target::new(&d);
        assert!(t.accepts(Ratio::new(-3, 2), Ratio::new(-1, 3)));
    }

    #[test]
    fn strict_pair_only_is_flagged() {
        // integers 0, 1 are exceptional; neither 1/2 nor 3/2 alone covers both
        let d = ds(&["0", "1"], &["-1/2C", "3/2C"], false);
        let c6 = check_conj6(&d).unwrap();
        assert_eq!((c6.case_id, c6.witnesses), (Some(3), pair("-1/2", "3/2")));
        let q = question4_probe(&d).unwrap();
        assert!(q.counterexample_candidate);
    }

    #[test]
    fn pretzel_237_case_one() {
        let d = ds(&["16T", "17S", "18S", "37/2T", "19S", "20T"], &[], true);
        let c6 = check_conj6(&d).unwrap();
        assert_eq!((c6.case_id, c6.witnesses), (Some(1), pair("16", "20")));
        assert_eq!(check_conj1(&d).witnesses, pair("16", "20"));
    }

    #[test]
    fn no_exceptional_rejected_by_strong_form() {
        let d = ds(&[], &["1C"], false);
        assert!(matches!(check_conj6(&d), Err(ConjectureError::NoExceptional(_))));
        let c1 = check_conj1(&d);
        assert_eq!((c1.status, c1.witnesses), (Status::Holds, None));
    }

    #[test]
    fn single_exceptional() {
        let d = ds(&["0T"], &[], false);
        let v = check_single_exceptional(&d, SingleKind::Toroidal).unwrap();
        assert_eq!((v.status, v.witnesses), (Status::Holds, pair("0", "0")));
        let d = ds(&["5"], &["11/2C"], false);
        let v = check_single_exceptional(&d, SingleKind::Cyclic).unwrap();
        assert_eq!((v.status, v.witnesses), (Status::Holds, pair("11/2", "11/2")));
        let d = ds(&["5"], &["7C"], false);
        assert_eq!(
            check_single_exceptional(&d, SingleKind::Cyclic).unwrap().status,
            Status::Unknown
        );
        let d = ds(&["5", "6"], &[], false);
        assert!(matches!(
            check_single_exceptional(&d, SingleKind::Cyclic),
            Err(ConjectureError::NotSingle { found: 2, .. })
        ));
    }

    #[test]
    fn amphicheiral_examples() {
        assert!(amphicheiral_bound(4) && amphicheiral_bound(-4) && amphicheiral_bound(0));
        assert!(!amphicheiral_bound(5) && !amphicheiral_bound(i64::MIN));
    }

    #[test]
    fn consecutive_examples() {
        assert!(consecutive_run(&ds(
            &["16T", "17S", "18S", "37/2T", "19S", "20T"],
            &[],
            false
        )));
        assert!(!consecutive_run(&ds(&["0", "2"], &[], false)));
        assert!(consecutive_run(&ds(&[], &[], false)));
    }

    fn arb_slope() -> impl Strategy<Value = Slope> {
        (-12i64..12, 1i64..4).prop_map(|(p, q)| Slope::new(p, q).unwrap())
    }

    prop_compose! {
        fn arb_dataset()(
            exc in proptest::collection::btree_set(-6i64..6, 1..5),
            tor in proptest::collection::vec(any::<bool>(), 5),
            extra in proptest::collection::vec(arb_slope(), 0..6),
            complete in any::<bool>(),
        ) -> SlopeDataset {
            let exceptional = exc.iter().zip(&tor).map(|(&m, &t)| ExceptionalSlope {
                slope: Slope::integer(m),
                tag: if t { SlopeTag::Toroidal } else { SlopeTag::Seifert },
            }).collect::<Vec<_>>();
            let boundary = extra.into_iter()
                .filter(|s| !exceptional.iter().any(|e| e.slope == *s))
                .map(|slope| BoundarySlope { slope, certs: Certificates::C })
                .collect();
            SlopeDataset::new("p", exceptional, boundary, complete).unwrap()
        }
    }

    proptest! {
        #[test]
        fn mirror_equivariance(d in arb_dataset()) {
            let m = d.mirror();
            let (a, b) = (check_conj1(&d), check_conj1(&m));
            prop_assert_eq!(a.status, b.status);
            let (a, b) = (check_conj6(&d).unwrap(), check_conj6(&m).unwrap());
            prop_assert_eq!(a.status, b.status);
            prop_assert_eq!(a.case_id, b.case_id);
            if let (Some((x1, x2)), Some((y1, y2))) = (a.witnesses, b.mirror().witnesses) {
                // the reflected witness is equally good for the original data
                let t = Conj6Target::new(&d);
                prop_assert!(t.accepts(r(&y1), r(&y2)));
                prop_assert_eq!(conj6_key(r(&x1), r(&x2)).0, conj6_key(r(&y1), r(&y2)).0);
            }
        }

        #[test]
        fn adding_boundary_keeps_holds(d in arb_dataset(), s in arb_slope()) {
            let mut boundary = d.boundary.clone();
            if !d.exceptional.iter().any(|e| e.slope == s) {
                boundary.push(BoundarySlope { slope: s, certs: Certificates::K });
            }
            let bigger = SlopeDataset::new("p", d.exceptional.clone(), boundary, d.boundary_complete).unwrap();
            if check_conj1(&d).status == Status::Holds {
                prop_assert_eq!(check_conj1(&bigger).status, Status::Holds);
            }
            if check_conj6(&d).unwrap().status == Status::Holds {
                prop_assert_eq!(check_conj6(&bigger).unwrap().status, Status::Holds);
            }
        }

        #[test]
        fn fails_only_when_complete(d in arb_dataset()) {
            for v in [check_conj1(&d), check_conj6(&d).unwrap()] {
                if v.status == Status::Fails {
                    prop_assert!(d.boundary_complete);
                }
                if v.status == Status::Holds {
                    prop_assert!(v.witnesses.is_some());
                }
            }
        }
    }
}
