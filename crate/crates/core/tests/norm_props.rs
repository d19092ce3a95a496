use exslope::cs_norm::{
    finite_norm_bound, finite_slope_interval_check, first_forced, grid_check, lattice_contradiction, width_at_one,
    NormData, Parity,
};
use exslope::slope::Slope;
use exslope::sweep::Exec;
use num_rational::Ratio;
use proptest::prelude::*;

type Q = Ratio<i64>;

fn quarter(lo: i64, hi: i64) -> impl Strategy<Value = Q> {
    (4 * lo..=4 * hi).prop_map(|k| Q::new(k, 4))
}

/// `(s, m, t)` with `s >= 4` and `m, t` in `[s, 3s]` on the quarter grid.
fn arb_norms() -> impl Strategy<Value = (Q, Q, Q)> {
    quarter(4, 20).prop_flat_map(|s| {
        let k = (s * 4).to_integer();
        let pick = (k..=3 * k).prop_map(|x| Q::new(x, 4));
        (Just(s), pick.clone(), pick)
    })
}

fn arb_parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::IntegerSlope), Just(Parity::HalfIntegerSlope)]
}

fn slope(r: Q) -> Slope {
    Slope::from_ratio(r)
}

#[test]
fn small_grid_has_no_violations() {
    let samples = [Q::from_integer(0), Q::new(-7, 3), Q::new(5, 2)];
    let a = grid_check(4, 6, &samples, Exec::Sequential);
    assert!(a.violations.is_empty() && a.bound_violations.is_empty());
    assert_eq!(a, grid_check(4, 6, &samples, Exec::Parallel));
}

#[test]
fn gap_is_sharp() {
    // one step before the forced slope the widest admissible triangle fails
    let s = Q::from_integer(4);
    let d = NormData::new(s, s, s * 3, slope(Q::from_integer(0)), 2, Parity::IntegerSlope).unwrap();
    assert!(!lattice_contradiction(&d));
    let d = NormData::new(s, s, s * 3, slope(Q::from_integer(0)), 1, Parity::HalfIntegerSlope).unwrap();
    assert!(!lattice_contradiction(&d));
}

proptest! {
    #[test]
    fn forced_slopes_contradict((s, m, t) in arb_norms(), r in (-400i64..400, 1i64..7), parity in arb_parity()) {
        let r = Q::new(r.0, r.1);
        let n = first_forced(r, parity);
        let d = NormData::new(s, m, t, slope(r), n, parity).unwrap();
        prop_assert!(lattice_contradiction(&d));
        // and every slope beyond it too
        let step = if parity == Parity::IntegerSlope { 1 } else { 2 };
        let d = NormData::new(s, m, t, slope(r), n + 5 * step, parity).unwrap();
        prop_assert!(lattice_contradiction(&d));
    }

    #[test]
    fn width_is_linear_in_n((s, m, t) in arb_norms(), r in -50i64..50, parity in arb_parity()) {
        let r = Q::from_integer(r);
        let n0 = first_forced(r, parity);
        let step = if parity == Parity::IntegerSlope { 1 } else { 2 };
        let w = |n| width_at_one(&NormData::new(s, m, t, slope(r), n, parity).unwrap());
        let (a, b, c) = (w(n0), w(n0 + step), w(n0 + 2 * step));
        prop_assert_eq!(b - a, c - b);
        prop_assert!(b > a);
    }

    #[test]
    fn width_decreases_in_t((s, m, t) in arb_norms(), parity in arb_parity()) {
        prop_assume!(t < s * 3);
        let r = Q::from_integer(0);
        let n = first_forced(r, parity);
        let a = width_at_one(&NormData::new(s, m, t, slope(r), n, parity).unwrap());
        let b = width_at_one(&NormData::new(s, m, t + Q::new(1, 4), slope(r), n, parity).unwrap());
        prop_assert!(b < a);
    }

    /// Slopes below the least boundary slope reduce to the case above.
    #[test]
    fn mirror_symmetry((s, m, t) in arb_norms(), r_min in -60i64..60, gap in 1i64..9, parity in arb_parity()) {
        let r_min = Q::from_integer(r_min);
        let n = match parity {
            Parity::IntegerSlope => (r_min - gap).to_integer(),
            Parity::HalfIntegerSlope => 2 * (r_min - gap).to_integer() - 1,
        };
        let below = NormData::below(s, m, t, slope(r_min), n, parity).unwrap();
        // the width written directly for a slope under r_min
        let nq = Q::from_integer(n);
        let direct = match parity {
            Parity::IntegerSlope => (r_min - nq) * 2 - (t - s) * 2 / m,
            Parity::HalfIntegerSlope => (r_min * 2 - nq) - (t - s * 2) / m,
        };
        prop_assert_eq!(width_at_one(&below), direct);
    }

    #[test]
    fn norm_bound_within_three_s(s in quarter(4, 400)) {
        let b = finite_norm_bound(s).unwrap();
        prop_assert!(b <= s * 3 && b >= s * 2 && b >= s + 8);
    }

    #[test]
    fn interval_check_is_mirror_symmetric(x in -100i64..100, lo in -50i64..50, len in 0i64..20) {
        let (x, lo, hi) = (Q::new(x, 2), Q::from_integer(lo), Q::from_integer(lo + len));
        let a = finite_slope_interval_check(slope(x), slope(lo), slope(hi)).unwrap();
        let b = finite_slope_interval_check(slope(-x), slope(-hi), slope(-lo)).unwrap();
        prop_assert_eq!(a, b);
    }
}
