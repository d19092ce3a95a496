use serde::Serialize;

use super::ContFrac;
use crate::error::CfError;

/// The ten rows of the simple-form table for `[2w, v, 2u]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Claim1Row {
    /// `v, u > 0`: already simple.
    BothPositive,
    /// `v = 1, u <= -2`: `[2w+1, -2u-1]`.
    VOneUNeg,
    /// `v >= 2, u = -1, w = 1`: `[2, v-1, 2]`.
    VPosUMinusOne,
    /// `v >= 2, u <= -2`: `[2w, v-1, 1, -2u-1]`.
    VPosUNeg,
    /// `v = -1, u >= 2`: `[2w-2, 1, 2u-2]`.
    VMinusOneUPos,
    /// `v = -2, u >= 2`: `[2w-1, 2, 2u-1]`.
    VMinusTwoUPos,
    /// `v <= -3, u >= 2`: `[2w-1, 1, -v-2, 1, 2u-1]`.
    VNegUPos,
    /// `v = -1, u <= -2`: `[2w-1, -2u+1]`.
    VMinusOneUNeg,
    /// `v <= -2, u = -1, w = 1`: `[1, 1, -v-1, 2]`.
    VNegUMinusOne,
    /// `v <= -2, u <= -2`: `[2w-1, 1, -v-1, -2u]`.
    VNegUNeg,
}

fn in_hypothesis(w: i64, v: i64, u: i64) -> bool {
    (w == 1 && u == -1 && v.abs() >= 2) || (w >= 2 && u.abs() >= 2 && v.abs() >= 1)
}

pub fn claim1_row(w: i64, v: i64, u: i64) -> Result<Claim1Row, CfError> {
    use Claim1Row::*;
    if !in_hypothesis(w, v, u) {
        return Err(CfError::Claim1Hypothesis(w, v, u));
    }
    let row = if u == -1 {
        // w = 1 here
        if v >= 2 {
            VPosUMinusOne
        } else {
            VNegUMinusOne
        }
    } else if u >= 2 {
        match v {
            v if v > 0 => BothPositive,
            -1 => VMinusOneUPos,
            -2 => VMinusTwoUPos,
            _ => VNegUPos,
        }
    } else {
        match v {
            1 => VOneUNeg,
            v if v >= 2 => VPosUNeg,
            -1 => VMinusOneUNeg,
            _ => VNegUNeg,
        }
    };
    Ok(row)
}

/// Simple continued fraction equal to `[2w, v, 2u]`.
pub fn claim1_normalize(w: i64, v: i64, u: i64) -> Result<ContFrac, CfError> {
    use Claim1Row::*;
    let terms = match claim1_row(w, v, u)? {
        BothPositive => vec![2 * w, v, 2 * u],
        VOneUNeg => vec![2 * w + 1, -2 * u - 1],
        VPosUMinusOne => vec![2, v - 1, 2],
        VPosUNeg => vec![2 * w, v - 1, 1, -2 * u - 1],
        VMinusOneUPos => vec![2 * w - 2, 1, 2 * u - 2],
        VMinusTwoUPos => vec![2 * w - 1, 2, 2 * u - 1],
        VNegUPos => vec![2 * w - 1, 1, -v - 2, 1, 2 * u - 1],
        VMinusOneUNeg => vec![2 * w - 1, -2 * u + 1],
        VNegUMinusOne => vec![1, 1, -v - 1, 2],
        VNegUNeg => vec![2 * w - 1, 1, -v - 1, -2 * u],
    };
    ContFrac::new(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::cf_eval;

    #[test]
    fn table_examples() {
        assert_eq!(claim1_normalize(2, 1, -3).unwrap().terms(), &[5, 5]);
        assert_eq!(claim1_normalize(2, -1, 2).unwrap().terms(), &[2, 1, 2]);
        assert_eq!(claim1_normalize(2, 3, 2).unwrap().terms(), &[4, 3, 4]);
        assert_eq!(claim1_row(2, 1, -3).unwrap(), Claim1Row::VOneUNeg);
    }

    #[test]
    fn examples_agree_in_value() {
        let lhs = cf_eval(&ContFrac::new(vec![4, 1, -6]).unwrap()).unwrap();
        assert_eq!(lhs.to_string(), "5/26");
        let lhs = cf_eval(&ContFrac::new(vec![4, -1, 4]).unwrap()).unwrap();
        assert_eq!(lhs.to_string(), "3/8");
    }

    #[test]
    fn outside_hypothesis_rejected() {
        for (w, v, u) in [(1, 3, 2), (2, 0, 3), (2, 1, 1), (0, 2, -1), (1, 1, -1), (-2, 1, 3)] {
            assert_eq!(claim1_row(w, v, u), Err(CfError::Claim1Hypothesis(w, v, u)));
        }
    }
}
