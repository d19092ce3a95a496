//! Boundary slopes of two-bridge knots from continued-fraction expansions.
//!
//! Every expansion `f = r + [b1, ..., bk]` with all `|bi| >= 2` carries an
//! essential surface. Rewriting the expansion with alternating minus signs
//! (`b1, -b2, b3, -b4, ...`), let `n+`/`n-` count its positive/negative
//! terms. The surface slope is `2((n+ - n-) - (n+0 - n-0))`, where the
//! zero-superscript counts come from the unique expansion with every term
//! even (the minimal-genus Seifert surface, slope 0).

use std::collections::{BTreeSet, HashMap};

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{ContFrac, Fraction};
use crate::error::CfError;
use crate::slope::Slope;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HtSlopes {
    /// Ascending, all even integers, always containing 0.
    pub slopes: Vec<Slope>,
    /// Integer part and terms of the all-even expansion.
    pub all_even: (i64, ContFrac),
    /// Whether the raw slopes were negated to match a calibration slope.
    pub flipped: bool,
}

impl HtSlopes {
    pub fn contains(&self, s: &Slope) -> bool {
        self.slopes.contains(s)
    }

    pub fn negated(&self) -> HtSlopes {
        let mut slopes: Vec<Slope> = self.slopes.iter().map(|s| s.mirror()).collect();
        slopes.reverse();
        HtSlopes {
            slopes,
            all_even: self.all_even.clone(),
            flipped: !self.flipped,
        }
    }
}

#[derive(Default)]
struct TailSums {
    /// `sum` over tails of the alternating-sign count, tail starting at an even position
    sums: BTreeSet<i64>,
    /// same, restricted to tails whose terms are all even; (sum, terms)
    even: Vec<(i64, Vec<i64>)>,
}

struct Enumerator {
    memo: HashMap<Ratio<i64>, TailSums>,
}

impl Enumerator {
    /// Tails `x = [b1, b2, ...]` with `0 < |x| < 1` and all `|bi| >= 2`.
    fn tails(&mut self, x: Ratio<i64>) {
        if self.memo.contains_key(&x) {
            return;
        }
        let inv = x.recip();
        let mut out = TailSums::default();
        let candidates: Vec<i64> = if inv.is_integer() {
            vec![*inv.numer()]
        } else {
            vec![*inv.floor().numer(), *inv.ceil().numer()]
        };
        for b in candidates {
            if b.abs() < 2 {
                continue;
            }
            let head = b.signum();
            let rest = inv - Ratio::from_integer(b);
            if rest.is_zero() {
                out.sums.insert(head);
                if b % 2 == 0 {
                    out.even.push((head, vec![b]));
                }
                continue;
            }
            self.tails(rest);
            let sub = &self.memo[&rest];
            // the tail starts one position later, which flips its alternating sign
            let shifted: Vec<i64> = sub.sums.iter().map(|s| head - s).collect();
            let even: Vec<(i64, Vec<i64>)> = if b % 2 == 0 {
                sub.even
                    .iter()
                    .map(|(s, terms)| {
                        let mut t = Vec::with_capacity(terms.len() + 1);
                        t.push(b);
                        t.extend_from_slice(terms);
                        (head - s, t)
                    })
                    .collect()
            } else {
                Vec::new()
            };
            out.sums.extend(shifted);
            out.even.extend(even);
        }
        self.memo.insert(x, out);
    }
}

/// Boundary slopes of the two-bridge knot with fraction `f`, in the raw
/// sign convention of the expansion formula.
pub fn ht_boundary_slopes(f: Fraction) -> Result<HtSlopes, CfError> {
    if !f.is_knot() {
        return Err(CfError::EvenDenominator(f.alpha()));
    }
    if f.alpha() == 1 {
        return Err(CfError::Trivial(f.to_string()));
    }
    let v = f.to_ratio();
    let mut en = Enumerator { memo: HashMap::new() };
    let mut sums = BTreeSet::new();
    let mut even = Vec::new();
    for r in [*v.floor().numer(), *v.ceil().numer()] {
        let x = v - Ratio::from_integer(r);
        en.tails(x);
        let t = &en.memo[&x];
        sums.extend(t.sums.iter().copied());
        even.extend(t.even.iter().map(|(s, terms)| (r, *s, terms.clone())));
    }
    let (r0, s0, terms0) = match even.len() {
        0 => return Err(CfError::NoEvenExpansion(f.to_string())),
        1 => even.pop().unwrap(),
        n => return Err(CfError::AmbiguousEvenExpansion(f.to_string(), n)),
    };
    let slopes = sums.into_iter().map(|s| Slope::integer(2 * (s - s0))).collect();
    Ok(HtSlopes {
        slopes,
        all_even: (r0, ContFrac::new(terms0)?),
        flipped: false,
    })
}

/// Slopes up to global sign, oriented so that `toroidal` is among them.
pub fn ht_boundary_slopes_calibrated(f: Fraction, toroidal: Slope) -> Result<HtSlopes, CfError> {
    let raw = ht_boundary_slopes(f)?;
    if raw.contains(&toroidal) {
        Ok(raw)
    } else if raw.contains(&toroidal.mirror()) {
        Ok(raw.negated())
    } else {
        Err(CfError::Calibration(toroidal))
    }
}

/// Alternating-sign count of a single plus-convention expansion; test helper
/// shared with the brute-force oracle.
pub fn alternating_count(terms: &[i64]) -> i64 {
    terms
        .iter()
        .enumerate()
        .map(|(i, b)| if i % 2 == 0 { b.signum() } else { -b.signum() })
        .sum()
}
