//! Continued fractions in the convention `[a1, ..., an] = 1/(a1 + 1/(a2 + ... + 1/an))`.
//!
//! This is the convention under which the two-bridge link `L_[a1,...,an]`
//! is drawn as a 4-plat (see [`plat`]); it is the mirror of the common
//! textbook convention.

mod claim1;
pub mod ht;
pub mod plat;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CfError;

pub use claim1::{claim1_normalize, claim1_row, Claim1Row};
pub use ht::{ht_boundary_slopes, ht_boundary_slopes_calibrated, HtSlopes};
pub use plat::{linking_number, PlatDiagram};

/// Irreducible `beta/alpha` with `alpha >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    beta: i64,
    alpha: i64,
}

impl Fraction {
    pub fn new(beta: i64, alpha: i64) -> Result<Self, CfError> {
        if alpha == 0 {
            return Err(CfError::BadFraction(beta, alpha));
        }
        let g = beta.gcd(&alpha);
        let (mut b, mut a) = (beta / g, alpha / g);
        if a < 0 {
            b = -b;
            a = -a;
        }
        Ok(Self { beta: b, alpha: a })
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn to_ratio(&self) -> Ratio<i64> {
        Ratio::new_raw(self.beta, self.alpha)
    }

    pub fn from_ratio(r: Ratio<i64>) -> Self {
        Self {
            beta: *r.numer(),
            alpha: *r.denom(),
        }
    }

    pub fn is_knot(&self) -> bool {
        self.alpha % 2 == 1
    }

    pub fn mirror(&self) -> Self {
        Self {
            beta: -self.beta,
            alpha: self.alpha,
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.beta, self.alpha)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fraction({self})")
    }
}

impl FromStr for Fraction {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CfError::FractionParse(s.to_string());
        let (b, a) = s.trim().split_once('/').ok_or_else(bad)?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        if a <= 0 {
            return Err(CfError::BadFraction(b, a));
        }
        Fraction::new(b, a)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A finite continued fraction with no zero terms.
///
/// Internal zeros are collapsed on construction via
/// `[.., a, 0, b, ..] -> [.., a + b, ..]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ContFrac {
    terms: Vec<i64>,
}

impl ContFrac {
    pub fn new(terms: impl Into<Vec<i64>>) -> Result<Self, CfError> {
        let raw: Vec<i64> = terms.into();
        if raw.is_empty() {
            return Err(CfError::Empty);
        }
        let mut out: Vec<i64> = Vec::with_capacity(raw.len());
        let mut i = 0;
        while i < raw.len() {
            let t = raw[i];
            if t == 0 && !out.is_empty() && i + 1 < raw.len() {
                let prev = out.pop().unwrap();
                let merged = prev
                    .checked_add(raw[i + 1])
                    .ok_or_else(|| CfError::Overflow(raw.clone()))?;
                out.push(merged);
                i += 2;
            } else {
                out.push(t);
                i += 1;
            }
        }
        // merging can create new zeros, e.g. [1, 0, -1, 0, 2]
        if out.len() != raw.len() {
            return ContFrac::new(out);
        }
        if out.first() == Some(&0) || out.last() == Some(&0) {
            return Err(CfError::BoundaryZero(raw));
        }
        Ok(Self { terms: out })
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// All terms strictly positive.
    pub fn is_simple(&self) -> bool {
        self.terms.iter().all(|&t| t > 0)
    }

    /// Diagram mirror: every term negated.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|t| -t).collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        let mut terms = self.terms.clone();
        terms.reverse();
        Self { terms }
    }

    pub fn eval(&self) -> Result<Fraction, CfError> {
        cf_eval(self)
    }
}

impl fmt::Display for ContFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for ContFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ContFrac{self}")
    }
}

impl FromStr for ContFrac {
    type Err = CfError;

    /// `[a1, a2, ..., an]`, whitespace-insensitive.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CfError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        if inner.is_empty() {
            return Err(CfError::Empty);
        }
        let terms = inner
            .split(',')
            .map(|t| t.parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        ContFrac::new(terms)
    }
}

impl Serialize for ContFrac {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ContFrac {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact value of the continued fraction, folded from the last term.
pub fn cf_eval(cf: &ContFrac) -> Result<Fraction, CfError> {
    let t = &cf.terms;
    let overflow = || CfError::Overflow(t.clone());
    // tail value = num/den
    let (mut num, mut den) = (1i64, *t.last().unwrap());
    for i in (0..t.len() - 1).rev() {
        let next_den = t[i]
            .checked_mul(den)
            .and_then(|x| x.checked_add(num))
            .ok_or_else(overflow)?;
        if next_den == 0 {
            return Err(CfError::DivisionByZero(t[i..].to_vec()));
        }
        num = den;
        den = next_den;
    }
    Fraction::new(num, den)
}

/// The simple (all-positive) expansion of a fraction in `(0, 1)` whose last
/// term is at least 2 (or the single term `[1]` never arises since `beta < alpha`).
pub fn simple_expansion(f: Fraction) -> Result<ContFrac, CfError> {
    if f.beta <= 0 || f.beta >= f.alpha {
        return Err(CfError::OutOfUnitInterval(f.to_string()));
    }
    let mut terms = Vec::new();
    let (mut a, mut b) = (f.alpha, f.beta);
    while b != 0 {
        let (q, r) = a.div_rem(&b);
        terms.push(q);
        a = b;
        b = r;
    }
    // a regular expansion of a non-integer never ends in 1
    ContFrac::new(terms)
}

/// Two-bridge link equivalence for simple continued fractions whose end
/// terms differ from 1: equal term lists, or equal after reversal with
/// sign `(-1)^(n-1)`.
pub fn cf_equivalent(a: &ContFrac, b: &ContFrac) -> Result<bool, CfError> {
    for cf in [a, b] {
        let t = cf.terms();
        if !cf.is_simple() || t[0] == 1 || t[t.len() - 1] == 1 {
            return Err(CfError::NotNormalForm(t.to_vec()));
        }
    }
    if a.len() != b.len() {
        return Ok(false);
    }
    if a.terms == b.terms {
        return Ok(true);
    }
    let m = b.len();
    let eps = if m % 2 == 1 { 1 } else { -1 };
    // reversal pairs a_i with b_(m - i + 1) in one-based indexing
    Ok((0..m).all(|i| a.terms[i] == eps * b.terms[m - 1 - i]))
}

/// A continued fraction for `f` with `0 < |f| < 1`: the simple expansion,
/// negated termwise for negative `f`.
pub fn expansion_of(f: Fraction) -> Result<ContFrac, CfError> {
    if f.beta < 0 {
        simple_expansion(f.mirror()).map(|cf| cf.mirror())
    } else {
        simple_expansion(f)
    }
}

/// Whether `L_f` and `L_g` are equivalent by an orientation-preserving
/// homeomorphism (unoriented links or knots).
///
/// Fractions in `(0, 1/2)` have simple expansions with both end terms at
/// least 2 and are compared with [`cf_equivalent`]. Other representatives
/// fall back to the number-theoretic form of the same classification:
/// equal `alpha` and `beta' = beta^(+-1) (mod alpha)`.
pub fn two_bridge_equivalent(f: Fraction, g: Fraction) -> bool {
    if f.alpha != g.alpha {
        return false;
    }
    let half = |x: Fraction| x.beta > 0 && 2 * x.beta < x.alpha;
    if half(f) && half(g) {
        if let (Ok(a), Ok(b)) = (simple_expansion(f), simple_expansion(g)) {
            if let Ok(eq) = cf_equivalent(&a, &b) {
                return eq;
            }
        }
    }
    residue_equivalent(f, g)
}

/// `beta' = beta^(+-1) (mod alpha)`.
pub fn residue_equivalent(f: Fraction, g: Fraction) -> bool {
    if f.alpha != g.alpha {
        return false;
    }
    let a = i128::from(f.alpha);
    let (b, c) = (i128::from(f.beta).rem_euclid(a), i128::from(g.beta).rem_euclid(a));
    b == c || (b * c).rem_euclid(a) == 1 % a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(s: &str) -> ContFrac {
        s.parse().unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(cf_eval(&cf("[3,5]")).unwrap(), Fraction::new(5, 16).unwrap());
        assert_eq!(cf_eval(&cf("[2]")).unwrap(), Fraction::new(1, 2).unwrap());
        assert_eq!(cf_eval(&cf("[3,-3]")).unwrap(), Fraction::new(3, 8).unwrap());
        assert_eq!(cf_eval(&cf("[-2]")).unwrap(), Fraction::new(-1, 2).unwrap());
    }

    #[test]
    fn eval_division_by_zero_reports_suffix() {
        // 1 + 1/(-1) = 0
        assert_eq!(cf_eval(&cf("[4,1,-1]")), Err(CfError::DivisionByZero(vec![1, -1])));
    }

    #[test]
    fn zero_collapse() {
        assert_eq!(cf("[2,0,3,4]").terms(), &[5, 4]);
        assert_eq!(cf("[1,0,-1,0,2]").terms(), &[2]);
        assert!(matches!("[0,3]".parse::<ContFrac>(), Err(CfError::BoundaryZero(_))));
        assert!(matches!("[3,0]".parse::<ContFrac>(), Err(CfError::BoundaryZero(_))));
        assert!(matches!("[1,0,-1]".parse::<ContFrac>(), Err(CfError::BoundaryZero(_))));
        assert_eq!("[]".parse::<ContFrac>(), Err(CfError::Empty));
    }

    #[test]
    fn parse_is_whitespace_insensitive() {
        assert_eq!(cf(" [ 3 , -3 ] "), cf("[3,-3]"));
        assert!("3,5".parse::<ContFrac>().is_err());
        assert!("[3;5]".parse::<ContFrac>().is_err());
        assert_eq!(cf("[3, 5]").to_string(), "[3,5]");
    }

    #[test]
    fn equivalence_examples() {
        assert!(cf_equivalent(&cf("[3,5]"), &cf("[3,5]")).unwrap());
        assert!(cf_equivalent(&cf("[2,3,2]"), &cf("[2,3,2]")).unwrap());
        assert!(cf_equivalent(&cf("[2,3,4]"), &cf("[4,3,2]")).unwrap());
        assert!(!cf_equivalent(&cf("[3,5]"), &cf("[5,3]")).unwrap());
        assert!(!cf_equivalent(&cf("[3,5]"), &cf("[3,5,2]")).unwrap());
        assert!(cf_equivalent(&cf("[1,5]"), &cf("[3,5]")).is_err());
        assert!(cf_equivalent(&cf("[3,-5]"), &cf("[3,5]")).is_err());
    }

    #[test]
    fn simple_expansion_roundtrip() {
        for alpha in 2..60i64 {
            for beta in 1..alpha {
                if beta.gcd(&alpha) != 1 {
                    continue;
                }
                let f = Fraction::new(beta, alpha).unwrap();
                let s = simple_expansion(f).unwrap();
                assert!(s.is_simple());
                assert!(s.len() == 1 || *s.terms().last().unwrap() >= 2);
                assert_eq!(cf_eval(&s).unwrap(), f);
            }
        }
        assert!(simple_expansion(Fraction::new(-1, 3).unwrap()).is_err());
    }
}
