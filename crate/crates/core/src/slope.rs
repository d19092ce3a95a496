//! Exact surgery slopes: reduced rationals plus the meridian `1/0`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::CheckedAdd;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::SlopeError;

/// A Dehn surgery slope `p/q` in lowest terms with `q >= 0`.
///
/// The meridian is stored as exactly `1/0`. Finite slopes always have a
/// positive denominator, so structural equality is rational equality.
/// There is deliberately no `Ord` impl: the meridian has no place in the
/// rational order, so comparisons go through [`Slope::try_cmp`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    num: i64,
    den: i64,
}

impl Slope {
    pub const MERIDIAN: Slope = Slope { num: 1, den: 0 };

    /// Reduce `p/q`. Any `k/0` with `k != 0` is the meridian.
    pub fn new(p: i64, q: i64) -> Result<Self, SlopeError> {
        if p == 0 && q == 0 {
            return Err(SlopeError::Undefined);
        }
        if q == 0 {
            return Ok(Self::MERIDIAN);
        }
        let g = p.gcd(&q);
        let (mut num, mut den) = (p / g, q / g);
        if den < 0 {
            num = num.checked_neg().ok_or(SlopeError::Overflow)?;
            den = den.checked_neg().ok_or(SlopeError::Overflow)?;
        }
        Ok(Self { num, den })
    }

    pub const fn integer(n: i64) -> Self {
        Self { num: n, den: 1 }
    }

    pub fn from_ratio(r: Ratio<i64>) -> Self {
        // Ratio keeps itself reduced with a positive denominator.
        Self {
            num: *r.numer(),
            den: *r.denom(),
        }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_meridian(&self) -> bool {
        self.den == 0
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.is_integral().then_some(self.num)
    }

    pub fn to_ratio(&self) -> Result<Ratio<i64>, SlopeError> {
        if self.is_meridian() {
            return Err(SlopeError::Meridian);
        }
        Ok(Ratio::new_raw(self.num, self.den))
    }

    /// `(floor, ceil)`; equal exactly when the slope is an integer.
    pub fn floor_ceil(&self) -> Result<(i64, i64), SlopeError> {
        let r = self.to_ratio()?;
        Ok((*r.floor().numer(), *r.ceil().numer()))
    }

    pub fn floor(&self) -> Result<i64, SlopeError> {
        self.floor_ceil().map(|(f, _)| f)
    }

    pub fn ceil(&self) -> Result<i64, SlopeError> {
        self.floor_ceil().map(|(_, c)| c)
    }

    /// Reflection of the knot negates every slope; the meridian is fixed.
    pub fn mirror(&self) -> Self {
        if self.is_meridian() {
            *self
        } else {
            Self {
                num: -self.num,
                den: self.den,
            }
        }
    }

    pub fn try_cmp(&self, other: &Slope) -> Result<Ordering, SlopeError> {
        Ok(self.to_ratio()?.cmp(&other.to_ratio()?))
    }

    pub fn checked_add_integer(&self, k: i64) -> Result<Slope, SlopeError> {
        let r = self.to_ratio()?;
        let shifted = r.checked_add(&Ratio::from_integer(k)).ok_or(SlopeError::Overflow)?;
        Ok(Slope::from_ratio(shifted))
    }
}

/// Non-integral or toroidal.
pub fn is_nit(s: &Slope, is_toroidal: bool) -> Result<bool, SlopeError> {
    if s.is_meridian() {
        return Err(SlopeError::Meridian);
    }
    Ok(!s.is_integral() || is_toroidal)
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Slope({self})")
    }
}

impl FromStr for Slope {
    type Err = SlopeError;

    /// `n`, `p/q` with an optional leading sign on `p`, or `1/0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || SlopeError::Parse(s.to_string());
        let (p_str, q_str) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), Some(q.trim())),
            None => (s, None),
        };
        let p: i64 = parse_signed(p_str).ok_or_else(bad)?;
        let q: i64 = match q_str {
            None => 1,
            Some(q) => {
                if q.is_empty() || !q.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                q.parse().map_err(|_| bad())?
            }
        };
        if q == 0 {
            return match p {
                0 => Err(SlopeError::Undefined),
                1 => Ok(Slope::MERIDIAN),
                _ => Err(bad()),
            };
        }
        Slope::new(p, q)
    }
}

fn parse_signed(s: &str) -> Option<i64> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Kind of a non-trivial exceptional filling. Serialized as its letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SlopeTag {
    #[serde(rename = "T")]
    Toroidal,
    #[serde(rename = "S")]
    Seifert,
    #[serde(rename = "F")]
    CyclicFinite,
    #[serde(rename = "E")]
    ExceptionalUnclassified,
}

impl SlopeTag {
    pub fn letter(&self) -> &'static str {
        match self {
            SlopeTag::Toroidal => "T",
            SlopeTag::Seifert => "S",
            SlopeTag::CyclicFinite => "F",
            SlopeTag::ExceptionalUnclassified => "E",
        }
    }
}

/// Closed interval of finite slopes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeInterval {
    lo: Slope,
    hi: Slope,
}

impl SlopeInterval {
    pub fn new(lo: Slope, hi: Slope) -> Result<Self, SlopeError> {
        if lo.try_cmp(&hi)? == Ordering::Greater {
            return Err(SlopeError::EmptyInterval(lo, hi));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> Slope {
        self.lo
    }

    pub fn hi(&self) -> Slope {
        self.hi
    }

    pub fn contains(&self, s: &Slope) -> Result<bool, SlopeError> {
        Ok(self.lo.try_cmp(s)? != Ordering::Greater && s.try_cmp(&self.hi)? != Ordering::Greater)
    }
}
