//! Per-knot slope data shared by the generators, the census reader and the
//! conjecture checkers.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CensusError, ConjectureError};
use crate::slope::{Slope, SlopeTag};

const LETTERS: [char; 5] = ['C', 'K', 'L', 'M', 'T'];

/// Provenance letters attached to a boundary slope.
///
/// `C` A-polynomial, `K` Kabaya slope, `L` longitude, `M` two-bridge or
/// Montesinos algorithm, `T` toroidal exceptional slope.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Certificates(u8);

impl Certificates {
    pub const NONE: Certificates = Certificates(0);
    pub const C: Certificates = Certificates(1);
    pub const K: Certificates = Certificates(2);
    pub const L: Certificates = Certificates(4);
    pub const M: Certificates = Certificates(8);
    pub const T: Certificates = Certificates(16);

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, other: Certificates) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn union(self, other: Certificates) -> Certificates {
        Certificates(self.0 | other.0)
    }

    pub fn is_toroidal(self) -> bool {
        self.contains(Certificates::T)
    }

    fn from_letter(c: char) -> Option<Certificates> {
        LETTERS.iter().position(|&l| l == c).map(|i| Certificates(1 << i))
    }
}

impl fmt::Display for Certificates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in LETTERS.iter().enumerate() {
            if self.0 & (1 << i) != 0 {
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Certificates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Certificates({self})")
    }
}

impl FromStr for Certificates {
    type Err = CensusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars().try_fold(Certificates::NONE, |acc, c| {
            Certificates::from_letter(c)
                .map(|x| acc.union(x))
                .ok_or(CensusError::Certificate(c))
        })
    }
}

impl Serialize for Certificates {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Certificates {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalSlope {
    pub slope: Slope,
    pub tag: SlopeTag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundarySlope {
    pub slope: Slope,
    pub certs: Certificates,
}

/// Exceptional and boundary slopes of one knot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeDataset {
    pub name: String,
    pub exceptional: Vec<ExceptionalSlope>,
    pub boundary: Vec<BoundarySlope>,
    /// Whether the boundary list is believed to contain every boundary slope.
    #[serde(default)]
    pub boundary_complete: bool,
}

fn ratio(s: &Slope) -> Ratio<i64> {
    // callers validate that no meridian is present
    s.to_ratio().expect("finite slope")
}

fn by_value(a: &Slope, b: &Slope) -> Ordering {
    ratio(a).cmp(&ratio(b))
}

impl SlopeDataset {
    /// Validate and normalize: slopes sorted, boundary duplicates merged,
    /// toroidal exceptional slopes added to the boundary list.
    pub fn new(
        name: impl Into<String>,
        exceptional: Vec<ExceptionalSlope>,
        boundary: Vec<BoundarySlope>,
        boundary_complete: bool,
    ) -> Result<Self, ConjectureError> {
        let name = name.into();
        let bad = |msg: String| ConjectureError::Malformed(name.clone(), msg);
        for s in exceptional
            .iter()
            .map(|e| &e.slope)
            .chain(boundary.iter().map(|b| &b.slope))
        {
            if s.is_meridian() {
                return Err(bad("the meridian cannot be listed".into()));
            }
        }
        let mut exceptional = exceptional;
        exceptional.sort_by(|a, b| by_value(&a.slope, &b.slope));
        if let Some(w) = exceptional.windows(2).find(|w| w[0].slope == w[1].slope) {
            return Err(bad(format!("exceptional slope {} listed twice", w[0].slope)));
        }
        let mut merged: BTreeMap<Ratio<i64>, Certificates> = BTreeMap::new();
        for b in &boundary {
            let e = merged.entry(ratio(&b.slope)).or_default();
            *e = e.union(b.certs);
        }
        for e in exceptional.iter().filter(|e| e.tag == SlopeTag::Toroidal) {
            let c = merged.entry(ratio(&e.slope)).or_default();
            *c = c.union(Certificates::T);
        }
        let boundary: Vec<BoundarySlope> = merged
            .into_iter()
            .map(|(r, certs)| BoundarySlope {
                slope: Slope::from_ratio(r),
                certs,
            })
            .collect();
        for b in boundary.iter().filter(|b| b.certs.is_toroidal()) {
            match exceptional.iter().find(|e| e.slope == b.slope) {
                Some(e) if e.tag == SlopeTag::Toroidal => {}
                Some(_) => return Err(bad(format!("{} is certified toroidal but tagged otherwise", b.slope))),
                None => return Err(bad(format!("toroidal boundary slope {} is not exceptional", b.slope))),
            }
        }
        Ok(Self {
            name,
            exceptional,
            boundary,
            boundary_complete,
        })
    }

    /// Re-run the normalization, e.g. after deserializing.
    pub fn normalized(self) -> Result<Self, ConjectureError> {
        Self::new(self.name, self.exceptional, self.boundary, self.boundary_complete)
    }

    /// The reflected knot: every slope negated.
    pub fn mirror(&self) -> Self {
        let mut exceptional: Vec<ExceptionalSlope> = self
            .exceptional
            .iter()
            .map(|e| ExceptionalSlope {
                slope: e.slope.mirror(),
                tag: e.tag,
            })
            .collect();
        exceptional.reverse();
        let mut boundary: Vec<BoundarySlope> = self
            .boundary
            .iter()
            .map(|b| BoundarySlope {
                slope: b.slope.mirror(),
                certs: b.certs,
            })
            .collect();
        boundary.reverse();
        Self {
            name: self.name.clone(),
            exceptional,
            boundary,
            boundary_complete: self.boundary_complete,
        }
    }

    pub fn is_toroidal(&self, s: &Slope) -> bool {
        self.boundary.iter().any(|b| b.slope == *s && b.certs.is_toroidal())
    }

    pub fn exceptional_slopes(&self) -> impl Iterator<Item = Slope> + '_ {
        self.exceptional.iter().map(|e| e.slope)
    }
}
