//! Exceptional-slope tables for knot families whose exceptional fillings
//! are classified: alternating knots, length-three Montesinos knots,
//! components of two-bridge links, and torti-rational knots.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::contfrac::{
    cf_eval, claim1_normalize, claim1_row, expansion_of, linking_number, two_bridge_equivalent, ContFrac, Fraction,
    HtSlopes,
};
use crate::dataset::{BoundarySlope, Certificates, ExceptionalSlope, SlopeDataset};
use crate::error::{CfError, ConjectureError, FamilyError};
use crate::slope::{Slope, SlopeTag};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotFamily {
    FigureEight,
    /// `K_[2n, 2]` when `positive`, else `K_[2n, -2]`.
    TwistKnot {
        n: i64,
        positive: bool,
    },
    TwoBridgeKnot(ContFrac),
    Pretzel([i64; 3]),
    /// `M(p1/q1, ..., pk/qk)` from its tangle fractions.
    Montesinos(Vec<Fraction>),
    /// One component of the two-bridge link `L_cf`.
    TwoBridgeLinkComponent(ContFrac),
    /// `K(beta/alpha; n)`: a component of `L_(beta/alpha)` after `n` full
    /// twists along the other component.
    TortiRational {
        f: Fraction,
        n: i64,
    },
}

impl KnotFamily {
    /// Short display name such as `P(-2,3,7)` or `L[5,5]`.
    pub fn name(&self) -> String {
        match self {
            KnotFamily::FigureEight => "figure-eight".into(),
            KnotFamily::TwistKnot { n, positive } => format!("K[{},{}]", 2 * n, if *positive { 2 } else { -2 }),
            KnotFamily::TwoBridgeKnot(cf) => format!("K{cf}"),
            KnotFamily::Pretzel([a, b, c]) => format!("P({a},{b},{c})"),
            KnotFamily::Montesinos(t) => {
                let parts: Vec<String> = t.iter().map(|f| f.to_string()).collect();
                format!("M({})", parts.join(","))
            }
            KnotFamily::TwoBridgeLinkComponent(cf) => format!("L{cf}"),
            KnotFamily::TortiRational { f, n } => format!("K({f};{n})"),
        }
    }
}

impl fmt::Display for KnotFamily {
    /// The descriptor form accepted by [`FromStr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotFamily::FigureEight => write!(f, "figure-eight"),
            KnotFamily::TwistKnot { n, positive } => write!(f, "twist:{n},{}", if *positive { '+' } else { '-' }),
            KnotFamily::TwoBridgeKnot(cf) => write!(f, "2bridge:{cf}"),
            KnotFamily::Pretzel([a, b, c]) => write!(f, "pretzel:{a},{b},{c}"),
            KnotFamily::Montesinos(t) => {
                let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                write!(f, "montesinos:{}", parts.join(","))
            }
            KnotFamily::TwoBridgeLinkComponent(cf) => write!(f, "link:{cf}"),
            KnotFamily::TortiRational { f: fr, n } => write!(f, "torti:{fr},{n}"),
        }
    }
}

fn parse_ints(s: &str) -> Option<Vec<i64>> {
    s.split(',').map(|x| x.trim().parse().ok()).collect()
}

impl FromStr for KnotFamily {
    type Err = FamilyError;

    /// `figure-eight`, `twist:N,+`, `2bridge:[a,b]`, `pretzel:a,b,c`,
    /// `montesinos:p/q,...`, `link:[a,b]`, `torti:b/a,n`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::Descriptor(s.to_string());
        let s = s.trim();
        if s == "figure-eight" || s == "4_1" {
            return Ok(KnotFamily::FigureEight);
        }
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let args = args.trim();
        match kind.trim() {
            "twist" => {
                let (n, sign) = args.split_once(',').ok_or_else(bad)?;
                let n = n.trim().parse().map_err(|_| bad())?;
                let positive = match sign.trim() {
                    "+" | "+2" | "2" => true,
                    "-" | "-2" => false,
                    _ => return Err(bad()),
                };
                Ok(KnotFamily::TwistKnot { n, positive })
            }
            "2bridge" => Ok(KnotFamily::TwoBridgeKnot(args.parse().map_err(|_| bad())?)),
            "link" => Ok(KnotFamily::TwoBridgeLinkComponent(args.parse().map_err(|_| bad())?)),
            "pretzel" => {
                let q = parse_ints(args).ok_or_else(bad)?;
                let q: [i64; 3] = q.try_into().map_err(|_| bad())?;
                Ok(KnotFamily::Pretzel(q))
            }
            "montesinos" => {
                let t: Result<Vec<Fraction>, _> = args.split(',').map(|x| x.trim().parse()).collect();
                Ok(KnotFamily::Montesinos(t.map_err(|_| bad())?))
            }
            "torti" => {
                let (f, n) = args.rsplit_once(',').ok_or_else(bad)?;
                Ok(KnotFamily::TortiRational {
                    f: f.trim().parse().map_err(|_| bad())?,
                    n: n.trim().parse().map_err(|_| bad())?,
                })
            }
            _ => Err(bad()),
        }
    }
}

/// How a listed slope is annotated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mark {
    Tag(SlopeTag),
    /// Non-integral boundary slope printed alongside the exceptional ones.
    NonIntegral,
    /// Boundary slope carried for the conjecture checks only.
    Boundary(Certificates),
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mark::Tag(t) => write!(f, "{}", t.letter()),
            Mark::NonIntegral => write!(f, "NI"),
            Mark::Boundary(c) => write!(f, "{c}"),
        }
    }
}

impl Serialize for Mark {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AnnotatedSlope {
    pub slope: Slope,
    pub mark: Mark,
}

impl fmt::Display for AnnotatedSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.slope, self.mark)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyDataset {
    pub name: String,
    /// Exceptional slopes with their T/S tags, interleaved with the
    /// non-integral boundary slopes of the printed table; ascending.
    pub exceptional: Vec<AnnotatedSlope>,
    pub boundary_extra: Vec<AnnotatedSlope>,
    pub boundary_complete: bool,
    /// Hyperbolicity of the knot (and link) is assumed, never checked.
    pub hyperbolic_assumed: bool,
    pub notes: Vec<String>,
}

fn value(s: &Slope) -> Ratio<i64> {
    s.to_ratio().expect("tables hold finite slopes")
}

/// Parse a compact table such as `"8/3NI 3S 4S 6T"`.
fn table(spec: &str) -> Vec<AnnotatedSlope> {
    spec.split_whitespace()
        .map(|tok| {
            let (num, mark) = if let Some(n) = tok.strip_suffix("NI") {
                (n, Mark::NonIntegral)
            } else if let Some(n) = tok.strip_suffix('T') {
                (n, Mark::Tag(SlopeTag::Toroidal))
            } else if let Some(n) = tok.strip_suffix('S') {
                (n, Mark::Tag(SlopeTag::Seifert))
            } else {
                panic!("bad table token {tok}")
            };
            AnnotatedSlope {
                slope: num.parse().expect("table slope"),
                mark,
            }
        })
        .collect()
}

fn tagged(entries: &[(i64, SlopeTag)]) -> Vec<AnnotatedSlope> {
    entries
        .iter()
        .map(|&(r, t)| AnnotatedSlope {
            slope: Slope::integer(r),
            mark: Mark::Tag(t),
        })
        .collect()
}

fn boundary_entries(slopes: impl IntoIterator<Item = Slope>, certs: Certificates) -> Vec<AnnotatedSlope> {
    slopes
        .into_iter()
        .map(|slope| AnnotatedSlope {
            slope,
            mark: Mark::Boundary(certs),
        })
        .collect()
}

impl FamilyDataset {
    fn new(name: impl Into<String>, exceptional: Vec<AnnotatedSlope>) -> Self {
        let mut d = Self {
            name: name.into(),
            exceptional,
            boundary_extra: vec![],
            boundary_complete: false,
            hyperbolic_assumed: true,
            notes: vec![],
        };
        d.sort();
        d
    }

    fn sort(&mut self) {
        self.exceptional.sort_by_key(|a| value(&a.slope));
        self.boundary_extra.sort_by_key(|a| value(&a.slope));
        debug_assert!(self
            .exceptional
            .windows(2)
            .all(|w| value(&w[0].slope) < value(&w[1].slope)));
        debug_assert!(self
            .exceptional
            .iter()
            .all(|a| a.mark != Mark::NonIntegral || !a.slope.is_integral()));
    }

    fn with_boundary(mut self, extra: Vec<AnnotatedSlope>, complete: bool) -> Self {
        self.boundary_extra.extend(extra);
        self.boundary_complete = complete;
        self.sort();
        self
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    /// Canonical one-line table, e.g. `16T, 17S, 18S, 37/2T, 19S, 20T`.
    pub fn table_string(&self) -> String {
        let parts: Vec<String> = self.exceptional.iter().map(|a| a.to_string()).collect();
        parts.join(", ")
    }

    /// Exceptional slopes proper (tagged entries), ascending.
    pub fn exceptional_slopes(&self) -> impl Iterator<Item = (Slope, SlopeTag)> + '_ {
        self.exceptional.iter().filter_map(|a| match a.mark {
            Mark::Tag(t) => Some((a.slope, t)),
            _ => None,
        })
    }

    /// All slopes in the annotated-list text form of the census files:
    /// bare numbers for non-toroidal exceptional slopes, `(r, 'T')` for
    /// toroidal ones and certificate tuples for boundary slopes.
    pub fn annotated_list(&self) -> String {
        let d = self.to_dataset().expect("generated datasets are well formed");
        let mut items: Vec<(Ratio<i64>, String)> = vec![];
        for e in &d.exceptional {
            if e.tag != SlopeTag::Toroidal {
                items.push((value(&e.slope), e.slope.to_string()));
            }
        }
        for b in &d.boundary {
            items.push((value(&b.slope), format!("({}, '{}')", b.slope, b.certs)));
        }
        items.sort_by_key(|(v, _)| *v);
        let parts: Vec<String> = items.into_iter().map(|(_, s)| s).collect();
        format!("[{}]", parts.join(", "))
    }

    /// The reflected knot's table.
    pub fn mirror(&self) -> Self {
        let flip = |v: &[AnnotatedSlope]| {
            v.iter()
                .rev()
                .map(|a| AnnotatedSlope {
                    slope: a.slope.mirror(),
                    mark: a.mark,
                })
                .collect()
        };
        Self {
            name: self.name.clone(),
            exceptional: flip(&self.exceptional),
            boundary_extra: flip(&self.boundary_extra),
            boundary_complete: self.boundary_complete,
            hyperbolic_assumed: self.hyperbolic_assumed,
            notes: self.notes.clone(),
        }
    }

    /// Every slope translated by the integer `k`.
    pub fn shifted(&self, k: i64) -> Result<Self, FamilyError> {
        let shift = |v: &[AnnotatedSlope]| -> Result<Vec<AnnotatedSlope>, FamilyError> {
            v.iter()
                .map(|a| {
                    Ok(AnnotatedSlope {
                        slope: a.slope.checked_add_integer(k)?,
                        mark: a.mark,
                    })
                })
                .collect()
        };
        Ok(Self {
            exceptional: shift(&self.exceptional)?,
            boundary_extra: shift(&self.boundary_extra)?,
            ..self.clone()
        })
    }

    /// Input for the conjecture checkers. Non-integral table entries count
    /// as boundary slopes of the two-bridge/Montesinos algorithm.
    pub fn to_dataset(&self) -> Result<SlopeDataset, ConjectureError> {
        let mut exceptional = vec![];
        let mut boundary = vec![];
        for a in self.exceptional.iter().chain(&self.boundary_extra) {
            match a.mark {
                Mark::Tag(tag) => exceptional.push(ExceptionalSlope { slope: a.slope, tag }),
                Mark::NonIntegral => boundary.push(BoundarySlope {
                    slope: a.slope,
                    certs: Certificates::M,
                }),
                Mark::Boundary(certs) => boundary.push(BoundarySlope { slope: a.slope, certs }),
            }
        }
        SlopeDataset::new(self.name.clone(), exceptional, boundary, self.boundary_complete)
    }
}

/// Boundary slopes of a two-bridge knot in the sign convention of the tables.
///
/// The expansion formula is stated for the mirror of the 4-plat convention
/// used here, so its output is negated; every table with a toroidal slope
/// off zero confirms this orientation.
pub fn two_bridge_boundary_slopes(f: Fraction) -> Result<HtSlopes, CfError> {
    Ok(crate::contfrac::ht_boundary_slopes(f)?.negated())
}

fn with_two_bridge_boundary(d: FamilyDataset, f: Fraction) -> Result<FamilyDataset, FamilyError> {
    let ht = two_bridge_boundary_slopes(f)?;
    for (s, tag) in d.exceptional_slopes() {
        if tag == SlopeTag::Toroidal && !ht.contains(&s) {
            return Err(CfError::Calibration(s).into());
        }
    }
    let note = format!("boundary slopes from the expansions of {f}");
    Ok(d.with_boundary(boundary_entries(ht.slopes, Certificates::M), true)
        .note(note))
}

fn figure_eight() -> Result<FamilyDataset, FamilyError> {
    let d = FamilyDataset::new("figure-eight", table("-4T -3S -2S -1S 0T 1S 2S 3S 4T"));
    with_two_bridge_boundary(d, Fraction::new(2, 5)?)
}

fn twist_knot(n: i64, positive: bool) -> Result<FamilyDataset, FamilyError> {
    if n.abs() <= 2 {
        return Err(FamilyError::OutsideCases(format!(
            "twist knot needs |n| > 2, got n = {n}"
        )));
    }
    let b2 = if positive { 2 } else { -2 };
    let spec = if positive {
        "-4T -3S -2S -1S 0T"
    } else {
        "0T 1S 2S 3S 4T"
    };
    let cf = ContFrac::new(vec![2 * n, b2])?;
    let d = FamilyDataset::new(format!("K{cf}"), table(spec));
    with_two_bridge_boundary(d, cf_eval(&cf)?)
}

/// Knots `K_[b1, b2]` covered by the alternating classification, read off
/// the literal terms after reversal `[b1, b2] ~ [-b2, -b1]`.
fn two_bridge_pair(b1: i64, b2: i64) -> Result<FamilyDataset, FamilyError> {
    let outside = || FamilyError::OutsideCases(format!("K[{b1},{b2}]"));
    if (b1 == 2 && b2 == 2) || (b1 == -2 && b2 == -2) {
        return figure_eight();
    }
    if b1 % 2 == 0 && b2.abs() == 2 && b1.abs() > 4 {
        return twist_knot(b1 / 2, b2 > 0);
    }
    if b2 % 2 == 0 && b1.abs() == 2 && b2.abs() > 4 {
        // [b1, b2] ~ [-b2, -b1]
        return twist_knot(-b2 / 2, b1 < 0);
    }
    if b1.abs() <= 2 || b2.abs() <= 2 {
        return Err(outside());
    }
    let toroidal = match (b1 % 2 == 0, b2 % 2 == 0) {
        (true, true) => 0,
        (false, true) => 2 * b2,
        (true, false) => -2 * b1,
        (false, false) => return Err(CfError::EvenDenominator((b1 * b2 + 1).abs()).into()),
    };
    let cf = ContFrac::new(vec![b1, b2])?;
    let d = FamilyDataset::new(format!("K{cf}"), tagged(&[(toroidal, SlopeTag::Toroidal)]));
    with_two_bridge_boundary(d, cf_eval(&cf)?)
}

fn two_bridge_knot(cf: &ContFrac) -> Result<FamilyDataset, FamilyError> {
    let f = cf_eval(cf)?;
    if !f.is_knot() {
        return Err(CfError::EvenDenominator(f.alpha()).into());
    }
    if let [b1, b2] = cf.terms() {
        return two_bridge_pair(*b1, *b2);
    }
    // look for an equivalent two-term expansion
    let a = f.alpha();
    for target in [a - 1, -a - 1] {
        for b1 in (2..=a + 1).flat_map(|b| [b, -b]) {
            if target % b1 != 0 {
                continue;
            }
            let b2 = target / b1;
            if b2.abs() < 2 {
                continue;
            }
            let g = Fraction::new(b2, b1 * b2 + 1)?;
            if two_bridge_equivalent(f, g) {
                return two_bridge_pair(b1, b2)
                    .map(|d| d.note(format!("{cf} is equivalent to [{b1},{b2}]")))
                    .map(|mut d| {
                        d.name = format!("K{cf}");
                        d
                    });
            }
        }
    }
    Err(FamilyError::OutsideCases(format!("K{cf}")))
}

fn pretzel_alternating(q: [i64; 3]) -> Result<FamilyDataset, FamilyError> {
    let name = format!("P({},{},{})", q[0], q[1], q[2]);
    if q.iter().any(|x| x.abs() <= 1) {
        return Err(FamilyError::OutsideCases(format!(
            "{name}: parameters must avoid 0 and +-1"
        )));
    }
    if !(q.iter().all(|&x| x > 0) || q.iter().all(|&x| x < 0)) {
        return Err(FamilyError::OutsideCases(format!(
            "{name}: mixed signs are not alternating"
        )));
    }
    let evens: Vec<usize> = (0..3).filter(|&i| q[i] % 2 == 0).collect();
    let d = match evens.as_slice() {
        [] => {
            // one checkerboard surface is the genus-one Seifert surface, the
            // other has slope twice the crossing number
            let s: i64 = q.iter().sum();
            FamilyDataset::new(name, tagged(&[(0, SlopeTag::Toroidal)]))
                .with_boundary(boundary_entries([Slope::integer(2 * s)], Certificates::M), false)
                .note("second boundary slope from the non-orientable checkerboard surface")
        }
        [e] => {
            let odd: i64 = (0..3).filter(|i| i != e).map(|i| q[i]).sum();
            FamilyDataset::new(name, tagged(&[(2 * odd, SlopeTag::Toroidal)]))
                .with_boundary(boundary_entries([Slope::integer(0)], Certificates::L), false)
                .note(format!("even parameter {} moved first", q[*e]))
        }
        _ => return Err(FamilyError::OutsideCases(format!("{name} is a link"))),
    };
    Ok(d)
}

/// Tables for the alternating knots with non-trivial exceptional slopes.
pub fn alternating_slopes(k: &KnotFamily) -> Result<FamilyDataset, FamilyError> {
    match k {
        KnotFamily::FigureEight => figure_eight(),
        KnotFamily::TwistKnot { n, positive } => twist_knot(*n, *positive),
        KnotFamily::TwoBridgeKnot(cf) => two_bridge_knot(cf),
        KnotFamily::Pretzel(q) => pretzel_alternating(*q),
        other => Err(FamilyError::OutsideCases(format!(
            "{} is not in the alternating list",
            other.name()
        ))),
    }
}

/// Sorted fractional parts and the summed integer parts of the tangles;
/// equal keys mean the same length-three Montesinos knot.
fn montesinos_key(tangles: &[Fraction]) -> (Vec<Ratio<i64>>, i64) {
    let mut fr = vec![];
    let mut e = 0;
    for t in tangles {
        let r = t.to_ratio();
        let fl = r.floor();
        e += fl.to_integer();
        fr.push(r - fl);
    }
    fr.sort();
    (fr, e)
}

/// Name, tangles `p/q` and table.
type MontesinosRow = (&'static str, [(i64, i64); 3], &'static str);

/// The length-three non-alternating Montesinos knots with exceptional
/// fillings, besides the `P(-2, 3, 2n+1)` family.
const MONTESINOS_TABLES: [MontesinosRow; 13] = [
    ("P(-2,3,7)", [(-1, 2), (1, 3), (1, 7)], "16T 17S 18S 37/2T 19S 20T"),
    ("P(-3,3,3)", [(-1, 3), (1, 3), (1, 3)], "0T 1S 2T"),
    ("P(-3,3,4)", [(-1, 3), (1, 3), (1, 4)], "0T 1S 8/5NI"),
    ("P(-3,3,5)", [(-1, 3), (1, 3), (1, 5)], "0T 1S 4/3NI"),
    ("P(-3,3,6)", [(-1, 3), (1, 3), (1, 6)], "0T 1S 8/7NI"),
    ("M(-1/2,1/3,2/5)", [(-1, 2), (1, 3), (2, 5)], "8/3NI 3S 4S 5S 6T"),
    ("M(-1/2,1/3,2/7)", [(-1, 2), (1, 3), (2, 7)], "-2T -1S 0S 1S 3/2NI"),
    ("M(-1/2,1/3,2/9)", [(-1, 2), (1, 3), (2, 9)], "3/2NI 2S 3S 4S 5T"),
    ("M(-1/2,1/3,2/11)", [(-1, 2), (1, 3), (2, 11)], "-3T -2S -1S 0T"),
    ("M(-1/2,1/5,2/5)", [(-1, 2), (1, 5), (2, 5)], "32/5NI 7S 8S 9T"),
    ("M(-1/2,1/7,2/5)", [(-1, 2), (1, 7), (2, 5)], "72/7NI 11S 12T"),
    ("M(-2/3,1/3,2/5)", [(-2, 3), (1, 3), (2, 5)], "-6T -5S -4T"),
    ("P(-3,3,7)", [(-1, 3), (1, 3), (1, 7)], "0T 1T"),
];

const TOROIDAL_ONLY_TABLE: MontesinosRow = ("M(-2/3,1/3,1/4)", [(-2, 3), (1, 3), (1, 4)], "12T 13T");

/// Table for `P(-2, 3, 2n+1)`, `n > 3` or `n < -1`.
fn pretzel_23(n: i64) -> Result<FamilyDataset, FamilyError> {
    let name = format!("P(-2,3,{})", 2 * n + 1);
    let int = |k: i64, t: SlopeTag| AnnotatedSlope {
        slope: Slope::integer(k),
        mark: Mark::Tag(t),
    };
    let base = 4 * n + 6;
    let mut rows = vec![
        int(base, SlopeTag::Seifert),
        int(base + 1, SlopeTag::Seifert),
        int(base + 2, SlopeTag::Toroidal),
    ];
    let d = if n > 3 {
        let ni = Slope::new(base * (n - 1) + 1, n - 1)?;
        rows.push(AnnotatedSlope {
            slope: ni,
            mark: Mark::NonIntegral,
        });
        FamilyDataset::new(name, rows).with_boundary(
            boundary_entries([Slope::integer(0), Slope::integer(16)], Certificates::M),
            false,
        )
    } else if n < -1 {
        let ni = Slope::new(base * (2 * n + 1) + 2, 2 * n + 1)?;
        rows.push(AnnotatedSlope {
            slope: ni,
            mark: Mark::NonIntegral,
        });
        FamilyDataset::new(name, rows)
    } else {
        return Err(FamilyError::UnsupportedFamily(name));
    };
    Ok(d.note(format!("n = {n}")))
}

fn frac(p: i64, q: i64) -> Fraction {
    Fraction::new(p, q).expect("valid tangle")
}

/// Match a tangle key against the tabulated knots (not their mirrors).
fn montesinos_lookup(key: &(Vec<Ratio<i64>>, i64)) -> Result<Option<FamilyDataset>, FamilyError> {
    for (name, t, spec) in MONTESINOS_TABLES.iter().chain([&TOROIDAL_ONLY_TABLE]) {
        let tangles: Vec<Fraction> = t.iter().map(|&(p, q)| frac(p, q)).collect();
        if montesinos_key(&tangles) == *key {
            return Ok(Some(FamilyDataset::new(*name, table(spec))));
        }
    }
    // P(-2, 3, 2n+1): parts 1/2, 1/3 and 1/q (n > 0) or (q-1)/q (n < 0)
    let (parts, e) = key;
    let mut rest = parts.clone();
    for x in [Ratio::new(1, 2), Ratio::new(1, 3)] {
        match rest.iter().position(|y| *y == x) {
            Some(i) => {
                rest.remove(i);
            }
            None => return Ok(None),
        }
    }
    let third = rest[0];
    let q = *third.denom();
    if q % 2 == 0 || q < 3 {
        return Ok(None);
    }
    let n = if *e == -1 && *third.numer() == 1 {
        (q - 1) / 2
    } else if *e == -2 && *third.numer() == q - 1 {
        (-q - 1) / 2
    } else {
        return Ok(None);
    };
    pretzel_23(n).map(Some)
}

/// Tables for the non-alternating Montesinos knots with exceptional slopes.
pub fn montesinos_slopes(k: &KnotFamily) -> Result<FamilyDataset, FamilyError> {
    let tangles: Vec<Fraction> = match k {
        KnotFamily::Pretzel(q) => {
            if q.iter().any(|x| x.abs() <= 1) {
                return Err(FamilyError::OutsideCases(format!(
                    "{}: parameters must avoid 0 and +-1",
                    k.name()
                )));
            }
            q.iter().map(|&x| frac(1, x)).collect()
        }
        KnotFamily::Montesinos(t) => t.clone(),
        other => return Err(FamilyError::UnsupportedFamily(other.name())),
    };
    let name = k.name();
    if tangles.iter().any(|t| t.alpha() == 1) {
        return Err(FamilyError::OutsideCases(format!(
            "{name}: integer tangles shorten the length"
        )));
    }
    if tangles.len() >= 4 {
        return Ok(FamilyDataset::new(name, vec![]).note("length four or more: no non-trivial exceptional slopes"));
    }
    if tangles.len() < 3 {
        return Err(FamilyError::OutsideCases(format!(
            "{name}: length below three is two-bridge"
        )));
    }
    if let Some(d) = montesinos_lookup(&montesinos_key(&tangles))? {
        let table_name = d.name.clone();
        let mut d = d.note(format!("equivalent to {table_name}"));
        d.name = name;
        return Ok(d);
    }
    let mirrored: Vec<Fraction> = tangles.iter().map(|t| t.mirror()).collect();
    if let Some(d) = montesinos_lookup(&montesinos_key(&mirrored))? {
        let table_name = d.name.clone();
        let mut d = d.mirror().note(format!("mirror of {table_name}"));
        d.name = name;
        return Ok(d);
    }
    Err(FamilyError::UnsupportedFamily(name))
}

fn seifert_w1(u: i64) -> Result<Vec<AnnotatedSlope>, FamilyError> {
    use SlopeTag::*;
    Ok(match u {
        0 | -1 => return Err(FamilyError::NonHyperbolic(u)),
        -2 => tagged(&[
            (-4, Toroidal),
            (-3, Seifert),
            (-2, Seifert),
            (-1, Seifert),
            (0, Toroidal),
        ]),
        1 => tagged(&[(-2, Toroidal), (-1, Seifert), (0, Seifert), (1, Seifert), (2, Toroidal)]),
        _ => tagged(&[(u - 2, Toroidal), (u - 1, Seifert), (u, Seifert), (u + 1, Toroidal)]),
    })
}

fn negate(v: Vec<AnnotatedSlope>) -> Vec<AnnotatedSlope> {
    v.into_iter()
        .rev()
        .map(|a| AnnotatedSlope {
            slope: a.slope.mirror(),
            mark: a.mark,
        })
        .collect()
}

/// Component slopes of `L_[a, b]` for odd `a >= 3`, odd `|b| >= 3`.
fn seifert_table(a: i64, b: i64) -> Result<(Vec<AnnotatedSlope>, Option<&'static str>), FamilyError> {
    use SlopeTag::*;
    if a == 3 {
        return Ok((seifert_w1((b - 1) / 2)?, None));
    }
    if b == 3 {
        // L_[2w+1, 3] is the mirror of L_[3, 2w+1]
        return Ok((negate(seifert_w1((a - 1) / 2)?), None));
    }
    if b == -3 {
        // L_[2w+1, -3] ~ L_[3, 2(-w-1)+1]
        return Ok((
            seifert_w1((-a - 1) / 2)?,
            Some("per footnote correction: [2w+1,-3] ~ [3,-2w-1]"),
        ));
    }
    let (w, u) = ((a - 1) / 2, (b - 1) / 2);
    let c = u - w;
    Ok((tagged(&[(c - 1, Toroidal), (c, Seifert), (c + 1, Toroidal)]), None))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkMatch {
    /// Equivalent to `L_[a, b]` (or its mirror) with Seifert fillings.
    Seifert { a: i64, b: i64, mirror: bool },
    /// Equivalent to `L_[2w, v, 2u]` (or its mirror) with one toroidal filling.
    ToroidalOnly { w: i64, v: i64, u: i64, mirror: bool },
}

/// Every tabulated form equivalent to `L_f`, Seifert forms first.
pub fn link_matches(f: Fraction) -> Result<Vec<LinkMatch>, FamilyError> {
    if f.is_knot() {
        return Err(CfError::OddDenominator(f.alpha()).into());
    }
    let alpha = f.alpha();
    let mut out = vec![];
    let side = |g: Fraction| {
        if two_bridge_equivalent(f, g) {
            Some(false)
        } else if two_bridge_equivalent(f, g.mirror()) {
            Some(true)
        } else {
            None
        }
    };
    for target in [alpha - 1, -alpha - 1] {
        for a in (3..=target.abs()).step_by(2) {
            if target % a != 0 {
                continue;
            }
            let b = target / a;
            if b.abs() < 3 || b % 2 == 0 {
                continue;
            }
            if let Some(mirror) = side(Fraction::new(b, a * b + 1)?) {
                out.push(LinkMatch::Seifert { a, b, mirror });
            }
        }
    }
    // [2w, v, 2u] has denominator |2(2wvu + w + u)|
    let h = alpha / 2;
    let mut w = 1;
    while 3 * w <= h + 2 || w == 1 {
        let umax = (h + w) / (2 * w - 1) + 1;
        for u in (-umax..=umax).filter(|u| *u != 0) {
            for rhs in [h, -h] {
                let num = rhs - w - u;
                let den = 2 * w * u;
                if num % den != 0 {
                    continue;
                }
                let v = num / den;
                if claim1_row(w, v, u).is_err() {
                    continue;
                }
                let g = cf_eval(&claim1_normalize(w, v, u)?)?;
                if let Some(mirror) = side(g) {
                    out.push(LinkMatch::ToroidalOnly { w, v, u, mirror });
                }
            }
        }
        w += 1;
    }
    Ok(out)
}

impl LinkMatch {
    pub fn is_mirror(&self) -> bool {
        matches!(
            self,
            LinkMatch::Seifert { mirror: true, .. } | LinkMatch::ToroidalOnly { mirror: true, .. }
        )
    }

    /// The tabulated form, e.g. `[3,7]` or `[4,2,6]`.
    pub fn form(&self) -> String {
        match *self {
            LinkMatch::Seifert { a, b, .. } => format!("[{a},{b}]"),
            LinkMatch::ToroidalOnly { w, v, u, .. } => format!("[{},{},{}]", 2 * w, v, 2 * u),
        }
    }

    /// Component slopes implied by this match.
    pub fn table(&self) -> Result<(Vec<AnnotatedSlope>, Option<&'static str>), FamilyError> {
        let (rows, note) = match *self {
            LinkMatch::Seifert { a, b, .. } => seifert_table(a, b)?,
            LinkMatch::ToroidalOnly { w, u, .. } => (tagged(&[(-w - u, SlopeTag::Toroidal)]), None),
        };
        Ok((if self.is_mirror() { negate(rows) } else { rows }, note))
    }
}

fn link_fraction_slopes(f: Fraction, name: String) -> Result<FamilyDataset, FamilyError> {
    let matches = link_matches(f)?;
    let first = matches.first().ok_or_else(|| FamilyError::OutsideCases(name.clone()))?;
    let (rows, extra) = first.table()?;
    let prefix = if first.is_mirror() {
        "mirror of"
    } else {
        "equivalent to"
    };
    let mut d = FamilyDataset::new(name, rows).note(format!("{prefix} L{}", first.form()));
    if let Some(n) = extra {
        d = d.note(n);
    }
    Ok(d)
}

/// Exceptional slopes of a component of the two-bridge link `L_cf`.
pub fn link_component_slopes(cf: &ContFrac) -> Result<FamilyDataset, FamilyError> {
    let f = cf_eval(cf)?;
    let v = f.to_ratio();
    if v.numer().abs() >= *v.denom() {
        return Err(CfError::OutOfUnitInterval(f.to_string()).into());
    }
    link_fraction_slopes(f, format!("L{cf}"))
}

/// `L_[3, 2u+1](r, *)` is the filling `N(-1/(u+1), r-u-1)` of the magic manifold.
pub fn magic_filling_params(u: i64, r: Slope) -> Result<(Slope, Slope), FamilyError> {
    if u == 0 || u == -1 {
        return Err(FamilyError::NonHyperbolic(u));
    }
    let first = Slope::new(-1, u + 1)?;
    let second = r.checked_add_integer(-u - 1)?;
    Ok((first, second))
}

/// Whether `r` is exceptional for a component of `L_[3, 2u+1]`, read off the
/// second filling parameter.
pub fn magic_exceptional(u: i64, r: Slope) -> Result<bool, FamilyError> {
    let (_, x) = magic_filling_params(u, r)?;
    Ok(match x.as_integer() {
        Some(k) if (-3..=0).contains(&k) => true,
        Some(1) => u == -2,
        Some(-4) => u == 1,
        _ => false,
    })
}

/// Slopes of `K(f; n)`: the component slopes of `L_f` shifted by `n l^2`.
pub fn torti_rational_slopes(f: Fraction, n: i64) -> Result<FamilyDataset, FamilyError> {
    if n < 4 {
        return Err(FamilyError::TwistTooSmall(n));
    }
    if f.is_knot() {
        return Err(CfError::OddDenominator(f.alpha()).into());
    }
    let cf = expansion_of(f)?;
    let l = linking_number(&cf)?;
    let shift = l
        .checked_mul(l)
        .and_then(|x| x.checked_mul(n))
        .ok_or(crate::error::SlopeError::Overflow)?;
    let comp = link_fraction_slopes(f, format!("L{cf}"))?;
    // a knot in the sphere: its Seifert surface gives the longitude
    let mut d = comp
        .shifted(shift)?
        .with_boundary(boundary_entries([Slope::integer(0)], Certificates::L), false);
    d.name = format!("K({f};{n})");
    d.notes.push(format!("linking number {l}, shift n*l^2 = {shift}"));
    Ok(d)
}

/// Dispatch a family to its generator.
pub fn generate(k: &KnotFamily) -> Result<FamilyDataset, FamilyError> {
    match k {
        KnotFamily::FigureEight | KnotFamily::TwistKnot { .. } | KnotFamily::TwoBridgeKnot(_) => alternating_slopes(k),
        KnotFamily::Pretzel(q) => {
            if q.iter().all(|&x| x > 0) || q.iter().all(|&x| x < 0) {
                alternating_slopes(k)
            } else {
                montesinos_slopes(k)
            }
        }
        KnotFamily::Montesinos(_) => montesinos_slopes(k),
        KnotFamily::TwoBridgeLinkComponent(cf) => link_component_slopes(cf),
        KnotFamily::TortiRational { f, n } => torti_rational_slopes(*f, *n),
    }
}

/// Every tabulated family instance, with parameterized families sampled.
pub fn catalog() -> Vec<KnotFamily> {
    let mut out = vec![KnotFamily::FigureEight];
    for n in [-6, -5, -4, -3, 3, 4, 5, 6] {
        for positive in [true, false] {
            out.push(KnotFamily::TwistKnot { n, positive });
        }
    }
    for t in [[4, 4], [4, -6], [-6, 8], [3, 4], [5, -4], [-7, 6], [4, 3], [6, -5]] {
        out.push(KnotFamily::TwoBridgeKnot(
            ContFrac::new(t.to_vec()).expect("nonzero terms"),
        ));
    }
    for q in [[3, 5, 7], [-3, -5, -3], [2, 3, 5], [-4, -3, -7], [3, 6, 5]] {
        out.push(KnotFamily::Pretzel(q));
    }
    for n in [-3, -2, 4, 5] {
        out.push(KnotFamily::Pretzel([-2, 3, 2 * n + 1]));
    }
    for (_, t, _) in MONTESINOS_TABLES.iter().chain([&TOROIDAL_ONLY_TABLE]) {
        let tangles: Vec<Fraction> = t.iter().map(|&(p, q)| frac(p, q)).collect();
        if tangles.iter().all(|f| f.beta().abs() == 1) {
            let q: Vec<i64> = tangles.iter().map(|f| f.beta() * f.alpha()).collect();
            out.push(KnotFamily::Pretzel([q[0], q[1], q[2]]));
        } else {
            out.push(KnotFamily::Montesinos(tangles));
        }
    }
    for t in [[5, 5], [3, -3], [3, 7], [3, 3], [7, -9], [5, 3], [9, -3]] {
        out.push(KnotFamily::TwoBridgeLinkComponent(
            ContFrac::new(t.to_vec()).expect("nonzero terms"),
        ));
    }
    for t in [[4, 2, 6], [6, 3, -4], [4, -3, 6]] {
        out.push(KnotFamily::TwoBridgeLinkComponent(
            ContFrac::new(t.to_vec()).expect("nonzero terms"),
        ));
    }
    for n in 4..=8 {
        out.push(KnotFamily::TortiRational { f: frac(3, 8), n });
    }
    out.push(KnotFamily::TortiRational { f: frac(5, 26), n: 4 });
    out
}
