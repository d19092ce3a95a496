//! Census rows: annotated slope lists in standard and SnapPy coordinates,
//! the coordinate change between them, CSV files and batch verification.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::conjectures::{check_conj1, check_conj6, Status, Verdict};
use crate::dataset::{BoundarySlope, Certificates, ExceptionalSlope, SlopeDataset};
use crate::error::{CensusError, ConjectureError, SlopeError};
use crate::families::{catalog, generate, KnotFamily};
use crate::slope::{Slope, SlopeTag};
use crate::sweep::Exec;

/// One item of an annotated list: a bare exceptional slope when `certs`
/// is empty, otherwise a boundary slope with its certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub slope: Slope,
    pub certs: Certificates,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.certs.is_empty() {
            write!(f, "{}", self.slope)
        } else {
            write!(f, "({}, '{}')", self.slope, self.certs)
        }
    }
}

struct ListParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> ListParser<'a> {
    fn err(&self, msg: impl Into<String>) -> CensusError {
        CensusError::List {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), CensusError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected {c:?}")))
        }
    }

    fn slope(&mut self) -> Result<Slope, CensusError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '-' | '+' | '/')))
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return Err(self.err("expected a slope"));
        }
        let tok = &self.src[start..start + len];
        let s = tok
            .parse::<Slope>()
            .map_err(|e| self.err(format!("bad slope {tok:?}: {e}")))?;
        if s.is_meridian() {
            return Err(self.err("the meridian cannot be listed"));
        }
        self.pos += len;
        Ok(s)
    }

    fn certs(&mut self) -> Result<Certificates, CensusError> {
        self.skip_ws();
        let quote = match self.peek() {
            Some(q @ ('\'' | '"')) => q,
            _ => return Err(self.err("expected a quoted certificate string")),
        };
        self.pos += 1;
        let end = self.src[self.pos..]
            .find(quote)
            .ok_or_else(|| self.err("unterminated certificate string"))?;
        let letters = &self.src[self.pos..self.pos + end];
        if letters.is_empty() {
            return Err(self.err("empty certificate string"));
        }
        if let Some(i) = letters.find(|c: char| !"CKLMT".contains(c)) {
            self.pos += i;
            let c = letters[i..].chars().next().expect("found above");
            return Err(self.err(format!("unknown certificate letter {c:?}")));
        }
        let certs = letters.parse()?;
        self.pos += end + 1;
        Ok(certs)
    }

    fn entry(&mut self) -> Result<Entry, CensusError> {
        self.skip_ws();
        if self.peek() == Some('(') {
            self.pos += 1;
            let slope = self.slope()?;
            self.expect(',')?;
            let certs = self.certs()?;
            self.expect(')')?;
            Ok(Entry { slope, certs })
        } else {
            Ok(Entry {
                slope: self.slope()?,
                certs: Certificates::NONE,
            })
        }
    }

    fn list(&mut self) -> Result<Vec<Entry>, CensusError> {
        self.expect('[')?;
        let mut out = vec![];
        self.skip_ws();
        if self.peek() == Some(']') {
            self.pos += 1;
        } else {
            loop {
                out.push(self.entry()?);
                self.skip_ws();
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(']') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected ',' or ']'")),
                }
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.err("trailing characters"));
        }
        Ok(out)
    }
}

/// Parse `[(-2, 'T'), -1, 0, (2/3, 'C')]`; errors carry byte offsets.
pub fn parse_annotated_list(text: &str) -> Result<Vec<Entry>, CensusError> {
    ListParser { src: text, pos: 0 }.list()
}

/// Canonical form: `, ` separators and single-quoted certificates.
pub fn print_annotated_list(entries: &[Entry]) -> String {
    let parts: Vec<String> = entries.iter().map(|e| e.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// `standard = epsilon * snappy + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordTransform {
    pub epsilon: i64,
    pub offset: i64,
}

impl CoordTransform {
    pub const IDENTITY: CoordTransform = CoordTransform { epsilon: 1, offset: 0 };

    pub fn inverse(&self) -> Self {
        Self {
            epsilon: self.epsilon,
            offset: -self.epsilon * self.offset,
        }
    }
}

impl fmt::Display for CoordTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lead = if self.epsilon < 0 { "-" } else { "" };
        write!(f, "std = {lead}snappy")?;
        match self.offset {
            0 => Ok(()),
            c if c < 0 => write!(f, " - {}", -c),
            c => write!(f, " + {c}"),
        }
    }
}

pub fn apply_transform(t: CoordTransform, s: Slope) -> Result<Slope, CensusError> {
    if s.is_meridian() {
        return Err(SlopeError::Meridian.into());
    }
    let s = if t.epsilon < 0 { s.mirror() } else { s };
    Ok(s.checked_add_integer(t.offset)?)
}

/// Solve `std = epsilon * snappy + c` from `(snappy, std)` pairs and check
/// every pair against the solution.
pub fn infer_transform(pairs: &[(Slope, Slope)]) -> Result<CoordTransform, CensusError> {
    let mut rs = vec![];
    for (x, y) in pairs {
        if x.is_meridian() || y.is_meridian() {
            return Err(SlopeError::Meridian.into());
        }
        rs.push((x.to_ratio()?, y.to_ratio()?));
    }
    let (x1, y1) = *rs.first().ok_or(CensusError::Underdetermined)?;
    let &(x2, y2) = rs.iter().find(|(x, _)| *x != x1).ok_or(CensusError::Underdetermined)?;
    let eps = (y2 - y1) / (x2 - x1);
    let epsilon = if eps == Ratio::from_integer(1) {
        1
    } else if eps == Ratio::from_integer(-1) {
        -1
    } else {
        return Err(CensusError::NotAffine(format!("slope ratio {eps}")));
    };
    let c = y1 - x1 * epsilon;
    if !c.is_integer() {
        return Err(CensusError::NotAffine(format!("offset {c} is not an integer")));
    }
    let t = CoordTransform {
        epsilon,
        offset: c.to_integer(),
    };
    for (x, y) in &rs {
        if *x * epsilon + c != *y {
            return Err(CensusError::NotAffine(format!("pair ({x}, {y}) disagrees with {t}")));
        }
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileKind {
    /// No exceptional slopes besides toroidal ones; bare entries are toroidal.
    TorOnly,
    Verified,
    /// Carries three verification flags per row.
    Remaining,
}

impl FromStr for FileKind {
    type Err = CensusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "toronly" => Ok(FileKind::TorOnly),
            "verified" => Ok(FileKind::Verified),
            "remaining" => Ok(FileKind::Remaining),
            _ => Err(CensusError::Kind(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Coords {
    Standard,
    #[default]
    SnapPy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub name: String,
    pub kind: FileKind,
    pub std: Vec<Entry>,
    pub snappy: Vec<Entry>,
    pub knot_name: Option<String>,
    /// Conjecture 1, the strong form, either; `remaining` rows only.
    pub verified: Option<[bool; 3]>,
    /// The SnapPy column repeats the standard one because SnapPy's trivial
    /// slope is not `1/0` for this manifold.
    pub duplicate_coords: bool,
    /// Boundary list believed complete (small triangulation with
    /// A-polynomial coverage).
    #[serde(default)]
    pub flagged_complete: bool,
}

pub fn is_census_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some('m' | 's' | 'v' | 't' | 'o')) && !cs.as_str().is_empty() && cs.all(|c| c.is_ascii_digit())
}

impl CensusRecord {
    pub fn new(
        name: impl Into<String>,
        kind: FileKind,
        std: Vec<Entry>,
        snappy: Vec<Entry>,
        knot_name: Option<String>,
        verified: Option<[bool; 3]>,
    ) -> Result<Self, CensusError> {
        let name = name.into();
        let bad = |msg: &str| CensusError::Record(name.clone(), msg.to_string());
        if !is_census_name(&name) {
            return Err(bad("not a census name"));
        }
        if std.len() != snappy.len() {
            return Err(bad("standard and SnapPy lists differ in length"));
        }
        if std.iter().zip(&snappy).any(|(a, b)| a.certs != b.certs) {
            return Err(bad("standard and SnapPy certificates differ"));
        }
        if verified.is_some() != (kind == FileKind::Remaining) {
            return Err(bad("verification flags belong to remaining rows only"));
        }
        if kind == FileKind::TorOnly && std.iter().any(|e| !e.certs.is_empty() && e.certs != Certificates::T) {
            return Err(bad("toroidal-only rows list toroidal slopes only"));
        }
        let duplicate_coords = !std.is_empty() && std == snappy;
        Ok(Self {
            name,
            kind,
            std,
            snappy,
            knot_name: knot_name.filter(|k| !k.is_empty()),
            verified,
            duplicate_coords,
            flagged_complete: false,
        })
    }

    pub fn entries(&self, coords: Coords) -> &[Entry] {
        match coords {
            Coords::Standard => &self.std,
            Coords::SnapPy => &self.snappy,
        }
    }

    pub fn transform(&self) -> Result<CoordTransform, CensusError> {
        if self.duplicate_coords {
            return Err(CensusError::DuplicateCoordinates(self.name.clone()));
        }
        let pairs: Vec<(Slope, Slope)> = self
            .snappy
            .iter()
            .zip(&self.std)
            .map(|(x, y)| (x.slope, y.slope))
            .collect();
        infer_transform(&pairs)
    }

    /// Negate every slope in both columns.
    pub fn mirror(&self) -> Self {
        let neg = |v: &[Entry]| {
            v.iter()
                .map(|e| Entry {
                    slope: e.slope.mirror(),
                    certs: e.certs,
                })
                .collect()
        };
        Self {
            std: neg(&self.std),
            snappy: neg(&self.snappy),
            ..self.clone()
        }
    }

    /// Where the longitude (standard slope 0) sits in `coords`, if known.
    fn longitude(&self, coords: Coords) -> Option<Slope> {
        match coords {
            Coords::Standard => Some(Slope::integer(0)),
            Coords::SnapPy if self.duplicate_coords => Some(Slope::integer(0)),
            Coords::SnapPy => {
                let inv = self.transform().ok()?.inverse();
                apply_transform(inv, Slope::integer(0)).ok()
            }
        }
    }

    /// Conjecture-checker input. The Seifert surface of a hyperbolic knot is
    /// essential, so the longitude is added as an `L` boundary slope when
    /// its position is known.
    pub fn to_dataset(&self, coords: Coords) -> Result<SlopeDataset, CensusError> {
        let mut exceptional = vec![];
        let mut boundary = vec![];
        for e in self.entries(coords) {
            let toroidal = e.certs.is_toroidal() || (self.kind == FileKind::TorOnly && e.certs.is_empty());
            if toroidal {
                exceptional.push(ExceptionalSlope {
                    slope: e.slope,
                    tag: SlopeTag::Toroidal,
                });
            } else if e.certs.is_empty() {
                exceptional.push(ExceptionalSlope {
                    slope: e.slope,
                    tag: SlopeTag::ExceptionalUnclassified,
                });
            }
            if !e.certs.is_empty() {
                boundary.push(BoundarySlope {
                    slope: e.slope,
                    certs: e.certs,
                });
            }
        }
        if let Some(l) = self.longitude(coords) {
            boundary.push(BoundarySlope {
                slope: l,
                certs: Certificates::L,
            });
        }
        let complete = self.flagged_complete || self.std.iter().any(|e| e.certs.contains(Certificates::M));
        Ok(SlopeDataset::new(self.name.clone(), exceptional, boundary, complete)?)
    }
}

fn parse_flag(s: &str) -> Option<bool> {
    match s.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "y" => Some(true),
        "0" | "false" | "no" | "n" => Some(false),
        _ => None,
    }
}

fn parse_row(fields: &csv::StringRecord, kind: FileKind, row: usize) -> Result<CensusRecord, CensusError> {
    let field = |i: usize| fields.get(i).unwrap_or("");
    let at = |msg: String| CensusError::Row { row, msg };
    let (min, max) = if kind == FileKind::Remaining { (7, 7) } else { (3, 4) };
    if fields.len() < min || fields.len() > max {
        return Err(at(format!("expected {min} to {max} columns, found {}", fields.len())));
    }
    let std = parse_annotated_list(field(1)).map_err(|e| at(format!("standard column: {e}")))?;
    let snappy = parse_annotated_list(field(2)).map_err(|e| at(format!("SnapPy column: {e}")))?;
    let knot = fields.get(3).map(str::to_string);
    let verified = if kind == FileKind::Remaining {
        let mut flags = [false; 3];
        for (k, flag) in flags.iter_mut().enumerate() {
            *flag = parse_flag(field(4 + k)).ok_or_else(|| at(format!("bad flag {:?}", field(4 + k))))?;
        }
        Some(flags)
    } else {
        None
    };
    CensusRecord::new(field(0), kind, std, snappy, knot, verified).map_err(|e| at(e.to_string()))
}

/// Parse a census CSV file. Rows are independent; bad rows are reported
/// with their one-based line number and skipped.
pub fn parse_csv(text: &str, kind: FileKind) -> (Vec<CensusRecord>, Vec<CensusError>) {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = vec![];
    let mut errors = vec![];
    for (i, row) in rdr.records().enumerate() {
        let row_no = i + 1;
        match row {
            Err(e) => errors.push(CensusError::Csv(format!("row {row_no}: {e}"))),
            Ok(fields) => {
                let first = fields.get(0).unwrap_or("");
                if (i == 0 && first.eq_ignore_ascii_case("name")) || fields.iter().all(str::is_empty) {
                    continue;
                }
                match parse_row(&fields, kind, row_no) {
                    Ok(r) => records.push(r),
                    Err(e) => errors.push(e),
                }
            }
        }
    }
    (records, errors)
}

/// Emit records in the canonical CSV form read by [`parse_csv`].
pub fn write_csv(records: &[CensusRecord], kind: FileKind) -> Result<String, CensusError> {
    let mut w = csv::WriterBuilder::new().from_writer(vec![]);
    let csv_err = |e: csv::Error| CensusError::Csv(e.to_string());
    let mut header = vec!["name", "standard", "snappy", "knot"];
    if kind == FileKind::Remaining {
        header.extend(["conj1", "conj2", "either"]);
    }
    w.write_record(&header).map_err(csv_err)?;
    for r in records {
        let mut row = vec![
            r.name.clone(),
            print_annotated_list(&r.std),
            print_annotated_list(&r.snappy),
            r.knot_name.clone().unwrap_or_default(),
        ];
        if let Some(flags) = r.verified {
            row.extend(flags.iter().map(|f| if *f { "1".to_string() } else { "0".to_string() }));
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CensusError::Csv(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CensusError::Csv(e.to_string()))
}

/// Rows with printed data: v0319 and v1359 with both coordinate columns,
/// and s682 whose slopes are given in one coordinate system only. The s682
/// boundary slopes carry an assumed `C` certificate.
pub const MINI_DATASET_CSV: &str = r#"name,standard,snappy,knot
v0319,"[(-62, 'T'), -63, -64, (-194/3, 'C'), -65, (-206/3, 'C')]","[(-2, 'T'), -1, 0, (2/3, 'C'), 1, (14/3, 'C')]",
v1359,"[(121/2, 'CK'), 59, (176/3, 'C'), 58, (57, 'T')]","[(-5/2, 'CK'), -1, (-2/3, 'C'), 0, (1, 'T')]",
s682,"[(-3/2, 'C'), -1, (-1/3, 'C'), 0]","[(-3/2, 'C'), -1, (-1/3, 'C'), 0]",
"#;

pub fn mini_dataset() -> Vec<CensusRecord> {
    let (records, errors) = parse_csv(MINI_DATASET_CSV, FileKind::Verified);
    assert!(errors.is_empty(), "embedded rows parse: {errors:?}");
    records
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub holds: usize,
    pub unknown: usize,
    pub fails: usize,
}

impl Tally {
    fn add(&mut self, s: Status) {
        match s {
            Status::Holds => self.holds += 1,
            Status::Unknown => self.unknown += 1,
            Status::Fails => self.fails += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecordVerdict {
    pub name: String,
    pub exceptional: usize,
    pub toroidal_only: bool,
    pub conj1: Verdict,
    pub conj6: Verdict,
}

fn witness_text(v: &Verdict) -> String {
    let mut s = format!("{:?}", v.status);
    if let Some(c) = v.case_id {
        s.push_str(&format!(" case {c}"));
    }
    if let Some((a, b)) = v.witnesses {
        s.push_str(&format!(" ({a}, {b})"));
    }
    s
}

impl RecordVerdict {
    /// One text line: `v0319  conj1 Holds (-2, 14/3)  conj6 Holds case 2 (-2, 2/3)`.
    pub fn line(&self) -> String {
        format!(
            "{}  conj1 {}  conj6 {}",
            self.name,
            witness_text(&self.conj1),
            witness_text(&self.conj6)
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub records: Vec<RecordVerdict>,
    pub no_exceptional: usize,
    pub toroidal_only: usize,
    pub conj1: Tally,
    pub conj6: Tally,
    pub errors: Vec<String>,
}

impl CensusReport {
    pub fn has_fails(&self) -> bool {
        self.conj1.fails + self.conj6.fails > 0
    }

    pub fn summary(&self) -> String {
        let t = |t: &Tally| format!("{} holds, {} unknown, {} fails", t.holds, t.unknown, t.fails);
        format!(
            "{} records ({} without exceptional slopes, {} toroidal only, {} errors)\nconj1: {}\nconj6: {}",
            self.records.len(),
            self.no_exceptional,
            self.toroidal_only,
            self.errors.len(),
            t(&self.conj1),
            t(&self.conj6)
        )
    }
}

fn verify_one(d: &SlopeDataset) -> RecordVerdict {
    let conj6 = match check_conj6(d) {
        Ok(v) => v,
        Err(ConjectureError::NoExceptional(_)) => Verdict {
            status: Status::Holds,
            case_id: None,
            witnesses: None,
            reason: "vacuous: no non-trivial exceptional slopes".into(),
        },
        Err(e) => Verdict {
            status: Status::Unknown,
            case_id: None,
            witnesses: None,
            reason: e.to_string(),
        },
    };
    RecordVerdict {
        name: d.name.clone(),
        exceptional: d.exceptional.len(),
        toroidal_only: !d.exceptional.is_empty() && d.exceptional.iter().all(|e| e.tag == SlopeTag::Toroidal),
        conj1: check_conj1(d),
        conj6,
    }
}

/// Run both checkers on every dataset; records come out sorted by name.
pub fn verify_datasets(datasets: &[SlopeDataset], exec: Exec) -> CensusReport {
    let mut records = exec.map(datasets, verify_one);
    records.sort_by(|a, b| a.name.cmp(&b.name));
    let mut report = CensusReport::default();
    for r in &records {
        if r.exceptional == 0 {
            report.no_exceptional += 1;
        }
        if r.toroidal_only {
            report.toroidal_only += 1;
        }
        report.conj1.add(r.conj1.status);
        report.conj6.add(r.conj6.status);
    }
    report.records = records;
    report
}

/// Verify census records in SnapPy coordinates; conversion errors are
/// collected in the report rather than aborting the batch.
pub fn batch_verify(records: &[CensusRecord], exec: Exec) -> CensusReport {
    let converted = exec.map(records, |r| r.to_dataset(Coords::SnapPy));
    let mut datasets = vec![];
    let mut errors = vec![];
    for (r, d) in records.iter().zip(converted) {
        match d {
            Ok(d) => datasets.push(d),
            Err(e) => errors.push(format!("{}: {e}", r.name)),
        }
    }
    let mut report = verify_datasets(&datasets, exec);
    report.errors = errors;
    report
}

/// The embedded census rows together with every tabulated family knot.
pub fn mini_report(exec: Exec) -> CensusReport {
    let records = mini_dataset();
    let families: Vec<KnotFamily> = catalog()
        .into_iter()
        .filter(|k| !matches!(k, KnotFamily::TwoBridgeLinkComponent(_)))
        .collect();
    let mut datasets = vec![];
    let mut errors = vec![];
    for (r, d) in records.iter().zip(exec.map(&records, |r| r.to_dataset(Coords::SnapPy))) {
        match d {
            Ok(d) => datasets.push(d),
            Err(e) => errors.push(format!("{}: {e}", r.name)),
        }
    }
    let generated = exec.map(&families, |k| -> Result<SlopeDataset, String> {
        generate(k)
            .map_err(|e| e.to_string())?
            .to_dataset()
            .map_err(|e| e.to_string())
    });
    for (k, d) in families.iter().zip(generated) {
        match d {
            Ok(d) => datasets.push(d),
            Err(e) => errors.push(format!("{k}: {e}")),
        }
    }
    let mut report = verify_datasets(&datasets, exec);
    report.errors = errors;
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    #[test]
    fn list_examples() {
        let v = parse_annotated_list("[(-2, 'T'), -1, 0, (2/3, 'C'), 1, (14/3, 'C')]").unwrap();
        assert_eq!(v.len(), 6);
        assert_eq!(v[0].certs, Certificates::T);
        assert!(v[1].certs.is_empty());
        assert_eq!(v[5].slope, sl("14/3"));
        assert!(parse_annotated_list("[]").unwrap().is_empty());
        let v = parse_annotated_list("[(121/2, 'CK'), 59]").unwrap();
        assert_eq!(v[0].certs, Certificates::C.union(Certificates::K));
    }

    #[test]
    fn list_errors_have_positions() {
        assert!(matches!(
            parse_annotated_list("[(1, 'X')]"),
            Err(CensusError::List { pos: 6, .. })
        ));
        assert!(matches!(
            parse_annotated_list("[1, 2"),
            Err(CensusError::List { pos: 5, .. })
        ));
        assert!(matches!(
            parse_annotated_list("[(1 'T')]"),
            Err(CensusError::List { pos: 4, .. })
        ));
        assert!(matches!(parse_annotated_list("[1/0]"), Err(CensusError::List { .. })));
        assert!(matches!(
            parse_annotated_list("[a]"),
            Err(CensusError::List { pos: 1, .. })
        ));
    }

    #[test]
    fn transform_examples() {
        let t = infer_transform(&[(sl("-2"), sl("-62")), (sl("0"), sl("-64"))]).unwrap();
        assert_eq!(
            t,
            CoordTransform {
                epsilon: -1,
                offset: -64
            }
        );
        assert_eq!(t.to_string(), "std = -snappy - 64");
        assert_eq!(apply_transform(t, sl("2/3")).unwrap(), sl("-194/3"));
        assert_eq!(apply_transform(t, sl("14/3")).unwrap(), sl("-206/3"));
        let t = infer_transform(&[(sl("0"), sl("58")), (sl("1"), sl("57"))]).unwrap();
        assert_eq!(t.to_string(), "std = -snappy + 58");
        assert_eq!(apply_transform(t, sl("-2/3")).unwrap(), sl("176/3"));
        assert_eq!(apply_transform(CoordTransform::IDENTITY, sl("5/7")).unwrap(), sl("5/7"));
        assert_eq!(
            infer_transform(&[(sl("1"), sl("2"))]),
            Err(CensusError::Underdetermined)
        );
        assert!(matches!(
            infer_transform(&[(sl("0"), sl("0")), (sl("1"), sl("2"))]),
            Err(CensusError::NotAffine(_))
        ));
        assert!(matches!(
            infer_transform(&[(sl("0"), sl("0")), (sl("1"), sl("1")), (sl("2"), sl("3"))]),
            Err(CensusError::NotAffine(_))
        ));
    }

    #[test]
    fn mini_dataset_rows() {
        let rs = mini_dataset();
        assert_eq!(rs.len(), 3);
        assert!(rs[2].duplicate_coords);
        assert!(matches!(rs[2].transform(), Err(CensusError::DuplicateCoordinates(_))));
        assert_eq!(rs[0].transform().unwrap().offset, -64);
        let report = batch_verify(&rs, Exec::Sequential);
        assert_eq!(report.conj1.holds, 3, "{report:?}");
        assert_eq!(report.conj6.holds, 3);
    }

    #[test]
    fn record_validation() {
        let e = |s: &str| parse_annotated_list(s).unwrap();
        assert!(CensusRecord::new("x12", FileKind::Verified, vec![], vec![], None, None).is_err());
        assert!(CensusRecord::new("m004", FileKind::Verified, e("[1]"), e("[]"), None, None).is_err());
        assert!(CensusRecord::new("m004", FileKind::Verified, e("[(1, 'C')]"), e("[(1, 'K')]"), None, None).is_err());
        assert!(CensusRecord::new("m004", FileKind::Remaining, e("[]"), e("[]"), None, None).is_err());
        assert!(CensusRecord::new("m004", FileKind::TorOnly, e("[(1, 'C')]"), e("[(1, 'C')]"), None, None).is_err());
    }

    #[test]
    fn toroidal_only_row() {
        let e = |s: &str| parse_annotated_list(s).unwrap();
        let r = CensusRecord::new("t12345", FileKind::TorOnly, e("[-1, 0, 1]"), e("[3, 2, 1]"), None, None).unwrap();
        let report = batch_verify(&[r], Exec::Sequential);
        assert_eq!(report.toroidal_only, 1);
        let v = &report.records[0].conj6;
        assert_eq!((v.status, v.case_id), (Status::Holds, Some(1)));
        assert_eq!(v.witnesses, Some((sl("1"), sl("3"))));
        let empty = CensusRecord::new("m003", FileKind::TorOnly, vec![], vec![], None, None).unwrap();
        let report = batch_verify(&[empty], Exec::Sequential);
        assert_eq!(report.no_exceptional, 1);
        assert_eq!(report.conj6.holds, 1);
    }

    #[test]
    fn mini_report_holds_everywhere() {
        let report = mini_report(Exec::Sequential);
        assert!(report.errors.is_empty(), "{:?}", report.errors);
        for r in &report.records {
            assert_eq!(r.conj1.status, Status::Holds, "{}", r.line());
            assert_eq!(r.conj6.status, Status::Holds, "{}", r.line());
        }
    }
}
