use thiserror::Error;

use crate::slope::Slope;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("0/0 is not a slope")]
    Undefined,
    #[error("the meridian 1/0 is not allowed here")]
    Meridian,
    #[error("cannot parse slope literal {0:?}")]
    Parse(String),
    #[error("empty interval [{0}, {1}]")]
    EmptyInterval(Slope, Slope),
    #[error("integer overflow in slope arithmetic")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("continued fraction has no terms")]
    Empty,
    #[error("continued fraction {0:?} has a leading or trailing zero")]
    BoundaryZero(Vec<i64>),
    #[error("division by zero evaluating suffix {0:?}")]
    DivisionByZero(Vec<i64>),
    #[error("integer overflow evaluating {0:?}")]
    Overflow(Vec<i64>),
    #[error("cannot parse continued fraction literal {0:?}")]
    Parse(String),
    #[error("cannot parse fraction literal {0:?}")]
    FractionParse(String),
    #[error("fraction needs a positive denominator, got {0}/{1}")]
    BadFraction(i64, i64),
    #[error("(w, v, u) = ({0}, {1}, {2}) is outside the simple-form table's hypothesis")]
    Claim1Hypothesis(i64, i64, i64),
    #[error("{0:?} is not a simple continued fraction with end terms different from 1")]
    NotNormalForm(Vec<i64>),
    #[error("denominator {0} is even: that fraction describes a two-component link")]
    EvenDenominator(i64),
    #[error("denominator {0} is odd: that fraction describes a knot")]
    OddDenominator(i64),
    #[error("no expansion with all terms even was found for {0}")]
    NoEvenExpansion(String),
    #[error("expected exactly one all-even expansion for {0}, found {1}")]
    AmbiguousEvenExpansion(String, usize),
    #[error("fraction {0} must lie strictly between 0 and 1")]
    OutOfUnitInterval(String),
    #[error("neither sign convention places {0} among the boundary slopes")]
    Calibration(Slope),
    #[error("fraction {0} is the unknot or unlink")]
    Trivial(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Cf(#[from] CfError),
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error("parameters {0} fall outside every tabulated case")]
    OutsideCases(String),
    #[error("unsupported family {0}: only the tabulated Montesinos cases are available")]
    UnsupportedFamily(String),
    #[error("u = {0} gives a non-hyperbolic two-bridge link")]
    NonHyperbolic(i64),
    #[error("twist count n = {0} must be at least 4")]
    TwistTooSmall(i64),
    #[error("cannot parse family descriptor {0:?}")]
    Descriptor(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConjectureError {
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error("dataset {0} has no non-trivial exceptional slopes")]
    NoExceptional(String),
    #[error("dataset {name} must have exactly one exceptional slope, found {found}")]
    NotSingle { name: String, found: usize },
    #[error("dataset {0}: {1}")]
    Malformed(String, String),
    #[error("cyclic slope {0} must be an integer")]
    NonIntegralCyclic(Slope),
    #[error("dataset {0} is not witnessed by two non-integral slopes")]
    NotCaseThree(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error("at byte {pos}: {msg}")]
    List { pos: usize, msg: String },
    #[error("unknown certificate letter {0:?}")]
    Certificate(char),
    #[error("transform is underdetermined: need two pairs with distinct SnapPy slopes")]
    Underdetermined,
    #[error("no affine meridian-fixing transform fits the pairs ({0})")]
    NotAffine(String),
    #[error("row {row}: {msg}")]
    Row { row: usize, msg: String },
    #[error("csv: {0}")]
    Csv(String),
    #[error("unknown file kind {0:?}")]
    Kind(String),
    #[error("{0} repeats its standard coordinates; no SnapPy coordinates to transform")]
    DuplicateCoordinates(String),
    #[error("{0}: {1}")]
    Record(String, String),
    #[error(transparent)]
    Dataset(#[from] ConjectureError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormError {
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error("invalid norm data: {0}")]
    Invalid(String),
}
