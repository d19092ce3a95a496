//! Width arguments with the Culler-Shalen norm that bound finite-filling
//! slopes near the extreme boundary slopes.
//!
//! Only the scalars the argument needs are modeled: the minimal norm `s`,
//! the meridian norm `m`, the norm `t` of the filling class, the greatest
//! finite boundary slope `r_M` and the filling slope `n` or `n/2`.

use num_rational::Ratio;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::NormError;
use crate::slope::Slope;
use crate::sweep::Exec;

type Q = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    /// Filling slope `n`.
    IntegerSlope,
    /// Filling slope `n/2` with `n` odd.
    HalfIntegerSlope,
}

impl Parity {
    fn denominator(self) -> i64 {
        match self {
            Parity::IntegerSlope => 1,
            Parity::HalfIntegerSlope => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormData {
    #[serde(with = "qstr")]
    pub s: Q,
    #[serde(with = "qstr")]
    pub m: Q,
    #[serde(with = "qstr")]
    pub t: Q,
    #[serde(with = "qstr")]
    pub r_max: Q,
    pub n: i64,
    pub parity: Parity,
}

/// Rationals as `"p/q"` strings.
mod qstr {
    use super::Q;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        String::deserialize(d)?.trim().parse().map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::Q;
        use serde::ser::SerializeSeq;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }
    }
}

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn finite(s: &Slope) -> Result<Q, NormError> {
    s.to_ratio().map_err(NormError::from)
}

impl NormData {
    /// Validated data; the filling slope must exceed `r_max`.
    pub fn new(s: Q, m: Q, t: Q, r_max: Slope, n: i64, parity: Parity) -> Result<Self, NormError> {
        let bad = |msg: String| Err(NormError::Invalid(msg));
        let r_max = finite(&r_max)?;
        if s < q(4) {
            return bad(format!("minimal norm {s} is below 4"));
        }
        if m < s {
            return bad(format!("meridian norm {m} is below the minimal norm {s}"));
        }
        if t < s || t > s * 3 {
            return bad(format!("filling norm {t} is outside [{s}, {}]", s * 3));
        }
        if parity == Parity::HalfIntegerSlope && n % 2 == 0 {
            return bad(format!("half-integer slope needs odd n, got {n}"));
        }
        let d = Self {
            s,
            m,
            t,
            r_max,
            n,
            parity,
        };
        if d.filling_slope() <= r_max {
            return bad(format!(
                "filling slope {} does not exceed r_M = {r_max}",
                d.filling_slope()
            ));
        }
        Ok(d)
    }

    /// The case of a filling slope below the least boundary slope `r_min`,
    /// reduced to the case above by reflecting every slope.
    pub fn below(s: Q, m: Q, t: Q, r_min: Slope, n: i64, parity: Parity) -> Result<Self, NormError> {
        Self::new(s, m, t, r_min.mirror(), -n, parity)
    }

    pub fn filling_slope(&self) -> Q {
        Q::new(self.n, self.parity.denominator())
    }
}

/// `max(2s, s + 8)`, a bound on the norm of every finite-filling class.
pub fn finite_norm_bound(s: Q) -> Result<Q, NormError> {
    if s < q(4) {
        return Err(NormError::Invalid(format!("minimal norm {s} is below 4")));
    }
    Ok((s * 2).max(s + 8))
}

/// Width at height one of the triangle with base `[-s/m, s/m]` and apex on
/// the filling ray.
pub fn width_at_one(d: &NormData) -> Q {
    let n = q(d.n);
    match d.parity {
        Parity::IntegerSlope => (n - d.r_max) * 2 - (d.t - d.s) * 2 / d.m,
        Parity::HalfIntegerSlope => (n - d.r_max * 2) - (d.t - d.s * 2) / d.m,
    }
}

/// A width above one puts a lattice point inside the norm ball of radius
/// `s`, contradicting minimality.
pub fn lattice_contradiction(d: &NormData) -> bool {
    width_at_one(d) > Q::one()
}

/// Whether `t_slope` lies in `[r_min - 5/2, r_max + 5/2]`.
pub fn finite_slope_interval_check(t_slope: Slope, r_min: Slope, r_max: Slope) -> Result<bool, NormError> {
    let (x, lo, hi) = (finite(&t_slope)?, finite(&r_min)?, finite(&r_max)?);
    if lo > hi {
        return Err(NormError::Invalid(format!("least slope {lo} exceeds greatest {hi}")));
    }
    let margin = Q::new(5, 2);
    Ok(lo - margin <= x && x <= hi + margin)
}

/// Smallest `n` whose filling slope lies strictly beyond the gap that
/// forces a contradiction: `n - r > 5/2`, or `n/2 - r > 1` with `n` odd.
pub fn first_forced(r_max: Q, parity: Parity) -> i64 {
    match parity {
        Parity::IntegerSlope => (r_max + Q::new(5, 2)).floor().to_integer() + 1,
        Parity::HalfIntegerSlope => {
            let n = (r_max * 2 + 2).floor().to_integer() + 1;
            if n % 2 == 0 {
                n + 1
            } else {
                n
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GridReport {
    pub triples: usize,
    pub checks: usize,
    /// `(s, m, t, r_M, n, parity)` where the contradiction was expected but
    /// not found.
    pub violations: Vec<NormData>,
    /// Values of `s` where `max(2s, s+8) > 3s`.
    #[serde(serialize_with = "qstr::vec::serialize")]
    pub bound_violations: Vec<Q>,
}

/// Quarter-integer grid `s in [s_lo, s_hi]`, `m, t in [s, 3s]`, checking both
/// parities at the first forced filling slope beyond each sample `r_M`.
pub fn grid_check(s_lo: i64, s_hi: i64, r_samples: &[Q], exec: Exec) -> GridReport {
    let ks: Vec<i64> = (4 * s_lo..=4 * s_hi).collect();
    let per_s = exec.map(&ks, |&k| {
        let s = Q::new(k, 4);
        let mut r = GridReport::default();
        if finite_norm_bound(s).map_or(true, |b| b > s * 3) {
            r.bound_violations.push(s);
        }
        for mi in k..=3 * k {
            let m = Q::new(mi, 4);
            for ti in k..=3 * k {
                let t = Q::new(ti, 4);
                r.triples += 1;
                for &r_max in r_samples {
                    for parity in [Parity::IntegerSlope, Parity::HalfIntegerSlope] {
                        let n = first_forced(r_max, parity);
                        let d = NormData {
                            s,
                            m,
                            t,
                            r_max,
                            n,
                            parity,
                        };
                        r.checks += 1;
                        if !lattice_contradiction(&d) {
                            r.violations.push(d);
                        }
                    }
                }
            }
        }
        r
    });
    per_s.into_iter().fold(GridReport::default(), |mut acc, r| {
        acc.triples += r.triples;
        acc.checks += r.checks;
        acc.violations.extend(r.violations);
        acc.bound_violations.extend(r.bound_violations);
        acc
    })
}
