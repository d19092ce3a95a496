//! 4-plat diagrams of two-bridge links and their linking numbers.
//!
//! Layout: four horizontal positions, 0 at the top. Term `a_i` (0-based `i`)
//! becomes `|a_i|` consecutive crossings between positions 1 and 2 when `i`
//! is even and between positions 0 and 1 when `i` is odd. The left ends are
//! capped (0,1) and (2,3); the right ends (0,1),(2,3) after an odd number of
//! terms and (0,3),(1,2) after an even number. At a crossing the strand
//! running top-left to bottom-right passes over exactly when
//! `sign(a_i) * (-1)^i > 0`, so an all-positive expansion is alternating
//! and negating every term mirrors the diagram.

use serde::Serialize;

use super::{cf_eval, ContFrac};
use crate::error::CfError;

/// Global sign fixing `lk(L_[2]) = +1`.
const ORIENTATION_SIGN: i64 = -1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Crossing {
    /// upper of the two positions involved
    upper: usize,
    /// top-left to bottom-right strand is over
    backslash_over: bool,
}

#[derive(Clone, Copy, Debug)]
struct Visit {
    component: usize,
    /// horizontal direction, +1 rightwards
    dx: i64,
    /// vertical direction with y pointing up (position p sits at y = -p)
    dy: i64,
    on_backslash: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlatDiagram {
    #[serde(skip)]
    crossings: Vec<Crossing>,
    #[serde(skip)]
    right_caps: [usize; 4],
    #[serde(skip)]
    visits: Vec<Vec<Visit>>,
    components: usize,
}

const LEFT_CAPS: [usize; 4] = [1, 0, 3, 2];

impl PlatDiagram {
    pub fn from_cf(cf: &ContFrac) -> Self {
        let mut crossings = Vec::new();
        for (i, &a) in cf.terms().iter().enumerate() {
            let upper = if i % 2 == 0 { 1 } else { 0 };
            let parity = if i % 2 == 0 { 1 } else { -1 };
            let backslash_over = a.signum() * parity > 0;
            for _ in 0..a.unsigned_abs() {
                crossings.push(Crossing { upper, backslash_over });
            }
        }
        let right_caps = if cf.len() % 2 == 1 { [1, 0, 3, 2] } else { [3, 2, 1, 0] };
        let mut d = PlatDiagram {
            visits: vec![Vec::new(); crossings.len()],
            crossings,
            right_caps,
            components: 0,
        };
        d.trace();
        d
    }

    fn trace(&mut self) {
        let n = self.crossings.len();
        let mut started = [false; 4];
        for start in [0usize, 2] {
            if started[start] {
                continue;
            }
            let component = self.components;
            self.components += 1;
            let (mut k, mut pos, mut dx) = (0usize, start, 1i64);
            started[start] = true;
            started[LEFT_CAPS[start]] = true;
            loop {
                if dx == 1 && k == n {
                    pos = self.right_caps[pos];
                    dx = -1;
                } else if dx == -1 && k == 0 {
                    started[pos] = true;
                    pos = LEFT_CAPS[pos];
                    started[pos] = true;
                    dx = 1;
                    if pos == start {
                        break;
                    }
                } else {
                    let col = if dx == 1 { k } else { k - 1 };
                    let c = self.crossings[col];
                    if pos == c.upper || pos == c.upper + 1 {
                        let next = if pos == c.upper { c.upper + 1 } else { c.upper };
                        let on_backslash = (dx == 1 && pos == c.upper) || (dx == -1 && pos == c.upper + 1);
                        self.visits[col].push(Visit {
                            component,
                            dx,
                            dy: pos as i64 - next as i64,
                            on_backslash,
                        });
                        pos = next;
                    }
                    k = if dx == 1 { k + 1 } else { k - 1 };
                }
            }
        }
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Signs of crossings between different components.
    fn inter_component_signs(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.crossings.iter().zip(&self.visits).filter_map(|(c, v)| {
            let (a, b) = (v[0], v[1]);
            if a.component == b.component {
                return None;
            }
            let (over, under) = if a.on_backslash == c.backslash_over {
                (a, b)
            } else {
                (b, a)
            };
            let cross = over.dx * under.dy - over.dy * under.dx;
            Some((cross.signum() * ORIENTATION_SIGN, over.component))
        })
    }

    /// Half the signed count of crossings between the two components.
    pub fn linking_number(&self) -> Option<i64> {
        if self.components != 2 {
            return None;
        }
        let total: i64 = self.inter_component_signs().map(|(s, _)| s).sum();
        debug_assert!(total % 2 == 0);
        Some(total / 2)
    }

    /// Signed count of crossings where the first component passes over the
    /// second. Agrees with [`linking_number`](Self::linking_number) for any
    /// diagram of a two-component link.
    pub fn over_crossing_count(&self) -> Option<i64> {
        if self.components != 2 {
            return None;
        }
        Some(
            self.inter_component_signs()
                .filter(|&(_, over)| over == 0)
                .map(|(s, _)| s)
                .sum(),
        )
    }
}

pub fn linking_number(cf: &ContFrac) -> Result<i64, CfError> {
    let f = cf_eval(cf)?;
    if f.is_knot() {
        return Err(CfError::OddDenominator(f.alpha()));
    }
    let d = PlatDiagram::from_cf(cf);
    // an even denominator always traces to two components
    d.linking_number().ok_or(CfError::OddDenominator(f.alpha()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(s: &str) -> ContFrac {
        s.parse().unwrap()
    }

    #[test]
    fn hopf_is_plus_one() {
        assert_eq!(linking_number(&cf("[2]")).unwrap(), 1);
        assert_eq!(linking_number(&cf("[-2]")).unwrap(), -1);
    }

    #[test]
    fn whitehead_is_unlinked() {
        assert_eq!(linking_number(&cf("[3,-3]")).unwrap(), 0);
        assert_eq!(PlatDiagram::from_cf(&cf("[3,-3]")).components(), 2);
    }

    #[test]
    fn knots_rejected() {
        assert_eq!(linking_number(&cf("[2,2]")), Err(CfError::OddDenominator(5)));
        assert_eq!(PlatDiagram::from_cf(&cf("[2,2]")).components(), 1);
    }

    #[test]
    fn two_routes_agree() {
        for s in ["[3,5]", "[5,5]", "[2,1,2]", "[4]", "[-6]", "[2,3,-2,1]", "[7,-3]"] {
            let c = cf(s);
            if cf_eval(&c).unwrap().is_knot() {
                continue;
            }
            let d = PlatDiagram::from_cf(&c);
            assert_eq!(d.linking_number(), d.over_crossing_count(), "{s}");
        }
    }
}
