//! Execution mode for the data-parallel sweeps.
//!
//! With the `parallel` feature (default) [`Exec::Parallel`] runs on rayon's
//! global pool; without it every mode runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::contfrac::{cf_eval, claim1_normalize, claim1_row, ht_boundary_slopes, ContFrac, Fraction, HtSlopes};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Order-preserving flat map.
    pub fn flat_map<T, R, I, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        I: IntoIterator<Item = R>,
        F: Fn(&T) -> I + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items
                .par_iter()
                .map(|x| f(x).into_iter().collect::<Vec<R>>())
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect(),
            _ => items.iter().flat_map(f).collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Claim1Sweep {
    pub instances: usize,
    /// Distinct table rows hit.
    pub rows: usize,
    /// `(w, v, u)` whose normal form is not simple or changes the value.
    pub failures: Vec<(i64, i64, i64)>,
}

/// Check the `[2w, v, 2u]` normal forms for every `|w|, |v|, |u| <= bound`
/// inside the table's hypothesis.
pub fn claim1_sweep(bound: i64, exec: Exec) -> Claim1Sweep {
    let ws: Vec<i64> = (-bound..=bound).collect();
    let per_w = exec.map(&ws, |&w| {
        let mut out = (0usize, Vec::new(), Vec::new());
        for v in -bound..=bound {
            for u in -bound..=bound {
                let Ok(row) = claim1_row(w, v, u) else { continue };
                out.0 += 1;
                out.1.push(row);
                let ok = match (claim1_normalize(w, v, u), ContFrac::new(vec![2 * w, v, 2 * u])) {
                    (Ok(nf), Ok(raw)) => nf.is_simple() && cf_eval(&nf).ok() == cf_eval(&raw).ok(),
                    _ => false,
                };
                if !ok {
                    out.2.push((w, v, u));
                }
            }
        }
        out
    });
    let mut rows = std::collections::BTreeSet::new();
    let mut sweep = Claim1Sweep::default();
    for (n, r, f) in per_w {
        sweep.instances += n;
        rows.extend(r);
        sweep.failures.extend(f);
    }
    sweep.rows = rows.len();
    sweep
}

/// Boundary slopes of every two-bridge knot `K_(beta/alpha)` with
/// `0 < beta < alpha <= alpha_max`.
pub fn ht_sweep(alpha_max: i64, exec: Exec) -> Vec<(Fraction, HtSlopes)> {
    let fracs: Vec<Fraction> = (3..=alpha_max)
        .step_by(2)
        .flat_map(|a| (1..a).filter_map(move |b| Fraction::new(b, a).ok().filter(|f| f.beta() == b && f.alpha() == a)))
        .collect();
    exec.flat_map(&fracs, |&f| ht_boundary_slopes(f).ok().map(|h| (f, h)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = Exec::Sequential.map(&xs, |x| x * x);
        let b = Exec::Parallel.map(&xs, |x| x * x);
        assert_eq!(a, b);
        let a = Exec::Sequential.flat_map(&xs, |x| 0..*x % 4);
        let b = Exec::Parallel.flat_map(&xs, |x| 0..*x % 4);
        assert_eq!(a, b);
    }

    #[test]
    fn sweeps_agree_across_modes() {
        assert_eq!(claim1_sweep(4, Exec::Sequential), claim1_sweep(4, Exec::Parallel));
        let a = ht_sweep(15, Exec::Sequential);
        let b = ht_sweep(15, Exec::Parallel);
        assert_eq!(a.len(), b.len());
        assert!(a.iter().zip(&b).all(|(x, y)| x.0 == y.0 && x.1.slopes == y.1.slopes));
    }
}
