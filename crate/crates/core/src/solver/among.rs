use crate::error::Infeasible;
use crate::model::IntInterval;

use super::network::{Domains, Propagator};

/// Between `lo` and `hi` of the variables in `[start, end]` take a value
/// above `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AmongSpec {
    pub start: usize,
    pub end: usize,
    pub lo: usize,
    pub hi: usize,
}

impl AmongSpec {
    pub fn new(start: usize, end: usize, lo: usize, hi: usize) -> Self {
        assert!(start <= end && lo <= hi && hi <= end - start + 1);
        AmongSpec { start, end, lo, hi }
    }

    pub fn width(&self) -> usize {
        self.end - self.start + 1
    }

    /// Checks a full assignment.
    pub fn holds(&self, values: &[i64], k: i64) -> bool {
        let c = values[self.start..=self.end].iter().filter(|&&v| v > k).count();
        self.lo <= c && c <= self.hi
    }
}

/// Bounds filtering of one window.
pub fn among_filter(
    xs: &mut [IntInterval],
    spec: &AmongSpec,
    k: i64,
) -> Result<(), Infeasible> {
    let window = &mut xs[spec.start..=spec.end];
    let sure = window.iter().filter(|x| !x.can_be_low(k)).count();
    let possible = window.iter().filter(|x| x.can_be_high(k)).count();
    if sure > spec.hi || possible < spec.lo {
        return Err(Infeasible);
    }
    for x in window.iter_mut() {
        if x.can_be_low(k) && x.can_be_high(k) {
            if sure == spec.hi {
                *x = x.remove_high_class(k);
            } else if possible == spec.lo {
                *x = x.remove_low_class(k);
            }
        }
    }
    Ok(())
}

/// [`among_filter`] over network variables.
#[derive(Debug, Clone)]
pub struct Among {
    vars: Vec<usize>,
    spec: AmongSpec,
    k: i64,
}

impl Among {
    /// `vars` is the whole sequence; the window indexes into it.
    pub fn new(vars: Vec<usize>, spec: AmongSpec, k: i64) -> Self {
        assert!(spec.end < vars.len());
        Among { vars, spec, k }
    }
}

impl Propagator for Among {
    fn propagate(&self, doms: &mut Domains) -> Result<(), Infeasible> {
        let mut xs: Vec<IntInterval> = self.vars.iter().map(|&v| doms.get(v)).collect();
        among_filter(&mut xs, &self.spec, self.k)?;
        for l in self.spec.start..=self.spec.end {
            doms.restrict(self.vars[l], xs[l])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(lo: i64, hi: i64) -> IntInterval {
        IntInterval::new(lo, hi)
    }

    #[test]
    fn saturates_from_below() {
        let mut xs = vec![iv(0, 1); 3];
        among_filter(&mut xs, &AmongSpec::new(0, 2, 3, 3), 0).unwrap();
        assert_eq!(xs, vec![iv(1, 1); 3]);
    }

    #[test]
    fn saturates_from_above() {
        let mut xs = vec![iv(1, 1), iv(0, 1), iv(0, 1)];
        among_filter(&mut xs, &AmongSpec::new(0, 2, 1, 1), 0).unwrap();
        assert_eq!(xs, vec![iv(1, 1), iv(0, 0), iv(0, 0)]);
    }

    #[test]
    fn detects_overflow() {
        let mut xs = vec![iv(1, 1), iv(1, 1)];
        assert_eq!(among_filter(&mut xs, &AmongSpec::new(0, 1, 0, 1), 0), Err(Infeasible));
        let mut ys = vec![iv(0, 0), iv(0, 1)];
        assert_eq!(among_filter(&mut ys, &AmongSpec::new(0, 1, 2, 2), 0), Err(Infeasible));
    }

    fn closure(xs: &[IntInterval], spec: &AmongSpec) -> Option<Vec<IntInterval>> {
        let n = xs.len();
        let mut low = vec![false; n];
        let mut high = vec![false; n];
        for m in 0..(1u32 << n) {
            let a: Vec<i64> = (0..n).map(|l| ((m >> l) & 1) as i64).collect();
            if a.iter().zip(xs).all(|(&v, x)| x.contains(v)) && spec.holds(&a, 0) {
                for l in 0..n {
                    if a[l] == 1 {
                        high[l] = true;
                    } else {
                        low[l] = true;
                    }
                }
            }
        }
        if !low.iter().zip(&high).all(|(a, b)| *a || *b) {
            return None;
        }
        Some(
            (0..n)
                .map(|l| {
                    let lo = if low[l] { 0 } else { 1 };
                    let hi = if high[l] { 1 } else { 0 };
                    iv(lo, hi)
                })
                .collect(),
        )
    }

    proptest! {
        #[test]
        fn matches_enumeration(
            doms in proptest::collection::vec(0u8..3, 1..=8),
            a in 0usize..8, b in 0usize..8, lo in 0usize..9, w in 0usize..9,
        ) {
            let n = doms.len();
            let xs: Vec<IntInterval> = doms.iter().map(|d| match d { 0 => iv(0, 0), 1 => iv(1, 1), _ => iv(0, 1) }).collect();
            let (s, e) = ((a % n).min(b % n), (a % n).max(b % n));
            let width = e - s + 1;
            let lo = lo % (width + 1);
            let hi = (lo + w).min(width);
            let spec = AmongSpec::new(s, e, lo, hi);
            let mut got = xs.clone();
            let res = among_filter(&mut got, &spec, 0);
            match closure(&xs, &spec) {
                None => prop_assert!(res.is_err()),
                Some(expected) => {
                    prop_assert!(res.is_ok());
                    prop_assert_eq!(got, expected);
                }
            }
        }
    }
}
