use std::fmt;
use std::sync::Arc;

use crate::error::Infeasible;
use crate::model::{FocusInstance, FocusParams, IntInterval};
use crate::springy::{springy_filter_with, SpringyOptions};

/// Variable domains with an undo log.
#[derive(Debug, Clone, Default)]
pub struct Domains {
    vals: Vec<IntInterval>,
    trail: Vec<(usize, IntInterval)>,
    changes: u64,
}

impl Domains {
    pub fn get(&self, v: usize) -> IntInterval {
        self.vals[v]
    }

    pub fn as_slice(&self) -> &[IntInterval] {
        &self.vals
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    /// Intersects the domain of `v` with `d`. Returns whether it shrank.
    pub fn restrict(&mut self, v: usize, d: IntInterval) -> Result<bool, Infeasible> {
        let old = self.vals[v];
        let new = old.intersect(d);
        if new.is_empty() {
            return Err(Infeasible);
        }
        if new == old {
            return Ok(false);
        }
        self.trail.push((v, old));
        self.vals[v] = new;
        self.changes += 1;
        Ok(true)
    }

    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    /// Restores every domain changed since `mark`.
    pub fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, d) = self.trail.pop().expect("trail above mark");
            self.vals[v] = d;
        }
    }

    fn push(&mut self, d: IntInterval) -> usize {
        self.vals.push(d);
        self.vals.len() - 1
    }
}

/// A filtering algorithm over some of the network's variables. It must only
/// shrink domains, and running it twice in a row must change nothing the
/// second time.
pub trait Propagator: fmt::Debug + Send + Sync {
    fn propagate(&self, doms: &mut Domains) -> Result<(), Infeasible>;
}

/// Variables plus posted propagators.
#[derive(Debug, Clone, Default)]
pub struct Network {
    doms: Domains,
    props: Vec<Arc<dyn Propagator>>,
}

impl Network {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, d: IntInterval) -> usize {
        assert!(!d.is_empty(), "variables start with a non-empty domain");
        self.doms.push(d)
    }

    pub fn post(&mut self, p: impl Propagator + 'static) {
        self.props.push(Arc::new(p));
    }

    pub fn domains(&self) -> &[IntInterval] {
        self.doms.as_slice()
    }

    pub fn domain(&self, v: usize) -> IntInterval {
        self.doms.get(v)
    }

    pub fn num_propagators(&self) -> usize {
        self.props.len()
    }

    pub fn restrict(&mut self, v: usize, d: IntInterval) -> Result<bool, Infeasible> {
        self.doms.restrict(v, d)
    }

    pub fn mark(&self) -> usize {
        self.doms.mark()
    }

    pub fn undo(&mut self, mark: usize) {
        self.doms.undo(mark)
    }

    /// Runs all propagators in posting order until none changes a domain.
    pub fn fixpoint(&mut self) -> Result<(), Infeasible> {
        let order: Vec<usize> = (0..self.props.len()).collect();
        self.fixpoint_ordered(&order)
    }

    /// Same as [`Network::fixpoint`] with the propagators visited in `order`
    /// on every sweep.
    pub fn fixpoint_ordered(&mut self, order: &[usize]) -> Result<(), Infeasible> {
        loop {
            let before = self.doms.changes;
            for &i in order {
                self.props[i].propagate(&mut self.doms)?;
            }
            if self.doms.changes == before {
                return Ok(());
            }
        }
    }
}

/// One FOCUS-family constraint over network variables, filtered by the
/// propagator matching its variant.
#[derive(Debug, Clone)]
pub struct FocusProp {
    xs: Vec<usize>,
    yc: usize,
    zc: Option<usize>,
    params: FocusParams,
    springy: SpringyOptions,
}

impl FocusProp {
    pub fn new(xs: Vec<usize>, yc: usize, zc: Option<usize>, params: FocusParams) -> Self {
        assert_eq!(zc.is_some(), params.variant.is_weighted());
        params
            .validate(xs.len())
            .expect("constraint parameters must be valid");
        FocusProp {
            xs,
            yc,
            zc,
            params,
            springy: SpringyOptions::default(),
        }
    }

    /// Options for the Focus and Springy filter; ignored by the weighted
    /// variants.
    pub fn with_springy_options(mut self, opts: SpringyOptions) -> Self {
        self.springy = opts;
        self
    }
}

impl Propagator for FocusProp {
    fn propagate(&self, doms: &mut Domains) -> Result<(), Infeasible> {
        let xs = self.xs.iter().map(|&v| doms.get(v)).collect();
        let zc = self.zc.map(|v| doms.get(v));
        let inst = FocusInstance::new(xs, doms.get(self.yc), zc, self.params)
            .expect("domains are non-empty and parameters validated");
        let out = if self.params.variant.is_weighted() {
            crate::propagate(&inst)?
        } else {
            springy_filter_with(&inst, self.springy)?
        };
        for (&v, &d) in self.xs.iter().zip(out.xs()) {
            doms.restrict(v, d)?;
        }
        doms.restrict(self.yc, out.yc())?;
        if let (Some(v), Some(d)) = (self.zc, out.zc()) {
            doms.restrict(v, d)?;
        }
        Ok(())
    }
}

/// `b = 1` iff `x > k`, with `b` in `{0, 1}`.
#[derive(Debug, Clone)]
pub struct Channel {
    x: usize,
    b: usize,
    k: i64,
}

impl Channel {
    pub fn new(x: usize, b: usize, k: i64) -> Self {
        Channel { x, b, k }
    }
}

impl Propagator for Channel {
    fn propagate(&self, doms: &mut Domains) -> Result<(), Infeasible> {
        doms.restrict(self.b, IntInterval::new(0, 1))?;
        let x = doms.get(self.x);
        if !x.can_be_high(self.k) {
            doms.restrict(self.b, IntInterval::fixed(0))?;
        }
        if !x.can_be_low(self.k) {
            doms.restrict(self.b, IntInterval::fixed(1))?;
        }
        let b = doms.get(self.b);
        if b.lo() >= 1 {
            doms.restrict(self.x, x.remove_low_class(self.k))?;
        }
        if b.hi() <= 0 {
            doms.restrict(self.x, x.remove_high_class(self.k))?;
        }
        Ok(())
    }
}

/// `sum(vars) <= total`
#[derive(Debug, Clone)]
pub struct SumLeq {
    vars: Vec<usize>,
    total: usize,
}

impl SumLeq {
    pub fn new(vars: Vec<usize>, total: usize) -> Self {
        SumLeq { vars, total }
    }
}

impl Propagator for SumLeq {
    fn propagate(&self, doms: &mut Domains) -> Result<(), Infeasible> {
        let min_sum: i64 = self.vars.iter().map(|&v| doms.get(v).lo()).sum();
        let t = doms.get(self.total);
        doms.restrict(self.total, t.raise_lo(min_sum))?;
        let cap = doms.get(self.total).hi();
        for &v in &self.vars {
            let d = doms.get(v);
            doms.restrict(v, d.lower_hi(cap - (min_sum - d.lo())))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> IntInterval {
        IntInterval::new(lo, hi)
    }

    #[test]
    fn trail_restores() {
        let mut d = Domains::default();
        let a = d.push(iv(0, 5));
        let m = d.mark();
        assert_eq!(d.restrict(a, iv(2, 9)), Ok(true));
        assert_eq!(d.restrict(a, iv(2, 9)), Ok(false));
        assert_eq!(d.restrict(a, iv(3, 4)), Ok(true));
        assert_eq!(d.restrict(a, iv(7, 8)), Err(Infeasible));
        d.undo(m);
        assert_eq!(d.get(a), iv(0, 5));
    }

    #[test]
    fn channel_both_ways() {
        let mut net = Network::new();
        let x = net.add_var(iv(0, 3));
        let b = net.add_var(iv(0, 1));
        net.post(Channel::new(x, b, 1));
        net.restrict(b, iv(1, 1)).unwrap();
        net.fixpoint().unwrap();
        assert_eq!(net.domain(x), iv(2, 3));
        let mut net2 = Network::new();
        let x = net2.add_var(iv(0, 1));
        let b = net2.add_var(iv(0, 1));
        net2.post(Channel::new(x, b, 1));
        net2.fixpoint().unwrap();
        assert_eq!(net2.domain(b), iv(0, 0));
    }

    #[test]
    fn sum_bounds() {
        let mut net = Network::new();
        let bs: Vec<usize> = (0..3).map(|_| net.add_var(iv(0, 1))).collect();
        let z = net.add_var(iv(0, 1));
        net.restrict(bs[0], iv(1, 1)).unwrap();
        net.post(SumLeq::new(bs.clone(), z));
        net.fixpoint().unwrap();
        assert_eq!(net.domain(z), iv(1, 1));
        assert_eq!(net.domain(bs[1]), iv(0, 0));
        assert_eq!(net.domain(bs[2]), iv(0, 0));
    }

    #[test]
    fn empty_network_is_identity() {
        let mut net = Network::new();
        net.add_var(iv(0, 4));
        net.fixpoint().unwrap();
        assert_eq!(net.domains(), &[iv(0, 4)]);
    }
}
