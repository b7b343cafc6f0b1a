//! Weighted springy FOCUS: sequences may cover up to `h` values not above
//! `k`, must start and end above `k`, and their total length is bounded by
//! `zc`.
//!
//! Same table as [`crate::weighted`], with a third component per entry: the
//! number of neutral variables covered by the last sequence. The cost now
//! counts every covered variable that is not penalizing.

use std::fmt;

use crate::dp::{prefix_best, show, DpEntry, Direction, Grid, INF};
use crate::error::Infeasible;
use crate::model::{label, FocusInstance, FocusParams, IntInterval, VarLabel};
use crate::weighted::{column_headers, Entailment};

/// `{q, l, hc}`
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpCell3 {
    pub q: u32,
    pub l: u32,
    pub hc: u32,
}

impl DpEntry for DpCell3 {
    const DUMMY: Self = DpCell3 {
        q: INF,
        l: INF,
        hc: INF,
    };
    const ORIGIN: Self = DpCell3 { q: 0, l: 0, hc: 0 };

    fn q(&self) -> u32 {
        self.q
    }

    fn l(&self) -> u32 {
        self.l
    }

    fn render(&self) -> String {
        format!("{{{},{},{}}}", show(self.q), show(self.l), show(self.hc))
    }
}

impl fmt::Display for DpCell3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl DpCell3 {
    fn open(&self) -> bool {
        self.l >= 1 && self.l != INF
    }

    fn interrupted(q: u32) -> Self {
        DpCell3 { q, l: INF, hc: INF }
    }
}

pub type DpTable3 = Grid<DpCell3>;

pub fn build_dp_wh(xs: &[IntInterval], params: &FocusParams, zc_hi: i64) -> Option<DpTable3> {
    build(xs.iter(), xs.len(), params, zc_hi, Direction::Forward)
}

pub fn build_dp_wh_backward(
    xs: &[IntInterval],
    params: &FocusParams,
    zc_hi: i64,
) -> Option<DpTable3> {
    build(xs.iter().rev(), xs.len(), params, zc_hi, Direction::Backward)
}

fn build<'a, I>(
    xs: I,
    n: usize,
    params: &FocusParams,
    zc_hi: i64,
    dir: Direction,
) -> Option<DpTable3>
where
    I: Iterator<Item = &'a IntInterval> + Clone,
{
    let k = params.k;
    let p = xs.clone().filter(|x| x.lo() > k).count() as i64;
    let zcu = zc_hi - p;
    if zcu < 0 {
        return None;
    }
    let zcu = zcu.min(n as i64) as usize;
    let len = params.len as u32;
    let h = params.tolerance() as u32;
    let mut t = DpTable3::new(zcu + 1, n, dir);
    let mut prev = t.column_vec(-1);
    for (j, x) in xs.enumerate() {
        let lab = label(x, k);
        let col = t.column_mut(j);
        for c in 0..=j.min(zcu) {
            let b = prev[c];
            let a = if c > 0 { prev[c - 1] } else { DpCell3::DUMMY };
            let fallback = if b.q != INF {
                DpCell3::interrupted(b.q)
            } else {
                DpCell3::DUMMY
            };
            let extend = a.open() && a.l < len && (a.q == b.q || b.q == INF);
            col[c] = match lab {
                VarLabel::Penalizing => {
                    if b.open() && b.l < len {
                        DpCell3 {
                            q: b.q,
                            l: b.l + 1,
                            hc: b.hc,
                        }
                    } else if b.q != INF {
                        DpCell3 { q: b.q + 1, l: 1, hc: 0 }
                    } else {
                        DpCell3::DUMMY
                    }
                }
                VarLabel::Undetermined if extend => DpCell3 {
                    q: a.q,
                    l: a.l + 1,
                    hc: a.hc,
                },
                VarLabel::Neutral if extend && a.hc < h => DpCell3 {
                    q: a.q,
                    l: a.l + 1,
                    hc: a.hc + 1,
                },
                _ => fallback,
            };
        }
        prev.copy_from_slice(col);
    }
    Some(t)
}

pub fn dump_table(table: &DpTable3, xs: &[IntInterval]) -> String {
    table.render(&column_headers(table.direction(), xs))
}

pub fn disentailment_wh(inst: &FocusInstance) -> Entailment {
    let zc = inst.zc().expect("weighted instance");
    match build_dp_wh(inst.xs(), inst.params(), zc.hi()) {
        Some(t) if t.min_cost_within(inst.yc().hi()).is_some() => Entailment::Feasible,
        _ => Entailment::Disentailed,
    }
}

/// Bounds consistency for weighted springy FOCUS.
pub fn bc_filter_wh(inst: &FocusInstance) -> Result<FocusInstance, Infeasible> {
    let xs = inst.xs();
    let n = xs.len();
    let p = inst.params();
    let k = p.k;
    let zc = inst.zc().expect("weighted instance");
    let yc = inst.yc();
    let f = build_dp_wh(xs, p, zc.hi()).ok_or(Infeasible)?;
    let zcu = f.zcu();
    let last = f.column(n - 1);
    let best_c = f.min_cost_within(yc.hi()).ok_or(Infeasible)?;
    let yc = yc.raise_lo(f.min_q() as i64);
    let zc = zc.raise_lo(inst.penalizing_count() as i64 + best_c as i64);

    let slack = (0..zcu).any(|c| last[c].q != INF && (last[c].q as i64) < yc.hi());
    if slack {
        return Ok(inst.with_domains(xs.to_vec(), yc, Some(zc)));
    }

    let b = build_dp_wh_backward(xs, p, zc.hi()).ok_or(Infeasible)?;
    let len = p.len as u32;
    let h = p.tolerance() as u32;
    let max = yc.hi();
    let mut out = xs.to_vec();
    for i in 0..n {
        let x = xs[i];
        if x.is_fixed() {
            continue;
        }
        let left = f.column_vec(i as isize - 1);
        let right = prefix_best(&b.column_vec(n as isize - i as isize - 2));
        let high_cost = usize::from(label(&x, k) == VarLabel::Undetermined);
        let mut high_ok = false;
        let mut low_ok = false;
        for (c1, a) in left.iter().enumerate() {
            if a.is_dummy() {
                continue;
            }
            if !high_ok && c1 + high_cost <= zcu {
                let r = right[zcu - c1 - high_cost];
                high_ok = !r.is_dummy() && high_count(*a, r, len, h) as i64 <= max;
            }
            if !low_ok {
                let r = right[zcu - c1];
                low_ok = !r.is_dummy() && (a.q + r.q) as i64 <= max;
            }
            // x_i covered as a low value inside one glued sequence
            if !low_ok && c1 < zcu && a.open() {
                let r = right[zcu - c1 - 1];
                low_ok = r.open()
                    && a.l + r.l < len
                    && a.hc + r.hc < h
                    && (a.q + r.q - 1) as i64 <= max;
            }
            if high_ok && low_ok {
                break;
            }
        }
        let mut d = x;
        if x.can_be_high(k) && !high_ok {
            d = d.remove_high_class(k);
        }
        if x.can_be_low(k) && !low_ok {
            d = d.remove_low_class(k);
        }
        if d.is_empty() {
            return Err(Infeasible);
        }
        out[i] = d;
    }
    Ok(inst.with_domains(out, yc, Some(zc)))
}

fn high_count(a: DpCell3, b: DpCell3, len: u32, h: u32) -> u32 {
    if a.open() && b.open() && a.l + b.l < len && a.hc + b.hc <= h {
        a.q + b.q - 1
    } else if (a.open() && a.l < len) || (b.open() && b.l < len) {
        a.q + b.q
    } else {
        a.q + b.q + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Variant;
    use crate::weighted::build_dp_w;

    fn iv(lo: i64, hi: i64) -> IntInterval {
        IntInterval::new(lo, hi)
    }

    fn bits(s: &str) -> Vec<IntInterval> {
        s.chars()
            .map(|c| match c {
                '0' => iv(0, 0),
                '1' => iv(1, 1),
                _ => iv(0, 1),
            })
            .collect()
    }

    fn wh(len: usize, h: usize) -> FocusParams {
        FocusParams::new(Variant::WeightedSpringy, 0, len, h)
    }

    #[test]
    fn glued_over_neutral() {
        let t = build_dp_wh(&bits("101"), &wh(3, 1), 3).unwrap();
        assert_eq!(t.get(1, 2), DpCell3 { q: 1, l: 3, hc: 1 });
        let t0 = build_dp_wh(&bits("101"), &wh(3, 0), 3).unwrap();
        let best = (0..t0.rows()).map(|c| t0.get(c, 2).q).min().unwrap();
        assert_eq!(best, 2);
    }

    #[test]
    fn full_penalizing_run() {
        let t = build_dp_wh(&bits("1111"), &wh(4, 0), 4).unwrap();
        assert_eq!(t.get(0, 3), DpCell3 { q: 1, l: 4, hc: 0 });
    }

    #[test]
    fn rental_days_with_gap() {
        let xs = vec![
            iv(0, 1),
            iv(1, 1),
            iv(0, 0),
            iv(1, 1),
            iv(0, 1),
            iv(0, 1),
            iv(0, 1),
            iv(0, 1),
        ];
        let ok = FocusInstance::new(xs.clone(), iv(1, 1), Some(iv(0, 4)), wh(4, 1)).unwrap();
        assert_eq!(disentailment_wh(&ok), Entailment::Feasible);
        let tight = FocusInstance::new(xs, iv(1, 1), Some(iv(0, 2)), wh(4, 1)).unwrap();
        assert_eq!(disentailment_wh(&tight), Entailment::Disentailed);
        let empty = FocusInstance::new(bits("000"), iv(0, 0), Some(iv(0, 0)), wh(3, 1)).unwrap();
        assert_eq!(disentailment_wh(&empty), Entailment::Feasible);
    }

    #[test]
    fn middle_value_support() {
        let tolerant = FocusInstance::new(bits("1?1"), iv(1, 1), Some(iv(0, 3)), wh(3, 1)).unwrap();
        assert_eq!(bc_filter_wh(&tolerant).unwrap().xs(), tolerant.xs());
        let strict = FocusInstance::new(bits("1?1"), iv(1, 1), Some(iv(0, 3)), wh(3, 0)).unwrap();
        assert_eq!(bc_filter_wh(&strict).unwrap().xs()[1], iv(1, 1));
    }

    #[test]
    fn fixed_instance_identity() {
        let inst = FocusInstance::new(bits("1101011"), iv(2, 2), Some(iv(6, 7)), wh(4, 1)).unwrap();
        assert_eq!(bc_filter_wh(&inst).unwrap(), inst);
    }

    #[test]
    fn no_neutral_matches_weighted() {
        let xs = bits("1?11?1?1");
        let a = build_dp_wh(&xs, &wh(5, 0), 7).unwrap();
        let w = FocusParams::new(Variant::Weighted, 0, 5, 0);
        let b = build_dp_w(&xs, &w, 7).unwrap();
        for c in 0..a.rows() {
            for j in 0..8 {
                assert_eq!(a.get(c, j).key(), b.get(c, j).key());
            }
        }
    }
}
