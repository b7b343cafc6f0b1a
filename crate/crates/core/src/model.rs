//! Domains, parameters and instances shared by the propagators, the oracle
//! and the solver.
//!
//! Every variable of the sequence `X` carries a bounds-only integer domain.
//! The constraints only look at whether a value sits above the threshold `k`
//! or not, so an [`IntInterval`] is enough to describe everything a
//! propagator needs.

use std::fmt;
use std::str::FromStr;

use crate::error::{CoverViolation, ModelError};

/// A bounds-only integer domain `[lo, hi]`.
///
/// The empty domain is the canonical value [`IntInterval::EMPTY`]; every
/// constructor normalizes `lo > hi` to it so two empty domains compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntInterval {
    lo: i64,
    hi: i64,
}

impl IntInterval {
    pub const EMPTY: IntInterval = IntInterval { lo: 1, hi: 0 };

    pub fn new(lo: i64, hi: i64) -> Self {
        if lo > hi {
            Self::EMPTY
        } else {
            IntInterval { lo, hi }
        }
    }

    pub fn fixed(v: i64) -> Self {
        IntInterval { lo: v, hi: v }
    }

    #[inline]
    pub fn lo(&self) -> i64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> i64 {
        self.hi
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    #[inline]
    pub fn is_fixed(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// Number of integer values, 0 when empty.
    pub fn size(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo) as u64 + 1
        }
    }

    /// Moves the lower bound up to `v` (never down).
    pub fn raise_lo(self, v: i64) -> Self {
        if self.is_empty() {
            return self;
        }
        Self::new(self.lo.max(v), self.hi)
    }

    /// Moves the upper bound down to `v` (never up).
    pub fn lower_hi(self, v: i64) -> Self {
        if self.is_empty() {
            return self;
        }
        Self::new(self.lo, self.hi.min(v))
    }

    pub fn intersect(self, other: IntInterval) -> Self {
        if self.is_empty() || other.is_empty() {
            return Self::EMPTY;
        }
        Self::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    /// `true` when `other` is contained in `self`.
    pub fn includes(&self, other: &IntInterval) -> bool {
        other.is_empty() || (!self.is_empty() && self.lo <= other.lo && other.hi <= self.hi)
    }

    /// Some value `v <= k` is in the domain.
    #[inline]
    pub fn can_be_low(&self, k: i64) -> bool {
        !self.is_empty() && self.lo <= k
    }

    /// Some value `v > k` is in the domain.
    #[inline]
    pub fn can_be_high(&self, k: i64) -> bool {
        !self.is_empty() && self.hi > k
    }

    /// Removes `[lo, k]`.
    pub fn remove_low_class(self, k: i64) -> Self {
        self.raise_lo(k.saturating_add(1))
    }

    /// Removes `]k, hi]`.
    pub fn remove_high_class(self, k: i64) -> Self {
        self.lower_hi(k)
    }
}

impl fmt::Display for IntInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "[]")
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}

/// Classification of a variable with respect to the threshold `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarLabel {
    /// `min(x) > k`
    Penalizing,
    /// `max(x) <= k`
    Neutral,
    Undetermined,
}

/// Labels a non-empty domain.
pub fn label(x: &IntInterval, k: i64) -> VarLabel {
    debug_assert!(!x.is_empty());
    if x.lo() > k {
        VarLabel::Penalizing
    } else if x.hi() <= k {
        VarLabel::Neutral
    } else {
        VarLabel::Undetermined
    }
}

/// Which member of the constraint family an instance describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Plain FOCUS: covered iff above `k`.
    Focus,
    /// At most `h` low values tolerated inside each sequence.
    Springy,
    /// FOCUS with a bound on the total covered length.
    Weighted,
    /// Springy semantics plus the total length bound.
    WeightedSpringy,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Focus,
        Variant::Springy,
        Variant::Weighted,
        Variant::WeightedSpringy,
    ];

    /// Carries a `zc` total-length variable.
    pub fn is_weighted(self) -> bool {
        matches!(self, Variant::Weighted | Variant::WeightedSpringy)
    }

    /// Uses the tolerant cover semantics (`h` low values per sequence,
    /// high endpoints).
    pub fn is_springy(self) -> bool {
        matches!(self, Variant::Springy | Variant::WeightedSpringy)
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Variant::Focus => "focus",
            Variant::Springy => "springy",
            Variant::Weighted => "focusw",
            Variant::WeightedSpringy => "focuswh",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for Variant {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "focus" => Ok(Variant::Focus),
            "springy" => Ok(Variant::Springy),
            "focusw" => Ok(Variant::Weighted),
            "focuswh" => Ok(Variant::WeightedSpringy),
            other => Err(ModelError::UnknownVariant(other.to_string())),
        }
    }
}

/// Constant arguments of a constraint: threshold `k`, maximum sequence
/// length `len` and tolerated low values per sequence `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FocusParams {
    pub variant: Variant,
    pub k: i64,
    pub len: usize,
    pub h: usize,
}

impl FocusParams {
    pub fn new(variant: Variant, k: i64, len: usize, h: usize) -> Self {
        FocusParams { variant, k, len, h }
    }

    /// Checks the parameter ranges against a sequence of `n` variables.
    pub fn validate(&self, n: usize) -> Result<(), ModelError> {
        if self.len == 0 || self.len > n {
            return Err(ModelError::LengthOutOfRange { len: self.len, n });
        }
        if self.variant.is_springy() {
            // h in [0, len - 2]
            if self.h + 2 > self.len {
                return Err(ModelError::SlackOutOfRange {
                    h: self.h,
                    len: self.len,
                });
            }
        } else if self.h != 0 {
            return Err(ModelError::SlackNotAllowed {
                variant: self.variant,
                h: self.h,
            });
        }
        Ok(())
    }

    /// Effective low-value tolerance per sequence.
    pub fn tolerance(&self) -> usize {
        if self.variant.is_springy() {
            self.h
        } else {
            0
        }
    }
}

/// One constraint over `X`, the cardinality variable `yc` and, for the
/// weighted variants, the total-length variable `zc`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FocusInstance {
    xs: Vec<IntInterval>,
    yc: IntInterval,
    zc: Option<IntInterval>,
    params: FocusParams,
}

impl FocusInstance {
    pub fn new(
        xs: Vec<IntInterval>,
        yc: IntInterval,
        zc: Option<IntInterval>,
        params: FocusParams,
    ) -> Result<Self, ModelError> {
        if xs.is_empty() {
            return Err(ModelError::EmptyInstance);
        }
        if let Some(index) = xs.iter().position(|x| x.is_empty()) {
            return Err(ModelError::EmptyDomain { index });
        }
        if yc.is_empty() {
            return Err(ModelError::EmptyCountDomain("yc"));
        }
        match (params.variant.is_weighted(), zc) {
            (true, None) => return Err(ModelError::MissingWeight),
            (false, Some(_)) => return Err(ModelError::UnexpectedWeight),
            (true, Some(z)) if z.is_empty() => return Err(ModelError::EmptyCountDomain("zc")),
            _ => {}
        }
        params.validate(xs.len())?;
        Ok(FocusInstance { xs, yc, zc, params })
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn xs(&self) -> &[IntInterval] {
        &self.xs
    }

    pub fn yc(&self) -> IntInterval {
        self.yc
    }

    pub fn zc(&self) -> Option<IntInterval> {
        self.zc
    }

    pub fn params(&self) -> &FocusParams {
        &self.params
    }

    pub fn variant(&self) -> Variant {
        self.params.variant
    }

    pub fn k(&self) -> i64 {
        self.params.k
    }

    /// Same instance with new domains, used by the propagators to hand back
    /// their result. Domains must be non-empty.
    pub(crate) fn with_domains(
        &self,
        xs: Vec<IntInterval>,
        yc: IntInterval,
        zc: Option<IntInterval>,
    ) -> FocusInstance {
        debug_assert!(xs.iter().all(|x| !x.is_empty()));
        FocusInstance {
            xs,
            yc,
            zc,
            params: self.params,
        }
    }

    /// Replaces the domains, validating them like [`FocusInstance::new`].
    pub fn try_with_domains(
        &self,
        xs: Vec<IntInterval>,
        yc: IntInterval,
        zc: Option<IntInterval>,
    ) -> Result<FocusInstance, ModelError> {
        FocusInstance::new(xs, yc, zc, self.params)
    }

    /// Labels of every variable of `X`.
    pub fn labels(&self) -> Vec<VarLabel> {
        self.xs.iter().map(|x| label(x, self.params.k)).collect()
    }

    /// `|P_k|`
    pub fn penalizing_count(&self) -> usize {
        self.xs.iter().filter(|x| x.lo() > self.params.k).count()
    }

    /// Every domain of `self` contains the corresponding domain of `other`.
    pub fn includes(&self, other: &FocusInstance) -> bool {
        self.n() == other.n()
            && self.xs.iter().zip(&other.xs).all(|(a, b)| a.includes(b))
            && self.yc.includes(&other.yc)
            && match (self.zc, other.zc) {
                (Some(a), Some(b)) => a.includes(&b),
                (None, None) => true,
                _ => false,
            }
    }
}

impl fmt::Display for FocusInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}(k={}, len={}, h={}) X=[",
            self.params.variant, self.params.k, self.params.len, self.params.h
        )?;
        for (i, x) in self.xs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "] yc={}", self.yc)?;
        if let Some(z) = self.zc {
            write!(f, " zc={z}")?;
        }
        Ok(())
    }
}

/// A set of disjoint index sequences `[i, j]`, sorted by start.
///
/// Adjacent sequences (`j + 1 == i'`) are distinct members of the set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Cover {
    seqs: Vec<(usize, usize)>,
}

impl Cover {
    pub fn new(seqs: Vec<(usize, usize)>) -> Result<Self, ModelError> {
        for (pos, &(i, j)) in seqs.iter().enumerate() {
            if i > j {
                return Err(ModelError::InvalidCover(format!(
                    "sequence {pos} has start {i} after end {j}"
                )));
            }
            if pos > 0 && seqs[pos - 1].1 >= i {
                return Err(ModelError::InvalidCover(format!(
                    "sequence {pos} overlaps or precedes its predecessor"
                )));
            }
        }
        Ok(Cover { seqs })
    }

    pub fn empty() -> Self {
        Cover { seqs: Vec::new() }
    }

    pub fn sequences(&self) -> &[(usize, usize)] {
        &self.seqs
    }

    /// `|S_X|`
    pub fn cardinality(&self) -> usize {
        self.seqs.len()
    }

    /// Sum of sequence lengths.
    pub fn total_length(&self) -> usize {
        self.seqs.iter().map(|&(i, j)| j - i + 1).sum()
    }

    pub fn covers(&self, l: usize) -> bool {
        self.seqs.iter().any(|&(i, j)| i <= l && l <= j)
    }
}

/// Checks that `cover` witnesses the constraint for a full `assignment`.
///
/// Cardinality and total length are compared against the current upper
/// bounds of `yc` and `zc`. The first failing condition is reported.
pub fn check_cover(
    inst: &FocusInstance,
    assignment: &[i64],
    cover: &Cover,
) -> Result<(), CoverViolation> {
    let n = inst.n();
    let k = inst.k();
    let p = inst.params();
    if assignment.len() != n {
        return Err(CoverViolation::AssignmentLength {
            expected: n,
            found: assignment.len(),
        });
    }
    if let Some(index) = (0..n).find(|&l| !inst.xs()[l].contains(assignment[l])) {
        return Err(CoverViolation::OutsideDomain { index });
    }
    if let Some(&(_, j)) = cover.sequences().last() {
        if j >= n {
            return Err(CoverViolation::OutOfRange { end: j, n });
        }
    }
    let yc_max = inst.yc().hi();
    if cover.cardinality() as i64 > yc_max {
        return Err(CoverViolation::Cardinality {
            count: cover.cardinality(),
            max: yc_max,
        });
    }
    let springy = p.variant.is_springy();
    for l in 0..n {
        let high = assignment[l] > k;
        let covered = cover.covers(l);
        if high && !covered {
            return Err(CoverViolation::Uncovered { index: l });
        }
        if !springy && covered && !high {
            return Err(CoverViolation::CoveredLow { index: l });
        }
    }
    for (pos, &(i, j)) in cover.sequences().iter().enumerate() {
        if j - i + 1 > p.len {
            return Err(CoverViolation::TooLong {
                seq: pos,
                length: j - i + 1,
                max: p.len,
            });
        }
        if springy {
            if assignment[i] <= k || assignment[j] <= k {
                return Err(CoverViolation::LowEndpoint { seq: pos });
            }
            let lows = (i..=j).filter(|&l| assignment[l] <= k).count();
            if lows > p.h {
                return Err(CoverViolation::TooManyLows {
                    seq: pos,
                    lows,
                    max: p.h,
                });
            }
        }
    }
    if let Some(zc) = inst.zc() {
        let total = cover.total_length();
        if total as i64 > zc.hi() {
            return Err(CoverViolation::Weight {
                total,
                max: zc.hi(),
            });
        }
    }
    Ok(())
}

/// Boolean form of [`check_cover`].
pub fn cover_is_valid(inst: &FocusInstance, assignment: &[i64], cover: &Cover) -> bool {
    check_cover(inst, assignment, cover).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> IntInterval {
        IntInterval::new(lo, hi)
    }

    fn binary(n: usize) -> Vec<IntInterval> {
        vec![iv(0, 1); n]
    }

    #[test]
    fn labels_follow_bounds() {
        assert_eq!(label(&iv(1, 1), 0), VarLabel::Penalizing);
        assert_eq!(label(&iv(0, 1), 0), VarLabel::Undetermined);
        assert_eq!(label(&iv(0, 0), 0), VarLabel::Neutral);
        assert_eq!(label(&iv(-3, 2), 2), VarLabel::Neutral);
        assert_eq!(label(&iv(3, 9), 2), VarLabel::Penalizing);
    }

    #[test]
    fn empty_interval_is_canonical() {
        assert_eq!(iv(4, 2), IntInterval::EMPTY);
        assert!(iv(0, 1).lower_hi(-1).is_empty());
        assert_eq!(iv(0, 1).lower_hi(-1), iv(7, 3));
        assert_eq!(iv(0, 5).remove_low_class(2), iv(3, 5));
        assert_eq!(iv(0, 5).remove_high_class(2), iv(0, 2));
        assert!(iv(0, 2).remove_low_class(2).is_empty());
        assert_eq!(iv(0, 5).size(), 6);
        assert_eq!(IntInterval::EMPTY.size(), 0);
    }

    #[test]
    fn instance_validation() {
        let focus = FocusParams::new(Variant::Focus, 0, 3, 0);
        assert_eq!(
            FocusInstance::new(vec![], iv(0, 1), None, focus),
            Err(ModelError::EmptyInstance)
        );
        assert!(matches!(
            FocusInstance::new(binary(2), iv(0, 1), None, focus),
            Err(ModelError::LengthOutOfRange { len: 3, n: 2 })
        ));
        let springy = FocusParams::new(Variant::Springy, 0, 3, 2);
        assert!(matches!(
            FocusInstance::new(binary(4), iv(0, 1), None, springy),
            Err(ModelError::SlackOutOfRange { h: 2, len: 3 })
        ));
        let springy = FocusParams::new(Variant::Springy, 0, 3, 1);
        assert!(FocusInstance::new(binary(4), iv(0, 1), None, springy).is_ok());
        let weighted = FocusParams::new(Variant::Weighted, 0, 3, 0);
        assert_eq!(
            FocusInstance::new(binary(4), iv(0, 1), None, weighted),
            Err(ModelError::MissingWeight)
        );
        assert_eq!(
            FocusInstance::new(binary(4), iv(0, 1), Some(iv(0, 2)), focus),
            Err(ModelError::UnexpectedWeight)
        );
        assert!(matches!(
            FocusInstance::new(vec![iv(0, 1), iv(2, 1)], iv(0, 1), None, FocusParams::new(Variant::Focus, 0, 1, 0)),
            Err(ModelError::EmptyDomain { index: 1 })
        ));
    }

    #[test]
    fn cover_rejects_overlap_but_allows_adjacency() {
        assert!(Cover::new(vec![(0, 2), (3, 5)]).is_ok());
        assert!(Cover::new(vec![(0, 2), (2, 5)]).is_err());
        assert!(Cover::new(vec![(3, 5), (0, 1)]).is_err());
        assert!(Cover::new(vec![(2, 1)]).is_err());
    }

    // Eight rental days, excess over the owned stock encoded as 0/1.
    fn fig1(variant: Variant, len: usize, h: usize) -> FocusInstance {
        FocusInstance::new(binary(8), iv(1, 1), None, FocusParams::new(variant, 0, len, h)).unwrap()
    }

    #[test]
    fn five_day_rental_satisfies_focus() {
        let inst = fig1(Variant::Focus, 5, 0);
        let cover = Cover::new(vec![(1, 5)]).unwrap();
        assert_eq!(check_cover(&inst, &[0, 1, 1, 1, 1, 1, 0, 0], &cover), Ok(()));
    }

    #[test]
    fn rental_with_idle_day_violates_focus_only() {
        let assignment = [0, 1, 0, 1, 0, 0, 0, 0];
        let cover = Cover::new(vec![(1, 3)]).unwrap();
        let focus = fig1(Variant::Focus, 5, 0);
        let err = check_cover(&focus, &assignment, &cover).unwrap_err();
        assert_eq!(err, CoverViolation::CoveredLow { index: 2 });
        assert_eq!(err.condition(Variant::Focus), Some(2));
        assert!(cover_is_valid(&fig1(Variant::Springy, 5, 1), &assignment, &cover));
        // h = 0 does not tolerate the idle day
        let strict = fig1(Variant::Springy, 5, 0);
        assert_eq!(
            check_cover(&strict, &assignment, &cover),
            Err(CoverViolation::TooManyLows { seq: 0, lows: 1, max: 0 })
        );
    }

    #[test]
    fn reports_numbered_conditions() {
        let p = FocusParams::new(Variant::WeightedSpringy, 0, 3, 1);
        let inst = FocusInstance::new(binary(6), iv(0, 1), Some(iv(0, 3)), p).unwrap();
        let a = [1, 0, 1, 0, 0, 1];
        let two = Cover::new(vec![(0, 2), (5, 5)]).unwrap();
        let err = check_cover(&inst, &a, &two).unwrap_err();
        assert_eq!(err.condition(Variant::WeightedSpringy), Some(1));
        let one = Cover::new(vec![(0, 2)]).unwrap();
        let err = check_cover(&inst, &a, &one).unwrap_err();
        assert_eq!(err, CoverViolation::Uncovered { index: 5 });
        assert_eq!(err.condition(Variant::WeightedSpringy), Some(2));
        let low_end = Cover::new(vec![(0, 1)]).unwrap();
        let b = [1, 0, 0, 0, 0, 0];
        let err = check_cover(&inst, &b, &low_end).unwrap_err();
        assert_eq!(err.condition(Variant::WeightedSpringy), Some(4));
        let c = [1, 1, 1, 0, 0, 0];
        let long = Cover::new(vec![(0, 2)]).unwrap();
        assert_eq!(check_cover(&inst, &c, &long), Ok(()));
        let tight = FocusInstance::new(binary(6), iv(0, 1), Some(iv(0, 2)), p).unwrap();
        let err = check_cover(&tight, &c, &long).unwrap_err();
        assert_eq!(err, CoverViolation::Weight { total: 3, max: 2 });
        assert_eq!(err.condition(Variant::WeightedSpringy), Some(5));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // A tightening never jumps straight between Penalizing and Neutral.
            #[test]
            fn label_stable_under_tightening(lo in -5i64..5, w in 0i64..6, dlo in 0i64..6, dhi in 0i64..6, k in -3i64..3) {
                let x = IntInterval::new(lo, lo + w);
                let y = x.raise_lo(lo + dlo).lower_hi(lo + w - dhi);
                prop_assume!(!y.is_empty());
                let before = label(&x, k);
                let after = label(&y, k);
                match before {
                    VarLabel::Penalizing => prop_assert_eq!(after, VarLabel::Penalizing),
                    VarLabel::Neutral => prop_assert_eq!(after, VarLabel::Neutral),
                    VarLabel::Undetermined => {}
                }
            }

            // Enlarging the budgets of yc and zc never invalidates a cover.
            #[test]
            fn validity_monotone_in_budgets(bits in proptest::collection::vec(0i64..2, 6), extra_y in 0i64..3, extra_z in 0i64..3) {
                let p = FocusParams::new(Variant::WeightedSpringy, 0, 4, 1);
                // greedy maximal runs as a candidate cover
                let mut seqs = Vec::new();
                let mut l = 0;
                while l < bits.len() {
                    if bits[l] == 1 {
                        let start = l;
                        while l + 1 < bits.len() && bits[l + 1] == 1 && l + 1 - start < 4 { l += 1; }
                        seqs.push((start, l));
                    }
                    l += 1;
                }
                let cover = Cover::new(seqs).unwrap();
                let y = cover.cardinality() as i64;
                let z = cover.total_length() as i64;
                let small = FocusInstance::new(binary(6), iv(0, y), Some(iv(0, z)), p).unwrap();
                let large = FocusInstance::new(binary(6), iv(0, y + extra_y), Some(iv(0, z + extra_z)), p).unwrap();
                if cover_is_valid(&small, &bits, &cover) {
                    prop_assert!(cover_is_valid(&large, &bits, &cover));
                }
            }
        }
    }
}
