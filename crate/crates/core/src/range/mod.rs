//! Static range searching over integer points carrying integer value
//! channels: max (with owner), sum, count and inverse shifted-weight sums.

mod kdtree;

pub use kdtree::{histogram_sum, Aggregate, Canonical, Point, RangeTree, MAX_DIM};

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Bound;

/// One axis of a query box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Bound<i64>,
    pub hi: Bound<i64>,
}

impl Interval {
    pub const FULL: Interval = Interval { lo: Bound::Unbounded, hi: Bound::Unbounded };

    pub fn new(lo: Bound<i64>, hi: Bound<i64>) -> Self {
        Interval { lo, hi }
    }

    pub fn closed(a: i64, b: i64) -> Self {
        Interval { lo: Bound::Included(a), hi: Bound::Included(b) }
    }

    pub fn point(z: i64) -> Self {
        Self::closed(z, z)
    }

    /// `(x, +inf)`
    pub fn above(x: i64) -> Self {
        Interval { lo: Bound::Excluded(x), hi: Bound::Unbounded }
    }

    /// `[x, +inf)`
    pub fn at_least(x: i64) -> Self {
        Interval { lo: Bound::Included(x), hi: Bound::Unbounded }
    }

    /// `(-inf, x)`
    pub fn below(x: i64) -> Self {
        Interval { lo: Bound::Unbounded, hi: Bound::Excluded(x) }
    }

    /// `(-inf, x]`
    pub fn at_most(x: i64) -> Self {
        Interval { lo: Bound::Unbounded, hi: Bound::Included(x) }
    }

    /// Equivalent closed integer interval, `None` when empty.
    pub fn to_closed(&self) -> Option<(i64, i64)> {
        let lo = match self.lo {
            Bound::Unbounded => i64::MIN,
            Bound::Included(x) => x,
            Bound::Excluded(x) => x.checked_add(1)?,
        };
        let hi = match self.hi {
            Bound::Unbounded => i64::MAX,
            Bound::Included(x) => x,
            Bound::Excluded(x) => x.checked_sub(1)?,
        };
        (lo <= hi).then_some((lo, hi))
    }

    pub fn contains(&self, x: i64) -> bool {
        self.to_closed().is_some_and(|(a, b)| a <= x && x <= b)
    }
}

/// Axis-aligned box: the product of one interval per dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RangeBox {
    pub dims: Vec<Interval>,
}

impl RangeBox {
    /// The whole space in `d` dimensions.
    pub fn full(d: usize) -> Self {
        RangeBox { dims: vec![Interval::FULL; d] }
    }

    pub fn new(dims: Vec<Interval>) -> Self {
        RangeBox { dims }
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn set(&mut self, d: usize, iv: Interval) -> &mut Self {
        self.dims[d] = iv;
        self
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.dims.len() == p.len() && self.dims.iter().zip(p).all(|(iv, &x)| iv.contains(x))
    }

    /// Equivalent closed box, `None` when some axis is empty.
    pub fn to_closed(&self) -> Option<ClosedBox> {
        let mut lo = Vec::with_capacity(self.dims.len());
        let mut hi = Vec::with_capacity(self.dims.len());
        for iv in &self.dims {
            let (a, b) = iv.to_closed()?;
            lo.push(a);
            hi.push(b);
        }
        Some(ClosedBox { lo, hi })
    }
}

/// Box with closed integer bounds; `i64::MIN`/`i64::MAX` stand for infinity.
/// Exact for integer points, so strict bounds translate without loss.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl ClosedBox {
    pub fn full(d: usize) -> Self {
        ClosedBox { lo: vec![i64::MIN; d], hi: vec![i64::MAX; d] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(a, b)| a > b)
    }

    /// Intersects axis `d` with `[a, b]`.
    pub fn restrict(&mut self, d: usize, a: i64, b: i64) {
        self.lo[d] = self.lo[d].max(a);
        self.hi[d] = self.hi[d].min(b);
    }

    /// Intersects axis `d` with `(x, +inf)`.
    pub fn greater(&mut self, d: usize, x: i64) {
        match x.checked_add(1) {
            Some(y) => self.lo[d] = self.lo[d].max(y),
            None => self.make_empty(d),
        }
    }

    /// Intersects axis `d` with `[x, +inf)`.
    pub fn at_least(&mut self, d: usize, x: i64) {
        self.lo[d] = self.lo[d].max(x);
    }

    /// Intersects axis `d` with `(-inf, x)`.
    pub fn less(&mut self, d: usize, x: i64) {
        match x.checked_sub(1) {
            Some(y) => self.hi[d] = self.hi[d].min(y),
            None => self.make_empty(d),
        }
    }

    fn make_empty(&mut self, d: usize) {
        self.lo[d] = i64::MAX;
        self.hi[d] = i64::MIN;
    }

    /// Intersects axis `d` with `(-inf, x]`.
    pub fn at_most(&mut self, d: usize, x: i64) {
        self.hi[d] = self.hi[d].min(x);
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (a, b))| a <= x && x <= b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_bounds_normalize_exactly() {
        assert_eq!(Interval::above(3).to_closed(), Some((4, i64::MAX)));
        assert_eq!(Interval::below(3).to_closed(), Some((i64::MIN, 2)));
        assert_eq!(Interval::new(Bound::Excluded(3), Bound::Excluded(4)).to_closed(), None);
        assert_eq!(Interval::above(i64::MAX).to_closed(), None);
        assert!(Interval::point(5).contains(5));
        assert!(!Interval::point(5).contains(6));
    }

    #[test]
    fn closed_box_updates() {
        let mut b = ClosedBox::full(2);
        b.greater(0, 1);
        b.less(0, 3);
        assert!(b.contains(&[2, 0]));
        assert!(!b.contains(&[3, 0]));
        b.greater(1, i64::MAX);
        assert!(b.is_empty());
    }
}
