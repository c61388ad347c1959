use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{ClosedBox, RangeBox};
use crate::{Error, Result};

/// Points per leaf.
const LEAF: usize = 8;
/// Dimensions are tracked in a 128-bit mask during queries.
pub const MAX_DIM: usize = 128;
const NO_CHILD: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub coords: Vec<i64>,
    pub owner: usize,
    pub values: Vec<i64>,
}

/// A piece of a query decomposition: a whole node or a single point.
/// Point indices refer to the tree's internal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Canonical {
    Node(usize),
    Point(usize),
}

#[derive(Debug, Clone, Copy)]
struct Node {
    lo: usize,
    hi: usize,
    left: usize,
    right: usize,
}

/// Result of an all-channel aggregate query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aggregate {
    pub count: u64,
    /// Per channel: largest value and the smallest owner attaining it.
    pub max: Vec<Option<(i64, usize)>>,
    pub sum: Vec<i128>,
}

impl Aggregate {
    pub fn new(channels: usize) -> Self {
        Aggregate { count: 0, max: vec![None; channels], sum: vec![0; channels] }
    }

    pub fn clear(&mut self) {
        self.count = 0;
        self.max.iter_mut().for_each(|m| *m = None);
        self.sum.iter_mut().for_each(|s| *s = 0);
    }

    fn offer(&mut self, ch: usize, value: i64, owner: usize) {
        let m = &mut self.max[ch];
        match m {
            Some((v, o)) if *v > value || (*v == value && *o <= owner) => {}
            _ => *m = Some((value, owner)),
        }
    }
}

/// Balanced k-d tree over integer points, with per-node bounding boxes and
/// per-channel max/sum aggregates. Each node owns a contiguous slice of the
/// points in tree order.
#[derive(Debug, Clone)]
pub struct RangeTree {
    d: usize,
    c: usize,
    isw: Option<usize>,
    coords: Vec<i64>,
    owners: Vec<usize>,
    values: Vec<i64>,
    nodes: Vec<Node>,
    bmin: Vec<i64>,
    bmax: Vec<i64>,
    amax: Vec<i64>,
    aown: Vec<usize>,
    asum: Vec<i128>,
}

impl RangeTree {
    pub fn build(points: Vec<Point>, channels: usize, isw_channel: Option<usize>) -> Result<Self> {
        let d = points.first().map_or(1, |p| p.coords.len());
        let mut coords = Vec::with_capacity(points.len() * d);
        let mut owners = Vec::with_capacity(points.len());
        let mut values = Vec::with_capacity(points.len() * channels);
        for p in points {
            if p.coords.len() != d {
                return Err(Error::Dimension { expected: d, got: p.coords.len() });
            }
            if p.values.len() != channels {
                return Err(Error::Channel { channel: p.values.len(), channels });
            }
            coords.extend(p.coords);
            owners.push(p.owner);
            values.extend(p.values);
        }
        Self::from_flat(d, channels, coords, owners, values, isw_channel)
    }

    /// Builds from row-major coordinate and value arrays.
    pub fn from_flat(
        d: usize,
        channels: usize,
        coords: Vec<i64>,
        owners: Vec<usize>,
        values: Vec<i64>,
        isw_channel: Option<usize>,
    ) -> Result<Self> {
        if d == 0 || d > MAX_DIM {
            return Err(Error::InvalidParameters(format!("dimension {d} outside 1..={MAX_DIM}")));
        }
        let n = owners.len();
        if coords.len() != n * d || values.len() != n * channels {
            return Err(Error::InvalidParameters("flat arrays disagree with point count".into()));
        }
        if let Some(ch) = isw_channel {
            if ch >= channels {
                return Err(Error::Channel { channel: ch, channels });
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        let mut nodes = Vec::with_capacity(2 * n / LEAF + 1);
        if n > 0 {
            split(&coords, d, &mut order, 0, &mut nodes);
        }
        let mut t = RangeTree {
            d,
            c: channels,
            isw: isw_channel,
            coords: Vec::with_capacity(n * d),
            owners: Vec::with_capacity(n),
            values: Vec::with_capacity(n * channels),
            nodes,
            bmin: Vec::new(),
            bmax: Vec::new(),
            amax: Vec::new(),
            aown: Vec::new(),
            asum: Vec::new(),
        };
        for &i in &order {
            t.coords.extend_from_slice(&coords[i * d..(i + 1) * d]);
            t.owners.push(owners[i]);
            t.values.extend_from_slice(&values[i * channels..(i + 1) * channels]);
        }
        t.compute_aggregates();
        Ok(t)
    }

    fn compute_aggregates(&mut self) {
        let (d, c, m) = (self.d, self.c, self.nodes.len());
        self.bmin = vec![i64::MAX; m * d];
        self.bmax = vec![i64::MIN; m * d];
        self.amax = vec![i64::MIN; m * c];
        self.aown = vec![usize::MAX; m * c];
        self.asum = vec![0; m * c];
        // Children always follow their parent, so a reverse sweep is bottom-up.
        for i in (0..m).rev() {
            let nd = self.nodes[i];
            if nd.left == NO_CHILD {
                for p in nd.lo..nd.hi {
                    for k in 0..d {
                        let x = self.coords[p * d + k];
                        self.bmin[i * d + k] = self.bmin[i * d + k].min(x);
                        self.bmax[i * d + k] = self.bmax[i * d + k].max(x);
                    }
                    for ch in 0..c {
                        self.absorb(i, ch, self.values[p * c + ch], self.owners[p], self.values[p * c + ch] as i128);
                    }
                }
            } else {
                for child in [nd.left, nd.right] {
                    for k in 0..d {
                        self.bmin[i * d + k] = self.bmin[i * d + k].min(self.bmin[child * d + k]);
                        self.bmax[i * d + k] = self.bmax[i * d + k].max(self.bmax[child * d + k]);
                    }
                    for ch in 0..c {
                        let (v, o, s) = (self.amax[child * c + ch], self.aown[child * c + ch], self.asum[child * c + ch]);
                        self.absorb(i, ch, v, o, s);
                    }
                }
            }
        }
    }

    fn absorb(&mut self, node: usize, ch: usize, v: i64, owner: usize, s: i128) {
        let j = node * self.c + ch;
        if v > self.amax[j] || (v == self.amax[j] && owner < self.aown[j]) {
            self.amax[j] = v;
            self.aown[j] = owner;
        }
        self.asum[j] += s;
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn channels(&self) -> usize {
        self.c
    }

    pub fn len(&self) -> usize {
        self.owners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owners.is_empty()
    }

    pub fn point_coords(&self, p: usize) -> &[i64] {
        &self.coords[p * self.d..(p + 1) * self.d]
    }

    pub fn point_owner(&self, p: usize) -> usize {
        self.owners[p]
    }

    pub fn point_value(&self, p: usize, ch: usize) -> i64 {
        self.values[p * self.c + ch]
    }

    /// Tree-order point indices covered by a canonical piece.
    pub fn points_of(&self, c: Canonical) -> core::ops::Range<usize> {
        match c {
            Canonical::Node(i) => self.nodes[i].lo..self.nodes[i].hi,
            Canonical::Point(p) => p..p + 1,
        }
    }

    /// Recomputes a node's aggregates from its points and compares them with
    /// the stored ones.
    pub fn node_consistent(&self, i: usize) -> bool {
        let nd = self.nodes[i];
        let mut agg = Aggregate::new(self.c);
        for p in nd.lo..nd.hi {
            self.add_point(p, &mut agg);
        }
        (0..self.c).all(|ch| {
            agg.sum[ch] == self.asum[i * self.c + ch]
                && agg.max[ch] == Some((self.amax[i * self.c + ch], self.aown[i * self.c + ch]))
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn check_dim(&self, b: &ClosedBox) -> Result<()> {
        if b.dim() != self.d {
            return Err(Error::Dimension { expected: self.d, got: b.dim() });
        }
        Ok(())
    }

    fn check_channel(&self, ch: usize) -> Result<()> {
        if ch >= self.c {
            return Err(Error::Channel { channel: ch, channels: self.c });
        }
        Ok(())
    }

    /// Calls `f` on the canonical pieces of `b`: maximal nodes inside the
    /// box plus single matching points from partially covered leaves.
    pub fn visit<F: FnMut(Canonical)>(&self, b: &ClosedBox, mut f: F) {
        if self.nodes.is_empty() || b.is_empty() {
            return;
        }
        let d = self.d;
        let mut active: u128 = 0;
        for k in 0..d {
            if b.lo[k] != i64::MIN || b.hi[k] != i64::MAX {
                active |= 1 << k;
            }
        }
        let mut stack = [0usize; 256];
        let mut top = 1;
        while top > 0 {
            top -= 1;
            let i = stack[top];
            let (mut inside, mut disjoint) = (true, false);
            let mut m = active;
            while m != 0 {
                let k = m.trailing_zeros() as usize;
                m &= m - 1;
                let (mn, mx) = (self.bmin[i * d + k], self.bmax[i * d + k]);
                if mx < b.lo[k] || mn > b.hi[k] {
                    disjoint = true;
                    break;
                }
                if mn < b.lo[k] || mx > b.hi[k] {
                    inside = false;
                }
            }
            if disjoint {
                continue;
            }
            if inside {
                f(Canonical::Node(i));
                continue;
            }
            let nd = self.nodes[i];
            if nd.left == NO_CHILD {
                'points: for p in nd.lo..nd.hi {
                    let mut m = active;
                    while m != 0 {
                        let k = m.trailing_zeros() as usize;
                        m &= m - 1;
                        let x = self.coords[p * d + k];
                        if x < b.lo[k] || x > b.hi[k] {
                            continue 'points;
                        }
                    }
                    f(Canonical::Point(p));
                }
            } else {
                stack[top] = nd.right;
                stack[top + 1] = nd.left;
                top += 2;
            }
        }
    }

    pub fn canonical_pieces(&self, b: &ClosedBox) -> Result<Vec<Canonical>> {
        self.check_dim(b)?;
        let mut out = Vec::new();
        self.visit(b, |c| out.push(c));
        Ok(out)
    }

    fn add_point(&self, p: usize, agg: &mut Aggregate) {
        agg.count += 1;
        for ch in 0..self.c {
            let v = self.values[p * self.c + ch];
            agg.offer(ch, v, self.owners[p]);
            agg.sum[ch] += v as i128;
        }
    }

    /// Adds the aggregates of all points in `b` to `agg`.
    pub fn aggregate_into(&self, b: &ClosedBox, agg: &mut Aggregate) {
        debug_assert_eq!(b.dim(), self.d);
        let c = self.c;
        self.visit(b, |piece| match piece {
            Canonical::Node(i) => {
                let nd = self.nodes[i];
                agg.count += (nd.hi - nd.lo) as u64;
                for ch in 0..c {
                    agg.offer(ch, self.amax[i * c + ch], self.aown[i * c + ch]);
                    agg.sum[ch] += self.asum[i * c + ch];
                }
            }
            Canonical::Point(p) => self.add_point(p, agg),
        });
    }

    /// Number of points in `b`.
    pub fn count_into(&self, b: &ClosedBox) -> u64 {
        let mut count = 0;
        self.visit(b, |piece| count += self.points_of(piece).len() as u64);
        count
    }

    pub fn aggregate(&self, b: &RangeBox) -> Result<Aggregate> {
        let mut agg = Aggregate::new(self.c);
        if b.dim() != self.d {
            return Err(Error::Dimension { expected: self.d, got: b.dim() });
        }
        if let Some(cb) = b.to_closed() {
            self.aggregate_into(&cb, &mut agg);
        }
        Ok(agg)
    }

    pub fn max_query(&self, b: &RangeBox, ch: usize) -> Result<Option<(i64, usize)>> {
        self.check_channel(ch)?;
        Ok(self.aggregate(b)?.max[ch])
    }

    pub fn sum_query(&self, b: &RangeBox, ch: usize) -> Result<i128> {
        self.check_channel(ch)?;
        Ok(self.aggregate(b)?.sum[ch])
    }

    pub fn count_query(&self, b: &RangeBox) -> Result<u64> {
        Ok(self.aggregate(b)?.count)
    }

    /// Adds `1` to `hist[delta + value]` for every point in `b`, reading the
    /// designated channel. Fails on a zero denominator.
    pub fn isw_histogram_into(
        &self,
        b: &ClosedBox,
        delta: i64,
        hist: &mut BTreeMap<i128, u64>,
    ) -> Result<()> {
        let ch = self.isw.ok_or_else(|| {
            Error::InvalidParameters("tree was built without an inverse shifted-weight channel".into())
        })?;
        self.isw_histogram_channel_into(b, delta, ch, hist)
    }

    /// Like [`RangeTree::isw_histogram_into`] but reads channel `ch`.
    pub fn isw_histogram_channel_into(
        &self,
        b: &ClosedBox,
        delta: i64,
        ch: usize,
        hist: &mut BTreeMap<i128, u64>,
    ) -> Result<()> {
        self.check_dim(b)?;
        self.check_channel(ch)?;
        let mut singular = false;
        self.visit(b, |piece| {
            for p in self.points_of(piece) {
                let den = delta as i128 + self.values[p * self.c + ch] as i128;
                if den == 0 {
                    singular = true;
                }
                *hist.entry(den).or_insert(0) += 1;
            }
        });
        if singular {
            return Err(Error::Singularity);
        }
        Ok(())
    }

    /// Exact `sum over points p in b of 1 / (delta + f(p))`.
    pub fn isw_query(&self, b: &RangeBox, delta: i64) -> Result<BigRational> {
        if b.dim() != self.d {
            return Err(Error::Dimension { expected: self.d, got: b.dim() });
        }
        let mut hist = BTreeMap::new();
        if let Some(cb) = b.to_closed() {
            self.isw_histogram_into(&cb, delta, &mut hist)?;
        } else if self.isw.is_none() {
            return Err(Error::InvalidParameters(
                "tree was built without an inverse shifted-weight channel".into(),
            ));
        }
        Ok(histogram_sum(&hist))
    }
}

/// `sum over (den, count) of count / den` as an exact rational.
pub fn histogram_sum(hist: &BTreeMap<i128, u64>) -> BigRational {
    let mut total = BigRational::zero();
    for (&den, &cnt) in hist {
        total += BigRational::new(BigInt::from(cnt), BigInt::from(den));
    }
    total
}

/// Median split on the dimension of largest spread; appends nodes in preorder.
fn split(coords: &[i64], d: usize, idx: &mut [usize], offset: usize, nodes: &mut Vec<Node>) -> usize {
    let me = nodes.len();
    nodes.push(Node { lo: offset, hi: offset + idx.len(), left: NO_CHILD, right: NO_CHILD });
    if idx.len() <= LEAF {
        return me;
    }
    let mut best = (0u128, 0usize);
    for k in 0..d {
        let (mut mn, mut mx) = (i64::MAX, i64::MIN);
        for &p in idx.iter() {
            let x = coords[p * d + k];
            mn = mn.min(x);
            mx = mx.max(x);
        }
        let spread = (mx as i128 - mn as i128) as u128;
        if spread > best.0 {
            best = (spread, k);
        }
    }
    if best.0 == 0 {
        return me;
    }
    let k = best.1;
    let mid = idx.len() / 2;
    idx.select_nth_unstable_by_key(mid, |&p| coords[p * d + k]);
    let (a, b) = idx.split_at_mut(mid);
    let left = split(coords, d, a, offset, nodes);
    let right = split(coords, d, b, offset + mid, nodes);
    nodes[me].left = left;
    nodes[me].right = right;
    me
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::range::Interval;
    use core::ops::Bound;

    fn line() -> RangeTree {
        let pts = [1, 5, 9]
            .iter()
            .zip([10, 20, 30])
            .enumerate()
            .map(|(i, (&x, v))| Point { coords: vec![x], owner: i, values: vec![v] })
            .collect();
        RangeTree::build(pts, 1, Some(0)).unwrap()
    }

    #[test]
    fn one_dimensional_queries() {
        let t = line();
        let b = RangeBox::new(vec![Interval::closed(2, 9)]);
        assert_eq!(t.max_query(&b, 0).unwrap(), Some((30, 2)));
        let all = RangeBox::full(1);
        assert_eq!(t.sum_query(&all, 0).unwrap(), 60);
        assert_eq!(t.count_query(&all).unwrap(), 3);
        let half = RangeBox::new(vec![Interval::new(Bound::Included(1), Bound::Excluded(5))]);
        assert_eq!(t.sum_query(&half, 0).unwrap(), 10);
        assert_eq!(t.count_query(&half).unwrap(), 1);
        let none = RangeBox::new(vec![Interval::closed(10, 20)]);
        assert_eq!(t.max_query(&none, 0).unwrap(), None);
        assert_eq!(t.count_query(&none).unwrap(), 0);
        assert!(t.max_query(&all, 1).is_err());
        assert!(t.count_query(&RangeBox::full(2)).is_err());
    }

    #[test]
    fn empty_tree_is_neutral() {
        let t = RangeTree::build(vec![], 2, None).unwrap();
        let b = RangeBox::full(1);
        assert_eq!(t.count_query(&b).unwrap(), 0);
        assert_eq!(t.sum_query(&b, 1).unwrap(), 0);
        assert_eq!(t.max_query(&b, 0).unwrap(), None);
    }

    #[test]
    fn ties_prefer_smaller_owner() {
        let pts = (0..20)
            .map(|i| Point { coords: vec![i, -i], owner: 100 - i as usize, values: vec![7] })
            .collect();
        let t = RangeTree::build(pts, 1, None).unwrap();
        assert_eq!(t.max_query(&RangeBox::full(2), 0).unwrap(), Some((7, 81)));
        assert_eq!(t.count_query(&RangeBox::full(2)).unwrap(), 20);
    }

    #[test]
    fn inverse_shifted_weights() {
        let pts = [1, 2].iter().map(|&v| Point { coords: vec![v], owner: 0, values: vec![v] }).collect();
        let t = RangeTree::build(pts, 1, Some(0)).unwrap();
        let r = t.isw_query(&RangeBox::full(1), 1).unwrap();
        assert_eq!(r, BigRational::new(5.into(), 6.into()));
        let empty = RangeBox::new(vec![Interval::closed(5, 4)]);
        assert_eq!(t.isw_query(&empty, 1).unwrap(), BigRational::zero());
        let neg = RangeTree::build(vec![Point { coords: vec![0], owner: 0, values: vec![-1] }], 1, Some(0)).unwrap();
        assert!(matches!(neg.isw_query(&RangeBox::full(1), 1), Err(Error::Singularity)));
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let pts = vec![
            Point { coords: vec![1], owner: 0, values: vec![] },
            Point { coords: vec![1, 2], owner: 1, values: vec![] },
        ];
        assert!(RangeTree::build(pts, 0, None).is_err());
    }
}
