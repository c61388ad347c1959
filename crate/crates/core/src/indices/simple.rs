//! Indices that decompose over a single least common hub `x`:
//! `dist(u,v) = d(u,x) + d(x,v)` for every target `v` in a box.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::place::{placements, push_point, resolve, Block, Placement};
use super::{by_size, check_graph, symmetric_labels, IndexOptions, MAX_POWER};
use crate::engine::{witness_constraints, Discovery};
use crate::graph::{Graph, Vertex, Weight};
use crate::labeling::{HubLabeling, Label};
use crate::range::{histogram_sum, Aggregate, ClosedBox, RangeTree};
use crate::{Error, Result};

#[derive(Debug, Clone)]
struct Bucket {
    block: Block,
    /// `trees[s]` holds `p(v,s)` for every member `v`.
    trees: Vec<RangeTree>,
    /// `p(v,s)` extended by `v`, only where `d(q_s(v),v) > 0`; channels
    /// `[d, -d]`. Empty for weighted graphs.
    inverse: Vec<RangeTree>,
}

/// Per-source totals from one pass over the boxes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SourceSums {
    pub matched: u64,
    pub dsum: i128,
    pub ecc: i64,
    pub mti: i128,
}

/// Wiener-type and Harary-type indices over the points `p(v,s)` of
/// dimension `2|L(v)| - 1`.
#[derive(Debug, Clone)]
pub struct SimpleEngine {
    labels: Vec<Label>,
    degrees: Vec<u64>,
    weighted: bool,
    /// Channels `0..powers` hold `d^1..d^powers`; then `deg`, `deg * d`.
    powers: usize,
    discovery: Discovery,
    buckets: Vec<Bucket>,
}

impl SimpleEngine {
    /// Builds the trees. Power sums up to `max_power` use stored channels;
    /// larger exponents (or channels that would overflow) fall back to
    /// visiting the points.
    pub fn build(g: &Graph, l: &HubLabeling, max_power: u32, opts: IndexOptions) -> Result<Self> {
        check_graph(g, opts.allow_weighted)?;
        let labels = symmetric_labels(g, l, opts.cap)?;
        let n = labels.len();
        let k = labels.iter().map(Vec::len).max().unwrap_or(0);
        let discovery = resolve(opts.discovery, n, k);
        let weighted = g.is_weighted();
        let dmax = labels.iter().flatten().map(|e| e.1).max().unwrap_or(0) as i64;
        let mut powers = 1;
        while (powers as u32) < max_power.min(MAX_POWER) && dmax.checked_pow(powers as u32 + 1).is_some() {
            powers += 1;
        }
        let channels = powers + 2;
        let mut buckets = Vec::new();
        for (i, members) in by_size(&labels) {
            let d = 2 * i - 1;
            let mut trees = Vec::with_capacity(i);
            let mut inverse = Vec::new();
            for s in 0..i {
                let mut coords = Vec::with_capacity(members.len() * d);
                let mut values = Vec::with_capacity(members.len() * channels);
                let (mut icoords, mut iowners, mut ivalues) = (Vec::new(), Vec::new(), Vec::new());
                for &v in &members {
                    let lab = &labels[v];
                    push_point(lab, &[s], &mut coords);
                    let a = lab[s].1 as i64;
                    let mut p = 1i64;
                    for _ in 0..powers {
                        p *= a;
                        values.push(p);
                    }
                    let deg = g.degree(v) as i64;
                    values.push(deg);
                    values.push(if weighted { 0 } else { deg * a });
                    if !weighted && a > 0 {
                        push_point(lab, &[s], &mut icoords);
                        icoords.push(v as i64);
                        iowners.push(v);
                        ivalues.extend([a, -a]);
                    }
                }
                trees.push(RangeTree::from_flat(d, channels, coords, members.clone(), values, None)?);
                if !weighted {
                    inverse.push(RangeTree::from_flat(d + 1, 2, icoords, iowners, ivalues, Some(0))?);
                }
            }
            let block = Block::new(i, members, &labels, discovery);
            buckets.push(Bucket { block, trees, inverse });
        }
        Ok(SimpleEngine { labels, degrees: g.degrees().into_iter().map(|d| d as u64).collect(), weighted, powers, discovery, buckets })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn discovery(&self) -> Discovery {
        self.discovery
    }

    pub fn label(&self, v: Vertex) -> &Label {
        &self.labels[v]
    }

    /// Calls `f(bucket, s, box, d(u,x))` for every least-witness box of
    /// source `u`, skipping the remaining witnesses of a placement once its
    /// targets are all matched. `f` returns the number of targets matched.
    fn scan<F>(&self, u: Vertex, mut f: F) -> Result<u64>
    where
        F: FnMut(&Bucket, usize, &ClosedBox, i64) -> Result<u64>,
    {
        if u >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: u, n: self.n() });
        }
        let mut matched = 0;
        for b in &self.buckets {
            let i = b.block.i;
            for Placement { base, shared, count } in
                placements(&b.block, &[&self.labels[u]], 2 * i - 1, &b.trees[0], self.discovery)
            {
                let xs = &shared[0];
                let mut got = 0;
                for a in 0..xs.len() {
                    let mut bx = base.clone();
                    witness_constraints(&mut bx, xs, a, i);
                    if bx.is_empty() {
                        continue;
                    }
                    got += f(b, xs[a].pos, &bx, xs[a].dist)?;
                    if got >= count {
                        break;
                    }
                }
                matched += got;
            }
        }
        Ok(matched)
    }

    fn audit(&self, u: Vertex, matched: u64, expected: u64) -> Result<()> {
        if matched != expected {
            return Err(Error::Internal(format!("source {u}: boxes matched {matched} targets, expected {expected}")));
        }
        Ok(())
    }

    /// Distance-sum, eccentricity and MTI contribution of `u`.
    pub fn source_sums(&self, u: Vertex) -> Result<SourceSums> {
        let p = self.powers;
        let mut agg = Aggregate::new(p + 2);
        let mut out = SourceSums::default();
        let deg_u = self.degrees.get(u).copied().unwrap_or(0) as i128;
        out.matched = self.scan(u, |b, s, bx, dx| {
            agg.clear();
            b.trees[s].aggregate_into(bx, &mut agg);
            let (c, dx) = (agg.count as i128, dx as i128);
            if c > 0 {
                out.dsum += dx * c + agg.sum[0];
                if let Some((m, _)) = agg.max[0] {
                    out.ecc = out.ecc.max(dx as i64 + m);
                }
                out.mti += deg_u * (dx * c + agg.sum[0]) + dx * agg.sum[p] + agg.sum[p + 1];
            }
            Ok(agg.count)
        })?;
        self.audit(u, out.matched, self.n() as u64)?;
        Ok(out)
    }

    /// Ordered-pair Wiener index `sum over u != v of dist(u,v)`.
    pub fn wiener(&self) -> Result<u128> {
        let mut total = 0u128;
        for u in 0..self.n() {
            total += self.source_sums(u)?.dsum as u128;
        }
        Ok(total)
    }

    pub fn diameter(&self) -> Result<Weight> {
        let mut d = 0;
        for u in 0..self.n() {
            d = d.max(self.source_sums(u)?.ecc);
        }
        Ok(d as Weight)
    }

    /// Ordered-pair MTI `sum over u != v of (deg u + deg v) dist(u,v)`.
    pub fn mti(&self) -> Result<u128> {
        self.unweighted("MTI")?;
        let mut total = 0u128;
        for u in 0..self.n() {
            total += self.source_sums(u)?.mti as u128;
        }
        Ok(total)
    }

    /// Ordered-pair `sum over u != v of dist(u,v)^alpha`, by the binomial
    /// expansion of `(d(u,x) + d(x,v))^alpha` over the power channels.
    pub fn power_sum(&self, alpha: u32) -> Result<BigUint> {
        if alpha == 0 || alpha > MAX_POWER {
            return Err(Error::InvalidParameters(format!("exponent {alpha} outside 1..={MAX_POWER}")));
        }
        let a = alpha as usize;
        let binom = binomials(a);
        let mut agg = Aggregate::new(self.powers + 2);
        let mut total = BigInt::zero();
        for u in 0..self.n() {
            let matched = self.scan(u, |b, s, bx, dx| {
                let tree = &b.trees[s];
                if a <= self.powers {
                    agg.clear();
                    tree.aggregate_into(bx, &mut agg);
                    if agg.count > 0 {
                        let mut dpow = BigInt::from(1);
                        for (t, c) in binom.iter().enumerate() {
                            let rest = if t == a { BigInt::from(agg.count) } else { BigInt::from(agg.sum[a - t - 1]) };
                            total += &dpow * c * rest;
                            dpow *= dx;
                        }
                    }
                    Ok(agg.count)
                } else {
                    let mut c = 0;
                    tree.visit(bx, |piece| {
                        for q in tree.points_of(piece) {
                            total += BigInt::from(dx + tree.point_value(q, 0)).pow(alpha);
                            c += 1;
                        }
                    });
                    Ok(c)
                }
            })?;
            self.audit(u, matched, self.n() as u64)?;
        }
        total.to_biguint().ok_or(Error::Internal("negative power sum".into()))
    }

    /// Ordered-pair Hyper-Wiener index `1/2 sum (d + d^2)`.
    pub fn hyper_wiener(&self) -> Result<BigRational> {
        let s = BigInt::from(self.power_sum(1)?) + BigInt::from(self.power_sum(2)?);
        Ok(BigRational::new(s, BigInt::from(2)))
    }

    /// Ordered-pair Harary index `sum over u != v of 1 / dist(u,v)`.
    pub fn harary(&self) -> Result<BigRational> {
        self.unweighted("Harary index")?;
        self.inverse_sum(0, |dx| dx)
    }

    /// Ordered-pair reciprocal complementary Wiener index
    /// `sum over u != v of 1 / (diam + 1 - dist(u,v))`.
    pub fn rcw(&self) -> Result<BigRational> {
        self.unweighted("reciprocal complementary Wiener index")?;
        let top = self.diameter()? as i64 + 1;
        self.inverse_sum(1, |dx| top - dx)
    }

    /// Sums `1 / (shift(d(u,x)) + value)` over all ordered pairs, where the
    /// value is channel `ch` of the inverse trees (`d` or `-d`). Targets in
    /// `L(u)` are taken from the label directly and cut out of the boxes on
    /// the appended vertex coordinate.
    fn inverse_sum(&self, ch: usize, shift: impl Fn(i64) -> i64) -> Result<BigRational> {
        let mut total: BTreeMap<i128, u64> = BTreeMap::new();
        let mut hist: BTreeMap<i128, u64> = BTreeMap::new();
        for u in 0..self.n() {
            hist.clear();
            let lu = &self.labels[u];
            for &(x, d) in lu {
                if x != u {
                    *hist.entry(shift(d as i64) as i128).or_insert(0) += 1;
                }
            }
            let matched = self.scan(u, |b, s, bx, dx| {
                let c = b.trees[s].count_into(bx);
                if c == 0 {
                    return Ok(0);
                }
                let tree = &b.inverse[s];
                let mut prev: Option<i64> = None;
                for next in lu.iter().map(|e| Some(e.0 as i64)).chain([None]) {
                    let lo = prev.map_or(i64::MIN, |p| p + 1);
                    let hi = next.map_or(i64::MAX, |q| q - 1);
                    if lo <= hi {
                        let mut sub = bx.clone();
                        sub.lo.push(lo);
                        sub.hi.push(hi);
                        tree.isw_histogram_channel_into(&sub, shift(dx), ch, &mut hist)?;
                    }
                    prev = next;
                }
                Ok(c)
            })?;
            self.audit(u, matched, self.n() as u64)?;
            let counted: u64 = hist.values().sum();
            self.audit(u, counted, self.n() as u64 - 1)?;
            if let Some((&den, _)) = hist.iter().next() {
                if den <= 0 {
                    return Err(Error::Internal(format!("source {u}: non-positive denominator {den}")));
                }
            }
            for (&den, &c) in &hist {
                *total.entry(den).or_insert(0) += c;
            }
        }
        Ok(histogram_sum(&total))
    }

    fn unweighted(&self, what: &str) -> Result<()> {
        if self.weighted {
            return Err(Error::Unsupported(format!("{what} needs an unweighted graph")));
        }
        Ok(())
    }
}

/// `C(a, t)` for `t = 0..=a`.
fn binomials(a: usize) -> Vec<BigInt> {
    let mut row = alloc::vec![1u64];
    for _ in 0..a {
        let mut next = alloc::vec![1u64; row.len() + 1];
        for t in 1..row.len() {
            next[t] = row[t - 1] + row[t];
        }
        row = next;
    }
    row.into_iter().map(BigInt::from).collect()
}

/// Decimal rendering of a rational with `places` digits after the point,
/// rounded half away from zero.
pub fn decimal(r: &BigRational, places: usize) -> alloc::string::String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = r * BigRational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let abs = rounded.abs();
    let int = &abs / &scale;
    let frac = format!("{}", &abs % &scale);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac:0>places$}")
    }
}
