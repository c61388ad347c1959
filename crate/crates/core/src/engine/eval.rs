//! Box evaluation shared by the labeled engine and the uniform bi-chromatic
//! engine.

use alloc::vec::Vec;

use crate::graph::{DistanceMode, Vertex};
use crate::range::{Aggregate, ClosedBox, RangeTree};

/// Value channels stored with every point.
pub(crate) const CH_F0: usize = 0;
pub(crate) const CH_F1: usize = 1;
pub(crate) const CH_RT: usize = 2;
pub(crate) const CHANNELS: usize = 3;

/// Which of `dist(u,v) <= dist(v,u)` (Le) or `>` (Gt) holds for a target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Le,
    Gt,
}

/// Position of a difference coordinate: the values for `r != s` are listed
/// in ascending `r`.
#[inline]
pub(crate) fn idx(r: usize, s: usize) -> usize {
    debug_assert_ne!(r, s);
    if r < s {
        r
    } else {
        r - 1
    }
}

/// Where the difference blocks and the last coordinate sit in a point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Layout {
    pub diff_x: usize,
    pub diff_y: usize,
    pub last: usize,
}

/// A hub shared with the source: its position in the target label and the
/// source-side distance (`dOut(u,x)` for X hubs, `dIn(y,u)` for Y hubs).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Shared {
    pub pos: usize,
    pub dist: i64,
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct ModeAcc {
    pub best: Option<(i128, Vertex)>,
    pub sum: i128,
    pub count: u64,
}

impl ModeAcc {
    fn feed(&mut self, offset: i128, agg: &Aggregate, ch: usize) {
        let Some((v, owner)) = agg.max[ch] else { return };
        let value = offset + v as i128;
        match self.best {
            Some((b, o)) if b > value || (b == value && o <= owner) => {}
            _ => self.best = Some((value, owner)),
        }
        self.sum += offset * agg.count as i128 + agg.sum[ch];
        self.count += agg.count;
    }
}

/// Per-query state: one accumulator per requested mode plus the number of
/// targets matched by any box.
pub(crate) struct Accumulator {
    pub modes: Vec<(DistanceMode, ModeAcc)>,
    pub matched: u64,
    pub boxes: u64,
    agg: Aggregate,
}

impl Accumulator {
    pub fn new(modes: &[DistanceMode]) -> Self {
        Accumulator {
            modes: modes.iter().map(|&m| (m, ModeAcc::default())).collect(),
            matched: 0,
            boxes: 0,
            agg: Aggregate::new(CHANNELS),
        }
    }

    /// Queries `tree` with `b` and feeds the result. `x`/`y` are the source
    /// offsets of the chosen witnesses; a missing witness means that
    /// direction is uncovered (infinite estimate).
    fn run(&mut self, tree: &RangeTree, b: &ClosedBox, x: Option<i64>, y: Option<i64>, side: Side) -> u64 {
        self.boxes += 1;
        self.agg.clear();
        tree.aggregate_into(b, &mut self.agg);
        let c = self.agg.count;
        if c == 0 {
            return 0;
        }
        self.matched += c;
        let agg = &self.agg;
        for (mode, acc) in self.modes.iter_mut() {
            let pick = match (*mode, side) {
                (DistanceMode::Source, _) => x.map(|dx| (dx as i128, CH_F0)),
                (DistanceMode::Roundtrip, _) => {
                    x.zip(y).map(|(dx, dy)| (dx as i128 + dy as i128, CH_RT))
                }
                (DistanceMode::Min, Side::Le) | (DistanceMode::Max, Side::Gt) => {
                    if *mode == DistanceMode::Max && y.is_none() {
                        None
                    } else {
                        x.map(|dx| (dx as i128, CH_F0))
                    }
                }
                (DistanceMode::Min, Side::Gt) | (DistanceMode::Max, Side::Le) => {
                    if *mode == DistanceMode::Max && x.is_none() {
                        None
                    } else {
                        y.map(|dy| (dy as i128, CH_F1))
                    }
                }
            };
            if let Some((offset, ch)) = pick {
                acc.feed(offset, agg, ch);
            }
        }
        c
    }
}

/// Least-witness constraints for choosing `shared[a]`: every other shared
/// hub must give a strictly larger estimate if it precedes in ID order and a
/// larger-or-equal one if it follows.
pub(crate) fn witness_constraints(b: &mut ClosedBox, shared: &[Shared], a: usize, diff: usize) {
    let me = shared[a];
    for (k, other) in shared.iter().enumerate() {
        if k == a {
            continue;
        }
        let coord = diff + idx(other.pos, me.pos);
        let thr = me.dist - other.dist;
        if k < a {
            b.greater(coord, thr);
        } else {
            b.at_least(coord, thr);
        }
    }
}

/// Evaluates all `(x, y, side)` boxes of one configuration, stopping once
/// `expected` targets are matched. `tree(s, t)` returns the tree holding the
/// points `p(v,s,t)`. Without `split`, sides and Y are ignored (source-only
/// evaluation).
#[allow(clippy::too_many_arguments)]
pub(crate) fn evaluate<'t>(
    base: &ClosedBox,
    xs: &[Shared],
    ys: &[Shared],
    layout: Layout,
    split: bool,
    expected: Option<u64>,
    tree: impl Fn(usize, usize) -> &'t RangeTree,
    acc: &mut Accumulator,
) {
    let mut got = 0u64;
    let done = |got: u64| expected.is_some_and(|e| got >= e);
    if !split || ys.is_empty() {
        // dist(v,u) is infinite or irrelevant: every target sits on the Le side.
        for a in 0..xs.len() {
            let mut b = base.clone();
            witness_constraints(&mut b, xs, a, layout.diff_x);
            got += acc.run(tree(xs[a].pos, 0), &b, Some(xs[a].dist), None, Side::Le);
            if done(got) {
                return;
            }
        }
        return;
    }
    if xs.is_empty() {
        for c in 0..ys.len() {
            let mut b = base.clone();
            witness_constraints(&mut b, ys, c, layout.diff_y);
            got += acc.run(tree(0, ys[c].pos), &b, None, Some(ys[c].dist), Side::Gt);
            if done(got) {
                return;
            }
        }
        return;
    }
    for a in 0..xs.len() {
        let mut bx = base.clone();
        witness_constraints(&mut bx, xs, a, layout.diff_x);
        if bx.is_empty() {
            continue;
        }
        for c in 0..ys.len() {
            let mut bxy = bx.clone();
            witness_constraints(&mut bxy, ys, c, layout.diff_y);
            if bxy.is_empty() {
                continue;
            }
            let t = tree(xs[a].pos, ys[c].pos);
            let split_at = ys[c].dist - xs[a].dist;
            for side in [Side::Le, Side::Gt] {
                let mut b = bxy.clone();
                match side {
                    Side::Le => b.at_most(layout.last, split_at),
                    Side::Gt => b.greater(layout.last, split_at),
                }
                got += acc.run(t, &b, Some(xs[a].dist), Some(ys[c].dist), side);
                if done(got) {
                    return;
                }
            }
        }
    }
}
