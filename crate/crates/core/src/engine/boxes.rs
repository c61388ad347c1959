use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::eval::{idx, Side};
use crate::graph::{Vertex, Weight};
use crate::labeling::HubLabeling;
use crate::range::ClosedBox;

/// A bucket of targets with label sizes `(i, j)`, the hubs `X` they share
/// with the source's out-label, the hubs `Y` shared with its in-label, and
/// the least hubs `x`, `y` realizing both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTuple {
    pub i: usize,
    pub j: usize,
    pub x_set: Vec<Vertex>,
    pub y_set: Vec<Vertex>,
    pub x: Vertex,
    pub y: Vertex,
}

/// Coordinates of `p(v,s,t)`.
pub fn point(l: &HubLabeling, v: Vertex, s: usize, t: usize) -> Vec<i64> {
    let (lin, lout) = (l.in_label(v), l.out_label(v));
    let mut out: Vec<i64> = lin.iter().map(|e| e.0 as i64).collect();
    out.extend(lout.iter().map(|e| e.0 as i64));
    let ds = lin[s].1 as i64;
    out.extend(lin.iter().enumerate().filter(|&(r, _)| r != s).map(|(_, e)| e.1 as i64 - ds));
    let dt = lout[t].1 as i64;
    out.extend(lout.iter().enumerate().filter(|&(r, _)| r != t).map(|(_, e)| e.1 as i64 - dt));
    out.push(ds - dt);
    out
}

fn dist_of(label: &[(Vertex, Weight)], h: Vertex) -> i64 {
    label[label.binary_search_by_key(&h, |e| e.0).expect("hub belongs to the label")].1 as i64
}

/// Increasing position tuples of length `k` drawn from `0..n`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in start..n {
            cur.push(p);
            rec(p + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Places the hubs of one block: pins `shared` at `positions`, and for
/// every excluded hub tries every insertion index. Empty boxes are dropped.
fn place_block(
    boxes: Vec<ClosedBox>,
    offset: usize,
    width: usize,
    shared: &[Vertex],
    positions: &[usize],
    excluded: &[Vertex],
) -> Vec<ClosedBox> {
    let mut cur: Vec<ClosedBox> = boxes
        .into_iter()
        .filter_map(|mut b| {
            for (&h, &p) in shared.iter().zip(positions) {
                b.restrict(offset + p, h as i64, h as i64);
            }
            (!b.is_empty()).then_some(b)
        })
        .collect();
    for &z in excluded {
        let mut next = Vec::new();
        for b in &cur {
            for lz in 0..=width {
                let mut c = b.clone();
                for l in 0..width {
                    if l < lz {
                        c.less(offset + l, z as i64);
                    } else {
                        c.greater(offset + l, z as i64);
                    }
                }
                if !c.is_empty() {
                    next.push(c);
                }
            }
        }
        cur = next;
    }
    cur
}

/// The literal box family for source `u`, tuple `phi` and `side`: every
/// placement of `X` and `Y` among the target's hubs, every insertion index
/// of the excluded hubs, then the least-witness and side constraints. Each
/// entry names the tree `(position of x, position of y)` to query.
/// Exponential in the label sizes; intended for checking small instances.
pub fn boxes_for(l: &HubLabeling, u: Vertex, phi: &WitnessTuple, side: Side) -> Vec<((usize, usize), ClosedBox)> {
    let (i, j) = (phi.i, phi.j);
    let (uo, ui) = (l.out_label(u), l.in_label(u));
    let d = 2 * (i + j) - 1;
    let (diff_x, diff_y, last) = (i + j, 2 * i + j - 1, d - 1);
    let ex_x: Vec<Vertex> = uo.iter().map(|e| e.0).filter(|h| !phi.x_set.contains(h)).collect();
    let ex_y: Vec<Vertex> = ui.iter().map(|e| e.0).filter(|h| !phi.y_set.contains(h)).collect();
    let (Some(ax), Some(ay)) = (
        phi.x_set.iter().position(|&h| h == phi.x),
        phi.y_set.iter().position(|&h| h == phi.y),
    ) else {
        return Vec::new();
    };
    let dux = dist_of(uo, phi.x);
    let dyu = dist_of(ui, phi.y);
    let mut out = BTreeSet::new();
    for px in combinations(i, phi.x_set.len()) {
        let bx = place_block(vec![ClosedBox::full(d)], 0, i, &phi.x_set, &px, &ex_x);
        for py in combinations(j, phi.y_set.len()) {
            let bxy = place_block(bx.clone(), i, j, &phi.y_set, &py, &ex_y);
            for mut b in bxy {
                for (k, &h) in phi.x_set.iter().enumerate() {
                    if k == ax {
                        continue;
                    }
                    let coord = diff_x + idx(px[k], px[ax]);
                    let thr = dux - dist_of(uo, h);
                    if h < phi.x {
                        b.greater(coord, thr);
                    } else {
                        b.at_least(coord, thr);
                    }
                }
                for (k, &h) in phi.y_set.iter().enumerate() {
                    if k == ay {
                        continue;
                    }
                    let coord = diff_y + idx(py[k], py[ay]);
                    let thr = dyu - dist_of(ui, h);
                    if h < phi.y {
                        b.greater(coord, thr);
                    } else {
                        b.at_least(coord, thr);
                    }
                }
                match side {
                    Side::Le => b.at_most(last, dyu - dux),
                    Side::Gt => b.greater(last, dyu - dux),
                }
                if !b.is_empty() {
                    out.insert(((px[ax], py[ay]), b));
                }
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::Flavor;

    #[test]
    fn two_placements_for_a_single_shared_hub() {
        // u = 0 with L+(0) = {0}; targets of size i = 2 sharing X = {0}.
        let labels = vec![vec![(0, 0)], vec![(0, 1), (1, 0)], vec![(0, 2), (2, 0)]];
        let l = HubLabeling::new(labels.clone(), labels, Flavor::Exact).unwrap();
        let phi = WitnessTuple { i: 2, j: 2, x_set: vec![0], y_set: vec![0], x: 0, y: 0 };
        assert_eq!(combinations(2, 1).len(), 2);
        let boxes = boxes_for(&l, 0, &phi, Side::Le);
        let trees: BTreeSet<_> = boxes.iter().map(|b| b.0).collect();
        assert_eq!(trees, BTreeSet::from([(0, 0), (0, 1), (1, 0), (1, 1)]));
        assert_eq!(point(&l, 1, 0, 0), vec![0, 1, 0, 1, -1, -1, 0]);
    }

    #[test]
    fn full_shared_set_gives_one_placement() {
        let labels = vec![vec![(0, 0), (1, 3)], vec![(0, 3), (1, 0)]];
        let l = HubLabeling::new(labels.clone(), labels, Flavor::Exact).unwrap();
        let phi = WitnessTuple { i: 2, j: 2, x_set: vec![0, 1], y_set: vec![0, 1], x: 0, y: 0 };
        assert_eq!(combinations(2, 2), vec![vec![0, 1]]);
        let boxes = boxes_for(&l, 0, &phi, Side::Le);
        assert_eq!(boxes.len(), 1);
        assert!(boxes[0].1.contains(&point(&l, 0, 0, 0)));
    }
}
