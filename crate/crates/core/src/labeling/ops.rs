use alloc::format;
use alloc::vec::Vec;

use super::{Flavor, HubLabeling, Label};
use crate::{Error, Result};

/// Replaces every stored entry by the estimate the labeling itself gives for
/// that pair. Entries never increase; on a cover-correct input the result is
/// exact.
pub fn tighten(l: &HubLabeling) -> Result<HubLabeling> {
    let n = l.n();
    let mut out = Vec::with_capacity(n);
    let mut inn = Vec::with_capacity(n);
    for v in 0..n {
        let o: Label = l.out_label(v).iter().map(|&(x, d)| (x, l.est(v, x).min(d))).collect();
        let i: Label = l.in_label(v).iter().map(|&(x, d)| (x, l.est(x, v).min(d))).collect();
        out.push(o);
        inn.push(i);
    }
    HubLabeling::new(out, inn, Flavor::Exact)
}

pub(crate) fn merge(a: &Label, b: &Label) -> Label {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            out.push((a[i].0, a[i].1.min(b[j].1)));
            i += 1;
            j += 1;
        }
    }
    out
}

/// Per-vertex union of hub sets, keeping the smaller distance for shared
/// hubs. The result is admissible but need not cover every pair.
pub fn concat(labelings: &[HubLabeling]) -> Result<HubLabeling> {
    let Some(first) = labelings.first() else {
        return Err(Error::InvalidParameters("concat needs at least one labeling".into()));
    };
    let n = first.n();
    if let Some(other) = labelings.iter().find(|l| l.n() != n) {
        return Err(Error::InvalidLabeling(format!(
            "cannot concatenate labelings over {n} and {} vertices",
            other.n()
        )));
    }
    let (mut out, mut inn, _) = first.clone().into_parts();
    for l in &labelings[1..] {
        for v in 0..n {
            out[v] = merge(&out[v], l.out_label(v));
            inn[v] = merge(&inn[v], l.in_label(v));
        }
    }
    HubLabeling::new(out, inn, Flavor::Admissible)
}
