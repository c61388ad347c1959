//! All-pairs reference values for every index, straight from the
//! definitions.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Float, Zero};

use super::{check_graph, IndexReport};
use crate::graph::{oracle_all_pairs, Graph};
use crate::Result;

/// Every index by brute force, plus the Randić index
/// `sum over edges uv of 1 / sqrt(deg u * deg v)`.
pub fn brute_indices(g: &Graph) -> Result<IndexReport> {
    check_graph(g, false)?;
    let m = oracle_all_pairs(g)?;
    let n = g.n();
    let deg = g.degrees();
    let diam = (0..n).flat_map(|u| m.row(u).iter().copied()).max().unwrap_or(0);
    let mut wiener = 0u128;
    let mut powers = [BigUint::zero(), BigUint::zero(), BigUint::zero()];
    let mut mti = 0u128;
    let mut harary = BigRational::zero();
    let mut rcw = BigRational::zero();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let d = m.get(u, v);
            wiener += d as u128;
            for (a, p) in powers.iter_mut().enumerate() {
                *p += BigUint::from(d).pow(a as u32 + 1);
            }
            mti += (deg[u] + deg[v]) as u128 * d as u128;
            harary += BigRational::new(BigInt::from(1), BigInt::from(d));
            rcw += BigRational::new(BigInt::from(1), BigInt::from(diam + 1 - d));
        }
    }
    let hyper_wiener = BigRational::new(BigInt::from(powers[0].clone()) + BigInt::from(powers[1].clone()), BigInt::from(2));
    let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(a, b, _)| (a, b)).collect();
    let mut szeged = 0u128;
    let mut pi = 0u128;
    let mut randic = 0f64;
    for &(u, v) in &edges {
        let (mut nu, mut nv) = (0u128, 0u128);
        for z in 0..n {
            let (du, dv) = (m.get(u, z), m.get(v, z));
            nu += u128::from(du < dv);
            nv += u128::from(dv < du);
        }
        szeged += nu * nv;
        for &(a, b) in &edges {
            let du = m.get(u, a).min(m.get(u, b));
            let dv = m.get(v, a).min(m.get(v, b));
            pi += u128::from(du != dv);
        }
        randic += 1.0 / Float::sqrt((deg[u] * deg[v]) as f64);
    }
    Ok(IndexReport {
        n,
        edges: edges.len(),
        wiener,
        power_sums: powers,
        hyper_wiener,
        mti,
        harary,
        rcw,
        szeged,
        padmakar_ivan: pi,
        randic: Some(randic),
    })
}

/// `n_uv` by brute force for every ordered pair, row-major.
pub fn brute_closer(g: &Graph) -> Result<Vec<u64>> {
    let m = oracle_all_pairs(g)?;
    let n = g.n();
    let mut out = alloc::vec![0u64; n * n];
    for u in 0..n {
        for v in 0..n {
            out[u * n + v] = (0..n).filter(|&z| m.get(u, z) < m.get(v, z)).count() as u64;
        }
    }
    Ok(out)
}

/// `n^e_uv` by brute force for every ordered pair, row-major.
pub fn brute_edge_closer(g: &Graph) -> Result<Vec<u64>> {
    let m = oracle_all_pairs(g)?;
    let n = g.n();
    let edges = g.edges();
    let mut out = alloc::vec![0u64; n * n];
    for u in 0..n {
        for v in 0..n {
            out[u * n + v] = edges
                .iter()
                .filter(|&&(a, b, _)| m.get(u, a).min(m.get(u, b)) < m.get(v, a).min(m.get(v, b)))
                .count() as u64;
        }
    }
    Ok(out)
}
