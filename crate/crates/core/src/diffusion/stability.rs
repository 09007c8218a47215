//! Rank agreement between successive diffusion iterates.

use std::cmp::Ordering;

use crate::error::{check_len, Error, Result};
use crate::score::top_k;

/// Spearman's ρ and Kendall's τ-b between two score vectors.
///
/// With `top_k`, both vectors are restricted to the union of their top-`k`
/// node sets before correlating.
pub fn rank_stability(prev: &[f64], next: &[f64], top_k_nodes: Option<usize>) -> Result<(f64, f64)> {
    check_len(prev.len(), next.len())?;
    let (a, b): (Vec<f64>, Vec<f64>) = match top_k_nodes {
        None => (prev.to_vec(), next.to_vec()),
        Some(k) => {
            let mut nodes = top_k(prev, k);
            nodes.extend(top_k(next, k));
            nodes.sort_unstable();
            nodes.dedup();
            nodes.iter().map(|&i| (prev[i], next[i])).unzip()
        }
    };
    if a.len() < 2 {
        return Err(Error::invalid("rank correlation needs at least two items"));
    }
    Ok((spearman(&a, &b)?, kendall_tau_b(&a, &b)?))
}

/// Pearson correlation of average ranks.
pub fn spearman(a: &[f64], b: &[f64]) -> Result<f64> {
    check_len(a.len(), b.len())?;
    let ra = average_ranks(a);
    let rb = average_ranks(b);
    let n = ra.len() as f64;
    let ma = ra.iter().sum::<f64>() / n;
    let mb = rb.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in ra.iter().zip(&rb) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err(Error::Undefined("spearman correlation of a constant vector"));
    }
    Ok(sab / (saa * sbb).sqrt())
}

/// 1-based ranks with ties sharing the average of their positions.
pub fn average_ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
    let mut ranks = vec![0.0; v.len()];
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && v[idx[end]] == v[idx[start]] {
            end += 1;
        }
        let r = (start + end + 1) as f64 / 2.0;
        for &i in &idx[start..end] {
            ranks[i] = r;
        }
        start = end;
    }
    ranks
}

/// Kendall's τ-b in `O(n log n)` (Knight's merge-sort algorithm).
pub fn kendall_tau_b(a: &[f64], b: &[f64]) -> Result<f64> {
    check_len(a.len(), b.len())?;
    let n = a.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i].total_cmp(&a[j]).then(b[i].total_cmp(&b[j])));

    let pairs = |t: u64| t * t.saturating_sub(1) / 2;
    let n0 = pairs(n as u64);
    let (mut ties_a, mut ties_ab) = (0u64, 0u64);
    let (mut run_a, mut run_ab) = (1u64, 1u64);
    for w in order.windows(2) {
        let (i, j) = (w[0], w[1]);
        if a[i] == a[j] {
            run_a += 1;
            if b[i] == b[j] {
                run_ab += 1;
            } else {
                ties_ab += pairs(run_ab);
                run_ab = 1;
            }
        } else {
            ties_a += pairs(run_a);
            ties_ab += pairs(run_ab);
            run_a = 1;
            run_ab = 1;
        }
    }
    ties_a += pairs(run_a);
    ties_ab += pairs(run_ab);

    let mut keys: Vec<f64> = order.iter().map(|&i| b[i]).collect();
    let swaps = merge_count(&mut keys);

    let mut ties_b = 0u64;
    let mut run_b = 1u64;
    for w in keys.windows(2) {
        if w[0] == w[1] {
            run_b += 1;
        } else {
            ties_b += pairs(run_b);
            run_b = 1;
        }
    }
    ties_b += pairs(run_b);

    let denom = ((n0 - ties_a) as f64) * ((n0 - ties_b) as f64);
    if denom == 0.0 {
        return Err(Error::Undefined("kendall correlation of a constant vector"));
    }
    let num = n0 as f64 - ties_a as f64 - ties_b as f64 + ties_ab as f64 - 2.0 * swaps as f64;
    Ok(num / denom.sqrt())
}

/// Stable merge sort; returns the number of strictly inverted pairs.
fn merge_count(v: &mut [f64]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = merge_count(&mut v[..mid]) + merge_count(&mut v[mid..]);
    let mut merged = Vec::with_capacity(n);
    let (mut i, mut j) = (0, mid);
    while i < mid && j < n {
        if v[j].total_cmp(&v[i]) == Ordering::Less {
            swaps += (mid - i) as u64;
            merged.push(v[j]);
            j += 1;
        } else {
            merged.push(v[i]);
            i += 1;
        }
    }
    merged.extend_from_slice(&v[i..mid]);
    merged.extend_from_slice(&v[j..]);
    v.copy_from_slice(&merged);
    swaps
}
