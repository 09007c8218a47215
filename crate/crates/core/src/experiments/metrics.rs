use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{check_len, Error, Result};
use crate::graph::Graph;
use crate::score::{rank_cmp, ScoreVector};

use super::split::SplitDataset;
use super::{CandidateRule, EvalPolicy, TruthMode};

/// Outcome of scoring one seed edge with one method at one cutoff.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub method: String,
    pub seed_u: String,
    pub seed_v: String,
    pub truth_count: usize,
    /// 1-based rank of the best ground-truth node among the candidates.
    pub best_rank: Option<usize>,
    pub sp: u8,
    pub k: usize,
    #[serde(skip)]
    pub trial: usize,
    /// Fingerprint of the split, seed edge, candidates and truth the method saw.
    #[serde(skip)]
    pub context_digest: u64,
}

/// Training nodes that would close a held-out triangle with `(u, v)`.
pub fn ground_truth(split: &SplitDataset, u: usize, v: usize, policy: &EvalPolicy) -> Vec<usize> {
    let g = &split.train;
    let mut out: Vec<usize> = match policy.truth_mode {
        TruthMode::And => {
            let tv = split.test_neighbors(v);
            split
                .test_neighbors(u)
                .iter()
                .copied()
                .filter(|w| tv.binary_search(w).is_ok())
                .collect()
        }
        TruthMode::Or => {
            let from_u = split.test_neighbors(u).iter().copied().filter(|&w| g.has_edge(v, w));
            let from_v = split.test_neighbors(v).iter().copied().filter(|&w| g.has_edge(u, w));
            from_u.chain(from_v).collect()
        }
    };
    out.retain(|&w| w != u && w != v);
    out.sort_unstable();
    out.dedup();
    out
}

/// Nodes eligible for the top-`k` list of `(u, v)`.
pub fn candidates(g: &Graph, u: usize, v: usize, rule: CandidateRule) -> Vec<usize> {
    let mut near_u = vec![false; g.n()];
    for &w in g.adj(u) {
        near_u[w] = true;
    }
    let mut near_v = vec![false; g.n()];
    for &w in g.adj(v) {
        near_v[w] = true;
    }
    (0..g.n())
        .filter(|&w| w != u && w != v)
        .filter(|&w| match rule {
            CandidateRule::AdjacentToEither => !(near_u[w] || near_v[w]),
            CandidateRule::AdjacentToBoth => !(near_u[w] && near_v[w]),
        })
        .collect()
}

/// 1-based rank, among `cands`, of the highest-ranked node of `truth`.
///
/// Ranking is by descending score with ties broken by ascending index.
/// `None` when no truth node is a candidate.
pub fn best_rank(scores: &[f64], cands: &[usize], truth: &[usize]) -> Option<usize> {
    let best = cands
        .iter()
        .copied()
        .filter(|c| truth.binary_search(c).is_ok())
        .min_by(|&a, &b| rank_cmp(scores, a, b))?;
    let ahead = cands
        .iter()
        .filter(|&&c| rank_cmp(scores, c, best) == Ordering::Less)
        .count();
    Some(ahead + 1)
}

/// SP at `policy.k` for one seed edge.
pub fn success_probability(
    scores: &ScoreVector,
    split: &SplitDataset,
    u: usize,
    v: usize,
    policy: &EvalPolicy,
) -> Result<TrialReport> {
    policy.validate()?;
    check_len(split.train.n(), scores.len())?;
    split.train.check_node(u)?;
    split.train.check_node(v)?;
    let truth = ground_truth(split, u, v, policy);
    if truth.is_empty() {
        return Err(Error::invalid("seed edge has no ground-truth nodes"));
    }
    let cands = candidates(&split.train, u, v, policy.candidate_rule);
    Ok(report(scores, split, u, v, &cands, &truth, policy.k, 0))
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn report(
    scores: &ScoreVector,
    split: &SplitDataset,
    u: usize,
    v: usize,
    cands: &[usize],
    truth: &[usize],
    k: usize,
    trial: usize,
) -> TrialReport {
    let rank = best_rank(scores, cands, truth);
    TrialReport {
        method: scores.provenance.clone(),
        seed_u: split.train.label(u).to_string(),
        seed_v: split.train.label(v).to_string(),
        truth_count: truth.len(),
        best_rank: rank,
        sp: u8::from(rank.is_some_and(|r| r <= k)),
        k,
        trial,
        context_digest: context_digest(split, u, v, cands, truth),
    }
}

fn context_digest(split: &SplitDataset, u: usize, v: usize, cands: &[usize], truth: &[usize]) -> u64 {
    // FNV-1a over the words that define a trial
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    feed(split.train.n() as u64);
    feed(split.train.m() as u64);
    feed(split.test_edges.len() as u64);
    feed(u as u64);
    feed(v as u64);
    feed(u64::MAX);
    cands.iter().for_each(|&c| feed(c as u64));
    feed(u64::MAX);
    truth.iter().for_each(|&t| feed(t as u64));
    h
}

/// Probability that a random positive outscores a random negative, ties
/// counting one half.
pub fn auc(scores: &[f64], positives: &[usize], candidates: &[usize]) -> Result<f64> {
    let mut is_pos = vec![false; scores.len()];
    for &p in positives {
        if p >= scores.len() {
            return Err(Error::NodeOutOfRange { index: p, n: scores.len() });
        }
        is_pos[p] = true;
    }
    let mut pool: Vec<(f64, bool)> = Vec::with_capacity(candidates.len());
    let mut seen = vec![false; scores.len()];
    for &c in candidates {
        if c >= scores.len() {
            return Err(Error::NodeOutOfRange { index: c, n: scores.len() });
        }
        if !std::mem::replace(&mut seen[c], true) {
            pool.push((scores[c], is_pos[c]));
        }
    }
    if positives.iter().any(|&p| !seen[p]) {
        return Err(Error::invalid("positives must be a subset of the candidates"));
    }
    let npos = pool.iter().filter(|p| p.1).count();
    let nneg = pool.len() - npos;
    if npos == 0 || nneg == 0 {
        return Err(Error::invalid("AUC needs at least one positive and one negative"));
    }
    pool.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Mann-Whitney U from mid-ranks
    let mut rank_sum = 0.0;
    let mut start = 0;
    while start < pool.len() {
        let mut end = start + 1;
        while end < pool.len() && pool[end].0 == pool[start].0 {
            end += 1;
        }
        let mid = (start + end + 1) as f64 / 2.0;
        let pos_here = pool[start..end].iter().filter(|p| p.1).count();
        rank_sum += mid * pos_here as f64;
        start = end;
    }
    let u = rank_sum - (npos * (npos + 1)) as f64 / 2.0;
    Ok(u / (npos as f64 * nneg as f64))
}
