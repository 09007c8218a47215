use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::score::ScoreVector;

use super::seed::{make_seed, SeedKind, SeedVector};
use super::DiffusionParams;

/// Seeded PageRank, `(I - αP) x = (1 - α) s` with `P = A D⁻¹`, solved by
/// power iteration until the L1 change between iterates drops below the
/// tolerance.
pub fn pagerank(g: &Graph, seed: &SeedVector, params: &DiffusionParams) -> Result<ScoreVector> {
    params.validate()?;
    let s = seed.to_dense(g.n())?;
    let inv_deg = inverse_degrees(g)?;
    let tol = params.tolerance_for(g.n());
    let cap = params.max_steps();
    let alpha = params.alpha;

    let mut x = s.clone();
    let mut next = vec![0.0; g.n()];
    let mut y = vec![0.0; g.n()];
    let mut best = f64::INFINITY;
    let mut stalled = 0usize;
    for _ in 0..cap {
        let delta = power_step(g, &inv_deg, alpha, &s, &x, &mut y, &mut next);
        std::mem::swap(&mut x, &mut next);
        if delta <= tol {
            break;
        }
        // below 1e-12 only rounding noise remains; stop once it stops shrinking
        if delta < best {
            best = delta;
            stalled = 0;
        } else if best < 1e-12 {
            stalled += 1;
            if stalled >= 200 {
                break;
            }
        }
    }
    Ok(ScoreVector::new(x, "pagerank"))
}

/// Exactly `steps` power-iteration steps from `x_0 = s`, no convergence test.
pub fn pagerank_steps(
    g: &Graph,
    seed: &SeedVector,
    alpha: f64,
    steps: usize,
) -> Result<ScoreVector> {
    DiffusionParams::with_alpha(alpha).validate()?;
    let s = seed.to_dense(g.n())?;
    let inv_deg = inverse_degrees(g)?;
    let mut x = s.clone();
    let mut next = vec![0.0; g.n()];
    let mut y = vec![0.0; g.n()];
    for _ in 0..steps {
        power_step(g, &inv_deg, alpha, &s, &x, &mut y, &mut next);
        std::mem::swap(&mut x, &mut next);
    }
    Ok(ScoreVector::new(x, "pagerank-steps"))
}

pub fn single_seeded_pagerank(g: &Graph, u: usize, params: &DiffusionParams) -> Result<ScoreVector> {
    let seed = make_seed(SeedKind::Single(u), g)?;
    pagerank(g, &seed, params).map(|mut x| {
        x.provenance = "single-seed".into();
        x
    })
}

pub fn pair_seeded_pagerank(
    g: &Graph,
    u: usize,
    v: usize,
    params: &DiffusionParams,
) -> Result<ScoreVector> {
    let seed = make_seed(SeedKind::Pair(u, v), g)?;
    pagerank(g, &seed, params).map(|mut x| {
        x.provenance = "pair-seed".into();
        x
    })
}

pub(crate) fn inverse_degrees(g: &Graph) -> Result<Vec<f64>> {
    (0..g.n())
        .map(|i| match g.deg(i) {
            0 => Err(Error::IsolatedNode(i)),
            d => Ok(1.0 / d as f64),
        })
        .collect()
}

/// `next = α A D⁻¹ x + (1 - α) s`; returns `‖next - x‖₁`.
#[inline]
fn power_step(
    g: &Graph,
    inv_deg: &[f64],
    alpha: f64,
    s: &[f64],
    x: &[f64],
    y: &mut [f64],
    next: &mut [f64],
) -> f64 {
    for ((yi, &xi), &d) in y.iter_mut().zip(x).zip(inv_deg) {
        *yi = xi * d;
    }
    let mut delta = 0.0;
    for i in 0..g.n() {
        let ay: f64 = g.adj(i).iter().map(|&j| y[j]).sum();
        let v = alpha * ay + (1.0 - alpha) * s[i];
        delta += (v - x[i]).abs();
        next[i] = v;
    }
    delta
}
