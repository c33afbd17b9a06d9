//! Golden-section line search and Nelder–Mead.

use crate::error::{domain, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the minimum of a unimodal `f` on `[lo, hi]`.
///
/// Stops once the bracket is shorter than `tol`; the endpoints are compared
/// at the end so monotone functions return the boundary.
pub fn minimize_scalar(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return domain(format!("need a finite interval lo < hi, got [{lo}, {hi}]"));
    }
    if !(tol > 0.0) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    let mut eval = |x: f64| {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            domain(format!("objective is {v} at {x}"))
        }
    };
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (eval(c)?, eval(d)?);
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d)?;
        }
    }
    let mid = 0.5 * (a + b);
    let mut best = (mid, eval(mid)?);
    for x in [lo, hi] {
        let v = eval(x)?;
        if v < best.1 {
            best = (x, v);
        }
    }
    Ok(best)
}

/// Stopping rules and initial simplex size for [`nelder_mead`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    /// Edge length of the initial axis-aligned simplex.
    pub step: f64,
    pub max_evals: usize,
    /// Stop when every vertex is within this distance (max norm) of the best.
    pub diameter_tol: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            step: 1.0,
            max_evals: 10_000,
            diameter_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    /// False when the evaluation budget ran out first.
    pub converged: bool,
}

/// Nelder–Mead with reflection 1, expansion 2, contraction 1/2, shrink 1/2.
///
/// Never calls `f` more than `opts.max_evals` times; with a budget smaller
/// than the initial simplex the best vertex seen so far is returned.
pub fn nelder_mead(
    mut f: impl FnMut(&[f64]) -> f64,
    x0: &[f64],
    opts: &NelderMeadOptions,
) -> Minimum {
    let dim = x0.len();
    let mut evals = 0;
    let mut call = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    let mut vals = Vec::with_capacity(dim + 1);
    for k in 0..=dim {
        if evals == opts.max_evals {
            break;
        }
        let mut x = x0.to_vec();
        if k > 0 {
            x[k - 1] += opts.step;
        }
        vals.push(call(&x, &mut evals));
        pts.push(x);
    }
    if pts.len() <= dim {
        let best = argmin(&vals);
        return Minimum {
            x: pts.swap_remove(best),
            value: vals[best],
            evals,
            converged: false,
        };
    }

    let mut order: Vec<usize> = (0..=dim).collect();
    let mut centroid = vec![0.0; dim];
    let mut trial = vec![0.0; dim];
    let mut trial2 = vec![0.0; dim];
    let converged = loop {
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b)));
        let (best, worst, second) = (order[0], order[dim], order[dim.saturating_sub(1)]);
        let diameter = pts
            .iter()
            .flat_map(|p| p.iter().zip(&pts[best]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if diameter < opts.diameter_tol {
            break true;
        }
        if evals >= opts.max_evals {
            break false;
        }
        centroid.iter_mut().for_each(|c| *c = 0.0);
        for &k in &order[..dim] {
            for (c, x) in centroid.iter_mut().zip(&pts[k]) {
                *c += x;
            }
        }
        centroid.iter_mut().for_each(|c| *c /= dim as f64);

        let along = |t: f64, out: &mut Vec<f64>| {
            for ((o, c), w) in out.iter_mut().zip(&centroid).zip(&pts[worst]) {
                *o = c + t * (c - w);
            }
        };
        along(1.0, &mut trial);
        let fr = call(&trial, &mut evals);
        if fr < vals[best] {
            if evals < opts.max_evals {
                along(2.0, &mut trial2);
                let fe = call(&trial2, &mut evals);
                if fe < fr {
                    std::mem::swap(&mut pts[worst], &mut trial2);
                    vals[worst] = fe;
                    continue;
                }
            }
            std::mem::swap(&mut pts[worst], &mut trial);
            vals[worst] = fr;
            continue;
        }
        if fr < vals[second] {
            std::mem::swap(&mut pts[worst], &mut trial);
            vals[worst] = fr;
            continue;
        }
        if evals >= opts.max_evals {
            break false;
        }
        // outside contraction if the reflection beat the worst, else inside
        let (t, bar) = if fr < vals[worst] {
            (0.5, fr)
        } else {
            (-0.5, vals[worst])
        };
        along(t, &mut trial2);
        let fc = call(&trial2, &mut evals);
        if fc <= bar {
            std::mem::swap(&mut pts[worst], &mut trial2);
            vals[worst] = fc;
            continue;
        }
        let anchor = pts[best].clone();
        for &k in &order[1..] {
            if evals >= opts.max_evals {
                break;
            }
            for (x, b) in pts[k].iter_mut().zip(&anchor) {
                *x = b + 0.5 * (*x - b);
            }
            vals[k] = call(&pts[k], &mut evals);
        }
    };
    let best = argmin(&vals);
    Minimum {
        x: pts.swap_remove(best),
        value: vals[best],
        evals,
        converged,
    }
}

fn argmin(v: &[f64]) -> usize {
    (0..v.len())
        .min_by(|&a, &b| v[a].total_cmp(&v[b]).then(a.cmp(&b)))
        .expect("nonempty")
}
