//! Deterministic optimization over Euler angles.
//!
//! Strategy: a dense grid over β, α ∈ [0, 2π), θ ∈ [0, π] localizes every
//! basin of the objective (a low-order trigonometric polynomial in three
//! angles), then iterated Nelder–Mead descent refines the best grid points.
//! Everything runs in a fixed order so results are bit-for-bit reproducible;
//! grid ties are broken by the lowest (β, θ, α) lexicographic index.

use ndarray::Array1;
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::polarization::OptimizerOptions;
use crate::su2::{rotation_matrix, EulerAngles};

/// ⟨target|e^{−iβJz} e^{−iθJy} e^{−iαJz}|source⟩ evaluator.
pub(crate) struct OverlapObjective<'a> {
    n_photons: usize,
    target: &'a Array1<C64>,
    source: &'a Array1<C64>,
}

impl<'a> OverlapObjective<'a> {
    pub(crate) fn new(n_photons: usize, target: &'a Array1<C64>, source: &'a Array1<C64>) -> Self {
        Self {
            n_photons,
            target,
            source,
        }
    }

    pub(crate) fn overlap(&self, x: [f64; 3]) -> C64 {
        let rot = rotation_matrix(self.n_photons, x[1]);
        let dressed = self.dress_source(x[2]);
        self.finish(&rot.dot(&dressed), x[0])
    }

    /// e^{−iα(n−N/2)} s_n
    fn dress_source(&self, alpha: f64) -> Array1<C64> {
        let half = self.n_photons as f64 / 2.0;
        Array1::from_iter(
            self.source
                .iter()
                .enumerate()
                .map(|(n, s)| C64::from_polar(1.0, -alpha * (n as f64 - half)) * s),
        )
    }

    /// Σ_m conj(t_m) e^{−iβ(m−N/2)} w_m
    fn finish(&self, rotated: &Array1<C64>, beta: f64) -> C64 {
        let half = self.n_photons as f64 / 2.0;
        self.target
            .iter()
            .enumerate()
            .zip(rotated.iter())
            .map(|((m, t), w)| t.conj() * C64::from_polar(1.0, -beta * (m as f64 - half)) * w)
            .sum()
    }
}

/// Minimize post(|overlap|²) over the canonical angle domain and return the
/// argmin; callers re-evaluate the overlap at the canonicalized angles.
pub(crate) fn minimize_overlap<P: Fn(f64) -> f64 + Copy>(
    obj: &OverlapObjective,
    post: P,
    opts: &OptimizerOptions,
) -> EulerAngles {
    let (nb, nt, na) = opts.grid_counts;
    let betas: Vec<f64> = (0..nb).map(|i| 2.0 * PI * i as f64 / nb as f64).collect();
    let thetas: Vec<f64> = if nt == 1 {
        vec![0.0]
    } else {
        (0..nt).map(|j| PI * j as f64 / (nt - 1) as f64).collect()
    };
    let alphas: Vec<f64> = (0..na).map(|k| 2.0 * PI * k as f64 / na as f64).collect();

    let half = obj.n_photons as f64 / 2.0;
    let dim = obj.n_photons + 1;
    // β-dressed conjugate targets and α-dressed sources, reused across the grid
    let dressed_targets: Vec<Array1<C64>> = betas
        .iter()
        .map(|&beta| {
            Array1::from_iter(
                obj.target
                    .iter()
                    .enumerate()
                    .map(|(m, t)| t.conj() * C64::from_polar(1.0, -beta * (m as f64 - half))),
            )
        })
        .collect();
    let dressed_sources: Vec<Array1<C64>> = alphas
        .iter()
        .map(|&alpha| obj.dress_source(alpha))
        .collect();

    // keep the refine_starts best grid points; ties favor the lowest
    // lexicographic (β, θ, α) index
    let keep = opts.refine_starts.max(1);
    let mut starts: Vec<(f64, usize, EulerAngles)> = Vec::with_capacity(keep + 1);
    for (j, &theta) in thetas.iter().enumerate() {
        let rot = rotation_matrix(obj.n_photons, theta);
        for (k, source) in dressed_sources.iter().enumerate() {
            let rotated = rot.dot(source);
            for (i, target) in dressed_targets.iter().enumerate() {
                let mut ov = C64::new(0.0, 0.0);
                for m in 0..dim {
                    ov += target[m] * rotated[m];
                }
                let value = post(ov.norm_sqr());
                let rank = (i * thetas.len() + j) * alphas.len() + k;
                let candidate = (value, rank, EulerAngles::new(betas[i], theta, alphas[k]));
                let pos =
                    starts.partition_point(|(v, r, _)| *v < value || (*v == value && *r < rank));
                if pos < keep {
                    starts.insert(pos, candidate);
                    starts.truncate(keep);
                }
            }
        }
    }

    let steps = [
        PI / nb as f64,
        0.5 * PI / (nt.max(2) - 1) as f64,
        PI / na as f64,
    ];
    let f = |x: [f64; 3]| post(obj.overlap(x).norm_sqr());
    let mut best: Option<(f64, usize, EulerAngles)> = None;
    for (rank, &(value, _, angles)) in starts.iter().enumerate() {
        let refined = refine(
            &f,
            [angles.beta, angles.theta, angles.alpha],
            value,
            steps,
            opts.refine_tolerance,
            opts.max_iterations,
        );
        let better = match &best {
            None => true,
            Some((bv, _, _)) => refined.0 < *bv,
        };
        if better {
            best = Some((
                refined.0,
                rank,
                EulerAngles::new(refined.1[0], refined.1[1], refined.1[2]),
            ));
        }
    }
    best.expect("at least one refinement start").2
}

/// Iterated Nelder–Mead: descend, then restart around the incumbent with a
/// smaller simplex until the evaluation budget or step floor is reached.
fn refine<F: Fn([f64; 3]) -> f64>(
    f: &F,
    x0: [f64; 3],
    f0: f64,
    steps: [f64; 3],
    ftol: f64,
    budget: usize,
) -> (f64, [f64; 3]) {
    let mut best = (f0, x0);
    let mut h = steps;
    let mut used = 0usize;
    loop {
        let outcome = nelder_mead(f, best.1, h, ftol, budget.saturating_sub(used));
        used += outcome.evals;
        let improved = outcome.value < best.0;
        if improved {
            best = (outcome.value, outcome.point);
        }
        h = [h[0] * 0.2, h[1] * 0.2, h[2] * 0.2];
        if used >= budget || h[0].max(h[1]).max(h[2]) < 1e-10 || (outcome.converged && !improved) {
            break;
        }
    }
    best
}

struct NmOutcome {
    point: [f64; 3],
    value: f64,
    evals: usize,
    converged: bool,
}

struct CountedEval<'f, F> {
    f: &'f F,
    evals: usize,
}

impl<F: Fn([f64; 3]) -> f64> CountedEval<'_, F> {
    fn call(&mut self, x: [f64; 3]) -> f64 {
        self.evals += 1;
        (self.f)(x)
    }
}

fn nelder_mead<F: Fn([f64; 3]) -> f64>(
    f: &F,
    x0: [f64; 3],
    h: [f64; 3],
    ftol: f64,
    max_evals: usize,
) -> NmOutcome {
    let mut eval = CountedEval { f, evals: 0 };
    let mut simplex: Vec<([f64; 3], f64)> = Vec::with_capacity(4);
    simplex.push((x0, eval.call(x0)));
    for d in 0..3 {
        let mut x = x0;
        x[d] += h[d];
        simplex.push((x, eval.call(x)));
    }
    let mut converged = false;
    while eval.evals < max_evals {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        if simplex[3].1 - simplex[0].1 < ftol {
            converged = true;
            break;
        }
        let mut centroid = [0.0f64; 3];
        for v in &simplex[0..3] {
            for (c, &x) in centroid.iter_mut().zip(&v.0) {
                *c += x / 3.0;
            }
        }
        let worst = simplex[3];
        let dir = |scale: f64| {
            let mut x = [0.0f64; 3];
            for d in 0..3 {
                x[d] = centroid[d] + scale * (centroid[d] - worst.0[d]);
            }
            x
        };
        let xr = dir(1.0);
        let fr = eval.call(xr);
        if fr < simplex[0].1 {
            let xe = dir(2.0);
            let fe = eval.call(xe);
            simplex[3] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[2].1 {
            simplex[3] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst.1 {
                let x = dir(0.5);
                (x, eval.call(x))
            } else {
                let x = dir(-0.5);
                (x, eval.call(x))
            };
            if fc < worst.1.min(fr) {
                simplex[3] = (xc, fc);
            } else {
                // shrink toward the best vertex
                let x0 = simplex[0].0;
                for v in simplex.iter_mut().skip(1) {
                    for (x, &base) in v.0.iter_mut().zip(&x0) {
                        *x = base + 0.5 * (*x - base);
                    }
                    v.1 = eval.call(v.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    NmOutcome {
        point: simplex[0].0,
        value: simplex[0].1,
        evals: eval.evals,
        converged,
    }
}

/// Levenberg–Marquardt polish: drive the complex overlap itself to zero,
/// treating (Re, Im) as a two-component residual over the three angles.
/// Converges quadratically where an exact zero exists.
pub(crate) fn polish_overlap_zero<F: Fn([f64; 3]) -> C64>(ov: &F, x0: [f64; 3]) -> ([f64; 3], f64) {
    let mut x = x0;
    let mut r = ov(x);
    let mut lambda = 1e-3;
    for _ in 0..60 {
        if r.norm() < 1e-15 {
            break;
        }
        let hstep = 1e-7;
        let mut jac = [[0.0f64; 3]; 2];
        for d in 0..3 {
            let mut xp = x;
            xp[d] += hstep;
            let mut xm = x;
            xm[d] -= hstep;
            let rp = ov(xp);
            let rm = ov(xm);
            jac[0][d] = (rp.re - rm.re) / (2.0 * hstep);
            jac[1][d] = (rp.im - rm.im) / (2.0 * hstep);
        }
        let mut normal = [[0.0f64; 3]; 3];
        let mut gradient = [0.0f64; 3];
        for p in 0..3 {
            for q in 0..3 {
                normal[p][q] = jac[0][p] * jac[0][q] + jac[1][p] * jac[1][q];
            }
            gradient[p] = -(jac[0][p] * r.re + jac[1][p] * r.im);
        }
        let mut stepped = false;
        for _ in 0..12 {
            let mut damped = normal;
            for p in 0..3 {
                damped[p][p] += lambda * normal[p][p].max(1e-12);
            }
            if let Some(delta) = solve3(damped, gradient) {
                let xn = [x[0] + delta[0], x[1] + delta[1], x[2] + delta[2]];
                let rn = ov(xn);
                if rn.norm() < r.norm() {
                    x = xn;
                    r = rn;
                    lambda = (lambda / 3.0).max(1e-12);
                    stepped = true;
                    break;
                }
            }
            lambda *= 10.0;
            if lambda > 1e12 {
                break;
            }
        }
        if !stepped {
            break;
        }
    }
    (x, r.norm())
}

fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let mut m = [[0.0f64; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&a[i]);
        m[i][3] = b[i];
    }
    for col in 0..3 {
        let pivot_row =
            (col..3).max_by(|&p, &q| m[p][col].abs().partial_cmp(&m[q][col].abs()).unwrap())?;
        if m[pivot_row][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot_row);
        let pivot = m[col];
        for row in m.iter_mut().skip(col + 1) {
            let factor = row[col] / pivot[col];
            for (entry, &p) in row.iter_mut().zip(&pivot).skip(col) {
                *entry -= factor * p;
            }
        }
    }
    let mut x = [0.0f64; 3];
    for row in (0..3).rev() {
        let mut s = m[row][3];
        for k in (row + 1)..3 {
            s -= m[row][k] * x[k];
        }
        x[row] = s / m[row][row];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve3_inverts_a_known_system() {
        let a = [[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 2.0]];
        let x = solve3(a, [3.0, 5.0, 3.0]).unwrap();
        for (got, want) in x.iter().zip([1.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn nelder_mead_finds_a_quadratic_minimum() {
        let f =
            |x: [f64; 3]| (x[0] - 1.0).powi(2) + 2.0 * (x[1] + 0.5).powi(2) + (x[2] - 2.0).powi(2);
        let out = nelder_mead(&f, [0.0, 0.0, 0.0], [0.5, 0.5, 0.5], 1e-14, 2000);
        assert!(out.value < 1e-10);
        assert!((out.point[0] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn refine_restarts_reach_deep_minima() {
        let f =
            |x: [f64; 3]| (x[0] - 1.0).powi(2) + 2.0 * (x[1] + 0.5).powi(2) + (x[2] - 2.0).powi(2);
        let (value, _) = refine(
            &f,
            [0.3, 0.1, 1.5],
            f([0.3, 0.1, 1.5]),
            [0.4, 0.4, 0.4],
            1e-12,
            800,
        );
        assert!(value < 1e-10, "value={value}");
    }
}
