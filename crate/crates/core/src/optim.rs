//! Derivative-free simplex minimization (Nelder–Mead), used by the
//! geodesic shooting in [`crate::control`].

use crate::scalar::Real;

/// Nelder–Mead options. Reflection/expansion/contraction/shrink use the
/// standard coefficients 1, 2, ½, ½.
#[derive(Clone, Debug)]
pub struct NelderMead<T = f64> {
    pub max_iters: usize,
    /// Absolute spread |f_worst − f_best| below which the simplex is
    /// considered converged.
    pub f_tol: T,
    /// Simplex diameter below which the search stops.
    pub x_tol: T,
    /// Step used to build the initial simplex around the starting point.
    pub initial_step: T,
}

impl<T: Real> Default for NelderMead<T> {
    fn default() -> Self {
        Self {
            max_iters: 2000,
            f_tol: T::of(1e-16),
            x_tol: T::of(1e-10),
            initial_step: T::of(0.1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimizeOutcome<T = f64> {
    pub x: Vec<T>,
    pub fx: T,
    pub iterations: usize,
    pub converged: bool,
}

struct Vertex<T> {
    x: Vec<T>,
    fx: T,
}

/// Minimizes `f` starting from `x0`. Deterministic for a deterministic `f`.
pub fn minimize<T: Real>(
    f: &mut impl FnMut(&[T]) -> T,
    x0: &[T],
    opts: &NelderMead<T>,
) -> MinimizeOutcome<T> {
    let dim = x0.len();
    if dim == 0 {
        return MinimizeOutcome {
            x: Vec::new(),
            fx: f(&[]),
            iterations: 0,
            converged: true,
        };
    }
    let mut simplex: Vec<Vertex<T>> = Vec::with_capacity(dim + 1);
    simplex.push(Vertex {
        x: x0.to_vec(),
        fx: f(x0),
    });
    for i in 0..dim {
        let mut x = x0.to_vec();
        x[i] += opts.initial_step;
        let fx = f(&x);
        simplex.push(Vertex { x, fx });
    }
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iters {
        iterations += 1;
        simplex.sort_by(|a, b| a.fx.partial_cmp(&b.fx).expect("finite objective"));
        let spread = simplex[dim].fx - simplex[0].fx;
        let diameter = simplex[1..]
            .iter()
            .map(|v| {
                v.x.iter()
                    .zip(&simplex[0].x)
                    .map(|(&a, &b)| (a - b) * (a - b))
                    .sum::<T>()
                    .sqrt()
            })
            .fold(T::zero(), T::max);
        if spread <= opts.f_tol && diameter <= opts.x_tol {
            converged = true;
            break;
        }
        // Centroid of all but the worst vertex.
        let mut centroid = vec![T::zero(); dim];
        for v in &simplex[..dim] {
            for (c, &xi) in centroid.iter_mut().zip(&v.x) {
                *c += xi / T::of(dim as f64);
            }
        }
        let worst = simplex[dim].x.clone();
        let blend = |a: T| -> Vec<T> {
            // centroid + a (centroid − worst)
            centroid
                .iter()
                .zip(&worst)
                .map(|(&c, &w)| c + a * (c - w))
                .collect()
        };
        let reflected = blend(T::one());
        let f_reflected = f(&reflected);
        if f_reflected < simplex[0].fx {
            let expanded = blend(T::two());
            let f_expanded = f(&expanded);
            if f_expanded < f_reflected {
                simplex[dim] = Vertex {
                    x: expanded,
                    fx: f_expanded,
                };
            } else {
                simplex[dim] = Vertex {
                    x: reflected,
                    fx: f_reflected,
                };
            }
            continue;
        }
        if f_reflected < simplex[dim - 1].fx {
            simplex[dim] = Vertex {
                x: reflected,
                fx: f_reflected,
            };
            continue;
        }
        let contracted = if f_reflected < simplex[dim].fx {
            blend(T::half())
        } else {
            blend(-T::half())
        };
        let f_contracted = f(&contracted);
        if f_contracted < simplex[dim].fx.min(f_reflected) {
            simplex[dim] = Vertex {
                x: contracted,
                fx: f_contracted,
            };
            continue;
        }
        // Shrink toward the best vertex.
        let best = simplex[0].x.clone();
        for v in simplex.iter_mut().skip(1) {
            for (xi, &bi) in v.x.iter_mut().zip(&best) {
                *xi = bi + (*xi - bi) * T::half();
            }
            v.fx = f(&v.x);
        }
    }
    simplex.sort_by(|a, b| a.fx.partial_cmp(&b.fx).expect("finite objective"));
    MinimizeOutcome {
        x: simplex[0].x.clone(),
        fx: simplex[0].fx,
        iterations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_quadratic_bowl() {
        let mut f = |x: &[f64]| (x[0] - 1.5).powi(2) + 3.0 * (x[1] + 0.5).powi(2);
        let out = minimize(&mut f, &[0.0, 0.0], &NelderMead::default());
        assert!(out.converged);
        assert!((out.x[0] - 1.5).abs() < 1e-7);
        assert!((out.x[1] + 0.5).abs() < 1e-7);
        assert!(out.fx < 1e-13);
    }

    #[test]
    fn minimizes_rosenbrock() {
        let mut f = |x: &[f64]| {
            let a = 1.0 - x[0];
            let b = x[1] - x[0] * x[0];
            a * a + 100.0 * b * b
        };
        let opts = NelderMead {
            max_iters: 20000,
            ..NelderMead::default()
        };
        let out = minimize(&mut f, &[-1.2, 1.0], &opts);
        assert!((out.x[0] - 1.0).abs() < 1e-5, "{:?}", out.x);
        assert!((out.x[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn one_dimensional_search_works() {
        let mut f = |x: &[f64]| (x[0] - 2.0).powi(2);
        let out = minimize(&mut f, &[10.0], &NelderMead::default());
        assert!((out.x[0] - 2.0).abs() < 1e-7);
    }
}
