//! Derivative-free local minimization (Nelder–Mead).

use crate::scalar::Real;

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions<T> {
    pub max_iters: usize,
    /// Stop once the spread of objective values over the simplex is below this.
    pub tol: T,
    /// Edge length of the initial simplex.
    pub simplex_scale: T,
}

#[derive(Debug, Clone)]
pub struct Minimum<T> {
    pub point: Vec<T>,
    pub value: T,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// Minimizes `f` from `x0`. Infinite or NaN objective values act as walls:
/// such vertices are always the worst and get contracted away.
pub fn nelder_mead<T: Real, F: FnMut(&[T]) -> T>(mut f: F, x0: &[T], opts: &NelderMeadOptions<T>) -> Minimum<T> {
    let n = x0.len();
    let wall = T::max_value().expect("bounded");
    let mut evals = 0usize;
    let mut eval = |x: &[T], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            wall
        }
    };

    let mut simplex: Vec<Vec<T>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += opts.simplex_scale;
        simplex.push(v);
    }
    let mut values: Vec<T> = simplex.iter().map(|x| eval(x, &mut evals)).collect();

    let (alpha, gamma, rho, shrink) = (T::one(), T::lit(2.0), T::lit(0.5), T::lit(0.5));
    let mut order: Vec<usize> = (0..=n).collect();
    let mut iterations = 0;
    let mut converged = false;
    let mut centroid = vec![T::zero(); n];
    let mut trial = vec![T::zero(); n];

    while iterations < opts.max_iters {
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(std::cmp::Ordering::Equal));
        let (best, worst, second) = (order[0], order[n], order[n.saturating_sub(1)]);
        if values[worst] - values[best] <= opts.tol && values[worst] < wall {
            converged = true;
            break;
        }
        iterations += 1;

        centroid.iter_mut().for_each(|c| *c = T::zero());
        for &i in &order[..n] {
            for (c, &x) in centroid.iter_mut().zip(&simplex[i]) {
                *c += x;
            }
        }
        let inv = T::one() / T::from_usize(n).expect("small");
        centroid.iter_mut().for_each(|c| *c *= inv);

        let along = |t: T, out: &mut Vec<T>, simplex: &Vec<Vec<T>>| {
            for k in 0..n {
                out[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
            }
        };

        along(-alpha, &mut trial, &simplex);
        let fr = eval(&trial, &mut evals);
        if fr < values[best] {
            let reflected = trial.clone();
            along(-gamma, &mut trial, &simplex);
            let fe = eval(&trial, &mut evals);
            if fe < fr {
                simplex[worst].copy_from_slice(&trial);
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
            continue;
        }
        if fr < values[second] {
            simplex[worst].copy_from_slice(&trial);
            values[worst] = fr;
            continue;
        }
        // Contraction, outside if the reflection improved on the worst point.
        let outside = fr < values[worst];
        along(if outside { -rho } else { rho }, &mut trial, &simplex);
        let fc = eval(&trial, &mut evals);
        if (outside && fc <= fr) || (!outside && fc < values[worst]) {
            simplex[worst].copy_from_slice(&trial);
            values[worst] = fc;
            continue;
        }
        let anchor = simplex[best].clone();
        for &i in &order[1..] {
            for k in 0..n {
                simplex[i][k] = anchor[k] + shrink * (simplex[i][k] - anchor[k]);
            }
            values[i] = eval(&simplex[i], &mut evals);
        }
    }

    let best = (0..=n)
        .min_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(std::cmp::Ordering::Equal))
        .expect("nonempty simplex");
    Minimum {
        point: simplex[best].clone(),
        value: values[best],
        iterations,
        evaluations: evals,
        converged,
    }
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
pub fn golden_max<T: Real, F: FnMut(T) -> T>(mut f: F, lo: T, hi: T, tol: T) -> (T, T) {
    let g = T::lit(0.618_033_988_749_894_8);
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
