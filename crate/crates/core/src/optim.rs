//! Budgeted Nelder–Mead with seeded restarts.
//!
//! Coordinates live on a periodic box: the objective is always evaluated at
//! the wrapped point while the simplex keeps unwrapped coordinates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadCoefficients {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
}

impl Default for NelderMeadCoefficients {
    fn default() -> Self {
        Self { reflection: 1.0, expansion: 2.0, contraction: 0.5, shrink: 0.5 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiStartOptions {
    pub coefficients: NelderMeadCoefficients,
    /// Total objective evaluations across all restarts.
    pub budget: usize,
    pub seed: u64,
    /// Initial simplex edge as a fraction of each coordinate's period.
    pub step_fraction: f64,
    /// A restart ends once the simplex's value spread drops below this.
    pub value_tolerance: f64,
    /// ... or its largest edge drops below this.
    pub point_tolerance: f64,
}

impl MultiStartOptions {
    pub fn new(budget: usize, seed: u64) -> Self {
        Self {
            coefficients: NelderMeadCoefficients::default(),
            budget,
            seed,
            step_fraction: 0.1,
            value_tolerance: 1e-10,
            point_tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeResult {
    /// Wrapped into the box.
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
    pub restarts: usize,
    /// Evaluation index of the best point seen after each evaluation.
    pub best_index_trace: Vec<usize>,
    /// Every objective value in call order.
    pub values: Vec<f64>,
}

/// Periodic box `[lower_i, lower_i + period_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicBox {
    pub lower: Vec<f64>,
    pub period: Vec<f64>,
}

impl PeriodicBox {
    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn wrap(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(self.lower.iter().zip(&self.period))
            .map(|(&v, (&lo, &per))| {
                let w = lo + (v - lo).rem_euclid(per);
                // rem_euclid can round up to exactly one period
                if w >= lo + per { lo } else { w }
            })
            .collect()
    }

    fn sample(&self, rng: &mut impl Rng) -> Vec<f64> {
        self.lower.iter().zip(&self.period).map(|(&lo, &per)| lo + rng.gen::<f64>() * per).collect()
    }
}

struct Budgeted<'a, F> {
    f: &'a mut F,
    domain: &'a PeriodicBox,
    budget: usize,
    values: Vec<f64>,
    points: Vec<Vec<f64>>,
    best: Option<usize>,
    best_trace: Vec<usize>,
}

impl<F: FnMut(&[f64]) -> f64> Budgeted<'_, F> {
    fn exhausted(&self) -> bool {
        self.values.len() >= self.budget
    }

    fn eval(&mut self, x: &[f64]) -> Option<f64> {
        if self.exhausted() {
            return None;
        }
        let wrapped = self.domain.wrap(x);
        let v = (self.f)(&wrapped);
        let idx = self.values.len();
        self.values.push(v);
        self.points.push(wrapped);
        // NaN never becomes the best
        if self.best.is_none_or(|b| v < self.values[b]) {
            self.best = Some(idx);
        }
        self.best_trace.push(self.best.expect("at least one evaluation"));
        Some(v)
    }
}

/// Minimizes `f` over `domain`, restarting from seeded random points until
/// `options.budget` evaluations are spent. The first restart begins at
/// `start`, so evaluation 0 is always `f(start)`.
pub fn minimize<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    domain: &PeriodicBox,
    start: &[f64],
    options: &MultiStartOptions,
) -> OptimizeResult {
    assert_eq!(start.len(), domain.dim(), "start point has wrong dimension");
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut budgeted = Budgeted {
        f: &mut f,
        domain,
        budget: options.budget,
        values: Vec::with_capacity(options.budget),
        points: Vec::with_capacity(options.budget),
        best: None,
        best_trace: Vec::with_capacity(options.budget),
    };
    let mut restarts = 0;
    let mut x0 = start.to_vec();
    while !budgeted.exhausted() {
        if domain.dim() == 0 {
            budgeted.eval(&x0);
            break;
        }
        nelder_mead(&mut budgeted, &x0, options);
        restarts += 1;
        x0 = domain.sample(&mut rng);
    }
    let best = budgeted.best.unwrap_or(0);
    OptimizeResult {
        best_point: budgeted.points.get(best).cloned().unwrap_or_else(|| domain.wrap(start)),
        best_value: budgeted.values.get(best).copied().unwrap_or(f64::NAN),
        evaluations: budgeted.values.len(),
        restarts,
        best_index_trace: budgeted.best_trace,
        values: budgeted.values,
    }
}

fn nelder_mead<F: FnMut(&[f64]) -> f64>(ctx: &mut Budgeted<'_, F>, x0: &[f64], options: &MultiStartOptions) {
    let n = x0.len();
    let NelderMeadCoefficients { reflection, expansion, contraction, shrink } = options.coefficients;

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    let mut values: Vec<f64> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += options.step_fraction * ctx.domain.period[i];
        simplex.push(v);
    }
    for v in &simplex {
        match ctx.eval(v) {
            Some(f) => values.push(f),
            None => return,
        }
    }

    let along = |from: &[f64], to: &[f64], t: f64| -> Vec<f64> {
        from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
    };

    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[n] - values[0];
        let size = simplex[1..]
            .iter()
            .map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread.abs() < options.value_tolerance || size < options.point_tolerance {
            return;
        }

        let centroid: Vec<f64> =
            (0..n).map(|j| simplex[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64).collect();
        let worst = simplex[n].clone();

        let xr = along(&centroid, &worst, -reflection);
        let Some(fr) = ctx.eval(&xr) else { return };

        if fr < values[0] {
            let xe = along(&centroid, &xr, expansion);
            let Some(fe) = ctx.eval(&xe) else { return };
            if fe < fr {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
            continue;
        }

        // outside contraction when the reflection beat the worst point
        let (xc, threshold) = if fr < values[n] {
            (along(&centroid, &xr, contraction), fr)
        } else {
            (along(&centroid, &worst, contraction), values[n])
        };
        let Some(fc) = ctx.eval(&xc) else { return };
        if fc < threshold {
            simplex[n] = xc;
            values[n] = fc;
            continue;
        }

        for i in 1..=n {
            simplex[i] = along(&simplex[0], &simplex[i], shrink);
            match ctx.eval(&simplex[i].clone()) {
                Some(f) => values[i] = f,
                None => return,
            }
        }
    }
}
