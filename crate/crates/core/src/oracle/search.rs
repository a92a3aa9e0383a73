//! Deterministic maximization over the closed unit bidisk for objectives that
//! are affine in the second coordinate.
//!
//! For `F(z1, z2) = A(z1) + B(z1) z2` the maximum of `|F|` over `|z2| <= 1`
//! is `|A| + |B|`, attained at `z2 = (A/|A|) (conj B/|B|)`. The search runs
//! over `z1` only: a polar grid, then coordinate pattern search from the best
//! grid point and from a few seeded random starts.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of extra seeded starting points for the pattern search.
const RANDOM_STARTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Execution {
    /// Grid rings are evaluated on the rayon pool. Without the `parallel`
    /// feature this falls back to [`Execution::Sequential`].
    Parallel,
    Sequential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub grid_density: usize,
    pub refine_steps: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            grid_density: 200,
            refine_steps: 40,
            seed: 0,
            execution: Execution::Parallel,
        }
    }
}

/// `F(z1, z2)`, required to be affine in `z2`, plus an optional real term
/// depending on `z1` alone that is added to `|F|`.
pub trait BidiskObjective: Sync {
    fn eval(&self, zeta1: Complex64, zeta2: Complex64) -> Complex64;

    fn extra(&self, _zeta1: Complex64) -> f64 {
        0.0
    }
}

impl<F> BidiskObjective for F
where
    F: Fn(Complex64, Complex64) -> Complex64 + Sync,
{
    fn eval(&self, zeta1: Complex64, zeta2: Complex64) -> Complex64 {
        self(zeta1, zeta2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub value: f64,
    pub zeta1: Complex64,
    pub zeta2: Complex64,
    pub samples: u64,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn unit(z: Complex64) -> Option<Complex64> {
    let n = z.norm();
    (n > 0.0).then(|| z / n)
}

/// Value at `zeta1` with the optimal `zeta2`.
fn reduced<O: BidiskObjective + ?Sized>(obj: &O, zeta1: Complex64) -> (f64, Complex64) {
    let a = obj.eval(zeta1, ZERO);
    let b = obj.eval(zeta1, ONE) - a;
    let zeta2 = match (unit(a), unit(b)) {
        (Some(ua), Some(ub)) => ua * ub.conj(),
        (None, Some(ub)) => ub.conj(),
        _ => ONE,
    };
    (a.norm() + b.norm() + obj.extra(zeta1), zeta2)
}

fn clamp_to_disk(z: Complex64) -> Complex64 {
    let n = z.norm();
    if n > 1.0 {
        z / n
    } else {
        z
    }
}

/// Best point on ring `i` of the polar grid; ties go to the smallest angle index.
fn best_on_ring<O: BidiskObjective + ?Sized>(obj: &O, i: usize, density: usize) -> (f64, usize, Complex64, Complex64) {
    let r = i as f64 / density as f64;
    let count = if i == 0 { 1 } else { density };
    let mut best = (f64::NEG_INFINITY, 0, ZERO, ONE);
    for j in 0..count {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / density as f64;
        let zeta1 = Complex64::from_polar(r, theta);
        let (value, zeta2) = reduced(obj, zeta1);
        if value > best.0 {
            best = (value, j, zeta1, zeta2);
        }
    }
    best
}

fn grid_rings<O: BidiskObjective + ?Sized>(obj: &O, density: usize, execution: Execution) -> Vec<(f64, usize, Complex64, Complex64)> {
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..=density)
            .into_par_iter()
            .map(|i| best_on_ring(obj, i, density))
            .collect(),
        _ => (0..=density).map(|i| best_on_ring(obj, i, density)).collect(),
    }
}

/// Coordinate pattern search with halving steps, confined to the closed disk.
fn pattern_search<O: BidiskObjective + ?Sized>(
    obj: &O,
    start: Complex64,
    start_value: f64,
    step: f64,
    steps: usize,
) -> (f64, Complex64, u64) {
    let dirs = [
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
    ];
    let (mut best, mut at, mut h) = (start_value, start, step);
    let mut evals = 0;
    for _ in 0..steps {
        let mut moved = false;
        for d in dirs {
            let cand = clamp_to_disk(at + d * h);
            let (v, _) = reduced(obj, cand);
            evals += 1;
            if v > best {
                best = v;
                at = cand;
                moved = true;
                break;
            }
        }
        if !moved {
            h *= 0.5;
        }
    }
    (best, at, evals)
}

/// Maximizes `|F(z1, z2)| + extra(z1)` over the closed unit bidisk.
pub fn maximize<O: BidiskObjective + ?Sized>(obj: &O, opts: &SearchOptions) -> Maximum {
    let density = opts.grid_density.max(1);
    let rings = grid_rings(obj, density, opts.execution);
    let mut samples = 1 + (density * density) as u64;

    // Ordered reduction: strict improvement only, so the lowest (ring, angle)
    // index wins ties regardless of execution mode.
    let (mut value, _, mut zeta1, _) = rings[0];
    for ring in &rings[1..] {
        if ring.0 > value {
            (value, _, zeta1, _) = *ring;
        }
    }

    let step = 1.0 / density as f64;
    let (v, z, n) = pattern_search(obj, zeta1, value, step, opts.refine_steps);
    samples += n;
    if v > value {
        value = v;
        zeta1 = z;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..RANDOM_STARTS {
        let r = rng.gen::<f64>().sqrt();
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let start = Complex64::from_polar(r, theta);
        let (v0, _) = reduced(obj, start);
        let (v, z, n) = pattern_search(obj, start, v0, 4.0 * step, opts.refine_steps);
        samples += n + 1;
        if v > value {
            value = v;
            zeta1 = z;
        }
    }

    let (value, zeta2) = {
        let (v, z2) = reduced(obj, zeta1);
        (v.max(value), z2)
    };
    Maximum { value, zeta1, zeta2, samples }
}
