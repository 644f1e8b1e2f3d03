//! Random generators for DDFs, metrics and finite spaces.
//!
//! Everything is drawn from dyadic lattices so that sums and products of the
//! generated values are exact in `f64`, which lets exact-equality laws be
//! checked on floating-point data.

use rand::seq::index::sample;
use rand::Rng;

use crate::ddf::Ddf;
use crate::error::Result;
use crate::pmspace::PmSpace;
use crate::scalar::Scalar;
use crate::triangle::{TNorm, TriangleFn};

/// Lattice from which [`random_ddf`] draws breakpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdfShape {
    pub max_breakpoints: usize,
    /// Abscissae are `k * x_step` for `k` in `0..=x_cells`.
    pub x_step: f64,
    pub x_cells: usize,
    /// Values are `k / v_cells` for `k` in `1..=v_cells`.
    pub v_cells: usize,
    /// Probability that the last value is forced to `1` (no mass at infinity).
    pub full_mass: f64,
}

impl DdfShape {
    /// Small, coarse DDFs for algebraic checks that compose several
    /// triangle-function applications.
    pub fn lattice() -> Self {
        DdfShape {
            max_breakpoints: 5,
            x_step: 0.125,
            x_cells: 16,
            v_cells: 64,
            full_mass: 0.7,
        }
    }

    /// Up to `max_breakpoints` jumps on `[0, 3]` at resolution `1/1024`.
    pub fn fine(max_breakpoints: usize) -> Self {
        DdfShape {
            max_breakpoints,
            x_step: 1.0 / 1024.0,
            x_cells: 3 * 1024,
            v_cells: 1024,
            full_mass: 0.7,
        }
    }
}

/// A random canonical DDF on the lattice described by `shape`.
pub fn random_ddf<S: Scalar, R: Rng + ?Sized>(rng: &mut R, shape: &DdfShape) -> Ddf<S> {
    let n = rng.gen_range(0..=shape.max_breakpoints.min(shape.v_cells));
    ddf_with_breakpoints(rng, shape, n)
}

/// A random DDF with exactly `n` breakpoints.
pub fn ddf_with_breakpoints<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    shape: &DdfShape,
    n: usize,
) -> Ddf<S> {
    let n = n.min(shape.v_cells).min(shape.x_cells + 1);
    if n == 0 {
        return Ddf::dirac_infinity();
    }
    let mut xs = sample(rng, shape.x_cells + 1, n).into_vec();
    xs.sort_unstable();
    let mut vs: Vec<usize> = if rng.gen_bool(shape.full_mass) {
        let mut v = sample(rng, shape.v_cells - 1, n - 1)
            .into_iter()
            .map(|k| k + 1)
            .collect::<Vec<_>>();
        v.push(shape.v_cells);
        v
    } else {
        sample(rng, shape.v_cells, n)
            .into_iter()
            .map(|k| k + 1)
            .collect()
    };
    vs.sort_unstable();
    let steps = xs
        .into_iter()
        .zip(vs)
        .map(|(x, v)| {
            (
                S::from_f64(x as f64 * shape.x_step),
                S::from_f64(v as f64 / shape.v_cells as f64),
            )
        })
        .collect();
    Ddf::new(steps).expect("lattice sample is canonical")
}

/// L1 distances between `n` distinct random points of `{0..=coord_max}^2`.
/// Integer valued, so it is a metric with exact float arithmetic.
pub fn random_metric<R: Rng + ?Sized>(rng: &mut R, n: usize, coord_max: usize) -> Vec<Vec<f64>> {
    let side = coord_max + 1;
    assert!(n <= side * side, "not enough lattice points for {n} points");
    let cells = sample(rng, side * side, n).into_vec();
    let coords: Vec<(i64, i64)> = cells
        .into_iter()
        .map(|c| ((c / side) as i64, (c % side) as i64))
        .collect();
    coords
        .iter()
        .map(|&(a, b)| {
            coords
                .iter()
                .map(|&(c, d)| ((a - c).abs() + (b - d).abs()) as f64)
                .collect()
        })
        .collect()
}

pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// A Menger space with Dirac distances `H_{d(p,q)}` for a random lattice metric.
pub fn random_dirac_space<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    tau: TriangleFn,
) -> Result<PmSpace<S>> {
    let d = random_metric(rng, n, 4);
    let labels = default_labels(n);
    let dist = d
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| Ddf::dirac(S::from_f64(v)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PmSpace::new(labels, dist, tau)
}

/// A simple space `F_{p,q}(x) = G(x / d(p,q))` over a random lattice metric
/// and a random base DDF `G != H_0`.
///
/// Such a space satisfies the triangle axiom under `tau_{T_M}`, hence under
/// every `tau_T` for `T <= T_M`. The base may carry mass at infinity, which
/// makes semi-bounded subsets appear.
pub fn random_simple_space<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    t: TNorm,
) -> Result<PmSpace<S>> {
    let tau = TriangleFn::sup_t(t)?;
    let d = random_metric(rng, n, 4);
    let shape = DdfShape {
        max_breakpoints: 4,
        x_step: 0.125,
        x_cells: 16,
        v_cells: 16,
        full_mass: 0.6,
    };
    let base: Ddf<f64> = loop {
        let g = random_ddf(rng, &shape);
        if !g.is_h0() {
            break g;
        }
    };
    let dist = d
        .iter()
        .map(|row| {
            row.iter()
                .map(|&dpq| {
                    if dpq == 0.0 {
                        Ok(Ddf::h0())
                    } else {
                        Ddf::new(
                            base.breakpoints()
                                .iter()
                                .map(|&(x, v)| (S::from_f64(x * dpq), S::from_f64(v)))
                                .collect(),
                        )
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PmSpace::new(default_labels(n), dist, tau)
}

/// Either kind of random validated space: simple spaces under a random
/// left-continuous `tau_T`, or Dirac spaces under convolution.
pub fn random_space<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<PmSpace<S>> {
    match rng.gen_range(0..4) {
        0 => random_simple_space(rng, n, TNorm::Minimum),
        1 => random_simple_space(rng, n, TNorm::Product),
        2 => random_simple_space(rng, n, TNorm::Lukasiewicz),
        _ => random_dirac_space(rng, n, TriangleFn::Convolution),
    }
}
