//! t-norms, their dual t-conorms, and triangle functions on DDFs.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ddf::Ddf;
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::sample::{random_ddf, DdfShape};
use crate::scalar::Scalar;

/// The four basic t-norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TNorm {
    /// `T_M(x, y) = min(x, y)`
    #[serde(rename = "T_M")]
    Minimum,
    /// `T_P(x, y) = x y`
    #[serde(rename = "T_P")]
    Product,
    /// `T_L(x, y) = max(x + y - 1, 0)`
    #[serde(rename = "T_L")]
    Lukasiewicz,
    /// Drastic product: `min(x, y)` if `max(x, y) = 1`, else `0`.
    #[serde(rename = "T_D")]
    Drastic,
}

impl TNorm {
    pub const ALL: [TNorm; 4] = [
        TNorm::Minimum,
        TNorm::Product,
        TNorm::Lukasiewicz,
        TNorm::Drastic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TNorm::Minimum => "T_M",
            TNorm::Product => "T_P",
            TNorm::Lukasiewicz => "T_L",
            TNorm::Drastic => "T_D",
        }
    }

    pub fn is_left_continuous(self) -> bool {
        !matches!(self, TNorm::Drastic)
    }

    /// `T(x, y)` with both arguments checked to lie in `[0, 1]`.
    pub fn eval<S: Scalar>(self, x: S, y: S) -> Result<S> {
        unit("x", x)?;
        unit("y", y)?;
        Ok(self.apply(x, y))
    }

    /// `S(x, y) = 1 - T(1 - x, 1 - y)`.
    pub fn conorm<S: Scalar>(self, x: S, y: S) -> Result<S> {
        unit("x", x)?;
        unit("y", y)?;
        Ok(self.apply_conorm(x, y))
    }

    /// Unchecked evaluation.
    ///
    /// The Lukasiewicz form orders its arguments and computes
    /// `lo - (1 - hi)`, which is exactly commutative and returns `x` exactly
    /// when the other argument is `1`, also in floating point.
    pub(crate) fn apply<S: Scalar>(self, x: S, y: S) -> S {
        match self {
            TNorm::Minimum => x.min_of(y),
            TNorm::Product => x * y,
            TNorm::Lukasiewicz => {
                let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
                (lo - (S::one() - hi)).max_of(S::zero())
            }
            TNorm::Drastic => {
                if x.max_of(y) == S::one() {
                    x.min_of(y)
                } else {
                    S::zero()
                }
            }
        }
    }

    pub(crate) fn apply_conorm<S: Scalar>(self, x: S, y: S) -> S {
        S::one() - self.apply(S::one() - x, S::one() - y)
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TNorm::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Malformed(format!("unknown t-norm {s:?}")))
    }
}

fn unit<S: Scalar>(name: &'static str, v: S) -> Result<()> {
    if v >= S::zero() && v <= S::one() {
        Ok(())
    } else {
        Err(Error::Parameter {
            name,
            value: v.to_f64(),
            expected: "[0, 1]",
        })
    }
}

/// A triangle function on DDFs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleFn {
    /// `tau_T(F, G)(x) = sup{T(F(u), G(v)) : u + v = x}`.
    SupT(TNorm),
    /// `(F * G)(x) = integral over [0, x) of F(x - t) dG(t)`.
    Convolution,
}

impl TriangleFn {
    /// `tau_T`, refused for t-norms that are not left-continuous.
    pub fn sup_t(t: TNorm) -> Result<Self> {
        if t.is_left_continuous() {
            Ok(TriangleFn::SupT(t))
        } else {
            Err(Error::UnsupportedTNorm(t.name()))
        }
    }

    pub fn name(&self) -> String {
        match self {
            TriangleFn::SupT(t) => format!("tau_{}", t.name()),
            TriangleFn::Convolution => "convolution".into(),
        }
    }

    /// Applies the triangle function.
    pub fn apply<S: Scalar>(&self, f: &Ddf<S>, g: &Ddf<S>) -> Result<Ddf<S>> {
        match *self {
            TriangleFn::SupT(t) => {
                if !t.is_left_continuous() {
                    return Err(Error::UnsupportedTNorm(t.name()));
                }
                Ok(sup_t(t, f, g))
            }
            TriangleFn::Convolution => Ok(convolution(f, g)),
        }
    }

    /// A lower bound for `tau(F, G)(2e)` in terms of `F(e)` and `G(e)`:
    /// `T(F(e), G(e))` for `tau_T`, and the product for convolution.
    pub fn midpoint_bound<S: Scalar>(&self, a: S, b: S) -> S {
        match *self {
            TriangleFn::SupT(t) => t.apply(a, b),
            TriangleFn::Convolution => a * b,
        }
    }
}

impl fmt::Display for TriangleFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn by_value<S: Scalar>(a: &S, b: &S) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// `F(u) >= f_i` iff `u > a_i` and likewise for `G`, so some `u + v = x`
/// reaches levels `(f_i, g_j)` iff `x > a_i + b_j`. The output therefore
/// jumps only at pairwise sums and its value after a sum is the running
/// maximum of `T(f_i, g_j)` over all sums up to it.
fn sup_t<S: Scalar>(t: TNorm, f: &Ddf<S>, g: &Ddf<S>) -> Ddf<S> {
    let mut pairs: Vec<(S, S)> = f
        .breakpoints()
        .iter()
        .flat_map(|&(a, fv)| g.breakpoints().iter().map(move |&(b, gv)| (a + b, t.apply(fv, gv))))
        .collect();
    pairs.sort_by(|p, q| by_value(&p.0, &q.0));
    let mut level = S::zero();
    for p in pairs.iter_mut() {
        level = level.max_of(p.1);
        p.1 = level;
    }
    Ddf::from_steps(pairs).expect("sup-T output is a valid step function")
}

/// Stieltjes sum over the jumps of both arguments: the value just after `c`
/// is the total mass `dF_i * dG_j` of all pairs with `a_i + b_j <= c`.
///
/// Terms are accumulated in `(sum, mass)` order, which is the same sequence for
/// `F * G` and `G * F`, so the result is exactly commutative. `H_0` is
/// returned as the exact identity.
fn convolution<S: Scalar>(f: &Ddf<S>, g: &Ddf<S>) -> Ddf<S> {
    if f.is_h0() {
        return g.clone();
    }
    if g.is_h0() {
        return f.clone();
    }
    let jumps = |d: &Ddf<S>| -> Vec<(S, S)> {
        let mut prev = S::zero();
        d.breakpoints()
            .iter()
            .map(|&(x, v)| {
                let jump = v - prev;
                prev = v;
                (x, jump)
            })
            .collect()
    };
    let (fj, gj) = (jumps(f), jumps(g));
    let mut terms: Vec<(S, S)> = fj
        .iter()
        .flat_map(|&(a, df)| gj.iter().map(move |&(b, dg)| (a + b, df * dg)))
        .collect();
    terms.sort_by(|p, q| by_value(&p.0, &q.0).then_with(|| by_value(&p.1, &q.1)));
    let mut total = S::zero();
    let mut out: Vec<(S, S)> = Vec::with_capacity(terms.len());
    for (x, mass) in terms {
        total = (total + mass).min_of(S::one());
        match out.last_mut() {
            Some(last) if last.0 == x => last.1 = total,
            _ => out.push((x, total)),
        }
    }
    Ddf::from_steps(out).expect("convolution output is a valid step function")
}

/// Samples for axiom checks: mostly uniform, with the endpoints and `1/2`
/// mixed in so that the drastic product is exercised on its nontrivial branch.
fn unit_sample<R: Rng>(rng: &mut R) -> f64 {
    match rng.gen_range(0..8) {
        0 => 0.0,
        1 => 1.0,
        2 => 0.5,
        _ => rng.gen::<f64>(),
    }
}

/// Sampled check of commutativity, associativity, monotonicity and the unit
/// law of a t-norm. Passes iff every maximal violation is within `tol`.
pub fn check_tnorm_axioms<S: Scalar>(
    t: TNorm,
    n_samples: usize,
    tol: S,
    seed: u64,
) -> Result<CheckReport> {
    if n_samples == 0 {
        return Err(Error::Parameter {
            name: "n_samples",
            value: 0.0,
            expected: "[1, inf)",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = [S::zero(); 4];
    let mut witness: [Option<[f64; 3]>; 4] = [None; 4];
    let names = ["commutativity", "associativity", "monotonicity", "unit"];

    for _ in 0..n_samples {
        let raw = [unit_sample(&mut rng), unit_sample(&mut rng), unit_sample(&mut rng)];
        let [x, y, z] = raw.map(S::from_f64);
        let (lo, hi) = if y <= z { (y, z) } else { (z, y) };
        let excess = t.apply(x, lo) - t.apply(x, hi);
        let violations = [
            t.apply(x, y).abs_diff(t.apply(y, x)),
            t.apply(t.apply(x, y), z).abs_diff(t.apply(x, t.apply(y, z))),
            excess.max_of(S::zero()),
            t.apply(x, S::one()).abs_diff(x),
        ];
        for (k, v) in violations.into_iter().enumerate() {
            if v > worst[k] {
                worst[k] = v;
                witness[k] = Some(raw);
            }
        }
    }

    let name = format!("tnorm_axioms[{}]", t.name());
    let failing = (0..4).find(|&k| worst[k] > tol);
    let mut report = match failing {
        None => CheckReport::pass(name),
        Some(k) => {
            let [x, y, z] = witness[k].expect("violation recorded");
            CheckReport::fail(name, "axiom", names[k])
                .with_witness("x", x)
                .with_witness("y", y)
                .with_witness("z", z)
        }
    };
    for k in 0..4 {
        report = report.with_witness(format!("max_{}_violation", names[k]), worst[k].to_f64());
    }
    Ok(report.with_witness("samples", n_samples))
}

/// Sampled check of the triangle-function axioms on random step DDFs.
///
/// Commutativity and the `H_0` identity are required to hold exactly on
/// canonical forms; associativity and monotonicity are measured in sup-norm
/// on merged breakpoints and must stay within `tol`. Samples are drawn from a
/// dyadic lattice (see [`DdfShape::lattice`]).
pub fn check_triangle_axioms<S: Scalar>(
    tau: TriangleFn,
    n_samples: usize,
    tol: S,
    seed: u64,
) -> Result<CheckReport> {
    if n_samples == 0 {
        return Err(Error::Parameter {
            name: "n_samples",
            value: 0.0,
            expected: "[1, inf)",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = DdfShape::lattice();
    let h0 = Ddf::<S>::h0();
    let mut commutativity_failures = 0usize;
    let mut identity_failures = 0usize;
    let mut worst_assoc = S::zero();
    let mut worst_mono = S::zero();
    let mut first_failure: Option<(&'static str, usize)> = None;

    for i in 0..n_samples {
        let f: Ddf<S> = random_ddf(&mut rng, &shape);
        let g: Ddf<S> = random_ddf(&mut rng, &shape);
        let k: Ddf<S> = random_ddf(&mut rng, &shape);

        let fg = tau.apply(&f, &g)?;
        if fg != tau.apply(&g, &f)? {
            commutativity_failures += 1;
            first_failure.get_or_insert(("commutativity", i));
        }
        if tau.apply(&f, &h0)? != f || tau.apply(&h0, &f)? != f {
            identity_failures += 1;
            first_failure.get_or_insert(("identity", i));
        }
        let left = tau.apply(&fg, &k)?;
        let right = tau.apply(&f, &tau.apply(&g, &k)?)?;
        let assoc = left.sup_distance(&right);
        if assoc > worst_assoc {
            worst_assoc = assoc;
        }
        if assoc > tol {
            first_failure.get_or_insert(("associativity", i));
        }
        let bigger = Ddf::sup_family(&[f.clone(), k.clone()])?;
        let mono = fg.max_excess(&tau.apply(&bigger, &g)?);
        if mono > worst_mono {
            worst_mono = mono;
        }
        if mono > tol {
            first_failure.get_or_insert(("monotonicity", i));
        }
    }

    let name = format!("triangle_axioms[{}]", tau.name());
    let report = match first_failure {
        None => CheckReport::pass(name),
        Some((axiom, sample)) => {
            CheckReport::fail(name, "axiom", axiom).with_witness("sample", sample)
        }
    };
    Ok(report
        .with_witness("commutativity_failures", commutativity_failures)
        .with_witness("identity_failures", identity_failures)
        .with_witness("max_associativity_violation", worst_assoc.to_f64())
        .with_witness("max_monotonicity_violation", worst_mono.to_f64())
        .with_witness("samples", n_samples))
}
