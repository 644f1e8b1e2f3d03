//! Distance distribution functions as canonical left-continuous step functions.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::levy::levy_distance;
use crate::report::CheckReport;
use crate::scalar::Scalar;

/// A point of the extended real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended<S> {
    NegInf,
    Finite(S),
    PosInf,
}

/// A distance distribution function with finitely many jumps.
///
/// Stored as breakpoints `(x_i, v_i)` with both coordinates strictly
/// increasing, `x_1 >= 0` and `0 < v_i <= 1`. The function is `0` on
/// `[-inf, x_1]`, `v_i` on `(x_i, x_{i+1}]`, `v_n` on `(x_n, +inf)` and `1` at
/// `+inf`; when `v_n < 1` the remaining mass sits at infinity.
///
/// Because the representation is canonical, structural equality is equality
/// of functions.
#[derive(Debug, Clone, PartialEq)]
pub struct Ddf<S> {
    steps: Vec<(S, S)>,
}

impl<S: Scalar> Ddf<S> {
    /// Builds a DDF from breakpoints that already satisfy every invariant.
    pub fn new(breakpoints: Vec<(S, S)>) -> Result<Self> {
        for (i, &(x, v)) in breakpoints.iter().enumerate() {
            check_point(i, x, v)?;
            if i > 0 {
                let (px, pv) = breakpoints[i - 1];
                if !(x > px) {
                    return Err(Error::NotIncreasing { field: "x", index: i });
                }
                if !(v > pv) {
                    return Err(Error::NotIncreasing { field: "v", index: i });
                }
            }
        }
        Ok(Ddf { steps: breakpoints })
    }

    /// Canonicalizes an arbitrary list of `(x, value after x)` pairs.
    ///
    /// Duplicate abscissae keep the larger value and zero-height jumps are
    /// dropped. The values must still describe a non-decreasing function.
    pub fn from_steps(mut pairs: Vec<(S, S)>) -> Result<Self> {
        for (i, &(x, v)) in pairs.iter().enumerate() {
            if !x.is_finite_value() || x < S::zero() {
                return Err(Error::OutOfRange {
                    field: "x",
                    index: i,
                    reason: "must be finite and nonnegative",
                });
            }
            if !v.is_finite_value() || v < S::zero() || v > S::one() {
                return Err(Error::OutOfRange {
                    field: "v",
                    index: i,
                    reason: "must lie in [0, 1]",
                });
            }
        }
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
        let mut merged: Vec<(S, S)> = Vec::with_capacity(pairs.len());
        for (x, v) in pairs {
            match merged.last_mut() {
                Some(last) if last.0 == x => last.1 = last.1.max_of(v),
                _ => merged.push((x, v)),
            }
        }
        let mut steps: Vec<(S, S)> = Vec::with_capacity(merged.len());
        let mut level = S::zero();
        for (i, (x, v)) in merged.into_iter().enumerate() {
            if v < level {
                return Err(Error::NotIncreasing { field: "v", index: i });
            }
            if v > level {
                steps.push((x, v));
                level = v;
            }
        }
        Ok(Ddf { steps })
    }

    /// The Dirac function `H_a`: `0` on `[-inf, a]`, `1` on `(a, +inf]`.
    pub fn dirac(a: S) -> Result<Self> {
        if !a.is_finite_value() || a < S::zero() {
            return Err(Error::NegativeDirac(a.to_f64()));
        }
        Ok(Ddf {
            steps: vec![(a, S::one())],
        })
    }

    /// `H_0`, the identity of every triangle function.
    pub fn h0() -> Self {
        Ddf {
            steps: vec![(S::zero(), S::one())],
        }
    }

    /// `H_inf`: zero at every finite argument.
    pub fn dirac_infinity() -> Self {
        Ddf { steps: Vec::new() }
    }

    /// Single jump of height `v` at `x`, the rest of the mass at infinity.
    pub fn cap(x: S, v: S) -> Result<Self> {
        Ddf::new(vec![(x, v)])
    }

    pub fn breakpoints(&self) -> &[(S, S)] {
        &self.steps
    }

    pub fn abscissae(&self) -> impl Iterator<Item = S> + '_ {
        self.steps.iter().map(|s| s.0)
    }

    pub fn num_breakpoints(&self) -> usize {
        self.steps.len()
    }

    /// `F(x)`, using left-continuity at the breakpoints.
    pub fn eval(&self, x: S) -> S {
        let k = self.steps.partition_point(|s| s.0 < x);
        self.level_after(k)
    }

    pub fn eval_ext(&self, x: Extended<S>) -> S {
        match x {
            Extended::NegInf => S::zero(),
            Extended::Finite(x) => self.eval(x),
            Extended::PosInf => S::one(),
        }
    }

    /// `lim_{y -> x+} F(y)`.
    pub fn right_limit(&self, x: S) -> S {
        let k = self.steps.partition_point(|s| s.0 <= x);
        self.level_after(k)
    }

    fn level_after(&self, k: usize) -> S {
        if k == 0 {
            S::zero()
        } else {
            self.steps[k - 1].1
        }
    }

    /// `sup_{x finite} F(x)`: the last step value, or `0` for `H_inf`.
    pub fn final_value(&self) -> S {
        self.steps.last().map_or(S::zero(), |s| s.1)
    }

    /// Returns `Some(a)` when `self` is the Dirac function `H_a`.
    pub fn dirac_point(&self) -> Option<S> {
        match self.steps.as_slice() {
            [(a, v)] if *v == S::one() => Some(*a),
            _ => None,
        }
    }

    pub fn is_h0(&self) -> bool {
        self.dirac_point() == Some(S::zero())
    }

    /// Re-checks every representation invariant.
    pub fn is_canonical(&self) -> bool {
        Ddf::new(self.steps.clone()).is_ok()
    }

    /// Pointwise order: `F(x) <= G(x)` for every `x`.
    pub fn leq(&self, other: &Ddf<S>) -> bool {
        self.first_exceedance(other).is_none()
    }

    /// Some `x` with `self(x) > other(x)`, if one exists.
    ///
    /// Both functions are constant on each piece `(c_k, c_{k+1}]` of the merged
    /// breakpoint set, so the piece values decide the order. The returned
    /// point is the right end of the first offending piece (or `c_k + 1` for
    /// the unbounded last piece) and is itself a violating argument.
    pub fn first_exceedance(&self, other: &Ddf<S>) -> Option<S> {
        let cuts = merged_abscissae([self, other]);
        for (i, &c) in cuts.iter().enumerate() {
            if self.right_limit(c) > other.right_limit(c) {
                return Some(cuts.get(i + 1).copied().unwrap_or(c + S::one()));
            }
        }
        None
    }

    /// Kolmogorov (sup-norm) distance, exact on step functions.
    pub fn sup_distance(&self, other: &Ddf<S>) -> S {
        merged_abscissae([self, other])
            .into_iter()
            .map(|c| self.right_limit(c).abs_diff(other.right_limit(c)))
            .fold(S::zero(), S::max_of)
    }

    /// `sup_x max(self(x) - other(x), 0)`: how far `self <= other` is from holding.
    pub fn max_excess(&self, other: &Ddf<S>) -> S {
        merged_abscissae([self, other])
            .into_iter()
            .map(|c| {
                let (a, b) = (self.right_limit(c), other.right_limit(c));
                if a > b {
                    a - b
                } else {
                    S::zero()
                }
            })
            .fold(S::zero(), S::max_of)
    }

    /// Pointwise supremum of a nonempty family.
    pub fn sup_family(family: &[Ddf<S>]) -> Result<Self> {
        Self::pointwise(family, "sup_family", S::max_of)
    }

    /// Pointwise infimum of a nonempty family. The value at `+inf` stays `1`,
    /// so the result may carry mass at infinity.
    pub fn pointwise_inf(family: &[Ddf<S>]) -> Result<Self> {
        Self::pointwise(family, "pointwise_inf", S::min_of)
    }

    fn pointwise(family: &[Ddf<S>], op: &'static str, combine: fn(S, S) -> S) -> Result<Self> {
        let (first, rest) = family.split_first().ok_or(Error::EmptyFamily(op))?;
        if rest.is_empty() {
            return Ok(first.clone());
        }
        let cuts = merged_abscissae(family.iter());
        let pairs = cuts
            .into_iter()
            .map(|c| {
                let v = rest
                    .iter()
                    .fold(first.right_limit(c), |acc, f| combine(acc, f.right_limit(c)));
                (c, v)
            })
            .collect();
        Ddf::from_steps(pairs)
    }
}

fn check_point<S: Scalar>(i: usize, x: S, v: S) -> Result<()> {
    if !x.is_finite_value() || x < S::zero() {
        return Err(Error::OutOfRange {
            field: "x",
            index: i,
            reason: "must be finite and nonnegative",
        });
    }
    if !v.is_finite_value() || !(v > S::zero()) || v > S::one() {
        return Err(Error::OutOfRange {
            field: "v",
            index: i,
            reason: "must lie in (0, 1]",
        });
    }
    Ok(())
}

/// Sorted, deduplicated union of the breakpoint abscissae of `family`.
pub fn merged_abscissae<'a, S, I>(family: I) -> Vec<S>
where
    S: Scalar,
    I: IntoIterator<Item = &'a Ddf<S>>,
{
    let mut cuts: Vec<S> = family.into_iter().flat_map(|f| f.abscissae()).collect();
    sort_dedup(&mut cuts);
    cuts
}

pub(crate) fn sort_dedup<S: Scalar>(values: &mut Vec<S>) {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    values.dedup();
}

/// Compares a sequence against a candidate limit in two ways: pointwise at
/// continuity points of the limit, and through the modified Levy distance.
///
/// Continuity points are taken at least `tol` away from every breakpoint of
/// `target` and inside `(0, 1/tol)`: the midpoints between consecutive
/// breakpoints, the ends of each admissible gap, and every breakpoint of the
/// sequence members that lands in a gap. On a gap both sides are step
/// functions, so these points realise the supremum of the deviation there.
///
/// The verdicts are taken on the final element. The report passes when the
/// two verdicts agree.
pub fn weak_convergence_report<S: Scalar>(
    seq: &[Ddf<S>],
    target: &Ddf<S>,
    tol: S,
) -> Result<CheckReport> {
    if !(tol > S::zero()) {
        return Err(Error::Parameter {
            name: "tol",
            value: tol.to_f64(),
            expected: "(0, inf)",
        });
    }
    if seq.is_empty() {
        return Err(Error::EmptyFamily("weak_convergence_report"));
    }

    let horizon = S::one() / tol;
    let bps: Vec<S> = target.abscissae().collect();
    let admissible = |x: S| {
        x > S::zero() && x < horizon && bps.iter().all(|&b| !(x.abs_diff(b) < tol))
    };

    // Offsets of 1.5 tol keep the probes admissible after rounding.
    let offset = tol + tol.half();
    let mut probes: Vec<S> = Vec::new();
    for w in bps.windows(2) {
        probes.push((w[0] + w[1]).half());
        probes.push(w[0] + offset);
        probes.push(w[1] - offset);
    }
    match (bps.first(), bps.last()) {
        (Some(&first), Some(&last)) => {
            probes.push(first - offset);
            probes.push(first.half());
            probes.push(last + offset);
            probes.push((last + horizon).half());
        }
        _ => probes.push(horizon.half()),
    }
    let mut interior: Vec<S> = seq.iter().flat_map(|f| f.abscissae()).collect();
    sort_dedup(&mut interior);
    interior.retain(|&x| admissible(x));
    probes.retain(|&x| admissible(x));
    sort_dedup(&mut probes);

    let deviation = |f: &Ddf<S>| -> S {
        let left = probes
            .iter()
            .chain(interior.iter())
            .map(|&x| f.eval(x).abs_diff(target.eval(x)));
        let right = interior
            .iter()
            .map(|&x| f.right_limit(x).abs_diff(target.right_limit(x)));
        left.chain(right).fold(S::zero(), S::max_of)
    };

    let pointwise: Vec<S> = seq.iter().map(deviation).collect();
    let levy: Vec<S> = seq.iter().map(|f| levy_distance(f, target)).collect();
    let final_pointwise = *pointwise.last().expect("nonempty");
    let final_levy = *levy.last().expect("nonempty");
    let pointwise_converged = final_pointwise < tol;
    let levy_converged = final_levy < tol;

    let name = "weak_convergence";
    let report = if pointwise_converged == levy_converged {
        CheckReport::pass(name)
    } else {
        CheckReport::fail(name, "disagreement_at_index", seq.len() - 1)
    };
    Ok(report
        .with_witness("pointwise_converged", pointwise_converged)
        .with_witness("levy_converged", levy_converged)
        .with_witness("final_pointwise_deviation", final_pointwise.to_f64())
        .with_witness("final_levy_distance", final_levy.to_f64())
        .with_witness("continuity_points", probes.len() + interior.len())
        .with_trace(
            "pointwise_deviation",
            pointwise.into_iter().map(S::to_f64).collect(),
        )
        .with_trace("levy_distance", levy.into_iter().map(S::to_f64).collect()))
}
