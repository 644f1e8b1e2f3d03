//! The modified Levy metric on distance distribution functions.

use crate::ddf::{sort_dedup, Ddf};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Absolute accuracy of [`levy_distance`].
pub const LEVY_TOLERANCE: f64 = 1e-6;

/// Hard cap on bisection steps.
pub const MAX_BISECTION_STEPS: usize = 60;

/// A step function `x -> level(#{i : shifted_i < x})`, i.e. `F(x - shift)`
/// with the shifted abscissae computed once so that every comparison below
/// is made against the same rounded breakpoints.
struct ShiftedSteps<'a, S> {
    xs: Vec<S>,
    source: &'a [(S, S)],
}

impl<'a, S: Scalar> ShiftedSteps<'a, S> {
    fn new(f: &'a Ddf<S>, shift: S) -> Self {
        ShiftedSteps {
            xs: f.abscissae().map(|a| a + shift).collect(),
            source: f.breakpoints(),
        }
    }

    fn level(&self, k: usize) -> S {
        if k == 0 {
            S::zero()
        } else {
            self.source[k - 1].1
        }
    }

    fn eval(&self, x: S) -> S {
        self.level(self.xs.partition_point(|&a| a < x))
    }

    fn right_limit(&self, x: S) -> S {
        self.level(self.xs.partition_point(|&a| a <= x))
    }
}

fn check_band<S: Scalar>(h: S) -> Result<()> {
    if h > S::zero() && h <= S::one() {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "h",
            value: h.to_f64(),
            expected: "(0, 1]",
        })
    }
}

/// Decides `(F, G; h)`: `F(x-h) - h <= G(x) <= F(x+h) + h` for every `x` in
/// `(-1/h, 1/h)`.
pub fn condition_holds<S: Scalar>(f: &Ddf<S>, g: &Ddf<S>, h: S) -> Result<bool> {
    check_band(h)?;
    Ok(band_holds(f, g, h))
}

/// The three step functions involved only change value at their own
/// breakpoints, so it is enough to test each candidate breakpoint inside the
/// window from both sides (its own value and its right limit). A window with
/// no candidate is a single constant piece and is tested at `0`.
fn band_holds<S: Scalar>(f: &Ddf<S>, g: &Ddf<S>, h: S) -> bool {
    let lower = ShiftedSteps::new(f, h);
    let upper = ShiftedSteps::new(f, S::zero() - h);
    let reach = S::one() / h;
    let inside = |x: S| x > S::zero() - reach && x < reach;

    let mut candidates: Vec<S> = lower
        .xs
        .iter()
        .chain(upper.xs.iter())
        .copied()
        .chain(g.abscissae())
        .filter(|&x| inside(x))
        .collect();
    sort_dedup(&mut candidates);

    let ok = |lo: S, mid: S, hi: S| lo - h <= mid && mid <= hi + h;
    if candidates.is_empty() {
        let x = S::zero();
        return ok(lower.eval(x), g.eval(x), upper.eval(x));
    }
    candidates.iter().all(|&x| {
        ok(lower.eval(x), g.eval(x), upper.eval(x))
            && ok(lower.right_limit(x), g.right_limit(x), upper.right_limit(x))
    })
}

fn joint_holds<S: Scalar>(f: &Ddf<S>, g: &Ddf<S>, h: S) -> bool {
    band_holds(f, g, h) && band_holds(g, f, h)
}

/// `d_L(F, G) = inf{h : (F,G;h) and (G,F;h)}`.
///
/// The joint condition only gets weaker as `h` grows and always holds at
/// `h = 1`, so the infimum is bracketed by bisection on `(0, 1]` until the
/// bracket is narrower than [`LEVY_TOLERANCE`]. The result is the smallest
/// critical value (a gap between abscissae or between levels) inside the
/// final bracket at which the condition holds, else the bracket midpoint;
/// either way it is within the tolerance of the infimum. Canonically equal
/// inputs return exactly `0`.
pub fn levy_distance<S: Scalar>(f: &Ddf<S>, g: &Ddf<S>) -> S {
    if f == g {
        return S::zero();
    }
    let tol = S::from_f64(LEVY_TOLERANCE);
    let mut lo = S::zero();
    let mut hi = S::one();
    for _ in 0..MAX_BISECTION_STEPS {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi).half();
        if joint_holds(f, g, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    critical_values(f, g)
        .into_iter()
        .filter(|&c| lo <= c && c <= hi)
        .find(|&c| joint_holds(f, g, c))
        .unwrap_or_else(|| (lo + hi).half())
}

/// Sorted pairwise gaps between the abscissae of both inputs (with `0`) and
/// between their levels (with `0` and `1`). Built from the union, so the
/// result does not depend on argument order.
fn critical_values<S: Scalar>(f: &Ddf<S>, g: &Ddf<S>) -> Vec<S> {
    let gaps = |mut points: Vec<S>| {
        sort_dedup(&mut points);
        let mut out = Vec::new();
        for (i, &a) in points.iter().enumerate() {
            out.extend(points[i + 1..].iter().map(|&b| b - a));
        }
        out
    };
    let xs = [S::zero()]
        .into_iter()
        .chain(f.abscissae())
        .chain(g.abscissae())
        .collect();
    let vs = [S::zero(), S::one()]
        .into_iter()
        .chain(f.breakpoints().iter().map(|s| s.1))
        .chain(g.breakpoints().iter().map(|s| s.1))
        .collect();
    let mut out = gaps(xs);
    out.extend(gaps(vs));
    sort_dedup(&mut out);
    out
}

/// `d_L(F, H_0) = inf{h : F(h+) > 1 - h}`, in closed form.
///
/// On the piece `[x_i, x_{i+1})` the right limit is the constant `v_i`, so the
/// condition reads `h > 1 - v_i` there and the piece contributes
/// `max(x_i, 1 - v_i)` when that lies before `x_{i+1}`. Below `x_1` the
/// condition needs `h > 1`, hence the cap at `1`.
pub fn dist_to_h0<S: Scalar>(f: &Ddf<S>) -> S {
    let steps = f.breakpoints();
    let mut best = S::one();
    for (i, &(x, v)) in steps.iter().enumerate() {
        let candidate = x.max_of(S::one() - v);
        let fits = steps.get(i + 1).map_or(true, |next| candidate < next.0);
        if fits {
            best = best.min_of(candidate);
        }
    }
    best
}

/// `F(t) > 1 - t`, which holds exactly when `d_L(F, H_0) < t`.
pub fn in_h0_ball<S: Scalar>(f: &Ddf<S>, t: S) -> Result<bool> {
    if !(t > S::zero()) {
        return Err(Error::Parameter {
            name: "t",
            value: t.to_f64(),
            expected: "(0, inf)",
        });
    }
    Ok(f.eval(t) > S::one() - t)
}
