//! Finite probabilistic metric spaces and their strong topology.

use std::collections::{BTreeSet, HashSet};

use crate::ddf::{sort_dedup, Ddf};
use crate::error::{Error, Result};
use crate::levy::dist_to_h0;
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::triangle::{TNorm, TriangleFn};

/// Offset applied around breakpoint abscissae when building candidate radii.
pub const RADIUS_NUDGE: f64 = 1e-6;

/// A nonempty set of point indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(BTreeSet<usize>);

impl Subset {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyFamily("subset"));
        }
        Ok(Subset(set))
    }

    pub fn singleton(p: usize) -> Self {
        Subset(BTreeSet::from([p]))
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.contains(&p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset(self.0.union(&other.0).copied().collect())
    }

    /// `None` when the intersection is empty.
    pub fn intersection(&self, other: &Subset) -> Option<Subset> {
        Subset::new(self.0.intersection(&other.0).copied()).ok()
    }
}

/// A finite prefix `p_1, p_2, ..., p_n` of a sequence of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSeq(Vec<usize>);

impl PointSeq {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyFamily("point sequence"));
        }
        Ok(PointSeq(indices))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The subsequence at the given (0-based, strictly increasing) positions.
    pub fn subsequence(&self, positions: &[usize]) -> Result<PointSeq> {
        if positions.is_empty() {
            return Err(Error::EmptyFamily("subsequence"));
        }
        for (k, &i) in positions.iter().enumerate() {
            if i >= self.0.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: self.0.len(),
                });
            }
            if k > 0 && i <= positions[k - 1] {
                return Err(Error::NotIncreasing {
                    field: "subsequence index",
                    index: k,
                });
            }
        }
        Ok(PointSeq(positions.iter().map(|&i| self.0[i]).collect()))
    }
}

/// Shortest tail that counts as "for every n >= n_0" on a finite prefix of
/// length `len`: at least half of the prefix and at least two terms.
pub fn min_tail_len(len: usize) -> usize {
    len.min(2.max(len.div_ceil(2)))
}

/// Probabilistic boundedness of a subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundedness {
    Bounded,
    SemiBounded,
    Unbounded,
}

/// Totally-boundedness readings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TbMode {
    /// Finitely many strong neighbourhoods `N_p(eps)`, `p` in the subset, cover it.
    Cover,
    /// Some finite family of centres has `F_{p_i,p}(eps) = 1` for every `p`
    /// in the subset. On a finite set this means `F_{p,q}(eps) = 1` for all pairs.
    Strong,
}

/// Result of a Hausdorff separation search.
#[derive(Debug, Clone, PartialEq)]
pub enum Separation<S> {
    Separated(S),
    NotSeparated(CheckReport),
}

/// A finite PM space `(S, F, tau)`.
///
/// Construction only checks shapes and labels; the four axioms are checked by
/// [`PmSpace::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct PmSpace<S> {
    labels: Vec<String>,
    dist: Vec<Vec<Ddf<S>>>,
    tau: TriangleFn,
}

impl<S: Scalar> PmSpace<S> {
    pub fn new(labels: Vec<String>, dist: Vec<Vec<Ddf<S>>>, tau: TriangleFn) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyFamily("point set"));
        }
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!(
                "distance matrix must be {n}x{n} to match the labels"
            )));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(PmSpace { labels, dist, tau })
    }

    /// The Menger space `F_{p,q} = H_{d(p,q)}` under `tau_T` over a classical metric.
    pub fn from_metric(labels: Vec<String>, d: &[Vec<S>], t: TNorm) -> Result<Self> {
        let tau = TriangleFn::sup_t(t)?;
        let n = labels.len();
        if d.len() != n || d.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!(
                "metric matrix must be {n}x{n} to match the labels"
            )));
        }
        let at = |ids: &[usize]| {
            ids.iter()
                .map(|&i| labels[i].as_str())
                .collect::<Vec<_>>()
                .join(",")
        };
        for p in 0..n {
            for q in 0..n {
                let v = d[p][q];
                if !v.is_finite_value() || v < S::zero() {
                    return Err(Error::Metric {
                        axiom: "nonnegativity",
                        witness: at(&[p, q]),
                    });
                }
                if p == q && v != S::zero() {
                    return Err(Error::Metric {
                        axiom: "zero diagonal",
                        witness: at(&[p]),
                    });
                }
                if p != q && v == S::zero() {
                    return Err(Error::Metric {
                        axiom: "positivity",
                        witness: at(&[p, q]),
                    });
                }
                if v != d[q][p] {
                    return Err(Error::Metric {
                        axiom: "symmetry",
                        witness: at(&[p, q]),
                    });
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if d[p][r] > d[p][q] + d[q][r] {
                        return Err(Error::Metric {
                            axiom: "triangle inequality",
                            witness: at(&[p, q, r]),
                        });
                    }
                }
            }
        }
        let dist = d
            .iter()
            .map(|row| row.iter().map(|&v| Ddf::dirac(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PmSpace::new(labels, dist, tau)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn tau(&self) -> TriangleFn {
        self.tau
    }

    /// `F_{p,q}`. Panics on out-of-range indices.
    pub fn dist(&self, p: usize, q: usize) -> &Ddf<S> {
        &self.dist[p][q]
    }

    pub fn whole(&self) -> Subset {
        Subset((0..self.len()).collect())
    }

    fn check_index(&self, p: usize) -> Result<()> {
        if p < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: p,
                len: self.len(),
            })
        }
    }

    pub fn check_subset(&self, a: &Subset) -> Result<()> {
        a.iter().try_for_each(|p| self.check_index(p))
    }

    pub fn check_seq(&self, seq: &PointSeq) -> Result<()> {
        seq.as_slice().iter().try_for_each(|&p| self.check_index(p))
    }

    /// Checks the four PM-space axioms. The first violation found is reported
    /// with its axiom letter, the points involved and, where meaningful, an
    /// argument `x` at which the two sides differ.
    pub fn validate(&self) -> CheckReport {
        const NAME: &str = "pm_space_axioms";
        let n = self.len();
        let h0 = Ddf::h0();
        for p in 0..n {
            let f = &self.dist[p][p];
            if *f != h0 {
                let x = f.first_exceedance(&h0).or_else(|| h0.first_exceedance(f));
                let mut r = CheckReport::fail(NAME, "axiom", "a").with_witness("points", vec![p]);
                if let Some(x) = x {
                    r = r.with_witness("x", x.to_f64());
                }
                return r;
            }
        }
        for p in 0..n {
            for q in 0..n {
                if p != q && self.dist[p][q] == h0 {
                    return CheckReport::fail(NAME, "axiom", "b").with_witness("points", vec![p, q]);
                }
            }
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let (f, g) = (&self.dist[p][q], &self.dist[q][p]);
                if f != g {
                    let x = f.first_exceedance(g).or_else(|| g.first_exceedance(f));
                    let mut r =
                        CheckReport::fail(NAME, "axiom", "c").with_witness("points", vec![p, q]);
                    if let Some(x) = x {
                        r = r.with_witness("x", x.to_f64());
                    }
                    return r;
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let composed = match self.tau.apply(&self.dist[p][q], &self.dist[q][r]) {
                        Ok(c) => c,
                        Err(e) => {
                            return CheckReport::fail(NAME, "axiom", "d")
                                .with_witness("points", vec![p, q, r])
                                .with_witness("error", e.to_string())
                        }
                    };
                    if let Some(x) = composed.first_exceedance(&self.dist[p][r]) {
                        return CheckReport::fail(NAME, "axiom", "d")
                            .with_witness("points", vec![p, q, r])
                            .with_witness("x", x.to_f64())
                            .with_witness("tau_value", composed.eval(x).to_f64())
                            .with_witness("direct_value", self.dist[p][r].eval(x).to_f64());
                    }
                }
            }
        }
        CheckReport::pass(NAME).with_witness("points", n)
    }

    /// `N_p(t) = {q : F_{p,q}(t) > 1 - t}`, ascending.
    pub fn neighborhood(&self, p: usize, t: S) -> Result<Vec<usize>> {
        self.check_index(p)?;
        if !(t > S::zero()) {
            return Err(Error::Parameter {
                name: "t",
                value: t.to_f64(),
                expected: "(0, inf)",
            });
        }
        Ok(self.ball(p, t))
    }

    fn ball(&self, p: usize, t: S) -> Vec<usize> {
        let bar = S::one() - t;
        (0..self.len())
            .filter(|&q| self.dist[p][q].eval(t) > bar)
            .collect()
    }

    /// Radii at which the neighbourhoods of `p` are probed, ascending.
    ///
    /// `N_p(t)` is the set of `q` with `d_L(F_{p,q}, H_0) < t`, so it only
    /// changes at those radii. The set holds every breakpoint abscissa of row
    /// `p` nudged by [`RADIUS_NUDGE`] either way, the value `1`, and one radius
    /// strictly between each pair of consecutive distinct Levy radii (plus one
    /// beyond the largest), which makes it sufficient for every question
    /// asked of the neighbourhood system below.
    pub fn candidate_radii(&self, p: usize) -> Vec<S> {
        let nudge = S::from_f64(RADIUS_NUDGE);
        let mut out = vec![S::one()];
        for f in &self.dist[p] {
            for b in f.abscissae() {
                out.extend([b - nudge, b + nudge]);
            }
        }
        let mut radii: Vec<S> = self.dist[p].iter().map(dist_to_h0).collect();
        radii.push(S::zero());
        sort_dedup(&mut radii);
        for w in radii.windows(2) {
            out.push((w[0] + w[1]).half());
        }
        out.push(*radii.last().expect("nonempty") + S::one());
        out.retain(|&t| t > S::zero());
        sort_dedup(&mut out);
        out
    }

    /// Strongly open: every point of `a` has a neighbourhood inside `a`.
    pub fn is_open(&self, a: &Subset) -> Result<CheckReport> {
        self.check_subset(a)?;
        for p in a.iter() {
            let inside = self
                .candidate_radii(p)
                .into_iter()
                .any(|t| self.ball(p, t).into_iter().all(|q| a.contains(q)));
            if !inside {
                return Ok(CheckReport::fail("is_open", "point", p));
            }
        }
        Ok(CheckReport::pass("is_open"))
    }

    /// Dense: every neighbourhood of every point meets `a`.
    pub fn is_dense(&self, a: &Subset) -> Result<CheckReport> {
        self.check_subset(a)?;
        for p in 0..self.len() {
            if let Some(t) = self.first_missing_radius(p, a) {
                return Ok(CheckReport::fail("is_dense", "point", p).with_witness("t", t.to_f64()));
            }
        }
        Ok(CheckReport::pass("is_dense"))
    }

    fn first_missing_radius(&self, p: usize, a: &Subset) -> Option<S> {
        self.candidate_radii(p)
            .into_iter()
            .find(|&t| !self.ball(p, t).into_iter().any(|q| a.contains(q)))
    }

    /// Strong closure: `a` plus every point all of whose neighbourhoods meet `a`.
    pub fn closure(&self, a: &Subset) -> Result<Subset> {
        self.check_subset(a)?;
        Subset::new((0..self.len()).filter(|&p| a.contains(p) || self.first_missing_radius(p, a).is_none()))
    }

    /// Closed: the complement is open (the empty complement counts as open).
    pub fn is_closed(&self, a: &Subset) -> Result<CheckReport> {
        self.check_subset(a)?;
        match Subset::new((0..self.len()).filter(|&p| !a.contains(p))) {
            Err(_) => Ok(CheckReport::pass("is_closed")),
            Ok(complement) => {
                let open = self.is_open(&complement)?;
                Ok(match open.witness("point").and_then(|w| w.as_index()) {
                    None => CheckReport::pass("is_closed"),
                    Some(p) => CheckReport::fail("is_closed", "complement_point", p),
                })
            }
        }
    }

    /// `(eps, lam)`-convergence of the prefix to `p`.
    ///
    /// Passes when the terms satisfying `F_{p_n,p}(eps) > 1 - lam` include a
    /// tail of at least [`min_tail_len`] terms. `tail_start` is 1-based. The
    /// `levy_to_limit` trace holds `d_L(F_{p_n,p}, H_0)`.
    pub fn converges(&self, seq: &PointSeq, p: usize, eps: S, lam: S) -> Result<CheckReport> {
        self.check_seq(seq)?;
        self.check_index(p)?;
        check_eps_lam(eps, lam)?;
        let terms = seq.as_slice();
        let bar = S::one() - lam;
        let last_bad = terms
            .iter()
            .rposition(|&pn| !(self.dist[pn][p].eval(eps) > bar));
        let start = last_bad.map_or(0, |i| i + 1);
        let trace = terms
            .iter()
            .map(|&pn| dist_to_h0(&self.dist[pn][p]).to_f64())
            .collect();
        let report = if terms.len() - start >= min_tail_len(terms.len()) {
            CheckReport::pass("converges").with_witness("tail_start", start + 1)
        } else {
            let i = last_bad.expect("a short tail implies a bad term");
            CheckReport::fail("converges", "index", i + 1)
                .with_witness("point", terms[i])
                .with_witness("value", self.dist[terms[i]][p].eval(eps).to_f64())
        };
        Ok(report.with_trace("levy_to_limit", trace))
    }

    /// Smallest 0-based start such that every pair of terms from there on
    /// satisfies `F_{p_n,p_m}(eps) > 1 - lam`, and the offending pair that
    /// forces it.
    pub(crate) fn cauchy_start(&self, seq: &PointSeq, eps: S, lam: S) -> (usize, Option<(usize, usize)>) {
        let terms = seq.as_slice();
        let bar = S::one() - lam;
        let mut worst: Option<(usize, usize)> = None;
        for n in 0..terms.len() {
            for m in (n + 1)..terms.len() {
                if !(self.dist[terms[n]][terms[m]].eval(eps) > bar)
                    && worst.map_or(true, |(wn, _)| n > wn)
                {
                    worst = Some((n, m));
                }
            }
        }
        (worst.map_or(0, |(n, _)| n + 1), worst)
    }

    /// `(eps, lam)`-Cauchy condition on the prefix, with the same tail rule as
    /// [`PmSpace::converges`]. On failure the witness pair is given both as
    /// point indices and as 1-based positions.
    pub fn is_cauchy(&self, seq: &PointSeq, eps: S, lam: S) -> Result<CheckReport> {
        self.check_seq(seq)?;
        check_eps_lam(eps, lam)?;
        let terms = seq.as_slice();
        let (start, worst) = self.cauchy_start(seq, eps, lam);
        if terms.len() - start >= min_tail_len(terms.len()) {
            Ok(CheckReport::pass("is_cauchy").with_witness("tail_start", start + 1))
        } else {
            let (n, m) = worst.expect("a short tail implies a bad pair");
            Ok(CheckReport::fail("is_cauchy", "pair", vec![terms[n], terms[m]])
                .with_witness("positions", vec![n + 1, m + 1])
                .with_witness(
                    "value",
                    self.dist[terms[n]][terms[m]].eval(eps).to_f64(),
                ))
        }
    }

    /// `D_A(x) = sup_{t<x} inf_{p,q in A} F_{p,q}(t)`.
    ///
    /// The infimum of left-continuous non-decreasing step functions is again
    /// one, so the outer left regularisation changes nothing and the result
    /// is the pointwise infimum over all ordered pairs (diagonal included).
    pub fn prob_diameter(&self, a: &Subset) -> Result<Ddf<S>> {
        self.check_subset(a)?;
        let family: Vec<Ddf<S>> = a
            .iter()
            .flat_map(|p| a.iter().map(move |q| (p, q)))
            .map(|(p, q)| self.dist[p][q].clone())
            .collect();
        Ddf::pointwise_inf(&family)
    }

    /// Classifies `a` by `s = sup_{x>0} D_A(x)`: bounded iff `s = 1`,
    /// unbounded iff `s = 0`, semi-bounded otherwise.
    pub fn classify_boundedness(&self, a: &Subset) -> Result<(Boundedness, S)> {
        let s = self.prob_diameter(a)?.final_value();
        let class = if s == S::one() {
            Boundedness::Bounded
        } else if s == S::zero() {
            Boundedness::Unbounded
        } else {
            Boundedness::SemiBounded
        };
        Ok((class, s))
    }

    pub fn totally_bounded(&self, a: &Subset, eps: S, mode: TbMode) -> Result<CheckReport> {
        self.check_subset(a)?;
        if !(eps > S::zero()) {
            return Err(Error::Parameter {
                name: "eps",
                value: eps.to_f64(),
                expected: "(0, inf)",
            });
        }
        match mode {
            TbMode::Cover => {
                let mut uncovered: BTreeSet<usize> = a.iter().collect();
                let mut cover = Vec::new();
                while !uncovered.is_empty() {
                    let (best, ball) = a
                        .iter()
                        .map(|p| {
                            let ball: Vec<usize> = self
                                .ball(p, eps)
                                .into_iter()
                                .filter(|q| uncovered.contains(q))
                                .collect();
                            (p, ball)
                        })
                        .max_by(|x, y| x.1.len().cmp(&y.1.len()).then(y.0.cmp(&x.0)))
                        .expect("nonempty subset");
                    cover.push(best);
                    for q in ball {
                        uncovered.remove(&q);
                    }
                }
                cover.sort_unstable();
                Ok(CheckReport::pass("totally_bounded[cover]").with_witness("cover", cover))
            }
            TbMode::Strong => {
                for p in a.iter() {
                    for q in a.iter() {
                        let v = self.dist[p][q].eval(eps);
                        if v != S::one() {
                            return Ok(CheckReport::fail("totally_bounded[strong]", "pair", vec![p, q])
                                .with_witness("value", v.to_f64()));
                        }
                    }
                }
                Ok(CheckReport::pass("totally_bounded[strong]").with_witness("centres", a.to_vec()))
            }
        }
    }

    /// Looks for a radius `t` whose neighbourhoods of `p` and `q` are
    /// disjoint, trying the largest candidates first.
    pub fn separate_points(&self, p: usize, q: usize) -> Result<Separation<S>> {
        self.check_index(p)?;
        self.check_index(q)?;
        if p == q {
            return Err(Error::Parameter {
                name: "q",
                value: q as f64,
                expected: "a point different from p",
            });
        }
        let mut candidates = self.candidate_radii(p);
        candidates.extend(self.candidate_radii(q));
        let halves: Vec<S> = candidates.iter().map(|t| t.half()).collect();
        candidates.extend(halves);
        sort_dedup(&mut candidates);
        let mut overlaps = Vec::new();
        for &t in candidates.iter().rev() {
            let bq = self.ball(q, t);
            let shared: Vec<usize> = self.ball(p, t).into_iter().filter(|x| bq.contains(x)).collect();
            if shared.is_empty() {
                return Ok(Separation::Separated(t));
            }
            overlaps.push(shared[0]);
        }
        Ok(Separation::NotSeparated(
            CheckReport::fail("separate_points", "overlap", overlaps)
                .with_witness("radii_tried", candidates.len()),
        ))
    }
}

fn check_eps_lam<S: Scalar>(eps: S, lam: S) -> Result<()> {
    if !(eps > S::zero()) {
        return Err(Error::Parameter {
            name: "eps",
            value: eps.to_f64(),
            expected: "(0, inf)",
        });
    }
    if !(lam > S::zero() && lam < S::one()) {
        return Err(Error::Parameter {
            name: "lam",
            value: lam.to_f64(),
            expected: "(0, 1)",
        });
    }
    Ok(())
}
