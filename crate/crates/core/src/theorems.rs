//! Finite-instance checks of the structural theorems about diameters,
//! boundedness, completeness and compactness in PM spaces.
//!
//! Each check evaluates an implication on the supplied instance. When the
//! hypothesis fails the report is a flagged vacuous pass; when it holds and
//! the conclusion fails, the report carries a concrete witness.

use std::collections::{BTreeMap, HashMap};

use crate::ddf::Ddf;
use crate::error::{Error, Result};
use crate::levy::dist_to_h0;
use crate::pmspace::{PmSpace, PointSeq, Subset, TbMode};
use crate::pmspace::Boundedness;
use crate::report::{CheckReport, WitnessValue};
use crate::scalar::Scalar;

/// Threshold below which a diameter counts as having reached `H_0`.
pub const DIAMETER_TO_H0: f64 = 1e-6;

/// Every subset of `0..n` with between 1 and `cap` elements, by size then lexicographically.
pub fn subsets_up_to(n: usize, cap: usize) -> Vec<Subset> {
    fn extend(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Subset>) {
        if left == 0 {
            out.push(Subset::new(cur.iter().copied()).expect("nonempty"));
            return;
        }
        for i in start..n {
            cur.push(i);
            extend(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 1..=cap.min(n) {
        extend(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Counts violations of one diameter property and keeps the first one.
struct Item {
    number: usize,
    statement: &'static str,
    checked: usize,
    violations: usize,
    first: Option<(Vec<usize>, Option<f64>)>,
}

impl Item {
    fn new(number: usize, statement: &'static str) -> Self {
        Item {
            number,
            statement,
            checked: 0,
            violations: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: bool, points: impl FnOnce() -> Vec<usize>, x: impl FnOnce() -> Option<f64>) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some((points(), x()));
            }
        }
    }

    fn report(self) -> CheckReport {
        let name = format!("item_{}", self.number);
        let r = match self.first {
            None => CheckReport::pass(name),
            Some((points, x)) => {
                let mut r = CheckReport::fail(name, "subset", points);
                if let Some(x) = x {
                    r = r.with_witness("x", x);
                }
                r.with_witness("violations", self.violations)
            }
        };
        r.with_witness("statement", self.statement)
            .with_witness("instances", self.checked)
    }
}

fn exceed<S: Scalar>(f: &Ddf<S>, g: &Ddf<S>) -> Option<f64> {
    f.first_exceedance(g)
        .or_else(|| g.first_exceedance(f))
        .map(|x| x.to_f64())
}

/// Checks the seven diameter properties on every subset with at most
/// `max_subset_size` points:
///
/// 1. `D_A` is a canonical DDF;
/// 2. `D_A = H_0` iff `A` is a singleton;
/// 3. `A ⊆ B` implies `D_B <= D_A`;
/// 4. `D_A <= F_{p,q}` for `p, q` in `A`;
/// 5. `D_{p,q} = F_{p,q}`;
/// 6. `tau(D_A, D_B) <= D_{A ∪ B}` when `A` and `B` meet;
/// 7. `D_A` equals the diameter of the strong closure of `A`.
///
/// Each item is a part of the report. Set-valued witnesses list the points
/// of `A`, then those of `B` where a second set is involved.
pub fn diameter_report<S: Scalar>(space: &PmSpace<S>, max_subset_size: usize) -> Result<CheckReport> {
    if max_subset_size < 2 {
        return Err(Error::Parameter {
            name: "max_subset_size",
            value: max_subset_size as f64,
            expected: "[2, inf)",
        });
    }
    let subsets = subsets_up_to(space.len(), max_subset_size);
    let mut cache: HashMap<Subset, Ddf<S>> = HashMap::new();
    for a in &subsets {
        cache.insert(a.clone(), space.prob_diameter(a)?);
    }
    let mut diameter = |a: &Subset| -> Result<Ddf<S>> {
        if let Some(d) = cache.get(a) {
            return Ok(d.clone());
        }
        let d = space.prob_diameter(a)?;
        cache.insert(a.clone(), d.clone());
        Ok(d)
    };

    let mut items = [
        Item::new(1, "D_A is a distance distribution function"),
        Item::new(2, "D_A = H_0 iff A is a singleton"),
        Item::new(3, "A subset of B implies D_A >= D_B"),
        Item::new(4, "F_pq >= D_A for p, q in A"),
        Item::new(5, "D_A = F_pq for A = {p, q}"),
        Item::new(6, "D_(A union B) >= tau(D_A, D_B) when A and B meet"),
        Item::new(7, "D_A = D_(closure of A)"),
    ];

    for a in &subsets {
        let d = diameter(a)?;
        let pts = || a.to_vec();
        items[0].record(d.is_canonical(), pts, || None);
        items[1].record(d.is_h0() == (a.len() == 1), pts, || None);
        for p in a.iter() {
            for q in a.iter() {
                let f = space.dist(p, q);
                items[3].record(d.leq(f), || vec![p, q], || exceed(&d, f));
            }
        }
        if a.len() == 2 {
            let v = a.to_vec();
            let f = space.dist(v[0], v[1]);
            items[4].record(d == *f, pts, || exceed(&d, f));
        }
        let closed = space.closure(a)?;
        let dc = diameter(&closed)?;
        items[6].record(dc == d, pts, || exceed(&d, &dc));
    }

    for (i, a) in subsets.iter().enumerate() {
        let da = diameter(a)?;
        for b in &subsets[i..] {
            let db = diameter(b)?;
            let both = || a.iter().chain(b.iter()).collect::<Vec<_>>();
            if a != b && a.is_subset_of(b) {
                items[2].record(db.leq(&da), both, || exceed(&db, &da));
            }
            if a.intersection(b).is_some() {
                let joined = diameter(&a.union(b))?;
                let composed = space.tau().apply(&da, &db)?;
                items[5].record(composed.leq(&joined), both, || exceed(&composed, &joined));
            }
        }
    }

    let parts: Vec<CheckReport> = items.into_iter().map(Item::report).collect();
    let failed: Vec<usize> = parts
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.passed())
        .map(|(i, _)| i + 1)
        .collect();
    let mut report = if failed.is_empty() {
        CheckReport::pass("diameter_report")
    } else {
        CheckReport::fail("diameter_report", "failed_items", failed)
    };
    report = report.with_witness("subsets", subsets.len());
    for p in parts {
        report = report.with_part(p);
    }
    Ok(report)
}

fn check_grid<S: Scalar>(grid: &[S], name: &'static str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::EmptyFamily(name));
    }
    match grid.iter().find(|&&e| !(e > S::zero())) {
        Some(e) => Err(Error::Parameter {
            name,
            value: e.to_f64(),
            expected: "(0, inf)",
        }),
        None => Ok(()),
    }
}

/// Strong total boundedness on every `eps` of the grid implies boundedness.
///
/// The `menger_step_margin` trace holds, per grid value, the smallest
/// `F_{p,q}(2 eps) - bound(F_{p,c}(eps), F_{c,q}(eps))` over `p, q, c` in `A`,
/// where `bound` is [`crate::TriangleFn::midpoint_bound`]. It is the step the
/// implication rests on and is nonnegative on every valid space.
pub fn tb_bounded_report<S: Scalar>(space: &PmSpace<S>, a: &Subset, eps_grid: &[S]) -> Result<CheckReport> {
    space.check_subset(a)?;
    check_grid(eps_grid, "eps_grid")?;
    let mut unmet = None;
    for &eps in eps_grid {
        let tb = space.totally_bounded(a, eps, TbMode::Strong)?;
        if !tb.passed() {
            unmet = Some(format!(
                "strong total boundedness fails at eps = {}",
                eps.to_f64()
            ));
            break;
        }
    }
    let (class, s) = space.classify_boundedness(a)?;
    let margins = eps_grid
        .iter()
        .map(|&eps| {
            let two = eps + eps;
            let mut worst = f64::INFINITY;
            for p in a.iter() {
                for q in a.iter() {
                    let direct = space.dist(p, q).eval(two);
                    for c in a.iter() {
                        let bound = space
                            .tau()
                            .midpoint_bound(space.dist(p, c).eval(eps), space.dist(c, q).eval(eps));
                        worst = worst.min((direct - bound).to_f64());
                    }
                }
            }
            worst
        })
        .collect();
    Ok(CheckReport::implication(
        "tb_bounded",
        unmet,
        class == Boundedness::Bounded,
        ("subset", a.to_vec().into()),
    )
    .with_witness("class", class_name(class))
    .with_witness("s", s.to_f64())
    .with_trace("menger_step_margin", margins))
}

pub fn class_name(class: Boundedness) -> &'static str {
    match class {
        Boundedness::Bounded => "bounded",
        Boundedness::SemiBounded => "semi-bounded",
        Boundedness::Unbounded => "unbounded",
    }
}

/// A Cauchy sequence with a subsequence converging to `p0` is itself close
/// to `p0`.
///
/// Hypotheses: the sequence is `(eps, lam)`-Cauchy from position `n0`, the
/// subsequence `(eps, lam)`-converges to `p0`, and its last term lies at or
/// beyond `n0`. Conclusion: `F_{p_n,p0}(2 eps) >= bound(1 - lam, 1 - lam)` for
/// every `n >= n0`, which is what the triangle axiom yields on a finite prefix
/// (`bound` is [`crate::TriangleFn::midpoint_bound`]). The plain
/// `(eps, lam)`-convergence of the whole prefix is attached as a part for
/// reference and does not affect the verdict.
pub fn subsequence_check<S: Scalar>(
    space: &PmSpace<S>,
    seq: &PointSeq,
    sub_indices: &[usize],
    p0: usize,
    eps: S,
    lam: S,
) -> Result<CheckReport> {
    let sub = seq.subsequence(sub_indices)?;
    let cauchy = space.is_cauchy(seq, eps, lam)?;
    let sub_conv = space.converges(&sub, p0, eps, lam)?;
    let plain = space.converges(seq, p0, eps, lam)?;
    let (start, _) = space.cauchy_start(seq, eps, lam);
    let last = *sub_indices.last().expect("nonempty");

    let unmet = if !cauchy.passed() {
        Some("sequence is not Cauchy".to_string())
    } else if !sub_conv.passed() {
        Some("subsequence does not converge to p0".to_string())
    } else if last < start {
        Some("subsequence ends before the Cauchy tail".to_string())
    } else {
        None
    };

    let bar = S::one() - lam;
    let bound = space.tau().midpoint_bound(bar, bar);
    let two = eps + eps;
    let terms = seq.as_slice();
    let offending = (start..terms.len()).find(|&n| !(space.dist(terms[n], p0).eval(two) >= bound));
    let mut report = CheckReport::implication(
        "subsequence",
        unmet,
        offending.is_none(),
        ("index", offending.map_or(0, |n| n + 1).into()),
    );
    if let Some(n) = offending {
        report = report
            .with_witness("point", terms[n])
            .with_witness("value", space.dist(terms[n], p0).eval(two).to_f64())
            .with_witness("bound", bound.to_f64());
    }
    Ok(report
        .with_witness("cauchy_tail_start", start + 1)
        .with_part(cauchy)
        .with_part(sub_conv.renamed("subsequence_converges"))
        .with_part(plain))
}

/// A nested chain of closed sets whose diameters reach `H_0` has a singleton
/// intersection.
///
/// The `diameter_to_h0` trace holds `d_L(D_{S_n}, H_0)`; the diameter
/// hypothesis is that this is non-increasing and below [`DIAMETER_TO_H0`] on
/// the last set.
pub fn cantor_check<S: Scalar>(space: &PmSpace<S>, nested: &[Subset]) -> Result<CheckReport> {
    if nested.is_empty() {
        return Err(Error::EmptyFamily("nested chain"));
    }
    let mut trace = Vec::with_capacity(nested.len());
    for s in nested {
        trace.push(dist_to_h0(&space.prob_diameter(s)?).to_f64());
    }
    let mut unmet = None;
    for (i, s) in nested.iter().enumerate() {
        if !space.is_closed(s)?.passed() {
            unmet = Some(format!("set {} is not closed", i + 1));
            break;
        }
        if i > 0 && !s.is_subset_of(&nested[i - 1]) {
            unmet = Some(format!("set {} is not contained in set {}", i + 1, i));
            break;
        }
    }
    if unmet.is_none() {
        let monotone = trace.windows(2).all(|w| w[1] <= w[0]);
        let last = *trace.last().expect("nonempty");
        if !monotone || !(last < DIAMETER_TO_H0) {
            unmet = Some("diameters do not tend to H_0".to_string());
        }
    }
    let intersection = nested[1..]
        .iter()
        .try_fold(nested[0].clone(), |acc, s| acc.intersection(s));
    let found = intersection.as_ref().map_or(Vec::new(), Subset::to_vec);
    Ok(CheckReport::implication(
        "cantor",
        unmet,
        found.len() == 1,
        ("intersection", found.clone().into()),
    )
    .with_witness("intersection_size", found.len())
    .with_trace("diameter_to_h0", trace))
}

/// The intersection of open dense sets is nonempty and dense.
pub fn baire_check<S: Scalar>(space: &PmSpace<S>, sets: &[Subset]) -> Result<CheckReport> {
    if sets.is_empty() {
        return Err(Error::EmptyFamily("open dense family"));
    }
    let mut unmet = None;
    for (i, g) in sets.iter().enumerate() {
        if !space.is_open(g)?.passed() {
            unmet = Some(format!("set {} is not open", i + 1));
            break;
        }
        if !space.is_dense(g)?.passed() {
            unmet = Some(format!("set {} is not dense", i + 1));
            break;
        }
    }
    let intersection = sets[1..]
        .iter()
        .try_fold(sets[0].clone(), |acc, s| acc.intersection(s));
    let (ok, witness) = match &intersection {
        None => (false, ("intersection", WitnessValue::Indices(Vec::new()))),
        Some(i) => {
            let dense = space.is_dense(i)?;
            let at = dense
                .witness("point")
                .cloned()
                .unwrap_or(WitnessValue::Indices(i.to_vec()));
            (dense.passed(), ("not_dense_at", at))
        }
    };
    let size = intersection.as_ref().map_or(0, Subset::len);
    Ok(CheckReport::implication("baire", unmet, ok, witness).with_witness("intersection_size", size))
}

/// Parameters of [`heine_borel_report`].
#[derive(Debug, Clone, PartialEq)]
pub struct CompactnessParams<S> {
    pub eps: S,
    pub lam: S,
    /// Radii at which cover-mode total boundedness is checked.
    pub eps_grid: Vec<S>,
}

/// Compares three compactness characterisations of `E` on the supplied
/// instances, one part each:
///
/// * `complete_totally_bounded`: every sequence in `E` that is
///   `(eps, lam)`-Cauchy converges to its last term, which lies in `E`, and
///   `E` is cover-totally-bounded on the grid;
/// * `bolzano_weierstrass`: each sequence has a convergent subsequence,
///   namely the occurrences of its most frequent point;
/// * `heine_borel`: each open cover of `E` has a finite subcover, found greedily.
///
/// Passes iff all three parts pass. Sequences must lie in `E` and cover
/// elements must be open; either violation is an error.
pub fn heine_borel_report<S: Scalar>(
    space: &PmSpace<S>,
    e: &Subset,
    seqs: &[PointSeq],
    covers: &[Vec<Subset>],
    params: &CompactnessParams<S>,
) -> Result<CheckReport> {
    space.check_subset(e)?;
    check_grid(&params.eps_grid, "eps_grid")?;
    for s in seqs {
        space.check_seq(s)?;
        if let Some(&p) = s.as_slice().iter().find(|&&p| !e.contains(p)) {
            return Err(Error::Malformed(format!(
                "sequence point {} lies outside E",
                space.labels()[p]
            )));
        }
    }
    for (c, cover) in covers.iter().enumerate() {
        for (k, g) in cover.iter().enumerate() {
            if !space.is_open(g)?.passed() {
                return Err(Error::NotOpen { cover: c, element: k });
            }
        }
    }
    let (eps, lam) = (params.eps, params.lam);

    let mut complete = CheckReport::pass("complete_totally_bounded");
    let mut cauchy_count = 0;
    for (i, s) in seqs.iter().enumerate() {
        if !space.is_cauchy(s, eps, lam)?.passed() {
            continue;
        }
        cauchy_count += 1;
        let limit = *s.as_slice().last().expect("nonempty");
        if !space.converges(s, limit, eps, lam)?.passed() {
            complete = CheckReport::fail("complete_totally_bounded", "sequence", i);
            break;
        }
    }
    if complete.passed() {
        for &r in &params.eps_grid {
            let tb = space.totally_bounded(e, r, TbMode::Cover)?;
            if !tb.passed() {
                complete = CheckReport::fail("complete_totally_bounded", "eps", r.to_f64());
                break;
            }
        }
    }
    complete = complete.with_witness("cauchy_sequences", cauchy_count);

    let mut bw = CheckReport::pass("bolzano_weierstrass");
    let mut limits = Vec::with_capacity(seqs.len());
    for (i, s) in seqs.iter().enumerate() {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in s.as_slice() {
            *counts.entry(p).or_default() += 1;
        }
        let best = counts
            .iter()
            .max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(x.0)))
            .map(|(&p, _)| p)
            .expect("nonempty");
        let positions: Vec<usize> = s
            .as_slice()
            .iter()
            .enumerate()
            .filter(|&(_, &p)| p == best)
            .map(|(k, _)| k)
            .collect();
        let sub = s.subsequence(&positions)?;
        limits.push(best);
        if !space.converges(&sub, best, eps, lam)?.passed() {
            bw = CheckReport::fail("bolzano_weierstrass", "sequence", i);
            break;
        }
    }
    if bw.passed() {
        bw = bw.with_witness("limits", limits);
    }

    let mut hb = CheckReport::pass("heine_borel");
    let mut sizes = Vec::with_capacity(covers.len());
    for (c, cover) in covers.iter().enumerate() {
        match greedy_subcover(e, cover) {
            Some(chosen) => sizes.push(chosen.len()),
            None => {
                hb = CheckReport::fail("heine_borel", "cover", c);
                break;
            }
        }
    }
    if hb.passed() {
        hb = hb.with_witness("subcover_sizes", sizes);
    }

    let failed: Vec<&str> = [&complete, &bw, &hb]
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.name())
        .collect();
    let report = if failed.is_empty() {
        CheckReport::pass("heine_borel_report")
    } else {
        CheckReport::fail("heine_borel_report", "failed_part", failed.join(","))
    };
    Ok(report.with_part(complete).with_part(bw).with_part(hb))
}

/// Indices of a finite subfamily of `cover` covering `e`, chosen greedily by
/// the number of newly covered points, or `None` if `cover` does not cover `e`.
pub fn greedy_subcover(e: &Subset, cover: &[Subset]) -> Option<Vec<usize>> {
    let mut left: Vec<usize> = e.to_vec();
    let mut chosen = Vec::new();
    while !left.is_empty() {
        let (best, gain) = cover
            .iter()
            .enumerate()
            .map(|(k, g)| (k, left.iter().filter(|&&p| g.contains(p)).count()))
            .max_by(|x, y| x.1.cmp(&y.1).then(y.0.cmp(&x.0)))?;
        if gain == 0 {
            return None;
        }
        left.retain(|&p| !cover[best].contains(p));
        chosen.push(best);
    }
    chosen.sort_unstable();
    Some(chosen)
}
