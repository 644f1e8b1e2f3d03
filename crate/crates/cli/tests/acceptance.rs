//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use pmetric::sample::{
    ddf_with_breakpoints, random_ddf, random_dirac_space, random_metric, random_simple_space,
    random_space, DdfShape,
};
use pmetric::theorems::subsets_up_to;
use pmetric::{
    baire_check, cantor_check, diameter_report, dist_to_h0, heine_borel_report, in_h0_ball,
    levy_distance, tb_bounded_report, weak_convergence_report, CompactnessParams, Ddf64, Outcome,
    PmSpace64, PointSeq, Subset, TNorm, TriangleFn, WitnessValue,
};
use pmetric_cli::formats::{ddf_to_json, parse_ddf, parse_space, space_to_json};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome_ = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const SUP_T: [TNorm; 3] = [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz];

const ALL_TAUS: [TriangleFn; 4] = [
    TriangleFn::SupT(TNorm::Minimum),
    TriangleFn::SupT(TNorm::Product),
    TriangleFn::SupT(TNorm::Lukasiewicz),
    TriangleFn::Convolution,
];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn metric_axioms_of_levy() -> Outcome_ {
    let start = Instant::now();
    let mut r = rng(101);
    let shape = DdfShape::fine(20);
    let mut worst_triangle = f64::NEG_INFINITY;
    for case in 0..1000 {
        let fs: Vec<Ddf64> = (0..3).map(|_| random_ddf(&mut r, &shape)).collect();
        let d = |i: usize, j: usize| levy_distance(&fs[i], &fs[j]);
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            ensure!(d(i, j).to_bits() == d(j, i).to_bits(), "case {case}: asymmetric");
            ensure!(d(i, i) <= 2e-6, "case {case}: d(F,F) = {}", d(i, i));
            ensure!((d(i, j) <= 2e-6) == (fs[i] == fs[j]), "case {case}: identity fails");
        }
        for (a, b, c) in [(0, 1, 2), (1, 0, 2), (0, 2, 1)] {
            let excess = d(a, c) - d(a, b) - d(b, c);
            worst_triangle = worst_triangle.max(excess);
            ensure!(excess <= 2e-6, "case {case}: triangle excess {excess}");
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("1000 triples, worst triangle excess {worst_triangle:.2e}, {elapsed:.2?}"))
}

fn closed_form_agreement() -> Outcome_ {
    let mut r = rng(102);
    let shape = DdfShape::fine(20);
    let mut worst = 0.0f64;
    let mut ball_checks = 0;
    for case in 0..500 {
        let f: Ddf64 = random_ddf(&mut r, &shape);
        let closed = dist_to_h0(&f);
        let gap = (levy_distance(&f, &Ddf64::h0()) - closed).abs();
        worst = worst.max(gap);
        ensure!(gap <= 2e-6, "case {case}: gap {gap}");
        for k in 1..=400 {
            let t = k as f64 / 200.0;
            if (closed - t).abs() < 1e-6 {
                continue;
            }
            ball_checks += 1;
            ensure!(
                in_h0_ball(&f, t).unwrap() == (closed < t),
                "case {case}: ball disagreement at t = {t}"
            );
        }
    }
    Ok(format!("500 DDFs, worst gap {worst:.2e}, {ball_checks} ball checks agree"))
}

/// Smallest `h` on a `1e-4` grid for which both band conditions between
/// `H_a` and `H_0` hold, evaluated directly at the points where either side
/// can change (and just beside them) plus a uniform x grid.
fn dirac_levy_grid_oracle(a: f64) -> f64 {
    let ha = Ddf64::dirac(a).unwrap();
    let h0 = Ddf64::h0();
    let band = |f: &Ddf64, g: &Ddf64, h: f64| {
        let mut xs: Vec<f64> = Vec::new();
        for c in [0.0, a, h, -h, a + h, a - h] {
            xs.extend([c - 1e-9, c, c + 1e-9]);
        }
        xs.extend((0..=400).map(|k| -1.0 / h + k as f64 * (2.0 / h) / 400.0));
        xs.into_iter()
            .filter(|&x| x > -1.0 / h && x < 1.0 / h)
            .all(|x| f.eval(x - h) - h <= g.eval(x) && g.eval(x) <= f.eval(x + h) + h)
    };
    (1..=10_000)
        .map(|k| k as f64 * 1e-4)
        .find(|&h| band(&ha, &h0, h) && band(&h0, &ha, h))
        .unwrap_or(1.0)
}

fn dirac_law() -> Outcome_ {
    let mut worst = 0.0f64;
    for k in 1..=40 {
        let a = 0.05 * k as f64;
        let expected = a.min(1.0);
        let d = levy_distance(&Ddf64::dirac(a).unwrap(), &Ddf64::h0());
        let err = (d - expected).abs();
        worst = worst.max(err);
        ensure!(err <= 2e-6, "a = {a}: d_L = {d}");
        let oracle = dirac_levy_grid_oracle(a);
        ensure!((oracle - expected).abs() <= 1e-4 + 1e-12, "a = {a}: grid oracle {oracle}");
    }
    Ok(format!("40 Dirac parameters, worst error {worst:.2e}, grid oracle within 1e-4"))
}

fn tnorm_value(t: TNorm, x: f64, y: f64) -> f64 {
    match t {
        TNorm::Minimum => x.min(y),
        TNorm::Product => x * y,
        TNorm::Lukasiewicz => (x + y - 1.0).max(0.0),
        TNorm::Drastic => unreachable!("not used with sup-T"),
    }
}

fn triangle_laws() -> Outcome_ {
    let start = Instant::now();
    let mut r = rng(104);
    for case in 0..50 {
        let (a, b) = (r.gen_range(0.0..3.0), r.gen_range(0.0..3.0));
        let expected = Ddf64::dirac(a + b).unwrap();
        for tau in ALL_TAUS {
            let got = tau.apply(&Ddf64::dirac(a).unwrap(), &Ddf64::dirac(b).unwrap()).unwrap();
            ensure!(got == expected, "case {case}: {tau}(H_{a}, H_{b}) = {got:?}");
        }
    }
    let shape = DdfShape::fine(20);
    for case in 0..100 {
        let f: Ddf64 = random_ddf(&mut r, &shape);
        for tau in ALL_TAUS {
            ensure!(tau.apply(&f, &Ddf64::h0()).unwrap() == f, "case {case}: {tau}(F, H_0) != F");
        }
    }

    let delta = 1e-3;
    let small = DdfShape {
        max_breakpoints: 6,
        x_step: 1.0 / 128.0,
        x_cells: 64,
        v_cells: 256,
        full_mass: 0.7,
    };
    let mut compared = 0usize;
    for case in 0..100 {
        let f: Ddf64 = random_ddf(&mut r, &small);
        let g: Ddf64 = random_ddf(&mut r, &small);
        let cells = (1.0 / delta) as usize + 10;
        let fa: Vec<f64> = (0..=cells).map(|k| f.eval(k as f64 * delta)).collect();
        let ga: Vec<f64> = (0..=cells).map(|k| g.eval(k as f64 * delta)).collect();
        for t in SUP_T {
            let out = TriangleFn::SupT(t).apply(&f, &g).unwrap();
            let bps: Vec<f64> = out.abscissae().collect();
            for m in 1..=cells {
                let x = m as f64 * delta;
                if bps.iter().any(|&b| (x - b).abs() <= 2.0 * delta) {
                    continue;
                }
                let oracle = (0..=m).map(|k| tnorm_value(t, fa[k], ga[m - k])).fold(0.0, f64::max);
                compared += 1;
                ensure!(
                    out.eval(x) == oracle,
                    "case {case}: {t} at x = {x}: {} vs grid {oracle}",
                    out.eval(x)
                );
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("Dirac sums and identity exact, {compared} grid points agree, {elapsed:.2?}"))
}

fn weak_convergence_consistency() -> Outcome_ {
    let mut r = rng(105);
    let mut matched = 0;
    for case in 0..200 {
        let tol = 1e-3;
        let base: Ddf64 = random_ddf(&mut r, &DdfShape::fine(10));
        let seq: Vec<Ddf64> = (1..=12)
            .map(|k| {
                let step = 0.05 * 0.5f64.powi(k);
                let steps = base
                    .breakpoints()
                    .iter()
                    .map(|&(x, v)| (x + step, v * (1.0 - step)))
                    .collect();
                Ddf64::new(steps).unwrap()
            })
            .collect();
        let report = weak_convergence_report(&seq, &base, tol).unwrap();
        ensure!(report.passed(), "convergent case {case}: verdicts differ: {report:?}");
        if report.witness("levy_converged") == Some(&WitnessValue::Flag(true)) {
            matched += 1;
        }
    }
    let full = DdfShape {
        full_mass: 1.0,
        ..DdfShape::fine(10)
    };
    for case in 0..200 {
        let tol = 0.1;
        let n = r.gen_range(1..=10);
        let base: Ddf64 = ddf_with_breakpoints(&mut r, &full, n);
        let seq: Vec<Ddf64> = (1..=12)
            .map(|k| {
                let shift = 0.01 / k as f64;
                let steps = base
                    .breakpoints()
                    .iter()
                    .map(|&(x, v)| (x + shift, 0.5 * v))
                    .collect();
                Ddf64::new(steps).unwrap()
            })
            .collect();
        let report = weak_convergence_report(&seq, &base, tol).unwrap();
        ensure!(report.passed(), "non-convergent case {case}: verdicts differ: {report:?}");
        if report.witness("levy_converged") == Some(&WitnessValue::Flag(false)) {
            matched += 1;
        }
    }
    Ok(format!("400 sequences, verdicts agree in all; {matched}/400 match the construction"))
}

fn menger_embedding() -> Outcome_ {
    let mut r = rng(106);
    for case in 0..100 {
        let n = r.gen_range(1..=8);
        let d = random_metric(&mut r, n, 5);
        let labels = (0..n).map(|i| format!("m{i}")).collect();
        let s = PmSpace64::from_metric(labels, &d, TNorm::Minimum).map_err(|e| e.to_string())?;
        ensure!(s.validate().passed(), "metric case {case} does not validate");
    }
    for case in 0..100 {
        let n = r.gen_range(3..=8);
        let mut d = random_metric(&mut r, n, 5);
        let mut pts: Vec<usize> = (0..n).collect();
        pts.shuffle(&mut r);
        let (p, q, s) = (pts[0], pts[1], pts[2]);
        let extra = 0.1 + 0.25 * r.gen_range(0..8) as f64;
        d[p][s] = d[p][q] + d[q][s] + extra;
        d[s][p] = d[p][s];
        let dist = d
            .iter()
            .map(|row| row.iter().map(|&v| Ddf64::dirac(v).unwrap()).collect())
            .collect();
        let labels = (0..n).map(|i| format!("m{i}")).collect();
        let space = PmSpace64::new(labels, dist, TriangleFn::SupT(TNorm::Minimum)).unwrap();
        let report = space.validate();
        ensure!(!report.passed(), "corruption {case} not detected");
        ensure!(
            report.witness("axiom") == Some(&WitnessValue::from("d")),
            "corruption {case}: wrong axiom {report:?}"
        );
        let triple = report.witness("points").and_then(|w| w.as_indices()).ok_or("no triple")?;
        let [a, b, c] = triple[..] else {
            return Err(format!("corruption {case}: witness {triple:?} is not a triple"));
        };
        ensure!(d[a][c] > d[a][b] + d[b][c], "corruption {case}: {a},{b},{c} is no violation");
        let x = report.witness("x").and_then(|w| w.as_number()).ok_or("no x")?;
        let composed = space.tau().apply(space.dist(a, b), space.dist(b, c)).unwrap();
        ensure!(composed.eval(x) > space.dist(a, c).eval(x), "corruption {case}: x = {x} is no violation");
    }
    Ok("100 metrics validate, 100 corruptions detected with violating triples".into())
}

fn diameter_suite() -> Outcome_ {
    let mut r = rng(107);
    let mut subsets = 0;
    for case in 0..50 {
        let n = r.gen_range(1..=6);
        let s: PmSpace64 = random_space(&mut r, n).unwrap();
        ensure!(s.validate().passed(), "space {case} is not valid");
        let report = diameter_report(&s, 4).unwrap();
        ensure!(report.passed(), "space {case}: {report:?}");
        if let Some(WitnessValue::Index(k)) = report.witness("subsets") {
            subsets += k;
        }
    }
    Ok(format!("50 spaces, {subsets} subsets, items 1-7 without violations"))
}

fn random_subset(r: &mut ChaCha8Rng, n: usize) -> Subset {
    let picked: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
    Subset::new(picked).unwrap_or_else(|_| Subset::singleton(r.gen_range(0..n)))
}

fn random_menger_space(r: &mut ChaCha8Rng, n: usize) -> PmSpace64 {
    let t = *SUP_T.choose(r).unwrap();
    if r.gen_bool(0.5) {
        random_simple_space(r, n, t).unwrap()
    } else {
        random_dirac_space(r, n, TriangleFn::SupT(t)).unwrap()
    }
}

fn cap_pair() -> PmSpace64 {
    let f = Ddf64::cap(0.2, 0.6).unwrap();
    PmSpace64::new(
        vec!["p".into(), "q".into()],
        vec![vec![Ddf64::h0(), f.clone()], vec![f, Ddf64::h0()]],
        TriangleFn::SupT(TNorm::Minimum),
    )
    .unwrap()
}

fn tb_implies_bounded() -> Outcome_ {
    let mut r = rng(108);
    let (mut met, mut vacuous) = (0, 0);
    for case in 0..50 {
        let n = r.gen_range(1..=6);
        let s = random_menger_space(&mut r, n);
        ensure!(s.validate().passed(), "space {case} is not valid");
        for _ in 0..4 {
            let a = random_subset(&mut r, n);
            let g: f64 = r.gen_range(0.25..12.0);
            let grid = [g, g + 0.5, g + 1.0, g + 2.0];
            let report = tb_bounded_report(&s, &a, &grid).unwrap();
            match report.outcome() {
                Outcome::Pass => met += 1,
                Outcome::VacuousPass => vacuous += 1,
                Outcome::Fail => return Err(format!("space {case}: {report:?}")),
            }
            let margins = report.trace("menger_step_margin").unwrap();
            ensure!(margins.iter().all(|&m| m >= 0.0), "space {case}: 2-eps step fails: {margins:?}");
        }
    }
    ensure!(met > 0, "no instance met the hypothesis");
    let c = cap_pair();
    let report = tb_bounded_report(&c, &c.whole(), &[0.5, 1.0, 2.0, 5.0, 10.0]).unwrap();
    ensure!(report.outcome() == Outcome::VacuousPass, "cap pair: {report:?}");
    ensure!(
        report.witness("class") == Some(&WitnessValue::from("semi-bounded"))
            && report.witness("s") == Some(&WitnessValue::Number(0.6)),
        "cap pair: {report:?}"
    );
    let (class, s_value) = c.classify_boundedness(&c.whole()).unwrap();
    ensure!(s_value == 0.6 && class == pmetric::Boundedness::SemiBounded, "cap pair classification");
    Ok(format!("{met} instances meet the hypothesis and are bounded, {vacuous} vacuous; cap pair semi-bounded at 0.6"))
}

fn random_chain(r: &mut ChaCha8Rng, n: usize, to_singleton: bool) -> Vec<Subset> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(r);
    let floor = if to_singleton { 1 } else { 2.min(n) };
    let mut size = n;
    let mut chain = vec![Subset::new(order.clone()).unwrap()];
    while size > floor {
        size -= r.gen_range(1..=size - floor);
        chain.push(Subset::new(order[..size].iter().copied()).unwrap());
    }
    chain
}

fn cantor() -> Outcome_ {
    let mut r = rng(109);
    let (mut met, mut vacuous) = (0, 0);
    for case in 0..50 {
        let n = r.gen_range(1..=6);
        let s: PmSpace64 = random_space(&mut r, n).unwrap();
        ensure!(s.validate().passed(), "space {case} is not valid");
        for k in 0..4 {
            let to_singleton = k % 2 == 0 || n == 1;
            let chain = random_chain(&mut r, n, to_singleton);
            let report = cantor_check(&s, &chain).unwrap();
            if to_singleton {
                ensure!(report.outcome() == Outcome::Pass, "space {case}: {report:?}");
                ensure!(
                    report.witness("intersection_size") == Some(&WitnessValue::Index(1)),
                    "space {case}: intersection is not a singleton"
                );
                met += 1;
            } else {
                ensure!(report.outcome() == Outcome::VacuousPass, "space {case}: {report:?}");
                vacuous += 1;
            }
        }
    }
    Ok(format!("{met} chains to H_0 meet in one point, {vacuous} chains flagged vacuous"))
}

fn baire_and_heine_borel() -> Outcome_ {
    let mut r = rng(110);
    let (mut baire_met, mut baire_vacuous, mut hb) = (0, 0, 0);
    for case in 0..50 {
        let n = r.gen_range(1..=6);
        let s: PmSpace64 = random_space(&mut r, n).unwrap();
        ensure!(s.validate().passed(), "space {case} is not valid");

        for _ in 0..3 {
            let mut family = vec![s.whole(); r.gen_range(1..=4)];
            if r.gen_bool(0.4) {
                family.push(random_subset(&mut r, n));
            }
            let report = baire_check(&s, &family).unwrap();
            match report.outcome() {
                Outcome::Pass if report.hypothesis_met() => baire_met += 1,
                Outcome::Pass | Outcome::VacuousPass => baire_vacuous += 1,
                Outcome::Fail => return Err(format!("space {case}: {report:?}")),
            }
        }

        let e = random_subset(&mut r, n);
        let pts = e.to_vec();
        let seqs: Vec<PointSeq> = (0..3)
            .map(|_| {
                let len = r.gen_range(3..=10);
                PointSeq::new((0..len).map(|_| *pts.choose(&mut r).unwrap()).collect()).unwrap()
            })
            .collect();
        let singles: Vec<Subset> = pts.iter().map(|&p| Subset::singleton(p)).collect();
        let mut mixed: Vec<Subset> = (0..3).map(|_| random_subset(&mut r, n)).collect();
        mixed.extend(singles.iter().cloned());
        let covers = vec![singles, vec![s.whole()], mixed];
        let params = CompactnessParams {
            eps: r.gen_range(0.1..3.0),
            lam: r.gen_range(0.05..0.95),
            eps_grid: vec![0.1, 0.5, 1.0, 4.0],
        };
        let report = heine_borel_report(&s, &e, &seqs, &covers, &params).map_err(|e| e.to_string())?;
        ensure!(report.passed(), "space {case}: {report:?}");
        hb += 1;
    }

    let mut dense_checks = 0;
    for case in 0..50 {
        let n = r.gen_range(1..=6);
        let tau = *ALL_TAUS.choose(&mut r).unwrap();
        let s: PmSpace64 = random_dirac_space(&mut r, n, tau).unwrap();
        ensure!(s.validate().passed(), "Dirac space {case} is not valid");
        for a in subsets_up_to(n, n) {
            dense_checks += 1;
            ensure!(
                s.is_dense(&a).unwrap().passed() == (a == s.whole()),
                "Dirac space {case}: density lemma fails for {:?}",
                a.to_vec()
            );
        }
    }
    Ok(format!(
        "Baire {baire_met} substantive / {baire_vacuous} vacuous, Heine-Borel {hb} spaces, density lemma on {dense_checks} subsets"
    ))
}

fn decimal_ddf(r: &mut ChaCha8Rng) -> Ddf64 {
    let n = r.gen_range(0..=8);
    let mut xs: Vec<u32> = (0..n).map(|_| r.gen_range(0..=5000)).collect();
    let mut vs: Vec<u32> = (0..n).map(|_| r.gen_range(1..=1000)).collect();
    xs.sort_unstable();
    xs.dedup();
    vs.sort_unstable();
    vs.dedup();
    let steps = xs
        .iter()
        .zip(&vs)
        .map(|(&x, &v)| (x as f64 / 1000.0, v as f64 / 1000.0))
        .collect();
    Ddf64::new(steps).unwrap()
}

struct Files {
    dir: tempfile::TempDir,
}

impl Files {
    fn write(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }
}

fn ddf_text(steps: &[(f64, f64)]) -> String {
    ddf_to_json(&Ddf64::new(steps.to_vec()).unwrap())
}

fn run_cli(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_pmetric"))
        .args(args)
        .output()
        .expect("binary runs")
        .status
        .code()
        .unwrap_or(-1)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn cli_contract() -> Outcome_ {
    let mut r = rng(111);
    for case in 0..100 {
        let f = decimal_ddf(&mut r);
        let text = ddf_to_json(&f);
        let back = parse_ddf(&text).map_err(|e| e.to_string())?;
        ensure!(back == f, "DDF {case}: load(save(F)) != F");
        ensure!(ddf_to_json(&back) == text, "DDF {case}: save is not stable");
    }
    for case in 0..100 {
        let n = r.gen_range(1..=5);
        let labels: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
        let mut dist = vec![vec![Ddf64::h0(); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let f = decimal_ddf(&mut r);
                dist[i][j] = f.clone();
                dist[j][i] = f;
            }
        }
        let tau = *ALL_TAUS.choose(&mut r).unwrap();
        let s = PmSpace64::new(labels, dist, tau).unwrap();
        let text = space_to_json(&s);
        let back = parse_space(&text).map_err(|e| e.to_string())?;
        ensure!(back == s, "space {case}: load(save(S)) != S");
        ensure!(space_to_json(&back) == text, "space {case}: save is not stable");
    }

    let files = Files {
        dir: tempfile::tempdir().map_err(|e| e.to_string())?,
    };
    let h3 = files.write("h3.json", &ddf_text(&[(0.3, 1.0)]));
    let h0 = files.write("h0.json", &ddf_text(&[(0.0, 1.0)]));
    let h5 = files.write("h5.json", &ddf_text(&[(0.5, 1.0)]));
    let junk = files.write("junk.json", "{\"breakpoints\": [");
    let line = files.write(
        "line.json",
        r#"{"points":["p","q","r"],"tau":{"kind":"tau_T","tnorm":"T_M"},
           "dist":{"p,q":{"breakpoints":[{"x":1,"v":1}]},
                   "q,r":{"breakpoints":[{"x":1,"v":1}]},
                   "p,r":{"breakpoints":[{"x":2,"v":1}]}}}"#,
    );
    let broken = files.write(
        "broken.json",
        r#"{"points":["p","q","r"],"tau":{"kind":"tau_T","tnorm":"T_M"},
           "dist":{"p,q":{"breakpoints":[{"x":1,"v":1}]},
                   "q,r":{"breakpoints":[{"x":1,"v":1}]},
                   "p,r":{"breakpoints":[{"x":5,"v":1}]}}}"#,
    );
    let collapsed = files.write(
        "collapsed.json",
        r#"{"points":["p","q"],"tau":{"kind":"tau_T","tnorm":"T_M"},
           "dist":{"p,q":{"breakpoints":[{"x":0,"v":1}]}}}"#,
    );
    let cap = files.write(
        "cap.json",
        r#"{"points":["p","q"],"tau":{"kind":"tau_T","tnorm":"T_M"},
           "dist":{"p,q":{"breakpoints":[{"x":0.2,"v":0.6}]}}}"#,
    );
    let metric = files.write("metric.json", r#"{"points":["p","q"],"d":[[0,1],[1,0]]}"#);
    let bad_metric = files.write(
        "bad_metric.json",
        r#"{"points":["p","q","r"],"d":[[0,1,5],[1,0,1],[5,1,0]]}"#,
    );
    let (h3, h0, h5, junk) = (path_str(&h3), path_str(&h0), path_str(&h5), path_str(&junk));
    let (line, broken, collapsed, cap) =
        (path_str(&line), path_str(&broken), path_str(&collapsed), path_str(&cap));
    let (metric, bad_metric) = (path_str(&metric), path_str(&bad_metric));

    let cases: Vec<(&str, Vec<&str>, Vec<&str>, Vec<&str>)> = vec![
        ("levy", vec!["levy", h3, h0], vec!["levy", h3, h0, "--within", "0.1"], vec!["levy", junk, h0]),
        ("dist-h0", vec!["dist-h0", h3, "--t", "0.5"], vec!["dist-h0", h3, "--t", "0.2"], vec!["dist-h0", junk]),
        ("tau", vec!["tau", h3, h0, "--leq", h3], vec!["tau", h3, h0, "--leq", h5], vec!["tau", h3, junk]),
        ("conv", vec!["conv", h3, h0, "--leq", h3], vec!["conv", h3, h0, "--leq", h5], vec!["conv", junk, h0]),
        (
            "tnorm",
            vec!["tnorm", "T_P", "--x", "0.5", "--y", "0.5"],
            vec!["tnorm", "T_P", "--x", "1.5", "--y", "0.5"],
            vec!["tnorm", "T_X", "--x", "0.5", "--y", "0.5"],
        ),
        ("validate", vec!["validate", line], vec!["validate", broken], vec!["validate", junk]),
        ("from-metric", vec!["from-metric", metric], vec!["from-metric", bad_metric], vec!["from-metric", junk]),
        (
            "neighborhood",
            vec!["neighborhood", line, "--point", "p", "--t", "0.5"],
            vec!["neighborhood", line, "--point", "p", "--t", "0"],
            vec!["neighborhood", junk, "--point", "p", "--t", "0.5"],
        ),
        (
            "diameter",
            vec!["diameter", line, "--subset", "p,q"],
            vec!["diameter", line, "--subset", "p,z"],
            vec!["diameter", junk, "--subset", "p,q"],
        ),
        (
            "classify",
            vec!["classify", cap],
            vec!["classify", cap, "--subset", "z"],
            vec!["classify", junk],
        ),
        (
            "totally-bounded",
            vec!["totally-bounded", line, "--eps", "3", "--mode", "strong"],
            vec!["totally-bounded", cap, "--eps", "3", "--mode", "strong"],
            vec!["totally-bounded", junk, "--eps", "3"],
        ),
        (
            "separate",
            vec!["separate", line, "p", "q"],
            vec!["--no-validate", "separate", collapsed, "p", "q"],
            vec!["separate", junk, "p", "q"],
        ),
        (
            "cauchy",
            vec!["cauchy", line, "--seq", "q,p,p,p", "--eps", "0.5", "--lam", "0.5"],
            vec!["cauchy", line, "--seq", "p,q,p,q", "--eps", "0.5", "--lam", "0.5"],
            vec!["cauchy", junk, "--seq", "p", "--eps", "0.5", "--lam", "0.5"],
        ),
        (
            "converges",
            vec!["converges", line, "--seq", "q,q,p,p,p", "--to", "p", "--eps", "0.5", "--lam", "0.5"],
            vec!["converges", line, "--seq", "p,q,p,q", "--to", "p", "--eps", "0.5", "--lam", "0.5"],
            vec!["converges", junk, "--seq", "p", "--to", "p", "--eps", "0.5", "--lam", "0.5"],
        ),
        (
            "check diameter",
            vec!["check", "diameter", line],
            vec!["--no-validate", "check", "diameter", broken],
            vec!["check", "diameter", junk],
        ),
        (
            "check tb",
            vec!["check", "tb", line, "--grid", "3:4:0.5"],
            vec!["check", "tb", line, "--eps", "0"],
            vec!["check", "tb", junk, "--eps", "3"],
        ),
        (
            "check subsequence",
            vec!["check", "subsequence", line, "--seq", "q,p,p,p", "--sub", "2,3,4", "--to", "p", "--eps", "0.5", "--lam", "0.5"],
            vec!["check", "subsequence", line, "--seq", "q,p,p,p", "--sub", "3,2", "--to", "p", "--eps", "0.5", "--lam", "0.5"],
            vec!["check", "subsequence", junk, "--seq", "p", "--sub", "1", "--to", "p", "--eps", "0.5", "--lam", "0.5"],
        ),
        (
            "check cantor",
            vec!["check", "cantor", line, "--set", "p,q,r", "--set", "p,q", "--set", "p"],
            vec!["check", "cantor", line, "--set", "p,q,z"],
            vec!["check", "cantor", junk, "--set", "p"],
        ),
        (
            "check baire",
            vec!["check", "baire", line, "--set", "p,q,r", "--set", "p,q,r"],
            vec!["check", "baire", line, "--set", "z"],
            vec!["check", "baire", junk, "--set", "p"],
        ),
        (
            "check heine-borel",
            vec!["check", "heine-borel", line, "--seq", "p,q,p,p", "--cover", "p;q;r", "--eps", "0.5", "--lam", "0.5"],
            vec!["check", "heine-borel", line, "--cover", "p;q", "--eps", "0.5", "--lam", "0.5"],
            vec!["check", "heine-borel", junk, "--eps", "0.5", "--lam", "0.5"],
        ),
        (
            "trace convergence",
            vec!["trace", "convergence", line, "--seq", "q,p,p", "--to", "p"],
            vec!["trace", "convergence", line, "--seq", "q,p,p", "--to", "z"],
            vec!["trace", "convergence", junk, "--seq", "p", "--to", "p"],
        ),
        (
            "trace chain",
            vec!["trace", "chain", line, "--set", "p,q", "--set", "p"],
            vec!["trace", "chain", line, "--set", "z"],
            vec!["trace", "chain", junk, "--set", "p"],
        ),
    ];
    for (name, pass, fail, malformed) in &cases {
        for (args, expected) in [(pass, 0), (fail, 1), (malformed, 2)] {
            let code = run_cli(args);
            ensure!(code == expected, "{name}: {args:?} exited {code}, expected {expected}");
        }
    }
    ensure!(run_cli(&["frobnicate"]) == 2, "unknown subcommand must exit 2");
    Ok(format!(
        "200 documents round-trip losslessly, exit codes 0/1/2 hold for {} subcommands",
        cases.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome_); 11] = [
        ("metric axioms of d_L", metric_axioms_of_levy),
        ("closed-form distance to H_0 and ball equivalence", closed_form_agreement),
        ("Dirac law d_L(H_a, H_0) = min(a, 1)", dirac_law),
        ("triangle-function laws and sup-T grid oracle", triangle_laws),
        ("weak convergence and d_L convergence agree", weak_convergence_consistency),
        ("Menger embedding of finite metrics", menger_embedding),
        ("diameter properties", diameter_suite),
        ("strong total boundedness implies boundedness", tb_implies_bounded),
        ("nested closed sets with diameters to H_0", cantor),
        ("open dense families and compactness characterisations", baire_and_heine_borel),
        ("CLI round trip and exit-code contract", cli_contract),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
