//! Acceptance gate: one test per criterion, each printing a PASS/FAIL line.
//! Run with `cargo test -p korovkin-core --test acceptance -- --nocapture`.

mod common;

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{corpus, f, verdict};
use korovkin_core::bounds::{evaluate_bound, mu_n, rate_sweep};
use korovkin_core::library::{cos_k, sin_k};
use korovkin_core::modulus::{modulus_at_resolution, modulus_of_continuity};
use korovkin_core::norms::{fundamental_constant, norm, set_supremum_brute_force, SetExponent};
use korovkin_core::operators::{fejer_apply, kantorovich_apply};
use korovkin_core::{
    BoundFlavor, BoundOptions, Domain, FunctionHandle, OperatorFamily, OperatorSpec, QuadratureConfig, SpaceKind, SpaceSpec,
};

fn grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// `K_n(t^m)(x)` from the definition, with exact cell integrals of `t^m`.
fn kantorovich_monomial_oracle(n: usize, m: i32, x: f64) -> f64 {
    let n1 = (n + 1) as f64;
    (0..=n)
        .map(|k| {
            let (a, b) = (k as f64 / n1, (k + 1) as f64 / n1);
            let cell = (b.powi(m + 1) - a.powi(m + 1)) / (m + 1) as f64;
            binomial(n, k) * x.powi(k as i32) * (1.0 - x).powi((n - k) as i32) * cell
        })
        .sum::<f64>()
        * n1
}

#[test]
fn criterion_01_unitality() {
    let cfg = QuadratureConfig::default();
    let one = FunctionHandle::constant(Domain::Unit, 1.0);
    let mut fails = Vec::new();
    let mut worst: f64 = 0.0;
    for n in [1usize, 2, 5, 10, 50, 200] {
        for x in grid(1001) {
            let d = (kantorovich_apply(&one, n, x, &cfg).unwrap() - 1.0).abs();
            worst = worst.max(d);
            if d > 1e-12 {
                fails.push(format!("n={n} x={x}: {d:e}"));
            }
        }
    }
    verdict(1, "Kantorovich unitality", &fails, &format!("max |K_n 1 - 1| = {worst:.2e}"));
}

#[test]
fn criterion_02_moment_identities() {
    let cfg = QuadratureConfig::default();
    let t = f("x");
    let t2 = f("x2");
    let mut fails = Vec::new();
    let mut worst: f64 = 0.0;
    for n in [1usize, 2, 5, 10, 50] {
        let nf = n as f64;
        for x in grid(33) {
            let m1 = (2.0 * nf * x + 1.0) / (2.0 * (nf + 1.0));
            let m2 = (3.0 * nf * (nf - 1.0) * x * x + 6.0 * nf * x + 1.0) / (3.0 * (nf + 1.0).powi(2));
            for (g, closed, m) in [(&t, m1, 1), (&t2, m2, 2)] {
                let got = kantorovich_apply(g, n, x, &cfg).unwrap();
                let oracle = kantorovich_monomial_oracle(n, m, x);
                let d = (got - closed).abs().max((oracle - closed).abs());
                worst = worst.max(d);
                if d > 1e-9 {
                    fails.push(format!("n={n} x={x} m={m}: got {got}, closed {closed}, oracle {oracle}"));
                }
            }
        }
    }
    verdict(2, "Kantorovich moment identities", &fails, &format!("max deviation {worst:.2e}"));
}

#[test]
fn criterion_03_l1_moment() {
    let mut fails = Vec::new();
    let mut worst: f64 = 0.0;
    for n in [1usize, 5, 10, 50, 200] {
        let m = mu_n(&SpaceSpec::lp(1.0), &OperatorSpec::Kantorovich { n }).unwrap();
        // ∫_0^1 ((n-1)x(1-x) + 1/3)/(n+1)^2 dx = ((n-1)/6 + 1/3)/(n+1)^2
        let oracle = ((n as f64 - 1.0) / 6.0 + 1.0 / 3.0) / ((n + 1) as f64).powi(2);
        let want = 1.0 / (6.0 * (n + 1) as f64);
        let d = (m.mu_squared - want).abs();
        worst = worst.max(d);
        if d > 1e-8 || (oracle - want).abs() > 1e-15 {
            fails.push(format!("n={n}: {} vs {want}", m.mu_squared));
        }
    }
    verdict(3, "mu_n^2 in L1 equals 1/(6(n+1))", &fails, &format!("max deviation {worst:.2e}"));
}

#[test]
fn criterion_04_lp_moment_bound() {
    let mut fails = Vec::new();
    let mut tightest = f64::INFINITY;
    for p in [1.0, 2.0, 4.0] {
        for n in [1usize, 10, 100] {
            let m = mu_n(&SpaceSpec::lp(p), &OperatorSpec::Kantorovich { n }).unwrap();
            let bound = (1.0 / (n + 1) as f64).powf(1.0 / p);
            tightest = tightest.min(bound - m.mu_squared);
            if m.mu_squared > bound + 1e-8 {
                fails.push(format!("p={p} n={n}: {} > {bound}", m.mu_squared));
            }
        }
    }
    verdict(4, "mu_n^2 in Lp below (n+1)^(-1/p)", &fails, &format!("smallest margin {tightest:.3e}"));
}

const NS: [usize; 6] = [4, 8, 16, 32, 64, 128];

fn bound_spaces() -> Vec<SpaceSpec> {
    vec![
        SpaceSpec::sup(),
        SpaceSpec::lp(1.0),
        SpaceSpec::lp(2.0),
        SpaceSpec::lp(4.0),
        SpaceSpec::grand_lp(2.0),
        SpaceSpec::morrey(2.0, 3.0),
        SpaceSpec::weak_mp(2.0),
        SpaceSpec::variable_lp(f("const:2")),
        SpaceSpec::variable_lp(f("pp:;1.5,1")),
    ]
}

fn run_grid(flavor: BoundFlavor, functions: &[&str]) -> (Vec<String>, f64, usize) {
    let spaces = bound_spaces();
    let mut cells = Vec::new();
    for d in functions {
        for si in 0..spaces.len() {
            for n in NS {
                cells.push((*d, si, n));
            }
        }
    }
    let opts = BoundOptions::default();
    let results: Vec<_> = cells
        .par_iter()
        .map(|&(d, si, n)| {
            let r = evaluate_bound(flavor, &spaces[si], &OperatorSpec::Kantorovich { n }, &f(d), &opts);
            (d, si, n, r)
        })
        .collect();
    let mut fails = Vec::new();
    let mut worst: f64 = 0.0;
    for (d, si, n, r) in &results {
        match r {
            Ok(r) => {
                worst = worst.max(r.ratio);
                if !r.holds {
                    fails.push(format!("{d} in {} at n={n}: lhs {} rhs {} budget {}", spaces[*si].label(), r.lhs, r.rhs, r.est_error));
                }
            }
            Err(e) => fails.push(format!("{d} in {} at n={n}: {e}", spaces[*si].label())),
        }
    }
    (fails, worst, results.len())
}

#[test]
fn criterion_05_shisha_mond_corpus() {
    let (mut fails, worst, count) = run_grid(BoundFlavor::ShishaMond, &["x", "x2", "sqrt", "abshalf", "step"]);
    // f = x in L1: lhs = 1/(4(n+1)), rhs = 2/sqrt(6(n+1))
    for n in NS {
        let r = evaluate_bound(BoundFlavor::ShishaMond, &SpaceSpec::lp(1.0), &OperatorSpec::Kantorovich { n }, &f("x"), &Default::default()).unwrap();
        let n1 = (n + 1) as f64;
        if (r.lhs - 0.25 / n1).abs() > 1e-9 || (r.rhs - 2.0 / (6.0 * n1).sqrt()).abs() > 1e-6 {
            fails.push(format!("f=x L1 n={n}: lhs {} rhs {}", r.lhs, r.rhs));
        }
    }
    let fixture = evaluate_bound(BoundFlavor::ShishaMond, &SpaceSpec::lp(2.0), &OperatorSpec::Kantorovich { n: 5 }, &f("x2"), &Default::default()).unwrap();
    verdict(
        5,
        "Shisha-Mond form holds on the corpus",
        &fails,
        &format!("{count} cases, worst ratio {worst:.4}; x2 in L2 at n=5: lhs {:.6e} rhs {:.6e}", fixture.lhs, fixture.rhs),
    );
}

#[test]
fn criterion_06_devore_corpus() {
    let (mut fails, worst, count) = run_grid(BoundFlavor::DeVore, &["x2", "x3", "sin2pi"]);
    let a = 2.5;
    let affine = FunctionHandle::new(Domain::Unit, move |x| a * x - 1.0).with_derivative(move |_| a).with_lipschitz(a);
    let mut affine_dev: f64 = 0.0;
    for space in bound_spaces() {
        for n in NS {
            let op = OperatorSpec::Kantorovich { n };
            let r = evaluate_bound(BoundFlavor::DeVore, &space, &op, &affine, &Default::default()).unwrap();
            let c = fundamental_constant(&space).unwrap().value;
            let mu = mu_n(&space, &op).unwrap().mu;
            let want = c.sqrt() * mu * a;
            affine_dev = affine_dev.max((r.rhs - want).abs());
            if (r.rhs - want).abs() > 1e-9 || r.omega_val != 0.0 || !r.holds {
                fails.push(format!("affine in {} at n={n}: rhs {} vs {want}", space.label(), r.rhs));
            }
            if space.kind == SpaceKind::Lp && space.p == 1.0 {
                let closed = a / (6.0 * (n + 1) as f64).sqrt();
                if (r.rhs - closed).abs() > 1e-9 {
                    fails.push(format!("affine L1 n={n}: rhs {} vs closed {closed}", r.rhs));
                }
            }
        }
    }
    verdict(6, "DeVore form holds; affine reduction", &fails, &format!("{count} cases, worst ratio {worst:.4}, affine deviation {affine_dev:.1e}"));
}

/// `σ_n g(x)` from Fourier coefficients computed by the trapezoid rule, which
/// is exact for trigonometric polynomials of degree below `m`.
fn fejer_fourier_oracle(g: impl Fn(f64) -> f64, n: usize, x: f64) -> f64 {
    let m = 8 * (n + 2);
    let ts: Vec<f64> = (0..m).map(|j| -PI + 2.0 * PI * j as f64 / m as f64).collect();
    let vals: Vec<f64> = ts.iter().map(|&t| g(t)).collect();
    let mut s = vals.iter().sum::<f64>() / m as f64;
    for k in 1..=n {
        let kf = k as f64;
        let a = 2.0 * ts.iter().zip(&vals).map(|(t, v)| v * (kf * t).cos()).sum::<f64>() / m as f64;
        let b = 2.0 * ts.iter().zip(&vals).map(|(t, v)| v * (kf * t).sin()).sum::<f64>() / m as f64;
        s += (1.0 - kf / (n + 1) as f64) * (a * (kf * x).cos() + b * (kf * x).sin());
    }
    s
}

#[test]
fn criterion_07_trigonometric() {
    let cfg = QuadratureConfig::default();
    let mut fails = Vec::new();
    let fns = [cos_k(1), sin_k(1), cos_k(2)];
    let spaces = [SpaceSpec::sup().on_domain(Domain::Circle), SpaceSpec::lp(1.0).on_domain(Domain::Circle)];
    let ns = [4usize, 8, 16, 32, 64];
    let mut cells = Vec::new();
    for fi in 0..fns.len() {
        for si in 0..spaces.len() {
            for n in ns {
                cells.push((fi, si, n));
            }
        }
    }
    let results: Vec<_> = cells
        .par_iter()
        .map(|&(fi, si, n)| evaluate_bound(BoundFlavor::TrigShishaMond, &spaces[si], &OperatorSpec::Fejer { n }, &fns[fi], &Default::default()))
        .collect();
    let mut worst: f64 = 0.0;
    for ((fi, si, n), r) in cells.iter().zip(&results) {
        match r {
            Ok(r) => {
                worst = worst.max(r.ratio);
                if !r.holds {
                    fails.push(format!("{} in {} n={n}: lhs {} rhs {}", fns[*fi].name(), spaces[*si].label(), r.lhs, r.rhs));
                }
            }
            Err(e) => fails.push(format!("{} in {} n={n}: {e}", fns[*fi].name(), spaces[*si].label())),
        }
    }
    let cosine = cos_k(1);
    let mut eig: f64 = 0.0;
    let mut mu_dev: f64 = 0.0;
    for n in ns {
        let lam = n as f64 / (n + 1) as f64;
        for x in Domain::Circle.probes(33) {
            let got = fejer_apply(&cosine, n, x, &cfg).unwrap();
            let oracle = fejer_fourier_oracle(f64::cos, n, x);
            let d = (got - lam * x.cos()).abs().max((oracle - lam * x.cos()).abs());
            eig = eig.max(d);
            if d > 1e-7 {
                fails.push(format!("eigen n={n} x={x}: {got} vs {}", lam * x.cos()));
            }
        }
        // σ_n(sin²((x-·)/2))(x) = 1/(2(n+1)) by the oracle, hence μ_n = π/sqrt(2(n+1))
        let x0 = 0.3;
        let moment = fejer_fourier_oracle(|t| ((x0 - t) / 2.0).sin().powi(2), n, x0);
        let want = PI / (2.0 * (n + 1) as f64).sqrt();
        if (PI * moment.sqrt() - want).abs() > 1e-12 {
            fails.push(format!("oracle moment n={n}: {moment}"));
        }
        let m = mu_n(&spaces[0], &OperatorSpec::Fejer { n }).unwrap();
        mu_dev = mu_dev.max((m.mu - want).abs());
        if (m.mu - want).abs() > 1e-6 {
            fails.push(format!("mu_n sup n={n}: {} vs {want}", m.mu));
        }
    }
    verdict(7, "trigonometric form with Fejer means", &fails, &format!("{} cases, worst ratio {worst:.4}, eigen dev {eig:.1e}, mu dev {mu_dev:.1e}", results.len()));
}

#[test]
fn criterion_08_rates() {
    let ns: Vec<usize> = (0..8).map(|k| 4 << k).collect();
    let fx = f("x");
    let r = rate_sweep(&SpaceSpec::lp(1.0), &OperatorFamily::Kantorovich, &fx, &ns, BoundFlavor::ShishaMond, &Default::default()).unwrap();
    let (sl, sr) = (r.slope_lhs.as_ref().unwrap().slope, r.slope_rhs.as_ref().unwrap().slope);
    let mut fails = Vec::new();
    if (sr + 0.5).abs() > 0.05 {
        fails.push(format!("slope_rhs {sr}"));
    }
    if (sl + 1.0).abs() > 0.1 {
        fails.push(format!("slope_lhs {sl}"));
    }
    if !r.all_hold() {
        fails.push("bound violated in sweep".into());
    }
    verdict(8, "rate reproduction for f = x in L1", &fails, &format!("slope_lhs {sl:.4}, slope_rhs {sr:.4}"));
}

/// Independent subset enumeration: `sup_E |E|^{-e} ∫_E |f|^q` over unions of cells.
fn union_oracle(values: &[f64], h: f64, q: f64, e: f64) -> f64 {
    let n = values.len();
    let mut best: f64 = 0.0;
    for mask in 1usize..(1 << n) {
        let (mut mass, mut cells) = (0.0, 0usize);
        for (i, v) in values.iter().enumerate() {
            if mask >> i & 1 == 1 {
                mass += v.abs().powf(q) * h;
                cells += 1;
            }
        }
        best = best.max((cells as f64 * h).powf(-e) * mass);
    }
    best
}

#[test]
fn criterion_09_set_supremum_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut fails = Vec::new();
    let mut worst: f64 = 0.0;
    for case in 0..50 {
        let n = rng.gen_range(1..=12usize);
        let values: Vec<f64> = (0..n).map(|_| if rng.gen_bool(0.15) { 0.0 } else { rng.gen_range(-3.0..3.0) }).collect();
        let small = rng.gen_bool(0.5);
        let p = rng.gen_range(1.05..4.0);
        let lambda = rng.gen_range(0.05..0.95);
        // the kernel runs on a grid that subdivides each piece into `sub` cells
        let sub = 4usize.div_ceil(n);
        let vals = values.clone();
        let g = FunctionHandle::new(Domain::Unit, move |x| vals[((x * n as f64) as usize).min(n - 1)])
            .with_breakpoints((1..n).map(|i| i as f64 / n as f64).collect());
        let (space, oracle, kind) = if small {
            (SpaceSpec::small_morrey(p, lambda), union_oracle(&values, 1.0 / n as f64, p, lambda).powf(1.0 / p), SetExponent::SmallMorrey { p, lambda })
        } else {
            (SpaceSpec::weak_mp(p), union_oracle(&values, 1.0 / n as f64, 1.0, 1.0 - 1.0 / p), SetExponent::WeakMp { p })
        };
        let got = norm(&space.with_resolution(n * sub), &g).unwrap().value;
        let brute = set_supremum_brute_force(&values, 1.0 / n as f64, kind).unwrap();
        let d = (got - oracle).abs().max((brute - oracle).abs());
        worst = worst.max(d);
        if d > 1e-9 {
            fails.push(format!("case {case} (N={n}, small={small}, p={p:.3}): kernel {got} oracle {oracle}"));
        }
    }
    verdict(9, "rearrangement kernels match subset enumeration", &fails, &format!("50 cases, max deviation {worst:.1e}"));
}

#[test]
fn criterion_10_norm_axioms() {
    let fs = corpus();
    let spaces = common::all_spaces();
    let results: Vec<Vec<String>> = spaces
        .par_iter()
        .map(|space| {
            let mut fails = Vec::new();
            let c0 = fundamental_constant(space).unwrap();
            let norms: Vec<_> = fs.iter().map(|g| norm(space, g).unwrap()).collect();
            for (i, g) in fs.iter().enumerate() {
                let ng = &norms[i];
                for a in [-2.5, 0.3] {
                    let s = norm(space, &g.scaled(a)).unwrap().value;
                    if (s - a.abs() * ng.value).abs() > 1e-8 * (a.abs() * ng.value).max(1e-300) {
                        fails.push(format!("{}: homogeneity {} a={a}: {s} vs {}", space.label(), g.name(), a.abs() * ng.value));
                    }
                }
                for j in [(i + 1) % fs.len(), (i + 5) % fs.len()] {
                    let sum = FunctionHandle::linear_combination(1.0, g, 1.0, &fs[j]).unwrap();
                    let ns = norm(space, &sum).unwrap();
                    let slack = 1e-8 + ns.est_error + ng.est_error + norms[j].est_error;
                    if ns.value > ng.value + norms[j].value + slack {
                        fails.push(format!("{}: triangle {}+{}: {} > {} + {}", space.label(), g.name(), fs[j].name(), ns.value, ng.value, norms[j].value));
                    }
                }
                // |g·x| ≤ |g| pointwise
                let ge = g.eval_fn().clone();
                let damped = FunctionHandle::new(Domain::Unit, move |x| ge(x) * x).with_breakpoints(g.breakpoints().to_vec());
                let nd = norm(space, &damped).unwrap();
                if nd.value > ng.value + nd.est_error + ng.est_error {
                    fails.push(format!("{}: monotonicity {}: {} > {}", space.label(), g.name(), nd.value, ng.value));
                }
                let sup = norm(&SpaceSpec::sup(), g).unwrap();
                if ng.value > c0.value * (sup.value + sup.est_error) + ng.est_error + c0.est_error * sup.value {
                    fails.push(format!("{}: embedding {}: {} > {} * {}", space.label(), g.name(), ng.value, c0.value, sup.value));
                }
            }
            fails
        })
        .collect();
    let fails: Vec<String> = results.into_iter().flatten().collect();
    verdict(10, "norm axioms on 12 functions x 11 spaces", &fails, "homogeneity, triangle, monotonicity, embedding");
}

/// All grid pairs within `delta`, plus each grid point paired with its
/// `±delta` neighbour.
fn modulus_oracle(g: &FunctionHandle, delta: f64, cells: usize) -> f64 {
    let h = 1.0 / cells as f64;
    let xs: Vec<f64> = (0..=cells).map(|i| i as f64 * h).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| g.eval(x)).collect();
    let mut best: f64 = 0.0;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if (j - i) as f64 * h > delta + 1e-12 {
                break;
            }
            best = best.max((vs[i] - vs[j]).abs());
        }
        for y in [xs[i] + delta, xs[i] - delta] {
            if (0.0..=1.0).contains(&y) {
                best = best.max((vs[i] - g.eval(y)).abs());
            }
        }
    }
    best
}

#[test]
fn criterion_11_modulus() {
    let fs = corpus();
    let mut fails = Vec::new();
    let mut oracle_dev: f64 = 0.0;
    for g in &fs {
        for delta in [0.01, 0.1, 0.25] {
            let est = modulus_at_resolution(g, delta, 4096).unwrap();
            let brute = modulus_oracle(g, delta, 4096);
            oracle_dev = oracle_dev.max((est - brute).abs());
            if (est - brute).abs() > 1e-9 {
                fails.push(format!("oracle {} delta={delta}: {est} vs {brute}", g.name()));
            }
        }
    }
    for (d, delta, want) in [("x", 0.1, 0.1), ("x2", 0.1, 0.19), ("sqrt", 0.25, 0.5)] {
        let v = modulus_of_continuity(&f(d), delta, 64).unwrap().value;
        if (v - want).abs() > 1e-4 {
            fails.push(format!("closed form {d}: {v} vs {want}"));
        }
    }
    let mut limits = Vec::new();
    for g in &fs {
        let deltas = [0.01, 0.02, 0.05, 0.1, 0.2, 0.5];
        let est: Vec<_> = deltas.iter().map(|&d| modulus_of_continuity(g, d, 256).unwrap()).collect();
        for w in est.windows(2) {
            if w[0].value > w[1].value + 1e-12 {
                fails.push(format!("monotonicity {}: {:?}", g.name(), w));
            }
        }
        for lambda in [1.5, 2.0, 3.7] {
            for base in &est[..3] {
                let big = modulus_of_continuity(g, lambda * base.delta, 256).unwrap();
                let factor = 1.0 + lambda.floor();
                if big.value > factor * (base.value + base.error_bound) + 1e-12 {
                    fails.push(format!("scaling {} lambda={lambda} delta={}: {} > {factor} * {}", g.name(), base.delta, big.value, base.value));
                }
            }
        }
        let pts = grid(257);
        for e in &est {
            let bound = e.value + e.error_bound;
            for (i, &x) in pts.iter().enumerate() {
                for &y in &pts[i + 1..] {
                    let lhs = (g.eval(x) - g.eval(y)).abs();
                    if lhs > (1.0 + (x - y).powi(2) / (e.delta * e.delta)) * bound + 1e-12 {
                        fails.push(format!("pointwise {} delta={} at ({x},{y})", g.name(), e.delta));
                    }
                }
            }
        }
        // ω(2^-k) for k = 1..=12 must decrease, and its geometric (Aitken)
        // extrapolation from k = 10, 11, 12 must be below 1e-3
        let w: Vec<f64> = (1..=12).map(|k| modulus_of_continuity(g, 0.5f64.powi(k), 256).unwrap().value).collect();
        if w.windows(2).any(|p| p[1] > p[0] + 1e-12) {
            fails.push(format!("vanishing {}: not decreasing {w:?}", g.name()));
        }
        let (x0, x1, x2) = (w[9], w[10], w[11]);
        let denom = (x2 - x1) - (x1 - x0);
        let limit = if denom.abs() < 1e-300 { x2 } else { x2 - (x2 - x1).powi(2) / denom };
        limits.push(format!("{}:{:.1e}", g.name(), x2));
        if !(limit.abs() < 1e-3) {
            fails.push(format!("vanishing {}: extrapolated limit {limit:e} (omega(2^-12) = {x2:e})", g.name()));
        }
    }
    verdict(11, "modulus estimator and its properties", &fails, &format!("oracle dev {oracle_dev:.1e}; omega(2^-12): {}", limits.join(" ")));
}

#[test]
fn criterion_12_grand_constant() {
    let mut fails = Vec::new();
    let mut vals = Vec::new();
    for p in [2.0, 3.0, 4.0] {
        let c = fundamental_constant(&SpaceSpec::grand_lp(p)).unwrap().value;
        vals.push(format!("p={p}: {c:.6}"));
        if (c - (p - 1.0)).abs() > 0.02 {
            fails.push(format!("p={p}: c = {c}"));
        }
    }
    verdict(12, "grand Lebesgue constant equals p-1", &fails, &vals.join(", "));
}
