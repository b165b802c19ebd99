//! Acceptance suite: eight criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines are always printed; the
//! process exits non-zero if any criterion fails.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thermineq_core::families::{decreasing_weight, increasing_weight, positions, positive_capacity, step_capacity};
use thermineq_core::funcexpr::derivative;
use thermineq_core::numerics::{
    integrate_kfold, integrate_kfold_tensor, integrate_ratio, riemann_oracle, separable_integrand,
};
use thermineq_core::theorems::{
    even_k_counterexample, jensen_verify, powermean_solve, powermean_verify, verify_irreversible, verify_reversible,
};
use thermineq_core::thermo::{
    irreversible_equilibrate, negative_capacity_experiment, reservoir_contact, reversible_equilibrate,
};
use thermineq_core::{parse_function, BlockSystem, ScalarFunction, Segmented, Tolerances};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + salt)
}

fn am_gm() -> Outcome {
    let sys = BlockSystem::shared(vec![1.0, 4.0], parse_function("1", None).unwrap()).unwrap();
    let rep = verify_reversible(&sys, &parse_function("x", None).unwrap(), 1, &Tolerances::default())
        .map_err(|e| e.to_string())?;
    let x0 = rep.x0.unwrap();
    ensure((x0 - 2.0).abs() <= 1e-8, || format!("x0 = {x0}"))?;
    ensure((rep.margin - 1.0).abs() <= 1e-7, || format!("margin = {}", rep.margin))?;
    ensure(rep.satisfied, || "not satisfied".into())?;
    Ok(format!("x0 = {x0:.12}, margin = {:.12}", rep.margin))
}

fn power_mean_reduction() -> Outcome {
    let tol = Tolerances::default();
    let mut r = rng(2);
    let (mut worst_mean, mut worst_margin) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let n = r.gen_range(1..=6);
        let xs: Vec<f64> = (0..n).map(|_| r.gen_range(0.1..10.0)).collect();
        let am = xs.iter().sum::<f64>() / n as f64;
        let x0 = powermean_solve(&xs, 1.0, 1, &tol).map_err(|e| e.to_string())?;
        let rep = powermean_verify(&xs, 2.0, 1.0, 1, &tol).map_err(|e| e.to_string())?;
        let expected = xs.iter().map(|x| x * x).sum::<f64>() - n as f64 * am * am;
        worst_mean = worst_mean.max((x0 - am).abs());
        worst_margin = worst_margin.max((rep.margin - expected).abs());
        ensure(rep.satisfied, || format!("violated on {xs:?}"))?;
    }
    ensure(worst_mean <= 1e-10, || format!("mean error {worst_mean:e}"))?;
    ensure(worst_margin <= 1e-7, || format!("margin error {worst_margin:e}"))?;
    Ok(format!("200 draws, max |x0 - AM| = {worst_mean:.1e}, max margin error = {worst_margin:.1e}"))
}

fn jensen_two_routes() -> Outcome {
    let tol = Tolerances::default();
    let h = parse_function("exp(x)", None).unwrap();
    let mut r = rng(3);
    let (mut worst_route, mut worst_mean, mut min_margin) = (0.0f64, 0.0f64, f64::INFINITY);
    for _ in 0..200 {
        let n = r.gen_range(1..=6);
        let ys: Vec<f64> = (0..n).map(|_| r.gen_range(0.1..3.0)).collect();
        let rep = jensen_verify(&h, &ys, &tol).map_err(|e| e.to_string())?;
        worst_route = worst_route.max((rep.report.margin - rep.margin_by_balance).abs());
        worst_mean = worst_mean.max((rep.x0 - rep.mean).abs());
        min_margin = min_margin.min(rep.report.margin);
    }
    ensure(worst_route <= 1e-8, || format!("routes differ by {worst_route:e}"))?;
    ensure(worst_mean <= 1e-8, || format!("x0 off the mean by {worst_mean:e}"))?;
    ensure(min_margin >= -1e-8, || format!("margin {min_margin:e}"))?;
    Ok(format!("200 draws, route gap {worst_route:.1e}, |x0 - mean| {worst_mean:.1e}, min margin {min_margin:.3e}"))
}

fn random_system(r: &mut ChaCha8Rng) -> BlockSystem {
    let n = r.gen_range(1..=6);
    let xs = positions(r, n, 0.5, 5.0);
    match r.gen_range(0..3) {
        0 => BlockSystem::shared(xs, positive_capacity(r, 1.0)).unwrap(),
        1 => BlockSystem::shared(xs, step_capacity(r, 0.1, 10.0, 4)).unwrap(),
        _ => BlockSystem::per_block(xs.into_iter().map(|x| (x, positive_capacity(r, 1.0))).collect()).unwrap(),
    }
}

fn theorem_suites() -> Outcome {
    let tol = Tolerances::default();
    let mut r = rng(4);
    let mut counts = [0usize; 4];
    for draw in 0..1000 {
        let k = if draw % 2 == 0 { 1 } else { 3 };
        let sys = random_system(&mut r);
        let (x1, xn) = sys.span();
        let x0 = if draw % 4 < 2 { r.gen_range(x1..=xn) } else { r.gen_range(0.2..8.0) };

        let g = increasing_weight(&mut r);
        let rev = verify_reversible(&sys, &g, k, &tol).map_err(|e| format!("draw {draw}: {e}"))?;
        let irr = verify_irreversible(&sys, &g, x0, k, &tol).map_err(|e| format!("draw {draw}: {e}"))?;
        ensure(rev.satisfied && !rev.direction_flipped, || format!("reversible draw {draw}: {rev}"))?;
        ensure(irr.satisfied && !irr.direction_flipped, || format!("irreversible draw {draw}: {irr}"))?;
        counts[0] += 1;
        counts[1] += 1;

        let g = decreasing_weight(&mut r);
        let rev = verify_reversible(&sys, &g, k, &tol).map_err(|e| format!("draw {draw}: {e}"))?;
        let irr = verify_irreversible(&sys, &g, x0, k, &tol).map_err(|e| format!("draw {draw}: {e}"))?;
        ensure(rev.satisfied && rev.direction_flipped, || format!("flipped reversible draw {draw}: {rev}"))?;
        ensure(irr.satisfied && irr.direction_flipped, || format!("flipped irreversible draw {draw}: {irr}"))?;
        counts[2] += 1;
        counts[3] += 1;
    }
    Ok(format!(
        "{} reversible + {} irreversible satisfied; {} + {} decreasing-g draws flipped and satisfied",
        counts[0], counts[1], counts[2], counts[3]
    ))
}

fn counterexample() -> Outcome {
    let mut r = rng(5);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (x1, x2) = (r.gen_range(0.01..100.0), r.gen_range(0.01..100.0));
        let rep = even_k_counterexample(x1, x2).map_err(|e| e.to_string())?;
        let scale = (x1 + x2).powi(2).max(1.0);
        worst = worst.max((rep.discriminant + 4.0 * (x1 - x2).powi(2)).abs() / scale);
        ensure(x1 == x2 || !rep.has_real_root, || format!("real root reported for {x1}, {x2}"))?;
    }
    ensure(worst <= 1e-12, || format!("discriminant error {worst:e}"))?;
    Ok(format!("100 pairs, max scaled discriminant error {worst:.1e}, no real roots"))
}

fn thermal_system(r: &mut ChaCha8Rng) -> BlockSystem {
    let n = r.gen_range(1..=5);
    let ts = positions(r, n, 10.0, 1000.0);
    if r.gen_bool(0.5) {
        BlockSystem::shared(ts, positive_capacity(r, 300.0)).unwrap()
    } else {
        BlockSystem::per_block(ts.into_iter().map(|t| (t, positive_capacity(r, 300.0))).collect()).unwrap()
    }
}

fn thermo_ledgers() -> Outcome {
    let tol = Tolerances::default();
    let mut r = rng(6);
    let (mut rev_ds, mut min_work, mut min_irr, mut min_res, mut worst_dq) =
        (0.0f64, f64::INFINITY, f64::INFINITY, f64::INFINITY, 0.0f64);
    for draw in 0..500 {
        let sys = thermal_system(&mut r);
        let rev = reversible_equilibrate(&sys, &tol).map_err(|e| format!("draw {draw}: {e}"))?;
        let irr = irreversible_equilibrate(&sys, &tol).map_err(|e| format!("draw {draw}: {e}"))?;
        let t0 = r.gen_range(10.0..1000.0);
        let res = reservoir_contact(&sys, t0, &tol).map_err(|e| format!("draw {draw}: {e}"))?;
        rev_ds = rev_ds.max(rev.ds_total.abs());
        min_work = min_work.min(rev.work_net);
        min_irr = min_irr.min(irr.ds_total);
        min_res = min_res.min(res.ds_total);
        worst_dq = worst_dq.max(irr.dq_residual.abs() / irr.energy_scale.max(1.0));
    }
    ensure(rev_ds <= 1e-8, || format!("reversible |dS| = {rev_ds:e}"))?;
    ensure(min_work >= -1e-8, || format!("work = {min_work:e}"))?;
    ensure(min_irr >= -1e-8, || format!("irreversible dS = {min_irr:e}"))?;
    ensure(min_res >= -1e-8, || format!("reservoir dS = {min_res:e}"))?;
    ensure(worst_dq <= 1e-8, || format!("heat residual {worst_dq:e}"))?;
    Ok(format!(
        "500 systems, max |dS_rev| {rev_ds:.1e}, min W {min_work:.3e}, min dS_irr {min_irr:.3e}, min dS_res {min_res:.3e}"
    ))
}

fn negative_capacity() -> Outcome {
    let tol = Tolerances::default();
    let rep = negative_capacity_experiment(1.0, 300.0, 400.0, &tol).map_err(|e| e.to_string())?;
    ensure(rep.t_eq == 500.0, || format!("T_eq = {}", rep.t_eq))?;
    ensure((rep.ds_total - 0.9375f64.ln()).abs() <= 1e-9, || format!("dS = {}", rep.ds_total))?;
    let (mut rows, mut threshold_rows) = (0, 0);
    for i in 1..=900 {
        let t2 = 150.0 + 0.5 * i as f64;
        if t2 == 300.0 {
            continue;
        }
        let row = negative_capacity_experiment(1.0, 300.0, t2, &tol).map_err(|e| e.to_string())?;
        ensure(row.ds_total < 0.0, || format!("dS = {} at T2 = {t2}", row.ds_total))?;
        rows += 1;
        threshold_rows += row.stated_threshold_holds as usize;
    }
    Ok(format!(
        "dS(400) = {:.9}; {rows} sweep rows over (150, 600] all negative, threshold flag set on {threshold_rows}",
        rep.ds_total
    ))
}

fn numerics_oracles() -> Outcome {
    let mut r = rng(8);
    let mut worst_quad = 0.0f64;
    for _ in 0..50 {
        let f = positive_capacity(&mut r, 1.0);
        let (a, w) = (r.gen_range(0.5..3.0), r.gen_range(0.1..5.0));
        let none: Option<&ScalarFunction> = None;
        let quad = thermineq_core::numerics::integrate(&f, a, a + w, 1e-10).map_err(|e| e.to_string())?.value;
        let oracle = riemann_oracle(&f, none, a, a + w, 1_000_000).map_err(|e| e.to_string())?;
        worst_quad = worst_quad.max(((quad - oracle) / oracle).abs());
    }
    let mut worst_ad = 0.0f64;
    for i in 0..100 {
        let f = if i % 2 == 0 { positive_capacity(&mut r, 1.0) } else { increasing_weight(&mut r) };
        let x = r.gen_range(0.5..5.0);
        let e = |t: f64| f.eval(t).unwrap();
        let fd1 = (e(x + 1e-5) - e(x - 1e-5)) / 2e-5;
        let fd2 = (e(x + 1e-4) - 2.0 * e(x) + e(x - 1e-4)) / 1e-8;
        let d1 = derivative(&f, x, 1).map_err(|e| e.to_string())?;
        let d2 = derivative(&f, x, 2).map_err(|e| e.to_string())?;
        worst_ad = worst_ad.max((d1 - fd1).abs() / d1.abs().max(1.0)).max((d2 - fd2).abs() / d2.abs().max(1.0));
    }
    let mut worst_tensor = 0.0f64;
    for _ in 0..20 {
        let fs: Vec<_> = (0..3).map(|_| positive_capacity(&mut r, 1.0)).collect();
        let gs: Vec<_> = (0..3).map(|_| increasing_weight(&mut r)).collect();
        let (y, xi) = (r.gen_range(0.5..1.5), r.gen_range(1.6..3.0));
        let sep = integrate_kfold(&fs, &gs, xi, y, 3, 1e-12).map_err(|e| e.to_string())?;
        let ten = integrate_kfold_tensor(separable_integrand(&fs, &gs), xi, y, 3).map_err(|e| e.to_string())?;
        worst_tensor = worst_tensor.max(((sep - ten) / sep).abs());
    }
    // weighted integrands go through the ratio path
    let f = parse_function("1 + x^2", None).unwrap();
    let g = parse_function("x", None).unwrap();
    let ratio = integrate_ratio(&f, &g, 1.0, 3.0, 1e-10).map_err(|e| e.to_string())?.value;
    let exact = 3f64.ln() + 4.0;
    worst_quad = worst_quad.max(((ratio - exact) / exact).abs());
    ensure(worst_quad < 1e-6, || format!("quadrature error {worst_quad:e}"))?;
    ensure(worst_ad < 1e-6, || format!("AD error {worst_ad:e}"))?;
    ensure(worst_tensor < 1e-6, || format!("tensor error {worst_tensor:e}"))?;
    Ok(format!("quad {worst_quad:.1e}, AD {worst_ad:.1e}, separable/tensor {worst_tensor:.1e}"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("AM-GM reproduction", am_gm),
        ("power-mean reduction", power_mean_reduction),
        ("Jensen two-route agreement", jensen_two_routes),
        ("randomized theorem suites", theorem_suites),
        ("even-k counterexample", counterexample),
        ("thermodynamic ledgers", thermo_ledgers),
        ("negative-capacity experiment", negative_capacity),
        ("numerics oracles", numerics_oracles),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("[{tag}] {}. {name} ({:.2}s): {detail}", i + 1, t.elapsed().as_secs_f64());
    }
    println!("acceptance: {}/8 passed in {:.2}s", 8 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
