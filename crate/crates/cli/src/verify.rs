//! `sbo verify`: grid cross-checks, run in a rayon pool and reported in grid
//! order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use sbo_core::diffops::{emit_operator, symbol_inverse};
use sbo_core::fsystem::{build_psi, l_operators, m_coeffs};
use sbo_core::poly::UniPoly;
use sbo_core::solver::{brute_force_sol, brute_force_xi_with, classify, closed_form_solution, duality_phi};
use sbo_core::{Result, GR};

use crate::grid::{parse_integers, parse_values};
use crate::{print_json, Failure, Format, VerifyArgs, EXIT_FAILURE, EXIT_MISMATCH, EXIT_PARSE};

/// Deliberate error in one first-order equation: `L_{5 + slot/2} += delta * f_slot`.
#[derive(Clone, Debug)]
struct Perturbation {
    slot: usize,
    delta: GR,
}

impl Perturbation {
    fn from_seed(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let slot = if rng.gen_bool(0.5) { 0 } else { 2 };
        let num = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let den = rng.gen_range(1..=3);
        Perturbation { slot, delta: GR::from_frac(num, den) }
    }

    fn row(&self) -> usize {
        4 + self.slot / 2
    }
}

struct PointReport {
    lambda: GR,
    a: i64,
    m: i64,
    expected: u8,
    dimension: Option<usize>,
    checks: Vec<(&'static str, bool)>,
    error: Option<String>,
}

impl PointReport {
    fn ok(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|(_, ok)| *ok)
    }

    fn to_json(&self) -> Value {
        let checks: serde_json::Map<String, Value> =
            self.checks.iter().map(|(k, v)| (k.to_string(), Value::Bool(*v))).collect();
        json!({
            "lambda": self.lambda.to_string(),
            "a": self.a,
            "m": self.m,
            "expected_dimension": self.expected,
            "dimension": self.dimension,
            "checks": checks,
            "error": self.error,
            "ok": self.ok(),
        })
    }

    fn to_text(&self) -> String {
        let mut s = format!(
            "{} lambda={} a={} m={} dim={}/{}",
            if self.ok() { "ok  " } else { "FAIL" },
            self.lambda,
            self.a,
            self.m,
            self.dimension.map_or("?".into(), |d| d.to_string()),
            self.expected
        );
        for (k, v) in &self.checks {
            s.push_str(&format!(" {k}={}", if *v { "ok" } else { "no" }));
        }
        if let Some(e) = &self.error {
            s.push_str(&format!(" error={e}"));
        }
        s
    }
}

fn check_point(lambda: &GR, a: i64, m: i64, fuzz: Option<&Perturbation>) -> PointReport {
    let mut report = PointReport {
        lambda: lambda.clone(),
        a,
        m,
        expected: 0,
        dimension: None,
        checks: Vec::new(),
        error: None,
    };
    if let Err(e) = fill(&mut report, fuzz) {
        report.error = Some(e.to_string());
    }
    report
}

fn fill(r: &mut PointReport, fuzz: Option<&Perturbation>) -> Result<()> {
    let (lambda, a, m) = (&r.lambda.clone(), r.a, r.m);
    let nu = lambda + &GR::from_int(a);
    r.expected = classify(lambda, &nu, m)?.dimension;
    let xi = brute_force_xi_with(lambda, a, m, |p, g| {
        let [f0, f1, f2] = g.parts();
        let mut ls = l_operators(p, f0, f1, f2)?;
        if let Some(pt) = fuzz {
            let f: &UniPoly = g.parts()[pt.slot];
            ls[pt.row()] = ls[pt.row()].add(&f.scale(&pt.delta));
        }
        Ok(ls)
    })?;
    r.dimension = Some(xi.dimension());
    r.checks.push(("dimension", xi.dimension() == r.expected as usize));

    let dual = brute_force_sol(lambda, a, -m)?;
    r.checks.push(("duality", dual.dimension() == r.expected as usize));
    if r.expected != 1 || xi.dimension() != 1 {
        return Ok(());
    }

    let closed = closed_form_solution(lambda, a, m)?;
    let psi = build_psi(&closed)?;
    r.checks.push(("closed_form", closed.is_proportional_to(&xi.basis[0])));
    r.checks.push(("annihilated", m_coeffs(lambda, &psi).is_zero()));
    let mirrored = build_psi(&closed_form_solution(lambda, a, -m)?)?;
    let phi_ok = duality_phi(&psi).ratio_to(&mirrored).is_some_and(|k| !k.is_zero())
        && dual.basis.first().is_some_and(|g| g.is_proportional_to(&closed_form_solution(lambda, a, -m).unwrap()));
    r.checks.push(("duality_map", phi_ok));

    let mut ops_ok = true;
    for (sign, p) in [(m, &psi), (-m, &mirrored)] {
        let d = symbol_inverse(p, sign)?;
        let e = emit_operator(lambda, &nu, sign)?;
        ops_ok &= d.ratio_to(&e).is_some_and(|k| !k.is_zero());
    }
    r.checks.push(("operator", ops_ok));
    Ok(())
}

pub fn run(args: &VerifyArgs) -> std::result::Result<(), Failure> {
    let bad = |message: String| Failure { code: EXIT_PARSE, message };
    let lambdas = parse_values(&args.grid_lambda).map_err(bad)?;
    let a_values = parse_integers(&args.grid_a).map_err(bad)?;
    let m_values = parse_integers(&args.grid_m).map_err(bad)?;
    for &m in &m_values {
        if m < 1 {
            return Err(Failure {
                code: if m == 0 { crate::EXIT_OUT_OF_SCOPE } else { EXIT_PARSE },
                message: format!("grid values of m must be positive (negative m is checked through duality), got {m}"),
            });
        }
    }
    let mut points = Vec::new();
    for &m in &m_values {
        for &a in &a_values {
            for l in &lambdas {
                points.push((l.clone(), a, m));
            }
        }
    }
    let fuzz = args.fuzz_l.then(|| Perturbation::from_seed(args.seed));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Failure { code: EXIT_FAILURE, message: e.to_string() })?;
    let reports: Vec<PointReport> = pool.install(|| {
        points
            .par_iter()
            .map(|(l, a, m)| check_point(l, *a, *m, fuzz.as_ref()))
            .collect()
    });

    let failed = reports.iter().filter(|r| !r.ok()).count();
    match args.format {
        Format::Json => print_json(&json!({
            "points": reports.iter().map(PointReport::to_json).collect::<Vec<_>>(),
            "checked": reports.len(),
            "failed": failed,
            "perturbation": fuzz.as_ref().map(|p| json!({
                "equation": format!("L{}", p.row() + 1),
                "slot": p.slot,
                "delta": p.delta.to_string(),
            })),
        })),
        _ => {
            for r in &reports {
                println!("{}", r.to_text());
            }
            println!("{} points, {failed} failed", reports.len());
        }
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure { code: EXIT_MISMATCH, message: format!("{failed} grid points failed") })
    }
}
