//! Acceptance criteria, one test per criterion. Each test writes a single
//! `PASS`/`FAIL` line to stderr (bypassing output capture) before asserting.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use serde_json::Value;

use symred_core::atlas::{enumerate_catalog, order, Family, PrimePower, SimpleGroupId};
use symred_core::design::{k_lambda_ratio_exceeds_sqrt, satisfies_focus_condition};
use symred_core::imprimitive::{imprimitive_family, imprimitive_sweep};
use symred_core::product::{
    a_upper_bound, k_from, lambda_from, radical_bound_holds, RadicalPattern,
};

fn verdict(id: u32, title: &str, pass: bool, elapsed: Duration, detail: &str) {
    let line = format!(
        "[AC{id:02}] {} {title} ({:.3}s){}\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        if detail.is_empty() {
            String::new()
        } else {
            format!(": {detail}")
        }
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
}

struct Run {
    code: i32,
    json: Value,
}

fn symred(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_symred"))
        .args(args)
        .env_remove("SYMRED_CATALOG_BOUND")
        .env_remove("SYMRED_OUT4_NMAX")
        .env_remove("SYMRED_OUT4_QMAX")
        .env_remove("SYMRED_V0_MIN")
        .env_remove("SYMRED_FORMAT")
        .env_remove("SYMRED_SPORADIC_TABLE")
        .output()
        .expect("run symred");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    Run {
        code: out.status.code().unwrap_or(-1),
        json,
    }
}

fn u(v: &Value) -> u64 {
    match v {
        Value::Number(n) => n.as_u64().unwrap(),
        Value::String(s) => s.parse().unwrap(),
        other => panic!("not an integer: {other}"),
    }
}

#[test]
fn ac01_product_enumeration_matches_published_triples() {
    let start = Instant::now();
    let run = symred(&["product", "enumerate", "--v0-min", "2"]);
    let elapsed = start.elapsed();
    let triples: Vec<(u64, u64, u64)> = run
        .json
        .as_array()
        .expect("array of triples")
        .iter()
        .map(|t| (u(&t["v"]), u(&t["k"]), u(&t["lambda"])))
        .collect();
    let witnessed = run
        .json
        .as_array()
        .unwrap()
        .iter()
        .all(|t| t["witnesses"].as_array().is_some_and(|w| !w.is_empty()));
    let expected = vec![(16, 6, 2), (121, 25, 5), (441, 56, 7)];
    let pass = triples == expected && witnessed && elapsed < Duration::from_secs(1);
    verdict(
        1,
        "product enumerate --v0-min 2",
        pass,
        elapsed,
        &format!("got {triples:?}, exit {}", run.code),
    );
    assert_eq!(triples, expected, "the five steps admit extra triples");
    assert!(witnessed);
    assert!(elapsed < Duration::from_secs(1));
}

#[test]
fn ac02_a_upper_bounds() {
    let start = Instant::now();
    let (a2, a3) = (a_upper_bound(2), a_upper_bound(3));
    let elapsed = start.elapsed();
    let pass = a2 == 17 && a3 == 14 && elapsed < Duration::from_millis(1);
    verdict(
        2,
        "a_upper_bound(2) = 17, a_upper_bound(3) = 14",
        pass,
        elapsed,
        &format!("{a2}, {a3}"),
    );
    assert_eq!((a2, a3), (17, 14));
    assert!(elapsed < Duration::from_millis(1));
}

#[test]
fn ac03_m4_special_cases() {
    let start = Instant::now();
    let five = symred(&["product", "m4", "5"]);
    let six = symred(&["product", "m4", "6"]);
    let elapsed = start.elapsed();

    let check = |run: &Run, lo: u64, hi: u64, cands: &[u64], v0: u64| -> bool {
        let j = &run.json;
        let got: Vec<u64> = j["candidates"].as_array().unwrap().iter().map(u).collect();
        let denom = v0.pow(4) - 1;
        let rejected: Vec<u64> = j["rejections"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| u(&r["k"]))
            .collect();
        // every candidate must really give a non-integral λ
        let all_nonintegral = got.iter().all(|k| (k * (k - 1)) % denom != 0);
        run.code == 0
            && u(&j["k_lower"]) == lo
            && u(&j["k_upper"]) == hi
            && got == cands
            && rejected == cands
            && all_nonintegral
    };
    let ok5 = check(&five, 218, 288, &[243, 256], 5);
    let ok6 = check(&six, 391, 440, &[400, 405, 432], 6);
    let pass = ok5 && ok6 && elapsed < Duration::from_secs(1);
    verdict(3, "product m4 5 / 6", pass, elapsed, "");
    assert!(ok5, "{}", five.json);
    assert!(ok6, "{}", six.json);
    assert!(elapsed < Duration::from_secs(1));
}

#[test]
fn ac04_out4_scan_finds_only_l34() {
    let start = Instant::now();
    let run = symred(&["atlas", "scan", "--out4-nmax", "12", "--out4-qmax", "1024"]);
    let elapsed = start.elapsed();
    let cands = run.json["candidates"]
        .as_array()
        .cloned()
        .unwrap_or_default();
    let names: Vec<&str> = cands.iter().map(|c| c["group"].as_str().unwrap()).collect();
    let facts_ok =
        cands.len() == 1 && u(&cands[0]["order"]) == 20160 && u(&cands[0]["out_order"]) == 12;
    let tails_ok = run.json["tail_failures"]
        .as_array()
        .is_some_and(|t| t.is_empty())
        && u(&run.json["tail_checks"]) > 0;
    let pass = run.code == 0
        && names == ["L3(4)"]
        && facts_ok
        && tails_ok
        && elapsed < Duration::from_secs(60);
    verdict(
        4,
        "atlas scan n_max=12 q_max=1024",
        pass,
        elapsed,
        &format!("{names:?}"),
    );
    assert_eq!(names, ["L3(4)"]);
    assert!(facts_ok && tails_ok && run.code == 0);
    assert!(elapsed < Duration::from_secs(60));
}

#[test]
fn ac05_diagonal_scan() {
    let start = Instant::now();
    let run = symred(&["diagonal", "scan", "--catalog-bound", "10000000"]);
    let elapsed = start.elapsed();
    let j = &run.json;
    let survivors = j["survivors"].as_array().map_or(usize::MAX, Vec::len);
    let near = j["near_misses"].as_array().cloned().unwrap_or_default();
    let near_ok = near.len() == 1
        && near[0]["group"] == "L3(4)"
        && u(&near[0]["order"]) == 20160
        && u(&near[0]["odd_out_fourth"]) == 81;
    let pass = run.code == 0 && survivors == 0 && near_ok && elapsed < Duration::from_secs(60);
    verdict(
        5,
        "diagonal scan --catalog-bound 10^7",
        pass,
        elapsed,
        &format!("{survivors} survivors"),
    );
    assert_eq!(survivors, 0);
    assert!(near_ok, "{near:?}");
    assert!(elapsed < Duration::from_secs(60));
}

#[test]
fn ac06_focus_condition_implies_ratio_bound() {
    let start = Instant::now();
    let mut counterexamples = Vec::new();
    for lambda in 1..=200u64 {
        for k in 1..=10_000u64 {
            if !satisfies_focus_condition(k, lambda) {
                continue;
            }
            // oracle: k/λ > √(k+1) − 1  ⟺  k + λ > √(λ²(k+1)), and for an integer c,
            // c > √N exactly when c > ⌊√N⌋
            let (kk, ll) = (k as u128, lambda as u128);
            let oracle = kk + ll > (ll * ll * (kk + 1)).sqrt();
            if !oracle || !k_lambda_ratio_exceeds_sqrt(k, lambda) {
                counterexamples.push((k, lambda));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = counterexamples.is_empty() && elapsed < Duration::from_secs(10);
    verdict(
        6,
        "focus condition implies ratio bound",
        pass,
        elapsed,
        &format!("{} counterexamples", counterexamples.len()),
    );
    assert!(counterexamples.is_empty(), "{counterexamples:?}");
    assert!(elapsed < Duration::from_secs(10));
}

/// Scans λ = 1..=10⁶ for `k = λm(v₀−1)/a` integral with `λ(v₀^m − 1) = k(k−1)`.
fn brute_force_lambda(m: u32, a: u64, v0: u64) -> Option<u64> {
    let v_minus_1 = (v0 as u128).pow(m) - 1;
    let step = m as u128 * (v0 as u128 - 1);
    let a = a as u128;
    for lambda in 1..=1_000_000u128 {
        let lhs = lambda * v_minus_1;
        // k(k−1)·a² with k = λ·step/a, compared without dividing
        let scaled = lambda * step * (lambda * step).saturating_sub(a);
        if scaled > lhs * a * a {
            return None;
        }
        if (lambda * step) % a != 0 {
            continue;
        }
        let k = lambda * step / a;
        if k >= 1 && k * (k - 1) == lhs {
            return Some(lambda as u64);
        }
    }
    None
}

#[test]
fn ac07_lambda_formula_matches_brute_force() {
    let start = Instant::now();
    let mut disagreements = Vec::new();
    let mut found = 0usize;
    for (m, a_max) in [(2u32, 17u64), (3, 14)] {
        for a in 1..=a_max {
            for v0 in 2..=1000u64 {
                let formula = lambda_from(m, a, v0).filter(|&l| k_from(m, a, v0, l).is_some());
                let oracle = brute_force_lambda(m, a, v0);
                found += oracle.is_some() as usize;
                if formula != oracle {
                    disagreements.push((m, a, v0, formula, oracle));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = disagreements.is_empty() && found > 0 && elapsed < Duration::from_secs(30);
    verdict(
        7,
        "lambda_from agrees with the brute-force oracle",
        pass,
        elapsed,
        &format!("{} disagreements, {found} solutions", disagreements.len()),
    );
    assert!(disagreements.is_empty(), "{disagreements:?}");
    assert!(elapsed < Duration::from_secs(30));
}

#[test]
fn ac08_imprimitive_sweep() {
    let start = Instant::now();
    let sweep = imprimitive_sweep(10_000);
    let mut independent_failures = Vec::new();
    for lambda in 2..=10_000u64 {
        let f = imprimitive_family(lambda).unwrap();
        let (v, k) = (lambda * lambda * (lambda + 2), lambda * (lambda + 1));
        let ok = f.v == v
            && f.k == k
            && lambda * (v - 1) == k * (k - 1)
            && (k as u128).pow(2) > lambda as u128 * v as u128
            && 2 <= k
            && k < v
            && k > lambda * lambda.saturating_sub(2)
            && f.options
                .iter()
                .all(|o| o.c * o.d == v && o.l <= o.c && k % o.l == 0 && k / o.l <= o.d);
        if !ok {
            independent_failures.push(lambda);
        }
    }
    let spots = [
        imprimitive_family(3).unwrap().triple(),
        imprimitive_family(4).unwrap().triple(),
    ];
    let elapsed = start.elapsed();
    let pass = sweep.passed()
        && independent_failures.is_empty()
        && spots == [(45, 12, 3), (96, 20, 4)]
        && elapsed < Duration::from_secs(5);
    verdict(
        8,
        "imprimitive sweep 2 ≤ λ ≤ 10^4",
        pass,
        elapsed,
        &format!("spots {spots:?}"),
    );
    assert!(sweep.passed() && independent_failures.is_empty());
    assert_eq!(spots, [(45, 12, 3), (96, 20, 4)]);
    assert!(elapsed < Duration::from_secs(5));
}

/// Decides the radical bound through integer square-root brackets, squaring only when needed.
fn radical_bound_oracle(m: u32, v0: u64) -> bool {
    let y = BigUint::from(2u32) * BigUint::from(v0).pow(m - 1);
    let r = BigUint::from(m as u64 * (v0 - 1) + 1);
    let lhs = &y + 2u32;
    let r2 = &r * &r;
    if lhs < r2 {
        return true;
    }
    let w = lhs - r2;
    let s = y.sqrt();
    if w < &s * 2u32 {
        return true;
    }
    if w >= (&s + 1u32) * 2u32 {
        return false;
    }
    &w * &w < y * 4u32
}

#[test]
fn ac09_radical_bound_pattern() {
    let start = Instant::now();
    let pattern = RadicalPattern::compute(2..=10, 5, 10_000);
    let mut oracle_mismatch = 0;
    for m in 2..=10u32 {
        for v0 in 5..=10_000u64 {
            if radical_bound_oracle(m, v0) != radical_bound_holds(m, v0) {
                oracle_mismatch += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let shape_ok = pattern.all_satisfied == [2, 3]
        && pattern.solutions_for(4) == Some(&[5, 6][..])
        && (5..=10).all(|m| pattern.solutions_for(m) == Some(&[][..]));
    let pass = shape_ok && oracle_mismatch == 0 && elapsed < Duration::from_secs(30);
    verdict(
        9,
        "radical bound pattern over 5 ≤ v0 ≤ 10^4",
        pass,
        elapsed,
        &format!("{oracle_mismatch} oracle mismatches"),
    );
    assert!(shape_ok, "{pattern:?}");
    assert_eq!(oracle_mismatch, 0);
    assert!(elapsed < Duration::from_secs(30));
}

/// Published lower bound `num / den < |T|` for a Lie-type group, as `(num, den)`.
fn lower_bound(family: Family, n: u32, q: u64) -> (BigUint, BigUint) {
    let qb = BigUint::from(q);
    let one = BigUint::from(1u32);
    match family {
        Family::Linear => (qb.pow(n * n - 2), one),
        Family::Unitary => (BigUint::from(q - 1) * qb.pow(n * n - 3), one),
        Family::Symplectic => (qb.pow(n * (n + 1) / 2), BigUint::from(2 * (q - 1).gcd(&2))),
        Family::OrthogonalOdd | Family::OrthogonalPlus | Family::OrthogonalMinus => {
            (qb.pow(n * (n - 1) / 2), BigUint::from(8u32))
        }
        Family::Suzuki | Family::Ree2G2 => (qb.pow(4), one),
        Family::G2 => (qb.pow(12), one),
        _ => (qb.pow(20), one),
    }
}

#[test]
fn ac10_order_formula_sanity() {
    let start = Instant::now();
    let g = |s: &str| s.parse::<SimpleGroupId>().unwrap();
    let small_ok = order(&g("A5")).unwrap() == BigUint::from(60u32)
        && order(&g("L2(7)")).unwrap() == BigUint::from(168u32)
        && order(&g("A6")).unwrap() == BigUint::from(360u32)
        && order(&g("L2(9)")).unwrap() == BigUint::from(360u32);
    let of_360: Vec<String> = enumerate_catalog(&BigUint::from(400u32))
        .into_iter()
        .filter(|(_, f)| f.order == BigUint::from(360u32))
        .map(|(id, _)| id.to_string())
        .collect();

    let mut violations = Vec::new();
    let mut checked = 0usize;
    for family in Family::LIE {
        let dims: Vec<u32> = match family.dimension_range() {
            Some((n0, step)) => (n0..=12).step_by(step as usize).collect(),
            None => vec![0],
        };
        for n in dims {
            for q in 2..=64u64 {
                let Ok(pp) = PrimePower::from_q(q) else {
                    continue;
                };
                if !family.in_domain(n, pp) {
                    continue;
                }
                let id = SimpleGroupId::lie(family, n, pp).unwrap();
                let t = order(&id).unwrap();
                let (num, den) = lower_bound(family, n, q);
                checked += 1;
                if num >= t * den {
                    violations.push(id.to_string());
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = small_ok
        && of_360 == ["A6"]
        && violations.is_empty()
        && checked > 0
        && elapsed < Duration::from_secs(30);
    verdict(
        10,
        "order formulas and lower bounds (q ≤ 64, n ≤ 12)",
        pass,
        elapsed,
        &format!("{checked} groups, {} violations", violations.len()),
    );
    assert!(small_ok);
    assert_eq!(of_360, ["A6"]);
    assert!(violations.is_empty(), "{violations:?}");
    assert!(elapsed < Duration::from_secs(30));
}
