mod common;

use proptest::prelude::*;
use sgs_core::{Bound, EvalMode, NSet, Tri};

fn arb_nset() -> impl Strategy<Value = NSet> {
    let finite = prop::collection::vec(1u64..40, 1..6).prop_map(|v| NSet::finite(v).unwrap());
    let tailed = (
        prop::collection::vec(1u64..12, 0..4),
        1u64..15,
        1u64..7,
        prop::collection::vec(any::<bool>(), 7),
    )
        .prop_map(|(head, offset, period, bits)| {
            let mut residues: Vec<u64> = (0..period).filter(|&r| bits[r as usize]).collect();
            if residues.is_empty() {
                residues.push(bits.len() as u64 % period);
            }
            NSet::with_tail(head, offset, period, residues).unwrap()
        });
    prop_oneof![finite, tailed]
}

proptest! {
    #[test]
    fn literal_round_trip(s in arb_nset()) {
        let back: NSet = s.to_literal().parse().unwrap();
        prop_assert_eq!(&back, &s);
    }

    #[test]
    fn json_round_trip(s in arb_nset()) {
        let back: NSet = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn canonical_form_is_structural(s in arb_nset(), extra in 1u64..4) {
        // Re-expressing the tail with a multiple of its period and a later
        // offset denotes the same set, so it must normalise to the same value.
        let tail = match s.tail() { Some(t) => t.clone(), None => return Ok(()) };
        let period = tail.period * extra;
        let offset = tail.offset + tail.period;
        let head: Vec<u64> = s.elements_up_to(offset - 1);
        let residues: Vec<u64> = (0..period).filter(|&r| s.contains(offset + r)).collect();
        prop_assert_eq!(NSet::with_tail(head, offset, period, residues).unwrap(), s);
    }

    #[test]
    fn invariants_hold(s in arb_nset()) {
        prop_assert!(s.head().windows(2).all(|w| w[0] < w[1]));
        prop_assert!(s.head().iter().all(|&h| h >= 1));
        if let Some(t) = s.tail() {
            prop_assert!(s.head().iter().all(|&h| h < t.offset));
            prop_assert!(t.residues.iter().all(|&r| r < t.period));
        }
        prop_assert!(s.iter().next().is_some());
    }

    #[test]
    fn membership_matches_iteration(s in arb_nset()) {
        let listed = s.elements_up_to(120);
        for n in 1..=120u64 {
            prop_assert_eq!(s.contains(n), listed.contains(&n));
        }
        let coeffs = s.gf_coeffs(120);
        prop_assert_eq!(coeffs[0], 0);
        for n in 1..=120usize {
            prop_assert_eq!(coeffs[n] == 1, s.contains(n as u64));
        }
    }

    #[test]
    fn gf_eval_is_the_partial_sum(s in arb_nset(), x in 0.0f64..0.95) {
        let n = 400usize;
        let partial: f64 = s.gf_coeffs(n).iter().enumerate().map(|(k, &c)| c as f64 * x.powi(k as i32)).sum();
        let closed = s.gf_eval(x, EvalMode::Exact).unwrap();
        let bound = x.powi(n as i32 + 1) / (1.0 - x);
        prop_assert!((closed - partial).abs() <= bound + 1e-12 * closed.max(1.0));
    }

    #[test]
    fn stats_agree_with_enumeration(s in arb_nset()) {
        let st = s.stats();
        let horizon = s.preperiod() + 4 * s.period() + 40;
        let elems = s.elements_up_to(horizon);
        prop_assert_eq!(st.min, elems[0]);
        prop_assert_eq!(st.is_finite, Tri::from(s.max().is_some()));
        for &e in &elems {
            prop_assert_eq!((e - st.min) % st.diff_gcd.max(1), 0, "diff_gcd {} vs {}", st.diff_gcd, e);
        }
        let brute_gcd = elems.iter().fold(0u64, |g, &e| num_integer::gcd(g, e - elems[0]));
        prop_assert_eq!(st.diff_gcd, brute_gcd);
        let widest = elems.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0);
        match st.gap_sup {
            Bound::Finite(d) => prop_assert_eq!(d, widest),
            other => prop_assert!(false, "gap_sup {other:?}"),
        }
        let cofinite = s.tail().is_some_and(|t| t.period == 1);
        prop_assert_eq!(st.is_cofinite, Tri::from(cofinite));
        prop_assert_eq!(st.eventually_periodic_gaps, Tri::True);
    }

    #[test]
    fn direct_sums_have_unique_representations(t1 in arb_nset(), t2 in arb_nset(), picks in prop::collection::vec(0usize..10_000, 200)) {
        // Build S as the sumset; keep only cases where it is direct.
        let horizon = 300u64;
        let a = t1.elements_up_to(horizon);
        let b = t2.elements_up_to(horizon);
        let mut reps = vec![0u32; horizon as usize + 1];
        for &x in &a {
            for &y in &b {
                if x + y <= horizon {
                    reps[(x + y) as usize] += 1;
                }
            }
        }
        let sums: Vec<u64> = (1..=horizon).filter(|&n| reps[n as usize] > 0).collect();
        prop_assume!(reps.iter().all(|&r| r <= 1));
        let s = match (t1.max(), t2.max()) {
            (Some(_), Some(_)) => NSet::finite(sums.clone()).unwrap(),
            _ => return Ok(()),
        };
        prop_assert_eq!(NSet::direct_sum_check(&t1, &t2, &s, horizon), Tri::True);
        for p in picks {
            let n = sums[p % sums.len()];
            let count = a.iter().filter(|&&x| x < n && b.contains(&(n - x))).count();
            prop_assert_eq!(count, 1);
        }
    }

    #[test]
    fn truncation_is_intersection(s in arb_nset(), n in 1u64..60) {
        match s.truncate(n) {
            Ok(t) => {
                prop_assert!(t.max().is_some());
                prop_assert_eq!(t.elements_up_to(n), s.elements_up_to(n));
                prop_assert!(t.max().unwrap() <= n);
            }
            Err(_) => prop_assert!(s.min() > n),
        }
    }
}

#[test]
fn direct_sum_with_infinite_part() {
    let (t1, t2, s) = (common::set("1,2"), common::set("2+2k"), common::set("3+1k"));
    assert_eq!(NSet::direct_sum_check(&t1, &t2, &s, 40), Tri::True);
    // Brute force over a window: exactly one representation each.
    for n in s.elements_up_to(200) {
        let reps = t1
            .elements_up_to(n)
            .iter()
            .filter(|&&x| x < n && t2.contains(n - x))
            .count();
        assert_eq!(reps, 1, "n = {n}");
    }
    assert_eq!(NSet::direct_sum_check(&t1, &t2, &s, 3), Tri::Unknown);
    assert_eq!(
        NSet::direct_sum_check(&t1, &t1, &common::set("2,3,4"), 40),
        Tri::False
    );
}
