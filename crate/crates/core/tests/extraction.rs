use chilab::extraction::{
    broom_extract, check_cocktail_chain, cocktail_ks_value, find_rich_stable_set_bruteforce, gyarfas_extract,
    hc_subgraph, path2_value, revalidate, stablechi_extract, Certificate, ExtractOptions, Extraction,
};
use chilab::graph::{enumerate_graphs, mask_vertices};
use chilab::invariants::{chromatic_number, DEFAULT_BUDGET};
use chilab::scalar::{parse_ratio, rat};
use chilab::{Error, FamilySpec, Graph, Rational, Scalar};
use proptest::prelude::*;

mod common;
use common::{arb_graph, brute_a_connected, brute_chi};

fn forced_outcome_is_sound(g: &Graph, run: chilab::Result<Extraction>, q: usize) -> Result<(), TestCaseError> {
    match run {
        Ok(ex) => {
            prop_assert!(revalidate(g, &ex.certificate, q, DEFAULT_BUDGET).is_ok());
            check_f_identity(&ex, q)?;
        }
        Err(Error::Invariant { step, .. }) => prop_assert!(step.starts_with("forced run stopped at"), "{step}"),
        Err(e) => prop_assert!(false, "unexpected error {e}"),
    }
    Ok(())
}

/// `f(i) + r = s^(1-i) (f(1) + r)` with `r = (q + 3a)/(s - 1)`, on the
/// recorded values; here `s = 2`.
fn check_f_identity(ex: &Extraction, q: usize) -> Result<(), TestCaseError> {
    let s = Rational::from_int(2);
    let r = (Rational::from_int(q as i64) + Rational::from_int(3 * ex.trace.a as i64))
        / (s.clone() - Rational::from_int(1));
    let f: Vec<Rational> = ex.trace.fvals.iter().map(|v| parse_ratio(v).unwrap()).collect();
    for (i, fi) in f.iter().enumerate() {
        prop_assert_eq!(fi.clone() + r.clone(), s.powi(-(i as i64)) * (f[0].clone() + r.clone()));
    }
    Ok(())
}

#[test]
fn stablechi_is_conditionally_complete_through_seven() {
    let opts = ExtractOptions::default();
    for n in 1..=7 {
        for g in enumerate_graphs(n, true).unwrap() {
            let cert = stablechi_extract(&g, 2, 1, None, &opts).unwrap();
            revalidate(&g, &cert, 1, DEFAULT_BUDGET).unwrap();
            let brute = find_rich_stable_set_bruteforce(&g, 2, 1, DEFAULT_BUDGET).unwrap();
            match &cert {
                Certificate::RichStableSet { .. } => assert!(brute.is_some()),
                Certificate::HypothesisUnmet { threshold, actual_chi } => {
                    assert_eq!(*actual_chi, brute_chi(&g));
                    assert!(!threshold.is_met_by(*actual_chi));
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }
}

#[test]
fn hc_subgraph_matches_subset_search() {
    for n in 1..=6 {
        for g in enumerate_graphs(n, true).unwrap() {
            let chi = brute_chi(&g) as i64;
            for a in 1..=2usize {
                let target = chi - 2 * a as i64 + 1;
                let brute = (1u64..1 << n).any(|m| {
                    let verts = mask_vertices(m);
                    let sub = g.induced(&verts).unwrap();
                    brute_chi(&sub) as i64 >= target && brute_a_connected(&sub, a + 1)
                });
                let fast = hc_subgraph(&g, a, DEFAULT_BUDGET).unwrap();
                assert_eq!(fast.is_some(), brute, "n = {n}, a = {a}");
                if let Some(verts) = fast {
                    let sub = g.induced(&verts).unwrap();
                    assert!(brute_a_connected(&sub, a + 1));
                    assert!(chromatic_number(&sub).unwrap() as i64 >= target);
                }
            }
        }
    }
}

#[test]
fn faithful_runs_report_unmet_hypotheses_on_small_graphs() {
    let opts = ExtractOptions::default();
    for spec in ["Petersen", "Cycle(7)", "Complete(6)", "Blowup(Cycle(5),2)"] {
        let g: Graph = spec.parse::<FamilySpec>().unwrap().generate().unwrap();
        for ex in [
            gyarfas_extract(&g, 2, 1, 5, &opts),
            broom_extract(&g, 3, 2, 2, 1, &opts),
        ] {
            let ex = ex.unwrap();
            assert!(matches!(ex.certificate, Certificate::HypothesisUnmet { .. }), "{spec}");
            revalidate(&g, &ex.certificate, 1, DEFAULT_BUDGET).unwrap();
        }
    }
}

#[test]
fn cocktail_chain_holds_on_a_grid() {
    for m in 1..=4 {
        for s in 2..=4 {
            for k in 5..=8 {
                for r in [2, 3, 6, 9, 18] {
                    assert!(check_cocktail_chain(m, s, k, r), "m={m} s={s} k={k} r={r}");
                }
            }
        }
    }
}

#[test]
fn threshold_values_agree_across_scalars() {
    for (m, s, k, r) in [(1, 2, 5, 3), (2, 2, 5, 6), (2, 3, 6, 9)] {
        let exact: Rational = cocktail_ks_value(m, s, k, r);
        let float: f64 = cocktail_ks_value(m, s, k, r);
        let ratio = float / Scalar::to_f64(&exact);
        assert!((ratio - 1.0).abs() < 1e-12);
    }
    let q = rat(3, 1);
    assert_eq!(path2_value::<Rational>(2, 5, &q, 3), rat(4 * (6 + 42 - 14), 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn forced_gyarfas_is_sound(g in arb_graph(12).prop_filter("nonempty", |g| g.n() > 0)) {
        forced_outcome_is_sound(&g, gyarfas_extract(&g, 2, 1, 5, &ExtractOptions::forced()), 1)?;
    }

    #[test]
    fn forced_broom_is_sound(g in arb_graph(12).prop_filter("nonempty", |g| g.n() > 0)) {
        forced_outcome_is_sound(&g, broom_extract(&g, 3, 2, 2, 1, &ExtractOptions::forced()), 1)?;
    }

    #[test]
    fn forced_runs_on_random_families(seed in any::<u64>()) {
        let g = FamilySpec::random(14, 1, 2, seed).generate().unwrap();
        forced_outcome_is_sound(&g, gyarfas_extract(&g, 2, 1, 5, &ExtractOptions::forced()), 1)?;
    }
}
