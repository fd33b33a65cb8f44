use locinfo::families::{Isotropic, StateFamily, Symmetry, Werner};
use locinfo::random::random_state;
use locinfo::sdp::{
    commutant_reduce_lp, primal_fidelity_sdp, primal_fidelity_sdp_mixed, solvers, SdpOptions, SdpProblem,
    Variant,
};
use locinfo::BipartiteDims;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn primal_below_dual_and_feasible(seed in any::<u64>(), k in 0.5f64..3.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_state(4, &mut rng);
        let p = SdpProblem::new(rho, BipartiteDims::square(2), k, Variant::Ppt).unwrap();
        let r = primal_fidelity_sdp(&p, &SdpOptions::default()).unwrap();
        prop_assert!(r.residuals.max() <= 1e-7);
        prop_assert!(r.value <= p.dual_certificate(30, seed).unwrap() + 1e-6);
    }

    #[test]
    fn projected_ascent_agrees_with_oracle(werner in any::<bool>(), u in 0.0f64..=1.0, k in 0.5f64..8.5) {
        let (family, sym): (&dyn StateFamily, Symmetry) =
            if werner { (&Werner, Symmetry::Uu) } else { (&Isotropic, Symmetry::UuStar) };
        let (lo, hi) = family.param_range(3);
        let rho = family.state(3, lo + (hi - lo) * u).unwrap();
        let p = SdpProblem::new(rho, BipartiteDims::square(3), k, Variant::Ppt).unwrap();
        let a = primal_fidelity_sdp(&p, &SdpOptions::default()).unwrap();
        let b = commutant_reduce_lp(&p, sym).unwrap();
        prop_assert!((a.value - b.value).abs() <= 1e-6, "{} vs {}", a.value, b.value);
    }

    #[test]
    fn mixed_variant_below_its_dual(u in 0.0f64..=1.0, ks in 1.0f64..2.0) {
        let (lo, hi) = Werner.param_range(2);
        let rho = Werner.state(2, lo + (hi - lo) * u).unwrap();
        let p = SdpProblem::new(rho, BipartiteDims::square(2), 1.5, Variant::Mixed { ks }).unwrap();
        let r = primal_fidelity_sdp_mixed(&p, &SdpOptions::default()).unwrap();
        prop_assert!(r.residuals.max() <= 1e-7);
        prop_assert!(r.value <= p.dual_certificate(30, 5).unwrap() + 1e-6);
        let lp = commutant_reduce_lp(&p, Symmetry::Uu).unwrap();
        prop_assert!((r.value - lp.value).abs() <= 1e-6, "{} vs {}", r.value, lp.value);
    }
}

#[test]
fn optimum_grows_with_trace_budget() {
    let rho = Werner.state(3, -0.7).unwrap();
    let mut last = 0.0;
    for i in 1..=8 {
        let p = SdpProblem::new(rho.clone(), BipartiteDims::square(3), i as f64, Variant::Ppt).unwrap();
        let v = primal_fidelity_sdp(&p, &SdpOptions::default()).unwrap().value;
        assert!(v >= last - 1e-9, "K={i}");
        last = v;
    }
}

#[test]
fn singlet_fidelity_drops_above_rate_one() {
    let rho = Werner.state(2, -1.0).unwrap();
    let dims = BipartiteDims::square(2);
    let at = SdpProblem::from_rate(&rho, dims, 1.0, 1, Variant::Ppt).unwrap();
    let above = SdpProblem::from_rate(&rho, dims, 1.2, 1, Variant::Ppt).unwrap();
    let opts = SdpOptions::default();
    assert!((primal_fidelity_sdp(&at, &opts).unwrap().value - 1.0).abs() < 1e-6);
    assert!(primal_fidelity_sdp(&above, &opts).unwrap().value < 1.0 - 1e-3);
}

#[test]
fn two_copy_instance_solves() {
    let rho = Isotropic.state(2, 0.9).unwrap();
    let p = SdpProblem::from_rate(&rho, BipartiteDims::square(2), 0.8, 2, Variant::Ppt).unwrap();
    let r = solvers().get("projected-ascent").unwrap().solve(&p, &SdpOptions::default()).unwrap();
    assert!(r.converged);
    assert!(r.value <= p.dual_certificate(50, 2).unwrap() + 1e-6);
}
