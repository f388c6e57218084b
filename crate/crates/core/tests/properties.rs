use nse_core::construct::{invert_profile, truncation_radius, SolvableModel};
use nse_core::evolve::boost;
use nse_core::field::Grid;
use nse_core::models::{Family, ModelSpec, Support};
use nse_core::numerics::{log_gamma, SpectralGrid};
use nse_core::verify::{rel_dev, uncertainty, Criterion};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (0.3f64..3.0, 1u32..=3).prop_map(|(omega, dim)| Family::Gausson { omega, dim }),
        (0.1f64..2.0, 0.1f64..2.0).prop_map(|(omega1, omega2)| Family::TrappedGausson { omega1, omega2 }),
        (0.3f64..3.0).prop_map(|a| Family::Cosh1D { a }),
        (0.3f64..3.0, 1u32..=3).prop_map(|(a, dim)| Family::CoshND { a, dim }),
        (0.3f64..3.0, 0.2f64..3.0).prop_map(|(a, lambda)| Family::PowerLaw { a, lambda }),
        (0.3f64..3.0, 1.2f64..6.0).prop_map(|(l, beta)| Family::TanSquared { l, beta }),
        (0.3f64..3.0, 0.05f64..5.0).prop_map(|(a, b0)| Family::SoftenedDelta { a, b0 }),
        (0.3f64..3.0).prop_map(|a_b| Family::Coulomb { a_b }),
    ]
}

/// Radius as a fraction of the region where the profile is resolvable.
fn radius(spec: &ModelSpec, fraction: f64) -> f64 {
    match spec.support() {
        Support::Box { half_width } => fraction * half_width * (1.0 - 1e-6),
        Support::Unbounded => fraction * 6.0 * spec.length_scale(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn analytic_and_quadrature_normalizations_agree(f in family()) {
        let spec = ModelSpec::new(f).unwrap();
        if let Some(c0) = spec.analytic_norm_constant().unwrap() {
            let numeric = spec.norm_constant_numeric().unwrap();
            prop_assert!(rel_dev(numeric, c0) < 1e-8, "{f:?}: {numeric} vs {c0}");
        }
    }

    #[test]
    fn nonlinear_rewrite_reproduces_the_potential(f in family(), fraction in 0.0f64..1.0) {
        let spec = ModelSpec::new(f).unwrap();
        let model = spec.build().unwrap();
        let mut r = radius(&spec, fraction);
        if matches!(f, Family::Coulomb { .. }) {
            r = r.max(1e-3 * spec.length_scale());
        }
        let u = spec.potential(r).unwrap();
        let nl = &model.nonlinearity;
        let rebuilt = nl.scale * nl.shape(model.ground.profile(r)).unwrap() + nl.external_potential(r);
        let tol = 1e-10 * u.abs().max(1e-3 * spec.energy().abs());
        prop_assert!((rebuilt - u).abs() <= tol, "{f:?} r={r}: {rebuilt} vs {u}");
    }

    #[test]
    fn profile_is_decreasing(f in family(), fraction in 0.0f64..0.99) {
        let spec = ModelSpec::new(f).unwrap();
        let gs = spec.ground_state().unwrap();
        let r = radius(&spec, fraction);
        let r2 = radius(&spec, fraction + 0.01);
        prop_assert_eq!(gs.profile(0.0), 1.0);
        prop_assert!(gs.profile(r) > gs.profile(r2));
    }

    #[test]
    fn inversion_round_trips(f in family(), fraction in 0.01f64..0.9) {
        let spec = ModelSpec::new(f).unwrap();
        let model = spec.build().unwrap();
        let r = fraction * truncation_radius(&model);
        let back = invert_profile(&model, model.profile(r)).unwrap();
        prop_assert!((back - r).abs() <= 1e-10 * model.length_scale(), "{f:?}: {back} vs {r}");
    }

    #[test]
    fn boosted_modulus_is_the_translated_profile(v in -2.0f64..2.0, t in 0.0f64..5.0, a in 0.5f64..2.0) {
        let model = ModelSpec::cosh_1d(a).unwrap().build().unwrap();
        let grid = Grid::Spectral(SpectralGrid::new(256, -30.0, 30.0).unwrap());
        let field = boost(&model.ground, &grid, v, t);
        for (j, z) in field.samples.iter().enumerate() {
            let expected = model.ground.norm_const * model.ground.profile(grid.x(j) - v * t);
            prop_assert!((z.norm() - expected).abs() <= 1e-14 * model.ground.norm_const);
        }
    }

    #[test]
    fn uncertainty_product_exceeds_the_minimum(log_lambda in (1e-4f64).ln()..(2.0f64).ln(), a in 0.5f64..2.0) {
        let r = uncertainty(&ModelSpec::power_law(a, log_lambda.exp()).unwrap()).unwrap();
        prop_assert!(r.product_over_hbar > 0.5);
    }

    #[test]
    fn log_gamma_recurrence(x in 0.1f64..50.0) {
        let step = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap();
        prop_assert!((step - x.ln()).abs() < 1e-12 * x.ln().abs().max(1.0));
    }

    #[test]
    fn relative_criterion_matches_rel_dev(m in -10.0f64..10.0, e in -10.0f64..10.0, tol in 1e-6f64..1.0) {
        prop_assert_eq!(Criterion::RelDev(tol).holds(m, e), rel_dev(m, e) < tol);
        prop_assert_eq!(Criterion::Between(e.min(m), e.max(m)).holds(m, e), true);
    }
}
