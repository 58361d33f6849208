use hidden_clique::analytics::{
    build_schedule, critical_c, normal_sf, rates_basic, rates_dense, rates_for, rates_variant,
    DenseParams, RateModel, SchedulePolicy, StopReason,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn tail_is_a_survival_function(x in -30.0f64..30.0, dx in 0.0f64..5.0) {
        let (a, b) = (normal_sf(x).unwrap(), normal_sf(x + dx).unwrap());
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!(b <= a);
        prop_assert!((a + normal_sf(-x).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn basic_rates_shape(alpha in 0.01f64..0.99, beta in 0.0f64..4.0, c in 0.0f64..8.0, dc in 0.0f64..2.0) {
        let r = rates_basic(alpha, beta, c).unwrap();
        prop_assert!(r.tau > 0.0 && r.tau < 1.0);
        prop_assert!(r.rho >= r.tau && r.rho <= 1.0 - alpha + 1e-15);
        prop_assert!((r.growth - r.rho / r.tau.sqrt()).abs() <= 1e-12 * r.growth);
        prop_assert!(rates_basic(alpha, beta, c + dc).unwrap().rho >= r.rho);
        prop_assert!(rates_basic(alpha, beta + dc, c).unwrap().tau <= r.tau);
        prop_assert_eq!(rates_basic(alpha, beta, 0.0).unwrap().rho, rates_basic(alpha, beta, 0.0).unwrap().tau);
    }

    #[test]
    fn dense_clique_case_is_basic(alpha in 0.01f64..0.99, beta in 0.0f64..4.0, c in 0.0f64..8.0) {
        let b = rates_basic(alpha, beta, c).unwrap();
        let d = rates_dense(alpha, beta, c, DenseParams::CLIQUE).unwrap();
        prop_assert!((b.tau - d.tau).abs() < 1e-15);
        prop_assert!((b.rho - d.rho).abs() < 1e-12);
    }

    #[test]
    fn variant_rates_shape(alpha in 0.05f64..0.95, beta in 0.0f64..4.0, eta in -1.0f64..3.0, c in 0.0f64..6.0) {
        let r = rates_variant(alpha, beta, eta, c).unwrap();
        let (gamma, delta) = (r.gamma.unwrap(), r.delta.unwrap());
        prop_assert!(gamma > 0.0 && gamma <= alpha);
        prop_assert!(delta >= gamma && delta <= alpha);
        prop_assert!((gamma - alpha * normal_sf(eta).unwrap()).abs() < 1e-15);
        prop_assert!(r.rho >= r.tau);
    }

    #[test]
    fn critical_constant_balances_the_rates(alpha in 0.05f64..0.95, beta in 0.1f64..3.0) {
        // ρ → 1-α as c grows, so a crossing exists iff 1-α > √τ
        let reachable = 1.0 - alpha > normal_sf(beta).unwrap();
        let c = match critical_c(alpha, beta, None, None) {
            Ok(c) => c,
            Err(e) => {
                prop_assert!(!reachable, "{e}");
                return Ok(());
            }
        };
        let r = rates_basic(alpha, beta, c).unwrap();
        prop_assert!((r.rho - r.tau.sqrt()).abs() <= 1e-9);
        prop_assert!(rates_basic(alpha, beta, c * 1.01).unwrap().growth > 1.0);
        prop_assert!(rates_basic(alpha, beta, c * 0.99).unwrap().growth < 1.0);
    }

    #[test]
    fn dense_critical_constant_scales(alpha in 0.1f64..0.9, beta in 0.1f64..2.5, p in 0.05f64..0.6, gap in 0.1f64..0.4) {
        let d = DenseParams::new(p, (p + gap).min(1.0)).unwrap();
        prop_assume!(1.0 - alpha > normal_sf(beta).unwrap() * 1.01);
        let base = critical_c(alpha, beta, None, None).unwrap();
        let dense = critical_c(alpha, beta, None, Some(d)).unwrap();
        prop_assert!((dense - base / d.signal()).abs() <= 1e-6 * dense.max(1.0));
    }

    #[test]
    fn schedules_respect_their_caps(alpha in 0.05f64..0.95, beta in 0.0f64..3.0, c in 2.0f64..10.0, logn in 10u32..24) {
        let n = 1usize << logn;
        let k = ((c * (n as f64).sqrt()) as usize).min(n);
        let r = rates_for(RateModel::Basic, alpha, beta, None, c).unwrap();
        let policy = SchedulePolicy::default();
        match build_schedule(n, k, &r, &policy) {
            Ok(s) => {
                prop_assert_eq!(s.levels.len(), s.t + 1);
                prop_assert!((s.b - (s.a - 1.0)).abs() < 1e-9);
                for (i, l) in s.levels.iter().enumerate() {
                    prop_assert!((l.n - n as f64 * r.tau.powi(i as i32)).abs() <= 1e-6 * l.n.max(1.0));
                    prop_assert!((l.k - k as f64 * r.rho.powi(i as i32)).abs() <= 1e-6 * l.k.max(1.0));
                }
                for l in &s.levels[..s.t] {
                    prop_assert!(l.k < policy.theta_stop * (l.n * l.n.log2()).sqrt());
                    prop_assert!(l.n * r.tau >= policy.n_floor);
                }
                let last = s.final_level();
                let density = last.k >= policy.theta_stop * (last.n * last.n.log2().max(0.0)).sqrt();
                match s.stop_reason {
                    StopReason::TargetDensityReached => prop_assert!(density),
                    StopReason::FloorReached => prop_assert!(!density && last.n * r.tau < policy.n_floor),
                    StopReason::MaxIterations => prop_assert_eq!(s.t, policy.max_iterations),
                }
                prop_assert!(s.k_t() >= 1);
            }
            Err(e) => prop_assert!(!r.is_supercritical() || e.kind() == "SubcriticalParams"),
        }
    }
}
