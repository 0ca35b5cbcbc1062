//! Independent oracles and property tests for the invariants of each module.

use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use jacobi_lebesgue::lebesgue::lebesgue_constant_with;
use jacobi_lebesgue::nodes::legendre_derivative_scaling;
use jacobi_lebesgue::{
    barycentric_weights, basis_eval, build_point_set, collocation_residual, differentiation_matrix,
    erdos_lower_bound, interp_derivative_error, interpolate, jacobi_deriv, jacobi_eval,
    jacobi_zeros, lebesgue_constant, lebesgue_function, CollocationProblem, JacobiParams,
    PointSetFamily, SearchSettings,
};

/// Explicit sum `Σ_s C(n+α, n-s) C(n+β, s) ((τ-1)/2)^s ((τ+1)/2)^(n-s)`.
fn jacobi_explicit(alpha: f64, beta: f64, n: usize, tau: f64) -> f64 {
    fn binom(top: f64, k: usize) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (top - i as f64) / (i + 1) as f64)
    }
    (0..=n)
        .map(|s| {
            binom(n as f64 + alpha, n - s)
                * binom(n as f64 + beta, s)
                * ((tau - 1.0) / 2.0).powi(s as i32)
                * ((tau + 1.0) / 2.0).powi((n - s) as i32)
        })
        .sum()
}

/// Lagrange basis straight from the product definition.
fn lagrange_product(nodes: &[f64], j: usize, tau: f64) -> f64 {
    nodes
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .map(|(_, &tk)| (tau - tk) / (nodes[j] - tk))
        .product()
}

fn params() -> impl Strategy<Value = JacobiParams> {
    (-0.99f64..=2.0, -0.99f64..=2.0).prop_map(|(a, b)| JacobiParams::new(a, b).unwrap())
}

fn family() -> impl Strategy<Value = PointSetFamily> {
    prop::sample::select(PointSetFamily::BUILDABLE.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: std::env::var("PT_CASES").map_or(64, |v| v.parse().unwrap()), failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn recurrence_matches_explicit_sum(p in params(), n in 0usize..=16, tau in -1.0f64..=1.0) {
        let got = jacobi_eval(p, n, tau).unwrap();
        let want = jacobi_explicit(p.alpha(), p.beta(), n, tau);
        prop_assert!((got - want).abs() <= 1e-10 * want.abs().max(1.0), "{got} vs {want}");
    }

    #[test]
    fn flip_identity(p in params(), n in 0usize..=50) {
        for k in 0..=100 {
            let tau = -1.0 + 0.02 * k as f64;
            let lhs = jacobi_eval(p, n, tau).unwrap();
            let rhs = jacobi_eval(p.swapped(), n, -tau).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((lhs - sign * rhs).abs() <= 1e-11 * lhs.abs().max(1.0));
        }
    }

    #[test]
    fn derivative_matches_central_difference(p in params(), n in 1usize..=40, tau in -0.95f64..=0.95) {
        let h = 1e-6;
        let fd = (jacobi_eval(p, n, tau + h).unwrap() - jacobi_eval(p, n, tau - h).unwrap()) / (2.0 * h);
        let d = jacobi_deriv(p, n, tau).unwrap();
        let scale = d.abs().max(jacobi_eval(p, n, tau).unwrap().abs()).max(1.0);
        prop_assert!((d - fd).abs() <= 1e-6 * scale, "{d} vs {fd}");
    }

    #[test]
    fn barycentric_basis_matches_product_form(
        mut nodes in prop::collection::vec(-1.0f64..=1.0, 2..12),
        tau in -1.0f64..=1.0,
    ) {
        nodes.sort_by(f64::total_cmp);
        nodes.dedup_by(|a, b| (*a - *b).abs() < 1e-2);
        prop_assume!(nodes.len() >= 2);
        let basis = barycentric_weights(&nodes).unwrap();
        let w = basis.weights();
        prop_assert!(w.windows(2).all(|p| p[0] * p[1] < 0.0), "weights must alternate");
        let mass: f64 = (0..nodes.len()).map(|j| lagrange_product(&nodes, j, tau).abs()).sum();
        for j in 0..nodes.len() {
            let got = basis_eval(&basis, j, tau).unwrap();
            let want = lagrange_product(&nodes, j, tau);
            // The second form loses about eps·(Σ|ℓ|)² when τ sits far from a node cluster.
            prop_assert!((got - want).abs() <= 64.0 * f64::EPSILON * mass * mass.max(1.0), "{got} vs {want}, Σ|ℓ| = {mass}");
        }
    }

    #[test]
    fn kronecker_and_partition_of_unity(f in family(), n in 1usize..=40, seed in any::<u64>()) {
        let set = build_point_set(f, n).unwrap();
        let basis = barycentric_weights(set.nodes()).unwrap();
        let mut state = seed;
        for _ in 0..1001 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let tau = -1.0 + 2.0 * ((state >> 11) as f64 / (1u64 << 53) as f64);
            let ell = basis.basis_values(tau).unwrap();
            let sum: f64 = ell.iter().sum();
            let mass: f64 = ell.iter().map(|l| l.abs()).sum();
            prop_assert!((sum - 1.0).abs() <= 1e-12 * mass, "{sum} with Σ|ℓ| = {mass}");
            prop_assert!((interpolate(&basis, &vec![1.0; basis.len()], tau).unwrap() - 1.0).abs() <= 1e-12);
        }
        for (i, &t) in set.nodes().iter().enumerate() {
            let v = basis.basis_values(t).unwrap();
            for (j, &l) in v.iter().enumerate() {
                prop_assert_eq!(l, if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn refinement_is_monotone(f in family(), n in 2usize..=40) {
        let basis = barycentric_weights(build_point_set(f, n).unwrap().nodes()).unwrap();
        let coarse = lebesgue_constant(&basis).unwrap().constant;
        let fine = lebesgue_constant_with(&basis, SearchSettings { samples_per_interval: 33, tolerance: 5e-10 })
            .unwrap()
            .constant;
        prop_assert!(fine >= coarse - 1e-8);
    }
}

#[test]
fn legendre_and_radau_sup_bounds() {
    let grid: Vec<f64> = (0..10_001).map(|k| -1.0 + 2.0 * k as f64 / 10_000.0).collect();
    for n in [1, 2, 17, 64, 150, 200] {
        let mut lmax = 0.0_f64;
        let mut rmax = 0.0_f64;
        for &t in &grid {
            lmax = lmax.max(jacobi_eval(JacobiParams::LEGENDRE, n, t).unwrap().abs());
            rmax = rmax.max(jacobi_eval(JacobiParams::RADAU, n - 1, t).unwrap().abs());
        }
        assert!(lmax <= 1.0 + 1e-12);
        assert!(rmax <= n as f64 + 1e-10);
        let end = jacobi_eval(JacobiParams::RADAU, n - 1, 1.0).unwrap();
        assert!((end - n as f64).abs() <= 1e-12 * n as f64);
    }
}

#[test]
fn zeros_match_closed_forms_for_small_degree() {
    // P_3 = (5τ³ - 3τ)/2 → 0, ±√(3/5)
    let z = jacobi_zeros(JacobiParams::LEGENDRE, 3).unwrap();
    assert_abs_diff_eq!(z[0], -(0.6f64).sqrt(), epsilon = 1e-15);
    assert_eq!(z[1], 0.0);
    // P_2^(1,0) = (5τ² + 2τ - 1)·3/4 → (-1 ± √6)/5
    let z = jacobi_zeros(JacobiParams::RADAU, 2).unwrap();
    assert_abs_diff_eq!(z[0], (-1.0 - 6f64.sqrt()) / 5.0, epsilon = 1e-15);
    assert_abs_diff_eq!(z[1], (-1.0 + 6f64.sqrt()) / 5.0, epsilon = 1e-15);
}

#[test]
fn degree_exactness_for_every_family() {
    let probes = [-1.0, -0.731, -0.2, 0.05, 0.618, 1.0];
    for family in PointSetFamily::BUILDABLE {
        for n in [1, 2, 5, 13, 30, 60] {
            let set = build_point_set(family, n).unwrap();
            if set.len() < 2 {
                continue;
            }
            let basis = barycentric_weights(set.nodes()).unwrap();
            let d = differentiation_matrix(&basis).unwrap();
            for deg in 0..set.len() {
                let vals: Vec<f64> = set.nodes().iter().map(|t| t.powi(deg as i32)).collect();
                for &t in &probes {
                    let got = interpolate(&basis, &vals, t).unwrap();
                    assert!((got - t.powi(deg as i32)).abs() <= 1e-9, "{family} N={n} d={deg}");
                }
                // Equispaced derivatives of high-degree monomials are poorly
                // conditioned; the 1e-9 bound is for the Jacobi-based families.
                if family == PointSetFamily::Equidistant && set.len() > 14 {
                    continue;
                }
                let slopes = d.apply(&vals).unwrap();
                for (k, &t) in set.nodes().iter().enumerate() {
                    let want = if deg == 0 { 0.0 } else { deg as f64 * t.powi(deg as i32 - 1) };
                    let tol = 1e-9 * (deg as f64).powi(2).max(1.0);
                    assert!((slopes[k] - want).abs() <= tol, "{family} N={n} d={deg} k={k}");
                }
            }
        }
    }
}

#[test]
fn lebesgue_function_is_one_at_nodes() {
    for family in PointSetFamily::BUILDABLE {
        let set = build_point_set(family, 9).unwrap();
        let basis = barycentric_weights(set.nodes()).unwrap();
        for &t in set.nodes() {
            assert_eq!(lebesgue_function(&basis, t).unwrap(), 1.0);
        }
    }
}

#[test]
fn erdos_floor_for_every_family() {
    for family in PointSetFamily::BUILDABLE {
        for n in 2..=100 {
            let set = build_point_set(family, n).unwrap();
            let lambda = lebesgue_constant(&barycentric_weights(set.nodes()).unwrap()).unwrap().constant;
            assert!(lambda >= erdos_lower_bound(set.len()) - 1e-6, "{family} N={n}");
        }
    }
}

#[test]
fn mirror_families_share_constants() {
    let pairs = [
        (PointSetFamily::RadauLeft, PointSetFamily::RadauRight),
        (PointSetFamily::GaussPlusLeftEnd, PointSetFamily::GaussPlusRightEnd),
        (PointSetFamily::RadauRightPlusLeftEnd, PointSetFamily::RadauLeftPlusRightEnd),
    ];
    for (a, b) in pairs {
        for n in [2, 3, 7, 20, 51, 100] {
            let la = lebesgue_constant(&barycentric_weights(build_point_set(a, n).unwrap().nodes()).unwrap())
                .unwrap()
                .constant;
            let lb = lebesgue_constant(&barycentric_weights(build_point_set(b, n).unwrap().nodes()).unwrap())
                .unwrap()
                .constant;
            assert_abs_diff_eq!(la, lb, epsilon = 1e-9);
        }
    }
}

#[test]
fn lebesgue_function_between_two_smallest_nodes_grows_like_sqrt_n() {
    // Floors frozen from a dense brute-force pass over N = 10..100
    // (observed minima 1.4794 and 0.8866).
    let floors = [(PointSetFamily::GaussPlusRightEnd, 1.47), (PointSetFamily::RadauRight, 0.88)];
    for (family, floor) in floors {
        for n in 10..=100 {
            let set = build_point_set(family, n).unwrap();
            let basis = barycentric_weights(set.nodes()).unwrap();
            let mid = 0.5 * (set.nodes()[0] + set.nodes()[1]);
            let ratio = lebesgue_function(&basis, mid).unwrap() / (n as f64).sqrt();
            assert!(ratio >= floor, "{family} N={n}: {ratio}");
        }
    }
}

#[test]
fn legendre_derivative_at_zeros_stays_in_frozen_bracket() {
    // Bracket frozen from a brute-force pass over N = 10..200
    // (observed range [0.14966, 0.32880]).
    for n in 10..=200 {
        let (lo, hi) = legendre_derivative_scaling(n).unwrap();
        assert!(lo >= 0.149 && hi <= 0.329, "N={n}: [{lo}, {hi}]");
    }
}

#[test]
fn residual_bounded_by_derivative_error() {
    for name in ["linear", "exp", "riccati", "exp-shifted"] {
        let p = CollocationProblem::by_name(name).unwrap();
        for family in PointSetFamily::BUILDABLE {
            for n in [3, 8, 16] {
                let r = collocation_residual(&p, family, n).unwrap();
                let e = interp_derivative_error(&p, family, n).unwrap();
                for rk in &r.r {
                    assert!(rk.abs() <= e + 1e-10, "{name} {family} N={n}");
                }
            }
        }
    }
}

#[test]
fn residual_decays_for_smooth_problem() {
    let p = CollocationProblem::by_name("exp").unwrap();
    let sups: Vec<f64> = [5, 10, 15]
        .iter()
        .map(|&n| collocation_residual(&p, PointSetFamily::GaussPlusLeftEnd, n).unwrap().sup_norm)
        .collect();
    assert!(sups[0] > sups[1] && sups[1] > sups[2]);
}
