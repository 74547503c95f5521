use proptest::prelude::*;
use su11::analytic::{
    bg_coefficients, bg_rotation_transform, bg_su11_transform, eval_f, eval_g, inverse_laplace_g_to_f,
    laplace_roundtrip_f, mobius_transform_g, overlap_perelomov_bg, perelomov_coefficients,
};
use su11::{BargmannIndex, CoefficientState, Complex64 as C, ErrorKind, GroupElement, HyperbolicParams, QuadratureSpec};

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn k(v: f64) -> BargmannIndex {
    BargmannIndex::new(v).unwrap()
}

fn complex(r: f64) -> impl Strategy<Value = C> {
    (0.0..r, -std::f64::consts::PI..std::f64::consts::PI).prop_map(|(m, a)| C::from_polar(m, a))
}

fn state(len: usize) -> impl Strategy<Value = CoefficientState> {
    (0.1f64..2.5, prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)).prop_map(|(kv, v)| {
        let mut coeffs: Vec<C> = v.into_iter().map(|(re, im)| c(re, im)).collect();
        coeffs[0] += 1.5;
        CoefficientState::new(k(kv), coeffs).unwrap().normalized().unwrap()
    })
}

fn group(max_tau: f64) -> impl Strategy<Value = GroupElement> {
    (0.0..max_tau, 0.0..6.2f64, 0.0..6.2f64).prop_map(|(tau, phi, rot)| {
        let g = GroupElement::from_hyperbolic(HyperbolicParams::new(tau, phi).unwrap());
        g.compose(&GroupElement::new(C::from_polar(1.0, rot), c(0.0, 0.0)).unwrap())
    })
}

fn max_diff(a: &CoefficientState, b: &CoefficientState) -> f64 {
    let n = a.coeffs().len().max(b.coeffs().len());
    let (a, b) = (a.with_truncation(n - 1), b.with_truncation(n - 1));
    a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mobius_action_is_unitary(s in state(6), g in group(2.0)) {
        let t = mobius_transform_g(&s, &g).unwrap();
        prop_assert!((t.norm_sqr() - 1.0).abs() < 1e-9, "norm² {}", t.norm_sqr());
    }

    #[test]
    fn mobius_action_composes(s in state(4), g1 in group(1.2), g2 in group(1.2)) {
        let stepwise = mobius_transform_g(&mobius_transform_g(&s, &g1).unwrap(), &g2).unwrap();
        let direct = mobius_transform_g(&s, &g1.compose(&g2)).unwrap();
        // equal up to the multiplier e^{4πikm} of the principal branch of ā^{−2k}
        let overlap = direct.inner(&stepwise);
        prop_assert!((overlap.norm() - 1.0).abs() < 1e-9);
        let phase = overlap / overlap.norm();
        let multiplier = |m: f64| C::from_polar(1.0, 4.0 * std::f64::consts::PI * s.k().value() * m);
        prop_assert!([-1.0, 0.0, 1.0].iter().any(|&m| (phase - multiplier(m)).norm() < 1e-9), "phase {phase}");
        prop_assert!(max_diff(&stepwise, &direct.scaled(phase)) < 1e-9);
    }

    #[test]
    fn inverse_undoes_the_action(s in state(5), g in group(1.5)) {
        let back = mobius_transform_g(&mobius_transform_g(&s, &g).unwrap(), &g.inverse()).unwrap();
        prop_assert!(max_diff(&back, &s) < 1e-9);
    }

    #[test]
    fn laguerre_law_matches_disk_route(s in state(5), g in group(1.5), z in complex(3.0)) {
        prop_assume!(g.b().norm() > 1e-6);
        let via_disk = eval_f(&mobius_transform_g(&s, &g).unwrap(), z);
        let laguerre = bg_su11_transform(&s, &g, z).unwrap();
        prop_assert!((via_disk - laguerre).norm() < 1e-9 * via_disk.norm().max(1.0));
    }

    #[test]
    fn laguerre_law_matches_inverse_laplace(s in state(4), g in group(1.0), zr in 0.1f64..3.0, za in -1.2f64..1.2) {
        prop_assume!(g.b().norm() > 1e-6);
        let z = C::from_polar(zr, za);
        let t = mobius_transform_g(&s, &g).unwrap();
        let contour = inverse_laplace_g_to_f(&t, z, &QuadratureSpec::default()).unwrap();
        let laguerre = bg_su11_transform(&s, &g, z).unwrap();
        prop_assert!((contour - laguerre).norm() < 1e-8 * laguerre.norm().max(1.0));
    }

    #[test]
    fn laplace_round_trip(s in state(5), zr in 0.05f64..5.0, za in -1.5f64..1.5) {
        let z = C::from_polar(zr, za);
        let back = laplace_roundtrip_f(&s, z, &QuadratureSpec::default()).unwrap();
        let direct = eval_f(&s, z);
        prop_assert!((back - direct).norm() < 1e-9 * direct.norm().max(1.0));
    }

    #[test]
    fn overlap_is_a_contraction(zeta in complex(0.95), z in complex(5.0), kv in 0.1f64..3.0) {
        prop_assume!(z.norm() > 1e-6);
        let o = overlap_perelomov_bg(zeta, z, k(kv)).unwrap();
        prop_assert!(o.norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn k3_raises_with_k_plus(s in state(6)) {
        // [K₃, K₊] = K₊ and [K₃, K₋] = −K₋ on a state with headroom
        let s = s.with_truncation(8);
        let a = s.apply_k_plus().apply_k3();
        let b = s.apply_k3().apply_k_plus();
        let p = s.apply_k_plus();
        for n in 0..=8 {
            prop_assert!((a.coeffs()[n] - b.coeffs()[n] - p.coeffs()[n]).norm() < 1e-12);
        }
        let a = s.apply_k_minus().apply_k3();
        let b = s.apply_k3().apply_k_minus();
        let m = s.apply_k_minus();
        for n in 0..=8 {
            prop_assert!((a.coeffs()[n] - b.coeffs()[n] + m.coeffs()[n]).norm() < 1e-12);
        }
    }
}

#[test]
fn rotation_path_agrees_with_disk_route() {
    let s = CoefficientState::new(k(0.8), vec![c(0.2, 0.1), c(0.0, -0.5), c(0.6, 0.0), c(-0.1, 0.3)]).unwrap();
    let a = C::from_polar(1.0, -1.1);
    let g = GroupElement::new(a, c(0.0, 0.0)).unwrap();
    let t = mobius_transform_g(&s, &g).unwrap();
    for z in [c(0.3, 0.1), c(-2.0, 1.0), c(0.0, 4.0)] {
        assert!((bg_rotation_transform(&s, a, z).unwrap() - eval_f(&t, z)).norm() < 1e-12);
    }
}

#[test]
fn displacement_of_vacuum_is_the_coherent_state() {
    let xi = c(0.4, -0.7);
    let g = GroupElement::from_displacement(xi);
    let label = xi / xi.norm() * xi.norm().tanh();
    assert!((g.coherent_label() - label).norm() < 1e-14);
    let vac = CoefficientState::basis(k(1.25), 0, 16);
    let t = mobius_transform_g(&vac, &g).unwrap();
    let p = perelomov_coefficients(label, k(1.25), 16).unwrap();
    assert!((t.inner(&p).norm() - 1.0).abs() < 1e-10);
}

#[test]
fn perelomov_function_is_the_disk_kernel() {
    // G of |ζ₀,k⟩ at ζ is (1−|ζ₀|²)^k (1 − ζ₀ζ)^{−2k}
    let (zeta0, kv) = (c(0.5, 0.3), 0.35);
    let s = perelomov_coefficients(zeta0, k(kv), 64).unwrap();
    for zeta in [c(0.1, 0.2), c(-0.6, 0.1), c(0.0, -0.8)] {
        let expect = (1.0 - zeta0.norm_sqr()).powf(kv) * (1.0 - zeta0 * zeta).powf(-2.0 * kv);
        assert!((eval_g(&s, zeta).unwrap() - expect).norm() < 1e-10);
    }
}

#[test]
fn bg_states_are_normalized_and_continuous_at_zero() {
    for kv in [0.2, 0.75, 2.0] {
        for z in [c(1e-8, 0.0), c(0.5, -0.5), c(-3.0, 1.0), c(6.0, 0.0)] {
            let s = bg_coefficients(z, k(kv), 32).unwrap();
            assert!(s.is_normalized(), "k={kv} z={z}: {}", s.norm_sqr());
        }
    }
    let vac = bg_coefficients(c(0.0, 0.0), k(0.75), 8).unwrap();
    assert_eq!(vac.coeffs()[0], c(1.0, 0.0));
}

#[test]
fn errors_carry_their_kind() {
    assert!(BargmannIndex::new(0.0).is_err());
    assert!(BargmannIndex::new(f64::NAN).is_err());
    let s = perelomov_coefficients(c(0.0, 0.0), k(0.5), 2).unwrap();
    let big = CoefficientState::new(k(0.5), (0..200).map(|n| c(0.9f64.powi(n), 0.0)).collect()).unwrap();
    assert_eq!(eval_g(&big, c(1.5, 0.0)).unwrap_err().kind(), ErrorKind::Convergence);
    assert_eq!(perelomov_coefficients(c(1.0, 0.0), k(0.5), 2).unwrap_err().kind(), ErrorKind::Domain);
    assert!(inverse_laplace_g_to_f(&s, c(-1.0, 0.0), &QuadratureSpec::default()).is_err());
    assert!(GroupElement::new(c(1.0, 0.0), c(0.5, 0.0)).is_err());
}

#[test]
fn state_json_round_trip() {
    let s = CoefficientState::new(k(0.75), vec![c(0.6, 0.0), c(0.0, -0.8)]).unwrap();
    let text = serde_json::to_string(&s).unwrap();
    assert_eq!(text, r#"{"k":0.75,"coeffs":[[0.6,0.0],[0.0,-0.8]]}"#);
    let back: CoefficientState = serde_json::from_str(&text).unwrap();
    assert_eq!(back, s);
    assert!(serde_json::from_str::<CoefficientState>(r#"{"k":-1.0,"coeffs":[[1.0,0.0]]}"#).is_err());
}
