use super::*;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn osc(alpha: f64, c: f64) -> Model<f64> {
    Model::oscillator(alpha, c).unwrap()
}

fn sample_models() -> Vec<Model<f64>> {
    vec![
        osc(0.3, 1.0),
        osc(0.7, 0.5),
        osc(1.4, 0.8),
        Model::<f64>::gpt(1.2, 2.0, 0.2).unwrap(),
        Model::<f64>::gpt(2.6, 3.4, 0.3).unwrap(),
        Model::<f64>::gpt(1.2, 2.0, -0.2).unwrap(),
        Model::<f64>::scarf(2.2, 1.9).unwrap(),
        Model::<f64>::scarf(3.3, 3.1).unwrap(),
    ]
}

fn grid(half: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| -half + 2.0 * half * i as f64 / (n - 1) as f64)
}

#[test]
fn potential_examples() {
    let v = osc(0.5, 1.0).potential(0.0);
    assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);

    let (a, b) = (2.2, 1.9);
    let v = Model::<f64>::scarf(a, b).unwrap().potential(0.0);
    assert!((v - Complex64::new(-b * b - a * (a + 1.0), 0.0)).norm() < 1e-13);

    // direct evaluation through complex sinh/cosh
    let (a, b, g, x) = (1.0, 1.8, 0.2, 0.3);
    let tau = Complex64::new(x, -g);
    let expected = (b * b + a * (a + 1.0)) / (tau.sinh() * tau.sinh())
        - b * (2.0 * a + 1.0) * tau.cosh() / (tau.sinh() * tau.sinh());
    let v = Model::<f64>::gpt(a, b, g).unwrap().potential(x);
    assert!((v - expected).norm() < 1e-12 * expected.norm());
}

#[test]
fn gpt_potential_far_from_origin_is_finite() {
    let m = Model::<f64>::gpt(1.2, 2.0, 0.2).unwrap();
    for x in [-800.0, -60.0, 60.0, 800.0] {
        let v = m.potential(x);
        assert!(v.re.is_finite() && v.im.is_finite(), "V({x}) = {v}");
        assert!(v.norm() < 1e-20);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn potentials_are_pt_symmetric(x in -8.0f64..8.0) {
        for m in sample_models() {
            let v = m.potential(x);
            let w = m.potential(-x).conj();
            prop_assert!((v - w).norm() <= 1e-12 * (1.0 + v.norm()), "{m:?} at {x}: {v} vs {w}");
        }
    }
}

#[test]
fn energy_examples() {
    assert!((osc(0.3, 1.0).energy(StateLabel::plus(0)).unwrap() - 1.4).abs() < 1e-15);
    let scarf = Model::<f64>::scarf(2.2, 1.4).unwrap();
    assert!((scarf.energy(StateLabel::plus(1)).unwrap() + 1.44).abs() < 1e-14);
    let gpt = Model::<f64>::gpt(1.2, 2.0, 0.2).unwrap();
    assert!((gpt.energy(StateLabel::minus(0)).unwrap() + 1.44).abs() < 1e-14);
}

#[test]
fn label_bounds_follow_half_open_inequalities() {
    let gpt = Model::<f64>::gpt(1.2, 2.0, 0.2).unwrap();
    // B - 3/2 <= n_+max < B - 1/2  ->  n_+max = 1
    assert_eq!(gpt.max_level(QuasiParity::Plus), MaxLevel::Highest(1));
    // A - 1 <= n_-max < A  ->  n_-max = 1
    assert_eq!(gpt.max_level(QuasiParity::Minus), MaxLevel::Highest(1));
    assert!(matches!(
        gpt.energy(StateLabel::plus(2)),
        Err(ModelError::LabelOutOfRange { n: 2, .. })
    ));
    // B - 1/2 exactly integral: n must stay strictly below it
    let gpt = Model::<f64>::gpt(1.0, 2.5 + 0.3 - 0.3 + 0.0, 0.2);
    assert!(gpt.is_err()); // B - A - 1/2 = 1 is excluded
    let scarf = Model::<f64>::scarf(3.3, 3.1).unwrap();
    assert_eq!(scarf.max_level(QuasiParity::Plus), MaxLevel::Highest(3));
    assert_eq!(scarf.max_level(QuasiParity::Minus), MaxLevel::Highest(2));
    let gpt = Model::<f64>::gpt(-0.2, 0.9, 0.2).unwrap();
    assert_eq!(gpt.max_level(QuasiParity::Minus), MaxLevel::NoStates);
    assert_eq!(osc(0.3, 1.0).max_level(QuasiParity::Minus), MaxLevel::Unbounded);
    assert_eq!(gpt.labels_up_to(5), vec![StateLabel::plus(0)]);
}

#[test]
fn oscillator_energies_alternate_in_quasi_parity() {
    for alpha in [0.1, 0.3, 0.5, 0.9] {
        let m = osc(alpha, 1.0);
        let mut states: Vec<(f64, i8)> = m
            .labels_up_to(3)
            .into_iter()
            .map(|l| (m.energy(l).unwrap(), l.q.as_i8()))
            .collect();
        states.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for (k, (_, q)) in states.iter().enumerate() {
            assert_eq!(*q, if k % 2 == 0 { 1 } else { -1 }, "alpha = {alpha}");
        }
    }
}

fn eigen_residual(m: &Model<f64>, label: StateLabel) -> f64 {
    let h = 1e-3;
    let e = m.energy(label).unwrap();
    let u = |x: f64| m.raw_wavefunction(label, x);
    let mut max_r: f64 = 0.0;
    let mut max_u: f64 = 0.0;
    for x in grid(5.0, 1001) {
        // fourth-order five-point second difference
        let d2 = (-u(x + 2.0 * h) + u(x + h) * 16.0 - u(x) * 30.0 + u(x - h) * 16.0 - u(x - 2.0 * h)) / (12.0 * h * h);
        let r = -d2 + m.potential(x) * u(x) - u(x) * e;
        max_r = max_r.max(r.norm());
        max_u = max_u.max(u(x).norm());
    }
    max_r / max_u
}

#[test]
fn eigenfunctions_solve_the_stationary_equation() {
    for m in sample_models() {
        for label in m.labels_up_to(3) {
            let r = eigen_residual(&m, label);
            assert!(r <= 1e-6, "{m:?} {label}: residual {r:e}");
        }
    }
}

#[test]
fn phase_relation_holds_pointwise() {
    for m in sample_models() {
        for label in m.labels_up_to(3) {
            let s = m.state(label).unwrap();
            let phase = Complex64::from_polar(1.0, s.pt_phase());
            let max_u = grid(6.0, 601)
                .map(|x| s.eval(x, false).unwrap().norm())
                .fold(0.0, f64::max);
            for x in grid(6.0, 601) {
                let lhs = s.eval(-x, false).unwrap().conj();
                let rhs = phase * s.eval(x, false).unwrap();
                assert!((lhs - rhs).norm() <= 1e-11 * max_u, "{m:?} {label} at {x}");
            }
        }
    }
}

#[test]
fn pt_phase_examples() {
    let s = osc(0.3, 1.0).state(StateLabel::plus(0)).unwrap();
    assert!((s.pt_phase() - 0.2 * PI).abs() < 1e-14);
    let s = Model::<f64>::scarf(2.2, 1.9)
        .unwrap()
        .state(StateLabel::minus(0))
        .unwrap();
    assert_eq!(s.pt_phase(), 0.0);
    let s = Model::<f64>::gpt(1.2, 2.0, 0.2)
        .unwrap()
        .state(StateLabel::minus(0))
        .unwrap();
    assert!((s.lam() - 0.3).abs() < 1e-15);
    assert!((s.pt_phase() - 0.8 * PI).abs() < 1e-14);
    // a nonzero nu enters as -2 nu
    let s = osc(0.3, 1.0)
        .state(StateLabel::plus(0))
        .unwrap()
        .with_phase_nu(0.05 * PI);
    assert!((s.pt_phase() - 0.1 * PI).abs() < 1e-14);
}

#[test]
fn pt_eigenform_has_definite_pt_parity() {
    for m in sample_models() {
        for label in m.labels_up_to(2) {
            let v = m.state(label).unwrap().to_pt_eigenform();
            let sigma = label.q.sign::<f64>();
            let max_v = grid(6.0, 401)
                .map(|x| v.eval(x, false).unwrap().norm())
                .fold(0.0, f64::max);
            for x in grid(6.0, 401) {
                let d = v.eval(-x, false).unwrap().conj() - v.eval(x, false).unwrap() * sigma;
                assert!(d.norm() <= 1e-12 * max_v.max(1.0), "{m:?} {label} at {x}");
            }
            let expected = if sigma > 0.0 { 0.0 } else { PI };
            assert!((v.pt_phase() - expected).abs() < 1e-12 || (v.pt_phase() - expected - 2.0 * PI).abs() < 1e-12);
        }
    }
}

#[test]
fn scarf_antisymmetric_prefactor_is_minus_i() {
    let s = Model::<f64>::scarf(2.2, 1.9)
        .unwrap()
        .state(StateLabel::minus(0))
        .unwrap();
    let v = s.to_pt_eigenform();
    let factor = v.coefficient(false).unwrap();
    assert!((factor - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    let s = Model::<f64>::scarf(2.2, 1.9)
        .unwrap()
        .state(StateLabel::plus(0))
        .unwrap();
    assert!((s.to_pt_eigenform().coefficient(false).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn oscillator_eigenform_prefactor() {
    let alpha = 0.3;
    for (label, q) in [(StateLabel::plus(1), 1.0), (StateLabel::minus(2), -1.0)] {
        let v = osc(alpha, 1.0).state(label).unwrap().to_pt_eigenform();
        let expected = Complex64::from_polar(1.0, q * PI / 2.0 * (0.5 - alpha));
        assert!((v.coefficient(false).unwrap() - expected).norm() < 1e-14);
    }
}

#[test]
fn unnormalized_ground_states_are_bare_weights() {
    let (alpha, c, x) = (0.3, 1.0, 0.4);
    let z = Complex64::new(x, -c);
    let w = (-z * z / 2.0).exp() * z.powf(0.5 - alpha);
    let u = osc(alpha, c)
        .state(StateLabel::plus(0))
        .unwrap()
        .eval(x, false)
        .unwrap();
    assert!((u - w).norm() < 1e-14 * w.norm());

    let (a, b) = (2.2, 1.9);
    let m = Model::<f64>::scarf(a, b).unwrap();
    // q = +1: sech^A e^{-iB arctan(sinh x)}
    let w = Complex64::from_polar((1.0 / x.cosh()).powf(a), -b * x.sinh().atan());
    let u = m.state(StateLabel::plus(0)).unwrap().eval(x, false).unwrap();
    assert!((u - w).norm() < 1e-14);
}

#[test]
fn gpt_eigenfunction_matches_algebraic_form() {
    let (a, b, g, x) = (1.2, 2.0, 0.2, 0.5);
    let m = Model::<f64>::gpt(a, b, g).unwrap();
    let s = m.state(StateLabel::plus(1)).unwrap();
    let (lam, mu) = (a - b + 0.5, -a - b - 0.5);
    let y = Complex64::new(x, -g).cosh();
    let p1 = ((lam - mu) / 2.0) + y * ((lam + mu + 2.0) / 2.0);
    let expected = (y - 1.0).powf((lam + 0.5) / 2.0) * (y + 1.0).powf((mu + 0.5) / 2.0) * p1;
    let u = s.eval(x, false).unwrap();
    assert!((u - expected).norm() < 1e-13 * expected.norm(), "{u} vs {expected}");
}

#[test]
fn negative_gamma_is_the_conjugate_model() {
    let plus = Model::<f64>::gpt(1.2, 2.0, 0.2).unwrap();
    let minus = Model::<f64>::gpt(1.2, 2.0, -0.2).unwrap();
    for x in grid(3.0, 31) {
        for label in plus.labels_up_to(1) {
            assert!((plus.raw_wavefunction(label, x).conj() - minus.raw_wavefunction(label, x)).norm() < 1e-14);
        }
        assert!((plus.potential(x).conj() - minus.potential(x)).norm() < 1e-12);
    }
}

#[test]
fn linear_oscillator_reduction() {
    let m = osc(0.5, 1e-12);
    let s = m.state(StateLabel::plus(0)).unwrap();
    let u0 = s.eval(0.0, true).unwrap();
    assert!((u0.re - PI.powf(-0.25)).abs() < 1e-10);
    assert!((u0.re - 0.751_125_54).abs() < 1e-8);
    assert!(u0.im.abs() < 1e-10);
}

#[test]
fn analytic_norm_examples() {
    let mag = analytic_norm_mag(&osc(0.5, 1.0), StateLabel::plus(0), None).unwrap();
    assert!((mag.resolved().unwrap() - PI.powf(-0.25)).abs() < 1e-14);

    // B = A + 1 removes the cosine: |N| = (2 I_0)^{-1/2}
    let (a, b) = (1.3, 2.3);
    let m = Model::<f64>::gpt(a, b, 0.1).unwrap();
    for label in [StateLabel::plus(0), StateLabel::minus(0)] {
        let (lam, mu) = m.jacobi_params(label.q);
        let i0 = closed_form_jacobi_integral(lam, mu).unwrap();
        let mag = analytic_norm_mag(&m, label, None).unwrap().resolved().unwrap();
        assert!((mag - (2.0 * i0).powf(-0.5)).abs() < 1e-14 * mag);
    }
    // gpt n > 0 needs the weight integral
    let m = Model::<f64>::gpt(1.2, 2.0, 0.2).unwrap();
    assert_eq!(
        analytic_norm_mag(&m, StateLabel::plus(1), None).unwrap(),
        NormMag::Unresolved
    );
    assert!(matches!(
        analytic_norm_mag(&m, StateLabel::plus(1), Some(0.7)).unwrap(),
        NormMag::Resolved(_)
    ));

    // scarf q = +1, n = 0
    let (a, b) = (2.2, 1.9);
    let g = |x: f64| crate::specialfn::gamma(x).unwrap();
    let expected = (2f64.powf(2.0 * a - 1.0) * g(a - b + 0.5) * g(a + b + 0.5) / (PI * g(2.0 * a))).sqrt();
    let mag = analytic_norm_mag(&Model::<f64>::scarf(a, b).unwrap(), StateLabel::plus(0), None).unwrap();
    assert!((mag.resolved().unwrap() - expected).abs() < 1e-13 * expected);
    let m = Model::<f64>::scarf(a, b).unwrap();
    assert_eq!(
        analytic_norm_mag(&m, StateLabel::plus(1), None).unwrap(),
        NormMag::Unresolved
    );
}

#[test]
fn analytic_norm_errors() {
    assert!(matches!(
        analytic_norm_mag(&osc(1.3, 1.0), StateLabel::minus(0), None),
        Err(ModelError::NormInvalid {
            condition: "0 < alpha < 1",
            ..
        })
    ));
    let m = Model::<f64>::gpt(1.0, 2.6, 0.2).unwrap();
    assert!(matches!(
        analytic_norm_mag(&m, StateLabel::plus(0), None),
        Err(ModelError::NormInvalid {
            condition: "A + 1/2 < B < A + 3/2",
            ..
        })
    ));
    // A = 2.5 lies in (B + 1/2, B + 3/2) for B = 1.4: positive q = -1 norm
    let m = Model::<f64>::scarf(2.5, 1.4).unwrap();
    assert!(matches!(
        analytic_norm_mag(&m, StateLabel::minus(0), None),
        Err(ModelError::SignViolation { q: -1, measured: 1, .. })
    ));
    let s = m.state(StateLabel::minus(0)).unwrap();
    assert_eq!(s.norm_mag(), NormMag::Unresolved);
    assert_eq!(s.eval(0.0, true), Err(ModelError::UnresolvedNorm));
}

#[test]
fn closed_form_signs_follow_quasi_parity() {
    for alpha in [0.2, 0.3, 0.7] {
        for label in osc(alpha, 1.0).labels_up_to(3) {
            let v = closed_form_pseudo_norm(&osc(alpha, 1.0), label, None).unwrap().unwrap();
            assert_eq!(v.signum(), label.q.sign::<f64>());
        }
    }
    let i0 = closed_form_jacobi_integral(0.0_f64, -2.0).unwrap();
    assert!((i0 - 0.5).abs() < 1e-15);
}

#[test]
fn wavefunctions_decay_at_the_envelope_rate() {
    for m in sample_models() {
        for label in m.labels_up_to(2) {
            let s = m.state(label).unwrap();
            let mag = |x: f64| s.eval(x, false).unwrap().norm();
            for sign in [-1.0, 1.0] {
                let (near, far) = (mag(sign * 15.0), mag(sign * 45.0));
                match s.decay() {
                    Decay::Gaussian => assert!(far < 1e-100 && near < 1e-40),
                    Decay::Exponential(k) => {
                        let ratio = far / near;
                        let predicted = (-30.0 * k).exp();
                        assert!(
                            (ratio / predicted - 1.0).abs() < 0.05,
                            "{m:?} {label}: {ratio:e} vs {predicted:e}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn label_parsing() {
    assert_eq!("+1:0".parse::<StateLabel>().unwrap(), StateLabel::plus(0));
    assert_eq!("-1:3".parse::<StateLabel>().unwrap(), StateLabel::minus(3));
    assert_eq!("1:2".parse::<StateLabel>().unwrap(), StateLabel::plus(2));
    assert!("0:1".parse::<StateLabel>().is_err());
    assert!("+1".parse::<StateLabel>().is_err());
    assert!("+1:-2".parse::<StateLabel>().is_err());
    assert_eq!(StateLabel::minus(2).to_string(), "-1:2");
}
