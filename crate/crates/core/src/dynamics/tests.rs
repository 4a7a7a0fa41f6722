use super::*;
use crate::models::{Decay, FnWavefunction, Model, StateLabel, Superposition};
use num_complex::Complex64;

fn osc() -> Model<f64> {
    Model::oscillator(0.3, 1.0).unwrap()
}

fn grid(points: usize) -> Grid<f64> {
    Grid::new(12.0, points).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn gaussian_like<F: Fn(f64) -> Complex64 + Sync>(f: F) -> FnWavefunction<f64, F> {
    FnWavefunction::new(f, Decay::Gaussian)
}

#[test]
fn grid_invariants() {
    let g = grid(1537);
    assert_eq!(g.dx(), 1.0 / 64.0);
    for i in 0..g.num_points() {
        assert_eq!(g.x(i), -g.x(g.mirror(i)));
    }
    assert_eq!(g.x(768), 0.0);
    assert_eq!(g.refined(1).unwrap().num_points(), 3073);
    assert!(Grid::new(12.0, 15).is_err());
    assert!(Grid::new(-1.0, 100).is_err());
}

#[test]
fn wavefunction_validation() {
    let g = grid(65);
    let wide = |x: f64| c((-x * x / 50.0).exp(), 0.0);
    let samples: Vec<_> = g.points().into_iter().map(wide).collect();
    assert!(matches!(
        GridWavefunction::new(g, samples, 0.0),
        Err(DynamicsError::BoundaryNotSmall { .. })
    ));
    let mut samples: Vec<_> = g.points().into_iter().map(|x| c((-x * x).exp(), 0.0)).collect();
    samples[10] = c(f64::NAN, 0.0);
    assert!(matches!(
        GridWavefunction::new(g, samples, 0.0),
        Err(DynamicsError::NonFinite(10))
    ));
    assert!(matches!(
        GridWavefunction::new(g, vec![c(1.0, 0.0); 3], 0.0),
        Err(DynamicsError::GridMismatch(_))
    ));
}

#[test]
fn propagator_preconditions() {
    let g = grid(65);
    let v = |_x: f64| c(0.0, 0.0);
    assert!(matches!(
        Propagator::new(g, &v, 0.0),
        Err(DynamicsError::Precondition(_))
    ));
    assert!(matches!(
        Propagator::new(g, &v, -0.1),
        Err(DynamicsError::Precondition(_))
    ));
    let p = Propagator::new(g, &v, 0.01).unwrap();
    let other = GridWavefunction::sample(grid(129), &gaussian_like(|x: f64| c((-x * x).exp(), 0.0))).unwrap();
    assert!(matches!(p.evolve(&other, 2), Err(DynamicsError::GridMismatch(_))));
}

#[test]
fn snapshots_at_multiples_of_dt() {
    let g = grid(257);
    let v = |x: f64| c(x * x, 0.0);
    let dt = 1.0 / 64.0;
    let p = Propagator::new(g, &v, dt).unwrap();
    let psi0 = GridWavefunction::sample(g, &gaussian_like(|x: f64| c((-x * x / 2.0).exp(), 0.0))).unwrap();
    let all = p.evolve(&psi0, 10).unwrap();
    assert_eq!(all.len(), 11);
    for (k, s) in all.iter().enumerate() {
        assert!((s.t() - k as f64 * dt).abs() < 1e-15);
    }
    let sparse = p.evolve_every(&psi0, 10, 4).unwrap();
    let stamps: Vec<f64> = sparse.iter().map(|s| s.t() / dt).collect();
    assert_eq!(stamps, vec![0.0, 4.0, 8.0, 10.0]);
    assert_eq!(sparse[3].samples(), all[10].samples());
}

// Exact solution of i ψ_t = -ψ_xx for a Gaussian with momentum k0.
fn free_gaussian(x: f64, t: f64, sigma: f64, k0: f64) -> Complex64 {
    let s2 = sigma * sigma;
    let a = c(s2, t);
    let pre = (2.0 * std::f64::consts::PI * s2).powf(-0.25) * (c(s2, 0.0) / a).sqrt();
    let shifted = x - 2.0 * k0 * t;
    pre * (-(shifted * shifted) / (4.0 * a) + c(0.0, k0 * x - k0 * k0 * t)).exp()
}

#[test]
fn free_gaussian_spreading() {
    let (sigma, k0) = (1.0, 1.0);
    // The oracle itself must solve the equation.
    let (x, t, h) = (0.7, 0.3, 1e-3);
    let psi_t = (free_gaussian(x, t + h, sigma, k0) - free_gaussian(x, t - h, sigma, k0)) / (2.0 * h);
    let psi_xx = (free_gaussian(x + h, t, sigma, k0) - 2.0 * free_gaussian(x, t, sigma, k0)
        + free_gaussian(x - h, t, sigma, k0))
        / (h * h);
    assert!((c(0.0, 1.0) * psi_t + psi_xx).norm() < 1e-5);

    let g = Grid::new(16.0, 4097).unwrap();
    let zero = |_x: f64| c(0.0, 0.0);
    let p = Propagator::new(g, &zero, 1.0 / 2048.0).unwrap();
    let psi0 = GridWavefunction::sample(g, &gaussian_like(|x: f64| free_gaussian(x, 0.0, sigma, k0))).unwrap();
    let end = p.run(&psi0, 1024, 1024, |_| Ok(())).unwrap();
    assert_eq!(end.t(), 0.5);
    let err = end.max_error(|x| free_gaussian(x, 0.5, sigma, k0));
    assert!(err < 1e-4, "{err}");
}

fn stationary_error(points: usize, dt: f64) -> f64 {
    let m = osc();
    let s = m.state(StateLabel::plus(0)).unwrap();
    let u = s.normalized().unwrap();
    let g = grid(points);
    let p = Propagator::new(g, &m, dt).unwrap();
    let psi0 = GridWavefunction::sample(g, &u).unwrap();
    let steps = (0.5 / dt) as usize;
    let end = p.run(&psi0, steps, steps, |_| Ok(())).unwrap();
    let e = s.energy();
    end.max_error(|x| crate::models::Wavefunction::value(&u, x) * c(0.0, -e * 0.5).exp())
}

#[test]
fn stationary_state_second_order() {
    let errs: Vec<f64> = [(385, 1.0 / 256.0), (769, 1.0 / 512.0), (1537, 1.0 / 1024.0)]
        .iter()
        .map(|&(n, dt)| stationary_error(n, dt))
        .collect();
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!((3.5..4.5).contains(&ratio), "{errs:?}");
    }
}

fn evolved(model: &Model<f64>, psi: &dyn crate::models::Wavefunction<f64>, steps: usize) -> Vec<GridWavefunction<f64>> {
    let g = grid(1537);
    let p = Propagator::new(g, model, 1.0 / 1024.0).unwrap();
    p.evolve_every(&GridWavefunction::sample(g, psi).unwrap(), steps, 16)
        .unwrap()
}

#[test]
fn eigenstate_pseudo_norms_conserved() {
    let m = osc();
    for label in [StateLabel::plus(0), StateLabel::minus(0), StateLabel::minus(2)] {
        let s = m.state(label).unwrap();
        let run = evolved(&m, &s.normalized().unwrap(), 1024);
        let series = conserved_overlap(&run, &run).unwrap();
        let q = label.q.sign::<f64>();
        for pt in &series {
            assert!((pt.value - c(q, 0.0)).norm() < 1e-6, "{label}: {:?}", pt);
        }
        assert!(max_drift(&series) < 1e-6);
    }
}

#[test]
fn distinct_eigenstates_stay_pseudo_orthogonal() {
    let m = osc();
    let a = m.state(StateLabel::plus(0)).unwrap();
    let b = m.state(StateLabel::minus(0)).unwrap();
    let ra = evolved(&m, &a.normalized().unwrap(), 1024);
    let rb = evolved(&m, &b.normalized().unwrap(), 1024);
    for pt in conserved_overlap(&ra, &rb).unwrap() {
        assert!(pt.value.norm() < 1e-6, "{pt:?}");
    }
}

#[test]
fn superposition_overlap_with_component() {
    let m = osc();
    let a = m.state(StateLabel::plus(0)).unwrap();
    let b = m.state(StateLabel::minus(0)).unwrap();
    let coef = c(0.5, -0.25);
    let sup = Superposition::new(vec![(c(1.0, 0.0), a), (coef, b)]).unwrap();
    let rs = evolved(&m, &sup, 1024);
    let rb = evolved(&m, &b.normalized().unwrap(), 1024);
    // Both evolve: the common phase cancels.
    for pt in conserved_overlap(&rs, &rb).unwrap() {
        assert!((pt.value - (-coef)).norm() < 1e-5, "{pt:?}");
    }
    // Frozen component: the overlap picks up exp(-i E t); the bound covers
    // the O(dx^2) shift of the discrete eigenvalue.
    let frozen = rb[0].clone();
    let e = b.energy();
    for s in &rs {
        let got = pseudo_overlap(s, &frozen).unwrap();
        let expected = -coef * c(0.0, -e * s.t()).exp();
        assert!((got - expected).norm() < 1e-4, "t = {}: {got} vs {expected}", s.t());
    }
}

#[test]
fn overlap_requires_matching_runs() {
    let m = osc();
    let s = m.state(StateLabel::plus(0)).unwrap();
    let run = evolved(&m, &s.normalized().unwrap(), 32);
    assert!(matches!(
        conserved_overlap(&run, &run[..1]),
        Err(DynamicsError::GridMismatch(_))
    ));
    let shifted: Vec<_> = run[1..].to_vec();
    assert!(matches!(
        conserved_overlap(&run[..shifted.len()], &shifted),
        Err(DynamicsError::GridMismatch(_))
    ));
    let coarse = GridWavefunction::sample(grid(769), &s.normalized().unwrap()).unwrap();
    assert!(matches!(
        pseudo_overlap(&run[0], &coarse),
        Err(DynamicsError::GridMismatch(_))
    ));
}

#[test]
fn pt_symmetric_density_is_square() {
    let s = osc().state(StateLabel::plus(1)).unwrap().to_pt_eigenform();
    let v = s.normalized().unwrap();
    let g = grid(1537);
    let psi = GridWavefunction::sample(g, &v).unwrap();
    let d = densities(&psi);
    for (i, p) in d.p_pt.iter().enumerate() {
        let vx = crate::models::Wavefunction::value(&v, g.x(i));
        assert!((p - vx * vx).norm() < 1e-12);
    }
    // J vanishes for a PT-eigenform up to rounding.
    let jmax = d.j_pt.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
    assert!(jmax < 1e-10, "{jmax}");
}

#[test]
fn real_even_state_hermitian_reduction() {
    let g = grid(257);
    let psi =
        GridWavefunction::sample(g, &gaussian_like(|x: f64| c((-x * x / 2.0).exp() * (1.0 + x * x), 0.0))).unwrap();
    let d = densities(&psi);
    for (i, z) in psi.samples().iter().enumerate() {
        assert_eq!(d.p_pt[i], c(z.norm_sqr(), 0.0));
        assert_eq!(d.j_pt[i], c(0.0, 0.0));
    }
}

#[test]
fn current_converges_under_refinement() {
    let m = osc();
    let a = m.state(StateLabel::plus(0)).unwrap();
    let b = m.state(StateLabel::minus(0)).unwrap();
    let sup = Superposition::new(vec![(c(1.0, 0.0), a), (c(0.5, 0.0), b)]).unwrap();
    // Same time step everywhere so only the spatial stencil changes.
    let dt = 1.0 / 640.0;
    let currents: Vec<(usize, Vec<Complex64>)> = [385, 769, 1537]
        .iter()
        .map(|&n| {
            let g = grid(n);
            let p = Propagator::new(g, &m, dt).unwrap();
            let end = p
                .run(&GridWavefunction::sample(g, &sup).unwrap(), 192, 192, |_| Ok(()))
                .unwrap();
            assert!((end.t() - 0.3).abs() < 1e-12);
            (n, densities(&end).j_pt)
        })
        .collect();
    // Compare on the coarse points shared by all three grids.
    let diff = |k: usize| {
        let (fine, finer) = (&currents[k].1, &currents[k + 1].1);
        (0..385).fold(0.0_f64, |m, i| m.max((fine[i << k] - finer[i << (k + 1)]).norm()))
    };
    let d01 = diff(0);
    let d12 = diff(1);
    assert!(d01 < 1e-2 && d12 < d01 / 3.0, "{d01} {d12}");
}

#[test]
fn continuity_residual_orders() {
    let m = osc();
    let a = m.state(StateLabel::plus(0)).unwrap();
    let b = m.state(StateLabel::minus(0)).unwrap();
    let setup = RefinementSetup {
        x_max: 12.0,
        base_points: 385,
        base_dt: 1.0 / 256.0,
        t_end: 0.5,
        levels: 3,
    };

    let sup = Superposition::new(vec![(c(1.0, 0.0), a), (c(0.5, 0.0), b)]).unwrap();
    let levels = refinement_study(&setup, &m, &sup).unwrap();
    for o in measured_orders(&levels) {
        assert!((1.8..=2.2).contains(&o), "{levels:?}");
    }
    for l in &levels {
        assert!(l.drift < 1e-10);
    }

    let eig = refinement_study(&setup, &m, &a.normalized().unwrap()).unwrap();
    for o in measured_orders(&eig) {
        assert!(o >= 1.8, "{eig:?}");
    }
}

#[test]
fn hermitian_continuity() {
    let v = |x: f64| c(x * x, 0.0);
    let setup = RefinementSetup {
        x_max: 12.0,
        base_points: 385,
        base_dt: 1.0 / 256.0,
        t_end: 0.5,
        levels: 3,
    };
    let packet = gaussian_like(|x: f64| c((-(x - 1.0) * (x - 1.0)).exp(), 0.0));
    let levels = refinement_study(&setup, &v, &packet).unwrap();
    for o in measured_orders(&levels) {
        assert!((1.8..=2.2).contains(&o), "{levels:?}");
    }

    // Even real start: P stays real and S equals the L2 norm.
    let g = grid(769);
    let even = gaussian_like(|x: f64| c((-x * x).exp(), 0.0));
    let p = Propagator::new(g, &v, 1.0 / 512.0).unwrap();
    p.run(&GridWavefunction::sample(g, &even).unwrap(), 256, 8, |s| {
        let d = densities(s);
        assert!(d.p_pt.iter().all(|z| z.im.abs() <= 1e-10));
        let l2: f64 = s.samples().iter().map(|z| z.norm_sqr()).sum::<f64>() * g.dx();
        let pt = pseudo_overlap(s, s).unwrap();
        assert!((pt - c(l2, 0.0)).norm() < 1e-12);
        Ok(())
    })
    .unwrap();
}

#[test]
fn residual_needs_equal_spacing() {
    let m = osc();
    let s = m.state(StateLabel::plus(0)).unwrap();
    let run = evolved(&m, &s.normalized().unwrap(), 64);
    assert!(continuity_residual([&run[0], &run[1], &run[2]]).is_ok());
    assert!(matches!(
        continuity_residual([&run[0], &run[1], &run[3]]),
        Err(DynamicsError::Precondition(_))
    ));
}

#[test]
fn gain_potential_blows_up() {
    let g = grid(257);
    let gain = |_x: f64| c(0.0, 50.0);
    let p = Propagator::new(g, &gain, 1.0 / 256.0).unwrap();
    let psi0 = GridWavefunction::sample(g, &gaussian_like(|x: f64| c((-x * x).exp(), 0.0))).unwrap();
    match p.evolve(&psi0, 256) {
        Err(DynamicsError::BlowUp { step, growth }) => {
            assert!(growth > BLOWUP_FACTOR);
            assert!((60..90).contains(&step), "{step}");
        }
        other => panic!("{other:?}"),
    }
}

// Least-squares slope of the unwrapped phase of <v, psi(t)> against a
// frozen copy of the initial eigenform.
fn fitted_phase_rate(label: StateLabel, t_end: f64) -> (f64, f64) {
    let m = osc();
    let s = m.state(label).unwrap().to_pt_eigenform();
    let steps = (t_end * 1024.0).ceil() as usize;
    let run = evolved(&m, &s.normalized().unwrap(), steps);
    let reference = run[0].clone();
    let two_pi = 2.0 * std::f64::consts::PI;
    let (mut prev, mut phase) = (0.0_f64, 0.0_f64);
    let (mut st, mut sp, mut stt, mut stp) = (0.0, 0.0, 0.0, 0.0);
    for snap in &run {
        let arg = pseudo_overlap(snap, &reference).unwrap().arg();
        let d = arg - prev;
        phase += d - (d / two_pi).round() * two_pi;
        prev = arg;
        let t = snap.t();
        st += t;
        sp += phase;
        stt += t * t;
        stp += t * phase;
    }
    let k = run.len() as f64;
    ((k * stp - st * sp) / (k * stt - st * st), s.energy())
}

#[test]
fn phase_advances_at_minus_energy() {
    // One full period of the n = 2 state fits inside t <= 1.
    let label = StateLabel::plus(2);
    let e = osc().energy(label).unwrap();
    let (rate, e2) = fitted_phase_rate(label, 2.0 * std::f64::consts::PI / e);
    assert_eq!(e, e2);
    assert!(((rate + e) / e).abs() < 1e-4, "{rate} vs {}", -e);

    let (rate, e) = fitted_phase_rate(StateLabel::plus(0), 1.0);
    assert!(((rate + e) / e).abs() < 1e-4, "{rate} vs {}", -e);
}

#[test]
fn csv_export_is_deterministic_and_lossless() {
    let dir = tempfile::tempdir().unwrap();
    let m = osc();
    let s = m.state(StateLabel::plus(0)).unwrap();
    let run = evolved(&m, &s.normalized().unwrap(), 32);
    let (p1, p2) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    write_snapshot_csv(&p1, &run[1]).unwrap();
    write_snapshot_csv(&p2, &run[1]).unwrap();
    let (b1, b2) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert_eq!(b1, b2);

    let mut rd = csv::Reader::from_path(&p1).unwrap();
    assert_eq!(
        rd.headers().unwrap().iter().collect::<Vec<_>>(),
        SNAPSHOT_COLUMNS.to_vec()
    );
    let rows: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 1537);
    let d = densities(&run[1]);
    for i in [0, 400, 768, 1536] {
        let f = |k: usize| rows[i][k].parse::<f64>().unwrap();
        assert_eq!(f(0), run[1].grid().x(i));
        assert_eq!(c(f(1), f(2)), run[1].samples()[i]);
        assert_eq!(c(f(3), f(4)), d.p_pt[i]);
        assert_eq!(c(f(5), f(6)), d.j_pt[i]);
    }

    let series = conserved_overlap(&run, &run).unwrap();
    let p3 = dir.path().join("s.csv");
    write_overlap_csv(&p3, &series).unwrap();
    let text = std::fs::read_to_string(&p3).unwrap();
    assert!(text.starts_with("t,re_s,im_s\n"));
    assert_eq!(text.lines().count(), series.len() + 1);
}
