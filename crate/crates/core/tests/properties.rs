//! Invariant checks that cut across modules: conservation laws of the
//! mode algebra, monotonicity of the rate bound, statistical behaviour
//! of the sampled runs.

use noswitch_core::attack::AttackConfig;
use noswitch_core::gaussian::{beamsplitter_mix, ModeStat};
use noswitch_core::keyrate::{heterodyne_rate_lower_bound, ChannelParams, SourceParams};
use noswitch_core::montecarlo::{concordance_report, run, RunSpec, Scenario, TapKind};
use noswitch_core::quad::QuadPair;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn beamsplitter_conserves_variance_and_energy() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..500 {
        let a = ModeStat::new(
            QuadPair::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)),
            QuadPair::new(rng.gen_range(0.0..50.0), rng.gen_range(0.0..50.0)),
        )
        .unwrap();
        let b = ModeStat::new(
            QuadPair::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)),
            QuadPair::new(rng.gen_range(0.0..50.0), rng.gen_range(0.0..50.0)),
        )
        .unwrap();
        let t = rng.gen_range(0.0..=1.0);
        let (o1, o2) = beamsplitter_mix(&a, &b, t).unwrap();
        let var_out = o1.variance + o2.variance;
        let var_in = a.variance + b.variance;
        assert!((var_out.plus - var_in.plus).abs() < 1e-10);
        assert!((var_out.minus - var_in.minus).abs() < 1e-10);
        let e_out = o1.mean.map(|m| m * m) + o2.mean.map(|m| m * m);
        let e_in = a.mean.map(|m| m * m) + b.mean.map(|m| m * m);
        assert!((e_out.plus - e_in.plus).abs() < 1e-10);
        assert!((e_out.minus - e_in.minus).abs() < 1e-10);
    }
}

#[test]
fn rate_bound_monotone_in_noise_and_transmission() {
    // Nonincreasing in V_N at fixed eta; nondecreasing in eta at V_N = 1.
    for &eta in &[0.1, 0.3, 0.5, 0.7, 0.9, 1.0] {
        let mut prev = f64::INFINITY;
        for i in 0..60 {
            let vn = 1.0 + 0.05 * i as f64;
            let r = heterodyne_rate_lower_bound(eta, vn, 100.0).unwrap();
            assert!(
                r <= prev + 1e-12,
                "rate rose with noise at eta={eta}, vn={vn}"
            );
            prev = r;
        }
    }
    let mut prev = f64::NEG_INFINITY;
    for i in 1..=100 {
        let eta = i as f64 / 100.0;
        let r = heterodyne_rate_lower_bound(eta, 1.0, 100.0).unwrap();
        assert!(
            r >= prev - 1e-12,
            "rate fell with transmission at eta={eta}"
        );
        prev = r;
    }
}

#[test]
fn concordance_passes_for_both_scenarios() {
    let src = SourceParams::coherent(100.0).unwrap();
    let honest = RunSpec::honest(
        src,
        ChannelParams::symmetric(0.5, 1.0).unwrap(),
        200_000,
        101,
    )
    .unwrap();
    let report = concordance_report(&honest).unwrap();
    assert!(report.all_pass(), "honest max |z| = {}", report.max_abs_z());

    let ch = ChannelParams::symmetric(0.6, 1.5).unwrap();
    let cfg = AttackConfig::undetectable(&ch, 0.5).unwrap();
    let ff = RunSpec::feedforward(src, ch, cfg, 200_000, 102).unwrap();
    let report = concordance_report(&ff).unwrap();
    assert!(
        report.all_pass(),
        "feed-forward max |z| = {}",
        report.max_abs_z()
    );
}

#[test]
fn concordance_z_scores_center_near_zero() {
    // Pooled over 20 seeds, the |z| median sits well below 1.5.
    let src = SourceParams::coherent(100.0).unwrap();
    let ch = ChannelParams::symmetric(0.5, 1.0).unwrap();
    let mut zs: Vec<f64> = Vec::new();
    for seed in 0..20 {
        let spec = RunSpec::new(Scenario::Honest, src, ch, None, 50_000, 1000 + seed).unwrap();
        let report = concordance_report(&spec).unwrap();
        zs.extend(report.rows.iter().map(|r| r.z.abs()));
        assert!(
            report.all_pass(),
            "seed {seed}: max |z| = {}",
            report.max_abs_z()
        );
    }
    zs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = zs[zs.len() / 2];
    assert!(median <= 1.5, "median |z| = {median}");
}

#[test]
fn empirical_covariance_matrix_is_positive_semidefinite() {
    let src = SourceParams::coherent(100.0).unwrap();
    let ch = ChannelParams::symmetric(0.5, 1.2).unwrap();
    let cfg = AttackConfig::undetectable(&ch, 0.4).unwrap();
    let spec = RunSpec::feedforward(src, ch, cfg, 100_000, 77).unwrap();
    let m = run(&spec).unwrap();
    let (labels, cov) = m.covariance_matrix();
    assert_eq!(labels.len(), 8);
    // Cholesky with a tolerance scaled to the matrix magnitude.
    let n = cov.len();
    let scale = (0..n).map(|i| cov[i][i]).fold(0.0f64, f64::max);
    let mut l = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let partial: f64 = l[i][..j].iter().zip(&l[j][..j]).map(|(a, b)| a * b).sum();
            let sum = cov[i][j] - partial;
            if i == j {
                assert!(
                    sum > -1e-9 * scale,
                    "negative pivot {sum} at {i} ({})",
                    labels[i]
                );
                l[i][j] = sum.max(0.0).sqrt();
            } else if l[j][j] > 0.0 {
                l[i][j] = sum / l[j][j];
            }
        }
    }
}

#[test]
fn attacked_and_honest_runs_are_indistinguishable_to_bob() {
    // Same statistics for Bob's record and Alice's inference, two
    // different physical channels.
    let src = SourceParams::coherent(100.0).unwrap();
    let ch = ChannelParams::symmetric(0.5, 1.2).unwrap();
    let honest = run(&RunSpec::honest(src, ch, 150_000, 55).unwrap()).unwrap();
    let cfg = AttackConfig::undetectable(&ch, 0.35).unwrap();
    let attacked = run(&RunSpec::feedforward(src, ch, cfg, 150_000, 56).unwrap()).unwrap();

    let (vb_h, se_h) = honest.variance(TapKind::Bob).unwrap();
    let (vb_a, se_a) = attacked.variance(TapKind::Bob).unwrap();
    let se = (se_h.plus * se_h.plus + se_a.plus * se_a.plus).sqrt();
    assert!((vb_h.plus - vb_a.plus).abs() < 5.0 * se);

    let (ca, ca_se) = honest
        .conditional_variance(TapKind::Bob, TapKind::Signal)
        .unwrap();
    let (cb, cb_se) = attacked
        .conditional_variance(TapKind::Bob, TapKind::Signal)
        .unwrap();
    let se = (ca_se.plus * ca_se.plus + cb_se.plus * cb_se.plus).sqrt();
    assert!((ca.plus - cb.plus).abs() < 5.0 * se);
}
