use std::collections::{HashMap, HashSet};

use lambda_core::asymptotics::plain_value;
use lambda_core::sampler::*;
use lambda_core::{Enumerator, OpennessBound, Term};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn chi_square_uniform(
    family: SamplerFamily,
    bound: OpennessBound,
    keep: impl Fn(&Term) -> bool,
    draws: usize,
    seed: u64,
) {
    let n = 12;
    let support: Vec<Term> = Enumerator::new()
        .terms(n, bound)
        .iter()
        .filter(|t| keep(t))
        .cloned()
        .collect();
    let sampler = Sampler::new(SamplerConfig::new(family).window(n, n)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut freq: HashMap<Term, u64> = HashMap::new();
    for _ in 0..draws {
        let t = sampler.sample(&mut rng).unwrap().term;
        *freq.entry(t).or_insert(0) += 1;
    }
    let members: HashSet<&Term> = support.iter().collect();
    assert!(freq.keys().all(|t| members.contains(t)));
    let expected = draws as f64 / support.len() as f64;
    let stat: f64 = support
        .iter()
        .map(|t| {
            let o = *freq.get(t).unwrap_or(&0) as f64;
            (o - expected).powi(2) / expected
        })
        .sum();
    let critical = ChiSquared::new((support.len() - 1) as f64)
        .unwrap()
        .inverse_cdf(0.999);
    assert!(stat < critical, "{family:?}: chi2 {stat} >= {critical}");
}

#[test]
fn plain_uniform_at_size_12() {
    chi_square_uniform(
        SamplerFamily::Plain,
        OpennessBound::Unbounded,
        |_| true,
        100_000,
        11,
    );
}

#[test]
fn closed_uniform_at_size_12() {
    chi_square_uniform(
        SamplerFamily::Closed,
        OpennessBound::CLOSED,
        |_| true,
        20_000,
        12,
    );
}

#[test]
fn shallow_uniform_at_size_12() {
    chi_square_uniform(
        SamplerFamily::Shallow(1),
        OpennessBound::CLOSED,
        |t| t.max_index() <= 1,
        20_000,
        13,
    );
}

#[test]
fn family_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for family in [
        SamplerFamily::Closed,
        SamplerFamily::Open(2),
        SamplerFamily::Shallow(0),
        SamplerFamily::Shallow(3),
    ] {
        let s = Sampler::new(SamplerConfig::new(family).window(12, 400)).unwrap();
        for _ in 0..200 {
            let t = s.sample(&mut rng).unwrap().term;
            assert!(family.admits(&t), "{family:?} {t}");
            if family == SamplerFamily::Shallow(0) {
                assert_eq!(t.max_index(), 0);
            }
        }
    }
}

#[test]
fn every_table_is_normalized() {
    for family in [
        SamplerFamily::Plain,
        SamplerFamily::Closed,
        SamplerFamily::Open(3),
        SamplerFamily::Shallow(0),
        SamplerFamily::Shallow(30),
    ] {
        for z in [None, Some(0.2), Some(0.29)] {
            let mut c = SamplerConfig::new(family);
            c.z = z;
            let t = calibrate(&c).unwrap();
            assert!(t.max_normalization_error() <= 1e-12, "{family:?} {z:?}");
        }
    }
    let mut c = SamplerConfig::new(SamplerFamily::Closed);
    c.ladder_depth = 3;
    assert!(calibrate(&c).unwrap().max_normalization_error() <= 1e-12);
}

#[test]
fn saturated_shallow_matches_closed() {
    let closed = calibrate(&SamplerConfig::new(SamplerFamily::Closed)).unwrap();
    let shallow = calibrate(&SamplerConfig::new(SamplerFamily::Shallow(64))).unwrap();
    for m in 0..=64 {
        assert!((closed.lambda[m] - shallow.lambda[m]).abs() < 1e-9);
        assert!((closed.app[m] - shallow.app[m]).abs() < 1e-9);
        assert!((closed.index[m] - shallow.index[m]).abs() < 1e-9);
    }
}

#[test]
fn mean_size_below_singularity() {
    let z = 0.9 * lambda_core::asymptotics::rho();
    let s = Sampler::new(SamplerConfig::new(SamplerFamily::Plain).z(z)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut nodes = Vec::new();
    let draws = 10_000;
    let sizes: Vec<f64> = (0..draws)
        .map(|_| s.draw(&mut rng, u64::MAX, &mut nodes).unwrap() as f64)
        .collect();
    let mean = sizes.iter().sum::<f64>() / draws as f64;
    let var = sizes.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (draws - 1) as f64;
    let h = 1e-6;
    let derivative = (plain_value(z + h) - plain_value(z - h)) / (2.0 * h);
    let expected = z * derivative / plain_value(z);
    let se = (var / draws as f64).sqrt();
    assert!(
        (mean - expected).abs() < 3.0 * se,
        "{mean} vs {expected} (se {se})"
    );
}

#[test]
fn seeded_draws_replay() {
    let s = Sampler::new(SamplerConfig::new(SamplerFamily::Closed).window(100, 1000)).unwrap();
    let run = |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..20)
            .map(|_| s.sample(&mut rng).unwrap())
            .collect::<Vec<_>>()
    };
    assert_eq!(run(9), run(9));
    assert_ne!(run(9), run(10));
}

#[test]
fn attempts_run_out() {
    let mut c = SamplerConfig::new(SamplerFamily::Plain).window(5000, 5000);
    c.max_attempts = 3;
    let s = Sampler::new(c).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    assert_eq!(
        s.sample(&mut rng),
        Err(SampleError::AttemptsExhausted { attempts: 3 })
    );
}
