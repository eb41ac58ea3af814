use lambda_core::asymptotics::*;
use lambda_core::numeric::quotient_to_f64;
use lambda_core::series::{solve_plain, TruncatedSystem};
use num_bigint::BigInt;

fn table() -> AsymptoticTable {
    AsymptoticTable::new(DEFAULT_DEPTH).unwrap()
}

fn close(got: f64, want: f64, tol: f64) {
    assert!((got - want).abs() <= tol, "{got} vs {want} (tol {tol})");
}

#[test]
fn singularity_and_multiplier() {
    let t = table();
    let r = t.rho;
    close(r * r * r + r * r + 3.0 * r - 1.0, 0.0, 1e-12);
    close((1.0 - r) * (1.0 - r), 4.0 * r * r / (1.0 - r), 1e-10);
    close(r, 0.29559774, 1e-8);
    close(t.c_plain, 0.606767, 1e-6);
    close(t.a_inf, 1.19154, 1e-4);
    close(t.b_inf, 2.150934, 1e-6);
    close(t.b_inf, t.b_inf_derived, 1e-9);
}

#[test]
fn series_agrees_with_singular_behaviour() {
    let t = table();
    let n = 400;
    let s = solve_plain(n + 1);
    let one = BigInt::from(1);
    let c_n = quotient_to_f64(s.coeff(n), &one);
    let c_next = quotient_to_f64(s.coeff(n + 1), &one);
    let estimate = c_n * t.rho.powi(n as i32) * (n as f64).powf(1.5);
    assert!((estimate / t.c_plain - 1.0).abs() < 0.03, "{estimate}");
    assert!((c_next / c_n * t.rho - 1.0).abs() < 0.01);

    let z = 0.9 * t.rho;
    let sum: f64 = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| quotient_to_f64(c, &one) * z.powi(k as i32))
        .sum();
    close(sum, plain_value(z), 1e-9);
    let closed = TruncatedSystem::solve(300, 64).closed();
    let sum: f64 = closed
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| quotient_to_f64(c, &one) * z.powi(k as i32))
        .sum();
    close(sum, ladder_values(z, 64)[0], 1e-9);
}

#[test]
fn ladder_shape() {
    let t = table();
    for m in 0..t.depth() {
        assert!(t.a[m] <= t.a[m + 1] && t.b[m] <= t.b[m + 1], "m={m}");
        assert!(t.a[m] <= t.a_inf && t.b[m] <= t.b_inf);
    }
    assert!((t.b[48] - t.b_inf).abs() < 1e-10 * (t.b[8] - t.b_inf).abs());
    close(t.b[0] / t.b_inf, 0.12840, 1e-4);
}

#[test]
fn openness_mean() {
    let t = table();
    close(m_openness_mean(&t.b, t.b_inf), 2.01922912627, 1e-6);
    close(m_openness_mean(&t.b[..2], t.b_inf), 0.8716, 1e-4);
    let mut last = 0.0;
    for m in 1..=t.depth() {
        let s = m_openness_mean(&t.b[..=m], t.b_inf);
        assert!(s >= last);
        last = s;
    }
}

#[test]
fn head_abstraction_laws() {
    let t = table();
    let (probs, mean) = closed_head_abs_distribution(t.rho, &t.a, &t.b);
    close(probs.iter().sum(), 1.0, 1e-12);
    close(closed_head_abs_total(t.rho, &t.a, &t.b), t.b[0], 1e-9);
    assert!(mean > 1.0 && mean < 2.0);
    close(t.get("head_abs_mean_plain").unwrap(), 0.4196, 1e-4);
}

#[test]
fn derived_constants() {
    let t = table();
    let get = |k: &str| t.get(k).unwrap();
    close(get("free_var_mean"), 5.7222625231204, 1e-9);
    close(get("lo_mean_plain"), 6.222262521, 1e-8);
    close(get("height_unary_C"), 4.30187, 1e-5);
    close(get("height_natural_C"), 1.27162265120953, 1e-7);
    close(
        get("height_unary_C") / get("height_natural_C"),
        1.0 / t.rho,
        1e-12,
    );
    close(get("profile_amplitude_unary_abstractions"), 2.839, 5e-4);
    close(get("profile_amplitude_unary_variables"), 2.383, 5e-4);
    close(get("profile_amplitude_natural_abstractions"), 0.248, 5e-4);
    close(get("profile_amplitude_natural_variables"), 0.208, 5e-4);
    close(get("index_value_ratio"), t.rho, 0.0);
    close(
        t.mean_unary_height(1e4),
        (std::f64::consts::PI * 1e4).sqrt() / 4.301868701457,
        1e-12,
    );
    assert!(t.peak_unary_height(1e4) < t.mean_unary_height(1e4));
}

#[test]
fn closed_density_from_series() {
    let sys = TruncatedSystem::solve(800, 64);
    let closed = sys.closed();
    let plain = solve_plain(800);
    let r = |n: usize| quotient_to_f64(closed.coeff(n), plain.coeff(n));
    let extrapolated = 2.0 * r(800) - r(400);
    let target = table().b[0] / table().b_inf;
    assert!((extrapolated / target - 1.0).abs() < 0.02, "{extrapolated}");
}

#[test]
fn shallow_singularities() {
    let mut last = 1.0;
    for h in 0..10 {
        let r = shallow_rho(h);
        close(shallow_radicand(r, h), 0.0, 1e-9);
        assert!(r < last && r > rho());
        last = r;
    }
    let values = shallow_values(shallow_rho(2), 2);
    assert_eq!(values.len(), 4);
    assert!(values.windows(2).all(|w| w[0] <= w[1]));
}
