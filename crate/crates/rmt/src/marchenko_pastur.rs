//! The free Poisson law with rate `λ` and jump `α`: an atom of mass
//! `max(0, 1 − λ)` at zero and density `√((b−x)(x−a)) / (2παx)` on
//! `[a, b] = [α(1−√λ)², α(1+√λ)²]`.

/// Support `[a, b]` of the continuous part.
pub fn support(lambda: f64, alpha: f64) -> (f64, f64) {
    let s = lambda.sqrt();
    (alpha * (1.0 - s).powi(2), alpha * (1.0 + s).powi(2))
}

pub fn density(lambda: f64, alpha: f64, x: f64) -> f64 {
    let (a, b) = support(lambda, alpha);
    if x <= a || x >= b || x <= 0.0 {
        return 0.0;
    }
    ((b - x) * (x - a)).sqrt() / (2.0 * std::f64::consts::PI * alpha * x)
}

/// Mass of the continuous part by composite Simpson quadrature after
/// `x = c + r cos θ`, which removes the square-root endpoints. Requires
/// `λ < 1` so that the integrand stays bounded.
pub fn continuous_mass(lambda: f64, alpha: f64, panels: usize) -> f64 {
    assert!(lambda > 0.0 && lambda < 1.0, "rate must lie in (0,1)");
    let (a, b) = support(lambda, alpha);
    let (c, r) = ((a + b) / 2.0, (b - a) / 2.0);
    let f = |t: f64| {
        let s = t.sin();
        r * r * s * s / (2.0 * std::f64::consts::PI * alpha * (c + r * t.cos()))
    };
    let m = 2 * panels.max(1);
    let h = std::f64::consts::PI / m as f64;
    let inner: f64 = (1..m)
        .map(|k| f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 })
        .sum();
    (f(0.0) + f(std::f64::consts::PI) + inner) * h / 3.0
}

/// `1 − ∫ density`, the atom at zero implied by the density.
pub fn atom_mass(lambda: f64, alpha: f64) -> f64 {
    if lambda >= 1.0 {
        return 0.0;
    }
    1.0 - continuous_mass(lambda, alpha, 2048)
}
