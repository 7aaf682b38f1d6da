use theta_core::C64;

/// Fixed generic sample points used by the verification checks.
pub const SAMPLE_Z: [C64; 5] =
    [C64::new(0.8, 0.5), C64::new(-0.6, 0.9), C64::new(1.3, -0.2), C64::new(0.4, -1.1), C64::new(-1.2, -0.4)];

/// Distance between `z` and `a` on `C*/p^Z`, measured in logarithmic
/// coordinates after reducing by the lattice spanned by `log p` and `2 pi i`.
pub fn torus_dist(z: C64, a: C64, p: C64) -> f64 {
    let w = (z / a).ln();
    let lp = p.ln();
    let s = w.re / lp.re;
    let t = (w.im - s * lp.im) / std::f64::consts::TAU;
    let (s, t) = (s - s.round(), t - t.round());
    (lp * s + C64::new(0.0, std::f64::consts::TAU * t)).norm()
}

/// The `n` candidates on a fixed polar grid that lie furthest (in torus
/// distance) from every point of `bad`. Deterministic.
pub fn good_samples(bad: &[C64], p: C64, n: usize) -> Vec<C64> {
    let mut cands: Vec<(f64, C64)> = Vec::with_capacity(72);
    for r in [0.6, 0.75, 0.9] {
        for k in 0..24 {
            let z = C64::from_polar(r, std::f64::consts::TAU * k as f64 / 24.0);
            let d = bad.iter().map(|&b| torus_dist(z, b, p)).fold(f64::INFINITY, f64::min);
            cands.push((d, z));
        }
    }
    cands.sort_by(|a, b| b.0.total_cmp(&a.0));
    cands.into_iter().take(n).map(|c| c.1).collect()
}
