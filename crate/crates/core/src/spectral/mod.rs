//! The distance α-matrix, its spectrum, Perron vector and α-energy.

mod eigen;
mod power;

use serde::Serialize;

use crate::graph::{DistanceProfile, Graph};
use crate::report::{sig15, sig15_opt, sig15_vec};
use crate::{Error, Result, Tolerances};

pub use eigen::SymmetricEigen;
pub use power::{power_iteration, PowerResult};

/// Dense `D_α(G) = α·T(G) + (1−α)·D(G)`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaMatrix {
    alpha: f64,
    n: usize,
    entries: Vec<f64>,
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && (0.0..1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::AlphaDomain(alpha))
    }
}

impl AlphaMatrix {
    pub fn from_profile(profile: &DistanceProfile, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let n = profile.n();
        let mut entries = vec![0.0; n * n];
        for u in 0..n {
            for v in 0..n {
                entries[u * n + v] = if u == v {
                    alpha * profile.transmissions[u] as f64
                } else {
                    (1.0 - alpha) * profile.dist(u, v) as f64
                };
            }
        }
        Ok(AlphaMatrix { alpha, n, entries })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.entries[u * self.n + v]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.entries.chunks(self.n.max(1)).map(|r| r.iter().sum()).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        self.entries
            .chunks(self.n.max(1))
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Rows as nested vectors, e.g. for [`crate::bounds::rowsum_matrix_bounds`].
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n.max(1)).map(<[f64]>::to_vec).collect()
    }
}

pub fn alpha_matrix(g: &Graph, alpha: f64) -> Result<AlphaMatrix> {
    check_alpha(alpha)?;
    AlphaMatrix::from_profile(&DistanceProfile::new(g)?, alpha)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralResult {
    #[serde(serialize_with = "sig15")]
    pub mu: f64,
    /// Nonincreasing; empty when only the radius was requested.
    #[serde(serialize_with = "sig15_vec")]
    pub eigenvalues: Vec<f64>,
    /// Positive unit Perron vector.
    #[serde(serialize_with = "sig15_vec")]
    pub perron: Vec<f64>,
    /// `max_u |(D_α x)_u − μ x_u|`.
    #[serde(serialize_with = "sig15")]
    pub residual: f64,
    #[serde(serialize_with = "sig15_opt")]
    pub spectral_gap: Option<f64>,
    /// Set for the one-vertex graph, where `D_α` is the 1×1 zero matrix.
    pub trivial: bool,
}

impl SpectralResult {
    fn trivial() -> Self {
        SpectralResult {
            mu: 0.0,
            eigenvalues: vec![0.0],
            perron: vec![1.0],
            residual: 0.0,
            spectral_gap: None,
            trivial: true,
        }
    }
}

/// Spectral radius and Perron vector by power iteration.
pub fn spectral_radius(g: &Graph, alpha: f64, tol: &Tolerances) -> Result<SpectralResult> {
    check_alpha(alpha)?;
    let profile = DistanceProfile::new(g)?;
    radius_from_profile(&profile, alpha, tol)
}

pub fn radius_from_profile(
    profile: &DistanceProfile,
    alpha: f64,
    tol: &Tolerances,
) -> Result<SpectralResult> {
    if profile.n() == 1 {
        return Ok(SpectralResult::trivial());
    }
    let m = AlphaMatrix::from_profile(profile, alpha)?;
    let band = tol.residual_band(profile.t_max() as f64);
    let cap = tol.power_cap_factor * profile.n();
    let p = power_iteration(&m, band, cap)?;
    Ok(SpectralResult {
        mu: p.mu,
        eigenvalues: Vec::new(),
        perron: p.vector,
        residual: p.residual,
        spectral_gap: None,
        trivial: false,
    })
}

/// Full spectrum and Perron vector from the dense symmetric solver.
pub fn full_spectrum(g: &Graph, alpha: f64, tol: &Tolerances) -> Result<SpectralResult> {
    check_alpha(alpha)?;
    let profile = DistanceProfile::new(g)?;
    spectrum_from_profile(&profile, alpha, tol)
}

pub fn spectrum_from_profile(
    profile: &DistanceProfile,
    alpha: f64,
    tol: &Tolerances,
) -> Result<SpectralResult> {
    if profile.n() == 1 {
        return Ok(SpectralResult::trivial());
    }
    let m = AlphaMatrix::from_profile(profile, alpha)?;
    let eig = SymmetricEigen::new(m.entries(), m.n())?;
    let mut perron = eig.vector(0);
    if perron.iter().sum::<f64>() < 0.0 {
        perron.iter_mut().for_each(|x| *x = -*x);
    }
    let mu = eig.values[0];
    let residual = residual_of(&m, mu, &perron);
    let band = tol.residual_band(profile.t_max() as f64);
    if residual > band {
        return Err(Error::NonConvergence {
            iterations: 0,
            residual,
        });
    }
    let gap = eig.values[0] - eig.values[1];
    Ok(SpectralResult {
        mu,
        spectral_gap: Some(gap),
        eigenvalues: eig.values,
        perron,
        residual,
        trivial: false,
    })
}

fn residual_of(m: &AlphaMatrix, mu: f64, x: &[f64]) -> f64 {
    m.mul_vec(x)
        .iter()
        .zip(x)
        .map(|(y, xi)| (y - mu * xi).abs())
        .fold(0.0, f64::max)
}

/// `xᵀ D_α x` in the pairwise form `Σ_{u<v} d(u,v)(α(x_u² + x_v²) + 2(1−α)x_u x_v)`.
pub fn rayleigh(g: &Graph, alpha: f64, x: &[f64]) -> Result<f64> {
    check_alpha(alpha)?;
    let profile = DistanceProfile::new(g)?;
    rayleigh_from_profile(&profile, alpha, x)
}

pub fn rayleigh_from_profile(profile: &DistanceProfile, alpha: f64, x: &[f64]) -> Result<f64> {
    let n = profile.n();
    if x.len() != n {
        return Err(Error::Precondition(format!(
            "vector has {} entries for {n} vertices",
            x.len()
        )));
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Precondition(format!("vector norm {norm} is not 1")));
    }
    if !x.iter().any(|&v| v >= 0.0) {
        return Err(Error::Precondition("vector has no nonnegative entry".into()));
    }
    let mut total = 0.0;
    for u in 0..n {
        for v in u + 1..n {
            let d = profile.dist(u, v) as f64;
            total += d * (alpha * (x[u] * x[u] + x[v] * x[v]) + 2.0 * (1.0 - alpha) * x[u] * x[v]);
        }
    }
    Ok(total)
}

/// `max_u |Σ_v d(u,v)(α x_u + (1−α) x_v) − μ x_u|`.
pub fn eigenequation_residual(g: &Graph, alpha: f64, mu: f64, x: &[f64]) -> Result<f64> {
    check_alpha(alpha)?;
    let profile = DistanceProfile::new(g)?;
    if x.len() != profile.n() {
        return Err(Error::Precondition("vector length does not match order".into()));
    }
    Ok(eigenequation_residual_from_profile(&profile, alpha, mu, x))
}

pub fn eigenequation_residual_from_profile(
    profile: &DistanceProfile,
    alpha: f64,
    mu: f64,
    x: &[f64],
) -> f64 {
    let n = profile.n();
    (0..n)
        .map(|u| {
            let lhs: f64 = (0..n)
                .map(|v| profile.dist(u, v) as f64 * (alpha * x[u] + (1.0 - alpha) * x[v]))
                .sum();
            (lhs - mu * x[u]).abs()
        })
        .fold(0.0, f64::max)
}

/// `Σ_i |μ_α^(i) − 2ασ/n|`.
pub fn alpha_energy(g: &Graph, alpha: f64, tol: &Tolerances) -> Result<f64> {
    check_alpha(alpha)?;
    let profile = DistanceProfile::new(g)?;
    let spec = spectrum_from_profile(&profile, alpha, tol)?;
    Ok(energy_of(&spec.eigenvalues, alpha, profile.sigma, profile.n()))
}

pub fn energy_of(eigenvalues: &[f64], alpha: f64, sigma: u64, n: usize) -> f64 {
    let centre = 2.0 * alpha * sigma as f64 / n as f64;
    eigenvalues.iter().map(|l| (l - centre).abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    const T: Tolerances = Tolerances {
        residual: 1e-10,
        strict: 1e-9,
        tie: 1e-7,
        power_cap_factor: 100,
    };

    #[test]
    fn k2_matrix() {
        for alpha in [0.0, 0.3, 0.9] {
            let m = alpha_matrix(&complete(2), alpha).unwrap();
            assert_eq!(m.entries(), &[alpha, 1.0 - alpha, 1.0 - alpha, alpha]);
        }
    }

    #[test]
    fn k3_half_matrix() {
        let m = alpha_matrix(&complete(3), 0.5).unwrap();
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(m.get(u, v), if u == v { 1.0 } else { 0.5 });
            }
        }
    }

    #[test]
    fn alpha_zero_is_distance_matrix() {
        let m = alpha_matrix(&path(3), 0.0).unwrap();
        assert_eq!(m.to_rows(), vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]]);
    }

    #[test]
    fn alpha_domain() {
        assert_eq!(alpha_matrix(&path(3), 1.0), Err(Error::AlphaDomain(1.0)));
        assert!(alpha_matrix(&path(3), -0.1).is_err());
        assert!(spectral_radius(&path(3), f64::NAN, &T).is_err());
    }

    #[test]
    fn row_sums_and_trace() {
        let g = broom(7, 3).unwrap();
        let p = DistanceProfile::new(&g).unwrap();
        let m = AlphaMatrix::from_profile(&p, 0.37).unwrap();
        for (r, &t) in m.row_sums().iter().zip(&p.transmissions) {
            assert!((r - t as f64).abs() < 1e-12);
        }
        assert!((m.trace() - 2.0 * 0.37 * p.sigma as f64).abs() < 1e-12);
    }

    #[test]
    fn complete_radius_is_n_minus_one() {
        for n in 2..8 {
            for alpha in [0.0, 0.5, 0.9] {
                let r = spectral_radius(&complete(n), alpha, &T).unwrap();
                assert!((r.mu - (n as f64 - 1.0)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn c4_radius() {
        for alpha in [0.0, 0.25, 0.75] {
            assert!((spectral_radius(&cycle(4).unwrap(), alpha, &T).unwrap().mu - 4.0).abs() < 1e-10);
        }
    }

    #[test]
    fn p3_closed_forms() {
        let r = spectral_radius(&path(3), 0.0, &T).unwrap();
        assert!((r.mu - (1.0 + 3f64.sqrt())).abs() < 1e-10);
        let s = full_spectrum(&path(3), 0.0, &T).unwrap();
        let expect = [1.0 + 3f64.sqrt(), 1.0 - 3f64.sqrt(), -2.0];
        for (a, b) in s.eigenvalues.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn small_complete_spectra() {
        let s = full_spectrum(&complete(3), 0.0, &T).unwrap();
        for (a, b) in s.eigenvalues.iter().zip([2.0, -1.0, -1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        let alpha = 0.35;
        let s = full_spectrum(&complete(2), alpha, &T).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((s.eigenvalues[1] - (2.0 * alpha - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn trivial_graph_flagged() {
        let r = spectral_radius(&Graph::empty(1), 0.5, &T).unwrap();
        assert!(r.trivial);
        assert_eq!(r.mu, 0.0);
        assert!(full_spectrum(&Graph::empty(1), 0.5, &T).unwrap().trivial);
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(spectral_radius(&g, 0.5, &T).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn rayleigh_examples() {
        let c5 = cycle(5).unwrap();
        let ones = vec![1.0 / 5f64.sqrt(); 5];
        assert!((rayleigh(&c5, 0.4, &ones).unwrap() - 6.0).abs() < 1e-12);
        let g = broom(6, 3).unwrap();
        let p = DistanceProfile::new(&g).unwrap();
        let ones = vec![1.0 / 6f64.sqrt(); 6];
        let expect = 2.0 * p.sigma as f64 / 6.0;
        assert!((rayleigh(&g, 0.7, &ones).unwrap() - expect).abs() < 1e-12);
        let r = spectral_radius(&g, 0.7, &T).unwrap();
        assert!((rayleigh(&g, 0.7, &r.perron).unwrap() - r.mu).abs() < 1e-10);
        assert!(rayleigh(&g, 0.7, &[1.0; 6]).is_err());
        assert!(rayleigh(&g, 0.7, &[-ones[0]; 6]).is_err());
    }

    #[test]
    fn eigenequation_residual_examples() {
        let x = vec![1.0 / 3f64.sqrt(); 3];
        assert!(eigenequation_residual(&complete(3), 0.6, 2.0, &x).unwrap() < 1e-12);
        let g = kite(6, 3).unwrap();
        let r = full_spectrum(&g, 0.2, &T).unwrap();
        assert!(eigenequation_residual(&g, 0.2, r.mu, &r.perron).unwrap() < 1e-10);
        let mut y = r.perron.clone();
        y[0] += 1e-3;
        assert!(eigenequation_residual(&g, 0.2, r.mu, &y).unwrap() > 1e-6);
    }

    #[test]
    fn energy_examples() {
        assert!((alpha_energy(&complete(3), 0.0, &T).unwrap() - 4.0).abs() < 1e-12);
        assert!((alpha_energy(&complete(2), 0.0, &T).unwrap() - 2.0).abs() < 1e-12);
    }
}
