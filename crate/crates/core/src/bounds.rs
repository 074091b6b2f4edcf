//! Closed-form bounds on `μ_α`, each reported with a tightness verdict.

use serde::Serialize;

use crate::graph::{is_dvdr, DistanceProfile, Graph};
use crate::report::sig15;
use crate::spectral::{check_alpha, spectrum_from_profile, SpectralResult};
use crate::{Error, Result, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    MeanTransmission,
    CompleteLower,
    DegreeLower,
    DegreeDiameterUpper,
    TransmissionRowsumLower,
    TransmissionRowsumUpper,
    TmaxUpper,
    GapNonTransmissionRegular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
    /// `value` bounds `T_max − μ_α` from below, strictly.
    Gap,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub name: BoundName,
    pub kind: BoundKind,
    #[serde(serialize_with = "sig15")]
    pub value: f64,
    #[serde(serialize_with = "sig15")]
    pub mu: f64,
    /// `μ − value` (lower), `value − μ` (upper), `T_max − μ − value` (gap).
    #[serde(serialize_with = "sig15")]
    pub gap: f64,
    pub holds: bool,
    /// Gap exceeds the strict-inequality band.
    pub strict: bool,
    pub equality_predicted: bool,
    pub equality_observed: bool,
    /// Equality condition is an "if and only if".
    pub iff: bool,
}

impl BoundReport {
    fn new(
        name: BoundName,
        kind: BoundKind,
        value: f64,
        mu: f64,
        reference: f64,
        equality_predicted: bool,
        iff: bool,
        tol: &Tolerances,
    ) -> Self {
        let gap = match kind {
            BoundKind::Lower => mu - value,
            BoundKind::Upper => value - mu,
            BoundKind::Gap => reference - mu - value,
        };
        let tie = tol.tie_band(value);
        BoundReport {
            name,
            kind,
            value,
            mu,
            gap,
            holds: gap >= -tie,
            strict: gap > tol.strict_band(value),
            equality_predicted,
            equality_observed: gap.abs() <= tie,
            iff,
        }
    }

    /// `holds`, and for iff bounds predicted and observed equality agree.
    pub fn consistent(&self) -> bool {
        self.holds && (!self.iff || self.equality_predicted == self.equality_observed)
    }
}

/// Interval for the eigenvalues other than `μ_α`.
#[derive(Debug, Clone, Serialize)]
pub struct IntervalReport {
    #[serde(serialize_with = "sig15")]
    pub lo: f64,
    #[serde(serialize_with = "sig15")]
    pub hi: f64,
    /// `T_max − (1−α)(n−2)`, bounding `|λ|`.
    #[serde(serialize_with = "sig15")]
    pub abs_bound: f64,
    /// Smallest of `λ − lo`, `hi − λ`, `abs_bound − |λ|` over non-maximal `λ`.
    #[serde(serialize_with = "sig15")]
    pub margin: f64,
    pub holds: bool,
}

/// Everything a bound needs for one `(G, α)`: metrics and the full spectrum.
#[derive(Debug, Clone)]
pub struct BoundContext<'a> {
    pub graph: &'a Graph,
    pub profile: DistanceProfile,
    pub alpha: f64,
    pub spectrum: SpectralResult,
    pub tol: Tolerances,
}

impl<'a> BoundContext<'a> {
    pub fn new(graph: &'a Graph, alpha: f64, tol: &Tolerances) -> Result<Self> {
        check_alpha(alpha)?;
        let profile = DistanceProfile::new(graph)?;
        if profile.n() < 2 {
            return Err(Error::Precondition("bounds need n >= 2".into()));
        }
        let spectrum = spectrum_from_profile(&profile, alpha, tol)?;
        Ok(BoundContext {
            graph,
            profile,
            alpha,
            spectrum,
            tol: *tol,
        })
    }

    pub fn with_spectrum(
        graph: &'a Graph,
        profile: DistanceProfile,
        alpha: f64,
        spectrum: SpectralResult,
        tol: &Tolerances,
    ) -> Self {
        BoundContext {
            graph,
            profile,
            alpha,
            spectrum,
            tol: *tol,
        }
    }

    fn n(&self) -> f64 {
        self.profile.n() as f64
    }

    fn mu(&self) -> f64 {
        self.spectrum.mu
    }

    fn report(&self, name: BoundName, kind: BoundKind, value: f64, eq: bool, iff: bool) -> BoundReport {
        BoundReport::new(
            name,
            kind,
            value,
            self.mu(),
            self.profile.t_max() as f64,
            eq,
            iff,
            &self.tol,
        )
    }

    /// `μ_α ≥ 2σ/n`; equality iff transmission regular.
    pub fn mean_transmission(&self) -> BoundReport {
        let value = 2.0 * self.profile.sigma as f64 / self.n();
        let eq = self.profile.is_transmission_regular();
        self.report(BoundName::MeanTransmission, BoundKind::Lower, value, eq, true)
    }

    /// `μ_α ≥ n − 1`; equality iff complete.
    pub fn complete_lower(&self) -> BoundReport {
        let eq = self.graph.is_complete();
        self.report(BoundName::CompleteLower, BoundKind::Lower, self.n() - 1.0, eq, true)
    }

    /// `f(2n−2−Δ, 2n−2−Δ′)`; equality iff regular with diameter at most 2.
    pub fn degree_lower(&self) -> BoundReport {
        let mut deg = self.graph.degrees();
        deg.sort_unstable_by(|a, b| b.cmp(a));
        let n = self.n();
        let s = 2.0 * n - 2.0 - deg[0] as f64;
        let t = 2.0 * n - 2.0 - deg[1] as f64;
        let value = f_st(self.alpha, s, t);
        let eq = self.graph.is_regular() && self.profile.diameter <= 2;
        self.report(BoundName::DegreeLower, BoundKind::Lower, value, eq, true)
    }

    /// `f(S, S′)` with `S = dn − d(d−1)/2 − 1 − δ(d−1)`; equality iff regular with `d ≤ 2`.
    pub fn degree_diameter_upper(&self) -> BoundReport {
        let mut deg = self.graph.degrees();
        deg.sort_unstable();
        let (delta, delta2) = (deg[0] as f64, deg[1] as f64);
        let n = self.n();
        let d = self.profile.diameter as f64;
        let base = d * n - d * (d - 1.0) / 2.0 - 1.0;
        let s = base - delta * (d - 1.0);
        let s2 = base - delta2 * (d - 1.0);
        let value = f_st(self.alpha, s, s2);
        let eq = self.graph.is_regular() && self.profile.diameter <= 2;
        self.report(BoundName::DegreeDiameterUpper, BoundKind::Upper, value, eq, true)
    }

    /// The `(lower, upper)` pair built from `m₂` at a vertex of maximum
    /// transmission and `m₁`, `e(u)` at a vertex of minimum transmission.
    /// Every extremal vertex is tried and the tightest value kept.
    pub fn transmission_rowsum(&self) -> (BoundReport, BoundReport) {
        let (lower, upper) = transmission_rowsum_values(&self.profile, self.alpha);
        let lo = self.report(
            BoundName::TransmissionRowsumLower,
            BoundKind::Lower,
            lower,
            self.graph.is_complete(),
            true,
        );
        let hi = self.report(
            BoundName::TransmissionRowsumUpper,
            BoundKind::Upper,
            upper,
            is_dvdr(self.graph),
            true,
        );
        (lo, hi)
    }

    /// `μ_α ≤ T_max`; equality iff transmission regular.
    pub fn tmax_upper(&self) -> BoundReport {
        let eq = self.profile.is_transmission_regular();
        let value = self.profile.t_max() as f64;
        self.report(BoundName::TmaxUpper, BoundKind::Upper, value, eq, true)
    }

    /// Strict lower bound on `T_max − μ_α` for graphs that are not transmission regular.
    pub fn gap_nontransmission_regular(&self) -> Result<BoundReport> {
        if self.profile.is_transmission_regular() {
            return Err(Error::Precondition(
                "graph is transmission regular; the gap bound is vacuous".into(),
            ));
        }
        let n = self.n();
        let t = self.profile.t_max() as f64;
        let sigma = self.profile.sigma as f64;
        let a = 1.0 - self.alpha;
        let excess = n * t - 2.0 * sigma;
        let value = a * n * t * excess / (a * n * n * t + 4.0 * sigma * excess);
        let mut r = self.report(BoundName::GapNonTransmissionRegular, BoundKind::Gap, value, false, true);
        r.holds = r.strict;
        Ok(r)
    }

    pub fn nonmaximal_interval(&self) -> IntervalReport {
        let n = self.n();
        let a = 1.0 - self.alpha;
        let (tmin, tmax) = (self.profile.t_min() as f64, self.profile.t_max() as f64);
        let lo = 2.0 * self.alpha * tmin - tmax + a * (n - 2.0);
        let hi = tmax - a * n;
        let abs_bound = tmax - a * (n - 2.0);
        let margin = self
            .spectrum
            .eigenvalues
            .iter()
            .skip(1)
            .map(|&l| (l - lo).min(hi - l).min(abs_bound - l.abs()))
            .fold(f64::INFINITY, f64::min);
        let band = self.tol.tie_band(tmax);
        IntervalReport {
            lo,
            hi,
            abs_bound,
            margin,
            holds: margin >= -band,
        }
    }

    /// Every applicable bound; the gap bound only when not transmission regular.
    pub fn all(&self) -> Vec<BoundReport> {
        let (lo, hi) = self.transmission_rowsum();
        let mut out = vec![
            self.mean_transmission(),
            self.complete_lower(),
            self.degree_lower(),
            self.degree_diameter_upper(),
            lo,
            hi,
            self.tmax_upper(),
        ];
        if let Ok(gap) = self.gap_nontransmission_regular() {
            out.push(gap);
        }
        out
    }
}

/// `f(s,t) = (α(s+t) + √(α²(s+t)² − 4(2α−1)st))/2`.
///
/// The discriminant is evaluated as `α²(s−t)² + 4(1−α)²st`, which is the
/// same polynomial written as a sum of nonnegative terms.
pub fn f_st(alpha: f64, s: f64, t: f64) -> f64 {
    let disc = alpha * alpha * (s - t) * (s - t) + 4.0 * (1.0 - alpha) * (1.0 - alpha) * s * t;
    (alpha * (s + t) + clamped_sqrt(disc)) / 2.0
}

fn clamped_sqrt(disc: f64) -> f64 {
    assert!(disc >= -1e-12, "negative discriminant {disc}");
    disc.max(0.0).sqrt()
}

fn transmission_rowsum_values(p: &DistanceProfile, alpha: f64) -> (f64, f64) {
    let n = p.n();
    let a = 1.0 - alpha;
    let t_min = p.t_min() as f64;
    let t_max = p.t_max() as f64;
    let lower = p
        .argmax_transmission()
        .into_iter()
        .map(|v| {
            let m2 = (0..n)
                .filter(|&w| w != v)
                .map(|w| p.transmissions[w] as f64 - a * p.dist(v, w) as f64)
                .fold(f64::INFINITY, f64::min);
            let disc = (m2 - alpha * t_max).powi(2) + 4.0 * a * a * t_max;
            (m2 + alpha * t_max + clamped_sqrt(disc)) / 2.0
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let upper = p
        .argmin_transmission()
        .into_iter()
        .map(|u| {
            let m1 = (0..n)
                .filter(|&w| w != u)
                .map(|w| p.transmissions[w] as f64 - a * p.dist(u, w) as f64)
                .fold(f64::NEG_INFINITY, f64::max);
            let e = p.eccentricities[u] as f64;
            let disc = (m1 - alpha * t_min).powi(2) + 4.0 * a * a * e * t_min;
            (m1 + alpha * t_min + clamped_sqrt(disc)) / 2.0
        })
        .fold(f64::INFINITY, f64::min);
    (lower, upper)
}

/// Row-sum bracket for the spectral radius of a nonnegative square matrix.
///
/// `p` / `q` index a row of minimum / maximum sum (smallest index on ties).
/// Returns `(lower, upper)`.
pub fn rowsum_matrix_bounds(a: &[Vec<f64>]) -> Result<(f64, f64)> {
    let n = a.len();
    if n < 2 {
        return Err(Error::Precondition("matrix must be at least 2x2".into()));
    }
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::Precondition("matrix must be square".into()));
    }
    if a.iter().flatten().any(|&x| !(x >= 0.0)) {
        return Err(Error::Precondition("matrix must be nonnegative".into()));
    }
    let r: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let mut p = 0;
    let mut q = 0;
    for i in 1..n {
        if r[i] < r[p] {
            p = i;
        }
        if r[i] > r[q] {
            q = i;
        }
    }
    let others = |k: usize| (0..n).filter(move |&i| i != k);
    let ell = others(p).map(|i| r[i] - a[i][p]).fold(f64::NEG_INFINITY, f64::max);
    let m = others(q).map(|i| r[i] - a[i][q]).fold(f64::INFINITY, f64::min);
    let s = others(p).map(|i| a[i][p]).fold(f64::NEG_INFINITY, f64::max);
    let t = others(q).map(|i| a[i][q]).fold(f64::INFINITY, f64::min);
    let (aqq, app) = (a[q][q], a[p][p]);
    let lower = (aqq + m + clamped_sqrt((m - aqq).powi(2) + 4.0 * t * (r[q] - aqq))) / 2.0;
    let upper = (app + ell + clamped_sqrt((ell - app).powi(2) + 4.0 * s * (r[p] - app))) / 2.0;
    Ok((lower, upper))
}

/// `σ(G) ≥ n² − n − 4` for unicyclic `G ≇ S_n^+` of order `n ≥ 6`.
pub fn sigma_unicyclic_floor(g: &Graph) -> Result<bool> {
    let n = g.n();
    if !g.is_connected() || !g.is_unicyclic() {
        return Err(Error::Precondition("graph is not unicyclic".into()));
    }
    if n < 6 {
        return Err(Error::Precondition(format!("needs n >= 6, got {n}")));
    }
    let sp = crate::graph::families::star_plus(n)?;
    if crate::graph::canonical_form(g)? == crate::graph::canonical_form(&sp)? {
        return Err(Error::Precondition("graph is S_n^+".into()));
    }
    let sigma = DistanceProfile::new(g)?.sigma;
    Ok(sigma + 4 + n as u64 >= (n * n) as u64)
}

macro_rules! single {
    ($(#[$m:meta])* $name:ident, $method:ident) => {
        $(#[$m])*
        pub fn $name(g: &Graph, alpha: f64, tol: &Tolerances) -> Result<BoundReport> {
            Ok(BoundContext::new(g, alpha, tol)?.$method())
        }
    };
}

single!(bound_mean_transmission, mean_transmission);
single!(bound_complete_lower, complete_lower);
single!(bound_degree_lower, degree_lower);
single!(bound_degree_diameter_upper, degree_diameter_upper);
single!(bound_tmax_upper, tmax_upper);

pub fn bound_transmission_rowsum(
    g: &Graph,
    alpha: f64,
    tol: &Tolerances,
) -> Result<(BoundReport, BoundReport)> {
    Ok(BoundContext::new(g, alpha, tol)?.transmission_rowsum())
}

pub fn bound_gap_nontransmission_regular(
    g: &Graph,
    alpha: f64,
    tol: &Tolerances,
) -> Result<BoundReport> {
    BoundContext::new(g, alpha, tol)?.gap_nontransmission_regular()
}

pub fn bound_nonmaximal_eigenvalues(g: &Graph, alpha: f64, tol: &Tolerances) -> Result<IntervalReport> {
    Ok(BoundContext::new(g, alpha, tol)?.nonmaximal_interval())
}
