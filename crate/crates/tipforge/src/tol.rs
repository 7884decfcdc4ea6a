use serde::{Deserialize, Serialize};

/// Numeric thresholds used across the analyses, centralized so that reports
/// and tests pin the exact values in effect.
///
/// Every field can be overridden through the `TIPFORGE_TOL_*` environment
/// variables or the matching `--tol-*` CLI flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative imaginary-part threshold below which an eigenvalue counts as
    /// real: `|Im z| <= real_eig_rel * max(1, |z|)`.
    pub real_eig_rel: f64,
    /// Half-width of the band around zero in which the maximal real part at
    /// the tipping point counts as exactly zero.
    pub sigma_stable: f64,
    /// Allowed gap between the coefficient-root and scaling estimates of the
    /// tipping point.
    pub route_agreement: f64,
    /// Ceiling on the normalized coefficient residual when cross-checking the
    /// constant coefficient against the hollow-scaled characteristic polynomial.
    pub r0_residual: f64,
    /// Relative threshold below which an evaluated coefficient is reported as
    /// having sign zero.
    pub sign_zero_rel: f64,
    /// Relative clustering width when merging nearby real roots into one root
    /// with multiplicity.
    pub root_cluster_rel: f64,
    /// Rounding grid for spectral signature keys when grouping sign patterns.
    pub canonical_key: f64,
    /// Offset added to the tipping point when probing that the spectrum moves
    /// strictly into the left half-plane.
    pub probe_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            real_eig_rel: 1e-8,
            sigma_stable: 1e-6,
            route_agreement: 1e-6,
            r0_residual: 1e-8,
            sign_zero_rel: 1e-12,
            root_cluster_rel: 1e-6,
            canonical_key: 1e-6,
            probe_step: 0.01,
        }
    }
}

impl Tolerances {
    /// Defaults overridden by any `TIPFORGE_TOL_*` environment variables.
    /// Unparseable values are ignored rather than fatal.
    pub fn from_env() -> Self {
        let mut t = Tolerances::default();
        let read = |name: &str| -> Option<f64> {
            std::env::var(name).ok().and_then(|v| v.trim().parse().ok())
        };
        if let Some(v) = read("TIPFORGE_TOL_REAL_EIG") {
            t.real_eig_rel = v;
        }
        if let Some(v) = read("TIPFORGE_TOL_SIGMA_STABLE") {
            t.sigma_stable = v;
        }
        if let Some(v) = read("TIPFORGE_TOL_ROUTE_AGREEMENT") {
            t.route_agreement = v;
        }
        if let Some(v) = read("TIPFORGE_TOL_R0_RESIDUAL") {
            t.r0_residual = v;
        }
        if let Some(v) = read("TIPFORGE_TOL_SIGN_ZERO") {
            t.sign_zero_rel = v;
        }
        if let Some(v) = read("TIPFORGE_TOL_ROOT_CLUSTER") {
            t.root_cluster_rel = v;
        }
        if let Some(v) = read("TIPFORGE_TOL_CANONICAL_KEY") {
            t.canonical_key = v;
        }
        if let Some(v) = read("TIPFORGE_TOL_PROBE_STEP") {
            t.probe_step = v;
        }
        t
    }

    /// True when `z` passes the real-classification threshold.
    pub fn is_real(&self, z: num_complex::Complex64) -> bool {
        z.im.abs() <= self.real_eig_rel * z.norm().max(1.0)
    }
}
