//! The diagonal-forcing pipeline: characteristic polynomials (fixed and as a
//! grid in the forcing variable), the coefficient-root set and its maximum,
//! the hollow-scaling route, cross-route verification, verdict
//! classification, and the dominant-cycle breakdown.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eig::{eigenvalues, ComplexSpectrum, ComplexValue};
use crate::error::Result;
use crate::matrix::DenseMatrix;
use crate::poly::{RealPoly, SigmaCharPoly};
use crate::tol::Tolerances;

/// Monic characteristic polynomial `det(xI - M)` by the Faddeev-LeVerrier
/// recurrence.
pub fn charpoly(m: &DenseMatrix) -> RealPoly {
    let n = m.order();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut aux = DenseMatrix::identity(n);
    for k in 1..=n {
        let am = m.mul(&aux);
        let trace: f64 = (0..n).map(|i| am[(i, i)]).sum();
        let c = -trace / k as f64;
        coeffs[n - k] = c;
        if k < n {
            aux = am;
            for i in 0..n {
                aux[(i, i)] += c;
            }
        }
    }
    RealPoly::new(coeffs)
}

/// Square matrix whose entries are univariate polynomials; used to run
/// Faddeev-LeVerrier over the ring of polynomials in the forcing variable.
struct PolyMatrix {
    n: usize,
    entries: Vec<RealPoly>,
}

impl PolyMatrix {
    fn identity(n: usize) -> PolyMatrix {
        let mut entries = vec![RealPoly::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = RealPoly::constant(1.0);
        }
        PolyMatrix { n, entries }
    }

    fn at(&self, i: usize, j: usize) -> &RealPoly {
        &self.entries[i * self.n + j]
    }

    fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        let n = self.n;
        let mut entries = vec![RealPoly::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    entries[i * n + j] = entries[i * n + j].add(&a.mul(b));
                }
            }
        }
        PolyMatrix { n, entries }
    }

    fn trace(&self) -> RealPoly {
        let mut t = RealPoly::zero();
        for i in 0..self.n {
            t = t.add(self.at(i, i));
        }
        t
    }
}

/// The full coefficient grid of `det(xI - A_sigma)`: diagonal entries are
/// carried as degree-one polynomials in the forcing variable, so each
/// coefficient of `x^i` comes out as a polynomial of degree at most `n - i`.
pub fn sigma_charpoly(a: &DenseMatrix) -> SigmaCharPoly {
    let n = a.order();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                entries.push(RealPoly::monomial(a[(i, j)], 1));
            } else {
                entries.push(RealPoly::constant(a[(i, j)]));
            }
        }
    }
    let forced = PolyMatrix { n, entries };

    let mut grid = vec![RealPoly::zero(); n + 1];
    grid[n] = RealPoly::constant(1.0);
    let mut aux = PolyMatrix::identity(n);
    for k in 1..=n {
        let am = forced.mul(&aux);
        let c = am.trace().scale(-1.0 / k as f64);
        grid[n - k] = c.clone();
        if k < n {
            aux = am;
            for i in 0..n {
                aux.entries[i * n + i] = aux.entries[i * n + i].add(&c);
            }
        }
    }
    SigmaCharPoly::from_grid(n, grid)
}

/// Real roots of one coefficient polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRoots {
    /// Index of the spectral power this coefficient multiplies.
    pub index: usize,
    /// Ascending real roots with multiplicities.
    pub roots: Vec<(f64, usize)>,
    /// Set when the coefficient polynomial is identically zero, which
    /// contributes no roots.
    pub zero_polynomial: bool,
}

/// All real roots of the non-monic coefficient polynomials, flattened and
/// maximized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaSet {
    pub per_coefficient: Vec<CoefficientRoots>,
    /// Root values flattened across coefficients, ascending; one entry per
    /// distinct root of each coefficient.
    pub union: Vec<f64>,
    pub maximum: Option<f64>,
}

/// Real roots of every coefficient polynomial below the monic leading one.
pub fn omega(scp: &SigmaCharPoly, tol: &Tolerances) -> Result<OmegaSet> {
    let n = scp.order();
    let mut per_coefficient = Vec::with_capacity(n);
    let mut union = Vec::new();
    for i in 0..n {
        let p = scp.coefficient(i);
        if p.is_zero() {
            per_coefficient.push(CoefficientRoots {
                index: i,
                roots: Vec::new(),
                zero_polynomial: true,
            });
            continue;
        }
        let roots = p.real_roots_with(tol)?;
        union.extend(roots.iter().map(|&(r, _)| r));
        per_coefficient.push(CoefficientRoots {
            index: i,
            roots,
            zero_polynomial: false,
        });
    }
    union.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let maximum = union.last().copied();
    Ok(OmegaSet {
        per_coefficient,
        union,
        maximum,
    })
}

/// Spectrum of the hollow-scaled matrix and its maximal-real-part eigenvalue.
pub fn scaling_route(m: &DenseMatrix) -> Result<(ComplexSpectrum, Complex64)> {
    let hollow = m.hollow_scale()?;
    let spectrum = eigenvalues(&hollow)?;
    let (_, witness) = spectrum.max_real_part();
    Ok((spectrum, witness))
}

/// Checks that the constant coefficient of the forced grid equals the
/// characteristic polynomial of the hollow-scaled matrix up to the positive
/// factor `det(|D_M|)`. Returns the factor and the normalized coefficient
/// residual.
pub fn verify_r0_equivalence(m: &DenseMatrix) -> Result<(f64, f64)> {
    m.require_negative_diagonal()?;
    let scp = sigma_charpoly(m);
    let r0 = scp.coefficient(0);
    let hollow = m.hollow_scale()?;
    let pi = charpoly(&hollow);
    let factor: f64 = m.diagonal().iter().map(|d| d.abs()).product();
    let scaled = pi.scale(factor);
    let n = m.order();
    let mut worst = 0.0f64;
    for k in 0..=n {
        worst = worst.max((r0.coeff(k) - scaled.coeff(k)).abs());
    }
    let residual = worst / r0.norm_inf().max(1.0);
    Ok((factor, residual))
}

/// Per-power contribution of the constant coefficient evaluated at a fixed
/// forcing value, ordered by descending contribution magnitude.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominantCycleBreakdown {
    pub terms: Vec<CycleContribution>,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleContribution {
    /// Power of the forcing variable.
    pub power: usize,
    /// Coefficient multiplying that power.
    pub coefficient: f64,
    /// `coefficient * sigma_star^power`.
    pub contribution: f64,
}

/// Splits the constant coefficient into its per-power contributions at
/// `sigma_star`. Zero coefficients are omitted.
pub fn dominant_cycles(m: &DenseMatrix, sigma_star: f64) -> DominantCycleBreakdown {
    dominant_cycles_from_grid(&sigma_charpoly(m), sigma_star)
}

pub fn dominant_cycles_from_grid(scp: &SigmaCharPoly, sigma_star: f64) -> DominantCycleBreakdown {
    let r0 = scp.coefficient(0);
    let mut terms: Vec<CycleContribution> = r0
        .coeffs()
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0.0)
        .map(|(power, &coefficient)| CycleContribution {
            power,
            coefficient,
            contribution: coefficient * sigma_star.powi(power as i32),
        })
        .collect();
    terms.sort_by(|a, b| {
        b.contribution
            .abs()
            .partial_cmp(&a.contribution.abs())
            .unwrap()
            .then(b.power.cmp(&a.power))
    });
    let total = terms.iter().map(|t| t.contribution).sum();
    DominantCycleBreakdown { terms, total }
}

/// Signs of every coefficient polynomial evaluated at a fixed forcing value;
/// zero means the value is below `sign_zero_rel` relative to the coefficient
/// norm.
pub fn sign_profile(a: &DenseMatrix, sigma: f64, tol: &Tolerances) -> Vec<i8> {
    sign_profile_grid(&sigma_charpoly(a), sigma, tol)
}

pub fn sign_profile_grid(scp: &SigmaCharPoly, sigma: f64, tol: &Tolerances) -> Vec<i8> {
    scp.coefficients()
        .iter()
        .map(|p| {
            let v = p.eval(sigma);
            if v.abs() <= tol.sign_zero_rel * p.norm_inf() {
                0
            } else if v > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

/// Outcome of the tipping-point analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// The maximal real part vanishes at the tipping point and the spectrum
    /// moves strictly left just beyond it.
    SigmaStable,
    /// The hollow-scaled matrix has a non-real maximal eigenvalue, so the
    /// scaling route does not deliver a real forcing value.
    DegenerateComplexBranch,
    /// A tipping candidate exists but the forced matrix still has an
    /// eigenvalue with positive real part there.
    DegeneratePositiveResidual,
    /// No candidate, or the candidate leaves the spectrum strictly stable.
    NotApplicable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Verdict::SigmaStable => "SigmaStable",
            Verdict::DegenerateComplexBranch => "DegenerateComplexBranch",
            Verdict::DegeneratePositiveResidual => "DegeneratePositiveResidual",
            Verdict::NotApplicable => "NotApplicable",
        };
        f.write_str(name)
    }
}

/// Cross-route diagnostics attached to every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteResiduals {
    /// Gap between the two tipping-point estimates when both exist.
    pub sigma_gap: Option<f64>,
    /// Normalized coefficient residual of the constant-coefficient
    /// equivalence check.
    pub r0_coefficient_residual: f64,
    /// Smallest eigenvalue modulus of the forced matrix at the tipping
    /// candidate.
    pub min_abs_eigenvalue_at_star: Option<f64>,
}

/// Full result of the two-route tipping analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaReport {
    /// Largest real coefficient root.
    pub sigma_star_omega: Option<f64>,
    /// Maximal eigenvalue of the hollow-scaled matrix, when real.
    pub sigma_star_scaling: Option<f64>,
    /// Spectrum of the hollow-scaled matrix.
    pub scaling_spectrum: ComplexSpectrum,
    /// Witness for the maximal eigenvalue of the hollow-scaled matrix.
    pub scaling_lambda_max: ComplexValue,
    /// Maximal real part of the forced spectrum at the tipping candidate.
    pub lambda_max_at_star: Option<f64>,
    pub verdict: Verdict,
    /// Present only for a stable verdict.
    pub dominant_cycles: Option<DominantCycleBreakdown>,
    pub residuals: RouteResiduals,
}

/// Runs both tipping-point routes on a matrix with strictly negative
/// diagonal and classifies the outcome.
pub fn stabilize(m: &DenseMatrix, tol: &Tolerances) -> Result<SigmaReport> {
    m.require_negative_diagonal()?;
    let scp = sigma_charpoly(m);
    let om = omega(&scp, tol)?;
    let (scaling_spectrum, lambda_scaling) = scaling_route(m)?;
    let scaling_is_real = tol.is_real(lambda_scaling);
    let sigma_star_scaling = scaling_is_real.then_some(lambda_scaling.re);
    let sigma_star_omega = om.maximum;
    let (_, r0_residual) = verify_r0_equivalence(m)?;

    let mut lambda_max_at_star = None;
    let mut min_abs_at_star = None;
    let mut verdict = Verdict::NotApplicable;
    let mut breakdown = None;

    if let Some(star) = sigma_star_omega {
        let spec_star = eigenvalues(&m.diagonal_force(star))?;
        let (re_max, _) = spec_star.max_real_part();
        lambda_max_at_star = Some(re_max);
        min_abs_at_star = Some(spec_star.min_modulus());

        let spec_probe = eigenvalues(&m.diagonal_force(star + tol.probe_step))?;
        let (re_probe, _) = spec_probe.max_real_part();

        if re_max.abs() <= tol.sigma_stable && re_probe < 0.0 {
            verdict = Verdict::SigmaStable;
            breakdown = Some(dominant_cycles_from_grid(&scp, star));
        } else if !scaling_is_real {
            verdict = Verdict::DegenerateComplexBranch;
        } else if re_max > tol.sigma_stable {
            verdict = Verdict::DegeneratePositiveResidual;
        }
    } else if !scaling_is_real {
        verdict = Verdict::DegenerateComplexBranch;
    }

    let sigma_gap = match (sigma_star_omega, sigma_star_scaling) {
        (Some(a), Some(b)) => Some((a - b).abs()),
        _ => None,
    };

    Ok(SigmaReport {
        sigma_star_omega,
        sigma_star_scaling,
        scaling_spectrum,
        scaling_lambda_max: lambda_scaling.into(),
        lambda_max_at_star,
        verdict,
        dominant_cycles: breakdown,
        residuals: RouteResiduals {
            sigma_gap,
            r0_coefficient_residual: r0_residual,
            min_abs_eigenvalue_at_star: min_abs_at_star,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn p(coeffs: &[f64]) -> RealPoly {
        RealPoly::new(coeffs.to_vec())
    }

    fn three_cycle() -> DenseMatrix {
        m(&[
            &[-1.0, 1.0, 0.0],
            &[0.0, -1.0, 1.0],
            &[-1.0, 0.0, -1.0],
        ])
    }

    #[test]
    fn charpoly_small_examples() {
        assert_eq!(
            charpoly(&m(&[&[-1.0, 0.0], &[0.0, -1.0]])),
            p(&[1.0, 2.0, 1.0])
        );
        assert_eq!(
            charpoly(&m(&[&[-1.0, 2.0], &[2.0, -1.0]])),
            p(&[-3.0, 2.0, 1.0])
        );
        assert_eq!(charpoly(&m(&[&[0.0, 2.0], &[2.0, 0.0]])), p(&[-4.0, 0.0, 1.0]));
    }

    #[test]
    fn sigma_grid_2x2() {
        let grid = sigma_charpoly(&m(&[&[-1.0, 2.0], &[2.0, -1.0]]));
        assert_eq!(grid.coefficient(2), &p(&[1.0]));
        assert_eq!(grid.coefficient(1), &p(&[0.0, 2.0]));
        assert_eq!(grid.coefficient(0), &p(&[-4.0, 0.0, 1.0]));
    }

    #[test]
    fn sigma_grid_three_cycle() {
        let grid = sigma_charpoly(&three_cycle());
        assert_eq!(grid.coefficient(3), &p(&[1.0]));
        assert_eq!(grid.coefficient(2), &p(&[0.0, 3.0]));
        assert_eq!(grid.coefficient(1), &p(&[0.0, 0.0, 3.0]));
        assert_eq!(grid.coefficient(0), &p(&[1.0, 0.0, 0.0, 1.0]));
    }

    #[test]
    fn sigma_grid_specializes_to_charpoly_at_one() {
        let a = m(&[
            &[-2.0, 3.0, -1.0],
            &[4.0, -5.0, 2.0],
            &[0.5, 1.0, -3.0],
        ]);
        let grid = sigma_charpoly(&a);
        let direct = charpoly(&a);
        let assembled = grid.assemble(1.0);
        for k in 0..=3 {
            assert!((assembled.coeff(k) - direct.coeff(k)).abs() < 1e-10);
        }
    }

    #[test]
    fn omega_examples() {
        let tol = Tolerances::default();

        let om = omega(&sigma_charpoly(&m(&[&[-1.0, 2.0], &[2.0, -1.0]])), &tol).unwrap();
        assert_eq!(om.per_coefficient[1].roots.len(), 1);
        assert!(om.per_coefficient[1].roots[0].0.abs() < 1e-9);
        assert_eq!(om.per_coefficient[0].roots.len(), 2);
        assert!((om.maximum.unwrap() - 2.0).abs() < 1e-9);

        let om = omega(&sigma_charpoly(&m(&[&[-1.0, 0.0], &[0.0, -2.0]])), &tol).unwrap();
        assert!(om.maximum.unwrap().abs() < 1e-9);

        let om = omega(&sigma_charpoly(&three_cycle()), &tol).unwrap();
        assert_eq!(om.union.len(), 3);
        assert!((om.union[0] + 1.0).abs() < 1e-9);
        assert!(om.union[1].abs() < 1e-9);
        assert!(om.union[2].abs() < 1e-9);
        assert!(om.maximum.unwrap().abs() < 1e-9);
    }

    #[test]
    fn scaling_route_examples() {
        let (spectrum, witness) = scaling_route(&m(&[&[-1.0, 2.0], &[2.0, -1.0]])).unwrap();
        assert_eq!(spectrum.len(), 2);
        assert!((witness.re - 2.0).abs() < 1e-10);
        assert!(witness.im.abs() < 1e-10);

        let (_, witness) = scaling_route(&m(&[&[-1.0, 0.0], &[0.0, -2.0]])).unwrap();
        assert_eq!(witness, Complex64::new(0.0, 0.0));

        let (_, witness) = scaling_route(&three_cycle()).unwrap();
        assert!((witness.re - 0.5).abs() < 1e-9);
        assert!((witness.im.abs() - 3.0f64.sqrt() / 2.0).abs() < 1e-9);
    }

    #[test]
    fn r0_equivalence_factors() {
        let (factor, residual) = verify_r0_equivalence(&m(&[&[-1.0, 2.0], &[2.0, -1.0]])).unwrap();
        assert_eq!(factor, 1.0);
        assert!(residual < 1e-12);

        let (factor, residual) = verify_r0_equivalence(&m(&[&[-2.0, 4.0], &[1.0, -5.0]])).unwrap();
        assert_eq!(factor, 10.0);
        assert!(residual < 1e-12);

        let (factor, residual) = verify_r0_equivalence(&m(&[&[-1.0, 0.0], &[0.0, -2.0]])).unwrap();
        assert_eq!(factor, 2.0);
        assert!(residual < 1e-12);
    }

    #[test]
    fn stabilize_symmetric_example() {
        let tol = Tolerances::default();
        let report = stabilize(&m(&[&[-1.0, 2.0], &[2.0, -1.0]]), &tol).unwrap();
        assert_eq!(report.verdict, Verdict::SigmaStable);
        assert!((report.sigma_star_omega.unwrap() - 2.0).abs() < 1e-9);
        assert!((report.sigma_star_scaling.unwrap() - 2.0).abs() < 1e-9);
        assert!(report.residuals.sigma_gap.unwrap() < 1e-9);
        assert!(report.lambda_max_at_star.unwrap().abs() < 1e-9);
        // Forced spectrum at the tipping point is {0, -4}.
        let spec = eigenvalues(&m(&[&[-1.0, 2.0], &[2.0, -1.0]]).diagonal_force(2.0)).unwrap();
        assert!(spec.multiset_matches(
            &ComplexSpectrum::from_values(vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(-4.0, 0.0)
            ]),
            1e-9
        ));
    }

    #[test]
    fn stabilize_diagonal_example() {
        let tol = Tolerances::default();
        let report = stabilize(&m(&[&[-1.0, 0.0], &[0.0, -2.0]]), &tol).unwrap();
        assert_eq!(report.verdict, Verdict::SigmaStable);
        assert!(report.sigma_star_omega.unwrap().abs() < 1e-9);
        assert!(report.lambda_max_at_star.unwrap().abs() < 1e-9);
    }

    #[test]
    fn stabilize_three_cycle_is_degenerate() {
        let tol = Tolerances::default();
        let report = stabilize(&three_cycle(), &tol).unwrap();
        assert_eq!(report.verdict, Verdict::DegenerateComplexBranch);
        assert!(report.sigma_star_scaling.is_none());
        assert!((report.lambda_max_at_star.unwrap() - 0.5).abs() < 1e-9);
        assert!(report.dominant_cycles.is_none());
    }

    #[test]
    fn dominant_cycle_examples() {
        let b = dominant_cycles(&m(&[&[-1.0, 2.0], &[2.0, -1.0]]), 2.0);
        assert_eq!(b.terms.len(), 2);
        assert_eq!(b.terms[0].power, 2);
        assert_eq!(b.terms[0].coefficient, 1.0);
        assert_eq!(b.terms[0].contribution, 4.0);
        assert_eq!(b.terms[1].power, 0);
        assert_eq!(b.terms[1].contribution, -4.0);
        assert_eq!(b.total, 0.0);

        let b = dominant_cycles(&m(&[&[-1.0, 0.0], &[0.0, -2.0]]), 0.0);
        assert_eq!(b.terms.len(), 1);
        assert_eq!(b.terms[0].power, 2);
        assert_eq!(b.terms[0].coefficient, 2.0);
        assert_eq!(b.terms[0].contribution, 0.0);
        assert_eq!(b.total, 0.0);

        let b = dominant_cycles(&three_cycle(), -1.0);
        assert_eq!(b.terms.len(), 2);
        assert_eq!(b.terms[0].power, 3);
        assert_eq!(b.terms[0].contribution, -1.0);
        assert_eq!(b.terms[1].power, 0);
        assert_eq!(b.terms[1].contribution, 1.0);
        assert_eq!(b.total, 0.0);
    }

    #[test]
    fn sign_profile_examples() {
        let tol = Tolerances::default();
        let a = m(&[&[-1.0, 2.0], &[2.0, -1.0]]);
        assert_eq!(sign_profile(&a, 3.0, &tol), vec![1, 1, 1]);
        assert_eq!(sign_profile(&a, 2.0, &tol), vec![0, 1, 1]);
        assert_eq!(sign_profile(&a, 1.0, &tol), vec![-1, 1, 1]);
    }

    #[test]
    fn stabilize_rejects_bad_diagonal() {
        let tol = Tolerances::default();
        let err = stabilize(&m(&[&[1.0, 0.0], &[0.0, -1.0]]), &tol).unwrap_err();
        assert_eq!(err.kind(), "non_negative_diagonal");
    }

    fn random_negative_diagonal(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> DenseMatrix {
        use rand::Rng;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            -f64::from(rng.gen_range(1..=4))
                        } else {
                            f64::from(rng.gen_range(-4..=4))
                        }
                    })
                    .collect()
            })
            .collect();
        DenseMatrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn grid_matches_direct_charpoly_on_random_instances() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x61f2_a901);
        for trial in 0..50 {
            let n = 2 + trial % 5;
            let a = random_negative_diagonal(&mut rng, n);
            let grid = sigma_charpoly(&a);
            for sigma in [-1.5, -0.4, 0.0, 0.7, 1.3] {
                let assembled = grid.assemble(sigma);
                let direct = charpoly(&a.diagonal_force(sigma));
                for k in 0..=n {
                    assert!(
                        (assembled.coeff(k) - direct.coeff(k)).abs() <= 1e-8,
                        "trial {} sigma {} coefficient {}: {} vs {}",
                        trial,
                        sigma,
                        k,
                        assembled.coeff(k),
                        direct.coeff(k)
                    );
                }
            }
        }
    }

    #[test]
    fn coefficients_stay_positive_beyond_their_largest_root() {
        use rand::SeedableRng;
        let tol = Tolerances::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x20cd_17b3);
        for trial in 0..40 {
            let n = 2 + trial % 5;
            let a = random_negative_diagonal(&mut rng, n);
            let grid = sigma_charpoly(&a);
            for i in 0..n {
                let p = grid.coefficient(i);
                let roots = p.real_roots_with(&tol).unwrap();
                let Some(&(r_max, _)) = roots.last() else {
                    continue;
                };
                for delta in [0.01, 1.0, 10.0] {
                    let v = p.eval(r_max + delta);
                    assert!(
                        v > 0.0,
                        "trial {} coefficient {} at {} + {}: {}",
                        trial,
                        i,
                        r_max,
                        delta,
                        v
                    );
                }
            }
        }
    }

    #[test]
    fn omega_boundary_vanishing_and_positivity() {
        use rand::SeedableRng;
        let tol = Tolerances::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x4b1d_9cc4);
        for trial in 0..40 {
            let n = 2 + trial % 5;
            let a = random_negative_diagonal(&mut rng, n);
            let grid = sigma_charpoly(&a);
            let om = omega(&grid, &tol).unwrap();
            let star = om.maximum.unwrap();
            let vanishes = (0..n).any(|i| {
                let p = grid.coefficient(i);
                !p.is_zero() && p.eval(star).abs() <= 1e-9 * p.norm_inf()
            });
            assert!(vanishes, "trial {}: nothing vanishes at {}", trial, star);
            for delta in [0.01, 1.0] {
                for i in 0..n {
                    let v = grid.coefficient(i).eval(star + delta);
                    assert!(v > 0.0, "trial {} coefficient {} at +{}: {}", trial, i, delta, v);
                }
            }
        }
    }
}
