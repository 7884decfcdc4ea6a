//! Univariate real polynomials: ring arithmetic, Horner evaluation, and root
//! isolation through the scalar companion matrix.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eig::{eigenvalues, ComplexSpectrum};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::tol::Tolerances;

/// Coefficients in ascending degree; `coeffs[k]` multiplies the k-th power.
/// The leading coefficient is nonzero unless the polynomial is identically
/// zero, which is stored as the single coefficient `0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealPoly {
    coeffs: Vec<f64>,
}

impl RealPoly {
    pub fn new(coeffs: Vec<f64>) -> RealPoly {
        let mut p = RealPoly { coeffs };
        p.trim();
        if p.coeffs.is_empty() {
            p.coeffs.push(0.0);
        }
        p
    }

    pub fn zero() -> RealPoly {
        RealPoly { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> RealPoly {
        RealPoly::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: f64, k: usize) -> RealPoly {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = c;
        RealPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of the k-th power, zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    /// Largest coefficient magnitude.
    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == 0.0 {
            self.coeffs.pop();
        }
    }

    pub fn add(&self, rhs: &RealPoly) -> RealPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        RealPoly::new(coeffs)
    }

    pub fn sub(&self, rhs: &RealPoly) -> RealPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        RealPoly::new(coeffs)
    }

    pub fn mul(&self, rhs: &RealPoly) -> RealPoly {
        if self.is_zero() || rhs.is_zero() {
            return RealPoly::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RealPoly::new(coeffs)
    }

    pub fn scale(&self, c: f64) -> RealPoly {
        RealPoly::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Horner evaluation at a real point.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// Horner evaluation at a complex point.
    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    /// All complex roots via the companion matrix of the monic normalization.
    /// Constants yield an empty spectrum; the zero polynomial is rejected.
    pub fn all_roots(&self) -> Result<ComplexSpectrum> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let deg = self.degree();
        if deg == 0 {
            return Ok(ComplexSpectrum::from_values(Vec::new()));
        }
        let lead = self.coeffs[deg];
        let mut companion = DenseMatrix::zeros(deg);
        for i in 1..deg {
            companion[(i, i - 1)] = 1.0;
        }
        for i in 0..deg {
            companion[(i, deg - 1)] = -self.coeffs[i] / lead;
        }
        eigenvalues(&companion)
    }

    /// Real roots in ascending order with multiplicities, obtained by
    /// filtering the companion spectrum through the real-classification
    /// threshold and clustering within `cluster_rel * max(1, |root|)`.
    pub fn real_roots(&self, cluster_rel: f64) -> Result<Vec<(f64, usize)>> {
        let tol = Tolerances {
            root_cluster_rel: cluster_rel,
            ..Tolerances::default()
        };
        self.real_roots_with(&tol)
    }

    pub fn real_roots_with(&self, tol: &Tolerances) -> Result<Vec<(f64, usize)>> {
        let spectrum = self.all_roots()?;
        let mut reals: Vec<f64> = spectrum
            .values()
            .iter()
            .filter(|z| tol.is_real(**z))
            .map(|z| z.re)
            .collect();
        reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut clusters: Vec<(f64, usize)> = Vec::new();
        let mut idx = 0;
        while idx < reals.len() {
            let mut end = idx + 1;
            while end < reals.len() {
                let width = tol.root_cluster_rel * reals[end].abs().max(1.0);
                if reals[end] - reals[end - 1] <= width {
                    end += 1;
                } else {
                    break;
                }
            }
            let count = end - idx;
            let mean = reals[idx..end].iter().sum::<f64>() / count as f64;
            clusters.push((mean, count));
            idx = end;
        }
        Ok(clusters)
    }
}

impl std::fmt::Display for RealPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 && !(first && k == 0) {
                continue;
            }
            if first {
                write!(f, "{}", c)?;
                first = false;
            } else if c < 0.0 {
                write!(f, " - {}", -c)?;
            } else {
                write!(f, " + {}", c)?;
            }
            if k > 0 {
                write!(f, "*x^{}", k)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The characteristic-polynomial grid of a matrix under diagonal forcing:
/// for each power `i` of the spectral variable, the coefficient is itself a
/// polynomial in the forcing variable of degree at most `n - i`, and the
/// leading entry `grid[n]` is the constant 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaCharPoly {
    n: usize,
    grid: Vec<RealPoly>,
}

impl SigmaCharPoly {
    pub(crate) fn from_grid(n: usize, grid: Vec<RealPoly>) -> SigmaCharPoly {
        debug_assert_eq!(grid.len(), n + 1);
        debug_assert_eq!(grid[n], RealPoly::constant(1.0));
        debug_assert!(grid.iter().enumerate().all(|(i, p)| p.degree() <= n - i));
        SigmaCharPoly { n, grid }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Coefficient polynomial of the i-th spectral power.
    pub fn coefficient(&self, i: usize) -> &RealPoly {
        &self.grid[i]
    }

    pub fn coefficients(&self) -> &[RealPoly] {
        &self.grid
    }

    /// Specializes the grid at a fixed forcing value, yielding the monic
    /// characteristic polynomial of the forced matrix.
    pub fn assemble(&self, sigma: f64) -> RealPoly {
        RealPoly::new(self.grid.iter().map(|p| p.eval(sigma)).collect())
    }
}
