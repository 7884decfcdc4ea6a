//! Intrinsic spectral signatures: the monic matrix polynomial built from
//! weight-difference matrices, its block companion linearization, and the
//! exhaustive sign-pattern census grouped by shared spectra.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::census::{weight_matrices, Grouping, SignPattern};
use crate::eig::{eigenvalues, ComplexSpectrum, ComplexValue};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::tol::Tolerances;

/// Largest order accepted by the exhaustive census: `3^(n*n)` patterns.
pub const MAX_CENSUS_ORDER: usize = 3;

/// How the coefficient matrices are derived from a pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignatureMode {
    /// Weight differences of the pattern as given, diagonal included.
    Plain,
    /// Weight differences of the zero-diagonal copy; requires a strictly
    /// negative diagonal on the input pattern.
    HollowScaled,
}

/// Monic matrix polynomial: the leading coefficient is the identity and is
/// never stored; `coefficient_matrices[i]` multiplies the i-th power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixPolynomial {
    pub n: usize,
    pub degree: usize,
    pub coefficient_matrices: Vec<Vec<Vec<i64>>>,
}

/// Coefficient matrices from the positive/negative weight differences of
/// every coefficient below the monic leading one.
pub fn matrix_polynomial(p: &SignPattern, mode: SignatureMode) -> Result<MatrixPolynomial> {
    let n = p.order();
    let source = match mode {
        SignatureMode::Plain => p.clone(),
        SignatureMode::HollowScaled => {
            for i in 0..n {
                if p.sign(i, i) >= 0 {
                    return Err(Error::NonNegativeDiagonal {
                        index: i,
                        value: f64::from(p.sign(i, i)),
                    });
                }
            }
            p.hollowed()
        }
    };
    let coefficient_matrices = (0..n)
        .map(|i| weight_matrices(&source, i, Grouping::WholeCoefficient).diff)
        .collect();
    Ok(MatrixPolynomial {
        n,
        degree: n,
        coefficient_matrices,
    })
}

/// Standard linearization: identity blocks on the block superdiagonal and
/// the negated coefficient matrices along the final block row.
pub fn block_companion(mp: &MatrixPolynomial) -> DenseMatrix {
    let n = mp.n;
    let d = mp.degree;
    let size = n * d;
    let mut out = DenseMatrix::zeros(size);
    for block in 0..d.saturating_sub(1) {
        for i in 0..n {
            out[(block * n + i, (block + 1) * n + i)] = 1.0;
        }
    }
    for (j, a) in mp.coefficient_matrices.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                out[((d - 1) * n + r, j * n + c)] = -(a[r][c] as f64);
            }
        }
    }
    out
}

/// Spectrum rounded onto a fixed grid and sorted, so that patterns sharing a
/// signature compare equal. Stored in grid units to keep ordering exact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey(pub Vec<(i64, i64)>);

impl CanonicalKey {
    fn from_spectrum(spectrum: &ComplexSpectrum, grid: f64) -> CanonicalKey {
        let mut rounded: Vec<(i64, i64)> = spectrum
            .values()
            .iter()
            .map(|z| ((z.re / grid).round() as i64, (z.im / grid).round() as i64))
            .collect();
        rounded.sort();
        CanonicalKey(rounded)
    }

    /// The rounded eigenvalues back in value units.
    pub fn values(&self, grid: f64) -> Vec<ComplexValue> {
        self.0
            .iter()
            .map(|&(re, im)| ComplexValue {
                re: re as f64 * grid,
                im: im as f64 * grid,
            })
            .collect()
    }

    /// Largest componentwise distance to another key of the same length, in
    /// grid units.
    fn distance(&self, other: &CanonicalKey) -> i64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a.0 - b.0).abs().max((a.1 - b.1).abs()))
            .max()
            .unwrap_or(0)
    }
}

/// The eigenvalue multiset assigned to a sign pattern by its weight-matrix
/// polynomial, with the maximal real part and the grouping key.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSignature {
    pub spectrum: ComplexSpectrum,
    pub lambda_max: f64,
    pub witness: ComplexValue,
    pub canonical_key: CanonicalKey,
}

pub fn spectral_signature(
    p: &SignPattern,
    mode: SignatureMode,
    tol: &Tolerances,
) -> Result<SpectralSignature> {
    let mp = matrix_polynomial(p, mode)?;
    let companion = block_companion(&mp);
    let spectrum = eigenvalues(&companion)?;
    let (lambda_max, witness) = spectrum.max_real_part();
    let canonical_key = CanonicalKey::from_spectrum(&spectrum, tol.canonical_key);
    Ok(SpectralSignature {
        spectrum,
        lambda_max,
        witness: witness.into(),
        canonical_key,
    })
}

/// Exhaustive classification of every sign pattern of a given order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusResult {
    pub pattern_count: u64,
    pub cospectral_classes: Vec<CospectralClass>,
    pub comaximal_classes: Vec<ComaximalClass>,
    pub minimum_lambda_max: MinimumLambdaMax,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CospectralClass {
    /// Rounded shared spectrum.
    pub key: Vec<ComplexValue>,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComaximalClass {
    pub lambda_max: f64,
    pub member_count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimumLambdaMax {
    pub value: f64,
    pub members: Vec<String>,
}

fn pattern_from_index(n: usize, mut index: u64) -> SignPattern {
    let mut rows = vec![vec![0i8; n]; n];
    for row in rows.iter_mut() {
        for cell in row.iter_mut() {
            *cell = (index % 3) as i8 - 1;
            index /= 3;
        }
    }
    SignPattern::from_signs(&rows).expect("digit grid is always a valid pattern")
}

/// Enumerates all `3^(n*n)` sign patterns, computes their plain-mode
/// signatures, and groups them by full rounded spectrum and by maximal real
/// part. `threads` chunks the enumeration; the merge is keyed, so the output
/// does not depend on the schedule.
pub fn census(n: usize, tol: &Tolerances, threads: usize) -> Result<CensusResult> {
    if n > MAX_CENSUS_ORDER {
        return Err(Error::BudgetExceeded {
            subject: "census order",
            requested: n,
            maximum: MAX_CENSUS_ORDER,
        });
    }
    let total: u64 = 3u64.pow((n * n) as u32);
    let threads = threads.clamp(1, 16);

    type Partial = (
        BTreeMap<CanonicalKey, Vec<u64>>,
        BTreeMap<i64, Vec<u64>>,
    );
    let compute_chunk = |range: std::ops::Range<u64>| -> Result<Partial> {
        let mut by_key: BTreeMap<CanonicalKey, Vec<u64>> = BTreeMap::new();
        let mut by_max: BTreeMap<i64, Vec<u64>> = BTreeMap::new();
        for index in range {
            let pattern = pattern_from_index(n, index);
            let sig = spectral_signature(&pattern, SignatureMode::Plain, tol)?;
            let max_units = (sig.lambda_max / tol.canonical_key).round() as i64;
            by_key.entry(sig.canonical_key).or_default().push(index);
            by_max.entry(max_units).or_default().push(index);
        }
        Ok((by_key, by_max))
    };

    let mut partials: Vec<Partial> = Vec::new();
    if threads == 1 {
        partials.push(compute_chunk(0..total)?);
    } else {
        let chunk = total.div_ceil(threads as u64);
        let results: Vec<Result<Partial>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|t| {
                    let lo = t * chunk;
                    let hi = (lo + chunk).min(total);
                    scope.spawn(move || compute_chunk(lo..hi))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for r in results {
            partials.push(r?);
        }
    }

    let mut by_key: BTreeMap<CanonicalKey, Vec<u64>> = BTreeMap::new();
    let mut by_max: BTreeMap<i64, Vec<u64>> = BTreeMap::new();
    for (keys, maxes) in partials {
        for (k, mut v) in keys {
            by_key.entry(k).or_default().append(&mut v);
        }
        for (k, mut v) in maxes {
            by_max.entry(k).or_default().append(&mut v);
        }
    }

    if n == 2 {
        // Grouping audit: distinct classes must be separated far beyond the
        // rounding grid, otherwise the rounding could have split one class.
        let keys: Vec<&CanonicalKey> = by_key.keys().collect();
        let min_gap_units = (1e-3 / tol.canonical_key) as i64;
        for a in 0..keys.len() {
            for b in a + 1..keys.len() {
                assert!(
                    keys[a].distance(keys[b]) > min_gap_units,
                    "cospectral classes {:?} and {:?} are too close to trust the rounding",
                    keys[a],
                    keys[b]
                );
            }
        }
    }

    let cospectral_classes: Vec<CospectralClass> = by_key
        .iter()
        .map(|(key, members)| CospectralClass {
            key: key.values(tol.canonical_key),
            members: sorted_patterns(n, members),
        })
        .collect();
    let comaximal_classes: Vec<ComaximalClass> = by_max
        .iter()
        .map(|(&units, members)| ComaximalClass {
            lambda_max: units as f64 * tol.canonical_key,
            member_count: members.len() as u64,
        })
        .collect();
    let (&min_units, min_members) = by_max.iter().next().expect("census is never empty");

    Ok(CensusResult {
        pattern_count: total,
        cospectral_classes,
        comaximal_classes,
        minimum_lambda_max: MinimumLambdaMax {
            value: min_units as f64 * tol.canonical_key,
            members: sorted_patterns(n, min_members),
        },
    })
}

fn sorted_patterns(n: usize, indices: &[u64]) -> Vec<String> {
    let mut indices = indices.to_vec();
    indices.sort_unstable();
    indices
        .iter()
        .map(|&i| pattern_from_index(n, i).to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_pattern;
    use crate::poly::RealPoly;

    fn pat(text: &str) -> SignPattern {
        parse_pattern(text).unwrap()
    }

    fn sig(text: &str) -> SpectralSignature {
        spectral_signature(&pat(text), SignatureMode::Plain, &Tolerances::default()).unwrap()
    }

    #[test]
    fn all_negative_2x2_polynomial() {
        let mp = matrix_polynomial(&pat("--;--"), SignatureMode::Plain).unwrap();
        assert_eq!(mp.coefficient_matrices[1], vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(mp.coefficient_matrices[0], vec![vec![1, -1], vec![-1, 1]]);
    }

    #[test]
    fn canonical_3x3_polynomial() {
        let mp = matrix_polynomial(&pat("-++;--+;---"), SignatureMode::Plain).unwrap();
        assert_eq!(
            mp.coefficient_matrices[2],
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        assert_eq!(
            mp.coefficient_matrices[1],
            vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]]
        );
        assert_eq!(
            mp.coefficient_matrices[0],
            vec![vec![2, 2, 0], vec![0, 2, 2], vec![2, 0, 2]]
        );
    }

    #[test]
    fn hollow_scaled_canonical_4x4_polynomial() {
        let mp = matrix_polynomial(&canonical_4(), SignatureMode::HollowScaled).unwrap();
        assert!(mp.coefficient_matrices[3].iter().flatten().all(|&v| v == 0));
        assert_eq!(
            mp.coefficient_matrices[2],
            vec![
                vec![0, 1, 1, 1],
                vec![1, 0, 1, 1],
                vec![1, 1, 0, 1],
                vec![1, 1, 1, 0],
            ]
        );
        assert_eq!(
            mp.coefficient_matrices[1],
            vec![
                vec![0, 2, 0, -2],
                vec![-2, 0, 2, 0],
                vec![0, -2, 0, 2],
                vec![2, 0, -2, 0],
            ]
        );
        assert_eq!(
            mp.coefficient_matrices[0],
            vec![
                vec![0, 1, -1, 1],
                vec![1, 0, 1, -1],
                vec![-1, 1, 0, 1],
                vec![1, -1, 1, 0],
            ]
        );
    }

    fn canonical_4() -> SignPattern {
        crate::census::canonical_pattern(4)
    }

    #[test]
    fn hollow_scaled_mode_needs_negative_diagonal() {
        let err = matrix_polynomial(&pat("0+;--"), SignatureMode::HollowScaled).unwrap_err();
        assert_eq!(err.kind(), "non_negative_diagonal");
    }

    #[test]
    fn companion_layout_for_all_negative_2x2() {
        let mp = matrix_polynomial(&pat("--;--"), SignatureMode::Plain).unwrap();
        let c = block_companion(&mp);
        let expected = [
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [-1.0, 1.0, -1.0, 0.0],
            [1.0, -1.0, 0.0, -1.0],
        ];
        for r in 0..4 {
            for c2 in 0..4 {
                assert_eq!(c[(r, c2)], expected[r][c2]);
            }
        }
    }

    #[test]
    fn degree_one_companion_is_negated_coefficient() {
        let mp = MatrixPolynomial {
            n: 2,
            degree: 1,
            coefficient_matrices: vec![vec![vec![2, -1], vec![0, 3]]],
        };
        let c = block_companion(&mp);
        assert_eq!(c[(0, 0)], -2.0);
        assert_eq!(c[(0, 1)], 1.0);
        assert_eq!(c[(1, 0)], 0.0);
        assert_eq!(c[(1, 1)], -3.0);
    }

    #[test]
    fn known_2x2_signatures() {
        assert!((sig("--;--").lambda_max - 0.0).abs() < 1e-9);
        assert!((sig("-+;--").lambda_max - 0.0).abs() < 1e-9);
        assert!((sig("+-;--").lambda_max - 3.0f64.sqrt()).abs() < 1e-9);
        assert!((sig("-0;--").lambda_max - -0.5).abs() < 1e-9);
    }

    #[test]
    fn signature_spectrum_closed_under_conjugation() {
        let s = sig("-+;--");
        let conj = ComplexSpectrum::from_values(
            s.spectrum.values().iter().map(|z| z.conj()).collect(),
        );
        assert!(s.spectrum.multiset_matches(&conj, 1e-6));
    }

    #[test]
    fn transpose_leaves_canonical_key_unchanged() {
        let p = pat("-+0;--+;0--");
        let a = spectral_signature(&p, SignatureMode::Plain, &Tolerances::default()).unwrap();
        let b = spectral_signature(&p.transpose(), SignatureMode::Plain, &Tolerances::default())
            .unwrap();
        assert_eq!(a.canonical_key, b.canonical_key);
    }

    #[test]
    fn relabeling_leaves_canonical_key_unchanged() {
        let p = pat("-+0;--+;0--");
        let q = p.relabel(&[2, 0, 1]);
        let a = spectral_signature(&p, SignatureMode::Plain, &Tolerances::default()).unwrap();
        let b = spectral_signature(&q, SignatureMode::Plain, &Tolerances::default()).unwrap();
        assert_eq!(a.canonical_key, b.canonical_key);
    }

    /// Independent scalar route for order-2 patterns: expand
    /// `det(x^2 I + A_1 x + A_0)` to a quartic by hand and take its roots.
    fn quartic_route(p: &SignPattern) -> RealPoly {
        let mp = matrix_polynomial(p, SignatureMode::Plain).unwrap();
        let a1 = &mp.coefficient_matrices[1];
        let a0 = &mp.coefficient_matrices[0];
        let diag = |i: usize| {
            RealPoly::new(vec![a0[i][i] as f64, a1[i][i] as f64, 1.0])
        };
        let off = |i: usize, j: usize| {
            RealPoly::new(vec![a0[i][j] as f64, a1[i][j] as f64])
        };
        diag(0).mul(&diag(1)).sub(&off(0, 1).mul(&off(1, 0)))
    }

    #[test]
    fn quartic_expansion_matches_block_companion_on_all_81() {
        let tol = Tolerances::default();
        for index in 0..81u64 {
            let p = pattern_from_index(2, index);
            let s = spectral_signature(&p, SignatureMode::Plain, &tol).unwrap();
            let quartic = quartic_route(&p);
            // Every companion eigenvalue is a root of the hand-expanded
            // quartic: the residual form stays well-posed even at the
            // repeated roots some patterns produce, where value-wise
            // agreement is limited to the square root of machine epsilon.
            for z in s.spectrum.values() {
                let residual = quartic.eval_complex(*z).norm();
                assert!(
                    residual <= 1e-8 * quartic.norm_inf() * z.norm().max(1.0).powi(4),
                    "pattern {} eigenvalue {} residual {}",
                    p,
                    z,
                    residual
                );
            }
            let roots = quartic.all_roots().unwrap();
            let (scalar_max, _) = roots.max_real_part();
            assert!(
                (scalar_max - s.lambda_max).abs() < 1e-7,
                "pattern {} disagrees: {} vs {}",
                p,
                scalar_max,
                s.lambda_max
            );
            assert!(s.spectrum.multiset_matches(&roots, 1e-7));
        }
    }

    #[test]
    fn quartic_factorizations_of_named_patterns() {
        // All-negative pattern: x(x+1)(x^2+x+2).
        let q = quartic_route(&pat("--;--"));
        assert_eq!(q.coeffs(), &[0.0, 2.0, 3.0, 2.0, 1.0]);
        // Positive top-left pattern: x^2(x^2-3).
        let q = quartic_route(&pat("+-;--"));
        assert_eq!(q.coeffs(), &[0.0, 0.0, -3.0, 0.0, 1.0]);
    }

    #[test]
    fn circulant_weights_of_forced_order_four() {
        // Positive, negative, and difference weights of every forced
        // constant-coefficient group are circulant for the canonical 4x4
        // pattern: each row is the previous row rotated right by one.
        let p = canonical_4();
        for j in [0usize, 1, 2, 4] {
            let w = weight_matrices(&p, 0, Grouping::BySigmaPower(j));
            for grid in [&w.w_plus, &w.w_minus] {
                for r in 1..4 {
                    for c in 0..4 {
                        assert_eq!(
                            grid[r][c],
                            grid[r - 1][(c + 3) % 4],
                            "power {} row {} col {}",
                            j,
                            r,
                            c
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn census_of_order_two() {
        let result = census(2, &Tolerances::default(), 1).unwrap();
        assert_eq!(result.pattern_count, 81);
        assert_eq!(result.cospectral_classes.len(), 12);
        assert_eq!(result.comaximal_classes.len(), 8);
        assert!((result.minimum_lambda_max.value - -0.5).abs() < 1e-9);
        let expected_members = ["--;0-", "-0;0-", "-0;+-", "-0;--", "-+;0-"];
        assert_eq!(result.minimum_lambda_max.members.len(), 5);
        for m in expected_members {
            assert!(
                result.minimum_lambda_max.members.iter().any(|x| x == m),
                "missing member {}",
                m
            );
        }
        let total: u64 = result
            .cospectral_classes
            .iter()
            .map(|c| c.members.len() as u64)
            .sum();
        assert_eq!(total, 81);
        let total: u64 = result.comaximal_classes.iter().map(|c| c.member_count).sum();
        assert_eq!(total, 81);
    }

    #[test]
    fn census_is_schedule_independent() {
        let tol = Tolerances::default();
        let a = census(2, &tol, 1).unwrap();
        let b = census(2, &tol, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn census_budget() {
        assert!(matches!(
            census(4, &Tolerances::default(), 1),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn census_of_order_three_partitions_all_patterns() {
        let result = census(3, &Tolerances::default(), 4).unwrap();
        assert_eq!(result.pattern_count, 19683);
        let by_key: u64 = result
            .cospectral_classes
            .iter()
            .map(|c| c.members.len() as u64)
            .sum();
        let by_max: u64 = result.comaximal_classes.iter().map(|c| c.member_count).sum();
        assert_eq!(by_key, 19683);
        assert_eq!(by_max, 19683);
        assert!(result.comaximal_classes.len() <= result.cospectral_classes.len());
    }
}
