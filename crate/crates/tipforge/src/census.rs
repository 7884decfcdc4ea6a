//! Exact combinatorial layer: signed permutation terms of characteristic
//! polynomial coefficients for a sign pattern, tipping-cycle counts, and the
//! positive/negative weighted cycle matrices they induce.
//!
//! All counting here is integer arithmetic; no floating point enters the
//! results.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order accepted by the exhaustive table builders. The term count
/// grows like `e * n!`, which stays near a million at this bound.
pub const MAX_TABLE_ORDER: usize = 9;

/// An `n x n` grid of signs, entries restricted to -1, 0, +1.
///
/// The compact text form is rows of `+`, `-`, `0` joined by `;`, e.g.
/// `-+;--`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignPattern {
    n: usize,
    signs: Vec<i8>,
}

impl SignPattern {
    pub fn from_signs(rows: &[Vec<i8>]) -> Result<SignPattern> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch {
                message: "pattern order must be positive".to_string(),
            });
        }
        let mut signs = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    message: format!("row {} has {} entries, expected {}", i, row.len(), n),
                });
            }
            for (j, &s) in row.iter().enumerate() {
                if !(-1..=1).contains(&s) {
                    return Err(Error::ParseError {
                        row: i,
                        column: j,
                        message: format!("sign entry must be -1, 0 or +1, got {}", s),
                    });
                }
                signs.push(s);
            }
        }
        Ok(SignPattern { n, signs })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn sign(&self, i: usize, j: usize) -> i8 {
        self.signs[i * self.n + j]
    }

    pub fn transpose(&self) -> SignPattern {
        let mut signs = vec![0i8; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                signs[j * self.n + i] = self.sign(i, j);
            }
        }
        SignPattern { n: self.n, signs }
    }

    /// Copy with the diagonal zeroed; the off-diagonal signs are untouched.
    pub fn hollowed(&self) -> SignPattern {
        let mut out = self.clone();
        for i in 0..self.n {
            out.signs[i * self.n + i] = 0;
        }
        out
    }

    /// Applies the same permutation to rows and columns.
    pub fn relabel(&self, perm: &[usize]) -> SignPattern {
        let mut signs = vec![0i8; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                signs[perm[i] * self.n + perm[j]] = self.sign(i, j);
            }
        }
        SignPattern { n: self.n, signs }
    }

    /// The realization with unit magnitudes: entry `(i,j)` is `sign` as f64.
    pub fn unit_matrix(&self) -> crate::matrix::DenseMatrix {
        let entries = self.signs.iter().map(|&s| f64::from(s)).collect();
        crate::matrix::DenseMatrix::from_flat(self.n, entries)
    }
}

impl std::fmt::Display for SignPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.n {
                f.write_str(match self.sign(i, j) {
                    -1 => "-",
                    0 => "0",
                    _ => "+",
                })?;
            }
        }
        Ok(())
    }
}

impl Serialize for SignPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignPattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        crate::io::parse_pattern(&text).map_err(serde::de::Error::custom)
    }
}

/// Sign grid with -1 on and below the diagonal and +1 above it.
pub fn canonical_pattern(n: usize) -> SignPattern {
    let mut signs = vec![0i8; n * n];
    for i in 0..n {
        for j in 0..n {
            signs[i * n + j] = if j > i { 1 } else { -1 };
        }
    }
    SignPattern { n, signs }
}

/// One signed permutation term of a coefficient expansion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleTerm {
    /// Indices the permutation acts on, ascending.
    pub support: Vec<usize>,
    /// Image of each support index under the permutation.
    pub perm: Vec<usize>,
    /// Total sign of the term's contribution to the monic coefficient,
    /// subsuming the minor sign, the permutation parity, and the entry signs.
    pub sign: i8,
    /// Number of diagonal fixed points, i.e. the power of the forcing
    /// variable this term carries in the forced expansion.
    pub sigma_power: usize,
    /// The matrix positions the term multiplies together.
    pub elements: Vec<(usize, usize)>,
}

/// Streaming view of one term during enumeration.
pub(crate) struct TermView<'a> {
    pub support: &'a [usize],
    pub perm: &'a [usize],
    pub sign: i8,
    pub sigma_power: usize,
}

/// Enumerates the nonzero terms of the coefficient of the i-th spectral
/// power: every size-`n-i` support subset crossed with every permutation of
/// it whose entries are all nonzero in the pattern. The visitor receives
/// each term once, in a deterministic order.
pub(crate) fn for_each_term<F: FnMut(&TermView)>(p: &SignPattern, i: usize, mut visit: F) {
    let n = p.order();
    assert!(i <= n, "coefficient index out of range");
    let k = n - i;
    if k == 0 {
        visit(&TermView {
            support: &[],
            perm: &[],
            sign: 1,
            sigma_power: 0,
        });
        return;
    }
    let mut walk = TermWalk {
        pattern: p,
        minor_sign: if k % 2 == 0 { 1 } else { -1 },
        support: Vec::with_capacity(k),
        perm: vec![0usize; k],
        used: vec![false; k],
        visit: &mut visit,
    };
    walk.subsets(n, k, 0);
}

struct TermWalk<'a, F: FnMut(&TermView)> {
    pattern: &'a SignPattern,
    minor_sign: i8,
    support: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
    visit: &'a mut F,
}

impl<F: FnMut(&TermView)> TermWalk<'_, F> {
    fn subsets(&mut self, n: usize, k: usize, start: usize) {
        if self.support.len() == k {
            self.permute(0, 1, 0);
            return;
        }
        let remaining = k - self.support.len();
        for next in start..=n - remaining {
            self.support.push(next);
            self.subsets(n, k, next + 1);
            self.support.pop();
        }
    }

    /// Fills position `pos` of the permutation, carrying the running entry
    /// sign and diagonal fixed-point count.
    fn permute(&mut self, pos: usize, entry_sign: i8, fixed: usize) {
        let k = self.support.len();
        if pos == k {
            let parity = permutation_parity(&self.support, &self.perm);
            let view = TermView {
                support: &self.support,
                perm: &self.perm,
                sign: self.minor_sign * parity * entry_sign,
                sigma_power: fixed,
            };
            (self.visit)(&view);
            return;
        }
        let row = self.support[pos];
        for slot in 0..k {
            if self.used[slot] {
                continue;
            }
            let col = self.support[slot];
            let s = self.pattern.sign(row, col);
            if s == 0 {
                continue;
            }
            self.used[slot] = true;
            self.perm[pos] = col;
            self.permute(pos + 1, entry_sign * s, fixed + usize::from(row == col));
            self.used[slot] = false;
        }
    }
}

/// Parity of the bijection `support[t] -> perm[t]` as +1 or -1, by inversion
/// count over the images.
fn permutation_parity(support: &[usize], perm: &[usize]) -> i8 {
    // Map images back to positions within the (sorted) support.
    let mut positions = Vec::with_capacity(perm.len());
    for &image in perm {
        positions.push(support.binary_search(&image).unwrap());
    }
    let mut inversions = 0usize;
    for a in 0..positions.len() {
        for b in a + 1..positions.len() {
            if positions[a] > positions[b] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Materialized term list for the coefficient of the i-th spectral power.
pub fn coefficient_terms(p: &SignPattern, i: usize) -> Vec<CycleTerm> {
    let mut out = Vec::new();
    for_each_term(p, i, |t| {
        out.push(CycleTerm {
            support: t.support.to_vec(),
            perm: t.perm.to_vec(),
            sign: t.sign,
            sigma_power: t.sigma_power,
            elements: t
                .support
                .iter()
                .zip(t.perm.iter())
                .map(|(&r, &c)| (r, c))
                .collect(),
        });
    });
    out
}

/// Count of destabilising (negative) terms against the total for one cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensitivityCell {
    pub tipping: u64,
    pub total: u64,
}

impl SensitivityCell {
    fn tally(p: &SignPattern, i: usize, by_power: Option<usize>) -> SensitivityCell {
        let mut cell = SensitivityCell {
            tipping: 0,
            total: 0,
        };
        for_each_term(p, i, |t| {
            if by_power.is_none_or(|j| t.sigma_power == j) {
                cell.total += 1;
                if t.sign < 0 {
                    cell.tipping += 1;
                }
            }
        });
        cell
    }
}

/// Coefficient sensitivities of the canonical family, one row per order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensitivityTable {
    pub rows: Vec<SensitivityRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensitivityRow {
    pub n: usize,
    /// `cells[i]` is the cell for the coefficient of the i-th spectral power
    /// (or the i-th power of the forcing variable for the forced table).
    pub cells: Vec<SensitivityCell>,
}

fn check_table_budget(n_max: usize) -> Result<()> {
    if n_max > MAX_TABLE_ORDER {
        return Err(Error::BudgetExceeded {
            subject: "table order",
            requested: n_max,
            maximum: MAX_TABLE_ORDER,
        });
    }
    Ok(())
}

/// Tipping/total counts per coefficient for the canonical patterns of order
/// 2 through `n_max`.
pub fn sensitivity_table(n_max: usize) -> Result<SensitivityTable> {
    check_table_budget(n_max)?;
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let pattern = canonical_pattern(n);
        let cells = (0..=n)
            .map(|i| SensitivityCell::tally(&pattern, i, None))
            .collect();
        rows.push(SensitivityRow { n, cells });
    }
    Ok(SensitivityTable { rows })
}

/// Tipping/total counts of the constant-coefficient terms, partitioned by
/// the power of the forcing variable, for the canonical patterns of order 2
/// through `n_max`.
pub fn sigma_sensitivity_table(n_max: usize) -> Result<SensitivityTable> {
    check_table_budget(n_max)?;
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let pattern = canonical_pattern(n);
        let mut cells = vec![
            SensitivityCell {
                tipping: 0,
                total: 0
            };
            n + 1
        ];
        for_each_term(&pattern, 0, |t| {
            let cell = &mut cells[t.sigma_power];
            cell.total += 1;
            if t.sign < 0 {
                cell.tipping += 1;
            }
        });
        rows.push(SensitivityRow { n, cells });
    }
    Ok(SensitivityTable { rows })
}

/// Which terms of a coefficient feed a weight tally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Grouping {
    /// Every term of the coefficient.
    WholeCoefficient,
    /// Only terms with exactly this many diagonal fixed points.
    BySigmaPower(usize),
}

/// Position-use counts of the positive and negative terms of one
/// coefficient, plus their difference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedCycleSet {
    pub n: usize,
    /// `w_plus[i][j]`: how many positive terms use position (i, j).
    pub w_plus: Vec<Vec<u64>>,
    pub w_minus: Vec<Vec<u64>>,
    /// Entrywise `w_plus - w_minus`.
    pub diff: Vec<Vec<i64>>,
}

/// Tallies, per matrix position, how many positive and negative terms of the
/// selected group use that position.
pub fn weight_matrices(p: &SignPattern, i: usize, grouping: Grouping) -> WeightedCycleSet {
    let n = p.order();
    let mut w_plus = vec![vec![0u64; n]; n];
    let mut w_minus = vec![vec![0u64; n]; n];
    let by_power = match grouping {
        Grouping::WholeCoefficient => None,
        Grouping::BySigmaPower(j) => Some(j),
    };
    for_each_term(p, i, |t| {
        if by_power.is_some_and(|j| t.sigma_power != j) {
            return;
        }
        let target = if t.sign > 0 { &mut w_plus } else { &mut w_minus };
        for (&r, &c) in t.support.iter().zip(t.perm.iter()) {
            target[r][c] += 1;
        }
    });
    let diff = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| w_plus[r][c] as i64 - w_minus[r][c] as i64)
                .collect()
        })
        .collect();
    WeightedCycleSet {
        n,
        w_plus,
        w_minus,
        diff,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma::charpoly;

    fn grid(rows: &[&[i8]]) -> SignPattern {
        SignPattern::from_signs(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn derangements(k: usize) -> u64 {
        // D(k) = (k-1) (D(k-1) + D(k-2)), D(0) = 1, D(1) = 0.
        let mut d = vec![1u64, 0];
        for i in 2..=k {
            let v = (i as u64 - 1) * (d[i - 1] + d[i - 2]);
            d.push(v);
        }
        d[k]
    }

    fn binomial(n: usize, k: usize) -> u64 {
        let mut result = 1u64;
        for i in 0..k {
            result = result * (n - i) as u64 / (i + 1) as u64;
        }
        result
    }

    #[test]
    fn canonical_pattern_shape() {
        assert_eq!(canonical_pattern(2), grid(&[&[-1, 1], &[-1, -1]]));
        assert_eq!(
            canonical_pattern(3),
            grid(&[&[-1, 1, 1], &[-1, -1, 1], &[-1, -1, -1]])
        );
    }

    #[test]
    fn constant_coefficient_of_order_three() {
        let terms = coefficient_terms(&canonical_pattern(3), 0);
        assert_eq!(terms.len(), 6);
        let negatives: Vec<&CycleTerm> = terms.iter().filter(|t| t.sign < 0).collect();
        assert_eq!(negatives.len(), 1);
        // The lone destabilising term walks (0,2),(1,0),(2,1).
        assert_eq!(negatives[0].elements, vec![(0, 2), (1, 0), (2, 1)]);
    }

    #[test]
    fn monic_coefficient_is_one_empty_term() {
        let terms = coefficient_terms(&canonical_pattern(4), 4);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].sign, 1);
        assert!(terms[0].elements.is_empty());
        assert_eq!(terms[0].sigma_power, 0);
    }

    #[test]
    fn linear_coefficient_of_order_four() {
        let terms = coefficient_terms(&canonical_pattern(4), 1);
        assert_eq!(terms.len(), 24);
        assert_eq!(terms.iter().filter(|t| t.sign < 0).count(), 4);
    }

    #[test]
    fn zero_entries_prune_terms() {
        let p = grid(&[&[-1, 0], &[-1, -1]]);
        let terms = coefficient_terms(&p, 0);
        // Only the diagonal term survives; the swap needs the zero entry.
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].elements, vec![(0, 0), (1, 1)]);
        assert_eq!(terms[0].sign, 1);
    }

    #[test]
    fn known_sensitivity_cells() {
        let table = sensitivity_table(5).unwrap();
        let row5 = &table.rows[3];
        assert_eq!(row5.n, 5);
        assert_eq!(row5.cells[2], SensitivityCell { tipping: 10, total: 60 });
        assert_eq!(row5.cells[1], SensitivityCell { tipping: 40, total: 120 });
        assert_eq!(row5.cells[0], SensitivityCell { tipping: 52, total: 120 });

        let row2 = &table.rows[0];
        assert!(row2.cells.iter().all(|c| c.tipping == 0));
    }

    #[test]
    fn known_sigma_sensitivity_cells() {
        let table = sigma_sensitivity_table(4).unwrap();
        let row3 = &table.rows[1];
        assert_eq!(row3.cells[3], SensitivityCell { tipping: 0, total: 1 });
        assert_eq!(row3.cells[2], SensitivityCell { tipping: 0, total: 0 });
        assert_eq!(row3.cells[1], SensitivityCell { tipping: 0, total: 3 });
        assert_eq!(row3.cells[0], SensitivityCell { tipping: 1, total: 2 });

        let row4 = &table.rows[2];
        assert_eq!(row4.cells[2], SensitivityCell { tipping: 0, total: 6 });
        assert_eq!(row4.cells[1], SensitivityCell { tipping: 4, total: 8 });
        assert_eq!(row4.cells[0], SensitivityCell { tipping: 4, total: 9 });
    }

    #[test]
    fn rencontres_totals() {
        let table = sigma_sensitivity_table(8).unwrap();
        for row in &table.rows {
            for (j, cell) in row.cells.iter().enumerate() {
                let expected = binomial(row.n, j) * derangements(row.n - j);
                assert_eq!(cell.total, expected, "order {} power {}", row.n, j);
            }
        }
    }

    #[test]
    fn forced_columns_sum_to_the_constant_coefficient() {
        let plain = sensitivity_table(8).unwrap();
        let forced = sigma_sensitivity_table(8).unwrap();
        for (p_row, f_row) in plain.rows.iter().zip(forced.rows.iter()) {
            let total: u64 = f_row.cells.iter().map(|c| c.total).sum();
            let tipping: u64 = f_row.cells.iter().map(|c| c.tipping).sum();
            assert_eq!(total, p_row.cells[0].total);
            assert_eq!(tipping, p_row.cells[0].tipping);
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            sensitivity_table(10),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            sigma_sensitivity_table(12),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn term_sums_reproduce_unit_charpoly() {
        // Signed term totals against an independent determinant route, on a
        // pattern with zeros to exercise pruning.
        let p = grid(&[
            &[-1, 1, 0, 1],
            &[-1, -1, 1, 0],
            &[0, -1, -1, 1],
            &[-1, 0, -1, -1],
        ]);
        let poly = charpoly(&p.unit_matrix());
        for i in 0..=4 {
            let mut sum = 0i64;
            for_each_term(&p, i, |t| sum += i64::from(t.sign));
            assert!(
                (poly.coeff(i) - sum as f64).abs() < 1e-9,
                "coefficient {} mismatch: {} vs {}",
                i,
                poly.coeff(i),
                sum
            );
        }
    }

    #[test]
    fn weight_entry_sums_count_term_elements() {
        let p = canonical_pattern(4);
        for i in 0..=3 {
            let w = weight_matrices(&p, i, Grouping::WholeCoefficient);
            let positives = coefficient_terms(&p, i)
                .iter()
                .filter(|t| t.sign > 0)
                .count() as u64;
            let negatives = coefficient_terms(&p, i)
                .iter()
                .filter(|t| t.sign < 0)
                .count() as u64;
            let k = (4 - i) as u64;
            let plus_sum: u64 = w.w_plus.iter().flatten().sum();
            let minus_sum: u64 = w.w_minus.iter().flatten().sum();
            assert_eq!(plus_sum, k * positives);
            assert_eq!(minus_sum, k * negatives);
        }
    }

    #[test]
    fn transpose_covariance_of_weights() {
        let p = grid(&[
            &[-1, 1, 0],
            &[-1, -1, 1],
            &[0, -1, -1],
        ]);
        let pt = p.transpose();
        for i in 0..=2 {
            let w = weight_matrices(&p, i, Grouping::WholeCoefficient);
            let wt = weight_matrices(&pt, i, Grouping::WholeCoefficient);
            for r in 0..3 {
                for c in 0..3 {
                    assert_eq!(w.w_plus[r][c], wt.w_plus[c][r]);
                    assert_eq!(w.w_minus[r][c], wt.w_minus[c][r]);
                }
            }
        }
    }

    #[test]
    fn forced_constant_weight_matrices_of_order_four() {
        let p = canonical_pattern(4);

        let tipping = weight_matrices(&p, 0, Grouping::BySigmaPower(0));
        assert_eq!(
            tipping.w_minus,
            vec![
                vec![0, 1, 2, 1],
                vec![1, 0, 1, 2],
                vec![2, 1, 0, 1],
                vec![1, 2, 1, 0],
            ]
        );
        assert_eq!(
            tipping.w_plus,
            vec![
                vec![0, 2, 1, 2],
                vec![2, 0, 2, 1],
                vec![1, 2, 0, 2],
                vec![2, 1, 2, 0],
            ]
        );

        let square = weight_matrices(&p, 0, Grouping::BySigmaPower(2));
        assert_eq!(
            square.w_plus,
            vec![
                vec![3, 1, 1, 1],
                vec![1, 3, 1, 1],
                vec![1, 1, 3, 1],
                vec![1, 1, 1, 3],
            ]
        );
        assert!(square.w_minus.iter().flatten().all(|&v| v == 0));
    }

    #[test]
    fn plain_constant_weight_diff_of_order_three() {
        let w = weight_matrices(&canonical_pattern(3), 0, Grouping::WholeCoefficient);
        assert_eq!(
            w.diff,
            vec![vec![2, 2, 0], vec![0, 2, 2], vec![2, 0, 2]]
        );
    }

    #[test]
    fn pattern_text_round_trip() {
        let p = grid(&[&[-1, 0], &[1, -1]]);
        assert_eq!(p.to_string(), "-0;+-");
        let json = serde_json::to_string(&p).unwrap();
        let back: SignPattern = serde_json::from_str(&json).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn term_sums_match_charpoly_on_random_patterns() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x3c3c_90f1);
        for trial in 0..30 {
            let n = 2 + trial % 6;
            let rows: Vec<Vec<i8>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-1..=1)).collect())
                .collect();
            let p = SignPattern::from_signs(&rows).unwrap();
            let poly = charpoly(&p.unit_matrix());
            for i in 0..=n {
                let mut sum = 0i64;
                for_each_term(&p, i, |t| sum += i64::from(t.sign));
                assert!(
                    (poly.coeff(i) - sum as f64).abs() < 1e-9,
                    "trial {} (order {}) coefficient {}: {} vs {}",
                    trial,
                    n,
                    poly.coeff(i),
                    sum,
                    i
                );
            }
        }
    }
}
