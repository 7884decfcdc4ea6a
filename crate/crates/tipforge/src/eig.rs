//! Self-contained dense nonsymmetric eigensolver: balancing, Householder
//! reduction to upper Hessenberg form, then Francis double-shift QR with
//! deflation (eigenvalues only).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::tol::Tolerances;

/// Iteration budget per deflation target, scaled by matrix order.
const SWEEPS_PER_EIGENVALUE: usize = 30;

/// The eigenvalue multiset of a real matrix, stored in a fixed canonical
/// order: descending real part, then descending imaginary magnitude, then
/// positive imaginary part before negative.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrum {
    values: Vec<Complex64>,
}

impl ComplexSpectrum {
    pub fn from_values(mut values: Vec<Complex64>) -> ComplexSpectrum {
        values.sort_by(|a, b| {
            b.re.partial_cmp(&a.re)
                .unwrap()
                .then(b.im.abs().partial_cmp(&a.im.abs()).unwrap())
                .then(b.im.partial_cmp(&a.im).unwrap())
        });
        ComplexSpectrum { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The largest real part together with one eigenvalue attaining it.
    /// Ties are broken toward the smallest imaginary magnitude, preferring
    /// the positive member of a conjugate pair.
    ///
    /// Panics on an empty spectrum.
    pub fn max_real_part(&self) -> (f64, Complex64) {
        assert!(!self.values.is_empty(), "empty spectrum");
        let max_re = self.values.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
        let witness = self
            .values
            .iter()
            .filter(|z| z.re == max_re)
            .copied()
            .min_by(|a, b| {
                a.im.abs()
                    .partial_cmp(&b.im.abs())
                    .unwrap()
                    .then(b.im.partial_cmp(&a.im).unwrap())
            })
            .unwrap();
        (max_re, witness)
    }

    /// Smallest eigenvalue modulus; how close the source matrix is to
    /// singular.
    pub fn min_modulus(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
    }

    /// Greedy nearest-neighbor multiset comparison: true when every value in
    /// `self` can be paired with a distinct value of `other` within `tol`.
    pub fn multiset_matches(&self, other: &ComplexSpectrum, tol: f64) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut taken = vec![false; other.len()];
        for z in &self.values {
            let mut best: Option<(usize, f64)> = None;
            for (j, w) in other.values.iter().enumerate() {
                if taken[j] {
                    continue;
                }
                let d = (z - w).norm();
                if best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((j, d));
                }
            }
            match best {
                Some((j, d)) if d <= tol => taken[j] = true,
                _ => return false,
            }
        }
        true
    }
}

impl Serialize for ComplexSpectrum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<ComplexValue> = self.values.iter().map(|z| (*z).into()).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexSpectrum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<ComplexValue>::deserialize(d)?;
        Ok(ComplexSpectrum {
            values: pairs.into_iter().map(Complex64::from).collect(),
        })
    }
}

/// Serialization-friendly mirror of a complex number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> ComplexValue {
        ComplexValue { re: z.re, im: z.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(v: ComplexValue) -> Complex64 {
        Complex64::new(v.re, v.im)
    }
}

/// Full eigenvalue multiset of a square real matrix.
pub fn eigenvalues(m: &DenseMatrix) -> Result<ComplexSpectrum> {
    let n = m.order();
    let mut h = m.clone();
    balance(&mut h);
    hessenberg(&mut h);
    let values = hqr(&mut h, n)?;
    Ok(ComplexSpectrum::from_values(values))
}

/// One pass of Parlett-Reinsch balancing. Diagonal similarity only, so the
/// spectrum is unchanged.
fn balance(a: &mut DenseMatrix) {
    let n = a.order();
    let radix = 2.0f64;
    let sqrdx = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / radix;
                let mut f = 1.0;
                let s = c + r;
                let mut c_scaled = c;
                while c_scaled < g {
                    f *= radix;
                    c_scaled *= sqrdx;
                }
                g = r * radix;
                while c_scaled > g {
                    f /= radix;
                    c_scaled /= sqrdx;
                }
                if (c_scaled + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        a[(i, j)] *= g;
                    }
                    for j in 0..n {
                        a[(j, i)] *= f;
                    }
                }
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form, without accumulating the
/// transform (only eigenvalues are needed downstream).
fn hessenberg(a: &mut DenseMatrix) {
    let n = a.order();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let mut scale = 0.0;
        for i in k + 1..n {
            scale += a[(i, k)].abs();
        }
        if scale == 0.0 {
            continue;
        }
        let mut v = vec![0.0; n];
        let mut h = 0.0;
        for i in k + 1..n {
            v[i] = a[(i, k)] / scale;
            h += v[i] * v[i];
        }
        let mut g = h.sqrt();
        if v[k + 1] > 0.0 {
            g = -g;
        }
        h -= v[k + 1] * g;
        v[k + 1] -= g;
        // A <- P A P with P = I - v v^T / h
        for j in 0..n {
            let mut f = 0.0;
            for i in k + 1..n {
                f += v[i] * a[(i, j)];
            }
            f /= h;
            for i in k + 1..n {
                a[(i, j)] -= f * v[i];
            }
        }
        for i in 0..n {
            let mut f = 0.0;
            for j in k + 1..n {
                f += a[(i, j)] * v[j];
            }
            f /= h;
            for j in k + 1..n {
                a[(i, j)] -= f * v[j];
            }
        }
        a[(k + 1, k)] = scale * g;
        for i in k + 2..n {
            a[(i, k)] = 0.0;
        }
    }
}

fn same_sign(magnitude: f64, sign_of: f64) -> f64 {
    if sign_of >= 0.0 {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}

/// Francis double-shift QR with deflation on an upper Hessenberg matrix.
/// Exceptional shifts are injected every ten stalled sweeps; the budget is
/// `30 * order` sweeps per deflation target.
fn hqr(a: &mut DenseMatrix, n: usize) -> Result<Vec<Complex64>> {
    let mut wr = vec![0.0f64; n];
    let mut wi = vec![0.0f64; n];
    if n == 0 {
        return Ok(Vec::new());
    }
    let max_its = SWEEPS_PER_EIGENVALUE * n;

    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[(i, j)].abs();
        }
    }
    if anorm == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); n]);
    }

    let mut nn = n - 1;
    let mut t = 0.0;
    'deflate: loop {
        let mut its = 0usize;
        loop {
            // Scan for a negligible subdiagonal element.
            let mut l = nn;
            while l >= 1 {
                let mut s = a[(l - 1, l - 1)].abs() + a[(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[(l, l - 1)].abs() <= f64::EPSILON * s {
                    a[(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[(nn, nn)];
            if l == nn {
                // Single real eigenvalue.
                wr[nn] = x + t;
                wi[nn] = 0.0;
                if nn == 0 {
                    break 'deflate;
                }
                nn -= 1;
                break;
            }
            let mut y = a[(nn - 1, nn - 1)];
            let mut w = a[(nn, nn - 1)] * a[(nn - 1, nn)];
            if l == nn - 1 {
                // A 2x2 block: real pair or conjugate pair.
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + same_sign(z, p);
                    wr[nn - 1] = x + z;
                    wr[nn] = wr[nn - 1];
                    if z != 0.0 {
                        wr[nn] = x - w / z;
                    }
                    wi[nn - 1] = 0.0;
                    wi[nn] = 0.0;
                } else {
                    wr[nn - 1] = x + p;
                    wr[nn] = x + p;
                    wi[nn - 1] = -z;
                    wi[nn] = z;
                }
                if nn <= 1 {
                    break 'deflate;
                }
                nn -= 2;
                break;
            }
            if its >= max_its {
                return Err(Error::ConvergenceFailure {
                    order: n,
                    iterations: its,
                });
            }
            if its > 0 && its.is_multiple_of(10) {
                // Exceptional shift to break symmetric stalls.
                t += x;
                for i in 0..=nn {
                    a[(i, i)] -= x;
                }
                let s = a[(nn, nn - 1)].abs() + a[(nn - 1, nn - 2)].abs();
                y = 0.75 * s;
                x = y;
                w = -0.4375 * s * s;
            }
            its += 1;

            // Find two consecutive small subdiagonals starting from the
            // bottom of the active block.
            let mut m = nn - 2;
            let mut p;
            let mut q;
            let mut r;
            loop {
                let z = a[(m, m)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[(m + 1, m)] + a[(m, m + 1)];
                q = a[(m + 1, m + 1)] - z - rr - ss;
                r = a[(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[(m - 1, m - 1)].abs() + z.abs() + a[(m + 1, m + 1)].abs());
                if u <= f64::EPSILON * v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nn {
                a[(i, i - 2)] = 0.0;
                if i > m + 2 {
                    a[(i, i - 3)] = 0.0;
                }
            }

            // Double QR sweep over rows l..=nn.
            for k in m..nn {
                if k != m {
                    p = a[(k, k - 1)];
                    q = a[(k + 1, k - 1)];
                    r = if k != nn - 1 { a[(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = same_sign((p * p + q * q + r * r).sqrt(), p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[(k, k - 1)] = -a[(k, k - 1)];
                    }
                } else {
                    a[(k, k - 1)] = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in k..=nn {
                    let mut pp = a[(k, j)] + q * a[(k + 1, j)];
                    if k != nn - 1 {
                        pp += r * a[(k + 2, j)];
                        a[(k + 2, j)] -= pp * z;
                    }
                    a[(k + 1, j)] -= pp * y;
                    a[(k, j)] -= pp * x;
                }
                let mmin = if nn < k + 3 { nn } else { k + 3 };
                for i in l..=mmin {
                    let mut pp = x * a[(i, k)] + y * a[(i, k + 1)];
                    if k != nn - 1 {
                        pp += z * a[(i, k + 2)];
                        a[(i, k + 2)] -= pp * r;
                    }
                    a[(i, k + 1)] -= pp * q;
                    a[(i, k)] -= pp;
                }
            }
        }
    }

    Ok(wr
        .into_iter()
        .zip(wi)
        .map(|(re, im)| Complex64::new(re, im))
        .collect())
}

/// Filters a spectrum down to the values passing the real-classification
/// threshold, returned as plain reals.
pub fn real_values(spectrum: &ComplexSpectrum, tol: &Tolerances) -> Vec<f64> {
    spectrum
        .values()
        .iter()
        .filter(|z| tol.is_real(**z))
        .map(|z| z.re)
        .collect()
}
