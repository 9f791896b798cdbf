//! Self-contained dense symmetric eigendecomposition plus spectrum-derived
//! quantities: energy, negative part sum, inertia.
//!
//! The solver is a cyclic Jacobi iteration: it sweeps all off-diagonal pairs
//! with Givens rotations until the off-diagonal Frobenius norm drops below
//! `1e-12` times the input norm, with a hard cap of 100 sweeps. Eigenvectors
//! are always accumulated. This is simple, dependency-free, and accurate to
//! well under `1e-9 * (1 + ||M||_F)` per eigenvalue at the matrix orders this
//! crate works at (a few hundred).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::RealSymMatrix;

/// Hard cap on Jacobi sweeps before reporting non-convergence.
const MAX_SWEEPS: usize = 100;
/// Convergence: off-diagonal Frobenius norm below this multiple of the input
/// Frobenius norm.
const CONVERGENCE: f64 = 1e-12;

/// Real eigenvalues of a symmetric matrix, sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts the given eigenvalues into descending order.
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values }
    }

    /// Eigenvalues, descending.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of eigenvalues (the source matrix order).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Whether the spectrum is empty (order-0 source).
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest eigenvalue (0 for an empty spectrum).
    pub fn lambda1(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Smallest eigenvalue (0 for an empty spectrum).
    pub fn lambda_min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Sum of absolute eigenvalues. For the symmetric matrices in scope this
    /// is the matrix energy (and equals the sum of singular values).
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum()
    }

    /// Sum of all eigenvalues, which equals the source matrix trace up to
    /// solver accuracy.
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Default zero/sign classification tolerance,
    /// `1e-8 * (1 + ||M||_F)`, recovered from the spectrum itself via
    /// `||M||_F = sqrt(sum of squared eigenvalues)`.
    pub fn default_tol(&self) -> f64 {
        let fro = self.values.iter().map(|v| v * v).sum::<f64>().sqrt();
        1e-8 * (1.0 + fro)
    }

    /// Sum of eigenvalues below `-tol`.
    pub fn negative_part_sum(&self, tol: f64) -> f64 {
        self.values.iter().filter(|&&v| v < -tol).sum()
    }

    /// Counts of eigenvalues above `tol`, within `±tol`, and below `-tol`.
    pub fn inertia(&self, tol: f64) -> Inertia {
        let mut inertia = Inertia { positive: 0, zero: 0, negative: 0 };
        for &v in &self.values {
            if v > tol {
                inertia.positive += 1;
            } else if v < -tol {
                inertia.negative += 1;
            } else {
                inertia.zero += 1;
            }
        }
        inertia
    }

    /// Number of eigenvalues within `tol` of `x` (tolerance-aware
    /// multiplicity query; exact ties are not assumed).
    pub fn multiplicity_near(&self, x: f64, tol: f64) -> usize {
        self.values.iter().filter(|&&v| (v - x).abs() <= tol).count()
    }
}

/// Signature of a symmetric matrix: counts of positive, zero and negative
/// eigenvalues. Invariant under congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

/// How an energy value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Full dense eigendecomposition of the n-by-n matrix.
    Dense,
    /// Block spectra plus the small quotient matrix; no n-by-n solve.
    Quotient,
    /// A closed-form expression (possibly through a small quotient solve).
    ClosedForm,
}

/// Energy together with the spectrum summary it came from.
#[derive(Debug, Clone, Serialize)]
pub struct EnergyReport {
    /// Sum of absolute eigenvalues.
    pub energy: f64,
    /// Largest absolute eigenvalue.
    pub spectral_radius: f64,
    /// Sum of eigenvalues classified negative at the report's tolerance.
    pub negative_sum: f64,
    /// Counts of positive/zero/negative eigenvalues at the same tolerance.
    pub inertia: Inertia,
    /// How the energy value was computed.
    pub method: Method,
}

impl EnergyReport {
    /// Summarizes a spectrum. `tol` overrides the default sign tolerance
    /// `1e-8 * (1 + ||M||_F)`.
    pub fn from_spectrum(spectrum: &Spectrum, method: Method, tol: Option<f64>) -> Self {
        let tol = tol.unwrap_or_else(|| spectrum.default_tol());
        let spectral_radius = spectrum
            .values()
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max);
        EnergyReport {
            energy: spectrum.energy(),
            spectral_radius,
            negative_sum: spectrum.negative_part_sum(tol),
            inertia: spectrum.inertia(tol),
            method,
        }
    }
}

/// Full eigendecomposition: `values` descending, `vectors[j]` the unit
/// eigenvector belonging to `values[j]`.
#[derive(Debug, Clone)]
pub struct EigenPairs {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Eigenvalues of a symmetric matrix, descending.
pub fn eig_sym(m: &RealSymMatrix) -> Result<Spectrum> {
    eig_sym_pairs(m).map(|pairs| Spectrum::from_unsorted(pairs.values))
}

/// Eigenvalues and eigenvectors of a symmetric matrix.
pub fn eig_sym_pairs(m: &RealSymMatrix) -> Result<EigenPairs> {
    let n = m.n();
    // Constructors guarantee symmetry; re-check the op contract at zero
    // tolerance in case the matrix was assembled by hand.
    for i in 0..n {
        for j in (i + 1)..n {
            if m.get(i, j).to_bits() != m.get(j, i).to_bits() {
                return Err(Error::NotSymmetric);
            }
        }
    }

    let mut a = m.data().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let threshold = CONVERGENCE * m.frobenius_norm();
    let mut sweeps = 0;
    while off_diagonal_norm(&a, n) > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq != 0.0 {
                    let (c, s) = rotation(a[p * n + p], a[q * n + q], apq);
                    apply_rotation(&mut a, &mut v, n, p, q, c, s);
                }
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let values = order.iter().map(|&j| a[j * n + j]).collect();
    let vectors = order
        .iter()
        .map(|&j| (0..n).map(|i| v[i * n + j]).collect())
        .collect();
    Ok(EigenPairs { values, vectors })
}

/// Frobenius norm of the strictly off-diagonal part.
fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += a[i * n + j] * a[i * n + j];
        }
    }
    (2.0 * sum).sqrt()
}

/// Cosine/sine of the Givens rotation that zeroes entry `(p, q)`.
fn rotation(app: f64, aqq: f64, apq: f64) -> (f64, f64) {
    let tau = (aqq - app) / (2.0 * apq);
    // Smaller-magnitude root of t^2 + 2*tau*t - 1 = 0 for stability.
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (tau - (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c)
}

/// Applies the symmetric two-sided rotation on rows/columns `p`, `q` and
/// accumulates it into the eigenvector matrix. Keeps `a` bit-symmetric and
/// zeroes `(p, q)` exactly.
fn apply_rotation(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let apq = a[p * n + q];
    a[p * n + p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
    a[q * n + q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for i in 0..n {
        if i != p && i != q {
            let aip = a[i * n + p];
            let aiq = a[i * n + q];
            let nip = c * aip - s * aiq;
            let niq = s * aip + c * aiq;
            a[i * n + p] = nip;
            a[p * n + i] = nip;
            a[i * n + q] = niq;
            a[q * n + i] = niq;
        }
        let vip = v[i * n + p];
        let viq = v[i * n + q];
        v[i * n + p] = c * vip - s * viq;
        v[i * n + q] = s * vip + c * viq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, PartitionSpec};
    use crate::matrix;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_symmetric(seed: u64, n: usize, lo: f64, hi: f64) -> RealSymMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        RealSymMatrix::from_fn(n, |_, _| rng.random_range(lo..hi))
    }

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "got {got:?}, want {want:?}");
        }
    }

    #[test]
    fn identity_and_swap_spectra() {
        let spec = eig_sym(&RealSymMatrix::identity(2)).unwrap();
        assert_close(spec.values(), &[1.0, 1.0], 0.0);

        let swap = RealSymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let spec = eig_sym(&swap).unwrap();
        assert_close(spec.values(), &[1.0, -1.0], 1e-12);
        assert!((spec.energy() - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn harary_spectrum_of_balanced_four_cycle() {
        let g = Graph::complete_multipartite(&PartitionSpec::new(&[2, 2]).unwrap()).unwrap();
        let rd = matrix::reciprocal_distance(&g.apsp().unwrap());
        let spec = eig_sym(&rd).unwrap();
        assert_close(spec.values(), &[2.5, -0.5, -0.5, -1.5], 1e-12);
        assert!((spec.energy() - 5.0).abs() < 1e-12);
        let tol = spec.default_tol();
        assert!((spec.negative_part_sum(tol) + 2.5).abs() < 1e-12);
        assert_eq!(spec.inertia(tol), Inertia { positive: 1, zero: 0, negative: 3 });
    }

    #[test]
    fn zero_matrix_spectrum() {
        let spec = eig_sym(&RealSymMatrix::zeros(3)).unwrap();
        assert_eq!(spec.values(), &[0.0, 0.0, 0.0]);
        assert_eq!(spec.energy(), 0.0);
        assert_eq!(spec.negative_part_sum(spec.default_tol()), 0.0);
        assert_eq!(
            spec.inertia(spec.default_tol()),
            Inertia { positive: 0, zero: 3, negative: 0 }
        );
    }

    #[test]
    fn all_positive_spectrum_has_zero_negative_sum() {
        let m = RealSymMatrix::from_rows(&[vec![2.0, 0.5], vec![0.5, 3.0]]).unwrap();
        let spec = eig_sym(&m).unwrap();
        assert_eq!(spec.negative_part_sum(spec.default_tol()), 0.0);
        assert_eq!(
            spec.inertia(spec.default_tol()),
            Inertia { positive: 2, zero: 0, negative: 0 }
        );
    }

    #[test]
    fn multiplicity_queries_use_windows() {
        let spec = Spectrum::from_unsorted(vec![1.0, 1.0 + 1e-10, -0.5]);
        assert_eq!(spec.multiplicity_near(1.0, 1e-9), 2);
        assert_eq!(spec.multiplicity_near(1.0, 1e-12), 1);
        assert_eq!(spec.multiplicity_near(-0.5, 0.0), 1);
    }

    #[test]
    fn energy_report_fields_are_consistent() {
        let g = Graph::complete_multipartite(&PartitionSpec::new(&[2, 2]).unwrap()).unwrap();
        let spec = eig_sym(&matrix::reciprocal_distance(&g.apsp().unwrap())).unwrap();
        let report = EnergyReport::from_spectrum(&spec, Method::Dense, None);
        assert!((report.energy - 5.0).abs() < 1e-12);
        assert!((report.spectral_radius - 2.5).abs() < 1e-12);
        assert!((report.energy + 2.0 * report.negative_sum).abs() < 1e-8);
        assert_eq!(
            report.inertia.positive + report.inertia.zero + report.inertia.negative,
            spec.len()
        );
        assert_eq!(report.method, Method::Dense);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn eigenpairs_reconstruct_the_matrix(seed in any::<u64>(), n in 1usize..=14) {
            let m = random_symmetric(seed, n, -1.0, 1.0);
            let pairs = eig_sym_pairs(&m).unwrap();
            let fro = m.frobenius_norm();
            for (value, vector) in pairs.values.iter().zip(&pairs.vectors) {
                let mv = m.mul_vec(vector);
                let residual: f64 = mv
                    .iter()
                    .zip(vector)
                    .map(|(a, b)| (a - value * b) * (a - value * b))
                    .sum::<f64>()
                    .sqrt();
                prop_assert!(residual <= 1e-8 * fro.max(1.0));
            }
        }

        #[test]
        fn eigenvalue_sum_matches_trace(seed in any::<u64>(), n in 1usize..=14) {
            let m = random_symmetric(seed, n, -1.0, 1.0);
            let spec = eig_sym(&m).unwrap();
            let bound = n as f64 * 1e-10 * (1.0 + m.frobenius_norm());
            prop_assert!((spec.sum() - m.trace()).abs() <= bound);
        }

        #[test]
        fn interlacing_with_principal_submatrices(
            seed in any::<u64>(), n in 2usize..=10
        ) {
            let m = random_symmetric(seed, n, -1.0, 1.0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
            let k = rng.random_range(1..n);
            let mut keep: Vec<usize> = (0..n).collect();
            for i in 0..n {
                let j = rng.random_range(i..n);
                keep.swap(i, j);
            }
            keep.truncate(k);
            keep.sort_unstable();
            let sub = m.principal_submatrix(&keep).unwrap();
            let big = eig_sym(&m).unwrap();
            let small = eig_sym(&sub).unwrap();
            for i in 0..k {
                prop_assert!(small.values()[i] <= big.values()[i] + 1e-9);
                prop_assert!(big.values()[n - k + i] <= small.values()[i] + 1e-9);
            }
        }

        #[test]
        fn spectral_radius_monotone_under_entrywise_growth(
            seed in any::<u64>(), n in 2usize..=10
        ) {
            let a = random_symmetric(seed, n, 0.0, 1.0);
            let bump = random_symmetric(seed ^ 0xabcd, n, 0.0, 1.0);
            let b = RealSymMatrix::from_fn(n, |i, j| a.get(i, j) + bump.get(i, j));
            let la = eig_sym(&a).unwrap().lambda1();
            let lb = eig_sym(&b).unwrap().lambda1();
            prop_assert!(la <= lb + 1e-9);
        }
    }
}
