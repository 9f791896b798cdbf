//! Closed-form energies for the six matrix families on complete
//! multipartite graphs, the bipartite largest-eigenvalue formula, and
//! single-edge-deletion spectra computed through small class-level
//! quotients instead of full eigensolves.

use crate::eigen::{self, Spectrum};
use crate::error::{Error, Result};
use crate::graph::PartitionSpec;
use crate::matrix::{MatrixKind, RealSymMatrix};
use crate::quotient;

/// Allowed asymmetry in a symmetrized class quotient.
const SYMMETRY_TOL: f64 = 1e-12;
/// Relative residual allowed when checking quotient roots against the
/// per-case reference polynomials.
const POLY_RESIDUAL_TOL: f64 = 1e-6;

fn require_parts(parts: &PartitionSpec, min_k: usize) -> Result<()> {
    if parts.k() < min_k {
        return Err(Error::PreconditionViolated(format!(
            "need at least {min_k} parts, got {}",
            parts.k()
        )));
    }
    Ok(())
}

fn require_no_singletons(parts: &PartitionSpec) -> Result<()> {
    if parts.parts().iter().any(|&p| p < 2) {
        return Err(Error::PreconditionViolated(
            "formula requires every part to have at least 2 vertices".into(),
        ));
    }
    Ok(())
}

/// Spectrum of the k-by-k quotient of the chosen family on a complete
/// multipartite graph (diagonal `r_i`, off-diagonal `a * sqrt(n_i n_j)`).
fn family_quotient_spectrum(parts: &PartitionSpec, kind: MatrixKind) -> Result<Spectrum> {
    require_parts(parts, 2)?;
    let (blocks, coupling) = quotient::multipartite_blocks(parts, kind);
    let bs = quotient::validate_blocks(blocks, coupling)?;
    eigen::eig_sym(quotient::build_quotient(&bs).matrix())
}

fn twice_lambda1(parts: &PartitionSpec, kind: MatrixKind) -> Result<f64> {
    Ok(2.0 * family_quotient_spectrum(parts, kind)?.lambda1())
}

/// Reciprocal-distance energy of a complete multipartite graph:
/// `2 λ₁` of the k-by-k quotient with diagonal `(n_i - 1)/2` and
/// off-diagonal `sqrt(n_i n_j)`. No full-order eigensolve.
pub fn rd_energy_multipartite(parts: &PartitionSpec) -> Result<f64> {
    twice_lambda1(parts, MatrixKind::Rd)
}

/// Largest reciprocal-distance eigenvalue of a complete multipartite graph,
/// from the k-by-k quotient.
pub fn rd_lambda1_multipartite(parts: &PartitionSpec) -> Result<f64> {
    Ok(family_quotient_spectrum(parts, MatrixKind::Rd)?.lambda1())
}

/// Largest reciprocal-distance eigenvalue of a complete bipartite graph:
/// `(m + n - 2 + sqrt(m² + 14mn + n²)) / 4`.
pub fn rd_lambda1_bipartite(m: usize, n: usize) -> Result<f64> {
    if m < 1 || n < 1 {
        return Err(Error::PreconditionViolated(
            "both part sizes must be at least 1".into(),
        ));
    }
    let (m, n) = (m as f64, n as f64);
    Ok((m + n - 2.0 + (m * m + 14.0 * m * n + n * n).sqrt()) / 4.0)
}

/// Distance energy of a complete multipartite graph with every part of size
/// at least 2: exactly `4(n - k)`.
pub fn distance_energy_multipartite(parts: &PartitionSpec) -> Result<f64> {
    require_parts(parts, 2)?;
    require_no_singletons(parts)?;
    Ok(4.0 * (parts.n() - parts.k()) as f64)
}

/// Adjacency energy of a complete multipartite graph: `2 λ₁` of the quotient
/// with zero diagonal and off-diagonal `sqrt(n_i n_j)`.
pub fn adjacency_energy_multipartite(parts: &PartitionSpec) -> Result<f64> {
    twice_lambda1(parts, MatrixKind::A)
}

/// Seidel energy of a complete multipartite graph with at least 3 parts:
/// `2(n - k) - 2 λ_min`, with `λ_min` taken over the quotient eigenvalues
/// and the `-1` fillers contributed by parts of size at least 2.
pub fn seidel_energy_multipartite(parts: &PartitionSpec) -> Result<f64> {
    require_parts(parts, 3)?;
    let quotient_spectrum = family_quotient_spectrum(parts, MatrixKind::Seidel)?;
    let mut lambda_min = quotient_spectrum.lambda_min();
    if parts.parts().iter().any(|&p| p >= 2) {
        lambda_min = lambda_min.min(-1.0);
    }
    Ok(2.0 * (parts.n() - parts.k()) as f64 - 2.0 * lambda_min)
}

/// Complementary-distance energy of a complete multipartite graph:
/// `2 λ₁` of the quotient with diagonal `(diam - 1)(n_i - 1)` and
/// off-diagonal `diam * sqrt(n_i n_j)`.
pub fn cd_energy_multipartite(parts: &PartitionSpec) -> Result<f64> {
    twice_lambda1(parts, MatrixKind::Cd)
}

/// Reciprocal-complementary-distance energy of a complete multipartite
/// graph with every part of size at least 2: exactly `2(n - k)`.
pub fn rcd_energy_multipartite(parts: &PartitionSpec) -> Result<f64> {
    require_parts(parts, 2)?;
    require_no_singletons(parts)?;
    Ok(2.0 * (parts.n() - parts.k()) as f64)
}

/// Closed-form energy of the chosen family, when its hypothesis holds.
pub fn multipartite_energy(parts: &PartitionSpec, kind: MatrixKind) -> Result<f64> {
    match kind {
        MatrixKind::Rd => rd_energy_multipartite(parts),
        MatrixKind::D => distance_energy_multipartite(parts),
        MatrixKind::A => adjacency_energy_multipartite(parts),
        MatrixKind::Seidel => seidel_energy_multipartite(parts),
        MatrixKind::Cd => cd_energy_multipartite(parts),
        MatrixKind::Rcd => rcd_energy_multipartite(parts),
    }
}

/// Parameters of the coupled two-group matrix E of order `p + q + 2`: two
/// distinguished vertices joined with weight `a`, groups of sizes `p` and
/// `q`, within-group weight `b`, and cross weight `c` (see `e_matrix_dense`
/// for the exact layout).
#[derive(Debug, Clone, Copy)]
pub struct EMatrixSpec {
    p: usize,
    q: usize,
    a: f64,
    b: f64,
    c: f64,
}

impl EMatrixSpec {
    pub fn new(p: usize, q: usize, a: f64, b: f64, c: f64) -> Result<Self> {
        if p < 1 || q < 1 {
            return Err(Error::PreconditionViolated(
                "group sizes p and q must be at least 1".into(),
            ));
        }
        Ok(EMatrixSpec { p, q, a, b, c })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn order(&self) -> usize {
        self.p + self.q + 2
    }
}

/// Class-level quotient of a matrix that is constant on the blocks induced
/// by a vertex partition with classes of the given sizes (an equitable
/// structure): entry `(i, j)` of the raw form is `w(i,j) * s_j` off the
/// diagonal and `w(i,i) * (s_i - 1)` on it. The symmetrized form conjugates
/// by `diag(sqrt(s_i))` — a similarity, so both share their eigenvalues,
/// which are eigenvalues of the full matrix.
#[derive(Debug, Clone)]
pub struct ReducedQuotient {
    sizes: Vec<usize>,
    raw: Vec<Vec<f64>>,
    symmetrized: RealSymMatrix,
}

impl ReducedQuotient {
    /// Builds the quotient from class sizes and the symmetric pair weight
    /// `w`. Fails if the symmetrized form is not symmetric within 1e-12.
    pub fn from_coupling(sizes: &[usize], w: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let k = sizes.len();
        if k == 0 || sizes.contains(&0) {
            return Err(Error::PreconditionViolated(
                "class sizes must be positive".into(),
            ));
        }
        for i in 0..k {
            for j in (i + 1)..k {
                let scale = ((sizes[i] * sizes[j]) as f64).sqrt();
                if ((w(i, j) - w(j, i)) * scale).abs() > SYMMETRY_TOL {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        let raw: Vec<Vec<f64>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if i == j {
                            w(i, i) * (sizes[i] - 1) as f64
                        } else {
                            w(i, j) * sizes[j] as f64
                        }
                    })
                    .collect()
            })
            .collect();
        let symmetrized = RealSymMatrix::from_fn(k, |i, j| {
            if i == j {
                w(i, i) * (sizes[i] - 1) as f64
            } else {
                w(i, j) * ((sizes[i] * sizes[j]) as f64).sqrt()
            }
        });
        Ok(ReducedQuotient { sizes: sizes.to_vec(), raw, symmetrized })
    }

    /// Number of classes.
    pub fn order(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn raw(&self) -> &[Vec<f64>] {
        &self.raw
    }

    pub fn symmetrized(&self) -> &RealSymMatrix {
        &self.symmetrized
    }

    /// The shared eigenvalues of both forms.
    pub fn eigenvalues(&self) -> Result<Spectrum> {
        eigen::eig_sym(&self.symmetrized)
    }
}

/// Pair weight between the four classes of the E matrix:
/// 0 = first distinguished vertex, 1 = second, 2 = p-group, 3 = q-group.
fn e_coupling(a: f64, b: f64, c: f64) -> impl Fn(usize, usize) -> f64 {
    move |i, j| {
        let (x, y) = if i <= j { (i, j) } else { (j, i) };
        match (x, y) {
            (0, 0) | (1, 1) => 0.0,
            (0, 1) => a,
            (0, 2) | (1, 3) | (2, 2) | (3, 3) => b,
            (0, 3) | (1, 2) | (2, 3) => c,
            _ => unreachable!("only four classes exist"),
        }
    }
}

/// The 4-class quotient of the E matrix, with raw form
/// `[[0, a, bp, cq], [a, 0, cp, bq], [b, c, b(p-1), cq], [c, b, cp, b(q-1)]]`.
pub fn e_matrix_quotient(spec: &EMatrixSpec) -> Result<ReducedQuotient> {
    ReducedQuotient::from_coupling(&[1, 1, spec.p, spec.q], e_coupling(spec.a, spec.b, spec.c))
}

/// The explicit E matrix: order `p + q + 2`, zero diagonal, entries given by
/// the class weights (vertex 0 and 1 distinguished, then the p-group, then
/// the q-group).
pub fn e_matrix_dense(spec: &EMatrixSpec) -> RealSymMatrix {
    let p = spec.p;
    let class = move |i: usize| {
        if i == 0 {
            0
        } else if i == 1 {
            1
        } else if i < 2 + p {
            2
        } else {
            3
        }
    };
    let w = e_coupling(spec.a, spec.b, spec.c);
    RealSymMatrix::from_fn(spec.order(), |i, j| {
        if i == j {
            0.0
        } else {
            w(class(i), class(j))
        }
    })
}

/// Full spectrum of the E matrix: the four quotient eigenvalues plus `-b`
/// with multiplicity `p + q - 2`.
pub fn e_matrix_spectrum(spec: &EMatrixSpec) -> Result<Spectrum> {
    let mut values = e_matrix_quotient(spec)?.eigenvalues()?.values().to_vec();
    values.extend(std::iter::repeat_n(-spec.b, spec.p + spec.q - 2));
    Ok(Spectrum::from_unsorted(values))
}

/// Reciprocal-distance spectrum of a complete bipartite graph with parts of
/// sizes `m, n >= 2` and one cross edge removed: the E matrix with
/// `(a, b, c) = (1/3, 1/2, 1)` on groups of sizes `m - 1` and `n - 1`.
pub fn kmn_minus_edge_spectrum(m: usize, n: usize) -> Result<Spectrum> {
    if m < 2 || n < 2 {
        return Err(Error::PreconditionViolated(
            "both parts must have at least 2 vertices".into(),
        ));
    }
    e_matrix_spectrum(&EMatrixSpec::new(m - 1, n - 1, 1.0 / 3.0, 0.5, 1.0)?)
}

/// Reciprocal-distance energy of the balanced complete bipartite graph with
/// one edge removed. For `q >= 3` this is the explicit surd expression
/// `2(q/2 - 1 + X + Y)`; `q = 2` has too few vertices for that form and is
/// evaluated from the full spectrum instead.
pub fn kqq_minus_edge_energy(q: usize) -> Result<f64> {
    if q < 2 {
        return Err(Error::PreconditionViolated("q must be at least 2".into()));
    }
    if q == 2 {
        return Ok(kmn_minus_edge_spectrum(2, 2)?.energy());
    }
    let qf = q as f64;
    let x = (81.0 * qf * qf + 72.0 * qf - 128.0).sqrt() / 12.0;
    let y = (9.0 * qf * qf + 24.0 * qf - 32.0).sqrt() / 12.0;
    Ok(2.0 * (qf / 2.0 - 1.0 + x + y))
}

/// Class sizes and pair weights for the reciprocal-distance matrix of a
/// complete tripartite graph with one edge removed between the first two
/// parts. Classes in order: deleted-edge endpoint in the p-part, endpoint
/// in the q-part, rest of the p-part, rest of the q-part, the r-part;
/// empty classes are dropped.
pub fn kpqr_minus_edge_quotient(p: usize, q: usize, r: usize) -> Result<ReducedQuotient> {
    if p < 1 || q < 1 || r < 1 {
        return Err(Error::PreconditionViolated(
            "all three part sizes must be at least 1".into(),
        ));
    }
    let all_sizes = [1, 1, p - 1, q - 1, r];
    let w_all = |i: usize, j: usize| -> f64 {
        let (x, y) = if i <= j { (i, j) } else { (j, i) };
        match (x, y) {
            (0, 0) | (1, 1) => 0.0,
            // The deleted edge leaves its endpoints at distance 2 (through
            // the third part), like same-part pairs.
            (0, 1) | (0, 2) | (1, 3) | (2, 2) | (3, 3) | (4, 4) => 0.5,
            (0, 3) | (0, 4) | (1, 2) | (1, 4) | (2, 3) | (2, 4) | (3, 4) => 1.0,
            _ => unreachable!("only five classes exist"),
        }
    };
    let keep: Vec<usize> = (0..all_sizes.len()).filter(|&i| all_sizes[i] > 0).collect();
    let sizes: Vec<usize> = keep.iter().map(|&i| all_sizes[i]).collect();
    ReducedQuotient::from_coupling(&sizes, |i, j| w_all(keep[i], keep[j]))
}

/// Reference characteristic polynomial (descending coefficients, integer
/// values) for the non-filler part of the tripartite edge-deleted spectrum.
/// The branch depends on which of the first two parts are singletons; the
/// `p = 1, q >= 2` branch is the mirror image of `p >= 2, q = 1`.
pub fn kpqr_case_polynomial(p: usize, q: usize, r: usize) -> Vec<f64> {
    let (pf, qf, rf) = (p as f64, q as f64, r as f64);
    if p >= 2 && q >= 2 {
        vec![
            32.0,
            -16.0 * pf - 16.0 * qf - 16.0 * rf + 80.0,
            (-24.0 * qf - 24.0 * rf - 32.0) * pf + (-24.0 * rf - 32.0) * qf - 32.0 * rf + 104.0,
            ((-20.0 * rf - 36.0) * qf - 36.0 * rf - 20.0) * pf + (-36.0 * rf - 20.0) * qf
                - 4.0 * rf
                + 68.0,
            ((-20.0 * rf - 12.0) * qf - 12.0 * rf - 10.0) * pf + 26.0 + (-12.0 * rf - 10.0) * qf,
            (-5.0 * rf - 3.0) * pf + (-5.0 * rf - 3.0) * qf + 3.0 * rf + 5.0,
        ]
    } else if p == 1 && q == 1 {
        vec![8.0, 4.0 - 4.0 * rf, -16.0 * rf - 2.0, -7.0 * rf - 1.0]
    } else if p >= 2 && q == 1 {
        vec![
            16.0,
            -8.0 * pf - 8.0 * rf + 24.0,
            (-12.0 * rf - 24.0) * pf - 24.0 * rf + 24.0,
            (-22.0 * rf - 16.0) * pf - 8.0 * rf + 12.0,
            (-5.0 * rf - 3.0) * pf - 2.0 * rf + 2.0,
        ]
    } else {
        kpqr_case_polynomial(q, p, r)
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Full reciprocal-distance spectrum of a complete tripartite graph with one
/// edge removed between the first two parts: the class-quotient roots plus
/// `-1/2` fillers up to order `p + q + r`. Each root is verified against the
/// per-case reference polynomial.
pub fn kpqr_minus_edge_spectrum(p: usize, q: usize, r: usize) -> Result<Spectrum> {
    let quotient = kpqr_minus_edge_quotient(p, q, r)?;
    let roots = quotient.eigenvalues()?;
    let coeffs = kpqr_case_polynomial(p, q, r);
    let magnitudes: Vec<f64> = coeffs.iter().map(|c| c.abs()).collect();
    for &root in roots.values() {
        let residual = horner(&coeffs, root).abs();
        let scale = horner(&magnitudes, root.abs()).max(1.0);
        if residual > POLY_RESIDUAL_TOL * scale {
            return Err(Error::InternalInconsistency(format!(
                "quotient root {root} misses the reference polynomial \
                 (residual {residual:.3e}, scale {scale:.3e})"
            )));
        }
    }
    let mut values = roots.values().to_vec();
    values.extend(std::iter::repeat_n(-0.5, p + q + r - quotient.order()));
    Ok(Spectrum::from_unsorted(values))
}

/// Number of sign changes in the nonzero coefficients: an upper bound (of
/// matching parity) on the number of positive roots.
pub fn descartes_positive_bound(coeffs: &[f64]) -> usize {
    let signs: Vec<bool> = coeffs
        .iter()
        .filter(|&&c| c != 0.0)
        .map(|&c| c > 0.0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::eig_sym;
    use crate::graph::Graph;
    use crate::matrix;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn parts(p: &[usize]) -> PartitionSpec {
        PartitionSpec::new(p).unwrap()
    }

    fn dense_energy(p: &[usize], kind: MatrixKind) -> f64 {
        let g = Graph::complete_multipartite(&parts(p)).unwrap();
        let dm = g.apsp().unwrap();
        eig_sym(&matrix::build(kind, &g, &dm)).unwrap().energy()
    }

    /// Dense reciprocal-distance energy after deleting one edge between a
    /// block of size `size_a` and a different block of size `size_b`.
    fn dense_rd_minus_edge_energy(p: &[usize], size_a: usize, size_b: usize) -> f64 {
        let spec = parts(p);
        let g = Graph::complete_multipartite(&spec).unwrap();
        let ranges = spec.block_ranges();
        let ia = ranges
            .iter()
            .position(|r| r.len() == size_a)
            .expect("a block of size size_a exists");
        let ib = ranges
            .iter()
            .enumerate()
            .position(|(i, r)| i != ia && r.len() == size_b)
            .expect("a second block of size size_b exists");
        let g = g.delete_edge(ranges[ia].start, ranges[ib].start).unwrap();
        eig_sym(&matrix::reciprocal_distance(&g.apsp().unwrap()))
            .unwrap()
            .energy()
    }

    #[test]
    fn rd_energy_known_values() {
        assert!((rd_energy_multipartite(&parts(&[2, 2])).unwrap() - 5.0).abs() < 1e-12);
        assert!((rd_energy_multipartite(&parts(&[1, 1])).unwrap() - 2.0).abs() < 1e-12);
        assert!((rd_energy_multipartite(&parts(&[3, 3])).unwrap() - 8.0).abs() < 1e-12);
        assert!(matches!(
            rd_energy_multipartite(&parts(&[5])),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn bipartite_lambda1_formula() {
        assert!((rd_lambda1_bipartite(2, 2).unwrap() - 2.5).abs() < 1e-15);
        assert!((rd_lambda1_bipartite(1, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!((rd_lambda1_bipartite(7, 7).unwrap() - 10.0).abs() < 1e-12);
        assert!(rd_lambda1_bipartite(0, 3).is_err());
        for (m, n) in [(3, 2), (5, 1), (4, 4), (9, 6)] {
            let energy = rd_energy_multipartite(&parts(&[m, n])).unwrap();
            let lambda1 = rd_lambda1_bipartite(m, n).unwrap();
            assert!((energy - 2.0 * lambda1).abs() < 1e-12, "({m},{n})");
        }
    }

    #[test]
    fn distance_energy_formula_and_preconditions() {
        assert_eq!(distance_energy_multipartite(&parts(&[2, 2, 2])).unwrap(), 12.0);
        assert_eq!(distance_energy_multipartite(&parts(&[2, 2])).unwrap(), 8.0);
        assert_eq!(distance_energy_multipartite(&parts(&[3, 2])).unwrap(), 12.0);
        assert!(matches!(
            distance_energy_multipartite(&parts(&[3, 1])),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn seidel_energy_formula_and_preconditions() {
        assert!((seidel_energy_multipartite(&parts(&[1, 1, 1])).unwrap() - 4.0).abs() < 1e-12);
        let want = 2.0 + 2.0 * 5f64.sqrt();
        assert!((seidel_energy_multipartite(&parts(&[2, 1, 1])).unwrap() - want).abs() < 1e-12);
        assert!((seidel_energy_multipartite(&parts(&[2, 2, 2])).unwrap() - 12.0).abs() < 1e-12);
        assert!(matches!(
            seidel_energy_multipartite(&parts(&[3, 3])),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn cd_energy_known_values() {
        assert!((cd_energy_multipartite(&parts(&[1, 1])).unwrap() - 2.0).abs() < 1e-12);
        assert!((cd_energy_multipartite(&parts(&[2, 2])).unwrap() - 10.0).abs() < 1e-12);
        let want = 1.0 + 33f64.sqrt();
        assert!((cd_energy_multipartite(&parts(&[2, 1])).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn rcd_energy_formula_and_preconditions() {
        assert_eq!(rcd_energy_multipartite(&parts(&[2, 2])).unwrap(), 4.0);
        assert_eq!(rcd_energy_multipartite(&parts(&[2, 2, 2])).unwrap(), 6.0);
        assert_eq!(rcd_energy_multipartite(&parts(&[3, 2])).unwrap(), 6.0);
        assert!(rcd_energy_multipartite(&parts(&[2, 1])).is_err());
    }

    #[test]
    fn closed_forms_match_dense_energies() {
        for p in [vec![2, 2], vec![3, 2], vec![2, 2, 2], vec![4, 3, 1], vec![1, 1, 1, 1]] {
            for kind in MatrixKind::ALL {
                match multipartite_energy(&parts(&p), kind) {
                    Ok(energy) => {
                        let dense = dense_energy(&p, kind);
                        assert!(
                            (energy - dense).abs() < 1e-8,
                            "{p:?} {kind}: closed {energy} vs dense {dense}"
                        );
                    }
                    Err(Error::PreconditionViolated(_)) => {}
                    Err(e) => panic!("unexpected error for {p:?} {kind}: {e}"),
                }
            }
        }
    }

    #[test]
    fn e_matrix_all_ones_coupling_is_complete_graph() {
        let spec = EMatrixSpec::new(2, 3, 1.0, 1.0, 1.0).unwrap();
        let spectrum = e_matrix_spectrum(&spec).unwrap();
        let n = spec.order() as f64;
        assert!((spectrum.lambda1() - (n - 1.0)).abs() < 1e-10);
        assert_eq!(spectrum.multiplicity_near(-1.0, 1e-10), spec.order() - 1);
    }

    #[test]
    fn e_matrix_quotient_matches_reference_layout() {
        let spec = EMatrixSpec::new(3, 2, 0.25, -0.5, 1.5).unwrap();
        let q = e_matrix_quotient(&spec).unwrap();
        let (a, b, c) = (0.25, -0.5, 1.5);
        let (pf, qf) = (3.0, 2.0);
        let want = [
            vec![0.0, a, b * pf, c * qf],
            vec![a, 0.0, c * pf, b * qf],
            vec![b, c, b * (pf - 1.0), c * qf],
            vec![c, b, c * pf, b * (qf - 1.0)],
        ];
        for (row, want_row) in q.raw().iter().zip(&want) {
            for (got, want) in row.iter().zip(want_row) {
                assert!((got - want).abs() < 1e-15);
            }
        }
        // Similarity structure: S * sqrt(s_j) = sqrt(s_i) * B entrywise.
        let sizes = q.sizes();
        for i in 0..q.order() {
            for j in 0..q.order() {
                let lhs = q.symmetrized().get(i, j) * (sizes[j] as f64).sqrt();
                let rhs = (sizes[i] as f64).sqrt() * q.raw()[i][j];
                assert!((lhs - rhs).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn deleted_edge_bipartite_spectrum_and_energy() {
        let spectrum = kmn_minus_edge_spectrum(2, 2).unwrap();
        let s85 = 85f64.sqrt() / 6.0;
        let s13 = 13f64.sqrt() / 6.0;
        let want = [
            2.0 / 3.0 + s85,
            -2.0 / 3.0 + s13,
            2.0 / 3.0 - s85,
            -2.0 / 3.0 - s13,
        ];
        let mut sorted = want;
        sorted.sort_by(|a, b| b.total_cmp(a));
        for (got, want) in spectrum.values().iter().zip(&sorted) {
            assert!((got - want).abs() < 1e-12);
        }
        let want_energy = 4.0 / 3.0 + 85f64.sqrt() / 3.0;
        assert!((spectrum.energy() - want_energy).abs() < 1e-12);

        // Dense cross-check on the path graph left by the deletion.
        let g = Graph::complete_multipartite(&parts(&[2, 2])).unwrap();
        let g = g.delete_edge(0, 2).unwrap();
        let dense = eig_sym(&matrix::reciprocal_distance(&g.apsp().unwrap())).unwrap();
        assert!((spectrum.energy() - dense.energy()).abs() < 1e-10);

        assert!(kmn_minus_edge_spectrum(1, 2).is_err());
    }

    #[test]
    fn deleted_edge_bipartite_filler_multiplicity() {
        let spectrum = kmn_minus_edge_spectrum(3, 3).unwrap();
        assert_eq!(spectrum.len(), 6);
        assert!(spectrum.multiplicity_near(-0.5, 1e-7) >= 2);
        let dense = dense_rd_minus_edge_energy(&[3, 3], 3, 3);
        assert!((spectrum.energy() - dense).abs() < 1e-10);
    }

    #[test]
    fn balanced_bipartite_deletion_energy_paths_agree() {
        let want = 4.0 / 3.0 + 85f64.sqrt() / 3.0;
        assert!((kqq_minus_edge_energy(2).unwrap() - want).abs() < 1e-12);
        for q in [3, 5, 9] {
            let surd = kqq_minus_edge_energy(q).unwrap();
            let spectral = kmn_minus_edge_spectrum(q, q).unwrap().energy();
            assert!((surd - spectral).abs() < 1e-9, "q={q}");
        }
        assert!(kqq_minus_edge_energy(1).is_err());
    }

    #[test]
    fn balanced_bipartite_deletion_sign_flips() {
        for q in 2..=7 {
            let delta = kqq_minus_edge_energy(q).unwrap() - (3.0 * q as f64 - 1.0);
            assert!(delta < 0.0, "q={q} delta={delta}");
        }
        for q in 8..=16 {
            let delta = kqq_minus_edge_energy(q).unwrap() - (3.0 * q as f64 - 1.0);
            assert!(delta > 0.0, "q={q} delta={delta}");
        }
    }

    #[test]
    fn tripartite_deletion_matches_dense_on_small_cases() {
        for p in 1..=3usize {
            for q in 1..=3usize {
                for r in 1..=3usize {
                    let spectrum = kpqr_minus_edge_spectrum(p, q, r).unwrap();
                    assert_eq!(spectrum.len(), p + q + r);
                    let dense = dense_rd_minus_edge_energy(&[p, q, r], p, q);
                    assert!(
                        (spectrum.energy() - dense).abs() < 1e-8,
                        "({p},{q},{r}): quotient {} vs dense {dense}",
                        spectrum.energy()
                    );
                }
            }
        }
    }

    #[test]
    fn tripartite_deletion_filler_multiplicities() {
        // Both first parts singletons: three classes remain.
        let spectrum = kpqr_minus_edge_spectrum(1, 1, 4).unwrap();
        assert!(spectrum.multiplicity_near(-0.5, 1e-7) >= 3);
        // One singleton among the first two parts: four classes remain.
        let q = kpqr_minus_edge_quotient(2, 1, 3).unwrap();
        assert_eq!(q.order(), 4);
        let spectrum = kpqr_minus_edge_spectrum(2, 1, 3).unwrap();
        assert!(spectrum.multiplicity_near(-0.5, 1e-7) >= 2);
    }

    #[test]
    fn tripartite_deletion_never_raises_energy() {
        for (p, q, r) in [(2, 2, 2), (3, 2, 1), (1, 1, 5), (4, 4, 4)] {
            let before = rd_energy_multipartite(&parts(&[p, q, r])).unwrap();
            let after = kpqr_minus_edge_spectrum(p, q, r).unwrap().energy();
            assert!(after <= before + 1e-10, "({p},{q},{r})");
        }
    }

    #[test]
    fn sign_change_counts() {
        assert_eq!(descartes_positive_bound(&[1.0, -1.0]), 1);
        assert_eq!(descartes_positive_bound(&[1.0, 1.0, 1.0]), 0);
        assert_eq!(descartes_positive_bound(&[1.0, 0.0, -2.0, 3.0]), 2);
        let coeffs = kpqr_case_polynomial(1, 1, 2);
        assert_eq!(coeffs, vec![8.0, -4.0, -34.0, -15.0]);
        assert_eq!(descartes_positive_bound(&coeffs), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn e_matrix_quotient_matches_dense(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = rng.random_range(1..=5);
            let q = rng.random_range(1..=5);
            let a = rng.random_range(-2.0..2.0);
            let b = loop {
                let b: f64 = rng.random_range(-2.0..2.0);
                if b != 0.0 { break b; }
            };
            let c = rng.random_range(-2.0..2.0);
            let spec = EMatrixSpec::new(p, q, a, b, c).unwrap();
            let fast = e_matrix_spectrum(&spec).unwrap();
            let dense = eig_sym(&e_matrix_dense(&spec)).unwrap();
            prop_assert_eq!(fast.len(), dense.len());
            for (f, d) in fast.values().iter().zip(dense.values()) {
                prop_assert!((f - d).abs() <= 1e-8);
            }
            prop_assert!(fast.multiplicity_near(-b, 1e-7) >= p + q - 2);
        }
    }
}
