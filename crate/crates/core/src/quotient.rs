//! Spectrum machinery for block-structured symmetric matrices
//! `M[M_1, ..., M_k, a]`: blocks `M_i` on the diagonal, constant coupling
//! `a` filling every off-diagonal block.
//!
//! When each block is symmetric with zero trace and constant row sum
//! `r_i >= 0`, the full spectrum is the union of the block spectra with one
//! copy of each `r_i` removed, plus the k eigenvalues of a small quotient
//! matrix. Three hypothesis regimes admit closed-form energies; anything
//! else falls back to a dense eigensolve of the assembled matrix.

use rand::Rng;
use serde::Serialize;

use crate::eigen::{self, EnergyReport, Method, Spectrum};
use crate::error::{Error, Result};
use crate::graph::PartitionSpec;
use crate::matrix::{MatrixKind, RealSymMatrix};

/// Per-row deviation allowed when extracting a block's constant row sum.
const ROW_SUM_TOL: f64 = 1e-10;
/// Allowed magnitude of a block's trace.
const TRACE_TOL: f64 = 1e-10;
/// Matching window when removing one copy of `r_i` from a block spectrum.
const R_MATCH_TOL: f64 = 1e-7;
/// Slack on the case-hypothesis inequalities.
const CASE_EPS: f64 = 1e-12;

/// One diagonal block: symmetric, zero trace, constant row sum.
#[derive(Debug, Clone)]
pub struct Block {
    matrix: RealSymMatrix,
    row_sum: f64,
}

impl Block {
    pub fn matrix(&self) -> &RealSymMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.n()
    }

    /// The constant row sum `r_i`, which is always an eigenvalue of the
    /// block (eigenvector all-ones).
    pub fn row_sum(&self) -> f64 {
        self.row_sum
    }
}

/// Validated data of `M[M_1, ..., M_k, a]`.
#[derive(Debug, Clone)]
pub struct BlockSpec {
    blocks: Vec<Block>,
    coupling: f64,
}

impl BlockSpec {
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// The off-diagonal constant `a`.
    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// Number of blocks.
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// Order of the assembled matrix.
    pub fn n(&self) -> usize {
        self.blocks.iter().map(Block::size).sum()
    }

    /// Largest and smallest `r_i / n_i` over the blocks.
    fn ratio_extremes(&self) -> (f64, f64) {
        let mut max = f64::NEG_INFINITY;
        let mut min = f64::INFINITY;
        for b in &self.blocks {
            let ratio = b.row_sum / b.size() as f64;
            max = max.max(ratio);
            min = min.min(ratio);
        }
        (max, min)
    }
}

/// Which closed-form energy regime a block spec falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    /// Coupling positive and dominated by every `r_i / n_i`:
    /// energy is the sum of the block energies.
    #[serde(rename = "case_i")]
    CaseI,
    /// Every block has at most one positive eigenvalue (its row sum) and the
    /// coupling dominates every `r_i / n_i`: energy is twice the largest
    /// eigenvalue.
    #[serde(rename = "case_ii")]
    CaseII,
    /// Negative coupling with bounded block minima: energy is the sum of
    /// block energies minus twice the smallest eigenvalue.
    #[serde(rename = "case_iii")]
    CaseIII,
    /// No hypothesis matched; only the dense path applies.
    #[serde(rename = "none")]
    NoCase,
}

/// Checks the block conditions (symmetry, constant row sum within 1e-10 per
/// row, row sum nonnegative, zero trace within 1e-10, k >= 2, coupling
/// nonzero) and extracts each `r_i` from the row sums.
pub fn validate_blocks(blocks: Vec<RealSymMatrix>, coupling: f64) -> Result<BlockSpec> {
    if blocks.len() < 2 {
        return Err(Error::InvalidBlockSpec(format!(
            "need at least 2 blocks, got {}",
            blocks.len()
        )));
    }
    if coupling == 0.0 {
        return Err(Error::InvalidBlockSpec("coupling must be nonzero".into()));
    }
    let mut checked = Vec::with_capacity(blocks.len());
    for (idx, matrix) in blocks.into_iter().enumerate() {
        let n = matrix.n();
        if n == 0 {
            return Err(Error::InvalidBlockSpec(format!("block {idx} has order 0")));
        }
        let row_sum = (0..n).map(|i| matrix.row_sum(i)).sum::<f64>() / n as f64;
        for i in 0..n {
            let deviation = (matrix.row_sum(i) - row_sum).abs();
            if deviation > ROW_SUM_TOL {
                return Err(Error::InvalidBlockSpec(format!(
                    "block {idx} row {i} sum deviates from {row_sum} by {deviation:.3e}"
                )));
            }
        }
        if row_sum < -ROW_SUM_TOL {
            return Err(Error::InvalidBlockSpec(format!(
                "block {idx} has negative row sum {row_sum}"
            )));
        }
        let trace = matrix.trace();
        if trace.abs() > TRACE_TOL {
            return Err(Error::InvalidBlockSpec(format!(
                "block {idx} has nonzero trace {trace}"
            )));
        }
        checked.push(Block { matrix, row_sum });
    }
    Ok(BlockSpec { blocks: checked, coupling })
}

/// The k-by-k quotient whose eigenvalues complete the assembled spectrum,
/// together with a diagonal-congruent form sharing its inertia.
#[derive(Debug, Clone)]
pub struct QuotientMatrix {
    matrix: RealSymMatrix,
    congruent: RealSymMatrix,
}

impl QuotientMatrix {
    /// Diagonal `r_i`, off-diagonal `a * sqrt(n_i n_j)`.
    pub fn matrix(&self) -> &RealSymMatrix {
        &self.matrix
    }

    /// Diagonal `r_i / n_i`, off-diagonal `a`; congruent to `matrix` via
    /// scaling by `diag(sqrt(n_i))`, hence with identical inertia.
    pub fn congruent(&self) -> &RealSymMatrix {
        &self.congruent
    }
}

pub fn build_quotient(bs: &BlockSpec) -> QuotientMatrix {
    let blocks = bs.blocks();
    let a = bs.coupling();
    let matrix = RealSymMatrix::from_fn(bs.k(), |i, j| {
        if i == j {
            blocks[i].row_sum()
        } else {
            a * ((blocks[i].size() * blocks[j].size()) as f64).sqrt()
        }
    });
    let congruent = RealSymMatrix::from_fn(bs.k(), |i, j| {
        if i == j {
            blocks[i].row_sum() / blocks[i].size() as f64
        } else {
            a
        }
    });
    QuotientMatrix { matrix, congruent }
}

/// Full spectrum of the assembled matrix without ever forming it: the union
/// of the block spectra with one copy of each `r_i` removed, plus the
/// quotient eigenvalues.
pub fn assemble_spectrum(bs: &BlockSpec) -> Result<Spectrum> {
    let block_spectra = block_spectra(bs)?;
    assemble_from_block_spectra(bs, &block_spectra)
}

fn block_spectra(bs: &BlockSpec) -> Result<Vec<Spectrum>> {
    bs.blocks().iter().map(|b| eigen::eig_sym(b.matrix())).collect()
}

fn assemble_from_block_spectra(bs: &BlockSpec, block_spectra: &[Spectrum]) -> Result<Spectrum> {
    let mut values = Vec::with_capacity(bs.n());
    for (block, spectrum) in bs.blocks().iter().zip(block_spectra) {
        let vals = spectrum.values();
        let r = block.row_sum();
        let mut nearest = 0;
        for (i, &v) in vals.iter().enumerate() {
            if (v - r).abs() < (vals[nearest] - r).abs() {
                nearest = i;
            }
        }
        if (vals[nearest] - r).abs() > R_MATCH_TOL {
            return Err(Error::InternalInconsistency(format!(
                "no eigenvalue of a validated block lies within {R_MATCH_TOL:e} of \
                 its row sum {r}"
            )));
        }
        for (i, &v) in vals.iter().enumerate() {
            if i != nearest {
                values.push(v);
            }
        }
    }
    let quotient = build_quotient(bs);
    values.extend_from_slice(eigen::eig_sym(quotient.matrix())?.values());
    Ok(Spectrum::from_unsorted(values))
}

/// Decides which energy regime applies. Hypotheses are tested with a 1e-12
/// slack; regimes are tried in order I, II, III.
pub fn classify_case(bs: &BlockSpec) -> Result<CaseLabel> {
    let a = bs.coupling();
    let (max_ratio, min_ratio) = bs.ratio_extremes();

    if a > 0.0 && min_ratio - a >= -CASE_EPS {
        return Ok(CaseLabel::CaseI);
    }

    let spectra = block_spectra(bs)?;

    if max_ratio - a <= CASE_EPS {
        let one_positive_each = bs.blocks().iter().zip(&spectra).all(|(block, spectrum)| {
            let tol = spectrum.default_tol();
            let positives: Vec<f64> =
                spectrum.values().iter().copied().filter(|&v| v > tol).collect();
            match positives[..] {
                [] => true,
                [only] => (only - block.row_sum()).abs() <= R_MATCH_TOL,
                _ => false,
            }
        });
        if one_positive_each {
            return Ok(CaseLabel::CaseII);
        }
    }

    if a < 0.0 {
        let admits = |ratio: f64| {
            let bound = a * (bs.k() as f64 - 1.0) + ratio;
            spectra.iter().all(|spectrum| {
                let lambda_min = spectrum.lambda_min();
                bound <= lambda_min + CASE_EPS && lambda_min <= CASE_EPS
            })
        };
        let max_ratio_form = admits(max_ratio);
        let min_ratio_form = admits(min_ratio);
        if max_ratio_form != min_ratio_form {
            log::warn!(
                "negative-coupling case predicates disagree (max-ratio form: {}, \
                 min-ratio form: {}); using the max-ratio form",
                max_ratio_form,
                min_ratio_form
            );
        }
        if max_ratio_form {
            return Ok(CaseLabel::CaseIII);
        }
    }

    Ok(CaseLabel::NoCase)
}

/// Energy of the assembled matrix, by the matched regime's formula when one
/// applies (block spectra and quotient only), otherwise by dense fallback.
/// The report's spectral radius, negative sum and inertia always describe
/// the full spectrum.
pub fn energy_via_cases(bs: &BlockSpec) -> Result<EnergyReport> {
    let case = classify_case(bs)?;
    if case == CaseLabel::NoCase {
        let spectrum = eigen::eig_sym(&assemble_dense(bs))?;
        return Ok(EnergyReport::from_spectrum(&spectrum, Method::Dense, None));
    }

    let spectra = block_spectra(bs)?;
    let union = assemble_from_block_spectra(bs, &spectra)?;
    let block_energy: f64 = spectra.iter().map(Spectrum::energy).sum();
    let energy = match case {
        CaseLabel::CaseI => block_energy,
        CaseLabel::CaseII => 2.0 * union.lambda1(),
        CaseLabel::CaseIII => block_energy - 2.0 * union.lambda_min(),
        CaseLabel::NoCase => unreachable!("handled above"),
    };
    let mut report = EnergyReport::from_spectrum(&union, Method::Quotient, None);
    report.energy = energy;
    Ok(report)
}

/// The full n-by-n matrix: blocks on the diagonal, coupling everywhere else.
pub fn assemble_dense(bs: &BlockSpec) -> RealSymMatrix {
    let mut owner = Vec::with_capacity(bs.n());
    for (b, block) in bs.blocks().iter().enumerate() {
        for local in 0..block.size() {
            owner.push((b, local));
        }
    }
    let a = bs.coupling();
    RealSymMatrix::from_fn(owner.len(), |i, j| {
        let (bi, li) = owner[i];
        let (bj, lj) = owner[j];
        if bi == bj {
            bs.blocks()[bi].matrix().get(li, lj)
        } else {
            a
        }
    })
}

/// Diagonal blocks and coupling constant realizing the chosen matrix family
/// on a complete multipartite graph. Every family is `coef * (J - I)` within
/// parts and a constant across parts; the constants depend on the diameter,
/// which is 1 exactly when all parts are singletons.
pub fn multipartite_blocks(parts: &PartitionSpec, kind: MatrixKind) -> (Vec<RealSymMatrix>, f64) {
    let diam = if parts.parts().iter().all(|&p| p == 1) { 1.0 } else { 2.0 };
    let (coef, coupling) = match kind {
        MatrixKind::Rd => (0.5, 1.0),
        MatrixKind::D => (2.0, 1.0),
        MatrixKind::A => (0.0, 1.0),
        MatrixKind::Seidel => (1.0, -1.0),
        MatrixKind::Cd => (diam - 1.0, diam),
        MatrixKind::Rcd => (if diam == 2.0 { 1.0 } else { 0.0 }, 1.0 / diam),
    };
    let blocks = parts
        .parts()
        .iter()
        .map(|&ni| RealSymMatrix::from_fn(ni, |i, j| if i == j { 0.0 } else { coef }))
        .collect();
    (blocks, coupling)
}

/// Random symmetric matrix with zero trace and constant row sum `r`,
/// uniform noise on top of the constant-row-sum base.
pub(crate) fn random_zero_trace_block<R: Rng>(rng: &mut R, n: usize, r: f64) -> RealSymMatrix {
    if n == 1 {
        // Order 1 forces the zero matrix: the trace is the sole entry.
        return RealSymMatrix::zeros(1);
    }
    let nf = n as f64;
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = rng.random_range(-1.0..1.0);
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    }
    let row_mean: Vec<f64> =
        (0..n).map(|i| (0..n).map(|j| a[i * n + j]).sum::<f64>() / nf).collect();
    let total_mean = row_mean.iter().sum::<f64>() / nf;
    // Double centering gives zero row sums; subtracting a multiple of
    // I - J/n then zeroes the trace without disturbing them.
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            z[i * n + j] = a[i * n + j] - row_mean[i] - row_mean[j] + total_mean;
        }
    }
    let alpha = (0..n).map(|i| z[i * n + i]).sum::<f64>() / (nf - 1.0);
    RealSymMatrix::from_fn(n, |i, j| {
        if i == j {
            z[i * n + j] - alpha * (1.0 - 1.0 / nf)
        } else {
            z[i * n + j] + alpha / nf + r / (nf - 1.0)
        }
    })
}

/// Random valid block spec: 2..=max_k blocks of order 1..=max_size with row
/// sums in [0, 3) and coupling in [-3, 3] bounded away from zero.
pub(crate) fn random_block_spec<R: Rng>(rng: &mut R, max_k: usize, max_size: usize) -> BlockSpec {
    let k = rng.random_range(2..=max_k);
    let blocks: Vec<RealSymMatrix> = (0..k)
        .map(|_| {
            let n = rng.random_range(1..=max_size);
            let r = rng.random_range(0.0..3.0);
            random_zero_trace_block(rng, n, r)
        })
        .collect();
    let coupling = loop {
        let a: f64 = rng.random_range(-3.0..3.0);
        if a.abs() >= 0.05 {
            break a;
        }
    };
    validate_blocks(blocks, coupling).expect("constructed blocks satisfy the validation checks")
}
