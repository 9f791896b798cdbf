//! Self-contained verification suite: ten numbered checks covering the
//! closed-form energies, the block-spectrum assembly, the extremal scans,
//! the edge-deletion sweeps, the Perron structure, and the eigensolver
//! itself. Each check is deterministic (randomized checks use fixed seeds)
//! and reports a one-line detail string.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closed_form::{
    descartes_positive_bound, e_matrix_dense, e_matrix_spectrum, kpqr_case_polynomial,
    kpqr_minus_edge_spectrum, kqq_minus_edge_energy, multipartite_energy, rd_energy_multipartite,
    rd_lambda1_multipartite, EMatrixSpec,
};
use crate::eigen::{eig_sym, eig_sym_pairs};
use crate::error::{Error, Result};
use crate::graph::{Graph, PartitionSpec};
use crate::matrix::{self, MatrixKind, RealSymMatrix};
use crate::quotient::{assemble_dense, assemble_spectrum, build_quotient, random_block_spec};
use crate::scan::{
    self, edge_deletion_sweep, multipartite_minus_edge_spectrum, rd_perron_vector, Family,
};

/// Outcome of one verification check.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Names of the ten checks, indexed by `id - 1`.
pub const NAMES: [&str; 10] = [
    "four_cycle_energy_both_paths",
    "block_spectrum_union_oracle",
    "multipartite_energy_identities",
    "extremal_ordering_scans",
    "shift_monotonicity",
    "balanced_bipartite_deletion_threshold",
    "tripartite_deletion_bound",
    "two_group_matrix_spectrum_oracle",
    "perron_component_structure",
    "eigensolver_reconstruction_and_interlacing",
];

/// Runs check `id` (1-based). Errors only for an out-of-range id.
pub fn run(id: usize) -> Result<CriterionReport> {
    let name = *id
        .checked_sub(1)
        .and_then(|i| NAMES.get(i))
        .ok_or_else(|| Error::Parse(format!("check ids run from 1 to {}, got {id}", NAMES.len())))?;
    let outcome = match id {
        1 => four_cycle_energy_both_paths(),
        2 => block_spectrum_union_oracle(),
        3 => multipartite_energy_identities(),
        4 => extremal_ordering_scans(),
        5 => shift_monotonicity(),
        6 => balanced_bipartite_deletion_threshold(),
        7 => tripartite_deletion_bound(),
        8 => two_group_matrix_spectrum_oracle(),
        9 => perron_component_structure(),
        10 => eigensolver_reconstruction_and_interlacing(),
        _ => unreachable!(),
    };
    let (passed, detail) = match outcome {
        Ok(detail) => (true, detail),
        Err(detail) => (false, detail),
    };
    Ok(CriterionReport { id, name, passed, detail })
}

/// Runs all ten checks in order.
pub fn run_all() -> Vec<CriterionReport> {
    (1..=NAMES.len()).map(|id| run(id).expect("id in range")).collect()
}

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        match $cond {
            true => {}
            false => return Err(format!($($arg)+)),
        }
    };
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("unexpected error: {e}"))
}

fn dense_energy(parts: &PartitionSpec, kind: MatrixKind) -> std::result::Result<f64, String> {
    let g = lift(Graph::complete_multipartite(parts))?;
    let dm = lift(g.apsp())?;
    Ok(lift(eig_sym(&matrix::build(kind, &g, &dm)))?.energy())
}

/// Check 1: the reciprocal-distance energy of the balanced bipartite graph
/// on four vertices is 5, and deleting one edge drops it to
/// `4/3 + sqrt(85)/3`, by both the closed-form and dense paths (1e-9).
fn four_cycle_energy_both_paths() -> Outcome {
    const TOL: f64 = 1e-9;
    let parts = lift(PartitionSpec::new(&[2, 2]))?;
    let closed = lift(rd_energy_multipartite(&parts))?;
    let dense = dense_energy(&parts, MatrixKind::Rd)?;
    ensure!((closed - 5.0).abs() <= TOL, "closed-form energy {closed} is not 5");
    ensure!((dense - 5.0).abs() <= TOL, "dense energy {dense} is not 5");

    let want = 4.0 / 3.0 + 85f64.sqrt() / 3.0;
    let closed_del = lift(kqq_minus_edge_energy(2))?;
    let dense_del = lift(multipartite_minus_edge_spectrum(&parts, 2, 2))?.energy();
    ensure!(
        (closed_del - want).abs() <= TOL,
        "closed-form deleted-edge energy {closed_del} differs from {want}"
    );
    ensure!(
        (dense_del - want).abs() <= TOL,
        "dense deleted-edge energy {dense_del} differs from {want}"
    );
    Ok(format!("energies {closed:.10} and {closed_del:.10} agree on both paths"))
}

/// Check 2: on 200 random block specifications (up to 6 blocks of order up
/// to 12) the assembled spectrum matches a dense eigendecomposition
/// entrywise within 1e-8, and the small quotient matrix always has the same
/// inertia as its congruent companion form.
fn block_spectrum_union_oracle() -> Outcome {
    const TRIALS: usize = 200;
    const TOL: f64 = 1e-8;
    let mut rng = ChaCha8Rng::seed_from_u64(0xB10C_0002);
    let mut worst = 0.0f64;
    for trial in 0..TRIALS {
        let bs = random_block_spec(&mut rng, 6, 12);
        let union = lift(assemble_spectrum(&bs))?;
        let dense = lift(eig_sym(&assemble_dense(&bs)))?;
        ensure!(
            union.len() == dense.len(),
            "trial {trial}: assembled {} eigenvalues for an order-{} matrix",
            union.len(),
            dense.len()
        );
        for (i, (u, d)) in union.values().iter().zip(dense.values()).enumerate() {
            let diff = (u - d).abs();
            worst = worst.max(diff);
            ensure!(
                diff <= TOL,
                "trial {trial}: eigenvalue {i} differs by {diff:.3e} ({u} vs {d})"
            );
        }
        let q = build_quotient(&bs);
        let qs = lift(eig_sym(q.matrix()))?;
        let cs = lift(eig_sym(q.congruent()))?;
        let tol = qs.default_tol().max(cs.default_tol());
        ensure!(
            qs.inertia(tol) == cs.inertia(tol),
            "trial {trial}: quotient inertia {:?} differs from companion inertia {:?}",
            qs.inertia(tol),
            cs.inertia(tol)
        );
    }
    Ok(format!("{TRIALS} random block specs: worst eigenvalue deviation {worst:.3e}"))
}

/// Check 3: for every partition with at most 14 vertices and every matrix
/// family whose preconditions the partition meets, the closed-form energy
/// matches the dense computation within 1e-8.
fn multipartite_energy_identities() -> Outcome {
    const TOL: f64 = 1e-8;
    let mut checked = 0usize;
    let mut worst = 0.0f64;
    for n in 2..=14 {
        for k in 2..=n {
            for parts in lift(scan::partitions(n, k))? {
                let g = lift(Graph::complete_multipartite(&parts))?;
                let dm = lift(g.apsp())?;
                for kind in MatrixKind::ALL {
                    let closed = match multipartite_energy(&parts, kind) {
                        Ok(e) => e,
                        Err(Error::PreconditionViolated(_)) => continue,
                        Err(e) => return Err(format!("unexpected error: {e}")),
                    };
                    let dense = lift(eig_sym(&matrix::build(kind, &g, &dm)))?.energy();
                    let diff = (closed - dense).abs();
                    worst = worst.max(diff);
                    ensure!(
                        diff <= TOL,
                        "{kind} energy of partition {parts}: closed {closed} vs dense {dense}"
                    );
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (partition, family) identities hold; worst deviation {worst:.3e}"))
}

/// Check 4: for 6 <= n <= 18 and 2 <= k <= min(6, n-1), the scan finds the
/// reciprocal-distance energy minimized exactly at the complete split
/// partition and maximized exactly at the balanced partition.
fn extremal_ordering_scans() -> Outcome {
    let mut scans = 0usize;
    for n in 6..=18 {
        for k in 2..=6.min(n - 1) {
            let report = lift(scan::scan(n, k))?;
            ensure!(
                report.min_verified,
                "scan n={n} k={k}: minimum at {} instead of the split partition",
                report.argmin
            );
            ensure!(
                report.max_verified,
                "scan n={n} k={k}: maximum at {} instead of the balanced partition",
                report.argmax
            );
            scans += 1;
        }
    }
    Ok(format!("{scans} scans place the extremes at the split and balanced partitions"))
}

/// Check 5: every legal shift (moving one vertex from a strictly larger
/// part to the next one) on every partition with at most 18 vertices
/// strictly raises the top reciprocal-distance eigenvalue by more than
/// 1e-10.
fn shift_monotonicity() -> Outcome {
    const MARGIN: f64 = 1e-10;
    let mut shifts = 0usize;
    let mut min_margin = f64::INFINITY;
    for n in 2..=18 {
        for k in 2..=n {
            for parts in lift(scan::partitions(n, k))? {
                let before = lift(rd_lambda1_multipartite(&parts))?;
                for s in 1..k {
                    if parts.parts()[s - 1] - parts.parts()[s] < 2 {
                        continue;
                    }
                    let shifted = lift(scan::shift(&parts, s))?;
                    let margin = lift(rd_lambda1_multipartite(&shifted))? - before;
                    ensure!(
                        margin > MARGIN,
                        "shift {s} on {parts} moved the top eigenvalue by only {margin:.3e}"
                    );
                    min_margin = min_margin.min(margin);
                    shifts += 1;
                }
            }
        }
    }
    Ok(format!("{shifts} legal shifts raise the top eigenvalue; smallest rise {min_margin:.3e}"))
}

/// Check 6: deleting one edge from the balanced bipartite graph with parts
/// of size q lowers the reciprocal-distance energy for 2 <= q <= 7 and
/// raises it for 8 <= q <= 16; closed-form and dense energies agree within
/// 1e-8 on both sides of the deletion.
fn balanced_bipartite_deletion_threshold() -> Outcome {
    const TOL: f64 = 1e-8;
    let report = lift(edge_deletion_sweep(Family::Kqq, 2, 16))?;
    for row in &report.rows {
        let q = row.params[0];
        let before = (row.energy_before - row.dense_before).abs();
        let after = (row.energy_after - row.dense_after).abs();
        ensure!(before <= TOL, "q={q}: intact energies differ by {before:.3e}");
        ensure!(after <= TOL, "q={q}: deleted-edge energies differ by {after:.3e}");
        let want: i8 = if q <= 7 { -1 } else { 1 };
        ensure!(
            row.sign == want,
            "q={q}: energy change {:+.6e} has the wrong sign",
            row.delta
        );
        let dense_delta = row.dense_after - row.dense_before;
        ensure!(
            dense_delta.signum() as i8 == want,
            "q={q}: dense energy change {dense_delta:+.6e} has the wrong sign"
        );
    }
    Ok(format!(
        "{} part sizes: deletion lowers energy through q=7 and raises it from q=8",
        report.rows.len()
    ))
}

/// Check 7: for all 1 <= p, q, r <= 7, deleting one edge never raises the
/// reciprocal-distance energy of the complete tripartite graph (slack
/// 1e-10), the deleted-edge spectrum has exactly one positive eigenvalue,
/// and the characteristic polynomial factor governing that eigenvalue has
/// sign-change bound 1.
fn tripartite_deletion_bound() -> Outcome {
    const SLACK: f64 = 1e-10;
    let mut checked = 0usize;
    for p in 1..=7usize {
        for q in 1..=7usize {
            for r in 1..=7usize {
                let parts = lift(PartitionSpec::new(&[p, q, r]))?;
                let before = lift(rd_energy_multipartite(&parts))?;
                let spectrum = lift(kpqr_minus_edge_spectrum(p, q, r))?;
                let after = spectrum.energy();
                ensure!(
                    after <= before + SLACK,
                    "(p,q,r)=({p},{q},{r}): deletion raised energy from {before} to {after}"
                );
                let positives = spectrum.inertia(spectrum.default_tol()).positive;
                ensure!(
                    positives == 1,
                    "(p,q,r)=({p},{q},{r}): {positives} positive eigenvalues instead of 1"
                );
                let bound = descartes_positive_bound(&kpqr_case_polynomial(p, q, r));
                ensure!(
                    bound == 1,
                    "(p,q,r)=({p},{q},{r}): sign-change bound {bound} instead of 1"
                );
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} triples: deletion never raises energy; one positive root each"))
}

/// Check 8: on 50 random two-group matrices (group sizes up to 8,
/// couplings in [-2, 2], nonzero within-group coupling) the reduced-form
/// spectrum matches a dense eigendecomposition within 1e-8, and the
/// negated within-group coupling appears with multiplicity at least
/// p + q - 2.
fn two_group_matrix_spectrum_oracle() -> Outcome {
    const TRIALS: usize = 50;
    const TOL: f64 = 1e-8;
    let mut rng = ChaCha8Rng::seed_from_u64(0xB10C_0008);
    let mut worst = 0.0f64;
    for trial in 0..TRIALS {
        let p = rng.random_range(1..=8);
        let q = rng.random_range(1..=8);
        let a = rng.random_range(-2.0..2.0);
        let b = loop {
            let b: f64 = rng.random_range(-2.0..2.0);
            if b != 0.0 {
                break b;
            }
        };
        let c = rng.random_range(-2.0..2.0);
        let spec = lift(EMatrixSpec::new(p, q, a, b, c))?;
        let fast = lift(e_matrix_spectrum(&spec))?;
        let dense = lift(eig_sym(&e_matrix_dense(&spec)))?;
        ensure!(
            fast.len() == dense.len(),
            "trial {trial}: {} eigenvalues for an order-{} matrix",
            fast.len(),
            dense.len()
        );
        for (i, (f, d)) in fast.values().iter().zip(dense.values()).enumerate() {
            let diff = (f - d).abs();
            worst = worst.max(diff);
            ensure!(
                diff <= TOL,
                "trial {trial} (p={p}, q={q}): eigenvalue {i} differs by {diff:.3e}"
            );
        }
        let mult = dense.multiplicity_near(-b, 1e-7);
        ensure!(
            mult >= p + q - 2,
            "trial {trial} (p={p}, q={q}): {} appears {mult} times, expected {}",
            -b,
            p + q - 2
        );
    }
    Ok(format!("{TRIALS} random two-group matrices: worst eigenvalue deviation {worst:.3e}"))
}

/// Check 9: on 50 random partitions (2 to 5 parts of size up to 8) the
/// reciprocal-distance Perron vector is constant on each part within 1e-7,
/// and the part values are proportional to 1 / (2*lambda1 + n_i + 1) with
/// relative error below 1e-7.
fn perron_component_structure() -> Outcome {
    const TRIALS: usize = 50;
    const TOL: f64 = 1e-7;
    let mut rng = ChaCha8Rng::seed_from_u64(0xB10C_0009);
    for trial in 0..TRIALS {
        let k = rng.random_range(2..=5);
        let sizes: Vec<usize> = (0..k).map(|_| rng.random_range(1..=8)).collect();
        let parts = lift(PartitionSpec::new(&sizes))?;
        let (lambda1, vector) = lift(rd_perron_vector(&parts))?;
        let mut scaled = Vec::with_capacity(parts.k());
        for (range, &ni) in parts.block_ranges().iter().zip(parts.parts()) {
            let slice = &vector[range.clone()];
            let mean = slice.iter().sum::<f64>() / ni as f64;
            for (offset, &x) in slice.iter().enumerate() {
                ensure!(
                    (x - mean).abs() < TOL,
                    "trial {trial} ({parts}): component {} strays {:.3e} from its part mean",
                    range.start + offset,
                    (x - mean).abs()
                );
            }
            scaled.push(mean * (2.0 * lambda1 + ni as f64 + 1.0));
        }
        let first = scaled[0];
        for (i, &s) in scaled.iter().enumerate().skip(1) {
            let rel = (s / first - 1.0).abs();
            ensure!(
                rel < TOL,
                "trial {trial} ({parts}): part {i} breaks proportionality by {rel:.3e}"
            );
        }
    }
    Ok(format!("{TRIALS} random partitions show part-constant, size-scaled Perron vectors"))
}

/// Check 10: on 100 random symmetric matrices the eigensolver's residuals
/// satisfy ||Mv - lambda v|| <= 1e-8 ||M||_F, and the eigenvalues of a
/// random principal submatrix interlace those of the full matrix within
/// 1e-9.
fn eigensolver_reconstruction_and_interlacing() -> Outcome {
    const TRIALS: usize = 100;
    const RESIDUAL_TOL: f64 = 1e-8;
    const INTERLACE_TOL: f64 = 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(0xB10C_0010);
    let mut worst = 0.0f64;
    for trial in 0..TRIALS {
        let n = rng.random_range(2..=12);
        let m = RealSymMatrix::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        let fro = m.frobenius_norm();
        let pairs = lift(eig_sym_pairs(&m))?;
        for (value, vector) in pairs.values.iter().zip(&pairs.vectors) {
            let mv = m.mul_vec(vector);
            let residual = mv
                .iter()
                .zip(vector)
                .map(|(mv_i, v_i)| (mv_i - value * v_i).powi(2))
                .sum::<f64>()
                .sqrt();
            worst = worst.max(residual / fro);
            ensure!(
                residual <= RESIDUAL_TOL * fro,
                "trial {trial}: residual {residual:.3e} exceeds {RESIDUAL_TOL:.0e} * {fro:.3e}"
            );
        }

        let keep_count = rng.random_range(1..n);
        let mut indices: Vec<usize> = (0..n).collect();
        for i in 0..keep_count {
            let j = rng.random_range(i..n);
            indices.swap(i, j);
        }
        indices.truncate(keep_count);
        indices.sort_unstable();
        let sub = lift(m.principal_submatrix(&indices))?;
        let big = lift(eig_sym(&m))?;
        let small = lift(eig_sym(&sub))?;
        for (i, &mu) in small.values().iter().enumerate() {
            let upper = big.values()[i];
            let lower = big.values()[i + n - keep_count];
            ensure!(
                mu <= upper + INTERLACE_TOL && mu >= lower - INTERLACE_TOL,
                "trial {trial}: submatrix eigenvalue {mu} escapes [{lower}, {upper}]"
            );
        }
    }
    Ok(format!("{TRIALS} random matrices: worst relative residual {worst:.3e}; interlacing holds"))
}
