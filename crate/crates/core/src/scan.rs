//! Exhaustive experiments over complete multipartite families: partition
//! enumeration, the single-vertex rebalancing shift, extremal-ordering
//! scans of the reciprocal-distance energy, Perron-vector structure, and
//! edge-deletion energy sweeps.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::closed_form;
use crate::eigen::{self, Spectrum};
use crate::error::{Error, Result};
use crate::graph::{Graph, PartitionSpec};
use crate::matrix;

/// All partitions of `n` into exactly `k` positive parts, each in canonical
/// non-increasing form, listed in lexicographically descending order.
pub fn partitions(n: usize, k: usize) -> Result<Vec<PartitionSpec>> {
    if k < 1 || k > n {
        return Err(Error::PreconditionViolated(format!(
            "partition count must satisfy 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fill(n, k, n, &mut current, &mut out);
    Ok(out)
}

fn fill(n: usize, k: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<PartitionSpec>) {
    if k == 1 {
        if n <= max {
            current.push(n);
            out.push(PartitionSpec::new(&current[..]).expect("parts are positive"));
            current.pop();
        }
        return;
    }
    let lo = n.div_ceil(k);
    let hi = max.min(n - k + 1);
    for first in (lo..=hi).rev() {
        current.push(first);
        fill(n - first, k - 1, first, current, out);
        current.pop();
    }
}

/// Moves one vertex from part `s` to part `s + 1` (1-based positions in the
/// canonical non-increasing order). Legal only when the two parts differ by
/// at least 2, which keeps the result canonical and strictly raises the
/// largest reciprocal-distance eigenvalue.
pub fn shift(parts: &PartitionSpec, s: usize) -> Result<PartitionSpec> {
    let k = parts.k();
    if s < 1 || s >= k {
        return Err(Error::PreconditionViolated(format!(
            "shift position must satisfy 1 <= s <= k-1, got s={s} with k={k}"
        )));
    }
    let p = parts.parts();
    if p[s - 1] < p[s] + 2 {
        return Err(Error::PreconditionViolated(format!(
            "shift at position {s} needs a gap of at least 2, got parts {} and {}",
            p[s - 1],
            p[s]
        )));
    }
    let mut next = p.to_vec();
    next[s - 1] -= 1;
    next[s] += 1;
    PartitionSpec::new(&next)
}

/// One scanned partition with its reciprocal-distance energy.
#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub parts: PartitionSpec,
    pub energy: f64,
}

/// Result of an exhaustive scan over all partitions of `n` into `k` parts.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub n: usize,
    pub k: usize,
    pub rows: Vec<ScanRow>,
    pub argmin: PartitionSpec,
    pub argmax: PartitionSpec,
    /// Whether the minimum lands exactly on the split form (one big part,
    /// the rest singletons).
    pub min_verified: bool,
    /// Whether the maximum lands exactly on the balanced form.
    pub max_verified: bool,
    /// Extra rows attaining the minimum value beyond the reported one.
    pub min_ties: usize,
    /// Extra rows attaining the maximum value beyond the reported one.
    pub max_ties: usize,
}

/// Computes the reciprocal-distance energy of every partition of `n` into
/// `k` parts and locates the extremes. Ties on the extreme value resolve
/// toward the expected extremal partition and are counted.
pub fn scan(n: usize, k: usize) -> Result<ScanReport> {
    if k < 2 || k >= n {
        return Err(Error::PreconditionViolated(format!(
            "scan needs 2 <= k <= n-1, got n={n}, k={k}"
        )));
    }
    let mut rows = Vec::new();
    for parts in partitions(n, k)? {
        let energy = closed_form::rd_energy_multipartite(&parts)?;
        rows.push(ScanRow { parts, energy });
    }
    let min_energy = rows.iter().map(|r| r.energy).fold(f64::INFINITY, f64::min);
    let max_energy = rows.iter().map(|r| r.energy).fold(f64::NEG_INFINITY, f64::max);
    let split = PartitionSpec::complete_split(n, k - 1)?;
    let balanced = PartitionSpec::turan(n, k)?;
    let (argmin, min_ties) = pick_extreme(&rows, min_energy, &split);
    let (argmax, max_ties) = pick_extreme(&rows, max_energy, &balanced);
    Ok(ScanReport {
        n,
        k,
        min_verified: argmin == split,
        max_verified: argmax == balanced,
        rows,
        argmin,
        argmax,
        min_ties,
        max_ties,
    })
}

fn pick_extreme(rows: &[ScanRow], value: f64, preferred: &PartitionSpec) -> (PartitionSpec, usize) {
    let attaining: Vec<&ScanRow> = rows.iter().filter(|r| r.energy == value).collect();
    let chosen = attaining
        .iter()
        .find(|r| r.parts == *preferred)
        .or(attaining.first())
        .expect("a nonempty scan attains its extreme value")
        .parts
        .clone();
    (chosen, attaining.len() - 1)
}

/// Largest reciprocal-distance eigenvalue together with the entrywise
/// positive unit eigenvector, computed densely.
pub fn rd_perron_vector(parts: &PartitionSpec) -> Result<(f64, Vec<f64>)> {
    let g = Graph::complete_multipartite(parts)?;
    let rd = matrix::reciprocal_distance(&g.apsp()?);
    let pairs = eigen::eig_sym_pairs(&rd)?;
    let lambda1 = pairs.values[0];
    let mut vector = pairs.vectors[0].clone();
    if vector.iter().sum::<f64>() < 0.0 {
        for x in &mut vector {
            *x = -*x;
        }
    }
    Ok((lambda1, vector))
}

/// The k per-part values of the reciprocal-distance Perron vector (it is
/// constant on parts), normalized so the full n-vector has unit norm.
pub fn perron_part_components(parts: &PartitionSpec) -> Result<Vec<f64>> {
    if parts.k() < 2 {
        return Err(Error::PreconditionViolated("need at least two parts".into()));
    }
    let (_, vector) = rd_perron_vector(parts)?;
    Ok(parts
        .block_ranges()
        .iter()
        .map(|r| vector[r.clone()].iter().sum::<f64>() / r.len() as f64)
        .collect())
}

/// Edge-deletion families swept by `edge_deletion_sweep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Balanced bipartite `(q, q)`, one cross edge removed; parameter `q`.
    Kqq,
    /// Bipartite `(m, n)`, one cross edge removed; parameters `m <= n`.
    Kmn,
    /// Tripartite `(p, q, r)`, one edge between the first two parts
    /// removed; parameters `p <= q` and `r`.
    Kpqr,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Kqq => "kqq",
            Family::Kmn => "kmn",
            Family::Kpqr => "kpqr",
        }
    }

    /// Column labels for this family's parameter vector.
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            Family::Kqq => &["q"],
            Family::Kmn => &["m", "n"],
            Family::Kpqr => &["p", "q", "r"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kqq" => Ok(Family::Kqq),
            "kmn" => Ok(Family::Kmn),
            "kpqr" => Ok(Family::Kpqr),
            other => Err(Error::Parse(format!(
                "unknown family '{other}' (expected kqq, kmn or kpqr)"
            ))),
        }
    }
}

/// Energies before and after removing one edge, by the closed-form path
/// (`energy_before`/`energy_after`) and the dense path.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub params: Vec<usize>,
    pub energy_before: f64,
    pub energy_after: f64,
    pub delta: f64,
    /// Sign of `delta`: -1, 0 or 1.
    pub sign: i8,
    pub dense_before: f64,
    pub dense_after: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub family: Family,
    pub rows: Vec<SweepRow>,
}

/// Sweeps the reciprocal-distance energy change of a single edge deletion
/// over a parameter range, computing every row by both the closed-form and
/// the dense path.
pub fn edge_deletion_sweep(family: Family, from: usize, to: usize) -> Result<SweepReport> {
    let min = match family {
        Family::Kqq | Family::Kmn => 2,
        Family::Kpqr => 1,
    };
    if from < min || from > to {
        return Err(Error::PreconditionViolated(format!(
            "family {family} needs a parameter range within {min}..=N, got {from}..={to}"
        )));
    }
    let mut rows = Vec::new();
    match family {
        Family::Kqq => {
            for q in from..=to {
                let after = closed_form::kqq_minus_edge_energy(q)?;
                rows.push(sweep_row(vec![q], &[q, q], q, q, after)?);
            }
        }
        Family::Kmn => {
            for m in from..=to {
                for n in m..=to {
                    let after = closed_form::kmn_minus_edge_spectrum(m, n)?.energy();
                    rows.push(sweep_row(vec![m, n], &[m, n], m, n, after)?);
                }
            }
        }
        Family::Kpqr => {
            for p in from..=to {
                for q in p..=to {
                    for r in from..=to {
                        let after = closed_form::kpqr_minus_edge_spectrum(p, q, r)?.energy();
                        rows.push(sweep_row(vec![p, q, r], &[p, q, r], p, q, after)?);
                    }
                }
            }
        }
    }
    Ok(SweepReport { family, rows })
}

fn sweep_row(
    params: Vec<usize>,
    sizes: &[usize],
    deleted_a: usize,
    deleted_b: usize,
    energy_after: f64,
) -> Result<SweepRow> {
    let spec = PartitionSpec::new(sizes)?;
    let energy_before = closed_form::rd_energy_multipartite(&spec)?;
    let graph = Graph::complete_multipartite(&spec)?;
    let dense_before = dense_rd_energy(&graph)?;
    let deleted = delete_cross_edge(&graph, &spec, deleted_a, deleted_b)?;
    let dense_after = dense_rd_energy(&deleted)?;
    let delta = energy_after - energy_before;
    let sign = if delta > 0.0 {
        1
    } else if delta < 0.0 {
        -1
    } else {
        0
    };
    Ok(SweepRow {
        params,
        energy_before,
        energy_after,
        delta,
        sign,
        dense_before,
        dense_after,
    })
}

fn dense_rd_energy(g: &Graph) -> Result<f64> {
    Ok(eigen::eig_sym(&matrix::reciprocal_distance(&g.apsp()?))?.energy())
}

/// Removes one edge joining a block of size `size_a` to a different block
/// of size `size_b` (any such edge is equivalent under relabeling).
pub(crate) fn delete_cross_edge(
    g: &Graph,
    parts: &PartitionSpec,
    size_a: usize,
    size_b: usize,
) -> Result<Graph> {
    let ranges = parts.block_ranges();
    let ia = ranges
        .iter()
        .position(|r| r.len() == size_a)
        .ok_or_else(|| Error::InternalInconsistency(format!("no part of size {size_a}")))?;
    let ib = (0..ranges.len())
        .find(|&i| i != ia && ranges[i].len() == size_b)
        .ok_or_else(|| Error::InternalInconsistency(format!("no second part of size {size_b}")))?;
    g.delete_edge(ranges[ia].start, ranges[ib].start)
}

/// Dense reciprocal-distance spectrum of a complete multipartite graph with
/// one cross edge removed between blocks of the two given sizes.
pub fn multipartite_minus_edge_spectrum(
    parts: &PartitionSpec,
    size_a: usize,
    size_b: usize,
) -> Result<Spectrum> {
    let g = Graph::complete_multipartite(parts)?;
    let deleted = delete_cross_edge(&g, parts, size_a, size_b)?;
    eigen::eig_sym(&matrix::reciprocal_distance(&deleted.apsp()?))
}
