//! Dense symmetric matrices and the six graph matrices built from them.
//!
//! The six builders produce, for a connected graph with distance matrix `d`
//! and diameter `diam`:
//!
//! * reciprocal distance (Harary): `1/d(i,j)` off-diagonal,
//! * distance: `d(i,j)`,
//! * adjacency: 1 on edges,
//! * Seidel: `-1` on edges, `+1` on distinct non-adjacent pairs,
//! * complementary distance: `1 + diam - d(i,j)`,
//! * reciprocal complementary distance: `1/(1 + diam - d(i,j))`,
//!
//! all with zero diagonal and bit-exact symmetry.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

/// Dense square symmetric real matrix, stored row-major.
///
/// Symmetry is a construction invariant: [`RealSymMatrix::from_fn`] mirrors
/// one formula across the diagonal, [`RealSymMatrix::from_rows`] rejects
/// asymmetric input, and [`RealSymMatrix::set`] writes both mirror entries.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RealSymMatrix {
    /// Zero matrix of order `n`.
    pub fn zeros(n: usize) -> Self {
        RealSymMatrix { n, data: vec![0.0; n * n] }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        RealSymMatrix::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Builds from one formula evaluated on the upper triangle (`i <= j`);
    /// the lower triangle mirrors it bit-exactly.
    pub fn from_fn<F>(n: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> f64,
    {
        let mut m = RealSymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v;
            }
        }
        m
    }

    /// Validates a full row-major layout: must be square and bitwise
    /// symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, cols: row.len() });
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, entry) in row.iter().enumerate().skip(i + 1) {
                if entry.to_bits() != rows[j][i].to_bits() {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(RealSymMatrix {
            n,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        })
    }

    /// Matrix order.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    /// Row-major entries.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    /// Sum of row `i`.
    pub fn row_sum(&self, i: usize) -> f64 {
        self.data[i * self.n..(i + 1) * self.n].iter().sum()
    }

    /// Frobenius norm, `sqrt(sum of squared entries)`.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|&x| x * x).sum::<f64>().sqrt()
    }

    /// Matrix-vector product. `x` must have length `n`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "vector length must match matrix order");
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Principal submatrix on the given vertex subset, which must be strictly
    /// increasing and in range.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Result<Self> {
        if keep.windows(2).any(|w| w[0] >= w[1]) || keep.last().is_some_and(|&i| i >= self.n) {
            return Err(Error::PreconditionViolated(
                "submatrix indices must be strictly increasing and in range".into(),
            ));
        }
        Ok(RealSymMatrix::from_fn(keep.len(), |i, j| self.get(keep[i], keep[j])))
    }
}

/// The six matrix families exposed by the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    /// Reciprocal distance (Harary) matrix.
    Rd,
    /// Distance matrix.
    D,
    /// Adjacency matrix.
    A,
    /// Seidel matrix.
    Seidel,
    /// Complementary distance matrix.
    Cd,
    /// Reciprocal complementary distance matrix.
    Rcd,
}

impl MatrixKind {
    /// All kinds, in the CLI's documented order.
    pub const ALL: [MatrixKind; 6] = [
        MatrixKind::Rd,
        MatrixKind::D,
        MatrixKind::A,
        MatrixKind::Seidel,
        MatrixKind::Cd,
        MatrixKind::Rcd,
    ];

    /// Short lowercase name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::Rd => "rd",
            MatrixKind::D => "d",
            MatrixKind::A => "a",
            MatrixKind::Seidel => "seidel",
            MatrixKind::Cd => "cd",
            MatrixKind::Rcd => "rcd",
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MatrixKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown matrix kind {s:?}")))
    }
}

/// Reciprocal distance (Harary) matrix: `1/d(i,j)` off-diagonal, 0 diagonal.
pub fn reciprocal_distance(dm: &DistanceMatrix) -> RealSymMatrix {
    RealSymMatrix::from_fn(dm.n(), |i, j| {
        if i == j {
            0.0
        } else {
            1.0 / f64::from(dm.get(i, j))
        }
    })
}

/// Distance matrix as reals.
pub fn distance(dm: &DistanceMatrix) -> RealSymMatrix {
    RealSymMatrix::from_fn(dm.n(), |i, j| f64::from(dm.get(i, j)))
}

/// Adjacency matrix: 1 on edges, 0 elsewhere.
pub fn adjacency(g: &Graph) -> RealSymMatrix {
    RealSymMatrix::from_fn(g.n(), |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 })
}

/// Seidel matrix: `-1` on edges, `+1` on distinct non-adjacent pairs, zero
/// diagonal. Equals `J - I - 2A` entrywise.
pub fn seidel(g: &Graph) -> RealSymMatrix {
    RealSymMatrix::from_fn(g.n(), |i, j| {
        if i == j {
            0.0
        } else if g.has_edge(i, j) {
            -1.0
        } else {
            1.0
        }
    })
}

/// Complementary distance matrix: `1 + diam - d(i,j)` off-diagonal, using the
/// graph's own diameter.
pub fn complementary_distance(dm: &DistanceMatrix) -> RealSymMatrix {
    let diam = dm.diam();
    RealSymMatrix::from_fn(dm.n(), |i, j| {
        if i == j {
            0.0
        } else {
            f64::from(1 + diam - dm.get(i, j))
        }
    })
}

/// Reciprocal complementary distance matrix: `1/(1 + diam - d(i,j))`
/// off-diagonal, using the graph's own diameter.
pub fn reciprocal_complementary_distance(dm: &DistanceMatrix) -> RealSymMatrix {
    let diam = dm.diam();
    RealSymMatrix::from_fn(dm.n(), |i, j| {
        if i == j {
            0.0
        } else {
            1.0 / f64::from(1 + diam - dm.get(i, j))
        }
    })
}

/// Builds the requested matrix kind from a graph and its distances.
pub fn build(kind: MatrixKind, g: &Graph, dm: &DistanceMatrix) -> RealSymMatrix {
    match kind {
        MatrixKind::Rd => reciprocal_distance(dm),
        MatrixKind::D => distance(dm),
        MatrixKind::A => adjacency(g),
        MatrixKind::Seidel => seidel(g),
        MatrixKind::Cd => complementary_distance(dm),
        MatrixKind::Rcd => reciprocal_complementary_distance(dm),
    }
}
