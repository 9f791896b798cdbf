//! Spectra and energies of distance-derived graph matrices.
//!
//! The library builds six symmetric matrices from a connected graph — the
//! reciprocal-distance matrix (entries `1/d(i,j)`), the distance matrix,
//! the adjacency matrix, the Seidel matrix, and the complementary-distance
//! matrix together with its reciprocal — and computes their spectra and
//! energies (the energy of a matrix is the sum of the absolute values of
//! its eigenvalues).
//!
//! For complete multipartite graphs every one of these matrices splits
//! into constant-row-sum diagonal blocks joined by a constant coupling, so
//! the full spectrum assembles from the block spectra plus one small
//! quotient matrix ([`quotient`]), and the energies collapse to closed
//! forms ([`closed_form`]). [`scan`] enumerates partitions to locate the
//! energy extremes and to track how deleting a single edge moves the
//! energy. [`verify`] packages the numbered end-to-end checks behind the
//! `verify` CLI command.
//!
//! ```
//! use harary::{closed_form, PartitionSpec};
//!
//! let parts = PartitionSpec::parse("2,2").unwrap();
//! let energy = closed_form::rd_energy_multipartite(&parts).unwrap();
//! assert!((energy - 5.0).abs() < 1e-9);
//! ```

pub mod closed_form;
pub mod eigen;
pub mod error;
pub mod graph;
pub mod json;
pub mod matrix;
pub mod quotient;
pub mod scan;
pub mod verify;

pub use eigen::{eig_sym, eig_sym_pairs, EigenPairs, EnergyReport, Inertia, Method, Spectrum};
pub use error::{Error, Result};
pub use graph::{DistanceMatrix, Graph, PartitionSpec};
pub use matrix::{MatrixKind, RealSymMatrix};
