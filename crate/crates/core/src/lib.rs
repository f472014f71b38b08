//! Topological analysis of multivariate time series.
//!
//! The crate covers the whole path from a multichannel signal to a group-level
//! hypothesis test on the topology of its dependence network:
//!
//! * [`sim`] simulates latent AR(2) oscillators mixed into observed channels
//!   with a planted dependence topology.
//! * [`spectral`] estimates kernel-smoothed cross spectra, band-averaged
//!   coherence and the coherence-derived distance matrix.
//! * [`homology`] builds the Vietoris-Rips filtration of a distance matrix,
//!   reduces its boundary matrix over Z/2 and compares diagrams with the
//!   bottleneck and Wasserstein distances.
//! * [`landscape`] turns diagrams into persistence landscapes, which can be
//!   averaged and normed.
//! * [`inference`] runs the two-sample permutation test on landscapes.
//! * [`embed`] holds the univariate routes: delay embedding and sublevel-set
//!   persistence of a smoothed series.
//! * [`pipeline`] wires everything together behind a declarative config and
//!   writes plot-ready artifacts.
//!
//! ```
//! use spectral_tda::homology::{persistence, rips_filtration};
//! use spectral_tda::spectral::DistanceMatrix;
//!
//! // Four points on a unit square: one loop, born at 1 and filled at sqrt(2).
//! let s = 2f64.sqrt();
//! let d = DistanceMatrix::new(vec![
//!     vec![0.0, 1.0, s, 1.0],
//!     vec![1.0, 0.0, 1.0, s],
//!     vec![s, 1.0, 0.0, 1.0],
//!     vec![1.0, s, 1.0, 0.0],
//! ]).unwrap();
//! let diagram = persistence(&rips_filtration(&d, 2).unwrap());
//! assert_eq!(diagram.finite(1), &[(1.0, s)]);
//! ```

pub mod embed;
pub mod error;
pub mod homology;
pub mod inference;
pub mod landscape;
pub mod pipeline;
pub mod rng;
pub mod sim;
pub mod spectral;

pub use error::{Error, Result};
