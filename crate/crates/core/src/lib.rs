//! Ensembling toolkit for segmentation-based object detection.
//!
//! The library covers the three spaces in which detector ensembles vary:
//!
//! * **training data** — bootstrap subsampling and per-replica augmentation
//!   regimes ([`ens_train`]);
//! * **model** — snapshot training under cyclic learning-rate schedules,
//!   stochastic weight averaging, and body/heads fine-tuning ([`sched`],
//!   [`ens_train`]);
//! * **prediction** — test-time augmentation with exact inverse warping,
//!   Monte-Carlo dropout, pixel fusion, and a per-pixel stacking combiner
//!   ([`fuse`]).
//!
//! Everything operates on a self-contained micro U-Net ([`refnet`]) and a
//! procedural desert-scene benchmark ([`synthdata`]); [`objects`] turns fused
//! probability rasters into discrete detections and scores them against
//! point ground truth (recall, false positives per km², operating points).
//!
//! All stochastic choices flow from explicit 64-bit seeds through a
//! counter-based generator, so runs are bit-reproducible across platforms.

pub mod ens_train;
pub mod error;
pub mod fuse;
pub mod io;
pub mod objects;
pub mod params;
pub mod raster;
pub mod refnet;
pub mod rng;
pub mod sched;
pub mod synthdata;
pub mod tensor;

pub use error::{CoreError, Result};
pub use params::ParamSet;
pub use raster::{ProbMap, Raster};
pub use sched::ScheduleSpec;
pub use tensor::{Scalar, Tensor};
