//! Eight-port homodyne data processing.
//!
//! Turns dual-channel quadrature records into phase-space (Husimi) samples:
//! normalization and whitening, orthogonality postselection, histogramming,
//! windowed photon statistics, and two-state segmentation of bistable
//! emission. A synthetic generator with known ground truth closes the loop
//! for end-to-end validation.

pub mod error;
pub mod histogram;
pub mod io;
pub mod postselect;
pub mod preprocess;
pub mod segment;
pub mod stats;
pub mod stream;
pub mod synth;

pub use error::{HomodyneError, Result};
pub use histogram::{build_husimi_histogram, write_histogram_csv, HusimiHistogram};
pub use io::{read_stream_binary, read_stream_csv, write_stream_binary, write_stream_csv};
pub use postselect::{postselect_orthogonal, Postselection, PostselectOptions};
pub use preprocess::{lag1_autocorrelation, preprocess};
pub use segment::{segment_bistable, BistableSegmentation, Label, Run};
pub use stats::{photon_moments, photon_stats_timeseries, WindowStats};
pub use stream::{QuadratureStream, Record, SelectedPoint};
pub use synth::{synth_homodyne_stream, GeneratorConfig};
