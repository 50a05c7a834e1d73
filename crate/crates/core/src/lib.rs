//! Salt-and-pepper impulse noise removal.
//!
//! The crate provides an 8-bit [`Image`] model with binary PGM/PPM I/O, a
//! seeded noise injector, six denoising filters (see [`FilterKind`]), the
//! MSE/PSNR/IEF quality metrics and a density-sweep benchmark harness.
//!
//! ```
//! use spdenoise::{filters, noise, metrics, synth, FilterParams, NoiseSpec};
//!
//! let clean = synth::scene(64, 64, 1);
//! let noisy = noise::inject(&clean, &NoiseSpec::with_density(0.5, 42).unwrap());
//! let restored = filters::apply_to_image("pa", FilterParams::default(), &noisy).unwrap();
//! assert!(metrics::psnr_db(&clean, &restored).unwrap() > metrics::psnr_db(&clean, &noisy).unwrap());
//! ```

pub mod error;
pub mod filters;
pub mod image;
pub mod metrics;
pub mod noise;
pub mod pnm;
pub mod sweep;
pub mod synth;

pub use error::{Error, Result};
pub use filters::{Execution, Filter, FilterKind, FilterParams};
pub use image::{Image, Plane};
pub use metrics::MetricsReport;
pub use noise::NoiseSpec;
pub use pnm::{load_pnm, save_pnm};
