// SPDX-License-Identifier: MIT

pub mod cfrwt;
pub mod conv;
pub mod error;
pub mod fft;
pub mod fixtures;
pub mod frft;
pub mod grid;
pub mod morrey;
pub mod report;
pub mod suites;
pub mod uncertainty;
pub mod wavelet;

pub use error::{FrwtError, Result};
pub use num_complex::Complex64;
