//! File formats, exhaustive classification and report rendering on top of
//! [`bott_core`].

pub mod classify;
pub mod format;
pub mod report;

pub use classify::{
    classify_all, classify_stream, delta_family, delta_normal_form, ClassRecord, ClassificationSummary, ClassifyError,
    ClassifyOptions,
};
pub use format::{Format, FormatError};
