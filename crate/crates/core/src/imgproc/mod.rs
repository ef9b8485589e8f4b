//! Preprocessing: channel reordering, gray conversion, smoothing, Otsu
//! binarization, stalk removal, hole closing and resizing.

mod components;
mod distance;
mod filter;
mod image;
mod morphology;
mod otsu;
mod resize;
mod stalk;

pub use components::{label_components, largest_component, Component};
pub use distance::distance_transform;
pub use filter::{
    bgr_to_rgb, blur_to_grid, gaussian_blur, gaussian_kernel, sigma_for_kernel, to_grayscale,
};
pub use image::{BinaryImage, ChannelOrder, ColorImage, GrayImage, Grid};
pub use morphology::{dilate, erode, morphology, MorphOp};
pub use otsu::{
    apply_threshold, evaluate_candidate, otsu_from_histogram, otsu_threshold, GrayHistogram,
    OtsuCandidate, OtsuResult,
};
pub use resize::{Resize, DEFAULT_SIZE};
pub use stalk::remove_stalk;
