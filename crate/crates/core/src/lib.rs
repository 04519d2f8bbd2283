pub mod bundle;
pub mod enumerator;
pub mod error;
pub mod grid;
pub mod lee;
pub mod minimal;
pub mod palette;
pub mod par;
pub mod presets;
pub mod puzzle;
pub mod rater;
pub mod symmetry;

pub use error::{Error, Result};
