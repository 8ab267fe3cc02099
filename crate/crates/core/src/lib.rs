pub mod cli;
pub mod model;
pub mod reduction;
pub mod solve;
pub mod stc;
pub mod terrain;
pub mod validate;
pub mod warmstart;
pub mod weight;

pub use weight::Weight;
