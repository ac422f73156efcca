//! Hyperboloid-model geometry of the angled pentagonal prism and the metric constants
//! derived from it.

mod lorentz;
mod polyhedron;
mod realize;

pub use lorentz::*;
pub use polyhedron::*;
pub use realize::*;
mod plane;
pub use plane::*;
mod develop;
pub use develop::*;
mod constants;
pub use constants::*;
