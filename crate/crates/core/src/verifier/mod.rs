//! Checks of the catalog claims, the inversion transport law and the case
//! analysis behind the ruled classification.

mod checks;
mod ode;
mod scan;
mod transport;

pub use checks::*;
pub use ode::*;
pub use scan::*;
pub use transport::*;
