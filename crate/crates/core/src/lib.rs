pub mod error;
pub mod families;
pub mod group;
pub mod hardness;
pub mod op;
pub mod oracle;
pub mod pauli;
pub mod phase;
pub mod simulate;
pub mod space;

pub use error::{MsfError, Result};
pub use phase::Phase;
pub use space::{BasisVector, SiteSpace};
