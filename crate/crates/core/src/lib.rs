pub mod channels;
pub mod cli;
pub mod coherence;
pub mod error;
pub mod io;
pub mod msc;
pub mod optim;
pub mod qcore;
pub mod random;
pub mod states;
pub mod steering;
pub mod verify;

pub use error::{Error, Result};
