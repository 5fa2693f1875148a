pub mod braid;
pub mod cli;
pub mod error;
pub mod freegroup;
pub mod knotgrp;
pub mod satellite;
pub mod solenoid;
pub mod torusgrp;
pub mod verify;

pub use error::{Error, Result};
