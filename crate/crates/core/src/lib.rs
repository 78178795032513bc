#![no_std]
extern crate alloc;

pub mod algebra;
pub mod dg;
pub mod duality;
pub mod error;
pub mod exactlin;
pub mod functors;
pub mod koszul;
pub mod library;
pub mod testobjects;
pub mod modules;

pub use error::{Error, Result};
