#![allow(clippy::needless_range_loop)]

pub mod exactnum;
pub mod io;
pub mod mat2grp;
pub mod orders;
pub mod qform;
pub mod quat;
pub mod registry;
