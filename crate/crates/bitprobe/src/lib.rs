//! Structure files, brute-force verification and the command-line front end
//! for the two-bitprobe membership scheme in [`bitprobe_core`].

pub mod cli;
pub mod format;
pub mod oracle;

pub use bitprobe_core as core;
