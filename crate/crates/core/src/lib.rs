//! Finite-scale workbench for Hajnal–Máté graph constructions over the
//! ordinals below `ω·M`.

pub mod cli;
pub mod coloring;
pub mod csequence;
pub mod graph;
pub mod graphprops;
pub mod growthbuild;
pub mod guessing;
pub mod hmbuild;
pub mod ordinal;
pub mod specker;
pub mod types;
