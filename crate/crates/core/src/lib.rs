//! Verification engine for the P=W identities relating 2D cluster varieties
//! and elliptic fibrations over the disk with Kodaira `I_b` fibers.
//!
//! The weight side ([`cluster`], [`periods`]) and the perverse side
//! ([`localsys`], [`fibration`]) are computed independently with exact
//! arithmetic from [`exactlin`]; [`pwreport`] compares them and renders
//! the verdicts.

pub mod error;
pub mod exactlin;
pub mod cluster;
pub mod periods;
pub mod localsys;
pub mod fibration;
pub mod pwreport;

pub use error::{Error, Result};
