// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

//! Shortcut-to-adiabaticity pulse design for a driven spin-1 system.
//!
//! A closed plane curve is turned into a microwave envelope whose
//! accumulated noise response (the curve itself) returns to the origin, so
//! the leading-order detuning error cancels. The crate simulates the
//! resulting three-level dynamics exactly and compares against STIRAP,
//! stimulated Raman transitions and plain π-pulses.

pub mod acceptance;
pub mod curve;
pub mod error;
pub mod harness;
pub mod invariant;
pub mod optimize;
pub mod propagate;
pub mod pulse;
pub mod spin;
pub mod units;

pub use error::{Error, Result};
