//! Kinematics and actuation model for the Self-Lock Origami rotational joint.
//!
//! The crate is `no_std` (with `alloc`). It covers the spherical four-bar
//! relations of a single joint, the pouch-motor moment model, forward
//! kinematics of the four plates, and multi-joint manipulators built from
//! welded units.
//!
//! Angles are radians and lengths are millimetres unless a name says otherwise.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod collide;
pub mod error;
pub mod fold;
pub mod geometry;
pub mod linkage;
pub mod manipulator;
pub mod moment;
pub mod pouch;
pub mod solve;

pub use error::{Error, Result};
pub use linkage::{CentralAngles, Configuration, JointState};

/// Default MPF angle, in radians (36.5°).
pub const DEFAULT_GAMMA: f64 = 36.5 * core::f64::consts::PI / 180.0;

/// Plate side before cutting, in millimetres.
pub const DEFAULT_PLATE_SIDE: f64 = 25.0;
