//! Quantum architecture search with deep reinforcement learning.
//!
//! An agent builds a circuit one gate at a time, starting from `|0…0⟩`, and
//! is rewarded once the simulated state reaches a fidelity threshold against
//! a target state. This crate holds the pure algorithmic parts and needs only
//! `alloc`:
//!
//! * [`qsim`]: exact statevector and density-matrix simulation with
//!   depolarizing gate noise, Pauli expectations, fidelity and Pauli-basis
//!   tomography.
//! * [`env`]: the reset/step environment over the discrete gate action set.
//! * [`nn`]: the actor/critic MLPs, hand-written backprop and Adam.
//! * [`agents`]: A2C and PPO trainers.
//! * [`search`]: exhaustive shortest-circuit search and circuit replay, used
//!   as an oracle for the agents.
//!
//! File formats, CSV logging, plotting and the CLI live in `qas-harness`.
#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod agents;
pub mod env;
mod error;
pub mod nn;
pub mod qsim;
pub mod search;

pub use error::{Error, Result};
