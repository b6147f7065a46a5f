//! Exact-arithmetic fair division of indivisible goods.
//!
//! This crate implements allocation mechanisms (Round-Robin, welfare
//! maximizers, probabilistic serial with its lottery implementation, and an
//! EF1-preserving black-box reduction), fairness and efficiency checkers
//! (EF, PROP, EF1, cleanliness, non-wastefulness, Pareto and fractional
//! Pareto efficiency), and exact manipulability audits over declared finite
//! report spaces. Every number is an arbitrary-precision rational; there is
//! no floating point anywhere.

pub mod audit;
pub mod bobw;
pub mod checkers;
pub mod enumerate;
pub mod error;
pub mod lottery;
pub mod lp;
pub mod mechanisms;
pub mod model;
pub mod rational;
pub mod reduction;
pub mod scenarios;

#[doc(hidden)]
pub mod testgen;

pub use checkers::{AllocView, EnvyReport};
pub use enumerate::DEFAULT_ENUM_CAP;
pub use error::{Error, Result};
pub use model::{FractionalAllocation, Instance, IntegralAllocation, Lottery, LotteryAtom};
pub use rational::Rat;
