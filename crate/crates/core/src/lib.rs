//! Exact computations for domino tilings of the Aztec diamond.
//!
//! The crate is organised bottom-up:
//!
//! * [`ratfunc`]: univariate polynomials and rational functions in `p` with
//!   exact rational coefficients and a unique canonical form.
//! * [`kravchuk`]: Kravchuk polynomial values and the growth functions
//!   `g_{a,b,α}(p)`.
//! * [`placement`]: exact and symbolic placement probabilities, creation
//!   rates and the limiting density inside the arctic circle.
//! * [`region`]: cells, regions with removed cells, a broken-profile tiling
//!   counter, tiling enumeration and Kuo condensation checks.
//! * [`shuffle`]: the domino-shuffling sampler and Monte-Carlo estimates.
//! * [`holes`]: tiling counts for diamonds with a 2×2 hole.
//! * [`verify`]: self-check suites used by the command-line `verify` command.

pub mod error;
pub mod holes;
pub mod kravchuk;
pub mod placement;
pub mod ratfunc;
pub mod region;
pub mod shuffle;
pub mod verify;

pub use error::{Error, Result};
pub use holes::{ciucu_count, hole_count, hole_symbolic, HoleSpec, HoleSymbolic};
pub use kravchuk::{growth_g, krav_eval, krav_symmetry_factor, GrowthKey};
pub use placement::{
    asymptotic_prob, cr_symbolic, creation_rate, f_symbolic, prob_general, prob_numeric, Alpha,
    ExactProbability, Position, SizeSplit, SymbolicPlacement,
};
pub use ratfunc::{Polynomial, RationalFunction};
pub use region::{count_tilings, enumerate_tilings, kuo_check, Cell, Domino, Region, Tiling};
pub use shuffle::{mc_estimate, sample, shuffle_step, CoinSource, McEstimate, ShuffleState};
