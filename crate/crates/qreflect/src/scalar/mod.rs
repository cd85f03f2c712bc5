//! Exact scalars: rational functions in `q, z, x, y, w` over ℚ(i), times
//! canonical infinite q-Pochhammer symbols.
//!
//! Half-integer powers of `q` are native: the `q` slot of every exponent
//! vector counts powers of `q^(1/2)`.

mod exact;
mod gauss;
mod gcd;
mod parse;
mod poch;
mod poly;
mod ratfun;
mod series;

pub(crate) use exact::qbinomial_poly;
pub use exact::{qbinomial, qpoch_finite, ExactScalar};
pub use gauss::{GInt, GaussianRational};
pub use gcd::gcd;
pub use parse::parse_scalar;
pub use poch::{MonomialArg, PochSymbol};
pub use poly::{Exps, Poly, NVARS};
pub use ratfun::RatFun;
pub use series::{series_oracle, series_oracle_half};

use thiserror::Error;

/// The commuting variables, in serialization order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Q = 0,
    Z = 1,
    X = 2,
    Y = 3,
    W = 4,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Q, Var::Z, Var::X, Var::Y, Var::W];

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::Z => "z",
            Var::X => "x",
            Var::Y => "y",
            Var::W => "w",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("addition of scalars with different Pochhammer parts")]
    IncompatibleSymbols,
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution would make a Pochhammer argument or base non-monomial")]
    NonMonomialSubstitutionIntoSymbol,
    #[error("substitution for q requires even powers of q")]
    HalfPowerSubstitution,
    #[error("denominator vanishes at the origin of the series variable")]
    PoleAtOrigin,
    #[error("series oracle needs every other variable sampled: {0} is free")]
    UnsampledVariable(&'static str),
    #[error("odd half-integer power of q in an integer-step series")]
    HalfIntegerPower,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
