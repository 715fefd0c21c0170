//! Recurrence systems of type R_I and the linear functional they define.
//!
//! * [`CoeffSystem`]: coefficient tables, shift and inversion.
//! * [`p_sequence`], [`p_star_sequence`]: the polynomials and their reversals.
//! * [`tiling`]: the bicolored Favard tiling expansion.
//! * [`Session`]: memoized `mu_{n,m}`, `nu_{n,m}` and evaluation of `L` on V.

mod coeffs;
mod functional;
mod polys;
pub mod tiling;

pub use coeffs::CoeffSystem;
pub use functional::{cf_series, parse_expr, truncated_cf, Session, VElem, MEMO_LIMIT_VAR};
pub use polys::{critical_value, p_sequence, p_star, p_star_sequence};
