//! Exact computations for orthogonal polynomials of type R_I, the family
//! generated by
//!
//! ```text
//! P_{n+1}(x) = (x - b_n) P_n(x) - (a_n x + lambda_n) P_{n-1}(x),   P_{-1} = 0, P_0 = 1.
//! ```
//!
//! Modules:
//!
//! * [`exactmath`]: rationals, polynomials, power series, symbolic polynomials.
//! * [`ortho`]: coefficient systems, the functional `L`, moments and `nu_{n,m}`.
//! * [`paths`]: Motzkin-Schroder lattice paths and their weight sums.
//! * [`determinants`]: exact determinants and their product formulas.
//! * [`families`]: named hypergeometric and basic hypergeometric families.
//! * [`histories`]: Laguerre and Meixner histories and their bijections.
//! * [`verify`]: randomized property suites used by the `ri-ortho verify` command.
//! * [`cli`]: the command line front end.
//!
//! The `examples/` directory has one runnable program per capability:
//!
//! * `moments`: moments from the recurrence, paths and continued fraction.
//! * `symbolic_paths`: symbolic path sums and enumeration.
//! * `functional`: evaluating `L` on V, `nu_{n,m}` and the `P` expansion.
//! * `bounded_height`: bounded-height generating functions.
//! * `determinants`: the determinant formulas and the Cramer representations.
//! * `laurent`: the `lambda = 0` case, system inversion and `F`.
//! * `families`: named families against their hypergeometric forms.
//! * `hermite`: the R_I Hermite polynomials.
//! * `histories`: Laguerre and Meixner history bijections.
//!
//! ```
//! use ri_orthopoly::exactmath::Scalar;
//! use ri_orthopoly::ortho::{CoeffSystem, VElem, Session};
//!
//! let cs = CoeffSystem::constant(Scalar::one(), Scalar::one(), Scalar::one(), 8);
//! let mut s = Session::new(cs);
//! assert_eq!(s.mu(2).unwrap(), Scalar::from_int(7));
//! // L(1/d_1) = 1 / (lambda_1 + a_1 b_0)
//! assert_eq!(s.l_eval(&VElem::x_pow_over_d(0, 1)).unwrap(), Scalar::frac(1, 2));
//! ```

pub mod cli;
pub mod determinants;
mod error;
pub mod exactmath;
pub mod families;
pub mod histories;
pub mod ortho;
pub mod paths;
pub mod verify;

pub use error::{Error, Result};
