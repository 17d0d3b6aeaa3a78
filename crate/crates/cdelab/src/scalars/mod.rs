//! The scalar tower: exact cyclotomic numbers k = Q(zeta_n), rational
//! functions K = k(t), the local subring R of K of functions regular at
//! t = 0, and the truncation rings k[t]/t^N.
//!
//! All values are immutable after construction and safe to share across
//! threads. R is represented as the subring of k(t) regular at t = 0; it is
//! a discrete valuation ring with uniformizer t, which is all the downstream
//! lattice machinery relies on. (A genuinely Henselian ring would also carry
//! limits of idempotent lifts; here lifting is performed to finite t-adic
//! precision instead, see the lattice module.)

mod cyclo;
mod parse;
mod poly;
mod ratfunc;
mod roots;
mod series;

pub use cyclo::{euler_phi, Cyclo};
pub use parse::{parse_scalar, MAX_PHI};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use roots::{cyclo_roots, ratfunc_roots};
pub use series::Series;
