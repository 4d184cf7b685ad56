//! Exact least-squares approximation of Lovász extensions (discrete Choquet
//! integrals) by min-polynomials of bounded degree, and the interaction and
//! power indices those approximations induce.
//!
//! A set function on `n` players is stored as a dense table of exact
//! rationals over coalition bitmasks. Its Lovász extension is the
//! min-polynomial `Σ_S a(S) · min_{i∈S} x_i` built from the Möbius
//! coefficients; this crate computes the best L² approximation of that
//! extension by min-polynomials of degree at most `k`, through three
//! mutually checking routes (closed form, degree-by-degree recurrence, and
//! an exact normal-equations solve), and derives the coalition interaction
//! indices that appear as leading coefficients of those approximations.
//!
//! All coefficient arithmetic is exact; floating point only enters the
//! point-evaluation wrappers and the Monte Carlo integration oracle.
//!
//! Players are indexed `0..n` and coalitions are bitmasks ([`subset::Mask`])
//! with bit `i` standing for player `i`.

pub mod approximation;
pub mod combinatorics;
pub mod geometry;
pub mod interaction;
pub mod linalg;
pub mod set_function;
pub mod subset;

mod error;

pub use error::Error;
pub use num_rational::BigRational;
pub use set_function::{MinPolynomial, MobiusRep, PointVector, SetFunction};

/// Hard cap on the player count; the dense `2^n` tables stay desk-scale.
pub const MAX_PLAYERS: usize = 16;

pub type Result<T> = std::result::Result<T, Error>;

/// Exact rational from an integer pair.
///
/// Panics when `denom` is zero.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(numer.into(), denom.into())
}

#[doc(hidden)]
pub mod test_support {
    //! Deterministic fixtures shared by the unit, property, and acceptance
    //! suites.

    use num_rational::BigRational;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use crate::ratio;
    use crate::set_function::{MobiusRep, SetFunction};

    pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// Small random rational: numerator in `−20..=20`, denominator in
    /// `1..=9`. Keeps exact-arithmetic test corpora cheap.
    pub fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
        ratio(rng.gen_range(-20..=20), rng.gen_range(1..=9))
    }

    pub fn random_mobius(rng: &mut ChaCha8Rng, n: usize) -> MobiusRep {
        let coeffs = (0..1usize << n).map(|_| random_rational(rng)).collect();
        MobiusRep::new(n, coeffs).expect("valid table")
    }

    pub fn random_set_function(rng: &mut ChaCha8Rng, n: usize) -> SetFunction {
        let values = (0..1usize << n).map(|_| random_rational(rng)).collect();
        SetFunction::new(n, values).expect("valid table")
    }

    /// Möbius coefficients of the four-player game used as the worked
    /// example throughout the suites: 3/10 on the singletons and pairs
    /// within the first three players, −21/25 on their triple, 1/25 on the
    /// grand coalition.
    pub fn example_game_mobius() -> MobiusRep {
        let mut coeffs = vec![BigRational::zero(); 16];
        for mask in [0b0001u32, 0b0010, 0b0100, 0b0011, 0b0101, 0b0110] {
            coeffs[mask as usize] = ratio(3, 10);
        }
        coeffs[0b0111] = ratio(-21, 25);
        coeffs[0b1111] = ratio(1, 25);
        MobiusRep::new(4, coeffs).expect("valid table")
    }
}
