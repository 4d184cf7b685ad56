//! The L² geometry of min-polynomials on the unit cube.
//!
//! The inner product of two basis min-functions has the closed form
//!
//! ```text
//! ⟨min_S, min_T⟩ = 1/(|S∪T|+2) · (1/(|S|+1) + 1/(|T|+1)),
//! ```
//!
//! notably independent of the ambient player count. Everything here —
//! Gram matrices, norms, single-basis-function projections — expands
//! through that formula in exact rational arithmetic. A plain Monte Carlo
//! estimator of the defining integral serves as the independent numerical
//! oracle for it.

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

use crate::combinatorics::binomial;
use crate::set_function::{MinPolynomial, MobiusRep};
use crate::subset::{canonical_order, cardinality, full_mask, submasks, Mask};
use crate::{Error, Result, MAX_PLAYERS};

fn unit_fraction(denom: usize) -> BigRational {
    BigRational::new(1.into(), denom.into())
}

/// Exact inner product `⟨min_S, min_T⟩` over the unit cube.
///
/// The empty coalition denotes the constant function 1 and is covered by
/// the same formula.
pub fn inner_product_min(s: Mask, t: Mask) -> BigRational {
    let union = cardinality(s | t);
    unit_fraction(union + 2)
        * (unit_fraction(cardinality(s) + 1) + unit_fraction(cardinality(t) + 1))
}

/// Gram matrix of the min-function basis of degree at most `degree`, in
/// canonical order (cardinality ascending, then bitmask ascending).
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    n: usize,
    degree: usize,
    order: Vec<Mask>,
    entries: Vec<Vec<BigRational>>,
}

/// Assembles the Gram matrix for `n` players and degree bound `degree`.
pub fn gram_matrix(n: usize, degree: usize) -> Result<GramMatrix> {
    if n == 0 || n > MAX_PLAYERS {
        return Err(Error::PlayerCount(n));
    }
    if degree > n {
        return Err(Error::DegreeOutOfRange { degree, n });
    }
    let order = canonical_order(n, degree);
    let entries = order
        .iter()
        .map(|&s| order.iter().map(|&t| inner_product_min(s, t)).collect())
        .collect();
    Ok(GramMatrix {
        n,
        degree,
        order,
        entries,
    })
}

impl GramMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Basis coalitions in canonical order.
    pub fn order(&self) -> &[Mask] {
        &self.order
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i][j]
    }

    /// Rows of the matrix (cloned), for handing to the exact solver.
    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        self.entries.clone()
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Exact positive-definiteness test: symmetric elimination without row
    /// exchanges must meet a strictly positive pivot at every step.
    pub fn is_positive_definite(&self) -> bool {
        let d = self.dim();
        let mut m = self.entries.clone();
        for col in 0..d {
            if m[col][col] <= BigRational::zero() {
                return false;
            }
            let (pivoted, remaining) = m.split_at_mut(col + 1);
            let pivot_row = &pivoted[col];
            for row in remaining.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] / &pivot_row[col];
                for (j, entry) in row.iter_mut().enumerate().skip(col) {
                    *entry -= &factor * &pivot_row[j];
                }
            }
        }
        true
    }
}

/// Orthogonal projection of a single basis function `min_S` onto the space
/// of min-polynomials of degree `|S| − 1`.
///
/// For `|S| = k+1` the projection is supported on the proper subsets of `S`
/// with coefficients `(−1)^{k+t} · C(k+t+1, k+1) / C(2k+2, k+1)`.
pub fn project_min_single(s: Mask, degree: usize, n: usize) -> Result<MinPolynomial> {
    if n == 0 || n > MAX_PLAYERS {
        return Err(Error::PlayerCount(n));
    }
    if s & !full_mask(n) != 0 {
        return Err(Error::SubsetOutOfRange { mask: s, n });
    }
    let card = cardinality(s);
    if card != degree + 1 || card > n {
        return Err(Error::ProjectionCardinality { card, degree });
    }
    let k = degree;
    let denominator = binomial(2 * k + 2, k + 1);
    let mut coeffs = BTreeMap::new();
    for t_mask in submasks(s) {
        if t_mask == s {
            continue;
        }
        let t = cardinality(t_mask);
        let mut value = BigRational::new(binomial(k + t + 1, k + 1), denominator.clone());
        if (k + t) % 2 == 1 {
            value = -value;
        }
        coeffs.insert(t_mask, value);
    }
    MinPolynomial::new(n, degree, coeffs)
}

/// Exact inner product `⟨f̂, min_T⟩` of a min-polynomial given by its
/// coefficient table against a single basis function.
pub fn inner_product_with_min(a: &MobiusRep, t: Mask) -> BigRational {
    let mut total = BigRational::zero();
    for mask in 0..=full_mask(a.n()) {
        let coeff = a.coefficient(mask);
        if !coeff.is_zero() {
            total += coeff * inner_product_min(mask, t);
        }
    }
    total
}

/// Exact inner product `⟨f̂, ĝ⟩` of two min-polynomials given by their
/// coefficient tables over the same player set.
pub fn inner_product(a: &MobiusRep, b: &MobiusRep) -> Result<BigRational> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            got: b.n(),
            expected: a.n(),
        });
    }
    // ⟨min_S, min_T⟩ depends only on (|S∪T|, |S|, |T|); memoize per triple.
    let n = a.n();
    let mut memo: Vec<Option<BigRational>> = vec![None; (n + 1) * (n + 1) * (n + 1)];
    let mut total = BigRational::zero();
    for s_mask in 0..=full_mask(n) {
        let s_coeff = a.coefficient(s_mask);
        if s_coeff.is_zero() {
            continue;
        }
        for t_mask in 0..=full_mask(n) {
            let t_coeff = b.coefficient(t_mask);
            if t_coeff.is_zero() {
                continue;
            }
            let key = (cardinality(s_mask | t_mask) * (n + 1) + cardinality(s_mask)) * (n + 1)
                + cardinality(t_mask);
            let ip = memo[key]
                .get_or_insert_with(|| inner_product_min(s_mask, t_mask))
                .clone();
            total += s_coeff * t_coeff * ip;
        }
    }
    Ok(total)
}

/// Exact squared L² norm `‖f̂‖²` of a min-polynomial.
pub fn norm_sq(a: &MobiusRep) -> BigRational {
    inner_product(a, a).expect("same representation")
}

/// Result of a Monte Carlo integration run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Plain Monte Carlo estimate of `∫ min_S(x) · min_T(x) dx` over `[0,1]^n`.
///
/// The pseudorandom stream is ChaCha8 seeded with `seed`, so estimates are
/// reproducible; the standard error is the sample standard deviation
/// divided by `√samples`.
pub fn mc_inner_product(s: Mask, t: Mask, n: usize, samples: usize, seed: u64) -> McEstimate {
    assert!((1..=MAX_PLAYERS).contains(&n), "player count out of range");
    assert!(samples >= 100, "need at least 100 samples");
    assert!(
        (s | t) & !full_mask(n) == 0,
        "coalitions must lie within the player set"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut point = vec![0.0f64; n];
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        for coord in point.iter_mut() {
            *coord = rng.gen();
        }
        let value = min_on(s, &point) * min_on(t, &point);
        sum += value;
        sum_sq += value * value;
    }
    let count = samples as f64;
    let mean = sum / count;
    let variance = ((sum_sq - count * mean * mean) / (count - 1.0)).max(0.0);
    McEstimate {
        mean,
        std_error: (variance / count).sqrt(),
        samples,
    }
}

fn min_on(mask: Mask, point: &[f64]) -> f64 {
    if mask == 0 {
        return 1.0;
    }
    point
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, &x)| x)
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;
    use crate::test_support::seeded_rng;
    use num_traits::ToPrimitive;
    use rand::Rng;

    #[test]
    fn inner_product_of_constants_is_one() {
        assert_eq!(inner_product_min(0, 0), ratio(1, 1));
    }

    #[test]
    fn inner_product_single_with_itself() {
        // ∫ x² dx = 1/3
        assert_eq!(inner_product_min(0b1, 0b1), ratio(1, 3));
    }

    #[test]
    fn inner_product_overlapping_pairs() {
        // S = {1,2}, T = {2,3}: (1/5)(1/3 + 1/3) = 2/15
        assert_eq!(inner_product_min(0b011, 0b110), ratio(2, 15));
    }

    #[test]
    fn inner_product_overlapping_pairs_matches_monte_carlo() {
        let est = mc_inner_product(0b011, 0b110, 3, 1_000_000, 0xe97);
        let exact = 2.0 / 15.0;
        assert!(est.std_error > 0.0);
        assert!(
            (est.mean - exact).abs() <= 4.0 * est.std_error,
            "mean {} exact {} se {}",
            est.mean,
            exact,
            est.std_error
        );
    }

    #[test]
    fn gram_one_player_degree_one() {
        let g = gram_matrix(1, 1).unwrap();
        assert_eq!(g.order(), &[0b0, 0b1]);
        assert_eq!(g.entry(0, 0), &ratio(1, 1));
        assert_eq!(g.entry(0, 1), &ratio(1, 2));
        assert_eq!(g.entry(1, 0), &ratio(1, 2));
        assert_eq!(g.entry(1, 1), &ratio(1, 3));
    }

    #[test]
    fn gram_two_players_degree_zero() {
        let g = gram_matrix(2, 0).unwrap();
        assert_eq!(g.dim(), 1);
        assert_eq!(g.entry(0, 0), &ratio(1, 1));
    }

    #[test]
    fn gram_diagonal_closed_form() {
        let g = gram_matrix(5, 5).unwrap();
        for (i, &mask) in g.order().iter().enumerate() {
            let s = cardinality(mask) as i64;
            assert_eq!(g.entry(i, i), &ratio(2, (s + 1) * (s + 2)));
        }
    }

    #[test]
    fn gram_symmetric_and_positive_definite_small_lattices() {
        for n in 1..=6 {
            for degree in 0..=n {
                let g = gram_matrix(n, degree).unwrap();
                let expected_dim: usize = (0..=degree)
                    .map(|s| binomial(n, s).to_usize().unwrap())
                    .sum();
                assert_eq!(g.dim(), expected_dim);
                assert!(g.is_symmetric(), "n={n} degree={degree}");
                assert!(g.is_positive_definite(), "n={n} degree={degree}");
            }
        }
    }

    #[test]
    fn projecting_a_single_variable_gives_its_mean() {
        let p = project_min_single(0b1, 0, 2).unwrap();
        assert_eq!(p.coefficient(0), &ratio(1, 2));
    }

    #[test]
    fn projecting_a_pair_onto_degree_one() {
        let p = project_min_single(0b11, 1, 2).unwrap();
        assert_eq!(p.coefficient(0b00), &ratio(-1, 6));
        assert_eq!(p.coefficient(0b01), &ratio(1, 2));
        assert_eq!(p.coefficient(0b10), &ratio(1, 2));
    }

    #[test]
    fn projection_requires_matching_cardinality() {
        assert!(matches!(
            project_min_single(0b111, 1, 3),
            Err(Error::ProjectionCardinality { card: 3, degree: 1 })
        ));
        // The empty set is rejected rather than special-cased.
        assert!(matches!(
            project_min_single(0b0, 0, 3),
            Err(Error::ProjectionCardinality { card: 0, degree: 0 })
        ));
    }

    #[test]
    fn projection_residual_is_orthogonal_to_lower_degrees() {
        for n in 1..=6usize {
            for degree in 0..n {
                for s in 0..=full_mask(n) {
                    if cardinality(s) != degree + 1 {
                        continue;
                    }
                    let projection = project_min_single(s, degree, n).unwrap();
                    // Residual coefficients: min_S minus its projection.
                    let mut residual = projection.to_mobius().scale(&ratio(-1, 1));
                    let mut coeffs = residual.coefficients().to_vec();
                    coeffs[s as usize] += ratio(1, 1);
                    residual = MobiusRep::new(n, coeffs).unwrap();
                    for t in 0..=full_mask(n) {
                        if cardinality(t) <= degree {
                            assert!(
                                inner_product_with_min(&residual, t).is_zero(),
                                "n={n} S={s:#b} T={t:#b}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mc_constant_pair_is_exact() {
        let est = mc_inner_product(0, 0, 3, 1_000, 7);
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.std_error, 0.0);
        assert_eq!(est.samples, 1_000);
    }

    #[test]
    fn mc_is_reproducible() {
        let a = mc_inner_product(0b101, 0b011, 3, 5_000, 42);
        let b = mc_inner_product(0b101, 0b011, 3, 5_000, 42);
        assert_eq!(a, b);
        let c = mc_inner_product(0b101, 0b011, 3, 5_000, 43);
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn mc_agrees_with_closed_form_on_random_pairs() {
        let mut rng = seeded_rng(0x40ac1e);
        let mut far = 0usize;
        for case in 0..10 {
            let n = rng.gen_range(1..=6);
            let s: Mask = rng.gen_range(0..=full_mask(n));
            let t: Mask = rng.gen_range(0..=full_mask(n));
            let est = mc_inner_product(s, t, n, 20_000, 0x9000 + case);
            let exact = inner_product_min(s, t).to_f64().unwrap();
            if est.std_error == 0.0 {
                assert_eq!(est.mean, exact);
            } else if (est.mean - exact).abs() > 4.0 * est.std_error {
                far += 1;
            }
        }
        assert_eq!(far, 0, "4-sigma outliers in 10 seeded cases");
    }

    #[test]
    fn inner_product_requires_same_players() {
        let a = MobiusRep::zero(3).unwrap();
        let b = MobiusRep::zero(4).unwrap();
        assert!(matches!(
            inner_product(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
