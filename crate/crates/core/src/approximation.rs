//! Least-squares approximation of a Lovász extension by min-polynomials of
//! bounded degree.
//!
//! Three independent routes to the same coefficients are provided and
//! cross-checked by the test suites:
//!
//! * [`approx_closed_form`] — the closed-form projection coefficients,
//! * [`approx_chain`] / [`approx_recursive_step`] — the consecutive-degree
//!   recurrence obtained by projecting one degree at a time,
//! * [`approx_normal_equations`] — an exact dense solve of the normal
//!   equations over the Gram matrix of the min-function basis.
//!
//! The module also carries the analogous closed form for the discrete
//! least-squares problem on the Boolean cube ([`hammer_holzman`]) and the
//! permutation machinery used to state symmetry preservation.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::combinatorics::{binomial, binomial_ratio};
use crate::geometry::{gram_matrix, inner_product_with_min};
use crate::linalg::{self, LuFactors};
use crate::set_function::{MinPolynomial, MobiusRep};
use crate::subset::{cardinality, full_mask, supersets, Mask};
use crate::{Error, Result};

/// Largest player count accepted by the dense normal-equations solve.
pub const MAX_ORACLE_PLAYERS: usize = 10;

/// Best degree-`degree` approximation, computed by the closed form
///
/// ```text
/// a_k(S) = a(S) + (−1)^{k+s} Σ_{T⊇S, t>k}
///          [C(k+s+1, k+1)·C(t−s−1, k−s) / C(k+t+1, k+1)] · a(T).
/// ```
pub fn approx_closed_form(a: &MobiusRep, degree: usize) -> Result<MinPolynomial> {
    let n = a.n();
    if degree > n {
        return Err(Error::DegreeOutOfRange { degree, n });
    }
    let k = degree;
    // The correction weight depends only on (s, t); tabulate once.
    let weights: Vec<Vec<BigRational>> = (0..=k)
        .map(|s| {
            (0..=n)
                .map(|t| {
                    if t <= k {
                        BigRational::zero()
                    } else {
                        BigRational::new(
                            binomial(k + s + 1, k + 1) * binomial(t - s - 1, k - s),
                            binomial(k + t + 1, k + 1),
                        )
                    }
                })
                .collect()
        })
        .collect();

    let mut coeffs = BTreeMap::new();
    for s_mask in 0..=full_mask(n) {
        let s = cardinality(s_mask);
        if s > k {
            continue;
        }
        let mut correction = BigRational::zero();
        for t_mask in supersets(s_mask, n) {
            let t = cardinality(t_mask);
            if t <= k {
                continue;
            }
            let coeff = a.coefficient(t_mask);
            if !coeff.is_zero() {
                correction += &weights[s][t] * coeff;
            }
        }
        if (k + s) % 2 == 1 {
            correction = -correction;
        }
        coeffs.insert(s_mask, a.coefficient(s_mask) + correction);
    }
    MinPolynomial::new(n, degree, coeffs)
}

/// One step of the consecutive-degree recurrence: projects a degree-`k+1`
/// min-polynomial onto degree `k` via
///
/// ```text
/// a_k(S) = a_{k+1}(S) + (−1)^{k+s} · [C(k+s+1, k+1)/C(2k+2, k+1)]
///          · Σ_{T⊇S, t=k+1} a_{k+1}(T).
/// ```
pub fn approx_recursive_step(next: &MinPolynomial) -> MinPolynomial {
    assert!(next.degree() >= 1, "cannot step below degree zero");
    let n = next.n();
    let k = next.degree() - 1;
    let denominator = binomial(2 * k + 2, k + 1);

    let mut coeffs = BTreeMap::new();
    for (&s_mask, value) in next.coefficients() {
        let s = cardinality(s_mask);
        if s > k {
            continue;
        }
        let mut top_sum = BigRational::zero();
        for t_mask in supersets(s_mask, n) {
            if cardinality(t_mask) == k + 1 {
                top_sum += next.coefficient(t_mask);
            }
        }
        let mut correction =
            BigRational::new(binomial(k + s + 1, k + 1), denominator.clone()) * top_sum;
        if (k + s) % 2 == 1 {
            correction = -correction;
        }
        coeffs.insert(s_mask, value + correction);
    }
    MinPolynomial::new(n, k, coeffs).expect("projected coefficients are in range")
}

/// Best degree-`degree` approximation obtained by chaining the recurrence
/// down from the full-degree representation.
pub fn approx_chain(a: &MobiusRep, degree: usize) -> Result<MinPolynomial> {
    let n = a.n();
    if degree > n {
        return Err(Error::DegreeOutOfRange { degree, n });
    }
    let mut current = MinPolynomial::from_mobius(a, n)?;
    while current.degree() > degree {
        current = approx_recursive_step(&current);
    }
    Ok(current)
}

/// Factored normal-equations system for a fixed `(n, degree)` pair.
///
/// Assembling the Gram matrix and its LU factors once lets many coefficient
/// tables be projected without refactoring; [`approx_normal_equations`] is
/// the single-shot convenience wrapper.
#[derive(Debug, Clone)]
pub struct NormalEquationsSolver {
    n: usize,
    degree: usize,
    order: Vec<Mask>,
    factors: LuFactors,
}

impl NormalEquationsSolver {
    pub fn new(n: usize, degree: usize) -> Result<Self> {
        if n > MAX_ORACLE_PLAYERS {
            return Err(Error::OracleTooLarge {
                n,
                max: MAX_ORACLE_PLAYERS,
            });
        }
        let gram = gram_matrix(n, degree)?;
        let order = gram.order().to_vec();
        let factors = linalg::factor(gram.rows()).ok_or(Error::SingularSystem)?;
        Ok(Self {
            n,
            degree,
            order,
            factors,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Solves `G c = ⟨f̂, min_T⟩` exactly for the projection coefficients.
    pub fn solve(&self, a: &MobiusRep) -> Result<MinPolynomial> {
        if a.n() != self.n {
            return Err(Error::DimensionMismatch {
                got: a.n(),
                expected: self.n,
            });
        }
        let rhs: Vec<BigRational> = self
            .order
            .iter()
            .map(|&t| inner_product_with_min(a, t))
            .collect();
        let solution = self.factors.solve(&rhs);
        let coeffs: BTreeMap<Mask, BigRational> =
            self.order.iter().copied().zip(solution).collect();
        MinPolynomial::new(self.n, self.degree, coeffs)
    }
}

/// Best degree-`degree` approximation via an exact dense solve of the
/// normal equations; the independent oracle for the closed form.
///
/// Refuses player counts above [`MAX_ORACLE_PLAYERS`].
pub fn approx_normal_equations(a: &MobiusRep, degree: usize) -> Result<MinPolynomial> {
    NormalEquationsSolver::new(a.n(), degree)?.solve(a)
}

/// Best degree-`degree` approximation of the *multilinear* polynomial in
/// the discrete least-squares sense over the Boolean cube:
///
/// ```text
/// a_k(S) = a(S) + (−1)^{k+s} Σ_{T⊇S, t>k} [C(t−s−1, k−s) / 2^{t−s}] · a(T).
/// ```
///
/// The returned coefficients are monomial-basis coefficients; the leading
/// ones (`|S| = k`) are the Banzhaf interaction values.
pub fn hammer_holzman(a: &MobiusRep, degree: usize) -> MinPolynomial {
    let n = a.n();
    assert!(degree <= n, "degree out of range");
    let k = degree;
    let mut coeffs = BTreeMap::new();
    for s_mask in 0..=full_mask(n) {
        let s = cardinality(s_mask);
        if s > k {
            continue;
        }
        let mut correction = BigRational::zero();
        for t_mask in supersets(s_mask, n) {
            let t = cardinality(t_mask);
            if t <= k {
                continue;
            }
            let coeff = a.coefficient(t_mask);
            if !coeff.is_zero() {
                correction +=
                    BigRational::new(binomial(t - s - 1, k - s), num_bigint::BigInt::from(1) << (t - s))
                        * coeff;
            }
        }
        if (k + s) % 2 == 1 {
            correction = -correction;
        }
        coeffs.insert(s_mask, a.coefficient(s_mask) + correction);
    }
    MinPolynomial::new(n, degree, coeffs).expect("coefficients are in range")
}

/// A permutation of the players `0..n`, stored as the image array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its image array (`map[i]` is the image of
    /// player `i`); rejects non-bijections.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &image in &map {
            if image >= n || seen[image] {
                return Err(Error::InvalidPermutation(n));
            }
            seen[image] = true;
        }
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    /// The transposition exchanging players `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(Error::InvalidPermutation(n));
        }
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(i, j);
        Ok(Self { map })
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    /// Image of a single player.
    pub fn image(&self, player: usize) -> usize {
        self.map[player]
    }

    /// Image of a coalition: `σ(S) = {σ(i) | i ∈ S}`.
    pub fn image_mask(&self, mask: Mask) -> Mask {
        let mut out = 0;
        for (player, &image) in self.map.iter().enumerate() {
            if mask & (1 << player) != 0 {
                out |= 1 << image;
            }
        }
        out
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.map.len()];
        for (player, &image) in self.map.iter().enumerate() {
            map[image] = player;
        }
        Self { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &image)| i == image)
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Self {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    /// Relabels a point: the result's coordinate `i` is `x[σ(i)]`.
    pub fn permute_point(&self, x: &[f64]) -> Vec<f64> {
        self.map.iter().map(|&image| x[image]).collect()
    }
}

/// Relabels a coefficient table so that evaluating the result at
/// `(x_1, …, x_n)` equals evaluating the original at `(x_{σ(1)}, …,
/// x_{σ(n)})`; the coefficient of `σ(S)` becomes the old coefficient of
/// `S`.
pub fn apply_permutation(a: &MobiusRep, sigma: &Permutation) -> Result<MobiusRep> {
    if sigma.n() != a.n() {
        return Err(Error::DimensionMismatch {
            got: sigma.n(),
            expected: a.n(),
        });
    }
    let mut coeffs = vec![BigRational::zero(); 1 << a.n()];
    for mask in 0..=full_mask(a.n()) {
        coeffs[sigma.image_mask(mask) as usize] = a.coefficient(mask).clone();
    }
    MobiusRep::new(a.n(), coeffs)
}

/// Whether `sigma` is a symmetry of the min-polynomial: relabelling leaves
/// every coefficient unchanged.
pub fn is_symmetric(a: &MobiusRep, sigma: &Permutation) -> Result<bool> {
    Ok(&apply_permutation(a, sigma)? == a)
}

/// Averages the coefficient table over the cyclic group generated by
/// `sigma`, producing a table for which `sigma` is a symmetry.
pub fn symmetrize(a: &MobiusRep, sigma: &Permutation) -> Result<MobiusRep> {
    let mut total = a.clone();
    let mut power = sigma.clone();
    let mut order = 1usize;
    while !power.is_identity() {
        total = total.checked_add(&apply_permutation(a, &power)?)?;
        power = power.compose(sigma);
        order += 1;
    }
    Ok(total.scale(&BigRational::new(1.into(), order.into())))
}

/// Exact inner products of the projection residual `f̂ − A_k f̂` against
/// every basis function of degree at most `k`; all must vanish.
pub fn residual_inner_products(
    a: &MobiusRep,
    approx: &MinPolynomial,
) -> Result<Vec<(Mask, BigRational)>> {
    let residual = a.checked_sub(&approx.to_mobius())?;
    Ok(crate::subset::canonical_order(a.n(), approx.degree())
        .into_iter()
        .map(|t| (t, inner_product_with_min(&residual, t)))
        .collect())
}

/// Mean value of the min-polynomial over the cube, `Σ_T a(T)/(|T|+1)`;
/// used to cross-check the degree-zero projection.
pub fn mean_value(a: &MobiusRep) -> BigRational {
    let mut total = BigRational::zero();
    for mask in 0..=full_mask(a.n()) {
        let coeff = a.coefficient(mask);
        if !coeff.is_zero() {
            total += coeff * binomial_ratio((1, 1), (cardinality(mask) + 1, 1));
        }
    }
    total
}
