//! Set functions on the Boolean lattice, their Möbius representation, and
//! evaluators for the multilinear and Lovász extensions.
//!
//! A set function `v` assigns an exact rational worth to every coalition of
//! `n` players. Its Möbius transform `a` collects the coefficients of the
//! unique multilinear polynomial interpolating `v` on the Boolean cube; the
//! same coefficients, read against the basis of min-functions, give the
//! Lovász extension as the min-polynomial `Σ_S a(S) · min_{i∈S} x_i` with
//! `min_∅ ≡ 1`.
//!
//! Transforms and coefficients are exact rationals throughout; floating
//! point appears only in the `f64` evaluation wrappers, which convert their
//! input coordinates to rationals (an exact operation), run the full
//! computation exactly, and round once on output.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::subset::{cardinality, full_mask, Mask};
use crate::{Error, Result, MAX_PLAYERS};

/// Tolerance for accepting a floating-point coordinate as lying in `[0, 1]`.
const COORD_TOLERANCE: f64 = 1e-12;

fn check_player_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PLAYERS {
        return Err(Error::PlayerCount(n));
    }
    Ok(())
}

fn check_table(n: usize, len: usize) -> Result<()> {
    check_player_count(n)?;
    let expected = 1usize << n;
    if len != expected {
        return Err(Error::TableLength {
            got: len,
            expected,
        });
    }
    Ok(())
}

/// A set function `v : 2^N → ℚ` stored as a dense table over bitmasks.
#[derive(Debug, Clone, PartialEq)]
pub struct SetFunction {
    n: usize,
    values: Vec<BigRational>,
}

/// Möbius coefficients `a : 2^N → ℚ`, stored densely.
///
/// The same table doubles as the coefficient vector of the multilinear
/// polynomial (monomial basis) and of the Lovász extension (min-function
/// basis).
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusRep {
    n: usize,
    coeffs: Vec<BigRational>,
}

impl SetFunction {
    /// Builds a set function from a dense table of length `2^n`, indexed by
    /// coalition bitmask (`values[0]` is `v(∅)`).
    pub fn new(n: usize, values: Vec<BigRational>) -> Result<Self> {
        check_table(n, values.len())?;
        Ok(Self { n, values })
    }

    /// The identically-zero set function.
    pub fn zero(n: usize) -> Result<Self> {
        check_player_count(n)?;
        Ok(Self {
            n,
            values: vec![BigRational::zero(); 1 << n],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `v(S)` for the coalition encoded by `mask`.
    pub fn value(&self, mask: Mask) -> &BigRational {
        &self.values[mask as usize]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Möbius transform `a(S) = Σ_{T⊆S} (−1)^{|S|−|T|} v(T)`.
    ///
    /// Computed by the in-place lattice butterfly in `O(n·2^n)` exact
    /// operations; [`MobiusRep::zeta_transform`] is its exact inverse.
    pub fn mobius_transform(&self) -> MobiusRep {
        let mut coeffs = self.values.clone();
        for bit in 0..self.n {
            let step = 1usize << bit;
            for mask in 0..coeffs.len() {
                if mask & step != 0 {
                    let lower = coeffs[mask ^ step].clone();
                    coeffs[mask] -= lower;
                }
            }
        }
        MobiusRep { n: self.n, coeffs }
    }

    /// Evaluates the Lovász extension through the chain of level sets.
    ///
    /// Coordinates are sorted ascending (ties broken by ascending player
    /// index), and the value is the affine interpolation of `v` over the
    /// resulting vertex chain: with `x_{σ(1)} ≤ … ≤ x_{σ(n)}` and level sets
    /// `A_i = {σ(i), …, σ(n)}`,
    ///
    /// ```text
    /// f̂(x) = Σ_i (x_{σ(i)} − x_{σ(i−1)}) · v(A_i) + (1 − x_{σ(n)}) · v(∅).
    /// ```
    pub fn eval_lovasz_sorted(&self, x: &PointVector) -> Result<f64> {
        let exact = self.eval_lovasz_sorted_exact(&x.exact_coords())?;
        Ok(exact.to_f64().expect("rational within f64 range"))
    }

    /// Exact-rational core of [`Self::eval_lovasz_sorted`].
    pub fn eval_lovasz_sorted_exact(&self, coords: &[BigRational]) -> Result<BigRational> {
        if coords.len() != self.n {
            return Err(Error::DimensionMismatch {
                got: coords.len(),
                expected: self.n,
            });
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&i, &j| coords[i].cmp(&coords[j]).then(i.cmp(&j)));

        let mut level = full_mask(self.n);
        let mut previous = BigRational::zero();
        let mut total = BigRational::zero();
        for &player in &order {
            total += (&coords[player] - &previous) * self.value(level);
            previous = coords[player].clone();
            level &= !(1 << player);
        }
        total += (BigRational::one() - previous) * self.value(0);
        Ok(total)
    }
}

impl MobiusRep {
    /// Builds a Möbius representation from a dense coefficient table of
    /// length `2^n` indexed by coalition bitmask.
    pub fn new(n: usize, coeffs: Vec<BigRational>) -> Result<Self> {
        check_table(n, coeffs.len())?;
        Ok(Self { n, coeffs })
    }

    /// The identically-zero coefficient table.
    pub fn zero(n: usize) -> Result<Self> {
        check_player_count(n)?;
        Ok(Self {
            n,
            coeffs: vec![BigRational::zero(); 1 << n],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `a(S)` for the coalition encoded by `mask`.
    pub fn coefficient(&self, mask: Mask) -> &BigRational {
        &self.coeffs[mask as usize]
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Largest cardinality carrying a nonzero coefficient (0 for the zero
    /// table).
    pub fn max_degree(&self) -> usize {
        (0..self.coeffs.len())
            .filter(|&m| !self.coeffs[m].is_zero())
            .map(|m| cardinality(m as Mask))
            .max()
            .unwrap_or(0)
    }

    /// Zeta transform `v(S) = Σ_{T⊆S} a(T)`, the exact inverse of
    /// [`SetFunction::mobius_transform`].
    pub fn zeta_transform(&self) -> SetFunction {
        let mut values = self.coeffs.clone();
        for bit in 0..self.n {
            let step = 1usize << bit;
            for mask in 0..values.len() {
                if mask & step != 0 {
                    let lower = values[mask ^ step].clone();
                    values[mask] += lower;
                }
            }
        }
        SetFunction {
            n: self.n,
            values,
        }
    }

    /// Evaluates the multilinear polynomial `Σ_S a(S) Π_{i∈S} x_i`.
    pub fn eval_multilinear(&self, x: &PointVector) -> Result<f64> {
        let exact = self.eval_multilinear_exact(&x.exact_coords())?;
        Ok(exact.to_f64().expect("rational within f64 range"))
    }

    /// Exact-rational core of [`Self::eval_multilinear`].
    pub fn eval_multilinear_exact(&self, coords: &[BigRational]) -> Result<BigRational> {
        self.eval_with_monomials(coords, |product, coord| product * coord)
    }

    /// Evaluates the min-polynomial `Σ_S a(S) min_{i∈S} x_i` with
    /// `min_∅ ≡ 1`; this is the Lovász extension of the zeta transform.
    pub fn eval_lovasz_minpoly(&self, x: &PointVector) -> Result<f64> {
        let exact = self.eval_lovasz_minpoly_exact(&x.exact_coords())?;
        Ok(exact.to_f64().expect("rational within f64 range"))
    }

    /// Exact-rational core of [`Self::eval_lovasz_minpoly`].
    pub fn eval_lovasz_minpoly_exact(&self, coords: &[BigRational]) -> Result<BigRational> {
        self.eval_with_monomials(coords, |min_so_far, coord| {
            if *coord < min_so_far {
                coord.clone()
            } else {
                min_so_far
            }
        })
    }

    /// Shared evaluation engine: builds the per-coalition monomial table by
    /// dynamic programming over the lattice (`table[S] = combine(table[S\{i}],
    /// x_i)` for the lowest player `i` of `S`, `table[∅] = 1`) and contracts
    /// it against the coefficients.
    fn eval_with_monomials(
        &self,
        coords: &[BigRational],
        combine: impl Fn(BigRational, &BigRational) -> BigRational,
    ) -> Result<BigRational> {
        if coords.len() != self.n {
            return Err(Error::DimensionMismatch {
                got: coords.len(),
                expected: self.n,
            });
        }
        let size = 1usize << self.n;
        let mut table = Vec::with_capacity(size);
        table.push(BigRational::one());
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            let rest = table[mask & (mask - 1)].clone();
            table.push(combine(rest, &coords[low]));
        }
        let mut total = BigRational::zero();
        for (mask, monomial) in table.into_iter().enumerate() {
            let coeff = &self.coeffs[mask];
            if !coeff.is_zero() {
                total += coeff * monomial;
            }
        }
        Ok(total)
    }

    /// Coefficient-wise sum; both operands must share the player count.
    pub fn checked_add(&self, other: &MobiusRep) -> Result<MobiusRep> {
        self.zip_with(other, |a, b| a + b)
    }

    /// Coefficient-wise difference.
    pub fn checked_sub(&self, other: &MobiusRep) -> Result<MobiusRep> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Coefficient-wise scaling by an exact rational.
    pub fn scale(&self, factor: &BigRational) -> MobiusRep {
        MobiusRep {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &MobiusRep,
        op: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<MobiusRep> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                got: other.n,
                expected: self.n,
            });
        }
        Ok(MobiusRep {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }
}

/// A min-polynomial of bounded degree: coefficients `a_k(S)` for every
/// coalition with `|S| ≤ degree`, the `∅` entry being the constant term.
///
/// The coefficient map is kept dense over the admissible coalitions, so
/// structural equality coincides with function equality.
#[derive(Debug, Clone, PartialEq)]
pub struct MinPolynomial {
    n: usize,
    degree: usize,
    coeffs: BTreeMap<Mask, BigRational>,
}

impl MinPolynomial {
    /// Builds a min-polynomial from a (possibly sparse) coefficient map;
    /// missing coalitions of admissible cardinality are filled with zero.
    pub fn new(n: usize, degree: usize, coeffs: BTreeMap<Mask, BigRational>) -> Result<Self> {
        check_player_count(n)?;
        if degree > n {
            return Err(Error::DegreeOutOfRange { degree, n });
        }
        let full = full_mask(n);
        for &mask in coeffs.keys() {
            if mask & !full != 0 {
                return Err(Error::SubsetOutOfRange { mask, n });
            }
            if cardinality(mask) > degree {
                return Err(Error::DegreeExceeded { mask, degree });
            }
        }
        let mut dense = coeffs;
        for mask in 0..=full {
            if cardinality(mask) <= degree {
                dense.entry(mask).or_insert_with(BigRational::zero);
            }
        }
        Ok(Self {
            n,
            degree,
            coeffs: dense,
        })
    }

    /// Reads a full Möbius table as a min-polynomial of the given degree.
    ///
    /// Fails with [`Error::DegreeExceeded`] if any coalition above the degree
    /// carries a nonzero coefficient.
    pub fn from_mobius(a: &MobiusRep, degree: usize) -> Result<Self> {
        if degree > a.n() {
            return Err(Error::DegreeOutOfRange { degree, n: a.n() });
        }
        let mut coeffs = BTreeMap::new();
        for mask in 0..=full_mask(a.n()) {
            let value = a.coefficient(mask);
            if cardinality(mask) <= degree {
                coeffs.insert(mask, value.clone());
            } else if !value.is_zero() {
                return Err(Error::DegreeExceeded { mask, degree });
            }
        }
        Ok(Self {
            n: a.n(),
            degree,
            coeffs,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `a_k(S)`; panics if `|S|` exceeds the degree.
    pub fn coefficient(&self, mask: Mask) -> &BigRational {
        self.coeffs
            .get(&mask)
            .expect("coalition within the stated degree")
    }

    /// Coefficient entries keyed by coalition bitmask (every `|S| ≤ degree`
    /// present).
    pub fn coefficients(&self) -> &BTreeMap<Mask, BigRational> {
        &self.coeffs
    }

    /// Embeds into a full Möbius table by zero-filling coalitions above the
    /// degree.
    pub fn to_mobius(&self) -> MobiusRep {
        let mut coeffs = vec![BigRational::zero(); 1 << self.n];
        for (&mask, value) in &self.coeffs {
            coeffs[mask as usize] = value.clone();
        }
        MobiusRep {
            n: self.n,
            coeffs,
        }
    }
}

/// A point of the unit cube `[0,1]^n` with floating-point coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PointVector {
    coords: Vec<f64>,
}

impl PointVector {
    /// Validates that every coordinate lies in `[0, 1]` up to `1e-12`.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        for (index, &value) in coords.iter().enumerate() {
            if !value.is_finite() || !(-COORD_TOLERANCE..=1.0 + COORD_TOLERANCE).contains(&value) {
                return Err(Error::CoordinateRange { index, value });
            }
        }
        Ok(Self { coords })
    }

    /// Characteristic vector of a coalition: coordinate `i` is 1 exactly
    /// when player `i` belongs to `mask`.
    pub fn vertex(n: usize, mask: Mask) -> Self {
        Self {
            coords: (0..n)
                .map(|i| if mask & (1 << i) != 0 { 1.0 } else { 0.0 })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Exact rational view of the coordinates (every finite `f64` is a
    /// rational), clamped into `[0, 1]` so that the construction tolerance
    /// cannot leak outside the cube.
    pub fn exact_coords(&self) -> Vec<BigRational> {
        self.coords
            .iter()
            .map(|&c| BigRational::from_float(c.clamp(0.0, 1.0)).expect("finite coordinate"))
            .collect()
    }
}
