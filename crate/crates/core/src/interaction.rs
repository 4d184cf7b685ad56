//! Power and interaction indices induced by least-squares approximations.
//!
//! Alongside the classical Shapley and Banzhaf power indices and the
//! Banzhaf interaction index, this module implements the interaction index
//! obtained by reading off the leading coefficients of the best degree-`s`
//! min-polynomial approximations (here called `I_M`). Every index comes in
//! two algebraically independent forms — a Möbius-coefficient sum and a
//! discrete-derivative sum — that the test suites require to agree exactly.
//!
//! The `I_M` coefficients are moments of beta distributions; the
//! [`MomentSequence`] machinery checks the finite Hausdorff
//! (complete-monotonicity) condition that characterizes when a coefficient
//! family defines a cardinal-probabilistic index.

use num_rational::BigRational;
use num_traits::Zero;

use crate::combinatorics::{beta, binomial, factorial};
use crate::set_function::{MobiusRep, SetFunction};
use crate::subset::{cardinality, full_mask, submasks, supersets, Mask};
use crate::{Error, Result};

/// Which interaction index a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexKind {
    Banzhaf,
    Im,
}

impl IndexKind {
    pub fn name(self) -> &'static str {
        match self {
            IndexKind::Banzhaf => "banzhaf",
            IndexKind::Im => "im",
        }
    }
}

/// Which of the two equivalent summation forms to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexForm {
    /// Sum over supersets weighted against Möbius coefficients.
    Mobius,
    /// Sum of discrete derivatives over the complement.
    Derivative,
}

/// A complete table of interaction values, one exact rational per
/// coalition.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionTable {
    n: usize,
    kind: IndexKind,
    values: Vec<BigRational>,
}

impl InteractionTable {
    pub fn new(n: usize, kind: IndexKind, values: Vec<BigRational>) -> Result<Self> {
        if n == 0 || n > crate::MAX_PLAYERS {
            return Err(Error::PlayerCount(n));
        }
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(Error::TableLength {
                got: values.len(),
                expected,
            });
        }
        Ok(Self { n, kind, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> IndexKind {
        self.kind
    }

    pub fn value(&self, mask: Mask) -> &BigRational {
        &self.values[mask as usize]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

/// Discrete `S`-derivative of `v` at `T`:
/// `Δ_S v(T) = Σ_{R⊆S} (−1)^{|S|−|R|} v(R∪T)`, requiring `S ∩ T = ∅`.
pub fn discrete_derivative(v: &SetFunction, s: Mask, t: Mask) -> Result<BigRational> {
    if s & t != 0 {
        return Err(Error::OverlappingSubsets { s, t });
    }
    let full = full_mask(v.n());
    if (s | t) & !full != 0 {
        return Err(Error::SubsetOutOfRange { mask: (s | t) & !full, n: v.n() });
    }
    let s_card = cardinality(s);
    let mut total = BigRational::zero();
    for r in submasks(s) {
        let term = v.value(r | t);
        if (s_card - cardinality(r)).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

fn check_player(v: &SetFunction, player: usize) -> Result<Mask> {
    if player >= v.n() {
        return Err(Error::PlayerOutOfRange {
            player,
            n: v.n(),
        });
    }
    Ok(1 << player)
}

/// Sums `weight(|T|) · [v(T∪{i}) − v(T)]` over all coalitions avoiding the
/// player — the common shape of every power index here.
fn marginal_sum(
    v: &SetFunction,
    player_mask: Mask,
    weight: impl Fn(usize) -> BigRational,
) -> BigRational {
    let complement = full_mask(v.n()) & !player_mask;
    let mut total = BigRational::zero();
    for t in submasks(complement) {
        let marginal = v.value(t | player_mask) - v.value(t);
        if !marginal.is_zero() {
            total += weight(cardinality(t)) * marginal;
        }
    }
    total
}

/// Shapley power index
/// `φ_Sh(v,i) = Σ_{T⊆N∖{i}} [t!(n−1−t)!/n!] · [v(T∪{i}) − v(T)]`.
pub fn shapley_power(v: &SetFunction, player: usize) -> Result<BigRational> {
    let mask = check_player(v, player)?;
    let n = v.n();
    let n_factorial = factorial(n);
    Ok(marginal_sum(v, mask, |t| {
        BigRational::new(factorial(t) * factorial(n - 1 - t), n_factorial.clone())
    }))
}

/// Banzhaf power index
/// `φ_B(v,i) = 2^{−(n−1)} Σ_{T⊆N∖{i}} [v(T∪{i}) − v(T)]`.
pub fn banzhaf_power(v: &SetFunction, player: usize) -> Result<BigRational> {
    let mask = check_player(v, player)?;
    let scale = BigRational::new(1.into(), num_bigint::BigInt::from(1) << (v.n() - 1));
    Ok(marginal_sum(v, mask, |_| scale.clone()))
}

/// Banzhaf interaction index of a coalition, in either form:
/// derivative form `Σ_{T⊆N∖S} 2^{−(n−s)} Δ_S v(T)` or Möbius form
/// `Σ_{T⊇S} 2^{−(t−s)} a(T)`.
pub fn banzhaf_interaction(v: &SetFunction, s: Mask, form: IndexForm) -> BigRational {
    let n = v.n();
    assert!(s & !full_mask(n) == 0, "coalition outside the player set");
    let s_card = cardinality(s);
    match form {
        IndexForm::Derivative => {
            let scale = BigRational::new(1.into(), num_bigint::BigInt::from(1) << (n - s_card));
            let mut total = BigRational::zero();
            for t in submasks(full_mask(n) & !s) {
                total += discrete_derivative(v, s, t).expect("disjoint by construction");
            }
            scale * total
        }
        IndexForm::Mobius => banzhaf_interaction_mobius(&v.mobius_transform(), s),
    }
}

/// Möbius form of the Banzhaf interaction index, `Σ_{T⊇S} 2^{−(t−s)} a(T)`,
/// for callers that already hold the transform.
pub fn banzhaf_interaction_mobius(a: &MobiusRep, s: Mask) -> BigRational {
    let n = a.n();
    assert!(s & !full_mask(n) == 0, "coalition outside the player set");
    let s_card = cardinality(s);
    let mut total = BigRational::zero();
    for t in supersets(s, n) {
        let coeff = a.coefficient(t);
        if !coeff.is_zero() {
            total += BigRational::new(
                1.into(),
                num_bigint::BigInt::from(1) << (cardinality(t) - s_card),
            ) * coeff;
        }
    }
    total
}

/// Möbius-form moment coefficient
/// `q_t^s = C(2s+1, s+1)/C(s+t+1, s+1) = B(t+1, s+1)/B(s+1, s+1)`.
pub fn q_coefficient(s: usize, t: usize) -> Result<BigRational> {
    if s > t {
        return Err(Error::MomentOrder { s, t });
    }
    Ok(BigRational::new(
        binomial(2 * s + 1, s + 1),
        binomial(s + t + 1, s + 1),
    ))
}

/// Derivative-form coefficient
/// `p_t^s(n) = B(n−t+1, s+t+1)/B(s+1, s+1)` for `0 ≤ t ≤ n−s`.
pub fn p_coefficient(s: usize, t: usize, n: usize) -> Result<BigRational> {
    if s > n || t > n - s {
        return Err(Error::CoefficientRange { s, t, n });
    }
    Ok(beta(n - t + 1, s + t + 1) / beta(s + 1, s + 1))
}

/// The interaction index read off the leading coefficients of the best
/// degree-`|S|` min-polynomial approximations, in either form:
/// Möbius form `Σ_{T⊇S} q_t^s a(T)` or derivative form
/// `Σ_{T⊆N∖S} p_t^s(n) Δ_S v(T)`.
pub fn im_index(v: &SetFunction, s: Mask, form: IndexForm) -> BigRational {
    let n = v.n();
    assert!(s & !full_mask(n) == 0, "coalition outside the player set");
    match form {
        IndexForm::Mobius => im_index_mobius(&v.mobius_transform(), s),
        IndexForm::Derivative => {
            let s_card = cardinality(s);
            let mut total = BigRational::zero();
            for t in submasks(full_mask(n) & !s) {
                let derivative = discrete_derivative(v, s, t).expect("disjoint by construction");
                if !derivative.is_zero() {
                    total += p_coefficient(s_card, cardinality(t), n).expect("in range")
                        * derivative;
                }
            }
            total
        }
    }
}

/// Möbius form of the index, `Σ_{T⊇S} q_t^s a(T)`, for callers that already
/// hold the transform.
pub fn im_index_mobius(a: &MobiusRep, s: Mask) -> BigRational {
    let n = a.n();
    assert!(s & !full_mask(n) == 0, "coalition outside the player set");
    let s_card = cardinality(s);
    let mut total = BigRational::zero();
    for t in supersets(s, n) {
        let coeff = a.coefficient(t);
        if !coeff.is_zero() {
            total += q_coefficient(s_card, cardinality(t)).expect("s <= t") * coeff;
        }
    }
    total
}

/// Power index associated with [`im_index`], computed directly:
/// `Σ_{T⊆N∖{i}} [6(n−t)!(t+1)!/(n+2)!] · [v(T∪{i}) − v(T)]`.
pub fn im_power(v: &SetFunction, player: usize) -> Result<BigRational> {
    let mask = check_player(v, player)?;
    let n = v.n();
    let denom = factorial(n + 2);
    Ok(marginal_sum(v, mask, |t| {
        BigRational::new(6 * factorial(n - t) * factorial(t + 1), denom.clone())
    }))
}

/// Fills a complete table of interaction values for the chosen index.
pub fn interaction_table(v: &SetFunction, kind: IndexKind, form: IndexForm) -> InteractionTable {
    let n = v.n();
    // The Möbius transform is shared across coalitions for the Möbius form.
    let a = match form {
        IndexForm::Mobius => Some(v.mobius_transform()),
        IndexForm::Derivative => None,
    };
    let values = (0..=full_mask(n))
        .map(|s| match (kind, &a) {
            (IndexKind::Banzhaf, Some(a)) => banzhaf_interaction_mobius(a, s),
            (IndexKind::Banzhaf, None) => banzhaf_interaction(v, s, IndexForm::Derivative),
            (IndexKind::Im, Some(a)) => im_index_mobius(a, s),
            (IndexKind::Im, None) => im_index(v, s, IndexForm::Derivative),
        })
        .collect();
    InteractionTable {
        n,
        kind,
        values,
    }
}

/// Inverts a complete `I_M` table back to Möbius coefficients via
/// `a(S) = Σ_{T⊇S} h_t^s · I_M(v,T)` with
/// `h_t^s = (−1)^{t−s} C(s+t, t)/C(2t, t)`.
pub fn im_inverse(table: &InteractionTable) -> Result<MobiusRep> {
    if table.kind() != IndexKind::Im {
        return Err(Error::TableKind {
            expected: IndexKind::Im.name(),
            got: table.kind().name(),
        });
    }
    let n = table.n();
    let mut coeffs = Vec::with_capacity(1 << n);
    for s in 0..=full_mask(n) {
        let s_card = cardinality(s);
        let mut total = BigRational::zero();
        for t in supersets(s, n) {
            let value = table.value(t);
            if value.is_zero() {
                continue;
            }
            let t_card = cardinality(t);
            let mut h = BigRational::new(
                binomial(s_card + t_card, t_card),
                binomial(2 * t_card, t_card),
            );
            if (t_card - s_card) % 2 == 1 {
                h = -h;
            }
            total += h * value;
        }
        coeffs.push(total);
    }
    MobiusRep::new(n, coeffs)
}

/// A truncated moment sequence `q_s^s, q_{s+1}^s, …` of base order `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    s: usize,
    terms: Vec<BigRational>,
}

impl MomentSequence {
    /// Builds a sequence whose `i`-th entry is `q_{s+i}^s`; must be
    /// nonempty.
    pub fn new(s: usize, terms: Vec<BigRational>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InsufficientMoments { needed: 1, got: 0 });
        }
        Ok(Self { s, terms })
    }

    /// The moment sequence of the `I_M` coefficients, with terms up to
    /// `q_{t_max}^s`.
    pub fn im_moments(s: usize, t_max: usize) -> Result<Self> {
        if t_max < s {
            return Err(Error::MomentOrder { s, t: t_max });
        }
        let terms = (s..=t_max)
            .map(|t| q_coefficient(s, t).expect("s <= t"))
            .collect();
        Ok(Self { s, terms })
    }

    pub fn base_order(&self) -> usize {
        self.s
    }

    pub fn terms(&self) -> &[BigRational] {
        &self.terms
    }

    /// `q_t^s`, if the sequence extends that far.
    pub fn q(&self, t: usize) -> Option<&BigRational> {
        t.checked_sub(self.s).and_then(|i| self.terms.get(i))
    }
}

/// Converts moment coefficients to derivative-form coefficients through
/// the alternating binomial sum
/// `p_t^s(n) = Σ_{i=s+t}^{n} (−1)^{i−s−t} C(n−s−t, i−s−t) q_i^s`,
/// returning `p_0^s(n), …, p_{n−s}^s(n)`.
pub fn q_to_p(moments: &MomentSequence, n: usize) -> Result<Vec<BigRational>> {
    let s = moments.base_order();
    if s > n {
        return Err(Error::CoefficientRange { s, t: 0, n });
    }
    let needed = n - s + 1;
    if moments.terms().len() < needed {
        return Err(Error::InsufficientMoments {
            needed,
            got: moments.terms().len(),
        });
    }
    let mut out = Vec::with_capacity(needed);
    for t in 0..=n - s {
        let mut total = BigRational::zero();
        for i in s + t..=n {
            let term = BigRational::from_integer(binomial(n - s - t, i - s - t))
                * moments.q(i).expect("length checked");
            if (i - s - t).is_multiple_of(2) {
                total += term;
            } else {
                total -= term;
            }
        }
        out.push(total);
    }
    Ok(out)
}

/// Finite truncation of the Hausdorff moment condition: returns `true` when
/// every forward alternating difference
/// `Σ_{i=0}^{m} (−1)^i C(m,i) q_{t+i}^s` with `0 ≤ m ≤ m_max` that the
/// sequence can form is nonnegative.
///
/// A `true` answer means "no violation found up to `m_max`", not a proof of
/// complete monotonicity; the full condition quantifies over all `m`.
pub fn hausdorff_check(moments: &MomentSequence, m_max: usize) -> Result<bool> {
    let len = moments.terms().len();
    if len < m_max + 1 {
        return Err(Error::InsufficientMoments {
            needed: m_max + 1,
            got: len,
        });
    }
    let s = moments.base_order();
    for m in 0..=m_max {
        for t in s..=s + len - 1 - m {
            let mut total = BigRational::zero();
            for i in 0..=m {
                let term = BigRational::from_integer(binomial(m, i))
                    * moments.q(t + i).expect("within length");
                if i % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            if total < BigRational::zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Σ_{T⊆N∖S} p_{|T|}^s(n)` over coalition sizes with multiplicity, which a
/// cardinal-probabilistic family must sum to one.
pub fn p_normalization(s: usize, n: usize) -> Result<BigRational> {
    if s > n {
        return Err(Error::CoefficientRange { s, t: 0, n });
    }
    let mut total = BigRational::zero();
    for t in 0..=n - s {
        total += BigRational::from_integer(binomial(n - s, t)) * p_coefficient(s, t, n)?;
    }
    Ok(total)
}
