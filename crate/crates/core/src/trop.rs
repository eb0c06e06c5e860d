//! The max-plus semifield 𝕋 = ℚ ∪ {−∞}, tropical Laurent polynomials viewed
//! as functions, and the tropical determinant.
//!
//! Tropical addition is `max` and tropical multiplication is ordinary `+`.
//! Everything is exact: finite values are `Ratio<i64>`, so ties in a maximum
//! are decided by equality and never by a tolerance.
//!
//! The module axioms for a tropical module `V` over 𝕋 are not checked at
//! runtime. The law `(x + y)·v = x·v + y·v` for `x, y ∈ 𝕋` and `v ∈ V` is
//! exercised by the property tests for the polynomial module below.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// An exponent vector `m ∈ ℤⁿ`.
pub type Exponent = Vec<i64>;

/// An element of 𝕋. `NegInfinity` orders below every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropValue {
    NegInfinity,
    Finite(Rational),
}

impl TropValue {
    /// The multiplicative unit, the real number 0.
    pub const ONE: TropValue = TropValue::Finite(Ratio::new_raw(0, 1));
    /// The additive unit −∞.
    pub const ZERO: TropValue = TropValue::NegInfinity;

    pub fn finite(v: impl Into<Rational>) -> Self {
        TropValue::Finite(v.into())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TropValue::Finite(_))
    }

    pub fn as_finite(&self) -> Option<Rational> {
        match self {
            TropValue::Finite(v) => Some(*v),
            TropValue::NegInfinity => None,
        }
    }

    /// Tropical sum: `max(a, b)`.
    pub fn trop_add(self, other: TropValue) -> TropValue {
        self.max(other)
    }

    /// Tropical product: `a + b`, absorbing at −∞.
    pub fn trop_mul(self, other: TropValue) -> TropValue {
        match (self, other) {
            (TropValue::Finite(a), TropValue::Finite(b)) => TropValue::Finite(a + b),
            _ => TropValue::NegInfinity,
        }
    }
}

impl From<i64> for TropValue {
    fn from(v: i64) -> Self {
        TropValue::Finite(Rational::from_integer(v))
    }
}

impl From<Rational> for TropValue {
    fn from(v: Rational) -> Self {
        TropValue::Finite(v)
    }
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropValue::NegInfinity => f.write_str("-inf"),
            TropValue::Finite(v) => write!(f, "{v}"),
        }
    }
}

pub fn trop_add(a: TropValue, b: TropValue) -> TropValue {
    a.trop_add(b)
}

pub fn trop_mul(a: TropValue, b: TropValue) -> TropValue {
    a.trop_mul(b)
}

pub(crate) fn dot(m: &[i64], x: &[Rational]) -> Rational {
    m.iter()
        .zip(x)
        .fold(Rational::zero(), |acc, (&mi, xi)| acc + *xi * mi)
}

/// A tropical Laurent monomial `c·xᵐ`, i.e. the affine function `c + ⟨m, x⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropMonomial {
    pub exponent: Exponent,
    pub coeff: TropValue,
}

impl TropMonomial {
    pub fn new(exponent: Exponent, coeff: impl Into<TropValue>) -> Self {
        TropMonomial {
            exponent,
            coeff: coeff.into(),
        }
    }

    /// The monomial `0·xᵐ`.
    pub fn unit(exponent: Exponent) -> Self {
        TropMonomial::new(exponent, TropValue::ONE)
    }

    pub fn evaluate(&self, x: &[Rational]) -> Result<TropValue> {
        check_dim(self.exponent.len(), x.len())?;
        Ok(self
            .coeff
            .trop_mul(TropValue::Finite(dot(&self.exponent, x))))
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// A tropical Laurent polynomial `max_m (c_m + ⟨m, x⟩)` in `dim` variables.
///
/// Stored in canonical form: exponents are distinct (duplicates are merged by
/// taking the larger coefficient) and `−∞` coefficients are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropPolynomial {
    dim: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl TropPolynomial {
    /// The empty polynomial, identically −∞.
    pub fn zero(dim: usize) -> Self {
        TropPolynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomials<I>(dim: usize, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = TropMonomial>,
    {
        let mut poly = TropPolynomial::zero(dim);
        for m in monomials {
            poly.insert(m)?;
        }
        Ok(poly)
    }

    /// Convenience constructor from `(exponent, coefficient)` pairs.
    pub fn from_terms<I, E, C>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (E, C)>,
        E: Into<Exponent>,
        C: Into<TropValue>,
    {
        Self::from_monomials(
            dim,
            terms
                .into_iter()
                .map(|(e, c)| TropMonomial::new(e.into(), c)),
        )
    }

    /// Adds `m` to the polynomial (a tropical sum with a single monomial).
    pub fn insert(&mut self, m: TropMonomial) -> Result<()> {
        check_dim(self.dim, m.exponent.len())?;
        if let TropValue::Finite(c) = m.coeff {
            self.terms
                .entry(m.exponent)
                .and_modify(|old| *old = (*old).max(c))
                .or_insert(c);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: &[i64]) -> TropValue {
        self.terms
            .get(exponent)
            .map_or(TropValue::NegInfinity, |&c| TropValue::Finite(c))
    }

    /// Monomials in lexicographic exponent order.
    pub fn monomials(&self) -> impl Iterator<Item = TropMonomial> + '_ {
        self.terms
            .iter()
            .map(|(e, &c)| TropMonomial::new(e.clone(), c))
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Exponent> + '_ {
        self.terms.keys()
    }

    pub(crate) fn terms(&self) -> impl Iterator<Item = (&Exponent, Rational)> + '_ {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn evaluate(&self, x: &[Rational]) -> Result<TropValue> {
        check_dim(self.dim, x.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(e, &c)| c + dot(e, x))
            .max()
            .map_or(TropValue::NegInfinity, TropValue::Finite))
    }

    /// Exponents whose monomials attain the maximum at `x`.
    pub fn supporting_monomials(&self, x: &[Rational]) -> Result<BTreeSet<Exponent>> {
        check_dim(self.dim, x.len())?;
        let mut best: Option<Rational> = None;
        let mut support = BTreeSet::new();
        for (e, &c) in &self.terms {
            let v = c + dot(e, x);
            match best.map(|b| v.cmp(&b)) {
                Some(Ordering::Less) => {}
                Some(Ordering::Equal) => {
                    support.insert(e.clone());
                }
                None | Some(Ordering::Greater) => {
                    best = Some(v);
                    support.clear();
                    support.insert(e.clone());
                }
            }
        }
        Ok(support)
    }

    /// Pointwise tropical sum (max) of two polynomials.
    pub fn trop_add(&self, other: &TropPolynomial) -> Result<TropPolynomial> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for m in other.monomials() {
            out.insert(m)?;
        }
        Ok(out)
    }

    /// Tropical product: exponents add, coefficients add.
    pub fn trop_mul(&self, other: &TropPolynomial) -> Result<TropPolynomial> {
        check_dim(self.dim, other.dim)?;
        let mut out = TropPolynomial::zero(self.dim);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.insert(TropMonomial::new(e, ca + cb))?;
            }
        }
        Ok(out)
    }

    /// Tropical scalar multiplication `t·f`.
    pub fn scale(&self, t: TropValue) -> TropPolynomial {
        match t {
            TropValue::NegInfinity => TropPolynomial::zero(self.dim),
            TropValue::Finite(t) => TropPolynomial {
                dim: self.dim,
                terms: self.terms.iter().map(|(e, &c)| (e.clone(), c + t)).collect(),
            },
        }
    }
}

impl fmt::Display for TropPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("-inf");
        }
        f.write_str("max(")?;
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
            for (k, p) in e.iter().enumerate() {
                if *p != 0 {
                    write!(f, " + {p}*x{}", k + 1)?;
                }
            }
        }
        f.write_str(")")
    }
}

/// Returns whether `g` is extremal in the module generated by `gens`.
///
/// `g` is non-extremal exactly when it is a pointwise max of tropical
/// multiples of the other generators. An affine function with slope `m` is
/// such a max only if one of the other generators also has slope `m`, so the
/// test reduces to looking for another generator with `g`'s exponent.
pub fn is_extremal(gens: &[TropMonomial], g: &TropMonomial) -> Result<bool> {
    let position = gens.iter().position(|h| h == g).ok_or(Error::NotAMember)?;
    if !g.coeff.is_finite() {
        // −∞ is the sum of the empty family.
        return Ok(false);
    }
    let shadowed = gens
        .iter()
        .enumerate()
        .any(|(i, h)| i != position && h.exponent == g.exponent && h.coeff.is_finite());
    Ok(!shadowed)
}

/// A square matrix over 𝕋.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropMatrix {
    size: usize,
    entries: Vec<TropValue>,
}

impl TropMatrix {
    pub fn from_rows(rows: Vec<Vec<TropValue>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            check_dim(size, row.len())?;
            entries.extend(row);
        }
        Ok(TropMatrix { size, entries })
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> TropValue) -> Self {
        let entries = (0..size)
            .flat_map(|i| (0..size).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        TropMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> TropValue {
        self.entries[row * self.size + col]
    }

    /// The matrix with `row` and `col` removed.
    pub fn minor(&self, row: usize, col: usize) -> TropMatrix {
        TropMatrix::from_fn(self.size - 1, |i, j| {
            self.get(i + usize::from(i >= row), j + usize::from(j >= col))
        })
    }

    /// Tropical determinant `max_σ Σ_i t_{σ(i) i}` together with a tie flag.
    ///
    /// The flag is set when two or more permutations attain the maximum, or
    /// when the value is −∞. Every permutation is visited, so the cost is
    /// `O(k · k!)`; intended for `k ≤ 8`. The empty matrix has determinant 0.
    pub fn det(&self) -> (TropValue, bool) {
        let mut search = DetSearch {
            matrix: self,
            used: vec![false; self.size],
            best: None,
            count: 0,
        };
        search.visit(0, Rational::zero());
        match search.best {
            None => (TropValue::NegInfinity, true),
            Some(v) => (TropValue::Finite(v), search.count >= 2),
        }
    }
}

struct DetSearch<'a> {
    matrix: &'a TropMatrix,
    used: Vec<bool>,
    best: Option<Rational>,
    count: usize,
}

impl DetSearch<'_> {
    // Column `col` is matched to an unused row; −∞ entries prune the branch.
    fn visit(&mut self, col: usize, acc: Rational) {
        let n = self.matrix.size;
        if col == n {
            match self.best.map(|b| acc.cmp(&b)) {
                Some(Ordering::Less) => {}
                Some(Ordering::Equal) => self.count += 1,
                None | Some(Ordering::Greater) => {
                    self.best = Some(acc);
                    self.count = 1;
                }
            }
            return;
        }
        for row in 0..n {
            if self.used[row] {
                continue;
            }
            if let TropValue::Finite(t) = self.matrix.get(row, col) {
                self.used[row] = true;
                self.visit(col + 1, acc + t);
                self.used[row] = false;
            }
        }
    }
}

pub fn trop_det(m: &TropMatrix) -> (TropValue, bool) {
    m.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x)).collect()
    }

    fn line() -> TropPolynomial {
        TropPolynomial::from_terms(2, [(vec![0, 0], 0), (vec![1, 0], 0), (vec![0, 1], 0)]).unwrap()
    }

    #[test]
    fn add_and_mul_examples() {
        let neg = TropValue::NegInfinity;
        assert_eq!(trop_add(3.into(), 5.into()), 5.into());
        assert_eq!(trop_add(neg, 2.into()), 2.into());
        assert_eq!(trop_add(neg, neg), neg);
        assert_eq!(trop_mul(3.into(), 5.into()), 8.into());
        assert_eq!(trop_mul(TropValue::ONE, q(7, 3).into()), q(7, 3).into());
        assert_eq!(trop_mul(neg, 7.into()), neg);
    }

    #[test]
    fn det_examples() {
        let n = TropValue::NegInfinity;
        let id = TropMatrix::from_rows(vec![vec![0.into(), n], vec![n, 0.into()]]).unwrap();
        assert_eq!(id.det(), (0.into(), false));
        let m = TropMatrix::from_rows(vec![vec![1.into(), 2.into()], vec![3.into(), 4.into()]])
            .unwrap();
        // 1 + 4 = 2 + 3: both permutations are optimal.
        assert_eq!(m.det(), (5.into(), true));
        let strict = TropMatrix::from_rows(vec![vec![1.into(), 2.into()], vec![3.into(), 5.into()]])
            .unwrap();
        assert_eq!(strict.det(), (6.into(), false));
        let z = TropMatrix::from_fn(2, |_, _| 0.into());
        assert_eq!(z.det(), (0.into(), true));
        let all_neg = TropMatrix::from_fn(3, |_, _| n);
        assert_eq!(all_neg.det(), (n, true));
    }

    #[test]
    fn non_square_rows_rejected() {
        let err = TropMatrix::from_rows(vec![vec![0.into(), 1.into()], vec![2.into()]]);
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn minor_drops_row_and_column() {
        let m = TropMatrix::from_fn(3, |i, j| ((3 * i + j) as i64).into());
        let minor = m.minor(1, 0);
        assert_eq!(minor.get(0, 0), 1.into());
        assert_eq!(minor.get(1, 1), 8.into());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(line().evaluate(&ints(&[0, 0])).unwrap(), 0.into());
        let empty = TropPolynomial::zero(2);
        assert_eq!(empty.evaluate(&ints(&[3, -1])).unwrap(), TropValue::NegInfinity);
        let affine = TropPolynomial::from_terms(2, [(vec![1, 1], 2)]).unwrap();
        assert_eq!(affine.evaluate(&ints(&[3, 4])).unwrap(), 9.into());
        assert!(matches!(
            affine.evaluate(&ints(&[1])),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn supporting_monomial_examples() {
        let s = line().supporting_monomials(&ints(&[0, 0])).unwrap();
        assert_eq!(s.len(), 3);
        let f = TropPolynomial::from_terms(2, [(vec![0, 0], 0), (vec![1, 0], 0)]).unwrap();
        let s = f.supporting_monomials(&ints(&[5, 0])).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![vec![1, 0]]);
        let s = f.supporting_monomials(&ints(&[0, 7])).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn duplicates_merge_and_neg_infinity_dropped() {
        let f = TropPolynomial::from_terms(
            1,
            [
                (vec![1], TropValue::from(0)),
                (vec![1], TropValue::from(3)),
                (vec![2], TropValue::NegInfinity),
            ],
        )
        .unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.coefficient(&[1]), 3.into());
        assert_eq!(f.coefficient(&[2]), TropValue::NegInfinity);
    }

    #[test]
    fn extremal_examples() {
        let a = TropMonomial::unit(vec![0, 0]);
        let b = TropMonomial::unit(vec![1, 0]);
        let c = TropMonomial::unit(vec![0, 1]);
        assert!(is_extremal(&[a.clone(), b.clone()], &a).unwrap());
        assert!(is_extremal(&[a.clone(), b.clone(), c.clone()], &b).unwrap());

        let low = TropMonomial::new(vec![0, 0], 0);
        let high = TropMonomial::new(vec![0, 0], 1);
        // Before merging, the smaller copy is a scalar multiple of the larger.
        assert!(!is_extremal(&[low.clone(), high.clone()], &low).unwrap());
        let merged = TropPolynomial::from_monomials(2, [low, high]).unwrap();
        let gens: Vec<_> = merged.monomials().collect();
        assert_eq!(gens.len(), 1);
        assert!(is_extremal(&gens, &gens[0]).unwrap());

        assert_eq!(is_extremal(&[a], &c), Err(Error::NotAMember));
    }

    #[test]
    fn polynomial_product_is_minkowski_sum() {
        let f = TropPolynomial::from_terms(1, [(vec![0], 0), (vec![1], 1)]).unwrap();
        let g = f.trop_mul(&f).unwrap();
        // (0 ⊕ 1x)² = 0 ⊕ 1x ⊕ 2x², the cross term max(1, 1) merges.
        assert_eq!(g.len(), 3);
        assert_eq!(g.coefficient(&[1]), 1.into());
        assert_eq!(g.coefficient(&[2]), 2.into());
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..8).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn trop_value() -> impl Strategy<Value = TropValue> {
        prop_oneof![
            1 => Just(TropValue::NegInfinity),
            6 => rational().prop_map(TropValue::Finite),
        ]
    }

    fn polynomial() -> impl Strategy<Value = TropPolynomial> {
        prop::collection::vec(((-3i64..4, -3i64..4), rational()), 1..8).prop_map(|terms| {
            TropPolynomial::from_terms(2, terms.into_iter().map(|((a, b), c)| (vec![a, b], c)))
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn semiring_laws(a in trop_value(), b in trop_value(), c in trop_value()) {
            prop_assert_eq!(trop_add(a, b), trop_add(b, a));
            prop_assert_eq!(trop_mul(a, b), trop_mul(b, a));
            prop_assert_eq!(trop_add(trop_add(a, b), c), trop_add(a, trop_add(b, c)));
            prop_assert_eq!(trop_mul(trop_mul(a, b), c), trop_mul(a, trop_mul(b, c)));
            prop_assert_eq!(
                trop_mul(a, trop_add(b, c)),
                trop_add(trop_mul(a, b), trop_mul(a, c))
            );
            prop_assert_eq!(trop_mul(a, TropValue::ONE), a);
            prop_assert_eq!(trop_add(a, TropValue::ZERO), a);
            prop_assert_eq!(trop_mul(a, TropValue::ZERO), TropValue::ZERO);
        }

        #[test]
        fn evaluate_is_convex(
            f in polynomial(),
            x in (rational(), rational()),
            y in (rational(), rational()),
            t in 0i64..=6,
        ) {
            let t = Rational::new(t, 6);
            let s = Rational::from_integer(1) - t;
            let mid = [t * x.0 + s * y.0, t * x.1 + s * y.1];
            let fx = f.evaluate(&[x.0, x.1]).unwrap().as_finite().unwrap();
            let fy = f.evaluate(&[y.0, y.1]).unwrap().as_finite().unwrap();
            let fm = f.evaluate(&mid).unwrap().as_finite().unwrap();
            prop_assert!(fm <= t * fx + s * fy);
        }

        #[test]
        fn support_nonempty_and_attains_max(f in polynomial(), x in (rational(), rational())) {
            let x = [x.0, x.1];
            let support = f.supporting_monomials(&x).unwrap();
            prop_assert!(!support.is_empty());
            let value = f.evaluate(&x).unwrap();
            for e in support {
                prop_assert_eq!(f.coefficient(&e).trop_mul(TropValue::Finite(dot(&e, &x))), value);
            }
        }

        #[test]
        fn scalar_action_distributes(f in polynomial(), a in trop_value(), b in trop_value()) {
            // (a ⊕ b)·f = a·f ⊕ b·f
            let lhs = f.scale(trop_add(a, b));
            let rhs = f.scale(a).trop_add(&f.scale(b)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
