//! The section module `Γ(X, O(D))` of a toric divisor, generated by the
//! monomials `xᵐ` with `div(xᵐ) + D ≥ 0`.
//!
//! Also provides the slope counts behind `h⁰_a` and `h⁰_b`, the tropical
//! Vandermonde section through `l − 1` prescribed points, and the cycle-sum
//! genericity test for point configurations.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divisor::{LatticePoints, ToricDivisor};
use crate::error::{Error, Result};
use crate::fan::{Fan, LatticeVector};
use crate::trop::{is_extremal, Rational, TropMatrix, TropMonomial, TropPolynomial, TropValue};
use crate::DEFAULT_SEED;

/// Number of sample points used by [`h0_a`] and [`h0_b`].
pub const SLOPE_SAMPLES: usize = 16;

/// Upper bound on generators and points for [`is_generic_configuration`].
pub const GENERIC_BRUTE_FORCE_LIMIT: usize = 7;

/// `l_M(x)`: the number of distinct local slopes of a module at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SlopeCount(pub usize);

/// A finitely generated monomial section module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionModule<'f> {
    divisor: ToricDivisor<'f>,
    generators: Vec<LatticeVector>,
}

impl<'f> SectionModule<'f> {
    pub fn divisor(&self) -> &ToricDivisor<'f> {
        &self.divisor
    }

    pub fn fan(&self) -> &'f Fan {
        self.divisor.fan()
    }

    /// Exponents of the generators, in lexicographic order.
    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Generators as monomials `0·xᵐ`.
    pub fn monomials(&self) -> Vec<TropMonomial> {
        self.generators
            .iter()
            .map(|m| TropMonomial::unit(m.to_vec()))
            .collect()
    }

    /// Generators as one-term polynomials, i.e. as functions on ℝ².
    pub fn sections(&self) -> Vec<TropPolynomial> {
        self.monomials()
            .into_iter()
            .map(|m| TropPolynomial::from_monomials(2, [m]).expect("two variables"))
            .collect()
    }

    /// Whether each generator is extremal in the module.
    pub fn generators_extremal(&self) -> Result<bool> {
        let gens = self.monomials();
        for g in &gens {
            if !is_extremal(&gens, g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `Γ(X, O(D))`: the monomials indexed by `P(D) ∩ M`.
pub fn global_sections<'f>(fan: &'f Fan, d: &ToricDivisor<'f>) -> Result<SectionModule<'f>> {
    if fan != d.fan() {
        return Err(Error::FanMismatch);
    }
    fan.require_smooth()?;
    match d.polytope().lattice_points() {
        LatticePoints::Finite(generators) => Ok(SectionModule {
            divisor: d.clone(),
            generators,
        }),
        LatticePoints::Unbounded => Err(Error::Unbounded),
    }
}

// Local slopes of `sections` at `x`, or None when `x` lies on the corner
// locus of some section.
fn slopes_at(sections: &[TropPolynomial], x: &[Rational]) -> Result<Option<BTreeSet<Vec<i64>>>> {
    let mut slopes = BTreeSet::new();
    for s in sections {
        let support = s.supporting_monomials(x)?;
        if support.len() != 1 {
            return Ok(None);
        }
        slopes.extend(support);
    }
    Ok(Some(slopes))
}

fn check_point(x: &[Rational]) -> Result<()> {
    if x.len() == 2 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: 2,
            got: x.len(),
        })
    }
}

/// Counts the distinct slopes of the generators near `x`.
///
/// A monomial is affine everywhere, so every generator contributes its own
/// exponent and the count equals the number of generators.
pub fn local_slope_count(module: &SectionModule<'_>, x: &[Rational]) -> Result<SlopeCount> {
    check_point(x)?;
    if module.is_empty() {
        return Err(Error::EmptyModule);
    }
    let sections = module.sections();
    let slopes = slopes_at(&sections, x)?.expect("monomials have no corners");
    debug_assert_eq!(slopes.len(), module.len());
    Ok(SlopeCount(slopes.len()))
}

fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-1000..=1000), rng.gen_range(1..=97))
}

/// Random points of ℝ² off the corner loci of all generators.
pub fn sample_points<R: Rng + ?Sized>(
    module: &SectionModule<'_>,
    count: usize,
    rng: &mut R,
) -> Result<Vec<[Rational; 2]>> {
    let sections = module.sections();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = [random_rational(rng), random_rational(rng)];
        if slopes_at(&sections, &x)?.is_some() {
            out.push(x);
        }
    }
    Ok(out)
}

/// `h⁰_a`: the largest `k` for which some `k` generators have `k` distinct
/// slopes at every sampled point.
pub fn h0_a_with<R: Rng + ?Sized>(module: &SectionModule<'_>, rng: &mut R) -> Result<usize> {
    if module.is_empty() {
        return Ok(0);
    }
    let samples = sample_points(module, SLOPE_SAMPLES, rng)?;
    let sections = module.sections();
    for k in (1..=sections.len()).rev() {
        let chosen = &sections[..k];
        let mut ok = true;
        for x in &samples {
            match slopes_at(chosen, x)? {
                Some(s) if s.len() == k => {}
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok(k);
        }
    }
    Ok(0)
}

/// `h⁰_b = min_x l_Γ(x)` over sampled points.
pub fn h0_b_with<R: Rng + ?Sized>(module: &SectionModule<'_>, rng: &mut R) -> Result<usize> {
    if module.is_empty() {
        return Ok(0);
    }
    let samples = sample_points(module, SLOPE_SAMPLES, rng)?;
    samples
        .iter()
        .map(|x| local_slope_count(module, x).map(|c| c.0))
        .try_fold(usize::MAX, |acc, c| c.map(|c| acc.min(c)))
}

pub fn h0_a(module: &SectionModule<'_>) -> Result<usize> {
    h0_a_with(module, &mut ChaCha8Rng::seed_from_u64(DEFAULT_SEED))
}

pub fn h0_b(module: &SectionModule<'_>) -> Result<usize> {
    h0_b_with(module, &mut ChaCha8Rng::seed_from_u64(DEFAULT_SEED))
}

/// The tropical Vandermonde section
/// `V(x) = det_trop [s_j(x); s_j(p_1); …; s_j(p_{l−1})]`.
///
/// Expanding along the first row, the coefficient of `s_i` is the tropical
/// determinant of the matrix `(s_j(p_k))` with column `i` removed.
pub fn vandermonde_section(module: &SectionModule<'_>, points: &[Vec<Rational>]) -> Result<TropPolynomial> {
    let l = module.len();
    if l == 0 {
        return Err(Error::EmptyModule);
    }
    if points.len() != l - 1 {
        return Err(Error::PointCount {
            expected: l - 1,
            got: points.len(),
        });
    }
    for p in points {
        check_point(p)?;
    }
    let values: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            module
                .generators
                .iter()
                .map(|m| p[0] * m.x + p[1] * m.y)
                .collect()
        })
        .collect();
    let mut section = TropPolynomial::zero(2);
    for (i, m) in module.generators.iter().enumerate() {
        let cofactor = TropMatrix::from_fn(l - 1, |row, col| {
            let j = col + usize::from(col >= i);
            TropValue::Finite(values[row][j])
        });
        let (t, _) = cofactor.det();
        section.insert(TropMonomial::new(m.to_vec(), t))?;
    }
    Ok(section)
}

/// Whether the divisor of `s` passes through `x`: two monomials of `s` attain
/// the maximum there.
pub fn passes_through(s: &TropPolynomial, x: &[Rational]) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    Ok(s.supporting_monomials(x)?.len() >= 2)
}

/// The cycle sum `Σ_j (s_{i_j}(x_j) − s_{i_{j+1}}(x_j))` with `i_{k+1} = i_1`.
pub fn cycle_sum(generators: &[LatticeVector], cycle: &[usize], points: &[&[Rational]]) -> Rational {
    let k = cycle.len();
    (0..k)
        .map(|j| {
            let d = generators[cycle[j]] - generators[cycle[(j + 1) % k]];
            points[j][0] * d.x + points[j][1] * d.y
        })
        .sum()
}

/// True iff no cycle of `k ≥ 2` distinct generators evaluated at `k`
/// distinct given points has cycle sum exactly zero.
///
/// Brute force over all ordered sequences, limited to
/// [`GENERIC_BRUTE_FORCE_LIMIT`] generators and points.
pub fn is_generic_configuration(module: &SectionModule<'_>, points: &[Vec<Rational>]) -> Result<bool> {
    generic_for_exponents(module.generators(), points)
}

/// [`is_generic_configuration`] for an explicit list of generator exponents.
pub fn generic_for_exponents(generators: &[LatticeVector], points: &[Vec<Rational>]) -> Result<bool> {
    for (what, got) in [("generators", generators.len()), ("points", points.len())] {
        if got > GENERIC_BRUTE_FORCE_LIMIT {
            return Err(Error::TooLarge {
                what,
                limit: GENERIC_BRUTE_FORCE_LIMIT,
                got,
            });
        }
    }
    for p in points {
        check_point(p)?;
    }
    // Clear denominators so the search runs on integers.
    let scale = points
        .iter()
        .flatten()
        .fold(1i128, |acc, c| num_integer::lcm(acc, i128::from(*c.denom())));
    let coords: Vec<[i128; 2]> = points
        .iter()
        .map(|p| {
            let s = |c: &Rational| i128::from(*c.numer()) * (scale / i128::from(*c.denom()));
            [s(&p[0]), s(&p[1])]
        })
        .collect();
    let l = generators.len();
    // step[a][b][p] = s_a(p) − s_b(p), scaled.
    let step: Vec<Vec<Vec<i128>>> = (0..l)
        .map(|a| {
            (0..l)
                .map(|b| {
                    let d = generators[a] - generators[b];
                    coords
                        .iter()
                        .map(|c| c[0] * i128::from(d.x) + c[1] * i128::from(d.y))
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut search = CycleSearch {
        step: &step,
        used_gen: vec![false; l],
        used_pt: vec![false; coords.len()],
    };
    // Rotating a cycle leaves its sum unchanged, so the first generator is
    // taken to be the smallest index in the cycle.
    for first in 0..l {
        search.used_gen[first] = true;
        let found = search.extend(first, first, 1, 0);
        search.used_gen[first] = false;
        if found {
            return Ok(false);
        }
    }
    Ok(true)
}

struct CycleSearch<'a> {
    step: &'a [Vec<Vec<i128>>],
    used_gen: Vec<bool>,
    used_pt: Vec<bool>,
}

impl CycleSearch<'_> {
    // `last` is the most recent generator; a point is assigned to the step
    // leaving it, either to a new generator or back to `first`.
    fn extend(&mut self, first: usize, last: usize, len: usize, acc: i128) -> bool {
        for p in 0..self.used_pt.len() {
            if self.used_pt[p] {
                continue;
            }
            self.used_pt[p] = true;
            if len >= 2 && acc + self.step[last][first][p] == 0 {
                self.used_pt[p] = false;
                return true;
            }
            for next in first + 1..self.used_gen.len() {
                if self.used_gen[next] {
                    continue;
                }
                self.used_gen[next] = true;
                let found = self.extend(first, next, len + 1, acc + self.step[last][next][p]);
                self.used_gen[next] = false;
                if found {
                    self.used_pt[p] = false;
                    return true;
                }
            }
            self.used_pt[p] = false;
        }
        false
    }
}
