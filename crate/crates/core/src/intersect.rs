//! Intersection numbers of toric divisors on smooth complete surfaces and
//! the Riemann-Roch inequality
//! `h⁰(D) + h⁰(K − D) ≥ χ + ½·D·(D − K)`.

use num_traits::Zero;
use serde::Serialize;

use crate::divisor::{canonical_divisor, H0Value, ToricDivisor};
use crate::error::{Error, Result};
use crate::fan::{Fan, LatticeVector};
use crate::json;
use crate::trop::Rational;

fn require_surface(fan: &Fan) -> Result<()> {
    fan.require_smooth()?;
    fan.require_complete()
}

fn index_of(fan: &Fan, ray: LatticeVector) -> Result<usize> {
    fan.ray_index(ray).ok_or(Error::UnknownRay(ray))
}

/// `D_ρ₁ · D_ρ₂` for distinct rays: 1 if they span a cone, else 0.
pub fn ray_intersection(fan: &Fan, r1: LatticeVector, r2: LatticeVector) -> Result<i64> {
    require_surface(fan)?;
    let (i, j) = (index_of(fan, r1)?, index_of(fan, r2)?);
    if i == j {
        return Err(Error::SameRay(r1));
    }
    Ok(i64::from(fan.spans_cone(i, j)))
}

/// `D_ρ²`: the integer `b` with `u₁ + u₂ + b·u = 0`, where `u₁`, `u₂` are the
/// rays adjacent to `u`.
pub fn self_intersection(fan: &Fan, ray: LatticeVector) -> Result<i64> {
    require_surface(fan)?;
    let i = index_of(fan, ray)?;
    self_intersection_at(fan, i)
}

fn self_intersection_at(fan: &Fan, i: usize) -> Result<i64> {
    let u = fan.rays()[i];
    let (a, b) = fan.neighbours(i)?;
    let s = fan.rays()[a] + fan.rays()[b];
    // b·u = −s; u is primitive so a nonzero coordinate pins b down.
    let (num, den) = if u.x != 0 { (-s.x, u.x) } else { (-s.y, u.y) };
    if num % den != 0 {
        return Err(Error::NoIntegerSolution(u));
    }
    let b = num / den;
    if !(s + b * u).is_zero() {
        return Err(Error::NoIntegerSolution(u));
    }
    Ok(b)
}

/// The symmetric matrix `(D_ρ · D_ρ′)` indexed like [`Fan::rays`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    entries: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    pub fn new(fan: &Fan) -> Result<Self> {
        require_surface(fan)?;
        let n = fan.num_rays();
        let mut entries = vec![vec![0; n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = if i == j {
                    self_intersection_at(fan, i)?
                } else {
                    i64::from(fan.spans_cone(i, j))
                };
            }
        }
        Ok(IntersectionMatrix { entries })
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// `Σ a_ρ b_ρ′ (D_ρ · D_ρ′)`.
    pub fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        self.entries
            .iter()
            .zip(a)
            .map(|(row, &ai)| ai * row.iter().zip(b).map(|(m, bj)| m * bj).sum::<i64>())
            .sum()
    }
}

/// The intersection number `D · E`.
pub fn pairing(fan: &Fan, d: &ToricDivisor<'_>, e: &ToricDivisor<'_>) -> Result<i64> {
    if d.fan() != fan || e.fan() != fan {
        return Err(Error::FanMismatch);
    }
    Ok(IntersectionMatrix::new(fan)?.pair(d.coeffs(), e.coeffs()))
}

/// `χ(O_X) = 1` for a smooth complete toric surface.
pub fn euler_characteristic(fan: &Fan) -> Result<i64> {
    require_surface(fan)?;
    Ok(1)
}

/// One instance of the Riemann-Roch inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RRReport {
    #[serde(rename = "h0_D")]
    pub h0_d: H0Value,
    #[serde(rename = "h0_K_minus_D")]
    pub h0_k_minus_d: H0Value,
    /// `½·D·(D − K)`.
    #[serde(with = "json::rational")]
    pub pairing_term: Rational,
    pub euler: i64,
    /// `χ + ½·D·(D − K)`.
    #[serde(with = "json::rational")]
    pub rhs: Rational,
    /// `h⁰(D) + h⁰(K − D) − rhs`.
    #[serde(with = "json::rational")]
    pub defect: Rational,
    pub holds: bool,
}

/// Evaluates both sides of the inequality for `d`, using a precomputed
/// intersection matrix for `fan`.
pub fn rr_check_with(
    matrix: &IntersectionMatrix,
    fan: &Fan,
    d: &ToricDivisor<'_>,
) -> Result<RRReport> {
    if d.fan() != fan {
        return Err(Error::FanMismatch);
    }
    let euler = euler_characteristic(fan)?;
    let k = canonical_divisor(fan);
    let h0_d = d.h0()?;
    let h0_k_minus_d = k.minus(d)?.h0()?;
    let d_minus_k = d.minus(&k)?;
    let pairing_term = Rational::new(matrix.pair(d.coeffs(), d_minus_k.coeffs()), 2);
    let rhs = pairing_term + euler;
    let (Some(a), Some(b)) = (h0_d.finite(), h0_k_minus_d.finite()) else {
        // P(D) is bounded on a complete fan.
        return Err(Error::Unbounded);
    };
    let defect = Rational::from_integer((a + b) as i64) - rhs;
    Ok(RRReport {
        h0_d,
        h0_k_minus_d,
        pairing_term,
        euler,
        rhs,
        defect,
        holds: defect >= Rational::zero(),
    })
}

pub fn rr_check(fan: &Fan, d: &ToricDivisor<'_>) -> Result<RRReport> {
    rr_check_with(&IntersectionMatrix::new(fan)?, fan, d)
}
