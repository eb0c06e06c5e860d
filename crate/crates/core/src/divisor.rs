//! Toric divisors `D = Σ a_ρ D_ρ`, their polytopes
//! `P(D) = {m ∈ M_ℝ : ⟨m, e_ρ⟩ + a_ρ ≥ 0}` and `h⁰(X, D) = |P(D) ∩ M|`.

use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::curve::{corner_locus, WeightedComplex};
use crate::error::{Error, Result};
use crate::fan::{primitive, Fan, LatticeVector};
use crate::trop::{Rational, TropPolynomial};

/// An integer combination of the ray divisors of a fan, indexed like
/// [`Fan::rays`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricDivisor<'f> {
    fan: &'f Fan,
    coeffs: Vec<i64>,
}

impl<'f> ToricDivisor<'f> {
    pub fn new(fan: &'f Fan, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != fan.num_rays() {
            return Err(Error::CoefficientCount {
                expected: fan.num_rays(),
                got: coeffs.len(),
            });
        }
        Ok(ToricDivisor { fan, coeffs })
    }

    pub fn zero(fan: &'f Fan) -> Self {
        ToricDivisor {
            fan,
            coeffs: vec![0; fan.num_rays()],
        }
    }

    /// The ray divisor `D_ρ`.
    pub fn ray(fan: &'f Fan, ray: LatticeVector) -> Result<Self> {
        let i = fan.ray_index(ray).ok_or(Error::UnknownRay(ray))?;
        let mut d = Self::zero(fan);
        d.coeffs[i] = 1;
        Ok(d)
    }

    pub fn fan(&self) -> &'f Fan {
        self.fan
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, ray: LatticeVector) -> Option<i64> {
        self.fan.ray_index(ray).map(|i| self.coeffs[i])
    }

    fn same_fan(&self, other: &ToricDivisor<'_>) -> Result<()> {
        if std::ptr::eq(self.fan, other.fan) || self.fan == other.fan {
            Ok(())
        } else {
            Err(Error::FanMismatch)
        }
    }

    fn zip_with(&self, other: &ToricDivisor<'_>, op: impl Fn(i64, i64) -> i64) -> Result<Self> {
        self.same_fan(other)?;
        Ok(ToricDivisor {
            fan: self.fan,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    pub fn plus(&self, other: &ToricDivisor<'_>) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn minus(&self, other: &ToricDivisor<'_>) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scaled(&self, k: i64) -> Self {
        ToricDivisor {
            fan: self.fan,
            coeffs: self.coeffs.iter().map(|a| k * a).collect(),
        }
    }

    /// Coefficientwise `self ≤ other`.
    pub fn le(&self, other: &ToricDivisor<'_>) -> Result<bool> {
        self.same_fan(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a <= b))
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&a| a >= 0)
    }

    pub fn polytope(&self) -> DivisorPolytope {
        DivisorPolytope::new(
            self.fan
                .rays()
                .iter()
                .copied()
                .zip(self.coeffs.iter().copied())
                .collect(),
        )
    }

    /// `|P(D) ∩ M|`, or infinite when `P(D)` is nonempty and unbounded.
    pub fn h0(&self) -> Result<H0Value> {
        self.fan.require_smooth()?;
        Ok(match self.polytope().lattice_points() {
            LatticePoints::Finite(pts) => H0Value::Finite(pts.len() as u64),
            LatticePoints::Unbounded => H0Value::Infinite,
        })
    }
}

impl fmt::Display for ToricDivisor<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (r, &a) in self.fan.rays().iter().zip(&self.coeffs) {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{a}·D{r}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `div(xᵐ) = Σ ⟨m, e_ρ⟩ D_ρ`.
pub fn principal_divisor(m: LatticeVector, fan: &Fan) -> ToricDivisor<'_> {
    ToricDivisor {
        fan,
        coeffs: fan.rays().iter().map(|e| m.dot(e)).collect(),
    }
}

/// `K = −Σ D_ρ`.
pub fn canonical_divisor(fan: &Fan) -> ToricDivisor<'_> {
    ToricDivisor {
        fan,
        coeffs: vec![-1; fan.num_rays()],
    }
}

/// Finds `m` with `D − E = div(xᵐ)`, if one exists.
pub fn linearly_equivalent(d: &ToricDivisor<'_>, e: &ToricDivisor<'_>) -> Result<Option<LatticeVector>> {
    let diff = d.minus(e)?;
    let rays = d.fan.rays();
    let target = diff.coeffs();
    let candidate = independent_pair(rays)
        .map(|(i, j)| solve_pair(rays[i], rays[j], target[i], target[j]))
        .unwrap_or_else(|| solve_parallel(rays, target));
    Ok(candidate.filter(|&m| principal_divisor(m, d.fan).coeffs() == target))
}

fn independent_pair(rays: &[LatticeVector]) -> Option<(usize, usize)> {
    (0..rays.len())
        .flat_map(|i| (i + 1..rays.len()).map(move |j| (i, j)))
        .find(|&(i, j)| rays[i].cross(&rays[j]) != 0)
}

// Unique solution of ⟨m, u⟩ = a, ⟨m, v⟩ = b; None if it is not integral.
fn solve_pair(u: LatticeVector, v: LatticeVector, a: i64, b: i64) -> Option<LatticeVector> {
    let det = u.cross(&v);
    let x = a * v.y - b * u.y;
    let y = b * u.x - a * v.x;
    (x % det == 0 && y % det == 0).then(|| LatticeVector::new(x / det, y / det))
}

// All rays parallel (or none): pick m with ⟨m, w⟩ matching the first ray.
fn solve_parallel(rays: &[LatticeVector], target: &[i64]) -> Option<LatticeVector> {
    let Some(&w) = rays.first() else {
        return Some(LatticeVector::ZERO);
    };
    // w is primitive, so Bézout gives p with ⟨p, w⟩ = 1.
    let ext = num_integer::Integer::extended_gcd(&w.x, &w.y);
    let p = LatticeVector::new(ext.x * ext.gcd, ext.y * ext.gcd);
    Some(target[0] * p)
}

/// The polyhedron `{m : ⟨m, e_ρ⟩ + a_ρ ≥ 0 for all ρ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorPolytope {
    inequalities: Vec<(LatticeVector, i64)>,
    vertices: Vec<[Rational; 2]>,
    bounded: bool,
    empty: bool,
}

/// Integer points of a divisor polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticePoints {
    Finite(Vec<LatticeVector>),
    Unbounded,
}

impl LatticePoints {
    pub fn finite(self) -> Option<Vec<LatticeVector>> {
        match self {
            LatticePoints::Finite(p) => Some(p),
            LatticePoints::Unbounded => None,
        }
    }
}

impl DivisorPolytope {
    /// Builds the polytope from `(e_ρ, a_ρ)` pairs, computing its vertices by
    /// intersecting pairs of boundary lines.
    pub fn new(inequalities: Vec<(LatticeVector, i64)>) -> Self {
        let satisfies = |m: &[Rational; 2]| {
            inequalities
                .iter()
                .all(|&(e, a)| m[0] * e.x + m[1] * e.y + a >= Rational::zero())
        };
        let mut vertices = Vec::new();
        for (i, &(u, a)) in inequalities.iter().enumerate() {
            for &(v, b) in &inequalities[i + 1..] {
                let det = u.cross(&v);
                if det == 0 {
                    continue;
                }
                // ⟨m, u⟩ = −a, ⟨m, v⟩ = −b
                let m = [
                    Rational::new(-a * v.y + b * u.y, det),
                    Rational::new(-b * u.x + a * v.x, det),
                ];
                if satisfies(&m) {
                    vertices.push(m);
                }
            }
        }
        vertices.sort();
        vertices.dedup();

        let normals: Vec<LatticeVector> = inequalities.iter().map(|p| p.0).collect();
        let bounded = !normals.is_empty()
            && !normals.iter().any(|e| {
                let d = LatticeVector::new(-e.y, e.x);
                [d, -d].iter().any(|d| normals.iter().all(|f| d.dot(f) >= 0))
            });
        let empty = vertices.is_empty() && !line_feasible(&inequalities);
        DivisorPolytope {
            inequalities,
            vertices,
            bounded,
            empty,
        }
    }

    pub fn inequalities(&self) -> &[(LatticeVector, i64)] {
        &self.inequalities
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[[Rational; 2]] {
        &self.vertices
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn contains(&self, m: LatticeVector) -> bool {
        self.inequalities.iter().all(|&(e, a)| m.dot(&e) + a >= 0)
    }

    /// Integer points, enumerated over the bounding box of the vertices.
    pub fn lattice_points(&self) -> LatticePoints {
        if self.empty {
            return LatticePoints::Finite(Vec::new());
        }
        if !self.bounded {
            return LatticePoints::Unbounded;
        }
        let lo = |k: usize| self.vertices.iter().map(|v| v[k].ceil().to_integer()).min();
        let hi = |k: usize| self.vertices.iter().map(|v| v[k].floor().to_integer()).max();
        let (Some(x0), Some(x1), Some(y0), Some(y1)) = (lo(0), hi(0), lo(1), hi(1)) else {
            return LatticePoints::Finite(Vec::new());
        };
        let pts = (x0..=x1)
            .flat_map(|x| (y0..=y1).map(move |y| LatticeVector::new(x, y)))
            .filter(|&m| self.contains(m))
            .collect();
        LatticePoints::Finite(pts)
    }
}

// Feasibility when no vertex exists: either some pair of normals is
// independent (then a nonempty polyhedron would have a vertex), or all
// constraints act on a single coordinate t = ⟨m, w⟩.
fn line_feasible(inequalities: &[(LatticeVector, i64)]) -> bool {
    let normals: Vec<LatticeVector> = inequalities.iter().map(|p| p.0).collect();
    if independent_pair(&normals).is_some() {
        return false;
    }
    let Some(&(w, _)) = inequalities.first() else {
        return true;
    };
    let w = primitive(w).expect("rays are nonzero");
    // Each normal is ±w: the constraint reads ±t + a ≥ 0.
    let lower = inequalities
        .iter()
        .filter(|p| p.0 == w)
        .map(|p| -p.1)
        .max();
    let upper = inequalities.iter().filter(|p| p.0 == -w).map(|p| p.1).min();
    match (lower, upper) {
        (Some(l), Some(u)) => l <= u,
        _ => true,
    }
}

pub fn polytope(d: &ToricDivisor<'_>) -> DivisorPolytope {
    d.polytope()
}

pub fn lattice_points(p: &DivisorPolytope) -> LatticePoints {
    p.lattice_points()
}

/// `h⁰(X, D)` on a smooth fan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum H0Value {
    Finite(u64),
    Infinite,
}

impl H0Value {
    pub fn finite(&self) -> Option<u64> {
        match *self {
            H0Value::Finite(n) => Some(n),
            H0Value::Infinite => None,
        }
    }
}

impl fmt::Display for H0Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            H0Value::Finite(n) => write!(f, "{n}"),
            H0Value::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for H0Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            H0Value::Finite(n) => s.serialize_u64(n),
            H0Value::Infinite => s.serialize_str("infinite"),
        }
    }
}

pub fn h0(fan: &Fan, d: &ToricDivisor<'_>) -> Result<H0Value> {
    if fan != d.fan() {
        return Err(Error::FanMismatch);
    }
    d.h0()
}

/// `deg(g)_ρ = min ⟨m, e_ρ⟩` over the exponents of `g`.
pub fn degree_along_ray(g: &TropPolynomial, ray: LatticeVector) -> Result<i64> {
    if g.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: g.dim(),
        });
    }
    g.exponents()
        .map(|m| m[0] * ray.x + m[1] * ray.y)
        .min()
        .ok_or(Error::EmptyPolynomial)
}

/// `div(g) = div(g|_ℝ²) + Σ deg(g)_ρ D_ρ`: the corner locus in the dense
/// torus together with the boundary part.
pub fn divisor_of_section<'f>(
    fan: &'f Fan,
    g: &TropPolynomial,
) -> Result<(WeightedComplex, ToricDivisor<'f>)> {
    let inner = corner_locus(g)?;
    let coeffs = fan
        .rays()
        .iter()
        .map(|&r| degree_along_ray(g, r))
        .collect::<Result<Vec<_>>>()?;
    Ok((inner, ToricDivisor { fan, coeffs }))
}
