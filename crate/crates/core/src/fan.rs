//! Smooth rational fans in `N_ℝ ≅ ℝ²`.
//!
//! A [`Fan`] is stored as its list of rays (primitive generators, in the
//! order they were given) plus its two-dimensional cones as pairs of ray
//! indices oriented counterclockwise. Rays that bound no 2-cone are maximal
//! cones in their own right. Validity of the fan is checked on construction.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the lattice `N ≅ ℤ²`; dual vectors in `M` use the same type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticeVector {
    pub x: i64,
    pub y: i64,
}

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        LatticeVector { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn dot(&self, other: &LatticeVector) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// `det(self, other)`, positive when `other` is counterclockwise of `self`.
    pub fn cross(&self, other: &LatticeVector) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn gcd(&self) -> i64 {
        self.x.gcd(&self.y)
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd() == 1
    }

    pub fn to_vec(&self) -> Vec<i64> {
        vec![self.x, self.y]
    }

    /// Upper half-plane first, then counterclockwise from the positive x-axis.
    fn angular_cmp(&self, other: &LatticeVector) -> Ordering {
        let half = |v: &LatticeVector| u8::from(!(v.y > 0 || (v.y == 0 && v.x > 0)));
        half(self)
            .cmp(&half(other))
            .then_with(|| 0.cmp(&self.cross(other)))
    }
}

impl From<[i64; 2]> for LatticeVector {
    fn from([x, y]: [i64; 2]) -> Self {
        LatticeVector { x, y }
    }
}

impl From<LatticeVector> for [i64; 2] {
    fn from(v: LatticeVector) -> Self {
        [v.x, v.y]
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, o: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, o: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::new(-self.x, -self.y)
    }
}

impl Mul<LatticeVector> for i64 {
    type Output = LatticeVector;
    fn mul(self, v: LatticeVector) -> LatticeVector {
        LatticeVector::new(self * v.x, self * v.y)
    }
}

/// The primitive lattice vector on the ray through `v`.
pub fn primitive(v: LatticeVector) -> Result<LatticeVector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = v.gcd();
    Ok(LatticeVector::new(v.x / g, v.y / g))
}

/// A rational polyhedral cone in ℝ² of dimension 0, 1 or 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    rays: Vec<LatticeVector>,
}

impl Cone {
    pub fn origin() -> Self {
        Cone { rays: Vec::new() }
    }

    pub fn ray(u: LatticeVector) -> Result<Self> {
        Self::new(vec![u])
    }

    pub fn two(u: LatticeVector, v: LatticeVector) -> Result<Self> {
        Self::new(vec![u, v])
    }

    pub fn new(rays: Vec<LatticeVector>) -> Result<Self> {
        if rays.len() > 2 {
            return Err(Error::InvalidCone(format!(
                "a cone in the plane has at most 2 rays, got {}",
                rays.len()
            )));
        }
        if let Some(bad) = rays.iter().find(|r| !r.is_primitive()) {
            return Err(Error::InvalidCone(format!("generator {bad} is not primitive")));
        }
        if let [u, v] = rays[..] {
            if u.cross(&v) == 0 {
                return Err(Error::InvalidCone(format!(
                    "generators {u} and {v} are parallel, the cone is not strictly convex"
                )));
            }
        }
        Ok(Cone { rays })
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    /// Whether the generators extend to a basis of ℤ².
    pub fn is_smooth(&self) -> bool {
        match self.rays[..] {
            [u, v] => u.cross(&v).abs() == 1,
            _ => self.rays.iter().all(LatticeVector::is_primitive),
        }
    }

    /// The basis of `M` dual to the generators: `⟨m_i, u_j⟩ = δ_ij`.
    pub fn dual_frame(&self) -> Result<Vec<LatticeVector>> {
        let [u, v] = self.rays[..] else {
            return Err(Error::InvalidCone(format!(
                "dual frame needs a 2-dimensional cone, got dimension {}",
                self.dim()
            )));
        };
        let det = u.cross(&v);
        if det.abs() != 1 {
            return Err(Error::NotSmooth(u, v));
        }
        // Rows of the inverse of the generator matrix [u v].
        Ok(vec![
            LatticeVector::new(v.y * det, -v.x * det),
            LatticeVector::new(-u.y * det, u.x * det),
        ])
    }

    fn same_rays(&self, u: LatticeVector, v: LatticeVector) -> bool {
        matches!(self.rays[..], [a, b] if (a == u && b == v) || (a == v && b == u))
    }
}

pub fn dual_frame(c: &Cone) -> Result<Vec<LatticeVector>> {
    c.dual_frame()
}

// `v` lies in the open cone spanned by `u`, `w` (with `det(u, w) > 0`).
fn strictly_inside(u: LatticeVector, w: LatticeVector, v: LatticeVector) -> bool {
    u.cross(&v) > 0 && v.cross(&w) > 0
}

/// A fan in ℝ².
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fan {
    rays: Vec<LatticeVector>,
    cones: Vec<[usize; 2]>,
}

impl Fan {
    /// Builds a fan from rays and 2-cones given as ray-index pairs.
    ///
    /// Each 2-cone is reoriented counterclockwise. Fails if a ray is not
    /// primitive or repeated, if a cone is degenerate or repeated, or if two
    /// cones overlap in their interiors.
    pub fn new(rays: Vec<LatticeVector>, cones: Vec<[usize; 2]>) -> Result<Self> {
        for (i, r) in rays.iter().enumerate() {
            if !r.is_primitive() {
                return Err(Error::InvalidFan(format!("ray {r} is not primitive")));
            }
            if rays[..i].contains(r) {
                return Err(Error::RepeatedRay(*r));
            }
        }
        let mut oriented = Vec::with_capacity(cones.len());
        for (k, [a, b]) in cones.into_iter().enumerate() {
            if a >= rays.len() || b >= rays.len() {
                return Err(Error::InvalidFan(format!(
                    "cone {k} references a ray index out of range"
                )));
            }
            let det = rays[a].cross(&rays[b]);
            if det == 0 {
                return Err(Error::InvalidFan(format!(
                    "cone {k} spanned by {} and {} is not strictly convex",
                    rays[a], rays[b]
                )));
            }
            let cone = if det > 0 { [a, b] } else { [b, a] };
            if oriented.contains(&cone) {
                return Err(Error::InvalidFan(format!("cone {k} is repeated")));
            }
            oriented.push(cone);
        }
        // Two 2-cones of angle < π overlap iff one has a boundary ray strictly
        // inside the other or they coincide, so checking every ray suffices.
        for (k, &[a, b]) in oriented.iter().enumerate() {
            if let Some(r) = rays
                .iter()
                .find(|&&r| strictly_inside(rays[a], rays[b], r))
            {
                return Err(Error::InvalidFan(format!(
                    "ray {r} lies in the interior of cone {k}, cones do not meet along faces"
                )));
            }
        }
        Ok(Fan {
            rays,
            cones: oriented,
        })
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Two-dimensional cones as counterclockwise ray-index pairs.
    pub fn cones(&self) -> &[[usize; 2]] {
        &self.cones
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn ray_index(&self, v: LatticeVector) -> Option<usize> {
        self.rays.iter().position(|&r| r == v)
    }

    pub fn cone(&self, k: usize) -> Cone {
        let [a, b] = self.cones[k];
        Cone {
            rays: vec![self.rays[a], self.rays[b]],
        }
    }

    /// All maximal cones: the 2-cones, then rays bounding no 2-cone.
    pub fn max_cones(&self) -> Vec<Cone> {
        let mut out: Vec<Cone> = (0..self.cones.len()).map(|k| self.cone(k)).collect();
        for (i, &r) in self.rays.iter().enumerate() {
            if !self.cones.iter().any(|c| c.contains(&i)) {
                out.push(Cone { rays: vec![r] });
            }
        }
        if out.is_empty() {
            out.push(Cone::origin());
        }
        out
    }

    /// Whether rays `i` and `j` span a cone of the fan.
    pub fn spans_cone(&self, i: usize, j: usize) -> bool {
        self.cones.contains(&[i, j]) || self.cones.contains(&[j, i])
    }

    fn find_cone(&self, c: &Cone) -> Option<usize> {
        (0..self.cones.len()).find(|&k| {
            let [a, b] = self.cones[k];
            c.same_rays(self.rays[a], self.rays[b])
        })
    }

    /// Indices of the 2-cones that are not smooth.
    pub fn non_smooth_cones(&self) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&k| !self.cone(k).is_smooth())
            .collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.non_smooth_cones().is_empty()
    }

    /// Ray indices sorted counterclockwise starting from the positive x-axis.
    pub fn rays_ccw(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.rays.len()).collect();
        order.sort_by(|&a, &b| self.rays[a].angular_cmp(&self.rays[b]));
        order
    }

    /// Whether the cones cover the plane: every pair of rays adjacent in
    /// counterclockwise order spans a cone of the fan.
    pub fn is_complete(&self) -> bool {
        let order = self.rays_ccw();
        let n = order.len();
        n >= 3
            && (0..n).all(|k| {
                let (a, b) = (order[k], order[(k + 1) % n]);
                self.cones.contains(&[a, b])
            })
    }

    pub(crate) fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::NotComplete)
        }
    }

    pub(crate) fn require_smooth(&self) -> Result<()> {
        match self.non_smooth_cones().first() {
            None => Ok(()),
            Some(&k) => {
                let [a, b] = self.cones[k];
                Err(Error::NotSmooth(self.rays[a], self.rays[b]))
            }
        }
    }

    /// Indices of the clockwise and counterclockwise neighbours of ray `i`.
    pub(crate) fn neighbours(&self, i: usize) -> Result<(usize, usize)> {
        self.require_complete()?;
        let order = self.rays_ccw();
        let n = order.len();
        let pos = order
            .iter()
            .position(|&r| r == i)
            .ok_or(Error::UnknownRay(self.rays[i]))?;
        Ok((order[(pos + n - 1) % n], order[(pos + 1) % n]))
    }

    /// The two rays spanning a maximal cone together with `ray`, clockwise
    /// neighbour first.
    pub fn adjacent_rays(&self, ray: LatticeVector) -> Result<(LatticeVector, LatticeVector)> {
        let i = self.ray_index(ray).ok_or(Error::UnknownRay(ray))?;
        let (prev, next) = self.neighbours(i)?;
        Ok((self.rays[prev], self.rays[next]))
    }

    /// Star subdivision of the smooth 2-cone `c = cone(u₁, u₂)` at `u₁ + u₂`.
    ///
    /// The new ray is appended to the ray list so existing ray indices are
    /// unchanged.
    pub fn blow_up(&self, c: &Cone) -> Result<Fan> {
        if c.dim() != 2 {
            return Err(Error::ConeNotInFan);
        }
        let k = self.find_cone(c).ok_or(Error::ConeNotInFan)?;
        self.blow_up_index(k)
    }

    /// [`Fan::blow_up`] addressed by cone index.
    pub fn blow_up_index(&self, k: usize) -> Result<Fan> {
        let &[a, b] = self.cones.get(k).ok_or(Error::ConeNotInFan)?;
        let (u, v) = (self.rays[a], self.rays[b]);
        if u.cross(&v).abs() != 1 {
            return Err(Error::NotSmooth(u, v));
        }
        let mut rays = self.rays.clone();
        let new = rays.len();
        rays.push(u + v);
        let mut cones = self.cones.clone();
        cones[k] = [a, new];
        cones.push([new, b]);
        Fan::new(rays, cones)
    }

    /// The projective plane: rays `(1,0), (0,1), (−1,−1)`.
    pub fn projective_plane() -> Fan {
        let rays = vec![
            LatticeVector::new(1, 0),
            LatticeVector::new(0, 1),
            LatticeVector::new(-1, -1),
        ];
        Fan::new(rays, vec![[0, 1], [1, 2], [2, 0]]).expect("builtin fan is valid")
    }

    /// `P¹ × P¹`: rays `(1,0), (0,1), (−1,0), (0,−1)`.
    pub fn product_p1_p1() -> Fan {
        Fan::hirzebruch(0)
    }

    /// The Hirzebruch surface `F_a`: rays `(1,0), (0,1), (−1,a), (0,−1)`.
    pub fn hirzebruch(a: u32) -> Fan {
        let rays = vec![
            LatticeVector::new(1, 0),
            LatticeVector::new(0, 1),
            LatticeVector::new(-1, i64::from(a)),
            LatticeVector::new(0, -1),
        ];
        Fan::new(rays, vec![[0, 1], [1, 2], [2, 3], [3, 0]]).expect("builtin fan is valid")
    }

    /// Blows up `count` uniformly chosen 2-cones in succession.
    pub fn random_blow_ups<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<Fan> {
        let mut fan = self.clone();
        for _ in 0..count {
            if fan.cones.is_empty() {
                break;
            }
            let k = rng.gen_range(0..fan.cones.len());
            fan = fan.blow_up_index(k)?;
        }
        Ok(fan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    fn as_set(p: (LatticeVector, LatticeVector)) -> Vec<LatticeVector> {
        let mut s = vec![p.0, p.1];
        s.sort();
        s
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(v(2, 4)).unwrap(), v(1, 2));
        assert_eq!(primitive(v(1, 0)).unwrap(), v(1, 0));
        assert_eq!(primitive(v(-3, -3)).unwrap(), v(-1, -1));
        assert_eq!(primitive(v(0, 0)), Err(Error::ZeroVector));
    }

    #[test]
    fn smoothness_examples() {
        assert!(Cone::two(v(1, 0), v(0, 1)).unwrap().is_smooth());
        assert!(!Cone::two(v(1, 0), v(1, 2)).unwrap().is_smooth());
        assert!(Cone::two(v(0, 1), v(-1, -1)).unwrap().is_smooth());
        assert!(Cone::ray(v(3, 5)).unwrap().is_smooth());
        assert!(Cone::origin().is_smooth());
        assert!(Cone::two(v(1, 0), v(-1, 0)).is_err());
        assert!(Cone::ray(v(2, 2)).is_err());
    }

    #[test]
    fn completeness_examples() {
        assert!(Fan::projective_plane().is_complete());
        assert!(Fan::hirzebruch(2).is_complete());
        let quadrant = Fan::new(vec![v(1, 0), v(0, 1)], vec![[0, 1]]).unwrap();
        assert!(!quadrant.is_complete());
        // Three rays without the closing cone.
        let open = Fan::new(vec![v(1, 0), v(0, 1), v(-1, -1)], vec![[0, 1], [1, 2]]).unwrap();
        assert!(!open.is_complete());
    }

    #[test]
    fn adjacent_ray_examples() {
        let p2 = Fan::projective_plane();
        assert_eq!(as_set(p2.adjacent_rays(v(1, 0)).unwrap()), vec![v(-1, -1), v(0, 1)]);
        let f1 = Fan::hirzebruch(1);
        assert_eq!(as_set(f1.adjacent_rays(v(0, 1)).unwrap()), vec![v(-1, 1), v(1, 0)]);
        let p1p1 = Fan::product_p1_p1();
        assert_eq!(as_set(p1p1.adjacent_rays(v(1, 0)).unwrap()), vec![v(0, -1), v(0, 1)]);
        assert_eq!(p2.adjacent_rays(v(1, 1)), Err(Error::UnknownRay(v(1, 1))));
        let quadrant = Fan::new(vec![v(1, 0), v(0, 1)], vec![[0, 1]]).unwrap();
        assert_eq!(quadrant.adjacent_rays(v(1, 0)), Err(Error::NotComplete));
    }

    #[test]
    fn blow_up_examples() {
        let p2 = Fan::projective_plane();
        let c = Cone::two(v(1, 0), v(0, 1)).unwrap();
        let b = p2.blow_up(&c).unwrap();
        let mut rays = b.rays().to_vec();
        rays.sort();
        let mut expected = vec![v(1, 0), v(1, 1), v(0, 1), v(-1, -1)];
        expected.sort();
        assert_eq!(rays, expected);
        assert!(b.is_smooth() && b.is_complete());
        let bb = b.blow_up(&b.cone(0)).unwrap();
        assert_eq!(bb.num_rays(), 5);

        // Orientation of the requested cone does not matter.
        let flipped = Cone::two(v(0, 1), v(1, 0)).unwrap();
        assert_eq!(p2.blow_up(&flipped).unwrap(), b);

        let missing = Cone::two(v(1, 0), v(1, 1)).unwrap();
        assert_eq!(p2.blow_up(&missing), Err(Error::ConeNotInFan));
        assert_eq!(p2.blow_up(&Cone::ray(v(1, 0)).unwrap()), Err(Error::ConeNotInFan));
    }

    #[test]
    fn dual_frame_examples() {
        let frame = |a, b| Cone::two(a, b).unwrap().dual_frame().unwrap();
        assert_eq!(frame(v(1, 0), v(0, 1)), vec![v(1, 0), v(0, 1)]);
        assert_eq!(frame(v(0, 1), v(-1, 2)), vec![v(2, 1), v(-1, 0)]);
        assert_eq!(frame(v(0, 1), v(-1, -1)), vec![v(-1, 1), v(-1, 0)]);
        let singular = Cone::two(v(1, 0), v(1, 2)).unwrap();
        assert!(matches!(singular.dual_frame(), Err(Error::NotSmooth(..))));
    }

    #[test]
    fn builtin_examples() {
        let p2 = Fan::projective_plane();
        assert_eq!((p2.num_rays(), p2.cones().len()), (3, 3));
        assert_eq!(Fan::hirzebruch(0), Fan::product_p1_p1());
        for f in [p2, Fan::product_p1_p1(), Fan::hirzebruch(1), Fan::hirzebruch(3)] {
            assert!(f.is_smooth());
            assert!(f.is_complete());
        }
    }

    #[test]
    fn invalid_fans_rejected() {
        // Overlapping cones.
        let err = Fan::new(vec![v(1, 0), v(0, 1), v(1, 1)], vec![[0, 1], [0, 2]]);
        assert!(matches!(err, Err(Error::InvalidFan(_))));
        assert!(matches!(
            Fan::new(vec![v(1, 0), v(1, 0)], vec![]),
            Err(Error::RepeatedRay(_))
        ));
        assert!(matches!(
            Fan::new(vec![v(1, 0), v(-1, 0)], vec![[0, 1]]),
            Err(Error::InvalidFan(_))
        ));
        assert!(matches!(
            Fan::new(vec![v(1, 0), v(0, 1)], vec![[0, 1], [1, 0]]),
            Err(Error::InvalidFan(_))
        ));
        assert!(matches!(Fan::new(vec![v(2, 0)], vec![]), Err(Error::InvalidFan(_))));
    }

    #[test]
    fn lone_rays_are_maximal_cones() {
        let f = Fan::new(vec![v(1, 0)], vec![]).unwrap();
        assert_eq!(f.max_cones(), vec![Cone::ray(v(1, 0)).unwrap()]);
        let empty = Fan::new(vec![], vec![]).unwrap();
        assert_eq!(empty.max_cones(), vec![Cone::origin()]);
    }

    #[test]
    fn random_blow_ups_stay_smooth_and_complete() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for base in [Fan::projective_plane(), Fan::product_p1_p1(), Fan::hirzebruch(2)] {
            for depth in 0..=5 {
                let f = base.random_blow_ups(depth, &mut rng).unwrap();
                assert_eq!(f.num_rays(), base.num_rays() + depth);
                assert!(f.is_smooth() && f.is_complete());
                assert!(f.rays().iter().all(LatticeVector::is_primitive));
                // Consecutive rays in ccw order span the cones, and nothing else does.
                assert_eq!(f.cones().len(), f.num_rays());
                for k in 0..f.cones().len() {
                    let frame = f.cone(k).dual_frame().unwrap();
                    let rays = f.cone(k).rays().to_vec();
                    for (i, m) in frame.iter().enumerate() {
                        for (j, u) in rays.iter().enumerate() {
                            assert_eq!(m.dot(u), i64::from(i == j));
                        }
                    }
                }
            }
        }
    }
}
