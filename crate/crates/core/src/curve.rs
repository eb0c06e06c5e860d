//! Corner loci of bivariate tropical polynomials.
//!
//! The corner locus of `g = max_m (c_m + ⟨m, x⟩)` is dual to the regular
//! subdivision of its Newton polygon obtained by lifting each exponent `m` to
//! height `c_m` and projecting the faces of the upper hull. Each 2-cell gives
//! a vertex of the locus, each interior edge a bounded edge, each boundary
//! edge a ray. Weights are lattice lengths of the dual edges.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{primitive, LatticeVector};
use crate::json::{rational_point, rational_points};
use crate::trop::{Rational, TropPolynomial};

/// A face of the regular subdivision of the Newton polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    /// Corners of the cell, counterclockwise for 2-cells.
    pub corners: Vec<LatticeVector>,
    /// Every exponent whose lifted point lies on the face.
    pub members: Vec<LatticeVector>,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.corners.len().min(3) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonSubdivision {
    /// Lifted points `(m, c_m)`.
    pub points: Vec<(LatticeVector, Rational)>,
    /// Maximal cells: 2-cells when the Newton polygon is two-dimensional,
    /// otherwise the segments (or the single point) of the upper hull.
    pub cells: Vec<Cell>,
    /// Points of the locus dual to each maximal cell; empty unless the cells
    /// are two-dimensional.
    pub(crate) duals: Vec<[Rational; 2]>,
}

impl NewtonSubdivision {
    /// Corners of the Newton polygon, counterclockwise.
    pub fn polygon(&self) -> Vec<LatticeVector> {
        convex_hull(self.points.iter().map(|p| p.0).collect())
    }

    /// `min ⟨m, e⟩` over the Newton polygon.
    pub fn support_min(&self, e: LatticeVector) -> Result<i64> {
        self.polygon()
            .iter()
            .map(|m| m.dot(&e))
            .min()
            .ok_or(Error::EmptyPolynomial)
    }

    pub fn two_cells(&self) -> usize {
        self.cells.iter().filter(|c| c.dim() == 2).count()
    }
}

fn lattice_points_of(g: &TropPolynomial) -> Result<Vec<(LatticeVector, Rational)>> {
    if g.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: g.dim(),
        });
    }
    if g.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    Ok(g.terms()
        .map(|(e, c)| (LatticeVector::new(e[0], e[1]), c))
        .collect())
}

/// Counterclockwise convex hull with collinear points removed.
pub(crate) fn convex_hull(mut pts: Vec<LatticeVector>) -> Vec<LatticeVector> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let turn = |o: LatticeVector, a: LatticeVector, b: LatticeVector| (a - o).cross(&(b - o));
    let mut hull: Vec<LatticeVector> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &LatticeVector>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() < 2 {
        // All points collinear collapse to the two extremes.
        return vec![pts[0], pts[pts.len() - 1]];
    }
    hull
}

fn value_at(m: LatticeVector, c: Rational, x: &[Rational; 2]) -> Rational {
    c + x[0] * m.x + x[1] * m.y
}

// The point where the three affine functions of non-collinear exponents tie.
fn tie_point(p: &[(LatticeVector, Rational); 3]) -> [Rational; 2] {
    let (ma, ca) = p[0];
    let d1 = p[1].0 - ma;
    let d2 = p[2].0 - ma;
    let r1 = ca - p[1].1;
    let r2 = ca - p[2].1;
    let det = Rational::from_integer(d1.cross(&d2));
    [
        (r1 * d2.y - r2 * d1.y) / det,
        (r2 * d1.x - r1 * d2.x) / det,
    ]
}

/// The regular subdivision of the Newton polygon induced by the upper hull of
/// the lifted exponents.
pub fn newton_subdivision(g: &TropPolynomial) -> Result<NewtonSubdivision> {
    let points = lattice_points_of(g)?;
    let hull = convex_hull(points.iter().map(|p| p.0).collect());
    if hull.len() >= 3 {
        Ok(two_dimensional(points))
    } else {
        Ok(collinear(points))
    }
}

fn two_dimensional(points: Vec<(LatticeVector, Rational)>) -> NewtonSubdivision {
    let n = points.len();
    let mut by_dual: BTreeMap<[Rational; 2], Vec<LatticeVector>> = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let triple = [points[a], points[b], points[c]];
                if (triple[1].0 - triple[0].0).cross(&(triple[2].0 - triple[0].0)) == 0 {
                    continue;
                }
                let x = tie_point(&triple);
                if by_dual.contains_key(&x) {
                    continue;
                }
                let top = value_at(triple[0].0, triple[0].1, &x);
                if points.iter().any(|&(m, c)| value_at(m, c, &x) > top) {
                    continue;
                }
                let members = points
                    .iter()
                    .filter(|&&(m, c)| value_at(m, c, &x) == top)
                    .map(|p| p.0)
                    .collect();
                by_dual.insert(x, members);
            }
        }
    }
    let (duals, cells) = by_dual
        .into_iter()
        .map(|(x, members): (_, Vec<LatticeVector>)| {
            let corners = convex_hull(members.clone());
            (x, Cell { corners, members })
        })
        .unzip();
    NewtonSubdivision {
        points,
        cells,
        duals,
    }
}

fn collinear(points: Vec<(LatticeVector, Rational)>) -> NewtonSubdivision {
    let base = points[0].0;
    let Some(dir) = points
        .iter()
        .find(|p| p.0 != base)
        .map(|p| primitive(p.0 - base).expect("distinct points"))
    else {
        let only = points[0].0;
        return NewtonSubdivision {
            points,
            cells: vec![Cell {
                corners: vec![only],
                members: vec![only],
            }],
            duals: Vec::new(),
        };
    };
    let norm = dir.dot(&dir);
    let mut line: Vec<(i64, LatticeVector, Rational)> = points
        .iter()
        .map(|&(m, c)| ((m - base).dot(&dir) / norm, m, c))
        .collect();
    line.sort();
    // Upper hull of (t, c), a concave chain.
    let mut chain: Vec<(i64, LatticeVector, Rational)> = Vec::new();
    for p in line {
        while chain.len() >= 2 {
            let (t0, _, c0) = chain[chain.len() - 2];
            let (t1, _, c1) = chain[chain.len() - 1];
            // Drop the middle point unless it lies strictly above the chord.
            if (c1 - c0) * (p.0 - t0) <= (p.2 - c0) * (t1 - t0) {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(p);
    }
    let cells = chain
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0].1, w[1].1);
            let members = points
                .iter()
                .filter(|&&(m, c)| {
                    let t = (m - base).dot(&dir) / norm;
                    let (ta, tb) = (w[0].0, w[1].0);
                    // On the chord between the two hull points.
                    t >= ta && t <= tb && (c - w[0].2) * (tb - ta) == (w[1].2 - w[0].2) * (t - ta)
                })
                .map(|p| p.0)
                .collect();
            Cell {
                corners: vec![a, b],
                members,
            }
        })
        .collect();
    NewtonSubdivision {
        points,
        cells,
        duals: Vec::new(),
    }
}

/// A one-dimensional cell of a weighted plane complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Edge {
    /// A bounded edge between two vertices.
    Segment { endpoints: [usize; 2], weight: u64 },
    /// A ray leaving a vertex in a primitive direction.
    Ray {
        vertex: usize,
        direction: LatticeVector,
        weight: u64,
    },
    /// A full line, present when the locus has no vertices.
    Line {
        #[serde(with = "rational_point")]
        through: [Rational; 2],
        direction: LatticeVector,
        weight: u64,
    },
}

impl Edge {
    pub fn weight(&self) -> u64 {
        match *self {
            Edge::Segment { weight, .. } | Edge::Ray { weight, .. } | Edge::Line { weight, .. } => {
                weight
            }
        }
    }
}

/// A weighted rational polyhedral complex of dimension one in ℝ².
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedComplex {
    #[serde(with = "rational_points")]
    pub vertices: Vec<[Rational; 2]>,
    pub edges: Vec<Edge>,
}

impl WeightedComplex {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    pub fn rays(&self) -> impl Iterator<Item = (usize, LatticeVector, u64)> + '_ {
        self.edges.iter().filter_map(|e| match *e {
            Edge::Ray {
                vertex,
                direction,
                weight,
            } => Some((vertex, direction, weight)),
            _ => None,
        })
    }

    /// `Σ w(F)·v_F` over the edges at `vertex`, with outgoing primitive
    /// directions recomputed from the vertex coordinates.
    pub fn balance_at(&self, vertex: usize) -> LatticeVector {
        let mut sum = LatticeVector::ZERO;
        for e in &self.edges {
            match *e {
                Edge::Segment { endpoints, weight } if endpoints.contains(&vertex) => {
                    let other = if endpoints[0] == vertex {
                        endpoints[1]
                    } else {
                        endpoints[0]
                    };
                    let p = self.vertices[vertex];
                    let q = self.vertices[other];
                    if let Some(d) = rational_direction(q[0] - p[0], q[1] - p[1]) {
                        sum = sum + weight as i64 * d;
                    }
                }
                Edge::Ray {
                    vertex: v,
                    direction,
                    weight,
                } if v == vertex => {
                    if let Ok(d) = primitive(direction) {
                        sum = sum + weight as i64 * d;
                    }
                }
                _ => {}
            }
        }
        sum
    }
}

// Primitive integer vector along the rational vector (dx, dy).
fn rational_direction(dx: Rational, dy: Rational) -> Option<LatticeVector> {
    let l = num_integer::lcm(*dx.denom(), *dy.denom());
    let v = LatticeVector::new((dx * l).to_integer(), (dy * l).to_integer());
    primitive(v).ok()
}

/// The corner locus of a bivariate tropical polynomial.
pub fn corner_locus(g: &TropPolynomial) -> Result<WeightedComplex> {
    let sub = newton_subdivision(g)?;
    let mut complex = WeightedComplex::default();
    if sub.duals.is_empty() {
        // Collinear exponents: one line per hull segment, no vertices.
        for cell in &sub.cells {
            let [a, b] = cell.corners[..] else {
                continue;
            };
            let ca = g.coefficient(&a.to_vec()).as_finite().expect("stored term");
            let cb = g.coefficient(&b.to_vec()).as_finite().expect("stored term");
            let d = b - a;
            // ⟨d, x⟩ = ca − cb, nearest point to the origin.
            let s = (ca - cb) / d.dot(&d);
            complex.edges.push(Edge::Line {
                through: [s * d.x, s * d.y],
                direction: primitive(LatticeVector::new(-d.y, d.x))?,
                weight: d.gcd() as u64,
            });
        }
        return Ok(complex);
    }
    complex.vertices = sub.duals.clone();
    let mut owners: BTreeMap<(LatticeVector, LatticeVector), Vec<(usize, LatticeVector)>> =
        BTreeMap::new();
    for (k, cell) in sub.cells.iter().enumerate() {
        let n = cell.corners.len();
        for i in 0..n {
            let (p, q) = (cell.corners[i], cell.corners[(i + 1) % n]);
            let e = q - p;
            let outward = primitive(LatticeVector::new(e.y, -e.x))?;
            owners.entry((p.min(q), p.max(q))).or_default().push((k, outward));
        }
    }
    for ((p, q), cells) in owners {
        let weight = (q - p).gcd() as u64;
        match cells[..] {
            [(a, _), (b, _)] => complex.edges.push(Edge::Segment {
                endpoints: [a.min(b), a.max(b)],
                weight,
            }),
            [(k, outward)] => complex.edges.push(Edge::Ray {
                vertex: k,
                direction: outward,
                weight,
            }),
            _ => unreachable!("an edge of a polygonal subdivision bounds one or two cells"),
        }
    }
    Ok(complex)
}

/// Whether every vertex satisfies `Σ w(F)·v_F = 0`.
pub fn is_balanced(c: &WeightedComplex) -> bool {
    (0..c.vertices.len()).all(|v| c.balance_at(v).is_zero())
}
