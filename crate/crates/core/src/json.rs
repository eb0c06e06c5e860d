//! JSON file formats.
//!
//! * fans: `{"rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[2,0]]}`
//! * divisors: `{"coeffs": {"0": 2, "1": 0, "2": -1}}`, keyed by ray index
//! * point lists: `[[0,0],[1,"1/2"]]`
//!
//! Rationals are written as JSON numbers when integral and as `"p/q"`
//! strings otherwise; −∞ is the string `"-inf"`.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::divisor::ToricDivisor;
use crate::error::{Error, Result};
use crate::fan::{Fan, LatticeVector};
use crate::trop::{Rational, TropValue};

/// Exact rational with the number-or-`"p/q"` encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            s.serialize_i64(self.0.to_integer())
        } else {
            s.collect_str(&format_args!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match TropRepr::deserialize(d)?.0 {
            TropValue::Finite(v) => Ok(Q(v)),
            TropValue::NegInfinity => Err(de::Error::custom(Error::InfiniteCoordinate)),
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Tropical value with the number / `"p/q"` / `"-inf"` encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TropRepr(pub TropValue);

impl Serialize for TropRepr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            TropValue::NegInfinity => s.serialize_str("-inf"),
            TropValue::Finite(v) => Q(v).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for TropRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(TropRepr(TropValue::from(v))),
            Raw::Text(s) => parse_trop(&s).map(TropRepr).map_err(de::Error::custom),
        }
    }
}

/// Parses `"-inf"`, `"p"` or `"p/q"`.
pub fn parse_trop(s: &str) -> Result<TropValue> {
    let s = s.trim();
    if matches!(s, "-inf" | "-infinity" | "−∞") {
        return Ok(TropValue::NegInfinity);
    }
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(TropValue::Finite(Rational::new(n, d)))
}

/// `serde(with)` adapter for a rational.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        Q(*q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        Q::deserialize(d).map(|q| q.0)
    }
}

/// `serde(with)` adapter for a single rational point.
pub mod rational_point {
    use super::*;

    pub fn serialize<S: Serializer>(p: &[Rational; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
        [Q(p[0]), Q(p[1])].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<[Rational; 2], D::Error> {
        let [a, b] = <[Q; 2]>::deserialize(d)?;
        Ok([a.0, b.0])
    }
}

/// `serde(with)` adapter for a list of rational points.
pub mod rational_points {
    use super::*;

    pub fn serialize<S: Serializer>(
        pts: &[[Rational; 2]],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(pts.iter().map(|p| [Q(p[0]), Q(p[1])]))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<[Rational; 2]>, D::Error> {
        let raw = Vec::<[Q; 2]>::deserialize(d)?;
        Ok(raw.into_iter().map(|[a, b]| [a.0, b.0]).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub rays: Vec<LatticeVector>,
    pub max_cones: Vec<[usize; 2]>,
}

impl From<&Fan> for FanJson {
    fn from(f: &Fan) -> Self {
        FanJson {
            rays: f.rays().to_vec(),
            max_cones: f.cones().to_vec(),
        }
    }
}

impl TryFrom<FanJson> for Fan {
    type Error = Error;
    fn try_from(j: FanJson) -> Result<Fan> {
        Fan::new(j.rays, j.max_cones)
    }
}

impl Serialize for Fan {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FanJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Fan {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Fan::try_from(FanJson::deserialize(d)?).map_err(de::Error::custom)
    }
}

pub fn fan_from_json(text: &str) -> Result<Fan> {
    let raw: FanJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Fan::try_from(raw)
}

pub fn fan_to_json(fan: &Fan) -> String {
    serde_json::to_string(fan).expect("fan serializes")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorJson {
    pub coeffs: BTreeMap<usize, i64>,
}

impl From<&ToricDivisor<'_>> for DivisorJson {
    fn from(d: &ToricDivisor<'_>) -> Self {
        DivisorJson {
            coeffs: d.coeffs().iter().copied().enumerate().collect(),
        }
    }
}

impl DivisorJson {
    /// Attaches the coefficients to `fan`; every ray needs exactly one entry.
    pub fn on<'f>(&self, fan: &'f Fan) -> Result<ToricDivisor<'f>> {
        let n = fan.num_rays();
        if let Some((&k, _)) = self.coeffs.iter().find(|(&k, _)| k >= n) {
            return Err(Error::Parse(format!(
                "divisor coefficient for ray index {k}, but the fan has {n} rays"
            )));
        }
        if self.coeffs.len() != n {
            return Err(Error::CoefficientCount {
                expected: n,
                got: self.coeffs.len(),
            });
        }
        ToricDivisor::new(fan, self.coeffs.values().copied().collect())
    }
}

pub fn divisor_from_json<'f>(text: &str, fan: &'f Fan) -> Result<ToricDivisor<'f>> {
    let raw: DivisorJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.on(fan)
}

pub fn divisor_to_json(d: &ToricDivisor<'_>) -> String {
    serde_json::to_string(&DivisorJson::from(d)).expect("divisor serializes")
}

/// Parses a list of points, rejecting −∞ coordinates.
pub fn points_from_json(text: &str) -> Result<Vec<Vec<Rational>>> {
    let raw: Vec<Vec<TropRepr>> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.into_iter()
        .map(|p| {
            p.into_iter()
                .map(|c| c.0.as_finite().ok_or(Error::InfiniteCoordinate))
                .collect()
        })
        .collect()
}
