//! Domain types shared by every engine: node sets, exponents, inertia
//! triples and family descriptors.

use std::fmt;

use num_traits::Signed;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::ScalarMode;
use crate::scalar::{format_f64, rational_to_f64, Rational, Scalar, ScalarToken};

/// Tolerance for deciding that a binary64 exponent is an integer.
pub const INTEGRALITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
enum PointValues {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

/// Strictly increasing positive nodes `p_1 < ... < p_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Points {
    values: PointValues,
}

/// Sorts `raw` ascending and checks positivity and distinctness. The result
/// is exact when every token is a rational.
pub fn validate_points(raw: &[ScalarToken]) -> Result<Points> {
    if raw.iter().all(|t| matches!(t, ScalarToken::Exact(_))) {
        let v = raw
            .iter()
            .map(|t| match t {
                ScalarToken::Exact(q) => q.clone(),
                ScalarToken::Float(_) => unreachable!(),
            })
            .collect();
        Points::from_exact(v)
    } else {
        Points::from_f64(raw.iter().map(ScalarToken::to_f64).collect())
    }
}

impl Points {
    pub fn from_exact(mut v: Vec<Rational>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::EmptyPoints);
        }
        if let Some(bad) = v.iter().find(|q| !q.is_positive()) {
            return Err(Error::NonpositivePoint(bad.to_string()));
        }
        v.sort();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].to_string()));
        }
        Ok(Self {
            values: PointValues::Exact(v),
        })
    }

    pub fn from_integers(v: &[i64]) -> Result<Self> {
        Self::from_exact(v.iter().map(|&k| Rational::from_i64(k)).collect())
    }

    pub fn from_f64(mut v: Vec<f64>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::EmptyPoints);
        }
        if let Some(bad) = v.iter().find(|x| !x.is_finite()) {
            return Err(Error::Parse(format!("non-finite point {bad}")));
        }
        if let Some(bad) = v.iter().find(|&&x| x <= 0.0) {
            return Err(Error::NonpositivePoint(format_f64(*bad)));
        }
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(format_f64(w[0])));
        }
        Ok(Self {
            values: PointValues::Float(v),
        })
    }

    /// The nodes `1, 2, ..., n`.
    pub fn range(n: usize) -> Self {
        Self::from_integers(&(1..=n as i64).collect::<Vec<_>>()).expect("1..n is valid")
    }

    /// Comma-separated list; each entry `a`, `a/b` or a decimal.
    pub fn parse(text: &str) -> Result<Self> {
        let tokens = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(ScalarToken::parse)
            .collect::<Result<Vec<_>>>()?;
        validate_points(&tokens)
    }

    pub fn len(&self) -> usize {
        match &self.values {
            PointValues::Exact(v) => v.len(),
            PointValues::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mode(&self) -> ScalarMode {
        match self.values {
            PointValues::Exact(_) => ScalarMode::Exact,
            PointValues::Float(_) => ScalarMode::Float,
        }
    }

    pub fn exact(&self) -> Option<&[Rational]> {
        match &self.values {
            PointValues::Exact(v) => Some(v),
            PointValues::Float(_) => None,
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        match &self.values {
            PointValues::Exact(v) => v.iter().map(rational_to_f64).collect(),
            PointValues::Float(v) => v.clone(),
        }
    }

    /// The nodes as scalars of type `T`; exact scalars require exact points.
    pub fn to_scalars<T: Scalar>(&self) -> Result<Vec<T>> {
        match &self.values {
            PointValues::Exact(v) => Ok(v.iter().map(T::from_rational).collect()),
            PointValues::Float(v) if !T::EXACT => Ok(v
                .iter()
                .map(|&x| T::from_rational(&Rational::from_float(x).expect("finite")))
                .collect()),
            PointValues::Float(_) => Err(Error::ExactModeUnsupported(
                "points were given in binary64".into(),
            )),
        }
    }

    /// Exact rationals for the nodes; binary64 nodes convert to their exact
    /// dyadic values.
    pub fn to_exact_rationals(&self) -> Vec<Rational> {
        match &self.values {
            PointValues::Exact(v) => v.clone(),
            PointValues::Float(v) => v
                .iter()
                .map(|&x| Rational::from_float(x).expect("finite"))
                .collect(),
        }
    }

    /// Multiplies every node by `c > 0`.
    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        match &self.values {
            PointValues::Exact(v) => Self::from_exact(v.iter().map(|q| q * c).collect()),
            PointValues::Float(v) => {
                let c = rational_to_f64(c);
                Self::from_f64(v.iter().map(|x| x * c).collect())
            }
        }
    }

    pub fn max_min_ratio(&self) -> f64 {
        let v = self.to_f64_vec();
        v[v.len() - 1] / v[0]
    }

    pub fn to_text(&self) -> String {
        match &self.values {
            PointValues::Exact(v) => v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","),
            PointValues::Float(v) => v.iter().map(|&x| format_f64(x)).collect::<Vec<_>>().join(","),
        }
    }
}

impl fmt::Display for Points {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for Points {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.values {
            PointValues::Exact(v) => s.collect_seq(v.iter().map(|q| q.to_string())),
            PointValues::Float(v) => s.collect_seq(v.iter()),
        }
    }
}

/// The real exponent `r`, with its integrality decided once at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent {
    value: f64,
    integer: Option<i64>,
}

impl Exponent {
    pub fn int(k: i64) -> Self {
        Self {
            value: k as f64,
            integer: Some(k),
        }
    }

    /// Binary64 exponent; integral when within [`INTEGRALITY_TOL`] of an integer.
    pub fn real(value: f64) -> Self {
        let rounded = value.round();
        let integer = if value.is_finite() && (value - rounded).abs() < INTEGRALITY_TOL {
            Some(rounded as i64)
        } else {
            None
        };
        Self { value, integer }
    }

    /// Exact integrality test for rational tokens, tolerance test for decimals.
    pub fn parse(text: &str) -> Result<Self> {
        match ScalarToken::parse(text)? {
            ScalarToken::Exact(q) if q.is_integer() => {
                let k = q
                    .to_integer()
                    .try_into()
                    .map_err(|_| Error::BadExponent(format!("{q} out of range")))?;
                Ok(Self::int(k))
            }
            ScalarToken::Exact(q) => Ok(Self {
                value: rational_to_f64(&q),
                integer: None,
            }),
            ScalarToken::Float(x) if x.is_finite() => Ok(Self::real(x)),
            ScalarToken::Float(x) => Err(Error::BadExponent(format!("non-finite exponent {x}"))),
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn integer(&self) -> Option<i64> {
        self.integer
    }

    pub fn is_integer(&self) -> bool {
        self.integer.is_some()
    }

    pub fn odd_integer(&self) -> Option<i64> {
        self.integer.filter(|k| k.rem_euclid(2) == 1)
    }

    pub fn negate(&self) -> Self {
        Self {
            value: -self.value,
            integer: self.integer.map(|k| -k),
        }
    }

    pub fn offset(&self, d: i64) -> Self {
        Self {
            value: self.value + d as f64,
            integer: self.integer.map(|k| k + d),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.integer {
            Some(k) if k as f64 == self.value => write!(f, "{k}"),
            _ => f.write_str(&format_f64(self.value)),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.value)
    }
}

/// `(π, ζ, ν)`: counts of positive, zero and negative eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Inertia {
    pub pi: usize,
    pub zeta: usize,
    pub nu: usize,
}

impl Inertia {
    pub const fn new(pi: usize, zeta: usize, nu: usize) -> Self {
        Self { pi, zeta, nu }
    }

    pub fn order(&self) -> usize {
        self.pi + self.zeta + self.nu
    }

    pub fn nonsingular(&self) -> bool {
        self.zeta == 0
    }

    pub fn plus(&self, other: Inertia) -> Inertia {
        Inertia::new(self.pi + other.pi, self.zeta + other.zeta, self.nu + other.nu)
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.pi, self.zeta, self.nu]
    }
}

pub fn inertia_sum_check(inertia: &Inertia, n: usize) -> bool {
    inertia.order() == n
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.pi, self.zeta, self.nu)
    }
}

impl Serialize for Inertia {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_array().serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Kwong,
    Loewner,
    PowerAbsDiff,
    CoshKwong,
    Cauchy,
    CrossKwong,
}

impl Family {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(match text.to_ascii_lowercase().as_str() {
            "kwong" => Family::Kwong,
            "loewner" => Family::Loewner,
            "absdiff" | "power-absdiff" | "powerabsdiff" => Family::PowerAbsDiff,
            "cosh" | "cosh-kwong" | "coshkwong" => Family::CoshKwong,
            "cauchy" => Family::Cauchy,
            "cross" | "cross-kwong" | "crosskwong" => Family::CrossKwong,
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        })
    }
}

/// Which matrix to build: family, nodes and exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub points: Points,
    pub second_points: Option<Points>,
    pub r: Exponent,
}

impl FamilySpec {
    pub fn new(family: Family, points: Points, second_points: Option<Points>, r: Exponent) -> Result<Self> {
        match (&second_points, family) {
            (Some(q), Family::CrossKwong) if q.len() != points.len() => {
                return Err(Error::LengthMismatch {
                    left: points.len(),
                    right: q.len(),
                })
            }
            (Some(_), Family::CrossKwong) => {}
            (None, Family::CrossKwong) => {
                return Err(Error::PreconditionViolated(
                    "cross-Kwong needs a second point set".into(),
                ))
            }
            (Some(_), _) => {
                return Err(Error::PreconditionViolated(
                    "second point set is only meaningful for cross-Kwong".into(),
                ))
            }
            (None, _) => {}
        }
        Ok(Self {
            family,
            points,
            second_points,
            r,
        })
    }

    pub fn kwong(points: Points, r: Exponent) -> Self {
        Self::new(Family::Kwong, points, None, r).expect("single-set family")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "points": self.points,
            "secondPoints": self.second_points,
            "r": self.r,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tok(v: &[i64]) -> Vec<ScalarToken> {
        v.iter().map(|&k| ScalarToken::Exact(Rational::from_i64(k))).collect()
    }

    #[test]
    fn validate_sorts() {
        let p = validate_points(&tok(&[2, 1, 5])).unwrap();
        assert_eq!(p, Points::from_integers(&[1, 2, 5]).unwrap());
        assert_eq!(p.to_text(), "1,2,5");
    }

    #[test]
    fn validate_rejects_duplicates_and_nonpositive() {
        assert!(matches!(validate_points(&tok(&[1, 1, 2])), Err(Error::DuplicatePoint(_))));
        assert!(matches!(validate_points(&tok(&[1, -3])), Err(Error::NonpositivePoint(_))));
        assert!(matches!(Points::parse("0.5,0"), Err(Error::NonpositivePoint(_))));
        assert_eq!(Points::parse(""), Err(Error::EmptyPoints));
    }

    #[test]
    fn mixed_tokens_fall_back_to_float() {
        let p = Points::parse("1, 2.5, 3/2").unwrap();
        assert_eq!(p.mode(), ScalarMode::Float);
        assert_eq!(p.to_f64_vec(), vec![1.0, 1.5, 2.5]);
    }

    #[test]
    fn inertia_sums() {
        assert!(inertia_sum_check(&Inertia::new(1, 0, 5), 6));
        assert!(!inertia_sum_check(&Inertia::new(1, 1, 1), 4));
        assert!(inertia_sum_check(&Inertia::new(0, 0, 0), 0));
    }

    #[test]
    fn exponent_integrality() {
        assert_eq!(Exponent::parse("3").unwrap().integer(), Some(3));
        assert_eq!(Exponent::parse("7/2").unwrap().integer(), None);
        assert_eq!(Exponent::parse("6/2").unwrap().integer(), Some(3));
        assert_eq!(Exponent::real(3.0 + 1e-14).integer(), Some(3));
        assert_eq!(Exponent::real(3.0 + 1e-9).integer(), None);
        assert_eq!(Exponent::parse("-5").unwrap().odd_integer(), Some(-5));
        assert_eq!(Exponent::int(4).odd_integer(), None);
    }

    #[test]
    fn family_spec_requires_second_points_only_for_cross() {
        let p = Points::range(3);
        assert!(FamilySpec::new(Family::CrossKwong, p.clone(), None, Exponent::int(2)).is_err());
        assert!(FamilySpec::new(Family::Kwong, p.clone(), Some(p.clone()), Exponent::int(2)).is_err());
        assert!(FamilySpec::new(Family::CrossKwong, p.clone(), Some(Points::range(2)), Exponent::int(2)).is_err());
        assert!(FamilySpec::new(Family::CrossKwong, p.clone(), Some(p), Exponent::int(2)).is_ok());
    }

    proptest! {
        #[test]
        fn exact_points_round_trip_through_text(
            raw in proptest::collection::btree_set((1i64..500, 1i64..9), 1..8)
        ) {
            let v: Vec<Rational> = raw.iter().map(|&(a, b)| Rational::new(a.into(), b.into())).collect();
            let Ok(p) = Points::from_exact(v) else { return Ok(()); };
            prop_assert_eq!(Points::parse(&p.to_text()).unwrap(), p);
        }
    }
}
