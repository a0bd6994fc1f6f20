//! Ordered value groups: `Z^r` with the lexicographic order and the dense
//! subgroup `Z + Z·√2` of the reals.
//!
//! The rank of a lex tuple is carried by the value itself, so every binary
//! operation checks that both operands have the same shape.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::rational::{fmt_q, parse_q, q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("shape mismatch: {0} vs {1}")]
    Shape(String, String),
    #[error("isolated subgroups are only tracked for lex tuples")]
    Unsupported,
    #[error("isolated level {level} out of range for rank {rank}")]
    LevelOutOfRange { level: usize, rank: usize },
    #[error("cannot parse group element `{0}`")]
    Parse(String),
}

/// An element of one of the ordered value groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    /// `Z^r` ordered lexicographically, first component most significant.
    Lex(Vec<i64>),
    /// `a + b·√2` with rational `a`, `b`.
    Quad { a: Q, b: Q },
}

/// Index `ℓ` of the isolated subgroup `Δ_ℓ` (first `ℓ` components zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IsolatedLevel(pub usize);

/// Sign of `a + b·√2`, decided without floating point.
pub fn quad_sign(a: &Q, b: &Q) -> Ordering {
    let sa = a.signum();
    let sb = b.signum();
    let zero = Q::zero();
    match (a.cmp(&zero), b.cmp(&zero)) {
        (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
        (Ordering::Less, Ordering::Greater) | (Ordering::Greater, Ordering::Less) => {
            // opposite signs: compare a² with 2b²
            let lhs = a * a;
            let rhs = b * b * q(2);
            let by_magnitude = lhs.cmp(&rhs);
            if sa.is_positive() {
                by_magnitude
            } else {
                by_magnitude.reverse()
            }
        }
        _ => {
            if sa.is_positive() || sb.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
    }
}

impl GroupElement {
    pub fn lex(components: &[i64]) -> Self {
        GroupElement::Lex(components.to_vec())
    }

    pub fn quad(a: Q, b: Q) -> Self {
        GroupElement::Quad { a, b }
    }

    pub fn quad_int(a: i64, b: i64) -> Self {
        GroupElement::Quad { a: q(a), b: q(b) }
    }

    /// The zero element with the same shape as `self`.
    pub fn zero_like(&self) -> Self {
        match self {
            GroupElement::Lex(c) => GroupElement::Lex(vec![0; c.len()]),
            GroupElement::Quad { .. } => GroupElement::quad_int(0, 0),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GroupElement::Lex(c) => c.iter().all(|x| *x == 0),
            GroupElement::Quad { a, b } => a.is_zero() && b.is_zero(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            GroupElement::Lex(c) => c.len(),
            GroupElement::Quad { .. } => 1,
        }
    }

    fn shape_check(&self, other: &Self) -> Result<(), GroupError> {
        match (self, other) {
            (GroupElement::Lex(a), GroupElement::Lex(b)) if a.len() == b.len() => Ok(()),
            (GroupElement::Quad { .. }, GroupElement::Quad { .. }) => Ok(()),
            _ => Err(GroupError::Shape(self.to_string(), other.to_string())),
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, GroupError> {
        self.shape_check(other)?;
        Ok(match (self, other) {
            (GroupElement::Lex(a), GroupElement::Lex(b)) => a.cmp(b),
            (GroupElement::Quad { a: a1, b: b1 }, GroupElement::Quad { a: a2, b: b2 }) => {
                quad_sign(&(a1 - a2), &(b1 - b2))
            }
            _ => unreachable!(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, GroupError> {
        self.shape_check(other)?;
        Ok(match (self, other) {
            (GroupElement::Lex(a), GroupElement::Lex(b)) => {
                GroupElement::Lex(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (GroupElement::Quad { a: a1, b: b1 }, GroupElement::Quad { a: a2, b: b2 }) => {
                GroupElement::Quad {
                    a: a1 + a2,
                    b: b1 + b2,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Self {
        match self {
            GroupElement::Lex(a) => GroupElement::Lex(a.iter().map(|x| -x).collect()),
            GroupElement::Quad { a, b } => GroupElement::Quad { a: -a, b: -b },
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, GroupError> {
        self.try_add(&other.neg())
    }

    /// `n·self` for a non-negative integer `n`.
    pub fn times(&self, n: u32) -> Self {
        match self {
            GroupElement::Lex(a) => GroupElement::Lex(a.iter().map(|x| x * n as i64).collect()),
            GroupElement::Quad { a, b } => GroupElement::Quad {
                a: a * q(n as i64),
                b: b * q(n as i64),
            },
        }
    }

    /// Panicking addition for callers that already validated shapes.
    pub fn plus(&self, other: &Self) -> Self {
        self.try_add(other).expect("group shape")
    }

    /// Largest `ℓ` such that the first `ℓ` components vanish.
    pub fn isolated_level(&self) -> Result<IsolatedLevel, GroupError> {
        match self {
            GroupElement::Lex(c) => Ok(IsolatedLevel(c.iter().take_while(|x| **x == 0).count())),
            GroupElement::Quad { .. } => Err(GroupError::Unsupported),
        }
    }

    /// Image in `Γ/Δ_{ℓ+1}`: the first `ℓ+1` components.
    pub fn project_mod(&self, level: IsolatedLevel) -> Result<Self, GroupError> {
        match self {
            GroupElement::Lex(c) => {
                if level.0 >= c.len() {
                    return Err(GroupError::LevelOutOfRange {
                        level: level.0,
                        rank: c.len(),
                    });
                }
                Ok(GroupElement::Lex(c[..=level.0].to_vec()))
            }
            GroupElement::Quad { .. } => Err(GroupError::Unsupported),
        }
    }

    /// Membership in `Δ_ℓ`.
    pub fn in_isolated(&self, level: IsolatedLevel) -> bool {
        match self {
            GroupElement::Lex(c) => c.iter().take(level.0).all(|x| *x == 0),
            GroupElement::Quad { .. } => level.0 == 0 || self.is_zero(),
        }
    }

    /// Least integer `n` with `n >= self`; `None` above rank one.
    pub fn ceil(&self) -> Option<i64> {
        match self {
            GroupElement::Lex(c) if c.len() == 1 => Some(c[0]),
            GroupElement::Lex(_) => None,
            GroupElement::Quad { a, b } => {
                let mut n = self.approx().ceil() as i64;
                while quad_sign(&(q(n - 1) - a), &-b.clone()) != Ordering::Less {
                    n -= 1;
                }
                while quad_sign(&(q(n) - a), &-b.clone()) == Ordering::Less {
                    n += 1;
                }
                Some(n)
            }
        }
    }

    /// Real value, for display and coarse bounds only.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        match self {
            GroupElement::Lex(c) => c.first().copied().unwrap_or(0) as f64,
            GroupElement::Quad { a, b } => {
                a.to_f64().unwrap_or(f64::NAN)
                    + b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
            }
        }
    }

    /// Parses `lex:1,0` or `quad:a,b` (rationals allowed in quad).
    pub fn parse(s: &str) -> Result<Self, GroupError> {
        let err = || GroupError::Parse(s.to_string());
        let (kind, body) = s.trim().split_once(':').ok_or_else(err)?;
        match kind {
            "lex" => {
                let comps: Result<Vec<i64>, _> =
                    body.split(',').map(|c| c.trim().parse()).collect();
                let comps = comps.map_err(|_| err())?;
                if comps.is_empty() {
                    return Err(err());
                }
                Ok(GroupElement::Lex(comps))
            }
            "quad" => {
                let (a, b) = body.split_once(',').ok_or_else(err)?;
                Ok(GroupElement::Quad {
                    a: parse_q(a).ok_or_else(err)?,
                    b: parse_q(b).ok_or_else(err)?,
                })
            }
            _ => Err(err()),
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Lex(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElement::Quad { a, b } => write!(f, "{}+{}*sqrt2", fmt_q(a), fmt_q(b)),
        }
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(1))?;
        match self {
            GroupElement::Lex(c) => map.serialize_entry("lex", c)?,
            GroupElement::Quad { a, b } => {
                let mut inner = serde_json::Map::new();
                inner.insert("a".into(), fmt_q(a).into());
                inner.insert("b".into(), fmt_q(b).into());
                map.serialize_entry("quad", &inner)?
            }
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    #[test]
    fn lex_order_first_component_dominates() {
        assert_eq!(
            GroupElement::lex(&[0, 1]).try_cmp(&GroupElement::lex(&[1, 0])),
            Ok(Ordering::Less)
        );
        assert_eq!(
            GroupElement::lex(&[1, 0]).try_cmp(&GroupElement::lex(&[1, 0])),
            Ok(Ordering::Equal)
        );
    }

    #[test]
    fn quad_three_beats_two_sqrt_two() {
        let three = GroupElement::quad_int(3, 0);
        let two_root_two = GroupElement::quad_int(0, 2);
        assert_eq!(three.try_cmp(&two_root_two), Ok(Ordering::Greater));
    }

    #[test]
    fn quad_sign_cases() {
        assert_eq!(quad_sign(&q(1), &q(-1)), Ordering::Less); // 1 - √2
        assert_eq!(quad_sign(&q(-1), &q(1)), Ordering::Greater);
        assert_eq!(quad_sign(&q(-3), &q(2)), Ordering::Less); // 2√2 < 3
        assert_eq!(quad_sign(&q_frac(7, 5), &q(-1)), Ordering::Less); // 1.4 < √2
        assert_eq!(quad_sign(&q_frac(3, 2), &q(-1)), Ordering::Greater);
        assert_eq!(quad_sign(&q(0), &q(0)), Ordering::Equal);
    }

    #[test]
    fn addition_and_negation() {
        assert_eq!(
            GroupElement::lex(&[1, 0])
                .try_add(&GroupElement::lex(&[0, 1]))
                .unwrap(),
            GroupElement::lex(&[1, 1])
        );
        assert_eq!(
            GroupElement::quad_int(0, 1)
                .try_add(&GroupElement::quad_int(1, -1))
                .unwrap(),
            GroupElement::quad_int(1, 0)
        );
        assert_eq!(GroupElement::lex(&[0, 0]).neg(), GroupElement::lex(&[0, 0]));
    }

    #[test]
    fn shape_errors() {
        let a = GroupElement::lex(&[1, 0]);
        assert!(matches!(
            a.try_cmp(&GroupElement::lex(&[1])),
            Err(GroupError::Shape(..))
        ));
        assert!(matches!(
            a.try_add(&GroupElement::quad_int(1, 0)),
            Err(GroupError::Shape(..))
        ));
        assert!(a.partial_cmp(&GroupElement::quad_int(0, 0)).is_none());
    }

    #[test]
    fn isolated_levels() {
        assert_eq!(
            GroupElement::lex(&[0, 1]).isolated_level(),
            Ok(IsolatedLevel(1))
        );
        assert_eq!(
            GroupElement::lex(&[1, 0]).isolated_level(),
            Ok(IsolatedLevel(0))
        );
        assert_eq!(
            GroupElement::lex(&[0, 0]).isolated_level(),
            Ok(IsolatedLevel(2))
        );
        assert_eq!(
            GroupElement::quad_int(1, 0).isolated_level(),
            Err(GroupError::Unsupported)
        );
    }

    #[test]
    fn projections() {
        let p = |c: &[i64], l| GroupElement::lex(c).project_mod(IsolatedLevel(l)).unwrap();
        assert_eq!(p(&[1, 5], 0), GroupElement::lex(&[1]));
        assert_eq!(p(&[0, 3], 1), GroupElement::lex(&[0, 3]));
        assert_eq!(p(&[2, 7], 1), GroupElement::lex(&[2, 7]));
        assert!(GroupElement::lex(&[2, 7])
            .project_mod(IsolatedLevel(2))
            .is_err());
    }

    #[test]
    fn json_shapes() {
        let lex = serde_json::to_string(&GroupElement::lex(&[1, 0])).unwrap();
        assert_eq!(lex, r#"{"lex":[1,0]}"#);
        let quad = serde_json::to_string(&GroupElement::quad(q_frac(1, 2), q(-3))).unwrap();
        assert_eq!(quad, r#"{"quad":{"a":"1/2","b":"-3"}}"#);
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(
            GroupElement::parse("lex:0,1").unwrap(),
            GroupElement::lex(&[0, 1])
        );
        assert_eq!(
            GroupElement::parse("quad:1/2,1").unwrap(),
            GroupElement::quad(q_frac(1, 2), q(1))
        );
        assert!(GroupElement::parse("oops").is_err());
    }

    #[test]
    fn exact_ceiling() {
        assert_eq!(GroupElement::quad_int(0, 1).ceil(), Some(2));
        assert_eq!(GroupElement::quad_int(3, 0).ceil(), Some(3));
        assert_eq!(GroupElement::quad_int(-1, 1).ceil(), Some(1));
        assert_eq!(GroupElement::quad_int(0, 2).ceil(), Some(3));
        assert_eq!(GroupElement::lex(&[4]).ceil(), Some(4));
        assert_eq!(GroupElement::lex(&[1, 0]).ceil(), None);
    }
}
