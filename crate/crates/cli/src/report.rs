//! Machine-readable reports. Rationals are `{"num": n, "den": d}` in lowest
//! terms with `d > 0`; an infinite slope bound is `{"infinite": true}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use ramislope_core::numerics::{fmt_rational, Rational};
use ramislope_core::nearby::SlopeBound;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct RatRepr {
    num: i64,
    den: i64,
}

/// An exact rational with 64-bit numerator and denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub Rational);

impl Rat {
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<Rational> for Rat {
    fn from(r: Rational) -> Self {
        Rat(r)
    }
}

impl From<&Rational> for Rat {
    fn from(r: &Rational) -> Self {
        Rat(r.clone())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.0))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (num, den) = (self.0.numer().to_i64(), self.0.denom().to_i64());
        match (num, den) {
            (Some(num), Some(den)) => RatRepr { num, den }.serialize(s),
            _ => Err(serde::ser::Error::custom(format!(
                "rational {} does not fit in 64 bits",
                self
            ))),
        }
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RatRepr::deserialize(d)?;
        if r.den <= 0 {
            return Err(D::Error::custom("denominator must be positive"));
        }
        let q = Rational::new(BigInt::from(r.num), BigInt::from(r.den));
        if q.numer() != &BigInt::from(r.num) || q.denom().abs() != BigInt::from(r.den) {
            return Err(D::Error::custom("rational is not in lowest terms"));
        }
        Ok(Rat(q))
    }
}

/// A slope bound: a rational or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Finite(Rat),
    Infinite,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BoundRepr {
    Infinite { infinite: bool },
    Finite(Rat),
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(r) => r.serialize(s),
            Bound::Infinite => BoundRepr::Infinite { infinite: true }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match BoundRepr::deserialize(d)? {
            BoundRepr::Finite(r) => Ok(Bound::Finite(r)),
            BoundRepr::Infinite { infinite: true } => Ok(Bound::Infinite),
            BoundRepr::Infinite { infinite: false } => {
                Err(D::Error::custom("`infinite` must be true when present"))
            }
        }
    }
}

impl From<&SlopeBound> for Bound {
    fn from(b: &SlopeBound) -> Self {
        match b {
            SlopeBound::Finite(r) => Bound::Finite(r.into()),
            SlopeBound::Infinite => Bound::Infinite,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(r) => r.fmt(f),
            Bound::Infinite => f.write_str("infinity"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeEntry {
    pub slope: Rat,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseLinear {
    pub breakpoints: Vec<Rat>,
    pub values: Vec<Rat>,
    /// Slope on `[breakpoints[i], breakpoints[i + 1])`, the last one
    /// extending to infinity.
    pub slopes: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCover {
    pub name: String,
    pub spec: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedSheaf {
    pub name: String,
    pub cover: String,
    pub spec: String,
}

/// The job as it was understood.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobEcho {
    pub p: u32,
    pub q: u64,
    pub initial_precision: i64,
    pub max_precision: i64,
    pub covers: Vec<NamedCover>,
    pub sheaves: Vec<NamedSheaf>,
    pub tasks: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationNumber {
    pub element: Vec<u64>,
    /// `None` for the identity.
    pub value: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetJump {
    pub jump: Rat,
    /// Number of cosets `G^r` reaches just below the jump.
    pub cosets: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub m: u64,
    pub status: String,
    pub max_slope: Option<Bound>,
    pub weighted_max: Option<Rat>,
    pub slopes: Vec<SlopeEntry>,
    pub weighted: Vec<Rat>,
    pub precision_used: Option<i64>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TamenessProbe {
    pub cover: String,
    pub slopes: Vec<SlopeEntry>,
    pub max_trivial: Bound,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TaskResult {
    Filtration {
        cover: String,
        degree: u64,
        group_order: u64,
        ramification_numbers: Vec<RamificationNumber>,
        lower_jumps: Vec<i64>,
        upper_jumps: Vec<Rat>,
        phi: PiecewiseLinear,
        psi: PiecewiseLinear,
        hasse_arf: bool,
    },
    Slopes {
        sheaf: String,
        cover: String,
        dimension: u64,
        slopes: Vec<SlopeEntry>,
        swan_conductor: Rat,
    },
    Nearby {
        cover: String,
        sheaf: String,
        slopes: Vec<SlopeEntry>,
        max_trivial: Bound,
        weighted: Vec<Rat>,
        witness_slopes: Vec<Rat>,
        coset_jumps: Vec<CosetJump>,
    },
    Certificate {
        base_cover: String,
        sheaf: String,
        verdict: String,
        slopes: Vec<SlopeEntry>,
        r0: Rat,
        r_m: Rat,
        c_m: Rat,
        phi_c_m: Rat,
        bound: Rat,
        inclusion_bound: Rat,
        last_jump: Rat,
        monodromy_order: u64,
        inclusion_holds: bool,
        trivial_beyond_bound: bool,
        concavity_holds: bool,
    },
    Sweep {
        p: u32,
        sheaf: Option<String>,
        rows: Vec<SweepRow>,
    },
    Tameness {
        sheaf: String,
        verdict: String,
        probes: Vec<TamenessProbe>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskError {
    /// `precision`, `unsupported`, `invalid_input` or `internal`.
    pub category: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskReport {
    pub index: usize,
    pub task: String,
    pub status: String,
    pub precision_used: Option<i64>,
    pub result: Option<TaskResult>,
    pub error: Option<TaskError>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub engine: String,
    pub job: JobEcho,
    pub tasks: Vec<TaskReport>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.tasks.iter().any(|t| {
            t.error.is_some()
                || matches!(&t.result, Some(TaskResult::Sweep { rows, .. })
                    if rows.iter().any(|r| r.status != "ok" && r.status != "skipped"))
        })
    }

    pub fn precision_exhausted(&self) -> bool {
        self.tasks.iter().any(|t| {
            t.error.as_ref().is_some_and(|e| e.category == "precision")
                || matches!(&t.result, Some(TaskResult::Sweep { rows, .. })
                    if rows.iter().any(|r| r.status == "precision_exhausted"))
        })
    }
}

pub fn slope_entries(s: &ramislope_core::reps::SlopeMultiset) -> Vec<SlopeEntry> {
    s.entries()
        .iter()
        .map(|(r, m)| SlopeEntry {
            slope: r.into(),
            multiplicity: *m,
        })
        .collect()
}

pub fn rats(v: &[Rational]) -> Vec<Rat> {
    v.iter().map(Rat::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ramislope_core::numerics::rat;

    #[test]
    fn rational_encoding() {
        let r = Rat(rat(2, 3));
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"num":2,"den":3}"#);
        assert!(serde_json::from_str::<Rat>(r#"{"num":-4,"den":6}"#).is_err());
        assert_eq!(serde_json::from_str::<Rat>(r#"{"num":-2,"den":3}"#).unwrap(), Rat(rat(-2, 3)));
    }

    #[test]
    fn infinity_marker() {
        assert_eq!(serde_json::to_string(&Bound::Infinite).unwrap(), r#"{"infinite":true}"#);
        let b: Bound = serde_json::from_str(r#"{"infinite":true}"#).unwrap();
        assert_eq!(b, Bound::Infinite);
        let b: Bound = serde_json::from_str(r#"{"num":5,"den":1}"#).unwrap();
        assert_eq!(b, Bound::Finite(Rat(rat(5, 1))));
        assert!(serde_json::from_str::<Bound>(r#"{"infinite":false}"#).is_err());
    }
}
