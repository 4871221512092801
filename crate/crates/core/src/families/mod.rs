//! Concrete growth problems and ingestion of user matrices.

mod explicit;
mod lattice;
mod modular;
mod small;
mod young;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{FusionRule, GrowthOptions, GrowthProblem};
use crate::error::{Error, Result};
use crate::series::GrowthRate;
use crate::weight::parse_rational;

pub use explicit::{load_explicit, load_explicit_str, ExplicitRule};
pub use lattice::{sl2_clebsch_gordan, Gl2Vector, LineZ, Sl2, Sl3Vector};
pub use modular::{psl2_f7_matrix, KleinFour, Sl2F2, PSL2_F7_DIMENSIONS, PSL2_F7_UNIT};
pub use small::{fibonacci_matrix, Jordan, Star};
pub use young::YoungLattice;

/// Name and parameters of a built-in family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    Fibonacci,
    Sl2 { lambda: u32 },
    Sl3Vector,
    Gl2Vector,
    KleinFour,
    Sl2F2,
    Psl2F7Cutoff,
    Star { n: u32 },
    Jordan { alpha: String },
    LineZ,
    YoungLattice,
}

pub const FAMILY_NAMES: &[&str] = &[
    "fibonacci",
    "sl2",
    "sl3-vector",
    "gl2-vector",
    "klein-four",
    "sl2-f2",
    "psl2-f7-cutoff",
    "star",
    "jordan",
    "line-Z",
    "young-lattice",
];

impl FamilySpec {
    /// Builds a spec from a family name and `key=value` parameters.
    ///
    /// Recognized parameters: `lambda` (sl2, default 1), `n` (star), `alpha` (jordan, default 1).
    pub fn from_name(name: &str, params: &BTreeMap<String, String>) -> Result<Self> {
        let known: &[&str] = match name {
            "sl2" => &["lambda"],
            "star" => &["n"],
            "jordan" => &["alpha"],
            _ => &[],
        };
        if let Some(bad) = params.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(Error::InvalidParameter(format!("family {name} has no parameter {bad:?}")));
        }
        let int_param = |key: &str, default: Option<u32>| -> Result<u32> {
            match params.get(key) {
                Some(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("{key} must be a nonnegative integer, got {v:?}"))),
                None => default.ok_or_else(|| Error::InvalidParameter(format!("family {name} needs {key}=..."))),
            }
        };
        let spec = match name {
            "fibonacci" => FamilySpec::Fibonacci,
            "sl2" => FamilySpec::Sl2 { lambda: int_param("lambda", Some(1))? },
            "sl3-vector" | "sl3" => FamilySpec::Sl3Vector,
            "gl2-vector" | "gl2" => FamilySpec::Gl2Vector,
            "klein-four" | "klein" => FamilySpec::KleinFour,
            "sl2-f2" => FamilySpec::Sl2F2,
            "psl2-f7-cutoff" | "psl2-f7" => FamilySpec::Psl2F7Cutoff,
            "star" => FamilySpec::Star { n: int_param("n", None)? },
            "jordan" => FamilySpec::Jordan {
                alpha: params.get("alpha").cloned().unwrap_or_else(|| "1".to_string()),
            },
            "line-Z" | "line-z" => FamilySpec::LineZ,
            "young-lattice" | "young" => FamilySpec::YoungLattice,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown family {other:?}; known: {}",
                    FAMILY_NAMES.join(", ")
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Sl2 { lambda } if *lambda < 1 => {
                Err(Error::InvalidParameter("sl2 highest weight lambda must be >= 1".into()))
            }
            FamilySpec::Star { n } if *n < 1 => Err(Error::InvalidParameter("star needs N >= 1".into())),
            FamilySpec::Jordan { alpha } => {
                let a = parse_rational(alpha)
                    .map_err(|_| Error::InvalidParameter(format!("alpha must be rational, got {alpha:?}")))?;
                if a.is_negative() {
                    return Err(Error::InvalidParameter("jordan alpha must be >= 0".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Exponential growth rate of b_n when it is known in closed form.
    ///
    /// For jordan(α) this is the value α seen by every cutoff, not the growth 1+α of b_n.
    pub fn known_growth_rate(&self) -> Option<GrowthRate> {
        let int = |n: i64| GrowthRate::Exact(BigRational::from_integer(BigInt::from(n)));
        Some(match self {
            FamilySpec::Fibonacci => GrowthRate::Approx((1.0 + 5f64.sqrt()) / 2.0),
            FamilySpec::Sl2 { lambda } => int(*lambda as i64 + 1),
            FamilySpec::Sl3Vector => int(3),
            FamilySpec::Gl2Vector => int(2),
            FamilySpec::KleinFour => int(3),
            FamilySpec::Sl2F2 => int(2),
            FamilySpec::Psl2F7Cutoff => int(3),
            FamilySpec::Star { n } => {
                let r = (*n as f64).sqrt().round() as i64;
                if r * r == *n as i64 {
                    int(r)
                } else {
                    GrowthRate::Approx((*n as f64).sqrt())
                }
            }
            FamilySpec::Jordan { alpha } => {
                let a = parse_rational(alpha).ok()?;
                if a.is_zero() {
                    return None;
                }
                GrowthRate::Exact(a)
            }
            FamilySpec::LineZ => int(2),
            FamilySpec::YoungLattice => GrowthRate::Infinite,
        })
    }

    pub fn rule(&self) -> Result<Arc<dyn FusionRule>> {
        self.validate()?;
        Ok(match self {
            FamilySpec::Fibonacci => Arc::new(ExplicitRule::from_dense(
                "fibonacci",
                &fibonacci_matrix(),
                0,
                Some(vec!["1".into(), "x".into()]),
            )?),
            FamilySpec::Sl2 { lambda } => Arc::new(Sl2::new(*lambda)),
            FamilySpec::Sl3Vector => Arc::new(Sl3Vector),
            FamilySpec::Gl2Vector => Arc::new(Gl2Vector),
            FamilySpec::KleinFour => Arc::new(KleinFour),
            FamilySpec::Sl2F2 => Arc::new(Sl2F2),
            FamilySpec::Psl2F7Cutoff => Arc::new(ExplicitRule::from_dense(
                "psl2-f7-cutoff",
                &psl2_f7_matrix(),
                PSL2_F7_UNIT,
                None,
            )?),
            FamilySpec::Star { n } => Arc::new(Star::new(*n)),
            FamilySpec::Jordan { alpha } => Arc::new(Jordan::new(parse_rational(alpha)?)?),
            FamilySpec::LineZ => Arc::new(LineZ),
            FamilySpec::YoungLattice => Arc::new(YoungLattice),
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Fibonacci => write!(f, "fibonacci"),
            FamilySpec::Sl2 { lambda } => write!(f, "sl2(lambda={lambda})"),
            FamilySpec::Sl3Vector => write!(f, "sl3-vector"),
            FamilySpec::Gl2Vector => write!(f, "gl2-vector"),
            FamilySpec::KleinFour => write!(f, "klein-four"),
            FamilySpec::Sl2F2 => write!(f, "sl2-f2"),
            FamilySpec::Psl2F7Cutoff => write!(f, "psl2-f7-cutoff"),
            FamilySpec::Star { n } => write!(f, "star(N={n})"),
            FamilySpec::Jordan { alpha } => write!(f, "jordan(alpha={alpha})"),
            FamilySpec::LineZ => write!(f, "line-Z"),
            FamilySpec::YoungLattice => write!(f, "young-lattice"),
        }
    }
}

/// Growth problem of a built-in family, with the cap taken from the environment.
pub fn build_family(spec: &FamilySpec) -> Result<GrowthProblem> {
    build_family_with(spec, GrowthOptions::from_env()?)
}

pub fn build_family_with(spec: &FamilySpec, options: GrowthOptions) -> Result<GrowthProblem> {
    GrowthProblem::new(spec.rule()?, options)
}

/// Every built-in family with representative parameters, for sweeps and property tests.
pub fn all_families() -> Vec<FamilySpec> {
    vec![
        FamilySpec::Fibonacci,
        FamilySpec::Sl2 { lambda: 1 },
        FamilySpec::Sl2 { lambda: 2 },
        FamilySpec::Sl3Vector,
        FamilySpec::Gl2Vector,
        FamilySpec::KleinFour,
        FamilySpec::Sl2F2,
        FamilySpec::Psl2F7Cutoff,
        FamilySpec::Star { n: 4 },
        FamilySpec::Jordan { alpha: "1/2".into() },
        FamilySpec::LineZ,
        FamilySpec::YoungLattice,
    ]
}
