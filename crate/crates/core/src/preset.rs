//! Graph-class presets: promised parameters, the Phase 2 rule, the residual
//! degree cap after Phase 2, and the resulting approximation guarantee.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greedy::greedy_bound;
use crate::params::{ClassParams, ParamsJson};
use crate::scalar::parse_rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase3Variant {
    Lp,
    Greedy,
}

impl std::str::FromStr for Phase3Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lp" => Ok(Phase3Variant::Lp),
            "greedy" => Ok(Phase3Variant::Greedy),
            other => Err(Error::Contract(format!("unknown phase-3 variant {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Phase2Rule {
    /// Endpoints of maximal domination sequences (general algorithm).
    Sequences,
    /// Pairs with at least `threshold` common red neighbors (`K_{3,t}`-free).
    CommonNeighbors { threshold: u64 },
    /// `D2 = ∅`.
    Skip,
}

/// How the LP variant of Phase 3 treats the remaining red vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LpRule {
    Solve,
    /// Select every red vertex; used when the residual cap alone already
    /// bounds `|R|` well enough.
    TakeAllRed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPreset {
    pub name: String,
    pub params: ClassParams,
    pub phase2: Phase2Rule,
    /// Promised maximum residual degree after Phase 2.
    pub residual_cap: u64,
    /// Promised Hall-ratio bound of the class.
    pub hall_ratio: u64,
    /// Class-wide bound on the minimum max-out-degree of an orientation.
    /// `None` means the LP rounding measures it on the instance.
    pub orientation_bound: Option<u64>,
    /// Coefficient of the optimum-overlap term in the `D1 ∪ D2` bound.
    pub overlap_coeff: u64,
    pub lp_rule: LpRule,
}

fn one() -> BigRational {
    BigRational::one()
}

impl ClassPreset {
    pub fn planar() -> Self {
        ClassPreset {
            name: "planar".into(),
            params: ClassParams::new(3, 3, 2, 3, 3, one()).expect("valid"),
            phase2: Phase2Rule::CommonNeighbors { threshold: 10 },
            residual_cap: 30,
            hall_ratio: 4,
            orientation_bound: Some(3),
            overlap_coeff: 4,
            lp_rule: LpRule::Solve,
        }
    }

    pub fn triangle_free_planar() -> Self {
        ClassPreset {
            name: "triangle-free".into(),
            params: ClassParams::new(3, 2, 2, 3, 3, one()).expect("valid"),
            phase2: Phase2Rule::CommonNeighbors { threshold: 7 },
            residual_cap: 18,
            hall_ratio: 3,
            orientation_bound: Some(2),
            overlap_coeff: 4,
            lp_rule: LpRule::Solve,
        }
    }

    pub fn bipartite_planar() -> Self {
        ClassPreset {
            name: "bipartite".into(),
            hall_ratio: 2,
            ..ClassPreset::triangle_free_planar()
        }
    }

    pub fn girth5_planar() -> Self {
        ClassPreset {
            name: "girth5".into(),
            params: ClassParams::new(3, 2, 2, 2, 2, one()).expect("valid"),
            phase2: Phase2Rule::Skip,
            residual_cap: 3,
            hall_ratio: 3,
            orientation_bound: Some(2),
            overlap_coeff: 1,
            lp_rule: LpRule::TakeAllRed,
        }
    }

    pub fn outerplanar() -> Self {
        ClassPreset {
            name: "outerplanar".into(),
            params: ClassParams::new(2, 2, 2, 2, 3, one()).expect("valid"),
            phase2: Phase2Rule::Skip,
            residual_cap: 9,
            hall_ratio: 3,
            orientation_bound: Some(2),
            overlap_coeff: 1,
            lp_rule: LpRule::Solve,
        }
    }

    /// `K_{3,t}`-free graphs with `∇₁ <= nabla1`; `nn` defaults to
    /// `nabla1 + 1`.
    pub fn k3t_free(nabla1: u64, t: u64, nn: Option<u64>) -> Result<Self> {
        let nn = nn.unwrap_or(nabla1 + 1);
        let params = ClassParams::new(nabla1, nabla1, nn, 3, t.max(3), one())?;
        let b = 2 * nn - 1;
        Ok(ClassPreset {
            name: format!("k3t:{nabla1}:{t}"),
            phase2: Phase2Rule::CommonNeighbors { threshold: b * t + 1 },
            residual_cap: b * b * t + b,
            hall_ratio: 2 * params.nabla0 + 1,
            orientation_bound: None,
            overlap_coeff: 2 * nn,
            lp_rule: LpRule::Solve,
            params,
        })
    }

    /// General bounded-expansion classes with `∇₁ <= nabla1`.
    pub fn general(nabla1: u64) -> Result<Self> {
        let s = 2 * nabla1 + 1;
        let params = ClassParams::new(nabla1, nabla1, nabla1 + 1, s, s, one())?;
        let cap = u64::try_from(params.delta_r())
            .map_err(|_| Error::Contract("residual bound does not fit 64 bits".into()))?;
        Ok(ClassPreset {
            name: format!("general:{nabla1}"),
            phase2: Phase2Rule::Sequences,
            residual_cap: cap,
            hall_ratio: 2 * nabla1 + 1,
            orientation_bound: None,
            overlap_coeff: 0,
            lp_rule: LpRule::Solve,
            params,
        })
    }

    /// Looks a preset up by name: `planar`, `triangle-free`, `bipartite`,
    /// `girth5`, `outerplanar`, `k3t:<nabla1>:<t>`, `general:<nabla1>`.
    pub fn by_name(name: &str) -> Result<Self> {
        let bad = || Error::Contract(format!("unknown preset {name:?}"));
        let num = |s: &str| s.parse::<u64>().map_err(|_| bad());
        match name.split(':').collect::<Vec<_>>().as_slice() {
            ["planar"] => Ok(Self::planar()),
            ["triangle-free"] => Ok(Self::triangle_free_planar()),
            ["bipartite"] => Ok(Self::bipartite_planar()),
            ["girth5"] => Ok(Self::girth5_planar()),
            ["outerplanar"] => Ok(Self::outerplanar()),
            ["k3t", n1, t] => Self::k3t_free(num(n1)?, num(t)?, None),
            ["general", n1] => Self::general(num(n1)?),
            _ => Err(bad()),
        }
    }

    pub fn with_epsilon(mut self, epsilon: BigRational) -> Result<Self> {
        self.params = self.params.with_epsilon(epsilon)?;
        Ok(self)
    }

    pub fn common_neighbor_threshold(&self) -> Option<u64> {
        match self.phase2 {
            Phase2Rule::CommonNeighbors { threshold } => Some(threshold),
            _ => None,
        }
    }

    /// Orientation degree used for the analysis of the rounding step.
    pub fn analysis_orientation_bound(&self) -> u64 {
        self.orientation_bound.unwrap_or(self.params.nabla0)
    }

    /// Slack handed to the LP solver. Half of `epsilon` goes to the
    /// high-degree removal, the other half is spread over the rounding
    /// factor `2d + 1`.
    pub fn solver_epsilon(&self) -> f64 {
        let d = self.analysis_orientation_bound() as f64;
        self.params.epsilon_f64() / (2.0 * (2.0 * d + 1.0))
    }

    /// Worst-case factor for the set selected in Phase 3, relative to the
    /// optimum for the red vertices.
    pub fn phase3_factor(&self, variant: Phase3Variant) -> f64 {
        match (variant, self.lp_rule) {
            (Phase3Variant::Lp, LpRule::Solve) => {
                (2 * self.analysis_orientation_bound() + 1) as f64 + self.params.epsilon_f64()
            }
            (Phase3Variant::Lp, LpRule::TakeAllRed) => (self.residual_cap + 1) as f64,
            (Phase3Variant::Greedy, _) => greedy_bound(self.params.nabla0, self.residual_cap),
        }
    }

    /// Upper bound on the `D1 ∪ D2` factor when none of it overlaps an
    /// optimum.
    pub fn phase12_factor(&self) -> f64 {
        let rho = self.hall_ratio as f64;
        match self.phase2 {
            Phase2Rule::Sequences => {
                let kappa = self.params.kappa() as f64;
                let exp = 2.0 * self.params.s as f64 * kappa;
                rho + kappa.powf(exp) * (rho + 1.0)
            }
            _ => rho,
        }
    }

    /// Approximation guarantee of the full pipeline against `γ(G)`.
    ///
    /// With a fraction `η` of an optimum inside `D1 ∪ D2`, the total is at
    /// most `base + coeff·η + phase3·(1 − η)`, linear in `η`, hence maximal
    /// at an endpoint.
    pub fn guarantee(&self, variant: Phase3Variant) -> f64 {
        let base = self.phase12_factor();
        let phase3 = self.phase3_factor(variant);
        base + phase3.max(self.overlap_coeff as f64)
    }

    pub fn to_spec(&self) -> PresetSpec {
        PresetSpec {
            name: self.name.clone(),
            params: self.params.to_json(),
            phase2: self.phase2,
            residual_cap: self.residual_cap,
            hall_ratio: self.hall_ratio,
            orientation_bound: self.orientation_bound,
            overlap_coeff: self.overlap_coeff,
            lp_rule: self.lp_rule,
        }
    }

    pub fn from_spec(spec: &PresetSpec) -> Result<Self> {
        let p = &spec.params;
        let epsilon = parse_rational(&p.epsilon)
            .ok_or_else(|| Error::Contract(format!("bad epsilon {:?}", p.epsilon)))?;
        Ok(ClassPreset {
            name: spec.name.clone(),
            params: ClassParams::new(p.nabla1, p.nabla0, p.nn, p.s, p.t, epsilon)?,
            phase2: spec.phase2,
            residual_cap: spec.residual_cap,
            hall_ratio: spec.hall_ratio,
            orientation_bound: spec.orientation_bound,
            overlap_coeff: spec.overlap_coeff,
            lp_rule: spec.lp_rule,
        })
    }
}

/// JSON form of a preset, for custom classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetSpec {
    pub name: String,
    pub params: ParamsJson,
    pub phase2: Phase2Rule,
    pub residual_cap: u64,
    pub hall_ratio: u64,
    #[serde(default)]
    pub orientation_bound: Option<u64>,
    #[serde(default)]
    pub overlap_coeff: u64,
    #[serde(default = "default_lp_rule")]
    pub lp_rule: LpRule,
}

fn default_lp_rule() -> LpRule {
    LpRule::Solve
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
