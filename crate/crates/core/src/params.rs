//! The parameter bundle every phase is driven by.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::rational_to_f64;

/// Promised structural bounds plus the approximation slack.
///
/// `nabla1` bounds the edge density of depth-1 minors, `nabla0` the edge
/// density of subgraphs, `nn` strictly exceeds the bipartite depth-1 minor
/// density, and the input is promised to exclude `K_{s,t}` as a subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassParams {
    pub nabla1: u64,
    pub nabla0: u64,
    pub nn: u64,
    pub s: u64,
    pub t: u64,
    pub epsilon: BigRational,
}

impl ClassParams {
    pub fn new(nabla1: u64, nabla0: u64, nn: u64, s: u64, t: u64, epsilon: BigRational) -> Result<Self> {
        if nabla1 == 0 {
            return Err(Error::Contract("nabla1 must be at least 1".into()));
        }
        if nabla0 > nabla1 {
            return Err(Error::Contract(format!("nabla0 = {nabla0} exceeds nabla1 = {nabla1}")));
        }
        if nn == 0 || nn > nabla1 + 1 {
            return Err(Error::Contract(format!("nn = {nn} must lie in 1..={}", nabla1 + 1)));
        }
        if s == 0 || s > t {
            return Err(Error::Contract(format!("need 1 <= s <= t, got s = {s}, t = {t}")));
        }
        if !epsilon.is_positive() {
            return Err(Error::Contract("epsilon must be positive".into()));
        }
        Ok(ClassParams {
            nabla1,
            nabla0,
            nn,
            s,
            t,
            epsilon,
        })
    }

    pub fn with_epsilon(&self, epsilon: BigRational) -> Result<Self> {
        ClassParams::new(self.nabla1, self.nabla0, self.nn, self.s, self.t, epsilon)
    }

    pub fn kappa(&self) -> u64 {
        (2 * self.nabla0).max(2 * self.nn)
    }

    pub fn lambda(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(self.kappa()))
    }

    pub fn mu(&self) -> u64 {
        2 * self.kappa().pow(2)
    }

    pub fn nu(&self) -> u64 {
        2 * self.kappa().pow(3)
    }

    /// Largest set an outside vertex may need to dominate a neighborhood
    /// without landing in `D1`.
    pub fn d1_budget(&self) -> usize {
        (2 * self.nn - 1) as usize
    }

    /// Minimum witness size at position `i` (1-based) of a domination
    /// sequence: `kappa^(s-i) * (t + s - i + (s-i) * nu)`. Saturates.
    pub fn sequence_threshold(&self, i: u64) -> u128 {
        assert!(i >= 1 && i <= self.s, "position {i} outside 1..={}", self.s);
        let k = self.s - i;
        let kappa = self.kappa() as u128;
        let base = (self.t + k) as u128 + (k as u128).saturating_mul(self.nu() as u128);
        let scale = kappa.checked_pow(k as u32).unwrap_or(u128::MAX);
        scale.saturating_mul(base)
    }

    /// Residual degree bound after the general Phase 2.
    pub fn delta_r(&self) -> u128 {
        self.sequence_threshold(1)
    }

    /// High-degree cut `4 nabla1 (4^nabla1 + 2 nabla1)(residual_cap + 1) / epsilon`.
    pub fn gamma_cap(&self, residual_cap: u128) -> BigRational {
        let n1 = BigInt::from(self.nabla1);
        let four_pow = num_traits::pow(BigInt::from(4u32), self.nabla1 as usize);
        let numer = BigInt::from(4u32) * &n1 * (four_pow + BigInt::from(2u32) * &n1)
            * (BigInt::from(residual_cap) + BigInt::one());
        BigRational::from_integer(numer) / &self.epsilon
    }

    /// `gamma_cap` as a degree threshold: vertices with degree strictly above
    /// the returned value are removed.
    pub fn gamma_degree(&self, residual_cap: u128) -> usize {
        self.gamma_cap(residual_cap)
            .floor()
            .to_integer()
            .to_usize()
            .unwrap_or(usize::MAX)
    }

    pub fn epsilon_f64(&self) -> f64 {
        rational_to_f64(&self.epsilon)
    }

    pub fn to_json(&self) -> ParamsJson {
        ParamsJson {
            nabla1: self.nabla1,
            nabla0: self.nabla0,
            nn: self.nn,
            s: self.s,
            t: self.t,
            epsilon: self.epsilon.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub nabla1: u64,
    pub nabla0: u64,
    pub nn: u64,
    pub s: u64,
    pub t: u64,
    pub epsilon: String,
}
