//! Scheme selection: pure WENO-Z or one of the four BVD variants.

use std::fmt;
use std::str::FromStr;

use crate::bvd::{
    bvd1_select, bvd2_select, bvd3_select, bvd4_select, weno_select, CandidateSet,
    SelectionResult, BVD3_EPS, BVD3_S_CUTOFF,
};
use crate::error::{Error, Result};
use crate::field::CellField;
use crate::reconstruct::ThincParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    WenoZ,
    Bvd1,
    Bvd2,
    Bvd3,
    Bvd4,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::WenoZ,
        Scheme::Bvd1,
        Scheme::Bvd2,
        Scheme::Bvd3,
        Scheme::Bvd4,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::WenoZ => "wenoz",
            Scheme::Bvd1 => "bvd1",
            Scheme::Bvd2 => "bvd2",
            Scheme::Bvd3 => "bvd3",
            Scheme::Bvd4 => "bvd4",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let known: Vec<_> = Scheme::ALL.iter().map(Scheme::name).collect();
                Error::InvalidConfig(format!(
                    "unknown scheme '{s}' (expected one of: {})",
                    known.join(", ")
                ))
            })
    }
}

/// Reconstruction settings shared by every cell and stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    pub scheme: Scheme,
    pub thinc: ThincParams,
    /// THINC admissibility margin on `C`.
    pub delta: f64,
    /// BVD(III) smoothness cutoff.
    pub s_cutoff: f64,
    /// BVD(III) zero-division guard.
    pub eps3: f64,
}

impl SchemeConfig {
    pub const DEFAULT_DELTA: f64 = 1e-4;

    pub fn new(scheme: Scheme) -> Self {
        Self {
            scheme,
            thinc: ThincParams::default(),
            delta: Self::DEFAULT_DELTA,
            s_cutoff: BVD3_S_CUTOFF,
            eps3: BVD3_EPS,
        }
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.thinc.beta = beta;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_s_cutoff(mut self, s_cutoff: f64) -> Self {
        self.s_cutoff = s_cutoff;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.thinc.beta > 0.0 && self.thinc.beta.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "beta must be positive, got {}",
                self.thinc.beta
            )));
        }
        if !(self.delta > 0.0 && self.delta < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "delta must lie in (0, 0.5), got {}",
                self.delta
            )));
        }
        if self.s_cutoff.is_nan() || self.s_cutoff <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "s_cutoff must be positive, got {}",
                self.s_cutoff
            )));
        }
        if [self.eps3, self.thinc.eps].iter().any(|e| e.is_nan() || *e <= 0.0) {
            return Err(Error::InvalidConfig("guards must be positive".into()));
        }
        Ok(())
    }

    pub fn candidates(&self, field: &CellField) -> CandidateSet {
        match self.scheme {
            Scheme::WenoZ => CandidateSet::weno_only(field),
            _ => CandidateSet::build(field, &self.thinc, self.delta),
        }
    }

    /// Candidates and the configured selection on `field`.
    pub fn select(&self, field: &CellField) -> (CandidateSet, SelectionResult) {
        let candidates = self.candidates(field);
        let selection = match self.scheme {
            Scheme::WenoZ => weno_select(&candidates),
            Scheme::Bvd1 => bvd1_select(&candidates),
            Scheme::Bvd2 => bvd2_select(&candidates),
            Scheme::Bvd3 => bvd3_select(&candidates, field, self.s_cutoff, self.eps3),
            Scheme::Bvd4 => bvd4_select(&candidates),
        };
        (candidates, selection)
    }
}
