//! Belief-function algebra over the fixed two-element frame {I, P}.
//!
//! `I` stands for "influencer" and `P` for "passive". A basic belief
//! assignment distributes one unit of mass over the focal sets {I}, {P}
//! and the whole frame {I, P}; the empty set carries no mass by
//! construction, so three numbers describe an assignment completely.
//! Specializing to this frame removes all power-set bookkeeping and keeps
//! combination O(1).

use thiserror::Error;

/// Drift accepted when validating that constructor inputs sum to one.
/// Inputs inside this band are renormalized instead of rejected.
pub const MASS_SUM_TOLERANCE: f64 = 1e-9;

/// Conflict above `1 - TOTAL_CONFLICT_TOLERANCE` is treated as total
/// conflict; normalizing by the remaining sliver would blow up.
pub const TOTAL_CONFLICT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BbaError {
    #[error("mass on {focal} is negative ({mass})")]
    NegativeMass { focal: &'static str, mass: f64 },
    #[error("masses sum to {sum}, expected 1 within {MASS_SUM_TOLERANCE:e}")]
    NotNormalized { sum: f64 },
    #[error("total conflict: the assignments share no compatible focal set")]
    TotalConflict,
}

/// A basic belief assignment on {I, P}.
///
/// Valid by construction: every instance sums to one (within 1e-12) with
/// all masses in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bba {
    influencer: f64,
    passive: f64,
    ignorance: f64,
}

impl Bba {
    /// Builds an assignment from masses on {I}, {P} and {I, P}.
    ///
    /// Inputs must be non-negative and sum to one within
    /// [`MASS_SUM_TOLERANCE`]; tiny floating drift is renormalized away.
    pub fn new(influencer: f64, passive: f64, ignorance: f64) -> Result<Self, BbaError> {
        for (focal, mass) in [
            ("{I}", influencer),
            ("{P}", passive),
            ("{I,P}", ignorance),
        ] {
            if mass < 0.0 || mass.is_nan() {
                return Err(BbaError::NegativeMass { focal, mass });
            }
        }
        let sum = influencer + passive + ignorance;
        if (sum - 1.0).abs() > MASS_SUM_TOLERANCE {
            return Err(BbaError::NotNormalized { sum });
        }
        Ok(Self {
            influencer: influencer / sum,
            passive: passive / sum,
            ignorance: ignorance / sum,
        })
    }

    /// The vacuous assignment: all mass on the frame, total ignorance.
    pub fn vacuous() -> Self {
        Self {
            influencer: 0.0,
            passive: 0.0,
            ignorance: 1.0,
        }
    }

    /// Mass on {I}.
    pub fn influencer(&self) -> f64 {
        self.influencer
    }

    /// Mass on {P}.
    pub fn passive(&self) -> f64 {
        self.passive
    }

    /// Mass on the whole frame {I, P}.
    pub fn ignorance(&self) -> f64 {
        self.ignorance
    }

    /// Conflict mass `k` between two assignments: the product mass that
    /// would land on the empty set before normalization.
    pub fn conflict(&self, other: &Bba) -> f64 {
        self.influencer * other.passive + self.passive * other.influencer
    }

    /// Dempster's rule of combination.
    ///
    /// Conjunctive combination normalized by `1 - k`; fails with
    /// [`BbaError::TotalConflict`] when the two assignments are fully
    /// contradictory.
    pub fn combine(&self, other: &Bba) -> Result<Bba, BbaError> {
        let k = self.conflict(other);
        if k > 1.0 - TOTAL_CONFLICT_TOLERANCE {
            return Err(BbaError::TotalConflict);
        }
        // {I}: I∩I, I∩Ω, Ω∩I. {P} symmetric. {I,P}: Ω∩Ω.
        let influencer = self.influencer * other.influencer
            + self.influencer * other.ignorance
            + self.ignorance * other.influencer;
        let passive = self.passive * other.passive
            + self.passive * other.ignorance
            + self.ignorance * other.passive;
        let ignorance = self.ignorance * other.ignorance;
        // The three numerators sum to 1 - k up to rounding; dividing by
        // their actual sum keeps the output normalized to machine precision.
        let total = influencer + passive + ignorance;
        Ok(Bba {
            influencer: influencer / total,
            passive: passive / total,
            ignorance: ignorance / total,
        })
    }

    /// Pignistic transformation: splits the frame mass equally between the
    /// two singletons and returns `(BetP(I), BetP(P))`.
    pub fn pignistic(&self) -> (f64, f64) {
        (
            self.influencer + self.ignorance / 2.0,
            self.passive + self.ignorance / 2.0,
        )
    }
}
