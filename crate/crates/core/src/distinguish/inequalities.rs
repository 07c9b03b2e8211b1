use super::{check_dims, fidelity, trace_distance};
use crate::linalg::{DensityOperator, STATE_TOL};
use crate::Result;

/// Slack allowed on every inequality.
pub const INEQUALITY_SLACK: f64 = 1e-9;

/// The fidelity/trace-distance relations checked for a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inequality {
    /// `1 − F ≤ D`, any pair.
    LinearLower,
    /// `D ≤ √(1 − F²)`, any pair.
    SineUpper,
    /// `D = √(1 − F²)`, both pure.
    PureEquality,
    /// `1 − F² ≤ D`, at least one pure.
    SquaredLowerOnePure,
    /// `1 − F² ≤ D`, supports inside a common 2-dimensional subspace.
    SquaredLowerQubitSupport,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck {
    pub inequality: Inequality,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub trace_distance: f64,
    pub fidelity: f64,
    pub checks: Vec<InequalityCheck>,
}

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, inequality: Inequality) -> Option<&InequalityCheck> {
        self.checks.iter().find(|c| c.inequality == inequality)
    }

    pub fn violations(&self) -> impl Iterator<Item = &InequalityCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

fn le(inequality: Inequality, lhs: f64, rhs: f64) -> InequalityCheck {
    InequalityCheck {
        inequality,
        lhs,
        rhs,
        holds: lhs <= rhs + INEQUALITY_SLACK,
    }
}

/// Evaluates every relation that applies to the pair.
pub fn check_inequalities(rho: &DensityOperator, sigma: &DensityOperator) -> Result<InequalityReport> {
    check_dims(rho, sigma)?;
    let d = trace_distance(rho, sigma)?;
    let f = fidelity(rho, sigma)?;
    let sine = (1.0 - f * f).max(0.0).sqrt();

    let mut checks = vec![le(Inequality::LinearLower, 1.0 - f, d), le(Inequality::SineUpper, d, sine)];

    let (pure_a, pure_b) = (rho.is_pure(), sigma.is_pure());
    if pure_a && pure_b {
        checks.push(InequalityCheck {
            inequality: Inequality::PureEquality,
            lhs: d,
            rhs: sine,
            holds: (d - sine).abs() <= INEQUALITY_SLACK,
        });
    }
    if pure_a || pure_b {
        checks.push(le(Inequality::SquaredLowerOnePure, 1.0 - f * f, d));
    }
    let joint = DensityOperator::from_trusted(rho.matrix() + sigma.matrix());
    if joint.rank(STATE_TOL) <= 2 {
        checks.push(le(Inequality::SquaredLowerQubitSupport, 1.0 - f * f, d));
    }

    Ok(InequalityReport {
        trace_distance: d,
        fidelity: f,
        checks,
    })
}
