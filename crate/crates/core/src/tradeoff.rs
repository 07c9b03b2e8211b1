//! Protocol families tracing the concealment/bindingness trade-off curves.
//!
//! A point `(G, C)` with `G = G^max` and `C = C^max` is reachable only on or
//! above curve I, `2G + √(2C) ≥ 1`. The three families below sit exactly on
//! curves II, III and IV.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::exec::{map_indexed, Execution};
use crate::linalg::BipartiteState;
use crate::protocol::{make_protocol, security_report, PurificationProtocol};
use crate::{Error, Result};

/// Tolerance for [`check_bounds`].
pub const BOUND_TOL: f64 = 1e-9;

/// Number of grid points in a default sweep.
pub const DEFAULT_POINTS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Commuting3D,
    QubitPureMixed,
    PurePair,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [FamilyKind::Commuting3D, FamilyKind::QubitPureMixed, FamilyKind::PurePair];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Commuting3D => "commuting3d",
            FamilyKind::QubitPureMixed => "qubit-pure-mixed",
            FamilyKind::PurePair => "pure-pair",
        }
    }

    pub fn param_name(self) -> &'static str {
        match self {
            FamilyKind::PurePair => "phi",
            _ => "lambda",
        }
    }

    pub fn param_range(self) -> (f64, f64) {
        match self {
            FamilyKind::PurePair => (0.0, FRAC_PI_2),
            _ => (0.0, 1.0),
        }
    }

    /// The curve every member of the family lies on.
    pub fn curve(self) -> CurveId {
        match self {
            FamilyKind::Commuting3D => CurveId::II,
            FamilyKind::QubitPureMixed => CurveId::III,
            FamilyKind::PurePair => CurveId::IV,
        }
    }

    pub fn instance(self, param: f64) -> Result<ProtocolFamily> {
        let f = match self {
            FamilyKind::Commuting3D => ProtocolFamily::Commuting3D(param),
            FamilyKind::QubitPureMixed => ProtocolFamily::QubitPureMixed(param),
            FamilyKind::PurePair => ProtocolFamily::PurePair(param),
        };
        f.validate()?;
        Ok(f)
    }

    /// `n` evenly spaced parameters covering the closed range.
    pub fn grid(self, n: usize) -> Vec<f64> {
        let (lo, hi) = self.param_range();
        match n {
            0 => Vec::new(),
            1 => vec![lo],
            _ => (0..n)
                .map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
                .collect(),
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family '{s}' (expected commuting3d, qubit-pure-mixed or pure-pair)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProtocolFamily {
    /// ρ0 = diag(λ, 1−λ, 0), ρ1 = diag(0, 1−λ, λ).
    Commuting3D(f64),
    /// ρ0 = |0⟩⟨0|, ρ1 = diag(λ, 1−λ).
    QubitPureMixed(f64),
    /// ρ0 = |0⟩⟨0|, ρ1 = |φ⟩⟨φ| with |φ⟩ = cos φ|0⟩ + sin φ|1⟩.
    PurePair(f64),
}

impl ProtocolFamily {
    pub fn kind(&self) -> FamilyKind {
        match self {
            ProtocolFamily::Commuting3D(_) => FamilyKind::Commuting3D,
            ProtocolFamily::QubitPureMixed(_) => FamilyKind::QubitPureMixed,
            ProtocolFamily::PurePair(_) => FamilyKind::PurePair,
        }
    }

    pub fn param(&self) -> f64 {
        match *self {
            ProtocolFamily::Commuting3D(x) | ProtocolFamily::QubitPureMixed(x) | ProtocolFamily::PurePair(x) => x,
        }
    }

    fn validate(&self) -> Result<()> {
        let kind = self.kind();
        let (min, max) = kind.param_range();
        let value = self.param();
        if !(min..=max).contains(&value) {
            return Err(Error::ParamOutOfRange {
                name: kind.param_name(),
                value,
                min,
                max,
            });
        }
        Ok(())
    }

    /// Closed-form `(D, F)` of the honest token reductions.
    pub fn expected_measures(&self) -> (f64, f64) {
        match *self {
            ProtocolFamily::Commuting3D(l) => (l, 1.0 - l),
            ProtocolFamily::QubitPureMixed(l) => (1.0 - l, l.sqrt()),
            ProtocolFamily::PurePair(phi) => (phi.sin(), phi.cos()),
        }
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Purifies the family's reductions on disjoint proof supports, which makes
/// the two states orthogonal for every parameter.
pub fn family_protocol(f: ProtocolFamily) -> Result<PurificationProtocol> {
    f.validate()?;
    let (chi0, chi1) = match f {
        ProtocolFamily::Commuting3D(l) => {
            let (a, b) = (real(l.sqrt()), real((1.0 - l).sqrt()));
            (
                BipartiteState::from_terms(4, 3, &[(0, 0, a), (1, 1, b)])?,
                BipartiteState::from_terms(4, 3, &[(2, 2, a), (3, 1, b)])?,
            )
        }
        ProtocolFamily::QubitPureMixed(l) => (
            BipartiteState::from_terms(3, 2, &[(0, 0, real(1.0))])?,
            BipartiteState::from_terms(3, 2, &[(1, 0, real(l.sqrt())), (2, 1, real((1.0 - l).sqrt()))])?,
        ),
        ProtocolFamily::PurePair(phi) => (
            BipartiteState::from_terms(2, 2, &[(0, 0, real(1.0))])?,
            BipartiteState::from_terms(2, 2, &[(1, 0, real(phi.cos())), (1, 1, real(phi.sin()))])?,
        ),
    };
    make_protocol(chi0, chi1)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffPoint {
    pub param: f64,
    pub g_max: f64,
    pub c_max: f64,
}

impl TradeoffPoint {
    /// Residual of the curve equation at this point. Zero on the curve.
    pub fn curve_residual(&self, curve: CurveId) -> f64 {
        let (g, c) = (self.g_max, self.c_max);
        match curve {
            CurveId::I => 2.0 * g + (2.0 * c).sqrt() - 1.0,
            CurveId::II => g + c - 0.5,
            CurveId::III => g + 2.0 * c * c - 0.5,
            CurveId::IV => g * g + c * c - 0.25,
        }
    }
}

pub fn sweep(kind: FamilyKind, params: &[f64]) -> Result<Vec<TradeoffPoint>> {
    sweep_with(kind, params, Execution::default())
}

/// Security report of every family member, in parameter order.
pub fn sweep_with(kind: FamilyKind, params: &[f64], exec: Execution) -> Result<Vec<TradeoffPoint>> {
    let families = params.iter().map(|&x| kind.instance(x)).collect::<Result<Vec<_>>>()?;
    map_indexed(families.len(), exec, |i| {
        let report = security_report(&family_protocol(families[i])?);
        Ok(TradeoffPoint {
            param: params[i],
            g_max: report.g_max,
            c_max: report.c_max,
        })
    })
    .into_iter()
    .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveId {
    /// Lower bound `2G + √(2C) = 1`, valid for every protocol.
    I,
    /// `G + C = 1/2`.
    II,
    /// `G + 2C² = 1/2`.
    III,
    /// `G² + C² = 1/4`.
    IV,
}

impl CurveId {
    pub const ALL: [CurveId; 4] = [CurveId::I, CurveId::II, CurveId::III, CurveId::IV];

    pub fn label(self) -> &'static str {
        match self {
            CurveId::I => "I",
            CurveId::II => "II",
            CurveId::III => "III",
            CurveId::IV => "IV",
        }
    }
}

/// `C` on the curve at the given `G`, clamped at zero past the intercept.
pub fn curve_value(curve: CurveId, g_max: f64) -> f64 {
    let g = g_max;
    let c = match curve {
        CurveId::I => (1.0 - 2.0 * g).max(0.0).powi(2) / 2.0,
        CurveId::II => 0.5 - g,
        CurveId::III => ((0.5 - g) / 2.0).max(0.0).sqrt(),
        CurveId::IV => (0.25 - g * g).max(0.0).sqrt(),
    };
    c.max(0.0)
}

/// The point where the curve meets `C = G`.
pub fn fair_point(curve: CurveId) -> f64 {
    let sqrt5 = 5f64.sqrt();
    match curve {
        // 4x² − 6x + 1 = 0
        CurveId::I => (3.0 - sqrt5) / 4.0,
        CurveId::II => 0.25,
        // x² + x/2 − 1/4 = 0
        CurveId::III => (sqrt5 - 1.0) / 4.0,
        CurveId::IV => 1.0 / (2.0 * 2f64.sqrt()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundViolation {
    /// A coordinate lies outside `[0, 1/2]`.
    OutOfRange { coordinate: &'static str, value: f64 },
    /// The point lies below curve I; `slack = 2G + √(2C) − 1`.
    BelowCurveI { slack: f64 },
}

impl std::fmt::Display for BoundViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundViolation::OutOfRange { coordinate, value } => {
                write!(f, "{coordinate} = {value} outside [0, 1/2]")
            }
            BoundViolation::BelowCurveI { slack } => {
                write!(f, "2G + sqrt(2C) - 1 = {slack:e} below curve I")
            }
        }
    }
}

pub fn check_bounds(pt: &TradeoffPoint) -> Vec<BoundViolation> {
    let mut out = Vec::new();
    for (coordinate, value) in [("gMax", pt.g_max), ("cMax", pt.c_max)] {
        if !(-BOUND_TOL..=0.5 + BOUND_TOL).contains(&value) {
            out.push(BoundViolation::OutOfRange { coordinate, value });
        }
    }
    let slack = 2.0 * pt.g_max + (2.0 * pt.c_max.max(0.0)).sqrt() - 1.0;
    if slack < -BOUND_TOL {
        out.push(BoundViolation::BelowCurveI { slack });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ComplexMatrix, Factor};
    use crate::protocol::honest_reduced_states;

    fn point(g: f64, c: f64) -> TradeoffPoint {
        TradeoffPoint { param: 0.0, g_max: g, c_max: c }
    }

    #[test]
    fn displayed_reductions() {
        let p = family_protocol(ProtocolFamily::Commuting3D(0.3)).unwrap();
        let (r0, r1) = honest_reduced_states(&p);
        assert!(r0.matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.3, 0.7, 0.0])) < 1e-12);
        assert!(r1.matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.0, 0.7, 0.3])) < 1e-12);

        let p = family_protocol(ProtocolFamily::QubitPureMixed(0.4)).unwrap();
        let (r0, r1) = honest_reduced_states(&p);
        assert!(r0.matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(&[1.0, 0.0])) < 1e-12);
        assert!(r1.matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.4, 0.6])) < 1e-12);

        let p = family_protocol(ProtocolFamily::PurePair(0.0)).unwrap();
        let (r0, r1) = honest_reduced_states(&p);
        assert!(r0.matrix().max_abs_diff(r1.matrix()) < 1e-15);
        assert!((security_report(&p).fidelity - 1.0).abs() < 1e-12);
        assert_eq!(p.chi0().dim_of(Factor::Token), 2);
    }

    #[test]
    fn rejects_out_of_range() {
        for f in [
            ProtocolFamily::Commuting3D(-0.1),
            ProtocolFamily::QubitPureMixed(1.5),
            ProtocolFamily::PurePair(2.0),
            ProtocolFamily::Commuting3D(f64::NAN),
        ] {
            assert!(matches!(family_protocol(f), Err(Error::ParamOutOfRange { .. })));
        }
        assert!(sweep(FamilyKind::PurePair, &[0.1, 3.0]).is_err());
    }

    #[test]
    fn closed_forms_on_grid() {
        for kind in FamilyKind::ALL {
            for x in kind.grid(DEFAULT_POINTS) {
                let f = kind.instance(x).unwrap();
                let rep = security_report(&family_protocol(f).unwrap());
                let (d, fid) = f.expected_measures();
                assert!((rep.trace_distance - d).abs() <= 1e-9, "{kind:?} {x}");
                assert!((rep.fidelity - fid).abs() <= 1e-9, "{kind:?} {x}");
            }
        }
    }

    #[test]
    fn sweeps_lie_on_their_curves() {
        for kind in FamilyKind::ALL {
            let pts = sweep(kind, &kind.grid(DEFAULT_POINTS)).unwrap();
            assert_eq!(pts.len(), DEFAULT_POINTS);
            for pt in &pts {
                assert!(pt.curve_residual(kind.curve()).abs() <= 1e-9);
                assert!(pt.curve_residual(CurveId::I) >= -1e-9);
                assert!(check_bounds(pt).is_empty());
            }
            let mut by_g = pts.clone();
            by_g.sort_by(|a, b| a.g_max.total_cmp(&b.g_max));
            assert!(by_g.windows(2).all(|w| w[1].c_max <= w[0].c_max + 1e-12));
        }
    }

    #[test]
    fn sweep_modes_agree() {
        let grid = FamilyKind::QubitPureMixed.grid(33);
        assert_eq!(
            sweep_with(FamilyKind::QubitPureMixed, &grid, Execution::Sequential).unwrap(),
            sweep_with(FamilyKind::QubitPureMixed, &grid, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn grid_endpoints() {
        let g = FamilyKind::PurePair.grid(5);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[4], FRAC_PI_2);
        assert_eq!(FamilyKind::Commuting3D.grid(1), vec![0.0]);
        assert!(FamilyKind::Commuting3D.grid(0).is_empty());
    }

    #[test]
    fn curve_values() {
        assert_eq!(curve_value(CurveId::II, 0.0), 0.5);
        assert_eq!(curve_value(CurveId::I, 0.5), 0.0);
        assert_eq!(curve_value(CurveId::IV, 0.5), 0.0);
        assert_eq!(curve_value(CurveId::III, 0.5), 0.0);
        // bisection on G + 2C² = 1/2 at G = 1/4
        let (mut lo, mut hi) = (0.0f64, 0.5f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if 0.25 + 2.0 * mid * mid < 0.5 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((curve_value(CurveId::III, 0.25) - lo).abs() < 1e-14);
        assert!((curve_value(CurveId::III, 0.25) - 0.353_553_390_593_273_8).abs() < 1e-15);
    }

    #[test]
    fn fair_points_are_ordered_and_on_curve() {
        let expected = [0.19098, 0.25, 0.30902, 0.35355];
        let fps: Vec<f64> = CurveId::ALL.iter().map(|&c| fair_point(c)).collect();
        for (i, &c) in CurveId::ALL.iter().enumerate() {
            let x = fps[i];
            assert!((x - expected[i]).abs() < 5e-6);
            assert!((curve_value(c, x) - x).abs() <= 1e-12);
            assert!(point(x, x).curve_residual(c).abs() <= 1e-12);
        }
        assert!(fps.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn bound_checks() {
        assert!(check_bounds(&point(0.25, 0.25)).is_empty());
        let a = fair_point(CurveId::I);
        assert!(check_bounds(&point(a, a)).is_empty());
        let v = check_bounds(&point(0.1, 0.1));
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0], BoundViolation::BelowCurveI { slack } if slack < -0.3));
        assert!(matches!(check_bounds(&point(0.7, 0.0))[0], BoundViolation::OutOfRange { coordinate: "gMax", .. }));
    }

    #[test]
    fn family_names_parse() {
        for k in FamilyKind::ALL {
            assert_eq!(k.name().parse::<FamilyKind>().unwrap(), k);
        }
        assert!("bogus".parse::<FamilyKind>().is_err());
    }
}
