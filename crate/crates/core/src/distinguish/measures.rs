use super::check_dims;
use crate::linalg::{hermitian_eig, sqrt_psd, svd, DensityOperator};
use crate::Result;

/// Trace distance and fidelity of one pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistinguishabilityReport {
    pub trace_distance: f64,
    pub fidelity: f64,
}

/// `D(ρ, σ) = ½ Tr|ρ − σ|`.
pub fn trace_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    check_dims(rho, sigma)?;
    let diff = rho.matrix() - sigma.matrix();
    let eig = hermitian_eig(&diff)?;
    let d = 0.5 * eig.eigenvalues.iter().map(|l| l.abs()).sum::<f64>();
    Ok(d.clamp(0.0, 1.0))
}

/// `F(ρ, σ) = Tr|√ρ √σ|`, the sum of singular values of `√ρ √σ`.
pub fn fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    check_dims(rho, sigma)?;
    let product = &sqrt_psd(rho) * &sqrt_psd(sigma);
    Ok(svd(&product).nuclear_norm().clamp(0.0, 1.0))
}

pub fn distinguishability(rho: &DensityOperator, sigma: &DensityOperator) -> Result<DistinguishabilityReport> {
    Ok(DistinguishabilityReport {
        trace_distance: trace_distance(rho, sigma)?,
        fidelity: fidelity(rho, sigma)?,
    })
}
