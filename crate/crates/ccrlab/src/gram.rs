//! Vector systems whose Gram imaginary parts realize a prescribed
//! antisymmetric matrix.
//!
//! The inner product throughout is ⟨u, v⟩ = Σᵢ uᵢ·conj(vᵢ), linear in the
//! FIRST argument. With that convention a column system x₁..x_d satisfies
//! the commutation condition for Θ when 2·Im⟨x_ℓ, x_k⟩ = θ_{k,ℓ}, which is
//! the same as saying the Gram matrix G[k][ℓ] = ⟨x_k, x_ℓ⟩ equals
//! shift_c·I − (i/2)Θ for some real diagonal shift. The extension z_k =
//! x_k ⊕ y_k adds a y-system for Γ = Θ′ − Θ with the smallest admissible
//! diagonal ‖Γ‖/2, so that ‖y_k‖² = ‖Γ‖/2 for every k.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::antisym::{operator_norm, RealAntisymMatrix};
use crate::error::{Error, Result};
use crate::{C64, CMatrix};

/// Tolerance for Hermiticity and positive semidefiniteness checks.
const HERMITIAN_TOL: f64 = 1e-10;

/// ⟨u, v⟩ = Σᵢ uᵢ·conj(vᵢ), linear in the first argument.
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    debug_assert_eq!(u.len(), v.len());
    u.iter().zip(v.iter()).map(|(a, b)| a * b.conj()).sum()
}

/// Columns x₁..x_d realizing Θ through 2·Im⟨x_ℓ, x_k⟩ = θ_{k,ℓ}.
#[derive(Debug, Clone)]
pub struct VectorSystem {
    pub theta: RealAntisymMatrix,
    /// d×d complex matrix whose k-th column is x_k.
    pub x: CMatrix,
    /// The Gram diagonal constant ‖Θ‖/2 + 1 chosen by the construction.
    pub shift_c: f64,
}

/// Extension z_k = x_k ⊕ y_k realizing Θ′ on the doubled space.
#[derive(Debug, Clone)]
pub struct DilationVectorSystem {
    pub base: VectorSystem,
    pub theta_prime: RealAntisymMatrix,
    /// d×d complex matrix whose k-th column is y_k.
    pub y: CMatrix,
    /// 2d×d complex matrix whose k-th column is z_k = x_k ⊕ y_k.
    pub z: CMatrix,
}

impl DilationVectorSystem {
    pub fn dim(&self) -> usize {
        self.base.theta.dim()
    }

    /// Γ = Θ′ − Θ.
    pub fn gamma(&self) -> RealAntisymMatrix {
        self.theta_prime
            .sub(&self.base.theta)
            .expect("dimensions checked at construction")
    }

    /// ‖y_k‖² for column k.
    pub fn y_norm_squared(&self, k: usize) -> f64 {
        self.y.column(k).iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Factors a Hermitian PSD matrix G into columns X with ⟨x_k, x_ℓ⟩ = G[k][ℓ]
/// under the linear-in-first inner product.
///
/// Uses the Hermitian eigendecomposition square root so that singular G is
/// handled; eigenvalues in [−1e−10, 0) are clamped to zero, anything lower is
/// [`Error::NotPsd`].
pub fn psd_factor(g: &CMatrix) -> Result<CMatrix> {
    let herm_residual = (g - g.adjoint()).map(|c| c.norm()).max();
    if herm_residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian(herm_residual));
    }
    let eig = g.clone().symmetric_eigen();
    let mut sqrt_vals = Vec::with_capacity(eig.eigenvalues.len());
    for &lambda in eig.eigenvalues.iter() {
        if lambda < -HERMITIAN_TOL {
            return Err(Error::NotPsd(lambda));
        }
        sqrt_vals.push(Complex::new(lambda.max(0.0).sqrt(), 0.0));
    }
    // With Y = D^{1/2} U^H the standard Gram Y^H Y equals G; conjugating
    // flips it into the linear-in-first convention.
    let y = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(sqrt_vals)) * eig.eigenvectors.adjoint();
    Ok(y.map(|c| c.conj()))
}

/// Max residual of the Gram condition: max_{k,ℓ} |2·Im⟨col_ℓ, col_k⟩ − target_{k,ℓ}|.
pub fn verify_gram(vectors: &CMatrix, target: &RealAntisymMatrix) -> Result<f64> {
    let d = target.dim();
    if vectors.ncols() != d {
        return Err(Error::DimensionMismatch {
            left: vectors.ncols(),
            right: d,
        });
    }
    let mut residual = 0.0f64;
    for k in 0..d {
        for l in 0..d {
            let ip = inner(
                vectors.column(l).as_slice(),
                vectors.column(k).as_slice(),
            );
            residual = residual.max((2.0 * ip.im - target.entries()[(k, l)]).abs());
        }
    }
    Ok(residual)
}

/// Builds the canonical vector system for Θ.
///
/// The Gram is G = shift_c·I − (i/2)Θ with shift_c = ‖Θ‖/2 + 1, positive
/// definite with margin 1, factored on the minimal ambient dimension d.
pub fn construct_theta_vectors(theta: &RealAntisymMatrix) -> Result<VectorSystem> {
    let shift_c = operator_norm(theta) / 2.0 + 1.0;
    let g = gram_target(theta, shift_c);
    let x = psd_factor(&g).map_err(|e| match e {
        Error::NotPsd(lambda) => Error::FactorizationFailure(format!(
            "x-Gram lost positive definiteness (eigenvalue {lambda:.3e})"
        )),
        other => other,
    })?;
    Ok(VectorSystem {
        theta: theta.clone(),
        x,
        shift_c,
    })
}

/// Extends a Θ-system by a y-system for Γ = Θ′ − Θ, stacking z_k = x_k ⊕ y_k.
///
/// The y-Gram has diagonal ‖Γ‖/2 and imaginary part −Γ/2, which is positive
/// semidefinite (possibly singular) by the spectral bound on Γ/2.
pub fn extend_vectors(
    base: &VectorSystem,
    theta_prime: &RealAntisymMatrix,
) -> Result<DilationVectorSystem> {
    let d = base.theta.dim();
    if theta_prime.dim() != d {
        return Err(Error::DimensionMismatch {
            left: theta_prime.dim(),
            right: d,
        });
    }
    let gamma = theta_prime.sub(&base.theta)?;
    let g = gram_target(&gamma, operator_norm(&gamma) / 2.0);
    let y = psd_factor(&g).map_err(|e| match e {
        Error::NotPsd(lambda) => Error::FactorizationFailure(format!(
            "y-Gram lost positive semidefiniteness (eigenvalue {lambda:.3e})"
        )),
        other => other,
    })?;
    let mut z = CMatrix::zeros(2 * d, d);
    z.view_mut((0, 0), (d, d)).copy_from(&base.x);
    z.view_mut((d, 0), (d, d)).copy_from(&y);
    Ok(DilationVectorSystem {
        base: base.clone(),
        theta_prime: theta_prime.clone(),
        y,
        z,
    })
}

/// G = diag·I − (i/2)·M, the Hermitian Gram target for an antisymmetric M.
fn gram_target(m: &RealAntisymMatrix, diag: f64) -> CMatrix {
    let d = m.dim();
    CMatrix::from_fn(d, d, |k, l| {
        let re = if k == l { diag } else { 0.0 };
        Complex::new(re, -0.5 * m.entries()[(k, l)])
    })
}

/// Smallest singular value of a column system; > 0 means linear independence.
pub fn smallest_singular_value(m: &CMatrix) -> f64 {
    m.clone()
        .singular_values()
        .iter()
        .fold(f64::INFINITY, |a, &b| a.min(b))
}
