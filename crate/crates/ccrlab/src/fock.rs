//! Truncated symmetric Fock space machinery.
//!
//! States live on the span of occupation vectors |n⟩ = |n₁..n_m⟩ with total
//! degree Σnᵢ ≤ N, ordered by degree then lexicographically so that every
//! degree-≤L corner is a leading principal block. Exponential vectors,
//! ladder operators, generators, and Weyl operators are realized as dense
//! complex matrices on that basis.
//!
//! The central object is [`weyl_compressed`]: the EXACT compression
//! P_N W(z) P_N of the infinite-dimensional Weyl operator, obtained from the
//! normally ordered product e^{−‖z‖²/2}·e^{a†(z)}·e^{−a(z)}. Both
//! exponential factors are finite polynomial sums at truncation (ladder
//! operators are nilpotent there), and truncating a product of pure raising
//! (or pure lowering) factors loses nothing because intermediate degrees
//! stay between the endpoints. The only error in `weyl_compressed` is
//! roundoff.
//!
//! [`weyl_exponentiated`] is the second construction, exp(iA(z)) for the
//! Hermitian generator A(z) = −i(a†(z) − a(z)). It is exactly unitary at
//! truncation and obeys the group law there, but it only agrees with the
//! true compression up to truncation effects that concentrate near the
//! cutoff boundary; comparisons should be made on low-degree corners.

use std::collections::HashMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{C64, CMatrix, CVector};

/// Default cap on the truncated space dimension.
pub const DEFAULT_DIM_CAP: usize = 20_000;

/// binomial(n, k) without overflow for the sizes the cap admits.
pub fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// A mode count and total-degree cutoff with the graded-lex occupation basis.
#[derive(Debug, Clone)]
pub struct FockTruncation {
    modes: usize,
    cutoff: u32,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    /// raise[j][i]: target index and √(nᵢ+1) for a†ᵢ|basis[j]⟩, when the
    /// result stays under the cutoff.
    raise: Vec<Vec<Option<(usize, f64)>>>,
}

impl FockTruncation {
    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Number of occupation states, binomial(m+N, m).
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn index_of(&self, occupation: &[u32]) -> Option<usize> {
        self.index.get(occupation).copied()
    }

    /// Total degree of basis state j.
    pub fn degree(&self, j: usize) -> u32 {
        self.basis[j].iter().sum()
    }

    /// Dimension of the degree-≤L corner.
    pub fn corner_dim(&self, corner: u32) -> usize {
        binomial(self.modes + corner as usize, self.modes) as usize
    }

    /// Identity on the truncated space.
    pub fn identity(&self) -> OperatorMatrix {
        OperatorMatrix {
            modes: self.modes,
            cutoff: self.cutoff,
            entries: CMatrix::identity(self.dim(), self.dim()),
        }
    }
}

/// Builds the graded-lex truncation for `modes` modes and cutoff N under the
/// default dimension cap.
pub fn make_truncation(modes: usize, cutoff: u32) -> Result<FockTruncation> {
    make_truncation_with_cap(modes, cutoff, DEFAULT_DIM_CAP)
}

/// Same as [`make_truncation`] with an explicit dimension cap.
pub fn make_truncation_with_cap(modes: usize, cutoff: u32, cap: usize) -> Result<FockTruncation> {
    assert!(modes >= 1, "mode count must be positive");
    let dim = binomial(modes + cutoff as usize, modes);
    if dim > cap as u128 {
        return Err(Error::DimensionCapExceeded {
            dim: dim.min(usize::MAX as u128) as usize,
            cap,
        });
    }
    let dim = dim as usize;
    let mut basis = Vec::with_capacity(dim);
    let mut scratch = vec![0u32; modes];
    for degree in 0..=cutoff {
        push_degree(&mut basis, &mut scratch, 0, degree);
    }
    debug_assert_eq!(basis.len(), dim);
    let index: HashMap<Vec<u32>, usize> =
        basis.iter().enumerate().map(|(j, n)| (n.clone(), j)).collect();
    let raise = basis
        .iter()
        .map(|n| {
            let total: u32 = n.iter().sum();
            (0..modes)
                .map(|i| {
                    if total + 1 > cutoff {
                        return None;
                    }
                    let mut up = n.clone();
                    up[i] += 1;
                    let tgt = index[&up];
                    Some((tgt, ((n[i] + 1) as f64).sqrt()))
                })
                .collect()
        })
        .collect();
    Ok(FockTruncation {
        modes,
        cutoff,
        basis,
        index,
        raise,
    })
}

/// Appends, in lexicographic order, all occupations of the tail
/// `scratch[pos..]` summing to `remaining`.
fn push_degree(basis: &mut Vec<Vec<u32>>, scratch: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == scratch.len() {
        scratch[pos] = remaining;
        basis.push(scratch.clone());
        return;
    }
    for head in 0..=remaining {
        scratch[pos] = head;
        push_degree(basis, scratch, pos + 1, remaining - head);
    }
}

/// A vector of coefficients over the occupation basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    pub modes: usize,
    pub cutoff: u32,
    pub coeffs: CVector,
}

impl FockVector {
    /// ⟨self, other⟩, linear in the first argument.
    pub fn inner(&self, other: &FockVector) -> C64 {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "truncation mismatch");
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// A dense operator on the truncated space, tagged with its truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub modes: usize,
    pub cutoff: u32,
    pub entries: CMatrix,
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    fn check_same_truncation(&self, other: &OperatorMatrix) -> Result<()> {
        if self.modes != other.modes || self.cutoff != other.cutoff {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    pub fn matmul(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_same_truncation(rhs)?;
        Ok(OperatorMatrix {
            modes: self.modes,
            cutoff: self.cutoff,
            entries: &self.entries * &rhs.entries,
        })
    }

    pub fn sub(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_same_truncation(rhs)?;
        Ok(OperatorMatrix {
            modes: self.modes,
            cutoff: self.cutoff,
            entries: &self.entries - &rhs.entries,
        })
    }

    pub fn scale(&self, factor: C64) -> OperatorMatrix {
        OperatorMatrix {
            modes: self.modes,
            cutoff: self.cutoff,
            entries: self.entries.map(|c| c * factor),
        }
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix {
            modes: self.modes,
            cutoff: self.cutoff,
            entries: self.entries.adjoint(),
        }
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        FockVector {
            modes: self.modes,
            cutoff: self.cutoff,
            coeffs: &self.entries * &v.coeffs,
        }
    }

    /// Largest singular value.
    pub fn op_norm(&self) -> f64 {
        op_norm(&self.entries)
    }

    /// The degree-≤L leading block, itself an operator on the L-truncation.
    pub fn corner_restrict(&self, corner: u32) -> Result<OperatorMatrix> {
        if corner > self.cutoff {
            return Err(Error::CutoffExceeded {
                corner,
                cutoff: self.cutoff,
            });
        }
        let size = binomial(self.modes + corner as usize, self.modes) as usize;
        Ok(OperatorMatrix {
            modes: self.modes,
            cutoff: corner,
            entries: self.entries.view((0, 0), (size, size)).into_owned(),
        })
    }
}

/// Largest singular value of a dense complex matrix.
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .fold(0.0f64, |a, &b| a.max(b))
}

/// JSON image of an operator: row-major [re, im] entry pairs plus the
/// truncation header.
#[derive(Serialize, Deserialize)]
struct OperatorMatrixJson {
    modes: usize,
    cutoff: u32,
    entries: Vec<Vec<[f64; 2]>>,
}

impl OperatorMatrix {
    pub fn to_json(&self) -> String {
        let rows = (0..self.entries.nrows())
            .map(|r| {
                (0..self.entries.ncols())
                    .map(|c| {
                        let e = self.entries[(r, c)];
                        [e.re, e.im]
                    })
                    .collect()
            })
            .collect();
        serde_json::to_string(&OperatorMatrixJson {
            modes: self.modes,
            cutoff: self.cutoff,
            entries: rows,
        })
        .expect("operator serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<OperatorMatrix> {
        let raw: OperatorMatrixJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let n = raw.entries.len();
        if raw.entries.iter().any(|row| row.len() != n) {
            return Err(Error::Parse("operator entries must be square".into()));
        }
        let entries = CMatrix::from_fn(n, n, |r, c| {
            Complex::new(raw.entries[r][c][0], raw.entries[r][c][1])
        });
        Ok(OperatorMatrix {
            modes: raw.modes,
            cutoff: raw.cutoff,
            entries,
        })
    }
}

/// The truncated exponential vector e(x): coefficient Πᵢ xᵢ^{nᵢ}/√(nᵢ!) at
/// occupation n.
pub fn exp_vector(x: &[C64], trunc: &FockTruncation) -> FockVector {
    assert_eq!(x.len(), trunc.modes(), "mode count mismatch");
    let coeffs = CVector::from_iterator(
        trunc.dim(),
        trunc.basis().iter().map(|n| {
            let mut c = Complex::new(1.0, 0.0);
            for (i, &ni) in n.iter().enumerate() {
                if ni > 0 {
                    c *= x[i].powu(ni) / sqrt_factorial(ni);
                }
            }
            c
        }),
    );
    FockVector {
        modes: trunc.modes(),
        cutoff: trunc.cutoff(),
        coeffs,
    }
}

fn sqrt_factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product::<f64>().sqrt()
}

/// Sparse action of a linear combination of ladder operators, stored as
/// (source index, target index, weight) triples.
struct LadderAction {
    dim: usize,
    terms: Vec<(u32, u32, C64)>,
}

impl LadderAction {
    /// a†(z) = Σᵢ zᵢ a†ᵢ with rows above the cutoff dropped.
    fn raising(trunc: &FockTruncation, z: &[C64]) -> Self {
        let mut terms = Vec::new();
        for (j, row) in trunc.raise.iter().enumerate() {
            for (i, entry) in row.iter().enumerate() {
                if let Some((tgt, coef)) = entry {
                    if z[i].norm_sqr() > 0.0 {
                        terms.push((j as u32, *tgt as u32, z[i] * *coef));
                    }
                }
            }
        }
        LadderAction {
            dim: trunc.dim(),
            terms,
        }
    }

    /// a(z) = a†(z)*, the conjugate transpose action.
    fn lowering(trunc: &FockTruncation, z: &[C64]) -> Self {
        let mut terms = Vec::new();
        for (j, row) in trunc.raise.iter().enumerate() {
            for (i, entry) in row.iter().enumerate() {
                if let Some((tgt, coef)) = entry {
                    if z[i].norm_sqr() > 0.0 {
                        terms.push((*tgt as u32, j as u32, z[i].conj() * *coef));
                    }
                }
            }
        }
        LadderAction {
            dim: trunc.dim(),
            terms,
        }
    }

    fn negated(mut self) -> Self {
        for t in &mut self.terms {
            t.2 = -t.2;
        }
        self
    }

    /// Left-multiplies a dense block: out = action · m.
    fn apply(&self, m: &CMatrix) -> CMatrix {
        let rows = self.dim;
        assert_eq!(m.nrows(), rows);
        let cols = m.ncols();
        let mut out = CMatrix::zeros(rows, cols);
        let src_storage = m.as_slice();
        let dst_storage = out.as_mut_slice();
        for c in 0..cols {
            let src = &src_storage[c * rows..(c + 1) * rows];
            let dst = &mut dst_storage[c * rows..(c + 1) * rows];
            for &(s, t, w) in &self.terms {
                let v = src[s as usize];
                if v.re != 0.0 || v.im != 0.0 {
                    dst[t as usize] += w * v;
                }
            }
        }
        out
    }

    /// Horner evaluation of Σ_{j=0}^{degree} action^j/j! applied to `rhs`.
    /// Exact because the action is nilpotent of order ≤ degree+1.
    fn exp_apply(&self, degree: u32, rhs: &CMatrix) -> CMatrix {
        let mut s = rhs.clone();
        for j in (1..=degree).rev() {
            s = self.apply(&s).unscale(j as f64) + rhs;
        }
        s
    }

    fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for &(s, t, w) in &self.terms {
            m[(t as usize, s as usize)] += w;
        }
        m
    }
}

/// The creation operator a†(z) = Σᵢ zᵢ a†ᵢ as a dense matrix; its conjugate
/// transpose is the annihilation operator a(z).
pub fn creation(z: &[C64], trunc: &FockTruncation) -> OperatorMatrix {
    assert_eq!(z.len(), trunc.modes(), "mode count mismatch");
    OperatorMatrix {
        modes: trunc.modes(),
        cutoff: trunc.cutoff(),
        entries: LadderAction::raising(trunc, z).to_dense(),
    }
}

/// The Hermitian generator A(z) = −i(a†(z) − a(z)), so that the Weyl
/// operator is exp(iA(z)).
pub fn generator(z: &[C64], trunc: &FockTruncation) -> OperatorMatrix {
    let up = creation(z, trunc);
    let down = up.adjoint();
    let diff = up.sub(&down).expect("same truncation");
    diff.scale(Complex::new(0.0, -1.0))
}

/// The exact compression P_N W(z) P_N of the Weyl operator, via the normally
/// ordered finite product e^{−‖z‖²/2}·(P e^{a†(z)} P)·(P e^{−a(z)} P).
pub fn weyl_compressed(z: &[C64], trunc: &FockTruncation) -> OperatorMatrix {
    assert_eq!(z.len(), trunc.modes(), "mode count mismatch");
    let id = CMatrix::identity(trunc.dim(), trunc.dim());
    let entries = weyl_apply(z, trunc, &id);
    OperatorMatrix {
        modes: trunc.modes(),
        cutoff: trunc.cutoff(),
        entries,
    }
}

/// P_N W(z) P_N applied to a dense block without forming the operator first.
pub fn weyl_apply(z: &[C64], trunc: &FockTruncation, block: &CMatrix) -> CMatrix {
    assert_eq!(z.len(), trunc.modes(), "mode count mismatch");
    let norm_sq: f64 = z.iter().map(|c| c.norm_sqr()).sum();
    let lowered = LadderAction::lowering(trunc, z)
        .negated()
        .exp_apply(trunc.cutoff(), block);
    let raised = LadderAction::raising(trunc, z).exp_apply(trunc.cutoff(), &lowered);
    raised * Complex::new((-norm_sq / 2.0).exp(), 0.0)
}

/// left* · (P_N W(z) P_N) · right for thin blocks, computed through two
/// lowering-exponential passes: P e^{a†(z)} P = (P e^{a(z)} P)*.
pub fn weyl_sandwich(
    z: &[C64],
    trunc: &FockTruncation,
    left: &CMatrix,
    right: &CMatrix,
) -> CMatrix {
    assert_eq!(z.len(), trunc.modes(), "mode count mismatch");
    let norm_sq: f64 = z.iter().map(|c| c.norm_sqr()).sum();
    let lowering = LadderAction::lowering(trunc, z);
    let left_pass = lowering.exp_apply(trunc.cutoff(), left);
    let right_pass = lowering.negated().exp_apply(trunc.cutoff(), right);
    (left_pass.adjoint() * right_pass) * Complex::new((-norm_sq / 2.0).exp(), 0.0)
}

/// exp(iA(z)) via Hermitian eigendecomposition of the generator; exactly
/// unitary up to roundoff.
pub fn weyl_exponentiated(z: &[C64], trunc: &FockTruncation) -> Result<OperatorMatrix> {
    let a = generator(z, trunc);
    let entries = unitary_exp(&a.entries)?;
    Ok(OperatorMatrix {
        modes: trunc.modes(),
        cutoff: trunc.cutoff(),
        entries,
    })
}

/// exp(iH) for Hermitian H.
pub fn unitary_exp(h: &CMatrix) -> Result<CMatrix> {
    let eig = h
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 10_000)
        .ok_or(Error::EigensolveFailure)?;
    let phases = CVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&l| Complex::new(0.0, l).exp()),
    );
    let mut scaled = eig.eigenvectors.clone();
    for (mut col, phase) in scaled.column_iter_mut().zip(phases.iter()) {
        for e in col.iter_mut() {
            *e *= *phase;
        }
    }
    Ok(scaled * eig.eigenvectors.adjoint())
}
