//! Dense numerical diagnostics: sector spectra of chain Hamiltonians and the
//! cross-length degeneracy matching that witnesses a dynamic supersymmetry.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::chain::{global_charge, ChainModel};
use crate::error::{Error, Result};
use crate::graded::GradedOperator;

/// Eigenvalues closer than this are merged into one multiplicity.
pub const DEDUP_TOL: f64 = 1e-9;
/// Eigenvalues from different lengths pair up within this tolerance.
pub const MATCH_TOL: f64 = 1e-6;
/// Singular values above this count toward a rank.
pub const RANK_TOL: f64 = 1e-6;

const DEFAULT_DIM_CAP: usize = 4096;

/// Dense dimension cap, overridable through `SUSYCHAIN_DIM_CAP`.
pub fn dimension_cap() -> usize {
    std::env::var("SUSYCHAIN_DIM_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

fn check_cap(needed: usize) -> Result<()> {
    let cap = dimension_cap();
    if needed > cap {
        Err(Error::DimensionCap { needed, cap })
    } else {
        Ok(())
    }
}

/// Dense real matrix of an operator; entries must be numerically real.
fn to_dense(op: &GradedOperator) -> Result<DMatrix<f64>> {
    let float = op.to_float();
    let mut mat = DMatrix::zeros(op.codomain().dim(), op.domain().dim());
    for (r, c, v) in float.iter() {
        let z = v.to_complex();
        if z.im.abs() > 1e-9 {
            return Err(Error::UnexpectedSpectrum(format!(
                "operator entry ({r},{c}) has imaginary part {}",
                z.im
            )));
        }
        mat[(r, c)] = z.re;
    }
    Ok(mat)
}

/// Orthonormal basis of the image of a real symmetric projector, as columns.
pub fn sector_basis(projector: &GradedOperator) -> Result<DMatrix<f64>> {
    let mat = to_dense(projector)?;
    let eig = nalgebra::SymmetricEigen::new(mat);
    let cols: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&i| eig.eigenvalues[i] > 0.5)
        .collect();
    let dim = eig.eigenvectors.nrows();
    let mut basis = DMatrix::zeros(dim, cols.len());
    for (k, &i) in cols.iter().enumerate() {
        basis.set_column(k, &eig.eigenvectors.column(i));
    }
    Ok(basis)
}

/// One eigenvalue with its multiplicity.
#[derive(Clone, Debug, Serialize)]
pub struct EigenvalueEntry {
    pub value: f64,
    pub multiplicity: usize,
}

/// Sorted, deduplicated spectrum of a Hamiltonian restricted to a sector.
pub fn sector_spectrum(
    ham: &GradedOperator,
    basis: &DMatrix<f64>,
) -> Result<Vec<EigenvalueEntry>> {
    let dense = to_dense(ham)?;
    let restricted = basis.transpose() * dense * basis;
    // faer instead of nalgebra here: the restricted block is often exactly
    // singular, which nalgebra's QR iteration does not survive
    let k = restricted.nrows();
    let mat = faer::Mat::from_fn(k, k, |i, j| restricted[(i, j)]);
    let eigen = mat
        .eigenvalues()
        .map_err(|e| Error::UnexpectedSpectrum(format!("eigensolver failed: {e:?}")))?;
    let mut values = Vec::with_capacity(eigen.len());
    for z in eigen.iter() {
        if z.im.abs() > 1e-7 {
            return Err(Error::UnexpectedSpectrum(format!(
                "restricted Hamiltonian eigenvalue {z} is not real"
            )));
        }
        values.push(z.re);
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<EigenvalueEntry> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some(last) if (v - last.value).abs() <= DEDUP_TOL => last.multiplicity += 1,
            _ => out.push(EigenvalueEntry {
                value: v,
                multiplicity: 1,
            }),
        }
    }
    Ok(out)
}

/// Spectrum of one chain length in the model's cyclicity sector.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub version: String,
    pub model: String,
    pub l: usize,
    pub sector: String,
    pub sector_dimension: usize,
    pub eigenvalues: Vec<EigenvalueEntry>,
}

pub fn sector_name(omega: i64) -> &'static str {
    if omega == 1 {
        "cyclic"
    } else {
        "alternate"
    }
}

/// Diagonalizes the model at length `l` in its cyclicity sector.
pub fn spectrum_report(model: &ChainModel, l: usize) -> Result<SpectrumReport> {
    assert!(l >= 2);
    check_cap(model.dim(l))?;
    let basis = sector_basis(&model.projector(l))?;
    let eigenvalues = sector_spectrum(&model.hamiltonian(l), &basis)?;
    Ok(SpectrumReport {
        version: env!("CARGO_PKG_VERSION").into(),
        model: model.name.clone(),
        l,
        sector: sector_name(model.omega).into(),
        sector_dimension: basis.ncols(),
        eigenvalues,
    })
}

/// A value present at both lengths, with its two multiplicities.
#[derive(Clone, Debug, Serialize)]
pub struct MatchEntry {
    pub value: f64,
    pub mult_low: usize,
    pub mult_high: usize,
}

/// Cross-length comparison of sector spectra at lengths `l` and `l+1`.
#[derive(Clone, Debug, Serialize)]
pub struct DegeneracyReport {
    pub version: String,
    pub model: String,
    pub l_low: usize,
    pub l_high: usize,
    pub sector: String,
    pub low: Vec<EigenvalueEntry>,
    pub high: Vec<EigenvalueEntry>,
    pub matches: Vec<MatchEntry>,
    /// Nonzero eigenvalues seen at only one length.
    pub unmatched_low: Vec<f64>,
    pub unmatched_high: Vec<f64>,
    /// Rank of the restricted global charge: a lower bound on the number of
    /// shared eigenvalues (with multiplicity). Absent for chargeless models.
    pub min_shared: Option<usize>,
    /// States at the lower length annihilated by both the raising charge and
    /// the lowering adjoint; their count is reported, never asserted.
    pub singlet_count: Option<usize>,
}

fn rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .filter(|&&s| s > RANK_TOL)
        .count()
}

/// Compares the sector spectra at adjacent lengths and, when the model has a
/// charge, bounds the shared count by the rank of the restricted charge.
pub fn degeneracy_match(model: &ChainModel, l_low: usize) -> Result<DegeneracyReport> {
    assert!(l_low >= 2);
    let l_high = l_low + 1;
    check_cap(model.dim(l_high))?;
    let basis_low = sector_basis(&model.projector(l_low))?;
    let basis_high = sector_basis(&model.projector(l_high))?;
    let low = sector_spectrum(&model.hamiltonian(l_low), &basis_low)?;
    let high = sector_spectrum(&model.hamiltonian(l_high), &basis_high)?;

    let mut matches = Vec::new();
    let mut unmatched_low = Vec::new();
    let mut unmatched_high = Vec::new();
    for e in &low {
        match high.iter().find(|f| (f.value - e.value).abs() <= MATCH_TOL) {
            Some(f) => matches.push(MatchEntry {
                value: e.value,
                mult_low: e.multiplicity,
                mult_high: f.multiplicity,
            }),
            None if e.value.abs() > MATCH_TOL => unmatched_low.push(e.value),
            None => {}
        }
    }
    for f in &high {
        if f.value.abs() > MATCH_TOL
            && !low.iter().any(|e| (f.value - e.value).abs() <= MATCH_TOL)
        {
            unmatched_high.push(f.value);
        }
    }

    let mut min_shared = None;
    let mut singlet_count = None;
    if let Some(charge) = &model.charge {
        let q_up = global_charge(charge, l_low)?;
        let m_up = basis_high.transpose() * to_dense(&q_up)? * &basis_low;
        min_shared = Some(rank(&m_up));
        // singlets: also annihilated by the adjoint charge from below
        let q_down = global_charge(charge, l_low - 1)?;
        let q_down_adj = q_down.superadjoint(
            &model.form.tensor_power(l_low - 1),
            &model.form.tensor_power(l_low),
        );
        let basis_below = sector_basis(&model.projector(l_low - 1))?;
        let m_down = basis_below.transpose() * to_dense(&q_down_adj)? * &basis_low;
        let mut stacked = DMatrix::zeros(m_up.nrows() + m_down.nrows(), basis_low.ncols());
        stacked.rows_mut(0, m_up.nrows()).copy_from(&m_up);
        stacked
            .rows_mut(m_up.nrows(), m_down.nrows())
            .copy_from(&m_down);
        singlet_count = Some(basis_low.ncols() - rank(&stacked));
    }

    Ok(DegeneracyReport {
        version: env!("CARGO_PKG_VERSION").into(),
        model: model.name.clone(),
        l_low,
        l_high,
        sector: sector_name(model.omega).into(),
        low,
        high,
        matches,
        unmatched_low,
        unmatched_high,
        min_shared,
        singlet_count,
    })
}
