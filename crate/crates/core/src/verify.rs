//! Sector projectors, restricted spectra and the end-to-end duality check.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::bosonic::{build_dual, StringForm};
use crate::dense::{digits, identity, max_abs_diff, max_operator_diff, space_dim, DenseOperator, Operator, C64};
use crate::encoding::{build_hamiltonian, Encoding, HamiltonianParams};
use crate::error::{Error, Result};
use crate::gauss_code::{build_code, GaussCode, LatticeSpec};
use crate::logical::{residual_symmetry_logical, rewrite_hamiltonian};
use crate::stabilizer::StabilizerCode;
use crate::zn_algebra::omega;

/// Allowed `‖[H, P]‖` and leakage out of a sector.
pub const SECTOR_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub enum SectorMatrix {
    Diagonal(Vec<f64>),
    Dense(DenseOperator),
}

#[derive(Clone, Debug)]
pub struct SectorProjector {
    pub matrix: SectorMatrix,
    pub rank: usize,
    pub constraints: Vec<String>,
}

impl SectorProjector {
    pub fn diagonal(entries: Vec<f64>, constraints: Vec<String>) -> Self {
        let rank = entries.iter().sum::<f64>().round() as usize;
        SectorProjector {
            matrix: SectorMatrix::Diagonal(entries),
            rank,
            constraints,
        }
    }

    pub fn dense(p: DenseOperator, constraints: Vec<String>) -> Self {
        let rank = p.trace().re.round() as usize;
        SectorProjector {
            matrix: SectorMatrix::Dense(p),
            rank,
            constraints,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.matrix {
            SectorMatrix::Diagonal(d) => d.len(),
            SectorMatrix::Dense(m) => m.nrows(),
        }
    }

    /// Basis indices kept by a diagonal projector.
    pub fn indices(&self) -> Option<Vec<usize>> {
        match &self.matrix {
            SectorMatrix::Diagonal(d) => Some(
                d.iter()
                    .enumerate()
                    .filter(|(_, v)| **v > 0.5)
                    .map(|(i, _)| i)
                    .collect(),
            ),
            SectorMatrix::Dense(_) => None,
        }
    }

    pub fn to_dense(&self) -> DenseOperator {
        match &self.matrix {
            SectorMatrix::Diagonal(d) => DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                d.len(),
                d.iter().map(|&v| C64::new(v, 0.0)),
            )),
            SectorMatrix::Dense(m) => m.clone(),
        }
    }

    /// `max(|P² - P|, |P - P†|)`.
    pub fn projector_deviation(&self) -> f64 {
        match &self.matrix {
            SectorMatrix::Diagonal(d) => d.iter().fold(0.0, |acc, v| acc.max((v * v - v).abs())),
            SectorMatrix::Dense(m) => max_abs_diff(&(m * m), m).max(max_abs_diff(m, &m.adjoint())),
        }
    }

    /// Orthonormal basis of the range as matrix columns.
    pub fn range_basis(&self) -> DenseOperator {
        match &self.matrix {
            SectorMatrix::Diagonal(d) => {
                let idx = self.indices().unwrap_or_default();
                let mut v = DMatrix::zeros(d.len(), idx.len());
                for (c, &i) in idx.iter().enumerate() {
                    v[(i, c)] = C64::new(1.0, 0.0);
                }
                v
            }
            SectorMatrix::Dense(m) => {
                let eig = m.clone().symmetric_eigen();
                let keep: Vec<usize> = (0..m.nrows()).filter(|&i| eig.eigenvalues[i] > 0.5).collect();
                let mut v = DMatrix::zeros(m.nrows(), keep.len());
                for (c, &i) in keep.iter().enumerate() {
                    v.set_column(c, &eig.eigenvectors.column(i));
                }
                v
            }
        }
    }
}

fn diag_from(dim: usize, keep: impl Fn(usize) -> bool) -> Vec<f64> {
    (0..dim).map(|i| if keep(i) { 1.0 } else { 0.0 }).collect()
}

/// `(1/N) Σ_j g^j` as a dense matrix.
fn average(g: &crate::zn_algebra::GenPauli) -> Result<DenseOperator> {
    let gd = g.to_dense()?;
    let n = g.levels();
    let mut acc = identity(gd.nrows());
    let mut power = identity(gd.nrows());
    for _ in 1..n {
        power = &power * &gd;
        acc += &power;
    }
    Ok(acc / C64::new(n as f64, 0.0))
}

/// `∏_g (1/N) Σ_j g^j` over the generators of any code, realized densely.
pub fn code_projector(code: &StabilizerCode) -> Result<SectorProjector> {
    crate::dense::dense_dim(code.levels(), code.n())?;
    let mut p = identity(space_dim(code.levels(), code.n())?);
    for g in code.generators() {
        p *= average(g)?;
    }
    Ok(SectorProjector::dense(
        p,
        vec![format!("{} stabilizers at +1", code.generators().len())],
    ))
}

/// Joint +1 eigenspace of the Gauss generators. Every generator is diagonal,
/// so the projector is evaluated one basis state at a time.
pub fn gauge_projector(gauss: &GaussCode) -> Result<SectorProjector> {
    let code = gauss.code();
    let n = code.levels();
    let dim = space_dim(n, code.n())?;
    let d = diag_from(dim, |i| {
        code.generators().iter().all(|g| {
            let (row, ph) = g.apply_basis(i);
            let avg: C64 = (0..n as i64).map(|j| omega(n, j * ph as i64)).sum::<C64>() / n as f64;
            row == i && avg.re > 0.5
        })
    });
    Ok(SectorProjector::diagonal(
        d,
        vec![format!("G_x = +1 at all {} sites", gauss.index().sites())],
    ))
}

/// Gauge sector with every site qudit restricted to `{|0⟩, |1⟩}`.
pub fn physical_projector(gauss: &GaussCode) -> Result<SectorProjector> {
    let gp = gauge_projector(gauss)?;
    let SectorMatrix::Diagonal(g) = gp.matrix else {
        return Err(Error::Internal("gauge projector is not diagonal".into()));
    };
    let idx = gauss.index();
    let n = gauss.levels();
    let sites: Vec<usize> = (0..idx.sites()).map(|s| idx.site_qudit(s)).collect();
    let d = diag_from(g.len(), |i| {
        g[i] > 0.5 && {
            let b = digits(i, n, idx.n_qudits());
            sites.iter().all(|&q| b[q] <= 1)
        }
    });
    let mut constraints = gp.constraints;
    constraints.push("site levels in {0, 1}".into());
    Ok(SectorProjector::diagonal(d, constraints))
}

/// Joint +1 eigenspace of every residual Z2 generator on the logical space.
pub fn residual_sector(gauss: &GaussCode) -> Result<SectorProjector> {
    let mut keep: Option<Vec<f64>> = None;
    for s in 0..gauss.index().sites() {
        let g = residual_symmetry_logical(gauss, s)?;
        let plus: Vec<f64> = g.entries.iter().map(|v| (1.0 + v.re) / 2.0).collect();
        keep = Some(match keep {
            None => plus,
            Some(k) => k.iter().zip(&plus).map(|(a, b)| a * b).collect(),
        });
    }
    let d = keep.ok_or_else(|| Error::InvalidLattice("lattice has no sites".into()))?;
    Ok(SectorProjector::diagonal(d, vec!["G^pi_x = +1 at all sites".into()]))
}

/// `H` in the orthonormal basis of `range(P)`.
pub fn restricted_matrix(h: &dyn Operator, p: &SectorProjector) -> Result<DenseOperator> {
    if h.dim() != p.dim() {
        return Err(Error::Dimension(format!(
            "operator {} vs projector {}",
            h.dim(),
            p.dim()
        )));
    }
    match p.indices() {
        Some(idx) => {
            let mut pos = vec![usize::MAX; p.dim()];
            for (k, &i) in idx.iter().enumerate() {
                pos[i] = k;
            }
            let mut m = DMatrix::zeros(idx.len(), idx.len());
            let mut leak = 0.0f64;
            for (c, &i) in idx.iter().enumerate() {
                for (r, v) in h.column(i) {
                    match pos[r] {
                        usize::MAX => leak += v.norm_sqr(),
                        k => m[(k, c)] += v,
                    }
                }
            }
            let leak = leak.sqrt();
            if leak > SECTOR_TOL {
                return Err(Error::LeavesSector { leak });
            }
            Ok(m)
        }
        None => {
            let hd = h.to_dense()?;
            let pd = p.to_dense();
            let leak = max_abs_diff(&(&hd * &pd), &(&pd * &hd));
            if leak > SECTOR_TOL {
                return Err(Error::LeavesSector { leak });
            }
            let v = p.range_basis();
            Ok(v.adjoint() * hd * v)
        }
    }
}

/// Ascending eigenvalues of `H` on `range(P)`.
pub fn restricted_spectrum(h: &dyn Operator, p: &SectorProjector) -> Result<Vec<f64>> {
    let m = restricted_matrix(h, p)?;
    Ok(sorted_eigenvalues(m))
}

pub fn sorted_eigenvalues(m: DenseOperator) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Index-wise `max |a_i - b_i|`; infinite when the lengths differ.
pub fn compare_spectra(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualityOptions {
    pub matrix_tol: f64,
    pub spectrum_tol: f64,
    pub string_form: StringForm,
    /// Run the physical-space spectral comparison for 2D lattices too.
    pub full_2d: bool,
}

impl Default for DualityOptions {
    fn default() -> Self {
        DualityOptions {
            matrix_tol: 1e-10,
            spectrum_tol: 1e-9,
            string_form: StringForm::Exact,
            full_2d: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorDims {
    pub physical: Option<usize>,
    pub logical: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub dims: usize,
    pub extent: Vec<usize>,
    #[serde(rename = "N")]
    pub levels: u32,
    pub encoding: Encoding,
    pub sector_dims: SectorDims,
    pub max_matrix_diff: f64,
    /// `null` when the spectral comparison was skipped.
    pub max_spectrum_diff: Option<f64>,
    pub gauge_violations: usize,
    pub pass: bool,
}

/// Compares the physical, logical and bosonic pictures of one Hamiltonian.
///
/// With the compact encoding the logical and bosonic forms agree only on the
/// residual sector, so the matrix comparison is restricted there.
pub fn duality_check(lattice: &LatticeSpec, p: &HamiltonianParams, opts: &DualityOptions) -> Result<DualityReport> {
    let gauss = build_code(lattice)?;
    let physical = build_hamiltonian(lattice, p)?;
    let gauge_violations = physical
        .terms()
        .iter()
        .filter(|t| {
            gauss
                .code()
                .syndrome(&t.pauli)
                .map(|s| s.iter().any(|&v| v != 0))
                .unwrap_or(true)
        })
        .count();
    let logical = rewrite_hamiltonian(gauss.code(), &physical)?;
    let dual = build_dual(&gauss, p, opts.string_form)?;
    let residual = residual_sector(&gauss)?;

    let max_matrix_diff = match p.encoding {
        Encoding::Projector => max_operator_diff(&dual, &logical)?,
        Encoding::Compact => {
            let a = restricted_matrix(&logical, &residual)?;
            let b = restricted_matrix(&dual, &residual)?;
            if a.nrows() == 0 {
                0.0
            } else {
                max_abs_diff(&a, &b)
            }
        }
    };

    let spectral = lattice.dims == 1 || opts.full_2d;
    let (physical_dim, max_spectrum_diff) = if spectral {
        let sector = physical_projector(&gauss)?;
        let a = restricted_spectrum(&physical, &sector)?;
        let b = restricted_spectrum(&logical, &residual)?;
        (Some(sector.rank), Some(compare_spectra(&a, &b)))
    } else {
        (None, None)
    };

    let dims_match = physical_dim.is_none_or(|d| d == residual.rank);
    let pass = gauge_violations == 0
        && max_matrix_diff < opts.matrix_tol
        && dims_match
        && max_spectrum_diff.is_none_or(|d| d < opts.spectrum_tol);
    Ok(DualityReport {
        dims: lattice.dims,
        extent: lattice.extent.clone(),
        levels: lattice.levels,
        encoding: p.encoding,
        sector_dims: SectorDims {
            physical: physical_dim,
            logical: residual.rank,
        },
        max_matrix_diff,
        max_spectrum_diff,
        gauge_violations,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bosonic::{build_dual_1d, total_penalty, PenaltyForm};
    use crate::dense::{commutator_norm, DiagonalOperator};

    fn chain(m: usize, n: u32) -> GaussCode {
        build_code(&LatticeSpec::chain(m, n).unwrap()).unwrap()
    }

    #[test]
    fn gauge_projector_rank_and_dense_agreement() {
        let g = chain(2, 3);
        let diag = gauge_projector(&g).unwrap();
        assert_eq!(diag.rank, 9);
        let dense = code_projector(g.code()).unwrap();
        assert_eq!(dense.rank, 9);
        assert!(dense.projector_deviation() < 1e-12);
        assert!(max_abs_diff(&dense.to_dense(), &diag.to_dense()) < 1e-12);
        let pd = dense.to_dense();
        for s in g.code().generators() {
            assert!(max_abs_diff(&(s.to_dense().unwrap() * &pd), &pd) < 1e-12);
        }
    }

    #[test]
    fn physical_rank_equals_residual_rank() {
        for (m, n) in [(2usize, 3u32), (4, 3), (2, 5)] {
            let g = chain(m, n);
            let phys = physical_projector(&g).unwrap();
            let res = residual_sector(&g).unwrap();
            assert_eq!(phys.rank, res.rank);
            let charge: usize = (0..m).map(|s| g.lattice().staggered_parity(s) as usize).sum();
            let closed = (0..1usize << m)
                .filter(|occ| (occ.count_ones() as usize + n as usize - charge % n as usize).is_multiple_of(n as usize))
                .count();
            assert_eq!(phys.rank, n as usize * closed);
            let gp = gauge_projector(&g).unwrap().to_dense();
            if gp.nrows() <= 81 {
                let pp = phys.to_dense();
                assert!(max_abs_diff(&(&gp * &pp), &(&pp * &gp)) < 1e-12);
            }
        }
    }

    #[test]
    fn identity_and_empty_sectors() {
        let id = DiagonalOperator::from_real(vec![1.0; 9]);
        let p = SectorProjector::diagonal(vec![1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0], vec![]);
        assert_eq!(restricted_spectrum(&id, &p).unwrap(), vec![1.0; 3]);
        let empty = SectorProjector::diagonal(vec![0.0; 9], vec![]);
        assert!(restricted_spectrum(&id, &empty).unwrap().is_empty());
    }

    #[test]
    fn leaking_operator_rejected() {
        let x = crate::zn_algebra::GenPauli::single(3, 1, 0, 1, 0)
            .unwrap()
            .to_dense()
            .unwrap();
        let p = SectorProjector::diagonal(vec![1.0, 0.0, 0.0], vec![]);
        assert!(matches!(restricted_spectrum(&x, &p), Err(Error::LeavesSector { .. })));
        let pd = SectorProjector::dense(p.to_dense(), vec![]);
        assert!(matches!(restricted_spectrum(&x, &pd), Err(Error::LeavesSector { .. })));
    }

    #[test]
    fn electric_spectrum_closed_form() {
        let g = chain(2, 3);
        let h = build_dual_1d(&g, &HamiltonianParams::new(0.0, 0.0, 0.5)).unwrap();
        let res = residual_sector(&g).unwrap();
        let mut expected: Vec<f64> = res
            .indices()
            .unwrap()
            .iter()
            .map(|&i| {
                digits(i, 3, 2)
                    .iter()
                    .map(|&v| -(2.0 * std::f64::consts::PI * v as f64 / 3.0).cos())
                    .sum()
            })
            .collect();
        expected.sort_by(f64::total_cmp);
        let got = restricted_spectrum(&h, &res).unwrap();
        assert!(compare_spectra(&got, &expected) < 1e-12);
    }

    #[test]
    fn small_duality_passes() {
        let lattice = LatticeSpec::chain(2, 3).unwrap();
        for enc in [Encoding::Projector, Encoding::Compact] {
            let p = HamiltonianParams::new(1.0, 0.7, 0.5).with_encoding(enc);
            let r = duality_check(&lattice, &p, &DualityOptions::default()).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn penalties_commute_and_preserve_sector_spectrum() {
        let g = chain(2, 3);
        let p = HamiltonianParams::new(1.0, 0.7, 0.5);
        let h = build_dual_1d(&g, &p).unwrap();
        let res = residual_sector(&g).unwrap();
        let base = restricted_spectrum(&h, &res).unwrap();
        for form in [PenaltyForm::Symmetry, PenaltyForm::Delta] {
            let pen = total_penalty(&g, 2.0, form).unwrap();
            assert!(commutator_norm(&h, &pen) < 1e-10);
            let sum = crate::dense::SparseOperator {
                dim: h.dim(),
                cols: (0..h.dim())
                    .map(|c| {
                        let mut col = h.column(c);
                        col.push((c, pen.entries[c]));
                        crate::dense::merge_entries(col)
                    })
                    .collect(),
            };
            let with = restricted_spectrum(&sum, &res).unwrap();
            assert!(compare_spectra(&base, &with) < 1e-12);
        }
    }
}
