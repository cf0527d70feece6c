//! Bosonic dual Hamiltonians on the logical link space.
//!
//! Each logical qudit is a truncated boson with number operator `n` and
//! conjugate phase `ρ`. Site constraints enter only through the
//! Kronecker-delta projectors `π_x = δ_N(Δ_x + p_x - 1)`, where `Δ_x` is the
//! outgoing minus incoming link number at `x`.

use nalgebra::DMatrix;

use crate::circuits::gates::qft;
use crate::dense::{digits, index_of, merge_entries, space_dim, DenseOperator, DiagonalOperator, Operator, C64};
use crate::encoding::{plaquette_links, sites_between, HamiltonianParams};
use crate::error::{Error, Result};
use crate::gauss_code::{Direction, GaussCode};
use crate::logical::{kronecker_delta, logical_diagonal, residual_symmetry_logical, site_level};

/// Entries of `e^{±i2πρ/N}` smaller than this are treated as structural zeros.
const SHIFT_DROP: f64 = 1e-13;

/// Dense single-mode operators with the cutoff `φ†|N-1⟩ = 0`.
#[derive(Clone, Debug)]
pub struct BosonOps {
    pub levels: u32,
    pub phi_dag: DenseOperator,
    pub phi: DenseOperator,
    pub number: DenseOperator,
    pub rho: DenseOperator,
}

pub fn boson_ops(levels: u32) -> Result<BosonOps> {
    if levels < 2 {
        return Err(Error::InvalidArgument("bosons need N >= 2".into()));
    }
    let n = levels as usize;
    let mut phi_dag = DMatrix::zeros(n, n);
    for j in 0..n - 1 {
        phi_dag[(j + 1, j)] = C64::new(((j + 1) as f64).sqrt(), 0.0);
    }
    let phi = phi_dag.adjoint();
    let number = &phi_dag * &phi;
    let f = qft(levels)?;
    let rho = f.adjoint() * &number * &f;
    Ok(BosonOps {
        levels,
        phi_dag,
        phi,
        number,
        rho,
    })
}

impl BosonOps {
    /// `e^{i2πn/N}`.
    pub fn clock(&self) -> DenseOperator {
        expm_i_hermitian(&self.number, phase_scale(self.levels))
    }

    /// `e^{i2πρ/N}`.
    pub fn shift(&self) -> DenseOperator {
        expm_i_hermitian(&self.rho, phase_scale(self.levels))
    }
}

fn phase_scale(levels: u32) -> f64 {
    2.0 * std::f64::consts::PI / levels as f64
}

/// `exp(i t H)` for Hermitian `H` by eigendecomposition.
pub fn expm_i_hermitian(h: &DenseOperator, t: f64) -> DenseOperator {
    let eig = h.clone().symmetric_eigen();
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| C64::from_polar(1.0, t * l)));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

/// `π_site` on the logical space.
pub fn pi_projector(gauss: &GaussCode, site: usize) -> Result<DiagonalOperator> {
    let n = gauss.levels();
    logical_diagonal(gauss, |links| {
        C64::new(kronecker_delta(n, site_level(gauss, site, links) as i64 - 1), 0.0)
    })
}

/// Form of the phase string carried by vertical hops.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StringForm {
    /// `∏ (δ_N(v - 1) - δ_N(v))`: the exact image of the fermionic string.
    #[default]
    Exact,
    /// `∏ (2π_k - 1) = (-1)^{Σ(1 - π_k)}`.
    Sign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PenaltyForm {
    /// `Λ(1 - G^π)`.
    Symmetry,
    /// `Λ(1 - δ_N(v - 1))(1 - δ_N(v))`.
    Delta,
}

#[derive(Clone, Debug)]
struct Hop {
    link: usize,
    from: usize,
    to: usize,
    string: Vec<usize>,
}

/// Dual Hamiltonian evaluated column by column.
#[derive(Clone, Debug)]
pub struct DualHamiltonian {
    levels: u32,
    links: usize,
    dim: usize,
    eps: f64,
    lambda_p: f64,
    form: StringForm,
    electric: Vec<f64>,
    mass: Vec<f64>,
    parity: Vec<u32>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
    delta: Vec<f64>,
    hops: Vec<Hop>,
    plaquettes: Vec<[usize; 4]>,
    shift: Vec<Vec<(usize, C64)>>,
    shift_dag: Vec<Vec<(usize, C64)>>,
}

fn sparse_columns(m: &DenseOperator) -> Vec<Vec<(usize, C64)>> {
    (0..m.ncols())
        .map(|c| {
            (0..m.nrows())
                .filter(|&r| m[(r, c)].norm() > SHIFT_DROP)
                .map(|r| (r, m[(r, c)]))
                .collect()
        })
        .collect()
}

pub fn build_dual(gauss: &GaussCode, p: &HamiltonianParams, form: StringForm) -> Result<DualHamiltonian> {
    p.validate()?;
    let lattice = gauss.lattice();
    let idx = gauss.index();
    let levels = gauss.levels();
    let links = idx.links().len();
    let dim = space_dim(levels, links)?;
    let ops = boson_ops(levels)?;
    let shift = ops.shift();
    let two_d = lattice.dims == 2;
    let hops = if p.eps == 0.0 {
        Vec::new()
    } else {
        idx.links()
            .iter()
            .enumerate()
            .map(|(l, link)| Hop {
                link: l,
                from: link.from,
                to: link.to,
                string: if two_d && link.dir == Direction::Y {
                    sites_between(link.from, link.to).collect()
                } else {
                    Vec::new()
                },
            })
            .collect()
    };
    let plaquettes = if two_d && p.lambda_p != 0.0 {
        (0..idx.sites())
            .filter_map(|s| plaquette_links(lattice, idx, s))
            .collect()
    } else {
        Vec::new()
    };
    let scale = phase_scale(levels);
    Ok(DualHamiltonian {
        levels,
        links,
        dim,
        eps: p.eps,
        lambda_p: p.lambda_p,
        form,
        electric: (0..levels)
            .map(|v| -2.0 * p.lambda_e * (scale * v as f64).cos())
            .collect(),
        mass: (0..idx.sites()).map(|s| p.m * lattice.stagger_sign(s)).collect(),
        parity: (0..idx.sites()).map(|s| lattice.staggered_parity(s)).collect(),
        outgoing: (0..idx.sites()).map(|s| idx.outgoing(s)).collect(),
        incoming: (0..idx.sites()).map(|s| idx.incoming(s)).collect(),
        delta: (0..levels as i64).map(|v| kronecker_delta(levels, v)).collect(),
        hops,
        plaquettes,
        shift: sparse_columns(&shift),
        shift_dag: sparse_columns(&shift.adjoint()),
    })
}

pub fn build_dual_1d(gauss: &GaussCode, p: &HamiltonianParams) -> Result<DualHamiltonian> {
    if gauss.lattice().dims != 1 {
        return Err(Error::InvalidLattice("build_dual_1d needs a 1D lattice".into()));
    }
    build_dual(gauss, p, StringForm::Exact)
}

pub fn build_dual_2d(gauss: &GaussCode, p: &HamiltonianParams, form: StringForm) -> Result<DualHamiltonian> {
    if gauss.lattice().dims != 2 {
        return Err(Error::InvalidLattice("build_dual_2d needs a 2D lattice".into()));
    }
    build_dual(gauss, p, form)
}

impl DualHamiltonian {
    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn n_links(&self) -> usize {
        self.links
    }

    fn level(&self, site: usize, b: &[u32]) -> usize {
        let n = self.levels as i64;
        let mut v = self.parity[site] as i64;
        for &l in &self.outgoing[site] {
            v += b[l] as i64;
        }
        for &l in &self.incoming[site] {
            v -= b[l] as i64;
        }
        v.rem_euclid(n) as usize
    }

    fn pi(&self, site: usize, b: &[u32]) -> f64 {
        let n = self.levels as usize;
        self.delta[(self.level(site, b) + n - 1) % n]
    }

    fn string(&self, sites: &[usize], b: &[u32]) -> f64 {
        sites
            .iter()
            .map(|&s| {
                let v = self.level(s, b);
                let one = self.delta[(v + self.levels as usize - 1) % self.levels as usize];
                match self.form {
                    StringForm::Exact => one - self.delta[v],
                    StringForm::Sign => 2.0 * one - 1.0,
                }
            })
            .product()
    }

    fn apply_link(&self, states: Vec<(Vec<u32>, C64)>, link: usize, dagger: bool) -> Vec<(Vec<u32>, C64)> {
        let table = if dagger { &self.shift_dag } else { &self.shift };
        let mut out = Vec::new();
        for (b, amp) in states {
            for &(q, v) in &table[b[link] as usize] {
                let mut nb = b.clone();
                nb[link] = q as u32;
                out.push((nb, amp * v));
            }
        }
        out
    }

    fn hop_entries(&self, hop: &Hop, b: &[u32], dagger: bool, out: &mut Vec<(usize, C64)>) {
        let (right, left) = if dagger { (hop.from, hop.to) } else { (hop.to, hop.from) };
        let w = self.pi(right, b);
        if w == 0.0 {
            return;
        }
        for (nb, amp) in self.apply_link(vec![(b.to_vec(), C64::new(w, 0.0))], hop.link, dagger) {
            let f = self.pi(left, &nb) * self.string(&hop.string, &nb);
            if f != 0.0 {
                out.push((index_of(&nb, self.levels), amp * (-self.eps * f)));
            }
        }
    }

    fn plaquette_entries(&self, links: &[usize; 4], b: &[u32], dagger: bool, out: &mut Vec<(usize, C64)>) {
        let mut states = vec![(b.to_vec(), C64::new(1.0, 0.0))];
        for (i, &l) in links.iter().enumerate() {
            states = self.apply_link(states, l, (i >= 2) != dagger);
        }
        for (nb, amp) in states {
            out.push((index_of(&nb, self.levels), amp * (-self.lambda_p)));
        }
    }
}

impl Operator for DualHamiltonian {
    fn dim(&self) -> usize {
        self.dim
    }

    fn column(&self, col: usize) -> Vec<(usize, C64)> {
        let b = digits(col, self.levels, self.links);
        let mut diag: f64 = b.iter().map(|&v| self.electric[v as usize]).sum();
        for (s, &m) in self.mass.iter().enumerate() {
            if m != 0.0 {
                diag += m * self.pi(s, &b);
            }
        }
        let mut out = vec![(col, C64::new(diag, 0.0))];
        for hop in &self.hops {
            self.hop_entries(hop, &b, false, &mut out);
            self.hop_entries(hop, &b, true, &mut out);
        }
        for links in &self.plaquettes {
            self.plaquette_entries(links, &b, false, &mut out);
            self.plaquette_entries(links, &b, true, &mut out);
        }
        merge_entries(out)
    }
}

/// Diagonal string `∏_{s ∈ sites}` in the chosen form.
pub fn string_operator(gauss: &GaussCode, sites: &[usize], form: StringForm) -> Result<DiagonalOperator> {
    let n = gauss.levels();
    logical_diagonal(gauss, |links| {
        let v: f64 = sites
            .iter()
            .map(|&s| {
                let lv = site_level(gauss, s, links) as i64;
                let one = kronecker_delta(n, lv - 1);
                match form {
                    StringForm::Exact => one - kronecker_delta(n, lv),
                    StringForm::Sign => 2.0 * one - 1.0,
                }
            })
            .product();
        C64::new(v, 0.0)
    })
}

pub fn penalty_terms(gauss: &GaussCode, site: usize, lambda: f64, form: PenaltyForm) -> Result<DiagonalOperator> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "penalty strength {lambda} must be >= 0"
        )));
    }
    match form {
        PenaltyForm::Symmetry => {
            let g = residual_symmetry_logical(gauss, site)?;
            Ok(DiagonalOperator {
                entries: g.entries.iter().map(|v| (C64::new(1.0, 0.0) - v) * lambda).collect(),
            })
        }
        PenaltyForm::Delta => {
            let n = gauss.levels();
            logical_diagonal(gauss, |links| {
                let v = site_level(gauss, site, links) as i64;
                let w = (1.0 - kronecker_delta(n, v - 1)) * (1.0 - kronecker_delta(n, v));
                C64::new(lambda * w, 0.0)
            })
        }
    }
}

/// Sum of [`penalty_terms`] over every site.
pub fn total_penalty(gauss: &GaussCode, lambda: f64, form: PenaltyForm) -> Result<DiagonalOperator> {
    let mut acc = penalty_terms(gauss, 0, lambda, form)?;
    for s in 1..gauss.index().sites() {
        let p = penalty_terms(gauss, s, lambda, form)?;
        for (a, b) in acc.entries.iter_mut().zip(p.entries) {
            *a += b;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::gates::{x_gate, z_gate};
    use crate::dense::{commutator, max_abs, max_abs_diff, max_operator_diff, operator_hermiticity_deviation};
    use crate::encoding::build_hamiltonian;
    use crate::gauss_code::{build_code, LatticeSpec};
    use crate::logical::rewrite_hamiltonian;

    fn chain(m: usize, n: u32) -> GaussCode {
        build_code(&LatticeSpec::chain(m, n).unwrap()).unwrap()
    }

    #[test]
    fn creation_operator_qutrit() {
        let b = boson_ops(3).unwrap();
        assert_eq!(b.phi_dag[(1, 0)], C64::new(1.0, 0.0));
        assert_eq!(b.phi_dag[(2, 1)], C64::new(2f64.sqrt(), 0.0));
        assert_eq!(b.phi_dag.iter().filter(|v| v.norm() != 0.0).count(), 2);
        assert!((b.number[(2, 2)] - 2.0).norm() < 1e-15);
    }

    #[test]
    fn truncated_commutator() {
        for n in [2u32, 3, 5, 7] {
            let b = boson_ops(n).unwrap();
            let mut expected = crate::dense::identity(n as usize);
            expected[(n as usize - 1, n as usize - 1)] = C64::new(1.0 - n as f64, 0.0);
            assert!(max_abs_diff(&commutator(&b.phi, &b.phi_dag), &expected) < 1e-12);
        }
    }

    #[test]
    fn exponentials_are_clock_and_shift() {
        for n in [3u32, 5, 7] {
            let b = boson_ops(n).unwrap();
            assert!(max_abs_diff(&b.clock(), &z_gate(n).unwrap()) < 1e-13);
            assert!(max_abs_diff(&b.shift(), &x_gate(n).unwrap()) < 1e-13);
        }
    }

    #[test]
    fn pi_examples() {
        let g = chain(2, 3);
        let pi0 = pi_projector(&g, 0).unwrap();
        // links (n_0, n_1); site 0 has outgoing link 0 and incoming link 1
        assert_eq!(pi0.entries[index_of(&[1, 0], 3)], C64::new(1.0, 0.0));
        assert_eq!(pi0.entries[index_of(&[0, 0], 3)], C64::new(0.0, 0.0));
        assert_eq!(pi0.mul(&pi0), pi0);
    }

    #[test]
    fn electric_only_is_cosine_diagonal() {
        let g = chain(2, 3);
        let h = build_dual_1d(&g, &HamiltonianParams::new(0.0, 0.0, 0.5)).unwrap();
        let d = h.to_dense().unwrap();
        for c in 0..9 {
            let b = digits(c, 3, 2);
            let e: f64 = b.iter().map(|&v| -(phase_scale(3) * v as f64).cos()).sum();
            assert!((d[(c, c)].re - e).abs() < 1e-14);
        }
        assert!(max_abs(&(d.clone() - DMatrix::from_diagonal(&d.diagonal()))) == 0.0);
    }

    #[test]
    fn dual_matches_rewrite_1d() {
        for (m, n) in [(2usize, 3u32), (4, 3), (2, 5)] {
            let g = chain(m, n);
            let p = HamiltonianParams::new(1.0, 0.7, 0.5);
            let logical = rewrite_hamiltonian(g.code(), &build_hamiltonian(g.lattice(), &p).unwrap()).unwrap();
            let dual = build_dual_1d(&g, &p).unwrap();
            assert!(max_operator_diff(&dual, &logical).unwrap() < 1e-10);
            assert!(operator_hermiticity_deviation(&dual) < 1e-12);
        }
    }

    #[test]
    fn dual_matches_rewrite_2d_small() {
        let g = build_code(&LatticeSpec::square(2, 2, 3).unwrap()).unwrap();
        let p = HamiltonianParams::new(1.0, 0.7, 0.5).with_plaquette(0.3);
        let logical = rewrite_hamiltonian(g.code(), &build_hamiltonian(g.lattice(), &p).unwrap()).unwrap();
        let dual = build_dual_2d(&g, &p, StringForm::Exact).unwrap();
        assert!(max_operator_diff(&dual, &logical).unwrap() < 1e-10);
    }

    #[test]
    fn sign_string_squares_to_one() {
        let g = build_code(&LatticeSpec::square(2, 2, 3).unwrap()).unwrap();
        let s = string_operator(&g, &[1, 2], StringForm::Sign).unwrap();
        assert!(s.mul(&s).entries.iter().all(|v| *v == C64::new(1.0, 0.0)));
    }

    #[test]
    fn penalty_spectra_and_kernels() {
        let g = chain(2, 3);
        for s in 0..2 {
            let a = penalty_terms(&g, s, 1.5, PenaltyForm::Symmetry).unwrap();
            let b = penalty_terms(&g, s, 1.5, PenaltyForm::Delta).unwrap();
            for (x, y) in a.entries.iter().zip(&b.entries) {
                assert!(*x == C64::new(0.0, 0.0) || *x == C64::new(3.0, 0.0));
                assert_eq!(x.norm() == 0.0, y.norm() == 0.0);
            }
            let z = penalty_terms(&g, s, 0.0, PenaltyForm::Symmetry).unwrap();
            assert!(z.entries.iter().all(|v| v.norm() == 0.0));
        }
        assert!(penalty_terms(&g, 0, -1.0, PenaltyForm::Delta).is_err());
    }
}
