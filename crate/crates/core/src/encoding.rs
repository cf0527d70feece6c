//! Staggered fermions on N-level site qudits and the physical Hamiltonians.
//!
//! Two encodings are provided. The projector encoding uses
//! `b† = |1⟩⟨0| = (1/N) Σ_j ω^{-j} Z^j X` and carries Jordan-Wigner strings of
//! `-Z̃` with `Z̃ = |0⟩⟨0| - |1⟩⟨1|`. The compact encoding uses
//! `c† = (1-Z) X (Z-ω) / (1-ω)²` and strings of `Z̃' = 2/(1-ω)·((1+ω)/2 - Z)`,
//! which acts as `diag(-1, 1)` on the two physical levels.

use serde::{Deserialize, Serialize};

use crate::dense::{diag, embed, identity, DenseOperator, C64};
use crate::error::{Error, Result};
use crate::gauss_code::{Direction, LatticeSpec, SiteLinkIndex};
use crate::terms::TermList;
use crate::zn_algebra::{ensure_levels, omega, GenPauli};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoding {
    #[default]
    Projector,
    Compact,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianParams {
    pub m: f64,
    pub eps: f64,
    pub lambda_e: f64,
    #[serde(default)]
    pub lambda_p: f64,
    #[serde(default)]
    pub encoding: Encoding,
}

impl HamiltonianParams {
    pub fn new(m: f64, eps: f64, lambda_e: f64) -> Self {
        HamiltonianParams {
            m,
            eps,
            lambda_e,
            lambda_p: 0.0,
            encoding: Encoding::Projector,
        }
    }

    pub fn with_plaquette(mut self, lambda_p: f64) -> Self {
        self.lambda_p = lambda_p;
        self
    }

    pub fn with_encoding(mut self, encoding: Encoding) -> Self {
        self.encoding = encoding;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("m", self.m),
            ("eps", self.eps),
            ("lambda_e", self.lambda_e),
            ("lambda_p", self.lambda_p),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!("coupling {name} = {v} is not finite")));
            }
        }
        Ok(())
    }
}

fn re(v: f64) -> C64 {
    C64::new(v, 0.0)
}

fn zpow(levels: u32, n: usize, q: usize, j: i64) -> GenPauli {
    GenPauli::single(levels, n, q, 0, j).expect("valid qudit")
}

fn xpow(levels: u32, n: usize, q: usize, j: i64) -> GenPauli {
    GenPauli::single(levels, n, q, j, 0).expect("valid qudit")
}

/// `(1/N) Σ_j ω^{-j} Z_q^j`, the projector onto level 1.
pub fn density_projector(levels: u32, n: usize, q: usize) -> Result<TermList> {
    let mut t = TermList::new(levels, n)?;
    for j in 0..levels as i64 {
        t.push(omega(levels, -j) / levels as f64, zpow(levels, n, q, j))?;
    }
    Ok(t)
}

/// `b†_q = (1/N) Σ_j ω^{-j} Z_q^j X_q`.
pub fn b_dag(levels: u32, n: usize, q: usize) -> Result<TermList> {
    let mut t = TermList::new(levels, n)?;
    let x = xpow(levels, n, q, 1);
    for j in 0..levels as i64 {
        t.push(omega(levels, -j) / levels as f64, zpow(levels, n, q, j).mul(&x)?)?;
    }
    Ok(t)
}

/// `b_q = (1/N) Σ_j Z_q^j X†_q`.
pub fn b(levels: u32, n: usize, q: usize) -> Result<TermList> {
    let mut t = TermList::new(levels, n)?;
    let xd = xpow(levels, n, q, -1);
    for j in 0..levels as i64 {
        t.push(re(1.0 / levels as f64), zpow(levels, n, q, j).mul(&xd)?)?;
    }
    Ok(t)
}

/// `Z̃_q = (1/N) Σ_{j≠0} (1 - ω^{-j}) Z_q^j`.
pub fn z_tilde(levels: u32, n: usize, q: usize) -> Result<TermList> {
    let mut t = TermList::new(levels, n)?;
    for j in 1..levels as i64 {
        t.push((re(1.0) - omega(levels, -j)) / levels as f64, zpow(levels, n, q, j))?;
    }
    Ok(t)
}

fn affine_z(levels: u32, n: usize, q: usize, constant: C64, zc: C64, dagger: bool) -> Result<TermList> {
    let mut t = TermList::scalar(levels, n, constant)?;
    t.push(zc, zpow(levels, n, q, if dagger { -1 } else { 1 }))?;
    Ok(t)
}

/// `c†_q = (1 - Z) X (Z - ω) / (1 - ω)²`.
pub fn c_dag(levels: u32, n: usize, q: usize) -> Result<TermList> {
    let w = omega(levels, 1);
    let left = affine_z(levels, n, q, re(1.0), re(-1.0), false)?;
    let right = affine_z(levels, n, q, -w, re(1.0), false)?;
    let x = TermList::from_pauli(re(1.0), xpow(levels, n, q, 1));
    let norm = (re(1.0) - w) * (re(1.0) - w);
    Ok(left.mul(&x)?.mul(&right)?.scaled(norm.inv()))
}

/// `c_q = (Z† - ω^{-1}) X† (1 - Z†) / (1 - ω^{-1})²`.
pub fn c(levels: u32, n: usize, q: usize) -> Result<TermList> {
    let wi = omega(levels, -1);
    let left = affine_z(levels, n, q, -wi, re(1.0), true)?;
    let right = affine_z(levels, n, q, re(1.0), re(-1.0), true)?;
    let xd = TermList::from_pauli(re(1.0), xpow(levels, n, q, -1));
    let norm = (re(1.0) - wi) * (re(1.0) - wi);
    Ok(left.mul(&xd)?.mul(&right)?.scaled(norm.inv()))
}

/// `Z̃'_q = 2/(1-ω) · ((1+ω)/2 - Z_q)`.
pub fn z_bold(levels: u32, n: usize, q: usize) -> Result<TermList> {
    let w = omega(levels, 1);
    let k = re(2.0) / (re(1.0) - w);
    affine_z(levels, n, q, k * (re(1.0) + w) / 2.0, -k, false)
}

/// Single Jordan-Wigner string factor for one intermediate site.
fn string_factor(enc: Encoding, levels: u32, n: usize, q: usize) -> Result<TermList> {
    match enc {
        Encoding::Projector => Ok(z_tilde(levels, n, q)?.scaled(re(-1.0))),
        Encoding::Compact => z_bold(levels, n, q),
    }
}

fn occupation(enc: Encoding, levels: u32, n: usize, q: usize) -> Result<TermList> {
    match enc {
        Encoding::Projector => density_projector(levels, n, q),
        Encoding::Compact => Ok(c_dag(levels, n, q)?.mul(&c(levels, n, q)?)?.simplified()),
    }
}

/// `b†_a X_link b_b`, or the compact equivalent, as a list of monomials.
fn hop(enc: Encoding, levels: u32, n: usize, a: usize, link: usize, bq: usize) -> Result<TermList> {
    let xl = TermList::from_pauli(re(1.0), xpow(levels, n, link, 1));
    match enc {
        Encoding::Projector => {
            let mut t = TermList::new(levels, n)?;
            let tail = xpow(levels, n, a, 1)
                .mul(&xpow(levels, n, link, 1))?
                .mul(&xpow(levels, n, bq, -1))?;
            let norm = (levels as f64).powi(2);
            for j in 0..levels as i64 {
                for k in 0..levels as i64 {
                    let p = zpow(levels, n, a, j).mul(&zpow(levels, n, bq, k))?.mul(&tail)?;
                    t.push(omega(levels, -j) / norm, p)?;
                }
            }
            Ok(t)
        }
        Encoding::Compact => c_dag(levels, n, a)?.mul(&xl)?.mul(&c(levels, n, bq)?),
    }
}

fn push_with_adjoint(h: &mut TermList, t: &TermList) -> Result<()> {
    h.extend(t)?;
    h.extend(&t.adjoint())
}

fn electric(h: &mut TermList, idx: &SiteLinkIndex, levels: u32, lambda: f64) -> Result<()> {
    if lambda == 0.0 {
        return Ok(());
    }
    let n = idx.n_qudits();
    for l in 0..idx.links().len() {
        let q = idx.link_qudit(l);
        h.push(re(-lambda), zpow(levels, n, q, 1))?;
        h.push(re(-lambda), zpow(levels, n, q, -1))?;
    }
    Ok(())
}

fn mass(h: &mut TermList, lattice: &LatticeSpec, idx: &SiteLinkIndex, p: &HamiltonianParams) -> Result<()> {
    if p.m == 0.0 {
        return Ok(());
    }
    for s in 0..idx.sites() {
        let occ = occupation(p.encoding, lattice.levels, idx.n_qudits(), idx.site_qudit(s))?;
        h.extend(&occ.scaled(re(p.m * lattice.stagger_sign(s))))?;
    }
    Ok(())
}

/// Sites strictly between `a` and `b` in row order.
pub fn sites_between(a: usize, b: usize) -> std::ops::Range<usize> {
    a.min(b) + 1..a.max(b)
}

fn hopping(
    h: &mut TermList,
    lattice: &LatticeSpec,
    idx: &SiteLinkIndex,
    p: &HamiltonianParams,
    with_string: impl Fn(Direction) -> bool,
) -> Result<()> {
    if p.eps == 0.0 {
        return Ok(());
    }
    let (levels, n) = (lattice.levels, idx.n_qudits());
    for (l, link) in idx.links().iter().enumerate() {
        let mut t = hop(p.encoding, levels, n, link.from, idx.link_qudit(l), link.to)?.scaled(re(-p.eps));
        if with_string(link.dir) {
            for s in sites_between(link.from, link.to) {
                t = t.mul(&string_factor(p.encoding, levels, n, idx.site_qudit(s))?)?;
            }
        }
        push_with_adjoint(h, &t)?;
    }
    Ok(())
}

/// Links of the plaquette based at `site`: `(n,x), (n+x,y), (n+y,x), (n,y)`.
pub fn plaquette_links(lattice: &LatticeSpec, idx: &SiteLinkIndex, site: usize) -> Option<[usize; 4]> {
    let nx = lattice.forward(site, Direction::X)?;
    let ny = lattice.forward(site, Direction::Y)?;
    Some([
        idx.link_from(site, Direction::X)?,
        idx.link_from(nx, Direction::Y)?,
        idx.link_from(ny, Direction::X)?,
        idx.link_from(site, Direction::Y)?,
    ])
}

/// `X_{n,y} X_{n+y,x} X†_{n+x,y} X†_{n,x}`.
pub fn plaquette_monomial(lattice: &LatticeSpec, idx: &SiteLinkIndex, site: usize) -> Option<GenPauli> {
    let [nx, nxy, nyx, ny] = plaquette_links(lattice, idx, site)?;
    let n = idx.n_qudits();
    let mut x = vec![0i64; n];
    x[idx.link_qudit(ny)] += 1;
    x[idx.link_qudit(nyx)] += 1;
    x[idx.link_qudit(nxy)] -= 1;
    x[idx.link_qudit(nx)] -= 1;
    GenPauli::new(lattice.levels, 0, &x, &vec![0; n]).ok()
}

pub fn build_h_1d(lattice: &LatticeSpec, p: &HamiltonianParams) -> Result<TermList> {
    lattice.validate()?;
    p.validate()?;
    if lattice.dims != 1 {
        return Err(Error::InvalidLattice("build_h_1d needs a 1D lattice".into()));
    }
    let idx = SiteLinkIndex::new(lattice);
    let mut h = TermList::new(lattice.levels, idx.n_qudits())?;
    mass(&mut h, lattice, &idx, p)?;
    hopping(&mut h, lattice, &idx, p, |_| false)?;
    electric(&mut h, &idx, lattice.levels, p.lambda_e)?;
    Ok(h)
}

pub fn build_h_2d(lattice: &LatticeSpec, p: &HamiltonianParams) -> Result<TermList> {
    lattice.validate()?;
    p.validate()?;
    if lattice.dims != 2 {
        return Err(Error::InvalidLattice("build_h_2d needs a 2D lattice".into()));
    }
    let idx = SiteLinkIndex::new(lattice);
    let mut h = TermList::new(lattice.levels, idx.n_qudits())?;
    electric(&mut h, &idx, lattice.levels, p.lambda_e)?;
    if p.lambda_p != 0.0 {
        for s in 0..idx.sites() {
            if let Some(u) = plaquette_monomial(lattice, &idx, s) {
                h.push(re(-p.lambda_p), u.clone())?;
                h.push(re(-p.lambda_p), u.adjoint())?;
            }
        }
    }
    mass(&mut h, lattice, &idx, p)?;
    hopping(&mut h, lattice, &idx, p, |d| d == Direction::Y)?;
    Ok(h)
}

pub fn build_hamiltonian(lattice: &LatticeSpec, p: &HamiltonianParams) -> Result<TermList> {
    match lattice.dims {
        1 => build_h_1d(lattice, p),
        _ => build_h_2d(lattice, p),
    }
}

/// Single-site matrices `(creation, string factor)` of an encoding.
pub fn site_matrices(kind: Encoding, levels: u32) -> Result<(DenseOperator, DenseOperator)> {
    ensure_levels(levels)?;
    let n = levels as usize;
    match kind {
        Encoding::Projector => {
            let mut bd = DenseOperator::zeros(n, n);
            bd[(1, 0)] = re(1.0);
            let mut zt = DenseOperator::zeros(n, n);
            zt[(0, 0)] = re(-1.0);
            zt[(1, 1)] = re(1.0);
            Ok((bd, zt))
        }
        Encoding::Compact => {
            let w = omega(levels, 1);
            let z = GenPauli::single(levels, 1, 0, 0, 1)?.to_dense()?;
            let x = GenPauli::single(levels, 1, 0, 1, 0)?.to_dense()?;
            let id = identity(n);
            let cd = (&id - &z) * x * (&z - &id * w) / ((re(1.0) - w) * (re(1.0) - w));
            let zb = (&id * ((re(1.0) + w) / 2.0) - &z) * (re(2.0) / (re(1.0) - w));
            Ok((cd, zb.adjoint()))
        }
    }
}

/// Dense `(ψ̃†_l, ψ̃_l)` on `sites` N-level qudits, including the string over sites `< l`.
pub fn fermion_ops(kind: Encoding, l: usize, sites: usize, levels: u32) -> Result<(DenseOperator, DenseOperator)> {
    if l >= sites {
        return Err(Error::InvalidArgument(format!("site {l} outside {sites} sites")));
    }
    let (create, string) = site_matrices(kind, levels)?;
    let mut local: Vec<(usize, &DenseOperator)> = (0..l).map(|i| (i, &string)).collect();
    local.push((l, &create));
    let dag = embed(&local, levels, sites)?;
    let ann = dag.adjoint();
    Ok((dag, ann))
}

/// `exp(iπ (Z - Z†)/(ω - ω^{-1}))`.
pub fn zeta_dense(levels: u32) -> Result<DenseOperator> {
    ensure_levels(levels)?;
    let denom = omega(levels, 1) - omega(levels, -1);
    let entries: Vec<C64> = (0..levels as i64)
        .map(|j| {
            let ratio = (omega(levels, j) - omega(levels, -j)) / denom;
            (C64::new(0.0, std::f64::consts::PI) * ratio).exp()
        })
        .collect();
    Ok(diag(&entries))
}

/// Projector onto levels `{0, 1}` of every one of `sites` qudits.
pub fn physical_site_projector(levels: u32, sites: usize) -> Result<DenseOperator> {
    let mut p1 = DenseOperator::zeros(levels as usize, levels as usize);
    p1[(0, 0)] = re(1.0);
    p1[(1, 1)] = re(1.0);
    let local: Vec<(usize, &DenseOperator)> = (0..sites).map(|i| (i, &p1)).collect();
    embed(&local, levels, sites)
}
