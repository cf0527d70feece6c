//! The Gauss-law code of a staggered Z_N gauge theory on 1D and 2D lattices.
//!
//! Qudits are laid out as all sites (row order `n_x + n_y·L_x`) followed by all
//! links. In 2D every x-link precedes every y-link; within a direction links
//! are ordered by their source site. Link `l` runs from `from` to `to`.
//!
//! The generator at site `x` is `ω^{-p_x} Z_x ∏_in Z_link ∏_out Z†_link`.
//! Logical pairs live on links: `Z̄ = Z_link`, `X̄ = X_from X_link X†_to`.

use serde::{Deserialize, Serialize};

use crate::dense::{diag, DenseOperator, C64};
use crate::error::{Error, Result};
use crate::stabilizer::StabilizerCode;
use crate::zn_algebra::{ensure_levels, omega, GenPauli};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    Open,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    X,
    Y,
}

impl Direction {
    fn axis(self) -> usize {
        match self {
            Direction::X => 0,
            Direction::Y => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub dims: usize,
    pub extent: Vec<usize>,
    pub boundary: Boundary,
    #[serde(rename = "N")]
    pub levels: u32,
}

impl LatticeSpec {
    pub fn new(dims: usize, extent: Vec<usize>, boundary: Boundary, levels: u32) -> Result<Self> {
        let l = LatticeSpec {
            dims,
            extent,
            boundary,
            levels,
        };
        l.validate()?;
        Ok(l)
    }

    pub fn chain(sites: usize, levels: u32) -> Result<Self> {
        Self::new(1, vec![sites], Boundary::Periodic, levels)
    }

    pub fn square(lx: usize, ly: usize, levels: u32) -> Result<Self> {
        Self::new(2, vec![lx, ly], Boundary::Periodic, levels)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_levels(self.levels)?;
        if !(1..=2).contains(&self.dims) {
            return Err(Error::InvalidLattice(format!("dims must be 1 or 2, got {}", self.dims)));
        }
        if self.extent.len() != self.dims {
            return Err(Error::InvalidLattice(format!(
                "{} extents given for {} dimensions",
                self.extent.len(),
                self.dims
            )));
        }
        for &e in &self.extent {
            if e < 2 {
                return Err(Error::InvalidLattice(format!("extent {e} is below 2")));
            }
            if self.boundary == Boundary::Periodic && e % 2 == 1 {
                return Err(Error::InvalidLattice(format!(
                    "periodic boundaries need even extents, got {e}"
                )));
            }
        }
        Ok(())
    }

    pub fn sites(&self) -> usize {
        self.extent.iter().product()
    }

    pub fn coords(&self, site: usize) -> [usize; 2] {
        let lx = self.extent[0];
        [site % lx, site / lx]
    }

    pub fn site_at(&self, c: [usize; 2]) -> usize {
        c[0] + c[1] * self.extent[0]
    }

    pub fn directions(&self) -> &'static [Direction] {
        if self.dims == 1 {
            &[Direction::X]
        } else {
            &[Direction::X, Direction::Y]
        }
    }

    /// The site one step along `dir`, if that link exists.
    pub fn forward(&self, site: usize, dir: Direction) -> Option<usize> {
        let mut c = self.coords(site);
        let a = dir.axis();
        if a >= self.dims {
            return None;
        }
        let e = self.extent[a];
        if c[a] + 1 < e {
            c[a] += 1;
        } else if self.boundary == Boundary::Periodic {
            c[a] = 0;
        } else {
            return None;
        }
        Some(self.site_at(c))
    }

    pub fn staggered_parity(&self, site: usize) -> u32 {
        let c = self.coords(site);
        ((c[0] + c[1]) % 2) as u32
    }

    /// `(-1)^{|x|}`.
    pub fn stagger_sign(&self, site: usize) -> f64 {
        if self.staggered_parity(site) == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub from: usize,
    pub to: usize,
    pub dir: Direction,
}

#[derive(Clone, Debug)]
pub struct SiteLinkIndex {
    sites: usize,
    links: Vec<Link>,
    outgoing: Vec<[Option<usize>; 2]>,
}

impl SiteLinkIndex {
    pub fn new(lattice: &LatticeSpec) -> Self {
        let sites = lattice.sites();
        let mut links = Vec::new();
        let mut outgoing = vec![[None, None]; sites];
        for &dir in lattice.directions() {
            for (s, slot) in outgoing.iter_mut().enumerate() {
                if let Some(t) = lattice.forward(s, dir) {
                    slot[dir.axis()] = Some(links.len());
                    links.push(Link { from: s, to: t, dir });
                }
            }
        }
        SiteLinkIndex { sites, links, outgoing }
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn n_qudits(&self) -> usize {
        self.sites + self.links.len()
    }

    pub fn site_qudit(&self, site: usize) -> usize {
        site
    }

    pub fn link_qudit(&self, link: usize) -> usize {
        self.sites + link
    }

    /// Link leaving `site` along `dir`.
    pub fn link_from(&self, site: usize, dir: Direction) -> Option<usize> {
        self.outgoing[site][dir.axis()]
    }

    /// Link arriving at `site` along `dir`.
    pub fn link_into(&self, site: usize, dir: Direction) -> Option<usize> {
        self.links.iter().position(|l| l.to == site && l.dir == dir)
    }

    pub fn outgoing(&self, site: usize) -> Vec<usize> {
        (0..self.links.len()).filter(|&l| self.links[l].from == site).collect()
    }

    pub fn incoming(&self, site: usize) -> Vec<usize> {
        (0..self.links.len()).filter(|&l| self.links[l].to == site).collect()
    }
}

/// Exact form `Z_site = ω^phase · Ḡ_stabilizer · ∏ Z̄_i^{logical_z[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SiteZRewrite {
    pub phase: u32,
    pub stabilizer: usize,
    pub logical_z: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct GaussCode {
    lattice: LatticeSpec,
    index: SiteLinkIndex,
    code: StabilizerCode,
}

pub fn build_code(lattice: &LatticeSpec) -> Result<GaussCode> {
    lattice.validate()?;
    let n_levels = lattice.levels;
    let index = SiteLinkIndex::new(lattice);
    let n = index.n_qudits();
    let levels = n_levels as i64;

    let mut generators = Vec::with_capacity(index.sites());
    for s in 0..index.sites() {
        let mut z = vec![0i64; n];
        z[index.site_qudit(s)] = 1;
        for l in index.incoming(s) {
            z[index.link_qudit(l)] += 1;
        }
        for l in index.outgoing(s) {
            z[index.link_qudit(l)] -= 1;
        }
        let phase = -(lattice.staggered_parity(s) as i64);
        generators.push(GenPauli::new(n_levels, phase, &vec![0; n], &z)?);
    }

    let mut logical_x = Vec::with_capacity(index.links().len());
    let mut logical_z = Vec::with_capacity(index.links().len());
    for (l, link) in index.links().iter().enumerate() {
        let mut x = vec![0i64; n];
        x[index.site_qudit(link.from)] += 1;
        x[index.link_qudit(l)] += 1;
        x[index.site_qudit(link.to)] += levels - 1;
        logical_x.push(GenPauli::new(n_levels, 0, &x, &vec![0; n])?);
        logical_z.push(GenPauli::single(n_levels, n, index.link_qudit(l), 0, 1)?);
    }

    let code = StabilizerCode::new(n_levels, n, generators, logical_x, logical_z)?;
    Ok(GaussCode {
        lattice: lattice.clone(),
        index,
        code,
    })
}

impl GaussCode {
    pub fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    pub fn index(&self) -> &SiteLinkIndex {
        &self.index
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn levels(&self) -> u32 {
        self.lattice.levels
    }

    pub fn site_z_rewrite(&self, site: usize) -> SiteZRewrite {
        let n = self.levels();
        let mut lz = vec![0u32; self.code.k()];
        for l in self.index.incoming(site) {
            lz[l] = (lz[l] + n - 1) % n;
        }
        for l in self.index.outgoing(site) {
            lz[l] = (lz[l] + 1) % n;
        }
        SiteZRewrite {
            phase: self.lattice.staggered_parity(site),
            stabilizer: site,
            logical_z: lz,
        }
    }

    /// Multiplies a [`SiteZRewrite`] back out on the physical qudits.
    pub fn expand_site_z_rewrite(&self, r: &SiteZRewrite) -> Result<GenPauli> {
        let mut acc = self.code.generators()[r.stabilizer].clone();
        for (l, &e) in r.logical_z.iter().enumerate() {
            acc = acc.mul(&self.code.logical_z()[l].pow(e as i64))?;
        }
        Ok(acc.with_phase(acc.phase() as i64 + r.phase as i64))
    }
}

/// Snaps values within 1e-12 of an integer onto it, componentwise.
pub(crate) fn snap(v: C64) -> C64 {
    let s = |x: f64| {
        let r = x.round();
        if (x - r).abs() < 1e-12 {
            r
        } else {
            x
        }
    };
    C64::new(s(v.re), s(v.im))
}

/// `-exp(iπ(|0⟩⟨0| + |1⟩⟨1|))` with the projector written as a clock-operator sum.
pub fn residual_symmetry_site(levels: u32) -> Result<DenseOperator> {
    ensure_levels(levels)?;
    let n = levels as i64;
    let entries: Vec<C64> = (0..n)
        .map(|q| {
            let proj: C64 = (0..n)
                .map(|j| (omega(levels, 0) + omega(levels, -j)) * omega(levels, j * q))
                .sum::<C64>()
                / n as f64;
            snap(-(C64::new(0.0, std::f64::consts::PI) * proj).exp())
        })
        .collect();
    Ok(diag(&entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{identity, max_abs_diff};
    use crate::stabilizer::symplectic_rank;

    #[test]
    fn parities() {
        let l1 = LatticeSpec::chain(4, 3).unwrap();
        assert_eq!(l1.staggered_parity(0), 0);
        assert_eq!(l1.staggered_parity(3), 1);
        let l2 = LatticeSpec::square(2, 2, 3).unwrap();
        assert_eq!(l2.staggered_parity(l2.site_at([1, 1])), 0);
        assert_eq!(l2.staggered_parity(l2.site_at([1, 0])), 1);
    }

    #[test]
    fn lattice_validation() {
        assert!(LatticeSpec::chain(3, 3).is_err());
        assert!(LatticeSpec::new(1, vec![3], Boundary::Open, 3).is_ok());
        assert!(LatticeSpec::new(3, vec![2, 2, 2], Boundary::Periodic, 3).is_err());
        assert!(LatticeSpec::chain(1, 3).is_err());
        assert!(LatticeSpec::chain(4, 4).is_err());
    }

    #[test]
    fn code_sizes() {
        let c = build_code(&LatticeSpec::chain(4, 3).unwrap()).unwrap();
        assert_eq!((c.code().n(), c.code().generators().len(), c.code().k()), (8, 4, 4));
        let c = build_code(&LatticeSpec::square(2, 2, 3).unwrap()).unwrap();
        assert_eq!((c.code().n(), c.code().generators().len(), c.code().k()), (12, 4, 8));
        let open = LatticeSpec::new(2, vec![3, 2], Boundary::Open, 5).unwrap();
        let c = build_code(&open).unwrap();
        assert_eq!(c.index().links().len(), 2 * 2 + 3);
        assert_eq!(c.code().k(), 7);
    }

    #[test]
    fn layout_1d() {
        let l = LatticeSpec::chain(4, 3).unwrap();
        let idx = SiteLinkIndex::new(&l);
        assert_eq!(
            idx.links()[3],
            Link {
                from: 3,
                to: 0,
                dir: Direction::X
            }
        );
        assert_eq!(idx.link_qudit(0), 4);
        assert_eq!(idx.incoming(0), vec![3]);
        assert_eq!(idx.outgoing(0), vec![0]);
    }

    #[test]
    fn layout_2d_x_links_first() {
        let l = LatticeSpec::square(2, 2, 3).unwrap();
        let idx = SiteLinkIndex::new(&l);
        let dirs: Vec<Direction> = idx.links().iter().map(|k| k.dir).collect();
        assert_eq!(
            dirs,
            [Direction::X; 4]
                .into_iter()
                .chain([Direction::Y; 4])
                .collect::<Vec<_>>()
        );
        assert_eq!(idx.link_from(1, Direction::Y), Some(5));
        assert_eq!(
            idx.links()[5],
            Link {
                from: 1,
                to: 3,
                dir: Direction::Y
            }
        );
    }

    #[test]
    fn generator_ranks() {
        for m in [2usize, 4, 6] {
            let c = build_code(&LatticeSpec::chain(m, 3).unwrap()).unwrap();
            assert_eq!(symplectic_rank(c.code().generators()), m);
        }
        let c = build_code(&LatticeSpec::square(2, 2, 5).unwrap()).unwrap();
        assert_eq!(symplectic_rank(c.code().generators()), 4);
    }

    #[test]
    fn logical_weights() {
        let c = build_code(&LatticeSpec::square(2, 2, 3).unwrap()).unwrap();
        assert!(c.code().logical_x().iter().all(|p| p.weight() == 3));
        assert!(c.code().logical_z().iter().all(|p| p.weight() == 1));
    }

    #[test]
    fn site_rewrite_round_trip() {
        for lattice in [
            LatticeSpec::chain(4, 3).unwrap(),
            LatticeSpec::square(2, 2, 5).unwrap(),
            LatticeSpec::new(2, vec![3, 2], Boundary::Open, 3).unwrap(),
        ] {
            let c = build_code(&lattice).unwrap();
            let n = c.code().n();
            for s in 0..lattice.sites() {
                let r = c.site_z_rewrite(s);
                let z = GenPauli::single(lattice.levels, n, s, 0, 1).unwrap();
                assert_eq!(c.expand_site_z_rewrite(&r).unwrap(), z);
                let d = c.code().decompose_normalizer(&z).unwrap();
                let mut stab = vec![0; lattice.sites()];
                stab[s] = 1;
                assert_eq!(d.stab_exps, stab);
                assert_eq!(d.lz_exps, r.logical_z);
                assert_eq!(d.phase, r.phase);
                assert!(d.lx_exps.iter().all(|&e| e == 0));
            }
        }
    }

    #[test]
    fn even_site_rewrite_1d() {
        let c = build_code(&LatticeSpec::chain(4, 3).unwrap()).unwrap();
        let r = c.site_z_rewrite(2);
        assert_eq!(
            r,
            SiteZRewrite {
                phase: 0,
                stabilizer: 2,
                logical_z: vec![0, 2, 1, 0]
            }
        );
    }

    #[test]
    fn residual_symmetry_values() {
        let one = C64::new(1.0, 0.0);
        let g3 = residual_symmetry_site(3).unwrap();
        assert_eq!(g3, diag(&[one, one, -one]));
        let g5 = residual_symmetry_site(5).unwrap();
        assert_eq!(g5, diag(&[one, one, -one, -one, -one]));
        assert!(max_abs_diff(&(&g5 * &g5), &identity(5)) == 0.0);
    }
}
