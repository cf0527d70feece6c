//! Rewriting gauge-invariant physical operators on the logical qudits.
//!
//! A normalizer element `ω^a ∏ g^s ∏ X̄^b ∏ Z̄^c` becomes `ω^a X^b Z^c` on `k`
//! bare qudits; the stabilizer factors act as the identity on the code space.

use crate::dense::{space_dim, DiagonalOperator, C64};
use crate::error::{Error, Result};
use crate::gauss_code::GaussCode;
use crate::stabilizer::StabilizerCode;
use crate::terms::{Basis, TermList};
use crate::zn_algebra::{omega, reduce, GenPauli};

pub fn rewrite_term(code: &StabilizerCode, coeff: C64, monomial: &GenPauli) -> Result<(C64, GenPauli)> {
    let d = code.decompose_normalizer(monomial).map_err(|e| match e {
        Error::Detectable { syndrome } => Error::GaugeVariant { index: 0, syndrome },
        other => other,
    })?;
    let x: Vec<i64> = d.lx_exps.iter().map(|&v| v as i64).collect();
    let z: Vec<i64> = d.lz_exps.iter().map(|&v| v as i64).collect();
    let logical = GenPauli::new(code.levels(), 0, &x, &z)?;
    Ok((coeff * omega(code.levels(), d.phase as i64), logical))
}

/// Term-by-term rewrite followed by merging of equal logical monomials.
pub fn rewrite_hamiltonian(code: &StabilizerCode, physical: &TermList) -> Result<TermList> {
    if physical.n_qudits() != code.n() || physical.levels() != code.levels() {
        return Err(Error::Dimension(format!(
            "term list on N={} n={} for a code with N={} n={}",
            physical.levels(),
            physical.n_qudits(),
            code.levels(),
            code.n()
        )));
    }
    let mut out = TermList::new(code.levels(), code.k())?.with_basis(Basis::Logical);
    for (index, t) in physical.terms().iter().enumerate() {
        let (c, p) = rewrite_term(code, t.coeff, &t.pauli).map_err(|e| match e {
            Error::GaugeVariant { syndrome, .. } => Error::GaugeVariant { index, syndrome },
            other => other,
        })?;
        out.push(c, p)?;
    }
    Ok(out.simplified())
}

/// Physical operator `∏ X̄^b ∏ Z̄^c` for a logical monomial `X^b Z^c`.
pub fn expand_logical(code: &StabilizerCode, logical: &GenPauli) -> Result<GenPauli> {
    let mut acc = GenPauli::identity(code.levels(), code.n())?;
    for (op, &e) in code.logical_x().iter().zip(logical.x()) {
        acc = acc.mul(&op.pow(e as i64))?;
    }
    for (op, &e) in code.logical_z().iter().zip(logical.z()) {
        acc = acc.mul(&op.pow(e as i64))?;
    }
    Ok(acc.with_phase(acc.phase() as i64 + logical.phase() as i64))
}

/// Level `(Δ + p) mod N` of `site` implied by the logical link values.
pub fn site_level(gauss: &GaussCode, site: usize, links: &[u32]) -> u32 {
    let n = gauss.levels();
    let idx = gauss.index();
    let mut v = gauss.lattice().staggered_parity(site) as i64;
    for l in idx.outgoing(site) {
        v += links[l] as i64;
    }
    for l in idx.incoming(site) {
        v -= links[l] as i64;
    }
    reduce(v, n)
}

/// `δ_N(v)` from the discrete Fourier sum, snapped to an exact 0 or 1.
pub fn kronecker_delta(levels: u32, v: i64) -> f64 {
    let s: C64 = (0..levels as i64).map(|j| omega(levels, j * v)).sum::<C64>() / levels as f64;
    let r = s.re.round();
    if (s.re - r).abs() < 1e-12 && s.im.abs() < 1e-12 {
        r
    } else {
        s.re
    }
}

/// Diagonal operator on the logical space built from each basis state's link values.
pub fn logical_diagonal(gauss: &GaussCode, f: impl Fn(&[u32]) -> C64) -> Result<DiagonalOperator> {
    let n = gauss.levels();
    let k = gauss.code().k();
    let dim = space_dim(n, k)?;
    let mut digits = vec![0u32; k];
    let mut entries = Vec::with_capacity(dim);
    for _ in 0..dim {
        entries.push(f(&digits));
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < n {
                break;
            }
            *d = 0;
        }
    }
    Ok(DiagonalOperator { entries })
}

/// Logical image of the residual Z2 generator at `site`:
/// `-exp(iπ[δ_N(Δ + p - 1) + δ_N(Δ + p)])`.
pub fn residual_symmetry_logical(gauss: &GaussCode, site: usize) -> Result<DiagonalOperator> {
    let n = gauss.levels();
    logical_diagonal(gauss, |links| {
        let v = site_level(gauss, site, links) as i64;
        let theta = std::f64::consts::PI * (kronecker_delta(n, v - 1) + kronecker_delta(n, v));
        crate::gauss_code::snap(-C64::from_polar(1.0, theta))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{max_abs_diff, Operator};
    use crate::encoding::{build_h_1d, density_projector, HamiltonianParams};
    use crate::gauss_code::{build_code, LatticeSpec};

    fn chain(m: usize, n: u32) -> GaussCode {
        build_code(&LatticeSpec::chain(m, n).unwrap()).unwrap()
    }

    #[test]
    fn link_z_maps_to_logical_z() {
        let g = chain(4, 3);
        let z = GenPauli::single(3, 8, 5, 0, 1).unwrap();
        let (c, l) = rewrite_term(g.code(), C64::new(2.0, 0.0), &z).unwrap();
        assert_eq!(c, C64::new(2.0, 0.0));
        assert_eq!(l, GenPauli::single(3, 4, 1, 0, 1).unwrap());
    }

    #[test]
    fn site_z_picks_up_parity_phase() {
        let g = chain(4, 3);
        let z = GenPauli::single(3, 8, 1, 0, 1).unwrap();
        let (c, l) = rewrite_term(g.code(), C64::new(1.0, 0.0), &z).unwrap();
        assert!((c - omega(3, 1)).norm() < 1e-15);
        assert_eq!(l, GenPauli::new(3, 0, &[0, 0, 0, 0], &[2, 1, 0, 0]).unwrap());
    }

    #[test]
    fn stabilizer_becomes_identity() {
        let g = chain(4, 5);
        for s in g.code().generators() {
            let (c, l) = rewrite_term(g.code(), C64::new(1.0, 0.0), s).unwrap();
            assert!(l.is_identity());
            assert!((c - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn gauge_variant_term_reports_index() {
        let g = chain(2, 3);
        let mut t = TermList::new(3, 4).unwrap();
        t.push(C64::new(1.0, 0.0), GenPauli::identity(3, 4).unwrap()).unwrap();
        t.push(C64::new(1.0, 0.0), GenPauli::single(3, 4, 2, 1, 0).unwrap())
            .unwrap();
        match rewrite_hamiltonian(g.code(), &t) {
            Err(Error::GaugeVariant { index: 1, syndrome }) => assert_eq!(syndrome, vec![2, 1]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn electric_term_verbatim() {
        let g = chain(4, 3);
        let h = build_h_1d(g.lattice(), &HamiltonianParams::new(0.0, 0.0, 0.5)).unwrap();
        let l = rewrite_hamiltonian(g.code(), &h).unwrap();
        assert_eq!(l.len(), 8);
        for (i, t) in l.terms().iter().enumerate() {
            let expected = GenPauli::single(3, 4, i / 2, 0, if i % 2 == 0 { 1 } else { 2 }).unwrap();
            assert_eq!(t.pauli, expected);
            assert!((t.coeff + 0.5).norm() < 1e-15);
        }
    }

    #[test]
    fn mass_term_monomials_match_closed_form() {
        let g = chain(4, 3);
        let h = build_h_1d(g.lattice(), &HamiltonianParams::new(1.0, 0.0, 0.0)).unwrap();
        let l = rewrite_hamiltonian(g.code(), &h).unwrap();
        let mut expected = TermList::new(3, 4).unwrap();
        for site in 0..4usize {
            let p = g.lattice().staggered_parity(site) as i64;
            let sign = g.lattice().stagger_sign(site);
            for j in 0..3i64 {
                let mut z = vec![0i64; 4];
                z[(site + 3) % 4] -= j;
                z[site] += j;
                let mono = GenPauli::new(3, 0, &[0; 4], &z).unwrap();
                expected
                    .push(omega(3, -j) * omega(3, j * p) * sign / 3.0, mono)
                    .unwrap();
            }
        }
        let diff = max_abs_diff(&l.to_dense().unwrap(), &expected.to_dense().unwrap());
        assert!(diff < 1e-13);
    }

    #[test]
    fn expansion_round_trip() {
        let g = chain(4, 3);
        let h = build_h_1d(g.lattice(), &HamiltonianParams::new(1.0, 0.7, 0.5)).unwrap();
        for t in h.terms() {
            let d = g.code().decompose_normalizer(&t.pauli).unwrap();
            let (_, l) = rewrite_term(g.code(), t.coeff, &t.pauli).unwrap();
            let mut back = GenPauli::identity(3, 8).unwrap();
            for (s, &e) in g.code().generators().iter().zip(&d.stab_exps) {
                back = back.mul(&s.pow(e as i64)).unwrap();
            }
            back = back.mul(&expand_logical(g.code(), &l).unwrap()).unwrap();
            assert_eq!(back.with_phase(back.phase() as i64 + d.phase as i64), t.pauli);
        }
    }

    #[test]
    fn density_rewrite_is_delta() {
        let g = chain(2, 5);
        for site in 0..2 {
            let d = density_projector(5, 4, site).unwrap();
            let l = rewrite_hamiltonian(g.code(), &d).unwrap().to_dense().unwrap();
            let delta = logical_diagonal(&g, |links| {
                C64::new(kronecker_delta(5, site_level(&g, site, links) as i64 - 1), 0.0)
            })
            .unwrap();
            assert!(max_abs_diff(&l, &delta.to_dense().unwrap()) < 1e-13);
        }
    }

    #[test]
    fn residual_symmetry_is_z2() {
        let g = chain(2, 3);
        for site in 0..2 {
            let r = residual_symmetry_logical(&g, site).unwrap();
            assert!(r
                .entries
                .iter()
                .all(|v| *v == C64::new(1.0, 0.0) || *v == C64::new(-1.0, 0.0)));
            assert!(r.mul(&r).entries.iter().all(|v| *v == C64::new(1.0, 0.0)));
        }
    }

    #[test]
    fn deltas() {
        assert_eq!(kronecker_delta(5, 0), 1.0);
        assert_eq!(kronecker_delta(5, 10), 1.0);
        assert_eq!(kronecker_delta(5, 3), 0.0);
        assert_eq!(kronecker_delta(3, -1), 0.0);
    }
}
