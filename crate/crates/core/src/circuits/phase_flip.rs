//! The three-qudit phase-flip code and its syndrome-extraction circuit.

use rand::Rng;

use crate::circuits::gates::{qft, sum};
use crate::circuits::state::{DenseState, MeasurementRecord};
use crate::dense::{space_dim, C64};
use crate::error::{Error, Result};
use crate::stabilizer::StabilizerCode;
use crate::zn_algebra::{ensure_levels, GenPauli};

/// `S₁ = X₁X₂⁻¹`, `S₂ = X₂X₃⁻¹`, `X̄ = X₁`, `Z̄ = Z₁Z₂Z₃`.
pub fn phase_flip_code(levels: u32) -> Result<StabilizerCode> {
    ensure_levels(levels)?;
    let gens = vec![
        GenPauli::new(levels, 0, &[1, -1, 0], &[0, 0, 0])?,
        GenPauli::new(levels, 0, &[0, 1, -1], &[0, 0, 0])?,
    ];
    let lx = vec![GenPauli::new(levels, 0, &[1, 0, 0], &[0, 0, 0])?];
    let lz = vec![GenPauli::new(levels, 0, &[0, 0, 0], &[1, 1, 1])?];
    StabilizerCode::new(levels, 3, gens, lx, lz)
}

/// `|j⟩_L ∝ X̄^j Σ_{g ∈ S} g |000⟩`.
pub fn phase_flip_codewords(levels: u32) -> Result<Vec<DenseState>> {
    let code = phase_flip_code(levels)?;
    let dim = space_dim(levels, 3)?;
    let [s1, s2] = [&code.generators()[0], &code.generators()[1]];
    let mut out = Vec::with_capacity(levels as usize);
    for j in 0..levels as i64 {
        let lift = code.logical_x()[0].pow(j);
        let mut amps = nalgebra::DVector::zeros(dim);
        for a in 0..levels as i64 {
            for b in 0..levels as i64 {
                let g = lift.mul(&s1.pow(a))?.mul(&s2.pow(b))?;
                let (row, ph) = g.apply_basis(0);
                amps[row] += g.phase_factor() * crate::zn_algebra::omega(levels, ph as i64);
            }
        }
        out.push(DenseState::normalized(levels, 3, amps)?);
    }
    Ok(out)
}

/// `Σ_j c_j |j⟩_L`.
pub fn encode(levels: u32, coeffs: &[C64]) -> Result<DenseState> {
    if coeffs.len() != levels as usize {
        return Err(Error::Dimension(format!(
            "{} coefficients for N = {levels}",
            coeffs.len()
        )));
    }
    let words = phase_flip_codewords(levels)?;
    let mut amps = nalgebra::DVector::zeros(words[0].amplitudes().len());
    for (c, w) in coeffs.iter().zip(&words) {
        amps += w.amplitudes() * *c;
    }
    DenseState::new(levels, 3, amps)
}

/// Correction `Z_i^{-j}` for the single-qudit error `Z_i^j` with this syndrome.
pub fn phase_flip_decode(levels: u32, syndrome: &[u32]) -> Result<GenPauli> {
    let code = phase_flip_code(levels)?;
    if syndrome.len() != 2 {
        return Err(Error::Dimension(format!("syndrome of length {}", syndrome.len())));
    }
    if syndrome.iter().all(|&s| s == 0) {
        return GenPauli::identity(levels, 3);
    }
    for q in 0..3 {
        for j in 1..levels as i64 {
            let e = GenPauli::single(levels, 3, q, 0, j)?;
            if code.syndrome(&e)? == syndrome {
                return Ok(e.adjoint());
            }
        }
    }
    Err(Error::Uncorrectable(syndrome.to_vec()))
}

/// Extracts `(S₁, S₂)` onto two `|0⟩` ancillas (qudits 3 and 4).
///
/// The data is rotated by the QFT so each `X` becomes a `Z`, ancilla `k`
/// accumulates `x_k - x_{k+1}` through `SUM` and `SUM†`, and the rotation is
/// undone before the ancillas are read.
pub fn parity_check_circuit(state: &DenseState, rng: &mut impl Rng) -> Result<(Vec<u32>, Vec<MeasurementRecord>)> {
    if state.qudits() != 3 {
        return Err(Error::InvalidArgument(
            "parity check needs a three-qudit data block".into(),
        ));
    }
    let n = state.levels();
    let f = qft(n)?;
    let s = sum(n)?;
    let sd = s.adjoint();
    let mut st = state.tensor(&DenseState::basis(n, &[0, 0])?)?;
    for q in 0..3 {
        st.apply(&f, &[q])?;
    }
    for (anc, (a, b)) in [(3usize, (0usize, 1usize)), (4, (1, 2))] {
        st.apply(&s, &[a, anc])?;
        st.apply(&sd, &[b, anc])?;
    }
    for q in 0..3 {
        st.apply(&f.adjoint(), &[q])?;
    }
    let first = st.measure(3, None, rng)?;
    let second = first.state.measure(3, None, rng)?;
    Ok((vec![first.outcome, second.outcome], vec![first, second]))
}
