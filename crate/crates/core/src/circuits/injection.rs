//! Gate teleportation through a prepared ancilla. The data qudit is qudit 0
//! and the ancilla qudit 1 throughout.

use rand::Rng;

use crate::circuits::gates::{cz, qft, sum, swap_from_sum, x_gate};
use crate::circuits::state::{DenseState, MeasurementRecord};
use crate::dense::{identity, DenseOperator};
use crate::error::{Error, Result};

/// Off-diagonal magnitude tolerated in a "diagonal" gate.
pub const DIAGONAL_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct InjectionRecord {
    pub measurement: MeasurementRecord,
    /// Outcome distribution of the ancilla measurement.
    pub probabilities: Vec<f64>,
    pub correction: DenseOperator,
    /// Data state after the correction.
    pub output: DenseState,
}

fn matrix_pow(m: &DenseOperator, k: u32) -> DenseOperator {
    (0..k).fold(identity(m.nrows()), |acc, _| acc * m)
}

fn single_qudit(psi: &DenseState) -> Result<()> {
    if psi.qudits() != 1 {
        return Err(Error::InvalidArgument(format!(
            "injection acts on one data qudit, got {}",
            psi.qudits()
        )));
    }
    Ok(())
}

/// `|x, y⟩ ↦ |y, -x⟩`: SWAP up to a `K` on qudit 1.
pub fn swap_k(levels: u32) -> Result<DenseOperator> {
    let s = sum(levels)?;
    let s_rev = crate::circuits::gates::flip(&s, levels)?;
    Ok(&s_rev * s.adjoint() * &s_rev)
}

/// QFT on the data via a Fourier-prepared ancilla, CZ, a SUM-built swap and
/// a Fourier-basis readout; the outcome `L` is undone by `X^{-L}`.
pub fn inject_qft(psi: &DenseState, forced: Option<u32>, rng: &mut impl Rng) -> Result<InjectionRecord> {
    single_qudit(psi)?;
    let n = psi.levels();
    let f = qft(n)?;
    let mut st = psi.tensor(&DenseState::basis(n, &[0])?)?;
    st.apply(&f, &[1])?;
    st.apply(&cz(n)?, &[0, 1])?;
    st.apply(&swap_k(n)?, &[0, 1])?;
    st.apply(&f, &[1])?;
    let probabilities = st.probabilities(1);
    let measurement = st.measure(1, forced, rng)?;
    let correction = matrix_pow(&x_gate(n)?.adjoint(), measurement.outcome);
    let output = measurement.state.clone().applied(&correction, &[0])?;
    Ok(InjectionRecord {
        measurement,
        probabilities,
        correction,
        output,
    })
}

pub fn is_diagonal(u: &DenseOperator) -> bool {
    (0..u.nrows()).all(|r| (0..u.ncols()).all(|c| r == c || u[(r, c)].norm() <= DIAGONAL_TOL))
}

/// `U` on the data from the ancilla `U·QFT|0⟩`, a `SUM†` controlled by the
/// ancilla, a swap, and the correction `U X^L U†`.
pub fn inject_diagonal(
    u: &DenseOperator,
    psi: &DenseState,
    forced: Option<u32>,
    rng: &mut impl Rng,
) -> Result<InjectionRecord> {
    single_qudit(psi)?;
    if !is_diagonal(u) {
        return Err(Error::NotDiagonal);
    }
    let n = psi.levels();
    if u.nrows() != n as usize {
        return Err(Error::Dimension(format!("{}-level gate on {n}-level data", u.nrows())));
    }
    let dev = crate::dense::unitarity_deviation(u);
    if dev > crate::circuits::clifford::UNITARY_TOL {
        return Err(Error::NotUnitary(dev));
    }
    let ancilla = DenseState::basis(n, &[0])?.applied(&(u * qft(n)?), &[0])?;
    let mut st = psi.tensor(&ancilla)?;
    st.apply(&sum(n)?.adjoint(), &[1, 0])?;
    st.apply(&swap_from_sum(n)?, &[0, 1])?;
    let probabilities = st.probabilities(1);
    let measurement = st.measure(1, forced, rng)?;
    let correction = u * matrix_pow(&x_gate(n)?, measurement.outcome) * u.adjoint();
    let output = measurement.state.clone().applied(&correction, &[0])?;
    Ok(InjectionRecord {
        measurement,
        probabilities,
        correction,
        output,
    })
}

/// `|⟨target|output⟩|²` with `target = G|ψ⟩`.
pub fn injection_fidelity(rec: &InjectionRecord, gate: &DenseOperator, psi: &DenseState) -> Result<f64> {
    let target = psi.clone().applied(gate, &[0])?;
    Ok(target.fidelity(&rec.output))
}

/// Uniform-outcome deviation `max_L |p_L - 1/N|`.
pub fn uniformity_deviation(probabilities: &[f64]) -> f64 {
    let u = 1.0 / probabilities.len() as f64;
    probabilities.iter().fold(0.0, |acc, p| acc.max((p - u).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::clifford::is_clifford;
    use crate::circuits::gates::{k_gate, swap, t_gate};
    use crate::circuits::state::seeded_rng;
    use crate::dense::{kron, max_abs_diff};

    #[test]
    fn swap_k_is_swap_then_k() {
        for n in [3u32, 5] {
            let expected = kron(&identity(n as usize), &k_gate(n).unwrap()) * swap(n).unwrap();
            assert!(max_abs_diff(&swap_k(n).unwrap(), &expected) < 1e-15);
        }
    }

    #[test]
    fn qft_of_zero_is_uniform() {
        let mut rng = seeded_rng(0);
        let zero = DenseState::basis(5, &[0]).unwrap();
        for l in 0..5 {
            let rec = inject_qft(&zero, Some(l), &mut rng).unwrap();
            for a in rec.output.amplitudes().iter() {
                assert!((a.norm() - 1.0 / 5f64.sqrt()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn qft_injection_all_branches() {
        let mut rng = seeded_rng(7);
        for n in [3u32, 5] {
            let f = qft(n).unwrap();
            for _ in 0..5 {
                let psi = DenseState::random(n, 1, &mut rng).unwrap();
                for l in 0..n {
                    let rec = inject_qft(&psi, Some(l), &mut rng).unwrap();
                    assert!(injection_fidelity(&rec, &f, &psi).unwrap() > 1.0 - 1e-12);
                    assert!(uniformity_deviation(&rec.probabilities) < 1e-12);
                    assert!(is_clifford(&rec.correction, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn t_injection_all_branches() {
        let mut rng = seeded_rng(11);
        for n in [5u32, 7] {
            let t = t_gate(n).unwrap();
            let psi = DenseState::random(n, 1, &mut rng).unwrap();
            for l in 0..n {
                let rec = inject_diagonal(&t, &psi, Some(l), &mut rng).unwrap();
                assert!(injection_fidelity(&rec, &t, &psi).unwrap() > 1.0 - 1e-12);
                assert!(uniformity_deviation(&rec.probabilities) < 1e-12);
                assert!(is_clifford(&rec.correction, n).unwrap());
            }
        }
    }

    #[test]
    fn identity_injection_leaves_state() {
        let mut rng = seeded_rng(2);
        let psi = DenseState::random(3, 1, &mut rng).unwrap();
        for l in 0..3 {
            let rec = inject_diagonal(&identity(3), &psi, Some(l), &mut rng).unwrap();
            assert!(rec.output.fidelity(&psi) > 1.0 - 1e-12);
        }
    }

    #[test]
    fn seeded_runs_are_bit_identical() {
        let psi = DenseState::random(5, 1, &mut seeded_rng(4)).unwrap();
        let a = inject_qft(&psi, None, &mut seeded_rng(9)).unwrap();
        let b = inject_qft(&psi, None, &mut seeded_rng(9)).unwrap();
        assert_eq!(a.measurement, b.measurement);
        assert_eq!(a.output, b.output);
    }

    #[test]
    fn rejects_bad_inputs() {
        let mut rng = seeded_rng(0);
        let psi = DenseState::basis(3, &[0]).unwrap();
        assert!(matches!(
            inject_diagonal(&qft(3).unwrap(), &psi, None, &mut rng),
            Err(Error::NotDiagonal)
        ));
        let two = DenseState::basis(3, &[0, 0]).unwrap();
        assert!(inject_qft(&two, None, &mut rng).is_err());
    }
}
