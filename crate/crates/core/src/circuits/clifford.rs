//! Clifford tests by conjugation of Pauli generators.

use serde::Serialize;

use crate::circuits::gates::{qutrit_diagonal, s_gate, t_gate, x_gate, z_gate};
use crate::dense::{max_abs_diff, unitarity_deviation, DenseOperator, C64};
use crate::error::{Error, Result};
use crate::zn_algebra::{mod_inverse, omega, GenPauli};

/// Allowed `‖U†U - 1‖` for inputs.
pub const UNITARY_TOL: f64 = 1e-10;
/// Allowed deviation when matching `U P U†` against a scaled Pauli.
pub const MATCH_TOL: f64 = 1e-10;

fn qudits_of(dim: usize, levels: u32) -> Result<usize> {
    let mut q = 0;
    let mut d = 1usize;
    while d < dim {
        d *= levels as usize;
        q += 1;
    }
    if d != dim {
        return Err(Error::Dimension(format!("dimension {dim} is not a power of {levels}")));
    }
    Ok(q)
}

/// `U P U† = c · Q` for a Pauli `Q` and unit-modulus `c`, if such a pair exists.
///
/// `Q = X^r Z^s` is read off from the matrix: `r` from the support of column
/// 0, each `s_q` from the phase picked up by the basis state with a single
/// excitation on qudit `q`. The candidate is then checked on every entry.
pub fn conjugate_to_pauli(u: &DenseOperator, p: &GenPauli) -> Result<Option<(C64, GenPauli)>> {
    let dev = unitarity_deviation(u);
    if dev > UNITARY_TOL {
        return Err(Error::NotUnitary(dev));
    }
    let n = p.levels();
    let qudits = qudits_of(u.nrows(), n)?;
    if qudits != p.qudits() {
        return Err(Error::Dimension(format!(
            "{qudits}-qudit gate with a {}-qudit Pauli",
            p.qudits()
        )));
    }
    let v = u * p.to_dense()? * u.adjoint();
    let col0: Vec<usize> = (0..v.nrows()).filter(|&r| v[(r, 0)].norm() > MATCH_TOL).collect();
    let [r0] = col0[..] else {
        return Ok(None);
    };
    let c = v[(r0, 0)];
    if (c.norm() - 1.0).abs() > MATCH_TOL {
        return Ok(None);
    }
    let r = crate::dense::digits(r0, n, qudits);
    let mut s = vec![0i64; qudits];
    for q in 0..qudits {
        let mut e = vec![0u32; qudits];
        e[q] = 1;
        let mut target = r.clone();
        target[q] = (target[q] + 1) % n;
        let ratio = v[(crate::dense::index_of(&target, n), crate::dense::index_of(&e, n))] / c;
        let k = (ratio.arg() / (2.0 * std::f64::consts::PI) * n as f64).round() as i64;
        s[q] = k;
    }
    let x: Vec<i64> = r.iter().map(|&v| v as i64).collect();
    let q = GenPauli::new(n, 0, &x, &s)?;
    if max_abs_diff(&v, &(q.to_dense()? * c)) > MATCH_TOL {
        return Ok(None);
    }
    Ok(Some((c, q)))
}

/// Whether `U` maps every `X_q` and `Z_q` to a scaled Pauli.
pub fn is_clifford(u: &DenseOperator, levels: u32) -> Result<bool> {
    let qudits = qudits_of(u.nrows(), levels)?;
    for q in 0..qudits {
        for (x, z) in [(1, 0), (0, 1)] {
            let p = GenPauli::single(levels, qudits, q, x, z)?;
            if conjugate_to_pauli(u, &p)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Σ_j |j⟩⟨j+1|`, the shift used in the Clifford conjugation identities.
pub fn shift_down(levels: u32) -> Result<DenseOperator> {
    Ok(x_gate(levels)?.adjoint())
}

/// `max |S X S† - ω Z† X|` with `X = Σ|j⟩⟨j+1|`.
pub fn s_conjugation_residual(levels: u32) -> Result<f64> {
    let s = s_gate(levels)?;
    let x = shift_down(levels)?;
    let z = z_gate(levels)?;
    let lhs = &s * &x * s.adjoint();
    Ok(max_abs_diff(&lhs, &(z.adjoint() * &x * omega(levels, 1))))
}

/// `max |T X T† - ω^{-[6^{-1}]} S† X|` with `X = Σ|j⟩⟨j+1|`.
pub fn t_conjugation_residual(levels: u32) -> Result<f64> {
    let t = t_gate(levels)?;
    let s = s_gate(levels)?;
    let x = shift_down(levels)?;
    let sixth = mod_inverse(6, levels)? as i64;
    let lhs = &t * &x * t.adjoint();
    Ok(max_abs_diff(&lhs, &(s.adjoint() * &x * omega(levels, -sixth))))
}

#[derive(Clone, Debug, Serialize)]
pub struct NogoReport {
    pub total: usize,
    /// Triples with `T X T†` Clifford.
    pub txt_clifford: usize,
    /// Triples with `T` itself Clifford.
    pub t_clifford: usize,
    /// Triples with `a ≡ b ≡ c (mod 3)`.
    pub congruent: usize,
    /// Triples where `T X T†` Clifford agrees with `a ≡ b ≡ c (mod 3)`.
    pub consistent: usize,
    /// Whether every congruent triple gives a Clifford `T`.
    pub congruent_implies_clifford: bool,
    /// Triples where `T X T†` Clifford agrees with `a + b + c ≡ 0 (mod 3)`.
    pub sum_rule_consistent: usize,
    /// Up to ten triples with `T X T†` Clifford but `T` not Clifford.
    pub counterexamples: Vec<[i64; 3]>,
}

impl NogoReport {
    /// The claimed equivalences hold on every triple.
    pub fn pass(&self) -> bool {
        self.consistent == self.total && self.congruent_implies_clifford
    }
}

/// Exhaustive scan of `T = diag(ω_9^a, ω_9^b, ω_9^c)` over `Z_9³`.
pub fn qutrit_t_nogo() -> Result<NogoReport> {
    let x = x_gate(3)?;
    let mut r = NogoReport {
        total: 0,
        txt_clifford: 0,
        t_clifford: 0,
        congruent: 0,
        consistent: 0,
        congruent_implies_clifford: true,
        sum_rule_consistent: 0,
        counterexamples: Vec::new(),
    };
    for a in 0..9i64 {
        for b in 0..9i64 {
            for c in 0..9i64 {
                let t = qutrit_diagonal(a, b, c);
                let txt = &t * &x * t.adjoint();
                let txt_cliff = is_clifford(&txt, 3)?;
                let t_cliff = is_clifford(&t, 3)?;
                let congruent = a % 3 == b % 3 && b % 3 == c % 3;
                r.total += 1;
                r.txt_clifford += txt_cliff as usize;
                r.t_clifford += t_cliff as usize;
                r.congruent += congruent as usize;
                r.consistent += (txt_cliff == congruent) as usize;
                r.sum_rule_consistent += (txt_cliff == ((a + b + c) % 3 == 0)) as usize;
                if congruent && !t_cliff {
                    r.congruent_implies_clifford = false;
                }
                if txt_cliff && !t_cliff && r.counterexamples.len() < 10 {
                    r.counterexamples.push([a, b, c]);
                }
            }
        }
    }
    Ok(r)
}
