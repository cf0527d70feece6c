use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{ensure_levels, omega, reduce};
use crate::dense::{dense_dim, DenseOperator, C64};
use crate::error::{Error, Result};

/// `ω^phase ∏_i X_i^{x_i} Z_i^{z_i}`, with X left of Z on every qudit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PauliRepr", into = "PauliRepr")]
pub struct GenPauli {
    levels: u32,
    phase: u32,
    x: Vec<u32>,
    z: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PauliRepr {
    #[serde(rename = "N")]
    levels: u32,
    phase: i64,
    x: Vec<i64>,
    z: Vec<i64>,
}

impl TryFrom<PauliRepr> for GenPauli {
    type Error = Error;

    fn try_from(r: PauliRepr) -> Result<Self> {
        GenPauli::new(r.levels, r.phase, &r.x, &r.z)
    }
}

impl From<GenPauli> for PauliRepr {
    fn from(p: GenPauli) -> Self {
        PauliRepr {
            levels: p.levels,
            phase: p.phase as i64,
            x: p.x.iter().map(|&v| v as i64).collect(),
            z: p.z.iter().map(|&v| v as i64).collect(),
        }
    }
}

impl GenPauli {
    pub fn new(levels: u32, phase: i64, x: &[i64], z: &[i64]) -> Result<Self> {
        ensure_levels(levels)?;
        if x.len() != z.len() {
            return Err(Error::Dimension(format!(
                "x has {} entries, z has {}",
                x.len(),
                z.len()
            )));
        }
        Ok(GenPauli {
            levels,
            phase: reduce(phase, levels),
            x: x.iter().map(|&v| reduce(v, levels)).collect(),
            z: z.iter().map(|&v| reduce(v, levels)).collect(),
        })
    }

    pub fn identity(levels: u32, qudits: usize) -> Result<Self> {
        ensure_levels(levels)?;
        Ok(GenPauli {
            levels,
            phase: 0,
            x: vec![0; qudits],
            z: vec![0; qudits],
        })
    }

    /// `X_q^x Z_q^z` on one qudit of an `qudits`-qudit register.
    pub fn single(levels: u32, qudits: usize, q: usize, x: i64, z: i64) -> Result<Self> {
        if q >= qudits {
            return Err(Error::Dimension(format!("qudit {q} out of {qudits}")));
        }
        let mut p = GenPauli::identity(levels, qudits)?;
        p.x[q] = reduce(x, levels);
        p.z[q] = reduce(z, levels);
        Ok(p)
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn qudits(&self) -> usize {
        self.x.len()
    }

    pub fn phase(&self) -> u32 {
        self.phase
    }

    pub fn x(&self) -> &[u32] {
        &self.x
    }

    pub fn z(&self) -> &[u32] {
        &self.z
    }

    pub fn with_phase(&self, phase: i64) -> Self {
        GenPauli {
            phase: reduce(phase, self.levels),
            ..self.clone()
        }
    }

    /// Same operator with the ω prefactor removed.
    pub fn unphased(&self) -> Self {
        self.with_phase(0)
    }

    fn check_compatible(&self, q: &GenPauli) -> Result<()> {
        if self.levels != q.levels || self.qudits() != q.qudits() {
            return Err(Error::Dimension(format!(
                "N={} n={} vs N={} n={}",
                self.levels,
                self.qudits(),
                q.levels,
                q.qudits()
            )));
        }
        Ok(())
    }

    fn dot(a: &[u32], b: &[u32], n: u32) -> u64 {
        a.iter()
            .zip(b)
            .fold(0u64, |acc, (&u, &v)| (acc + u as u64 * v as u64) % n as u64)
    }

    /// Canonical form of `self · q`.
    pub fn mul(&self, q: &GenPauli) -> Result<GenPauli> {
        self.check_compatible(q)?;
        let n = self.levels;
        let reorder = Self::dot(&self.z, &q.x, n);
        let phase = (self.phase as u64 + q.phase as u64 + reorder) % n as u64;
        Ok(GenPauli {
            levels: n,
            phase: phase as u32,
            x: self.x.iter().zip(&q.x).map(|(a, b)| (a + b) % n).collect(),
            z: self.z.iter().zip(&q.z).map(|(a, b)| (a + b) % n).collect(),
        })
    }

    /// `c` with `self · q = ω^c q · self`.
    pub fn commutation_exponent(&self, q: &GenPauli) -> Result<u32> {
        self.check_compatible(q)?;
        let n = self.levels as u64;
        let st = Self::dot(&self.z, &q.x, self.levels);
        let ru = Self::dot(&self.x, &q.z, self.levels);
        Ok(((st + n - ru) % n) as u32)
    }

    pub fn commutes_with(&self, q: &GenPauli) -> Result<bool> {
        Ok(self.commutation_exponent(q)? == 0)
    }

    pub fn adjoint(&self) -> GenPauli {
        let n = self.levels;
        let rs = Self::dot(&self.x, &self.z, n);
        GenPauli {
            levels: n,
            phase: reduce(rs as i64 - self.phase as i64, n),
            x: self.x.iter().map(|&v| (n - v) % n).collect(),
            z: self.z.iter().map(|&v| (n - v) % n).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> GenPauli {
        let (base, k) = if k < 0 {
            (self.adjoint(), k.unsigned_abs())
        } else {
            (self.clone(), k as u64)
        };
        let k = k % self.levels as u64;
        let mut acc = GenPauli {
            levels: self.levels,
            phase: 0,
            x: vec![0; self.qudits()],
            z: vec![0; self.qudits()],
        };
        for _ in 0..k {
            acc = acc.mul(&base).expect("same shape");
        }
        acc
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).filter(|(a, b)| **a != 0 || **b != 0).count()
    }

    /// True if every X and Z exponent vanishes (the phase may not).
    pub fn is_scalar(&self) -> bool {
        self.weight() == 0
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar() && self.phase == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.x.iter().all(|&v| v == 0)
    }

    /// Symplectic row `x ∥ z`.
    pub fn symplectic(&self) -> Vec<u32> {
        self.x.iter().chain(&self.z).copied().collect()
    }

    /// Image of basis state `index`: `(new index, ω exponent)`.
    pub fn apply_basis(&self, index: usize) -> (usize, u32) {
        let n = self.levels as usize;
        let mut rest = index;
        let mut out = 0usize;
        let mut place = 1usize;
        let mut phase = self.phase as usize;
        for q in (0..self.qudits()).rev() {
            let d = rest % n;
            rest /= n;
            phase += self.z[q] as usize * d;
            out += ((d + self.x[q] as usize) % n) * place;
            place *= n;
        }
        (out, (phase % n) as u32)
    }

    /// Operator acting as `self` on `targets[i]` of a `qudits`-qudit register.
    pub fn embed(&self, qudits: usize, targets: &[usize]) -> Result<GenPauli> {
        if targets.len() != self.qudits() || targets.iter().any(|&t| t >= qudits) {
            return Err(Error::Dimension(format!(
                "cannot place {} qudits on {:?} of {qudits}",
                self.qudits(),
                targets
            )));
        }
        let mut p = GenPauli::identity(self.levels, qudits)?;
        p.phase = self.phase;
        for (i, &t) in targets.iter().enumerate() {
            p.x[t] = self.x[i];
            p.z[t] = self.z[i];
        }
        Ok(p)
    }

    pub fn to_dense(&self) -> Result<DenseOperator> {
        let dim = dense_dim(self.levels, self.qudits())?;
        let mut m = DMatrix::zeros(dim, dim);
        for col in 0..dim {
            let (row, ph) = self.apply_basis(col);
            m[(row, col)] = omega(self.levels, ph as i64);
        }
        Ok(m)
    }

    pub fn phase_factor(&self) -> C64 {
        omega(self.levels, self.phase as i64)
    }
}

impl fmt::Display for GenPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.phase != 0 {
            parts.push(format!("w^{}", self.phase));
        }
        for q in 0..self.qudits() {
            for (sym, e) in [("X", self.x[q]), ("Z", self.z[q])] {
                match e {
                    0 => {}
                    1 => parts.push(format!("{sym}{q}")),
                    _ => parts.push(format!("{sym}{q}^{e}")),
                }
            }
        }
        if parts.is_empty() {
            write!(f, "I")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}
