//! State vectors over `n` qudits with projective single-qudit measurement.

use nalgebra::DVector;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::dense::{digits, index_of, space_dim, DenseOperator, C64};
use crate::error::{Error, Result};

/// Allowed deviation of `⟨ψ|ψ⟩` from 1.
pub const NORM_TOL: f64 = 1e-12;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    levels: u32,
    qudits: usize,
    amps: DVector<C64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementRecord {
    pub outcome: u32,
    pub probability: f64,
    /// Normalized state of the unmeasured qudits.
    pub state: DenseState,
}

#[derive(Clone, Debug, Serialize)]
pub struct StateSummary {
    pub levels: u32,
    pub qudits: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl DenseState {
    pub fn new(levels: u32, qudits: usize, amps: DVector<C64>) -> Result<Self> {
        let dim = space_dim(levels, qudits)?;
        if amps.len() != dim {
            return Err(Error::Dimension(format!(
                "{} amplitudes for dimension {dim}",
                amps.len()
            )));
        }
        let norm = amps.norm_squared();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(DenseState { levels, qudits, amps })
    }

    /// Rescales `amps` to unit norm.
    pub fn normalized(levels: u32, qudits: usize, amps: DVector<C64>) -> Result<Self> {
        let norm = amps.norm();
        if norm == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        DenseState::new(levels, qudits, amps / C64::new(norm, 0.0))
    }

    pub fn basis(levels: u32, digit_values: &[u32]) -> Result<Self> {
        let dim = space_dim(levels, digit_values.len())?;
        let mut amps = DVector::zeros(dim);
        amps[index_of(digit_values, levels)] = C64::new(1.0, 0.0);
        DenseState::new(levels, digit_values.len(), amps)
    }

    /// Haar-distributed state from complex Gaussian amplitudes.
    pub fn random(levels: u32, qudits: usize, rng: &mut impl Rng) -> Result<Self> {
        let dim = space_dim(levels, qudits)?;
        let amps = DVector::from_fn(dim, |_, _| {
            C64::new(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            )
        });
        DenseState::normalized(levels, qudits, amps)
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn qudits(&self) -> usize {
        self.qudits
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn summary(&self) -> StateSummary {
        StateSummary {
            levels: self.levels,
            qudits: self.qudits,
            re: self.amps.iter().map(|a| a.re).collect(),
            im: self.amps.iter().map(|a| a.im).collect(),
        }
    }

    /// `|ψ⟩ ⊗ |φ⟩`.
    pub fn tensor(&self, other: &DenseState) -> Result<DenseState> {
        if self.levels != other.levels {
            return Err(Error::Dimension("tensor product of different local dimensions".into()));
        }
        let amps = self.amps.kronecker(&other.amps);
        DenseState::new(self.levels, self.qudits + other.qudits, amps)
    }

    /// Applies a `N^k × N^k` operator to `targets`, first target most significant.
    pub fn apply(&mut self, op: &DenseOperator, targets: &[usize]) -> Result<()> {
        let n = self.levels;
        let local = space_dim(n, targets.len())?;
        if op.nrows() != local || op.ncols() != local {
            return Err(Error::Dimension(format!(
                "{}x{} gate on {} qudits",
                op.nrows(),
                op.ncols(),
                targets.len()
            )));
        }
        for (i, &t) in targets.iter().enumerate() {
            if t >= self.qudits || targets[..i].contains(&t) {
                return Err(Error::InvalidArgument(format!("bad target list {targets:?}")));
            }
        }
        let mut out = DVector::zeros(self.amps.len());
        for (i, &a) in self.amps.iter().enumerate() {
            if a.norm() == 0.0 {
                continue;
            }
            let mut d = digits(i, n, self.qudits);
            let col = index_of(&targets.iter().map(|&t| d[t]).collect::<Vec<_>>(), n);
            for row in 0..local {
                let v = op[(row, col)];
                if v.norm() == 0.0 {
                    continue;
                }
                for (t, r) in targets.iter().zip(digits(row, n, targets.len())) {
                    d[*t] = r;
                }
                out[index_of(&d, n)] += v * a;
            }
        }
        self.amps = out;
        Ok(())
    }

    pub fn applied(mut self, op: &DenseOperator, targets: &[usize]) -> Result<Self> {
        self.apply(op, targets)?;
        Ok(self)
    }

    /// Outcome distribution of measuring `qudit` in the computational basis.
    pub fn probabilities(&self, qudit: usize) -> Vec<f64> {
        let mut p = vec![0.0; self.levels as usize];
        for (i, a) in self.amps.iter().enumerate() {
            p[digits(i, self.levels, self.qudits)[qudit] as usize] += a.norm_sqr();
        }
        p
    }

    /// Projective measurement of `qudit`; `forced` selects the branch,
    /// otherwise the outcome is drawn from `rng`.
    pub fn measure(&self, qudit: usize, forced: Option<u32>, rng: &mut impl Rng) -> Result<MeasurementRecord> {
        if qudit >= self.qudits || self.qudits < 2 {
            return Err(Error::InvalidArgument(format!(
                "cannot measure qudit {qudit} of {}",
                self.qudits
            )));
        }
        let probs = self.probabilities(qudit);
        let outcome = match forced {
            Some(l) if l < self.levels => l,
            Some(l) => return Err(Error::InvalidArgument(format!("outcome {l} out of range"))),
            None => {
                let r: f64 = rng.gen();
                let mut acc = 0.0;
                let mut pick = self.levels - 1;
                for (l, p) in probs.iter().enumerate() {
                    acc += p;
                    if r < acc {
                        pick = l as u32;
                        break;
                    }
                }
                pick
            }
        };
        let probability = probs[outcome as usize];
        if probability < NORM_TOL {
            return Err(Error::InvalidArgument(format!(
                "outcome {outcome} has zero probability"
            )));
        }
        let rest = self.qudits - 1;
        let mut amps = DVector::zeros(space_dim(self.levels, rest)?);
        for (i, a) in self.amps.iter().enumerate() {
            let mut d = digits(i, self.levels, self.qudits);
            if d[qudit] == outcome {
                d.remove(qudit);
                amps[index_of(&d, self.levels)] += a;
            }
        }
        Ok(MeasurementRecord {
            outcome,
            probability,
            state: DenseState::normalized(self.levels, rest, amps)?,
        })
    }

    pub fn overlap(&self, other: &DenseState) -> C64 {
        self.amps.dotc(&other.amps)
    }

    /// `|⟨ψ|φ⟩|²`, insensitive to global phase.
    pub fn fidelity(&self, other: &DenseState) -> f64 {
        self.overlap(other).norm_sqr()
    }

    /// Copy of `self` rotated by the global phase that maximizes overlap with `reference`.
    pub fn aligned_to(&self, reference: &DenseState) -> DenseState {
        let o = reference.overlap(self);
        let phase = if o.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            o.conj() / o.norm()
        };
        DenseState {
            amps: &self.amps * phase,
            ..self.clone()
        }
    }
}
