//! Stabilizer codes over prime-dimensional qudits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zn_algebra::{ensure_levels, rank_mod, solve_mod, GenPauli};

/// Default cap on the number of candidates examined by a distance search.
pub const DEFAULT_DISTANCE_BUDGET: u128 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CodeRepr", into = "CodeRepr")]
pub struct StabilizerCode {
    levels: u32,
    n: usize,
    generators: Vec<GenPauli>,
    logical_x: Vec<GenPauli>,
    logical_z: Vec<GenPauli>,
}

#[derive(Serialize, Deserialize)]
struct CodeRepr {
    #[serde(rename = "N")]
    levels: u32,
    n: usize,
    generators: Vec<GenPauli>,
    logical_x: Vec<GenPauli>,
    logical_z: Vec<GenPauli>,
}

impl TryFrom<CodeRepr> for StabilizerCode {
    type Error = Error;

    fn try_from(r: CodeRepr) -> Result<Self> {
        StabilizerCode::new(r.levels, r.n, r.generators, r.logical_x, r.logical_z)
    }
}

impl From<StabilizerCode> for CodeRepr {
    fn from(c: StabilizerCode) -> Self {
        CodeRepr {
            levels: c.levels,
            n: c.n,
            generators: c.generators,
            logical_x: c.logical_x,
            logical_z: c.logical_z,
        }
    }
}

/// Coordinates of a normalizer element:
/// `p = ∏ g_i^{stab} · ∏ X̄_i^{lx} · ∏ Z̄_i^{lz} · ω^phase`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub stab_exps: Vec<u32>,
    pub lx_exps: Vec<u32>,
    pub lz_exps: Vec<u32>,
    pub phase: u32,
}

impl Decomposition {
    pub fn is_stabilizer(&self) -> bool {
        self.lx_exps.iter().chain(&self.lz_exps).all(|&e| e == 0)
    }
}

/// Exponent alphabet used by the distance search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PauliKind {
    /// Pure X exponents.
    X,
    /// Pure Z exponents.
    Z,
    /// Any nontrivial single-qudit Pauli.
    Full,
}

impl PauliKind {
    fn alphabet(self, levels: u32) -> Vec<(u32, u32)> {
        match self {
            PauliKind::X => (1..levels).map(|r| (r, 0)).collect(),
            PauliKind::Z => (1..levels).map(|s| (0, s)).collect(),
            PauliKind::Full => (0..levels)
                .flat_map(|r| (0..levels).map(move |s| (r, s)))
                .filter(|&(r, s)| r != 0 || s != 0)
                .collect(),
        }
    }
}

pub fn symplectic_rank(ops: &[GenPauli]) -> usize {
    match ops.first() {
        None => 0,
        Some(p) => rank_mod(&ops.iter().map(GenPauli::symplectic).collect::<Vec<_>>(), p.levels()),
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl StabilizerCode {
    pub fn new(
        levels: u32,
        n: usize,
        generators: Vec<GenPauli>,
        logical_x: Vec<GenPauli>,
        logical_z: Vec<GenPauli>,
    ) -> Result<Self> {
        ensure_levels(levels)?;
        for p in generators.iter().chain(&logical_x).chain(&logical_z) {
            if p.levels() != levels || p.qudits() != n {
                return Err(Error::Dimension(format!(
                    "operator on N={} n={} in a code with N={levels} n={n}",
                    p.levels(),
                    p.qudits()
                )));
            }
        }
        if logical_x.len() != logical_z.len() {
            return Err(Error::Dimension(format!(
                "{} logical X vs {} logical Z",
                logical_x.len(),
                logical_z.len()
            )));
        }
        let noncommuting = |what, set: &[GenPauli]| -> Result<()> {
            for i in 0..set.len() {
                for j in i + 1..set.len() {
                    let e = set[i].commutation_exponent(&set[j])?;
                    if e != 0 {
                        return Err(Error::NonCommuting {
                            what,
                            i,
                            j,
                            exponent: e,
                        });
                    }
                }
            }
            Ok(())
        };
        noncommuting("generators", &generators)?;
        let rank = symplectic_rank(&generators);
        if rank != generators.len() {
            return Err(Error::Dependent {
                rank,
                count: generators.len(),
            });
        }
        for (what, set) in [
            ("logical X / generator", &logical_x),
            ("logical Z / generator", &logical_z),
        ] {
            for (i, l) in set.iter().enumerate() {
                for (j, g) in generators.iter().enumerate() {
                    let e = l.commutation_exponent(g)?;
                    if e != 0 {
                        return Err(Error::NonCommuting {
                            what,
                            i,
                            j,
                            exponent: e,
                        });
                    }
                }
            }
        }
        for (i, lx) in logical_x.iter().enumerate() {
            for (j, lz) in logical_z.iter().enumerate() {
                let e = lx.commutation_exponent(lz)?;
                let expected = if i == j { levels - 1 } else { 0 };
                if e != expected {
                    return Err(Error::BadPairing {
                        i,
                        j,
                        exponent: e,
                        expected,
                    });
                }
            }
        }
        noncommuting("logical X", &logical_x)?;
        noncommuting("logical Z", &logical_z)?;
        if logical_x.len() + generators.len() != n {
            return Err(Error::Dimension(format!(
                "{} logical pairs but n - rank = {}",
                logical_x.len(),
                n - generators.len()
            )));
        }
        Ok(StabilizerCode {
            levels,
            n,
            generators,
            logical_x,
            logical_z,
        })
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.logical_x.len()
    }

    pub fn generators(&self) -> &[GenPauli] {
        &self.generators
    }

    pub fn logical_x(&self) -> &[GenPauli] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[GenPauli] {
        &self.logical_z
    }

    pub fn syndrome(&self, error: &GenPauli) -> Result<Vec<u32>> {
        self.generators.iter().map(|g| g.commutation_exponent(error)).collect()
    }

    pub fn in_normalizer(&self, p: &GenPauli) -> Result<bool> {
        Ok(self.syndrome(p)?.iter().all(|&s| s == 0))
    }

    pub fn decompose_normalizer(&self, p: &GenPauli) -> Result<Decomposition> {
        let syndrome = self.syndrome(p)?;
        if syndrome.iter().any(|&s| s != 0) {
            return Err(Error::Detectable { syndrome });
        }
        let basis: Vec<Vec<u32>> = self
            .generators
            .iter()
            .chain(&self.logical_x)
            .chain(&self.logical_z)
            .map(GenPauli::symplectic)
            .collect();
        let coeffs = solve_mod(&basis, &p.symplectic(), self.levels)
            .ok_or_else(|| Error::Internal("normalizer element outside the solved span".into()))?;
        let (s, rest) = coeffs.split_at(self.generators.len());
        let (lx, lz) = rest.split_at(self.k());
        let mut dec = Decomposition {
            stab_exps: s.to_vec(),
            lx_exps: lx.to_vec(),
            lz_exps: lz.to_vec(),
            phase: 0,
        };
        let bare = self.recompose(&dec)?;
        if bare.x() != p.x() || bare.z() != p.z() {
            return Err(Error::Internal("recomposition exponents disagree".into()));
        }
        dec.phase = (p.phase() + self.levels - bare.phase()) % self.levels;
        Ok(dec)
    }

    pub fn recompose(&self, d: &Decomposition) -> Result<GenPauli> {
        let mut acc = GenPauli::identity(self.levels, self.n)?;
        let parts = self
            .generators
            .iter()
            .zip(&d.stab_exps)
            .chain(self.logical_x.iter().zip(&d.lx_exps))
            .chain(self.logical_z.iter().zip(&d.lz_exps));
        for (op, &e) in parts {
            if e != 0 {
                acc = acc.mul(&op.pow(e as i64))?;
            }
        }
        Ok(acc.with_phase(acc.phase() as i64 + d.phase as i64))
    }

    fn search_size(&self, kind: PauliKind, w_max: usize) -> u128 {
        let a = kind.alphabet(self.levels).len() as u128;
        (1..=w_max.min(self.n))
            .map(|w| binomial(self.n, w).saturating_mul(a.saturating_pow(w as u32)))
            .fold(0u128, u128::saturating_add)
    }

    /// Lowest-weight element of N(S)∖S with exponents from `kind`'s alphabet.
    pub fn find_logical(&self, kind: PauliKind, w_max: usize, budget: u128) -> Result<Option<GenPauli>> {
        if w_max == 0 {
            return Err(Error::InvalidArgument("maximum weight must be at least 1".into()));
        }
        let needed = self.search_size(kind, w_max);
        if needed > budget {
            return Err(Error::EnumerationLimit { needed, budget });
        }
        let alphabet = kind.alphabet(self.levels);
        for w in 1..=w_max.min(self.n) {
            let mut support: Vec<usize> = (0..w).collect();
            loop {
                let mut letters = vec![0usize; w];
                loop {
                    let mut x = vec![0i64; self.n];
                    let mut z = vec![0i64; self.n];
                    for (slot, &q) in support.iter().enumerate() {
                        let (r, s) = alphabet[letters[slot]];
                        x[q] = r as i64;
                        z[q] = s as i64;
                    }
                    let p = GenPauli::new(self.levels, 0, &x, &z)?;
                    if self.in_normalizer(&p)? && !self.decompose_normalizer(&p)?.is_stabilizer() {
                        return Ok(Some(p));
                    }
                    if !advance_odometer(&mut letters, alphabet.len()) {
                        break;
                    }
                }
                if !advance_combination(&mut support, self.n) {
                    break;
                }
            }
        }
        Ok(None)
    }

    pub fn distance(&self, kind: PauliKind, w_max: usize, budget: u128) -> Result<Option<usize>> {
        Ok(self.find_logical(kind, w_max, budget)?.map(|p| p.weight()))
    }
}

fn advance_odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn advance_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, x: &[i64], z: &[i64]) -> GenPauli {
        GenPauli::new(n, 0, x, z).unwrap()
    }

    fn phase_flip(n: u32) -> StabilizerCode {
        let m = n as i64 - 1;
        StabilizerCode::new(
            n,
            3,
            vec![p(n, &[1, m, 0], &[0, 0, 0]), p(n, &[0, 1, m], &[0, 0, 0])],
            vec![p(n, &[1, 0, 0], &[0, 0, 0])],
            vec![p(n, &[0, 0, 0], &[1, 1, 1])],
        )
        .unwrap()
    }

    #[test]
    fn phase_flip_code_is_valid() {
        let c = phase_flip(3);
        assert_eq!((c.n(), c.k()), (3, 1));
    }

    #[test]
    fn anticommuting_generators_rejected() {
        let err = StabilizerCode::new(3, 1, vec![p(3, &[1], &[0]), p(3, &[0], &[1])], vec![], vec![]).unwrap_err();
        assert!(matches!(err, Error::NonCommuting { exponent: 2, .. }));
    }

    #[test]
    fn duplicate_generator_rejected() {
        let g = p(3, &[1, 2], &[0, 0]);
        let err = StabilizerCode::new(3, 2, vec![g.clone(), g], vec![], vec![]).unwrap_err();
        assert!(matches!(err, Error::Dependent { rank: 1, count: 2 }));
    }

    #[test]
    fn wrong_pairing_rejected() {
        let err = StabilizerCode::new(3, 1, vec![], vec![p(3, &[1], &[0])], vec![p(3, &[0], &[2])]).unwrap_err();
        assert!(matches!(
            err,
            Error::BadPairing {
                exponent: 1,
                expected: 2,
                ..
            }
        ));
    }

    #[test]
    fn ranks() {
        let a = p(5, &[1, 2], &[3, 0]);
        assert_eq!(symplectic_rank(&[a.clone(), a.pow(2)]), 1);
        assert_eq!(symplectic_rank(&[]), 0);
    }

    #[test]
    fn table_syndromes() {
        let c = phase_flip(3);
        assert_eq!(c.syndrome(&p(3, &[0, 0, 0], &[1, 0, 0])).unwrap(), vec![2, 0]);
        assert_eq!(c.syndrome(&p(3, &[0, 0, 0], &[0, 0, 2])).unwrap(), vec![0, 2]);
        assert_eq!(c.syndrome(&GenPauli::identity(3, 3).unwrap()).unwrap(), vec![0, 0]);
    }

    #[test]
    fn normalizer_membership() {
        let c = phase_flip(3);
        assert!(c.in_normalizer(&c.logical_z()[0]).unwrap());
        assert!(!c.in_normalizer(&p(3, &[0, 0, 0], &[1, 0, 0])).unwrap());
        for g in c.generators() {
            assert!(c.in_normalizer(g).unwrap());
            assert!(c.decompose_normalizer(g).unwrap().is_stabilizer());
        }
    }

    #[test]
    fn decomposition_round_trip_with_phase() {
        let c = phase_flip(5);
        let target = c.generators()[0]
            .pow(3)
            .mul(&c.logical_z()[0].pow(2))
            .unwrap()
            .mul(&c.logical_x()[0])
            .unwrap()
            .mul(&c.generators()[1])
            .unwrap()
            .with_phase(4);
        let d = c.decompose_normalizer(&target).unwrap();
        assert_eq!(c.recompose(&d).unwrap(), target);
        assert_eq!((d.lx_exps[0], d.lz_exps[0]), (1, 2));
    }

    #[test]
    fn detectable_error_not_decomposable() {
        let c = phase_flip(3);
        let err = c.decompose_normalizer(&p(3, &[0, 0, 0], &[0, 1, 0])).unwrap_err();
        assert!(matches!(err, Error::Detectable { .. }));
    }

    #[test]
    fn phase_flip_distances() {
        let c = phase_flip(3);
        assert_eq!(c.distance(PauliKind::Z, 3, DEFAULT_DISTANCE_BUDGET).unwrap(), Some(3));
        assert_eq!(c.distance(PauliKind::X, 3, DEFAULT_DISTANCE_BUDGET).unwrap(), Some(1));
        assert_eq!(c.distance(PauliKind::Z, 2, DEFAULT_DISTANCE_BUDGET).unwrap(), None);
        assert_eq!(
            c.distance(PauliKind::Full, 3, DEFAULT_DISTANCE_BUDGET).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn budget_enforced() {
        let c = phase_flip(3);
        assert!(matches!(
            c.distance(PauliKind::Full, 3, 10),
            Err(Error::EnumerationLimit { .. })
        ));
    }

    #[test]
    fn combination_enumeration_is_complete() {
        let mut c = vec![0, 1];
        let mut count = 1;
        while advance_combination(&mut c, 5) {
            count += 1;
        }
        assert_eq!(count, binomial(5, 2));
    }
}
