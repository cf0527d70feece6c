//! Weighted sums of Pauli monomials.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::dense::{merge_entries, space_dim, Operator, C64};
use crate::error::{Error, Result};
use crate::zn_algebra::{ensure_levels, omega, GenPauli};

/// Coefficients below this magnitude are dropped when merging.
pub const MERGE_THRESHOLD: f64 = 1e-14;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    #[default]
    Physical,
    Logical,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: C64,
    pub pauli: GenPauli,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TermListRepr", into = "TermListRepr")]
pub struct TermList {
    levels: u32,
    n_qudits: usize,
    basis: Basis,
    terms: Vec<Term>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    re: f64,
    im: f64,
    pauli: GenPauli,
}

fn is_physical(b: &Basis) -> bool {
    *b == Basis::Physical
}

#[derive(Serialize, Deserialize)]
struct TermListRepr {
    #[serde(rename = "N")]
    levels: u32,
    n_qudits: usize,
    #[serde(default, skip_serializing_if = "is_physical")]
    basis: Basis,
    terms: Vec<TermRepr>,
}

impl TryFrom<TermListRepr> for TermList {
    type Error = Error;

    fn try_from(r: TermListRepr) -> Result<Self> {
        let mut t = TermList::new(r.levels, r.n_qudits)?.with_basis(r.basis);
        for term in r.terms {
            t.push(C64::new(term.re, term.im), term.pauli)?;
        }
        Ok(t)
    }
}

impl From<TermList> for TermListRepr {
    fn from(t: TermList) -> Self {
        TermListRepr {
            levels: t.levels,
            n_qudits: t.n_qudits,
            basis: t.basis,
            terms: t
                .terms
                .into_iter()
                .map(|term| TermRepr {
                    re: term.coeff.re,
                    im: term.coeff.im,
                    pauli: term.pauli,
                })
                .collect(),
        }
    }
}

impl TermList {
    pub fn new(levels: u32, n_qudits: usize) -> Result<Self> {
        ensure_levels(levels)?;
        Ok(TermList {
            levels,
            n_qudits,
            basis: Basis::Physical,
            terms: Vec::new(),
        })
    }

    pub fn with_basis(mut self, basis: Basis) -> Self {
        self.basis = basis;
        self
    }

    /// `c · 1`.
    pub fn scalar(levels: u32, n_qudits: usize, c: C64) -> Result<Self> {
        let mut t = TermList::new(levels, n_qudits)?;
        t.push(c, GenPauli::identity(levels, n_qudits)?)?;
        Ok(t)
    }

    pub fn from_pauli(c: C64, p: GenPauli) -> Self {
        TermList {
            levels: p.levels(),
            n_qudits: p.qudits(),
            basis: Basis::Physical,
            terms: vec![Term { coeff: c, pauli: p }],
        }
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn n_qudits(&self) -> usize {
        self.n_qudits
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, coeff: C64, pauli: GenPauli) -> Result<()> {
        if pauli.levels() != self.levels || pauli.qudits() != self.n_qudits {
            return Err(Error::Dimension(format!(
                "term on N={} n={} in a list with N={} n={}",
                pauli.levels(),
                pauli.qudits(),
                self.levels,
                self.n_qudits
            )));
        }
        self.terms.push(Term { coeff, pauli });
        Ok(())
    }

    pub fn extend(&mut self, other: &TermList) -> Result<()> {
        for t in &other.terms {
            self.push(t.coeff, t.pauli.clone())?;
        }
        Ok(())
    }

    pub fn scaled(&self, c: C64) -> TermList {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff *= c;
        }
        out
    }

    /// Distributes `self · other` without merging.
    pub fn mul(&self, other: &TermList) -> Result<TermList> {
        let mut out = TermList::new(self.levels, self.n_qudits)?.with_basis(self.basis);
        for a in &self.terms {
            for b in &other.terms {
                out.push(a.coeff * b.coeff, a.pauli.mul(&b.pauli)?)?;
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> TermList {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff = t.coeff.conj();
            t.pauli = t.pauli.adjoint();
        }
        out
    }

    /// Folds every ω phase into its coefficient, merges equal monomials in
    /// order of first appearance, and drops coefficients below
    /// [`MERGE_THRESHOLD`].
    pub fn simplified(&self) -> TermList {
        let mut slots: HashMap<GenPauli, usize> = HashMap::new();
        let mut merged: Vec<Term> = Vec::new();
        for t in &self.terms {
            let key = t.pauli.unphased();
            let c = t.coeff * t.pauli.phase_factor();
            match slots.get(&key) {
                Some(&i) => merged[i].coeff += c,
                None => {
                    slots.insert(key.clone(), merged.len());
                    merged.push(Term { coeff: c, pauli: key });
                }
            }
        }
        merged.retain(|t| t.coeff.norm() >= MERGE_THRESHOLD);
        TermList {
            terms: merged,
            ..self.clone()
        }
    }

    /// `max |c|` over the merged form of `self - self†`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut diff = self.clone();
        diff.extend(&self.adjoint().scaled(C64::new(-1.0, 0.0)))
            .expect("same shape");
        let mut slots: HashMap<GenPauli, C64> = HashMap::new();
        for t in &diff.terms {
            *slots.entry(t.pauli.unphased()).or_default() += t.coeff * t.pauli.phase_factor();
        }
        slots.values().fold(0.0, |acc, c| acc.max(c.norm()))
    }
}

impl Operator for TermList {
    fn dim(&self) -> usize {
        space_dim(self.levels, self.n_qudits).expect("term list dimension within limits")
    }

    fn column(&self, col: usize) -> Vec<(usize, C64)> {
        let entries = self
            .terms
            .iter()
            .map(|t| {
                let (row, ph) = t.pauli.apply_basis(col);
                (row, t.coeff * omega(self.levels, ph as i64))
            })
            .collect();
        merge_entries(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::max_abs_diff;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn dense_matches_sum_of_monomials() {
        let mut t = TermList::new(3, 2).unwrap();
        let a = GenPauli::new(3, 1, &[1, 0], &[0, 2]).unwrap();
        let b = GenPauli::new(3, 0, &[2, 2], &[1, 0]).unwrap();
        t.push(c(0.5, 0.25), a.clone()).unwrap();
        t.push(c(-1.0, 0.0), b.clone()).unwrap();
        let expected = a.to_dense().unwrap() * c(0.5, 0.25) - b.to_dense().unwrap();
        assert!(max_abs_diff(&t.to_dense().unwrap(), &expected) < 1e-14);
    }

    #[test]
    fn product_distributes() {
        let x = TermList::from_pauli(c(2.0, 0.0), GenPauli::single(3, 1, 0, 1, 0).unwrap());
        let z = TermList::from_pauli(c(0.0, 1.0), GenPauli::single(3, 1, 0, 0, 1).unwrap());
        let xz = x.mul(&z).unwrap();
        let dense = x.to_dense().unwrap() * z.to_dense().unwrap();
        assert!(max_abs_diff(&xz.to_dense().unwrap(), &dense) < 1e-14);
    }

    #[test]
    fn simplify_merges_phases() {
        let mut t = TermList::new(3, 1).unwrap();
        let z = GenPauli::single(3, 1, 0, 0, 1).unwrap();
        t.push(c(1.0, 0.0), z.clone()).unwrap();
        t.push(c(1.0, 0.0), z.with_phase(1)).unwrap();
        t.push(c(1.0, 0.0), z.with_phase(2)).unwrap();
        assert!(t.simplified().is_empty());
        let dense = t.to_dense().unwrap();
        assert!(dense.iter().all(|v| v.norm() < 1e-15));
    }

    #[test]
    fn hermiticity() {
        let mut t = TermList::new(5, 1).unwrap();
        let z = GenPauli::single(5, 1, 0, 0, 1).unwrap();
        t.push(c(1.0, 0.0), z.clone()).unwrap();
        assert!(t.hermiticity_deviation() > 0.5);
        t.push(c(1.0, 0.0), z.adjoint()).unwrap();
        assert!(t.hermiticity_deviation() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let mut t = TermList::new(3, 1).unwrap().with_basis(Basis::Logical);
        t.push(c(0.5, -1.0), GenPauli::single(3, 1, 0, 1, 2).unwrap()).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(
            s,
            r#"{"N":3,"n_qudits":1,"basis":"logical","terms":[{"re":0.5,"im":-1.0,"pauli":{"N":3,"phase":0,"x":[1],"z":[2]}}]}"#
        );
        let back: TermList = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        let physical = TermList::new(3, 1).unwrap();
        assert!(!serde_json::to_string(&physical).unwrap().contains("basis"));
    }

    #[test]
    fn mismatched_term_rejected() {
        let mut t = TermList::new(3, 2).unwrap();
        assert!(t.push(c(1.0, 0.0), GenPauli::identity(3, 1).unwrap()).is_err());
    }
}
