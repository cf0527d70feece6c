//! Single- and two-qudit gates. Two-qudit gates act on `|control⟩ ⊗ |target⟩`.

use nalgebra::DMatrix;

use crate::dense::{diag, DenseOperator, C64};
use crate::error::{Error, Result};
use crate::zn_algebra::{ensure_levels, ensure_prime, mod_inverse, omega, reduce};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateName {
    Qft,
    S,
    T,
    T3,
    Cz,
    Sum,
    CxTilde,
    K,
}

pub fn gate(name: GateName, levels: u32) -> Result<DenseOperator> {
    match name {
        GateName::Qft => qft(levels),
        GateName::S => s_gate(levels),
        GateName::T => t_gate(levels),
        GateName::T3 => {
            if levels != 3 {
                return Err(Error::InvalidArgument("the qutrit T gate needs N = 3".into()));
            }
            Ok(t3_gate())
        }
        GateName::Cz => cz(levels),
        GateName::Sum => sum(levels),
        GateName::CxTilde => cx_tilde(levels),
        GateName::K => k_gate(levels),
    }
}

fn permutation(dim: usize, image: impl Fn(usize) -> usize) -> DenseOperator {
    let mut m = DMatrix::zeros(dim, dim);
    for c in 0..dim {
        m[(image(c), c)] = C64::new(1.0, 0.0);
    }
    m
}

fn two_qudit_permutation(levels: u32, f: impl Fn(i64, i64) -> (i64, i64)) -> DenseOperator {
    let n = levels as usize;
    permutation(n * n, |c| {
        let (a, b) = f((c / n) as i64, (c % n) as i64);
        reduce(a, levels) as usize * n + reduce(b, levels) as usize
    })
}

/// `X|j⟩ = |j+1⟩`.
pub fn x_gate(levels: u32) -> Result<DenseOperator> {
    ensure_prime(levels)?;
    Ok(permutation(levels as usize, |j| (j + 1) % levels as usize))
}

/// `Z|j⟩ = ω^j|j⟩`.
pub fn z_gate(levels: u32) -> Result<DenseOperator> {
    ensure_prime(levels)?;
    Ok(diag(&(0..levels as i64).map(|j| omega(levels, j)).collect::<Vec<_>>()))
}

/// `(1/√N) Σ_{j,k} ω^{jk} |k⟩⟨j|`.
pub fn qft(levels: u32) -> Result<DenseOperator> {
    if levels < 2 {
        return Err(Error::InvalidArgument("QFT needs N >= 2".into()));
    }
    let s = (levels as f64).sqrt();
    Ok(DMatrix::from_fn(levels as usize, levels as usize, |k, j| {
        omega(levels, (j * k) as i64) / s
    }))
}

/// `diag(ω^{j(j+1)·2^{-1}})`.
pub fn s_gate(levels: u32) -> Result<DenseOperator> {
    ensure_levels(levels)?;
    let half = mod_inverse(2, levels)? as i64;
    Ok(diag(
        &(0..levels as i64)
            .map(|j| omega(levels, j * (j + 1) * half))
            .collect::<Vec<_>>(),
    ))
}

/// `diag(ω^{j³·6^{-1}})`, defined for primes `N ≥ 5`.
pub fn t_gate(levels: u32) -> Result<DenseOperator> {
    ensure_prime(levels)?;
    if levels < 5 {
        return Err(Error::InvalidArgument(format!("[6^-1] undefined mod {levels}")));
    }
    let sixth = mod_inverse(6, levels)? as i64;
    Ok(diag(
        &(0..levels as i64)
            .map(|j| omega(levels, j * j * j % levels as i64 * sixth))
            .collect::<Vec<_>>(),
    ))
}

/// `diag(ω_9, 1, ω_9^{-1})`.
pub fn t3_gate() -> DenseOperator {
    diag(&[omega(9, 1), omega(9, 0), omega(9, -1)])
}

/// `ω_9`-phase diagonal qutrit gate `diag(ω_9^a, ω_9^b, ω_9^c)`.
pub fn qutrit_diagonal(a: i64, b: i64, c: i64) -> DenseOperator {
    diag(&[omega(9, a), omega(9, b), omega(9, c)])
}

/// `Σ_j |j⟩⟨j| ⊗ Z^j`.
pub fn cz(levels: u32) -> Result<DenseOperator> {
    ensure_prime(levels)?;
    let n = levels as usize;
    Ok(diag(
        &(0..n * n)
            .map(|c| omega(levels, ((c / n) * (c % n)) as i64))
            .collect::<Vec<_>>(),
    ))
}

/// `|j, k⟩ ↦ |j, j + k⟩`.
pub fn sum(levels: u32) -> Result<DenseOperator> {
    ensure_prime(levels)?;
    Ok(two_qudit_permutation(levels, |j, k| (j, j + k)))
}

/// `|j, k⟩ ↦ |j, -k - j⟩`.
pub fn cx_tilde(levels: u32) -> Result<DenseOperator> {
    ensure_prime(levels)?;
    Ok(two_qudit_permutation(levels, |j, k| (j, -k - j)))
}

/// `|j⟩ ↦ |-j⟩`.
pub fn k_gate(levels: u32) -> Result<DenseOperator> {
    ensure_prime(levels)?;
    Ok(permutation(levels as usize, |j| {
        (levels as usize - j) % levels as usize
    }))
}

pub fn swap(levels: u32) -> Result<DenseOperator> {
    ensure_prime(levels)?;
    Ok(two_qudit_permutation(levels, |j, k| (k, j)))
}

/// Exchanges the two qudits of a two-qudit gate.
pub fn flip(u: &DenseOperator, levels: u32) -> Result<DenseOperator> {
    let sw = swap(levels)?;
    Ok(&sw * u * &sw)
}

/// SWAP as three `C̃X` gates with alternating control.
pub fn swap_from_cx_tilde(levels: u32) -> Result<DenseOperator> {
    let c12 = cx_tilde(levels)?;
    let c21 = flip(&c12, levels)?;
    Ok(&c12 * &c21 * &c12)
}

/// SWAP as `K_2 · SUM_{2→1} · SUM†_{1→2} · SUM_{2→1}`.
pub fn swap_from_sum(levels: u32) -> Result<DenseOperator> {
    let s12 = sum(levels)?;
    let s21 = flip(&s12, levels)?;
    let id = crate::dense::identity(levels as usize);
    let k2 = crate::dense::kron(&id, &k_gate(levels)?);
    Ok(k2 * &s21 * s12.adjoint() * &s21)
}
