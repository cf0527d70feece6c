//! Arithmetic over Z_N and the generalized Pauli group.
//!
//! `N` is always prime. Pauli monomials additionally require `N` odd so that
//! every phase stays a power of `ω = exp(2πi/N)`.

mod linalg;
mod pauli;

pub use linalg::{rank_mod, solve_mod};
pub use pauli::GenPauli;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Deterministic trial division.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn ensure_prime(n: u32) -> Result<()> {
    if is_prime(n) {
        Ok(())
    } else {
        Err(Error::CompositeModulus(n))
    }
}

/// Level counts usable for Pauli monomials: odd primes.
pub fn ensure_levels(n: u32) -> Result<()> {
    ensure_prime(n)?;
    if n == 2 {
        return Err(Error::UnsupportedLevels(n));
    }
    Ok(())
}

/// Representative of `a` in `[0, n)`.
#[inline]
pub fn reduce(a: i64, n: u32) -> u32 {
    a.rem_euclid(n as i64) as u32
}

pub fn mod_inverse(a: i64, n: u32) -> Result<u32> {
    ensure_prime(n)?;
    let a = reduce(a, n);
    if a == 0 {
        return Err(Error::NoInverse { a: a as i64, n });
    }
    Ok(mod_pow(a, n - 2, n))
}

pub fn mod_pow(base: u32, mut exp: u32, n: u32) -> u32 {
    let m = n as u64;
    let mut b = base as u64 % m;
    let mut acc = 1u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u32
}

/// `ω^k` with `ω = exp(2πi/n)`; `k` is reduced first so equal classes give equal bits.
pub fn omega(n: u32, k: i64) -> Complex64 {
    let k = reduce(k, n);
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
}
