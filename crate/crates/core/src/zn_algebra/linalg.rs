//! Gaussian elimination over the prime field Z_p.

use super::{mod_inverse, reduce};

fn eliminate(m: &mut [Vec<u32>], cols: usize, p: u32) -> Vec<usize> {
    let pm = p as u64;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(sel) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, sel);
        let inv = mod_inverse(m[row][col] as i64, p).expect("nonzero pivot") as u64;
        for v in m[row].iter_mut() {
            *v = (*v as u64 * inv % pm) as u32;
        }
        for r in 0..m.len() {
            if r == row || m[r][col] == 0 {
                continue;
            }
            let f = m[r][col] as u64;
            for c in 0..m[r].len() {
                let sub = f * m[row][c] as u64 % pm;
                m[r][c] = ((m[r][c] as u64 + pm - sub) % pm) as u32;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank of the row vectors over Z_p.
pub fn rank_mod(rows: &[Vec<u32>], p: u32) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let cols = first.len();
    let mut m: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&v| v % p).collect()).collect();
    eliminate(&mut m, cols, p).len()
}

/// Coefficients `c` with `Σ_i c_i basis[i] = target` over Z_p, or `None` if the
/// system is inconsistent. Free coefficients are set to zero.
pub fn solve_mod(basis: &[Vec<u32>], target: &[u32], p: u32) -> Option<Vec<u32>> {
    let unknowns = basis.len();
    let len = target.len();
    let mut m: Vec<Vec<u32>> = (0..len)
        .map(|i| {
            let mut row: Vec<u32> = basis.iter().map(|b| b[i] % p).collect();
            row.push(target[i] % p);
            row
        })
        .collect();
    let pivots = eliminate(&mut m, unknowns + 1, p);
    if pivots.last() == Some(&unknowns) {
        return None;
    }
    let mut sol = vec![0u32; unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = reduce(m[r][unknowns] as i64, p);
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_scalar_multiples() {
        assert_eq!(rank_mod(&[vec![1, 2, 0], vec![2, 4, 0]], 5), 1);
        assert_eq!(rank_mod(&[], 5), 0);
        assert_eq!(rank_mod(&[vec![1, 0], vec![0, 1], vec![1, 1]], 3), 2);
    }

    #[test]
    fn solve_recovers_combination() {
        let basis = vec![vec![1, 0, 2, 1], vec![0, 1, 1, 1], vec![1, 1, 0, 0]];
        let p = 5;
        let coeffs = [3u32, 4, 2];
        let target: Vec<u32> = (0..4)
            .map(|i| (0..3).map(|j| coeffs[j] * basis[j][i]).sum::<u32>() % p)
            .collect();
        assert_eq!(solve_mod(&basis, &target, p).unwrap(), coeffs.to_vec());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let basis = vec![vec![1, 0, 0]];
        assert!(solve_mod(&basis, &[0, 1, 0], 3).is_none());
    }
}
