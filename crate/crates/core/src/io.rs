//! Code files and the flat binary matrix format.
//!
//! Matrix files hold a little-endian `u64` dimension `d` followed by `d²`
//! complex entries in row-major order, each stored as two little-endian
//! `f64` values (real part, then imaginary part). There is no other header
//! and no padding; a file is exactly `8 + 16·d²` bytes.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dense::{DenseOperator, Operator, C64, MAX_DENSE_DIM};
use crate::error::{Error, Result};
use crate::gauss_code::{GaussCode, LatticeSpec};
use crate::stabilizer::StabilizerCode;

/// Stabilizer code as stored on disk. `lattice` is present for Gauss codes
/// and lets the Hamiltonian builders recover the geometry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeFile {
    #[serde(flatten)]
    pub code: StabilizerCode,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSpec>,
}

impl CodeFile {
    pub fn from_gauss(g: &GaussCode) -> Self {
        CodeFile {
            code: g.code().clone(),
            k: Some(g.code().k()),
            lattice: Some(g.lattice().clone()),
        }
    }

    pub fn from_code(code: &StabilizerCode) -> Self {
        CodeFile {
            code: code.clone(),
            k: Some(code.k()),
            lattice: None,
        }
    }

    /// Rebuilds the Gauss code from the stored lattice and checks it matches.
    pub fn gauss(&self) -> Result<GaussCode> {
        let lattice = self
            .lattice
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("code file has no \"lattice\" field".into()))?;
        let g = crate::gauss_code::build_code(lattice)?;
        if g.code() != &self.code {
            return Err(Error::InvalidArgument("stored code does not match its lattice".into()));
        }
        Ok(g)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn check_capacity(dim: usize) -> Result<()> {
    if dim > MAX_DENSE_DIM {
        return Err(Error::Capacity {
            dim: dim as u128,
            limit: MAX_DENSE_DIM,
        });
    }
    Ok(())
}

/// Serializes `op` in the flat binary layout.
pub fn write_matrix(w: &mut impl Write, op: &dyn Operator) -> Result<()> {
    let dim = op.dim();
    check_capacity(dim)?;
    let mut rows: Vec<Vec<(usize, C64)>> = vec![Vec::new(); dim];
    for c in 0..dim {
        for (r, v) in op.column(c) {
            rows[r].push((c, v));
        }
    }
    w.write_all(&(dim as u64).to_le_bytes())?;
    let mut line = vec![C64::new(0.0, 0.0); dim];
    for row in rows {
        line.iter_mut().for_each(|v| *v = C64::new(0.0, 0.0));
        for (c, v) in row {
            line[c] += v;
        }
        for v in &line {
            w.write_all(&v.re.to_le_bytes())?;
            w.write_all(&v.im.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn read_matrix(r: &mut impl Read) -> Result<DenseOperator> {
    let mut word = [0u8; 8];
    r.read_exact(&mut word)?;
    let dim = u64::from_le_bytes(word);
    let dim = usize::try_from(dim).unwrap_or(usize::MAX);
    check_capacity(dim)?;
    let mut m = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            r.read_exact(&mut word)?;
            let re = f64::from_le_bytes(word);
            r.read_exact(&mut word)?;
            let im = f64::from_le_bytes(word);
            m[(i, j)] = C64::new(re, im);
        }
    }
    Ok(m)
}

pub fn write_matrix_file(path: &Path, op: &dyn Operator) -> Result<()> {
    check_capacity(op.dim())?;
    let mut w = BufWriter::new(File::create(path)?);
    write_matrix(&mut w, op)?;
    w.flush()?;
    Ok(())
}

pub fn read_matrix_file(path: &Path) -> Result<DenseOperator> {
    let mut r = BufReader::new(File::open(path)?);
    let m = read_matrix(&mut r)?;
    if r.read(&mut [0u8; 1])? != 0 {
        return Err(Error::Dimension(format!(
            "{}: trailing bytes after {}x{} matrix",
            path.display(),
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss_code::build_code;

    #[test]
    fn matrix_layout_is_exact() {
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 1)] = C64::new(1.5, -2.0);
        m[(1, 0)] = C64::new(0.25, 0.0);
        let mut buf = Vec::new();
        write_matrix(&mut buf, &m).unwrap();
        assert_eq!(buf.len(), 8 + 16 * 4);
        assert_eq!(&buf[..8], &2u64.to_le_bytes());
        assert_eq!(&buf[8 + 16..8 + 24], &1.5f64.to_le_bytes());
        assert_eq!(&buf[8 + 24..8 + 32], &(-2.0f64).to_le_bytes());
        assert_eq!(&buf[8 + 32..8 + 40], &0.25f64.to_le_bytes());
        assert_eq!(read_matrix(&mut buf.as_slice()).unwrap(), m);
    }

    #[test]
    fn truncated_file_errors() {
        let buf = 3u64.to_le_bytes();
        assert!(read_matrix(&mut buf.as_slice()).is_err());
    }

    #[test]
    fn trailing_bytes_are_rejected() {
        let path = std::env::temp_dir().join(format!("qudit_lgt_trailing_{}.bin", std::process::id()));
        let mut buf = Vec::new();
        write_matrix(&mut buf, &DMatrix::<C64>::identity(1, 1)).unwrap();
        buf.push(0);
        std::fs::write(&path, &buf).unwrap();
        let r = read_matrix_file(&path);
        std::fs::remove_file(&path).unwrap();
        assert!(matches!(r, Err(Error::Dimension(_))));
    }

    #[test]
    fn code_file_round_trip() {
        let g = build_code(&LatticeSpec::chain(2, 3).unwrap()).unwrap();
        let f = CodeFile::from_gauss(&g);
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.starts_with(r#"{"N":3,"n":4,"#));
        assert!(s.contains(r#""k":2"#));
        let back: CodeFile = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.gauss().unwrap().code(), g.code());
        let bare = CodeFile::from_code(g.code());
        let s = serde_json::to_string(&bare).unwrap();
        assert!(!s.contains("lattice"));
        let back: CodeFile = serde_json::from_str(&s).unwrap();
        assert!(back.gauss().is_err());
    }
}
