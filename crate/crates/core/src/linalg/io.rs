//! CSV formats: sparse matrices (`row,col,re,im`, zero-based, missing entries are 0)
//! and eigenvalue lists (`re,im`).

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;

#[derive(Debug, Serialize, Deserialize)]
struct MatrixEntry {
    row: usize,
    col: usize,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct ComplexRow {
    re: f64,
    im: f64,
}

pub(crate) fn parse_error(path: &Path, err: &csv::Error) -> Error {
    let line = err.position().map(|p| p.line()).unwrap_or(0);
    let message = match err.kind() {
        csv::ErrorKind::Deserialize { err, .. } => err.to_string(),
        _ => err.to_string(),
    };
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    }
}

pub(crate) fn check_header(path: &Path, headers: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    let got: Vec<&str> = headers.iter().map(str::trim).collect();
    if got != expected {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 1,
            message: format!("expected header `{}`, found `{}`", expected.join(","), got.join(",")),
        });
    }
    Ok(())
}

/// Reads a matrix; the dimension is one past the largest index present.
pub fn read_matrix_csv(path: &Path) -> Result<ComplexMatrix> {
    let file = std::fs::File::open(path)?;
    read_matrix_from(file, path)
}

pub fn read_matrix_from<R: Read>(reader: R, path: &Path) -> Result<ComplexMatrix> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| parse_error(path, &e))?.clone();
    check_header(path, &headers, &["row", "col", "re", "im"])?;

    let mut entries: HashMap<(usize, usize), Complex64> = HashMap::new();
    let mut n = 0usize;
    for rec in rdr.deserialize::<MatrixEntry>() {
        let entry = rec.map_err(|e| parse_error(path, &e))?;
        let line = entries.len() as u64 + 2;
        let z = Complex64::new(entry.re, entry.im);
        if !z.is_finite() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line,
                message: "non-finite value".into(),
            });
        }
        if entries.insert((entry.row, entry.col), z).is_some() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line,
                message: format!("duplicate entry ({}, {})", entry.row, entry.col),
            });
        }
        n = n.max(entry.row + 1).max(entry.col + 1);
    }
    if n == 0 {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 1,
            message: "no entries".into(),
        });
    }
    let mut m = Mat::<Complex64>::zeros(n, n);
    for ((i, j), z) in entries {
        m[(i, j)] = z;
    }
    ComplexMatrix::from_mat(m)
}

/// Writes the nonzero entries, plus the last diagonal entry so the dimension survives a round trip.
pub fn write_matrix_csv(path: &Path, x: &ComplexMatrix) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_matrix_to(std::io::BufWriter::new(file), x)
}

pub fn write_matrix_to<W: Write>(writer: W, x: &ComplexMatrix) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    let n = x.n();
    for i in 0..n {
        for j in 0..n {
            let z = x[(i, j)];
            if z != Complex64::new(0.0, 0.0) || (i == n - 1 && j == n - 1) {
                wtr.serialize(MatrixEntry { row: i, col: j, re: z.re, im: z.im })
                    .map_err(std::io::Error::from)?;
            }
        }
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_complex_csv(path: &Path, values: &[Complex64]) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_complex_to(std::io::BufWriter::new(file), values)
}

pub fn write_complex_to<W: Write>(writer: W, values: &[Complex64]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    if values.is_empty() {
        wtr.write_record(["re", "im"]).map_err(std::io::Error::from)?;
    }
    for z in values {
        wtr.serialize(ComplexRow { re: z.re, im: z.im }).map_err(std::io::Error::from)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_complex_csv(path: &Path) -> Result<Vec<Complex64>> {
    let file = std::fs::File::open(path)?;
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let headers = rdr.headers().map_err(|e| parse_error(path, &e))?.clone();
    check_header(path, &headers, &["re", "im"])?;
    rdr.deserialize::<ComplexRow>()
        .map(|r| {
            r.map(|row| Complex64::new(row.re, row.im))
                .map_err(|e| parse_error(path, &e))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn read_str(s: &str) -> Result<ComplexMatrix> {
        read_matrix_from(s.as_bytes(), Path::new("m.csv"))
    }

    #[test]
    fn missing_entries_are_zero() {
        let m = read_str("row,col,re,im\n0,1,2.5,-1\n2,0,0,3\n").unwrap();
        assert_eq!(m.n(), 3);
        assert_eq!(m[(0, 1)], c(2.5, -1.0));
        assert_eq!(m[(2, 0)], c(0.0, 3.0));
        assert_eq!(m[(1, 1)], c(0.0, 0.0));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match read_str("row,col,re,im\n0,0,1,0\n1,x,2,0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(read_str("r,c,re,im\n0,0,1,0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_str("row,col,re,im\n0,0,1,0\n0,0,2,0\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(read_str("row,col,re,im\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn matrix_round_trip_keeps_dimension_and_bits() {
        let x = ComplexMatrix::from_fn(4, |i, j| if i == 0 { c(0.1 * j as f64, 1.0 / 3.0) } else { c(0.0, 0.0) })
            .unwrap();
        let mut buf = Vec::new();
        write_matrix_to(&mut buf, &x).unwrap();
        let back = read_matrix_from(buf.as_slice(), Path::new("m.csv")).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn complex_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("e.csv");
        let v = vec![c(1.0 / 7.0, -2.0), c(1e-300, 5e300)];
        write_complex_csv(&path, &v).unwrap();
        assert_eq!(read_complex_csv(&path).unwrap(), v);
    }
}
