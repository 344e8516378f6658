//! Plain-text matrix format.
//!
//! The first line is `rows,cols,complex_flag` with `complex_flag` equal to
//! `0` or `1`. Each following line holds one matrix row. Real matrices list
//! `cols` values; complex matrices list `2·cols` values as `re,im` pairs.
//! Numbers are written in Rust's shortest round-trip form, so a write
//! followed by a read reproduces the matrix bit for bit.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, C64};

/// Serializes `m`; the complex flag is set unless every entry is real.
pub fn write_matrix<W: Write>(m: &Matrix, mut out: W) -> std::io::Result<()> {
    let complex = !m.is_real();
    writeln!(out, "{},{},{}", m.rows(), m.cols(), u8::from(complex))?;
    let mut line = String::new();
    for i in 0..m.rows() {
        line.clear();
        for j in 0..m.cols() {
            if j > 0 {
                line.push(',');
            }
            let v = m[(i, j)];
            if complex {
                let _ = write!(line, "{},{}", v.re, v.im);
            } else {
                let _ = write!(line, "{}", v.re);
            }
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn read_matrix<R: BufRead>(input: R) -> Result<Matrix> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::invalid("matrix file is empty"))?
        .map_err(|e| Error::invalid(e.to_string()))?;
    let fields: Vec<&str> = header.trim().split(',').collect();
    if fields.len() != 3 {
        return Err(Error::invalid("matrix header must be rows,cols,complex_flag"));
    }
    let parse_count = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::invalid(format!("bad header field '{s}'")))
    };
    let rows = parse_count(fields[0])?;
    let cols = parse_count(fields[1])?;
    let complex = match fields[2].trim() {
        "0" => false,
        "1" => true,
        other => return Err(Error::invalid(format!("bad complex flag '{other}'"))),
    };
    let width = if complex { 2 * cols } else { cols };
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| Error::invalid(format!("missing row {i}")))?
            .map_err(|e| Error::invalid(e.to_string()))?;
        let values = line
            .trim()
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::invalid(format!("bad number '{s}' in row {i}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if values.len() != width {
            return Err(Error::invalid(format!(
                "row {i} has {} values, expected {width}",
                values.len()
            )));
        }
        if complex {
            data.extend(values.chunks(2).map(|p| C64::new(p[0], p[1])));
        } else {
            data.extend(values.into_iter().map(|v| C64::new(v, 0.0)));
        }
    }
    Matrix::from_row_major(rows, cols, &data)
}
