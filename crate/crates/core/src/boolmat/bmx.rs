//! The `.bmx` sparse text format.
//!
//! ```text
//! m n nnz
//! i j        (nnz lines, 0-based, ascending row-major)
//! ```
//!
//! Repeated pairs are accepted; any pair that sorts before its predecessor
//! is rejected.

use std::io::{BufRead, Write};
use std::path::Path;

use super::BoolMatrix;
use crate::error::{Error, Result};

pub fn parse_bmx(text: &str) -> Result<BoolMatrix> {
    read_bmx(text.as_bytes())
}

pub fn read_bmx<R: BufRead>(reader: R) -> Result<BoolMatrix> {
    let mut lines = reader.lines().enumerate().filter_map(|(k, l)| match l {
        Ok(s) if s.trim().is_empty() => None,
        other => Some((k + 1, other)),
    });

    let (hline, header) = lines
        .next()
        .ok_or(Error::Parse { line: 1, msg: "empty input, expected header `m n nnz`".into() })?;
    let header = header?;
    let h = parse_fields::<3>(&header, hline)?;
    let (m, n, nnz) = (h[0], h[1], h[2]);
    if m == 0 || n == 0 {
        return Err(Error::Parse { line: hline, msg: format!("dimensions must be positive, got {m}x{n}") });
    }

    let mut coords = Vec::with_capacity(nnz);
    let mut prev: Option<(usize, usize)> = None;
    let mut last_line = hline;
    for (line, text) in lines.by_ref().take(nnz) {
        let text = text?;
        last_line = line;
        let f = parse_fields::<2>(&text, line)?;
        let (i, j) = (f[0], f[1]);
        if i >= m || j >= n {
            return Err(Error::Parse { line, msg: format!("entry ({i}, {j}) outside {m}x{n}") });
        }
        if let Some(p) = prev {
            if (i, j) < p {
                return Err(Error::Parse {
                    line,
                    msg: format!("entry ({i}, {j}) out of row-major order after ({}, {})", p.0, p.1),
                });
            }
        }
        prev = Some((i, j));
        coords.push((i, j));
    }
    if coords.len() != nnz {
        return Err(Error::Parse {
            line: last_line + 1,
            msg: format!("expected {nnz} entries, found {}", coords.len()),
        });
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse { line, msg: format!("trailing data after {nnz} entries") });
    }
    BoolMatrix::from_coords(m, n, &coords)
}

fn parse_fields<const K: usize>(text: &str, line: usize) -> Result<[usize; K]> {
    let mut out = [0usize; K];
    let mut it = text.split_whitespace();
    for slot in out.iter_mut() {
        let tok = it
            .next()
            .ok_or_else(|| Error::Parse { line, msg: format!("expected {K} integers, got `{text}`") })?;
        *slot = tok
            .parse()
            .map_err(|_| Error::Parse { line, msg: format!("`{tok}` is not a nonnegative integer") })?;
    }
    if it.next().is_some() {
        return Err(Error::Parse { line, msg: format!("expected {K} integers, got `{text}`") });
    }
    Ok(out)
}

pub fn write_bmx<W: Write>(m: &BoolMatrix, mut w: W) -> Result<()> {
    let coords = m.coords();
    writeln!(w, "{} {} {}", m.rows(), m.cols(), coords.len())?;
    for (i, j) in coords {
        writeln!(w, "{i} {j}")?;
    }
    Ok(())
}

impl BoolMatrix {
    pub fn to_bmx_string(&self) -> String {
        let mut buf = Vec::new();
        write_bmx(self, &mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii")
    }

    pub fn load_bmx(path: impl AsRef<Path>) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        read_bmx(std::io::BufReader::new(f))
    }

    pub fn save_bmx(&self, path: impl AsRef<Path>) -> Result<()> {
        let f = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(f);
        write_bmx(self, &mut w)?;
        w.flush()?;
        Ok(())
    }
}
