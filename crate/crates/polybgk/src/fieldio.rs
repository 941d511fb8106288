//! Binary field dumps.
//!
//! Layout: one ASCII header line
//! `POLYBGK1 <x_count> <v_count> <i_count> <v_max> <i_max> <delta>\n`
//! followed by `x_count * i_count * v_count^3` little-endian `f64` values in
//! grid storage order (spatial cell, then internal node, then velocity node
//! with the first axis slowest). Reals in the header use the shortest
//! representation that round-trips.

use std::io::{self, BufRead, BufReader, Read, Write};

use polybgk_core::{Distribution, PhaseSpaceGrid};

pub const MAGIC: &str = "POLYBGK1";

#[derive(Debug, thiserror::Error)]
pub enum FieldError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("bad field header: {0}")]
    Header(String),
    #[error("field header {found} does not match the configured grid {expected}")]
    GridMismatch { expected: String, found: String },
    #[error(transparent)]
    Field(#[from] polybgk_core::Error),
}

pub fn header(grid: &PhaseSpaceGrid) -> String {
    let c = grid.config();
    format!("{MAGIC} {} {} {} {} {} {}", c.x_count, c.v_count, c.i_count, c.v_max, c.i_max, grid.delta())
}

pub fn write_field<W: Write>(mut w: W, grid: &PhaseSpaceGrid, f: &Distribution) -> Result<(), FieldError> {
    writeln!(w, "{}", header(grid))?;
    let mut bytes = Vec::with_capacity(8 * f.values().len());
    for v in f.values() {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&bytes)?;
    w.flush()?;
    Ok(())
}

/// Reads a dump and checks its header against `grid`. Spacing and the
/// spatial period are not part of the header and come from the grid.
pub fn read_field<R: Read>(r: R, grid: &PhaseSpaceGrid) -> Result<Distribution, FieldError> {
    let mut r = BufReader::new(r);
    let mut line = String::new();
    r.read_line(&mut line)?;
    let line = line.strip_suffix('\n').ok_or_else(|| FieldError::Header("missing header line".into()))?;
    let tokens: Vec<&str> = line.split(' ').collect();
    if tokens.len() != 7 || tokens[0] != MAGIC {
        return Err(FieldError::Header(format!("expected `{MAGIC} xcount vcount icount vmax imax delta`, found `{line}`")));
    }
    let count = |s: &str| s.parse::<usize>().map_err(|_| FieldError::Header(format!("bad count `{s}`")));
    let real = |s: &str| s.parse::<f64>().map_err(|_| FieldError::Header(format!("bad real `{s}`")));
    let (x, v, i) = (count(tokens[1])?, count(tokens[2])?, count(tokens[3])?);
    let (vmax, imax, delta) = (real(tokens[4])?, real(tokens[5])?, real(tokens[6])?);
    let c = grid.config();
    let same = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs();
    if x != c.x_count || v != c.v_count || i != c.i_count || !same(vmax, c.v_max) || !same(imax, c.i_max) || !same(delta, grid.delta()) {
        return Err(FieldError::GridMismatch { expected: header(grid), found: line.to_string() });
    }
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.len() != 8 * grid.len() {
        return Err(FieldError::Header(format!("expected {} values, found {} bytes", grid.len(), bytes.len())));
    }
    let values = bytes.chunks_exact(8).map(|b| f64::from_le_bytes(b.try_into().expect("chunk of 8"))).collect();
    Ok(Distribution::from_values(grid, values)?)
}
