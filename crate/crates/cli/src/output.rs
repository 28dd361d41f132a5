//! Snapshot data files.
//!
//! `table`: a header `# x [y] comp...` and one row per interior cell, `y`
//! outer and `x` inner, values with 17 significant digits. In 2D a blank
//! line separates consecutive `y` rows, as gnuplot expects for grid data.
//!
//! `binary`: the magic bytes `HWIO1`, then `nx`, `ny` and the component count
//! as little-endian `u64`, then each component's `nx * ny` values as
//! little-endian `f64` in the same order as the table rows.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use hweno_bench::Snapshot;

use crate::config::OutputFormat;
use crate::CliError;

pub const MAGIC: &[u8; 5] = b"HWIO1";

pub fn write_snapshot(snapshot: &Snapshot, path: &Path, format: OutputFormat) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    match format {
        OutputFormat::Table => write_table(snapshot, &mut w),
        OutputFormat::Binary => write_binary(snapshot, &mut w),
    }
    .and_then(|_| w.flush())
    .map_err(|e| CliError::io(path, e))
}

fn write_table(s: &Snapshot, w: &mut impl Write) -> io::Result<()> {
    write!(w, "# x")?;
    if s.is_2d() {
        write!(w, " y")?;
    }
    for c in &s.components {
        write!(w, " {c}")?;
    }
    writeln!(w)?;
    for j in 0..s.ny {
        if j > 0 {
            writeln!(w)?;
        }
        for i in 0..s.nx {
            let (x, y) = s.center(i, j);
            write!(w, "{x:.16e}")?;
            if s.is_2d() {
                write!(w, " {y:.16e}")?;
            }
            for c in 0..s.components.len() {
                write!(w, " {:.16e}", s.value(c, i, j))?;
            }
            writeln!(w)?;
        }
    }
    Ok(())
}

fn write_binary(s: &Snapshot, w: &mut impl Write) -> io::Result<()> {
    w.write_all(MAGIC)?;
    for n in [s.nx, s.ny, s.components.len()] {
        w.write_all(&(n as u64).to_le_bytes())?;
    }
    for values in &s.values {
        for v in values {
            w.write_all(&v.to_le_bytes())?;
        }
    }
    Ok(())
}

/// Contents of a binary snapshot file.
#[derive(Debug, Clone, PartialEq)]
pub struct BinarySnapshot {
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<Vec<f64>>,
}

pub fn read_snapshot_binary(path: &Path) -> Result<BinarySnapshot, CliError> {
    let mut bytes = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| CliError::io(path, e))?;
    let bad = |what: &str| CliError::io(path, io::Error::new(io::ErrorKind::InvalidData, what.to_string()));
    if bytes.len() < MAGIC.len() + 24 || &bytes[..MAGIC.len()] != MAGIC {
        return Err(bad("not a snapshot file"));
    }
    let mut chunks = bytes[MAGIC.len()..].chunks_exact(8).map(|c| {
        let mut b = [0u8; 8];
        b.copy_from_slice(c);
        b
    });
    let mut dim = || chunks.next().map(|b| u64::from_le_bytes(b) as usize);
    let (nx, ny, count) = match (dim(), dim(), dim()) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => return Err(bad("truncated header")),
    };
    let cells = nx.checked_mul(ny).ok_or_else(|| bad("dimensions overflow"))?;
    if bytes.len() != MAGIC.len() + 24 + 8 * cells * count {
        return Err(bad("data length does not match the header"));
    }
    let data: Vec<f64> = chunks.map(f64::from_le_bytes).collect();
    let values = data.chunks(cells.max(1)).take(count).map(<[f64]>::to_vec).collect();
    Ok(BinarySnapshot { nx, ny, values })
}
