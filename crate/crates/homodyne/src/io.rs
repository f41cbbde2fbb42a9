//! Quadrature stream persistence: a `t,x1,x2` CSV for interchange and a
//! compact little-endian binary container for large captures.

use std::io::{Read, Write};

use crate::error::{HomodyneError, Result};
use crate::stream::{QuadratureStream, Record};

const MAGIC: &[u8; 4] = b"HQDS";
const VERSION: u32 = 1;

/// Writes `t,x1,x2` CSV with a header row.
pub fn write_stream_csv(w: &mut impl Write, stream: &QuadratureStream) -> Result<()> {
    writeln!(w, "t,x1,x2")?;
    for r in &stream.records {
        writeln!(w, "{},{},{}", r.t, r.x1, r.x2)?;
    }
    Ok(())
}

/// Reads `t,x1,x2` CSV; a leading header row is optional. The stream is
/// tagged with the given `lo_scale`.
pub fn read_stream_csv(r: &mut impl Read, lo_scale: f64) -> Result<QuadratureStream> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    let mut records = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if lineno == 0 && line.starts_with('t') {
            continue;
        }
        let mut fields = line.split(',');
        let mut next = |name: &str| -> Result<f64> {
            fields
                .next()
                .ok_or_else(|| {
                    HomodyneError::Format(format!("line {}: missing {name}", lineno + 1))
                })?
                .trim()
                .parse()
                .map_err(|e| {
                    HomodyneError::Format(format!("line {}: bad {name}: {e}", lineno + 1))
                })
        };
        let t = next("t")?;
        let x1 = next("x1")?;
        let x2 = next("x2")?;
        records.push(Record { t, x1, x2 });
    }
    QuadratureStream::new(records, lo_scale)
}

/// Writes the binary container: magic, version, `lo_scale`, record count,
/// then `(t, x1, x2)` as packed little-endian f64 triples.
pub fn write_stream_binary(w: &mut impl Write, stream: &QuadratureStream) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&stream.lo_scale.to_le_bytes())?;
    w.write_all(&(stream.records.len() as u64).to_le_bytes())?;
    for r in &stream.records {
        w.write_all(&r.t.to_le_bytes())?;
        w.write_all(&r.x1.to_le_bytes())?;
        w.write_all(&r.x2.to_le_bytes())?;
    }
    Ok(())
}

fn read_f64(r: &mut impl Read) -> Result<f64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(f64::from_le_bytes(buf))
}

pub fn read_stream_binary(r: &mut impl Read) -> Result<QuadratureStream> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(HomodyneError::Format("bad magic, not a quadrature stream".into()));
    }
    let mut vbuf = [0u8; 4];
    r.read_exact(&mut vbuf)?;
    let version = u32::from_le_bytes(vbuf);
    if version != VERSION {
        return Err(HomodyneError::Format(format!("unsupported version {version}")));
    }
    let lo_scale = read_f64(r)?;
    let mut nbuf = [0u8; 8];
    r.read_exact(&mut nbuf)?;
    let n = u64::from_le_bytes(nbuf) as usize;
    let mut records = Vec::with_capacity(n);
    for _ in 0..n {
        let t = read_f64(r)?;
        let x1 = read_f64(r)?;
        let x2 = read_f64(r)?;
        records.push(Record { t, x1, x2 });
    }
    QuadratureStream::new(records, lo_scale)
}
