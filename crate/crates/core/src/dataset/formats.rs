//! Binary field files and profile CSVs.
//!
//! Both binary formats start with a 4-byte magic, then little-endian
//! `u32 n_x, u32 n_y, f64 length, f64 time`, then the row-major payload:
//! interleaved `(re, im)` f64 pairs for complex fields (`QF2\0`) or one f64
//! per point for modulus frames (`QM2\0`).

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::csvio::{read_table, write_text};
use crate::error::{Error, Result};
use crate::qsolve::{ComplexField2D, Grid, RealField, ScreenProfile};

pub const QF2_MAGIC: [u8; 4] = *b"QF2\0";
pub const QM2_MAGIC: [u8; 4] = *b"QM2\0";
const HEADER_LEN: usize = 4 + 4 + 4 + 8 + 8;

fn header(magic: [u8; 4], grid: &Grid, time: f64, payload_len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + payload_len);
    out.extend_from_slice(&magic);
    out.extend_from_slice(&(grid.n_x() as u32).to_le_bytes());
    out.extend_from_slice(&(grid.n_y() as u32).to_le_bytes());
    out.extend_from_slice(&grid.length().to_le_bytes());
    out.extend_from_slice(&time.to_le_bytes());
    out
}

pub fn encode_qf2(field: &ComplexField2D, time: f64) -> Vec<u8> {
    let mut out = header(QF2_MAGIC, field.grid(), time, field.values().len() * 16);
    for v in field.values() {
        out.extend_from_slice(&v.re.to_le_bytes());
        out.extend_from_slice(&v.im.to_le_bytes());
    }
    out
}

pub fn encode_qm2(frame: &RealField, time: f64) -> Vec<u8> {
    let mut out = header(QM2_MAGIC, frame.grid(), time, frame.values().len() * 8);
    for v in frame.values() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

fn f64_at(bytes: &[u8], at: usize) -> f64 {
    f64::from_le_bytes(bytes[at..at + 8].try_into().unwrap())
}

/// Parses the header and checks the payload holds exactly `per_point` f64s
/// per grid point.
fn decode_header(bytes: &[u8], magic: [u8; 4], per_point: usize) -> Result<(Grid, f64)> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Format(format!("file too short for a header ({} bytes)", bytes.len())));
    }
    if bytes[..4] != magic {
        return Err(Error::Format(format!(
            "bad magic {:?}, expected {:?}",
            String::from_utf8_lossy(&bytes[..3]),
            String::from_utf8_lossy(&magic[..3])
        )));
    }
    let n_x = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let n_y = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    let length = f64_at(bytes, 12);
    let time = f64_at(bytes, 20);
    let expected = n_x
        .checked_mul(n_y)
        .and_then(|n| n.checked_mul(8 * per_point))
        .ok_or_else(|| Error::Format("header dimensions overflow".into()))?;
    let payload = bytes.len() - HEADER_LEN;
    if payload != expected {
        return Err(Error::Format(format!(
            "payload is {payload} bytes but a {n_x}x{n_y} grid needs {expected}"
        )));
    }
    let grid = Grid::new(n_x, n_y, length).map_err(|e| Error::Format(e.to_string()))?;
    Ok((grid, time))
}

pub fn decode_qf2(bytes: &[u8]) -> Result<(ComplexField2D, f64)> {
    let (grid, time) = decode_header(bytes, QF2_MAGIC, 2)?;
    let values = bytes[HEADER_LEN..]
        .chunks_exact(16)
        .map(|c| Complex64::new(f64_at(c, 0), f64_at(c, 8)))
        .collect();
    Ok((ComplexField2D::from_values(grid, values)?, time))
}

pub fn decode_qm2(bytes: &[u8]) -> Result<(RealField, f64)> {
    let (grid, time) = decode_header(bytes, QM2_MAGIC, 1)?;
    let values = bytes[HEADER_LEN..].chunks_exact(8).map(|c| f64_at(c, 0)).collect();
    Ok((RealField::from_values(grid, values)?, time))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::io(path, e))
}

fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Format(m) => Error::Format(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn write_qf2(path: &Path, field: &ComplexField2D, time: f64) -> Result<()> {
    write_bytes(path, &encode_qf2(field, time))
}

pub fn read_qf2(path: &Path) -> Result<(ComplexField2D, f64)> {
    in_file(path, decode_qf2(&read_bytes(path)?))
}

pub fn write_qm2(path: &Path, frame: &RealField, time: f64) -> Result<()> {
    write_bytes(path, &encode_qm2(frame, time))
}

pub fn read_qm2(path: &Path) -> Result<(RealField, f64)> {
    in_file(path, decode_qm2(&read_bytes(path)?))
}

/// Modulus frame from either format (complex fields are reduced to `|psi|`).
pub fn read_any_modulus(path: &Path) -> Result<(RealField, f64)> {
    let bytes = read_bytes(path)?;
    if bytes.starts_with(&QF2_MAGIC) {
        let (f, t) = in_file(path, decode_qf2(&bytes))?;
        Ok((f.modulus(), t))
    } else {
        in_file(path, decode_qm2(&bytes))
    }
}

/// `y,probability` CSV, preceded by `header` comment lines.
pub fn profile_csv(p: &ScreenProfile, header: &str) -> String {
    let mut s = String::from(header);
    s.push_str("y,probability\n");
    for (y, v) in p.y.iter().zip(&p.probability) {
        writeln!(s, "{y},{v}").unwrap();
    }
    s
}

pub fn write_profile(path: &Path, p: &ScreenProfile, header: &str) -> Result<()> {
    write_text(path, &profile_csv(p, header))
}

/// Reads a profile CSV; the screen position is not stored and is NaN.
pub fn read_profile(path: &Path) -> Result<ScreenProfile> {
    let t = read_table(path)?;
    Ok(ScreenProfile { x: f64::NAN, y: t.column("y", path)?, probability: t.column("probability", path)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> ComplexField2D {
        let g = Grid::new(9, 12, 2.0).unwrap();
        ComplexField2D::from_fn(g, |x, y| Complex64::new(x * y, x - 3.0 * y))
    }

    #[test]
    fn qf2_round_trip_and_layout() {
        let f = field();
        let bytes = encode_qf2(&f, 0.25);
        assert_eq!(&bytes[..4], b"QF2\0");
        assert_eq!(bytes.len(), HEADER_LEN + 9 * 12 * 16);
        let (g, t) = decode_qf2(&bytes).unwrap();
        assert_eq!((g, t), (f.clone(), 0.25));
        // Row-major: second value is (ix = 0, iy = 1).
        let im = f64_at(&bytes, HEADER_LEN + 16 + 8);
        assert_eq!(im, f.get(0, 1).im);
    }

    #[test]
    fn qm2_round_trip() {
        let m = field().modulus();
        let (back, t) = decode_qm2(&encode_qm2(&m, 1.5)).unwrap();
        assert_eq!((back, t), (m, 1.5));
    }

    #[test]
    fn truncated_and_wrong_magic_rejected() {
        let mut bytes = encode_qm2(&field().modulus(), 0.0);
        assert!(decode_qf2(&bytes).is_err());
        bytes.pop();
        assert!(matches!(decode_qm2(&bytes), Err(Error::Format(_))));
        assert!(decode_qm2(&bytes[..10]).is_err());
    }

    #[test]
    fn profile_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = ScreenProfile { x: 0.9, y: vec![0.0, 0.5, 1.0], probability: vec![0.25, 0.5, 0.25] };
        let path = dir.path().join("p.csv");
        write_profile(&path, &p, "# k = 60\n").unwrap();
        let back = read_profile(&path).unwrap();
        assert_eq!((back.y, back.probability), (p.y, p.probability));
    }
}
