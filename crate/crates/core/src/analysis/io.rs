use std::fmt::Write as _;
use std::path::Path;

use super::graph::Centrality;
use super::histogram::ScreenHistogram;
use super::peaks::PeakList;
use super::similarity::Distribution1D;
use crate::csvio::read_table;
use crate::error::{Error, Result};

/// Points from an `x,y` CSV.
pub fn read_points(path: &Path) -> Result<Vec<(f64, f64)>> {
    let t = read_table(path)?;
    let x = t.column("x", path)?;
    let y = t.column("y", path)?;
    Ok(x.into_iter().zip(y).collect())
}

pub fn centrality_csv(points: &[(f64, f64)], c: &Centrality) -> String {
    let mut s = String::from("node,x,y,closeness,is_max\n");
    for (i, (p, v)) in points.iter().zip(&c.values).enumerate() {
        let is_max = c.argmax.binary_search(&i).is_ok();
        writeln!(s, "{i},{},{},{v},{is_max}", p.0, p.1).unwrap();
    }
    s
}

pub fn peaks_csv(peaks: &PeakList) -> String {
    let mut s = String::from("peak_center,height\n");
    for p in &peaks.peaks {
        writeln!(s, "{},{}", p.center, p.height).unwrap();
    }
    s
}

/// `bin_left,bin_right,count` rows, preceded by `header` (comment lines).
pub fn histogram_csv(h: &ScreenHistogram, header: &str) -> String {
    let mut s = String::from(header);
    s.push_str("bin_left,bin_right,count\n");
    for (k, c) in h.counts.iter().enumerate() {
        writeln!(s, "{},{},{c}", h.left_edge(k), h.right_edge(k)).unwrap();
    }
    s
}

pub fn read_histogram(path: &Path) -> Result<ScreenHistogram> {
    let t = read_table(path)?;
    let left = t.column("bin_left", path)?;
    let right = t.column("bin_right", path)?;
    let counts = t.column("count", path)?;
    let Some((&l0, &r0)) = left.first().zip(right.first()) else {
        return Err(Error::Format(format!("{}: histogram has no bins", path.display())));
    };
    let bin = r0 - l0;
    if !(bin > 0.0) {
        return Err(Error::Format(format!("{}: non-positive bin width", path.display())));
    }
    for (k, (&l, &r)) in left.iter().zip(&right).enumerate() {
        let expect = l0 + k as f64 * bin;
        if (l - expect).abs() > 1e-9 * bin.max(expect.abs()) || (r - l - bin).abs() > 1e-9 * bin {
            return Err(Error::Format(format!("{}: bins are not uniform at row {}", path.display(), k + 1)));
        }
    }
    let counts = counts
        .into_iter()
        .map(|c| {
            if c >= 0.0 && c.fract() == 0.0 {
                Ok(c as u64)
            } else {
                Err(Error::Format(format!("{}: count {c} is not a nonnegative integer", path.display())))
            }
        })
        .collect::<Result<_>>()?;
    Ok(ScreenHistogram { anchor: l0, bin_size: bin, first_index: 0, counts })
}

/// Reads a distribution from a `y,probability` profile, a histogram CSV, or
/// any two numeric columns (position, value).
pub fn read_distribution(path: &Path) -> Result<Distribution1D> {
    let t = read_table(path)?;
    if t.column_index("probability").is_some() {
        return Distribution1D::new(t.column("y", path)?, t.column("probability", path)?);
    }
    if t.column_index("count").is_some() {
        let h = read_histogram(path)?;
        return Distribution1D::new(h.centers(), h.values());
    }
    if t.header.len() != 2 {
        return Err(Error::Format(format!(
            "{}: expected `y,probability`, a histogram, or two columns",
            path.display()
        )));
    }
    let (a, b) = (t.header[0].clone(), t.header[1].clone());
    Distribution1D::new(t.column(&a, path)?, t.column(&b, path)?)
}
