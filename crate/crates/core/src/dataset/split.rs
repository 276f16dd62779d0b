use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsolve::{ComplexField2D, RealField};

/// Row-major 2D array: `data[r * cols + c]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Array2<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Clone> Array2<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows.checked_mul(cols) != Some(data.len()) {
            return Err(Error::LengthMismatch { left: rows.saturating_mul(cols), right: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    fn columns(&self, from: usize, to: usize) -> Self {
        let data = (0..self.rows)
            .flat_map(|r| self.data[r * self.cols + from..r * self.cols + to].iter().cloned())
            .collect();
        Self { rows: self.rows, cols: to - from, data }
    }
}

impl From<&RealField> for Array2<f64> {
    fn from(f: &RealField) -> Self {
        Self { rows: f.grid().n_x(), cols: f.grid().n_y(), data: f.values().to_vec() }
    }
}

impl From<&ComplexField2D> for Array2<num_complex::Complex64> {
    fn from(f: &ComplexField2D) -> Self {
        Self { rows: f.grid().n_x(), cols: f.grid().n_y(), data: f.values().to_vec() }
    }
}

/// Splits the columns (the `y` axis, across the slit midline) into a left
/// and a right half. With an odd count the centre column goes left.
pub fn split_left_right<T: Clone>(a: &Array2<T>) -> Result<(Array2<T>, Array2<T>)> {
    if a.cols < 2 {
        return Err(Error::invalid(format!("cannot split {} column(s)", a.cols)));
    }
    let mid = a.cols.div_ceil(2);
    Ok((a.columns(0, mid), a.columns(mid, a.cols)))
}

/// Inverse of [`split_left_right`].
pub fn join_left_right<T: Clone>(left: &Array2<T>, right: &Array2<T>) -> Result<Array2<T>> {
    if left.rows != right.rows {
        return Err(Error::LengthMismatch { left: left.rows, right: right.rows });
    }
    let cols = left.cols + right.cols;
    let mut data = Vec::with_capacity(left.rows * cols);
    for r in 0..left.rows {
        data.extend_from_slice(&left.data[r * left.cols..(r + 1) * left.cols]);
        data.extend_from_slice(&right.data[r * right.cols..(r + 1) * right.cols]);
    }
    Ok(Array2 { rows: left.rows, cols, data })
}

/// Named export resolutions. `Native` keeps the simulation grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ExportPreset {
    #[default]
    Native,
    /// Half-field inputs of 33 x 70.
    Input33x70,
    /// Half-field inputs of 45 x 79.
    Input45x79,
    /// 79-bin screen profiles.
    Profile79,
    /// 165-bin screen profiles.
    Profile165,
    /// 165 x 76 output frames.
    Output165x76,
}

impl ExportPreset {
    /// Target `(rows, cols)`; profiles have one row.
    pub fn shape(self) -> Option<(usize, usize)> {
        match self {
            ExportPreset::Native => None,
            ExportPreset::Input33x70 => Some((33, 70)),
            ExportPreset::Input45x79 => Some((45, 79)),
            ExportPreset::Profile79 => Some((1, 79)),
            ExportPreset::Profile165 => Some((1, 165)),
            ExportPreset::Output165x76 => Some((165, 76)),
        }
    }
}

impl std::str::FromStr for ExportPreset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "native" => ExportPreset::Native,
            "33x70" => ExportPreset::Input33x70,
            "45x79" => ExportPreset::Input45x79,
            "79" => ExportPreset::Profile79,
            "165" => ExportPreset::Profile165,
            "165x76" => ExportPreset::Output165x76,
            other => return Err(format!("unknown export preset `{other}`")),
        })
    }
}

fn linear_weights(n_in: usize, n_out: usize) -> Vec<(usize, usize, f64)> {
    (0..n_out)
        .map(|j| {
            let pos = if n_out == 1 { 0.5 * (n_in - 1) as f64 } else { j as f64 * (n_in - 1) as f64 / (n_out - 1) as f64 };
            let i0 = (pos.floor() as usize).min(n_in - 1);
            let i1 = (i0 + 1).min(n_in - 1);
            (i0, i1, pos - i0 as f64)
        })
        .collect()
}

/// Bilinear resampling onto `rows x cols`, keeping the corner samples.
pub fn resample(a: &Array2<f64>, rows: usize, cols: usize) -> Result<Array2<f64>> {
    if a.rows == 0 || a.cols == 0 || rows == 0 || cols == 0 {
        return Err(Error::invalid("cannot resample an empty array"));
    }
    let wr = linear_weights(a.rows, rows);
    let wc = linear_weights(a.cols, cols);
    let mut data = Vec::with_capacity(rows * cols);
    for &(r0, r1, tr) in &wr {
        for &(c0, c1, tc) in &wc {
            let top = a.get(r0, c0) * (1.0 - tc) + a.get(r0, c1) * tc;
            let bottom = a.get(r1, c0) * (1.0 - tc) + a.get(r1, c1) * tc;
            data.push(top * (1.0 - tr) + bottom * tr);
        }
    }
    Ok(Array2 { rows, cols, data })
}

pub fn export(a: &Array2<f64>, preset: ExportPreset) -> Result<Array2<f64>> {
    match preset.shape() {
        None => Ok(a.clone()),
        Some((rows, cols)) => resample(a, rows, cols),
    }
}
