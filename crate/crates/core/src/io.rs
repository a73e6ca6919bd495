//! File formats: matrix JSON, spectrum JSON, trajectory JSON and CSV.
//!
//! Matrix JSON is `{"rows": r, "cols": c, "data": [[re, im], ...]}` with the
//! data row-major. Trajectory CSV has header `t,re_0_0,im_0_0,...` (entries
//! row-major) and one row per grid node. All floats are emitted with 17
//! significant digits so identical inputs produce byte-identical output.

use std::io::Write;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::dynamics::{Trajectory, TrajectoryKind};
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::scalar::Real;
use crate::state::Spectrum;

/// Wire form of a complex matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix<T: Real>(m: &CMat<T>) -> Self {
        let data = m
            .data()
            .iter()
            .map(|z| {
                [
                    z.re.to_f64().unwrap_or(f64::NAN),
                    z.im.to_f64().unwrap_or(f64::NAN),
                ]
            })
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data,
        }
    }

    pub fn to_matrix<T: Real>(&self) -> Result<CMat<T>> {
        if self.data.len() != self.rows * self.cols {
            return Err(Error::InvalidArgument(format!(
                "matrix JSON claims {}x{} but carries {} entries",
                self.rows,
                self.cols,
                self.data.len()
            )));
        }
        Ok(CMat::from_fn(self.rows, self.cols, |i, j| {
            let [re, im] = self.data[i * self.cols + j];
            Complex::new(T::of(re), T::of(im))
        }))
    }
}

/// Wire form of a spectrum.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub values: Vec<f64>,
    pub rank_tol: f64,
}

impl SpectrumJson {
    pub fn from_spectrum<T: Real>(sigma: &Spectrum<T>, rank_tol: T) -> Self {
        Self {
            values: sigma
                .values()
                .iter()
                .map(|v| v.to_f64().unwrap_or(f64::NAN))
                .collect(),
            rank_tol: rank_tol.to_f64().unwrap_or(1e-9),
        }
    }

    pub fn to_spectrum<T: Real>(&self) -> Result<Spectrum<T>> {
        Spectrum::new(
            self.values.iter().map(|&v| T::of(v)).collect(),
            T::of(self.rank_tol),
        )
    }
}

/// Wire form of a trajectory (matrix JSON frames plus a times array).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrajectoryJson {
    pub times: Vec<f64>,
    pub frames: Vec<MatrixJson>,
}

impl TrajectoryJson {
    pub fn from_trajectory<T: Real>(traj: &Trajectory<T>) -> Self {
        Self {
            times: traj
                .times()
                .iter()
                .map(|t| t.to_f64().unwrap_or(f64::NAN))
                .collect(),
            frames: traj.frames().iter().map(MatrixJson::from_matrix).collect(),
        }
    }

    pub fn to_trajectory<T: Real>(
        &self,
        kind: TrajectoryKind,
        sigma: Option<Spectrum<T>>,
        tol: T,
    ) -> Result<Trajectory<T>> {
        let times = self.times.iter().map(|&t| T::of(t)).collect();
        let frames: Result<Vec<CMat<T>>> = self.frames.iter().map(|f| f.to_matrix()).collect();
        Trajectory::new(times, frames?, kind, sigma, tol)
    }
}

struct SigFigFormatter;

impl serde_json::ser::Formatter for SigFigFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes to JSON with floats at 17 significant digits (deterministic,
/// round-trip exact for f64).
pub fn to_json_string<S: Serialize>(value: &S) -> Result<String> {
    let mut out = Vec::new();
    let mut serializer = serde_json::Serializer::with_formatter(&mut out, SigFigFormatter);
    value
        .serialize(&mut serializer)
        .map_err(|e| Error::InvalidArgument(format!("JSON serialization failed: {e}")))?;
    String::from_utf8(out).map_err(|e| Error::InvalidArgument(e.to_string()))
}

pub fn from_json_str<'a, D: Deserialize<'a>>(text: &'a str) -> Result<D> {
    serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("JSON parse: {e}")))
}

/// CSV emission: header `t,re_0_0,im_0_0,...`, one row per grid node.
pub fn trajectory_to_csv<T: Real>(traj: &Trajectory<T>) -> String {
    let rows = traj.first().rows();
    let cols = traj.first().cols();
    let mut out = String::from("t");
    for i in 0..rows {
        for j in 0..cols {
            out.push_str(&format!(",re_{i}_{j},im_{i}_{j}"));
        }
    }
    out.push('\n');
    for (t, frame) in traj.times().iter().zip(traj.frames()) {
        out.push_str(&format!("{:.16e}", t.to_f64().unwrap_or(f64::NAN)));
        for i in 0..rows {
            for j in 0..cols {
                let z = frame[(i, j)];
                out.push_str(&format!(
                    ",{:.16e},{:.16e}",
                    z.re.to_f64().unwrap_or(f64::NAN),
                    z.im.to_f64().unwrap_or(f64::NAN)
                ));
            }
        }
        out.push('\n');
    }
    out
}

/// Parses a trajectory CSV produced by [`trajectory_to_csv`]; the matrix
/// shape is inferred from the header labels.
pub fn trajectory_from_csv<T: Real>(
    text: &str,
    kind: TrajectoryKind,
    sigma: Option<Spectrum<T>>,
    tol: T,
) -> Result<Trajectory<T>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty CSV".into()))?;
    let labels: Vec<&str> = header.split(',').collect();
    if labels.first() != Some(&"t") {
        return Err(Error::InvalidArgument(
            "CSV header must start with 't'".into(),
        ));
    }
    let mut rows = 0usize;
    let mut cols = 0usize;
    for label in &labels[1..] {
        let rest = label
            .strip_prefix("re_")
            .or_else(|| label.strip_prefix("im_"))
            .ok_or_else(|| Error::InvalidArgument(format!("bad CSV column label {label}")))?;
        let (i, j) = rest
            .split_once('_')
            .ok_or_else(|| Error::InvalidArgument(format!("bad CSV column label {label}")))?;
        let i: usize = i
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad CSV column label {label}")))?;
        let j: usize = j
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad CSV column label {label}")))?;
        rows = rows.max(i + 1);
        cols = cols.max(j + 1);
    }
    let entries = rows * cols;
    if labels.len() != 1 + 2 * entries {
        return Err(Error::InvalidArgument(format!(
            "CSV header has {} value columns, expected {}",
            labels.len() - 1,
            2 * entries
        )));
    }
    let mut times = Vec::new();
    let mut frames = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != labels.len() {
            return Err(Error::InvalidArgument(format!(
                "CSV row has {} fields, expected {}",
                fields.len(),
                labels.len()
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad CSV number {s}")))
        };
        times.push(T::of(parse(fields[0])?));
        let mut frame = CMat::zeros(rows, cols);
        for e in 0..entries {
            let re = parse(fields[1 + 2 * e])?;
            let im = parse(fields[2 + 2 * e])?;
            frame[(e / cols, e % cols)] = Complex::new(T::of(re), T::of(im));
        }
        frames.push(frame);
    }
    Trajectory::new(times, frames, kind, sigma, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::dynamics::{constant, evolve_von_neumann};
    use crate::state::DensityOperator;

    #[test]
    fn matrix_json_round_trip() {
        let m = CMat::<f64>::from_rows(&[
            vec![(0.5, -0.25), (1.0 / 3.0, 0.0)],
            vec![(1e-17, 2.0), (0.0, -1.0)],
        ]);
        let json = to_json_string(&MatrixJson::from_matrix(&m)).unwrap();
        let parsed: MatrixJson = from_json_str(&json).unwrap();
        let back: CMat<f64> = parsed.to_matrix().unwrap();
        assert_eq!(back.data(), m.data());
    }

    #[test]
    fn json_output_is_deterministic() {
        let m = CMat::<f64>::diag_real(&[0.1 + 0.2, 0.7]);
        let a = to_json_string(&MatrixJson::from_matrix(&m)).unwrap();
        let b = to_json_string(&MatrixJson::from_matrix(&m)).unwrap();
        assert_eq!(a, b);
        assert!(a.contains('e'), "floats use scientific notation: {a}");
    }

    #[test]
    fn trajectory_csv_round_trip() {
        let ctx = Context::default();
        let rho = DensityOperator::new(CMat::diag_real(&[0.75, 0.25])).unwrap();
        let h = CMat::from_rows(&[vec![(0.0, 0.0), (0.0, 0.5)], vec![(0.0, -0.5), (0.0, 0.0)]])
            .hermitian_part();
        let traj = evolve_von_neumann(&constant(h), &rho, 1.0, 20, &ctx).unwrap();
        let csv = trajectory_to_csv(&traj);
        assert!(csv.starts_with("t,re_0_0,im_0_0,re_0_1,im_0_1,re_1_0"));
        let back = trajectory_from_csv::<f64>(&csv, TrajectoryKind::Density, None, 1e-8).unwrap();
        assert_eq!(back.len(), traj.len());
        for (a, b) in back.frames().iter().zip(traj.frames()) {
            assert!(a.distance(b) < 1e-15);
        }
    }

    #[test]
    fn trajectory_json_round_trip() {
        let ctx = Context::default();
        let rho = DensityOperator::new(CMat::diag_real(&[0.6, 0.4])).unwrap();
        let h = CMat::diag_real(&[0.3, -0.3]);
        let traj = evolve_von_neumann(&constant(h), &rho, 0.5, 8, &ctx).unwrap();
        let json = to_json_string(&TrajectoryJson::from_trajectory(&traj)).unwrap();
        let parsed: TrajectoryJson = from_json_str(&json).unwrap();
        let back = parsed
            .to_trajectory::<f64>(TrajectoryKind::Density, None, 1e-8)
            .unwrap();
        assert_eq!(back.len(), traj.len());
        for (a, b) in back.frames().iter().zip(traj.frames()) {
            assert!(a.distance(b) < 1e-16);
        }
    }

    #[test]
    fn spectrum_json_round_trip() {
        let sigma = Spectrum::<f64>::new(vec![0.5, 0.3, 0.2], 1e-9).unwrap();
        let json = to_json_string(&SpectrumJson::from_spectrum(&sigma, 1e-9)).unwrap();
        let parsed: SpectrumJson = from_json_str(&json).unwrap();
        let back: Spectrum<f64> = parsed.to_spectrum().unwrap();
        assert!(back.is_close(&sigma, 1e-15));
    }
}
