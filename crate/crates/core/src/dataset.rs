//! Input point clouds in R^d: validation, geometry helpers, CSV round-trip.

use std::io::{BufRead, Write};

use ndarray::{Array2, ArrayView1};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::util::median;

/// Relative tolerance below which two input points count as duplicates.
const DUPLICATE_REL_TOL: f64 = 1e-14;

/// Where a dataset came from, carried into run reports.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Provenance {
    pub kind: String,
    pub seed: u64,
}

/// An n x d point cloud. Construction validates finiteness and rejects
/// duplicate points, so downstream affinity code can assume both.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    points: Array2<f64>,
    provenance: Option<Provenance>,
}

impl Dataset {
    pub fn new(points: Array2<f64>) -> Result<Self> {
        let n = points.nrows();
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "dataset needs at least 2 points, got {n}"
            )));
        }
        for (i, row) in points.rows().into_iter().enumerate() {
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteInput { index: i });
            }
        }
        let ds = Dataset {
            points,
            provenance: None,
        };
        let diam = ds.diameter();
        for i in 0..n {
            for j in (i + 1)..n {
                if ds.dist(i, j) <= DUPLICATE_REL_TOL * diam {
                    return Err(Error::DuplicatePoints { i, j });
                }
            }
        }
        Ok(ds)
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn n(&self) -> usize {
        self.points.nrows()
    }

    pub fn dim(&self) -> usize {
        self.points.ncols()
    }

    pub fn points(&self) -> &Array2<f64> {
        &self.points
    }

    pub fn point(&self, i: usize) -> ArrayView1<'_, f64> {
        self.points.row(i)
    }

    pub fn sq_dist(&self, i: usize, j: usize) -> f64 {
        self.point(i)
            .iter()
            .zip(self.point(j).iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.sq_dist(i, j).sqrt()
    }

    /// Squared distances from point `i` to every point (0 at `i`).
    pub fn sq_dists_from(&self, i: usize) -> Vec<f64> {
        (0..self.n()).map(|j| self.sq_dist(i, j)).collect()
    }

    /// Largest pairwise distance of the cloud.
    pub fn diameter(&self) -> f64 {
        let n = self.n();
        let mut best = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                best = best.max(self.sq_dist(i, j));
            }
        }
        best.sqrt()
    }

    /// Distance from point `i` to its nearest neighbor.
    pub fn min_gap(&self, i: usize) -> f64 {
        (0..self.n())
            .filter(|&j| j != i)
            .map(|j| self.sq_dist(i, j))
            .fold(f64::INFINITY, f64::min)
            .sqrt()
    }

    /// Median over all n(n-1)/2 pairwise distances.
    pub fn median_pairwise_distance(&self) -> f64 {
        let n = self.n();
        let mut d = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                d.push(self.dist(i, j));
            }
        }
        median(&d)
    }

    /// Median over per-point nearest-neighbor distances.
    pub fn median_nn_gap(&self) -> f64 {
        let gaps: Vec<f64> = (0..self.n()).map(|i| self.min_gap(i)).collect();
        median(&gaps)
    }

    /// Read a headerless CSV, one point per line, `d` comma-separated columns.
    pub fn from_csv<R: BufRead>(reader: R) -> Result<Self> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::CsvParse {
                line: lineno + 1,
                msg: e.to_string(),
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let row: Vec<f64> = line
                .split(',')
                .map(|f| {
                    f.trim().parse::<f64>().map_err(|e| Error::CsvParse {
                        line: lineno + 1,
                        msg: format!("{e}: {f:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            if let Some(first) = rows.first() {
                if row.len() != first.len() {
                    return Err(Error::CsvParse {
                        line: lineno + 1,
                        msg: format!("expected {} columns, got {}", first.len(), row.len()),
                    });
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::CsvParse {
                line: 0,
                msg: "empty file".into(),
            });
        }
        let d = rows[0].len();
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        let points = Array2::from_shape_vec((rows.len(), d), flat)
            .expect("row-major shape from validated rows");
        Dataset::new(points)
    }

    /// Write the headerless CSV form. `{}` formatting of f64 is the shortest
    /// representation that round-trips, so read-back is bit-exact.
    pub fn to_csv<W: Write>(&self, mut writer: W) -> std::io::Result<()> {
        for row in self.points.rows() {
            let fields: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            writeln!(writer, "{}", fields.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn line_points() -> Array2<f64> {
        array![[0.0], [1.0], [2.0]]
    }

    #[test]
    fn accepts_valid_points() {
        let ds = Dataset::new(line_points()).unwrap();
        assert_eq!(ds.n(), 3);
        assert_eq!(ds.dim(), 1);
        assert_eq!(ds.diameter(), 2.0);
    }

    #[test]
    fn rejects_single_point() {
        assert!(matches!(
            Dataset::new(array![[1.0, 2.0]]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn rejects_non_finite() {
        let err = Dataset::new(array![[0.0], [f64::NAN]]).unwrap_err();
        assert!(matches!(err, Error::NonFiniteInput { index: 1 }));
    }

    #[test]
    fn rejects_duplicates() {
        let err = Dataset::new(array![[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]]).unwrap_err();
        assert!(matches!(err, Error::DuplicatePoints { i: 0, j: 2 }));
    }

    #[test]
    fn rejects_all_identical() {
        // Zero diameter means every pair is within tolerance.
        let err = Dataset::new(array![[1.0], [1.0]]).unwrap_err();
        assert!(matches!(err, Error::DuplicatePoints { .. }));
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let ds = Dataset::new(array![
            [0.1, -1.0e-17],
            [2.0 / 3.0, 1.0e300],
            [f64::MIN_POSITIVE, 42.0]
        ])
        .unwrap();
        let mut buf = Vec::new();
        ds.to_csv(&mut buf).unwrap();
        let back = Dataset::from_csv(&buf[..]).unwrap();
        assert_eq!(ds.points(), back.points());
    }

    #[test]
    fn csv_rejects_ragged_rows() {
        let err = Dataset::from_csv("1.0,2.0\n3.0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::CsvParse { line: 2, .. }));
    }

    #[test]
    fn median_gap_helpers() {
        let ds = Dataset::new(line_points()).unwrap();
        assert_eq!(ds.min_gap(0), 1.0);
        assert_eq!(ds.min_gap(1), 1.0);
        assert_eq!(ds.median_nn_gap(), 1.0);
        // pairwise distances: 1, 1, 2
        assert_eq!(ds.median_pairwise_distance(), 1.0);
    }
}
