//! CSV readers and writers for the toolkit's file formats.
//!
//! All values are written with Rust's shortest round-trip float formatting,
//! so write-then-read is lossless and repeated runs are byte-identical.
//!
//! Formats:
//! * dataset CSV — first row is the grid (header), following rows are
//!   observations;
//! * parameter CSV — header row names the active parameters;
//! * distance CSV — square, header-free;
//! * embedding CSV — n rows x d columns, header-free.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::synthdata::{FunctionalDataset, ParamSample};

fn parse_cell(cell: &str, line: usize, column: usize) -> Result<f64> {
    let trimmed = cell.trim();
    trimmed.parse::<f64>().map_err(|_| Error::Parse {
        line,
        column,
        message: format!("expected a number, got {trimmed:?}"),
    })
}

/// Parse comma-separated numeric rows, enforcing equal row lengths.
/// `start_line` is the 1-based line number of the first row (for messages).
fn parse_rows(text: &str, start_line: usize) -> Result<Vec<Vec<f64>>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (offset, raw) in text.lines().enumerate() {
        let line_no = start_line + offset;
        if raw.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (c, cell) in raw.split(',').enumerate() {
            row.push(parse_cell(cell, line_no, c + 1)?);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse {
                    line: line_no,
                    column: row.len(),
                    message: format!(
                        "ragged row: expected {} cells, found {}",
                        first.len(),
                        row.len()
                    ),
                });
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

fn rows_to_array(rows: Vec<Vec<f64>>) -> Result<Array2<f64>> {
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty input".into(),
        });
    }
    let n = rows.len();
    let m = rows[0].len();
    let flat: Vec<f64> = rows.into_iter().flatten().collect();
    Array2::from_shape_vec((n, m), flat)
        .map_err(|e| Error::invalid(format!("shape error: {e}")))
}

fn format_row(out: &mut String, row: impl Iterator<Item = f64>) {
    let mut first = true;
    for v in row {
        if !first {
            out.push(',');
        }
        let _ = write!(out, "{v}");
        first = false;
    }
    out.push('\n');
}

/// Write a dataset: grid header then one row per observation.
pub fn write_dataset_csv(ds: &FunctionalDataset, path: &Path) -> Result<()> {
    let mut out = String::new();
    format_row(&mut out, ds.grid.iter().copied());
    for row in ds.values.rows() {
        format_row(&mut out, row.iter().copied());
    }
    fs::write(path, out)?;
    Ok(())
}

/// Read a dataset. With `grid_header` the first non-empty line is the grid;
/// otherwise the grid defaults to equispaced points on [0, 1].
pub fn read_dataset_csv(path: &Path, grid_header: bool) -> Result<FunctionalDataset> {
    let text = fs::read_to_string(path)?;
    let rows = parse_rows(&text, 1)?;
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty dataset file".into(),
        });
    }
    let (grid, data_rows) = if grid_header {
        let grid = rows[0].clone();
        for (c, w) in grid.windows(2).enumerate() {
            if w[1] == w[0] {
                return Err(Error::Parse {
                    line: 1,
                    column: c + 2,
                    message: format!("duplicate grid value {}", w[1]),
                });
            }
            if w[1] < w[0] {
                return Err(Error::Parse {
                    line: 1,
                    column: c + 2,
                    message: format!("grid not increasing: {} after {}", w[1], w[0]),
                });
            }
        }
        (grid, rows[1..].to_vec())
    } else {
        let m = rows[0].len();
        let grid = (0..m).map(|j| j as f64 / (m - 1).max(1) as f64).collect();
        (grid, rows)
    };
    let values = rows_to_array(data_rows)?;
    let ds = FunctionalDataset {
        grid,
        values,
        provenance: "external".to_string(),
    };
    ds.validate()?;
    Ok(ds)
}

/// Write ground-truth parameters with a naming header.
pub fn write_params_csv(params: &ParamSample, path: &Path) -> Result<()> {
    let mut out = String::new();
    out.push_str(&params.column_labels().join(","));
    out.push('\n');
    for row in params.values.rows() {
        format_row(&mut out, row.iter().copied());
    }
    fs::write(path, out)?;
    Ok(())
}

/// Read a parameter matrix (header row skipped). Returns the raw matrix;
/// setting metadata is not reconstructed from files.
pub fn read_matrix_csv_with_header(path: &Path) -> Result<Array2<f64>> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let _header = lines.next();
    let rest: String = lines.collect::<Vec<_>>().join("\n");
    rows_to_array(parse_rows(&rest, 2)?)
}

/// Write a square, header-free distance matrix.
pub fn write_matrix_csv(m: &Array2<f64>, path: &Path) -> Result<()> {
    let mut out = String::new();
    for row in m.rows() {
        format_row(&mut out, row.iter().copied());
    }
    fs::write(path, out)?;
    Ok(())
}

/// Read a header-free numeric matrix.
pub fn read_matrix_csv(path: &Path) -> Result<Array2<f64>> {
    let text = fs::read_to_string(path)?;
    rows_to_array(parse_rows(&text, 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthdata::{generate_setting, setting};

    fn tmpdir() -> std::path::PathBuf {
        let dir = std::env::temp_dir().join(format!("fnmr-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn dataset_roundtrip_is_exact() {
        let s = setting("p2-l").unwrap();
        let (ds, _) = generate_setting(s, 6, 9, 12).unwrap();
        let path = tmpdir().join("roundtrip.csv");
        write_dataset_csv(&ds, &path).unwrap();
        let back = read_dataset_csv(&path, true).unwrap();
        assert_eq!(back.grid, ds.grid);
        assert_eq!(back.values, ds.values);
        assert_eq!(back.provenance, "external");
    }

    #[test]
    fn well_formed_small_file() {
        let path = tmpdir().join("small.csv");
        fs::write(&path, "0,0.5,0.8,1\n1,2,3,4\n5,6,7,8\n9,10,11,12\n").unwrap();
        let ds = read_dataset_csv(&path, true).unwrap();
        assert_eq!((ds.n(), ds.m()), (3, 4));
    }

    #[test]
    fn non_numeric_cell_names_row_and_column() {
        let path = tmpdir().join("bad.csv");
        fs::write(&path, "0,1\n1,2\n3,oops\n4,5\n").unwrap();
        let err = read_dataset_csv(&path, true).unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!((line, column), (3, 2));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn ragged_row_rejected() {
        let path = tmpdir().join("ragged.csv");
        fs::write(&path, "0,1,2\n1,2,3\n4,5\n6,7,8\n").unwrap();
        assert!(matches!(
            read_dataset_csv(&path, true),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn duplicate_grid_rejected() {
        let path = tmpdir().join("dupgrid.csv");
        fs::write(&path, "0,0.5,0.5,1\n1,2,3,4\n5,6,7,8\n6,7,8,9\n").unwrap();
        assert!(read_dataset_csv(&path, true).is_err());
    }

    #[test]
    fn headerless_dataset_gets_unit_grid() {
        let path = tmpdir().join("nohdr.csv");
        fs::write(&path, "1,2,3\n4,5,6\n7,8,9\n").unwrap();
        let ds = read_dataset_csv(&path, false).unwrap();
        assert_eq!(ds.grid, vec![0.0, 0.5, 1.0]);
        assert_eq!(ds.n(), 3);
    }

    #[test]
    fn matrix_roundtrip() {
        let m = Array2::from_shape_fn((4, 4), |(i, j)| (i * 7 + j) as f64 / 3.0);
        let path = tmpdir().join("mat.csv");
        write_matrix_csv(&m, &path).unwrap();
        assert_eq!(read_matrix_csv(&path).unwrap(), m);
    }
}
