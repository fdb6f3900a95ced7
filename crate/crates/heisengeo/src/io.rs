//! CSV serialization of sampled curves.
//!
//! The column layout is `s, z_1, ..., z_2n, t`: parameter, planar
//! coordinates, height. A file without the trailing `t` column is a planar
//! polyline awaiting a horizontal lift. Floats are written with 17
//! significant digits, so reading a written file reproduces every `f64`
//! bit for bit and repeated runs are byte-identical.

use crate::curves::HorizontalCurve;
use crate::error::{Error, Result};
use std::io::{BufRead, Write};

/// Shortest fixed-width float encoding that round-trips every f64.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// A parsed curve file: always a grid and planar rows, heights only when
/// the file carried a `t` column.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveTable {
    pub grid: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    pub heights: Option<Vec<f64>>,
}

impl CurveTable {
    /// Turns the table into a horizontal curve: tables with heights are
    /// validated against the lift recurrence, tables without are lifted
    /// from the given starting height.
    pub fn into_curve(self, t0: f64) -> Result<HorizontalCurve> {
        match self.heights {
            Some(heights) => HorizontalCurve::from_parts(self.grid, &self.rows, heights),
            None => HorizontalCurve::lift(&self.grid, &self.rows, t0),
        }
    }
}

fn header(planar_dim: usize, with_t: bool) -> String {
    let mut cols = vec!["s".to_string()];
    cols.extend((1..=planar_dim).map(|i| format!("z_{i}")));
    if with_t {
        cols.push("t".to_string());
    }
    cols.join(",")
}

/// Writes a lifted curve with its `t` column.
pub fn write_curve_csv<W: Write>(mut w: W, curve: &HorizontalCurve) -> std::io::Result<()> {
    writeln!(w, "{}", header(curve.planar_dim(), true))?;
    for k in 0..curve.samples() {
        let mut fields = vec![format_float(curve.grid()[k])];
        fields.extend(curve.planar_row(k).iter().copied().map(format_float));
        fields.push(format_float(curve.heights()[k]));
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

/// Writes a planar polyline (no `t` column) on the given grid.
pub fn write_planar_csv<W: Write>(
    mut w: W,
    grid: &[f64],
    rows: &[Vec<f64>],
) -> Result<()> {
    if grid.len() != rows.len() {
        return Err(Error::DimensionMismatch { left: grid.len(), right: rows.len() });
    }
    let planar_dim = rows.first().map(|r| r.len()).unwrap_or(0);
    if planar_dim == 0 || planar_dim % 2 != 0 {
        return Err(Error::BadPlanarDim(planar_dim));
    }
    let io_err = |e: std::io::Error| Error::Parse(format!("write failed: {e}"));
    writeln!(w, "{}", header(planar_dim, false)).map_err(io_err)?;
    for (s, row) in grid.iter().zip(rows) {
        if row.len() != planar_dim {
            return Err(Error::DimensionMismatch { left: row.len(), right: planar_dim });
        }
        let mut fields = vec![format_float(*s)];
        fields.extend(row.iter().copied().map(format_float));
        writeln!(w, "{}", fields.join(",")).map_err(io_err)?;
    }
    Ok(())
}

fn parse_field(field: &str, line: usize) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("line {line}: bad float {field:?}")))
}

/// Reads either curve layout, deciding from the header whether a `t`
/// column is present.
pub fn read_curve_csv<R: BufRead>(r: R) -> Result<CurveTable> {
    let mut lines = r.lines().enumerate();
    let (_, first) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty curve file".into()))?;
    let first = first.map_err(|e| Error::Parse(format!("read failed: {e}")))?;
    let cols: Vec<&str> = first.trim().split(',').map(str::trim).collect();
    if cols.first() != Some(&"s") {
        return Err(Error::Parse(format!(
            "header must start with column s, got {:?}",
            cols.first().unwrap_or(&"")
        )));
    }
    let with_t = cols.last() == Some(&"t");
    let planar_dim = cols.len() - 1 - usize::from(with_t);
    if planar_dim == 0 || planar_dim % 2 != 0 {
        return Err(Error::BadPlanarDim(planar_dim));
    }
    for (i, col) in cols.iter().enumerate().skip(1).take(planar_dim) {
        let want = format!("z_{i}");
        if *col != want {
            return Err(Error::Parse(format!("expected column {want}, got {col:?}")));
        }
    }

    let mut grid = Vec::new();
    let mut rows = Vec::new();
    let mut heights = Vec::new();
    for (idx, line) in lines {
        let line = line.map_err(|e| Error::Parse(format!("read failed: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != cols.len() {
            return Err(Error::Parse(format!(
                "line {}: expected {} fields, got {}",
                idx + 1,
                cols.len(),
                fields.len()
            )));
        }
        grid.push(parse_field(fields[0], idx + 1)?);
        let row: Result<Vec<f64>> = fields[1..=planar_dim]
            .iter()
            .map(|f| parse_field(f, idx + 1))
            .collect();
        rows.push(row?);
        if with_t {
            heights.push(parse_field(fields[planar_dim + 1], idx + 1)?);
        }
    }
    Ok(CurveTable { grid, rows, heights: with_t.then_some(heights) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{sample_vec, seeded_rng};

    #[test]
    fn float_formatting_round_trips_exactly() {
        let mut rng = seeded_rng(5);
        for x in sample_vec(&mut rng, 1000, 1e6) {
            let y: f64 = format_float(x).parse().unwrap();
            assert_eq!(x.to_bits(), y.to_bits());
        }
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
        assert_eq!(format_float(-0.5), "-5.0000000000000000e-1");
    }

    #[test]
    fn lifted_curve_round_trips_bit_for_bit() {
        let mut rng = seeded_rng(17);
        let grid: Vec<f64> = (0..10).map(|i| i as f64 * 0.3).collect();
        let rows: Vec<Vec<f64>> = grid.iter().map(|_| sample_vec(&mut rng, 4, 2.0)).collect();
        let curve = HorizontalCurve::lift(&grid, &rows, 0.25).unwrap();
        let mut buffer = Vec::new();
        write_curve_csv(&mut buffer, &curve).unwrap();
        let table = read_curve_csv(buffer.as_slice()).unwrap();
        assert_eq!(table.grid, grid);
        assert_eq!(table.rows, rows);
        assert_eq!(table.heights.as_deref(), Some(curve.heights()));
        // The recurrence re-validates on the parsed bits.
        let back = table.into_curve(0.0).unwrap();
        assert_eq!(back.heights(), curve.heights());
    }

    #[test]
    fn planar_files_lift_on_read() {
        let grid = vec![0.0, 1.0, 2.0];
        let rows = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0]];
        let mut buffer = Vec::new();
        write_planar_csv(&mut buffer, &grid, &rows).unwrap();
        let text = String::from_utf8(buffer.clone()).unwrap();
        assert!(text.starts_with("s,z_1,z_2\n"));
        let table = read_curve_csv(buffer.as_slice()).unwrap();
        assert!(table.heights.is_none());
        let curve = table.into_curve(0.5).unwrap();
        assert_eq!(curve.heights()[0], 0.5);
        assert_eq!(curve.samples(), 3);
    }

    #[test]
    fn malformed_files_are_rejected_with_line_numbers() {
        assert!(read_curve_csv("".as_bytes()).is_err());
        assert!(read_curve_csv("x,y\n1,2\n".as_bytes()).is_err());
        // Odd planar dimension.
        assert!(read_curve_csv("s,z_1\n0,1\n".as_bytes()).is_err());
        // Wrong z labels.
        assert!(read_curve_csv("s,z_1,w,t\n0,1,2,3\n".as_bytes()).is_err());
        let err = read_curve_csv("s,z_1,z_2\n0,1,2\n1,oops,2\n".as_bytes()).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = read_curve_csv("s,z_1,z_2\n0,1\n".as_bytes()).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn tampered_heights_fail_lift_validation() {
        // True height change along [0,0] -> [1,1] is 2 w = 0, not 1.
        let table = CurveTable {
            grid: vec![0.0, 1.0],
            rows: vec![vec![0.0, 0.0], vec![1.0, 1.0]],
            heights: Some(vec![0.0, 1.0]),
        };
        assert!(table.into_curve(0.0).is_err());
    }
}
