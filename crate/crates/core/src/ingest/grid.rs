use std::path::Path;

use super::IngestError;
use crate::geometry::Point2;

/// Elevation raster read from an ESRI ASCII grid. `values` is row-major with
/// the top (northernmost) row first.
#[derive(Debug, Clone, PartialEq)]
pub struct ElevationGrid {
    pub ncols: usize,
    pub nrows: usize,
    pub xllcorner: f64,
    pub yllcorner: f64,
    pub cellsize: f64,
    pub nodata: f64,
    pub values: Vec<f64>,
}

impl ElevationGrid {
    /// Elevation of a cell; `None` for nodata or out-of-range indices.
    pub fn value(&self, col: usize, row: usize) -> Option<f64> {
        if col >= self.ncols || row >= self.nrows {
            return None;
        }
        let v = self.values[row * self.ncols + col];
        if v == self.nodata || v.is_nan() {
            None
        } else {
            Some(v)
        }
    }

    pub fn is_nodata(&self, col: usize, row: usize) -> bool {
        self.value(col, row).is_none()
    }

    pub fn cell_center(&self, col: usize, row: usize) -> Point2 {
        Point2::new(
            self.xllcorner + (col as f64 + 0.5) * self.cellsize,
            self.yllcorner + (self.nrows as f64 - row as f64 - 0.5) * self.cellsize,
        )
    }
}

const HEADER_KEYS: [&str; 6] = ["ncols", "nrows", "xllcorner", "yllcorner", "cellsize", "nodata_value"];
const DEFAULT_NODATA: f64 = -9999.0;

pub fn load_elevation_grid(path: &Path) -> Result<ElevationGrid, IngestError> {
    let text = std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_elevation_grid(&text, path)
}

pub fn parse_elevation_grid(text: &str, path: &Path) -> Result<ElevationGrid, IngestError> {
    let err = |line: usize, message: String| IngestError::Grid {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();

    let mut header = [f64::NAN; 6];
    header[5] = DEFAULT_NODATA;
    for (k, key) in HEADER_KEYS.iter().enumerate() {
        let Some(&(line_no, line)) = lines.peek() else {
            return Err(err(0, format!("missing header key `{key}`")));
        };
        let mut parts = line.split_whitespace();
        let name = parts.next().unwrap_or_default();
        if !name.eq_ignore_ascii_case(key) {
            // NODATA_value is optional; anything else must be present in order
            if k == 5 {
                break;
            }
            return Err(err(line_no, format!("expected header key `{key}`, found `{name}`")));
        }
        let value = parts
            .next()
            .and_then(|v| v.parse::<f64>().ok())
            .ok_or_else(|| err(line_no, format!("header `{key}` needs a numeric value")))?;
        header[k] = value;
        lines.next();
    }

    let dim = |v: f64, key: &str| -> Result<usize, IngestError> {
        if v.fract() == 0.0 && v >= 2.0 {
            Ok(v as usize)
        } else {
            Err(err(0, format!("`{key}` must be an integer >= 2, got {v}")))
        }
    };
    let ncols = dim(header[0], "ncols")?;
    let nrows = dim(header[1], "nrows")?;
    let cellsize = header[4];
    if !(cellsize > 0.0 && cellsize.is_finite()) {
        return Err(err(0, format!("`cellsize` must be > 0, got {cellsize}")));
    }

    let expected = ncols * nrows;
    let mut values = Vec::with_capacity(expected);
    let mut last_line = 0;
    for (line_no, line) in lines {
        last_line = line_no;
        for token in line.split_whitespace() {
            let v = token
                .parse::<f64>()
                .map_err(|_| err(line_no, format!("non-numeric value `{token}`")))?;
            values.push(v);
        }
    }
    if values.len() != expected {
        return Err(err(
            last_line,
            format!(
                "expected {expected} values ({ncols} x {nrows}), found {}",
                values.len()
            ),
        ));
    }
    Ok(ElevationGrid {
        ncols,
        nrows,
        xllcorner: header[2],
        yllcorner: header[3],
        cellsize,
        nodata: header[5],
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ElevationGrid, IngestError> {
        parse_elevation_grid(text, Path::new("dem.asc"))
    }

    #[test]
    fn two_by_two() {
        let g = parse(
            "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 100\nNODATA_value -9999\n0 10\n20 30\n",
        )
        .unwrap();
        assert_eq!(g.value(0, 0), Some(0.0));
        assert_eq!(g.value(1, 1), Some(30.0));
        assert_eq!(g.cell_center(0, 0), Point2::new(50.0, 150.0));
        assert_eq!(g.cell_center(1, 1), Point2::new(150.0, 50.0));
    }

    #[test]
    fn header_is_case_insensitive_and_nodata_optional() {
        let g = parse("NCOLS 2\nNROWS 2\nXLLCORNER 5\nYLLCORNER 6\nCELLSIZE 1\n1 2 3 4\n").unwrap();
        assert_eq!(g.nodata, DEFAULT_NODATA);
        assert_eq!(g.values, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn count_mismatch() {
        let e = parse("ncols 3\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\nnodata_value -1\n1 2\n3 4\n")
            .unwrap_err();
        assert!(e.to_string().contains("expected 6 values"), "{e}");
    }

    #[test]
    fn non_numeric_value() {
        let e = parse("ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n1 2\n3 x\n").unwrap_err();
        match e {
            IngestError::Grid { line, .. } => assert_eq!(line, 7),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn malformed_header() {
        assert!(parse("ncols 2\nxllcorner 0\n").is_err());
        assert!(parse("ncols two\n").is_err());
        assert!(parse("ncols 1\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n1 2\n").is_err());
    }

    #[test]
    fn nodata_cells_flagged() {
        let g = parse("ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\nnodata_value -9999\n1 -9999\n3 4\n")
            .unwrap();
        assert!(g.is_nodata(1, 0));
        assert!(!g.is_nodata(0, 0));
    }
}
