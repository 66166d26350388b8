//! Matrix Market coordinate-format I/O.
//!
//! Reads `real` matrices with `general` or `symmetric` storage; symmetric
//! files are expanded to full storage on read. Files are 1-based; the
//! in-memory representation is 0-based. Writing always uses `general`
//! storage with `{}`-formatted values, whose shortest-round-trip decimal
//! output re-reads to the same `f64`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::formats::triples::TriplesMatrix;
use crate::semiring::Real;

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

/// Reads a coordinate-format file into normalized triples. Duplicate
/// coordinates are merged additively.
pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<TriplesMatrix<f64>> {
    let path = path.as_ref();
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines().enumerate();

    let (_, banner) = lines
        .next()
        .ok_or_else(|| parse_err(path, 1, "empty file"))?;
    let banner = banner?;
    let fields: Vec<&str> = banner.split_whitespace().collect();
    if fields.len() < 5 || fields[0] != "%%MatrixMarket" {
        return Err(parse_err(path, 1, "missing %%MatrixMarket banner"));
    }
    if fields[1] != "matrix" || fields[2] != "coordinate" {
        return Err(parse_err(path, 1, "only coordinate matrices are supported"));
    }
    if fields[3] != "real" && fields[3] != "integer" {
        return Err(parse_err(
            path,
            1,
            format!("unsupported value type `{}`", fields[3]),
        ));
    }
    let symmetric = match fields[4] {
        "general" => false,
        "symmetric" => true,
        other => {
            return Err(parse_err(
                path,
                1,
                format!("unsupported symmetry `{other}`"),
            ))
        }
    };

    // dimensions line, after any % comments
    let (mut nrows, mut ncols, mut nnz_decl) = (0usize, 0usize, 0usize);
    let mut have_dims = false;
    let mut dims_line = 0usize;
    for (idx, line) in &mut lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let parts: Vec<&str> = trimmed.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(parse_err(path, idx + 1, "expected `rows cols nnz`"));
        }
        nrows = parts[0]
            .parse()
            .map_err(|_| parse_err(path, idx + 1, "bad row count"))?;
        ncols = parts[1]
            .parse()
            .map_err(|_| parse_err(path, idx + 1, "bad column count"))?;
        nnz_decl = parts[2]
            .parse()
            .map_err(|_| parse_err(path, idx + 1, "bad entry count"))?;
        have_dims = true;
        dims_line = idx + 1;
        break;
    }
    if !have_dims {
        return Err(parse_err(path, dims_line.max(1), "missing dimensions line"));
    }

    let mut t = TriplesMatrix::with_capacity(nrows, ncols, nnz_decl);
    let mut seen = 0usize;
    for (idx, line) in &mut lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let parts: Vec<&str> = trimmed.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(parse_err(path, idx + 1, "expected `i j value`"));
        }
        let i: usize = parts[0]
            .parse()
            .map_err(|_| parse_err(path, idx + 1, "bad row index"))?;
        let j: usize = parts[1]
            .parse()
            .map_err(|_| parse_err(path, idx + 1, "bad column index"))?;
        let v: f64 = parts[2]
            .parse()
            .map_err(|_| parse_err(path, idx + 1, "bad value"))?;
        if i < 1 || i > nrows || j < 1 || j > ncols {
            return Err(parse_err(
                path,
                idx + 1,
                format!("index ({i}, {j}) outside {nrows}x{ncols}"),
            ));
        }
        t.push(i - 1, j - 1, v);
        if symmetric && i != j {
            t.push(j - 1, i - 1, v);
        }
        seen += 1;
    }
    if seen != nnz_decl {
        return Err(parse_err(
            path,
            dims_line,
            format!("declared {nnz_decl} entries, found {seen}"),
        ));
    }
    t.normalize::<Real>();
    Ok(t)
}

/// Writes triples in `real general` coordinate format, 1-based, in
/// column-major order. Reruns with identical input produce byte-identical
/// files.
pub fn write_matrix_market(t: &TriplesMatrix<f64>, path: impl AsRef<Path>) -> Result<()> {
    let mut sorted = t.clone();
    sorted.normalize::<Real>();
    let mut w = BufWriter::new(File::create(path.as_ref())?);
    writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(w, "{} {} {}", sorted.nrows(), sorted.ncols(), sorted.nnz())?;
    for &(r, c, v) in sorted.entries() {
        writeln!(w, "{} {} {}", r + 1, c + 1, v)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_tmp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn reads_general_file() {
        let f = write_tmp(
            "%%MatrixMarket matrix coordinate real general\n\
             % a comment\n\
             2 2 2\n\
             1 1 1.0\n\
             2 2 2.0\n",
        );
        let t = read_matrix_market(f.path()).unwrap();
        assert_eq!(t.entries(), &[(0, 0, 1.0), (1, 1, 2.0)]);
    }

    #[test]
    fn expands_symmetric_storage() {
        let f = write_tmp(
            "%%MatrixMarket matrix coordinate real symmetric\n\
             3 3 2\n\
             2 1 5.0\n\
             3 3 1.0\n",
        );
        let t = read_matrix_market(f.path()).unwrap();
        assert_eq!(t.entries(), &[(1, 0, 5.0), (0, 1, 5.0), (2, 2, 1.0)]);
    }

    #[test]
    fn reports_line_numbers() {
        let f = write_tmp(
            "%%MatrixMarket matrix coordinate real general\n\
             2 2 1\n\
             3 1 1.0\n",
        );
        match read_matrix_market(f.path()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_banner() {
        let f = write_tmp("%%MatrixMarket matrix coordinate complex general\n1 1 0\n");
        assert!(matches!(
            read_matrix_market(f.path()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn write_read_round_trip() {
        let t = TriplesMatrix::from_entries(
            5,
            4,
            vec![(0, 0, 0.1), (4, 1, -2.5e-3), (2, 3, 1.0 / 3.0)],
        )
        .unwrap();
        let f = tempfile::NamedTempFile::new().unwrap();
        write_matrix_market(&t, f.path()).unwrap();
        let back = read_matrix_market(f.path()).unwrap();
        assert_eq!(back, t);
    }
}
