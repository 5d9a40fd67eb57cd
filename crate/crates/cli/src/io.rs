//! Plain-text column I/O: `#` comments, whitespace- or comma-delimited
//! numeric rows, full double precision output.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use siac::{MomentSet, MomentVar};

use crate::CliError;

/// Full-precision number formatting: shortest round-trip digits, switching
/// to exponent form outside [1e-4, 1e16) the way `%.17g` would.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let magnitude = x.abs();
    if (1e-4..1e16).contains(&magnitude) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn tokens(line: &str) -> Vec<&str> {
    line.split([',', ' ', '\t'])
        .filter(|t| !t.is_empty())
        .collect()
}

fn parse_number(token: &str, path: &Path, line: usize) -> Result<f64, CliError> {
    token.parse::<f64>().map_err(|_| CliError::Parse {
        path: path.display().to_string(),
        line,
        message: format!("'{token}' is not a number"),
    })
}

/// Read a two-column (x, f) profile. `x` must be strictly increasing.
pub fn read_xy(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut xs = Vec::new();
    let mut fs_column = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks = tokens(trimmed);
        if toks.len() != 2 {
            return Err(CliError::Parse {
                path: path.display().to_string(),
                line,
                message: format!("expected 2 columns, found {}", toks.len()),
            });
        }
        let x = parse_number(toks[0], path, line)?;
        let f = parse_number(toks[1], path, line)?;
        if let Some(&prev) = xs.last() {
            if x <= prev {
                return Err(CliError::Parse {
                    path: path.display().to_string(),
                    line,
                    message: format!("x = {x} is not strictly increasing (previous {prev})"),
                });
            }
        }
        xs.push(x);
        fs_column.push(f);
    }
    if xs.len() < 2 {
        return Err(CliError::Parse {
            path: path.display().to_string(),
            line: text.lines().count(),
            message: format!("need at least 2 data rows, found {}", xs.len()),
        });
    }
    Ok((xs, fs_column))
}

/// Read a moment table: an `x` column plus the 13 named profile columns, in
/// any order, located by a header row (bare, or in a `#` comment line).
pub fn read_moments(path: &Path) -> Result<MomentSet, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut names: Option<Vec<String>> = None;
    let mut comment_candidate: Option<Vec<String>> = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let toks = tokens(comment);
            if toks.iter().any(|t| *t == "x") {
                comment_candidate = Some(toks.iter().map(|t| t.to_string()).collect());
            }
            continue;
        }
        let toks = tokens(trimmed);
        if names.is_none() && rows.is_empty() && toks.iter().any(|t| t.parse::<f64>().is_err()) {
            names = Some(toks.iter().map(|t| t.to_string()).collect());
            continue;
        }
        let columns = names.as_ref().or(comment_candidate.as_ref());
        if let Some(cols) = columns {
            if toks.len() != cols.len() {
                return Err(CliError::Parse {
                    path: path.display().to_string(),
                    line,
                    message: format!("expected {} columns, found {}", cols.len(), toks.len()),
                });
            }
        }
        let row = toks
            .iter()
            .map(|t| parse_number(t, path, line))
            .collect::<Result<Vec<f64>, CliError>>()?;
        rows.push(row);
    }

    let names = names.or(comment_candidate).ok_or_else(|| CliError::Parse {
        path: path.display().to_string(),
        line: 0,
        message: "missing header row naming the columns".into(),
    })?;
    if rows.is_empty() {
        return Err(CliError::Parse {
            path: path.display().to_string(),
            line: 0,
            message: "no data rows".into(),
        });
    }

    let column_of = |name: &str| names.iter().position(|n| n == name);
    let x_col = column_of("x").ok_or_else(|| CliError::Parse {
        path: path.display().to_string(),
        line: 0,
        message: "missing column: x".into(),
    })?;
    let xs: Vec<f64> = rows.iter().map(|r| r[x_col]).collect();
    let mut profiles = Vec::with_capacity(MomentVar::ALL.len());
    for var in MomentVar::ALL {
        let col = column_of(var.name()).ok_or_else(|| CliError::Parse {
            path: path.display().to_string(),
            line: 0,
            message: format!("missing column: {}", var.name()),
        })?;
        profiles.push(rows.iter().map(|r| r[col]).collect());
    }
    MomentSet::new(xs, profiles).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        line: 0,
        message: e.to_string(),
    })
}

/// Output sink: a file or stdout.
pub enum Output {
    Stdout,
    File(PathBuf),
}

impl Output {
    pub fn from_option(path: &Option<PathBuf>) -> Self {
        match path {
            Some(p) => Output::File(p.clone()),
            None => Output::Stdout,
        }
    }

    pub fn write(&self, content: &str) -> Result<(), CliError> {
        match self {
            Output::Stdout => {
                std::io::stdout()
                    .write_all(content.as_bytes())
                    .map_err(|e| CliError::Io(e.to_string()))?;
                Ok(())
            }
            Output::File(path) => fs::write(path, content)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        }
    }
}

/// Assemble an output table: `# `-prefixed header lines, then rows.
pub fn render_table(header_lines: &[String], columns: &str, rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for line in header_lines {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "# {columns}");
    for row in rows {
        let formatted: Vec<String> = row.iter().map(|&v| fmt_g(v)).collect();
        let _ = writeln!(out, "{}", formatted.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt_g_round_trips() {
        for &v in &[
            0.0,
            1.0,
            -1.5,
            0.1,
            1.0 / 3.0,
            6.02e23,
            -1.6e-19,
            f64::MAX,
            f64::MIN_POSITIVE,
        ] {
            let s = fmt_g(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, v, "round-trip failed for {v} via '{s}'");
        }
        assert_eq!(fmt_g(f64::NAN), "nan");
        assert!(fmt_g(f64::NAN).parse::<f64>().unwrap().is_nan());
        assert_eq!(fmt_g(f64::INFINITY), "inf");
    }

    #[test]
    fn read_xy_accepts_comments_and_commas() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("data.txt");
        fs::write(&path, "# comment\n0.5, 1.0\n1.5\t2.0\n\n2.5 3.0\n").unwrap();
        let (xs, fs_col) = read_xy(&path).unwrap();
        assert_eq!(xs, vec![0.5, 1.5, 2.5]);
        assert_eq!(fs_col, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn read_xy_reports_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt");
        fs::write(&path, "0.5 1.0\n1.5 oops\n").unwrap();
        match read_xy(&path) {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn read_xy_rejects_non_monotone() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mono.txt");
        fs::write(&path, "0.5 1.0\n0.4 2.0\n").unwrap();
        match read_xy(&path) {
            Err(CliError::Parse { line, message, .. }) => {
                assert_eq!(line, 2);
                assert!(message.contains("strictly increasing"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn read_moments_by_header_names() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("moments.txt");
        let mut content = String::from("# x");
        for var in MomentVar::ALL {
            content.push(' ');
            content.push_str(var.name());
        }
        content.push('\n');
        for j in 0..4 {
            content.push_str(&format!("{}", 0.05 + 0.1 * j as f64));
            for (i, _) in MomentVar::ALL.iter().enumerate() {
                content.push_str(&format!(" {}", (i + 1) as f64));
            }
            content.push('\n');
        }
        fs::write(&path, content).unwrap();
        let m = read_moments(&path).unwrap();
        assert_eq!(m.len(), 4);
        assert_eq!(m.profile(MomentVar::ElectronDensity)[0], 8.0);
    }

    #[test]
    fn read_moments_names_missing_column() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("short.txt");
        fs::write(&path, "# x n_e\n0.05 1.0\n0.15 1.0\n").unwrap();
        match read_moments(&path) {
            Err(CliError::Parse { message, .. }) => {
                assert!(message.contains("missing column: q_n^e"), "{message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
