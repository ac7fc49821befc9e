use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::characterize::AuditReport;
use crate::error::{Error, Result};
use crate::frenet::{CurveTrace, FrameKind, FrenetData};
use crate::gfield::{BasisKind, ComponentProfile, GFieldTrace};

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Write `contents` next to `path` and rename it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let name = path.file_name().ok_or_else(|| {
        Error::validation("out", format!("{} is not a file path", path.display()))
    })?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    fs::write(&tmp, contents).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::io(path, e)
    })
}

fn push_row(out: &mut String, row: &[f64]) {
    let cells: Vec<String> = row.iter().map(|v| fmt_num(*v)).collect();
    out.push_str(&cells.join(","));
    out.push('\n');
}

fn coefficient_names(basis: BasisKind, count: usize) -> Vec<String> {
    match basis {
        BasisKind::Rectifying => (0..count).map(|i| format!("w{i}")).collect(),
        BasisKind::Normal => std::iter::once("theta".to_string())
            .chain((1..count).map(|i| format!("mu{i}")))
            .collect(),
    }
}

/// Per-node table `s, x1..xn, G, xg1..xgn, k1.., w0..`.
pub fn trace_csv(
    trace: &CurveTrace,
    fd: &FrenetData,
    gft: &GFieldTrace,
    profile: &ComponentProfile,
) -> Result<String> {
    let len = trace.len();
    if fd.len() != len || gft.s_grid.len() != len || profile.coeffs.len() != len {
        return Err(Error::GridMismatch(format!(
            "trace {len}, frames {}, g-field {}, profile {} nodes",
            fd.len(),
            gft.s_grid.len(),
            profile.coeffs.len()
        )));
    }
    let n = trace.dim();
    let kcount = fd.curvatures.first().map_or(0, Vec::len);
    let ccount = profile.coeffs.first().map_or(0, Vec::len);
    let mut header = vec!["s".to_string()];
    header.extend((1..=n).map(|i| format!("x{i}")));
    header.push("G".into());
    header.extend((1..=n).map(|i| format!("xg{i}")));
    header.extend((1..=kcount).map(|i| format!("k{i}")));
    header.extend(coefficient_names(profile.basis, ccount));
    let mut out = header.join(",");
    out.push('\n');
    let mut row = Vec::with_capacity(header.len());
    for k in 0..len {
        row.clear();
        row.push(trace.s_grid()[k]);
        row.extend_from_slice(trace.points()[k].coords());
        row.push(gft.g_primitive[k]);
        row.extend_from_slice(gft.xi_g[k].coords());
        row.extend_from_slice(&fd.curvatures[k]);
        row.extend_from_slice(&profile.coeffs[k]);
        push_row(&mut out, &row);
    }
    Ok(out)
}

pub fn write_trace_csv(
    trace: &CurveTrace,
    fd: &FrenetData,
    gft: &GFieldTrace,
    profile: &ComponentProfile,
    path: &Path,
) -> Result<()> {
    write_atomic(path, &trace_csv(trace, fd, gft, profile)?)
}

/// `s, x1..xn`.
pub fn points_csv(trace: &CurveTrace) -> String {
    let n = trace.dim();
    let mut out = std::iter::once("s".to_string())
        .chain((1..=n).map(|i| format!("x{i}")))
        .collect::<Vec<_>>()
        .join(",");
    out.push('\n');
    for (s, p) in trace.s_grid().iter().zip(trace.points()) {
        let mut row = vec![*s];
        row.extend_from_slice(p.coords());
        push_row(&mut out, &row);
    }
    out
}

/// `s, T1..Tn, N1..Nn, B1_1.., k1..` with one row per node.
pub fn frames_csv(fd: &FrenetData) -> String {
    let n = fd.dim();
    let mut header = vec!["s".to_string()];
    let mut names = vec!["T".to_string(), "N".to_string()];
    names.extend((1..=n - 2).map(|i| format!("B{i}_")));
    for name in &names {
        header.extend((1..=n).map(|j| format!("{name}{j}")));
    }
    let kcount = fd.kind.curvature_count(n);
    header.extend((1..=kcount).map(|i| format!("k{i}")));
    let mut out = header.join(",");
    out.push('\n');
    for k in 0..fd.len() {
        let mut row = vec![fd.s_grid[k]];
        for v in &fd.frames[k] {
            row.extend_from_slice(v.coords());
        }
        row.extend_from_slice(&fd.curvatures[k]);
        push_row(&mut out, &row);
    }
    out
}

/// Pretty JSON with the struct's field order and a trailing newline.
pub fn audit_json(report: &AuditReport) -> Result<String> {
    if report.identities.is_empty() {
        return Err(Error::validation(
            "report",
            "an audit report needs at least one identity",
        ));
    }
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| Error::validation("report", e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn write_audit_json(report: &AuditReport, path: &Path) -> Result<()> {
    write_atomic(path, &audit_json(report)?)
}

/// Parse a table written by this module back into its header and rows.
pub fn read_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::validation("csv", "empty table"))?
        .split(',')
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = line
            .split(',')
            .map(|c| c.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Error::validation(format!("csv row {}", i + 1), e.to_string()))?;
        if row.len() != header.len() {
            return Err(Error::validation(
                format!("csv row {}", i + 1),
                format!("{} cells, header has {}", row.len(), header.len()),
            ));
        }
        rows.push(row);
    }
    Ok((header, rows))
}

/// One line per identity, for terminals.
pub fn audit_text(report: &AuditReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "theorem {}  dim {}  nodes {}  c^2 = {:.6e}",
        report.theorem.id(),
        report.dim,
        report.grid.n,
        report.c_squared
    );
    for id in &report.identities {
        let verdict = serde_json::to_value(id.verdict)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "  {:<16} {:>12.4e}  {}",
            id.label, id.max_residual, verdict
        );
    }
    for note in &report.notes {
        let _ = writeln!(out, "  note: {note}");
    }
    out
}

/// Column count of a trace table for the given frame kind.
pub fn trace_columns(kind: FrameKind, dim: usize) -> usize {
    1 + dim + 1 + dim + kind.curvature_count(dim) + (dim - 1)
}
