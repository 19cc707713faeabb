use std::fmt::Write;

/// 17 significant digits, so doubles round-trip.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV text with `#`-prefixed metadata lines, a header row and rows of reals;
/// `None` cells are left empty.
pub fn table(meta: &[(String, String)], columns: &[&str], rows: &[Vec<Option<f64>>]) -> String {
    let mut out = String::new();
    for (k, v) in meta {
        let _ = writeln!(out, "# {k}: {v}");
    }
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| c.map(real).unwrap_or_default()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Parses the numeric rows of a file written by [`table`].
pub fn parse(text: &str) -> (Vec<String>, Vec<Vec<Option<f64>>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().map(|h| h.split(',').map(str::to_string).collect()).unwrap_or_default();
    let rows = lines.map(|l| l.split(',').map(|c| c.parse().ok()).collect()).collect();
    (header, rows)
}
