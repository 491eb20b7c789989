//! Minimal deterministic SVG renderer for the experiment CSV tables.
//! Presentation only: nothing downstream reads the SVG back.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PlotStyle {
    /// Polyline per numeric column against the first column.
    Line,
    /// Markers only.
    Scatter,
    /// Detection rate against false-alarm rate on a log x axis.
    Roc,
}

#[derive(Debug)]
pub struct PlotError(pub String);

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 50.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

struct Series {
    name: String,
    points: Vec<(f64, f64)>,
}

type Table = (Vec<String>, Vec<Vec<Option<f64>>>);

fn parse_table(csv: &str) -> Result<Table, PlotError> {
    let mut lines = csv.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| PlotError("empty table".into()))?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let mut rows = Vec::new();
    for line in lines {
        let row: Vec<Option<f64>> = line
            .split(',')
            .map(|cell| cell.trim().parse::<f64>().ok())
            .collect();
        if row.len() != header.len() {
            return Err(PlotError(format!(
                "row has {} cells, header has {}",
                row.len(),
                header.len()
            )));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(PlotError("table has no data rows".into()));
    }
    Ok((header, rows))
}

fn column_usable(rows: &[Vec<Option<f64>>], idx: usize) -> bool {
    rows.iter().any(|r| r[idx].is_some())
}

/// Renders a CSV table to a standalone SVG string. Byte-deterministic for
/// identical inputs.
pub fn render_svg(csv: &str, style: PlotStyle, title: &str) -> Result<String, PlotError> {
    let (header, rows) = parse_table(csv)?;

    let (x_label, y_label, series, log_x) = match style {
        PlotStyle::Roc => {
            let fa = header
                .iter()
                .position(|h| h == "false_alarm_rate")
                .ok_or_else(|| PlotError("ROC table needs a false_alarm_rate column".into()))?;
            let dr = header
                .iter()
                .position(|h| h == "detection_rate")
                .ok_or_else(|| PlotError("ROC table needs a detection_rate column".into()))?;
            let points: Vec<(f64, f64)> = rows
                .iter()
                .filter_map(|r| match (r[fa], r[dr]) {
                    // Zero false-alarm points cannot sit on a log axis.
                    (Some(x), Some(y)) if x > 0.0 => Some((x.log10(), y)),
                    _ => None,
                })
                .collect();
            if points.is_empty() {
                return Err(PlotError("no positive false-alarm points to plot".into()));
            }
            (
                "log10(false alarm rate)".to_string(),
                "detection rate".to_string(),
                vec![Series {
                    name: "roc".into(),
                    points,
                }],
                true,
            )
        }
        PlotStyle::Line | PlotStyle::Scatter => {
            if header.len() < 2 {
                return Err(PlotError("need at least two columns".into()));
            }
            if !column_usable(&rows, 0) {
                return Err(PlotError("first column is not numeric".into()));
            }
            let mut series = Vec::new();
            for (idx, name) in header.iter().enumerate().skip(1) {
                if !column_usable(&rows, idx) {
                    continue;
                }
                let points: Vec<(f64, f64)> = rows
                    .iter()
                    .filter_map(|r| match (r[0], r[idx]) {
                        (Some(x), Some(y)) => Some((x, y)),
                        _ => None,
                    })
                    .collect();
                if !points.is_empty() {
                    series.push(Series {
                        name: name.clone(),
                        points,
                    });
                }
            }
            if series.is_empty() {
                return Err(PlotError("no numeric series to plot".into()));
            }
            (header[0].clone(), "value".to_string(), series, false)
        }
    };

    let (mut x_min, mut x_max, mut y_min, mut y_max) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for s in &series {
        for &(x, y) in &s.points {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    if x_max == x_min {
        x_max = x_min + 1.0;
    }
    if y_max == y_min {
        y_max = y_min + 1.0;
    }
    let pad_y = 0.05 * (y_max - y_min);
    y_min -= pad_y;
    y_max += pad_y;

    let to_px = |x: f64, y: f64| -> (f64, f64) {
        let px = MARGIN_L + (x - x_min) / (x_max - x_min) * (WIDTH - MARGIN_L - MARGIN_R);
        let py = HEIGHT - MARGIN_B - (y - y_min) / (y_max - y_min) * (HEIGHT - MARGIN_T - MARGIN_B);
        (px, py)
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );

    // Axes.
    let (x0, y0) = (MARGIN_L, HEIGHT - MARGIN_B);
    let _ = writeln!(
        svg,
        r#"<line x1="{x0}" y1="{y0}" x2="{}" y2="{y0}" stroke="black"/>"#,
        WIDTH - MARGIN_R
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN_T}" stroke="black"/>"#
    );
    for i in 0..=5 {
        let fx = x_min + (x_max - x_min) * i as f64 / 5.0;
        let fy = y_min + (y_max - y_min) * i as f64 / 5.0;
        let (px, _) = to_px(fx, y_min);
        let (_, py) = to_px(x_min, fy);
        let _ = writeln!(
            svg,
            r#"<line x1="{px}" y1="{y0}" x2="{px}" y2="{}" stroke="black"/>"#,
            y0 + 4.0
        );
        let x_text = if log_x {
            format!("{:.2}", fx)
        } else {
            format!("{:.4}", fx)
        };
        let _ = writeln!(
            svg,
            r#"<text x="{px}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{x_text}</text>"#,
            y0 + 18.0
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{py}" x2="{x0}" y2="{py}" stroke="black"/>"#,
            x0 - 4.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{:.4}</text>"#,
            x0 - 8.0,
            py + 4.0,
            fy
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
        (MARGIN_L + WIDTH - MARGIN_R) / 2.0,
        HEIGHT - 12.0,
        escape(&x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        (MARGIN_T + HEIGHT - MARGIN_B) / 2.0,
        (MARGIN_T + HEIGHT - MARGIN_B) / 2.0,
        escape(&y_label)
    );

    // Series.
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if matches!(style, PlotStyle::Line | PlotStyle::Roc) {
            let mut path = String::new();
            for (j, &(x, y)) in s.points.iter().enumerate() {
                let (px, py) = to_px(x, y);
                let _ = write!(path, "{}{px:.2},{py:.2} ", if j == 0 { "M" } else { "L" });
            }
            let _ = writeln!(
                svg,
                r#"<path d="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                path.trim_end()
            );
        }
        for &(x, y) in &s.points {
            let (px, py) = to_px(x, y);
            let _ = writeln!(
                svg,
                r#"<circle cx="{px:.2}" cy="{py:.2}" r="2.2" fill="{color}"/>"#
            );
        }
        let ly = MARGIN_T + 16.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<rect x="{}" y="{}" width="12" height="3" fill="{color}"/>"#,
            WIDTH - MARGIN_R - 150.0,
            ly - 4.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{ly}" font-family="sans-serif" font-size="12">{}</text>"#,
            WIDTH - MARGIN_R - 132.0,
            escape(&s.name)
        );
    }
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
