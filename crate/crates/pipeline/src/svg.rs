//! Scatter-matrix plots as plain SVG.

use std::collections::BTreeSet;
use std::fmt::Write;

const PANEL: f64 = 180.0;
const GAP: f64 = 24.0;
const MARGIN: f64 = 40.0;
const LEGEND_WIDTH: f64 = 180.0;

/// 64-bit FNV-1a.
pub fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Stable colour for a label, independent of which other labels are present.
pub fn label_color(label: &str) -> String {
    let h = fnv1a(label);
    let hue = h % 360;
    let light = 35 + (h >> 16) % 20;
    format!("hsl({hue},65%,{light}%)")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        (-1.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 1.0, hi + 1.0)
    } else {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    }
}

/// Lower-triangle scatter matrix of the first `dims` score columns. Every
/// row becomes one `<g class="marker">` holding its points in all panels.
/// With a single axis, scores are plotted against the label's position in
/// the legend.
pub fn scatter_matrix(
    title: &str,
    axis_names: &[String],
    ids: &[String],
    labels: &[String],
    scores: &[Vec<f64>],
) -> String {
    let dims = axis_names.len().clamp(1, 5);
    let classes: Vec<&String> = labels.iter().collect::<BTreeSet<_>>().into_iter().collect();
    let grid = if dims == 1 { 1 } else { dims - 1 };
    let size = grid as f64 * (PANEL + GAP) - GAP;
    let (width, height) = (
        2.0 * MARGIN + size + LEGEND_WIDTH,
        2.0 * MARGIN + size + 20.0,
    );
    let ranges: Vec<(f64, f64)> = (0..dims)
        .map(|k| extent(scores.iter().map(|r| r[k])))
        .collect();
    let class_range = (-0.5, classes.len() as f64 - 0.5);

    // Panel (row, col) shows x = axis col, y = axis row + 1.
    let panels: Vec<(usize, usize, f64, f64)> = if dims == 1 {
        vec![(0, 0, MARGIN, MARGIN + 20.0)]
    } else {
        (0..grid)
            .flat_map(|r| (0..=r).map(move |c| (r, c)))
            .map(|(r, c)| {
                (
                    r + 1,
                    c,
                    MARGIN + c as f64 * (PANEL + GAP),
                    MARGIN + 20.0 + r as f64 * (PANEL + GAP),
                )
            })
            .collect()
    };
    let place = |v: f64, (lo, hi): (f64, f64)| (v - lo) / (hi - lo) * PANEL;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="22" font-size="14">{}</text>"#,
        escape(title)
    );
    for &(r, c, x0, y0) in &panels {
        let _ = writeln!(
            s,
            r##"<rect class="panel" x="{x0:.1}" y="{y0:.1}" width="{PANEL}" height="{PANEL}" fill="none" stroke="#999"/>"##
        );
        let xlabel = &axis_names[c];
        let ylabel = if dims == 1 {
            "label"
        } else {
            axis_names[r].as_str()
        };
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            x0 + PANEL / 2.0,
            y0 + PANEL + 14.0,
            escape(xlabel)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" transform="rotate(-90 {:.1} {:.1})">{}</text>"#,
            x0 - 8.0,
            y0 + PANEL / 2.0,
            x0 - 8.0,
            y0 + PANEL / 2.0,
            escape(ylabel)
        );
    }
    for ((id, label), row) in ids.iter().zip(labels).zip(scores) {
        let color = label_color(label);
        let _ = write!(
            s,
            r#"<g class="marker" data-id="{}" data-label="{}" fill="{color}">"#,
            escape(id),
            escape(label)
        );
        for &(r, c, x0, y0) in &panels {
            let x = x0 + place(row[c], ranges[c]);
            let yv = if dims == 1 {
                place(
                    classes.iter().position(|&l| l == label).unwrap_or(0) as f64,
                    class_range,
                )
            } else {
                place(row[r], ranges[r])
            };
            let _ = write!(
                s,
                r#"<circle cx="{x:.2}" cy="{:.2}" r="3" fill-opacity="0.75"/>"#,
                y0 + PANEL - yv
            );
        }
        let _ = writeln!(s, "</g>");
    }
    let lx = MARGIN + size + 20.0;
    let _ = writeln!(s, r#"<g class="legend">"#);
    for (i, label) in classes.iter().enumerate() {
        let y = MARGIN + 20.0 + i as f64 * 16.0;
        let _ = writeln!(
            s,
            r#"<rect x="{lx:.1}" y="{:.1}" width="10" height="10" fill="{}"/><text x="{:.1}" y="{:.1}">{}</text>"#,
            y - 9.0,
            label_color(label),
            lx + 16.0,
            y,
            escape(label)
        );
    }
    let _ = writeln!(s, "</g>\n</svg>");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a(""), 0xcbf29ce484222325);
        assert_eq!(fnv1a("a"), 0xaf63dc4c8601ec8c);
        assert_eq!(label_color("heart"), label_color("heart"));
    }

    #[test]
    fn one_marker_per_row() {
        let ids: Vec<String> = (0..7).map(|i| format!("r{i}")).collect();
        let labels: Vec<String> = (0..7).map(|i| ["a", "b<"][i % 2].to_string()).collect();
        for dims in 1..=4 {
            let names: Vec<String> = (1..=dims).map(|k| format!("PC{k}")).collect();
            let scores: Vec<Vec<f64>> = (0..7)
                .map(|i| (0..dims).map(|k| (i * k) as f64).collect())
                .collect();
            let svg = scatter_matrix("t", &names, &ids, &labels, &scores);
            assert_eq!(svg.matches(r#"class="marker""#).count(), 7);
            assert!(svg.contains("b&lt;"));
        }
    }
}
