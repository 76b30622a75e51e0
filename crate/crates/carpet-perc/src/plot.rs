//! Minimal SVG scatter plots: point series with per-series markers, fitted
//! curves as polylines, framed axes with tick labels, and a legend. The
//! output is plain SVG 1.1 text with no external dependencies.

use crate::error::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 42.0;
const MARGIN_BOTTOM: f64 = 58.0;

const PALETTE: [&str; 5] = ["#1f6feb", "#d0342c", "#2da44e", "#8250df", "#bf8700"];

/// A scatter series drawn with one marker shape per series index.
#[derive(Clone, Debug)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// A smooth curve drawn as a polyline through pre-sampled points.
#[derive(Clone, Debug)]
pub struct Curve {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, Default)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    pub curves: Vec<Curve>,
}

/// Sample `f` at `n` evenly spaced x values across `[x_min, x_max]`,
/// dropping non-finite results.
pub fn sample_curve(f: impl Fn(f64) -> f64, x_min: f64, x_max: f64, n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let x = x_min + (x_max - x_min) * i as f64 / (n - 1).max(1) as f64;
            (x, f(x))
        })
        .filter(|&(_, y)| y.is_finite())
        .collect()
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Round a raw interval up to a "nice" 1/2/5 × 10^k step.
fn nice_step(raw: f64) -> f64 {
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let n = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    n * mag
}

fn ticks(min: f64, max: f64) -> Vec<f64> {
    let step = nice_step((max - min) / 5.0);
    let mut t = (min / step).ceil() * step;
    let mut out = Vec::new();
    while t <= max + step * 1e-9 {
        // snap values like 0.30000000000000004 back onto the grid
        out.push((t / step).round() * step);
        t += step;
    }
    out
}

fn format_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

fn data_range(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for v in values.filter(|v| v.is_finite()) {
        min = min.min(v);
        max = max.max(v);
    }
    (min <= max).then_some((min, max))
}

fn pad_range((min, max): (f64, f64)) -> (f64, f64) {
    if min == max {
        let pad = if min == 0.0 { 0.5 } else { min.abs() * 0.1 };
        (min - pad, max + pad)
    } else {
        let pad = (max - min) * 0.06;
        (min - pad, max + pad)
    }
}

fn marker(shape: usize, x: f64, y: f64, color: &str) -> String {
    match shape % 4 {
        0 => format!(r#"<circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="{color}"/>"#),
        1 => format!(
            r#"<rect x="{:.2}" y="{:.2}" width="7" height="7" fill="{color}"/>"#,
            x - 3.5,
            y - 3.5
        ),
        2 => format!(
            r#"<polygon points="{x:.2},{:.2} {:.2},{y:.2} {x:.2},{:.2} {:.2},{y:.2}" fill="{color}"/>"#,
            y - 4.5,
            x + 4.5,
            y + 4.5,
            x - 4.5
        ),
        _ => format!(
            r#"<polygon points="{x:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{color}"/>"#,
            y - 4.5,
            x + 4.0,
            y + 3.5,
            x - 4.0,
            y + 3.5
        ),
    }
}

/// Render a plot to an SVG string. Errors when there is nothing to draw.
pub fn render_svg(plot: &Plot) -> Result<String> {
    let xs = plot
        .series
        .iter()
        .flat_map(|s| s.points.iter())
        .chain(plot.curves.iter().flat_map(|c| c.points.iter()))
        .map(|&(x, _)| x);
    let ys = plot
        .series
        .iter()
        .flat_map(|s| s.points.iter())
        .chain(plot.curves.iter().flat_map(|c| c.points.iter()))
        .map(|&(_, y)| y);
    let (x_min, x_max) = pad_range(
        data_range(xs).ok_or_else(|| Error::InsufficientData("plot has no points".into()))?,
    );
    let (y_min, y_max) = pad_range(data_range(ys).expect("x range exists, so y range does"));

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let py = |y: f64| MARGIN_TOP + (y_max - y) / (y_max - y_min) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" "#,
            r#"viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
            "\n"
        ),
        w = WIDTH,
        h = HEIGHT
    ));
    svg.push_str(&format!(
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>{}"#,
        "\n"
    ));

    // gridlines and tick labels
    for t in ticks(x_min, x_max) {
        let x = px(t);
        svg.push_str(&format!(
            concat!(
                r##"<line x1="{x:.2}" y1="{top}" x2="{x:.2}" y2="{bot}" stroke="#dddddd"/>"##,
                r#"<text x="{x:.2}" y="{ly:.2}" text-anchor="middle">{label}</text>"#,
                "\n"
            ),
            x = x,
            top = MARGIN_TOP,
            bot = MARGIN_TOP + plot_h,
            ly = MARGIN_TOP + plot_h + 18.0,
            label = format_tick(t)
        ));
    }
    for t in ticks(y_min, y_max) {
        let y = py(t);
        svg.push_str(&format!(
            concat!(
                r##"<line x1="{left}" y1="{y:.2}" x2="{right:.2}" y2="{y:.2}" stroke="#dddddd"/>"##,
                r#"<text x="{lx}" y="{ty:.2}" text-anchor="end">{label}</text>"#,
                "\n"
            ),
            left = MARGIN_LEFT,
            right = MARGIN_LEFT + plot_w,
            y = y,
            lx = MARGIN_LEFT - 8.0,
            ty = y + 4.0,
            label = format_tick(t)
        ));
    }

    // frame
    svg.push_str(&format!(
        "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{plot_w}\" height=\"{plot_h}\" fill=\"none\" stroke=\"black\"/>\n"
    ));

    // curves first so markers draw on top
    let n_series = plot.series.len();
    for (i, curve) in plot.curves.iter().enumerate() {
        let color = PALETTE[(n_series + i) % PALETTE.len()];
        let pts: Vec<String> = curve
            .points
            .iter()
            .filter(|&&(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            pts.join(" ")
        ));
    }
    for (i, series) in plot.series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        for &(x, y) in series
            .points
            .iter()
            .filter(|&&(x, y)| x.is_finite() && y.is_finite())
        {
            svg.push_str(&marker(i, px(x), py(y), color));
            svg.push('\n');
        }
    }

    // titles and axis labels
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        escape(&plot.title)
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 14.0,
        escape(&plot.x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">{}</text>\n",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        escape(&plot.y_label)
    ));

    // legend
    let mut entries: Vec<(String, &str, Option<usize>)> = Vec::new();
    for (i, s) in plot.series.iter().enumerate() {
        entries.push((s.label.clone(), PALETTE[i % PALETTE.len()], Some(i)));
    }
    for (i, c) in plot.curves.iter().enumerate() {
        entries.push((
            c.label.clone(),
            PALETTE[(n_series + i) % PALETTE.len()],
            None,
        ));
    }
    for (row, (label, color, shape)) in entries.iter().filter(|(l, _, _)| !l.is_empty()).enumerate()
    {
        let y = MARGIN_TOP + 16.0 + row as f64 * 18.0;
        let x = MARGIN_LEFT + plot_w - 150.0;
        match shape {
            Some(s) => svg.push_str(&marker(*s, x, y - 4.0, color)),
            None => svg.push_str(&format!(
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="1.5"/>"#,
                x - 6.0,
                y - 4.0,
                x + 6.0,
                y - 4.0
            )),
        }
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{y:.2}\">{}</text>\n",
            x + 12.0,
            escape(label)
        ));
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo_plot() -> Plot {
        Plot {
            title: "thresholds".into(),
            x_label: "D".into(),
            y_label: "Pc".into(),
            series: vec![Series {
                label: "measured".into(),
                points: vec![(1.5, 0.8), (1.7, 0.65), (1.9, 0.5)],
            }],
            curves: vec![Curve {
                label: "fit".into(),
                points: sample_curve(|x| 1.0 - 0.59 * (x - 1.0), 1.4, 2.0, 50),
            }],
        }
    }

    #[test]
    fn renders_markers_curve_and_labels() {
        let svg = render_svg(&demo_plot()).unwrap();
        assert!(svg.starts_with("<svg "));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), 3 + 1); // points + legend marker
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains(">thresholds</text>"));
        assert!(svg.contains(">Pc</text>"));
        assert!(svg.contains(">measured</text>"));
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn empty_plot_is_an_error() {
        assert!(render_svg(&Plot::default()).is_err());
    }

    #[test]
    fn single_point_does_not_degenerate() {
        let plot = Plot {
            series: vec![Series {
                label: String::new(),
                points: vec![(0.5, 0.5)],
            }],
            ..Plot::default()
        };
        let svg = render_svg(&plot).unwrap();
        assert!(!svg.contains("NaN"));
        assert!(svg.contains("<circle"));
    }

    #[test]
    fn labels_are_xml_escaped() {
        let plot = Plot {
            title: "a < b & c".into(),
            series: vec![Series {
                label: String::new(),
                points: vec![(0.0, 1.0), (1.0, 0.0)],
            }],
            ..Plot::default()
        };
        let svg = render_svg(&plot).unwrap();
        assert!(svg.contains("a &lt; b &amp; c"));
    }

    #[test]
    fn tick_values_are_nice() {
        let t = ticks(0.3, 0.95);
        assert!(t
            .iter()
            .all(|v| (v * 10.0 - (v * 10.0).round()).abs() < 1e-9));
        assert!(t.len() >= 3 && t.len() <= 9, "{t:?}");
        assert_eq!(format_tick(0.5), "0.5");
        assert_eq!(format_tick(2.0), "2");
    }
}
