//! Deterministic SVG charts: series points as cross markers, the model as
//! a polyline sampled at ten points per unit t.
//!
//! Rendering is a pure function of the inputs. Coordinates are written
//! with two decimals, so equal inputs give byte-identical files.

use std::fmt::Write as _;

use expseries::{ExponentialModel, TimeSeries};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 44.0;
/// Arm length of a data cross, in pixels.
const MARKER: f64 = 4.0;
/// Polyline sampling density per unit of t.
const SAMPLES_PER_UNIT: f64 = 10.0;

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, t: f64) -> f64 {
        let w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        MARGIN_LEFT + (t - self.x_min) / (self.x_max - self.x_min) * w
    }

    fn y(&self, v: f64) -> f64 {
        let h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        MARGIN_TOP + (self.y_max - v) / (self.y_max - self.y_min) * h
    }
}

/// Curve sample abscissas: ten per unit across the data range, with the
/// right endpoint always included.
fn curve_grid(x_min: f64, x_max: f64) -> Vec<f64> {
    let steps = ((x_max - x_min) * SAMPLES_PER_UNIT).ceil().max(1.0) as usize;
    let mut grid: Vec<f64> = (0..steps)
        .map(|i| x_min + i as f64 / SAMPLES_PER_UNIT)
        .collect();
    grid.push(x_max);
    grid
}

pub fn render_plot(series: &TimeSeries, model: &ExponentialModel, title: &str) -> String {
    let mut x_min = series.points().first().map(|p| p.t).unwrap_or(0.0);
    let mut x_max = series.points().last().map(|p| p.t).unwrap_or(0.0);
    if x_min == x_max {
        x_min -= 0.5;
        x_max += 0.5;
    }

    let grid = curve_grid(x_min, x_max);
    let curve: Vec<(f64, f64)> = grid.iter().map(|&t| (t, model.evaluate(t).re)).collect();

    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for point in series.points() {
        y_min = y_min.min(point.y);
        y_max = y_max.max(point.y);
    }
    for &(_, v) in &curve {
        y_min = y_min.min(v);
        y_max = y_max.max(v);
    }
    let pad = (0.05 * (y_max - y_min)).max(0.5);
    y_min -= pad;
    y_max += pad;

    let frame = Frame {
        x_min,
        x_max,
        y_min,
        y_max,
    };
    let left = MARGIN_LEFT;
    let right = WIDTH - MARGIN_RIGHT;
    let top = MARGIN_TOP;
    let bottom = HEIGHT - MARGIN_BOTTOM;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        out,
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"16\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\">{}</text>",
        (left + right) / 2.0,
        escape(title)
    );

    // Axes with min/max labels.
    let _ = writeln!(
        out,
        "<path d=\"M{left:.2} {top:.2} L{left:.2} {bottom:.2} L{right:.2} {bottom:.2}\" \
         fill=\"none\" stroke=\"black\"/>"
    );
    let _ = writeln!(
        out,
        "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">"
    );
    let _ = writeln!(
        out,
        "<text x=\"{left:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
        bottom + 18.0,
        label(x_min)
    );
    let _ = writeln!(
        out,
        "<text x=\"{right:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
        bottom + 18.0,
        label(x_max)
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
        left - 8.0,
        bottom + 4.0,
        label(y_min)
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
        left - 8.0,
        top + 4.0,
        label(y_max)
    );
    let _ = writeln!(out, "</g>");

    // Model curve.
    let mut points = String::new();
    for (t, v) in &curve {
        let _ = write!(points, "{:.2},{:.2} ", frame.x(*t), frame.y(*v));
    }
    let _ = writeln!(
        out,
        "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"{}\"/>",
        points.trim_end()
    );

    // Data crosses on top of the curve.
    for point in series.points() {
        let x = frame.x(point.t);
        let y = frame.y(point.y);
        let _ = writeln!(
            out,
            "<path class=\"marker\" d=\"M{:.2} {y:.2} L{:.2} {y:.2} M{x:.2} {:.2} L{x:.2} {:.2}\" \
             stroke=\"black\" stroke-width=\"1.2\"/>",
            x - MARKER,
            x + MARKER,
            y - MARKER,
            y + MARKER
        );
    }

    out.push_str("</svg>\n");
    out
}

/// Axis label: fixed four decimals trimmed, so padded ranges stay tidy.
fn label(x: f64) -> String {
    let mut text = format!("{x:.4}");
    while text.ends_with('0') {
        text.pop();
    }
    if text.ends_with('.') {
        text.pop();
    }
    text
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            ch => out.push(ch),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use expseries::prony::ExpTerm;
    use expseries::{Complex64, DataPoint};

    fn constant_model(value: f64) -> ExponentialModel {
        ExponentialModel::new(vec![ExpTerm::new(
            Complex64::new(value, 0.0),
            Complex64::new(0.0, 0.0),
        )])
        .unwrap()
    }

    fn short_series() -> TimeSeries {
        let points = (1..=5)
            .map(|i| DataPoint::new(i as f64, 10.0 + i as f64))
            .collect();
        TimeSeries::new("short", points).unwrap()
    }

    #[test]
    fn draws_one_marker_per_point_and_one_polyline() {
        let svg = render_plot(&short_series(), &constant_model(12.0), "short");
        assert_eq!(svg.matches("class=\"marker\"").count(), 5);
        assert_eq!(svg.matches("<polyline").count(), 1);
    }

    #[test]
    fn single_point_gets_a_flat_polyline() {
        let series = TimeSeries::new("one", vec![DataPoint::new(3.0, 7.0)]).unwrap();
        let svg = render_plot(&series, &constant_model(7.0), "one");
        assert_eq!(svg.matches("class=\"marker\"").count(), 1);
        let points = svg
            .split("points=\"")
            .nth(1)
            .and_then(|rest| rest.split('"').next())
            .unwrap();
        let ys: Vec<&str> = points
            .split_whitespace()
            .map(|pair| pair.split(',').nth(1).unwrap())
            .collect();
        assert!(ys.len() >= 2, "polyline needs at least two samples");
        assert!(
            ys.iter().all(|&y| y == ys[0]),
            "curve must be flat: {points}"
        );
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = render_plot(&short_series(), &constant_model(12.0), "short");
        let b = render_plot(&short_series(), &constant_model(12.0), "short");
        assert_eq!(a, b);
    }

    #[test]
    fn titles_are_escaped() {
        let svg = render_plot(&short_series(), &constant_model(12.0), "a<b&\"c\"");
        assert!(svg.contains("a&lt;b&amp;&quot;c&quot;"));
    }

    #[test]
    fn curve_grid_is_inclusive() {
        let grid = curve_grid(1.0, 30.0);
        assert_eq!(grid.len(), 291);
        assert_eq!(*grid.last().unwrap(), 30.0);
        let flat = curve_grid(2.5, 3.5);
        assert_eq!(flat.first().copied(), Some(2.5));
        assert_eq!(flat.last().copied(), Some(3.5));
    }
}
