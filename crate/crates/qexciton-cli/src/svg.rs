//! Minimal SVG line plots for computed scenarios.
//!
//! One polyline per file on a fixed canvas with plain axes — a quick
//! visual check of the CSV data, not a styled figure.

use crate::scenario::ScenarioProduct;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 45.0;

/// Renders the product's rows as a standalone SVG document.
pub fn render_svg(product: &ScenarioProduct) -> String {
    let xs: Vec<f64> = product.rows.iter().map(|r| r.0).collect();
    let ys: Vec<f64> = product.rows.iter().map(|r| r.1).collect();
    let x_min = xs.first().copied().unwrap_or(0.0);
    let x_max = xs.last().copied().unwrap_or(1.0);
    let y_low = ys.iter().copied().fold(f64::INFINITY, f64::min).min(0.0);
    let y_high = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (y_min, y_max) = if !(y_low.is_finite() && y_high.is_finite()) || y_low == y_high {
        (0.0, 1.0)
    } else {
        (y_low, y_high)
    };
    let x_span = (x_max - x_min).max(f64::MIN_POSITIVE);
    let y_span = (y_max - y_min).max(f64::MIN_POSITIVE);
    let to_px = |x: f64, y: f64| {
        let px = MARGIN + (x - x_min) / x_span * (WIDTH - 2.0 * MARGIN);
        let py = HEIGHT - MARGIN - (y - y_min) / y_span * (HEIGHT - 2.0 * MARGIN);
        (px, py)
    };

    let mut points = String::with_capacity(product.rows.len() * 14);
    for (&x, &y) in xs.iter().zip(ys.iter()) {
        let (px, py) = to_px(x, y);
        points.push_str(&format!("{px:.2},{py:.2} "));
    }
    let axis_color = "#444444";
    let (x0, y0) = (MARGIN, HEIGHT - MARGIN);
    let value_label = product.header.split(',').nth(1).unwrap_or("value");
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>\n",
            "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"{ac}\"/>\n",
            "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{ym}\" stroke=\"{ac}\"/>\n",
            "<text x=\"{tx}\" y=\"{ty}\" font-size=\"13\" fill=\"{ac}\">{xl} (eV): {xmin:.6} to {xmax:.6}</text>\n",
            "<text x=\"{tx2}\" y=\"{ty2}\" font-size=\"13\" fill=\"{ac}\">{yl}: {ymin:.6e} to {ymaxv:.6e}</text>\n",
            "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.2\" points=\"{pts}\"/>\n",
            "</svg>\n",
        ),
        w = WIDTH,
        h = HEIGHT,
        x0 = x0,
        y0 = y0,
        x1 = WIDTH - MARGIN,
        ym = MARGIN,
        ac = axis_color,
        tx = MARGIN,
        ty = HEIGHT - 12.0,
        xl = "omega",
        xmin = x_min,
        xmax = x_max,
        tx2 = MARGIN,
        ty2 = 20.0,
        yl = value_label,
        ymin = y_min,
        ymaxv = y_max,
        pts = points.trim_end(),
    )
}
