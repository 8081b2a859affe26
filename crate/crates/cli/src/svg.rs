//! Minimal SVG line plots; the CSVs remain the contract, these are for
//! eyeballing.

use anyhow::Result;

const W: f64 = 640.0;
const H: f64 = 420.0;
const MARGIN: f64 = 50.0;

fn polyline(points: &[(f64, f64)]) -> String {
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let (x0, x1) = (
        xs.iter().cloned().fold(f64::INFINITY, f64::min),
        xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let (y0, y1) = (
        ys.iter().cloned().fold(f64::INFINITY, f64::min),
        ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0).max(1e-300) * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - (y - y0) / (y1 - y0).max(1e-300) * (H - 2.0 * MARGIN);
    points
        .iter()
        .map(|&(x, y)| format!("{:.1},{:.1}", sx(x), sy(y)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn frame(body: &str, x_label: &str, y_label: &str) -> String {
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<g stroke=\"#888\" stroke-width=\"1\">",
            "<line x1=\"{m}\" y1=\"{hm}\" x2=\"{wm}\" y2=\"{hm}\"/>",
            "<line x1=\"{m}\" y1=\"{m}\" x2=\"{m}\" y2=\"{hm}\"/></g>\n",
            "<text x=\"{cx}\" y=\"{ly}\" font-size=\"13\" text-anchor=\"middle\">{xl}</text>\n",
            "<text x=\"14\" y=\"{cy}\" font-size=\"13\" text-anchor=\"middle\" ",
            "transform=\"rotate(-90 14 {cy})\">{yl}</text>\n",
            "{body}\n</svg>\n"
        ),
        w = W,
        h = H,
        m = MARGIN,
        hm = H - MARGIN,
        wm = W - MARGIN,
        cx = W / 2.0,
        cy = H / 2.0,
        ly = H - 12.0,
        xl = x_label,
        yl = y_label,
        body = body,
    )
}

/// Log-log polyline plot (non-positive samples are skipped).
pub fn log_log_plot(series: &[(f64, f64)], x_label: &str, y_label: &str) -> String {
    let pts: Vec<(f64, f64)> = series
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && y.is_finite())
        .map(|&(x, y)| (x.log10(), y.log10()))
        .collect();
    let body = format!(
        "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"{}\"/>",
        polyline(&pts)
    );
    frame(
        &body,
        &format!("log10 {x_label}"),
        &format!("log10 {y_label}"),
    )
}

/// Deviation-vs-N plot from a scan CSV (`N,S_N,deviation,running_max`).
pub fn scan_plot(csv: &str) -> Result<String> {
    let mut dev = Vec::new();
    let mut running = Vec::new();
    for line in csv.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() < 4 {
            continue;
        }
        let n: f64 = cols[0].parse()?;
        dev.push((n, cols[2].parse::<f64>()?));
        running.push((n, cols[3].parse::<f64>()?));
    }
    let body = format!(
        concat!(
            "<polyline fill=\"none\" stroke=\"#bbb\" stroke-width=\"1\" points=\"{}\"/>\n",
            "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\"{}\"/>"
        ),
        polyline(&dev),
        polyline(&running)
    );
    Ok(frame(&body, "N", "|S_N - f(x)| (grey), running max (red)"))
}
