//! Minimal SVG scatter plot of Pareto fronts.

use std::fmt::Write;

const W: f64 = 480.0;
const H: f64 = 360.0;
const PAD: f64 = 48.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// One series per `(h, points)`, points as `(yc, zc)`; rented days on the
/// x axis, rentals on the y axis.
pub fn scatter(series: &[(usize, Vec<(i64, i64)>)]) -> String {
    let all = series.iter().flat_map(|(_, p)| p.iter());
    let zmax = all.clone().map(|p| p.1).max().unwrap_or(1).max(1) as f64;
    let ymax = all.map(|p| p.0).max().unwrap_or(1).max(1) as f64;
    let sx = |z: i64| PAD + (z as f64) / zmax * (W - 2.0 * PAD);
    let sy = |y: i64| H - PAD - (y as f64) / ymax * (H - 2.0 * PAD);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (x0, y0) = (PAD, H - PAD);
    let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{}" y2="{y0}" stroke="black"/>"#, W - PAD);
    let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{PAD}" stroke="black"/>"#);
    for z in 0..=zmax as i64 {
        let _ = writeln!(s, r#"<text x="{:.1}" y="{}" text-anchor="middle">{z}</text>"#, sx(z), y0 + 16.0);
    }
    for y in 0..=ymax as i64 {
        let _ = writeln!(s, r#"<text x="{}" y="{:.1}" text-anchor="end">{y}</text>"#, x0 - 6.0, sy(y) + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">rented days (zc)</text>"#, W / 2.0, H - 8.0);
    let _ = writeln!(s, r#"<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">rentals (yc)</text>"#, H / 2.0, H / 2.0);
    for (i, (h, points)) in series.iter().enumerate() {
        let c = COLORS[i % COLORS.len()];
        // later series are drawn smaller so coinciding points stay visible
        let r = 7.0 - 1.5 * (i % 4) as f64;
        for &(y, z) in points {
            let _ = writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="{r}" fill="{c}" fill-opacity="0.8"/>"#, sx(z), sy(y));
        }
        let ly = PAD + 16.0 * i as f64;
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="5" fill="{c}"/>"#, W - PAD - 40.0, ly);
        let _ = writeln!(s, r#"<text x="{}" y="{}">h = {h}</text>"#, W - PAD - 30.0, ly + 4.0);
    }
    s.push_str("</svg>\n");
    s
}
