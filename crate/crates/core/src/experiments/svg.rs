//! Minimal SVG plots: a histogram with a density overlay, and a density heatmap.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiments::grid::DensityGrid;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;

/// Normalized histogram of `samples` on `[lo, hi]` with `density` drawn on top.
pub fn histogram_svg(samples: &[f64], lo: f64, hi: f64, bins: usize, density: impl Fn(f64) -> f64, title: &str) -> Result<String> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    if !(lo < hi) || bins == 0 {
        return Err(Error::InvalidArgument(format!("bad histogram range [{lo}, {hi}] with {bins} bins")));
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &s in samples {
        if s >= lo && s < hi {
            counts[(((s - lo) / width) as usize).min(bins - 1)] += 1;
        }
    }
    let heights: Vec<f64> = counts.iter().map(|c| *c as f64 / (samples.len() as f64 * width)).collect();
    let curve: Vec<(f64, f64)> = (0..=4 * bins)
        .map(|k| {
            let x = lo + (hi - lo) * k as f64 / (4 * bins) as f64;
            (x, density(x))
        })
        .collect();
    let ymax = heights
        .iter()
        .copied()
        .chain(curve.iter().map(|p| p.1).filter(|y| y.is_finite()))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE)
        * 1.05;
    let sx = |x: f64| MARGIN + (x - lo) / (hi - lo) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - y.clamp(0.0, ymax) / ymax * (HEIGHT - 2.0 * MARGIN);

    let mut out = header(title);
    for (k, h) in heights.iter().enumerate() {
        let x0 = sx(lo + k as f64 * width);
        let _ = writeln!(
            out,
            r##"<rect x="{x0:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#9ecae1" stroke="none"/>"##,
            sy(*h),
            sx(lo + (k + 1) as f64 * width) - x0,
            sy(0.0) - sy(*h)
        );
    }
    let path: Vec<String> = curve.iter().filter(|p| p.1.is_finite()).map(|(x, y)| format!("{:.2},{:.2}", sx(*x), sy(*y))).collect();
    let _ = writeln!(out, r##"<polyline points="{}" fill="none" stroke="#d62728" stroke-width="1.5"/>"##, path.join(" "));
    axes(&mut out, lo, hi, ymax);
    out.push_str("</svg>\n");
    Ok(out)
}

/// Heatmap of a density grid, cells shaded linearly from 0 to the grid maximum.
pub fn heatmap_svg(grid: &DensityGrid, title: &str) -> Result<String> {
    grid.check()?;
    let spec = grid.spec;
    let vmax = grid.rho.iter().copied().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let cw = (WIDTH - 2.0 * MARGIN) / spec.nx as f64;
    let ch = (HEIGHT - 2.0 * MARGIN) / spec.ny as f64;
    let mut out = header(title);
    for (index, rho) in grid.rho.iter().enumerate() {
        let (ix, iy) = spec.cell(index);
        let shade = 255 - (255.0 * (rho / vmax).clamp(0.0, 1.0)).round() as u8;
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="rgb(255,{shade},{shade})"/>"#,
            MARGIN + ix as f64 * cw,
            HEIGHT - MARGIN - (iy + 1) as f64 * ch,
            cw + 0.05,
            ch + 0.05
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{}" font-size="11">Re [{}, {}], Im [{}, {}], max {:.4}</text>"#,
        HEIGHT - 12.0,
        spec.re_min,
        spec.re_max,
        spec.im_min,
        spec.im_max,
        vmax
    );
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn write_svg(path: &Path, svg: &str) -> Result<()> {
    std::fs::write(path, svg)?;
    Ok(())
}

fn header(title: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{MARGIN}" y="24" font-size="14">{}</text>"#, escape(title));
    out
}

fn axes(out: &mut String, lo: f64, hi: f64, ymax: f64) {
    let (x0, x1, y0, y1) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
    let _ = writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#);
    let _ = writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#);
    let _ = writeln!(out, r#"<text x="{x0}" y="{}" font-size="11">{lo:.3}</text>"#, y0 + 14.0);
    let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="11">{hi:.3}</text>"#, x1 - 30.0, y0 + 14.0);
    let _ = writeln!(out, r#"<text x="2" y="{}" font-size="11">{ymax:.3}</text>"#, y1 + 4.0);
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
