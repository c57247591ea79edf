//! SVG convergence plot of a summary: mean return per episode, a shaded
//! ±1 std band across seeds, and a trailing moving average.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::experiment::{read_summary, SummaryRow};
use crate::{HarnessError, Result};

pub const MOVING_AVERAGE_WINDOW: usize = 100;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;

/// Trailing mean; the first `window − 1` points average what is available.
pub fn moving_average(values: &[f64], window: usize) -> Vec<f64> {
    let window = window.max(1);
    let mut sum = 0.0;
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            sum += v;
            if i >= window {
                sum -= values[i - window];
            }
            sum / (i + 1).min(window) as f64
        })
        .collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        LEFT + (v - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        HEIGHT - BOTTOM - (v - self.y0) / (self.y1 - self.y0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn points(frame: &Frame, xs: impl Iterator<Item = f64>, ys: &[f64]) -> String {
    let mut out = String::new();
    for (x, y) in xs.zip(ys) {
        write!(out, "{:.2},{:.2} ", frame.x(x), frame.y(*y)).unwrap();
    }
    out.pop();
    out
}

pub fn render_svg(rows: &[SummaryRow], title: &str) -> Result<String> {
    if rows.len() < 2 {
        return Err(HarnessError::EmptySummary(rows.len()));
    }
    let episodes: Vec<f64> = rows.iter().map(|r| r.episode as f64).collect();
    let mean: Vec<f64> = rows.iter().map(|r| r.mean_return).collect();
    let upper: Vec<f64> = rows.iter().map(|r| r.mean_return + r.std_return).collect();
    let lower: Vec<f64> = rows.iter().map(|r| r.mean_return - r.std_return).collect();
    let smooth = moving_average(&mean, MOVING_AVERAGE_WINDOW);

    let lo = lower.iter().chain(&smooth).copied().fold(f64::INFINITY, f64::min);
    let hi = upper.iter().chain(&smooth).copied().fold(f64::NEG_INFINITY, f64::max);
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(HarnessError::Config("summary contains non-finite values".into()));
    }
    let pad = if hi > lo { 0.05 * (hi - lo) } else { 0.5 };
    let frame = Frame {
        x0: episodes[0],
        x1: episodes[episodes.len() - 1].max(episodes[0] + 1.0),
        y0: lo - pad,
        y1: hi + pad,
    };

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    )
    .unwrap();

    let (left, right, top, bottom) = (LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM);
    writeln!(svg, r#"<g class="axes" stroke="black">"#).unwrap();
    writeln!(svg, r#"<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}"/>"#).unwrap();
    writeln!(svg, r#"<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}"/>"#).unwrap();
    writeln!(svg, "</g>").unwrap();
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let ex = frame.x0 + t * (frame.x1 - frame.x0);
        let px = frame.x(ex);
        writeln!(
            svg,
            r#"<line x1="{px:.2}" y1="{bottom}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{:.0}</text>"#,
            bottom + 5.0,
            bottom + 18.0,
            ex
        )
        .unwrap();
        let ry = frame.y0 + t * (frame.y1 - frame.y0);
        let py = frame.y(ry);
        writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{left}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{:.2}</text>"#,
            left - 5.0,
            left - 8.0,
            py + 4.0,
            ry
        )
        .unwrap();
    }
    writeln!(
        svg,
        r#"<text class="x-label" x="{:.2}" y="{:.2}" text-anchor="middle">Episode</text>"#,
        (left + right) / 2.0,
        HEIGHT - 15.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text class="y-label" x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">Return (mean ± 1 std across seeds)</text>"#,
        (top + bottom) / 2.0,
        (top + bottom) / 2.0
    )
    .unwrap();

    let rev_episodes: Vec<f64> = episodes.iter().rev().copied().collect();
    let rev_lower: Vec<f64> = lower.iter().rev().copied().collect();
    writeln!(
        svg,
        r##"<polygon class="std-band" fill="#1f77b4" fill-opacity="0.2" stroke="none" points="{} {}"/>"##,
        points(&frame, episodes.iter().copied(), &upper),
        points(&frame, rev_episodes.into_iter(), &rev_lower)
    )
    .unwrap();
    writeln!(
        svg,
        r##"<polyline class="mean" fill="none" stroke="#1f77b4" stroke-width="1" points="{}"/>"##,
        points(&frame, episodes.iter().copied(), &mean)
    )
    .unwrap();
    writeln!(
        svg,
        r##"<polyline class="moving-average" fill="none" stroke="#d62728" stroke-width="2" points="{}"/>"##,
        points(&frame, episodes.iter().copied(), &smooth)
    )
    .unwrap();

    let lx = right - 200.0;
    writeln!(
        svg,
        r##"<g class="legend"><line x1="{lx}" y1="{t}" x2="{}" y2="{t}" stroke="#1f77b4"/><text x="{}" y="{}">mean return</text><line x1="{lx}" y1="{t2}" x2="{}" y2="{t2}" stroke="#d62728" stroke-width="2"/><text x="{}" y="{}">moving average ({MOVING_AVERAGE_WINDOW})</text></g>"##,
        lx + 20.0,
        lx + 25.0,
        TOP + 14.0,
        lx + 20.0,
        lx + 25.0,
        TOP + 30.0,
        t = TOP + 10.0,
        t2 = TOP + 26.0,
    )
    .unwrap();
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn emit_plot(summary_csv: &Path, svg_path: &Path, title: &str) -> Result<()> {
    let rows = read_summary(summary_csv)?;
    let svg = render_svg(&rows, title)?;
    fs::write(svg_path, svg).map_err(|source| HarnessError::Unwritable {
        path: svg_path.to_owned(),
        source,
    })
}
