//! Static SVG line charts for depth tables and noise sweeps.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::noise::McRow;
use crate::report::DepthRow;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 200.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 50.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    /// Half-height of the error bar.
    pub err: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineChart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Roughly five round tick values covering `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = (hi - lo).max(f64::EPSILON);
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| span / s <= 6.0)
        .unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + step * 1e-9 {
        out.push(t);
        t += step;
    }
    out
}

fn fmt_tick(v: f64) -> String {
    if v.abs() >= 1.0 && v.fract().abs() < 1e-9 {
        format!("{v:.0}")
    } else {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

impl LineChart {
    fn bounds(&self) -> Option<(f64, f64, f64, f64)> {
        let pts = self.series.iter().flat_map(|s| &s.points);
        let mut b: Option<(f64, f64, f64, f64)> = None;
        for p in pts {
            let e = p.err.unwrap_or(0.0);
            b = Some(match b {
                None => (p.x, p.x, p.y - e, p.y + e),
                Some((x0, x1, y0, y1)) => {
                    (x0.min(p.x), x1.max(p.x), y0.min(p.y - e), y1.max(p.y + e))
                }
            });
        }
        b
    }

    pub fn to_svg(&self) -> String {
        let (mut x0, mut x1, mut y0, mut y1) = self.bounds().unwrap_or((0.0, 1.0, 0.0, 1.0));
        if (x1 - x0).abs() < f64::EPSILON {
            x0 -= 0.5;
            x1 += 0.5;
        }
        let pad = ((y1 - y0) * 0.05).max(1e-9);
        y0 -= pad;
        y1 += pad;
        let pw = WIDTH - MARGIN_L - MARGIN_R;
        let ph = HEIGHT - MARGIN_T - MARGIN_B;
        let sx = |x: f64| MARGIN_L + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| MARGIN_T + (1.0 - (y - y0) / (y1 - y0)) * ph;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
            MARGIN_L + pw / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            s,
            r#"<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        );
        for t in ticks(x0, x1) {
            let x = sx(t);
            let _ = writeln!(
                s,
                r#"<line x1="{x:.1}" y1="{:.1}" x2="{x:.1}" y2="{:.1}" stroke="black"/><text x="{x:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
                MARGIN_T + ph,
                MARGIN_T + ph + 5.0,
                MARGIN_T + ph + 18.0,
                fmt_tick(t)
            );
        }
        for t in ticks(y0, y1) {
            let y = sy(t);
            let _ = writeln!(
                s,
                r##"<line x1="{MARGIN_L}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#ddd"/><text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"##,
                MARGIN_L + pw,
                MARGIN_L - 6.0,
                y + 4.0,
                fmt_tick(t)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            MARGIN_L + pw / 2.0,
            HEIGHT - 12.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
            MARGIN_T + ph / 2.0,
            MARGIN_T + ph / 2.0,
            escape(&self.y_label)
        );

        for (i, series) in self.series.iter().enumerate() {
            let color = COLORS[i % COLORS.len()];
            let pts: Vec<String> = series
                .points
                .iter()
                .map(|p| format!("{:.1},{:.1}", sx(p.x), sy(p.y)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline class="series" fill="none" stroke="{color}" stroke-width="2" points="{}"><title>{}</title></polyline>"#,
                pts.join(" "),
                escape(&series.name)
            );
            for p in &series.points {
                let (x, y) = (sx(p.x), sy(p.y));
                let _ = writeln!(
                    s,
                    r#"<circle cx="{x:.1}" cy="{y:.1}" r="3" fill="{color}"/>"#
                );
                if let Some(e) = p.err {
                    let _ = writeln!(
                        s,
                        r#"<line class="errorbar" x1="{x:.1}" y1="{:.1}" x2="{x:.1}" y2="{:.1}" stroke="{color}"/>"#,
                        sy(p.y - e),
                        sy(p.y + e)
                    );
                }
            }
            let ly = MARGIN_T + 10.0 + 18.0 * i as f64;
            let lx = MARGIN_L + pw + 12.0;
            let _ = writeln!(
                s,
                r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="2"/><text x="{:.1}" y="{:.1}">{}</text>"#,
                lx + 20.0,
                lx + 26.0,
                ly + 4.0,
                escape(&series.name)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

/// One series per (family, scheduler), depth against size.
pub fn depth_chart(rows: &[DepthRow]) -> LineChart {
    let mut groups: BTreeMap<(String, String), Vec<Point>> = BTreeMap::new();
    for r in rows {
        groups
            .entry((r.family.clone(), r.scheduler.to_string()))
            .or_default()
            .push(Point {
                x: r.size as f64,
                y: r.depth as f64,
                err: None,
            });
    }
    let families: std::collections::BTreeSet<&String> = groups.keys().map(|k| &k.0).collect();
    let single = families.len() == 1;
    let title = if single {
        format!("Depth: {}", families.iter().next().unwrap())
    } else {
        "Depth".to_string()
    };
    LineChart {
        title,
        x_label: "size".into(),
        y_label: "depth".into(),
        series: groups
            .into_iter()
            .map(|((f, sch), mut points)| {
                points.sort_by(|a, b| a.x.total_cmp(&b.x));
                Series {
                    name: if single { sch } else { format!("{f} {sch}") },
                    points,
                }
            })
            .collect(),
    }
}

/// One series per (scenario, mode) with standard-error bars.
pub fn fidelity_chart(rows: &[McRow]) -> LineChart {
    let mut groups: BTreeMap<(String, String), Vec<Point>> = BTreeMap::new();
    for r in rows {
        groups
            .entry((r.scenario.clone(), r.mode.to_string()))
            .or_default()
            .push(Point {
                x: r.n as f64,
                y: r.mean_fidelity,
                err: Some(r.std_error),
            });
    }
    LineChart {
        title: "GHZ fidelity".into(),
        x_label: "fan-out targets N".into(),
        y_label: "mean fidelity".into(),
        series: groups
            .into_iter()
            .map(|((sc, mode), mut points)| {
                points.sort_by(|a, b| a.x.total_cmp(&b.x));
                Series {
                    name: format!("{sc} {mode}"),
                    points,
                }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::Mode;
    use crate::report::Scheduler;

    #[test]
    fn depth_chart_has_one_line_per_scheduler() {
        let mut rows = Vec::new();
        for size in 1..=3 {
            for (scheduler, d) in [
                (Scheduler::Simultaneous, 14),
                (Scheduler::Serialized, 14 * size),
            ] {
                rows.push(DepthRow {
                    family: "swap-test".into(),
                    size,
                    scheduler,
                    depth: d,
                    excluded: "h@0".into(),
                });
            }
        }
        let svg = depth_chart(&rows).to_svg();
        assert_eq!(svg.matches("class=\"series\"").count(), 2);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn fidelity_chart_has_error_bars() {
        let rows: Vec<McRow> = [Mode::Simultaneous, Mode::Serial]
            .into_iter()
            .flat_map(|mode| {
                (2..=4).map(move |n| McRow {
                    scenario: "current".into(),
                    label: "x".into(),
                    n,
                    mode,
                    shots: 1000,
                    mean_fidelity: 0.99 - n as f64 * 0.001,
                    std_error: 1e-4,
                    seed: 0,
                })
            })
            .collect();
        let svg = fidelity_chart(&rows).to_svg();
        assert_eq!(svg.matches("class=\"series\"").count(), 2);
        assert_eq!(svg.matches("class=\"errorbar\"").count(), 6);
    }

    #[test]
    fn tick_values_are_round() {
        assert_eq!(ticks(0.0, 10.0), vec![0.0, 2.0, 4.0, 6.0, 8.0, 10.0]);
        assert_eq!(fmt_tick(0.985), "0.985");
    }
}
