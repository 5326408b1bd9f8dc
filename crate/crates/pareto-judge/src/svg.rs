//! Deterministic SVG 1.1 figures: F-beta plots, isocurves of aggregated
//! metrics, and hypervolume / dominance region diagrams.
//!
//! Every document uses an 800×600 viewBox with a 500×500 plot area whose
//! top-left corner sits at ([`PLOT_LEFT`], [`PLOT_TOP`]); the legend occupies
//! the right margin. Coordinates are printed with two decimals, so identical
//! inputs always give byte-identical output.

use std::fmt::Write as _;
use std::str::FromStr;

use pareto_judge_core::geometry::{classify, hypervolume_region, isocurve, DominanceClass, IsoMetric};
use pareto_judge_core::indicators::{hypervolume, ndr, sdr};
use pareto_judge_core::{FbetaCurve, ObjectivePoint, SolutionSet};

use crate::error::{Error, Result};

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
pub const PLOT_LEFT: f64 = 80.0;
pub const PLOT_TOP: f64 = 50.0;
pub const PLOT_SIZE: f64 = 500.0;
const LEGEND_X: f64 = 610.0;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
    "#17becf",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionMode {
    Hypervolume,
    Dominance,
}

impl RegionMode {
    pub fn name(self) -> &'static str {
        match self {
            RegionMode::Hypervolume => "hypervolume",
            RegionMode::Dominance => "dominance",
        }
    }
}

impl FromStr for RegionMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "hypervolume" | "hv" => Ok(RegionMode::Hypervolume),
            "dominance" => Ok(RegionMode::Dominance),
            other => Err(format!("unknown region mode `{other}` (expected hypervolume or dominance)")),
        }
    }
}

/// Two decimals, never `-0.00`.
fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

/// Linear map from a data interval onto a pixel interval.
#[derive(Debug, Clone, Copy)]
struct Scale {
    lo: f64,
    hi: f64,
    px_lo: f64,
    px_hi: f64,
}

impl Scale {
    fn x(lo: f64, hi: f64) -> Self {
        Self { lo, hi, px_lo: PLOT_LEFT, px_hi: PLOT_LEFT + PLOT_SIZE }
    }

    /// Pixel y grows downwards.
    fn y(lo: f64, hi: f64) -> Self {
        Self { lo, hi, px_lo: PLOT_TOP + PLOT_SIZE, px_hi: PLOT_TOP }
    }

    fn map(&self, v: f64) -> f64 {
        self.px_lo + (v - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo)
    }
}

struct Doc {
    body: String,
}

impl Doc {
    fn new(title: &str) -> Self {
        let mut body = String::new();
        let _ = writeln!(body, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            body,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12pt">"#,
            w = WIDTH,
            h = HEIGHT
        );
        let _ = writeln!(body, "<title>{}</title>", escape(title));
        let _ = writeln!(body, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            body,
            r#"<text x="{}" y="30" text-anchor="middle">{}</text>"#,
            num(PLOT_LEFT + PLOT_SIZE / 2.0),
            escape(title)
        );
        Self { body }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.body.push_str(s.as_ref());
        self.body.push('\n');
    }

    /// Frame, ticks and axis labels. `ticks` are (data value, label) pairs.
    fn axes(
        &mut self,
        sx: Scale,
        sy: Scale,
        xticks: &[(f64, String)],
        yticks: &[(f64, String)],
        xlabel: &str,
        ylabel: &str,
    ) {
        self.line(format!(
            r##"<rect class="frame" x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#000000"/>"##,
            num(PLOT_LEFT),
            num(PLOT_TOP),
            num(PLOT_SIZE),
            num(PLOT_SIZE)
        ));
        let bottom = PLOT_TOP + PLOT_SIZE;
        for (v, label) in xticks {
            let x = num(sx.map(*v));
            self.line(format!(
                r##"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="#000000"/>"##,
                num(bottom),
                num(bottom + 5.0)
            ));
            self.line(format!(
                r#"<text x="{x}" y="{}" text-anchor="middle" font-size="10pt">{}</text>"#,
                num(bottom + 20.0),
                escape(label)
            ));
        }
        for (v, label) in yticks {
            let y = num(sy.map(*v));
            self.line(format!(
                r##"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="#000000"/>"##,
                num(PLOT_LEFT - 5.0),
                num(PLOT_LEFT)
            ));
            self.line(format!(r#"<text x="{}" y="{y}" text-anchor="end" dominant-baseline="middle" font-size="10pt">{}</text>"#, num(PLOT_LEFT - 8.0), escape(label)));
        }
        self.line(format!(
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            num(PLOT_LEFT + PLOT_SIZE / 2.0),
            num(bottom + 45.0),
            escape(xlabel)
        ));
        let (lx, ly) = (num(25.0), num(PLOT_TOP + PLOT_SIZE / 2.0));
        self.line(format!(
            r#"<text x="{lx}" y="{ly}" text-anchor="middle" transform="rotate(-90 {lx} {ly})">{}</text>"#,
            escape(ylabel)
        ));
    }

    fn legend_entry(&mut self, index: usize, color: &str, dashed: bool, label: &str) {
        let y = PLOT_TOP + 10.0 + 22.0 * index as f64;
        let dash = if dashed { r#" stroke-dasharray="6 4""# } else { "" };
        self.line(format!(
            r#"<line class="legend" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="2"{dash}/>"#,
            num(LEGEND_X),
            num(y),
            num(LEGEND_X + 25.0),
            num(y)
        ));
        self.line(format!(
            r#"<text x="{}" y="{}" dominant-baseline="middle" font-size="10pt">{}</text>"#,
            num(LEGEND_X + 32.0),
            num(y),
            escape(label)
        ));
    }

    fn polyline(
        &mut self,
        class: &str,
        label: &str,
        color: &str,
        dashed: bool,
        points: impl Iterator<Item = (f64, f64)>,
    ) {
        let pts: Vec<String> = points.map(|(x, y)| format!("{},{}", num(x), num(y))).collect();
        let dash = if dashed { r#" stroke-dasharray="6 4""# } else { "" };
        self.line(format!(
            r#"<polyline class="{class}" data-label="{}" fill="none" stroke="{color}" stroke-width="2"{dash} points="{}"/>"#,
            escape(label),
            pts.join(" ")
        ));
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

fn unit_ticks() -> Vec<(f64, String)> {
    (0..=4).map(|k| k as f64 / 4.0).map(|v| (v, format!("{v:.2}"))).collect()
}

fn range_ticks(lo: f64, hi: f64) -> Vec<(f64, String)> {
    (0..=4).map(|k| lo + (hi - lo) * k as f64 / 4.0).map(|v| (v, format!("{v:.2}"))).collect()
}

/// F-beta curves against log10(beta). Envelope curves are dashed.
pub fn render_fbeta_plot(title: &str, curves: &[FbetaCurve]) -> Result<String> {
    let first = curves.first().ok_or(Error::EmptyPlot("no F-beta curves"))?;
    if curves.iter().any(|c| c.betas != first.betas) {
        return Err(Error::Invalid("F-beta curves do not share one beta grid".into()));
    }
    let betas = &first.betas;
    let (mut lo, mut hi) = (betas[0].log10(), betas[betas.len() - 1].log10());
    if hi <= lo {
        lo -= 0.5;
        hi += 0.5;
    }
    let sx = Scale::x(lo, hi);
    let sy = Scale::y(0.0, 1.0);

    let mut xticks: Vec<(f64, String)> = ((lo.ceil() as i32)..=(hi.floor() as i32))
        .map(|k| (k as f64, format!("{}", 10f64.powi(k))))
        .collect();
    if xticks.is_empty() {
        xticks = vec![(lo, format!("{:.3}", 10f64.powf(lo))), (hi, format!("{:.3}", 10f64.powf(hi)))];
    }

    let mut doc = Doc::new(title);
    doc.axes(sx, sy, &xticks, &unit_ticks(), "β (log scale)", "F-β");
    for (i, curve) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        doc.polyline(
            if curve.is_envelope { "curve envelope" } else { "curve" },
            &curve.label,
            color,
            curve.is_envelope,
            curve.points().map(|(b, v)| (sx.map(b.log10()), sy.map(v))),
        );
        doc.legend_entry(i, color, curve.is_envelope, &curve.label);
    }
    Ok(doc.finish())
}

/// Axis range covering [0, 1] and every coordinate in `values`.
fn unit_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((0.0, 1.0), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Front and reference in the plane of two objectives, shading either the
/// hypervolume region or the areas dominating / dominated by the reference.
pub fn render_region_plot(
    title: &str,
    front: &SolutionSet,
    reference: &ObjectivePoint,
    mode: RegionMode,
) -> Result<String> {
    if front.dims() != 2 || reference.dims() != 2 {
        return Err(Error::Invalid(format!(
            "region plots need exactly two objectives, got {}",
            if front.dims() != 2 { front.dims() } else { reference.dims() }
        )));
    }
    let all = || front.points().iter().chain(std::iter::once(reference));
    let (xlo, xhi) = unit_range(all().map(|p| p.coords()[0]));
    let (ylo, yhi) = unit_range(all().map(|p| p.coords()[1]));
    let sx = Scale::x(xlo, xhi);
    let sy = Scale::y(ylo, yhi);
    let (rx, ry) = (reference.coords()[0], reference.coords()[1]);

    let mut doc = Doc::new(title);
    let mut legend: Vec<(&str, String)> = Vec::new();
    match mode {
        RegionMode::Hypervolume => {
            let outline = hypervolume_region(front, reference)?;
            if !outline.is_empty() {
                let mut d = String::new();
                for (k, (x, y)) in outline.iter().enumerate() {
                    let _ = write!(
                        d,
                        "{}{},{} ",
                        if k == 0 { "M" } else { "L" },
                        num(sx.map(*x)),
                        num(sy.map(*y))
                    );
                }
                d.push('Z');
                doc.line(format!(r##"<path class="hv-region" d="{d}" fill="#9ecae1" stroke="none"/>"##));
            }
            let hv = hypervolume(front, reference)?;
            legend.push(("#9ecae1", format!("HV = {hv:.4}")));
        }
        RegionMode::Dominance => {
            let rect = |class: &str, fill: &str, x0: f64, y0: f64, x1: f64, y1: f64| {
                let (px0, px1) = (sx.map(x0), sx.map(x1));
                let (py0, py1) = (sy.map(y1), sy.map(y0));
                format!(
                    r#"<rect class="{class}" x="{}" y="{}" width="{}" height="{}" fill="{fill}" fill-opacity="0.5"/>"#,
                    num(px0),
                    num(py0),
                    num(px1 - px0),
                    num(py1 - py0)
                )
            };
            doc.line(rect("dominating-region", "#a1d99b", rx, ry, xhi, yhi));
            doc.line(rect("dominated-region", "#fc9272", xlo, ylo, rx, ry));
            legend.push(("#a1d99b", format!("SDR = {:.4}", sdr(front, reference)?)));
            legend.push(("#fc9272", format!("NDR = {:.4}", ndr(front, reference)?)));
        }
    }

    doc.axes(sx, sy, &range_ticks(xlo, xhi), &range_ticks(ylo, yhi), "objective 1", "objective 2");
    for p in front.points() {
        let class = match mode {
            RegionMode::Hypervolume => "front-point",
            RegionMode::Dominance => match classify(p, reference)? {
                DominanceClass::Dominating => "front-point dominating",
                DominanceClass::Dominated => "front-point dominated",
                DominanceClass::NonDominated => "front-point non-dominated",
            },
        };
        doc.line(format!(
            r##"<circle class="{class}" cx="{}" cy="{}" r="4" fill="#08519c"/>"##,
            num(sx.map(p.coords()[0])),
            num(sy.map(p.coords()[1]))
        ));
    }
    let (px, py) = (sx.map(rx), sy.map(ry));
    doc.line(format!(
        r##"<path class="reference" d="M{},{} L{},{} M{},{} L{},{}" stroke="#cb181d" stroke-width="3"/>"##,
        num(px - 6.0),
        num(py - 6.0),
        num(px + 6.0),
        num(py + 6.0),
        num(px - 6.0),
        num(py + 6.0),
        num(px + 6.0),
        num(py - 6.0)
    ));
    legend.insert(0, ("#cb181d", format!("reference {}", front.label())));
    for (i, (color, label)) in legend.iter().enumerate() {
        doc.legend_entry(i, color, false, label);
    }
    Ok(doc.finish())
}

/// Number of samples along each isocurve.
pub const ISOCURVE_SAMPLES: usize = 200;

/// Level sets of G-mean or F1 over the unit square.
pub fn render_isocurves(metric: IsoMetric, levels: &[f64]) -> Result<String> {
    if levels.is_empty() {
        return Err(Error::EmptyPlot("no isocurve levels"));
    }
    let (name, xlabel, ylabel) = match metric {
        IsoMetric::Gmean => ("G-mean", "TPR", "TNR"),
        IsoMetric::F1 => ("F1", "recall (TPR)", "precision (PPV)"),
    };
    let curves = levels
        .iter()
        .map(|&l| isocurve(metric, l, ISOCURVE_SAMPLES).map(|c| (l, c)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let sx = Scale::x(0.0, 1.0);
    let sy = Scale::y(0.0, 1.0);
    let mut doc = Doc::new(&format!("{name} isocurves"));
    doc.axes(sx, sy, &unit_ticks(), &unit_ticks(), xlabel, ylabel);
    for (i, (level, pts)) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let label = format!("{name} = {level}");
        doc.polyline("isocurve", &label, color, false, pts.iter().map(|&(x, y)| (sx.map(x), sy.map(y))));
        doc.legend_entry(i, color, false, &label);
    }
    Ok(doc.finish())
}
