use std::fmt::Write;

use super::chart::{legend, Chart, Glyph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Svg,
    Text,
    Json,
}

impl Format {
    pub fn parse(text: &str) -> Result<Format> {
        match text {
            "svg" => Ok(Format::Svg),
            "text" | "txt" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

pub fn render(chart: &Chart, format: Format) -> String {
    match format {
        Format::Svg => svg(chart),
        Format::Text => text(chart),
        Format::Json => serde_json::to_string_pretty(&chart.to_json()).expect("chart JSON serializes") + "\n",
    }
}

/// `p·y`, an integer because `y` has denominator dividing `p`.
fn scaled_y(chart: &Chart, c: &super::chart::Cell) -> i64 {
    c.y.num * (chart.ctx.p as i64 / c.y.den)
}

fn text(chart: &Chart) -> String {
    let mut out = String::new();
    let p = chart.ctx.p;
    writeln!(out, "C_{} {} t in [{}, {}]", chart.ctx.order(), chart.target, chart.t_range.0, chart.t_range.1).unwrap();
    if chart.cells.is_empty() {
        out.push_str("(no nonzero cells)\n");
    } else {
        let xs = chart.cells.iter().map(|c| c.x);
        let ys: Vec<i64> = chart.cells.iter().map(|c| scaled_y(chart, c)).collect();
        let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
        let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
        let ascii: Vec<(String, char)> = legend().into_iter().map(|e| (e.symbol.to_string(), e.ascii)).collect();
        writeln!(out, "rows: {p}y from {y1} down to {y0}; columns: x from {x0} to {x1}").unwrap();
        for y in (y0..=y1).rev() {
            let mut line = format!("{y:>5} |");
            for x in x0..=x1 {
                let ch = chart
                    .cells
                    .iter()
                    .zip(&ys)
                    .find(|(c, cy)| c.x == x && **cy == y)
                    .map(|(c, _)| ascii.iter().find(|(s, _)| *s == c.symbol).map_or('?', |(_, a)| *a))
                    .unwrap_or(' ');
                line.push(ch);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        let unknown: Vec<_> = chart.cells.iter().filter(|c| c.glyph.is_none()).collect();
        if !unknown.is_empty() {
            out.push_str("cells marked ?:\n");
            for c in unknown {
                writeln!(out, "  (s,t) = ({},{}): {}", c.s, c.t, c.name.as_ref().map_or(c.symbol.clone(), ToString::to_string)).unwrap();
            }
        }
    }
    out.push_str("legend:\n");
    for e in legend() {
        writeln!(out, "  {} {} {}", e.ascii, e.symbol, e.name).unwrap();
    }
    for a in &chart.annotations {
        writeln!(out, "{} ({},{}) -> ({},{})", a.kind, a.from[0], a.from[1], a.to[0], a.to[1]).unwrap();
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

const UNIT_X: i64 = 24;
const UNIT_Y: i64 = 8;
const MARGIN: i64 = 40;

fn glyph_svg(out: &mut String, g: Option<Glyph>, label: &str, cx: i64, cy: i64) {
    let line = |out: &mut String, dy: i64| {
        writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#, cx - 6, cy + dy, cx + 6, cy + dy).unwrap();
    };
    match g {
        Some(Glyph::Dot | Glyph::UnderlinedDot | Glyph::UnderlinedDotStar | Glyph::DoubleUnderlinedDot) => {
            writeln!(out, r#"<circle cx="{cx}" cy="{cy}" r="3" fill="black"/>"#).unwrap();
        }
        Some(Glyph::Circle | Glyph::UnderlinedCircle) => {
            writeln!(out, r#"<circle cx="{cx}" cy="{cy}" r="4" fill="none" stroke="black"/>"#).unwrap();
        }
        Some(Glyph::DoubleCircle) => {
            writeln!(out, r#"<circle cx="{cx}" cy="{cy}" r="5" fill="none" stroke="black"/>"#).unwrap();
            writeln!(out, r#"<circle cx="{cx}" cy="{cy}" r="2.5" fill="none" stroke="black"/>"#).unwrap();
        }
        Some(Glyph::Square) => {
            writeln!(out, r#"<rect x="{}" y="{}" width="8" height="8" fill="none" stroke="black"/>"#, cx - 4, cy - 4).unwrap();
        }
        None => {
            writeln!(out, r#"<rect x="{}" y="{}" width="12" height="12" fill="white" stroke="black"/>"#, cx - 6, cy - 6).unwrap();
            writeln!(out, r#"<title>{}</title>"#, escape(label)).unwrap();
        }
    }
    match g {
        Some(Glyph::UnderlinedDot | Glyph::UnderlinedCircle) => line(out, 7),
        Some(Glyph::UnderlinedDotStar) => {
            line(out, 7);
            writeln!(out, r#"<text x="{}" y="{}" font-size="8">*</text>"#, cx + 4, cy - 2).unwrap();
        }
        Some(Glyph::DoubleUnderlinedDot) => {
            line(out, 6);
            line(out, 9);
        }
        _ => {}
    }
}

fn svg(chart: &Chart) -> String {
    let ys: Vec<i64> = chart.cells.iter().map(|c| scaled_y(chart, c)).collect();
    let (x0, x1) = chart.cells.iter().map(|c| c.x).fold((0, 0), |(a, b), x| (a.min(x), b.max(x)));
    let (y0, y1) = ys.iter().fold((0, 0), |(a, b), &y| (a.min(y), b.max(y)));
    let legend_h = 20 * legend().len() as i64 + 20;
    let width = (MARGIN * 2 + (x1 - x0) * UNIT_X).max(240);
    let plot_h = MARGIN * 2 + (y1 - y0) * UNIT_Y;
    let height = plot_h + legend_h;
    let px = |x: i64| MARGIN + (x - x0) * UNIT_X;
    let py = |y: i64| MARGIN + (y1 - y) * UNIT_Y;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#).unwrap();
    writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#).unwrap();
    writeln!(out, r#"<g stroke="lightgray">"#).unwrap();
    writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(x0), py(0), px(x1), py(0)).unwrap();
    writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(0), py(y0), px(0), py(y1)).unwrap();
    writeln!(out, "</g>").unwrap();
    for x in x0..=x1 {
        if x % 5 == 0 {
            writeln!(out, r#"<text x="{}" y="{}" font-size="9" text-anchor="middle">{x}</text>"#, px(x), plot_h - 10).unwrap();
        }
    }
    for a in &chart.annotations {
        let at = |st: [i64; 2]| {
            let c = chart.cell_at(st[0], st[1]).expect("annotations are validated");
            (px(c.x), py(scaled_y(chart, c)))
        };
        let ((ax, ay), (bx, by)) = (at(a.from), at(a.to));
        let dash = if a.kind == "extension" { r#" stroke-dasharray="4,3""# } else { "" };
        writeln!(out, r#"<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="black"{dash}/>"#).unwrap();
    }
    for (c, y) in chart.cells.iter().zip(&ys) {
        glyph_svg(&mut out, c.glyph, &c.symbol, px(c.x), py(*y));
    }
    let top = plot_h;
    writeln!(out, r#"<text x="10" y="{}" font-size="11">Legend</text>"#, top + 12).unwrap();
    for (i, e) in legend().into_iter().enumerate() {
        let y = top + 30 + 20 * i as i64;
        glyph_svg(&mut out, Some(e.glyph), e.symbol, 20, y);
        writeln!(out, r#"<text x="36" y="{}" font-size="11">{}</text>"#, y + 4, escape(&e.name.to_string())).unwrap();
    }
    out.push_str("</svg>\n");
    out
}
