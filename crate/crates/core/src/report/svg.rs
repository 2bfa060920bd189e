use std::fmt::Write as _;
use std::io;
use std::path::Path;

use super::export::write_atomic;
use super::style::StyleSpec;
use crate::geometry::{Bounds, Point2};

#[derive(Debug, Clone, PartialEq)]
pub enum MapGeometry {
    Line(Vec<Point2>),
    /// Exterior ring followed by holes; filled with the even-odd rule.
    Polygon(Vec<Vec<Point2>>),
    Point(Point2),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapFeature {
    pub geometry: MapGeometry,
    pub class: String,
    /// Fill opacity for polygons; defaults to 0.35.
    pub opacity: Option<f64>,
}

impl MapFeature {
    pub fn new(geometry: MapGeometry, class: impl Into<String>) -> Self {
        MapFeature {
            geometry,
            class: class.into(),
            opacity: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LegendEntry {
    pub label: String,
    /// Style key for the swatch.
    pub class: String,
    pub count: usize,
}

impl LegendEntry {
    pub fn new(label: impl Into<String>, class: impl Into<String>, count: usize) -> Self {
        LegendEntry {
            label: label.into(),
            class: class.into(),
            count,
        }
    }
}

/// One map: features are drawn in order, so later features sit on top.
#[derive(Debug, Clone, PartialEq)]
pub struct MapDocument {
    pub title: String,
    pub features: Vec<MapFeature>,
    pub legend: Vec<LegendEntry>,
}

impl MapDocument {
    pub fn bounds(&self) -> Bounds {
        let mut b = Bounds::empty();
        for f in &self.features {
            match &f.geometry {
                MapGeometry::Line(pts) => pts.iter().for_each(|&p| b.extend(p)),
                MapGeometry::Polygon(rings) => rings.iter().flatten().for_each(|&p| b.extend(p)),
                MapGeometry::Point(p) => b.extend(*p),
            }
        }
        b
    }
}

/// Two decimals, never `-0.00`.
fn f2(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

struct Viewport {
    min: Point2,
    max_y: f64,
    scale: f64,
    margin: f64,
}

impl Viewport {
    fn project(&self, p: Point2) -> (f64, f64) {
        (
            self.margin + (p.x - self.min.x) * self.scale,
            self.margin + (self.max_y - p.y) * self.scale,
        )
    }

    fn path_data(&self, pts: &[Point2], close: bool) -> String {
        let mut d = String::new();
        for (i, &p) in pts.iter().enumerate() {
            let (x, y) = self.project(p);
            let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, f2(x), f2(y));
        }
        if close {
            d.push_str(" Z");
        }
        d
    }
}

const LEGEND_ROW: f64 = 22.0;
const TITLE_HEIGHT: f64 = 30.0;

/// Renders a self-contained SVG. The map area keeps the data's aspect ratio
/// (height capped at 1.5 times the width); the legend panel sits to the
/// right. Output depends only on the inputs.
pub fn render_svg(map: &MapDocument, style: &StyleSpec) -> String {
    let b = map.bounds();
    let (min, max) = if b.is_empty() {
        (Point2::new(0.0, 0.0), Point2::new(1.0, 1.0))
    } else {
        (b.min, b.max)
    };
    let (dx, dy) = ((max.x - min.x).max(1e-9), (max.y - min.y).max(1e-9));
    let m = style.margin;
    let inner_w = style.map_width - 2.0 * m;
    let mut scale = inner_w / dx;
    if dy * scale > 1.5 * inner_w {
        scale = 1.5 * inner_w / dy;
    }
    let map_h = dy * scale + 2.0 * m + TITLE_HEIGHT;
    let legend_h = 2.0 * m + TITLE_HEIGHT + LEGEND_ROW * (map.legend.len() as f64 + 1.0);
    let width = style.map_width + style.legend_width;
    let height = map_h.max(legend_h);
    let vp = Viewport {
        min,
        max_y: max.y,
        scale,
        margin: m,
    };
    let title_off = TITLE_HEIGHT;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = f2(width),
        h = f2(height)
    );
    let _ = writeln!(s, "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>", f2(width), f2(height));
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"16\">{}</text>",
        f2(m),
        f2(m + 4.0),
        escape(&map.title)
    );
    let _ = writeln!(s, "<g id=\"map\" transform=\"translate(0 {})\">", f2(title_off));
    for f in &map.features {
        let st = style.style_for(&f.class);
        match &f.geometry {
            MapGeometry::Line(pts) => {
                let _ = writeln!(
                    s,
                    "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-linecap=\"round\" stroke-linejoin=\"round\"/>",
                    vp.path_data(pts, false),
                    st.stroke,
                    f2(st.stroke_width)
                );
            }
            MapGeometry::Polygon(rings) => {
                let d: Vec<String> = rings.iter().map(|r| vp.path_data(r, true)).collect();
                let stroke = if st.stroke_width > 0.0 {
                    format!(" stroke=\"{}\" stroke-width=\"{}\"", st.stroke, f2(st.stroke_width.min(1.0)))
                } else {
                    " stroke=\"none\"".to_string()
                };
                let _ = writeln!(
                    s,
                    "<path d=\"{}\" fill=\"{}\" fill-opacity=\"{}\" fill-rule=\"evenodd\"{}/>",
                    d.join(" "),
                    st.stroke,
                    f2(f.opacity.unwrap_or(0.35)),
                    stroke
                );
            }
            MapGeometry::Point(p) => {
                let (x, y) = vp.project(*p);
                let _ = writeln!(
                    s,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"#ffffff\" stroke-width=\"0.50\"/>",
                    f2(x),
                    f2(y),
                    f2(st.point_radius),
                    st.stroke
                );
            }
        }
    }
    s.push_str("</g>\n");

    let lx = style.map_width;
    let _ = writeln!(s, "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">");
    let _ = writeln!(
        s,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#f7f7f7\" stroke=\"#cccccc\"/>",
        f2(lx),
        f2(m + title_off),
        f2(style.legend_width - m),
        f2(LEGEND_ROW * (map.legend.len() as f64 + 1.0))
    );
    for (i, e) in map.legend.iter().enumerate() {
        let y = m + title_off + LEGEND_ROW * (i as f64 + 0.5);
        let st = style.style_for(&e.class);
        let _ = writeln!(
            s,
            "<rect x=\"{}\" y=\"{}\" width=\"18\" height=\"12\" fill=\"{}\"/>",
            f2(lx + 8.0),
            f2(y),
            st.stroke
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\">{} ({})</text>",
            f2(lx + 32.0),
            f2(y + 10.0),
            escape(&e.label),
            e.count
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

pub fn write_svg(map: &MapDocument, style: &StyleSpec, path: &Path) -> io::Result<()> {
    write_atomic(path, render_svg(map, style).as_bytes())
}
