//! Minimal SVG scene builder for polygons, chords, disk caps and labels.
//! The root group carries a y-flip so counter-clockwise math renders
//! counter-clockwise on screen; the viewBox is fitted with a 5% margin.

use apexgon_core::geometry::Point;
use std::fmt::Write;

enum Element {
    Polygon {
        points: Vec<Point>,
        stroke: &'static str,
        fill: &'static str,
        width: f64,
    },
    Segment {
        a: Point,
        b: Point,
        stroke: &'static str,
        width: f64,
        dashed: bool,
    },
    Circle {
        center: Point,
        radius: f64,
        stroke: &'static str,
        dashed: bool,
    },
    Dot {
        at: Point,
        radius: f64,
        fill: &'static str,
    },
    Label {
        at: Point,
        text: String,
        size: f64,
    },
}

#[derive(Default)]
pub struct Scene {
    elements: Vec<Element>,
}

impl Scene {
    pub fn new() -> Self {
        Scene::default()
    }

    pub fn polygon(&mut self, points: &[Point], stroke: &'static str, fill: &'static str) {
        self.elements.push(Element::Polygon {
            points: points.to_vec(),
            stroke,
            fill,
            width: 0.01,
        });
    }

    pub fn segment(&mut self, a: Point, b: Point, stroke: &'static str, dashed: bool) {
        self.elements.push(Element::Segment {
            a,
            b,
            stroke,
            width: 0.008,
            dashed,
        });
    }

    pub fn circle(&mut self, center: Point, radius: f64, stroke: &'static str, dashed: bool) {
        self.elements.push(Element::Circle {
            center,
            radius,
            stroke,
            dashed,
        });
    }

    pub fn dot(&mut self, at: Point, fill: &'static str) {
        self.elements.push(Element::Dot {
            at,
            radius: 0.02,
            fill,
        });
    }

    pub fn label(&mut self, at: Point, text: impl Into<String>) {
        self.elements.push(Element::Label {
            at,
            text: text.into(),
            size: 0.06,
        });
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut take = |x: f64, y: f64| {
            lo.0 = lo.0.min(x);
            lo.1 = lo.1.min(y);
            hi.0 = hi.0.max(x);
            hi.1 = hi.1.max(y);
        };
        for e in &self.elements {
            match e {
                Element::Polygon { points, .. } => {
                    points.iter().for_each(|p| take(p.x, p.y));
                }
                Element::Segment { a, b, .. } => {
                    take(a.x, a.y);
                    take(b.x, b.y);
                }
                Element::Circle { center, radius, .. } => {
                    take(center.x - radius, center.y - radius);
                    take(center.x + radius, center.y + radius);
                }
                Element::Dot { at, .. } | Element::Label { at, .. } => take(at.x, at.y),
            }
        }
        if lo.0 > hi.0 {
            (0.0, 0.0, 1.0, 1.0)
        } else {
            (lo.0, lo.1, hi.0, hi.1)
        }
    }

    pub fn to_svg(&self) -> String {
        let (minx, miny, maxx, maxy) = self.bounds();
        let w = (maxx - minx).max(1e-9);
        let h = (maxy - miny).max(1e-9);
        let margin = 0.05 * w.max(h);
        let mut out = String::new();
        writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"640\" height=\"640\">",
            minx - margin,
            -(maxy + margin),
            w + 2.0 * margin,
            h + 2.0 * margin,
        )
        .unwrap();
        // Flip y so counter-clockwise geometry appears counter-clockwise.
        writeln!(out, "<g transform=\"scale(1,-1)\">").unwrap();
        for e in &self.elements {
            match e {
                Element::Polygon {
                    points,
                    stroke,
                    fill,
                    width,
                } => {
                    let mut list = String::new();
                    for p in points {
                        write!(list, "{},{} ", p.x, p.y).unwrap();
                    }
                    writeln!(
                        out,
                        "<polygon points=\"{}\" fill=\"{fill}\" stroke=\"{stroke}\" stroke-width=\"{width}\"/>",
                        list.trim_end()
                    )
                    .unwrap();
                }
                Element::Segment {
                    a,
                    b,
                    stroke,
                    width,
                    dashed,
                } => {
                    let dash = if *dashed {
                        " stroke-dasharray=\"0.02,0.02\""
                    } else {
                        ""
                    };
                    writeln!(
                        out,
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"{width}\"{dash}/>",
                        a.x, a.y, b.x, b.y
                    )
                    .unwrap();
                }
                Element::Circle {
                    center,
                    radius,
                    stroke,
                    dashed,
                } => {
                    let dash = if *dashed {
                        " stroke-dasharray=\"0.02,0.02\""
                    } else {
                        ""
                    };
                    writeln!(
                        out,
                        "<circle cx=\"{}\" cy=\"{}\" r=\"{radius}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"0.006\"{dash}/>",
                        center.x, center.y
                    )
                    .unwrap();
                }
                Element::Dot { at, radius, fill } => {
                    writeln!(
                        out,
                        "<circle cx=\"{}\" cy=\"{}\" r=\"{radius}\" fill=\"{fill}\"/>",
                        at.x, at.y
                    )
                    .unwrap();
                }
                Element::Label { at, text, size } => {
                    // Labels carry a local un-flip so the glyphs stay upright.
                    writeln!(
                        out,
                        "<text x=\"{}\" y=\"{}\" font-size=\"{size}\" transform=\"scale(1,-1)\">{}</text>",
                        at.x,
                        -at.y,
                        xml_escape(text)
                    )
                    .unwrap();
                }
            }
        }
        writeln!(out, "</g>").unwrap();
        writeln!(out, "</svg>").unwrap();
        out
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
