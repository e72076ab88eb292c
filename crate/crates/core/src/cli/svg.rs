//! Before/after vector diagrams.

use svg::node::element::{Circle, Group, Line, Rectangle, Style};
use svg::Document;

use crate::linalg::{Frame, Scaling, Vec2};

const SIZE: f64 = 600.0;
const CENTER: f64 = SIZE / 2.0;
const RADIUS: f64 = 260.0;

const CSS: &str = "\
.axis { stroke: #bbbbbb; stroke-width: 1; }
.unit { fill: none; stroke: #888888; stroke-width: 1; stroke-dasharray: 4 3; }
.direction { stroke: #3366cc; stroke-opacity: 0.15; stroke-width: 1; }
.original { stroke: #3366cc; stroke-width: 2.5; }
.scaled { stroke: #dd5522; stroke-width: 2; stroke-dasharray: 6 3; }
";

fn line(from: (f64, f64), to: (f64, f64), class: &str) -> Line {
    Line::new()
        .set("x1", from.0)
        .set("y1", from.1)
        .set("x2", to.0)
        .set("y2", to.1)
        .set("class", class)
}

/// Renders the frame on a fixed 600×600 canvas. Vectors are drawn from the
/// origin; each direction also gets a faint diameter since only the
/// direction modulo π matters for scalability.
pub fn render(frame: &Frame, scaling: Option<&Scaling>) -> String {
    let scaled: Vec<Vec2> = match scaling {
        Some(s) => frame.vectors().iter().zip(s.weights()).map(|(&v, &w)| v * w).collect(),
        None => Vec::new(),
    };
    let extent = frame
        .vectors()
        .iter()
        .chain(&scaled)
        .map(|v| v.norm())
        .fold(1.0, f64::max);
    let px = |v: Vec2| (CENTER + RADIUS * v.x / extent, CENTER - RADIUS * v.y / extent);

    let mut directions = Group::new();
    let mut originals = Group::new();
    for &v in frame.vectors() {
        let u = v.normalized() * extent;
        directions = directions.add(line(px(-u), px(u), "direction"));
        originals = originals.add(line(px(Vec2::new(0.0, 0.0)), px(v), "original"));
    }
    let mut scaled_group = Group::new();
    for &v in &scaled {
        scaled_group = scaled_group.add(line(px(Vec2::new(0.0, 0.0)), px(v), "scaled"));
    }

    let doc = Document::new()
        .set("width", SIZE)
        .set("height", SIZE)
        .set("viewBox", (0, 0, SIZE, SIZE))
        .add(Style::new(CSS))
        .add(Rectangle::new().set("width", SIZE).set("height", SIZE).set("fill", "white"))
        .add(line((0.0, CENTER), (SIZE, CENTER), "axis"))
        .add(line((CENTER, 0.0), (CENTER, SIZE), "axis"))
        .add(
            Circle::new()
                .set("cx", CENTER)
                .set("cy", CENTER)
                .set("r", RADIUS / extent)
                .set("class", "unit"),
        )
        .add(directions)
        .add(originals)
        .add(scaled_group);
    let mut out = doc.to_string();
    out.push('\n');
    out
}
