//! Small SVG emitter for staircase paths, the two height hulls and the
//! grey boxes of the vertex-chain decomposition.

use tropid_core::minmax::{vertex_chain, ChainLabel};
use tropid_core::signature::degree_signature;
use tropid_core::word::Word;

const SCALE: f64 = 28.0;
const MARGIN: f64 = 36.0;

struct Frame {
    height: f64,
}

impl Frame {
    fn x(&self, x: i64) -> f64 {
        MARGIN + x as f64 * SCALE
    }

    // SVG grows downward; the staircase grows upward
    fn y(&self, y: i64) -> f64 {
        self.height - MARGIN - y as f64 * SCALE
    }
}

pub fn plot(w: &Word, v: Option<&Word>, boxes: bool) -> Result<String, String> {
    if w.alphabet_size() != 2 {
        return Err("plotting is only defined for two-letter words".into());
    }
    let c = w.content();
    let (ell_a, ell_b) = (c.0[0], c.0[1]);
    let frame = Frame {
        height: 2.0 * MARGIN + ell_b as f64 * SCALE,
    };
    let width = 2.0 * MARGIN + ell_a as f64 * SCALE;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{:.0}\" \
         viewBox=\"0 0 {width:.0} {:.0}\">\n",
        frame.height, frame.height
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // lattice grid
    for x in 0..=ell_a {
        out.push_str(&line(
            frame.x(x),
            frame.y(0),
            frame.x(x),
            frame.y(ell_b),
            "#dddddd",
            1.0,
        ));
    }
    for y in 0..=ell_b {
        out.push_str(&line(
            frame.x(0),
            frame.y(y),
            frame.x(ell_a),
            frame.y(y),
            "#dddddd",
            1.0,
        ));
    }

    let sig = degree_signature(w, 1);
    let hull_a = &sig.entries[0].polytope;
    let hull_b = &sig.entries[1].polytope;

    if boxes {
        let chain = vertex_chain(hull_a, hull_b, &c).map_err(|e| e.to_string())?;
        let pts: Vec<(i64, i64)> = chain.entries.iter().map(|(p, _)| *p).collect();
        for (k, pair) in pts.windows(2).enumerate() {
            let (p, q) = (pair[0], pair[1]);
            // a box degenerates to a segment when the chain moves along an axis
            out.push_str(&format!(
                "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"{:.1}\" height=\"{:.1}\" \
                 fill=\"#bbbbbb\" fill-opacity=\"0.45\" stroke=\"#888888\"/>\n",
                frame.x(p.0.min(q.0)),
                frame.y(p.1.max(q.1)),
                (q.0 - p.0).abs() as f64 * SCALE,
                (q.1 - p.1).abs() as f64 * SCALE,
            ));
            let _ = k;
        }
        for (p, label) in &chain.entries {
            let tag = match label {
                ChainLabel::A => "a",
                ChainLabel::B => "b",
                ChainLabel::End => "",
            };
            if !tag.is_empty() {
                out.push_str(&format!(
                    "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" fill=\"#555555\">{tag}</text>\n",
                    frame.x(p.0) + 4.0,
                    frame.y(p.1) - 4.0
                ));
            }
        }
    }

    out.push_str(&polygon(hull_a.vertices(), &frame, "#1f77b4"));
    out.push_str(&polygon(hull_b.vertices(), &frame, "#2ca02c"));

    out.push_str(&staircase(w, &frame, "black", 2.5));
    if let Some(v) = v {
        out.push_str(&staircase(v, &frame, "red", 1.8));
    }

    out.push_str("</svg>\n");
    Ok(out)
}

fn line(x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, width: f64) -> String {
    format!(
        "<line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" \
         stroke=\"{stroke}\" stroke-width=\"{width}\"/>\n"
    )
}

fn staircase(w: &Word, frame: &Frame, stroke: &str, width: f64) -> String {
    let pts: Vec<String> = w
        .path()
        .0
        .iter()
        .map(|p| format!("{:.1},{:.1}", frame.x(p[0]), frame.y(p[1])))
        .collect();
    format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width}\"/>\n",
        pts.join(" ")
    )
}

fn polygon(vertices: &[Vec<i64>], frame: &Frame, color: &str) -> String {
    let ring = boundary_order(vertices);
    if ring.len() == 1 {
        let p = &ring[0];
        return format!(
            "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3.5\" fill=\"{color}\" fill-opacity=\"0.6\"/>\n",
            frame.x(p.0),
            frame.y(p.1)
        );
    }
    let pts: Vec<String> = ring
        .iter()
        .map(|p| format!("{:.1},{:.1}", frame.x(p.0), frame.y(p.1)))
        .collect();
    format!(
        "<polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.18\" \
         stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
        pts.join(" ")
    )
}

/// Hull vertices are stored sorted, not in drawing order; walk the lower and
/// upper chains to get a cyclic boundary.
fn boundary_order(vertices: &[Vec<i64>]) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = vertices.iter().map(|p| (p[0], p[1])).collect();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
