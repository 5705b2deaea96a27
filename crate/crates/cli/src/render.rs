//! Static SVG drawing of an instance and an optional relocation.

use std::fmt::Write;

use barrier_core::{Instance, Solution};

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 20.0;

pub fn svg(inst: &Instance, sol: Option<&Solution>) -> String {
    let m = inst.barrier_length();
    let (mut x0, mut x1, mut y0, mut y1) = (0.0_f64, m, 0.0_f64, 0.0_f64);
    for s in inst.sensors() {
        x0 = x0.min(s.x - s.r);
        x1 = x1.max(s.x + s.r);
        y0 = y0.min(s.y - s.r);
        y1 = y1.max(s.y + s.r);
    }
    if let Some(sol) = sol {
        for (p, s) in sol.positions().iter().zip(inst.sensors()) {
            if let Some(c) = p {
                x0 = x0.min(c - s.r);
                x1 = x1.max(c + s.r);
                y0 = y0.min(-s.r);
                y1 = y1.max(s.r);
            }
        }
    }
    let scale = (WIDTH - 2.0 * MARGIN) / (x1 - x0).max(1e-9);
    let height = (y1 - y0) * scale + 2.0 * MARGIN;
    let px = |x: f64| MARGIN + (x - x0) * scale;
    // screen y grows downward
    let py = |y: f64| MARGIN + (y1 - y) * scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height:.2}" viewBox="0 0 {WIDTH} {height:.2}">"#
    );
    let _ = writeln!(
        out,
        r##"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#c0392b"/></marker></defs>"##
    );
    let _ = writeln!(
        out,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="3"/>"#,
        px(0.0),
        py(0.0),
        px(m),
        py(0.0)
    );
    for s in inst.sensors() {
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="#7f8c8d" stroke-dasharray="4 3"/>"##,
            px(s.x),
            py(s.y),
            s.r * scale
        );
    }
    if let Some(sol) = sol {
        for (p, s) in sol.positions().iter().zip(inst.sensors()) {
            let Some(c) = *p else { continue };
            let _ = writeln!(
                out,
                r##"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="#2980b9" fill-opacity="0.25" stroke="#2980b9"/>"##,
                px(c),
                py(0.0),
                s.r * scale
            );
            if s.distance_to(c) > 0.0 {
                let _ = writeln!(
                    out,
                    r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c0392b" marker-end="url(#arrow)"/>"##,
                    px(s.x),
                    py(s.y),
                    px(c),
                    py(0.0)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
