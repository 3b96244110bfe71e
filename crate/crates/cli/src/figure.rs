//! Stem plot of a jet-indexed spectrum over the unit disk.
//!
//! The disk lies in an obliquely projected plane; each `(lambda, k)` becomes a
//! vertical stem at `lambda` carrying `k` markers, one per root-vector level.
//! Output depends only on the spectrum: coordinates are printed with twelve
//! significant digits and nothing else (no timestamps, no ids) varies.

use std::fmt::Write;

use intertwine::jordan::polar_label;
use intertwine::{Scalar, Spectrum};

use crate::format::sig;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 560.0;
const RADIUS: f64 = 220.0;
const SHEAR: f64 = 0.35;
const FLATTEN: f64 = 0.45;
const CX: f64 = 300.0;
const CY: f64 = 380.0;
const OUTLINE_SEGMENTS: usize = 128;
const STEM_SPACING: f64 = 7.0;

struct Projection {
    unit: f64,
}

impl Projection {
    fn new(max_k: usize) -> Self {
        Projection {
            unit: (280.0 / max_k.max(1) as f64).min(48.0),
        }
    }

    fn point(&self, re: f64, im: f64, level: f64) -> (f64, f64) {
        (
            CX + RADIUS * (re + SHEAR * im),
            CY - RADIUS * FLATTEN * im - self.unit * level,
        )
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn svg<S: Scalar>(sp: &Spectrum<S>) -> String {
    let max_k = sp.points().iter().map(|p| p.k).max().unwrap_or(1);
    let proj = Projection::new(max_k);
    let n = |x: f64| sig(x, 12);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        n(WIDTH),
        n(HEIGHT),
        n(WIDTH),
        n(HEIGHT)
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let outline: Vec<String> = (0..OUTLINE_SEGMENTS)
        .map(|j| {
            let t = std::f64::consts::TAU * j as f64 / OUTLINE_SEGMENTS as f64;
            let (x, y) = proj.point(t.cos(), t.sin(), 0.0);
            format!("{},{}", n(x), n(y))
        })
        .collect();
    let _ = writeln!(
        out,
        r#"<polygon points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        outline.join(" ")
    );
    for (a, b) in [((-1.1, 0.0), (1.1, 0.0)), ((0.0, -1.1), (0.0, 1.1))] {
        let (x1, y1) = proj.point(a.0, a.1, 0.0);
        let (x2, y2) = proj.point(b.0, b.1, 0.0);
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray" stroke-dasharray="4 3"/>"#,
            n(x1),
            n(y1),
            n(x2),
            n(y2)
        );
    }

    // repeated eigenvalues get side-by-side stems
    let mut seen: Vec<(num_complex::Complex64, usize)> = Vec::new();
    for p in sp.points() {
        let z = p.lambda.to_c64();
        let slot = match seen.iter_mut().find(|(w, _)| (*w - z).norm() < 1e-12) {
            Some((_, count)) => {
                *count += 1;
                *count - 1
            }
            None => {
                seen.push((z, 1));
                0
            }
        };
        let dx = STEM_SPACING * slot as f64;
        let (bx, by) = proj.point(z.re, z.im, 0.0);
        let (tx, ty) = proj.point(z.re, z.im, p.k as f64);
        let _ = writeln!(out, "<g>");
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="3" fill="none" stroke="black"/>"#,
            n(bx + dx),
            n(by)
        );
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1.5"/>"#,
            n(bx + dx),
            n(by),
            n(tx + dx),
            n(ty)
        );
        for level in 1..=p.k {
            let (mx, my) = proj.point(z.re, z.im, level as f64);
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="4" fill="steelblue" stroke="black"/>"#,
                n(mx + dx),
                n(my)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
            n(tx + dx + 8.0),
            n(ty - 4.0),
            xml_escape(&format!("({}, {})", polar_label(z), p.k))
        );
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    out
}
