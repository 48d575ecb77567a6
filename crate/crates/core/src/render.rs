//! Drawings of `Δ(d)` with the generators of an ideal highlighted.
//!
//! The monomial `x^a y^b z^c` sits at lattice point `(b - a, c)`, so `x^d` is
//! the left corner, `y^d` the right corner and `z^d` the top. Generators are
//! blue, the other degree-`d` monomials red. Coordinates are integers scaled
//! by fixed factors, so output is byte-stable.

use std::fmt::Write as _;

use serde::Serialize;

use crate::dual_graph::simplex_graph;
use crate::error::Result;
use crate::monomial::{Monomial, MonomialIdeal};

/// Horizontal distance between lattice neighbours on one row is `2 * HALF_STEP`.
const HALF_STEP: i64 = 40;
/// Row height, `2 * HALF_STEP * sqrt(3) / 2` rounded.
const ROW: i64 = 69;
const MARGIN: i64 = 40;
const RADIUS: i64 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Svg,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeVertex {
    pub monomial: Monomial,
    /// `deg_y - deg_x`.
    pub column: i64,
    /// `deg_z`.
    pub row: i64,
    pub generator: bool,
}

/// The vertices and edges of `Δ(d)` for an ideal generated in degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeLayout {
    pub degree: u32,
    pub vertices: Vec<LatticeVertex>,
    /// Index pairs into `vertices`.
    pub edges: Vec<(usize, usize)>,
}

impl LatticeLayout {
    pub fn num_generators(&self) -> usize {
        self.vertices.iter().filter(|v| v.generator).count()
    }
}

pub fn lattice_layout(ideal: &MonomialIdeal) -> Result<LatticeLayout> {
    ideal.require_vars(3)?;
    let d = ideal.require_equigenerated()?;
    let simplex = simplex_graph(3, d)?;
    let vertices = simplex
        .ideal()
        .generators()
        .iter()
        .map(|m| LatticeVertex {
            monomial: m.clone(),
            column: m.exponent(1) as i64 - m.exponent(0) as i64,
            row: m.exponent(2) as i64,
            generator: ideal.index_of(m).is_some(),
        })
        .collect();
    Ok(LatticeLayout {
        degree: d,
        vertices,
        edges: simplex.edges().to_vec(),
    })
}

fn colour(v: &LatticeVertex) -> &'static str {
    if v.generator {
        "blue"
    } else {
        "red"
    }
}

pub fn render_dual_graph(ideal: &MonomialIdeal, format: Format) -> Result<String> {
    let layout = lattice_layout(ideal)?;
    Ok(match format {
        Format::Dot => to_dot(&layout),
        Format::Svg => to_svg(&layout),
    })
}

fn to_dot(layout: &LatticeLayout) -> String {
    let d = layout.degree as i64;
    let mut out =
        String::from("graph delta {\n  node [shape=circle, style=filled, fontcolor=white];\n");
    for v in &layout.vertices {
        let _ = writeln!(
            out,
            "  \"{m}\" [pos=\"{x},{y}!\", fillcolor={c}];",
            m = v.monomial,
            x = (v.column + d) * HALF_STEP,
            y = v.row * ROW,
            c = colour(v),
        );
    }
    for &(a, b) in &layout.edges {
        let _ = writeln!(
            out,
            "  \"{}\" -- \"{}\";",
            layout.vertices[a].monomial, layout.vertices[b].monomial
        );
    }
    out.push_str("}\n");
    out
}

fn to_svg(layout: &LatticeLayout) -> String {
    let d = layout.degree as i64;
    let width = 2 * MARGIN + 2 * d * HALF_STEP;
    let height = 2 * MARGIN + d * ROW;
    // SVG y grows downwards; the top row holds z^d.
    let point = |v: &LatticeVertex| {
        (
            MARGIN + (v.column + d) * HALF_STEP,
            MARGIN + (d - v.row) * ROW,
        )
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    out.push_str("  <g stroke=\"black\" stroke-width=\"2\">\n");
    for &(a, b) in &layout.edges {
        let (x1, y1) = point(&layout.vertices[a]);
        let (x2, y2) = point(&layout.vertices[b]);
        let _ = writeln!(
            out,
            "    <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>"
        );
    }
    out.push_str("  </g>\n");
    out.push_str("  <g font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">\n");
    for v in &layout.vertices {
        let (x, y) = point(v);
        let c = colour(v);
        let _ = writeln!(
            out,
            "    <circle cx=\"{x}\" cy=\"{y}\" r=\"{RADIUS}\" fill=\"{c}\"/>"
        );
        let _ = writeln!(
            out,
            "    <text x=\"{x}\" y=\"{ty}\" fill=\"{c}\">{m}</text>",
            ty = y - RADIUS - 5,
            m = v.monomial
        );
    }
    out.push_str("  </g>\n</svg>\n");
    out
}
