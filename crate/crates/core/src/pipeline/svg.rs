use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use nalgebra::Vector3;

use super::catalog::Catalog;
use super::PipelineError;
use crate::certifier::{tutte_layout, ResultRecord};
use crate::plane_graph::{trace_faces, PlaneGraph};
use crate::sphere_geom::Embedding;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ViewAxis {
    X,
    Y,
    #[default]
    Z,
}

impl ViewAxis {
    pub fn parse(s: &str) -> Option<ViewAxis> {
        match s {
            "x" => Some(ViewAxis::X),
            "y" => Some(ViewAxis::Y),
            "z" => Some(ViewAxis::Z),
            _ => None,
        }
    }

    /// Screen right, screen up, towards the viewer.
    fn frame(self) -> [Vector3<f64>; 3] {
        match self {
            ViewAxis::X => [Vector3::y(), Vector3::z(), Vector3::x()],
            ViewAxis::Y => [Vector3::z(), Vector3::x(), Vector3::y()],
            ViewAxis::Z => [Vector3::x(), Vector3::y(), Vector3::z()],
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ExportOptions {
    pub view: ViewAxis,
}

const SIZE: f64 = 400.0;
const SCALE: f64 = 180.0;

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
}

fn vertex(out: &mut String, x: f64, y: f64, hollow: bool, opacity: f64) {
    let fill = if hollow { "white" } else { "black" };
    let _ = writeln!(
        out,
        r#"<circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="5" fill="{fill}" stroke="black" opacity="{opacity:.2}"/>"#
    );
}

/// Orthographic view of the points with edges drawn as projected great-circle
/// arcs; far-side elements are faded and isolated vertices hollow.
pub fn sphere_svg(emb: &Embedding, view: ViewAxis) -> String {
    let [right, up, eye] = view.frame();
    let screen = |p: &Vector3<f64>| (SIZE / 2.0 + SCALE * p.dot(&right), SIZE / 2.0 - SCALE * p.dot(&up));
    let mut out = String::new();
    header(&mut out);
    let _ = writeln!(
        out,
        r#"<circle cx="{c}" cy="{c}" r="{SCALE}" fill="none" stroke="gray"/>"#,
        c = SIZE / 2.0
    );
    for (u, v) in emb.graph.edges() {
        let (a, b) = (emb.points[u].vec(), emb.points[v].vec());
        let angle = a.angle(&b);
        let path: Vec<String> = (0..=16)
            .map(|k| {
                let t = k as f64 / 16.0;
                let p = ((1.0 - t) * angle).sin() * a + (t * angle).sin() * b;
                let (x, y) = screen(&p.normalize());
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let front = (a + b).dot(&eye) >= 0.0;
        let _ = writeln!(
            out,
            r#"<polyline class="edge" points="{}" fill="none" stroke="black" opacity="{}"/>"#,
            path.join(" "),
            if front { "1" } else { "0.3" }
        );
    }
    for (v, p) in emb.points.iter().enumerate() {
        let q = p.vec();
        let (x, y) = screen(&q);
        vertex(&mut out, x, y, emb.graph.degree(v) == 0, if q.dot(&eye) >= 0.0 { 1.0 } else { 0.3 });
    }
    out.push_str("</svg>\n");
    out
}

/// Straight-line drawing of the plane graph with its largest face outside.
pub fn graph_svg(g: &PlaneGraph) -> Result<String, PipelineError> {
    let faces = trace_faces(g)?;
    let outer = (0..faces.len()).max_by_key(|&f| faces[f].size()).unwrap_or(0);
    let pos = if faces.is_empty() {
        vec![[0.0, 0.0]; g.vertex_count()]
    } else {
        tutte_layout(g, &faces, outer, 1.0)
    };
    let screen = |[x, y]: [f64; 2]| (SIZE / 2.0 + SCALE * x, SIZE / 2.0 - SCALE * y);
    let mut out = String::new();
    header(&mut out);
    for (u, v) in g.edges() {
        let ((x1, y1), (x2, y2)) = (screen(pos[u]), screen(pos[v]));
        let _ = writeln!(
            out,
            r#"<line class="edge" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="black"/>"#
        );
    }
    for v in 0..g.vertex_count() {
        let (x, y) = screen(pos[v]);
        vertex(&mut out, x, y, g.degree(v) == 0, 1.0);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn stem(r: &ResultRecord, idx: usize) -> String {
    format!("n{}_{:02}_{}", r.n, idx + 1, &r.code.to_hex()[..16.min(r.code.to_hex().len())])
}

/// Two files per embedded record: `<stem>_sphere.svg` and `<stem>_graph.svg`.
pub fn export_svg(catalog: &Catalog, dir: &Path, opts: &ExportOptions) -> Result<Vec<PathBuf>, PipelineError> {
    let mut written = Vec::new();
    let embedded: Vec<&ResultRecord> = catalog.embedded().collect();
    if embedded.is_empty() {
        return Ok(written);
    }
    std::fs::create_dir_all(dir)?;
    for (i, r) in embedded.into_iter().enumerate() {
        let Some(emb) = &r.embedding else { continue };
        let s = stem(r, i);
        let sphere = dir.join(format!("{s}_sphere.svg"));
        std::fs::write(&sphere, sphere_svg(emb, opts.view))?;
        let graph = dir.join(format!("{s}_graph.svg"));
        std::fs::write(&graph, graph_svg(&emb.graph)?)?;
        written.push(sphere);
        written.push(graph);
    }
    Ok(written)
}

/// Element counts of a generated drawing: `(vertices, edges)`.
pub fn count_elements(svg: &str) -> (usize, usize) {
    (svg.matches(r#"class="vertex""#).count(), svg.matches(r#"class="edge""#).count())
}
