//! Chart and report emission: deterministic ASCII grids, SVG 1.1 charts with
//! the operation-colored arrow conventions, and the JSON result schema.
//!
//! All output is byte-deterministic for fixed inputs: cells iterate in
//! (p,q)-order, blocks in stored order, and floating point coordinates use a
//! fixed format.

use num_bigint::BigInt;
use serde::Serialize;

use crate::diff::PageRegion;
use crate::engine::ComputedPage;
use crate::error::{Error, Result};
use crate::pages::{Block, Component, GroupObject};

/// Stroke color for an operation kind, following the four mod-2 colors of
/// the chart conventions plus darker shades for the pr/δ-composed kinds.
pub fn op_color(op: &str) -> &'static str {
    match op {
        "t" => "#1f4fff",                  // τ: blue
        "Sq2" => "#e02020",                // Sq²: red
        "r Sq1 + Sq2" => "#f08000",        // Sq² + ρSq¹: orange
        "Sq3 Sq1" => "#10a010",            // Sq³Sq¹: green
        "Sq2 pr" => "#8b0000",             // Sq²∘pr: dark red
        "t pr" => "#00008b",               // τ∘pr: dark blue
        "d Sq2 Sq1" => "#006400",          // δSq²Sq¹: dark green
        "Sq2 Sq1 + Sq3" => "#800080",      // Q₁: purple
        _ => "#000000",
    }
}

const LEGEND: &[(&str, &str)] = &[
    ("t", "tau"),
    ("Sq2", "Sq2"),
    ("r Sq1 + Sq2", "Sq2 + rho Sq1"),
    ("Sq3 Sq1", "Sq3 Sq1"),
    ("Sq2 pr", "Sq2 . pr"),
    ("t pr", "tau . pr"),
    ("d Sq2 Sq1", "delta Sq2 Sq1"),
    ("Sq2 Sq1 + Sq3", "Q1 = Sq3 + Sq2 Sq1"),
];

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize)]
struct PageJson {
    spectrum: String,
    field: String,
    page: String,
    cells: Vec<CellJson>,
    differentials: Vec<DiffJson>,
}

#[derive(Serialize)]
struct CellJson {
    p: i64,
    q: i64,
    components: Vec<ComponentJson>,
}

#[derive(Serialize)]
struct ComponentJson {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    bidegree: Option<[i64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<String>,
    labels: Vec<String>,
}

#[derive(Serialize)]
struct DiffJson {
    from: [i64; 2],
    blocks: Vec<BlockJson>,
}

#[derive(Serialize)]
struct BlockJson {
    src_index: usize,
    tgt_index: usize,
    op: String,
    matrix: Vec<Vec<i64>>,
}

fn component_json(c: &Component) -> ComponentJson {
    match c {
        Component::F2 { bidegree, dim, labels, .. } => ComponentJson {
            kind: "h".into(),
            bidegree: Some([bidegree.0, bidegree.1]),
            dim: Some(*dim),
            group: None,
            labels: labels.clone(),
        },
        Component::Integral { bidegree, cell, .. } => ComponentJson {
            kind: "H".into(),
            bidegree: Some([bidegree.0, bidegree.1]),
            dim: None,
            group: Some(if cell.divisible_part {
                format!("{} + divisible", cell.group)
            } else {
                cell.group.to_string()
            }),
            labels: Vec::new(),
        },
        Component::Divisible { bidegree, .. } => ComponentJson {
            kind: "H-divisible".into(),
            bidegree: Some([bidegree.0, bidegree.1]),
            dim: None,
            group: Some("divisible".into()),
            labels: Vec::new(),
        },
    }
}

fn block_matrix_json(block: &Block) -> Result<Vec<Vec<i64>>> {
    let big_to_i64 = |v: &BigInt| {
        i64::try_from(v).map_err(|_| {
            Error::Consistency("δ-block entry does not fit the JSON integer range".into())
        })
    };
    match block {
        Block::F2(m) | Block::IntToF2(m) => Ok((0..m.rows())
            .map(|i| (0..m.cols()).map(|j| i64::from(m.get(i, j))).collect())
            .collect()),
        Block::F2ToInt(m) => (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| big_to_i64(m.get(i, j))).collect())
            .collect(),
    }
}

/// The JSON result document for an E¹-page region.
pub fn render_json_e1(region: &PageRegion) -> Result<String> {
    let cells = region
        .cells
        .iter()
        .map(|(&(p, q), cell)| CellJson {
            p,
            q,
            components: cell.components.iter().map(component_json).collect(),
        })
        .collect();
    let mut differentials = Vec::new();
    for (&(p, q), hom) in &region.homs {
        if hom.blocks.is_empty() {
            continue;
        }
        let blocks = hom
            .blocks
            .iter()
            .map(|(i, k, data)| {
                Ok(BlockJson {
                    src_index: *i,
                    tgt_index: *k,
                    op: data.op.clone(),
                    matrix: block_matrix_json(&data.block)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        differentials.push(DiffJson { from: [p, q], blocks });
    }
    let doc = PageJson {
        spectrum: region.spectrum.name().into(),
        field: region.field_name.clone(),
        page: "E1".into(),
        cells,
        differentials,
    };
    Ok(serde_json::to_string_pretty(&doc).expect("serialization"))
}

/// The JSON result document for a computed (E² or E^∞) page.
pub fn render_json_computed(page: &ComputedPage) -> String {
    let cells = page
        .cells
        .iter()
        .map(|(&(p, q), cell)| CellJson {
            p,
            q,
            components: vec![ComponentJson {
                kind: "group".into(),
                bidegree: None,
                dim: None,
                group: Some(cell.render()),
                labels: cell.labels.clone(),
            }],
        })
        .collect();
    let doc = PageJson {
        spectrum: page.spectrum.name().into(),
        field: page.field_name.clone(),
        page: page.page_label.clone(),
        cells,
        differentials: Vec::new(),
    };
    serde_json::to_string_pretty(&doc).expect("serialization")
}

// ---------------------------------------------------------------------------
// ASCII

const CELL_WIDTH: usize = 14;

fn pad(s: &str, w: usize) -> String {
    let mut out = s.to_string();
    if out.len() > w {
        out.truncate(w.saturating_sub(1));
        out.push('…');
    }
    while out.len() < w {
        out.push(' ');
    }
    out
}

/// Fixed-width grid with one row per summand slot inside each weight band,
/// mirroring the stacked-dot chart layout, followed by a textual arrow list.
pub fn render_ascii_e1(region: &PageRegion) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "spectrum {}  field {}  page E1  p in [{},{}]  q in [0,{}]\n\n",
        region.spectrum.name(),
        region.field_name,
        region.pmin,
        region.pmax,
        region.qmax
    ));
    for q in (0..=region.qmax).rev() {
        let band: Vec<&GroupObject> = (region.pmin..=region.pmax)
            .map(|p| &region.cells[&(p, q)])
            .collect();
        let slots = band.iter().map(|c| c.components.len()).max().unwrap_or(0).max(1);
        // stack top slots first so larger offsets sit at the bottom of the band
        for slot in (0..slots).rev() {
            if slot == slots - 1 {
                out.push_str(&format!("q={q:>2} |"));
            } else {
                out.push_str("     |");
            }
            for cell in &band {
                let label = cell
                    .components
                    .get(slot)
                    .map(|c| c.label())
                    .unwrap_or_default();
                out.push_str(&pad(&label, CELL_WIDTH));
            }
            out.push('\n');
        }
    }
    out.push_str("     +");
    out.push_str(&"-".repeat(CELL_WIDTH * (region.pmax - region.pmin + 1) as usize));
    out.push('\n');
    out.push_str("      ");
    for p in region.pmin..=region.pmax {
        out.push_str(&pad(&format!("p={p}"), CELL_WIDTH));
    }
    out.push('\n');

    let mut arrows = Vec::new();
    for (&(p, q), hom) in &region.homs {
        for (i, k, data) in &hom.blocks {
            let nonzero = match &data.block {
                Block::F2(m) | Block::IntToF2(m) => !m.is_zero(),
                Block::F2ToInt(m) => !m.is_zero(),
            };
            if !nonzero {
                continue;
            }
            let src = hom.source.components[*i].label();
            let tgt = hom.target.components[*k].label();
            arrows.push(format!(
                "  ({p},{q}) {src} --[{}]--> ({},{}) {tgt}",
                data.op,
                p - 1,
                q + 1
            ));
        }
    }
    if !arrows.is_empty() {
        out.push_str("\narrows:\n");
        for a in arrows {
            out.push_str(&a);
            out.push('\n');
        }
    }
    out
}

pub fn render_ascii_computed(page: &ComputedPage) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "spectrum {}  field {}  page {}  p in [{},{}]  q in [0,{}]\n\n",
        page.spectrum.name(),
        page.field_name,
        page.page_label,
        page.pmin,
        page.pmax,
        page.qmax
    ));
    for q in (0..=page.qmax).rev() {
        out.push_str(&format!("q={q:>2} |"));
        for p in page.pmin..=page.pmax {
            let cell = &page.cells[&(p, q)];
            out.push_str(&pad(&cell.render(), CELL_WIDTH));
        }
        out.push('\n');
    }
    out.push_str("     +");
    out.push_str(&"-".repeat(CELL_WIDTH * (page.pmax - page.pmin + 1) as usize));
    out.push('\n');
    out.push_str("      ");
    for p in page.pmin..=page.pmax {
        out.push_str(&pad(&format!("p={p}"), CELL_WIDTH));
    }
    out.push('\n');
    out
}

// ---------------------------------------------------------------------------
// SVG

const SVG_CELL_W: f64 = 130.0;
const SVG_CELL_H: f64 = 90.0;
const SVG_MARGIN: f64 = 60.0;

struct SvgCanvas {
    body: String,
    width: f64,
    height: f64,
}

impl SvgCanvas {
    fn new(width: f64, height: f64) -> Self {
        SvgCanvas {
            body: String::new(),
            width,
            height,
        }
    }

    fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
             width=\"{:.1}\" height=\"{:.1}\" viewBox=\"0 0 {:.1} {:.1}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.width, self.height, self.width, self.height, self.body
        )
    }

    fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, color: &str, width: f64) {
        self.body.push_str(&format!(
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" \
             stroke=\"{color}\" stroke-width=\"{width:.1}\"/>\n"
        ));
    }

    fn circle(&mut self, x: f64, y: f64, r: f64, color: &str) {
        self.body.push_str(&format!(
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{r:.1}\" fill=\"{color}\"/>\n"
        ));
    }

    fn text(&mut self, x: f64, y: f64, size: f64, content: &str) {
        self.body.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"{size:.1}\" \
             font-family=\"monospace\">{}</text>\n",
            xml_escape(content)
        ));
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

struct Grid {
    pmin: i64,
    pmax: i64,
    qmax: i64,
}

impl Grid {
    fn x(&self, p: i64) -> f64 {
        SVG_MARGIN + (p - self.pmin) as f64 * SVG_CELL_W + SVG_CELL_W / 2.0
    }

    /// Vertical position of component slot `k` out of `n` in the weight-q
    /// band; slot 0 sits at the bottom, mirroring the stacked-dot figures.
    fn y(&self, q: i64, slot: usize, slots: usize) -> f64 {
        let band_top = SVG_MARGIN + (self.qmax - q) as f64 * SVG_CELL_H;
        band_top + SVG_CELL_H - (slot + 1) as f64 * SVG_CELL_H / (slots as f64 + 1.0)
    }

    fn width(&self) -> f64 {
        SVG_MARGIN * 2.0 + (self.pmax - self.pmin + 1) as f64 * SVG_CELL_W
    }

    fn height(&self) -> f64 {
        SVG_MARGIN * 2.0 + (self.qmax + 1) as f64 * SVG_CELL_H + 20.0 * LEGEND.len() as f64
    }
}

fn draw_frame(canvas: &mut SvgCanvas, grid: &Grid, title: &str) {
    canvas.text(SVG_MARGIN, SVG_MARGIN - 30.0, 16.0, title);
    for q in 0..=grid.qmax {
        let y = SVG_MARGIN + (grid.qmax - q) as f64 * SVG_CELL_H + SVG_CELL_H;
        canvas.line(SVG_MARGIN - 10.0, y, grid.width() - SVG_MARGIN, y, "#cccccc", 0.5);
        canvas.text(SVG_MARGIN - 40.0, y - SVG_CELL_H / 2.0, 12.0, &format!("q={q}"));
    }
    for p in grid.pmin..=grid.pmax {
        canvas.text(grid.x(p) - 10.0, grid.height() - SVG_MARGIN - 20.0 * LEGEND.len() as f64 + 15.0, 12.0, &format!("p={p}"));
    }
    let legend_y = grid.height() - 20.0 * LEGEND.len() as f64 - 10.0;
    for (row, (key, name)) in LEGEND.iter().enumerate() {
        let y = legend_y + 20.0 * row as f64;
        canvas.line(SVG_MARGIN, y, SVG_MARGIN + 30.0, y, op_color(key), 2.0);
        canvas.text(SVG_MARGIN + 40.0, y + 4.0, 11.0, name);
    }
}

/// SVG chart of an E¹-region: stacked component dots with group labels and
/// one colored arrow per nonzero d₁ block.
pub fn render_svg_e1(region: &PageRegion) -> String {
    let grid = Grid {
        pmin: region.pmin,
        pmax: region.pmax,
        qmax: region.qmax,
    };
    let mut canvas = SvgCanvas::new(grid.width(), grid.height());
    draw_frame(
        &mut canvas,
        &grid,
        &format!(
            "{} E1 page over {}",
            region.spectrum.name(),
            region.field_name
        ),
    );
    let slots_at = |p: i64, q: i64| -> usize {
        region
            .cells
            .get(&(p, q))
            .map(|c| c.components.len())
            .unwrap_or(0)
            .max(1)
    };
    for (&(p, q), hom) in &region.homs {
        let n_src = slots_at(p, q);
        let n_tgt = slots_at(p - 1, q + 1);
        if q + 1 > grid.qmax {
            continue;
        }
        for (i, k, data) in &hom.blocks {
            let nonzero = match &data.block {
                Block::F2(m) | Block::IntToF2(m) => !m.is_zero(),
                Block::F2ToInt(m) => !m.is_zero(),
            };
            if !nonzero {
                continue;
            }
            canvas.line(
                grid.x(p),
                grid.y(q, *i, n_src),
                grid.x(p - 1),
                grid.y(q + 1, *k, n_tgt),
                op_color(&data.op),
                1.5,
            );
        }
    }
    for (&(p, q), cell) in &region.cells {
        let slots = cell.components.len().max(1);
        for (slot, comp) in cell.components.iter().enumerate() {
            let x = grid.x(p);
            let y = grid.y(q, slot, slots);
            let radius = if matches!(comp, Component::F2 { .. }) {
                3.0
            } else {
                4.5
            };
            canvas.circle(x, y, radius, "#000000");
            canvas.text(x + 6.0, y + 3.0, 10.0, &comp.label());
        }
    }
    canvas.finish()
}

/// SVG chart of a computed page: one labeled dot per nonzero cell.
pub fn render_svg_computed(page: &ComputedPage) -> String {
    let grid = Grid {
        pmin: page.pmin,
        pmax: page.pmax,
        qmax: page.qmax,
    };
    let mut canvas = SvgCanvas::new(grid.width(), grid.height());
    draw_frame(
        &mut canvas,
        &grid,
        &format!(
            "{} {} page over {}",
            page.spectrum.name(),
            page.page_label,
            page.field_name
        ),
    );
    for (&(p, q), cell) in &page.cells {
        if cell.is_zero() {
            continue;
        }
        let x = grid.x(p);
        let y = grid.y(q, 0, 1);
        canvas.circle(x, y, 3.5, "#000000");
        canvas.text(x + 6.0, y + 3.0, 10.0, &cell.render());
    }
    canvas.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff::d1_region;
    use crate::engine::e2_page;
    use crate::field::{preset_field, PresetKind};
    use crate::pages::Spectrum;

    #[test]
    fn ascii_chart_is_deterministic_and_shows_arrows() {
        let real = preset_field(PresetKind::RealClosed).unwrap();
        let region = d1_region(Spectrum::KT, &real, 0, 4, 3).unwrap();
        let a = render_ascii_e1(&region);
        let b = render_ascii_e1(&d1_region(Spectrum::KT, &real, 0, 4, 3).unwrap());
        assert_eq!(a, b);
        // the τ-arrow out of (2,0) and a Sq²-arrow somewhere in the window
        assert!(a.contains("(2,0) h^{0,0} --[t]--> (1,1) h^{0,1}"), "{a}");
        assert!(a.contains("--[Sq2]-->"), "{a}");
    }

    #[test]
    fn svg_and_json_are_deterministic() {
        let f5 = preset_field(PresetKind::Finite(5)).unwrap();
        let region = d1_region(Spectrum::KQ, &f5, -2, 4, 4).unwrap();
        assert_eq!(render_svg_e1(&region), render_svg_e1(&region));
        assert_eq!(
            render_json_e1(&region).unwrap(),
            render_json_e1(&region).unwrap()
        );
        let page = e2_page(Spectrum::KT, &f5, -2, 4, 4, "E2").unwrap();
        assert_eq!(render_svg_computed(&page), render_svg_computed(&page));
        assert_eq!(render_json_computed(&page), render_json_computed(&page));
    }

    #[test]
    fn kq_top_arrows_have_pr_kinds() {
        let l5 = preset_field(PresetKind::Local(5)).unwrap();
        let region = d1_region(Spectrum::KQ, &l5, 0, 4, 4).unwrap();
        let ascii = render_ascii_e1(&region);
        assert!(ascii.contains("--[t pr]-->"), "{ascii}");
        // Sq²∘pr values are ρ²-multiples landing in degree ≥ 3, and every
        // preset with integral data has those groups zero, so only the τ∘pr
        // arrows are drawn; the kind itself stays in the legend.
        let svg = render_svg_e1(&region);
        assert!(svg.contains("#00008b"), "τ∘pr stroke missing");
        assert!(svg.contains("#8b0000"), "Sq²∘pr legend entry missing");
        assert_eq!(op_color("Sq2 pr"), "#8b0000");
    }

    #[test]
    fn empty_region_renders_axes_only() {
        let f = preset_field(PresetKind::QuadraticallyClosed).unwrap();
        let region = d1_region(Spectrum::KT, &f, 1, 1, 2).unwrap();
        let ascii = render_ascii_e1(&region);
        assert!(ascii.contains("p=1"));
        assert!(!ascii.contains("arrows"));
    }

    #[test]
    fn json_has_schema_keys() {
        let f5 = preset_field(PresetKind::Finite(5)).unwrap();
        let region = d1_region(Spectrum::KT, &f5, -1, 1, 2).unwrap();
        let json = render_json_e1(&region).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["spectrum"], "KT");
        assert!(value["cells"].is_array());
        assert!(value["differentials"].is_array());
        let cell = &value["cells"][0];
        assert!(cell["p"].is_i64());
        assert!(cell["components"].is_array());
    }
}
