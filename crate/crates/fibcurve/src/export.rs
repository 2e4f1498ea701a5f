//! Deterministic emitters: SVG renderings of patches, decorations,
//! approximating polygons and quadrant tessellations, plus JSON and CSV data
//! dumps.
//!
//! Exactness lives in the JSON patch format (`fibcurve-patch-v1`), which
//! round-trips losslessly. SVG and CSV are presentation: floats at a fixed
//! 12-decimal precision from exact values, y axis flipped for screen
//! convention, fixed palette, no timestamps — identical inputs produce
//! byte-identical bytes.

use serde::{Deserialize, Serialize};

use crate::curve::partition;
use crate::golden::{GoldenInt, GoldenRat, Point2, Rect};
use crate::prototiles::{Color, Label};
use crate::solver::DecorationSystem;
use crate::substitution::{supertile, Patch, PlacedTile};
use crate::Error;

/// The polyline through level-k rectangle centres, exact coordinates.
#[derive(Clone, PartialEq, Debug)]
pub struct Polyline {
    pub points: Vec<Point2>,
}

impl Polyline {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Drop interior vertices that sit on the straight line through their
    /// neighbours (exact collinearity test) and consecutive duplicates.
    pub fn collapse_collinear(&self) -> Polyline {
        let mut points: Vec<Point2> = Vec::with_capacity(self.points.len());
        for p in &self.points {
            if points.last() == Some(p) {
                continue;
            }
            while points.len() >= 2 {
                let a = &points[points.len() - 2];
                let b = &points[points.len() - 1];
                // cross product of (b - a) and (p - b), exact
                let abx = &b.x - &a.x;
                let aby = &b.y - &a.y;
                let bpx = &p.x - &b.x;
                let bpy = &p.y - &b.y;
                let cross = &(&abx * &bpy) - &(&aby * &bpx);
                if cross.sign() == 0 {
                    points.pop();
                } else {
                    break;
                }
            }
            points.push(p.clone());
        }
        Polyline { points }
    }
}

/// The k-th approximating polygon: centres of the level-k partition
/// rectangles in curve order.
pub fn polygon(k: u32) -> Polyline {
    assert!(k >= 1, "approximating polygons start at level 1");
    let level = partition(k);
    Polyline { points: level.rects.iter().map(Rect::center).collect() }
}

/// The quadrant patch after 2m substitution steps: the seed tile `A1+` stays
/// pinned at the origin, and each patch contains the previous one as a
/// prefix, so iterating covers the first quadrant.
pub fn tessellate(m: u32) -> Patch {
    assert!(m >= 1);
    supertile("A1+".parse().expect("static label"), 2 * m)
}

/// Rendering options. Palette order: fills for A, B, C, D.
#[derive(Clone, Debug)]
pub struct Style {
    pub palette: [String; 4],
    pub outline: String,
    pub curve_color: String,
    pub show_decorations: bool,
    pub show_grid: bool,
}

impl Default for Style {
    fn default() -> Self {
        Self {
            palette: [
                "#f4d06f".to_string(), // A
                "#9dd9d2".to_string(), // B
                "#b5e2a2".to_string(), // C
                "#e8a0bf".to_string(), // D
            ],
            outline: "#55504a".to_string(),
            curve_color: "#16130f".to_string(),
            show_decorations: true,
            show_grid: true,
        }
    }
}

impl Style {
    pub fn fill_for(&self, color: Color) -> &str {
        &self.palette[match color {
            Color::A => 0,
            Color::B => 1,
            Color::C => 2,
            Color::D => 3,
        }]
    }
}

fn fmt_num(x: f64) -> String {
    // normalize the signed zero so -0.000000000000 never leaks into output
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.12}")
}

/// World-to-SVG mapping: uniform scale plus y flip inside the given bounds.
struct Canvas {
    min_x: f64,
    max_y: f64,
    scale: f64,
    width: f64,
    height: f64,
}

impl Canvas {
    const TARGET: f64 = 720.0;

    fn new(bounds: &[Rect], margin_frac: f64) -> Self {
        let mut min_x = f64::INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        for r in bounds {
            min_x = min_x.min(r.x0().to_f64());
            min_y = min_y.min(r.y0().to_f64());
            max_x = max_x.max(r.x1().to_f64());
            max_y = max_y.max(r.y1().to_f64());
        }
        let span = (max_x - min_x).max(max_y - min_y);
        let margin = span * margin_frac;
        min_x -= margin;
        min_y -= margin;
        max_x += margin;
        max_y += margin;
        let scale = Self::TARGET / (max_x - min_x).max(max_y - min_y);
        Self {
            min_x,
            max_y,
            scale,
            width: (max_x - min_x) * scale,
            height: (max_y - min_y) * scale,
        }
    }

    fn x(&self, wx: f64) -> f64 {
        (wx - self.min_x) * self.scale
    }

    fn y(&self, wy: f64) -> f64 {
        (self.max_y - wy) * self.scale
    }

    fn point(&self, p: &Point2) -> (f64, f64) {
        let (px, py) = p.to_f64();
        (self.x(px), self.y(py))
    }

    fn header(&self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {} {}\" width=\"{}\" height=\"{}\">\n",
            fmt_num(self.width),
            fmt_num(self.height),
            fmt_num(self.width),
            fmt_num(self.height)
        )
    }

    fn rect_element(&self, rect: &Rect, fill: &str, stroke: &str, stroke_width: f64) -> String {
        let x = self.x(rect.x0().to_f64());
        let y = self.y(rect.y1().to_f64());
        let w = rect.width.to_f64() * self.scale;
        let h = rect.height.to_f64() * self.scale;
        format!(
            "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
            fmt_num(x), fmt_num(y), fmt_num(w), fmt_num(h), fill, stroke, fmt_num(stroke_width)
        )
    }

    fn polyline_element(&self, points: &[Point2], stroke: &str, stroke_width: f64) -> String {
        let coords: Vec<String> = points
            .iter()
            .map(|p| {
                let (x, y) = self.point(p);
                format!("{},{}", fmt_num(x), fmt_num(y))
            })
            .collect();
        format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-linejoin=\"round\" stroke-linecap=\"round\"/>\n",
            coords.join(" "),
            stroke,
            fmt_num(stroke_width)
        )
    }
}

/// Render a patch: colored tile rectangles, and the decoration chain as
/// straight start-to-end segments when requested. The interior shape of a
/// decoration is not fixed by the construction; only its endpoints are.
pub fn patch_to_svg(patch: &Patch, style: &Style) -> String {
    let canvas = Canvas::new(std::slice::from_ref(&patch.support), 0.03);
    let stroke_w = 1.0;
    let mut out = canvas.header();
    for tile in &patch.tiles {
        out.push_str(&canvas.rect_element(
            &tile.support(),
            style.fill_for(tile.label.color),
            &style.outline,
            stroke_w,
        ));
    }
    if style.show_decorations {
        let system = DecorationSystem::reference();
        let mut chain: Vec<Point2> = Vec::with_capacity(patch.tiles.len() + 1);
        for tile in &patch.tiles {
            let (s, e) = decoration_segment(tile, &system);
            if chain.last() != Some(&s) {
                chain.push(s);
            }
            chain.push(e);
        }
        out.push_str(&canvas.polyline_element(&chain, &style.curve_color, 2.5));
    }
    out.push_str("</svg>\n");
    out
}

fn decoration_segment(tile: &PlacedTile, system: &DecorationSystem) -> (Point2, Point2) {
    let (s, e) = system.endpoint_points(tile.label);
    let lift = |(x, y): (GoldenInt, GoldenInt)| {
        Point2::new(GoldenRat::from(x), GoldenRat::from(y)).add(&tile.translation)
    };
    (lift(s), lift(e))
}

/// Render an approximating polygon over its partition grid.
pub fn polyline_to_svg(poly: &Polyline, grid: Option<&[Rect]>, style: &Style) -> String {
    let unit = Rect::new(Point2::origin(), GoldenRat::one(), GoldenRat::one());
    let canvas = Canvas::new(std::slice::from_ref(&unit), 0.03);
    let mut out = canvas.header();
    if style.show_grid {
        if let Some(rects) = grid {
            for rect in rects {
                out.push_str(&canvas.rect_element(rect, "none", &style.outline, 0.8));
            }
        }
    }
    out.push_str(&canvas.polyline_element(&poly.points, &style.curve_color, 2.5));
    out.push_str("</svg>\n");
    out
}

/// Reflected copies of the first-quadrant tessellation: identity, across
/// x = 0, across y = 0, and across the line x = -y, covering all four
/// quadrants. The anti-diagonal reflection swaps the B and C shapes.
pub fn tessellation_to_svg(patch: &Patch, reflect: bool, style: &Style) -> String {
    let tiles: Vec<(Color, Rect)> =
        patch.tiles.iter().map(|t| (t.label.color, t.support())).collect();

    let mut copies: Vec<(Color, Rect)> = tiles.clone();
    if reflect {
        for (color, rect) in &tiles {
            // across x = 0
            let mirrored_x = Rect::new(
                Point2::new(-&rect.x1(), rect.y0().clone()),
                rect.width.clone(),
                rect.height.clone(),
            );
            // across y = 0
            let mirrored_y = Rect::new(
                Point2::new(rect.x0().clone(), -&rect.y1()),
                rect.width.clone(),
                rect.height.clone(),
            );
            // across x = -y: (x, y) -> (-y, -x), widths and heights swap
            let anti = Rect::new(
                Point2::new(-&rect.y1(), -&rect.x1()),
                rect.height.clone(),
                rect.width.clone(),
            );
            let swapped = match color {
                Color::B => Color::C,
                Color::C => Color::B,
                c => *c,
            };
            copies.push((*color, mirrored_x));
            copies.push((*color, mirrored_y));
            copies.push((swapped, anti));
        }
    }

    let bounds: Vec<Rect> = copies.iter().map(|(_, r)| r.clone()).collect();
    let canvas = Canvas::new(&bounds, 0.03);
    let mut out = canvas.header();
    for (color, rect) in &copies {
        out.push_str(&canvas.rect_element(rect, style.fill_for(*color), &style.outline, 1.0));
    }
    out.push_str("</svg>\n");
    out
}

pub const PATCH_SCHEMA: &str = "fibcurve-patch-v1";

#[derive(Serialize, Deserialize)]
struct DecorationDoc {
    start: Point2,
    end: Point2,
}

#[derive(Serialize, Deserialize)]
struct TileDoc {
    label: Label,
    translation: Point2,
    width: GoldenInt,
    height: GoldenInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    decoration: Option<DecorationDoc>,
}

#[derive(Serialize, Deserialize)]
struct PatchDoc {
    schema: String,
    seed: Label,
    level: u32,
    bbox: Rect,
    tiles: Vec<TileDoc>,
}

/// Lossless JSON form of a patch (schema `fibcurve-patch-v1`).
pub fn patch_to_json(patch: &Patch, include_decorations: bool) -> String {
    let system = DecorationSystem::reference();
    let doc = PatchDoc {
        schema: PATCH_SCHEMA.to_string(),
        seed: patch.seed,
        level: patch.level,
        bbox: patch.support.clone(),
        tiles: patch
            .tiles
            .iter()
            .map(|tile| {
                let (w, h) = tile.label.color.dims();
                let decoration = include_decorations.then(|| {
                    let (start, end) = decoration_segment(tile, &system);
                    DecorationDoc { start, end }
                });
                TileDoc { label: tile.label, translation: tile.translation.clone(), width: w, height: h, decoration }
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("serializable document");
    out.push('\n');
    out
}

/// Parse a `fibcurve-patch-v1` document back into a patch, validating the
/// schema tag and the per-label tile dimensions.
pub fn patch_from_json(text: &str) -> Result<Patch, Error> {
    let doc: PatchDoc = serde_json::from_str(text)?;
    if doc.schema != PATCH_SCHEMA {
        return Err(Error::PatchFormat(format!(
            "unsupported schema {:?}, expected {PATCH_SCHEMA:?}",
            doc.schema
        )));
    }
    let mut tiles = Vec::with_capacity(doc.tiles.len());
    for (i, tile) in doc.tiles.into_iter().enumerate() {
        let (w, h) = tile.label.color.dims();
        if tile.width != w || tile.height != h {
            return Err(Error::PatchFormat(format!(
                "tile {i} ({}) has dimensions {} × {}, expected {} × {}",
                tile.label, tile.width, tile.height, w, h
            )));
        }
        tiles.push(PlacedTile::new(tile.label, tile.translation));
    }
    Ok(Patch { seed: doc.seed, level: doc.level, tiles, support: doc.bbox })
}

/// CSV dump of a polyline: header `i,x,y`, 1-based index, 12-decimal floats.
pub fn polyline_to_csv(poly: &Polyline) -> String {
    let mut out = String::from("i,x,y\n");
    for (i, p) in poly.points.iter().enumerate() {
        let (x, y) = p.to_f64();
        out.push_str(&format!("{},{},{}\n", i + 1, fmt_num(x), fmt_num(y)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::fibonacci_u64;

    #[test]
    fn polygon_counts_and_first_level_vertices() {
        for k in 1..=4u32 {
            assert_eq!(polygon(k).len() as u64, fibonacci_u64(k + 2).pow(2), "k = {k}");
        }
        // level 1 centres: φ⁻¹/2 on the small side, (φ⁻¹ + 1)/2 = φ/2 on the large
        let lo = GoldenRat::new(GoldenInt::new(-1, 1), 2);
        let hi = GoldenRat::new(GoldenInt::phi(), 2);
        let got = polygon(1).points;
        assert_eq!(got[0], Point2::new(lo.clone(), lo.clone()));
        assert_eq!(got[1], Point2::new(lo.clone(), hi.clone()));
        assert_eq!(got[2], Point2::new(hi.clone(), hi.clone()));
        assert_eq!(got[3], Point2::new(hi.clone(), lo.clone()));
    }

    #[test]
    fn polygon_vertices_live_in_edge_adjacent_rects() {
        for k in 1..=5u32 {
            let level = partition(k);
            let poly = polygon(k);
            assert_eq!(poly.len(), level.len());
            for (i, pair) in level.rects.windows(2).enumerate() {
                assert!(pair[0].edge_adjacent(&pair[1]), "k = {k}, rects {i},{}", i + 1);
                assert!(pair[0].contains(&poly.points[i]));
                assert!(pair[1].contains(&poly.points[i + 1]));
            }
        }
    }

    #[test]
    fn collinear_collapse_is_exact() {
        // level 2 has 9 centres, 7 after merging straight runs
        let collapsed = polygon(2).collapse_collinear();
        assert_eq!(collapsed.len(), 7);
        // the three collinear points (0.191…, 0.809…), (0.5, 0.809…), (0.809…, 0.809…)
        // merge into a single segment
        let xs: Vec<f64> = collapsed.points.iter().map(|p| p.to_f64().0).collect();
        assert!((xs[4] - 0.190983005625).abs() < 1e-12);
        assert!((xs[5] - 0.809016994375).abs() < 1e-12);
    }

    #[test]
    fn tessellation_grows_by_prefix() {
        let t1 = tessellate(1);
        let t2 = tessellate(2);
        assert_eq!(t1.tiles.len(), 9);
        assert_eq!(t2.tiles.len(), 64);
        assert_eq!(&t2.tiles[..9], &t1.tiles[..], "previous patch is a prefix");
        assert_eq!(t1.tiles[0].label.to_string(), "A1+");
        assert_eq!(t1.tiles[0].translation, Point2::origin());
    }

    #[test]
    fn json_round_trip_is_lossless() {
        for include in [true, false] {
            let patch = supertile("B2-".parse().unwrap(), 2);
            let text = patch_to_json(&patch, include);
            let back = patch_from_json(&text).unwrap();
            assert_eq!(back, patch);
        }
    }

    #[test]
    fn json_rejects_bad_documents() {
        let patch = supertile("A1+".parse().unwrap(), 1);
        let good = patch_to_json(&patch, false);

        let bad_schema = good.replace(PATCH_SCHEMA, "fibcurve-patch-v0");
        assert!(matches!(patch_from_json(&bad_schema), Err(Error::PatchFormat(_))));

        // B1+ is φ wide; claim it is 1 wide
        let lying = good.replace(
            "\"width\": [\n        \"0\",\n        \"1\"\n      ]",
            "\"width\": [\n        \"1\",\n        \"0\"\n      ]",
        );
        assert!(patch_from_json(&lying).is_err());

        assert!(patch_from_json("{}").is_err());
    }

    #[test]
    fn emitters_are_deterministic() {
        let style = Style::default();
        let patch = supertile("A1+".parse().unwrap(), 2);
        assert_eq!(patch_to_svg(&patch, &style), patch_to_svg(&patch, &style));
        let poly = polygon(2);
        let grid = partition(2).rects;
        assert_eq!(
            polyline_to_svg(&poly, Some(&grid), &style),
            polyline_to_svg(&poly, Some(&grid), &style)
        );
        assert_eq!(patch_to_json(&patch, true), patch_to_json(&patch, true));
        assert_eq!(
            tessellation_to_svg(&patch, true, &style),
            tessellation_to_svg(&patch, true, &style)
        );
    }

    #[test]
    fn csv_has_header_and_exact_row_count() {
        let csv = polyline_to_csv(&polygon(2));
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("i,x,y"));
        assert_eq!(lines.count(), 9);
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn svg_output_is_wellformed_enough() {
        // ω²(C1-) expands 2 then 6 tiles
        let svg = patch_to_svg(&supertile("C1-".parse().unwrap(), 2), &Style::default());
        assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<rect").count(), 6);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(!svg.contains("NaN"));
        assert!(!svg.contains("-0.000000000000"));
    }
}
