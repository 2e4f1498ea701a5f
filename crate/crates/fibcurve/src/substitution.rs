//! The geometric substitutions: the one-dimensional golden rule, its
//! two-dimensional Cartesian square over the four rectangle colors, and the
//! decorated rule over all 24 prototiles.
//!
//! A substitution replaces each tile by a patch of translated prototiles
//! inside the φ-scaled support, extended to placed tiles by
//! `ω(p + x) = ω(p) + φ·x`. Patches keep their tiles in *curve order* (the
//! order the supertile decoration visits them), which is what every
//! downstream consumer needs.
//!
//! The decorated rule ships with two index corrections relative to the
//! published one-dimensional listing: the third child of the `A1+` row is
//! `D4+` (not `D2+`) and the fourth child of the `A2+` row is `D3-` (not
//! `D1-`). Those are the unique indices under which the decoration chains
//! close (see `solver`); the published rows are retained verbatim for
//! diagnostics.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::golden::{GoldenInt, GoldenRat, Point2, Rect};
use crate::prototiles::{decoration_endpoints, Color, Label};
use crate::Error;

/// Letters of the one-dimensional golden substitution `A -> AB, B -> A`,
/// acting on intervals of lengths φ and 1 with expansion factor φ.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IntervalLetter {
    A,
    B,
}

impl IntervalLetter {
    pub fn length(self) -> GoldenInt {
        match self {
            IntervalLetter::A => GoldenInt::phi(),
            IntervalLetter::B => GoldenInt::one(),
        }
    }
}

/// The one-dimensional rule: `A -> A,B` and `B -> A`.
pub fn rule_mu1(letter: IntervalLetter) -> &'static [IntervalLetter] {
    match letter {
        IntervalLetter::A => &[IntervalLetter::A, IntervalLetter::B],
        IntervalLetter::B => &[IntervalLetter::A],
    }
}

/// k-fold application of the one-dimensional rule to a single letter.
pub fn mu1_word(seed: IntervalLetter, k: u32) -> Vec<IntervalLetter> {
    let mut word = vec![seed];
    for _ in 0..k {
        word = word.iter().flat_map(|&l| rule_mu1(l).iter().copied()).collect();
    }
    word
}

/// Cell offsets of the two-dimensional color substitution (the Cartesian
/// square of the one-dimensional rule). Each color expands into the φ-scaled
/// support partitioned at x = φ and/or y = φ:
///
/// ```text
/// A -> A(0,0) C(φ,0) B(0,φ) D(φ,φ)      B -> A(0,0) C(φ,0)
/// C -> A(0,0) B(0,φ)                    D -> A(0,0)
/// ```
pub fn mu2_cells(parent: Color) -> Vec<(Color, (GoldenInt, GoldenInt))> {
    let z = GoldenInt::zero;
    let p = GoldenInt::phi;
    match parent {
        Color::A => vec![
            (Color::A, (z(), z())),
            (Color::C, (p(), z())),
            (Color::B, (z(), p())),
            (Color::D, (p(), p())),
        ],
        Color::B => vec![(Color::A, (z(), z())), (Color::C, (p(), z()))],
        Color::C => vec![(Color::A, (z(), z())), (Color::B, (z(), p()))],
        Color::D => vec![(Color::A, (z(), z()))],
    }
}

fn cell_for(parent: Color, child: Color) -> (GoldenInt, GoldenInt) {
    mu2_cells(parent)
        .into_iter()
        .find(|(c, _)| *c == child)
        .map(|(_, cell)| cell)
        .unwrap_or_else(|| panic!("color {child:?} does not occur in a {parent:?} supertile"))
}

// The decorated rule's twelve `+` rows, children in curve order.
const PLUS_ROWS: [(&str, &[&str]); 12] = [
    ("A1+", &["A4-", "B1+", "D4+", "C1-"]),
    ("A2+", &["C1+", "A3+", "B1+", "D3-"]),
    ("A3+", &["D2-", "C2-", "A2+", "B2+"]),
    ("A4+", &["B2-", "D1+", "C2-", "A1-"]),
    ("B1+", &["A1+", "C2+"]),
    ("B2+", &["C1+", "A3+"]),
    ("C1+", &["A2+", "B2+"]),
    ("C2+", &["A4-", "B1+"]),
    ("D1+", &["A1+"]),
    ("D2+", &["A2+"]),
    ("D3+", &["A3+"]),
    ("D4+", &["A4+"]),
];

// The one-dimensional listing as published, all 24 rows. Two of the D
// indices (third child of A1+, fourth child of A2+, and their mirrors) are
// inconsistent with the concatenation constraints; kept for diagnostics.
const PRINTED_ROWS: [(&str, &[&str]); 24] = [
    ("A1+", &["A4-", "B1+", "D2+", "C1-"]),
    ("A2+", &["C1+", "A3+", "B1+", "D1-"]),
    ("A3+", &["D2-", "C2-", "A2+", "B2+"]),
    ("A4+", &["B2-", "D1+", "C2-", "A1-"]),
    ("B1+", &["A1+", "C2+"]),
    ("B2+", &["C1+", "A3+"]),
    ("C1+", &["A2+", "B2+"]),
    ("C2+", &["A4-", "B1+"]),
    ("D1+", &["A1+"]),
    ("D2+", &["A2+"]),
    ("D3+", &["A3+"]),
    ("D4+", &["A4+"]),
    ("A1-", &["C1+", "D2-", "B1-", "A4+"]),
    ("A2-", &["D1+", "B1-", "A3-", "C1-"]),
    ("A3-", &["B2-", "A2-", "C2+", "D2+"]),
    ("A4-", &["A1+", "C2+", "D1-", "B2+"]),
    ("B1-", &["C2-", "A1-"]),
    ("B2-", &["A3-", "C1-"]),
    ("C1-", &["B2-", "A2-"]),
    ("C2-", &["B1-", "A4+"]),
    ("D1-", &["A1-"]),
    ("D2-", &["A2-"]),
    ("D3-", &["A3-"]),
    ("D4-", &["A4-"]),
];

fn parse_row(children: &[&str]) -> Vec<Label> {
    children.iter().map(|s| s.parse().expect("static rule table")).collect()
}

/// All 24 published rows (labels only, no cells), row index = label position.
pub fn printed_nu_rows() -> &'static Vec<Vec<Label>> {
    static ROWS: OnceLock<Vec<Vec<Label>>> = OnceLock::new();
    ROWS.get_or_init(|| {
        let mut rows = vec![Vec::new(); 24];
        for (parent, children) in PRINTED_ROWS {
            let parent: Label = parent.parse().unwrap();
            rows[parent.position()] = parse_row(children);
        }
        rows
    })
}

/// The corrected `+` rows (labels only), indexed by base position.
pub fn corrected_plus_rows() -> &'static Vec<Vec<Label>> {
    static ROWS: OnceLock<Vec<Vec<Label>>> = OnceLock::new();
    ROWS.get_or_init(|| {
        let mut rows = vec![Vec::new(); 12];
        for (parent, children) in PLUS_ROWS {
            let parent: Label = parent.parse().unwrap();
            rows[parent.base_position()] = parse_row(children);
        }
        rows
    })
}

/// The decorated substitution: for each label, the ordered children and
/// their exact cell offsets inside the φ-scaled support. Expansion factor φ.
#[derive(Clone, Debug)]
pub struct SubstitutionRule {
    rows: Vec<Vec<(Label, (GoldenInt, GoldenInt))>>,
}

impl SubstitutionRule {
    /// Build a rule from twelve `+` rows; `-` rows are the reversed rows
    /// with every child sign flipped, cells carried along.
    pub fn from_plus_rows(plus_rows: &[Vec<Label>]) -> Self {
        assert_eq!(plus_rows.len(), 12);
        let mut rows = vec![Vec::new(); 24];
        for (base_pos, children) in plus_rows.iter().enumerate() {
            let parent = Label::from_position(base_pos);
            let with_cells: Vec<(Label, (GoldenInt, GoldenInt))> = children
                .iter()
                .map(|&child| {
                    let cell = cell_for(parent.color, child.color);
                    (child, cell)
                })
                .collect();
            let reversed: Vec<(Label, (GoldenInt, GoldenInt))> = with_cells
                .iter()
                .rev()
                .map(|(child, cell)| (child.reversed(), cell.clone()))
                .collect();
            rows[parent.position()] = with_cells;
            rows[parent.reversed().position()] = reversed;
        }
        Self { rows }
    }

    pub fn row(&self, label: Label) -> &[(Label, (GoldenInt, GoldenInt))] {
        &self.rows[label.position()]
    }

    /// Labels of a row, without cells.
    pub fn row_labels(&self, label: Label) -> Vec<Label> {
        self.row(label).iter().map(|(l, _)| *l).collect()
    }
}

/// The corrected decorated substitution rule.
pub fn rule_omega() -> &'static SubstitutionRule {
    static RULE: OnceLock<SubstitutionRule> = OnceLock::new();
    RULE.get_or_init(|| SubstitutionRule::from_plus_rows(corrected_plus_rows()))
}

/// A prototile placed by exact translation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PlacedTile {
    pub label: Label,
    pub translation: Point2,
}

impl PlacedTile {
    pub fn new(label: Label, translation: Point2) -> Self {
        Self { label, translation }
    }

    pub fn at_origin(label: Label) -> Self {
        Self::new(label, Point2::origin())
    }

    pub fn support(&self) -> Rect {
        let (w, h) = self.label.color.dims();
        Rect::new(self.translation.clone(), GoldenRat::from(w), GoldenRat::from(h))
    }

    /// Decoration endpoints in ambient coordinates.
    pub fn decoration_points(&self) -> (Point2, Point2) {
        let (w, h) = self.label.color.dims();
        let (s, e) = decoration_endpoints(self.label).resolve(&w, &h);
        let to_point = |(x, y): (GoldenInt, GoldenInt)| {
            Point2::new(GoldenRat::from(x), GoldenRat::from(y)).add(&self.translation)
        };
        (to_point(s), to_point(e))
    }
}

/// An ordered, interior-disjoint collection of placed tiles.
///
/// `tiles` is in curve order; `support` is the exact union rectangle;
/// `level` counts substitution steps applied to the single-tile seed.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Patch {
    pub seed: Label,
    pub level: u32,
    pub tiles: Vec<PlacedTile>,
    pub support: Rect,
}

impl Patch {
    /// A single prototile at the origin.
    pub fn seed(label: Label) -> Self {
        let tile = PlacedTile::at_origin(label);
        let support = tile.support();
        Self { seed: label, level: 0, tiles: vec![tile], support }
    }

    pub fn labels(&self) -> Vec<Label> {
        self.tiles.iter().map(|t| t.label).collect()
    }

    /// Exact sum of tile areas.
    pub fn tile_area_sum(&self) -> GoldenRat {
        let mut acc = GoldenRat::zero();
        for t in &self.tiles {
            acc = &acc + &GoldenRat::from(t.label.color.area());
        }
        acc
    }

    /// Multiplicity of each of the 24 labels among the tiles.
    pub fn label_counts(&self) -> [u64; 24] {
        let mut counts = [0u64; 24];
        for t in &self.tiles {
            counts[t.label.position()] += 1;
        }
        counts
    }
}

/// One substitution step: every placed tile `(L, t)` becomes its rule row
/// translated by `φ·t`; output order is the concatenation of child rows in
/// parent order.
pub fn apply(patch: &Patch) -> Patch {
    let phi = GoldenInt::phi();
    let rule = rule_omega();
    let mut tiles = Vec::with_capacity(patch.tiles.len() * 4);
    for tile in &patch.tiles {
        let base = tile.translation.scale_golden(&phi);
        for (child, cell) in rule.row(tile.label) {
            let offset = Point2::new(GoldenRat::from(cell.0.clone()), GoldenRat::from(cell.1.clone()));
            tiles.push(PlacedTile::new(*child, base.add(&offset)));
        }
    }
    Patch {
        seed: patch.seed,
        level: patch.level + 1,
        tiles,
        support: patch.support.scale_golden(&phi),
    }
}

/// The k-supertile of a seed label, with `supertile(seed, 0)` the seed tile
/// itself. Support is the φ^k-scaled seed support anchored at the origin.
pub fn supertile(seed: Label, k: u32) -> Patch {
    let mut patch = Patch::seed(seed);
    for _ in 0..k {
        patch = apply(&patch);
    }
    patch
}

/// The label word the one-dimensional substitution produces after k steps:
/// the labels of `supertile(seed, k)` in curve order.
pub fn nu_word(seed: Label, k: u32) -> Vec<Label> {
    supertile(seed, k).labels()
}

/// The 24×24 nonnegative count matrix: entry `(i, j)` is the multiplicity of
/// prototile j in the substitution of prototile i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountMatrix {
    m: [[u64; 24]; 24],
}

impl CountMatrix {
    pub fn entry(&self, parent: Label, child: Label) -> u64 {
        self.m[parent.position()][child.position()]
    }

    pub fn row(&self, parent: Label) -> &[u64; 24] {
        &self.m[parent.position()]
    }

    pub fn row_sum(&self, parent: Label) -> u64 {
        self.row(parent).iter().sum()
    }

    /// Exact label-count vector of the k-th substitution of a seed: k
    /// applications of the transposed matrix to the seed's unit vector.
    pub fn counts_after(&self, seed: Label, k: u32) -> [BigUint; 24] {
        let mut v: [BigUint; 24] = std::array::from_fn(|_| BigUint::from(0u32));
        v[seed.position()] = BigUint::from(1u32);
        for _ in 0..k {
            v = self.child_counts(&v);
        }
        v
    }

    /// Child counts of a label-count vector under one substitution step.
    pub fn child_counts(&self, v: &[BigUint; 24]) -> [BigUint; 24] {
        let mut out: [BigUint; 24] = std::array::from_fn(|_| BigUint::from(0u32));
        for (i, vi) in v.iter().enumerate() {
            if vi == &BigUint::from(0u32) {
                continue;
            }
            for (j, out_j) in out.iter_mut().enumerate() {
                let mij = self.m[i][j];
                if mij != 0 {
                    *out_j += vi * BigUint::from(mij);
                }
            }
        }
        out
    }
}

impl fmt::Display for CountMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Count matrix of the corrected rule.
pub fn count_matrix() -> CountMatrix {
    let rule = rule_omega();
    let mut m = [[0u64; 24]; 24];
    for parent in Label::all() {
        for (child, _) in rule.row(parent) {
            m[parent.position()][child.position()] += 1;
        }
    }
    CountMatrix { m }
}

/// Dominant eigenvalue of the count matrix by power iteration, to the given
/// tolerance; returns the eigenvalue and the number of iterations used.
pub fn dominant_eigenvalue(matrix: &CountMatrix, tol: f64) -> Result<(f64, u32), Error> {
    const MAX_ITER: u32 = 100_000;
    let mut v = [1.0f64; 24];
    let mut lambda_prev = 0.0f64;
    for iter in 1..=MAX_ITER {
        let mut w = [0.0f64; 24];
        for (i, wi) in w.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                *wi += matrix.m[i][j] as f64 * vj;
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NonConvergence(iter as usize));
        }
        // Rayleigh quotient with the normalized previous iterate.
        let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let lambda = w.iter().zip(&v).map(|(wi, vi)| wi * vi).sum::<f64>() / (vnorm * vnorm);
        for wi in w.iter_mut() {
            *wi /= norm;
        }
        v = w;
        if iter > 1 && (lambda - lambda_prev).abs() <= tol {
            return Ok((lambda, iter));
        }
        lambda_prev = lambda;
    }
    Err(Error::NonConvergence(MAX_ITER as usize))
}

/// F(n) with F(1) = F(2) = 1, as u64 (n ≤ 90).
pub fn fibonacci_u64(n: u32) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        let next = a + b;
        a = b;
        b = next;
    }
    a
}
