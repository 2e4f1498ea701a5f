//! Decoration endpoints from first principles.
//!
//! The substitution can only induce a single curve on every supertile if the
//! child decorations chain: within each row the first child must start at
//! φ·(parent start), consecutive children must meet at a shared point, and
//! the last child must end at φ·(parent end). Those constraints, over the
//! finite space of corner pairs (at most 12 per base label), determine the
//! endpoint table — and expose two wrong D indices in the published
//! one-dimensional listing, which admits no solution as printed.
//!
//! The same machinery scales up to the uniqueness question: enumerating
//! every way of visiting supertile cells through edge-adjacent neighbours
//! with chaining decorations shows how few curve systems the color
//! substitution admits at all.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::golden::{GoldenInt, GoldenRat, Point2, Rect};
use crate::prototiles::{decoration_endpoints, Color, Corner, Decoration, Label, TileSign};
use crate::substitution::{corrected_plus_rows, mu2_cells, printed_nu_rows, Patch, PlacedTile};

type GPoint = (GoldenInt, GoldenInt);

fn add_point(p: &GPoint, q: &GPoint) -> GPoint {
    (&p.0 + &q.0, &p.1 + &q.1)
}

fn scale_phi(p: &GPoint) -> GPoint {
    let phi = GoldenInt::phi();
    (&p.0 * &phi, &p.1 * &phi)
}

/// Assignment of decoration endpoints to the twelve base labels; `-` labels
/// are the reversals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecorationSystem {
    decorations: [Decoration; 12],
}

impl DecorationSystem {
    pub fn new(decorations: [Decoration; 12]) -> Self {
        Self { decorations }
    }

    /// The endpoint table baked into `prototiles`.
    pub fn reference() -> Self {
        let decorations =
            std::array::from_fn(|base| decoration_endpoints(Label::from_position(base)));
        Self { decorations }
    }

    pub fn endpoints(&self, label: Label) -> Decoration {
        let dec = self.decorations[label.base_position()];
        match label.sign {
            TileSign::Plus => dec,
            TileSign::Minus => dec.reversed(),
        }
    }

    /// Decoration endpoints of a label resolved on its own support.
    pub fn endpoint_points(&self, label: Label) -> (GPoint, GPoint) {
        let (w, h) = label.color.dims();
        self.endpoints(label).resolve(&w, &h)
    }
}

impl fmt::Display for DecorationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for base in 0..12 {
            let label = Label::from_position(base);
            let dec = self.decorations[base];
            let (s, e) = self.endpoint_points(label);
            writeln!(
                f,
                "{label}  {} -> {}   ({},{}) -> ({},{})",
                dec.start.short_name(),
                dec.end.short_name(),
                s.0,
                s.1,
                e.0,
                e.1
            )?;
        }
        Ok(())
    }
}

/// Index of a child in a problem row: pinned, or left to the search.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IndexSpec {
    Fixed(u8),
    Free(usize),
}

#[derive(Clone, Debug)]
pub struct ChildSpec {
    pub color: Color,
    pub sign: TileSign,
    pub index: IndexSpec,
    pub cell: GPoint,
}

#[derive(Clone, Debug)]
struct ProblemRow {
    parent_base: usize,
    children: Vec<ChildSpec>,
}

/// Chain constraints for the twelve `+` rows with fixed cells and signs;
/// corner pairs (and any freed D indices) are the unknowns. The search space
/// is finite: at most 12 ordered corner pairs per base label.
#[derive(Clone, Debug)]
pub struct SolverProblem {
    rows: Vec<ProblemRow>,
    free_vars: usize,
}

impl SolverProblem {
    fn from_rows(plus_rows: &[Vec<Label>], free_d_indices: bool) -> Self {
        let mut free_vars = 0;
        let rows = plus_rows
            .iter()
            .enumerate()
            .map(|(parent_base, children)| {
                let parent = Label::from_position(parent_base);
                let children = children
                    .iter()
                    .map(|child| {
                        let cell = cell_offset(parent.color, child.color);
                        let index = if free_d_indices && child.color == Color::D {
                            let var = free_vars;
                            free_vars += 1;
                            IndexSpec::Free(var)
                        } else {
                            IndexSpec::Fixed(child.index)
                        };
                        ChildSpec { color: child.color, sign: child.sign, index, cell }
                    })
                    .collect();
                ProblemRow { parent_base, children }
            })
            .collect();
        Self { rows, free_vars }
    }

    /// The corrected rows with every index pinned.
    pub fn corrected() -> Self {
        Self::from_rows(corrected_plus_rows(), false)
    }

    /// The rows exactly as published, every index pinned. Inconsistent: the
    /// search returns no system.
    pub fn printed() -> Self {
        let plus: Vec<Vec<Label>> = printed_nu_rows()[..12].to_vec();
        Self::from_rows(&plus, false)
    }

    /// The published rows with all D-child indices freed; signs stay pinned.
    pub fn free_d_indices() -> Self {
        let plus: Vec<Vec<Label>> = printed_nu_rows()[..12].to_vec();
        Self::from_rows(&plus, true)
    }

    pub fn free_var_count(&self) -> usize {
        self.free_vars
    }
}

fn cell_offset(parent: Color, child: Color) -> GPoint {
    mu2_cells(parent)
        .into_iter()
        .find(|(c, _)| *c == child)
        .map(|(_, cell)| cell)
        .unwrap_or_else(|| panic!("color {child:?} does not occur in a {parent:?} supertile"))
}

/// One satisfying assignment: the endpoint system plus the D child resolved
/// for every row that contains one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Solution {
    pub system: DecorationSystem,
    /// (parent `+` label, resolved D child label), in row order.
    pub d_children: Vec<(Label, Label)>,
}

const ALL_PAIRS: [(Corner, Corner); 12] = {
    use Corner::*;
    [
        (BottomLeft, BottomRight),
        (BottomLeft, TopRight),
        (BottomLeft, TopLeft),
        (BottomRight, BottomLeft),
        (BottomRight, TopRight),
        (BottomRight, TopLeft),
        (TopRight, BottomLeft),
        (TopRight, BottomRight),
        (TopRight, TopLeft),
        (TopLeft, BottomLeft),
        (TopLeft, BottomRight),
        (TopLeft, TopRight),
    ]
};

/// A search variable: the corner pair of a base label, or a freed D index.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    CornerPair(usize),
    FreeIndex(usize),
}

struct Search<'p> {
    problem: &'p SolverProblem,
    corners: [Option<Decoration>; 12],
    indices: Vec<Option<u8>>,
    order: Vec<Var>,
    solutions: Vec<Solution>,
}

impl<'p> Search<'p> {
    fn new(problem: &'p SolverProblem, order: Vec<Var>) -> Self {
        Self {
            problem,
            corners: [None; 12],
            indices: vec![None; problem.free_vars],
            order,
            solutions: Vec::new(),
        }
    }

    fn resolved_index(&self, spec: &ChildSpec) -> Option<u8> {
        match spec.index {
            IndexSpec::Fixed(i) => Some(i),
            IndexSpec::Free(var) => self.indices[var],
        }
    }

    /// Endpoint pair of a child in supertile coordinates, when both its
    /// index and its corner variable are decided.
    fn child_points(&self, spec: &ChildSpec) -> Option<(GPoint, GPoint)> {
        let index = self.resolved_index(spec)?;
        if index == 0 || index > spec.color.index_count() {
            return None;
        }
        let base = Label::new(spec.color, index, TileSign::Plus).ok()?.base_position();
        let dec = self.corners[base]?;
        let dec = match spec.sign {
            TileSign::Plus => dec,
            TileSign::Minus => dec.reversed(),
        };
        let (w, h) = spec.color.dims();
        let (s, e) = dec.resolve(&w, &h);
        Some((add_point(&s, &spec.cell), add_point(&e, &spec.cell)))
    }

    /// True while no fully-determined chain constraint is violated.
    fn consistent(&self) -> bool {
        for row in &self.problem.rows {
            let parent_points = self.corners[row.parent_base].map(|dec| {
                let parent = Label::from_position(row.parent_base);
                let (w, h) = parent.color.dims();
                let (s, e) = dec.resolve(&w, &h);
                (scale_phi(&s), scale_phi(&e))
            });

            let mut prev_end: Option<GPoint> = None;
            for (i, spec) in row.children.iter().enumerate() {
                match self.child_points(spec) {
                    Some((start, end)) => {
                        if i == 0 {
                            if let Some((ps, _)) = &parent_points {
                                if ps != &start {
                                    return false;
                                }
                            }
                        }
                        if let Some(prev) = &prev_end {
                            if prev != &start {
                                return false;
                            }
                        }
                        if i + 1 == row.children.len() {
                            if let Some((_, pe)) = &parent_points {
                                if pe != &end {
                                    return false;
                                }
                            }
                        }
                        prev_end = Some(end);
                    }
                    None => prev_end = None,
                }
            }
        }
        true
    }

    fn dfs(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.record();
            return;
        }
        match self.order[depth] {
            Var::CornerPair(base) => {
                for (start, end) in ALL_PAIRS {
                    self.corners[base] = Some(Decoration::new(start, end));
                    if self.consistent() {
                        self.dfs(depth + 1);
                    }
                }
                self.corners[base] = None;
            }
            Var::FreeIndex(var) => {
                for index in 1..=4u8 {
                    self.indices[var] = Some(index);
                    if self.consistent() {
                        self.dfs(depth + 1);
                    }
                }
                self.indices[var] = None;
            }
        }
    }

    fn record(&mut self) {
        let decorations = std::array::from_fn(|base| self.corners[base].expect("full assignment"));
        let system = DecorationSystem::new(decorations);
        let mut d_children = Vec::new();
        for row in &self.problem.rows {
            let parent = Label::from_position(row.parent_base);
            for spec in &row.children {
                if spec.color != Color::D {
                    continue;
                }
                let index = self.resolved_index(spec).expect("full assignment");
                let child = Label::new(Color::D, index, spec.sign).unwrap();
                d_children.push((parent, child));
            }
        }
        self.solutions.push(Solution { system, d_children });
    }
}

/// Complete backtracking enumeration of every decoration system satisfying
/// the chain constraints; deterministic output order.
pub fn solve_decorations(problem: &SolverProblem) -> Vec<Solution> {
    solve_with_order(problem, problem_vars(problem))
}

/// Same search under a caller-chosen variable order (used to cross-check
/// completeness); the solution set is order-normalized before return.
pub fn solve_with_order(problem: &SolverProblem, order: Vec<Var>) -> Vec<Solution> {
    assert_eq!(order.len(), 12 + problem.free_vars, "order must cover every variable");
    let mut search = Search::new(problem, order);
    search.dfs(0);
    let mut solutions = search.solutions;
    solutions.sort_by_key(|s| {
        (
            (0..12).map(|i| {
                let d = s.system.decorations[i];
                (d.start, d.end)
            }).collect::<Vec<_>>(),
            s.d_children.iter().map(|(p, c)| (p.position(), c.position())).collect::<Vec<_>>(),
        )
    });
    solutions
}

/// All variables of a problem, in canonical order.
pub fn problem_vars(problem: &SolverProblem) -> Vec<Var> {
    (0..12).map(Var::CornerPair).chain((0..problem.free_vars).map(Var::FreeIndex)).collect()
}

/// First failed chain constraint of a fully pinned problem when checked
/// against a given system; powers the published-rows diagnostic.
pub fn first_conflict(problem: &SolverProblem, system: &DecorationSystem) -> Option<String> {
    for row in &problem.rows {
        let parent = Label::from_position(row.parent_base);
        let (ps, pe) = system.endpoint_points(parent);
        let (ps, pe) = (scale_phi(&ps), scale_phi(&pe));
        let mut prev_end = ps;
        let n = row.children.len();
        for (i, spec) in row.children.iter().enumerate() {
            let IndexSpec::Fixed(index) = spec.index else {
                return Some("problem has free indices".into());
            };
            let child = Label::new(spec.color, index, spec.sign).unwrap();
            let (s, e) = system.endpoint_points(child);
            let (s, e) = (add_point(&s, &spec.cell), add_point(&e, &spec.cell));
            if s != prev_end {
                return Some(format!(
                    "row {parent}, child {} ({child}): starts at ({},{}) but the chain is at ({},{})",
                    i + 1,
                    s.0,
                    s.1,
                    prev_end.0,
                    prev_end.1
                ));
            }
            if i + 1 == n && e != pe {
                return Some(format!(
                    "row {parent}, last child ({child}): ends at ({},{}) but φ·(parent end) is ({},{})",
                    e.0, e.1, pe.0, pe.1
                ));
            }
            prev_end = e;
        }
    }
    None
}

/// Result of walking a supertile's decoration chain in exact arithmetic.
#[derive(Clone, Debug)]
pub struct ConcatReport {
    pub ok: bool,
    pub tile_count: usize,
    pub start: Point2,
    pub end: Point2,
    pub expected_start: Point2,
    pub expected_end: Point2,
    /// First violation as (tile index, message). Violations are data, not faults.
    pub violation: Option<(usize, String)>,
}

fn tile_endpoints(tile: &PlacedTile, system: &DecorationSystem) -> (Point2, Point2) {
    let (s, e) = system.endpoint_points(tile.label);
    let to_point =
        |(x, y): GPoint| Point2::new(GoldenRat::from(x), GoldenRat::from(y)).add(&tile.translation);
    (to_point(s), to_point(e))
}

/// Checks, in exact arithmetic, that consecutive tiles' decoration endpoints
/// coincide and that the global endpoints equal φ^k·(seed endpoints).
pub fn verify_concatenation(patch: &Patch, system: &DecorationSystem) -> ConcatReport {
    let scale = GoldenInt::phi_pow(patch.level as i64);
    let (seed_start, seed_end) = system.endpoint_points(patch.seed);
    let scaled_point = |p: &GPoint| {
        Point2::new(GoldenRat::from(&p.0 * &scale), GoldenRat::from(&p.1 * &scale))
    };
    let expected_start = scaled_point(&seed_start);
    let expected_end = scaled_point(&seed_end);

    let mut violation = None;
    let mut prev_end: Option<Point2> = None;
    let mut start = Point2::origin();
    let mut end = Point2::origin();
    for (i, tile) in patch.tiles.iter().enumerate() {
        let (s, e) = tile_endpoints(tile, system);
        if i == 0 {
            start = s.clone();
        }
        if violation.is_none() {
            if let Some(prev) = &prev_end {
                if prev != &s {
                    violation =
                        Some((i, format!("tile {i} ({}) starts at {s}, chain is at {prev}", tile.label)));
                }
            }
        }
        prev_end = Some(e.clone());
        end = e;
    }
    if violation.is_none() && start != expected_start {
        violation = Some((0, format!("chain starts at {start}, expected {expected_start}")));
    }
    if violation.is_none() && end != expected_end {
        let last = patch.tiles.len().saturating_sub(1);
        violation = Some((last, format!("chain ends at {end}, expected {expected_end}")));
    }
    ConcatReport {
        ok: violation.is_none(),
        tile_count: patch.tiles.len(),
        start,
        end,
        expected_start,
        expected_end,
        violation,
    }
}

/// The total order the decoration induces on a patch: every tile visited
/// exactly once, consecutive tiles decoration-adjacent. Returns the labels
/// in visiting order, or the first violation.
pub fn induced_order(patch: &Patch, system: &DecorationSystem) -> Result<Vec<Label>, String> {
    let mut seen = BTreeSet::new();
    for tile in &patch.tiles {
        if !seen.insert(format!("{}|{}", tile.translation, tile.label)) {
            return Err(format!("tile {} at {} visited twice", tile.label, tile.translation));
        }
    }
    let mut prev_end: Option<Point2> = None;
    for (i, tile) in patch.tiles.iter().enumerate() {
        let (s, e) = tile_endpoints(tile, system);
        if let Some(prev) = &prev_end {
            if prev != &s {
                return Err(format!("tiles {} and {i} are not decoration-adjacent", i - 1));
            }
        }
        prev_end = Some(e);
    }
    Ok(patch.labels())
}

// ---------------------------------------------------------------------------
// Uniqueness scan
// ---------------------------------------------------------------------------

/// A decorated tile stripped to what the curve construction sees: a
/// rectangle shape and an oriented pair of corners.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct OrientedTile {
    pub color: Color,
    pub start: Corner,
    pub end: Corner,
}

impl fmt::Display for OrientedTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}->{}", self.color.letter(), self.start.short_name(), self.end.short_name())
    }
}

/// One way of expanding an oriented tile: an edge-adjacent visiting order of
/// its supertile cells, with the child decorations the chain forces.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Expansion {
    /// Indices into `mu2_cells(color)`, in visiting order.
    pub cell_order: Vec<usize>,
    pub children: Vec<OrientedTile>,
}

/// A closed substitution rule on oriented tiles: every reachable tile maps
/// to one expansion.
pub type CurveSystem = BTreeMap<OrientedTile, Expansion>;

/// Outcome of the exhaustive enumeration of connected curve systems.
#[derive(Clone, Debug)]
pub struct UniquenessReport {
    pub systems: Vec<CurveSystem>,
    /// True when the engine's own rule appears among the systems.
    pub contains_reference: bool,
    /// Orbit counts under the transpose symmetry, curve reversal, and both.
    pub transpose_orbits: usize,
    pub reversal_orbits: usize,
    pub combined_orbits: usize,
}

fn cell_rects(color: Color) -> Vec<(Color, Rect)> {
    mu2_cells(color)
        .into_iter()
        .map(|(c, (x, y))| {
            let (w, h) = c.dims();
            let origin = Point2::new(GoldenRat::from(x), GoldenRat::from(y));
            (c, Rect::new(origin, GoldenRat::from(w), GoldenRat::from(h)))
        })
        .collect()
}

fn hamiltonian_paths(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn extend(
        adj: &[Vec<bool>],
        current: &mut Vec<usize>,
        used: &mut [bool],
        paths: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == adj.len() {
            paths.push(current.clone());
            return;
        }
        for next in 0..adj.len() {
            if used[next] {
                continue;
            }
            if let Some(&last) = current.last() {
                if !adj[last][next] {
                    continue;
                }
            }
            used[next] = true;
            current.push(next);
            extend(adj, current, used, paths);
            current.pop();
            used[next] = false;
        }
    }
    let mut paths = Vec::new();
    extend(adj, &mut Vec::new(), &mut vec![false; adj.len()], &mut paths);
    paths
}

/// Which corner of the cell's rectangle the ambient point is, if any.
fn corner_of(cell_color: Color, point: &GPoint, cell: &GPoint) -> Option<Corner> {
    let local = (&point.0 - &cell.0, &point.1 - &cell.1);
    let (w, h) = cell_color.dims();
    Corner::ALL.into_iter().find(|c| c.resolve(&w, &h) == local)
}

/// Every valid expansion of an oriented tile: edge-adjacent cell orders with
/// all chain-consistent choices of meeting corners.
pub fn enumerate_expansions(tile: &OrientedTile) -> Vec<Expansion> {
    let cells = cell_rects(tile.color);
    let offsets: Vec<GPoint> = mu2_cells(tile.color).into_iter().map(|(_, cell)| cell).collect();
    let n = cells.len();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && cells[i].1.edge_adjacent(&cells[j].1)).collect())
        .collect();

    let (w, h) = tile.color.dims();
    let global_start = scale_phi(&tile.start.resolve(&w, &h));
    let global_end = scale_phi(&tile.end.resolve(&w, &h));

    let mut out = Vec::new();
    for path in hamiltonian_paths(&adj) {
        // the scaled parent endpoints must be corners of the first/last cells
        if corner_of(cells[path[0]].0, &global_start, &offsets[path[0]]).is_none() {
            continue;
        }
        if corner_of(cells[path[n - 1]].0, &global_end, &offsets[path[n - 1]]).is_none() {
            continue;
        }

        // meeting candidates between consecutive cells: their shared corners
        let meeting_choices: Vec<Vec<GPoint>> = path
            .windows(2)
            .map(|pair| {
                let (ca, cb) = (&cells[pair[0]], &cells[pair[1]]);
                Corner::ALL
                    .into_iter()
                    .filter_map(|c| {
                        let (w, h) = ca.0.dims();
                        let p = add_point(&c.resolve(&w, &h), &offsets[pair[0]]);
                        corner_of(cb.0, &p, &offsets[pair[1]]).map(|_| p)
                    })
                    .collect()
            })
            .collect();

        let mut stack: Vec<Vec<GPoint>> = vec![vec![global_start.clone()]];
        while let Some(points) = stack.pop() {
            let depth = points.len() - 1;
            if depth == meeting_choices.len() {
                let mut points = points;
                points.push(global_end.clone());
                let mut children = Vec::with_capacity(n);
                let mut ok = true;
                for (i, &cell_idx) in path.iter().enumerate() {
                    let color = cells[cell_idx].0;
                    let start = corner_of(color, &points[i], &offsets[cell_idx]);
                    let end = corner_of(color, &points[i + 1], &offsets[cell_idx]);
                    match (start, end) {
                        (Some(s), Some(e)) if s != e => {
                            children.push(OrientedTile { color, start: s, end: e })
                        }
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    out.push(Expansion { cell_order: path.clone(), children });
                }
                continue;
            }
            for candidate in &meeting_choices[depth] {
                let mut next = points.clone();
                next.push(candidate.clone());
                stack.push(next);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn close_system(
    assigned: &mut CurveSystem,
    pending: &mut BTreeSet<OrientedTile>,
    found: &mut BTreeSet<CurveSystem>,
) {
    let Some(tile) = pending.iter().next().copied() else {
        found.insert(assigned.clone());
        return;
    };
    pending.remove(&tile);
    for expansion in enumerate_expansions(&tile) {
        let newly_pending: Vec<OrientedTile> = expansion
            .children
            .iter()
            .filter(|c| **c != tile && !assigned.contains_key(c) && !pending.contains(c))
            .copied()
            .collect();
        assigned.insert(tile, expansion);
        for child in &newly_pending {
            pending.insert(*child);
        }
        close_system(assigned, pending, found);
        for child in &newly_pending {
            pending.remove(child);
        }
        assigned.remove(&tile);
    }
    pending.insert(tile);
}

fn transpose_corner(c: Corner) -> Corner {
    match c {
        Corner::BottomLeft => Corner::BottomLeft,
        Corner::BottomRight => Corner::TopLeft,
        Corner::TopLeft => Corner::BottomRight,
        Corner::TopRight => Corner::TopRight,
    }
}

fn transpose_color(c: Color) -> Color {
    match c {
        Color::A => Color::A,
        Color::B => Color::C,
        Color::C => Color::B,
        Color::D => Color::D,
    }
}

fn transpose_tile(t: &OrientedTile) -> OrientedTile {
    OrientedTile {
        color: transpose_color(t.color),
        start: transpose_corner(t.start),
        end: transpose_corner(t.end),
    }
}

/// Cell index map induced by transposition: cell i of a color corresponds to
/// the mirrored cell inside the transposed color's layout.
fn transpose_cell_index(color: Color, idx: usize) -> usize {
    let from = mu2_cells(color);
    let to = mu2_cells(transpose_color(color));
    let (child, (x, y)) = &from[idx];
    let target = (transpose_color(*child), (y.clone(), x.clone()));
    to.iter()
        .position(|(c, cell)| (*c, cell.clone()) == target)
        .expect("cell layout is transpose-closed")
}

fn transpose_system(sys: &CurveSystem) -> CurveSystem {
    sys.iter()
        .map(|(tile, exp)| {
            let new_exp = Expansion {
                cell_order: exp
                    .cell_order
                    .iter()
                    .map(|&i| transpose_cell_index(tile.color, i))
                    .collect(),
                children: exp.children.iter().map(transpose_tile).collect(),
            };
            (transpose_tile(tile), new_exp)
        })
        .collect()
}

fn reverse_tile(t: &OrientedTile) -> OrientedTile {
    OrientedTile { color: t.color, start: t.end, end: t.start }
}

fn reverse_system(sys: &CurveSystem) -> CurveSystem {
    sys.iter()
        .map(|(tile, exp)| {
            let new_exp = Expansion {
                cell_order: exp.cell_order.iter().rev().copied().collect(),
                children: exp.children.iter().rev().map(reverse_tile).collect(),
            };
            (reverse_tile(tile), new_exp)
        })
        .collect()
}

fn orbit_count(systems: &[CurveSystem], maps: &[fn(&CurveSystem) -> CurveSystem]) -> usize {
    let mut seen: BTreeSet<CurveSystem> = BTreeSet::new();
    let mut orbits = 0;
    for sys in systems {
        if seen.contains(sys) {
            continue;
        }
        orbits += 1;
        let mut frontier = vec![sys.clone()];
        while let Some(s) = frontier.pop() {
            if seen.insert(s.clone()) {
                for m in maps {
                    frontier.push(m(&s));
                }
            }
        }
    }
    orbits
}

/// The engine's own rule as a curve system on oriented tiles.
pub fn reference_curve_system() -> CurveSystem {
    let rule = crate::substitution::rule_omega();
    let system = DecorationSystem::reference();
    let tile_of = |label: Label| {
        let dec = system.endpoints(label);
        OrientedTile { color: label.color, start: dec.start, end: dec.end }
    };
    Label::all()
        .map(|label| {
            let cells = mu2_cells(label.color);
            let expansion = Expansion {
                cell_order: rule
                    .row(label)
                    .iter()
                    .map(|(child, cell)| {
                        cells
                            .iter()
                            .position(|(c, offset)| *c == child.color && *offset == *cell)
                            .expect("rule cells match the layout")
                    })
                    .collect(),
                children: rule.row(label).iter().map(|(child, _)| tile_of(*child)).collect(),
            };
            (tile_of(label), expansion)
        })
        .collect()
}

/// Exhaustively enumerate every closed curve system seeded from an A-shaped
/// decorated tile, requiring edge-adjacent consecutive cells and exact chain
/// consistency throughout, and classify the outcome under the square
/// symmetries that act on the construction.
///
/// Quarter-turn rotations do *not* preserve the cell layout (cells split at
/// x = φ, not at the midline), so the acting symmetries are transposition
/// (the x = y reflection, which swaps the B and C shapes) and reversal of
/// the curve orientation. Raw counts and orbit counts are reported; no
/// particular quotient is asserted.
pub fn uniqueness_scan() -> UniquenessReport {
    let mut found: BTreeSet<CurveSystem> = BTreeSet::new();
    for (start, end) in ALL_PAIRS {
        let seed = OrientedTile { color: Color::A, start, end };
        let mut assigned = CurveSystem::new();
        let mut pending = BTreeSet::from([seed]);
        close_system(&mut assigned, &mut pending, &mut found);
    }
    let systems: Vec<CurveSystem> = found.into_iter().collect();
    let reference = reference_curve_system();
    let contains_reference = systems.contains(&reference);
    UniquenessReport {
        transpose_orbits: orbit_count(&systems, &[transpose_system]),
        reversal_orbits: orbit_count(&systems, &[reverse_system]),
        combined_orbits: orbit_count(&systems, &[transpose_system, reverse_system]),
        systems,
        contains_reference,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::supertile;

    fn label(s: &str) -> Label {
        s.parse().unwrap()
    }

    fn point(x: GoldenInt, y: GoldenInt) -> Point2 {
        Point2::new(GoldenRat::from(x), GoldenRat::from(y))
    }

    #[test]
    fn corrected_rows_have_a_unique_system() {
        let solutions = solve_decorations(&SolverProblem::corrected());
        assert_eq!(solutions.len(), 1);
        assert_eq!(solutions[0].system, DecorationSystem::reference());
    }

    #[test]
    fn published_rows_admit_no_system() {
        let solutions = solve_decorations(&SolverProblem::printed());
        assert!(solutions.is_empty());
        // under the reference endpoints, the published A1+ row breaks at its D child
        let conflict = first_conflict(&SolverProblem::printed(), &DecorationSystem::reference());
        let msg = conflict.expect("published rows must conflict");
        assert!(msg.contains("A1+"), "expected the clash in the A1+ row, got: {msg}");
    }

    #[test]
    fn free_d_indices_recover_the_corrections() {
        let solutions = solve_decorations(&SolverProblem::free_d_indices());
        assert_eq!(solutions.len(), 1);
        let sol = &solutions[0];
        assert_eq!(sol.system, DecorationSystem::reference());
        let picks: Vec<String> = sol.d_children.iter().map(|(p, c)| format!("{p}>{c}")).collect();
        assert_eq!(picks, vec!["A1+>D4+", "A2+>D3-", "A3+>D2-", "A4+>D1+"]);
    }

    #[test]
    fn solver_is_order_independent() {
        let problem = SolverProblem::free_d_indices();
        let reference = solve_decorations(&problem);
        let vars = problem_vars(&problem);
        for seed in 0..5u64 {
            // deterministic Fisher-Yates driven by a simple LCG
            let mut order = vars.clone();
            let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            for i in (1..order.len()).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (state >> 33) as usize % (i + 1);
                order.swap(i, j);
            }
            assert_eq!(solve_with_order(&problem, order), reference, "seed {seed}");
        }
    }

    #[test]
    fn level_one_chain_walks_the_expected_points() {
        // hand-propagated: (0,0) -> (0,φ) -> (φ,1+φ) -> (φ,φ) -> (1+φ,0)
        let system = DecorationSystem::reference();
        let patch = supertile(label("A1+"), 1);
        let z = GoldenInt::zero;
        let phi = GoldenInt::phi;
        let expected = [
            (point(z(), z()), point(z(), phi())),
            (point(z(), phi()), point(phi(), GoldenInt::new(1, 1))),
            (point(phi(), GoldenInt::new(1, 1)), point(phi(), phi())),
            (point(phi(), phi()), point(GoldenInt::new(1, 1), z())),
        ];
        for (tile, (s, e)) in patch.tiles.iter().zip(&expected) {
            let (ts, te) = tile_endpoints(tile, &system);
            assert_eq!(&ts, s, "{}", tile.label);
            assert_eq!(&te, e, "{}", tile.label);
        }

        let report = verify_concatenation(&patch, &system);
        assert!(report.ok, "{:?}", report.violation);
        assert_eq!(report.start, point(z(), z()));
        assert_eq!(report.end, point(GoldenInt::new(1, 1), z()));
    }

    #[test]
    fn single_child_rows_concatenate() {
        let report =
            verify_concatenation(&supertile(label("D1+"), 1), &DecorationSystem::reference());
        assert!(report.ok);
        assert_eq!(report.start, Point2::origin());
        assert_eq!(report.end, point(GoldenInt::phi(), GoldenInt::zero()));
    }

    #[test]
    fn all_seeds_concatenate_to_level_four() {
        let system = DecorationSystem::reference();
        for seed in Label::all() {
            for k in 0..=4 {
                let report = verify_concatenation(&supertile(seed, k), &system);
                assert!(report.ok, "seed {seed}, k = {k}: {:?}", report.violation);
            }
        }
    }

    #[test]
    fn induced_order_of_level_one() {
        let system = DecorationSystem::reference();
        let order = induced_order(&supertile(label("A1+"), 1), &system).unwrap();
        assert_eq!(order, vec![label("A4-"), label("B1+"), label("D4+"), label("C1-")]);
        assert_eq!(induced_order(&supertile(label("A1+"), 2), &system).unwrap().len(), 9);
        assert_eq!(
            induced_order(&supertile(label("D2+"), 1), &system).unwrap(),
            vec![label("A2+")]
        );
    }

    #[test]
    fn broken_chain_is_reported_not_panicked() {
        let system = DecorationSystem::reference();
        let mut patch = supertile(label("A1+"), 1);
        patch.tiles.swap(1, 2);
        let report = verify_concatenation(&patch, &system);
        assert!(!report.ok);
        assert!(report.violation.is_some());
        assert!(induced_order(&patch, &system).is_err());
    }

    #[test]
    fn reference_rule_is_a_closed_curve_system() {
        let sys = reference_curve_system();
        assert_eq!(sys.len(), 24);
        for (tile, exp) in &sys {
            let options = enumerate_expansions(tile);
            assert!(options.contains(exp), "expansion of {tile} not among the enumerated ones");
            for child in &exp.children {
                assert!(sys.contains_key(child), "child {child} of {tile} not in the system");
            }
        }
    }

    #[test]
    fn uniqueness_scan_finds_the_reference_system() {
        let report = uniqueness_scan();
        assert!(report.contains_reference);
        assert!(!report.systems.is_empty());
        for sys in &report.systems {
            for exp in sys.values() {
                for child in &exp.children {
                    assert!(sys.contains_key(child));
                }
            }
        }
        assert!(report.combined_orbits <= report.transpose_orbits);
        assert!(report.combined_orbits <= report.reversal_orbits);
    }
}
