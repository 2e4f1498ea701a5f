//! The runnable invariant suite behind `fibcurve verify`.
//!
//! Every module-level invariant is checked here at desk scale: exact where
//! the construction is exact (counts, measures, concatenation, adjacency),
//! sampled where the statement quantifies over the reals (continuity,
//! inversion). Checks are deterministic; randomized ones use fixed seeds.

use std::time::Instant;

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::curve::{
    connectedness_check, continuity_modulus, diameter_bound, eval, eval_with_bias, first_disconnection,
    partition, preimage, Bias,
};
use crate::golden::{GoldenInt, GoldenRat, Point2, Rect};
use crate::prototiles::{decoration_endpoints, Color, Label, TileSign};
use crate::solver::{
    solve_decorations, solve_with_order, uniqueness_scan, verify_concatenation, DecorationSystem,
    SolverProblem, Var,
};
use crate::substitution::{
    count_matrix, dominant_eigenvalue, fibonacci_u64, mu2_cells, printed_nu_rows, rule_omega,
    supertile,
};

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type Check = (&'static str, fn(u32) -> Result<String, String>);

const CHECKS: &[Check] = &[
    ("golden-ring-axioms", golden_ring_axioms),
    ("golden-phi-powers", golden_phi_powers),
    ("golden-sign-crosscheck", golden_sign_crosscheck),
    ("prototile-table", prototile_table),
    ("substitution-reversal-symmetry", reversal_symmetry),
    ("substitution-projection", projection_check),
    ("substitution-counts", substitution_counts),
    ("substitution-geometry", substitution_geometry),
    ("substitution-eigenvalue", eigenvalue_check),
    ("solver-searches", solver_searches),
    ("solver-order-independence", solver_order_independence),
    ("solver-uniqueness-scan", solver_uniqueness),
    ("concatenation-all-seeds", concatenation_all_seeds),
    ("curve-measure", curve_measure),
    ("curve-endpoints", curve_endpoints),
    ("curve-nesting", curve_nesting),
    ("curve-boundaries", curve_boundaries),
    ("curve-continuity", curve_continuity),
    ("curve-preimage", curve_preimage),
    ("curve-connectedness", curve_connectedness),
    ("export-polygon", export_polygon),
    ("export-json-roundtrip", export_json_roundtrip),
    ("export-determinism", export_determinism),
    ("export-tessellation", export_tessellation),
];

/// Run the whole suite; depth-parameterized checks are capped by
/// `max_depth` (each also has its own documented ceiling).
pub fn run_all(max_depth: u32) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let outcome = f(max_depth);
            let millis = start.elapsed().as_millis();
            match outcome {
                Ok(detail) => CheckResult { name, passed: true, detail, millis },
                Err(detail) => CheckResult { name, passed: false, detail, millis },
            }
        })
        .collect()
}

fn fail_if(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Err(msg())
    } else {
        Ok(())
    }
}

fn a1_plus() -> Label {
    "A1+".parse().unwrap()
}

fn golden_ring_axioms(_: u32) -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(11);
    for i in 0..2_000 {
        let mut pick = || GoldenInt::new(rng.gen_range(-1000i64..=1000), rng.gen_range(-1000i64..=1000));
        let (u, v, w) = (pick(), pick(), pick());
        fail_if(&(&u + &v) + &w != &u + &(&v + &w), || format!("associativity (+) at sample {i}"))?;
        fail_if(&(&u * &v) * &w != &u * &(&v * &w), || format!("associativity (·) at sample {i}"))?;
        fail_if(&u * &(&v + &w) != &(&u * &v) + &(&u * &w), || format!("distributivity at {i}"))?;
    }
    Ok("2000 random triples".into())
}

fn golden_phi_powers(_: u32) -> Result<String, String> {
    let mut prev = GoldenInt::zero();
    for n in 0..=50i64 {
        let p = GoldenInt::phi_pow(n);
        if n >= 1 {
            // consecutive Fibonacci coefficients: b(n) = a(n) + b(n-1) shape
            fail_if(p.a() != prev.b(), || format!("coefficients not Fibonacci at n = {n}"))?;
        }
        prev = p;
    }
    for n in -50..=50i64 {
        let prod = &GoldenInt::phi_pow(n) * &GoldenInt::phi_pow(-n);
        fail_if(prod != GoldenInt::one(), || format!("phi^{n} · phi^-{n} ≠ 1"))?;
    }
    Ok("powers -50..=50".into())
}

fn golden_sign_crosscheck(_: u32) -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(12);
    let mut checked = 0u32;
    for _ in 0..10_000 {
        let u = GoldenInt::new(
            rng.gen_range(-1_000_000i64..=1_000_000),
            rng.gen_range(-1_000_000i64..=1_000_000),
        );
        let f = u.to_f64();
        if f.abs() > 1e-6 {
            checked += 1;
            fail_if(u.sign() != if f > 0.0 { 1 } else { -1 }, || format!("sign mismatch at {u}"))?;
        }
    }
    Ok(format!("{checked} of 10000 samples decisive"))
}

fn prototile_table(_: u32) -> Result<String, String> {
    let labels: Vec<Label> = Label::all().collect();
    fail_if(labels.len() != 24, || "label count".into())?;
    for l in &labels {
        fail_if(l.reversed() == *l, || format!("{l} fixed by reversal"))?;
        let dec = decoration_endpoints(*l);
        fail_if(dec.start == dec.end, || format!("{l} has equal endpoints"))?;
    }
    // D decorations are the φ⁻¹-scaled A decorations
    for i in 1..=4u8 {
        let a = decoration_endpoints(Label::new(Color::A, i, TileSign::Plus).unwrap());
        let d = decoration_endpoints(Label::new(Color::D, i, TileSign::Plus).unwrap());
        fail_if((a.start, a.end) != (d.start, d.end), || format!("D{i} breaks the scaling law"))?;
    }
    Ok("24 labels, involution and scaling law".into())
}

fn reversal_symmetry(_: u32) -> Result<String, String> {
    let rows = printed_nu_rows();
    for base in 0..12 {
        let expected: Vec<Label> = rows[base].iter().rev().map(|l| l.reversed()).collect();
        fail_if(rows[base + 12] != expected, || {
            format!("published row {} is not the reversal", Label::from_position(base + 12))
        })?;
    }
    Ok("published rows closed under reversal".into())
}

fn projection_check(_: u32) -> Result<String, String> {
    let rule = rule_omega();
    for parent in Label::all() {
        let mut got: Vec<_> = rule.row(parent).iter().map(|(l, c)| (l.color, c.clone())).collect();
        let mut want = mu2_cells(parent.color);
        got.sort();
        want.sort();
        fail_if(got != want, || format!("row {parent} does not project onto the color layout"))?;
    }
    Ok("all 24 rows project onto the color substitution".into())
}

fn substitution_counts(max_depth: u32) -> Result<String, String> {
    let cap = max_depth.min(10);
    let m = count_matrix();
    for k in 0..=cap {
        let patch = supertile(a1_plus(), k);
        let want = fibonacci_u64(k + 2).pow(2);
        fail_if(patch.tiles.len() as u64 != want, || {
            format!("|ω^{k}(A1+)| = {}, want {want}", patch.tiles.len())
        })?;
        let counts = patch.label_counts();
        let predicted = m.counts_after(a1_plus(), k);
        for (pos, p) in predicted.iter().enumerate() {
            fail_if(&BigUint::from(counts[pos]) != p, || {
                format!("label counts diverge from matrix powers at k = {k}")
            })?;
        }
    }
    Ok(format!("tile counts and matrix powers agree for k ≤ {cap}"))
}

fn substitution_geometry(max_depth: u32) -> Result<String, String> {
    let cap = max_depth.min(8);
    for k in 0..=cap {
        let patch = supertile(a1_plus(), k);
        let want = GoldenRat::from(GoldenInt::phi_pow(2 * k as i64 + 2));
        fail_if(patch.tile_area_sum() != want, || format!("area sum wrong at k = {k}"))?;
        fail_if(patch.support.area() != want, || format!("support area wrong at k = {k}"))?;
        for t in &patch.tiles {
            let s = t.support();
            let inside = patch.support.contains(&s.origin)
                && patch.support.contains(&Point2::new(s.x1(), s.y1()));
            fail_if(!inside, || format!("tile escapes the support at k = {k}"))?;
        }
    }
    Ok(format!("exact area bookkeeping for k ≤ {cap}"))
}

fn eigenvalue_check(_: u32) -> Result<String, String> {
    let (lambda, iters) = dominant_eigenvalue(&count_matrix(), 1e-12).map_err(|e| e.to_string())?;
    let want = 2.618033988749895f64;
    fail_if((lambda - want).abs() > 1e-9, || format!("λ = {lambda}, want φ² = {want}"))?;
    Ok(format!("λ = {lambda:.12} in {iters} iterations"))
}

fn solver_searches(_: u32) -> Result<String, String> {
    let corrected = solve_decorations(&SolverProblem::corrected());
    fail_if(corrected.len() != 1, || format!("corrected rows: {} systems", corrected.len()))?;
    fail_if(corrected[0].system != DecorationSystem::reference(), || {
        "corrected system differs from the reference table".into()
    })?;

    let printed = solve_decorations(&SolverProblem::printed());
    fail_if(!printed.is_empty(), || format!("published rows: {} systems, want 0", printed.len()))?;

    let free = solve_decorations(&SolverProblem::free_d_indices());
    fail_if(free.len() != 1, || format!("free indices: {} systems", free.len()))?;
    let picks: Vec<String> = free[0].d_children.iter().map(|(p, c)| format!("{p}>{c}")).collect();
    fail_if(picks != vec!["A1+>D4+", "A2+>D3-", "A3+>D2-", "A4+>D1+"], || {
        format!("unexpected D indices: {picks:?}")
    })?;
    Ok("1 system (corrected) / 0 (published) / 1 (free indices)".into())
}

fn solver_order_independence(_: u32) -> Result<String, String> {
    let problem = SolverProblem::free_d_indices();
    let reference = solve_decorations(&problem);
    let vars: Vec<Var> = crate::solver::problem_vars(&problem);
    let mut rng = StdRng::seed_from_u64(13);
    for trial in 0..3 {
        let mut order = vars.clone();
        for i in (1..order.len()).rev() {
            let j = rng.gen_range(0..=i);
            order.swap(i, j);
        }
        fail_if(solve_with_order(&problem, order) != reference, || {
            format!("solution set changed under variable order, trial {trial}")
        })?;
    }
    Ok("solution set stable under 3 shuffled variable orders".into())
}

fn solver_uniqueness(_: u32) -> Result<String, String> {
    let report = uniqueness_scan();
    fail_if(!report.contains_reference, || "reference system missing from the scan".into())?;
    Ok(format!(
        "{} closed systems; orbits: {} (transpose), {} (reversal), {} (both)",
        report.systems.len(),
        report.transpose_orbits,
        report.reversal_orbits,
        report.combined_orbits
    ))
}

fn concatenation_all_seeds(max_depth: u32) -> Result<String, String> {
    let cap = max_depth.min(6);
    let system = DecorationSystem::reference();
    for seed in Label::all() {
        for k in 0..=cap {
            let report = verify_concatenation(&supertile(seed, k), &system);
            fail_if(!report.ok, || {
                format!("seed {seed}, k = {k}: {}", report.violation.unwrap().1)
            })?;
        }
    }
    Ok(format!("all 24 seeds chain exactly for k ≤ {cap}"))
}

fn curve_measure(max_depth: u32) -> Result<String, String> {
    let cap = max_depth.min(8);
    for k in 0..=cap {
        let level = partition(k);
        fail_if(level.cuts.last() != Some(&GoldenInt::one()), || format!("Σ lengths ≠ 1 at k = {k}"))?;
        for i in 1..=level.len() {
            let area = level.rects[i - 1].area();
            fail_if(GoldenRat::from(level.interval_length(i)) != area, || {
                format!("length ≠ area at k = {k}, i = {i}")
            })?;
        }
    }
    Ok(format!("interval lengths equal rectangle areas for k ≤ {cap}"))
}

fn curve_endpoints(_: u32) -> Result<String, String> {
    let depth = 32;
    let res0 = eval(&GoldenRat::zero(), depth);
    for b in &res0.boxes {
        fail_if(b.origin != Point2::origin(), || "x = 0 box chain leaves the origin".into())?;
    }
    let corner = Point2::new(GoldenRat::one(), GoldenRat::zero());
    let res1 = eval(&GoldenRat::one(), depth);
    for b in &res1.boxes {
        fail_if(!b.contains(&corner), || "x = 1 box chain leaves (1,0)".into())?;
    }
    // the first level-1 cut maps to the shared decoration endpoint (0, φ-1)
    let cut = GoldenRat::from(GoldenInt::new(2, -1));
    let target = Point2::new(GoldenRat::zero(), GoldenRat::from(GoldenInt::new(-1, 1)));
    let res = eval(&cut, depth);
    for b in &res.boxes {
        fail_if(!b.contains(&target), || "cut chain leaves (0, φ-1)".into())?;
    }
    Ok(format!("corner and cut chains pinned through depth {depth}"))
}

fn curve_nesting(_: u32) -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(14);
    let depth = 12u32;
    for sample in 0..1_000 {
        let q = 1_000_000_007i64;
        let x = GoldenRat::from_ratio(rng.gen_range(0..=q), q);
        let res = eval(&x, depth);
        for pair in res.boxes.windows(2) {
            let ok = pair[0].contains(&pair[1].origin)
                && pair[0].contains(&Point2::new(pair[1].x1(), pair[1].y1()));
            fail_if(!ok, || format!("chain not nested at sample {sample}"))?;
        }
        for (i, b) in res.boxes.iter().enumerate() {
            let k = i as i64 + 1;
            let bound = GoldenRat::from(&GoldenInt::phi_pow(-2 * k) * &GoldenInt::new(2, 0));
            fail_if(b.diameter_sq() > bound, || format!("diameter exceeds bound at sample {sample}"))?;
        }
    }
    Ok(format!("1000 nested chains at depth {depth}"))
}

fn curve_boundaries(max_depth: u32) -> Result<String, String> {
    let cap = max_depth.min(5);
    let mut cuts_checked = 0usize;
    for k in 1..=cap {
        let level = partition(k);
        for cut in &level.cuts[1..level.cuts.len() - 1] {
            let x = GoldenRat::from(cut.clone());
            let left = eval_with_bias(&x, k + 5, Bias::Left);
            let right = eval_with_bias(&x, k + 5, Bias::Right);
            for (bl, br) in left.boxes.iter().zip(&right.boxes) {
                fail_if(!bl.intersects_closed(br), || {
                    format!("left/right chains separate at level-{k} cut {cut}")
                })?;
            }
            cuts_checked += 1;
        }
    }
    Ok(format!("{cuts_checked} cut points pin the same limit from both sides"))
}

fn curve_continuity(_: u32) -> Result<String, String> {
    let big_n = 16u32;
    let (g, h) = continuity_modulus(big_n);
    let g_half = GoldenRat::new(g, 2);
    let mut rng = StdRng::seed_from_u64(15);
    let q: i64 = 4_000_000_000_000_000_000; // offsets near 1e-19·q keep |x-y| < g_16/2
    for sample in 0..1_000 {
        let p = rng.gen_range(0..=q - 500_000_000_000);
        let delta = rng.gen_range(1..=400_000_000_000i64);
        let x = GoldenRat::from_ratio(p, q);
        let y = GoldenRat::from_ratio(p + delta, q);
        let diff = &y - &x;
        fail_if(diff >= g_half, || format!("sample {sample} violates the gap precondition"))?;
        let fx = eval(&x, big_n).center;
        let fy = eval(&y, big_n).center;
        let (ax, ay) = fx.to_f64();
        let (bx, by) = fy.to_f64();
        let dist = ((ax - bx).powi(2) + (ay - by).powi(2)).sqrt();
        fail_if(dist > 2.0 * h, || {
            format!("‖F(x)-F(y)‖ = {dist:.3e} > 2h at sample {sample}")
        })?;
    }
    Ok(format!("1000 close pairs move ≤ 2·h_{big_n} = {:.3e}", 2.0 * h))
}

fn curve_preimage(_: u32) -> Result<String, String> {
    let depth = 24u32;
    let bound = diameter_bound(depth);
    let mut rng = StdRng::seed_from_u64(16);
    let mut worst = 0.0f64;
    for _ in 0..1_000 {
        let y = (rng.gen::<f64>(), rng.gen::<f64>());
        let x = preimage(y, depth).map_err(|e| e.to_string())?;
        let res = eval(&x, depth);
        let (cx, cy) = res.center.to_f64();
        let dist = ((cx - y.0).powi(2) + (cy - y.1).powi(2)).sqrt();
        worst = worst.max(dist);
        fail_if(dist > bound, || format!("round trip error {dist:.3e} > {bound:.3e} at y = {y:?}"))?;
    }
    Ok(format!("1000 round trips, worst error {worst:.3e} ≤ {bound:.3e}"))
}

fn curve_connectedness(max_depth: u32) -> Result<String, String> {
    let cap = max_depth.min(6);
    for k in 1..=cap {
        fail_if(!connectedness_check(k), || format!("partition level {k} disconnected"))?;
    }
    // the same holds for every seed's supertile rectangles
    for seed in Label::all() {
        for k in 1..=cap {
            let rects: Vec<Rect> = supertile(seed, k).tiles.iter().map(|t| t.support()).collect();
            fail_if(first_disconnection(&rects).is_some(), || {
                format!("supertile of {seed} disconnected at k = {k}")
            })?;
        }
    }
    // negative control: scrambling the order must break adjacency
    let mut rects = partition(2).rects;
    rects.swap(0, 4);
    fail_if(first_disconnection(&rects).is_none(), || "scrambled order still adjacent".into())?;
    Ok(format!("edge-adjacency for k ≤ {cap}, scrambled control fails"))
}

fn export_polygon(_: u32) -> Result<String, String> {
    for k in 1..=4u32 {
        let poly = crate::export::polygon(k);
        let want = fibonacci_u64(k + 2).pow(2) as usize;
        fail_if(poly.len() != want, || format!("polygon({k}) has {} vertices", poly.len()))?;
        let level = partition(k);
        for (i, pair) in level.rects.windows(2).enumerate() {
            fail_if(!pair[0].contains(&poly.points[i]), || format!("vertex {i} outside its rect"))?;
            fail_if(!pair[0].edge_adjacent(&pair[1]), || format!("rects {i},{} not adjacent", i + 1))?;
        }
    }
    Ok("vertex counts and adjacency for k ≤ 4".into())
}

fn export_json_roundtrip(_: u32) -> Result<String, String> {
    for seed in ["A1+", "C2-", "D4+"] {
        let patch = supertile(seed.parse().unwrap(), 2);
        let text = crate::export::patch_to_json(&patch, true);
        let back = crate::export::patch_from_json(&text).map_err(|e| e.to_string())?;
        fail_if(back != patch, || format!("round trip changed the {seed} patch"))?;
    }
    Ok("3 seeds round-trip losslessly".into())
}

fn export_determinism(_: u32) -> Result<String, String> {
    let style = crate::export::Style::default();
    let patch = supertile(a1_plus(), 3);
    let a = crate::export::patch_to_svg(&patch, &style);
    let b = crate::export::patch_to_svg(&patch, &style);
    fail_if(a != b, || "patch SVG not byte-stable".into())?;
    let poly = crate::export::polygon(3);
    let grid = partition(3).rects;
    let a = crate::export::polyline_to_svg(&poly, Some(&grid), &style);
    let b = crate::export::polyline_to_svg(&poly, Some(&grid), &style);
    fail_if(a != b, || "polygon SVG not byte-stable".into())?;
    Ok("byte-identical re-renders".into())
}

fn export_tessellation(_: u32) -> Result<String, String> {
    let t1 = crate::export::tessellate(1);
    let t2 = crate::export::tessellate(2);
    fail_if(t1.tiles.len() != 9 || t2.tiles.len() != 64, || "tessellation sizes".into())?;
    fail_if(t2.tiles[..9] != t1.tiles[..], || "smaller patch is not a prefix".into())?;
    fail_if(t1.tiles[0].translation != Point2::origin(), || "origin tile moved".into())?;
    fail_if(t1.tiles[0].label != a1_plus(), || "origin tile is not A1+".into())?;
    Ok("quadrant patches nest with A1+ pinned at the origin".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_whole_suite_passes_at_shallow_depth() {
        let results = run_all(3);
        let failures: Vec<String> = results
            .iter()
            .filter(|r| !r.passed)
            .map(|r| format!("{}: {}", r.name, r.detail))
            .collect();
        assert!(failures.is_empty(), "{failures:?}");
        assert_eq!(results.len(), CHECKS.len());
    }
}
