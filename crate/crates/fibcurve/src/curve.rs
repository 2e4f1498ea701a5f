//! The Fibonacci space-filling curve.
//!
//! Scaling the k-th supertile of `A1+` by φ^(-k-1) partitions the unit
//! square into F(k+2)² rectangles in curve order; pairing them with closed
//! intervals whose lengths equal the rectangle areas partitions [0,1] the
//! same way. Refining both partitions in lockstep and intersecting nested
//! boxes defines a continuous surjection F from the interval onto the
//! square.
//!
//! Everything here is exact: interval cuts live in Z[φ], parameters are
//! rationals over Z[φ], and every containment or tie is decided by exact
//! sign computation. Floats appear only in reported error bounds and in the
//! measurement-grade inverse.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::golden::{GoldenInt, GoldenRat, Point2, Rect};
use crate::prototiles::Label;
use crate::substitution::{count_matrix, rule_omega, supertile, CountMatrix, PlacedTile};
use crate::Error;

fn a1_plus() -> Label {
    "A1+".parse().expect("static label")
}

/// An ordinary rational parameter `p/q` in [0, 1], canonical reduced form.
/// This is the CLI-facing parameter type; internally the curve accepts any
/// exact value in the golden rationals (see [`eval`]).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamRational {
    num: BigInt,
    den: BigInt,
}

impl ParamRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, Error> {
        let (mut num, mut den) = (num.into(), den.into());
        if den.is_zero() {
            return Err(Error::ParseParam(format!("{num}/{den}")));
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_negative() || num > den {
            return Err(Error::ParamRange(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        Ok(Self { num: num / &g, den: den / g })
    }

    pub fn to_golden(&self) -> GoldenRat {
        GoldenRat::from_ratio(self.num.clone(), self.den.clone())
    }
}

impl fmt::Display for ParamRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for ParamRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::ParseParam(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        Self::new(num, den)
    }
}

/// Level-k paired partitions: the rectangles J_i of the unit square in curve
/// order, and the cut points 0 = c_0 < … < c_N = 1 whose closed intervals
/// I_i = [c_{i-1}, c_i] have exactly the rectangle areas.
#[derive(Clone, Debug)]
pub struct PartitionLevel {
    pub k: u32,
    pub rects: Vec<Rect>,
    pub cuts: Vec<GoldenInt>,
}

impl PartitionLevel {
    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    /// Exact length of interval i (1-based).
    pub fn interval_length(&self, i: usize) -> GoldenInt {
        &self.cuts[i] - &self.cuts[i - 1]
    }
}

/// The level-k partition of the unit square: the k-th supertile of `A1+`
/// scaled by φ^(-k-1), with the matching interval cuts.
pub fn partition(k: u32) -> PartitionLevel {
    let patch = supertile(a1_plus(), k);
    let scale = GoldenInt::phi_pow(-(k as i64) - 1);
    let area_scale = GoldenInt::phi_pow(-2 * (k as i64) - 2);

    let mut cuts = Vec::with_capacity(patch.tiles.len() + 1);
    cuts.push(GoldenInt::zero());
    let mut acc = GoldenInt::zero();
    let rects = patch
        .tiles
        .iter()
        .map(|tile| {
            acc = &acc + &(&tile.label.color.area() * &area_scale);
            cuts.push(acc.clone());
            tile.support().scale_golden(&scale)
        })
        .collect();
    PartitionLevel { k, rects, cuts }
}

/// Smallest 1-based i with c_{i-1} ≤ x ≤ c_i, decided exactly; at a shared
/// cut point the left (smaller-index) interval wins.
pub fn locate(level: &PartitionLevel, x: &GoldenRat) -> usize {
    assert!(
        x.sign() >= 0 && *x <= GoldenRat::one(),
        "parameter outside [0,1]"
    );
    // binary search for the first cut with x ≤ c_i
    let (mut lo, mut hi) = (1usize, level.cuts.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if *x <= GoldenRat::from(level.cuts[mid].clone()) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Which interval to pick when the parameter sits exactly on a cut.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Bias {
    Left,
    Right,
}

/// The nested descent that evaluates F at a parameter.
#[derive(Clone, Debug)]
pub struct EvalResult {
    /// (level, 1-based rectangle index) for levels 1..=depth.
    pub chain: Vec<(u32, BigUint)>,
    /// The scaled rectangle at each level of the chain.
    pub boxes: Vec<Rect>,
    /// The level-`depth` interval [lo, hi] containing the parameter.
    pub interval: (GoldenInt, GoldenInt),
    /// Final box of the chain.
    pub final_box: Rect,
    /// Centre of the final box; within `error_bound` of F(x).
    pub center: Point2,
    /// √2·φ^(-depth): the final box diameter bound.
    pub error_bound: f64,
}

/// Diameter bound of level-k boxes: √2·φ^(-k).
pub fn diameter_bound(k: u32) -> f64 {
    std::f64::consts::SQRT_2 * crate::golden::PHI_F64.powi(-(k as i32))
}

/// Evaluate the curve at an exact parameter in [0, 1], descending `depth`
/// partition levels. Ties at shared cut points resolve leftward, which the
/// well-definedness of F makes immaterial to the limit.
pub fn eval(x: &GoldenRat, depth: u32) -> EvalResult {
    eval_with_bias(x, depth, Bias::Left)
}

/// Convenience wrapper for ordinary rational parameters.
pub fn eval_rational(x: &ParamRational, depth: u32) -> EvalResult {
    eval(&x.to_golden(), depth)
}

/// [`eval`] with an explicit tie-breaking side, used to probe boundary
/// parameters from both of their nested-interval chains.
pub fn eval_with_bias(x: &GoldenRat, depth: u32, bias: Bias) -> EvalResult {
    assert!(depth >= 1, "depth must be at least 1");
    assert!(
        x.sign() >= 0 && *x <= GoldenRat::one(),
        "parameter outside [0,1]"
    );
    let rule = rule_omega();
    let matrix = count_matrix();

    let mut tile = PlacedTile::at_origin(a1_plus());
    let mut lo = GoldenInt::zero();
    let mut hi = GoldenInt::one();
    // label counts of the tiles strictly before the current one at this level
    let mut prefix: [BigUint; 24] = std::array::from_fn(|_| BigUint::zero());

    let mut chain = Vec::with_capacity(depth as usize);
    let mut boxes = Vec::with_capacity(depth as usize);

    for level in 1..=depth {
        let area_scale = GoldenInt::phi_pow(-2 * (level as i64) - 2);
        let row = rule.row(tile.label);

        // walk the child interval cuts inside [lo, hi]; child lengths sum to
        // the parent length exactly, so the last upper cut equals hi
        let mut chosen = None;
        let mut child_lo;
        let mut child_hi = lo.clone();
        for (m, (child, _)) in row.iter().enumerate() {
            child_lo = child_hi.clone();
            child_hi = &child_lo + &(&child.color.area() * &area_scale);
            let inside = if m + 1 == row.len() {
                true
            } else {
                let boundary = GoldenRat::from(child_hi.clone());
                match bias {
                    Bias::Left => *x <= boundary,
                    Bias::Right => *x < boundary,
                }
            };
            if inside {
                chosen = Some((m, child_lo));
                break;
            }
        }
        let (chosen, child_lo) = chosen.expect("rows are nonempty");
        lo = child_lo;
        hi = child_hi;

        // prefix counts at the child level: all children of earlier tiles,
        // plus this tile's children before the chosen one
        let mut new_prefix = matrix.child_counts(&prefix);
        for (child, _) in row.iter().take(chosen) {
            new_prefix[child.position()] += 1u32;
        }
        prefix = new_prefix;
        let index: BigUint = prefix.iter().sum::<BigUint>() + 1u32;
        chain.push((level, index));

        // descend into the chosen placed tile
        let phi = GoldenInt::phi();
        let (child, cell) = &row[chosen];
        let base = tile.translation.scale_golden(&phi);
        let offset = Point2::new(GoldenRat::from(cell.0.clone()), GoldenRat::from(cell.1.clone()));
        tile = PlacedTile::new(*child, base.add(&offset));

        let box_scale = GoldenInt::phi_pow(-(level as i64) - 1);
        boxes.push(tile.support().scale_golden(&box_scale));
    }

    let final_box = boxes.last().expect("depth >= 1").clone();
    let center = final_box.center();
    EvalResult {
        chain,
        boxes,
        interval: (lo, hi),
        final_box,
        center,
        error_bound: diameter_bound(depth),
    }
}

/// Constructive surjectivity: find a parameter mapping into the final box
/// around a target point, descending greedily through containing children
/// (ties to the smallest index, restricted to children of the current
/// rectangle, so interval nesting is guaranteed). Returns the midpoint of
/// the final interval — an exact golden rational.
pub fn preimage_exact(y: &Point2, depth: u32) -> Result<GoldenRat, Error> {
    assert!(depth >= 1, "depth must be at least 1");
    let unit = GoldenRat::one();
    let in_square = y.x.sign() >= 0 && y.x <= unit && y.y.sign() >= 0 && y.y <= unit;
    if !in_square {
        return Err(Error::PointRange(y.x.to_f64(), y.y.to_f64()));
    }
    let rule = rule_omega();

    let mut tile = PlacedTile::at_origin(a1_plus());
    let mut lo = GoldenInt::zero();
    let mut hi = GoldenInt::one();

    for level in 1..=depth {
        let area_scale = GoldenInt::phi_pow(-2 * (level as i64) - 2);
        let box_scale = GoldenInt::phi_pow(-(level as i64) - 1);
        let phi = GoldenInt::phi();
        let row = rule.row(tile.label);
        let base = tile.translation.scale_golden(&phi);

        let mut cut = lo.clone();
        let mut found = None;
        for (child, cell) in row {
            let child_lo = cut.clone();
            cut = &cut + &(&child.color.area() * &area_scale);
            let offset =
                Point2::new(GoldenRat::from(cell.0.clone()), GoldenRat::from(cell.1.clone()));
            let placed = PlacedTile::new(*child, base.add(&offset));
            if placed.support().scale_golden(&box_scale).contains(y) {
                found = Some((placed, child_lo, cut.clone()));
                break;
            }
        }
        let (placed, child_lo, child_hi) =
            found.expect("children tile the parent rectangle exactly");
        tile = placed;
        lo = child_lo;
        hi = child_hi;
    }
    Ok(GoldenRat::new(&lo + &hi, 2))
}

/// Measurement-grade inverse: accepts floating-point coordinates, converts
/// them to their exact dyadic values, and runs the exact descent.
pub fn preimage(y: (f64, f64), depth: u32) -> Result<GoldenRat, Error> {
    let (gx, gy) = (
        GoldenRat::from_f64_exact(y.0).ok_or(Error::PointRange(y.0, y.1))?,
        GoldenRat::from_f64_exact(y.1).ok_or(Error::PointRange(y.0, y.1))?,
    );
    preimage_exact(&Point2::new(gx, gy), depth)
}

/// Index of the first consecutive pair of rectangles that does not share a
/// positive-length edge, if any.
pub fn first_disconnection(rects: &[Rect]) -> Option<usize> {
    rects.windows(2).position(|pair| !pair[0].edge_adjacent(&pair[1]))
}

/// True iff every pair of consecutive level-k rectangles shares a
/// positive-length edge (exact test).
pub fn connectedness_check(k: u32) -> bool {
    assert!(k >= 1);
    first_disconnection(&partition(k).rects).is_none()
}

/// (g_k, h_k): the largest level-k interval length φ^(-2k), exact, and the
/// largest level-k rectangle diameter √2·φ^(-k), as a float. Both decrease
/// strictly in k, which is what makes F continuous.
pub fn continuity_modulus(k: u32) -> (GoldenInt, f64) {
    (GoldenInt::phi_pow(-2 * (k as i64)), diameter_bound(k))
}

/// The exact count matrix used by the index bookkeeping.
pub fn index_matrix() -> CountMatrix {
    count_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::fibonacci_u64;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rat(p: i64, q: i64) -> GoldenRat {
        GoldenRat::from_ratio(p, q)
    }

    fn golden(a: i64, b: i64) -> GoldenInt {
        GoldenInt::new(a, b)
    }

    #[test]
    fn partition_level_zero_is_the_unit_square() {
        let level = partition(0);
        assert_eq!(level.len(), 1);
        assert_eq!(level.rects[0].origin, Point2::origin());
        assert_eq!(level.rects[0].width, GoldenRat::one());
        assert_eq!(level.rects[0].height, GoldenRat::one());
        assert_eq!(level.cuts, vec![GoldenInt::zero(), GoldenInt::one()]);
    }

    #[test]
    fn partition_level_one_matches_the_exact_lengths() {
        let level = partition(1);
        assert_eq!(level.len(), 4);
        // lengths [φ⁻², φ⁻³, φ⁻⁴, φ⁻³] = [2-φ, -3+2φ, 5-3φ, -3+2φ]
        let want = [golden(2, -1), golden(-3, 2), golden(5, -3), golden(-3, 2)];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(&level.interval_length(i + 1), w, "interval {}", i + 1);
        }
        assert_eq!(level.cuts.last().unwrap(), &GoldenInt::one());

        // rectangle order: bottom-left, top-left, top-right, bottom-right
        let inv = GoldenRat::from(GoldenInt::phi_pow(-1));
        let zero = GoldenRat::zero();
        let origins: Vec<(GoldenRat, GoldenRat)> =
            level.rects.iter().map(|r| (r.origin.x.clone(), r.origin.y.clone())).collect();
        assert_eq!(origins[0], (zero.clone(), zero.clone()));
        assert_eq!(origins[1], (zero.clone(), inv.clone()));
        assert_eq!(origins[2], (inv.clone(), inv.clone()));
        assert_eq!(origins[3], (inv.clone(), zero.clone()));
    }

    #[test]
    fn partition_level_two_matches_the_nine_cell_layout() {
        let level = partition(2);
        assert_eq!(level.len(), 9);
        let s = GoldenInt::phi_pow(-3);
        let pos = |x: GoldenInt, y: GoldenInt| {
            Point2::new(GoldenRat::from(&x * &s), GoldenRat::from(&y * &s))
        };
        let z = GoldenInt::zero;
        let phi = GoldenInt::phi;
        let one_phi = || GoldenInt::new(1, 1);
        let expected = [
            pos(z(), z()),
            pos(phi(), z()),
            pos(phi(), phi()),
            pos(z(), phi()),
            pos(z(), one_phi()),
            pos(phi(), one_phi()),
            pos(one_phi(), one_phi()),
            pos(one_phi(), phi()),
            pos(one_phi(), z()),
        ];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(&level.rects[i].origin, want, "rect {}", i + 1);
        }
    }

    #[test]
    fn measure_is_preserved_levelwise() {
        for k in 0..=6u32 {
            let level = partition(k);
            assert_eq!(level.cuts[0], GoldenInt::zero());
            assert_eq!(level.cuts.last().unwrap(), &GoldenInt::one());
            for i in 1..=level.len() {
                let area = level.rects[i - 1].area();
                assert_eq!(
                    GoldenRat::from(level.interval_length(i)),
                    area,
                    "k = {k}, i = {i}"
                );
            }
        }
    }

    #[test]
    fn locate_examples() {
        for k in 1..=4u32 {
            let level = partition(k);
            assert_eq!(locate(&level, &GoldenRat::zero()), 1);
            assert_eq!(locate(&level, &GoldenRat::one()), level.len());
            assert_eq!(level.len() as u64, fibonacci_u64(k + 2).pow(2));
        }
        // cumulative cuts φ⁻² ≈ 0.382 and φ⁻² + φ⁻³ ≈ 0.618 bracket 1/2
        assert_eq!(locate(&partition(1), &rat(1, 2)), 2);
        // a shared endpoint goes to the left interval
        assert_eq!(locate(&partition(1), &GoldenRat::from(golden(2, -1))), 1);
    }

    #[test]
    fn eval_pins_the_left_corner_at_zero() {
        let res = eval(&GoldenRat::zero(), 24);
        for b in &res.boxes {
            assert_eq!(b.origin, Point2::origin());
        }
        assert_eq!(res.chain.first().unwrap().1, BigUint::from(1u32));
        assert_eq!(res.chain.last().unwrap().1, BigUint::from(1u32));
    }

    #[test]
    fn eval_pins_the_bottom_right_corner_at_one() {
        let corner = Point2::new(GoldenRat::one(), GoldenRat::zero());
        let res = eval(&GoldenRat::one(), 24);
        for (level, b) in res.boxes.iter().enumerate() {
            assert!(b.contains(&corner), "level {}", level + 1);
            assert_eq!(b.x1(), GoldenRat::one());
            assert_eq!(*b.y0(), GoldenRat::zero());
        }
        let (_, last_index) = res.chain.last().unwrap();
        assert_eq!(*last_index, BigUint::from(fibonacci_u64(24 + 2).pow(2)));
    }

    #[test]
    fn eval_at_the_first_cut_hits_the_shared_decoration_endpoint() {
        // the boundary between the first two level-1 intervals maps to
        // (0, φ-1), the meeting point of the first two decorations
        let cut = GoldenRat::from(golden(2, -1)); // φ⁻²
        let target = Point2::new(GoldenRat::zero(), GoldenRat::from(golden(-1, 1)));
        for bias in [Bias::Left, Bias::Right] {
            let res = eval_with_bias(&cut, 32, bias);
            for (level, b) in res.boxes.iter().enumerate() {
                assert!(b.contains(&target), "bias {bias:?}, level {}", level + 1);
            }
            let (cx, cy) = res.center.to_f64();
            let (tx, ty) = target.to_f64();
            let dist = ((cx - tx).powi(2) + (cy - ty).powi(2)).sqrt();
            assert!(dist <= diameter_bound(32), "bias {bias:?}");
        }
    }

    #[test]
    fn eval_chains_are_nested_with_shrinking_diameters() {
        let mut rng = StdRng::seed_from_u64(0xe7a1);
        for _ in 0..100 {
            let q = 1_000_000_007i64;
            let p = rng.gen_range(0..=q);
            let res = eval(&rat(p, q), 12);
            for pair in res.boxes.windows(2) {
                let inner = &pair[1];
                let outer = &pair[0];
                assert!(outer.contains(&inner.origin));
                assert!(outer.contains(&Point2::new(inner.x1(), inner.y1())));
            }
            for (level, b) in res.boxes.iter().enumerate() {
                let k = level as i64 + 1;
                // diameter² ≤ 2·φ^(-2k), exactly
                let bound = GoldenRat::from(&GoldenInt::phi_pow(-2 * k) * &GoldenInt::new(2, 0));
                assert!(b.diameter_sq() <= bound, "level {k}");
            }
        }
    }

    #[test]
    fn eval_indices_are_consistent_with_locate() {
        let mut rng = StdRng::seed_from_u64(0x10ca7e);
        for _ in 0..25 {
            let q = 99_991i64;
            let p = rng.gen_range(0..=q);
            let x = rat(p, q);
            let res = eval(&x, 5);
            for (level, index) in &res.chain {
                let part = partition(*level);
                assert_eq!(BigUint::from(locate(&part, &x) as u64), *index, "level {level}");
            }
        }
    }

    #[test]
    fn boundary_parameters_pin_the_same_point_from_both_sides() {
        for k in 1..=3u32 {
            let level = partition(k);
            for cut in &level.cuts[1..level.cuts.len() - 1] {
                let x = GoldenRat::from(cut.clone());
                let left = eval_with_bias(&x, k + 5, Bias::Left);
                let right = eval_with_bias(&x, k + 5, Bias::Right);
                for (bl, br) in left.boxes.iter().zip(&right.boxes) {
                    assert!(bl.intersects_closed(br), "k = {k}, cut {cut}");
                }
            }
        }
    }

    #[test]
    fn preimage_round_trips() {
        let mut rng = StdRng::seed_from_u64(0x1e4e);
        for _ in 0..50 {
            let y = (rng.gen::<f64>(), rng.gen::<f64>());
            let x = preimage(y, 16).unwrap();
            let res = eval(&x, 16);
            let (cx, cy) = res.center.to_f64();
            let dist = ((cx - y.0).powi(2) + (cy - y.1).powi(2)).sqrt();
            assert!(dist <= diameter_bound(16), "y = {y:?}, dist = {dist}");
        }
    }

    #[test]
    fn preimage_corners() {
        let zero = preimage((0.0, 0.0), 12).unwrap();
        assert!(zero <= GoldenRat::from(GoldenInt::phi_pow(-24)));

        let one = preimage((1.0, 0.0), 12).unwrap();
        let last_interval_lo = {
            let level = partition(12);
            GoldenRat::from(level.cuts[level.len() - 1].clone())
        };
        assert!(one >= last_interval_lo);

        assert!(preimage((1.5, 0.0), 4).is_err());
        assert!(preimage((0.0, -0.1), 4).is_err());
    }

    #[test]
    fn connectedness_holds_and_scrambles_fail() {
        for k in 1..=4 {
            assert!(connectedness_check(k), "k = {k}");
        }
        let mut rects = partition(2).rects;
        rects.swap(0, 4);
        assert!(first_disconnection(&rects).is_some());
    }

    #[test]
    fn modulus_values_and_monotonicity() {
        assert_eq!(continuity_modulus(0).0, GoldenInt::one());
        assert_eq!(continuity_modulus(1).0, golden(2, -1));
        // g_k is the maximum interval length at level k
        for k in 0..=5u32 {
            let level = partition(k);
            let max_len =
                (1..=level.len()).map(|i| level.interval_length(i)).max().unwrap();
            assert_eq!(max_len, continuity_modulus(k).0, "k = {k}");
        }
        let mut prev = continuity_modulus(0);
        for k in 1..=20 {
            let cur = continuity_modulus(k);
            assert!(cur.0 < prev.0);
            assert!(cur.1 < prev.1);
            prev = cur;
        }
    }

    #[test]
    fn param_rational_parses_and_validates() {
        let half: ParamRational = "1/2".parse().unwrap();
        assert_eq!(half.to_golden(), rat(1, 2));
        assert_eq!("4/8".parse::<ParamRational>().unwrap().to_string(), "1/2");
        assert_eq!("1".parse::<ParamRational>().unwrap().to_string(), "1/1");
        assert!("3/2".parse::<ParamRational>().is_err());
        assert!("-1/2".parse::<ParamRational>().is_err());
        assert!("1/0".parse::<ParamRational>().is_err());
        assert!("x/2".parse::<ParamRational>().is_err());
    }
}
