//! Exact arithmetic in the golden-ratio ring and rationals over it.
//!
//! Every coordinate, length and area in this crate lives in
//! `Z[phi] = { a + b·phi : a, b integers }` with `phi = (1+√5)/2`, or in the
//! rationals over that ring. Two identities make the ring workable:
//!
//! ```text
//! phi² = phi + 1          (products reduce back into a + b·phi)
//! phi⁻¹ = -1 + phi        (division by phi stays in the ring)
//! ```
//!
//! Coefficients are arbitrary precision: level-k constructions multiply by
//! phi^k and coefficients grow like Fibonacci numbers, so fixed-width
//! integers overflow around k ≈ 40. All comparisons are decided by the field
//! norm `a² + ab - b²`, never by floating point; floats are produced only at
//! the rendering boundary.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// phi as a double, for rendering and cross-checks only.
pub const PHI_F64: f64 = 1.618033988749894848204586834365638118;

/// An element `a + b·phi` of Z[phi].
///
/// The representation is canonical: phi is irrational, so `a + b·phi`
/// determines `(a, b)` uniquely and structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GoldenInt {
    a: BigInt,
    b: BigInt,
}

impl GoldenInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn phi() -> Self {
        Self::new(0, 1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self { a: n.into(), b: BigInt::zero() }
    }

    /// Rational part `a`.
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// phi-coefficient `b`.
    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Field norm `a² + ab - b²`, the product of the number with its
    /// algebraic conjugate `a + b·(1-phi)`. Zero only at zero.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Exact sign of the real number `a + b·phi`, with no floating point.
    ///
    /// When `a` and `b` agree in sign the answer is immediate. In the mixed
    /// cases the conjugate `a + b·(1-phi)` has a known sign, so the sign of
    /// the norm decides.
    pub fn sign(&self) -> i32 {
        let sa = bigint_sign(&self.a);
        let sb = bigint_sign(&self.b);
        match (sa, sb) {
            (0, 0) => 0,
            _ if sa >= 0 && sb >= 0 => 1,
            _ if sa <= 0 && sb <= 0 => -1,
            // a < 0 < b: conjugate is negative, so sign = -sign(norm).
            _ if sa < 0 => -bigint_sign(&self.norm()),
            // b < 0 < a: conjugate is positive, so sign = +sign(norm).
            _ => bigint_sign(&self.norm()),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    /// Exact phi^n for any integer n (negative allowed).
    ///
    /// For n ≥ 0, `phi^n = F(n-1) + F(n)·phi`; for n < 0,
    /// `phi^-m = (-1)^m (F(m+1) - F(m)·phi)`, with F the Fibonacci sequence
    /// (F(1) = F(2) = 1).
    pub fn phi_pow(n: i64) -> Self {
        if n >= 0 {
            let (f_prev, f_n) = fibonacci_pair(n as u64);
            Self { a: f_prev, b: f_n }
        } else {
            let m = n.unsigned_abs();
            let (f_m, f_next) = fibonacci_pair_at(m);
            let val = Self { a: f_next, b: -f_m };
            if m.is_multiple_of(2) {
                val
            } else {
                -&val
            }
        }
    }

    /// Multiply by phi⁻¹ = -1 + phi; exact, stays inside the ring.
    pub fn div_by_phi(&self) -> Self {
        self * &Self::new(-1, 1)
    }

    pub fn to_f64(&self) -> f64 {
        golden_to_f64(&self.a, &self.b, &BigInt::one())
    }
}

/// (a + b·phi) / den as a double, without catastrophic cancellation.
///
/// a + b·phi = (2a + b + b·√5)/2; naive evaluation loses up to log₂|b| bits
/// when the terms nearly cancel (they do: coefficients grow like phi^k while
/// the value stays bounded). Doing the sum in 2^64-scaled integers with an
/// exact integer square root keeps the result accurate to rounding.
fn golden_to_f64(a: &BigInt, b: &BigInt, den: &BigInt) -> f64 {
    const SHIFT: u32 = 128;
    let linear = (a.clone() * 2 + b) << SHIFT;
    let root = ((b * b * 5u32) << (2 * SHIFT)).sqrt();
    let root = if b.is_negative() { -root } else { root };
    let total = linear + root;
    let scale = 2.0f64.powi(-(SHIFT as i32) - 1);
    bigint_to_f64(&total) * scale / bigint_to_f64(den)
}

/// Returns (F(n-1), F(n)) with F(0) = 0, F(1) = 1.
fn fibonacci_pair(n: u64) -> (BigInt, BigInt) {
    let mut prev = BigInt::one(); // F(-1)
    let mut cur = BigInt::zero(); // F(0)
    for _ in 0..n {
        let next = &prev + &cur;
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

/// Returns (F(m), F(m+1)).
fn fibonacci_pair_at(m: u64) -> (BigInt, BigInt) {
    let (_, f_m) = fibonacci_pair(m);
    let (_, f_next) = fibonacci_pair(m + 1);
    (f_m, f_next)
}

fn bigint_sign(x: &BigInt) -> i32 {
    match x.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl Neg for &GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt { a: -&self.a, b: -&self.b }
    }
}

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt { a: -self.a, b: -self.b }
    }
}

impl Add for &GoldenInt {
    type Output = GoldenInt;
    fn add(self, rhs: &GoldenInt) -> GoldenInt {
        GoldenInt { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &GoldenInt {
    type Output = GoldenInt;
    fn sub(self, rhs: &GoldenInt) -> GoldenInt {
        GoldenInt { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul for &GoldenInt {
    type Output = GoldenInt;
    // (a + b·phi)(c + d·phi) = (ac + bd) + (ad + bc + bd)·phi via phi² = phi + 1.
    fn mul(self, rhs: &GoldenInt) -> GoldenInt {
        let bd = &self.b * &rhs.b;
        GoldenInt {
            a: &self.a * &rhs.a + &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a + &bd,
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GoldenInt {
            type Output = GoldenInt;
            fn $method(self, rhs: GoldenInt) -> GoldenInt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GoldenInt> for GoldenInt {
            type Output = GoldenInt;
            fn $method(self, rhs: &GoldenInt) -> GoldenInt {
                (&self).$method(rhs)
            }
        }
        impl $trait<GoldenInt> for &GoldenInt {
            type Output = GoldenInt;
            fn $method(self, rhs: GoldenInt) -> GoldenInt {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl PartialOrd for GoldenInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let mut out = String::new();
        if !self.a.is_zero() {
            out.push_str(&self.a.to_string());
        }
        if self.b.is_negative() {
            out.push('-');
        } else if !self.a.is_zero() {
            out.push('+');
        }
        let mag = self.b.magnitude();
        if !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push('φ');
        write!(f, "{out}")
    }
}

// Wire form: a GoldenInt is the pair of decimal integer strings ["a","b"].
impl Serialize for GoldenInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.a.to_string(), self.b.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for GoldenInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        Ok(GoldenInt {
            a: parse_bigint::<D>(&a)?,
            b: parse_bigint::<D>(&b)?,
        })
    }
}

fn parse_bigint<'de, D: Deserializer<'de>>(s: &str) -> Result<BigInt, D::Error> {
    s.parse().map_err(|_| D::Error::custom(format!("not a decimal integer: {s:?}")))
}

/// A quotient `num / den` with `num` in Z[phi] and an ordinary positive
/// integer denominator.
///
/// phi never appears in denominators: phi⁻¹ is absorbed into the numerator
/// as `-1 + phi`, which keeps the canonical form unique
/// (`gcd(gcd(|a|,|b|), den) = 1`, `den > 0`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GoldenRat {
    num: GoldenInt,
    den: BigInt,
}

impl GoldenRat {
    pub fn new(num: GoldenInt, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        Self { num, den }.reduced()
    }

    fn reduced(mut self) -> Self {
        if self.den.is_negative() {
            self.num = -self.num;
            self.den = -self.den;
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
            return self;
        }
        let g = self.num.a.abs().gcd(&self.num.b.abs()).gcd(&self.den);
        if !g.is_one() {
            self.num.a = &self.num.a / &g;
            self.num.b = &self.num.b / &g;
            self.den = &self.den / &g;
        }
        self
    }

    pub fn zero() -> Self {
        Self::from_golden(GoldenInt::zero())
    }

    pub fn one() -> Self {
        Self::from_golden(GoldenInt::one())
    }

    pub fn from_golden(num: GoldenInt) -> Self {
        Self { num, den: BigInt::one() }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::from_golden(GoldenInt::from_int(n))
    }

    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self::new(GoldenInt::from_int(num), den)
    }

    /// Exact value of a finite f64 (every finite double is a dyadic rational).
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e2) = if exp == 0 {
            (frac, -1074i64) // subnormal
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        let mant = BigInt::from(mant) * sign;
        Some(if e2 >= 0 {
            Self::from_golden(GoldenInt::from_int(mant << e2 as u64))
        } else {
            Self::new(GoldenInt::from_int(mant), BigInt::one() << (-e2) as u64)
        })
    }

    pub fn num(&self) -> &GoldenInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Some(g) when the value lies in Z[phi] itself.
    pub fn as_golden_int(&self) -> Option<GoldenInt> {
        self.den.is_one().then(|| self.num.clone())
    }

    pub fn sign(&self) -> i32 {
        self.num.sign()
    }

    pub fn half(&self) -> Self {
        Self::new(self.num.clone(), &self.den * 2)
    }

    pub fn scale_golden(&self, g: &GoldenInt) -> Self {
        Self::new(&self.num * g, self.den.clone())
    }

    pub fn to_f64(&self) -> f64 {
        golden_to_f64(&self.num.a, &self.num.b, &self.den)
    }
}

impl From<GoldenInt> for GoldenRat {
    fn from(g: GoldenInt) -> Self {
        Self::from_golden(g)
    }
}

impl Neg for &GoldenRat {
    type Output = GoldenRat;
    fn neg(self) -> GoldenRat {
        GoldenRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for &GoldenRat {
    type Output = GoldenRat;
    fn add(self, rhs: &GoldenRat) -> GoldenRat {
        GoldenRat::new(
            &self.num * &GoldenInt::from_int(rhs.den.clone())
                + &rhs.num * &GoldenInt::from_int(self.den.clone()),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &GoldenRat {
    type Output = GoldenRat;
    fn sub(self, rhs: &GoldenRat) -> GoldenRat {
        self + &(-rhs)
    }
}

impl Mul for &GoldenRat {
    type Output = GoldenRat;
    fn mul(self, rhs: &GoldenRat) -> GoldenRat {
        GoldenRat::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl PartialOrd for GoldenRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenRat {
    // den > 0 on both sides, so compare num1·den2 against num2·den1.
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = &self.num * &GoldenInt::from_int(other.den.clone());
        let rhs = &other.num * &GoldenInt::from_int(self.den.clone());
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for GoldenRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

// Wire form: ["a","b","den"].
impl Serialize for GoldenRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.num.a.to_string(), self.num.b.to_string(), self.den.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for GoldenRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b, den] = <[String; 3]>::deserialize(d)?;
        let den: BigInt = parse_bigint::<D>(&den)?;
        if !den.is_positive() {
            return Err(D::Error::custom("denominator must be positive"));
        }
        Ok(GoldenRat::new(
            GoldenInt { a: parse_bigint::<D>(&a)?, b: parse_bigint::<D>(&b)? },
            den,
        ))
    }
}

/// A point with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Point2 {
    pub x: GoldenRat,
    pub y: GoldenRat,
}

impl Point2 {
    pub fn new(x: impl Into<GoldenRat>, y: impl Into<GoldenRat>) -> Self {
        Self { x: x.into(), y: y.into() }
    }

    pub fn origin() -> Self {
        Self::new(GoldenRat::zero(), GoldenRat::zero())
    }

    pub fn add(&self, other: &Point2) -> Point2 {
        Point2 { x: &self.x + &other.x, y: &self.y + &other.y }
    }

    pub fn scale_golden(&self, g: &GoldenInt) -> Point2 {
        Point2 { x: self.x.scale_golden(g), y: self.y.scale_golden(g) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An axis-aligned rectangle `[x0, x0+w] × [y0, y0+h]` with exact sides.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Rect {
    pub origin: Point2,
    pub width: GoldenRat,
    pub height: GoldenRat,
}

impl Rect {
    pub fn new(origin: Point2, width: GoldenRat, height: GoldenRat) -> Self {
        assert!(width.sign() > 0 && height.sign() > 0, "degenerate rectangle");
        Self { origin, width, height }
    }

    pub fn x0(&self) -> &GoldenRat {
        &self.origin.x
    }

    pub fn y0(&self) -> &GoldenRat {
        &self.origin.y
    }

    pub fn x1(&self) -> GoldenRat {
        &self.origin.x + &self.width
    }

    pub fn y1(&self) -> GoldenRat {
        &self.origin.y + &self.height
    }

    pub fn area(&self) -> GoldenRat {
        &self.width * &self.height
    }

    pub fn center(&self) -> Point2 {
        Point2 {
            x: &self.origin.x + &self.width.half(),
            y: &self.origin.y + &self.height.half(),
        }
    }

    pub fn corner_points(&self) -> [Point2; 4] {
        let x1 = self.x1();
        let y1 = self.y1();
        [
            self.origin.clone(),
            Point2 { x: x1.clone(), y: self.origin.y.clone() },
            Point2 { x: x1, y: y1.clone() },
            Point2 { x: self.origin.x.clone(), y: y1 },
        ]
    }

    pub fn translate(&self, by: &Point2) -> Rect {
        Rect { origin: self.origin.add(by), width: self.width.clone(), height: self.height.clone() }
    }

    /// Scale about the coordinate origin by a positive ring element.
    pub fn scale_golden(&self, g: &GoldenInt) -> Rect {
        Rect {
            origin: self.origin.scale_golden(g),
            width: self.width.scale_golden(g),
            height: self.height.scale_golden(g),
        }
    }

    /// Closed containment test.
    pub fn contains(&self, p: &Point2) -> bool {
        *self.x0() <= p.x && p.x <= self.x1() && *self.y0() <= p.y && p.y <= self.y1()
    }

    /// Signed overlap lengths along each axis (negative means separated).
    fn overlaps(&self, other: &Rect) -> (GoldenRat, GoldenRat) {
        let ox = &self.x1().min(other.x1()) - self.x0().max(other.x0());
        let oy = &self.y1().min(other.y1()) - self.y0().max(other.y0());
        (ox, oy)
    }

    /// True when the intersection is a segment of positive length: the two
    /// rectangles share part of an edge but no interior.
    pub fn edge_adjacent(&self, other: &Rect) -> bool {
        let (ox, oy) = self.overlaps(other);
        (ox.sign() == 0 && oy.sign() > 0) || (oy.sign() == 0 && ox.sign() > 0)
    }

    pub fn interiors_overlap(&self, other: &Rect) -> bool {
        let (ox, oy) = self.overlaps(other);
        ox.sign() > 0 && oy.sign() > 0
    }

    /// True when the closed rectangles have any common point.
    pub fn intersects_closed(&self, other: &Rect) -> bool {
        let (ox, oy) = self.overlaps(other);
        ox.sign() >= 0 && oy.sign() >= 0
    }

    /// Squared diameter, exact.
    pub fn diameter_sq(&self) -> GoldenRat {
        &(&self.width * &self.width) + &(&self.height * &self.height)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn g(a: i64, b: i64) -> GoldenInt {
        GoldenInt::new(a, b)
    }

    #[test]
    fn add_componentwise() {
        assert_eq!(&g(0, 0) + &g(1, 1), g(1, 1));
        assert_eq!(&g(2, -1) + &g(-3, 2), g(-1, 1));
        assert_eq!(&g(1, 1) + &g(1, 1), g(2, 2));
    }

    #[test]
    fn mul_reduces_by_minimal_polynomial() {
        assert_eq!(&g(1, 1) * &g(1, 1), g(2, 3));
        assert_eq!(&g(0, 1) * &g(-1, 1), g(1, 0));
        let sq = &g(2, -1) * &g(2, -1);
        assert_eq!(sq, g(5, -3));
        // float oracle: (2 - phi)² ≈ 0.14590
        assert!((sq.to_f64() - 0.145898).abs() < 1e-5);
    }

    #[test]
    fn phi_pow_base_cases() {
        assert_eq!(GoldenInt::phi_pow(0), g(1, 0));
        assert_eq!(GoldenInt::phi_pow(-1), g(-1, 1));
        // oracle for phi^-4: four exact multiplications by (-1 + phi)
        let mut acc = GoldenInt::one();
        for _ in 0..4 {
            acc = acc.div_by_phi();
        }
        assert_eq!(acc, g(5, -3));
        assert_eq!(GoldenInt::phi_pow(-4), acc);
    }

    #[test]
    fn phi_pow_coefficients_are_fibonacci() {
        let mut fib = (BigInt::from(1), BigInt::from(0)); // F(-1), F(0)
        for n in 0..=50i64 {
            let p = GoldenInt::phi_pow(n);
            assert_eq!((p.a().clone(), p.b().clone()), fib, "n = {n}");
            fib = (fib.1.clone(), fib.0 + fib.1);
        }
    }

    #[test]
    fn phi_pow_inverses_cancel() {
        for n in -50..=50i64 {
            let prod = &GoldenInt::phi_pow(n) * &GoldenInt::phi_pow(-n);
            assert_eq!(prod, GoldenInt::one(), "n = {n}");
        }
    }

    #[test]
    fn sign_examples() {
        assert_eq!(g(0, 0).sign(), 0);
        assert_eq!(g(-1, 1).sign(), 1);
        // norm of -3 + 2phi is 9 - 6 - 4 = -1 < 0 and b > 0, so positive
        assert_eq!(g(-3, 2).norm(), BigInt::from(-1));
        assert_eq!(g(-3, 2).sign(), 1);
        assert!((g(-3, 2).to_f64() - 0.236).abs() < 1e-3);
        assert_eq!(g(3, -2).sign(), -1);
        assert_eq!(g(5, -3).sign(), 1);
    }

    #[test]
    fn sign_agrees_with_floats_away_from_zero() {
        let mut rng = StdRng::seed_from_u64(0x5f1bcu64);
        for _ in 0..10_000 {
            let a = rng.gen_range(-1_000_000i64..=1_000_000);
            let b = rng.gen_range(-1_000_000i64..=1_000_000);
            let u = g(a, b);
            let f = u.to_f64();
            if f.abs() > 1e-6 {
                assert_eq!(u.sign(), if f > 0.0 { 1 } else { -1 }, "{a} + {b}φ");
            }
        }
    }

    #[test]
    fn ring_axioms_on_random_triples() {
        let mut rng = StdRng::seed_from_u64(0xf1b0u64);
        for _ in 0..2_000 {
            let mut pick = || g(rng.gen_range(-1000i64..=1000), rng.gen_range(-1000i64..=1000));
            let (u, v, w) = (pick(), pick(), pick());
            assert_eq!(&(&u + &v) + &w, &u + &(&v + &w));
            assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
            assert_eq!(&u * &(&v + &w), &(&u * &v) + &(&u * &w));
            assert_eq!(&u * &v, &v * &u);
        }
    }

    #[test]
    fn ordering_matches_value() {
        assert!(g(1, 1) > g(2, 0)); // 1 + phi ≈ 2.618 > 2
        assert!(g(0, 13) < g(22, 0)); // 13 phi ≈ 21.03 < 22
        assert!(g(0, 13) > g(21, 0));
    }

    #[test]
    fn rat_reduction_is_canonical() {
        let r = GoldenRat::new(g(2, 4), 6);
        assert_eq!(r.num(), &g(1, 2));
        assert_eq!(r.den(), &BigInt::from(3));
        let r = GoldenRat::new(g(1, 0), -2);
        assert_eq!(r.num(), &g(-1, 0));
        assert_eq!(r.den(), &BigInt::from(2));
        assert_eq!(GoldenRat::new(g(0, 0), 7), GoldenRat::zero());
    }

    #[test]
    fn rat_cmp_is_exact() {
        let half = GoldenRat::from_ratio(1, 2);
        let phi_inv_sq = GoldenRat::from_golden(g(2, -1)); // ≈ 0.382
        assert!(phi_inv_sq < half);
        assert!(half < GoldenRat::from_golden(g(-1, 1)));
    }

    #[test]
    fn to_f64_survives_cancellation() {
        // coefficients around 2^31 nearly cancel; naive float evaluation is
        // off in the 7th digit here (references from 60-digit arithmetic)
        let r = GoldenRat::new(GoldenInt::new(3661253345i64, -2262779008i64), 2);
        assert!((r.to_f64() - 0.513114887637657).abs() < 1e-13);

        let tiny = GoldenInt::phi_pow(-40);
        assert!((tiny.to_f64() - 4.370130339181067e-9).abs() < 1e-21);
        assert_eq!(GoldenInt::zero().to_f64(), 0.0);
        assert_eq!(GoldenInt::new(-7, 0).to_f64(), -7.0);
    }

    #[test]
    fn f64_round_trips_exactly() {
        for x in [0.0, 0.5, 0.1, 1.0, -3.25, std::f64::consts::FRAC_1_SQRT_2] {
            let r = GoldenRat::from_f64_exact(x).unwrap();
            assert_eq!(r.to_f64(), x);
        }
        assert!(GoldenRat::from_f64_exact(f64::NAN).is_none());
    }

    #[test]
    fn serde_wire_formats() {
        let v = g(-3, 2);
        let js = serde_json::to_string(&v).unwrap();
        assert_eq!(js, r#"["-3","2"]"#);
        assert_eq!(serde_json::from_str::<GoldenInt>(&js).unwrap(), v);

        let r = GoldenRat::new(g(1, -1), 2);
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(js, r#"["1","-1","2"]"#);
        assert_eq!(serde_json::from_str::<GoldenRat>(&js).unwrap(), r);
    }

    #[test]
    fn rect_adjacency() {
        let unit = |x: i64, y: i64| {
            Rect::new(
                Point2::new(GoldenRat::from_int(x), GoldenRat::from_int(y)),
                GoldenRat::one(),
                GoldenRat::one(),
            )
        };
        assert!(unit(0, 0).edge_adjacent(&unit(1, 0)));
        assert!(!unit(0, 0).edge_adjacent(&unit(1, 1))); // corner touch only
        assert!(!unit(0, 0).edge_adjacent(&unit(2, 0)));
        assert!(!unit(0, 0).interiors_overlap(&unit(1, 0)));
        assert!(unit(0, 0).interiors_overlap(&unit(0, 0)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(g(0, 0).to_string(), "0");
        assert_eq!(g(2, -1).to_string(), "2-φ");
        assert_eq!(g(-3, 2).to_string(), "-3+2φ");
        assert_eq!(g(0, 1).to_string(), "φ");
        assert_eq!(GoldenRat::new(g(1, 1), 2).to_string(), "(1+φ)/2");
    }
}
