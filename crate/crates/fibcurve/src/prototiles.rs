//! The 24 decorated rectangle prototiles.
//!
//! Four rectangle shapes (colors) come from squaring the one-dimensional
//! golden substitution:
//!
//! ```text
//! A: [0,φ]×[0,φ]   B: [0,φ]×[0,1]   C: [0,1]×[0,φ]   D: [0,1]×[0,1]
//! ```
//!
//! Each color carries a family of oriented corner-to-corner decorations,
//! indexed 1..4 for A and D and 1..2 for B and C, each in two orientations
//! (`+` and `-`), for 24 labels total. The decoration is stored as its
//! endpoint pair only; every property used downstream (visiting order,
//! concatenation, connectedness) depends on the endpoints alone.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::golden::GoldenInt;
use crate::Error;

/// Rectangle shape class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Color {
    A,
    B,
    C,
    D,
}

impl Color {
    pub const ALL: [Color; 4] = [Color::A, Color::B, Color::C, Color::D];

    /// Exact side lengths of the support rectangle.
    pub fn dims(self) -> (GoldenInt, GoldenInt) {
        let phi = GoldenInt::phi;
        let one = GoldenInt::one;
        match self {
            Color::A => (phi(), phi()),
            Color::B => (phi(), one()),
            Color::C => (one(), phi()),
            Color::D => (one(), one()),
        }
    }

    pub fn width(self) -> GoldenInt {
        self.dims().0
    }

    pub fn height(self) -> GoldenInt {
        self.dims().1
    }

    /// Exact support area: φ², φ, φ or 1.
    pub fn area(self) -> GoldenInt {
        let (w, h) = self.dims();
        &w * &h
    }

    /// Number of decoration indices for this color.
    pub fn index_count(self) -> u8 {
        match self {
            Color::A | Color::D => 4,
            Color::B | Color::C => 2,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::A => 'A',
            Color::B => 'B',
            Color::C => 'C',
            Color::D => 'D',
        }
    }
}

/// Curve orientation of a decorated tile.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum TileSign {
    Plus,
    Minus,
}

impl TileSign {
    pub fn flipped(self) -> TileSign {
        match self {
            TileSign::Plus => TileSign::Minus,
            TileSign::Minus => TileSign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            TileSign::Plus => '+',
            TileSign::Minus => '-',
        }
    }
}

/// One of the 24 prototile labels, e.g. `A1+` or `D3-`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Label {
    pub color: Color,
    pub index: u8,
    pub sign: TileSign,
}

impl Label {
    pub fn new(color: Color, index: u8, sign: TileSign) -> Result<Self, Error> {
        if index == 0 || index > color.index_count() {
            return Err(Error::ParseLabel(format!("{}{}{}", color.letter(), index, sign.symbol())));
        }
        Ok(Self { color, index, sign })
    }

    /// Position in the canonical prototile list (0-based): the twelve `+`
    /// labels A1..A4, B1, B2, C1, C2, D1..D4, then the twelve `-` labels in
    /// the same order.
    pub fn position(self) -> usize {
        self.base_position() + if self.sign == TileSign::Minus { 12 } else { 0 }
    }

    /// Position among the twelve base (`+`) labels, ignoring the sign.
    pub fn base_position(self) -> usize {
        let start = match self.color {
            Color::A => 0,
            Color::B => 4,
            Color::C => 6,
            Color::D => 8,
        };
        start + (self.index as usize - 1)
    }

    pub fn from_position(pos: usize) -> Label {
        assert!(pos < 24);
        let sign = if pos < 12 { TileSign::Plus } else { TileSign::Minus };
        let base = pos % 12;
        let (color, index) = match base {
            0..=3 => (Color::A, base as u8 + 1),
            4..=5 => (Color::B, base as u8 - 3),
            6..=7 => (Color::C, base as u8 - 5),
            _ => (Color::D, base as u8 - 7),
        };
        Label { color, index, sign }
    }

    /// The same decoration traversed in the opposite direction.
    pub fn reversed(self) -> Label {
        Label { sign: self.sign.flipped(), ..self }
    }

    /// The `+` counterpart.
    pub fn base(self) -> Label {
        Label { sign: TileSign::Plus, ..self }
    }

    pub fn is_plus(self) -> bool {
        self.sign == TileSign::Plus
    }

    pub fn width(self) -> GoldenInt {
        self.color.width()
    }

    pub fn height(self) -> GoldenInt {
        self.color.height()
    }

    pub fn all() -> impl Iterator<Item = Label> {
        (0..24).map(Label::from_position)
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.position().cmp(&other.position())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.color.letter(), self.index, self.sign.symbol())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::ParseLabel(s.to_string());
        let mut chars = s.chars();
        let color = match chars.next().ok_or_else(err)? {
            'A' | 'a' => Color::A,
            'B' | 'b' => Color::B,
            'C' | 'c' => Color::C,
            'D' | 'd' => Color::D,
            _ => return Err(err()),
        };
        let index = chars.next().and_then(|c| c.to_digit(10)).ok_or_else(err)? as u8;
        let sign = match chars.next() {
            Some('+') => TileSign::Plus,
            Some('-') => TileSign::Minus,
            _ => return Err(err()),
        };
        if chars.next().is_some() {
            return Err(err());
        }
        Label::new(color, index, sign).map_err(|_| err())
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| serde::de::Error::custom(format!("bad label {s:?}")))
    }
}

/// A corner of a tile's support rectangle, resolved against its dimensions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Corner {
    BottomLeft,
    BottomRight,
    TopRight,
    TopLeft,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::BottomLeft,
        Corner::BottomRight,
        Corner::TopRight,
        Corner::TopLeft,
    ];

    /// Exact coordinates of this corner on a `[0,w] × [0,h]` rectangle.
    pub fn resolve(self, w: &GoldenInt, h: &GoldenInt) -> (GoldenInt, GoldenInt) {
        let zero = GoldenInt::zero;
        match self {
            Corner::BottomLeft => (zero(), zero()),
            Corner::BottomRight => (w.clone(), zero()),
            Corner::TopRight => (w.clone(), h.clone()),
            Corner::TopLeft => (zero(), h.clone()),
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Corner::BottomLeft => "BL",
            Corner::BottomRight => "BR",
            Corner::TopRight => "TR",
            Corner::TopLeft => "TL",
        }
    }
}

/// Oriented decoration endpoints: a simple curve from one corner of the
/// support to a different corner. Only the endpoints are meaningful.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Decoration {
    pub start: Corner,
    pub end: Corner,
}

impl Decoration {
    pub fn new(start: Corner, end: Corner) -> Self {
        assert_ne!(start, end, "decoration endpoints must be distinct corners");
        Self { start, end }
    }

    pub fn reversed(self) -> Self {
        Self { start: self.end, end: self.start }
    }

    /// Endpoint coordinates on a tile with the given dimensions.
    pub fn resolve(self, w: &GoldenInt, h: &GoldenInt) -> ((GoldenInt, GoldenInt), (GoldenInt, GoldenInt)) {
        (self.start.resolve(w, h), self.end.resolve(w, h))
    }
}

// Endpoint table for the twelve base (`+`) labels, in base-position order.
// Derived by the exhaustive decoration solver (see `solver`); unique given the
// substitution rows and verified by the concatenation checks.
const BASE_DECORATIONS: [(Corner, Corner); 12] = {
    use Corner::*;
    [
        (BottomLeft, BottomRight),  // A1
        (BottomRight, TopRight),    // A2
        (TopRight, TopLeft),        // A3
        (TopLeft, BottomLeft),      // A4
        (BottomLeft, TopRight),     // B1
        (BottomRight, TopLeft),     // B2
        (BottomRight, TopLeft),     // C1
        (BottomLeft, TopRight),     // C2
        (BottomLeft, BottomRight),  // D1
        (BottomRight, TopRight),    // D2
        (TopRight, TopLeft),        // D3
        (TopLeft, BottomLeft),      // D4
    ]
};

/// Decoration endpoints of a label; `-` labels reverse their `+` counterpart.
pub fn decoration_endpoints(label: Label) -> Decoration {
    let (start, end) = BASE_DECORATIONS[label.base_position()];
    let dec = Decoration::new(start, end);
    match label.sign {
        TileSign::Plus => dec,
        TileSign::Minus => dec.reversed(),
    }
}

/// ψ: forget the decoration, keep the rectangle shape.
pub fn color_project(label: Label) -> Color {
    label.color
}

/// The full prototile list `(label, width, height)` in canonical order.
pub fn prototile_set() -> Vec<(Label, GoldenInt, GoldenInt)> {
    Label::all()
        .map(|l| {
            let (w, h) = l.color.dims();
            (l, w, h)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str) -> Label {
        s.parse().unwrap()
    }

    #[test]
    fn prototile_set_matches_published_order() {
        let set = prototile_set();
        assert_eq!(set.len(), 24);
        let phi = GoldenInt::phi();
        let one = GoldenInt::one();

        let (l, w, h) = &set[0];
        assert_eq!(*l, label("A1+"));
        assert_eq!((w, h), (&phi, &phi));

        let (l, w, h) = &set[4];
        assert_eq!(*l, label("B1+"));
        assert_eq!((w, h), (&phi, &one));

        let (l, w, h) = &set[23];
        assert_eq!(*l, label("D4-"));
        assert_eq!((w, h), (&one, &one));
    }

    #[test]
    fn positions_round_trip() {
        for (i, l) in Label::all().enumerate() {
            assert_eq!(l.position(), i);
            assert_eq!(Label::from_position(i), l);
            assert_eq!(l.to_string().parse::<Label>().unwrap(), l);
        }
    }

    #[test]
    fn label_parsing_rejects_junk() {
        for bad in ["", "A", "A5+", "B3-", "E1+", "A1", "A1*", "A1+x"] {
            assert!(bad.parse::<Label>().is_err(), "{bad:?} should not parse");
        }
        assert_eq!("d3-".parse::<Label>().unwrap(), label("D3-"));
    }

    #[test]
    fn color_projection_drops_index_and_sign() {
        assert_eq!(color_project(label("A3-")), Color::A);
        assert_eq!(color_project(label("D4+")), Color::D);
        assert_eq!(color_project(label("C2-")), Color::C);
    }

    #[test]
    fn sign_involution_is_fixed_point_free() {
        for l in Label::all() {
            assert_ne!(l.reversed(), l);
            assert_eq!(l.reversed().reversed(), l);
        }
    }

    #[test]
    fn endpoint_table_plus_rows() {
        use Corner::*;
        let cases = [
            ("A1+", BottomLeft, BottomRight),
            ("A2+", BottomRight, TopRight),
            ("A3+", TopRight, TopLeft),
            ("A4+", TopLeft, BottomLeft),
            ("B1+", BottomLeft, TopRight),
            ("B2+", BottomRight, TopLeft),
            ("C1+", BottomRight, TopLeft),
            ("C2+", BottomLeft, TopRight),
            ("D1+", BottomLeft, BottomRight),
            ("D2+", BottomRight, TopRight),
            ("D3+", TopRight, TopLeft),
            ("D4+", TopLeft, BottomLeft),
        ];
        for (name, start, end) in cases {
            let dec = decoration_endpoints(label(name));
            assert_eq!((dec.start, dec.end), (start, end), "{name}");
        }
        // reversal rule
        let rev = decoration_endpoints(label("A1-"));
        assert_eq!((rev.start, rev.end), (BottomRight, BottomLeft));
    }

    #[test]
    fn endpoints_resolve_on_the_right_rectangle() {
        // A1+ runs (0,0) -> (φ,0); B1+ runs (0,0) -> (φ,1); C1+ runs (1,0) -> (0,φ)
        let phi = GoldenInt::phi();
        let one = GoldenInt::one();
        let zero = GoldenInt::zero();

        let a1 = decoration_endpoints(label("A1+")).resolve(&phi, &phi);
        assert_eq!(a1, ((zero.clone(), zero.clone()), (phi.clone(), zero.clone())));

        let b1 = decoration_endpoints(label("B1+")).resolve(&phi, &one);
        assert_eq!(b1, ((zero.clone(), zero.clone()), (phi.clone(), one.clone())));

        let c1 = decoration_endpoints(label("C1+")).resolve(&one, &phi);
        assert_eq!(c1, ((one.clone(), zero.clone()), (zero.clone(), phi.clone())));
    }

    #[test]
    fn decorations_have_distinct_corners() {
        for l in Label::all() {
            let dec = decoration_endpoints(l);
            assert_ne!(dec.start, dec.end, "{l}");
        }
    }

    /// D tiles substitute to a single A tile, which forces the D decoration
    /// to be the φ⁻¹-scaled copy of the matching A decoration. On the unit
    /// square versus the φ-square that means the same symbolic corners.
    #[test]
    fn d_pattern_law() {
        for i in 1..=4 {
            let a = Label::new(Color::A, i, TileSign::Plus).unwrap();
            let d = Label::new(Color::D, i, TileSign::Plus).unwrap();
            let dec_a = decoration_endpoints(a);
            let dec_d = decoration_endpoints(d);
            assert_eq!((dec_a.start, dec_a.end), (dec_d.start, dec_d.end), "i = {i}");

            // exact scaling check: φ · (D endpoints on [0,1]²) = A endpoints on [0,φ]²
            let phi = GoldenInt::phi();
            let one = GoldenInt::one();
            let (ds, de) = dec_d.resolve(&one, &one);
            let (as_, ae) = dec_a.resolve(&phi, &phi);
            assert_eq!((&ds.0 * &phi, &ds.1 * &phi), as_);
            assert_eq!((&de.0 * &phi, &de.1 * &phi), ae);
        }
    }
}
