//! Intersection theory on the cubic surface and on the blown-up threefold.
//!
//! A smooth cubic surface `S` is the blowup of the plane at six general
//! points. Its Picard lattice has basis `L` (pullback of a line) and the
//! exceptional classes `F1..F6`, with diagonal form `(1, -1, ..., -1)`. A
//! class is written as its type `(k; m1, ..., m6)`, meaning `kL - sum mi Fi`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A divisor class `kL - sum mi Fi` on the cubic surface.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceClass {
    pub k: i64,
    pub m: [i64; 6],
}

impl SurfaceClass {
    pub const ZERO: SurfaceClass = SurfaceClass { k: 0, m: [0; 6] };

    pub const fn new(k: i64, m: [i64; 6]) -> Self {
        SurfaceClass { k, m }
    }

    /// The pullback `L` of a line in the plane.
    pub const fn line_pullback() -> Self {
        SurfaceClass::new(1, [0; 6])
    }

    /// The exceptional class `Fi`, `i` in `1..=6`.
    pub fn exceptional(i: usize) -> Self {
        assert!((1..=6).contains(&i), "exceptional index {i} out of range");
        let mut m = [0; 6];
        m[i - 1] = -1;
        SurfaceClass::new(0, m)
    }

    /// `-K_S = 3L - sum Fi`, the hyperplane class of the cubic.
    pub const fn anticanonical() -> Self {
        SurfaceClass::new(3, [1; 6])
    }

    /// `K_S = -3L + sum Fi`.
    pub const fn canonical() -> Self {
        SurfaceClass::new(-3, [-1; 6])
    }

    /// The intersection pairing `k k' - sum mi mi'`.
    pub fn pairing(&self, other: &SurfaceClass) -> i64 {
        self.k * other.k - self.m.iter().zip(&other.m).map(|(a, b)| a * b).sum::<i64>()
    }

    pub fn self_intersection(&self) -> i64 {
        self.pairing(self)
    }

    /// Degree of the class in `P^3`, i.e. `<C, -K_S> = 3k - sum mi`.
    pub fn degree(&self) -> i64 {
        self.pairing(&Self::anticanonical())
    }

    /// Arithmetic genus by adjunction on `S`.
    pub fn genus(&self) -> i64 {
        let twice = self.self_intersection() + self.pairing(&Self::canonical());
        assert!(twice % 2 == 0, "adjunction parity fails for {self}");
        twice / 2 + 1
    }

    /// `m1 >= ... >= m6` and `k >= m1 + m2 + m3`.
    pub fn is_standard(&self) -> bool {
        self.m.windows(2).all(|w| w[0] >= w[1]) && self.k >= self.m[0] + self.m[1] + self.m[2]
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

impl Add for SurfaceClass {
    type Output = SurfaceClass;
    fn add(self, rhs: SurfaceClass) -> SurfaceClass {
        let mut m = self.m;
        m.iter_mut().zip(rhs.m).for_each(|(a, b)| *a += b);
        SurfaceClass::new(self.k + rhs.k, m)
    }
}

impl Sub for SurfaceClass {
    type Output = SurfaceClass;
    fn sub(self, rhs: SurfaceClass) -> SurfaceClass {
        self + (-rhs)
    }
}

impl Neg for SurfaceClass {
    type Output = SurfaceClass;
    fn neg(self) -> SurfaceClass {
        SurfaceClass::new(-self.k, self.m.map(|x| -x))
    }
}

impl Mul<SurfaceClass> for i64 {
    type Output = SurfaceClass;
    fn mul(self, rhs: SurfaceClass) -> SurfaceClass {
        SurfaceClass::new(self * rhs.k, rhs.m.map(|x| self * x))
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e, g] = self.m;
        write!(f, "({};{a},{b},{c},{d},{e},{g})", self.k)
    }
}

impl FromStr for SurfaceClass {
    type Err = Error;

    /// Parses `(k;m1,m2,m3,m4,m5,m6)`; whitespace around tokens is allowed.
    fn from_str(input: &str) -> Result<Self> {
        let fail = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        let body = input
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| fail("expected parentheses around the type"))?;
        let (k, rest) = body.split_once(';').ok_or_else(|| fail("expected ';' after k"))?;
        let k = k.trim().parse::<i64>().map_err(|_| fail("k is not an integer"))?;
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 6 {
            return Err(fail("expected exactly six multiplicities"));
        }
        let mut m = [0i64; 6];
        for (slot, part) in m.iter_mut().zip(parts) {
            *slot = part.trim().parse().map_err(|_| fail("multiplicity is not an integer"))?;
        }
        Ok(SurfaceClass::new(k, m))
    }
}

impl Serialize for SurfaceClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Names of the 27 lines. Indices are 1-based as in the usual notation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineLabel {
    /// The exceptional curve over the i-th point.
    E(u8),
    /// The strict transform of the line through points i and j.
    L(u8, u8),
    /// The strict transform of the conic through the five points other than i.
    C(u8),
}

impl LineLabel {
    pub fn class(&self) -> SurfaceClass {
        match *self {
            LineLabel::E(i) => SurfaceClass::exceptional(i as usize),
            LineLabel::L(i, j) => {
                let mut m = [0; 6];
                m[i as usize - 1] = 1;
                m[j as usize - 1] = 1;
                SurfaceClass::new(1, m)
            }
            LineLabel::C(i) => {
                let mut m = [1; 6];
                m[i as usize - 1] = 0;
                SurfaceClass::new(2, m)
            }
        }
    }
}

impl fmt::Display for LineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineLabel::E(i) => write!(f, "e{i}"),
            LineLabel::L(i, j) => write!(f, "l{i}{j}"),
            LineLabel::C(i) => write!(f, "c{i}"),
        }
    }
}

impl Serialize for LineLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One of the 27 `(-1)`-curves, together with its position in the
/// canonical order `e1..e6, l12..l56, c1..c6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LineOnCubic {
    pub label: LineLabel,
    pub class: SurfaceClass,
    pub index: usize,
}

impl fmt::Display for LineOnCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.label.fmt(f)
    }
}

impl Serialize for LineOnCubic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.label.serialize(s)
    }
}

/// All 27 lines in canonical order.
pub fn twenty_seven_lines() -> &'static [LineOnCubic; 27] {
    static LINES: OnceLock<[LineOnCubic; 27]> = OnceLock::new();
    LINES.get_or_init(|| {
        let mut labels = Vec::with_capacity(27);
        labels.extend((1..=6).map(LineLabel::E));
        for i in 1..=6u8 {
            for j in i + 1..=6 {
                labels.push(LineLabel::L(i, j));
            }
        }
        labels.extend((1..=6).map(LineLabel::C));
        let lines: Vec<LineOnCubic> = labels
            .into_iter()
            .enumerate()
            .map(|(index, label)| LineOnCubic { label, class: label.class(), index })
            .collect();
        lines.try_into().expect("27 labels")
    })
}

pub fn line(label: LineLabel) -> LineOnCubic {
    *twenty_seven_lines()
        .iter()
        .find(|l| l.label == label)
        .unwrap_or_else(|| panic!("{label} is not a line label"))
}

/// Looks a line up by its printed name, e.g. `"l15"`.
pub fn line_by_name(name: &str) -> Option<LineOnCubic> {
    twenty_seven_lines().iter().find(|l| l.label.to_string() == name).copied()
}

/// Two distinct lines on a smooth cubic meet iff they pair to 1.
pub fn lines_meet(a: &LineOnCubic, b: &LineOnCubic) -> Result<bool> {
    if a.label == b.label {
        return Err(Error::SameLine(a.label));
    }
    let p = a.class.pairing(&b.class);
    if p != 0 && p != 1 {
        return Err(Error::Invariant(format!("lines {a} and {b} pair to {p}")));
    }
    Ok(p == 1)
}

/// A divisor class `aH + bE` on the blowup of `P^3` along a curve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ThreefoldDivClass {
    pub h: i64,
    pub e: i64,
}

impl ThreefoldDivClass {
    pub const H: ThreefoldDivClass = ThreefoldDivClass { h: 1, e: 0 };
    pub const E: ThreefoldDivClass = ThreefoldDivClass { h: 0, e: 1 };

    pub const fn new(h: i64, e: i64) -> Self {
        ThreefoldDivClass { h, e }
    }

    /// `K_X = -4H + E`.
    pub const fn canonical() -> Self {
        ThreefoldDivClass::new(-4, 1)
    }

    /// The strict transform of the cubic, `3H - E`.
    pub const fn cubic() -> Self {
        ThreefoldDivClass::new(3, -1)
    }

    /// `(aH + bE) . (cl + df) = ac - bd`.
    pub fn pairing(&self, z: &ThreefoldCurveClass) -> i64 {
        self.h * z.l - self.e * z.f
    }

    /// Restriction to the strict transform of `S`: `H|S = -K_S`, `E|S = C`.
    pub fn restrict_to_cubic(&self, curve: &SurfaceClass) -> SurfaceClass {
        self.h * SurfaceClass::anticanonical() + self.e * *curve
    }

    /// Largest integer dividing both coefficients.
    pub fn divisibility(&self) -> i64 {
        num_integer::gcd(self.h, self.e)
    }
}

impl Add for ThreefoldDivClass {
    type Output = ThreefoldDivClass;
    fn add(self, rhs: Self) -> Self {
        ThreefoldDivClass::new(self.h + rhs.h, self.e + rhs.e)
    }
}

impl Mul<ThreefoldDivClass> for i64 {
    type Output = ThreefoldDivClass;
    fn mul(self, rhs: ThreefoldDivClass) -> ThreefoldDivClass {
        ThreefoldDivClass::new(self * rhs.h, self * rhs.e)
    }
}

impl fmt::Display for ThreefoldDivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}H", self.h)?;
        if self.e < 0 {
            write!(f, " - {}E", -self.e)
        } else {
            write!(f, " + {}E", self.e)
        }
    }
}

/// A curve class `cl + df`: `l` the pullback of a line, `f` a fibre over the curve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ThreefoldCurveClass {
    pub l: i64,
    pub f: i64,
}

impl ThreefoldCurveClass {
    pub const LINE: ThreefoldCurveClass = ThreefoldCurveClass { l: 1, f: 0 };
    pub const FIBRE: ThreefoldCurveClass = ThreefoldCurveClass { l: 0, f: 1 };

    pub const fn new(l: i64, f: i64) -> Self {
        ThreefoldCurveClass { l, f }
    }

    /// Strict transform of an m-secant line, `l - m f`.
    pub const fn secant_line(m: i64) -> Self {
        ThreefoldCurveClass::new(1, -m)
    }
}

impl Add for ThreefoldCurveClass {
    type Output = ThreefoldCurveClass;
    fn add(self, rhs: Self) -> Self {
        ThreefoldCurveClass::new(self.l + rhs.l, self.f + rhs.f)
    }
}

impl Mul<ThreefoldCurveClass> for i64 {
    type Output = ThreefoldCurveClass;
    fn mul(self, rhs: ThreefoldCurveClass) -> ThreefoldCurveClass {
        ThreefoldCurveClass::new(self * rhs.l, self * rhs.f)
    }
}
