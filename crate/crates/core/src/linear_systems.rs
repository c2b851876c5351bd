//! Linear systems on the cubic surface and the secancy predicates built on
//! the 27 lines.

use serde::Serialize;

use crate::picard_lattice::{lines_meet, twenty_seven_lines, LineOnCubic, SurfaceClass};

/// Intersection numbers of a curve class with the 27 lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SecancyProfile {
    pub e: [i64; 6],
    pub l: [i64; 15],
    pub c: [i64; 6],
}

impl SecancyProfile {
    /// The 27 entries in canonical line order.
    pub fn entries(&self) -> [i64; 27] {
        let mut out = [0; 27];
        out[..6].copy_from_slice(&self.e);
        out[6..21].copy_from_slice(&self.l);
        out[21..].copy_from_slice(&self.c);
        out
    }

    pub fn at(&self, line: &LineOnCubic) -> i64 {
        self.entries()[line.index]
    }

    pub fn max(&self) -> i64 {
        *self.entries().iter().max().expect("27 entries")
    }

    pub fn min(&self) -> i64 {
        *self.entries().iter().min().expect("27 entries")
    }
}

pub fn secancy_profile(c: &SurfaceClass) -> SecancyProfile {
    let all: Vec<i64> = twenty_seven_lines().iter().map(|l| c.pairing(&l.class)).collect();
    SecancyProfile {
        e: all[..6].try_into().expect("6"),
        l: all[6..21].try_into().expect("15"),
        c: all[21..].try_into().expect("6"),
    }
}

/// A line of maximal secancy, the first one in canonical order on ties.
pub fn max_secant_line(c: &SurfaceClass) -> (LineOnCubic, i64) {
    let profile = secancy_profile(c).entries();
    let lines = twenty_seven_lines();
    let best = (0..27).fold(0, |best, i| if profile[i] > profile[best] { i } else { best });
    if c.is_standard() {
        // C.c1 >= C.L for every line L once the type is standard.
        assert_eq!(profile[21], profile[best], "c1 is not maximal for standard {c}");
    }
    (lines[best], profile[best])
}

/// `Bl_C P^3` is weak Fano iff no line is m-secant with m >= 5.
pub fn is_weak_fano_blowup(c: &SurfaceClass) -> bool {
    secancy_profile(c).max() <= 4
}

fn meeting_pairs() -> impl Iterator<Item = (&'static LineOnCubic, &'static LineOnCubic)> {
    let lines = twenty_seven_lines();
    (0..27).flat_map(move |a| {
        (a + 1..27)
            .filter(move |&b| lines_meet(&lines[a], &lines[b]).expect("distinct lines"))
            .map(move |b| (&lines[a], &lines[b]))
    })
}

fn first_meeting_pair(c: &SurfaceClass, accept: impl Fn(i64) -> bool) -> Option<(LineOnCubic, LineOnCubic)> {
    let profile = secancy_profile(c).entries();
    meeting_pairs()
        .find(|(a, b)| accept(profile[a.index] + profile[b.index]))
        .map(|(a, b)| (*a, *b))
}

/// Two meeting lines whose secancies add up to at least 8. Their conic
/// pencil would give infinitely many K-non-negative curves, so no link.
pub fn pair_violation(c: &SurfaceClass) -> Option<(LineOnCubic, LineOnCubic)> {
    first_meeting_pair(c, |sum| sum >= 8)
}

/// Two meeting lines with secancies adding up to exactly 7; the residual
/// conics of their plane form a pencil of 7-secant conics.
pub fn seven_secant_conic_pencil(c: &SurfaceClass) -> Option<(LineOnCubic, LineOnCubic)> {
    first_meeting_pair(c, |sum| sum == 7)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelResult {
    /// Fixed lines with multiplicities, in canonical order.
    pub fixed: Vec<(LineOnCubic, u32)>,
    pub residual: SurfaceClass,
}

impl PeelResult {
    pub fn fixed_part(&self) -> SurfaceClass {
        self.fixed.iter().fold(SurfaceClass::ZERO, |acc, (l, n)| acc + (*n as i64) * l.class)
    }
}

/// Strips lines that the class meets negatively, one copy at a time.
///
/// Every step lowers the degree by one, so the loop ends either with a
/// class meeting all lines non-negatively or with negative degree.
pub fn peel_fixed_lines(d: &SurfaceClass) -> PeelResult {
    let mut counts = [0u32; 27];
    let mut residual = *d;
    while residual.degree() >= 0 {
        let Some(l) = twenty_seven_lines().iter().find(|l| residual.pairing(&l.class) < 0) else {
            break;
        };
        residual = residual - l.class;
        counts[l.index] += 1;
    }
    let fixed = twenty_seven_lines()
        .iter()
        .zip(counts)
        .filter(|(_, n)| *n > 0)
        .map(|(l, n)| (*l, n))
        .collect();
    PeelResult { fixed, residual }
}

/// Riemann-Roch on the cubic: `chi(D) = (D^2 - D.K)/2 + 1`.
pub fn euler_characteristic(d: &SurfaceClass) -> i64 {
    let twice = d.self_intersection() - d.pairing(&SurfaceClass::canonical());
    debug_assert_eq!(twice % 2, 0);
    twice / 2 + 1
}

/// `h^0(S, D)`: peel the fixed lines, then Riemann-Roch on the nef residual
/// (its higher cohomology vanishes since `-K_S` is ample).
pub fn h0_on_cubic(d: &SurfaceClass) -> u64 {
    let residual = peel_fixed_lines(d).residual;
    if residual.is_zero() {
        return 1;
    }
    let nef = twenty_seven_lines().iter().all(|l| residual.pairing(&l.class) >= 0);
    if residual.degree() <= 0 || !nef {
        return 0;
    }
    let chi = euler_characteristic(&residual);
    assert!(chi >= 1, "nef class {residual} with chi = {chi}");
    chi as u64
}

/// Dimension of the space of cubic forms vanishing on `C`:
/// `h^0(X, 3H - E) = h^0(S, -3K_S - C) + 1`.
pub fn cubic_count(c: &SurfaceClass) -> u64 {
    h0_on_cubic(&(3 * SurfaceClass::anticanonical() - *c)) + 1
}
