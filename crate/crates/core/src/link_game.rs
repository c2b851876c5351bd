//! Numerical replay of the 2-ray game for each link candidate.
//!
//! Starting from `X = Bl_C P^3` the 5- and 6-secant lines are anti-flipped,
//! the 4-secant lines flopped, and the strict transform `T` of the cubic is
//! then either contracted to a point (one cubic through `C`) or becomes a
//! fibre of a del Pezzo fibration (a pencil of cubics). Every volume is an
//! exact rational.

use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::classify::{classify_with_word, LinkStatus};
use crate::error::{Error, Result};
use crate::flip_calculus::secant_line_normal_bundle;
use crate::linear_systems::{cubic_count, secancy_profile};
use crate::picard_lattice::{lines_meet, twenty_seven_lines, LineOnCubic, SurfaceClass, ThreefoldDivClass};
use crate::rational::{self, int, ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FlipKind {
    /// Atiyah flop of a `(-1,-1)` curve (4-secant line).
    Flop,
    /// Anti-flip of a `(-1,-2)` curve (5-secant line).
    Flip12,
    /// Anti-flip of a `(-1,-3)` curve (6-secant line).
    Flip13,
}

impl FlipKind {
    /// Step kind for the strict transform of an m-secant line.
    pub fn for_secancy(m: i64) -> Result<FlipKind> {
        let nb = secant_line_normal_bundle(m)?;
        match (nb.alpha, nb.beta) {
            (-1, -1) => Ok(FlipKind::Flop),
            (-1, -2) => Ok(FlipKind::Flip12),
            (-1, -3) => Ok(FlipKind::Flip13),
            _ => Err(Error::Invariant(format!("no step for a {m}-secant line, normal bundle {nb:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FlipStep {
    pub kind: FlipKind,
    pub count: u32,
}

impl FlipStep {
    /// Change of `-K^3`: nothing for flops, `1/2` per (1,2)-flip, `8/3` per (1,3)-flip.
    pub fn delta_k3(&self) -> Rational {
        let per_curve = match self.kind {
            FlipKind::Flop => int(0),
            FlipKind::Flip12 => ratio(1, 2),
            FlipKind::Flip13 => ratio(8, 3),
        };
        per_curve * int(self.count as i64)
    }

    pub fn basket(&self) -> Vec<Singularity> {
        let point = match self.kind {
            FlipKind::Flop => return Vec::new(),
            FlipKind::Flip12 => Singularity::Half,
            FlipKind::Flip13 => Singularity::Third,
        };
        vec![point; self.count as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Singularity {
    /// `1/2(1,1,1)`
    Half,
    /// `1/3(1,1,2)`
    Third,
    /// Ordinary double point.
    #[serde(rename = "ODP")]
    Odp,
}

impl Singularity {
    pub fn index(&self) -> u32 {
        match self {
            Singularity::Half => 2,
            Singularity::Third => 3,
            Singularity::Odp => 1,
        }
    }
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Singularity::Half => "1/2(1,1,1)",
            Singularity::Third => "1/3(1,1,2)",
            Singularity::Odp => "odp",
        })
    }
}

/// Divisorial contractions of `T` to a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ContractionType {
    /// `T = P^2` with normal bundle `O(-2)`.
    E5,
    /// `T = P^1 x P^1` with normal bundle `O(-1,-1)`.
    E3,
    /// `F_2` with its negative section contracted, normal sheaf `O(-3 f_bar)`.
    FBar2,
}

impl ContractionType {
    /// `alpha` in `K_X = p^* K_Y + alpha E`.
    pub fn discrepancy(&self) -> Rational {
        match self {
            ContractionType::E5 => ratio(1, 2),
            ContractionType::E3 => int(1),
            ContractionType::FBar2 => ratio(1, 3),
        }
    }

    /// `-K_Y^3 - (-K_X^3) = -alpha^3 E^3`.
    pub fn delta_k3(&self) -> Rational {
        match self {
            ContractionType::E5 => ratio(1, 2),
            ContractionType::E3 => int(2),
            ContractionType::FBar2 => ratio(1, 6),
        }
    }

    /// The point the contraction leaves behind on the target.
    pub fn singularity(&self) -> Option<Singularity> {
        match self {
            ContractionType::E5 => Some(Singularity::Half),
            ContractionType::E3 => Some(Singularity::Odp),
            ContractionType::FBar2 => None,
        }
    }
}

impl fmt::Display for ContractionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `(-K_X)^3 = 62 - 8d + 2g` for the blowup of a curve of degree `d` and genus `g`.
pub fn blowup_cube(degree: i64, genus: i64) -> Rational {
    int(62 - 8 * degree + 2 * genus)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractedLines {
    pub flipped: Vec<LineOnCubic>,
    pub flopped: Vec<LineOnCubic>,
}

impl ContractedLines {
    pub fn all(&self) -> Vec<LineOnCubic> {
        let mut all: Vec<LineOnCubic> = self.flipped.iter().chain(&self.flopped).copied().collect();
        all.sort_by_key(|l| l.index);
        all
    }
}

fn require_candidate(c: &SurfaceClass) -> Result<()> {
    let (record, _) = classify_with_word(c)?;
    match record.status {
        LinkStatus::LinkCandidate if record.class == *c => Ok(()),
        LinkStatus::LinkCandidate => Err(Error::NotCandidate {
            class: *c,
            reason: format!("not in standard form, use {}", record.class),
        }),
        other => Err(Error::NotCandidate { class: *c, reason: other.name().to_string() }),
    }
}

/// Lines of secancy at least 5 are anti-flipped, 4-secant lines flopped.
pub fn contracted_lines(c: &SurfaceClass) -> Result<ContractedLines> {
    require_candidate(c)?;
    let profile = secancy_profile(c);
    let mut flipped = Vec::new();
    let mut flopped = Vec::new();
    for l in twenty_seven_lines() {
        match profile.at(l) {
            m if m >= 5 => flipped.push(*l),
            4 => flopped.push(*l),
            _ => {}
        }
    }
    let has = |m: i64| flipped.iter().any(|l| profile.at(l) == m);
    if has(6) && has(5) {
        return Err(Error::Invariant(format!("{c} has both 5- and 6-secant lines")));
    }
    Ok(ContractedLines { flipped, flopped })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SurfaceModel {
    P2 { normal_degree: i64 },
    Quadric { normal_bidegree: (i64, i64) },
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Blowdown {
    pub rank: i64,
    pub k_sq: i64,
    pub model: SurfaceModel,
}

const SEARCH_RADIUS: i64 = 6;

/// Classes `(k; m)` with `|k|, |mi| <= radius`, given square and degree,
/// orthogonal to every class in `perp`. Ordered lexicographically.
fn lattice_search(square: i64, degree: i64, perp: &[SurfaceClass], radius: i64) -> Vec<SurfaceClass> {
    fn fill(
        pos: usize,
        cur: &mut SurfaceClass,
        sq_left: i64,
        sum_left: i64,
        radius: i64,
        perp: &[SurfaceClass],
        out: &mut Vec<SurfaceClass>,
    ) {
        if pos == 6 {
            if sq_left == 0 && sum_left == 0 && perp.iter().all(|b| b.pairing(cur) == 0) {
                out.push(*cur);
            }
            return;
        }
        for mi in -radius..=radius {
            if mi * mi > sq_left {
                continue;
            }
            cur.m[pos] = mi;
            fill(pos + 1, cur, sq_left - mi * mi, sum_left - mi, radius, perp, out);
        }
    }
    let mut out = Vec::new();
    for k in -radius..=radius {
        // k^2 - sum mi^2 = square, 3k - sum mi = degree.
        let sq = k * k - square;
        if sq < 0 {
            continue;
        }
        let mut cur = SurfaceClass::new(k, [0; 6]);
        fill(0, &mut cur, sq, 3 * k - degree, radius, perp, &mut out);
    }
    out
}

/// The surface `T` obtained from `S` by contracting the disjoint lines in `lines`,
/// and the normal bundle of `T` computed from `S|S = -3K_S - C`.
pub fn blowdown_on_surface(c: &SurfaceClass, lines: &[LineOnCubic]) -> Result<Blowdown> {
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if lines_meet(a, b)? {
                return Err(Error::MeetingLines(a.label, b.label));
            }
        }
    }
    let rank = 7 - lines.len() as i64;
    let k_sq = 3 + lines.len() as i64;
    let normal = 3 * SurfaceClass::anticanonical() - *c;
    let perp: Vec<SurfaceClass> = lines.iter().map(|l| l.class).collect();

    let model = match rank {
        1 => {
            let hyperplanes = lattice_search(1, 3, &perp, SEARCH_RADIUS);
            let [h] = hyperplanes.as_slice() else {
                return Err(Error::LatticeSearch(format!(
                    "expected one line class on the contracted surface, found {}",
                    hyperplanes.len()
                )));
            };
            SurfaceModel::P2 { normal_degree: normal.pairing(h) }
        }
        2 => {
            let exceptional = lattice_search(-1, 1, &perp, SEARCH_RADIUS);
            let rulings = lattice_search(0, 2, &perp, SEARCH_RADIUS);
            let pair = rulings
                .iter()
                .enumerate()
                .flat_map(|(i, r1)| rulings[i + 1..].iter().map(move |r2| (r1, r2)))
                .find(|(r1, r2)| r1.pairing(r2) == 1);
            match (exceptional.is_empty(), pair) {
                (true, Some((r1, r2))) => {
                    SurfaceModel::Quadric { normal_bidegree: (normal.pairing(r1), normal.pairing(r2)) }
                }
                (false, _) => SurfaceModel::Other,
                (true, None) => {
                    return Err(Error::LatticeSearch("no pair of rulings on a rank-2 surface".into()));
                }
            }
        }
        _ => SurfaceModel::Other,
    };
    Ok(Blowdown { rank, k_sq, model })
}

/// Inverse of the change of basis `(H, E) -> (K_Y0, T)`.
pub fn pullback_to_x(k_coeff: i64, t_coeff: i64) -> ThreefoldDivClass {
    ThreefoldDivClass::new(-4 * k_coeff + 3 * t_coeff, k_coeff - t_coeff)
}

/// The strict transform on `Y0` of a class on `X`, in the basis `(K_Y0, T)`.
pub fn push_to_y0(d: &ThreefoldDivClass) -> (i64, i64) {
    (-d.h - 3 * d.e, -d.h - 4 * d.e)
}

/// Fano-Weil index of `Y` from the divisibility of `p^*(-q K_Y)` pulled back to `X`,
/// where `q` is the lcm of the indices in the basket.
///
/// This reproduces the index in the four unique-cubic cases; it is not a
/// general formula.
pub fn fano_weil_index(basket: &[Singularity], contraction: ContractionType) -> Result<u32> {
    if contraction == ContractionType::FBar2 {
        return Err(Error::UnsupportedContraction(contraction.to_string()));
    }
    let q = basket.iter().fold(1u32, |acc, s| acc.lcm(&s.index())) as i64;
    let t_coeff = int(q) * contraction.discrepancy();
    if !t_coeff.is_integer() {
        return Err(Error::NonIntegral(rational::canonical(&t_coeff)));
    }
    let t_coeff = t_coeff.to_integer().to_i64().expect("small");
    let w = pullback_to_x(-q, t_coeff);
    let index = w.divisibility();
    if index <= 0 {
        return Err(Error::Invariant(format!("pullback {w} is not divisible by a positive integer")));
    }
    let primitive = ThreefoldDivClass::new(w.h / index, w.e / index);
    if index * primitive != w {
        return Err(Error::Invariant(format!("{w} is not {index} times an integral class")));
    }
    Ok(index as u32)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum LinkKind {
    TypeII {
        contraction: ContractionType,
        #[serde(serialize_with = "rational::serialize")]
        ky3: Rational,
        #[serde(rename = "fanoWeilIndex")]
        fano_weil_index: u32,
    },
    TypeI {
        #[serde(rename = "dpDegree")]
        dp_degree: i64,
        #[serde(serialize_with = "rational::serialize")]
        ky03: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    #[serde(rename = "type")]
    pub class: SurfaceClass,
    pub degree: i64,
    pub genus: i64,
    #[serde(serialize_with = "rational::serialize")]
    pub kx3: Rational,
    pub steps: Vec<FlipStep>,
    #[serde(serialize_with = "serialize_basket")]
    pub basket: Vec<Singularity>,
    #[serde(rename = "linkKind")]
    pub link_kind: LinkKind,
    #[serde(rename = "contractedLines")]
    pub contracted_lines: ContractedLines,
}

fn serialize_basket<S: Serializer>(basket: &[Singularity], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(basket)
}

impl LinkReport {
    /// `-K^3` after each stage: `X`, after each step, and after the
    /// contraction of `T` for Type II links.
    pub fn k3_chain(&self) -> Vec<Rational> {
        let mut chain = vec![self.kx3.clone()];
        for step in &self.steps {
            let next = chain.last().expect("nonempty").clone() + step.delta_k3();
            chain.push(next);
        }
        if let LinkKind::TypeII { contraction, .. } = &self.link_kind {
            let next = chain.last().expect("nonempty").clone() + contraction.delta_k3();
            chain.push(next);
        }
        chain
    }

    pub fn final_k3(&self) -> &Rational {
        match &self.link_kind {
            LinkKind::TypeII { ky3, .. } => ky3,
            LinkKind::TypeI { ky03, .. } => ky03,
        }
    }

    pub fn is_type_ii(&self) -> bool {
        matches!(self.link_kind, LinkKind::TypeII { .. })
    }
}

fn group_steps(c: &SurfaceClass, lines: &ContractedLines) -> Result<Vec<FlipStep>> {
    let profile = secancy_profile(c);
    let mut steps: Vec<FlipStep> = Vec::new();
    for l in lines.flipped.iter().chain(&lines.flopped) {
        let kind = FlipKind::for_secancy(profile.at(l))?;
        match steps.iter_mut().find(|s| s.kind == kind) {
            Some(step) => step.count += 1,
            None => steps.push(FlipStep { kind, count: 1 }),
        }
    }
    // Anti-flips come before the flops.
    steps.sort_by_key(|s| std::cmp::Reverse(s.kind));
    Ok(steps)
}

fn contraction_of(model: &SurfaceModel) -> Result<ContractionType> {
    match model {
        SurfaceModel::P2 { normal_degree: -2 } => Ok(ContractionType::E5),
        SurfaceModel::Quadric { normal_bidegree: (-1, -1) } => Ok(ContractionType::E3),
        other => Err(Error::Invariant(format!("no divisorial contraction to a point for {other:?}"))),
    }
}

/// Replays the link induced by a candidate curve type (in standard form).
pub fn analyze_link(c: &SurfaceClass) -> Result<LinkReport> {
    let lines = contracted_lines(c)?;
    let steps = group_steps(c, &lines)?;
    let kx3 = blowup_cube(c.degree(), c.genus());
    let after_steps = steps.iter().fold(kx3.clone(), |acc, s| acc + s.delta_k3());
    let mut basket: Vec<Singularity> = steps.iter().flat_map(FlipStep::basket).collect();

    let link_kind = match cubic_count(c) {
        1 => {
            let blowdown = blowdown_on_surface(c, &lines.all())?;
            let contraction = contraction_of(&blowdown.model)?;
            basket.extend(contraction.singularity());
            basket.sort();
            let fano_weil_index = fano_weil_index(&basket, contraction)?;
            LinkKind::TypeII { contraction, ky3: after_steps + contraction.delta_k3(), fano_weil_index }
        }
        2 => {
            basket.sort();
            LinkKind::TypeI { dp_degree: 3 + lines.all().len() as i64, ky03: after_steps }
        }
        n => return Err(Error::Invariant(format!("{c} lies on {n} independent cubics"))),
    };

    let report = LinkReport {
        class: *c,
        degree: c.degree(),
        genus: c.genus(),
        kx3,
        steps,
        basket,
        link_kind,
        contracted_lines: lines,
    };
    let chain = report.k3_chain();
    if chain.last() != Some(report.final_k3()) {
        return Err(Error::Invariant(format!("-K^3 ledger for {c} does not close")));
    }
    if report.final_k3().is_zero() {
        return Err(Error::Invariant(format!("{c}: -K^3 vanished")));
    }
    Ok(report)
}
