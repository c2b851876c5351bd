//! Enumeration and classification of curve types on smooth cubics.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear_systems::{cubic_count, pair_violation, secancy_profile, SecancyProfile};
use crate::picard_lattice::{twenty_seven_lines, LineOnCubic, SurfaceClass};
use crate::weyl::{standardize, MoveWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum LinkStatus {
    WeakFano,
    LinkCandidate,
    Excluded { witness: (LineOnCubic, LineOnCubic) },
}

impl LinkStatus {
    pub fn name(&self) -> &'static str {
        match self {
            LinkStatus::WeakFano => "WeakFano",
            LinkStatus::LinkCandidate => "LinkCandidate",
            LinkStatus::Excluded { .. } => "Excluded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateRecord {
    #[serde(rename = "type")]
    pub class: SurfaceClass,
    pub profile: SecancyProfile,
    pub degree: i64,
    pub genus: i64,
    #[serde(rename = "weakFano")]
    pub weak_fano: bool,
    #[serde(rename = "linkStatus")]
    pub status: LinkStatus,
}

impl CandidateRecord {
    fn evaluate(class: SurfaceClass) -> Self {
        let profile = secancy_profile(&class);
        let weak_fano = profile.max() <= 4;
        let status = if weak_fano {
            LinkStatus::WeakFano
        } else if let Some(witness) = pair_violation(&class) {
            LinkStatus::Excluded { witness }
        } else {
            LinkStatus::LinkCandidate
        };
        CandidateRecord { class, profile, degree: class.degree(), genus: class.genus(), weak_fano, status }
    }
}

/// Which of the enumeration filters to apply. All on reproduces the table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Filters {
    pub curve_class: bool,
    pub nonnegative_genus: bool,
    pub not_weak_fano: bool,
    pub no_pair_violation: bool,
}

impl Default for Filters {
    fn default() -> Self {
        Filters { curve_class: true, nonnegative_genus: true, not_weak_fano: true, no_pair_violation: true }
    }
}

/// Meets every line non-negatively and is not itself a line.
fn is_curve_class(c: &SurfaceClass, profile: &SecancyProfile) -> bool {
    profile.min() >= 0 && !twenty_seven_lines().iter().any(|l| l.class == *c)
}

/// Standard-form types within the bounds `2 <= k <= 9`, `m1 <= min(k - 1, 8)`,
/// `m2..m6 <= 2`.
fn bounded_types() -> impl Iterator<Item = SurfaceClass> {
    (2..=9i64).flat_map(|k| {
        (0..=(k - 1).min(8)).flat_map(move |m1| {
            tails().filter_map(move |t| {
                let m = [m1, t[0], t[1], t[2], t[3], t[4]];
                (m1 >= m[1] && k >= m[0] + m[1] + m[2]).then_some(SurfaceClass::new(k, m))
            })
        })
    })
}

/// Descending 5-tuples with entries in `0..=2`.
fn tails() -> impl Iterator<Item = [i64; 5]> {
    (0..3i64.pow(5)).filter_map(|code| {
        let t: [i64; 5] = std::array::from_fn(|i| (code / 3i64.pow(4 - i as u32)) % 3);
        t.windows(2).all(|w| w[0] >= w[1]).then_some(t)
    })
}

pub fn enumerate_with(filters: Filters) -> Vec<CandidateRecord> {
    let mut out: Vec<(u64, CandidateRecord)> = bounded_types()
        .map(CandidateRecord::evaluate)
        .filter(|r| !filters.curve_class || is_curve_class(&r.class, &r.profile))
        .filter(|r| !filters.nonnegative_genus || r.genus >= 0)
        .filter(|r| !filters.not_weak_fano || !r.weak_fano)
        .filter(|r| !filters.no_pair_violation || !matches!(r.status, LinkStatus::Excluded { .. }))
        .map(|r| (cubic_count(&r.class), r))
        .collect();
    // Unique-cubic types first, then the pencil ones; by type within each block.
    out.sort_by(|(a, ra), (b, rb)| (a, ra.class.k, ra.class.m).cmp(&(b, rb.class.k, rb.class.m)));
    out.into_iter().map(|(_, r)| r).collect()
}

/// The candidate curves, in table order.
pub fn enumerate_candidates() -> &'static [CandidateRecord] {
    static TABLE: OnceLock<Vec<CandidateRecord>> = OnceLock::new();
    TABLE.get_or_init(|| enumerate_with(Filters::default()))
}

/// Classifies a type after bringing it to standard form.
pub fn classify_with_word(c: &SurfaceClass) -> Result<(CandidateRecord, MoveWord)> {
    let (standard, word) = standardize(c)?;
    let record = CandidateRecord::evaluate(standard);
    if record.status == LinkStatus::LinkCandidate {
        if !is_curve_class(&standard, &record.profile) || record.genus < 0 {
            return Err(Error::NotCurveClass(standard));
        }
        if !enumerate_candidates().iter().any(|r| r.class == standard) {
            return Err(Error::Invariant(format!("link candidate {standard} is missing from the table")));
        }
    }
    Ok((record, word))
}

pub fn classify_type(c: &SurfaceClass) -> Result<CandidateRecord> {
    classify_with_word(c).map(|(r, _)| r)
}
