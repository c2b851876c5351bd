//! Weyl group moves on the cubic-surface lattice.
//!
//! Permutations of the six points and the quadratic Cremona move on three
//! of them generate the Weyl group of type E6. Both preserve the pairing
//! and the canonical class, so they change the chosen blowdown to the plane
//! without changing the curve.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::picard_lattice::SurfaceClass;

/// Order of W(E6); no orbit can be larger.
pub const WEYL_E6_ORDER: usize = 51_840;

const ITERATION_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// `m'[i] = m[sigma[i]]`, 0-based.
    Perm([usize; 6]),
    /// Quadratic transformation centred at points `i, j, k` (1-based).
    Cremona(usize, usize, usize),
}

impl Move {
    pub fn apply(&self, d: &SurfaceClass) -> Result<SurfaceClass> {
        match *self {
            Move::Perm(sigma) => Ok(permute(d, &sigma)),
            Move::Cremona(i, j, k) => cremona(d, i, j, k),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Perm(sigma) => {
                let one_based: Vec<String> = sigma.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "perm[{}]", one_based.join(","))
            }
            Move::Cremona(i, j, k) => write!(f, "cremona({i},{j},{k})"),
        }
    }
}

/// A sequence of moves; replaying it on the input reproduces the output.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveWord(pub Vec<Move>);

impl MoveWord {
    pub fn replay(&self, d: &SurfaceClass) -> Result<SurfaceClass> {
        self.0.iter().try_fold(*d, |acc, mv| mv.apply(&acc))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self.0.iter().map(Move::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

fn permute(d: &SurfaceClass, sigma: &[usize; 6]) -> SurfaceClass {
    SurfaceClass::new(d.k, std::array::from_fn(|i| d.m[sigma[i]]))
}

/// The quadratic Cremona move on points `i, j, k`:
/// `k' = 2k - mi - mj - mk` and `mi' = k - mj - mk` (cyclically).
pub fn cremona(d: &SurfaceClass, i: usize, j: usize, k: usize) -> Result<SurfaceClass> {
    let valid = [i, j, k].iter().all(|x| (1..=6).contains(x)) && i != j && j != k && i != k;
    if !valid {
        return Err(Error::CremonaIndices(i, j, k));
    }
    let (a, b, c) = (i - 1, j - 1, k - 1);
    let sum = d.m[a] + d.m[b] + d.m[c];
    let mut out = *d;
    out.k = 2 * d.k - sum;
    out.m[a] = d.k - d.m[b] - d.m[c];
    out.m[b] = d.k - d.m[a] - d.m[c];
    out.m[c] = d.k - d.m[a] - d.m[b];
    debug_assert_eq!(out.self_intersection(), d.self_intersection());
    debug_assert_eq!(out.degree(), d.degree());
    Ok(out)
}

/// Stable descending sort of the multiplicities. Returns `None` when already sorted.
fn sorting_perm(d: &SurfaceClass) -> Option<[usize; 6]> {
    let mut sigma = [0, 1, 2, 3, 4, 5];
    sigma.sort_by_key(|&i| std::cmp::Reverse(d.m[i]));
    (sigma != [0, 1, 2, 3, 4, 5]).then_some(sigma)
}

/// Brings a positive-degree class to standard form: multiplicities
/// descending and `k >= m1 + m2 + m3`.
pub fn standardize(d: &SurfaceClass) -> Result<(SurfaceClass, MoveWord)> {
    let degree = d.degree();
    if degree <= 0 {
        return Err(Error::NonPositiveDegree { class: *d, degree });
    }
    let mut word = Vec::new();
    let mut cur = *d;
    loop {
        if let Some(sigma) = sorting_perm(&cur) {
            cur = permute(&cur, &sigma);
            word.push(Move::Perm(sigma));
        }
        if cur.k >= cur.m[0] + cur.m[1] + cur.m[2] {
            break;
        }
        if word.len() >= ITERATION_CAP {
            return Err(Error::IterationCap(*d, ITERATION_CAP));
        }
        let next = cremona(&cur, 1, 2, 3)?;
        // k' - k = k - (m1 + m2 + m3) < 0 here.
        if next.k >= cur.k {
            return Err(Error::Invariant(format!("Cremona move did not lower k on {cur}")));
        }
        cur = next;
        word.push(Move::Cremona(1, 2, 3));
    }
    Ok((cur, MoveWord(word)))
}

fn generators(d: &SurfaceClass) -> impl Iterator<Item = SurfaceClass> + '_ {
    let swaps = (0..5).map(move |i| {
        let mut out = *d;
        out.m.swap(i, i + 1);
        out
    });
    swaps.chain(std::iter::once(cremona(d, 1, 2, 3).expect("fixed indices are valid")))
}

/// The full Weyl orbit of a class, by breadth-first search over the
/// simple reflections.
pub fn orbit(d: &SurfaceClass) -> Vec<SurfaceClass> {
    let mut seen = HashSet::from([*d]);
    let mut order = vec![*d];
    let mut queue = VecDeque::from([*d]);
    while let Some(cur) = queue.pop_front() {
        for next in generators(&cur) {
            if seen.insert(next) {
                order.push(next);
                queue.push_back(next);
            }
        }
        assert!(order.len() <= WEYL_E6_ORDER, "orbit of {d} exceeds |W(E6)|");
    }
    order
}

/// Whether `b` lies in the Weyl orbit of `a`.
pub fn same_orbit(a: &SurfaceClass, b: &SurfaceClass) -> bool {
    if a == b {
        return true;
    }
    if a.self_intersection() != b.self_intersection() || a.degree() != b.degree() {
        return false;
    }
    let mut seen = HashSet::from([*a]);
    let mut queue = VecDeque::from([*a]);
    while let Some(cur) = queue.pop_front() {
        for next in generators(&cur) {
            if next == *b {
                return true;
            }
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
        if seen.len() > WEYL_E6_ORDER {
            break;
        }
    }
    false
}
