//! Numerical data of Hirzebruch surfaces, normal bundles of secant lines
//! and the blowups used to resolve the (1,m)-flips.

use crate::error::{Error, Result};
use crate::rational::{int, ratio, Rational};

/// The class `a*sigma + b*f` on the Hirzebruch surface `F_n`, where
/// `sigma` is the negative section and `f` a fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FnClass {
    pub n: u32,
    pub a: i64,
    pub b: i64,
}

impl FnClass {
    pub const fn new(n: u32, a: i64, b: i64) -> Self {
        FnClass { n, a, b }
    }

    pub const fn sigma(n: u32) -> Self {
        FnClass::new(n, 1, 0)
    }

    pub const fn fibre(n: u32) -> Self {
        FnClass::new(n, 0, 1)
    }

    /// `K = -2 sigma - (n + 2) f`.
    pub const fn canonical(n: u32) -> Self {
        FnClass::new(n, -2, -(n as i64) - 2)
    }

    pub fn sub(&self, other: &FnClass) -> Result<FnClass> {
        if self.n != other.n {
            return Err(Error::HirzebruchMismatch(self.n, other.n));
        }
        Ok(FnClass::new(self.n, self.a - other.a, self.b - other.b))
    }
}

/// Intersection form with matrix `((-n, 1), (1, 0))` in the basis `(sigma, f)`.
pub fn fn_pairing(x: &FnClass, y: &FnClass) -> Result<i64> {
    if x.n != y.n {
        return Err(Error::HirzebruchMismatch(x.n, y.n));
    }
    let n = x.n as i64;
    Ok(-n * x.a * y.a + x.a * y.b + x.b * y.a)
}

/// `chi(a sigma + b f) = (a + 1)(b + 1) - n a (a + 1) / 2`.
pub fn fn_euler(d: &FnClass) -> i64 {
    let (n, a, b) = (d.n as i64, d.a, d.b);
    (a + 1) * (b + 1) - n * (a * (a + 1) / 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vanishing {
    /// `h^i = 0` for every `i`.
    pub all_vanish: bool,
    pub h1_vanishes: bool,
}

/// All cohomology vanishes when `D.f = -1`; `h^1` vanishes when `D.f >= 0`
/// and `D.sigma >= -1`.
pub fn fn_vanishing(d: &FnClass) -> Vanishing {
    let n = d.n;
    let dot_f = fn_pairing(d, &FnClass::fibre(n)).expect("same surface");
    let dot_sigma = fn_pairing(d, &FnClass::sigma(n)).expect("same surface");
    let all_vanish = dot_f == -1;
    Vanishing { all_vanish, h1_vanishes: all_vanish || (dot_f >= 0 && dot_sigma >= -1) }
}

/// Intersection numbers on `F_n` with its negative section contracted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnBarData {
    /// Self-intersection of the image of an n-section.
    pub sigma_bar_sq: Rational,
    /// Self-intersection of the image of a fibre.
    pub f_bar_sq: Rational,
    /// The image of an n-section as a multiple of the fibre image.
    pub sigma_bar_in_f_bar: Rational,
}

pub fn fn_bar_data(n: u32) -> Result<FnBarData> {
    if n == 0 {
        return Err(Error::ZeroHirzebruchIndex);
    }
    let n = n as i64;
    Ok(FnBarData { sigma_bar_sq: int(n), f_bar_sq: ratio(1, n), sigma_bar_in_f_bar: int(n) })
}

/// `O(alpha) + O(beta)` on a smooth rational curve, `alpha >= beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplitBundle {
    pub alpha: i64,
    pub beta: i64,
}

impl SplitBundle {
    /// Orders the two degrees so that `alpha >= beta`.
    pub fn new(x: i64, y: i64) -> Self {
        SplitBundle { alpha: x.max(y), beta: x.min(y) }
    }

    pub fn degree(&self) -> i64 {
        self.alpha + self.beta
    }
}

/// Normal bundle of an m-secant line in `Bl_C P^3`: `O(-1) + O(3 - m)`.
pub fn secant_line_normal_bundle(m: i64) -> Result<SplitBundle> {
    if m < 3 {
        return Err(Error::SecancyTooSmall(m));
    }
    Ok(SplitBundle::new(-1, 3 - m))
}

/// Data of the blowup of a rational curve with normal bundle `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExceptionalData {
    /// The exceptional divisor is `F_(alpha - beta)`.
    pub hirzebruch_index: u32,
    /// `E . C'` for `C'` the negative section.
    pub e_dot_c_prime: i64,
    /// `E|_E = -C' + beta f`.
    pub e_on_e: FnClass,
}

pub fn blowup_exceptional_data(nb: &SplitBundle) -> ExceptionalData {
    let n = (nb.alpha - nb.beta) as u32;
    ExceptionalData { hirzebruch_index: n, e_dot_c_prime: nb.alpha, e_on_e: FnClass::new(n, -1, nb.beta) }
}

/// Restriction to `E` of the strict transform of a surface containing the
/// curve with self-intersection `kappa`: `C' + (alpha - kappa) f`.
pub fn strict_transform_on_e(nb: &SplitBundle, kappa: i64) -> FnClass {
    FnClass::new((nb.alpha - nb.beta) as u32, 1, nb.alpha - kappa)
}

/// Normal bundle of `C'` after the blowup, `O(beta - alpha) + O(alpha)`,
/// determined only when `2 alpha - beta < 2`.
pub fn flipped_normal_bundle(nb: &SplitBundle) -> Result<SplitBundle> {
    let obstruction = 2 * nb.alpha - nb.beta;
    if obstruction >= 2 {
        return Err(Error::FlipUndetermined(obstruction));
    }
    let out = SplitBundle::new(nb.beta - nb.alpha, nb.alpha);
    if out.degree() != nb.beta {
        return Err(Error::Invariant(format!("alpha' + beta' = {} != beta = {}", out.degree(), nb.beta)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hirzebruch_pairing() {
        assert_eq!(fn_pairing(&FnClass::sigma(2), &FnClass::sigma(2)), Ok(-2));
        assert_eq!(fn_pairing(&FnClass::sigma(2), &FnClass::fibre(2)), Ok(1));
        assert_eq!(fn_pairing(&FnClass::fibre(2), &FnClass::fibre(2)), Ok(0));
        assert_eq!(fn_pairing(&FnClass::sigma(1), &FnClass::sigma(2)), Err(Error::HirzebruchMismatch(1, 2)));
    }

    #[test]
    fn euler_characteristic() {
        assert_eq!(fn_euler(&FnClass::new(3, 0, 0)), 1);
        assert_eq!(fn_euler(&FnClass::new(2, 1, 1)), 2);
        for n in 0..=10 {
            assert_eq!(fn_euler(&FnClass::canonical(n)), 1, "n = {n}");
        }
    }

    #[test]
    fn vanishing() {
        let v = fn_vanishing(&FnClass::new(2, -1, 5));
        assert!(v.all_vanish && v.h1_vanishes);
        let v = fn_vanishing(&FnClass::new(2, 0, 0));
        assert!(!v.all_vanish && v.h1_vanishes);
        let v = fn_vanishing(&FnClass::new(2, 2, -10));
        assert!(!v.all_vanish && !v.h1_vanishes);
    }

    #[test]
    fn contracted_surface() {
        let d = fn_bar_data(2).unwrap();
        assert_eq!(d.f_bar_sq, ratio(1, 2));
        // E = -3 f_bar on F_2 bar: E^3 = 9/2.
        assert_eq!(int(9) * d.f_bar_sq.clone(), ratio(9, 2));
        assert_eq!(fn_bar_data(1).unwrap().f_bar_sq, int(1));
        assert_eq!(fn_bar_data(0), Err(Error::ZeroHirzebruchIndex));
    }

    #[test]
    fn secant_normal_bundles() {
        assert_eq!(secant_line_normal_bundle(5), Ok(SplitBundle { alpha: -1, beta: -2 }));
        assert_eq!(secant_line_normal_bundle(6), Ok(SplitBundle { alpha: -1, beta: -3 }));
        assert_eq!(secant_line_normal_bundle(4), Ok(SplitBundle { alpha: -1, beta: -1 }));
        assert_eq!(secant_line_normal_bundle(3), Ok(SplitBundle { alpha: 0, beta: -1 }));
        assert_eq!(secant_line_normal_bundle(2), Err(Error::SecancyTooSmall(2)));
    }

    #[test]
    fn exceptional_divisor() {
        let d = blowup_exceptional_data(&SplitBundle::new(-1, -3));
        assert_eq!(d.hirzebruch_index, 2);
        assert_eq!(d.e_dot_c_prime, -1);
        assert_eq!(d.e_on_e, FnClass::new(2, -1, -3));
        assert_eq!(blowup_exceptional_data(&SplitBundle::new(-1, -1)).hirzebruch_index, 0);
        assert_eq!(blowup_exceptional_data(&SplitBundle::new(-1, -2)).hirzebruch_index, 1);
    }

    #[test]
    fn strict_transform() {
        assert_eq!(strict_transform_on_e(&SplitBundle::new(-1, -2), -1), FnClass::new(1, 1, 0));
        assert_eq!(strict_transform_on_e(&SplitBundle::new(-1, -3), -1), FnClass::new(2, 1, 0));
        assert_eq!(strict_transform_on_e(&SplitBundle::new(0, 0), 0), FnClass::new(0, 1, 0));
    }

    #[test]
    fn flipped_bundles() {
        assert_eq!(flipped_normal_bundle(&SplitBundle::new(-1, -3)), Ok(SplitBundle::new(-1, -2)));
        assert_eq!(flipped_normal_bundle(&SplitBundle::new(-1, -1)), Ok(SplitBundle::new(0, -1)));
        assert_eq!(flipped_normal_bundle(&SplitBundle::new(0, 0)), Ok(SplitBundle::new(0, 0)));
        assert_eq!(flipped_normal_bundle(&SplitBundle::new(1, 0)), Err(Error::FlipUndetermined(2)));
    }

    proptest! {
        #[test]
        fn euler_matches_riemann_roch(n in 0u32..12, a in -20i64..20, b in -20i64..20) {
            let d = FnClass::new(n, a, b);
            let dk = d.sub(&FnClass::canonical(n)).unwrap();
            let twice = fn_pairing(&d, &dk).unwrap();
            prop_assert_eq!(twice % 2, 0);
            prop_assert_eq!(fn_euler(&d), twice / 2 + 1);
        }

        #[test]
        fn blowup_then_flip_keeps_degree(alpha in -10i64..10, drop in 0i64..20) {
            let nb = SplitBundle::new(alpha, alpha - drop);
            let data = blowup_exceptional_data(&nb);
            let n = data.hirzebruch_index;
            // E.f = -1 and E.C' = alpha, read off from E|_E.
            prop_assert_eq!(fn_pairing(&data.e_on_e, &FnClass::fibre(n)).unwrap(), -1);
            prop_assert_eq!(fn_pairing(&data.e_on_e, &FnClass::sigma(n)).unwrap(), nb.alpha);
            if 2 * nb.alpha - nb.beta < 2 {
                prop_assert_eq!(flipped_normal_bundle(&nb).unwrap().degree(), nb.beta);
            } else {
                prop_assert!(flipped_normal_bundle(&nb).is_err());
            }
        }

        #[test]
        fn strict_transform_meets_e_in_kappa(alpha in -6i64..6, drop in 0i64..8, kappa in -5i64..5) {
            let nb = SplitBundle::new(alpha, alpha - drop);
            let d = strict_transform_on_e(&nb, kappa);
            let e = blowup_exceptional_data(&nb).e_on_e;
            prop_assert_eq!(fn_pairing(&d, &e).unwrap(), kappa);
        }

        #[test]
        fn bar_lattice_consistent(n in 1u32..50) {
            let d = fn_bar_data(n).unwrap();
            prop_assert_eq!(d.sigma_bar_sq.clone(), d.sigma_bar_in_f_bar.clone() * d.sigma_bar_in_f_bar.clone() * d.f_bar_sq.clone());
            prop_assert_eq!(d.sigma_bar_sq, int(n as i64) * int(n as i64) * d.f_bar_sq);
        }
    }
}
