//! Numeric evaluation of the weight ≤ 1 motivic Steenrod operations on
//! motivic cohomology classes of a field.
//!
//! Writing a class in h^{p,q} as τⁿc with c ∈ h^{p,p} and n = q-p, the
//! squares act by a mod-4 case split on n:
//!
//! Sq¹(τⁿc) = ρτⁿ⁻¹c for n odd, else 0
//! Sq²(τⁿc) = ρ²τⁿ⁻¹c for n ≡ 2,3 (mod 4), else 0
//! Sq²Sq¹(τⁿc) = ρ³τⁿ⁻²c for n ≡ 3 (mod 4), else 0
//! Sq³Sq¹(τⁿc) = ρ⁴τⁿ⁻³c for n ≡ 3 (mod 4), else 0
//!
//! Pure-weight classes c ∈ h^{p,p} are annihilated by the positive squares
//! for bidegree reasons, so no action data on Milnor symbols is needed.

use crate::error::Result;
use crate::field::{FieldPresentation, MotClass};

fn tau_power(x: &MotClass) -> i64 {
    x.q - x.p
}

/// ρ^k times the Milnor part, placed in bidegree (p+k, q+weight_shift).
/// Returns the zero class when the target group vanishes.
fn rho_multiple(
    field: &FieldPresentation,
    x: &MotClass,
    k: usize,
    weight_shift: i64,
) -> Result<MotClass> {
    let tp = x.p + k as i64;
    let tq = x.q + weight_shift;
    if field.h_dim(tp, tq)? == 0 {
        return field.zero_class(tp, tq);
    }
    let milnor = field.rho_power_times(k, &MotClass {
        p: x.p,
        q: x.p,
        coords: x.coords.clone(),
    })?;
    field.class(tp, tq, milnor.coords)
}

/// Sq¹, the mod-2 Bockstein. Bidegree (1,0).
pub fn sq1(field: &FieldPresentation, x: &MotClass) -> Result<MotClass> {
    let n = tau_power(x);
    if n.rem_euclid(2) == 1 {
        rho_multiple(field, x, 1, 0)
    } else {
        field.zero_class(x.p + 1, x.q)
    }
}

/// Sq². Bidegree (2,1).
pub fn sq2(field: &FieldPresentation, x: &MotClass) -> Result<MotClass> {
    let n = tau_power(x);
    if matches!(n.rem_euclid(4), 2 | 3) {
        rho_multiple(field, x, 2, 1)
    } else {
        field.zero_class(x.p + 2, x.q + 1)
    }
}

/// Sq²Sq¹. Bidegree (3,1).
pub fn sq2sq1(field: &FieldPresentation, x: &MotClass) -> Result<MotClass> {
    let n = tau_power(x);
    if n.rem_euclid(4) == 3 {
        rho_multiple(field, x, 3, 1)
    } else {
        field.zero_class(x.p + 3, x.q + 1)
    }
}

/// Sq³Sq¹. Bidegree (4,1).
pub fn sq3sq1(field: &FieldPresentation, x: &MotClass) -> Result<MotClass> {
    let n = tau_power(x);
    if n.rem_euclid(4) == 3 {
        rho_multiple(field, x, 4, 1)
    } else {
        field.zero_class(x.p + 4, x.q + 1)
    }
}

/// Sq³ = Sq¹Sq². Bidegree (3,1).
pub fn sq3(field: &FieldPresentation, x: &MotClass) -> Result<MotClass> {
    sq1(field, &sq2(field, x)?)
}

/// The first Milnor operation Q₁ = Sq³ + Sq²Sq¹. Bidegree (3,1).
pub fn q1(field: &FieldPresentation, x: &MotClass) -> Result<MotClass> {
    let mut a = sq3(field, x)?;
    let b = sq2sq1(field, x)?;
    a.coords.xor_assign(&b.coords);
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{preset_field, standard_presets, PresetKind};

    fn real() -> FieldPresentation {
        preset_field(PresetKind::RealClosed).unwrap()
    }

    #[test]
    fn sq1_on_tau_is_rho() {
        let f = real();
        let out = sq1(&f, &f.tau()).unwrap();
        assert_eq!(out, f.rho_class());
    }

    #[test]
    fn sq1_on_tau_squared_vanishes() {
        let f = real();
        let tau2 = f.cup(&f.tau(), &f.tau()).unwrap();
        assert!(sq1(&f, &tau2).unwrap().is_zero());
    }

    #[test]
    fn sq1_kills_pure_weight() {
        let f = real();
        for p in 0..4 {
            let c = f.basis_class(p, p, 0).unwrap();
            assert!(sq1(&f, &c).unwrap().is_zero(), "h^{{{p},{p}}} survives Sq¹");
        }
    }

    #[test]
    fn sq2_on_tau_squared_is_rho2_tau() {
        let f = real();
        let tau2 = f.cup(&f.tau(), &f.tau()).unwrap();
        let out = sq2(&f, &tau2).unwrap();
        let expected = f
            .cup(&f.cup(&f.rho_class(), &f.rho_class()).unwrap(), &f.tau())
            .unwrap();
        assert_eq!(out, expected);
        assert!(!out.is_zero());
    }

    #[test]
    fn sq2_on_tau_vanishes() {
        let f = real();
        assert!(sq2(&f, &f.tau()).unwrap().is_zero());
    }

    #[test]
    fn sq2_vanishes_without_rho() {
        let f5 = preset_field(PresetKind::Finite(5)).unwrap();
        let tau2 = f5.cup(&f5.tau(), &f5.tau()).unwrap();
        assert!(sq2(&f5, &tau2).unwrap().is_zero(), "ρ = 0 in F₅");
    }

    #[test]
    fn sq3sq1_on_tau_cubed() {
        let f = real();
        let tau2 = f.cup(&f.tau(), &f.tau()).unwrap();
        let tau3 = f.cup(&tau2, &f.tau()).unwrap();
        let out = sq3sq1(&f, &tau3).unwrap();
        assert_eq!((out.p, out.q), (4, 4));
        let rho4 = f.rho_power_times(3, &f.rho_class()).unwrap();
        assert_eq!(out, rho4);
        // and a τ-multiple shifts out of the n ≡ 3 residue:
        let tau4 = f.cup(&tau3, &f.tau()).unwrap();
        assert!(sq2sq1(&f, &tau4).unwrap().is_zero());
    }

    #[test]
    fn sq2sq1_on_tau_cubed_is_rho3_tau() {
        let f = real();
        let tau3 = f
            .cup(&f.cup(&f.tau(), &f.tau()).unwrap(), &f.tau())
            .unwrap();
        let out = sq2sq1(&f, &tau3).unwrap();
        let rho3 = f.rho_power_times(2, &f.rho_class()).unwrap();
        assert_eq!(out, f.cup(&rho3, &f.tau()).unwrap());
    }

    #[test]
    fn low_tau_power_vanishing() {
        let f = real();
        // q - p < 3 leaves no τ³ to consume.
        let x = f.basis_class(1, 3, 0).unwrap();
        assert!(sq3sq1(&f, &x).unwrap().is_zero());
    }

    /// Basis-wise operation identities on every preset within a window:
    /// Sq¹Sq¹ = 0, Sq²Sq² = τ·Sq³Sq¹, Sq³Sq¹ = Sq¹Sq²Sq¹, and the Cartan
    /// formula for Sq¹ on basis pairs.
    #[test]
    fn operation_identities_on_presets() {
        for kind in standard_presets() {
            let f = preset_field(kind).unwrap();
            for p in 0..=6i64 {
                for q in p..=8i64 {
                    for i in 0..f.h_dim(p, q).unwrap() {
                        let x = f.basis_class(p, q, i).unwrap();

                        let s1s1 = sq1(&f, &sq1(&f, &x).unwrap()).unwrap();
                        assert!(s1s1.is_zero(), "Sq¹Sq¹ ≠ 0 at ({p},{q}) in {}", f.name);

                        let s2s2 = sq2(&f, &sq2(&f, &x).unwrap()).unwrap();
                        let tau_s3s1 = f.tau_times(&sq3sq1(&f, &x).unwrap()).unwrap();
                        assert_eq!(
                            s2s2, tau_s3s1,
                            "Sq²Sq² ≠ τSq³Sq¹ at ({p},{q}) in {}",
                            f.name
                        );

                        let via_letters =
                            sq1(&f, &sq2(&f, &sq1(&f, &x).unwrap()).unwrap()).unwrap();
                        assert_eq!(
                            sq3sq1(&f, &x).unwrap(),
                            via_letters,
                            "Sq³Sq¹ ≠ Sq¹Sq²Sq¹ at ({p},{q}) in {}",
                            f.name
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cartan_for_sq1_on_basis_pairs() {
        for kind in [PresetKind::RealClosed, PresetKind::Local(7)] {
            let f = preset_field(kind).unwrap();
            for p1 in 0..=2i64 {
                for q1 in p1..=4i64 {
                    for p2 in 0..=2i64 {
                        for q2 in p2..=4i64 {
                            for i in 0..f.h_dim(p1, q1).unwrap() {
                                for j in 0..f.h_dim(p2, q2).unwrap() {
                                    let x = f.basis_class(p1, q1, i).unwrap();
                                    let y = f.basis_class(p2, q2, j).unwrap();
                                    let lhs = sq1(&f, &f.cup(&x, &y).unwrap()).unwrap();
                                    let mut rhs =
                                        f.cup(&sq1(&f, &x).unwrap(), &y).unwrap();
                                    let other = f.cup(&x, &sq1(&f, &y).unwrap()).unwrap();
                                    rhs.coords.xor_assign(&other.coords);
                                    assert_eq!(lhs, rhs, "Cartan fails in {}", f.name);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
