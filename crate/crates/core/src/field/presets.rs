//! Built-in field presentations.
//!
//! Presets are inputs: their structure constants are frozen here and their
//! correctness is established by brute-force oracles in the test suite
//! (square-class enumeration for finite fields, Hilbert symbols for local
//! fields). The integral cells record standard K-theory computations:
//! K_{2i-1}(F_q) = Z/(q^i - 1) for finite fields, and for p-adic fields the
//! torsion Z/w_i(Q_p) of K_{2i-1} together with uniquely divisible parts.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{basis_vec, FieldPresentation, IntegralCell, MultTable};
use crate::linalg::{F2Vec, FgAbGroup, IntMatrix};

/// Default Milnor-degree truncation for presets. Window computations up to
/// weight 12 read cohomology in weight 13, so presets carry one degree of
/// headroom past that.
pub const DEFAULT_TRUNCATION: i64 = 14;

/// The built-in field kinds.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PresetKind {
    QuadraticallyClosed,
    RealClosed,
    /// Finite field with q elements, q an odd prime power.
    Finite(u64),
    /// The p-adic field Q_p for an odd prime p.
    Local(u64),
}

impl PresetKind {
    /// Parses preset names as used on the command line: `quadratically-closed`
    /// (alias `qc`), `real-closed` (alias `real`), `finite-5`, `local-7`.
    /// Separators `-`, `_` and `:` are interchangeable.
    pub fn parse(s: &str) -> Option<PresetKind> {
        let norm = s.to_ascii_lowercase().replace(['_', ':'], "-");
        match norm.as_str() {
            "qc" | "quadratically-closed" | "quad-closed" => {
                return Some(PresetKind::QuadraticallyClosed)
            }
            "real" | "real-closed" => return Some(PresetKind::RealClosed),
            _ => {}
        }
        let (kind, param) = norm.split_once('-')?;
        let n: u64 = param.parse().ok()?;
        match kind {
            "finite" => Some(PresetKind::Finite(n)),
            "local" => Some(PresetKind::Local(n)),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            PresetKind::QuadraticallyClosed => "quadratically-closed".into(),
            PresetKind::RealClosed => "real-closed".into(),
            PresetKind::Finite(q) => format!("finite-{q}"),
            PresetKind::Local(p) => format!("local-{p}"),
        }
    }
}

/// All preset kinds exercised by the standard reports.
pub fn standard_presets() -> Vec<PresetKind> {
    vec![
        PresetKind::QuadraticallyClosed,
        PresetKind::RealClosed,
        PresetKind::Finite(5),
        PresetKind::Finite(7),
        PresetKind::Finite(9),
        PresetKind::Local(5),
        PresetKind::Local(7),
    ]
}

fn is_odd_prime(n: u64) -> bool {
    if n < 3 || n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Returns the base prime when `q` is an odd prime power.
fn odd_prime_power_base(q: u64) -> Option<u64> {
    for p in (3..=q).step_by(2) {
        if !is_odd_prime(p) {
            continue;
        }
        let mut m = q;
        while m % p == 0 {
            m /= p;
        }
        if m == 1 {
            return Some(p);
        }
        if q % p == 0 {
            return None;
        }
    }
    None
}

/// Builds a validated preset presentation.
pub fn preset_field(kind: PresetKind) -> Result<FieldPresentation> {
    let f = match kind {
        PresetKind::QuadraticallyClosed => quadratically_closed(),
        PresetKind::RealClosed => real_closed(),
        PresetKind::Finite(q) => finite(q)?,
        PresetKind::Local(p) => local(p)?,
    };
    f.validate()?;
    Ok(f)
}

fn empty_labels(dims: &[usize]) -> Vec<Vec<String>> {
    dims.iter().map(|&d| vec![String::new(); d]).collect()
}

fn quadratically_closed() -> FieldPresentation {
    let n = DEFAULT_TRUNCATION as usize;
    let mut dims = vec![0usize; n + 1];
    dims[0] = 1;
    let mut labels = empty_labels(&dims);
    labels[0] = vec!["1".into()];
    // With h^{a,b} = 0 for a ≥ 1 every H^{a,b}, a ≥ 2, is uniquely
    // 2-divisible: no mod-2 reduction and no 2-torsion from below. The cells
    // H^{1,b} carry infinitely 2-divisible torsion (μ-parts) that the
    // finitely generated model cannot hold, so they stay unsupplied.
    let mut cells = BTreeMap::new();
    for a in 2..=n as i64 {
        for b in a..=n as i64 {
            cells.insert(
                (a, b),
                IntegralCell {
                    p: a,
                    q: b,
                    group: FgAbGroup::trivial(),
                    pr_matrix: IntMatrix::zero(0, 0),
                    divisible_part: true,
                },
            );
        }
    }
    let mut zero = BTreeSet::new();
    zero.insert((0, 2));
    FieldPresentation {
        name: "quadratically-closed".into(),
        truncation: DEFAULT_TRUNCATION,
        dims,
        basis_labels: labels,
        rho: F2Vec::zero(0),
        mult: BTreeMap::new(),
        integral_cells: cells,
        beilinson_soule: false,
        zero_cells: zero,
    }
}

fn real_closed() -> FieldPresentation {
    let n = DEFAULT_TRUNCATION as usize;
    let dims = vec![1usize; n + 1];
    let mut labels = Vec::with_capacity(n + 1);
    labels.push(vec!["1".to_string()]);
    labels.push(vec!["r".to_string()]);
    for d in 2..=n {
        labels.push(vec![format!("r^{d}")]);
    }
    // kᴹ(R)/2 = F₂[ρ]: every product of generators is the generator.
    let mut mult = BTreeMap::new();
    for a in 1..=n {
        for b in 1..=n - a {
            mult.insert(
                (a, b),
                MultTable {
                    rows: 1,
                    cols: 1,
                    entries: vec![basis_vec(1, 0)],
                },
            );
        }
    }
    FieldPresentation {
        name: "real-closed".into(),
        truncation: DEFAULT_TRUNCATION,
        dims,
        basis_labels: labels,
        rho: basis_vec(1, 0),
        mult,
        integral_cells: BTreeMap::new(),
        beilinson_soule: false,
        zero_cells: BTreeSet::new(),
    }
}

fn finite(q: u64) -> Result<FieldPresentation> {
    if odd_prime_power_base(q).is_none() {
        return Err(Error::Schema(format!(
            "finite preset needs an odd prime power, got {q}"
        )));
    }
    let n = DEFAULT_TRUNCATION as usize;
    let mut dims = vec![0usize; n + 1];
    dims[0] = 1;
    dims[1] = 1;
    let mut labels = empty_labels(&dims);
    labels[0] = vec!["1".into()];
    labels[1] = vec!["u".into()];
    // -1 is a square in F_q exactly when q ≡ 1 (mod 4).
    let rho = if q % 4 == 3 {
        basis_vec(1, 0)
    } else {
        F2Vec::zero(1)
    };

    let mut cells = BTreeMap::new();
    let mut zero = BTreeSet::new();
    // K_{2i-1}(F_q) = Z/(q^i - 1) sits in H^{1,i}; everything else in the
    // range 0 ≤ a ≤ b vanishes.
    for b in 1..=n as i64 {
        let order = BigInt::from(q).pow(b as u32) - BigInt::one();
        let mut pr = IntMatrix::zero(1, 1);
        pr.set(0, 0, BigInt::one());
        cells.insert(
            (1, b),
            IntegralCell {
                p: 1,
                q: b,
                group: FgAbGroup {
                    free_rank: 0,
                    torsion: vec![order],
                },
                pr_matrix: pr,
                divisible_part: false,
            },
        );
        zero.insert((0, b));
        for a in 2..=b {
            zero.insert((a, b));
        }
    }
    Ok(FieldPresentation {
        name: format!("finite-{q}"),
        truncation: DEFAULT_TRUNCATION,
        dims,
        basis_labels: labels,
        rho,
        mult: BTreeMap::new(),
        integral_cells: cells,
        beilinson_soule: true,
        zero_cells: zero,
    })
}

/// Largest m such that Gal(Q_p(μ_m)/Q_p) has exponent dividing b: the
/// prime-to-p part is p^b - 1 (Frobenius), the p-part is p^{1+v_p(b)} when
/// (p-1) | b and trivial otherwise.
fn local_w(p: u64, b: u32) -> BigInt {
    let mut w = BigInt::from(p).pow(b) - BigInt::one();
    if b as u64 % (p - 1) == 0 {
        let mut pp = BigInt::from(p);
        let mut b_left = b as u64;
        while b_left % p == 0 {
            pp *= p;
            b_left /= p;
        }
        w *= pp;
    }
    w
}

fn local(p: u64) -> Result<FieldPresentation> {
    if !is_odd_prime(p) {
        return Err(Error::Schema(format!(
            "local preset needs an odd prime (dyadic fields are out of range), got {p}"
        )));
    }
    let n = DEFAULT_TRUNCATION as usize;
    let mut dims = vec![0usize; n + 1];
    dims[0] = 1;
    dims[1] = 2;
    dims[2] = 1;
    let mut labels = empty_labels(&dims);
    labels[0] = vec!["1".into()];
    labels[1] = vec!["u".into(), "pi".into()];
    labels[2] = vec!["{u,pi}".into()];
    // Square classes {1, u, pi, u·pi} with u a non-square unit; when
    // p ≡ 3 (mod 4) take u = -1, so ρ = [u].
    let rho = if p % 4 == 3 {
        basis_vec(2, 0)
    } else {
        F2Vec::zero(2)
    };

    // Degree-2 products from the Hilbert symbol over Q_p (p odd):
    // {u,u} = 0, {u,pi} = generator, {pi,pi} = {-1,pi}.
    let gen = basis_vec(1, 0);
    let zero2 = F2Vec::zero(1);
    let pipi = if p % 4 == 3 { gen.clone() } else { zero2.clone() };
    let table = MultTable {
        rows: 2,
        cols: 2,
        entries: vec![zero2, gen.clone(), gen, pipi],
    };
    let mut mult = BTreeMap::new();
    mult.insert((1, 1), table);

    let mut cells = BTreeMap::new();
    // H^{1,1} = Q_p^× = Z{pi} ⊕ Z/(p-1){u-part} ⊕ (uniquely 2-divisible).
    cells.insert(
        (1, 1),
        IntegralCell {
            p: 1,
            q: 1,
            group: FgAbGroup {
                free_rank: 1,
                torsion: vec![BigInt::from(p - 1)],
            },
            pr_matrix: IntMatrix::from_i64(2, 2, &[&[0, 1], &[1, 0]]),
            divisible_part: true,
        },
    );
    // H^{2,2} = K₂(Q_p) = Z/(p-1) ⊕ divisible (Moore).
    cells.insert(
        (2, 2),
        IntegralCell {
            p: 2,
            q: 2,
            group: FgAbGroup {
                free_rank: 0,
                torsion: vec![BigInt::from(p - 1)],
            },
            pr_matrix: IntMatrix::from_i64(1, 1, &[&[1]]),
            divisible_part: true,
        },
    );
    // H^{1,b} = Z/w_b(Q_p) ⊕ divisible for b ≥ 2; the torsion class is
    // unramified, so its reduction is the unit square class.
    for b in 2..=n as i64 {
        cells.insert(
            (1, b),
            IntegralCell {
                p: 1,
                q: b,
                group: FgAbGroup {
                    free_rank: 0,
                    torsion: vec![local_w(p, b as u32)],
                },
                pr_matrix: IntMatrix::from_i64(2, 1, &[&[1], &[0]]),
                divisible_part: true,
            },
        );
    }
    // H^{2,b} for b ≥ 3: local duality gives torsion Z/w_{b-1}(Q_p), again
    // with a uniquely divisible complement; reduction onto kᴹ₂ is onto.
    for b in 3..=n as i64 {
        cells.insert(
            (2, b),
            IntegralCell {
                p: 2,
                q: b,
                group: FgAbGroup {
                    free_rank: 0,
                    torsion: vec![local_w(p, b as u32 - 1)],
                },
                pr_matrix: IntMatrix::from_i64(1, 1, &[&[1]]),
                divisible_part: true,
            },
        );
    }
    // Everything of degree ≥ 3 (mod-2 cohomological dimension 2) is
    // uniquely divisible.
    for a in 3..=n as i64 {
        for b in a..=n as i64 {
            cells.insert(
                (a, b),
                IntegralCell {
                    p: a,
                    q: b,
                    group: FgAbGroup::trivial(),
                    pr_matrix: IntMatrix::zero(0, 0),
                    divisible_part: true,
                },
            );
        }
    }
    let mut zero = BTreeSet::new();
    zero.insert((0, 2));

    Ok(FieldPresentation {
        name: format!("local-{p}"),
        truncation: DEFAULT_TRUNCATION,
        dims,
        basis_labels: labels,
        rho,
        mult,
        integral_cells: cells,
        beilinson_soule: false,
        zero_cells: zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!(PresetKind::parse("real"), Some(PresetKind::RealClosed));
        assert_eq!(
            PresetKind::parse("quadratically-closed"),
            Some(PresetKind::QuadraticallyClosed)
        );
        assert_eq!(PresetKind::parse("finite_9"), Some(PresetKind::Finite(9)));
        assert_eq!(PresetKind::parse("local:5"), Some(PresetKind::Local(5)));
        assert_eq!(PresetKind::parse("global-1"), None);
    }

    #[test]
    fn finite_rho_by_residue() {
        let f5 = preset_field(PresetKind::Finite(5)).unwrap();
        assert!(f5.rho.is_zero(), "-1 is a square in F₅");
        let f7 = preset_field(PresetKind::Finite(7)).unwrap();
        assert!(!f7.rho.is_zero(), "-1 is a non-square in F₇");
        let f9 = preset_field(PresetKind::Finite(9)).unwrap();
        assert!(f9.rho.is_zero(), "-1 is a square in F₉ (9 ≡ 1 mod 4)");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(preset_field(PresetKind::Finite(8)).is_err());
        assert!(preset_field(PresetKind::Finite(15)).is_err());
        assert!(preset_field(PresetKind::Local(2)).is_err());
        assert!(preset_field(PresetKind::Local(9)).is_err());
    }

    #[test]
    fn local_pairing_table() {
        // {u,pi} ≠ 0 and {u,u} = 0 for every odd p; {pi,pi} ≠ 0 iff p ≡ 3 (mod 4).
        let l5 = preset_field(PresetKind::Local(5)).unwrap();
        let t5 = &l5.mult[&(1, 1)];
        assert!(t5.product(0, 0).is_zero());
        assert!(!t5.product(0, 1).is_zero());
        assert!(t5.product(1, 1).is_zero());

        let l7 = preset_field(PresetKind::Local(7)).unwrap();
        let t7 = &l7.mult[&(1, 1)];
        assert!(t7.product(0, 0).is_zero());
        assert!(!t7.product(0, 1).is_zero());
        assert!(!t7.product(1, 1).is_zero());
    }

    #[test]
    fn local_w_values() {
        // w₂(Q₅) = 24, w₂(Q₇) = 48, w₄(Q₅) = 5·(5⁴-1).
        assert_eq!(local_w(5, 2), BigInt::from(24));
        assert_eq!(local_w(7, 2), BigInt::from(48));
        assert_eq!(local_w(5, 4), BigInt::from(5 * (625 - 1)));
    }

    #[test]
    fn finite_integral_cells() {
        let f5 = preset_field(PresetKind::Finite(5)).unwrap();
        let c = &f5.integral_cells[&(1, 2)];
        assert_eq!(c.group, FgAbGroup::cyclic(24), "K₃(F₅) = Z/24");
    }
}
