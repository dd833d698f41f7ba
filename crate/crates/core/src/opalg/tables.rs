//! Basis tables for the weight ≤ 1 hom groups between motivic
//! Eilenberg-MacLane spectra.
//!
//! The tables list [M, S^{p,w} ∧ M'] for M, M' ∈ {MZ, MZ/2} and w ≤ 1.
//! Entries valued in h^{1,1} are kept symbolic (one basis entry per kᴹ₁
//! basis element, expanded per field only on demand).

use crate::error::{Error, Result};
use crate::field::FieldPresentation;
use crate::opalg::normalize::{op_normalize, NormalForm};
use crate::opalg::word::{Coefficient, Letter, OpWord};

use Letter::{Delta, Pr, Rho, Sq, Tau};

/// One basis entry of a hom-group table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HomBasisEntry {
    /// A fixed normal form.
    Fixed(NormalForm),
    /// h^{1,1}·w — left multiplication by a degree-one coefficient.
    LeftCoeffFamily(NormalForm),
    /// δ∘φ∘w for φ ∈ h^{1,1}, modulo the identification δτSq¹ = δρ.
    DeltaCoeffFamily(NormalForm),
}

fn fixed(letters: &[Letter]) -> HomBasisEntry {
    HomBasisEntry::Fixed(NormalForm(OpWord::from_letters(letters)))
}

fn left_family(letters: &[Letter]) -> HomBasisEntry {
    HomBasisEntry::LeftCoeffFamily(NormalForm(OpWord::from_letters(letters)))
}

fn delta_family(letters: &[Letter]) -> HomBasisEntry {
    HomBasisEntry::DeltaCoeffFamily(NormalForm(OpWord::from_letters(letters)))
}

/// The exact basis list for [src, S^{p,w} ∧ tgt]. Weight w must be 0 or 1;
/// anything else is outside the tabulated range.
pub fn hom_basis_table(
    src: Coefficient,
    tgt: Coefficient,
    p: i64,
    w: i64,
) -> Result<Vec<HomBasisEntry>> {
    if !(0..=1).contains(&w) {
        return Err(Error::UnsupportedOp(format!(
            "hom groups are tabulated only in weights 0 and 1, requested {w}"
        )));
    }
    use Coefficient::{MZ, MZ2};
    let entries = match (src, tgt, p, w) {
        (MZ2, MZ2, 0, 0) => vec![fixed(&[])],
        (MZ2, MZ2, 1, 0) => vec![fixed(&[Sq(1)])],
        (MZ2, MZ2, 0, 1) => vec![fixed(&[Tau])],
        (MZ2, MZ2, 1, 1) => vec![left_family(&[]), fixed(&[Tau, Sq(1)])],
        (MZ2, MZ2, 2, 1) => vec![left_family(&[Sq(1)]), fixed(&[Sq(2)])],
        (MZ2, MZ2, 3, 1) => vec![fixed(&[Sq(2), Sq(1)]), fixed(&[Sq(3)])],
        (MZ2, MZ2, 4, 1) => vec![fixed(&[Sq(3), Sq(1)])],
        (MZ, MZ2, 0, 0) => vec![fixed(&[Pr])],
        (MZ2, MZ, 1, 0) => vec![fixed(&[Delta])],
        (MZ, MZ2, 0, 1) => vec![fixed(&[Tau, Pr])],
        (MZ, MZ2, 1, 1) => vec![left_family(&[Pr])],
        (MZ, MZ2, 2, 1) => vec![fixed(&[Sq(2), Pr])],
        (MZ, MZ2, 3, 1) => vec![fixed(&[Sq(3), Pr])],
        (MZ2, MZ, 1, 1) => vec![fixed(&[Delta, Tau])],
        (MZ2, MZ, 2, 1) => vec![delta_family(&[])],
        (MZ2, MZ, 3, 1) => vec![fixed(&[Delta, Sq(2)])],
        (MZ2, MZ, 4, 1) => vec![fixed(&[Delta, Sq(2), Sq(1)])],
        _ => vec![],
    };
    Ok(entries)
}

/// Dimension of the tabulated hom group over a given field (coefficient
/// families contribute dim kᴹ₁ each).
pub fn hom_basis_dim(
    field: &FieldPresentation,
    src: Coefficient,
    tgt: Coefficient,
    p: i64,
    w: i64,
) -> Result<usize> {
    let mut dim = 0;
    for e in hom_basis_table(src, tgt, p, w)? {
        dim += match e {
            HomBasisEntry::Fixed(_) => 1,
            HomBasisEntry::LeftCoeffFamily(_) | HomBasisEntry::DeltaCoeffFamily(_) => {
                field.dims[1]
            }
        };
    }
    Ok(dim)
}

/// Does every summand of the normalized word lie in the span of the
/// tabulated basis for its bidegree and typing? Only weight ≤ 1 forms are
/// checkable; the single h^{1,1} letter available symbolically is ρ.
pub fn span_contains(nf: &NormalForm) -> Result<bool> {
    let Some((degree, weight)) = nf.0.bidegree()? else {
        return Ok(true); // zero lies in every span
    };
    let Some((src, tgt)) = nf.0.typing()? else {
        // the identity word: degree 0 weight 0 mod-2 table
        return Ok(degree == 0 && weight == 0);
    };
    if weight > 1 {
        return Err(Error::UnsupportedOp(format!(
            "span membership is only defined in weight ≤ 1, got {weight}"
        )));
    }
    let entries = hom_basis_table(src, tgt, degree, weight)?;
    'terms: for term in &nf.0.terms {
        for e in &entries {
            let matched = match e {
                HomBasisEntry::Fixed(f) => f.0.terms.iter().any(|w| w == term),
                HomBasisEntry::LeftCoeffFamily(f) => f.0.terms.iter().any(|w| {
                    let mut expect = vec![Rho];
                    expect.extend_from_slice(&w.0);
                    expect == term.0
                }),
                HomBasisEntry::DeltaCoeffFamily(f) => f.0.terms.iter().any(|w| {
                    let mut expect = vec![Delta, Rho];
                    expect.extend_from_slice(&w.0);
                    expect == term.0
                }),
            };
            if matched {
                continue 'terms;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Convenience: normalize then check span membership.
pub fn normalized_in_span(w: &OpWord) -> Result<bool> {
    span_contains(&op_normalize(w)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{preset_field, PresetKind};

    #[test]
    fn mod2_weight_one_dimensions() {
        // dim [MZ/2, S^{p,1} ∧ MZ/2] over a field with dim kᴹ₁ = 1:
        // p = 0..=5 gives 1, 2, 2, 2, 1, 0.
        let real = preset_field(PresetKind::RealClosed).unwrap();
        use Coefficient::MZ2;
        let dims: Vec<usize> = (0..=5)
            .map(|p| hom_basis_dim(&real, MZ2, MZ2, p, 1).unwrap())
            .collect();
        assert_eq!(dims, vec![1, 2, 2, 2, 1, 0]);
    }

    #[test]
    fn p3_weight1_has_dimension_two() {
        let f5 = preset_field(PresetKind::Finite(5)).unwrap();
        assert_eq!(
            hom_basis_dim(&f5, Coefficient::MZ2, Coefficient::MZ2, 3, 1).unwrap(),
            2
        );
    }

    #[test]
    fn integral_to_mod2_tables() {
        let f5 = preset_field(PresetKind::Finite(5)).unwrap();
        use Coefficient::{MZ, MZ2};
        assert_eq!(hom_basis_dim(&f5, MZ, MZ2, 0, 0).unwrap(), 1, "F2{{pr}}");
        assert_eq!(hom_basis_dim(&f5, MZ, MZ2, 2, 1).unwrap(), 1, "F2{{Sq2 pr}}");
        assert_eq!(hom_basis_dim(&f5, MZ2, MZ, 1, 1).unwrap(), 1, "F2{{d t}}");
        assert_eq!(hom_basis_dim(&f5, MZ, MZ2, 4, 1).unwrap(), 0);
        // local fields have dim kᴹ₁ = 2, so the δφ family has dimension 2
        let l5 = preset_field(PresetKind::Local(5)).unwrap();
        assert_eq!(hom_basis_dim(&l5, MZ2, MZ, 2, 1).unwrap(), 2);
    }

    #[test]
    fn mod2_weight1_p4_is_sq1sq2sq1() {
        // The tabulated generator in degree 4 is Sq¹Sq²Sq¹, whose normal
        // form is Sq³Sq¹.
        let via = op_normalize(&OpWord::from_letters(&[Sq(1), Sq(2), Sq(1)])).unwrap();
        let table = hom_basis_table(Coefficient::MZ2, Coefficient::MZ2, 4, 1).unwrap();
        assert_eq!(table.len(), 1);
        match &table[0] {
            HomBasisEntry::Fixed(f) => assert_eq!(f.0, via.0),
            other => panic!("expected fixed entry, got {other:?}"),
        }
    }

    #[test]
    fn span_membership() {
        // Sq² + ρSq¹ lies in the degree-2 weight-1 span.
        let w = OpWord::sum(&[&[Sq(2)], &[Rho, Sq(1)]]);
        assert!(normalized_in_span(&w).unwrap());
        // τ lies in the degree-0 weight-1 span.
        assert!(normalized_in_span(&OpWord::from_letters(&[Tau])).unwrap());
        // τSq² does not appear in any tabulated basis (degree 2, weight 2
        // would be needed) — the span check refuses weight 2.
        let w2 = OpWord::from_letters(&[Tau, Sq(2)]);
        assert!(normalized_in_span(&w2).is_err());
        // δρ lies in the δφ family.
        assert!(normalized_in_span(&OpWord::from_letters(&[Delta, Rho])).unwrap());
        // δτSq¹ normalizes into the same family.
        assert!(normalized_in_span(&OpWord::from_letters(&[Delta, Tau, Sq(1)])).unwrap());
    }

    #[test]
    fn weight_two_requests_error() {
        assert!(hom_basis_table(Coefficient::MZ2, Coefficient::MZ2, 4, 2).is_err());
    }
}
