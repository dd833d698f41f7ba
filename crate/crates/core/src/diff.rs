//! Numeric assembly of d₁ as block homomorphisms between adjacent E¹-cells,
//! evaluating the symbolic rows through the closed-form Steenrod action and
//! the preset pr/δ data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{pr_mod2, FieldPresentation, IntegralCell, IntegralGroup, MotClass};
use crate::linalg::smith::lattice_contains;
use crate::linalg::{F2Matrix, F2Vec, IntMatrix};
use crate::opalg::{d1_row, d1_symbolic_kgl2, Letter, OpWord, SummandKind};
use crate::pages::{e1_group, Block, BlockData, Component, GroupHom, GroupObject, Spectrum};
use crate::steenrod;

/// Applies a mod-2 operation word to a class, letters right to left.
pub fn eval_word(field: &FieldPresentation, letters: &[Letter], x: &MotClass) -> Result<MotClass> {
    let mut cur = x.clone();
    for l in letters.iter().rev() {
        cur = match l {
            Letter::Tau => field.tau_times(&cur)?,
            Letter::Rho => field.cup(&field.rho_class(), &cur)?,
            Letter::Sq(1) => steenrod::sq1(field, &cur)?,
            Letter::Sq(2) => steenrod::sq2(field, &cur)?,
            Letter::Sq(3) => steenrod::sq3(field, &cur)?,
            other => {
                return Err(Error::UnsupportedOp(format!(
                    "letter {other:?} has no numeric evaluation on h^{{p,q}}"
                )))
            }
        };
    }
    Ok(cur)
}

/// Applies a formal sum of mod-2 words.
pub fn eval_opword(field: &FieldPresentation, op: &OpWord, x: &MotClass) -> Result<MotClass> {
    let Some((d, w)) = op.bidegree()? else {
        return Err(Error::UnsupportedOp(
            "cannot evaluate the zero operation without a target bidegree".into(),
        ));
    };
    let mut out = field.zero_class(x.p + d, x.q + w)?;
    for word in &op.terms {
        let y = eval_word(field, &word.0, x)?;
        out.coords.xor_assign(&y.coords);
    }
    Ok(out)
}

fn summand_kind(spectrum: Spectrum, q: i64, s: i64) -> SummandKind {
    match spectrum {
        Spectrum::KQ if q.rem_euclid(2) == 0 && s == q => SummandKind::TopEvenIntegral {
            q_mod4: q.rem_euclid(4) as u8,
        },
        Spectrum::KQ if q.rem_euclid(2) == 1 && s == q - 1 => SummandKind::TopOdd {
            q_mod4: q.rem_euclid(4) as u8,
        },
        _ => SummandKind::Mod2 {
            s_mod4: s.rem_euclid(4) as u8,
        },
    }
}

/// Evaluates a mod-2 op block between two F2 components.
fn mod2_block(
    field: &FieldPresentation,
    op: &OpWord,
    src_bidegree: (i64, i64),
    src_dim: usize,
    tgt_bidegree: (i64, i64),
    tgt_dim: usize,
) -> Result<F2Matrix> {
    let mut m = F2Matrix::zero(tgt_dim, src_dim);
    for j in 0..src_dim {
        let x = field.basis_class(src_bidegree.0, src_bidegree.1, j)?;
        let y = eval_opword(field, op, &x)?;
        if (y.p, y.q) != tgt_bidegree {
            return Err(Error::Consistency(format!(
                "operation {op} sends {:?} to ({},{}), block expects {:?}",
                src_bidegree, y.p, y.q, tgt_bidegree
            )));
        }
        for i in 0..tgt_dim {
            if y.coords.get(i) {
                m.set(i, j, true);
            }
        }
    }
    Ok(m)
}

/// δ-lift of a mod-2 class into an integral cell: zero when the class is in
/// the image of pr of the degree-below cell; otherwise the unique 2-torsion
/// element when the presentation determines one.
fn delta_lift(
    field: &FieldPresentation,
    w: &MotClass,
    target: &IntegralCell,
) -> Result<Vec<BigInt>> {
    let gens = target.group.generators();
    let mut column = vec![BigInt::from(0); gens];
    if w.is_zero() {
        return Ok(column);
    }
    // ker δ = im(pr: H^{p,q} → h^{p,q}) at the source bidegree.
    let below = field.integral_group(w.p, w.q)?;
    let in_image = match &below {
        IntegralGroup::Zero { .. } | IntegralGroup::Divisible => false,
        IntegralGroup::Cell(cell) => {
            let pr2 = pr_mod2(&cell.pr_matrix);
            let mut cols: Vec<F2Vec> = (0..pr2.cols()).map(|j| pr2.column(j)).collect();
            cols.push(w.coords.clone());
            let with = F2Matrix::from_columns(pr2.rows(), &cols);
            with.rank() == pr2.rank()
        }
    };
    if in_image {
        return Ok(column);
    }
    // The class carries nontrivial 2-torsion into the target group. This is
    // exact only when the target has a single Z/2-part to receive it.
    let even: Vec<usize> = target
        .group
        .torsion
        .iter()
        .enumerate()
        .filter(|(_, d)| *d % BigInt::from(2) == BigInt::from(0))
        .map(|(k, _)| k)
        .collect();
    if even.len() == 1 {
        let k = even[0];
        let d = &target.group.torsion[k];
        column[target.group.free_rank + k] = d / BigInt::from(2);
        return Ok(column);
    }
    Err(Error::UnsupportedOp(format!(
        "δ-lift into H^{{{},{}}} is not determined by the presentation \
         (needs a 2-torsion section)",
        target.p, target.q
    )))
}

/// The d₁ block hom from the cell at (p,q) to the cell at (p-1,q+1).
pub fn d1_matrix(
    spectrum: Spectrum,
    field: &FieldPresentation,
    p: i64,
    q: i64,
) -> Result<GroupHom> {
    if !spectrum.has_differential() {
        return Err(Error::NoDifferential(spectrum.name().into()));
    }
    let source = e1_group(spectrum, field, p, q)?;
    let target = e1_group(spectrum, field, p - 1, q + 1)?;
    let mut blocks = Vec::new();

    for (i, comp) in source.components.iter().enumerate() {
        let s = comp.offset();
        if matches!(comp, Component::Divisible { .. }) {
            continue;
        }
        if spectrum == Spectrum::KGL2 {
            let op = d1_symbolic_kgl2();
            let Component::F2 { bidegree, dim, .. } = comp else {
                return Err(Error::Consistency("KGL2 slices are mod-2".into()));
            };
            if let Some((k, Component::F2 { bidegree: tb, dim: td, .. })) =
                target.component_at_offset(s + 1)
            {
                let m = mod2_block(field, &op, *bidegree, *dim, *tb, *td)?;
                blocks.push((
                    i,
                    k,
                    BlockData {
                        op: op.to_string(),
                        block: Block::F2(m),
                    },
                ));
            }
            continue;
        }

        let row = d1_row(summand_kind(spectrum, q, s))?;
        for (shift, op) in row.components() {
            if op.is_zero() {
                continue;
            }
            let Some((k, tcomp)) = target.component_at_offset(s + shift) else {
                continue;
            };
            let data = match (comp, tcomp) {
                (
                    Component::F2 { bidegree: sb, dim: sd, .. },
                    Component::F2 { bidegree: tb, dim: td, .. },
                ) => {
                    let m = mod2_block(field, op, *sb, *sd, *tb, *td)?;
                    BlockData {
                        op: op.to_string(),
                        block: Block::F2(m),
                    }
                }
                // δ-composed operation into the integral summand
                (
                    Component::F2 { bidegree: sb, dim: sd, .. },
                    Component::Integral { cell, .. },
                ) => {
                    let mut m = IntMatrix::zero(cell.group.generators(), *sd);
                    for j in 0..*sd {
                        let word = op.terms.first().ok_or_else(|| {
                            Error::Consistency("empty δ-block operation".into())
                        })?;
                        let (Some(Letter::Delta), rest) =
                            (word.0.first().copied(), &word.0[1..])
                        else {
                            return Err(Error::Consistency(format!(
                                "mod-2 source into integral target needs a δ-word, got {op}"
                            )));
                        };
                        let x = field.basis_class(sb.0, sb.1, j)?;
                        let w = eval_word(field, rest, &x)?;
                        let col = delta_lift(field, &w, cell)?;
                        for (r, v) in col.into_iter().enumerate() {
                            m.set(r, j, v);
                        }
                    }
                    BlockData {
                        op: op.to_string(),
                        block: Block::F2ToInt(m),
                    }
                }
                // δ-word into a divisible marker: uniquely 2-divisible groups
                // receive no 2-torsion, the block is zero.
                (Component::F2 { .. }, Component::Divisible { .. }) => continue,
                // integral top summand through pr
                (
                    Component::Integral { cell, .. },
                    Component::F2 { bidegree: tb, dim: td, .. },
                ) => {
                    let stripped: Vec<Vec<Letter>> = op
                        .terms
                        .iter()
                        .map(|word| {
                            let (Some(Letter::Pr), head) =
                                (word.0.last().copied(), &word.0[..word.0.len() - 1])
                            else {
                                return Err(Error::Consistency(format!(
                                    "integral source expects pr-composed operations, got {op}"
                                )));
                            };
                            Ok(head.to_vec())
                        })
                        .collect::<Result<_>>()?;
                    let pr2 = pr_mod2(&cell.pr_matrix);
                    let mut m = F2Matrix::zero(*td, cell.group.generators());
                    for g in 0..cell.group.generators() {
                        let red = field.class(cell.p, cell.q, pr2.column(g))?;
                        let mut acc = F2Vec::zero(*td);
                        for letters in &stripped {
                            let y = eval_word(field, letters, &red)?;
                            if (y.p, y.q) != *tb {
                                return Err(Error::Consistency(format!(
                                    "pr-block of {op} lands in ({},{}), expected {tb:?}",
                                    y.p, y.q
                                )));
                            }
                            acc.xor_assign(&y.coords);
                        }
                        for r in 0..*td {
                            if acc.get(r) {
                                m.set(r, g, true);
                            }
                        }
                    }
                    BlockData {
                        op: op.to_string(),
                        block: Block::IntToF2(m),
                    }
                }
                (Component::Integral { .. }, Component::Integral { .. })
                | (Component::Integral { .. }, Component::Divisible { .. }) => {
                    return Err(Error::Consistency(format!(
                        "d₁ has no integral-to-integral component (op {op})"
                    )))
                }
                (Component::Divisible { .. }, _) => unreachable!(),
            };
            blocks.push((i, k, data));
        }
    }
    Ok(GroupHom {
        source,
        target,
        blocks,
    })
}

enum Acc {
    F2(F2Matrix),
    Int(IntMatrix),
}

fn lift01(m: &F2Matrix) -> IntMatrix {
    let mut out = IntMatrix::zero(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m.get(i, j) {
                out.set(i, j, BigInt::from(1));
            }
        }
    }
    out
}

fn add_acc(acc: &mut Option<Acc>, add: Acc) -> Result<()> {
    match (acc.as_mut(), add) {
        (None, a) => *acc = Some(a),
        (Some(Acc::F2(m)), Acc::F2(n)) => {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    if n.get(i, j) {
                        m.set(i, j, m.get(i, j) ^ true);
                    }
                }
            }
        }
        (Some(Acc::Int(m)), Acc::Int(n)) => {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let v = m.get(i, j) + n.get(i, j);
                    m.set(i, j, v);
                }
            }
        }
        _ => {
            return Err(Error::Consistency(
                "mixed block kinds accumulate at one component pair".into(),
            ))
        }
    }
    Ok(())
}

/// Numerically verifies that `second ∘ first = 0` as a map of cells.
pub fn compose_is_zero(second: &GroupHom, first: &GroupHom) -> Result<bool> {
    let mut acc: BTreeMap<(usize, usize), Option<Acc>> = BTreeMap::new();
    for &(i, j, ref b1) in &first.blocks {
        for &(j2, k, ref b2) in &second.blocks {
            if j2 != j {
                continue;
            }
            let composite = match (&b2.block, &b1.block) {
                (Block::F2(m2), Block::F2(m1)) => Acc::F2(m2.mul(m1)),
                (Block::F2(m2), Block::IntToF2(m1)) => Acc::F2(m2.mul(m1)),
                (Block::F2ToInt(m2), Block::F2(m1)) => Acc::Int(m2.mul(&lift01(m1))),
                (Block::F2ToInt(m2), Block::IntToF2(m1)) => Acc::Int(m2.mul(&lift01(m1))),
                (Block::IntToF2(m2), Block::F2ToInt(m1)) => Acc::F2(m2.mul(&pr_mod2(m1))),
                _ => {
                    return Err(Error::Consistency(format!(
                        "middle component kinds disagree in composition {} ∘ {}",
                        b2.op, b1.op
                    )))
                }
            };
            add_acc(acc.entry((i, k)).or_insert(None), composite)?;
        }
    }
    for ((_, k), a) in acc {
        match a {
            None => {}
            Some(Acc::F2(m)) => {
                if !m.is_zero() {
                    return Ok(false);
                }
            }
            Some(Acc::Int(m)) => {
                let rel = match &second.target.components[k] {
                    Component::Integral { cell, .. } => cell.group.relations(),
                    _ => {
                        return Err(Error::Consistency(
                            "integer accumulation at a mod-2 component".into(),
                        ))
                    }
                };
                if !lattice_contains(&rel, &m) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Spectral-sequence bookkeeping for a window of E¹-cells with their d₁
/// homs. Every composable pair is checked to compose to zero at build time.
#[derive(Clone, Debug)]
pub struct PageRegion {
    pub spectrum: Spectrum,
    pub field_name: String,
    pub pmin: i64,
    pub pmax: i64,
    pub qmax: i64,
    pub cells: BTreeMap<(i64, i64), GroupObject>,
    pub homs: BTreeMap<(i64, i64), GroupHom>,
}

/// Builds all cells and d₁ homs over the window p ∈ [pmin, pmax],
/// q ∈ [0, qmax]. Cells are independent and evaluated concurrently.
pub fn d1_region(
    spectrum: Spectrum,
    field: &FieldPresentation,
    pmin: i64,
    pmax: i64,
    qmax: i64,
) -> Result<PageRegion> {
    if pmin > pmax || qmax < 0 {
        return Ok(PageRegion {
            spectrum,
            field_name: field.name.clone(),
            pmin,
            pmax,
            qmax,
            cells: BTreeMap::new(),
            homs: BTreeMap::new(),
        });
    }
    let coords: Vec<(i64, i64)> = (pmin..=pmax)
        .flat_map(|p| (0..=qmax).map(move |q| (p, q)))
        .collect();
    let cells: BTreeMap<(i64, i64), GroupObject> = coords
        .par_iter()
        .map(|&(p, q)| Ok(((p, q), e1_group(spectrum, field, p, q)?)))
        .collect::<Result<_>>()?;
    // Display-only spectra (KGL, KGL_{hC2}) get bare cells.
    let homs: BTreeMap<(i64, i64), GroupHom> = if spectrum.has_differential() {
        coords
            .par_iter()
            .filter(|&&(p, q)| q < qmax && p > pmin)
            .map(|&(p, q)| Ok(((p, q), d1_matrix(spectrum, field, p, q)?)))
            .collect::<Result<_>>()?
    } else {
        BTreeMap::new()
    };
    for (&(p, q), first) in &homs {
        if let Some(second) = homs.get(&(p - 1, q + 1)) {
            if !compose_is_zero(second, first)? {
                return Err(Error::Consistency(format!(
                    "d₁∘d₁ ≠ 0 out of cell ({p},{q}) for {}",
                    spectrum.name()
                )));
            }
        }
    }
    Ok(PageRegion {
        spectrum,
        field_name: field.name.clone(),
        pmin,
        pmax,
        qmax,
        cells,
        homs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{preset_field, PresetKind};

    #[test]
    fn kgl2_differential_on_tau_squared_is_rho_cubed() {
        // τ² sits in the cell (4,2) of the KGL/2 page; d₁ = Q₁ sends it to
        // ρ³ ∈ h^{3,3} in the cell (3,3).
        let real = preset_field(PresetKind::RealClosed).unwrap();
        let hom = d1_matrix(Spectrum::KGL2, &real, 4, 2).unwrap();
        assert_eq!(hom.blocks.len(), 1);
        let (_, _, data) = &hom.blocks[0];
        let Block::F2(m) = &data.block else {
            panic!("expected mod-2 block")
        };
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert!(m.get(0, 0), "d₁(τ²) = ρ³ must be nonzero over the reals");

        // and over F₅ (ρ = 0) the same block vanishes
        let f5 = preset_field(PresetKind::Finite(5)).unwrap();
        let hom5 = d1_matrix(Spectrum::KGL2, &f5, 4, 2).unwrap();
        assert!(hom5.blocks.iter().all(|(_, _, d)| match &d.block {
            Block::F2(m) => m.is_zero(),
            _ => false,
        }));
    }

    #[test]
    fn kt_tau_block_at_2_0() {
        // (p,q) = (2,0): the lone class 1 ∈ h^{0,0} maps by τ into h^{0,1}.
        let f = preset_field(PresetKind::Finite(5)).unwrap();
        let hom = d1_matrix(Spectrum::KT, &f, 2, 0).unwrap();
        let tau_blocks: Vec<_> = hom
            .blocks
            .iter()
            .filter(|(_, _, d)| d.op == "t")
            .collect();
        assert_eq!(tau_blocks.len(), 1);
        let Block::F2(m) = &tau_blocks[0].2.block else {
            panic!()
        };
        assert!(m.get(0, 0));
    }

    #[test]
    fn kq_top_block_at_2_2() {
        // Source (2,2) has the integral top H^{2,2}; the τ∘pr block into
        // h^{2,3} is the only nonzero entry on a generator with pr-image c.
        let l5 = preset_field(PresetKind::Local(5)).unwrap();
        let hom = d1_matrix(Spectrum::KQ, &l5, 2, 2).unwrap();
        let top_blocks: Vec<_> = hom
            .blocks
            .iter()
            .filter(|(_, _, d)| matches!(d.block, Block::IntToF2(_)))
            .collect();
        assert!(!top_blocks.is_empty());
        let tau_pr: Vec<_> = top_blocks
            .iter()
            .filter(|(_, _, d)| d.op.contains("t pr"))
            .collect();
        assert_eq!(tau_pr.len(), 1);
        let Block::IntToF2(m) = &tau_pr[0].2.block else {
            panic!()
        };
        assert!(!m.is_zero(), "τ∘pr hits τc ≠ 0");
    }

    #[test]
    fn kt_blocks_are_periodic_in_p() {
        let real = preset_field(PresetKind::RealClosed).unwrap();
        for q in 0..=4i64 {
            for p in -2..=2i64 {
                let a = d1_matrix(Spectrum::KT, &real, p, q).unwrap();
                let b = d1_matrix(Spectrum::KT, &real, p + 4, q).unwrap();
                assert_eq!(a.blocks.len(), b.blocks.len());
                for ((i1, k1, d1), (i2, k2, d2)) in a.blocks.iter().zip(&b.blocks) {
                    assert_eq!((i1, k1), (i2, k2));
                    assert_eq!(d1.op, d2.op);
                    match (&d1.block, &d2.block) {
                        (Block::F2(m1), Block::F2(m2)) => assert_eq!(m1, m2),
                        _ => panic!("KT blocks are mod-2"),
                    }
                }
            }
        }
    }

    #[test]
    fn d1_squares_to_zero_numerically() {
        // KT and KGL/2 need no integral data; KQ pages require the preset to
        // supply integral cells, so those run on finite and local fields.
        for kind in [
            PresetKind::QuadraticallyClosed,
            PresetKind::RealClosed,
            PresetKind::Finite(5),
            PresetKind::Finite(7),
            PresetKind::Local(5),
            PresetKind::Local(7),
        ] {
            let f = preset_field(kind).unwrap();
            d1_region(Spectrum::KT, &f, -4, 4, 6).unwrap();
            d1_region(Spectrum::KGL2, &f, -4, 4, 6).unwrap();
        }
        for kind in [
            PresetKind::Finite(5),
            PresetKind::Finite(7),
            PresetKind::Local(5),
            PresetKind::Local(7),
        ] {
            let f = preset_field(kind).unwrap();
            d1_region(Spectrum::KQ, &f, -4, 4, 6).unwrap();
        }
    }

    #[test]
    fn kq_without_integral_data_names_the_missing_cell() {
        let f = preset_field(PresetKind::QuadraticallyClosed).unwrap();
        let err = d1_region(Spectrum::KQ, &f, -4, 4, 6).unwrap_err();
        assert!(matches!(err, Error::MissingIntegralCell { .. }), "{err}");
    }

    #[test]
    fn quadratically_closed_has_only_tau_blocks() {
        // With ρ = 0 every Sq-formula vanishes on τⁿ classes; only τ-blocks
        // survive.
        let f = preset_field(PresetKind::QuadraticallyClosed).unwrap();
        let region = d1_region(Spectrum::KT, &f, -4, 4, 6).unwrap();
        for hom in region.homs.values() {
            for (_, _, d) in &hom.blocks {
                if let Block::F2(m) = &d.block {
                    if !m.is_zero() {
                        assert_eq!(d.op, "t", "unexpected nonzero block {}", d.op);
                    }
                }
            }
        }
    }

    #[test]
    fn empty_window_is_empty() {
        let f = preset_field(PresetKind::Finite(5)).unwrap();
        let region = d1_region(Spectrum::KT, &f, 3, 2, 4).unwrap();
        assert!(region.cells.is_empty());
    }

    #[test]
    fn no_differential_for_display_spectra() {
        let f = preset_field(PresetKind::Finite(5)).unwrap();
        assert!(matches!(
            d1_matrix(Spectrum::KGL, &f, 0, 0),
            Err(Error::NoDifferential(_))
        ));
        assert!(matches!(
            d1_matrix(Spectrum::KGLhC2, &f, 0, 0),
            Err(Error::NoDifferential(_))
        ));
    }
}
