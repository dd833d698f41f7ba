//! Slice decompositions as summand lists, and E¹-cells realized as concrete
//! group objects over a field.
//!
//! Summands of the q-th slice are suspensions Σ^{d,q} of MZ or MZ/2; the
//! engine indexes a summand by its even offset s = d - q relative to
//! S^{q,q}, so differentials can target offsets s+2, s, s-2 by index
//! arithmetic. The cell at (p,q) collects π_{p,0} of every summand:
//! h^{d-p,q} for MZ/2, H^{d-p,q} for MZ.

use std::ops::RangeInclusive;

use crate::error::Result;
use crate::field::{FieldPresentation, IntegralCell, IntegralGroup};
use crate::linalg::{F2Matrix, IntMatrix};
use crate::opalg::Coefficient;

/// The motivic spectra whose slice pages this library materializes.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Spectrum {
    /// Higher Witt theory.
    KT,
    /// Hermitian K-theory.
    KQ,
    /// Algebraic K-theory (display only; no differential is defined).
    KGL,
    /// Mod-2 algebraic K-theory.
    KGL2,
    /// Homotopy orbit K-theory (display only).
    KGLhC2,
}

impl Spectrum {
    pub fn parse(s: &str) -> Option<Spectrum> {
        match s.to_ascii_uppercase().as_str() {
            "KT" => Some(Spectrum::KT),
            "KQ" => Some(Spectrum::KQ),
            "KGL" => Some(Spectrum::KGL),
            "KGL2" | "KGL/2" => Some(Spectrum::KGL2),
            "KGLHC2" | "KGL_HC2" => Some(Spectrum::KGLhC2),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Spectrum::KT => "KT",
            Spectrum::KQ => "KQ",
            Spectrum::KGL => "KGL",
            Spectrum::KGL2 => "KGL2",
            Spectrum::KGLhC2 => "KGLhC2",
        }
    }

    /// Whether a d₁ formula exists for this spectrum.
    pub fn has_differential(&self) -> bool {
        matches!(self, Spectrum::KT | Spectrum::KQ | Spectrum::KGL2)
    }
}

/// One wedge summand Σ^{d,q} of a slice.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SummandDesc {
    pub coeff: Coefficient,
    /// Suspension bidegree (d, q).
    pub suspension: (i64, i64),
}

/// Suspension degree of the integral summand, when the slice has one.
fn integral_suspension(spectrum: Spectrum, q: i64) -> Option<i64> {
    match spectrum {
        Spectrum::KGL => Some(2 * q),
        Spectrum::KQ | Spectrum::KGLhC2 if q.rem_euclid(2) == 0 => Some(2 * q),
        _ => None,
    }
}

/// Mod-2 suspension degrees of the slice intersected with a degree range.
fn mod2_suspensions(spectrum: Spectrum, q: i64, range: RangeInclusive<i64>) -> Vec<i64> {
    let (lo, hi) = (*range.start(), *range.end());
    let mut out = Vec::new();
    let mut push_matching = |parity: i64, min: Option<i64>, max: Option<i64>| {
        for d in lo..=hi {
            if d.rem_euclid(2) != parity.rem_euclid(2) {
                continue;
            }
            if min.is_some_and(|m| d < m) || max.is_some_and(|m| d > m) {
                continue;
            }
            out.push(d);
        }
    };
    match spectrum {
        Spectrum::KT => push_matching(q, None, None),
        Spectrum::KQ => {
            if q.rem_euclid(2) == 0 {
                push_matching(q, None, Some(2 * q - 2));
            } else {
                push_matching(q, None, Some(2 * q - 1));
            }
        }
        Spectrum::KGL => {}
        Spectrum::KGL2 => push_matching(0, Some(2 * q), Some(2 * q)),
        Spectrum::KGLhC2 => {
            // the mod-2 suspensions sit at 2(i+q)+1 for q even and 2(i+q)
            // for q odd, i ≥ 0: opposite parity to q in both cases
            push_matching(q + 1, Some(2 * q + if q.rem_euclid(2) == 0 { 1 } else { 0 }), None);
        }
    }
    out
}

/// The slice summand list, truncated to suspension degrees within `range`.
pub fn slice_summands(
    spectrum: Spectrum,
    q: i64,
    range: RangeInclusive<i64>,
) -> Vec<SummandDesc> {
    let mut out = Vec::new();
    if let Some(d) = integral_suspension(spectrum, q) {
        if range.contains(&d) {
            out.push(SummandDesc {
                coeff: Coefficient::MZ,
                suspension: (d, q),
            });
        }
    }
    for d in mod2_suspensions(spectrum, q, range) {
        out.push(SummandDesc {
            coeff: Coefficient::MZ2,
            suspension: (d, q),
        });
    }
    out.sort_by_key(|s| std::cmp::Reverse(s.suspension.0));
    out
}

/// One component of an E¹-cell, tagged with the offset s = d - q of the
/// summand it came from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Component {
    /// h^{a,b} of positive dimension.
    F2 {
        offset: i64,
        bidegree: (i64, i64),
        dim: usize,
        labels: Vec<String>,
    },
    /// A supplied integral cell H^{a,b} with a nontrivial group (possibly
    /// with a uniquely 2-divisible tail).
    Integral {
        offset: i64,
        bidegree: (i64, i64),
        cell: IntegralCell,
    },
    /// A purely uniquely-2-divisible marker, kept for display.
    Divisible { offset: i64, bidegree: (i64, i64) },
}

impl Component {
    pub fn offset(&self) -> i64 {
        match self {
            Component::F2 { offset, .. }
            | Component::Integral { offset, .. }
            | Component::Divisible { offset, .. } => *offset,
        }
    }

    pub fn bidegree(&self) -> (i64, i64) {
        match self {
            Component::F2 { bidegree, .. }
            | Component::Integral { bidegree, .. }
            | Component::Divisible { bidegree, .. } => *bidegree,
        }
    }

    /// Short display label, e.g. `h^{1,3}`, `H^{2,2}`, `H^{0,4} (div)`.
    pub fn label(&self) -> String {
        let (a, b) = self.bidegree();
        match self {
            Component::F2 { .. } => format!("h^{{{a},{b}}}"),
            Component::Integral { cell, .. } => {
                if cell.divisible_part {
                    format!("H^{{{a},{b}}}*")
                } else {
                    format!("H^{{{a},{b}}}")
                }
            }
            Component::Divisible { .. } => format!("H^{{{a},{b}}} (div)"),
        }
    }
}

/// A finite direct sum of GF(2)-spaces, finitely generated abelian groups
/// and symbolic-divisible markers: the value of an E¹-cell. Components are
/// ordered by descending summand offset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupObject {
    pub spectrum: Spectrum,
    pub p: i64,
    pub q: i64,
    pub components: Vec<Component>,
    /// True when some integral summand vanished by the Beilinson-Soulé flag
    /// rather than by data or a general theorem.
    pub conditional: bool,
}

impl GroupObject {
    pub fn empty(spectrum: Spectrum, p: i64, q: i64) -> Self {
        GroupObject {
            spectrum,
            p,
            q,
            components: Vec::new(),
            conditional: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Total GF(2)-dimension of the mod-2 components.
    pub fn f2_dim(&self) -> usize {
        self.components
            .iter()
            .map(|c| match c {
                Component::F2 { dim, .. } => *dim,
                _ => 0,
            })
            .sum()
    }

    pub fn component_at_offset(&self, s: i64) -> Option<(usize, &Component)> {
        self.components
            .iter()
            .enumerate()
            .find(|(_, c)| c.offset() == s)
    }
}

/// Builds the cell π_{p,0} s_q(spectrum) over the field.
pub fn e1_group(
    spectrum: Spectrum,
    field: &FieldPresentation,
    p: i64,
    q: i64,
) -> Result<GroupObject> {
    let mut components = Vec::new();
    let mut conditional = false;
    if q >= 0 {
        if let Some(d) = integral_suspension(spectrum, q) {
            let (a, b) = (d - p, q);
            match field.integral_group(a, b)? {
                IntegralGroup::Zero { via_flag } => conditional |= via_flag,
                IntegralGroup::Divisible => components.push(Component::Divisible {
                    offset: d - q,
                    bidegree: (a, b),
                }),
                IntegralGroup::Cell(cell) => {
                    if cell.group.is_trivial() {
                        if cell.divisible_part {
                            components.push(Component::Divisible {
                                offset: d - q,
                                bidegree: (a, b),
                            });
                        }
                    } else {
                        components.push(Component::Integral {
                            offset: d - q,
                            bidegree: (a, b),
                            cell,
                        });
                    }
                }
            }
        }
        // Mod-2 summands contribute h^{d-p,q}, nonzero only for
        // 0 ≤ d-p ≤ q, i.e. suspension degrees in [p, p+q].
        for d in mod2_suspensions(spectrum, q, p..=p + q) {
            let (a, b) = (d - p, q);
            let dim = field.h_dim(a, b)?;
            if dim == 0 {
                continue;
            }
            let labels = (0..dim)
                .map(|i| {
                    let cls = field.basis_class(a, b, i)?;
                    Ok(field.class_label(&cls))
                })
                .collect::<Result<Vec<_>>>()?;
            components.push(Component::F2 {
                offset: d - q,
                bidegree: (a, b),
                dim,
                labels,
            });
        }
    }
    components.sort_by_key(|c| std::cmp::Reverse(c.offset()));
    Ok(GroupObject {
        spectrum,
        p,
        q,
        components,
        conditional,
    })
}

/// One block of a homomorphism between cells.
#[derive(Clone, Debug)]
pub enum Block {
    /// Mod-2 to mod-2: target dim × source dim.
    F2(F2Matrix),
    /// Integral source through pr, mod-2 values: target dim × source generators.
    IntToF2(F2Matrix),
    /// Mod-2 source into an integral cell (a δ-lift): target generators × source dim.
    F2ToInt(IntMatrix),
}

/// A block together with the symbolic operation it evaluates.
#[derive(Clone, Debug)]
pub struct BlockData {
    pub op: String,
    pub block: Block,
}

/// A homomorphism between cells, stored blockwise by component indices.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: GroupObject,
    pub target: GroupObject,
    pub blocks: Vec<(usize, usize, BlockData)>,
}

impl GroupHom {
    pub fn zero(source: GroupObject, target: GroupObject) -> Self {
        GroupHom {
            source,
            target,
            blocks: Vec::new(),
        }
    }
}
