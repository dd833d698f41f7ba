//! Field presentations: truncated mod-2 Milnor K-theory rings with the class
//! of -1, optional integral motivic cohomology data, and the derived bigraded
//! mod-2 motivic cohomology ring h^{p,q}.
//!
//! For a field, h^{p,q} = τ^{q-p}·kᴹ_p when 0 ≤ p ≤ q and vanishes
//! otherwise, so the whole bigraded ring is determined by the Milnor ring
//! data. Fields are data, not symbols: presets ship validated structure
//! constants whose correctness is established by independent brute-force
//! oracles in the test suite.

mod document;
mod presets;

pub use document::{emit_document, load_field_json};
pub use presets::{preset_field, standard_presets, PresetKind, DEFAULT_TRUNCATION};

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{F2Matrix, F2Vec, FgAbGroup, IntMatrix};

/// Bilinear multiplication table kᴹ_a ⊗ kᴹ_b → kᴹ_{a+b} on basis elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultTable {
    pub rows: usize,
    pub cols: usize,
    /// entries[i * cols + j] = coordinates of e_i · e_j in the target basis.
    pub entries: Vec<F2Vec>,
}

impl MultTable {
    pub fn product(&self, i: usize, j: usize) -> &F2Vec {
        &self.entries[i * self.cols + j]
    }
}

/// An integral motivic cohomology cell H^{p,q} supplied as data: the group,
/// its mod-2 reduction onto h^{p,q}, and a marker for a uniquely 2-divisible
/// part (which contributes zero to every map to or from bounded 2-torsion).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegralCell {
    pub p: i64,
    pub q: i64,
    pub group: FgAbGroup,
    /// dims[p] × generators, entries meaningful mod 2.
    pub pr_matrix: IntMatrix,
    pub divisible_part: bool,
}

/// Resolution of an integral cell request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegralGroup {
    /// Trivial group; `via_flag` records a vanishing that rests on the
    /// Beilinson-Soulé flag rather than supplied data or a general theorem.
    Zero { via_flag: bool },
    /// Uniquely 2-divisible: zero for every mod-2 purpose, kept for display.
    Divisible,
    Cell(IntegralCell),
}

/// A truncated mod-2 Milnor K-theory presentation of a field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldPresentation {
    pub name: String,
    /// Maximum Milnor degree held by the presentation.
    pub truncation: i64,
    /// dims[n] = GF(2)-dimension of kᴹ_n, for 0 ≤ n ≤ truncation.
    pub dims: Vec<usize>,
    pub basis_labels: Vec<Vec<String>>,
    /// Coordinates of ρ = [-1] in the degree-1 basis.
    pub rho: F2Vec,
    /// Tables for degree pairs (a, b) with a, b ≥ 1 and a+b ≤ truncation;
    /// omitted whenever one of the three dimensions involved is zero.
    pub mult: BTreeMap<(usize, usize), MultTable>,
    pub integral_cells: BTreeMap<(i64, i64), IntegralCell>,
    pub beilinson_soule: bool,
    pub zero_cells: BTreeSet<(i64, i64)>,
}

/// An element of h^{p,q}, stored as its bidegree plus coordinates in the
/// degree-p Milnor basis; the τ^{q-p} factor is implicit in the bidegree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MotClass {
    pub p: i64,
    pub q: i64,
    pub coords: F2Vec,
}

impl MotClass {
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
}

impl FieldPresentation {
    /// Dimension of h^{p,q}. Zero outside 0 ≤ p ≤ q; weights beyond the
    /// truncation are hard errors rather than silent zeros.
    pub fn h_dim(&self, p: i64, q: i64) -> Result<usize> {
        if q > self.truncation {
            return Err(Error::TruncationExceeded {
                q,
                max: self.truncation,
            });
        }
        if p < 0 || q < 0 || p > q {
            return Ok(0);
        }
        Ok(self.dims[p as usize])
    }

    pub fn zero_class(&self, p: i64, q: i64) -> Result<MotClass> {
        Ok(MotClass {
            p,
            q,
            coords: F2Vec::zero(self.h_dim(p, q)?),
        })
    }

    pub fn class(&self, p: i64, q: i64, coords: F2Vec) -> Result<MotClass> {
        let dim = self.h_dim(p, q)?;
        if coords.len() != dim {
            return Err(Error::ShapeMismatch(format!(
                "class in h^{{{p},{q}}} needs {dim} coordinates, got {}",
                coords.len()
            )));
        }
        Ok(MotClass { p, q, coords })
    }

    /// Basis class e_i of h^{p,q}.
    pub fn basis_class(&self, p: i64, q: i64, i: usize) -> Result<MotClass> {
        let dim = self.h_dim(p, q)?;
        let mut coords = F2Vec::zero(dim);
        coords.set(i, true);
        Ok(MotClass { p, q, coords })
    }

    /// τ ∈ h^{0,1}.
    pub fn tau(&self) -> MotClass {
        let mut coords = F2Vec::zero(1);
        coords.set(0, true);
        MotClass { p: 0, q: 1, coords }
    }

    /// ρ = [-1] ∈ h^{1,1}.
    pub fn rho_class(&self) -> MotClass {
        MotClass {
            p: 1,
            q: 1,
            coords: self.rho.clone(),
        }
    }

    /// Product of Milnor coordinate vectors in degrees a and b.
    fn milnor_product(&self, a: usize, b: usize, x: &F2Vec, y: &F2Vec) -> Result<F2Vec> {
        let target = a + b;
        if target as i64 > self.truncation {
            return Err(Error::TruncationExceeded {
                q: target as i64,
                max: self.truncation,
            });
        }
        let tdim = self.dims[target];
        let mut out = F2Vec::zero(tdim);
        if tdim == 0 || x.is_zero() || y.is_zero() {
            return Ok(out);
        }
        if a == 0 {
            if x.get(0) {
                out = y.clone();
            }
            return Ok(out);
        }
        if b == 0 {
            if y.get(0) {
                out = x.clone();
            }
            return Ok(out);
        }
        let table = self.mult.get(&(a, b)).ok_or_else(|| {
            Error::Schema(format!("missing multiplication table for degrees ({a},{b})"))
        })?;
        for i in 0..self.dims[a] {
            if !x.get(i) {
                continue;
            }
            for j in 0..self.dims[b] {
                if y.get(j) {
                    out.xor_assign(table.product(i, j));
                }
            }
        }
        Ok(out)
    }

    /// Cup product. τ-powers add into the bidegree; Milnor parts multiply by
    /// the structure constants.
    pub fn cup(&self, x: &MotClass, y: &MotClass) -> Result<MotClass> {
        let p = x.p + y.p;
        let q = x.q + y.q;
        if x.p < 0 || y.p < 0 || x.p > x.q || y.p > y.q {
            return self.zero_class(p, q);
        }
        let coords = self.milnor_product(x.p as usize, y.p as usize, &x.coords, &y.coords)?;
        self.class(p, q, coords)
    }

    /// ρ^k · x, with the result in bidegree (p+k, q+k).
    pub fn rho_power_times(&self, k: usize, x: &MotClass) -> Result<MotClass> {
        let mut acc = x.clone();
        for _ in 0..k {
            acc = self.cup(&self.rho_class(), &acc)?;
        }
        Ok(acc)
    }

    /// τ · x, raising only the weight.
    pub fn tau_times(&self, x: &MotClass) -> Result<MotClass> {
        self.cup(&self.tau(), x)
    }

    /// Resolves the integral motivic cohomology group H^{a,b} from supplied
    /// cells, flags and the standard vanishing ranges.
    pub fn integral_group(&self, a: i64, b: i64) -> Result<IntegralGroup> {
        if a == 0 && b == 0 {
            // H^{0,0} = Z with the canonical reduction onto kᴹ_0.
            return Ok(IntegralGroup::Cell(IntegralCell {
                p: 0,
                q: 0,
                group: FgAbGroup::free(1),
                pr_matrix: IntMatrix::from_i64(1, 1, &[&[1]]),
                divisible_part: false,
            }));
        }
        if b <= 0 {
            // negative weights vanish; weight zero is concentrated in (0,0)
            return Ok(IntegralGroup::Zero { via_flag: false });
        }
        if let Some(cell) = self.integral_cells.get(&(a, b)) {
            return Ok(IntegralGroup::Cell(cell.clone()));
        }
        if self.zero_cells.contains(&(a, b)) {
            return Ok(IntegralGroup::Zero { via_flag: false });
        }
        if a > b {
            // motivic cohomology of a field vanishes above the diagonal
            return Ok(IntegralGroup::Zero { via_flag: false });
        }
        if a < 0 {
            return if self.beilinson_soule {
                Ok(IntegralGroup::Zero { via_flag: true })
            } else {
                Ok(IntegralGroup::Divisible)
            };
        }
        if a == 0 {
            // H^{0,q}, q > 0 is uniquely divisible
            return Ok(IntegralGroup::Divisible);
        }
        Err(Error::MissingIntegralCell { p: a, q: b })
    }

    /// Render a display label for a class; basis combinations are joined
    /// with `+`, the τ-power prefix comes from the bidegree.
    pub fn class_label(&self, x: &MotClass) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let n = x.q - x.p;
        let prefix = match n {
            0 => String::new(),
            1 => "t·".to_string(),
            _ => format!("t^{n}·"),
        };
        let terms: Vec<String> = x
            .coords
            .support()
            .iter()
            .map(|&i| format!("{prefix}{}", self.basis_labels[x.p as usize][i]))
            .collect();
        terms.join(" + ")
    }

    /// Full validation of the presentation axioms. Violations are rejected
    /// with a message naming the failing basis pair or triple.
    pub fn validate(&self) -> Result<()> {
        if self.truncation < 2 {
            return Err(Error::Schema(format!(
                "truncation {} is too small (need at least 2)",
                self.truncation
            )));
        }
        let n = self.truncation as usize;
        if self.dims.len() != n + 1 {
            return Err(Error::Schema(format!(
                "dims has length {}, expected truncation+1 = {}",
                self.dims.len(),
                n + 1
            )));
        }
        if self.dims[0] != 1 {
            return Err(Error::Schema("dims[0] must be 1 (kᴹ_0 = F₂)".into()));
        }
        if self.basis_labels.len() != n + 1 {
            return Err(Error::Schema("basis label list length mismatch".into()));
        }
        for (d, labels) in self.basis_labels.iter().enumerate() {
            if labels.len() != self.dims[d] {
                return Err(Error::Schema(format!(
                    "degree {d} has {} labels for dimension {}",
                    labels.len(),
                    self.dims[d]
                )));
            }
        }
        if self.rho.len() != self.dims[1] {
            return Err(Error::Schema(format!(
                "rho has {} coordinates, kᴹ_1 has dimension {}",
                self.rho.len(),
                self.dims[1]
            )));
        }

        // Table presence and shapes.
        for a in 1..=n {
            for b in 1..=n.saturating_sub(a) {
                let needed = self.dims[a] > 0 && self.dims[b] > 0 && self.dims[a + b] > 0;
                match self.mult.get(&(a, b)) {
                    Some(t) => {
                        if !needed {
                            return Err(Error::Schema(format!(
                                "superfluous multiplication table for degrees ({a},{b})"
                            )));
                        }
                        if t.rows != self.dims[a] || t.cols != self.dims[b] {
                            return Err(Error::Schema(format!(
                                "table ({a},{b}) has shape {}x{}, expected {}x{}",
                                t.rows, t.cols, self.dims[a], self.dims[b]
                            )));
                        }
                        for e in &t.entries {
                            if e.len() != self.dims[a + b] {
                                return Err(Error::Schema(format!(
                                    "table ({a},{b}) entry has wrong target dimension"
                                )));
                            }
                        }
                    }
                    None => {
                        if needed {
                            return Err(Error::Schema(format!(
                                "missing multiplication table for degrees ({a},{b})"
                            )));
                        }
                    }
                }
            }
        }

        // Commutativity on basis pairs.
        for (&(a, b), t) in &self.mult {
            let Some(t_rev) = self.mult.get(&(b, a)) else {
                return Err(Error::Schema(format!(
                    "table ({a},{b}) present but ({b},{a}) missing"
                )));
            };
            for i in 0..t.rows {
                for j in 0..t.cols {
                    if t.product(i, j) != t_rev.product(j, i) {
                        return Err(Error::Axiom(format!(
                            "commutativity fails on basis pair (deg {a} #{i}, deg {b} #{j})"
                        )));
                    }
                }
            }
        }

        // Associativity on basis triples within the truncation.
        for a in 1..=n {
            for b in 1..=n.saturating_sub(a) {
                for c in 1..=n.saturating_sub(a + b) {
                    if self.dims[a] == 0 || self.dims[b] == 0 || self.dims[c] == 0 {
                        continue;
                    }
                    for i in 0..self.dims[a] {
                        for j in 0..self.dims[b] {
                            for k in 0..self.dims[c] {
                                let ei = basis_vec(self.dims[a], i);
                                let ej = basis_vec(self.dims[b], j);
                                let ek = basis_vec(self.dims[c], k);
                                let left = self.milnor_product(
                                    a + b,
                                    c,
                                    &self.milnor_product(a, b, &ei, &ej)?,
                                    &ek,
                                )?;
                                let right = self.milnor_product(
                                    a,
                                    b + c,
                                    &ei,
                                    &self.milnor_product(b, c, &ej, &ek)?,
                                )?;
                                if left != right {
                                    return Err(Error::Axiom(format!(
                                        "associativity fails on basis triple \
                                         (deg {a} #{i}, deg {b} #{j}, deg {c} #{k})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }

        // x·x = ρ·x for every degree-1 basis element (mod-2 Steinberg).
        if self.dims[1] > 0 && n >= 2 && self.dims[2] > 0 {
            for i in 0..self.dims[1] {
                let ei = basis_vec(self.dims[1], i);
                let square = self.milnor_product(1, 1, &ei, &ei)?;
                let rho_x = self.milnor_product(1, 1, &self.rho, &ei)?;
                if square != rho_x {
                    return Err(Error::Axiom(format!(
                        "x·x = ρ·x fails on degree-1 basis element #{i} \
                         ({})",
                        self.basis_labels[1][i]
                    )));
                }
            }
        }

        // Integral cells: reduction shapes, torsion compatibility and
        // surjectivity onto the diagonal (the Milnor conjecture for the field).
        for (&(p, q), cell) in &self.integral_cells {
            if p != cell.p || q != cell.q {
                return Err(Error::Schema("integral cell key/bidegree mismatch".into()));
            }
            if !(0 <= p && p <= q && q <= self.truncation) {
                return Err(Error::Schema(format!(
                    "integral cell H^{{{p},{q}}} lies outside the presented range"
                )));
            }
            let hdim = self.dims[p as usize];
            let gens = cell.group.generators();
            if cell.pr_matrix.rows() != hdim || cell.pr_matrix.cols() != gens {
                return Err(Error::Schema(format!(
                    "pr matrix of H^{{{p},{q}}} has shape {}x{}, expected {}x{}",
                    cell.pr_matrix.rows(),
                    cell.pr_matrix.cols(),
                    hdim,
                    gens
                )));
            }
            let two = BigInt::from(2);
            for (k, d) in cell.group.torsion.iter().enumerate() {
                if d.is_odd() {
                    let col = cell.group.free_rank + k;
                    for r in 0..hdim {
                        if cell.pr_matrix.get(r, col).mod_floor(&two) != BigInt::zero() {
                            return Err(Error::Schema(format!(
                                "pr of H^{{{p},{q}}} is nonzero mod 2 on an odd-torsion generator"
                            )));
                        }
                    }
                }
            }
            if p == q {
                let pr2 = pr_mod2(&cell.pr_matrix);
                if pr2.rank() != hdim {
                    return Err(Error::Axiom(format!(
                        "pr of the diagonal cell H^{{{p},{q}}} is not surjective onto kᴹ_{p}"
                    )));
                }
            }
        }
        for &(p, q) in &self.zero_cells {
            if self.integral_cells.contains_key(&(p, q)) {
                return Err(Error::Schema(format!(
                    "H^{{{p},{q}}} is listed both as a cell and as zero"
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn basis_vec(dim: usize, i: usize) -> F2Vec {
    let mut v = F2Vec::zero(dim);
    v.set(i, true);
    v
}

/// Mod-2 reduction of an integer matrix.
pub fn pr_mod2(m: &IntMatrix) -> F2Matrix {
    let mut out = F2Matrix::zero(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m.get(i, j).is_odd() {
                out.set(i, j, true);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::presets::{preset_field, PresetKind};

    #[test]
    fn presets_validate() {
        for kind in [
            PresetKind::QuadraticallyClosed,
            PresetKind::RealClosed,
            PresetKind::Finite(5),
            PresetKind::Finite(7),
            PresetKind::Finite(9),
            PresetKind::Local(5),
            PresetKind::Local(7),
        ] {
            let f = preset_field(kind).unwrap();
            f.validate().unwrap();
        }
    }

    #[test]
    fn h_dim_examples() {
        let real = preset_field(PresetKind::RealClosed).unwrap();
        assert_eq!(real.h_dim(2, 5).unwrap(), 1);
        assert_eq!(real.h_dim(3, 1).unwrap(), 0);
        let f5 = preset_field(PresetKind::Finite(5)).unwrap();
        assert_eq!(f5.h_dim(2, 4).unwrap(), 0);
        assert!(f5.h_dim(0, 100).is_err());
    }

    #[test]
    fn cup_examples() {
        let real = preset_field(PresetKind::RealClosed).unwrap();
        let tau = real.tau();
        let tau2 = real.cup(&tau, &tau).unwrap();
        assert_eq!((tau2.p, tau2.q), (0, 2));
        assert!(!tau2.is_zero());

        let rho = real.rho_class();
        let rho2 = real.cup(&rho, &rho).unwrap();
        assert!(!rho2.is_zero(), "ρ² ≠ 0 over the real closure");

        let f7 = preset_field(PresetKind::Finite(7)).unwrap();
        let rho7 = f7.rho_class();
        let sq = f7.cup(&rho7, &rho7).unwrap();
        assert!(sq.is_zero(), "kᴹ₂(F₇) = 0 kills ρ²");
    }

    #[test]
    fn tau_multiplication_preserves_coordinates() {
        for kind in [
            PresetKind::RealClosed,
            PresetKind::Finite(5),
            PresetKind::Local(7),
        ] {
            let f = preset_field(kind).unwrap();
            for p in 0..4i64 {
                for q in p..6i64 {
                    for i in 0..f.h_dim(p, q).unwrap() {
                        let x = f.basis_class(p, q, i).unwrap();
                        let tx = f.tau_times(&x).unwrap();
                        assert_eq!((tx.p, tx.q), (p, q + 1));
                        assert_eq!(tx.coords, x.coords);
                    }
                }
            }
        }
    }

    #[test]
    fn degree_one_squares() {
        // cup(x, x) = cup(ρ, x) on every degree-1 basis class of the presets.
        for kind in [
            PresetKind::RealClosed,
            PresetKind::Finite(7),
            PresetKind::Local(5),
            PresetKind::Local(7),
        ] {
            let f = preset_field(kind).unwrap();
            for i in 0..f.dims[1] {
                let x = f.basis_class(1, 1, i).unwrap();
                let xx = f.cup(&x, &x).unwrap();
                let rx = f.cup(&f.rho_class(), &x).unwrap();
                assert_eq!(xx, rx);
            }
        }
    }

    #[test]
    fn commutativity_and_associativity_hold_on_presets() {
        let local = preset_field(PresetKind::Local(7)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let x = local.basis_class(1, 1, i).unwrap();
                let y = local.basis_class(1, 1, j).unwrap();
                assert_eq!(local.cup(&x, &y).unwrap(), local.cup(&y, &x).unwrap());
            }
        }
    }

    #[test]
    fn broken_square_axiom_rejected() {
        // Two square classes with {u,u} = generator but ρ = 0 violates
        // x·x = ρ·x.
        let mut f = preset_field(PresetKind::Local(5)).unwrap();
        let table = f.mult.get_mut(&(1, 1)).unwrap();
        table.entries[0] = basis_vec(1, 0); // u·u ≠ 0 while ρ·u = 0
        let err = f.validate().unwrap_err();
        assert!(err.to_string().contains("x·x = ρ·x"), "{err}");
    }

    #[test]
    fn integral_resolution_rules() {
        let f5 = preset_field(PresetKind::Finite(5)).unwrap();
        assert!(matches!(
            f5.integral_group(3, 2).unwrap(),
            IntegralGroup::Zero { .. }
        ));
        assert!(matches!(
            f5.integral_group(1, 2).unwrap(),
            IntegralGroup::Cell(_)
        ));
        assert!(matches!(
            f5.integral_group(0, 2).unwrap(),
            IntegralGroup::Zero { via_flag: false }
        ));
        match f5.integral_group(0, 0).unwrap() {
            IntegralGroup::Cell(c) => assert_eq!(c.group, FgAbGroup::free(1)),
            other => panic!("H^{{0,0}} resolved to {other:?}"),
        }
        // below-diagonal cells without data are divisible markers unless the
        // Beilinson-Soulé flag zeroes them
        let real = preset_field(PresetKind::RealClosed).unwrap();
        assert_eq!(real.integral_group(-2, 2).unwrap(), IntegralGroup::Divisible);
        assert!(matches!(
            f5.integral_group(-2, 2).unwrap(),
            IntegralGroup::Zero { via_flag: true }
        ));
    }
}
