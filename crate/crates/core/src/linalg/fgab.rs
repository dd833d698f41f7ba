//! Finitely generated abelian groups in invariant-factor form, and homology
//! of complexes of presented groups via Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::smith::{
    column_lattice_basis, kernel_basis, lattice_contains, smith_normal_form, solve_exact,
    IntMatrix,
};

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d₁ ⊕ ⋯ ⊕ Z/dₖ` with
/// the invariant factors in a divisibility chain d₁ | d₂ | ⋯, each ≥ 2.
/// The canonical form is unique, so equality is structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FgAbGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 2);
        FgAbGroup {
            free_rank: 0,
            torsion: vec![BigInt::from(n)],
        }
    }

    /// Elementary abelian 2-group of the given rank.
    pub fn elementary_two(rank: usize) -> Self {
        FgAbGroup {
            free_rank: 0,
            torsion: vec![BigInt::from(2); rank],
        }
    }

    /// Canonical form from an arbitrary list of cyclic orders (0 meaning Z).
    /// Computed by diagonalizing the corresponding relation matrix.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let mut rel = IntMatrix::zero(n, n);
        for (i, d) in orders.iter().enumerate() {
            rel.set(i, i, d.clone());
        }
        FgAbGroup::from_presentation(n, &rel)
    }

    /// The group `Z^generators / column-span(relations)` in canonical form.
    pub fn from_presentation(generators: usize, relations: &IntMatrix) -> Self {
        assert_eq!(relations.rows(), generators);
        let snf = smith_normal_form(relations);
        let mut torsion = Vec::new();
        let mut killed = 0;
        for k in 0..snf.rank {
            let d = snf.d.get(k, k);
            if d.abs() == BigInt::one() {
                killed += 1;
            } else {
                torsion.push(d.abs());
                killed += 1;
            }
        }
        FgAbGroup {
            free_rank: generators - killed,
            torsion,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of generators in the canonical presentation.
    pub fn generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Diagonal relation matrix of the canonical presentation
    /// (generators × torsion count; free generators first).
    pub fn relations(&self) -> IntMatrix {
        let gens = self.generators();
        let mut rel = IntMatrix::zero(gens, self.torsion.len());
        for (k, d) in self.torsion.iter().enumerate() {
            rel.set(self.free_rank + k, k, d.clone());
        }
        rel
    }

    /// The subgroup `2G` in canonical form: doubling is injective on the free
    /// part and sends Z/d to Z/(d / gcd(2, d)).
    pub fn index_two_multiple(&self) -> FgAbGroup {
        let two = BigInt::from(2);
        let orders: Vec<BigInt> = std::iter::repeat_n(BigInt::zero(), self.free_rank)
            .chain(self.torsion.iter().map(|d| d / d.gcd(&two)))
            .collect();
        FgAbGroup::from_orders(&orders)
    }

    /// Order of the group if finite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }
}

impl std::fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A homomorphism between presented groups: the matrix acts on generator
/// columns, canonical generator order free-then-torsion.
#[derive(Clone, Debug)]
pub struct PresentedMap {
    pub src: FgAbGroup,
    pub tgt: FgAbGroup,
    pub matrix: IntMatrix,
}

impl PresentedMap {
    pub fn new(src: FgAbGroup, tgt: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != tgt.generators() || matrix.cols() != src.generators() {
            return Err(Error::ShapeMismatch(format!(
                "map matrix is {}x{} but target/source have {}/{} generators",
                matrix.rows(),
                matrix.cols(),
                tgt.generators(),
                src.generators()
            )));
        }
        // Well-defined on the quotient: relations of the source must land in
        // relations of the target.
        let image_of_rel = matrix.mul(&src.relations());
        if !lattice_contains(&tgt.relations(), &image_of_rel) {
            return Err(Error::ShapeMismatch(
                "matrix does not respect torsion relations".into(),
            ));
        }
        Ok(PresentedMap { src, tgt, matrix })
    }

    pub fn zero(src: FgAbGroup, tgt: FgAbGroup) -> Self {
        let matrix = IntMatrix::zero(tgt.generators(), src.generators());
        PresentedMap { src, tgt, matrix }
    }
}

/// A complex of raw presentations `A --f--> B --g--> C`: generator counts,
/// relation matrices (generators × relation count) and the two maps on
/// generators.
pub struct RawComplex {
    pub rel_a: IntMatrix,
    pub rel_b: IntMatrix,
    pub rel_c: IntMatrix,
    pub f: IntMatrix,
    pub g: IntMatrix,
}

/// Homology `ker g / im f` at the middle of a complex of raw presentations.
pub fn raw_homology(cx: &RawComplex) -> Result<FgAbGroup> {
    let m = cx.rel_b.rows();
    if cx.f.rows() != m
        || cx.g.cols() != m
        || cx.f.cols() != cx.rel_a.rows()
        || cx.g.rows() != cx.rel_c.rows()
    {
        return Err(Error::ShapeMismatch(
            "complex matrices do not match the presentations".into(),
        ));
    }
    let composite = cx.g.mul(&cx.f);
    if !lattice_contains(&cx.rel_c, &composite) {
        return Err(Error::NotAComplex(
            "g∘f ≠ 0 as maps of presented groups".into(),
        ));
    }

    // Preimage lattice L = {x in Z^m : g(x) lies in the relation lattice of C}.
    let block = cx.g.hcat(&cx.rel_c);
    let ker = kernel_basis(&block);
    let mut gens_l = IntMatrix::zero(m, ker.cols() + cx.rel_b.cols());
    for j in 0..ker.cols() {
        for i in 0..m {
            gens_l.set(i, j, ker.get(i, j).clone());
        }
    }
    for j in 0..cx.rel_b.cols() {
        for i in 0..m {
            gens_l.set(i, ker.cols() + j, cx.rel_b.get(i, j).clone());
        }
    }
    let basis = column_lattice_basis(&gens_l);
    let k = basis.cols();
    if k == 0 {
        return Ok(FgAbGroup::trivial());
    }

    // Express im f and the relations of B in the kernel-lattice basis; the
    // quotient is then presented on k generators.
    let targets = cx.f.hcat(&cx.rel_b);
    let y = solve_exact(&basis, &targets).map_err(|_| {
        Error::Consistency("image of f does not lie in the kernel lattice".into())
    })?;
    Ok(FgAbGroup::from_presentation(k, &y))
}

/// Homology `ker g / im f` at the middle of `A --f--> B --g--> C`, all three
/// finitely generated abelian groups in presented form.
///
/// Rejects non-composable shapes and pairs with `g∘f ≠ 0` as maps of
/// presented groups. Restricted to elementary abelian 2-groups this agrees
/// with GF(2) homology dimensions.
pub fn fgab_homology(f: &PresentedMap, g: &PresentedMap) -> Result<FgAbGroup> {
    if f.tgt != g.src {
        return Err(Error::ShapeMismatch(
            "middle groups of the complex disagree".into(),
        ));
    }
    raw_homology(&RawComplex {
        rel_a: f.src.relations(),
        rel_b: f.tgt.relations(),
        rel_c: g.tgt.relations(),
        f: f.matrix.clone(),
        g: g.matrix.clone(),
    })
}
