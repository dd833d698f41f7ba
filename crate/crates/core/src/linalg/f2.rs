//! Dense bit-packed linear algebra over GF(2).
//!
//! Rows are packed 64 entries per machine word. All matrices at the scales
//! this library handles have at most a few hundred columns, so density beats
//! sparse bookkeeping by a wide margin.

use crate::error::{Error, Result};

const BITS: usize = 64;

/// A vector over GF(2), bit-packed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vec {
    len: usize,
    words: Vec<u64>,
}

impl F2Vec {
    pub fn zero(len: usize) -> Self {
        F2Vec {
            len,
            words: vec![0; len.div_ceil(BITS)],
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = F2Vec::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b % 2 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / BITS] >> (i % BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % BITS);
        if value {
            self.words[i / BITS] |= mask;
        } else {
            self.words[i / BITS] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &F2Vec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the leftmost set bit, if any.
    pub fn leading(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }
}

impl std::fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

/// Dense GF(2) matrix, row-major bit rows.
///
/// A 0×n or n×0 matrix is valid and represents a map to or from the zero
/// space.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<F2Vec>,
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        F2Matrix {
            rows,
            cols,
            data: vec![F2Vec::zero(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = F2Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, entries: &[&[u8]]) -> Self {
        assert_eq!(entries.len(), rows);
        let mut m = F2Matrix::zero(rows, cols);
        for (i, r) in entries.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &e) in r.iter().enumerate() {
                m.set(i, j, e % 2 == 1);
            }
        }
        m
    }

    /// Builds the matrix whose j-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[F2Vec]) -> Self {
        let mut m = F2Matrix::zero(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                if c.get(i) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    pub fn row(&self, i: usize) -> &F2Vec {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> F2Vec {
        let mut v = F2Vec::zero(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, rhs.rows, "f2 matrix product shape mismatch");
        let mut out = F2Matrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let row = rhs.data[k].clone();
                    out.data[i].xor_assign(&row);
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &F2Vec) -> F2Vec {
        assert_eq!(v.len(), self.cols);
        let mut out = F2Vec::zero(self.rows);
        for i in 0..self.rows {
            let mut acc = 0u64;
            for (a, b) in self.data[i].words.iter().zip(&v.words) {
                acc ^= a & b;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns in
    /// ascending order (leftmost-pivot elimination, fully reduced).
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pivot_row) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.data.swap(r, pivot_row);
            let pr = self.data[r].clone();
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.data[i].xor_assign(&pr);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Deterministic kernel basis, one vector per free column of the RREF,
    /// ordered by ascending free column index.
    pub fn kernel_basis(&self) -> Vec<F2Vec> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains_key(&free) {
                continue;
            }
            let mut v = F2Vec::zero(self.cols);
            v.set(free, true);
            for (&pc, &pr) in &pivot_set {
                if m.get(pr, free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Echelonized basis of the column space, as vectors in the target space.
    pub fn image_basis(&self) -> Vec<F2Vec> {
        let mut t = self.transpose();
        t.rref();
        t.data.into_iter().filter(|r| !r.is_zero()).collect()
    }
}

impl std::fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {:?}", r)?;
        }
        Ok(())
    }
}

/// Rank, kernel basis and image basis of a GF(2) matrix in one pass.
pub fn f2_rank_kernel_image(m: &F2Matrix) -> (usize, Vec<F2Vec>, Vec<F2Vec>) {
    let rank = m.rank();
    (rank, m.kernel_basis(), m.image_basis())
}

/// Reduces `v` against an echelonized basis (each basis vector keyed by its
/// leading index). The basis need not be fully reduced; reduction is by
/// repeated cancellation of the leading bit.
fn reduce_against(v: &mut F2Vec, echelon: &std::collections::BTreeMap<usize, F2Vec>) {
    loop {
        let Some(lead) = v.leading() else { return };
        match echelon.get(&lead) {
            Some(b) => v.xor_assign(b),
            None => return,
        }
    }
}

/// Homology `ker g / im f` at the middle of the complex `A --f--> B --g--> C`.
///
/// `f` has shape `dim B × dim A`, `g` has shape `dim C × dim B`. Rejects
/// inputs with `g·f ≠ 0`, which signals a differential-assembly bug upstream.
/// Representatives are kernel vectors reduced against the image of `f`,
/// deterministic for fixed inputs.
pub fn f2_homology(f: &F2Matrix, g: &F2Matrix) -> Result<(usize, Vec<F2Vec>)> {
    if f.rows() != g.cols() {
        return Err(Error::ShapeMismatch(format!(
            "middle dimension disagrees: f is {}x{}, g is {}x{}",
            f.rows(),
            f.cols(),
            g.rows(),
            g.cols()
        )));
    }
    if !g.mul(f).is_zero() {
        return Err(Error::NotAComplex(
            "g·f ≠ 0 over GF(2); differentials do not compose to zero".into(),
        ));
    }

    let mut echelon = std::collections::BTreeMap::new();
    for mut b in f.image_basis() {
        reduce_against(&mut b, &echelon);
        if let Some(lead) = b.leading() {
            echelon.insert(lead, b);
        }
    }
    let rank_f = echelon.len();

    let kernel = g.kernel_basis();
    let expected = kernel.len() - rank_f;
    let mut reps = Vec::new();
    let mut rep_echelon = echelon.clone();
    for mut k in kernel {
        reduce_against(&mut k, &rep_echelon);
        if let Some(lead) = k.leading() {
            rep_echelon.insert(lead, k.clone());
            reps.push(k);
        }
    }
    debug_assert_eq!(reps.len(), expected);
    Ok((expected, reps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_rank() {
        let m = F2Matrix::identity(3);
        let (rank, kernel, image) = f2_rank_kernel_image(&m);
        assert_eq!(rank, 3);
        assert!(kernel.is_empty());
        assert_eq!(image.len(), 3);
    }

    #[test]
    fn equal_rows_rank_one() {
        let m = F2Matrix::from_rows(2, 2, &[&[1, 1], &[1, 1]]);
        let (rank, kernel, _) = f2_rank_kernel_image(&m);
        assert_eq!(rank, 1);
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0].support(), vec![0, 1]);
    }

    #[test]
    fn zero_matrix() {
        let m = F2Matrix::zero(2, 3);
        let (rank, kernel, image) = f2_rank_kernel_image(&m);
        assert_eq!(rank, 0);
        assert_eq!(kernel.len(), 3);
        assert!(image.is_empty());
    }

    #[test]
    fn homology_zero_complex() {
        let f = F2Matrix::zero(4, 0);
        let g = F2Matrix::zero(0, 4);
        let (dim, _) = f2_homology(&f, &g).unwrap();
        assert_eq!(dim, 4);
    }

    #[test]
    fn homology_exact_identity() {
        let f = F2Matrix::identity(3);
        let g = F2Matrix::zero(0, 3);
        let (dim, reps) = f2_homology(&f, &g).unwrap();
        assert_eq!(dim, 0);
        assert!(reps.is_empty());
    }

    #[test]
    fn homology_diagonal_inclusion() {
        // f: GF(2) -> GF(2)^2 via (1,1); g: GF(2)^2 -> GF(2) via [1,1].
        // ker g = im f = span{(1,1)}, so homology vanishes.
        let f = F2Matrix::from_rows(2, 1, &[&[1], &[1]]);
        let g = F2Matrix::from_rows(1, 2, &[&[1, 1]]);
        let (dim, _) = f2_homology(&f, &g).unwrap();
        assert_eq!(dim, 0);
    }

    #[test]
    fn homology_rejects_non_complex() {
        let f = F2Matrix::identity(2);
        let g = F2Matrix::identity(2);
        assert!(f2_homology(&f, &g).is_err());
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 0usize..16, cols in 0usize..16, seed in any::<u64>()) {
            let mut m = F2Matrix::zero(rows, cols);
            let mut state = seed;
            for i in 0..rows {
                for j in 0..cols {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    m.set(i, j, state >> 33 & 1 == 1);
                }
            }
            let (rank, kernel, image) = f2_rank_kernel_image(&m);
            prop_assert_eq!(rank + kernel.len(), cols);
            prop_assert_eq!(image.len(), rank);
            for k in &kernel {
                prop_assert!(m.apply(k).is_zero());
            }
        }
    }
}
