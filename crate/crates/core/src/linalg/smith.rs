//! Arbitrary-precision integer matrices and Smith normal form.
//!
//! Entries are `BigInt` throughout. Preset data is small, but elimination
//! fill-in can blow past machine integers, and exactness is the whole point
//! of the engine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[&[i64]]) -> Self {
        assert_eq!(entries.len(), rows);
        let mut m = IntMatrix::zero(rows, cols);
        for (i, r) in entries.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &e) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(e));
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "integer matrix product shape mismatch");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * rhs.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hcat(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = IntMatrix::zero(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    pub fn column_submatrix(&self, cols: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn scale_row(&mut self, r: usize, s: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(r, j) * s;
            self.set(r, j, v);
        }
    }

    fn scale_col(&mut self, c: usize, s: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, c) * s;
            self.set(i, c, v);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + k * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + k * self.get(i, src);
            self.set(i, dst, v);
        }
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                write!(f, " {}", self.get(i, j))?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal satisfying the
/// divisibility chain d₁ | d₂ | ⋯. Inverses of the transforms are tracked
/// during elimination; they are needed to produce lattice bases.
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries, in chain order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smith normal form by deterministic minimal-pivot reduction.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Elementary operations applied to d are mirrored on u (and inverted on
    // u_inv) for row ops, on v / v_inv for column ops.
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero |entry| in the trailing submatrix, first by row
        // then by column. No pivot means we are done.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d.get(i, j).is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if d.get(i, j).abs() < d.get(pi, pj).abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };

        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        // Clear the pivot row and column; restart whenever a remainder
        // becomes a strictly smaller candidate pivot.
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -(d.get(i, t) / d.get(t, t));
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                u_inv.add_col(t, i, &(-&q));
                if !d.get(i, t).is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    u_inv.swap_cols(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -(d.get(t, j) / d.get(t, t));
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                v_inv.add_row(t, j, &(-&q));
                if !d.get(t, j).is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    v_inv.swap_rows(t, j);
                    dirty = true;
                }
            }
        }

        // Enforce the divisibility chain: fold any non-divisible trailing
        // entry into the pivot's row and redo this position.
        let dt = d.get(t, t).clone();
        let mut redo = false;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !d.get(i, j).mod_floor(&dt).is_zero() {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                    u_inv.add_col(i, t, &(-&one));
                    redo = true;
                    break 'scan;
                }
            }
        }
        if redo {
            continue;
        }

        if d.get(t, t).is_negative() {
            let minus = -BigInt::one();
            d.scale_row(t, &minus);
            u.scale_row(t, &minus);
            u_inv.scale_col(t, &minus);
        }
        t += 1;
    }

    let rank = (0..rows.min(cols))
        .take_while(|&i| !d.get(i, i).is_zero())
        .count();
    SmithDecomposition {
        u,
        u_inv,
        d,
        v,
        v_inv,
        rank,
    }
}

/// Basis of the kernel lattice `{x : m·x = 0}`, as matrix columns.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let free: Vec<usize> = (snf.rank..m.cols()).collect();
    snf.v.column_submatrix(&free)
}

/// Basis of the column lattice of `m` (the subgroup of Z^rows generated by
/// the columns), as matrix columns.
pub fn column_lattice_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let mut basis = IntMatrix::zero(m.rows(), snf.rank);
    for k in 0..snf.rank {
        let dk = snf.d.get(k, k);
        for i in 0..m.rows() {
            basis.set(i, k, snf.u_inv.get(i, k) * dk);
        }
    }
    basis
}

/// Solves `a·x = b` over the integers for every column of `b`, where the
/// columns of `a` are a lattice basis (full column rank). Errors when some
/// column of `b` lies outside the lattice.
pub fn solve_exact(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    assert_eq!(a.rows(), b.rows());
    let snf = smith_normal_form(a);
    if snf.rank != a.cols() {
        return Err(Error::ShapeMismatch(
            "lattice basis matrix does not have full column rank".into(),
        ));
    }
    let ub = snf.u.mul(b);
    let mut z = IntMatrix::zero(a.cols(), b.cols());
    for j in 0..b.cols() {
        for i in 0..a.rows() {
            let e = ub.get(i, j);
            if i < snf.rank {
                let (q, r) = e.div_rem(snf.d.get(i, i));
                if !r.is_zero() {
                    return Err(Error::NotAComplex(format!(
                        "column {j} is not in the target lattice"
                    )));
                }
                z.set(i, j, q);
            } else if !e.is_zero() {
                return Err(Error::NotAComplex(format!(
                    "column {j} is not in the target lattice"
                )));
            }
        }
    }
    Ok(snf.v.mul(&z))
}

/// Does the column lattice of `l` contain every column of `w`?
pub fn lattice_contains(l: &IntMatrix, w: &IntMatrix) -> bool {
    if l.cols() == 0 {
        return w.is_zero();
    }
    let basis = column_lattice_basis(l);
    if basis.cols() == 0 {
        return w.is_zero();
    }
    solve_exact(&basis, w).is_ok()
}
