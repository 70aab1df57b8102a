//! Exact matrix algebra in the three rings the verifiers need:
//! F_q (reduced row echelon forms), F_2 (bit-packed parity ranks), and
//! the integers (rank over the rationals by fraction-free elimination).
//!
//! Elimination always pivots on the topmost unused row with a nonzero
//! entry in the leftmost eligible column, so reduced forms are
//! reproducible across runs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bitset::BitSet;
use crate::field::{FieldElem, FieldSpec};

/// Dense row-major matrix over F_q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixFq {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElem>,
}

impl MatrixFq {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixFq {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<FieldElem>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            for &v in row {
                assert!(v < field.order(), "code {v} out of range");
                entries.push(v);
            }
        }
        MatrixFq {
            field,
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = MatrixFq::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> FieldElem {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Stacks the rows of `self` on top of `other` (same field, same cols).
    pub fn stack(&self, other: &MatrixFq) -> MatrixFq {
        assert_eq!(self.field, other.field);
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        MatrixFq {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: FieldElem) {
        for c in 0..self.cols {
            let v = self.at(r, c);
            self.set(r, c, self.field.mul(v, s));
        }
    }

    /// row[dst] -= s * row[src]
    fn sub_scaled_row(&mut self, dst: usize, src: usize, s: FieldElem) {
        for c in 0..self.cols {
            let v = self.field.sub(self.at(dst, c), self.field.mul(s, self.at(src, c)));
            self.set(dst, c, v);
        }
    }

    /// Reduced row echelon form and rank. The RREF is the unique
    /// canonical form of the row space: pivots are 1, pivot columns are
    /// otherwise zero, pivot columns strictly increase.
    pub fn rref(&self) -> (MatrixFq, usize) {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(r) = (pivot_row..m.rows).find(|&r| m.at(r, col) != 0) else {
                continue;
            };
            m.swap_rows(pivot_row, r);
            let inv = m.field.inv(m.at(pivot_row, col)).unwrap();
            m.scale_row(pivot_row, inv);
            for r in 0..m.rows {
                if r != pivot_row {
                    let c = m.at(r, col);
                    if c != 0 {
                        m.sub_scaled_row(r, pivot_row, c);
                    }
                }
            }
            pivot_row += 1;
        }
        (m, pivot_row)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of { w : w * self = 0 }, one kernel vector per row.
    pub fn left_kernel(&self) -> MatrixFq {
        let n = self.cols;
        let m = self.rows;
        // Augment with the identity and reduce only the left block.
        let mut aug = MatrixFq::zero(self.field.clone(), m, n + m);
        for r in 0..m {
            for c in 0..n {
                aug.set(r, c, self.at(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let mut pivot_row = 0;
        for col in 0..n {
            if pivot_row == m {
                break;
            }
            let Some(r) = (pivot_row..m).find(|&r| aug.at(r, col) != 0) else {
                continue;
            };
            aug.swap_rows(pivot_row, r);
            let inv = aug.field.inv(aug.at(pivot_row, col)).unwrap();
            aug.scale_row(pivot_row, inv);
            for r in 0..m {
                if r != pivot_row {
                    let c = aug.at(r, col);
                    if c != 0 {
                        aug.sub_scaled_row(r, pivot_row, c);
                    }
                }
            }
            pivot_row += 1;
        }
        let kernel_rows: Vec<Vec<FieldElem>> = (pivot_row..m)
            .map(|r| (0..m).map(|c| aug.at(r, n + c)).collect())
            .collect();
        if kernel_rows.is_empty() {
            MatrixFq::zero(self.field.clone(), 0, m)
        } else {
            MatrixFq::from_rows(self.field.clone(), &kernel_rows)
        }
    }

    /// coeffs * self, a single row vector.
    pub fn combine_rows(&self, coeffs: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(coeffs.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (r, &s) in coeffs.iter().enumerate() {
            if s == 0 {
                continue;
            }
            for c in 0..self.cols {
                out[c] = self.field.add(out[c], self.field.mul(s, self.at(r, c)));
            }
        }
        out
    }

    /// True when the matrix is a reduced row echelon basis of full row
    /// rank: no zero rows, pivots 1, pivot columns otherwise zero and
    /// strictly increasing.
    pub fn is_canonical_basis(&self) -> bool {
        let mut last_pivot: Option<usize> = None;
        for r in 0..self.rows {
            let Some(p) = (0..self.cols).find(|&c| self.at(r, c) != 0) else {
                return false;
            };
            if self.at(r, p) != 1 {
                return false;
            }
            if let Some(lp) = last_pivot {
                if p <= lp {
                    return false;
                }
            }
            if (0..self.rows).any(|rr| rr != r && self.at(rr, p) != 0) {
                return false;
            }
            last_pivot = Some(p);
        }
        true
    }
}

/// Bit-packed matrix over F_2, one `BitSet` per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixF2 {
    rows: usize,
    cols: usize,
    data: Vec<BitSet>,
}

impl MatrixF2 {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatrixF2 {
            rows,
            cols,
            data: vec![BitSet::new(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixF2::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// J_m - I_m over F_2: ones everywhere off the diagonal.
    pub fn ones_off_diagonal(m: usize) -> Self {
        let mut out = MatrixF2 {
            rows: m,
            cols: m,
            data: vec![BitSet::full(m); m],
        };
        for i in 0..m {
            out.data[i].set(i, false);
        }
        out
    }

    pub fn from_rows(rows: Vec<BitSet>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols);
        }
        MatrixF2 {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.data[r].set(c, v);
    }

    pub fn row(&self, r: usize) -> &BitSet {
        &self.data[r]
    }

    /// Rank over F_2 by word-parallel elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == rows.len() {
                break;
            }
            let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(pivot_row, r);
            let (head, tail) = rows.split_at_mut(pivot_row + 1);
            let pivot = &head[pivot_row];
            for other in tail.iter_mut() {
                if other.get(col) {
                    other.xor_assign(pivot);
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }
}

/// Dense matrix with arbitrary-precision integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixInt {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl MatrixInt {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatrixInt {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixInt::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        MatrixInt {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    /// Rank over the rationals, computed exactly with fraction-free
    /// (Bareiss) elimination; every interior division is exact and this
    /// is asserted.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c).clone()).collect())
            .collect();
        let mut prev = BigInt::one();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(r) = (pivot_row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(pivot_row, r);
            for i in pivot_row + 1..self.rows {
                for j in col + 1..self.cols {
                    let t = &m[pivot_row][col] * &m[i][j] - &m[i][col] * &m[pivot_row][j];
                    let (quo, rem) = t.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "fraction-free step must divide exactly");
                    m[i][j] = quo;
                }
                m[i][col] = BigInt::zero();
            }
            prev = m[pivot_row][col].clone();
            pivot_row += 1;
        }
        pivot_row
    }

    /// self * otherᵀ with exact integer entries.
    pub fn mul_transpose(&self, other: &MatrixInt) -> MatrixInt {
        assert_eq!(self.cols, other.cols, "inner dimensions must agree");
        let mut out = MatrixInt::zero(self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * other.at(j, k);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Gram matrix self * selfᵀ.
    pub fn gram(&self) -> MatrixInt {
        self.mul_transpose(self)
    }

    /// Entrywise reduction mod 2.
    pub fn mod2(&self) -> MatrixF2 {
        let mut out = MatrixF2::zero(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.at(r, c).is_odd() {
                    out.set(r, c, true);
                }
            }
        }
        out
    }

    /// Sum of the absolute values in a row; parity of a 0/1 row's weight.
    pub fn row_abs_sum(&self, r: usize) -> BigInt {
        (0..self.cols).map(|c| self.at(r, c).abs()).sum()
    }
}
