//! The subspace lattice of F_q^n.
//!
//! A subspace is stored as the reduced row echelon basis of its row
//! space, which is unique, so equality and hashing are plain structural
//! comparisons. Projective points are the canonical spanning vectors of
//! one-dimensional subspaces (first nonzero coordinate 1) and come with
//! a pinned enumeration order that every incidence object refers to.

use std::collections::HashMap;

use crate::error::Error;
use crate::field::{FieldElem, FieldSpec};
use crate::matfq::MatrixFq;

/// A k-dimensional subspace of F_q^n, held as its canonical RREF basis.
/// Two values are equal iff their row spaces are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: MatrixFq,
}

impl Subspace {
    /// Canonical form of the row space of `rows`: RREF with zero rows
    /// dropped. Accepts any spanning set, including the empty one.
    pub fn canonicalize(rows: &MatrixFq) -> Subspace {
        let (rref, rank) = rows.rref();
        let kept: Vec<Vec<FieldElem>> = (0..rank).map(|r| rref.row(r).to_vec()).collect();
        let basis = if kept.is_empty() {
            MatrixFq::zero(rows.field().clone(), 0, rows.cols())
        } else {
            MatrixFq::from_rows(rows.field().clone(), &kept)
        };
        Subspace { basis }
    }

    pub fn from_vectors(field: &FieldSpec, n: usize, vectors: &[Vec<FieldElem>]) -> Subspace {
        let m = if vectors.is_empty() {
            MatrixFq::zero(field.clone(), 0, n)
        } else {
            MatrixFq::from_rows(field.clone(), vectors)
        };
        assert_eq!(m.cols(), n, "vectors must have length n");
        Subspace::canonicalize(&m)
    }

    /// Wraps a matrix that is already a canonical basis, without
    /// re-reducing. Panics when it is not.
    pub fn from_canonical_basis(basis: MatrixFq) -> Subspace {
        assert!(basis.is_canonical_basis(), "basis must be in RREF");
        Subspace { basis }
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Subspace {
        Subspace {
            basis: MatrixFq::zero(field.clone(), 0, n),
        }
    }

    pub fn whole(field: &FieldSpec, n: usize) -> Subspace {
        Subspace {
            basis: MatrixFq::identity(field.clone(), n),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    /// Reduces `v` against the RREF basis; the result is zero exactly
    /// when `v` lies in the subspace.
    fn reduce_vector(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let field = self.field();
        let mut v = v.to_vec();
        for r in 0..self.basis.rows() {
            let pivot = (0..self.basis.cols())
                .find(|&c| self.basis.at(r, c) != 0)
                .expect("canonical basis has no zero rows");
            let coeff = v[pivot];
            if coeff != 0 {
                for c in 0..self.basis.cols() {
                    let sub = field.mul(coeff, self.basis.at(r, c));
                    v[c] = field.sub(v[c], sub);
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[FieldElem]) -> bool {
        assert_eq!(v.len(), self.ambient());
        self.reduce_vector(v).iter().all(|&c| c == 0)
    }

    /// Membership of a projective point; the zero subspace contains none.
    pub fn contains_point(&self, p: &ProjectivePoint) -> bool {
        self.contains_vector(p.coords())
    }
}

fn check_same_ambient(a: &Subspace, b: &Subspace) -> Result<(), Error> {
    if a.field() != b.field() || a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch {
            expected_q: a.field().order(),
            expected_n: a.ambient(),
            found_q: b.field().order(),
            found_n: b.ambient(),
        });
    }
    Ok(())
}

/// dim(A + B): rank of the stacked bases.
pub fn sum_dim(a: &Subspace, b: &Subspace) -> Result<usize, Error> {
    check_same_ambient(a, b)?;
    Ok(a.basis().stack(b.basis()).rank())
}

/// dim(A ∩ B) = dim A + dim B - dim(A + B).
pub fn intersection_dim(a: &Subspace, b: &Subspace) -> Result<usize, Error> {
    Ok(a.dim() + b.dim() - sum_dim(a, b)?)
}

/// The canonical subspace A ∩ B, with an actual basis computed from the
/// left kernel of the stacked bases: a kernel row (u, v) gives
/// u·basis(A) = -v·basis(B), a vector of the intersection.
pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace, Error> {
    check_same_ambient(a, b)?;
    let stacked = a.basis().stack(b.basis());
    let kernel = stacked.left_kernel();
    let ka = a.dim();
    let vectors: Vec<Vec<FieldElem>> = (0..kernel.rows())
        .map(|r| a.basis().combine_rows(&kernel.row(r)[..ka]))
        .collect();
    let result = Subspace::from_vectors(a.field(), a.ambient(), &vectors);
    debug_assert_eq!(result.dim(), intersection_dim(a, b).unwrap());
    Ok(result)
}

/// Canonical representative of a one-dimensional subspace: the unique
/// spanning vector whose first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<FieldElem>,
}

impl ProjectivePoint {
    /// Normalizes any nonzero vector to the canonical representative.
    pub fn from_vector(field: &FieldSpec, coords: &[FieldElem]) -> Option<ProjectivePoint> {
        let first = coords.iter().position(|&c| c != 0)?;
        let inv = field.inv(coords[first]).unwrap();
        let coords = coords.iter().map(|&c| field.mul(inv, c)).collect();
        Some(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[FieldElem] {
        &self.coords
    }

    pub fn ambient(&self) -> usize {
        self.coords.len()
    }

    /// The line spanned by this point.
    pub fn span(&self, field: &FieldSpec) -> Subspace {
        Subspace::from_vectors(field, self.coords.len(), &[self.coords.clone()])
    }
}

/// All [n]_q projective points of F_q^n in increasing lexicographic
/// order on coordinate codes, with the inverse lookup.
#[derive(Debug, Clone)]
pub struct PointOrder {
    field: FieldSpec,
    n: usize,
    points: Vec<ProjectivePoint>,
    index: HashMap<Vec<FieldElem>, usize>,
}

impl PointOrder {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &ProjectivePoint {
        &self.points[i]
    }

    pub fn index_of(&self, p: &ProjectivePoint) -> Option<usize> {
        self.index.get(p.coords()).copied()
    }
}

/// Enumerates every projective point of F_q^n, sorted lexicographically.
///
/// A point whose first nonzero coordinate sits at position i starts with
/// i zeros then a 1; later positions sort first, and within a position
/// the free suffix counts up in base q.
pub fn enumerate_points(field: &FieldSpec, n: usize) -> PointOrder {
    assert!(n >= 1, "points need a positive ambient dimension");
    let q = field.order();
    let mut points = Vec::new();
    for first in (0..n).rev() {
        let free = n - first - 1;
        let mut suffix = vec![0 as FieldElem; free];
        loop {
            let mut coords = vec![0 as FieldElem; n];
            coords[first] = 1;
            coords[first + 1..].copy_from_slice(&suffix);
            points.push(ProjectivePoint { coords });
            // next suffix in lexicographic order
            let mut advanced = false;
            for pos in (0..free).rev() {
                if suffix[pos] + 1 < q {
                    suffix[pos] += 1;
                    for s in &mut suffix[pos + 1..] {
                        *s = 0;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    debug_assert!(points.windows(2).all(|w| w[0].coords < w[1].coords));
    let index = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.coords.clone(), i))
        .collect();
    PointOrder {
        field: field.clone(),
        n,
        points,
        index,
    }
}

/// Streaming enumeration of every k-dimensional subspace of F_q^n,
/// each exactly once.
///
/// Iterates RREF templates: pivot-column k-subsets in lexicographic
/// order, then all assignments of the free entries in lexicographic
/// order (row-major positions, earliest position most significant).
pub fn enumerate_subspaces(field: &FieldSpec, n: usize, k: usize) -> SubspaceIter {
    assert!(k <= n, "k must be at most n");
    SubspaceIter {
        field: field.clone(),
        n,
        k,
        pivots: Some((0..k).collect()),
        free: Vec::new(),
        codes: Vec::new(),
        fresh: true,
    }
}

/// Every subspace of every dimension, k ascending.
pub fn all_subspaces(field: &FieldSpec, n: usize) -> impl Iterator<Item = Subspace> {
    let field = field.clone();
    (0..=n).flat_map(move |k| enumerate_subspaces(&field, n, k))
}

pub struct SubspaceIter {
    field: FieldSpec,
    n: usize,
    k: usize,
    pivots: Option<Vec<usize>>,
    /// Free (row, col) slots of the current pivot pattern, row-major.
    free: Vec<(usize, usize)>,
    codes: Vec<FieldElem>,
    fresh: bool,
}

impl SubspaceIter {
    fn recompute_free(&mut self) {
        self.free.clear();
        let pivots = self.pivots.as_ref().unwrap();
        for (row, &p) in pivots.iter().enumerate() {
            for col in p + 1..self.n {
                if !pivots.contains(&col) {
                    self.free.push((row, col));
                }
            }
        }
        self.codes = vec![0; self.free.len()];
    }

    fn build(&self) -> Subspace {
        let pivots = self.pivots.as_ref().unwrap();
        let mut m = MatrixFq::zero(self.field.clone(), self.k, self.n);
        for (row, &p) in pivots.iter().enumerate() {
            m.set(row, p, 1);
        }
        for (&(row, col), &code) in self.free.iter().zip(&self.codes) {
            m.set(row, col, code);
        }
        debug_assert!(m.is_canonical_basis() || self.k == 0);
        Subspace { basis: m }
    }

    /// Advances the free-entry odometer; false when the pattern is done.
    fn advance_codes(&mut self) -> bool {
        let q = self.field.order();
        for i in (0..self.codes.len()).rev() {
            if self.codes[i] + 1 < q {
                self.codes[i] += 1;
                for c in &mut self.codes[i + 1..] {
                    *c = 0;
                }
                return true;
            }
        }
        false
    }

    /// Advances to the next pivot k-subset in lexicographic order.
    fn advance_pivots(&mut self) -> bool {
        let pivots = self.pivots.as_mut().unwrap();
        let k = pivots.len();
        for i in (0..k).rev() {
            if pivots[i] < self.n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        self.pivots.as_ref()?;
        if self.fresh {
            self.recompute_free();
            self.fresh = false;
        }
        let out = self.build();
        if !self.advance_codes() {
            if self.advance_pivots() {
                self.recompute_free();
            } else {
                self.pivots = None;
            }
        }
        Some(out)
    }
}
