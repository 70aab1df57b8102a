//! Incidence vectors of subspaces over a fixed projective point order,
//! their scalar products, and the incidence matrix of a family.
//!
//! The scalar product of two incidence vectors equals [dim(A ∩ B)]_q —
//! the identity every verifier in this crate leans on; the dim-0 case
//! degenerates to 0 since [0]_q = 0. All incidence objects are only
//! meaningful relative to one point order, which therefore travels with
//! the matrix record.

use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::bitset::BitSet;
use crate::error::Error;
use crate::matfq::{MatrixF2, MatrixInt};
use crate::qcount;
use crate::subspace::{PointOrder, Subspace};

/// 0/1 vector of length [n]_q with bit j set when point j lies in the
/// subspace. Weight is [dim A]_q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncidenceVector {
    bits: BitSet,
}

impl IncidenceVector {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, j: usize) -> bool {
        self.bits.get(j)
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }
}

fn check_order_matches(a: &Subspace, order: &PointOrder) -> Result<(), Error> {
    if a.field() != order.field() || a.ambient() != order.ambient() {
        return Err(Error::AmbientMismatch {
            expected_q: order.field().order(),
            expected_n: order.ambient(),
            found_q: a.field().order(),
            found_n: a.ambient(),
        });
    }
    Ok(())
}

/// Bit j = [point j lies in a].
pub fn incidence_vector(a: &Subspace, order: &PointOrder) -> Result<IncidenceVector, Error> {
    check_order_matches(a, order)?;
    let mut bits = BitSet::new(order.len());
    for (j, p) in order.points().iter().enumerate() {
        if a.contains_point(p) {
            bits.set(j, true);
        }
    }
    Ok(IncidenceVector { bits })
}

/// Integer dot product: the number of common set bits.
pub fn scalar_product(u: &IncidenceVector, v: &IncidenceVector) -> Result<u64, Error> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(u.bits.dot(&v.bits) as u64)
}

/// Incidence matrix of a family, rows in family order, tied to the
/// point order it was built against.
#[derive(Debug, Clone)]
pub struct IncidenceMatrix {
    order: PointOrder,
    rows: Vec<IncidenceVector>,
}

impl IncidenceMatrix {
    pub fn order(&self) -> &PointOrder {
        &self.order
    }

    pub fn rows(&self) -> &[IncidenceVector] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Integer view, for rank over the rationals.
    pub fn as_int(&self) -> MatrixInt {
        let mut m = MatrixInt::zero(self.rows.len(), self.order.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.bits.iter_ones() {
                m.set(i, j, BigInt::from(1));
            }
        }
        m
    }

    /// F_2 view, for parity ranks.
    pub fn as_f2(&self) -> MatrixF2 {
        MatrixF2::from_rows(self.rows.iter().map(|r| r.bits.clone()).collect(), self.order.len())
    }
}

pub fn incidence_matrix(members: &[Subspace], order: &PointOrder) -> Result<IncidenceMatrix, Error> {
    let rows = members
        .iter()
        .map(|m| incidence_vector(m, order))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IncidenceMatrix {
        order: order.clone(),
        rows,
    })
}

/// Memoizes incidence vectors by canonical basis for one point order.
/// Lookups never block other lookups; inserts are atomic.
pub struct IncidenceCache {
    order: PointOrder,
    map: DashMap<Subspace, Arc<IncidenceVector>>,
}

impl IncidenceCache {
    pub fn new(order: PointOrder) -> Self {
        IncidenceCache {
            order,
            map: DashMap::new(),
        }
    }

    pub fn order(&self) -> &PointOrder {
        &self.order
    }

    pub fn vector(&self, s: &Subspace) -> Result<Arc<IncidenceVector>, Error> {
        if let Some(v) = self.map.get(s) {
            return Ok(Arc::clone(&v));
        }
        let v = Arc::new(incidence_vector(s, &self.order)?);
        let entry = self.map.entry(s.clone()).or_insert_with(|| Arc::clone(&v));
        Ok(Arc::clone(&entry))
    }

    /// dim(A ∩ B) recovered from the scalar product of cached incidence
    /// vectors by inverting t ↦ [t]_q. Independent of the elimination
    /// route and used to cross-check it.
    pub fn intersection_dim_via_scalar(&self, a: &Subspace, b: &Subspace) -> Result<usize, Error> {
        let fa = self.vector(a)?;
        let fb = self.vector(b)?;
        let s = scalar_product(&fa, &fb)?;
        let q = self.order.field().order() as u64;
        let max_dim = a.dim().min(b.dim());
        for t in 0..=max_dim {
            if qcount::q_int(t as u64, q).to_u64() == Some(s) {
                return Ok(t);
            }
        }
        Err(Error::InternalInconsistency(format!(
            "scalar product {s} is not a q-integer for q = {q}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::subspace::{all_subspaces, enumerate_points, intersection_dim};
    use num_traits::ToPrimitive;

    fn f(q: u64) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    #[test]
    fn whole_space_and_zero_subspace_vectors() {
        let field = f(2);
        let order = enumerate_points(&field, 2);
        let whole = incidence_vector(&Subspace::whole(&field, 2), &order).unwrap();
        assert_eq!(whole.weight(), 3);
        let zero = incidence_vector(&Subspace::zero(&field, 2), &order).unwrap();
        assert_eq!(zero.weight(), 0);
    }

    #[test]
    fn span_e1_in_f2_squared() {
        let field = f(2);
        let order = enumerate_points(&field, 2);
        // order is [(0,1), (1,0), (1,1)]
        let s = Subspace::from_vectors(&field, 2, &[vec![1, 0]]);
        let v = incidence_vector(&s, &order).unwrap();
        let bits: Vec<bool> = (0..3).map(|j| v.get(j)).collect();
        assert_eq!(bits, vec![false, true, false]);
    }

    #[test]
    fn self_product_of_a_line_is_one() {
        let field = f(3);
        let order = enumerate_points(&field, 2);
        let line = Subspace::from_vectors(&field, 2, &[vec![1, 1]]);
        let v = incidence_vector(&line, &order).unwrap();
        assert_eq!(scalar_product(&v, &v).unwrap(), 1);
    }

    #[test]
    fn disjoint_lines_have_zero_product() {
        let field = f(2);
        let order = enumerate_points(&field, 2);
        let a = incidence_vector(&Subspace::from_vectors(&field, 2, &[vec![1, 0]]), &order).unwrap();
        let b = incidence_vector(&Subspace::from_vectors(&field, 2, &[vec![0, 1]]), &order).unwrap();
        assert_eq!(scalar_product(&a, &b).unwrap(), 0);
    }

    #[test]
    fn distinct_hyperplanes_of_f3_cubed_meet_in_one() {
        let field = f(3);
        let order = enumerate_points(&field, 3);
        let a = Subspace::from_vectors(&field, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::from_vectors(&field, 3, &[vec![1, 0, 0], vec![0, 0, 1]]);
        let fa = incidence_vector(&a, &order).unwrap();
        let fb = incidence_vector(&b, &order).unwrap();
        assert_eq!(scalar_product(&fa, &fb).unwrap(), 1);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let field = f(2);
        let o2 = enumerate_points(&field, 2);
        let o3 = enumerate_points(&field, 3);
        let a = incidence_vector(&Subspace::whole(&field, 2), &o2).unwrap();
        let b = incidence_vector(&Subspace::whole(&field, 3), &o3).unwrap();
        assert!(matches!(
            scalar_product(&a, &b),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            incidence_vector(&Subspace::whole(&field, 3), &o2),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn scalar_product_equals_q_int_of_intersection_dim() {
        // all pairs, including A = B and trivial intersections
        for (q, n) in [(2u64, 3usize), (3, 2)] {
            let field = f(q);
            let order = enumerate_points(&field, n);
            let all: Vec<Subspace> = all_subspaces(&field, n).collect();
            for a in &all {
                for b in &all {
                    let fa = incidence_vector(a, &order).unwrap();
                    let fb = incidence_vector(b, &order).unwrap();
                    let product = scalar_product(&fa, &fb).unwrap();
                    let t = intersection_dim(a, b).unwrap();
                    let expected = qcount::q_int(t as u64, q).to_u64().unwrap();
                    assert_eq!(product, expected, "pair dims {} {}", a.dim(), b.dim());
                }
            }
        }
    }

    #[test]
    fn weight_law() {
        let field = f(3);
        let order = enumerate_points(&field, 3);
        for s in all_subspaces(&field, 3) {
            let v = incidence_vector(&s, &order).unwrap();
            let expected = qcount::q_int(s.dim() as u64, 3).to_usize().unwrap();
            assert_eq!(v.weight(), expected);
        }
    }

    #[test]
    fn matrix_of_lines_of_pg_1_2_is_a_permutation_of_identity() {
        let field = f(2);
        let order = enumerate_points(&field, 2);
        let lines: Vec<Subspace> = crate::subspace::enumerate_subspaces(&field, 2, 1).collect();
        let m = incidence_matrix(&lines, &order).unwrap();
        assert_eq!((m.row_count(), m.order().len()), (3, 3));
        let int = m.as_int();
        assert_eq!(int.rank(), 3);
        for row in m.rows() {
            assert_eq!(row.weight(), 1);
        }
    }

    #[test]
    fn empty_and_singleton_matrices() {
        let field = f(2);
        let order = enumerate_points(&field, 2);
        let empty = incidence_matrix(&[], &order).unwrap();
        assert_eq!(empty.row_count(), 0);
        assert_eq!(empty.as_int().rows(), 0);
        let s = Subspace::from_vectors(&field, 2, &[vec![1, 1]]);
        let single = incidence_matrix(std::slice::from_ref(&s), &order).unwrap();
        assert_eq!(single.rows()[0], incidence_vector(&s, &order).unwrap());
    }

    #[test]
    fn gram_entries_are_q_ints_of_intersection_dims() {
        let field = f(3);
        let order = enumerate_points(&field, 3);
        let hyperplanes: Vec<Subspace> =
            crate::subspace::enumerate_subspaces(&field, 3, 2).collect();
        let m = incidence_matrix(&hyperplanes, &order).unwrap();
        let g = m.as_int().gram();
        for i in 0..13 {
            for j in 0..13 {
                let expected = if i == j { 4 } else { 1 };
                assert_eq!(g.at(i, j), &BigInt::from(expected));
            }
        }
    }

    #[test]
    fn cache_survives_concurrent_reads_and_inserts() {
        let field = f(3);
        let order = enumerate_points(&field, 3);
        let cache = IncidenceCache::new(order.clone());
        let all: Vec<Subspace> = all_subspaces(&field, 3).collect();
        std::thread::scope(|s| {
            for offset in 0..4 {
                let cache = &cache;
                let all = &all;
                let order = &order;
                s.spawn(move || {
                    for i in 0..all.len() {
                        let s = &all[(i + offset * 7) % all.len()];
                        let v = cache.vector(s).unwrap();
                        assert_eq!(*v, incidence_vector(s, order).unwrap());
                    }
                });
            }
        });
    }

    #[test]
    fn cache_returns_consistent_vectors_and_dims() {
        let field = f(2);
        let order = enumerate_points(&field, 3);
        let cache = IncidenceCache::new(order.clone());
        let all: Vec<Subspace> = all_subspaces(&field, 3).collect();
        for a in &all {
            let direct = incidence_vector(a, &order).unwrap();
            assert_eq!(*cache.vector(a).unwrap(), direct);
            for b in &all {
                assert_eq!(
                    cache.intersection_dim_via_scalar(a, b).unwrap(),
                    intersection_dim(a, b).unwrap()
                );
            }
        }
    }
}
