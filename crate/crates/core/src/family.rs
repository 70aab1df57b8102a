//! Families of subspaces: the tight constructions, the condition
//! checkers for the four family kinds, theorem bounds, and composite
//! verification reports that recompute the proof-level witnesses
//! (rank over the rationals, Gram parity structure) rather than just
//! comparing sizes.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;

use crate::error::Error;
use crate::field::FieldSpec;
use crate::incidence;
use crate::matfq::MatrixF2;
use crate::qcount;
use crate::subspace::{self, enumerate_points, enumerate_subspaces, Subspace};

/// An ordered family of pairwise-distinct subspaces of one F_q^n.
/// May be empty or a singleton; pairwise conditions then hold vacuously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    field: FieldSpec,
    n: usize,
    members: Vec<Subspace>,
}

impl Family {
    pub fn new(field: FieldSpec, n: usize, members: Vec<Subspace>) -> Result<Family, Error> {
        let mut seen: HashMap<&Subspace, usize> = HashMap::new();
        for (i, m) in members.iter().enumerate() {
            if m.field() != &field || m.ambient() != n {
                return Err(Error::AmbientMismatch {
                    expected_q: field.order(),
                    expected_n: n,
                    found_q: m.field().order(),
                    found_n: m.ambient(),
                });
            }
            if let Some(&first) = seen.get(m) {
                return Err(Error::DuplicateMember { first, second: i });
            }
            seen.insert(m, i);
        }
        Ok(Family { field, n, members })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Fisher intersection dimension. The plain constructor insists on
/// k >= 1 as the theorem does; `exploratory` additionally permits
/// k = 0 so that trivially-intersecting families can be searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FisherK(usize);

impl FisherK {
    pub fn new(k: usize) -> Option<FisherK> {
        if k >= 1 {
            Some(FisherK(k))
        } else {
            None
        }
    }

    /// Exploration mode: k = 0 allowed.
    pub fn exploratory(k: usize) -> FisherK {
        FisherK(k)
    }

    pub fn get(&self) -> usize {
        self.0
    }
}

/// The four family kinds.
///
/// `SkewPairs` applied to a plain family is read as the diagonal case
/// A_i = B_i, which degenerates to the oddtown conditions; genuinely
/// paired families go through [`SkewFamily`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// Every pairwise intersection has dimension exactly k.
    Fisher(FisherK),
    /// Odd member dimensions, even pairwise intersection dimensions.
    Oddtown,
    /// Even member dimensions, odd pairwise intersection dimensions.
    ReverseOddtown,
    /// Paired condition: dim(A_i ∩ B_i) odd, dim(A_i ∩ B_j) even.
    SkewPairs,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Fisher(k) => write!(f, "fisher(k={})", k.get()),
            FamilyKind::Oddtown => write!(f, "oddtown"),
            FamilyKind::ReverseOddtown => write!(f, "reverse-oddtown"),
            FamilyKind::SkewPairs => write!(f, "skew-pairs"),
        }
    }
}

/// The three constructions that meet the bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    /// All one-dimensional subspaces; [n]_q members, pairwise
    /// intersections zero.
    AllLines,
    /// All hyperplanes; needs n odd for even member dimension. [n]_q
    /// members meeting pairwise in dimension n-2.
    AllHyperplanes,
    /// All (n-2)-dimensional subspaces of the hyperplane spanned by
    /// e_1..e_{n-1}; needs n even. [n-1]_q members.
    InsideHyperplane,
}

impl Construction {
    pub fn cli_name(&self) -> &'static str {
        match self {
            Construction::AllLines => "f1",
            Construction::AllHyperplanes => "f2",
            Construction::InsideHyperplane => "f3",
        }
    }
}

pub fn construct_extremal(
    which: Construction,
    field: &FieldSpec,
    n: usize,
) -> Result<Family, Error> {
    match which {
        Construction::AllLines => {
            assert!(n >= 1, "lines need n >= 1");
            let members: Vec<Subspace> = enumerate_subspaces(field, n, 1).collect();
            Family::new(field.clone(), n, members)
        }
        Construction::AllHyperplanes => {
            if n % 2 == 0 {
                return Err(Error::ParityMismatch {
                    construction: "f2",
                    requirement: "odd n",
                    n,
                });
            }
            let members: Vec<Subspace> = enumerate_subspaces(field, n, n - 1).collect();
            Family::new(field.clone(), n, members)
        }
        Construction::InsideHyperplane => {
            if n % 2 != 0 || n < 2 {
                return Err(Error::ParityMismatch {
                    construction: "f3",
                    requirement: "even n >= 2",
                    n,
                });
            }
            // Enumerate (n-2)-dimensional subspaces of F_q^(n-1) and embed
            // them in F_q^n by a trailing zero coordinate; RREF survives.
            let members: Vec<Subspace> = enumerate_subspaces(field, n - 1, n - 2)
                .map(|s| {
                    let rows: Vec<Vec<u32>> = (0..s.dim())
                        .map(|r| {
                            let mut row = s.basis().row(r).to_vec();
                            row.push(0);
                            row
                        })
                        .collect();
                    Subspace::from_vectors(field, n, &rows)
                })
                .collect();
            Family::new(field.clone(), n, members)
        }
    }
}

/// First violated condition, in a fixed order: member-level checks by
/// index, then pairwise checks in lexicographic (i, j) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionViolation {
    pub i: usize,
    pub j: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConditionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

/// Checks every member-level and pairwise condition of `kind`;
/// `None` means the family qualifies. Vacuously true for m <= 1
/// except where a member-level parity is demanded.
pub fn check_conditions(family: &Family, kind: FamilyKind) -> Option<ConditionViolation> {
    let members = family.members();
    match kind {
        FamilyKind::Fisher(k) => {
            let k = k.get();
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    let d = subspace::intersection_dim(&members[i], &members[j]).unwrap();
                    if d != k {
                        return Some(ConditionViolation {
                            i,
                            j: Some(j),
                            message: format!(
                                "members {i} and {j} intersect in dimension {d}, expected {k}"
                            ),
                        });
                    }
                }
            }
            None
        }
        FamilyKind::Oddtown | FamilyKind::SkewPairs => parity_conditions(members, true),
        FamilyKind::ReverseOddtown => parity_conditions(members, false),
    }
}

/// Oddtown when `members_odd`, reverse oddtown otherwise.
fn parity_conditions(members: &[Subspace], members_odd: bool) -> Option<ConditionViolation> {
    let want_member = if members_odd { 1 } else { 0 };
    for (i, m) in members.iter().enumerate() {
        if m.dim() % 2 != want_member {
            return Some(ConditionViolation {
                i,
                j: None,
                message: format!(
                    "member {i} has {} dimension {}",
                    if members_odd { "even" } else { "odd" },
                    m.dim()
                ),
            });
        }
    }
    let want_pair = 1 - want_member;
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let d = subspace::intersection_dim(&members[i], &members[j]).unwrap();
            if d % 2 != want_pair {
                return Some(ConditionViolation {
                    i,
                    j: Some(j),
                    message: format!(
                        "members {i} and {j} intersect in {} dimension {d}",
                        if members_odd { "odd" } else { "even" }
                    ),
                });
            }
        }
    }
    None
}

/// Standing of a reported bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundStatus {
    /// Backed by a theorem at these parameters.
    Proven,
    /// Backed only by a conjecture (reserved; current bounds are either
    /// proven or open).
    Conjectured,
    /// No theorem applies (even q for the parity kinds); the value is
    /// the odd-q formula, reported for reference only.
    Open,
}

impl BoundStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundStatus::Proven => "proven",
            BoundStatus::Conjectured => "conjectured",
            BoundStatus::Open => "open",
        }
    }
}

/// A size bound together with its standing and, where one exists, the
/// stronger conjectured value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremBound {
    pub value: BigUint,
    pub status: BoundStatus,
    pub conjectured: Option<BigUint>,
}

/// The bound the theorems give for `kind` at (n, q).
///
/// The Fisher bound [n]_q holds for every prime power when k >= 1; the
/// exploratory k = 0 case is outside the theorem (all lines plus the
/// zero subspace already beat [n]_q) and reports the formula as an open
/// reference value. The parity kinds are proven only for odd q; for
/// even q the same formula is returned with [`BoundStatus::Open`]. For
/// reverse oddtown with n even the conjectured stronger bound [n-1]_q
/// is attached.
pub fn bound_for(kind: FamilyKind, n: usize, q: u64) -> TheoremBound {
    let n64 = n as u64;
    let q_odd = q % 2 == 1;
    match kind {
        FamilyKind::Fisher(k) => TheoremBound {
            value: qcount::q_int(n64, q),
            status: if k.get() >= 1 {
                BoundStatus::Proven
            } else {
                BoundStatus::Open
            },
            conjectured: None,
        },
        FamilyKind::Oddtown | FamilyKind::SkewPairs => TheoremBound {
            value: qcount::q_int(n64, q),
            status: if q_odd {
                BoundStatus::Proven
            } else {
                BoundStatus::Open
            },
            conjectured: None,
        },
        FamilyKind::ReverseOddtown => {
            if n % 2 == 1 {
                TheoremBound {
                    value: qcount::q_int(n64, q),
                    status: if q_odd {
                        BoundStatus::Proven
                    } else {
                        BoundStatus::Open
                    },
                    conjectured: None,
                }
            } else {
                TheoremBound {
                    value: qcount::q_int(n64, q) - 1u32,
                    status: if q_odd {
                        BoundStatus::Proven
                    } else {
                        BoundStatus::Open
                    },
                    conjectured: if q_odd {
                        Some(qcount::q_int(n64 - 1, q))
                    } else {
                        None
                    },
                }
            }
        }
    }
}

/// Outcome of verifying one family against one kind: the conditions,
/// the size against the bound, and the proof-level witnesses.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub kind: FamilyKind,
    pub conditions_hold: bool,
    pub size: usize,
    pub bound: TheoremBound,
    pub bound_satisfied: bool,
    /// Rank of the incidence matrix over the rationals (Fisher); must
    /// equal the family size.
    pub rank_witness: Option<usize>,
    /// Rank of the Gram matrix mod 2 (parity kinds, odd q).
    pub parity_witness: Option<usize>,
    /// True when every computed witness matches what the proofs demand.
    pub witnesses_consistent: bool,
    pub failure_detail: Option<String>,
}

impl VerificationReport {
    /// Overall verdict. Exceeding an open reference value is not a
    /// violation; only proven bounds can be violated.
    pub fn satisfied(&self) -> bool {
        self.conditions_hold
            && self.witnesses_consistent
            && (self.bound_satisfied || self.bound.status != BoundStatus::Proven)
    }
}

/// Runs the condition checks and, when they hold, recomputes the
/// linear-algebra facts the proofs rest on:
///
/// - Fisher: the incidence vectors are independent over the rationals,
///   so the incidence matrix has rank m.
/// - Oddtown (odd q): the Gram matrix is the identity mod 2, so its
///   F_2 rank is m.
/// - Reverse oddtown (odd q): the Gram matrix mod 2 is all-ones minus
///   identity and every incidence row has even weight.
pub fn verify_family(family: &Family, kind: FamilyKind) -> VerificationReport {
    let size = family.len();
    let q = family.field().order() as u64;
    let bound = bound_for(kind, family.ambient(), q);
    let bound_satisfied = BigUint::from(size) <= bound.value;
    let violation = check_conditions(family, kind);
    let conditions_hold = violation.is_none();

    let mut rank_witness = None;
    let mut parity_witness = None;
    let mut witnesses_consistent = true;
    let mut failure_detail = violation.map(|v| v.message);

    if conditions_hold && size > 0 {
        let order = enumerate_points(family.field(), family.ambient());
        let inc = incidence::incidence_matrix(family.members(), &order).unwrap();
        let int = inc.as_int();
        match kind {
            FamilyKind::Fisher(k) => {
                let rank = int.rank();
                rank_witness = Some(rank);
                // full rank is what the proof establishes for k >= 1;
                // with k = 0 the zero subspace contributes a zero row
                if k.get() >= 1 && rank != size {
                    witnesses_consistent = false;
                    failure_detail =
                        Some(format!("incidence rank {rank} differs from family size {size}"));
                }
            }
            FamilyKind::Oddtown | FamilyKind::SkewPairs => {
                if family.field().is_odd() {
                    let gram2 = int.gram().mod2();
                    let rank = gram2.rank();
                    parity_witness = Some(rank);
                    if gram2 != MatrixF2::identity(size) {
                        witnesses_consistent = false;
                        failure_detail =
                            Some("gram matrix mod 2 is not the identity".to_string());
                    } else if rank != size {
                        witnesses_consistent = false;
                        failure_detail =
                            Some(format!("gram rank {rank} differs from family size {size}"));
                    }
                }
            }
            FamilyKind::ReverseOddtown => {
                if family.field().is_odd() {
                    let gram2 = int.gram().mod2();
                    let rank = gram2.rank();
                    parity_witness = Some(rank);
                    if gram2 != MatrixF2::ones_off_diagonal(size) {
                        witnesses_consistent = false;
                        failure_detail = Some(
                            "gram matrix mod 2 is not all-ones minus identity".to_string(),
                        );
                    } else if let Some(bad) =
                        (0..size).find(|&i| inc.rows()[i].weight() % 2 != 0)
                    {
                        witnesses_consistent = false;
                        failure_detail =
                            Some(format!("incidence row {bad} has odd weight"));
                    }
                }
            }
        }
    }

    VerificationReport {
        kind,
        conditions_hold,
        size,
        bound,
        bound_satisfied,
        rank_witness,
        parity_witness,
        witnesses_consistent,
        failure_detail,
    }
}

/// Paired sequences (A_i, B_i). The A side is pairwise distinct and so
/// is the B side; A_i = B_j across sides is allowed, and A_i = B_i for
/// all i recovers plain oddtown.
#[derive(Debug, Clone)]
pub struct SkewFamily {
    field: FieldSpec,
    n: usize,
    pairs: Vec<(Subspace, Subspace)>,
}

impl SkewFamily {
    pub fn new(
        field: FieldSpec,
        n: usize,
        pairs: Vec<(Subspace, Subspace)>,
    ) -> Result<SkewFamily, Error> {
        let mut seen_a: HashMap<&Subspace, usize> = HashMap::new();
        let mut seen_b: HashMap<&Subspace, usize> = HashMap::new();
        for (i, (a, b)) in pairs.iter().enumerate() {
            for s in [a, b] {
                if s.field() != &field || s.ambient() != n {
                    return Err(Error::AmbientMismatch {
                        expected_q: field.order(),
                        expected_n: n,
                        found_q: s.field().order(),
                        found_n: s.ambient(),
                    });
                }
            }
            if let Some(&first) = seen_a.get(a) {
                return Err(Error::DuplicateMember { first, second: i });
            }
            if let Some(&first) = seen_b.get(b) {
                return Err(Error::DuplicateMember { first, second: i });
            }
            seen_a.insert(a, i);
            seen_b.insert(b, i);
        }
        Ok(SkewFamily { field, n, pairs })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(Subspace, Subspace)] {
        &self.pairs
    }
}

/// dim(A_i ∩ B_i) odd for every i, dim(A_i ∩ B_j) even for every
/// ordered pair i != j. Diagonal checks first, then (i, j) in
/// lexicographic order.
pub fn check_skew_conditions(family: &SkewFamily) -> Option<ConditionViolation> {
    let pairs = family.pairs();
    for (i, (a, b)) in pairs.iter().enumerate() {
        let d = subspace::intersection_dim(a, b).unwrap();
        if d % 2 == 0 {
            return Some(ConditionViolation {
                i,
                j: Some(i),
                message: format!("pair {i} intersects in even dimension {d}"),
            });
        }
    }
    for i in 0..pairs.len() {
        for j in 0..pairs.len() {
            if i == j {
                continue;
            }
            let d = subspace::intersection_dim(&pairs[i].0, &pairs[j].1).unwrap();
            if d % 2 == 1 {
                return Some(ConditionViolation {
                    i,
                    j: Some(j),
                    message: format!("A_{i} and B_{j} intersect in odd dimension {d}"),
                });
            }
        }
    }
    None
}

/// Verifies a paired family. For odd q the cross products
/// [dim(A_i ∩ B_j)]_q are odd exactly on the diagonal, so the cross-Gram
/// matrix mod 2 is the identity and has rank m.
pub fn verify_skew(family: &SkewFamily) -> VerificationReport {
    let size = family.len();
    let q = family.field.order() as u64;
    let bound = bound_for(FamilyKind::SkewPairs, family.n, q);
    let bound_satisfied = BigUint::from(size) <= bound.value;
    let violation = check_skew_conditions(family);
    let conditions_hold = violation.is_none();

    let mut parity_witness = None;
    let mut witnesses_consistent = true;
    let mut failure_detail = violation.map(|v| v.message);

    if conditions_hold && size > 0 && family.field.is_odd() {
        let order = enumerate_points(&family.field, family.n);
        let a_side: Vec<Subspace> = family.pairs.iter().map(|(a, _)| a.clone()).collect();
        let b_side: Vec<Subspace> = family.pairs.iter().map(|(_, b)| b.clone()).collect();
        let ma = incidence::incidence_matrix(&a_side, &order).unwrap().as_int();
        let mb = incidence::incidence_matrix(&b_side, &order).unwrap().as_int();
        let cross2 = ma.mul_transpose(&mb).mod2();
        let rank = cross2.rank();
        parity_witness = Some(rank);
        if cross2 != MatrixF2::identity(size) {
            witnesses_consistent = false;
            failure_detail = Some("cross-gram matrix mod 2 is not the identity".to_string());
        }
    }

    VerificationReport {
        kind: FamilyKind::SkewPairs,
        conditions_hold,
        size,
        bound,
        bound_satisfied,
        rank_witness: None,
        parity_witness,
        witnesses_consistent,
        failure_detail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn f(q: u64) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    fn lines(q: u64, n: usize) -> Family {
        construct_extremal(Construction::AllLines, &f(q), n).unwrap()
    }

    #[test]
    fn construction_sizes() {
        assert_eq!(lines(2, 3).len(), 7);
        let f2 = construct_extremal(Construction::AllHyperplanes, &f(3), 3).unwrap();
        assert_eq!(f2.len(), 13);
        let f3 = construct_extremal(Construction::InsideHyperplane, &f(3), 4).unwrap();
        assert_eq!(f3.len(), 13);
        for m in f3.members() {
            assert_eq!(m.dim(), 2);
            assert_eq!(m.ambient(), 4);
            // inside span(e1, e2, e3): last coordinate of every basis row is 0
            for r in 0..m.dim() {
                assert_eq!(m.basis().at(r, 3), 0);
            }
        }
    }

    #[test]
    fn construction_parity_preconditions() {
        assert!(matches!(
            construct_extremal(Construction::AllHyperplanes, &f(3), 4),
            Err(Error::ParityMismatch { .. })
        ));
        assert!(matches!(
            construct_extremal(Construction::InsideHyperplane, &f(3), 3),
            Err(Error::ParityMismatch { .. })
        ));
    }

    #[test]
    fn fisher_k_rejects_zero() {
        assert!(FisherK::new(0).is_none());
        assert_eq!(FisherK::new(2).unwrap().get(), 2);
        assert_eq!(FisherK::exploratory(0).get(), 0);
    }

    #[test]
    fn lines_form_an_oddtown() {
        let family = lines(3, 2);
        assert!(check_conditions(&family, FamilyKind::Oddtown).is_none());
    }

    #[test]
    fn hyperplanes_form_a_reverse_oddtown() {
        let family = construct_extremal(Construction::AllHyperplanes, &f(3), 3).unwrap();
        assert!(check_conditions(&family, FamilyKind::ReverseOddtown).is_none());
    }

    #[test]
    fn lines_fail_fisher_with_k_one() {
        let family = lines(2, 3);
        let v = check_conditions(&family, FamilyKind::Fisher(FisherK::new(1).unwrap()))
            .expect("lines intersect in dimension 0, not 1");
        assert_eq!((v.i, v.j), (0, Some(1)));
    }

    #[test]
    fn oddtown_member_parity_is_checked() {
        let field = f(3);
        let plane = Subspace::from_vectors(&field, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let family = Family::new(field, 3, vec![plane]).unwrap();
        let v = check_conditions(&family, FamilyKind::Oddtown).unwrap();
        assert_eq!((v.i, v.j), (0, None));
    }

    #[test]
    fn oddtown_pairwise_parity_is_checked() {
        let field = f(2);
        let line = Subspace::from_vectors(&field, 3, &[vec![1, 0, 0]]);
        let whole = Subspace::whole(&field, 3);
        let family = Family::new(field, 3, vec![line, whole]).unwrap();
        let v = check_conditions(&family, FamilyKind::Oddtown).unwrap();
        assert_eq!((v.i, v.j), (0, Some(1)));
    }

    #[test]
    fn verdict_is_order_invariant() {
        let field = f(3);
        let mut members = construct_extremal(Construction::AllHyperplanes, &field, 3)
            .unwrap()
            .members()
            .to_vec();
        let forward = Family::new(field.clone(), 3, members.clone()).unwrap();
        members.reverse();
        let backward = Family::new(field.clone(), 3, members.clone()).unwrap();
        members.rotate_left(5);
        let rotated = Family::new(field, 3, members).unwrap();
        for kind in [FamilyKind::ReverseOddtown, FamilyKind::Oddtown] {
            let a = check_conditions(&forward, kind).is_none();
            let b = check_conditions(&backward, kind).is_none();
            let c = check_conditions(&rotated, kind).is_none();
            assert!(a == b && b == c);
        }
    }

    #[test]
    fn bounds_match_the_theorems() {
        assert_eq!(
            bound_for(FamilyKind::Oddtown, 3, 3).value.to_u64(),
            Some(13)
        );
        let rev = bound_for(FamilyKind::ReverseOddtown, 4, 3);
        assert_eq!(rev.value.to_u64(), Some(39));
        assert_eq!(rev.conjectured.as_ref().and_then(|c| c.to_u64()), Some(13));
        assert_eq!(rev.status, BoundStatus::Proven);
        let fisher = bound_for(FamilyKind::Fisher(FisherK::new(2).unwrap()), 4, 5);
        assert_eq!(fisher.value, qcount::q_int(4, 5));
        assert_eq!(fisher.status, BoundStatus::Proven);
    }

    #[test]
    fn even_q_bounds_are_open() {
        for kind in [FamilyKind::Oddtown, FamilyKind::ReverseOddtown, FamilyKind::SkewPairs] {
            assert_eq!(bound_for(kind, 3, 2).status, BoundStatus::Open);
            assert_eq!(bound_for(kind, 4, 8).status, BoundStatus::Open);
        }
        assert!(bound_for(FamilyKind::ReverseOddtown, 4, 2).conjectured.is_none());
        // Fisher needs no parity hypothesis
        assert_eq!(
            bound_for(FamilyKind::Fisher(FisherK::new(1).unwrap()), 3, 2).status,
            BoundStatus::Proven
        );
        // but the exploratory k = 0 case is outside the theorem
        assert_eq!(
            bound_for(FamilyKind::Fisher(FisherK::exploratory(0)), 3, 2).status,
            BoundStatus::Open
        );
    }

    #[test]
    fn exploratory_k_zero_tolerates_the_zero_subspace() {
        // lines plus the zero subspace: pairwise intersections all zero,
        // one more member than [n]_q, incidence rank one short
        let field = f(2);
        let mut members = lines(2, 3).members().to_vec();
        members.push(Subspace::zero(&field, 3));
        let family = Family::new(field, 3, members).unwrap();
        let kind = FamilyKind::Fisher(FisherK::exploratory(0));
        assert!(check_conditions(&family, kind).is_none());
        let report = verify_family(&family, kind);
        assert!(report.conditions_hold);
        assert_eq!(report.size, 8);
        assert_eq!(report.rank_witness, Some(7));
        assert!(report.witnesses_consistent, "k = 0 does not demand full rank");
        assert!(!report.bound_satisfied);
        assert_eq!(report.bound.status, BoundStatus::Open);
        assert!(report.satisfied(), "exceeding an open reference is no violation");
    }

    #[test]
    fn verify_hyperplanes_as_reverse_oddtown() {
        let family = construct_extremal(Construction::AllHyperplanes, &f(3), 3).unwrap();
        let report = verify_family(&family, FamilyKind::ReverseOddtown);
        assert!(report.conditions_hold);
        assert_eq!(report.size, 13);
        assert_eq!(report.bound.value.to_u64(), Some(13));
        assert!(report.bound_satisfied);
        assert!(report.witnesses_consistent);
        assert!(report.satisfied());
    }

    #[test]
    fn verify_lines_as_oddtown_with_parity_witness() {
        let report = verify_family(&lines(3, 2), FamilyKind::Oddtown);
        assert!(report.conditions_hold);
        assert_eq!(report.size, 4);
        assert_eq!(report.bound.value.to_u64(), Some(4));
        assert_eq!(report.parity_witness, Some(4));
        assert!(report.satisfied());
    }

    #[test]
    fn verify_singleton_and_empty_families() {
        let field = f(3);
        let whole = Subspace::whole(&field, 2);
        let singleton = Family::new(field.clone(), 2, vec![whole]).unwrap();
        for kind in [
            FamilyKind::Fisher(FisherK::new(1).unwrap()),
            FamilyKind::Oddtown,
            FamilyKind::ReverseOddtown,
        ] {
            let report = verify_family(&singleton, kind);
            assert!(report.conditions_hold || kind == FamilyKind::Oddtown);
            assert!(report.bound_satisfied);
        }
        let empty = Family::new(field, 2, vec![]).unwrap();
        let report = verify_family(&empty, FamilyKind::Oddtown);
        assert!(report.conditions_hold && report.bound_satisfied);
    }

    #[test]
    fn constructed_families_hit_their_stated_sizes() {
        for (q, n) in [(2u64, 2usize), (2, 3), (3, 2), (3, 3), (5, 2)] {
            let family = lines(q, n);
            let expected = qcount::q_int(n as u64, q).to_usize().unwrap();
            assert_eq!(family.len(), expected);
            let report = verify_family(&family, FamilyKind::Oddtown);
            assert!(report.conditions_hold);
        }
        for (q, n) in [(3u64, 3usize), (5, 3), (2, 3)] {
            let family = construct_extremal(Construction::AllHyperplanes, &f(q), n).unwrap();
            assert_eq!(family.len(), qcount::q_int(n as u64, q).to_usize().unwrap());
            let report = verify_family(&family, FamilyKind::ReverseOddtown);
            assert!(report.conditions_hold && report.bound_satisfied);
        }
        for (q, n) in [(3u64, 4usize), (2, 4), (5, 2)] {
            let family = construct_extremal(Construction::InsideHyperplane, &f(q), n).unwrap();
            assert_eq!(
                family.len(),
                qcount::q_int(n as u64 - 1, q).to_usize().unwrap()
            );
            let report = verify_family(&family, FamilyKind::ReverseOddtown);
            assert!(report.conditions_hold && report.witnesses_consistent);
            assert!(!report.bound.conjectured.map_or(false, |c| {
                BigUint::from(report.size) > c
            }));
        }
    }

    #[test]
    fn duplicate_members_are_rejected() {
        let field = f(2);
        let a = Subspace::from_vectors(&field, 2, &[vec![1, 0]]);
        let b = Subspace::from_vectors(&field, 2, &[vec![1, 0]]);
        assert!(matches!(
            Family::new(field, 2, vec![a, b]),
            Err(Error::DuplicateMember { first: 0, second: 1 })
        ));
    }

    #[test]
    fn skew_diagonal_recovers_oddtown() {
        let field = f(3);
        let pairs: Vec<(Subspace, Subspace)> = lines(3, 2)
            .members()
            .iter()
            .map(|s| (s.clone(), s.clone()))
            .collect();
        let skew = SkewFamily::new(field, 2, pairs).unwrap();
        assert!(check_skew_conditions(&skew).is_none());
        let report = verify_skew(&skew);
        assert!(report.conditions_hold && report.witnesses_consistent);
        assert_eq!(report.parity_witness, Some(4));
        assert_eq!(report.bound.value.to_u64(), Some(4));
    }

    #[test]
    fn skew_distinctness_is_per_side() {
        let field = f(3);
        let a = Subspace::from_vectors(&field, 2, &[vec![1, 0]]);
        let b = Subspace::from_vectors(&field, 2, &[vec![0, 1]]);
        // A_0 = B_1 across sides is fine
        let ok = SkewFamily::new(
            field.clone(),
            2,
            vec![(a.clone(), a.clone()), (b.clone(), a.clone())],
        );
        assert!(matches!(ok, Err(Error::DuplicateMember { .. })));
        let fine = SkewFamily::new(
            field.clone(),
            2,
            vec![(a.clone(), b.clone()), (b.clone(), a.clone())],
        );
        assert!(fine.is_ok());
        let dup_a = SkewFamily::new(field, 2, vec![(a.clone(), a.clone()), (a, b)]);
        assert!(matches!(dup_a, Err(Error::DuplicateMember { .. })));
    }

    #[test]
    fn skew_off_diagonal_violation_is_reported() {
        let field = f(3);
        let whole = Subspace::whole(&field, 2);
        let e1 = Subspace::from_vectors(&field, 2, &[vec![1, 0]]);
        let e2 = Subspace::from_vectors(&field, 2, &[vec![0, 1]]);
        // diagonals: dim(whole ∩ e1) = 1, dim(e2 ∩ e2) = 1, both odd;
        // but dim(A_0 ∩ B_1) = dim(whole ∩ e2) = 1 is odd too.
        let skew =
            SkewFamily::new(field, 2, vec![(whole, e1), (e2.clone(), e2)]).unwrap();
        let v = check_skew_conditions(&skew).unwrap();
        assert_eq!((v.i, v.j), (0, Some(1)));
    }
}
