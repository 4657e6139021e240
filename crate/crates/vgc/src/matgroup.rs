//! Finite matrix groups over cyclotomic numbers: exact 3x3 linear algebra,
//! linear and projective group elements, closure tables, and the generic
//! finite-group queries (conjugacy classes, subgroups, normality) shared with
//! the permutation and surface-map groups.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::closure::{bfs_closure, BfsClosure};
use crate::cyclo::{CycError, CycNum};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatGroupError {
    #[error("matrix is singular")]
    Singular,
    #[error("group did not close within cap of {cap} elements")]
    NotClosedWithinCap { cap: usize },
    #[error("cannot mix linear and projective elements")]
    MixedProjectivity,
    #[error("empty generator list")]
    NoGenerators,
    #[error(transparent)]
    Cyc(#[from] CycError),
}

// ---------------------------------------------------------------------------
// Exact 3x3 matrices
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat3 {
    entries: [[CycNum; 3]; 3],
}

impl Mat3 {
    pub fn new(entries: [[CycNum; 3]; 3]) -> Self {
        Mat3 { entries }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> CycNum) -> Self {
        Mat3 {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        Self::from_fn(|i, j| CycNum::from_int(rows[i][j]))
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { CycNum::one() } else { CycNum::zero() })
    }

    pub fn diag(d: [CycNum; 3]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i].clone() } else { CycNum::zero() })
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i][j]
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| {
            let mut acc = CycNum::zero();
            for k in 0..3 {
                acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
            }
            acc
        })
    }

    pub fn scale(&self, s: &CycNum) -> Mat3 {
        Mat3::from_fn(|i, j| s * &self.entries[i][j])
    }

    pub fn det(&self) -> CycNum {
        let e = &self.entries;
        let minor =
            |a: usize, b: usize, c: usize, d: usize| &(&e[1][a] * &e[2][b]) - &(&e[1][c] * &e[2][d]);
        let t0 = &e[0][0] * &minor(1, 2, 2, 1);
        let t1 = &e[0][1] * &minor(0, 2, 2, 0);
        let t2 = &e[0][2] * &minor(0, 1, 1, 0);
        &(&t0 - &t1) + &t2
    }

    pub fn inverse(&self) -> Result<Mat3, MatGroupError> {
        let d = self.det();
        if d.is_zero() {
            return Err(MatGroupError::Singular);
        }
        let dinv = d.inverse().expect("nonzero determinant");
        let e = &self.entries;
        // Adjugate: cofactor transpose.
        let cof = |i: usize, j: usize| -> CycNum {
            let (r0, r1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = &(&e[r0][c0] * &e[r1][c1]) - &(&e[r0][c1] * &e[r1][c0]);
            if (i + j) % 2 == 0 {
                minor
            } else {
                -&minor
            }
        };
        Ok(Mat3::from_fn(|i, j| &cof(j, i) * &dinv))
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..3 {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..3 {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[i][j])?;
            }
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Group elements: linear (GL_3) or projective (PGL_3)
// ---------------------------------------------------------------------------

/// An invertible matrix considered either up to nothing (linear) or up to
/// scalars (projective). Projective elements are stored in canonical form —
/// first nonzero entry in row-major order scaled to 1 — so structural
/// equality and hashing agree with equality in PGL_3.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    mat: Mat3,
    projective: bool,
}

impl GroupElement {
    pub fn new(mat: Mat3, projective: bool) -> Result<Self, MatGroupError> {
        if mat.det().is_zero() {
            return Err(MatGroupError::Singular);
        }
        Ok(Self::canonical(mat, projective))
    }

    fn canonical(mat: Mat3, projective: bool) -> Self {
        if !projective {
            return GroupElement { mat, projective };
        }
        let mut lead = None;
        'outer: for i in 0..3 {
            for j in 0..3 {
                if !mat.entry(i, j).is_zero() {
                    lead = Some(mat.entry(i, j).clone());
                    break 'outer;
                }
            }
        }
        let lead = lead.expect("invertible matrix has a nonzero entry");
        let mat = mat.scale(&lead.inverse().expect("nonzero entry"));
        GroupElement { mat, projective }
    }

    pub fn mat(&self) -> &Mat3 {
        &self.mat
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement, MatGroupError> {
        if self.projective != other.projective {
            return Err(MatGroupError::MixedProjectivity);
        }
        Ok(Self::canonical(self.mat.mul(&other.mat), self.projective))
    }

    pub fn inverse(&self) -> Result<GroupElement, MatGroupError> {
        Ok(Self::canonical(self.mat.inverse()?, self.projective))
    }

    pub fn identity(projective: bool) -> Self {
        GroupElement {
            mat: Mat3::identity(),
            projective,
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.projective { "PGL" } else { "GL" };
        write!(f, "{tag}{:?}", self.mat)
    }
}

// ---------------------------------------------------------------------------
// Generic finite-group queries over an indexed multiplication structure
// ---------------------------------------------------------------------------

pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn mul_idx(&self, i: usize, j: usize) -> usize;
    fn inv_idx(&self, i: usize) -> usize;
    fn id_idx(&self) -> usize {
        0
    }

    fn element_order(&self, i: usize) -> usize {
        let mut acc = i;
        let mut k = 1;
        while acc != self.id_idx() {
            acc = self.mul_idx(acc, i);
            k += 1;
            assert!(k <= self.order(), "element order exceeds group order");
        }
        k
    }

    /// Conjugacy classes as sorted index lists, ordered by smallest member.
    fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut class = BTreeSet::new();
            for g in 0..n {
                let c = self.mul_idx(self.mul_idx(g, i), self.inv_idx(g));
                class.insert(c);
            }
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// Sorted multiset of conjugacy class sizes.
    fn class_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes
    }

    /// Subgroup generated by the seed indices, as a sorted index list.
    fn subgroup_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut set = BTreeSet::new();
        set.insert(self.id_idx());
        let mut frontier: Vec<usize> = vec![self.id_idx()];
        while let Some(a) = frontier.pop() {
            for &s in seed {
                let p = self.mul_idx(a, s);
                if set.insert(p) {
                    frontier.push(p);
                }
            }
        }
        set.into_iter().collect()
    }

    fn is_subgroup_normal(&self, sub: &[usize]) -> bool {
        let members: BTreeSet<usize> = sub.iter().copied().collect();
        for g in 0..self.order() {
            let ginv = self.inv_idx(g);
            for &h in sub {
                let c = self.mul_idx(self.mul_idx(g, h), ginv);
                if !members.contains(&c) {
                    return false;
                }
            }
        }
        true
    }

    /// Every subgroup, as sorted index lists ordered by (order, lexicographic).
    ///
    /// Cyclic subgroups seed the collection; pairwise joins are added until
    /// saturation. Every subgroup is a join of the cyclic subgroups of its
    /// elements, so the fixpoint is complete.
    fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut subs: BTreeSet<Vec<usize>> = BTreeSet::new();
        for i in 0..n {
            subs.insert(self.subgroup_closure(&[i]));
        }
        loop {
            let snapshot: Vec<Vec<usize>> = subs.iter().cloned().collect();
            let before = subs.len();
            for a in 0..snapshot.len() {
                for b in (a + 1)..snapshot.len() {
                    if snapshot[a].iter().all(|x| snapshot[b].contains(x))
                        || snapshot[b].iter().all(|x| snapshot[a].contains(x))
                    {
                        continue;
                    }
                    let mut seed = snapshot[a].clone();
                    seed.extend_from_slice(&snapshot[b]);
                    subs.insert(self.subgroup_closure(&seed));
                }
            }
            if subs.len() == before {
                break;
            }
        }
        let mut out: Vec<Vec<usize>> = subs.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn commutator_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let mut seeds = BTreeSet::new();
        for g in 0..n {
            for h in 0..n {
                let c = self.mul_idx(
                    self.mul_idx(self.mul_idx(self.inv_idx(g), self.inv_idx(h)), g),
                    h,
                );
                seeds.insert(c);
            }
        }
        let seeds: Vec<usize> = seeds.into_iter().collect();
        self.subgroup_closure(&seeds)
    }

    /// Sorted orders of all normal subgroups, found by testing unions of
    /// conjugacy classes (every normal subgroup is such a union).
    fn normal_subgroup_orders(&self) -> Vec<usize> {
        let classes = self.conjugacy_classes();
        let id_class = classes
            .iter()
            .position(|c| c.contains(&self.id_idx()))
            .expect("identity class");
        let others: Vec<usize> = (0..classes.len()).filter(|&i| i != id_class).collect();
        let n = self.order();
        let mut orders = BTreeSet::new();
        for mask in 0..(1u64 << others.len()) {
            let mut union: Vec<usize> = classes[id_class].clone();
            for (bit, &ci) in others.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    union.extend_from_slice(&classes[ci]);
                }
            }
            if n % union.len() != 0 {
                continue;
            }
            union.sort_unstable();
            if self.subgroup_closure(&union) == union {
                orders.insert(union.len());
            }
        }
        orders.into_iter().collect()
    }

    fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.mul_idx(i, j) == self.mul_idx(j, i)))
    }

    fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, i| {
            num::integer::lcm(acc, self.element_order(i))
        })
    }
}

// ---------------------------------------------------------------------------
// Closure table for matrix groups
// ---------------------------------------------------------------------------

pub struct GroupTable {
    closure: BfsClosure<GroupElement>,
    labels: Vec<String>,
    generator_labels: Vec<String>,
    inv: Vec<usize>,
    index: HashMap<GroupElement, usize>,
}

impl GroupTable {
    /// BFS closure of the generators; deterministic element order. `cap`
    /// bounds the number of elements explored.
    pub fn generate(
        generators: &[(String, GroupElement)],
        cap: usize,
    ) -> Result<Self, MatGroupError> {
        let (labels, gens): (Vec<String>, Vec<GroupElement>) = generators.iter().cloned().unzip();
        let first = gens.first().ok_or(MatGroupError::NoGenerators)?;
        let projective = first.is_projective();
        if gens.iter().any(|g| g.is_projective() != projective) {
            return Err(MatGroupError::MixedProjectivity);
        }
        let id = GroupElement::identity(projective);
        let closure = bfs_closure(id, &gens, |a, b| a.mul(b).expect("same projectivity"), cap)
            .map_err(|e| MatGroupError::NotClosedWithinCap { cap: e.cap })?;
        Ok(Self::finish(closure, labels))
    }

    fn finish(closure: BfsClosure<GroupElement>, generator_labels: Vec<String>) -> Self {
        let n = closure.elements.len();
        let labels = (0..n)
            .map(|i| closure.label(i, &generator_labels))
            .collect();
        let index: HashMap<GroupElement, usize> = closure
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let mut inv = vec![usize::MAX; n];
        for i in 0..n {
            if inv[i] != usize::MAX {
                continue;
            }
            let j = (0..n)
                .find(|&j| closure.mul_idx(i, j) == 0)
                .expect("finite group has inverses");
            inv[i] = j;
            inv[j] = i;
        }
        GroupTable {
            closure,
            labels,
            generator_labels,
            inv,
            index,
        }
    }

    pub const DEFAULT_CAP: usize = 10_000;

    pub fn elements(&self) -> &[GroupElement] {
        &self.closure.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.closure.elements[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.generator_labels
    }

    pub fn index_of(&self, e: &GroupElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Indices of the generators inside the element list.
    pub fn generator_indices(&self) -> Vec<usize> {
        (0..self.generator_labels.len())
            .map(|k| self.closure.step[0][k])
            .collect()
    }
}

impl FiniteGroup for GroupTable {
    fn order(&self) -> usize {
        self.closure.elements.len()
    }

    fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.closure.mul_idx(i, j)
    }

    fn inv_idx(&self, i: usize) -> usize {
        self.inv[i]
    }
}

// ---------------------------------------------------------------------------
// Relation checking and conjugation transport
// ---------------------------------------------------------------------------

/// A single defining relation: two words over generator indices that must
/// evaluate to the same element. Words multiply left to right.
#[derive(Debug, Clone)]
pub struct Relation {
    pub name: &'static str,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

fn eval_word(generators: &[GroupElement], word: &[usize]) -> Result<GroupElement, MatGroupError> {
    let projective = generators
        .first()
        .map(|g| g.is_projective())
        .unwrap_or(false);
    word.iter().try_fold(GroupElement::identity(projective), |acc, &k| {
        acc.mul(&generators[k])
    })
}

/// Checks each relation against concrete generator matrices; returns the
/// per-relation outcomes in order.
pub fn verify_relations(
    generators: &[GroupElement],
    relations: &[Relation],
) -> Result<Vec<(String, bool)>, MatGroupError> {
    relations
        .iter()
        .map(|r| {
            let l = eval_word(generators, &r.lhs)?;
            let rt = eval_word(generators, &r.rhs)?;
            Ok((r.name.to_string(), l == rt))
        })
        .collect()
}

/// Defining relations of the order-24 group on generators
/// (s, t, l1, l2) = indices (0, 1, 2, 3): four power relations and six mixed
/// relations.
pub fn s4_relations() -> Vec<Relation> {
    let rel = |name, lhs: &[usize], rhs: &[usize]| Relation {
        name,
        lhs: lhs.to_vec(),
        rhs: rhs.to_vec(),
    };
    vec![
        rel("s^2 = e", &[0, 0], &[]),
        rel("t^3 = e", &[1, 1, 1], &[]),
        rel("l1^2 = e", &[2, 2], &[]),
        rel("l2^2 = e", &[3, 3], &[]),
        rel("s*t = t^2*s", &[0, 1], &[1, 1, 0]),
        rel("l1*l2 = l2*l1", &[2, 3], &[3, 2]),
        rel("s*l1*s = l1*l2", &[0, 2, 0], &[2, 3]),
        rel("s*l2*s = l2", &[0, 3, 0], &[3]),
        rel("t^2*l1*t = l1*l2", &[1, 1, 2, 1], &[2, 3]),
        rel("t^2*l2*t = l1", &[1, 1, 3, 1], &[2]),
    ]
}

/// Whether conjugation by `t` carries each source matrix exactly onto its
/// assigned target, compared in PGL_3. This is a generator-by-generator
/// assignment check, not a bare subgroup comparison.
pub fn conjugation_transport(
    sources: &[Mat3],
    targets: &[Mat3],
    t: &Mat3,
) -> Result<bool, MatGroupError> {
    assert_eq!(sources.len(), targets.len());
    let tinv = t.inverse()?;
    for (s, tgt) in sources.iter().zip(targets) {
        let conj = GroupElement::new(t.mul(s).mul(&tinv), true)?;
        let want = GroupElement::new(tgt.clone(), true)?;
        if conj != want {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Standard generator data
// ---------------------------------------------------------------------------

/// The faithful 3x3 signed-permutation representation of the order-24 group:
/// s, t permutation matrices, l1, l2 diagonal sign matrices.
pub fn rho_s4_generators() -> Vec<(String, GroupElement)> {
    let m = |rows| GroupElement::new(Mat3::from_i64(rows), false).unwrap();
    vec![
        ("s".to_string(), m([[0, 1, 0], [1, 0, 0], [0, 0, 1]])),
        ("t".to_string(), m([[0, 0, 1], [1, 0, 0], [0, 1, 0]])),
        ("l1".to_string(), m([[-1, 0, 0], [0, 1, 0], [0, 0, -1]])),
        ("l2".to_string(), m([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])),
    ]
}

/// Generators of the order-216 projective monomial group: A, B permutation
/// matrices, C1, C2 sign matrices, D1, D2 diagonal cube-root scalings.
pub fn g216_generators() -> Vec<(String, GroupElement)> {
    let w = CycNum::omega();
    let one = CycNum::one();
    let mi = |rows| GroupElement::new(Mat3::from_i64(rows), true).unwrap();
    let md = |d: [CycNum; 3]| GroupElement::new(Mat3::diag(d), true).unwrap();
    vec![
        ("A".to_string(), mi([[1, 0, 0], [0, 0, 1], [0, 1, 0]])),
        ("B".to_string(), mi([[0, 0, 1], [1, 0, 0], [0, 1, 0]])),
        ("C1".to_string(), mi([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])),
        ("C2".to_string(), mi([[1, 0, 0], [0, -1, 0], [0, 0, -1]])),
        ("D1".to_string(), md([one.clone(), w.clone(), one.clone()])),
        ("D2".to_string(), md([one.clone(), one, w])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho_table() -> GroupTable {
        GroupTable::generate(&rho_s4_generators(), GroupTable::DEFAULT_CAP).unwrap()
    }

    fn g216_table() -> GroupTable {
        GroupTable::generate(&g216_generators(), GroupTable::DEFAULT_CAP).unwrap()
    }

    #[test]
    fn mat3_inverse_round_trip() {
        let m = Mat3::from_i64([[2, 1, 0], [0, 1, 0], [1, 0, 3]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat3::identity());
        assert_eq!(inv.mul(&m), Mat3::identity());
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = Mat3::from_i64([[1, 2, 3], [2, 4, 6], [0, 0, 1]]);
        assert_eq!(m.inverse().unwrap_err(), MatGroupError::Singular);
        assert!(GroupElement::new(m, true).is_err());
    }

    #[test]
    fn projective_canonical_form_quotients_scalars() {
        let w = CycNum::omega();
        let m = Mat3::identity();
        let a = GroupElement::new(m.clone(), true).unwrap();
        let b = GroupElement::new(m.scale(&w), true).unwrap();
        assert_eq!(a, b);
        let c = GroupElement::new(Mat3::identity().scale(&w), false).unwrap();
        assert_ne!(a.mat(), c.mat());
    }

    #[test]
    fn rho_closure_has_order_24() {
        let t = rho_table();
        assert_eq!(t.order(), 24);
        // Signed-permutation shape: every element permutes coordinates with
        // an even number of -1 scalings, so -I is absent.
        let minus_id = GroupElement::new(Mat3::from_i64([[-1, 0, 0], [0, -1, 0], [0, 0, -1]]), false)
            .unwrap();
        assert!(t.index_of(&minus_id).is_none());
    }

    #[test]
    fn rho_class_sizes_match_the_symmetric_group_on_four_letters() {
        let t = rho_table();
        assert_eq!(t.class_sizes(), vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn all_ten_relations_hold_for_rho() {
        let gens: Vec<GroupElement> = rho_s4_generators().into_iter().map(|(_, g)| g).collect();
        let results = verify_relations(&gens, &s4_relations()).unwrap();
        assert_eq!(results.len(), 10);
        for (name, ok) in results {
            assert!(ok, "relation failed: {name}");
        }
    }

    #[test]
    fn projective_closure_of_the_monomial_group_has_order_216() {
        let t = g216_table();
        assert_eq!(t.order(), 216);
    }

    #[test]
    fn subgroup_lattice_of_g216_matches_the_semidirect_structure() {
        let t = g216_table();
        let gi = t.generator_indices();
        let h1 = t.subgroup_closure(&gi[..4]);
        assert_eq!(h1.len(), 24);
        let h2 = t.subgroup_closure(&gi[4..]);
        assert_eq!(h2.len(), 9);
        assert!(t.is_subgroup_normal(&h2));
        // Intersection trivial and orders multiply: internal semidirect product.
        let inter: Vec<usize> = h1.iter().filter(|i| h2.contains(i)).copied().collect();
        assert_eq!(inter, vec![0]);
        assert_eq!(h1.len() * h2.len(), t.order());
        // D1*D2^2 generates an order-3 normal subgroup.
        let d1d2sq = t.mul_idx(t.mul_idx(gi[4], gi[5]), gi[5]);
        let h3 = t.subgroup_closure(&[d1d2sq]);
        assert_eq!(h3.len(), 3);
        assert!(t.is_subgroup_normal(&h3));
    }

    #[test]
    fn conjugation_by_t_transports_rho_onto_the_monomial_generators() {
        let rho: Vec<Mat3> = rho_s4_generators()
            .into_iter()
            .map(|(_, g)| g.mat().clone())
            .collect();
        let targets: Vec<Mat3> = g216_generators()[..4]
            .iter()
            .map(|(_, g)| g.mat().clone())
            .collect();
        let t_mat = rho[1].clone();
        assert!(conjugation_transport(&rho, &targets, &t_mat).unwrap());
        assert!(!conjugation_transport(&rho, &targets, &Mat3::identity()).unwrap());
    }

    #[test]
    fn closure_cap_reports_failure() {
        // diag(2, 1, 1) has infinite projective order.
        let g = GroupElement::new(Mat3::from_i64([[2, 0, 0], [0, 1, 0], [0, 0, 1]]), true).unwrap();
        match GroupTable::generate(&[("g".to_string(), g)], 50) {
            Err(e) => assert_eq!(e, MatGroupError::NotClosedWithinCap { cap: 50 }),
            Ok(_) => panic!("expected cap failure"),
        }
    }

    #[test]
    fn normal_subgroup_orders_of_the_rho_group() {
        let t = rho_table();
        assert_eq!(t.normal_subgroup_orders(), vec![1, 4, 12, 24]);
    }

    #[test]
    fn commutator_subgroup_of_rho_has_order_12() {
        let t = rho_table();
        assert_eq!(t.commutator_subgroup().len(), 12);
    }
}
