//! Permutation groups and character-degree arithmetic.
//!
//! These groups serve as independent oracles: class sizes computed here by
//! cycle-type counting cross-check the generic conjugacy machinery, and the
//! character-degree enumeration feeds the low-degree representation
//! exclusions.

use std::collections::HashMap;

use thiserror::Error;

use crate::closure::{bfs_closure, BfsClosure};
use crate::matgroup::FiniteGroup;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("image list is not a permutation of 0..{0}")]
    NotABijection(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("group did not close within cap of {cap} elements")]
    NotClosedWithinCap { cap: usize },
}

/// A permutation of `0..n`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(PermError::NotABijection(n));
            }
            seen[v] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Permutation from disjoint-cycle notation on `0..n`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if from >= n || to >= n {
                    return Err(PermError::NotABijection(n));
                }
                images[from] = to;
            }
        }
        Perm::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self * other`: apply `self` first, then `other`.
    pub fn mul(&self, other: &Perm) -> Result<Perm, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Perm {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Perm { images }
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }
}

pub struct PermGroup {
    closure: BfsClosure<Perm>,
    inv: Vec<usize>,
}

impl PermGroup {
    pub fn generate(generators: &[Perm], cap: usize) -> Result<Self, PermError> {
        let n = generators.first().map(|g| g.degree()).unwrap_or(1);
        if let Some(g) = generators.iter().find(|g| g.degree() != n) {
            return Err(PermError::DegreeMismatch(n, g.degree()));
        }
        let closure = bfs_closure(
            Perm::identity(n),
            generators,
            |a, b| a.mul(b).expect("equal degrees"),
            cap,
        )
        .map_err(|e| PermError::NotClosedWithinCap { cap: e.cap })?;
        let m = closure.elements.len();
        let mut inv = vec![usize::MAX; m];
        for i in 0..m {
            if inv[i] != usize::MAX {
                continue;
            }
            let j = (0..m)
                .find(|&j| closure.mul_idx(i, j) == 0)
                .expect("finite group has inverses");
            inv[i] = j;
            inv[j] = i;
        }
        Ok(PermGroup { closure, inv })
    }

    /// The symmetric group on four letters, from a transposition and a
    /// four-cycle.
    pub fn symmetric_4() -> Self {
        let gens = [
            Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
        ];
        Self::generate(&gens, 100).unwrap()
    }

    /// The alternating group on five letters, from a three-cycle and a
    /// five-cycle.
    pub fn alternating_5() -> Self {
        let gens = [
            Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
        ];
        Self::generate(&gens, 200).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let rot = Perm::new((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        Self::generate(&[rot], n + 1).unwrap()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.closure.elements
    }

    /// Element counts per cycle type — an independent class-size oracle for
    /// symmetric groups (and their subgroups up to class fusion).
    pub fn cycle_type_census(&self) -> Vec<(Vec<usize>, usize)> {
        let mut census: HashMap<Vec<usize>, usize> = HashMap::new();
        for p in self.elements() {
            *census.entry(p.cycle_type()).or_insert(0) += 1;
        }
        let mut out: Vec<(Vec<usize>, usize)> = census.into_iter().collect();
        out.sort();
        out
    }

    pub fn abelianization_order(&self) -> usize {
        self.order() / self.commutator_subgroup().len()
    }
}

impl FiniteGroup for PermGroup {
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

/// All multisets of irreducible character degrees consistent with the given
/// data: `num_classes` degrees, each dividing `order`, exactly `num_linear`
/// of them equal to 1, squares summing to `order`. Returned sorted, each
/// multiset ascending.
pub fn char_degree_multisets(order: usize, num_classes: usize, num_linear: usize) -> Vec<Vec<usize>> {
    let divisors: Vec<usize> = (1..=order).filter(|d| order % d == 0).collect();
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    fn recurse(
        divisors: &[usize],
        min_idx: usize,
        remaining_slots: usize,
        remaining_sum: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining_slots == 0 {
            if remaining_sum == 0 {
                out.push(current.clone());
            }
            return;
        }
        for (k, &d) in divisors.iter().enumerate().skip(min_idx) {
            let sq = d * d;
            if sq > remaining_sum {
                break;
            }
            // Even the largest remaining allocation cannot overshoot; the
            // smallest (all remaining = d^2) must not undershoot what the
            // final slot alone could reach. Simple bound: prune when the
            // minimum possible sum exceeds the target.
            if sq * remaining_slots > remaining_sum {
                continue;
            }
            current.push(d);
            recurse(divisors, k, remaining_slots - 1, remaining_sum - sq, current, out);
            current.pop();
        }
    }
    recurse(&divisors, 0, num_classes, order, &mut current, &mut out);
    out.retain(|m| m.iter().filter(|&&d| d == 1).count() == num_linear);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn symmetric_4_structure() {
        let g = PermGroup::symmetric_4();
        assert_eq!(g.order(), 24);
        assert_eq!(g.class_sizes(), vec![1, 3, 6, 6, 8]);
        assert_eq!(g.normal_subgroup_orders(), vec![1, 4, 12, 24]);
        assert_eq!(g.abelianization_order(), 2);
    }

    #[test]
    fn alternating_5_structure() {
        let g = PermGroup::alternating_5();
        assert_eq!(g.order(), 60);
        assert_eq!(g.class_sizes(), vec![1, 12, 12, 15, 20]);
        assert_eq!(g.normal_subgroup_orders(), vec![1, 60]);
        assert_eq!(g.commutator_subgroup().len(), 60);
        assert_eq!(g.abelianization_order(), 1);
    }

    #[test]
    fn alternating_5_census_matches_class_sizes_up_to_fusion() {
        let g = PermGroup::alternating_5();
        let census = g.cycle_type_census();
        let expected: Vec<(Vec<usize>, usize)> = vec![
            (vec![1, 1, 1, 1, 1], 1),
            (vec![2, 2, 1], 15),
            (vec![3, 1, 1], 20),
            (vec![5], 24),
        ];
        let mut want = expected;
        want.sort();
        assert_eq!(census, want);
        // The 24 five-cycles split into the two classes of size 12.
        let classes = g.conjugacy_classes();
        let five_cycle_classes: Vec<usize> = classes
            .iter()
            .filter(|c| g.elements()[c[0]].cycle_type() == vec![5])
            .map(Vec::len)
            .collect();
        assert_eq!(five_cycle_classes, vec![12, 12]);
    }

    #[test]
    fn cyclic_6_is_abelian_with_all_subgroups_normal() {
        let g = PermGroup::cyclic(6);
        assert_eq!(g.order(), 6);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 6);
        assert_eq!(g.normal_subgroup_orders(), vec![1, 2, 3, 6]);
    }

    #[test]
    fn degree_multisets_for_order_60_with_5_classes_are_unique() {
        let ms = char_degree_multisets(60, 5, 1);
        assert_eq!(ms, vec![vec![1, 3, 3, 4, 5]]);
        assert!(!ms[0].contains(&2));
    }

    #[test]
    fn degree_multisets_for_order_24_with_5_classes_are_unique() {
        let ms = char_degree_multisets(24, 5, 2);
        assert_eq!(ms, vec![vec![1, 1, 2, 3, 3]]);
    }

    #[test]
    fn degree_multisets_respect_linear_count() {
        // Same order and class count, wrong linear count: nothing survives
        // or different multisets appear; either way the unique answer above
        // is gone.
        let ms = char_degree_multisets(60, 5, 4);
        assert!(ms.iter().all(|m| m != &vec![1, 3, 3, 4, 5]));
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        proptest::collection::vec(proptest::num::u64::ANY, n).prop_map(move |keys| {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by_key(|&i| keys[i]);
            Perm::new(idx).unwrap()
        })
    }

    proptest! {
        #[test]
        fn compose_is_associative(a in arb_perm(6), b in arb_perm(6), c in arb_perm(6)) {
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
        }

        #[test]
        fn inverse_cancels(a in arb_perm(7)) {
            prop_assert_eq!(a.mul(&a.inverse()).unwrap(), Perm::identity(7));
            prop_assert_eq!(a.inverse().mul(&a).unwrap(), Perm::identity(7));
        }
    }
}
