//! Breadth-first closure of a finite set of generators under an associative
//! operation, shared by the matrix, permutation, and surface-map group types.
//!
//! The exploration order is fixed — elements are visited in discovery order
//! and generators in the order given — so element indices, words, and labels
//! are deterministic across runs. This stage is deliberately single-threaded:
//! downstream consumers rely on the index assignment being reproducible.

use std::collections::HashMap;
use std::hash::Hash;

/// Result of a successful closure run.
///
/// Index 0 is always the identity; `step[i][k]` is the index of
/// `elements[i] * generators[k]`; `words[i]` is the generator-index word that
/// produces `elements[i]` (empty for the identity).
#[derive(Debug)]
pub(crate) struct BfsClosure<T> {
    pub elements: Vec<T>,
    pub words: Vec<Vec<usize>>,
    pub step: Vec<Vec<usize>>,
}

/// Closure exceeded the element cap: the generators do not close within
/// `cap` elements (or do not generate a finite group at all).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct CapExceeded {
    pub cap: usize,
}

pub(crate) fn bfs_closure<T, F>(
    identity: T,
    generators: &[T],
    mul: F,
    cap: usize,
) -> Result<BfsClosure<T>, CapExceeded>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elements = vec![identity.clone()];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut index: HashMap<T, usize> = HashMap::new();
    index.insert(identity, 0);
    let mut step: Vec<Vec<usize>> = Vec::new();

    let mut i = 0;
    while i < elements.len() {
        let mut row = Vec::with_capacity(generators.len());
        for (k, g) in generators.iter().enumerate() {
            let p = mul(&elements[i], g);
            let idx = match index.get(&p) {
                Some(&idx) => idx,
                None => {
                    if elements.len() >= cap {
                        return Err(CapExceeded { cap });
                    }
                    let idx = elements.len();
                    let mut w = words[i].clone();
                    w.push(k);
                    elements.push(p.clone());
                    words.push(w);
                    index.insert(p, idx);
                    idx
                }
            };
            row.push(idx);
        }
        step.push(row);
        i += 1;
    }
    Ok(BfsClosure {
        elements,
        words,
        step,
    })
}

impl<T> BfsClosure<T> {
    /// Human-readable label for element `i`: generator labels joined by `*`,
    /// or `"e"` for the identity.
    pub fn label(&self, i: usize, generator_labels: &[String]) -> String {
        if self.words[i].is_empty() {
            return "e".to_string();
        }
        self.words[i]
            .iter()
            .map(|&k| generator_labels[k].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Index of `elements[i] * elements[j]`, computed by replaying `j`'s
    /// generator word through the step table. Pure index arithmetic.
    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.words[j].iter().fold(i, |acc, &k| self.step[acc][k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Z/6 via addition mod 6, generated by 2 and 3.
    fn mod6(a: &u8, b: &u8) -> u8 {
        (a + b) % 6
    }

    #[test]
    fn closes_z6_from_two_generators() {
        let c = bfs_closure(0u8, &[2, 3], mod6, 100).unwrap();
        assert_eq!(c.elements.len(), 6);
        assert_eq!(c.elements[0], 0);
        // Discovery order: 0, then 0+2=2, 0+3=3, 2+2=4, 2+3=5, 3+3=0(dup), 4+...
        assert_eq!(c.elements, vec![0, 2, 3, 4, 5, 1]);
    }

    #[test]
    fn mul_idx_matches_direct_products() {
        let c = bfs_closure(0u8, &[2, 3], mod6, 100).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let direct = mod6(&c.elements[i], &c.elements[j]);
                let via_words = c.elements[c.mul_idx(i, j)];
                assert_eq!(direct, via_words);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        // Addition on integers never closes.
        let r = bfs_closure(0i64, &[1], |a, b| a + b, 10);
        assert_eq!(r.unwrap_err(), CapExceeded { cap: 10 });
    }

    #[test]
    fn labels_join_generator_names() {
        let c = bfs_closure(0u8, &[2, 3], mod6, 100).unwrap();
        let labels = vec!["a".to_string(), "b".to_string()];
        assert_eq!(c.label(0, &labels), "e");
        assert_eq!(c.label(1, &labels), "a");
        assert_eq!(c.label(4, &labels), "a*b");
    }
}
