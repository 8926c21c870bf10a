//! Heaps of words in the simple reflections.
//!
//! Position `j` of a word is an element labeled by the node `word[j]`; the
//! order is generated by `j < j'` for earlier positions whose reflections do
//! not commute. Equal labels are ordered as well (see [`EqualLabelRule`]).

use rand::Rng;
use serde::Serialize;

use crate::cartan::{CartanDatum, Weight};
use crate::error::{Error, Result};
use crate::orbit::{generate_orbit, saturated_chain, verify_minuscule, OrbitPoset};

/// How pairs of equal labels enter the generating relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EqualLabelRule {
    /// Equal labels are related by word position, like any linked pair.
    #[default]
    Ordered,
    /// Only pairs joined by a Dynkin edge generate relations; equal labels
    /// become comparable only through transitivity.
    EdgesOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Heap {
    labels: Vec<usize>,
    less: Vec<Vec<bool>>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    below: Vec<Vec<usize>>,
    rank: Vec<usize>,
    canonical: Vec<(usize, usize)>,
}

impl Heap {
    pub fn from_word(cd: &CartanDatum, word: &[usize]) -> Result<Heap> {
        Heap::from_word_with(cd, word, EqualLabelRule::Ordered)
    }

    pub fn from_word_with(cd: &CartanDatum, word: &[usize], rule: EqualLabelRule) -> Result<Heap> {
        for &i in word {
            cd.check_node(i)?;
        }
        let n = word.len();
        let generates = |a: usize, b: usize| match rule {
            EqualLabelRule::Ordered => cd.linked(a, b),
            EqualLabelRule::EdgesOnly => cd.cartan[a][b] == -1,
        };
        let mut less = vec![vec![false; n]; n];
        for later in 0..n {
            for earlier in 0..later {
                if generates(word[earlier], word[later]) {
                    less[earlier][later] = true;
                    for k in 0..earlier {
                        if less[k][earlier] {
                            less[k][later] = true;
                        }
                    }
                }
            }
        }
        Ok(Heap::from_relation(word.to_vec(), less))
    }

    /// `less` must be a strict order compatible with index order.
    fn from_relation(labels: Vec<usize>, less: Vec<Vec<bool>>) -> Heap {
        let n = labels.len();
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for a in 0..n {
            for b in a + 1..n {
                if less[a][b] && !(a + 1..b).any(|k| less[a][k] && less[k][b]) {
                    lower_covers[b].push(a);
                    upper_covers[a].push(b);
                }
            }
        }
        let below: Vec<Vec<usize>> = (0..n).map(|b| (0..b).filter(|&a| less[a][b]).collect()).collect();
        let mut rank = vec![0usize; n];
        for b in 0..n {
            rank[b] = lower_covers[b].iter().map(|&a| rank[a] + 1).max().unwrap_or(0);
        }
        let max_label = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut seen = vec![0usize; max_label];
        let canonical = labels
            .iter()
            .map(|&l| {
                seen[l] += 1;
                (l, seen[l])
            })
            .collect();
        Heap { labels, less, lower_covers, upper_covers, below, rank, canonical }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, p: usize) -> usize {
        self.labels[p]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.less[a][b] || self.less[b][a]
    }

    pub fn lower_covers(&self, p: usize) -> &[usize] {
        &self.lower_covers[p]
    }

    pub fn upper_covers(&self, p: usize) -> &[usize] {
        &self.upper_covers[p]
    }

    /// Elements strictly below `p`.
    pub fn below(&self, p: usize) -> &[usize] {
        &self.below[p]
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|b| self.lower_covers[b].iter().map(move |&a| (a, b))).collect()
    }

    pub fn rank(&self, p: usize) -> usize {
        self.rank[p]
    }

    pub fn max_rank(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    /// `(label, occurrence)` with occurrences counted from 1 upward in heap order.
    pub fn canonical_name(&self, p: usize) -> (usize, usize) {
        self.canonical[p]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.lower_covers[p].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.upper_covers[p].is_empty()).collect()
    }

    /// Elements labeled `node`, in increasing heap order.
    pub fn label_fiber(&self, node: usize) -> Vec<usize> {
        let mut fiber: Vec<usize> = (0..self.len()).filter(|&p| self.labels[p] == node).collect();
        // positions already increase along the order; keep the sort explicit
        fiber.sort_by(|&a, &b| {
            if self.less[a][b] {
                std::cmp::Ordering::Less
            } else if self.less[b][a] {
                std::cmp::Ordering::Greater
            } else {
                a.cmp(&b)
            }
        });
        fiber
    }

    /// Whether every maximal chain has the same number of elements.
    pub fn is_graded(&self) -> bool {
        let mut longest = vec![0usize; self.len()];
        let mut shortest = vec![0usize; self.len()];
        for b in 0..self.len() {
            if let Some(l) = self.lower_covers[b].iter().map(|&a| longest[a] + 1).max() {
                longest[b] = l;
                shortest[b] = self.lower_covers[b].iter().map(|&a| shortest[a] + 1).min().unwrap();
            }
        }
        let tops = self.maximal_elements();
        let mut lengths = tops.iter().flat_map(|&p| [longest[p], shortest[p]]);
        match lengths.next() {
            None => true,
            Some(first) => lengths.all(|l| l == first),
        }
    }

    /// A linear extension drawn by repeatedly picking a uniformly random
    /// available element.
    pub fn random_linear_extension<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        let n = self.len();
        let mut missing: Vec<usize> = (0..n).map(|p| self.lower_covers[p].len()).collect();
        let mut available: Vec<usize> = (0..n).filter(|&p| missing[p] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while !available.is_empty() {
            let k = rng.gen_range(0..available.len());
            let p = available.swap_remove(k);
            out.push(p);
            for &q in &self.upper_covers[p] {
                missing[q] -= 1;
                if missing[q] == 0 {
                    available.push(q);
                }
            }
        }
        out
    }

    /// Whether `order` lists every element once, respecting the heap order.
    pub fn is_linear_extension(&self, order: &[usize]) -> bool {
        if order.len() != self.len() {
            return false;
        }
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &p) in order.iter().enumerate() {
            if p >= self.len() || pos[p] != usize::MAX {
                return false;
            }
            pos[p] = k;
        }
        self.covers().iter().all(|&(a, b)| pos[a] < pos[b])
    }

    pub fn word_of(&self, order: &[usize]) -> Vec<usize> {
        order.iter().map(|&p| self.labels[p]).collect()
    }
}

/// The label-preserving isomorphism matching canonical names, if it is one.
/// `result[p]` is the image in `h2` of element `p` of `h1`.
pub fn heaps_isomorphic(h1: &Heap, h2: &Heap) -> Option<Vec<usize>> {
    if h1.len() != h2.len() {
        return None;
    }
    let mut map = Vec::with_capacity(h1.len());
    for p in 0..h1.len() {
        let name = h1.canonical_name(p);
        let q = (0..h2.len()).find(|&q| h2.canonical_name(q) == name)?;
        map.push(q);
    }
    for a in 0..h1.len() {
        for b in 0..h1.len() {
            if h1.less(a, b) != h2.less(map[a], map[b]) {
                return None;
            }
        }
    }
    Some(map)
}

/// Orbit, saturated chain and heap for the minuscule weight `lambda`.
pub fn build_minuscule_heap(cd: &CartanDatum, lambda: &Weight, orbit_cap: usize) -> Result<(OrbitPoset, Heap)> {
    let orbit = generate_orbit(cd, lambda, orbit_cap)?;
    let report = verify_minuscule(cd, &orbit);
    if !report.passed() {
        return Err(Error::NotMinuscule { weight: lambda.to_string(), reason: report.summary() });
    }
    let word = saturated_chain(&orbit);
    let heap = Heap::from_word(cd, &word)?;
    Ok((orbit, heap))
}

#[derive(Debug, Clone, Serialize)]
pub struct HeapElementJson {
    pub id: usize,
    /// 1-based node.
    pub label: usize,
    pub rank: usize,
    pub canonical_name: (usize, usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct HeapJson {
    pub size: usize,
    pub elements: Vec<HeapElementJson>,
    pub covers: Vec<(usize, usize)>,
}

impl Heap {
    pub fn to_json(&self) -> HeapJson {
        HeapJson {
            size: self.len(),
            elements: (0..self.len())
                .map(|p| {
                    let (l, occ) = self.canonical_name(p);
                    HeapElementJson { id: p, label: self.label(p) + 1, rank: self.rank(p), canonical_name: (l + 1, occ) }
                })
                .collect(),
            covers: self.covers(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;
    use crate::orbit::DEFAULT_ORBIT_CAP;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a(t: usize) -> CartanDatum {
        CartanDatum::new(Family::A, t).unwrap()
    }

    #[test]
    fn two_chain() {
        let h = Heap::from_word(&a(2), &[0, 1]).unwrap();
        assert!(h.less(0, 1));
        assert_eq!(h.labels(), &[0, 1]);
        assert_eq!(h.covers(), vec![(0, 1)]);
    }

    #[test]
    fn diamond_from_a3_word() {
        let h = Heap::from_word(&a(3), &[1, 0, 2, 1]).unwrap();
        assert!(h.less(0, 1) && h.less(0, 2) && h.less(1, 3) && h.less(2, 3) && h.less(0, 3));
        assert!(!h.comparable(1, 2));
        assert_eq!(h.covers(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!((0..4).map(|p| h.rank(p)).collect::<Vec<_>>(), vec![0, 1, 1, 2]);
        assert_eq!(h.canonical_name(3), (1, 2));
        assert_eq!(h.label_fiber(1), vec![0, 3]);
        assert!(h.is_graded());
    }

    #[test]
    fn commuting_letters_give_antichain() {
        let h = Heap::from_word(&a(3), &[0, 2]).unwrap();
        assert!(!h.comparable(0, 1));
        assert!(h.covers().is_empty());
        assert_eq!(h.label_fiber(1), Vec::<usize>::new());
    }

    #[test]
    fn invalid_letters_are_rejected() {
        assert!(matches!(Heap::from_word(&a(2), &[0, 2]), Err(Error::NodeOutOfRange { node: 3, rank: 2 })));
    }

    #[test]
    fn isomorphism_examples() {
        let cd = a(3);
        let h1 = Heap::from_word(&cd, &[1, 0, 2, 1]).unwrap();
        let h2 = Heap::from_word(&cd, &[1, 2, 0, 1]).unwrap();
        assert_eq!(heaps_isomorphic(&h1, &h1), Some(vec![0, 1, 2, 3]));
        assert_eq!(heaps_isomorphic(&h1, &h2), Some(vec![0, 2, 1, 3]));
        let chain = Heap::from_word(&cd, &[0, 1]).unwrap();
        let anti = Heap::from_word(&cd, &[0, 2]).unwrap();
        assert_eq!(heaps_isomorphic(&chain, &anti), None);
    }

    #[test]
    fn minuscule_heaps_have_expected_sizes() {
        for (f, t, k, size) in [(Family::A, 1, 0, 1), (Family::D, 4, 0, 6), (Family::E, 6, 5, 16), (Family::E, 7, 6, 27)] {
            let cd = CartanDatum::new(f, t).unwrap();
            let (_, h) = build_minuscule_heap(&cd, &Weight::fundamental(t, k), DEFAULT_ORBIT_CAP).unwrap();
            assert_eq!(h.len(), size);
            assert!(h.is_graded());
        }
        let cd = CartanDatum::new(Family::D, 4).unwrap();
        assert!(matches!(
            build_minuscule_heap(&cd, &Weight::fundamental(4, 1), DEFAULT_ORBIT_CAP),
            Err(Error::NotMinuscule { .. })
        ));
    }

    #[test]
    fn equal_label_rules_agree_on_minuscule_words() {
        for (f, t) in [(Family::A, 5), (Family::D, 5), (Family::E, 6), (Family::E, 7)] {
            let cd = CartanDatum::new(f, t).unwrap();
            for k in cd.minuscule_catalog() {
                let orbit = generate_orbit(&cd, &Weight::fundamental(t, k), DEFAULT_ORBIT_CAP).unwrap();
                let word = saturated_chain(&orbit);
                let ordered = Heap::from_word_with(&cd, &word, EqualLabelRule::Ordered).unwrap();
                let edges = Heap::from_word_with(&cd, &word, EqualLabelRule::EdgesOnly).unwrap();
                assert_eq!(ordered, edges, "{f}{t} node {}", k + 1);
            }
        }
    }

    #[test]
    fn rules_differ_on_non_reduced_words() {
        // s_1 s_1 is not reduced; only the ordered rule relates the two letters
        let cd = a(2);
        let ordered = Heap::from_word_with(&cd, &[0, 0], EqualLabelRule::Ordered).unwrap();
        let edges = Heap::from_word_with(&cd, &[0, 0], EqualLabelRule::EdgesOnly).unwrap();
        assert!(ordered.less(0, 1));
        assert!(!edges.comparable(0, 1));
    }

    #[test]
    fn linear_extensions_are_valid() {
        let cd = CartanDatum::new(Family::E, 6).unwrap();
        let (_, h) = build_minuscule_heap(&cd, &Weight::fundamental(6, 0), DEFAULT_ORBIT_CAP).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let ext = h.random_linear_extension(&mut rng);
            assert!(h.is_linear_extension(&ext));
        }
        assert!(!h.is_linear_extension(&(0..h.len()).rev().collect::<Vec<_>>()));
    }
}
