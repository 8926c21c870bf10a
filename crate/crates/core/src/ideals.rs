//! Order ideals of a heap, toggles, the map `phi` to the weight orbit, and
//! the rowmotion and gyration actions.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::cartan::{CartanDatum, Weight};
use crate::error::{Error, Result};
use crate::heap::Heap;
use crate::orbit::OrbitPoset;

pub const MAX_HEAP_SIZE: usize = 128;
pub const DEFAULT_IDEAL_CAP: usize = 1_000_000;

/// A subset of heap elements as a 128-bit mask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderIdeal(u128);

impl OrderIdeal {
    pub const EMPTY: OrderIdeal = OrderIdeal(0);

    pub fn full(n: usize) -> Self {
        if n >= 128 {
            OrderIdeal(u128::MAX)
        } else {
            OrderIdeal((1u128 << n) - 1)
        }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        elements.into_iter().fold(OrderIdeal::EMPTY, |acc, p| acc.with(p))
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, p: usize) -> bool {
        self.0 >> p & 1 == 1
    }

    pub fn with(self, p: usize) -> Self {
        OrderIdeal(self.0 | 1 << p)
    }

    pub fn without(self, p: usize) -> Self {
        OrderIdeal(self.0 & !(1 << p))
    }

    pub fn flip(self, p: usize) -> Self {
        OrderIdeal(self.0 ^ 1 << p)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: OrderIdeal) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..128).filter(move |&p| bits >> p & 1 == 1)
    }

    /// `n` characters, element 0 first.
    pub fn to_bit_string(self, n: usize) -> String {
        (0..n).map(|p| if self.contains(p) { '1' } else { '0' }).collect()
    }

    pub fn from_bit_string(s: &str) -> Option<Self> {
        if s.len() > 128 {
            return None;
        }
        s.chars().enumerate().try_fold(OrderIdeal::EMPTY, |acc, (p, c)| match c {
            '0' => Some(acc),
            '1' => Some(acc.with(p)),
            _ => None,
        })
    }

    pub fn is_ideal_of(self, h: &Heap) -> bool {
        self.elements().all(|p| p < h.len() && h.lower_covers(p).iter().all(|&q| self.contains(q)))
    }
}

impl fmt::Display for OrderIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.elements().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdealCover {
    pub lower: usize,
    pub upper: usize,
    /// Heap element added along the cover.
    pub element: usize,
}

/// All order ideals of a heap, sorted by size and then by bit string.
#[derive(Debug, Clone)]
pub struct IdealLattice {
    pub heap_size: usize,
    pub ideals: Vec<OrderIdeal>,
    pub covers: Vec<IdealCover>,
    index: HashMap<OrderIdeal, usize>,
}

impl IdealLattice {
    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn index_of(&self, ideal: OrderIdeal) -> Option<usize> {
        self.index.get(&ideal).copied()
    }

    /// Index of an ideal known to belong to the lattice.
    pub fn idx(&self, ideal: OrderIdeal) -> usize {
        self.index[&ideal]
    }

    /// Maximal rank, i.e. the size of the heap.
    pub fn max_rank(&self) -> usize {
        self.heap_size
    }

    pub fn full_index(&self) -> usize {
        self.len() - 1
    }
}

fn bit_key(ideal: OrderIdeal, n: usize) -> (usize, String) {
    (ideal.len(), ideal.to_bit_string(n))
}

pub fn enumerate_ideals(h: &Heap, cap: usize) -> Result<IdealLattice> {
    if h.len() > MAX_HEAP_SIZE {
        return Err(Error::CapExceeded { what: "heap size", cap: MAX_HEAP_SIZE });
    }
    let n = h.len();
    let mut ideals = vec![OrderIdeal::EMPTY];
    let mut seen: HashMap<OrderIdeal, ()> = HashMap::from([(OrderIdeal::EMPTY, ())]);
    let mut frontier = vec![OrderIdeal::EMPTY];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &ideal in &frontier {
            for p in 0..n {
                if let Some(bigger) = add_if_possible(h, ideal, p) {
                    if seen.insert(bigger, ()).is_none() {
                        if ideals.len() >= cap {
                            return Err(Error::CapExceeded { what: "ideal count", cap });
                        }
                        ideals.push(bigger);
                        next.push(bigger);
                    }
                }
            }
        }
        frontier = next;
    }
    ideals.sort_by_cached_key(|&i| bit_key(i, n));
    let index: HashMap<OrderIdeal, usize> = ideals.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut covers = Vec::new();
    for (k, &ideal) in ideals.iter().enumerate() {
        for p in 0..n {
            if let Some(bigger) = add_if_possible(h, ideal, p) {
                covers.push(IdealCover { lower: k, upper: index[&bigger], element: p });
            }
        }
    }
    Ok(IdealLattice { heap_size: n, ideals, covers, index })
}

fn add_if_possible(h: &Heap, ideal: OrderIdeal, p: usize) -> Option<OrderIdeal> {
    (!ideal.contains(p) && h.lower_covers(p).iter().all(|&q| ideal.contains(q))).then(|| ideal.with(p))
}

fn remove_if_possible(h: &Heap, ideal: OrderIdeal, p: usize) -> Option<OrderIdeal> {
    (ideal.contains(p) && h.upper_covers(p).iter().all(|&q| !ideal.contains(q))).then(|| ideal.without(p))
}

pub fn can_toggle_in(h: &Heap, ideal: OrderIdeal, p: usize) -> bool {
    add_if_possible(h, ideal, p).is_some()
}

pub fn can_toggle_out(h: &Heap, ideal: OrderIdeal, p: usize) -> bool {
    remove_if_possible(h, ideal, p).is_some()
}

/// `ideal` with `p` flipped when that is still an ideal, otherwise `ideal`.
pub fn toggle(h: &Heap, ideal: OrderIdeal, p: usize) -> OrderIdeal {
    add_if_possible(h, ideal, p).or_else(|| remove_if_possible(h, ideal, p)).unwrap_or(ideal)
}

/// Toggle every element labeled `node`.
pub fn toggle_label(h: &Heap, ideal: OrderIdeal, node: usize) -> OrderIdeal {
    h.label_fiber(node).into_iter().fold(ideal, |acc, p| toggle(h, acc, p))
}

/// `phi(I)`: apply the reflections labeling `I` along a linear extension,
/// starting from `lambda`. Increasing element index is a linear extension.
pub fn phi(cd: &CartanDatum, h: &Heap, lambda: &Weight, ideal: OrderIdeal) -> Weight {
    phi_along(cd, h, lambda, ideal.elements())
}

/// `phi` evaluated along an explicit ordering of the ideal's elements.
pub fn phi_along<I: IntoIterator<Item = usize>>(cd: &CartanDatum, h: &Heap, lambda: &Weight, order: I) -> Weight {
    order.into_iter().fold(lambda.clone(), |w, p| cd.reflect(h.label(p), &w))
}

pub fn phi_table(cd: &CartanDatum, h: &Heap, lambda: &Weight, lattice: &IdealLattice) -> Vec<Weight> {
    lattice.ideals.iter().map(|&i| phi(cd, h, lambda, i)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutationViolation {
    pub ideal: String,
    /// 1-based node.
    pub node: usize,
    pub toggled_then_phi: String,
    pub phi_then_reflected: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CommutationReport {
    pub checked: usize,
    pub violations: Vec<CommutationViolation>,
}

impl CommutationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `phi(t_i(I)) == s_i(phi(I))` for every ideal and node.
pub fn verify_commutation(cd: &CartanDatum, h: &Heap, lambda: &Weight, lattice: &IdealLattice) -> CommutationReport {
    let table = phi_table(cd, h, lambda, lattice);
    let mut report = CommutationReport::default();
    for (k, &ideal) in lattice.ideals.iter().enumerate() {
        for node in 0..cd.rank {
            report.checked += 1;
            let toggled = toggle_label(h, ideal, node);
            let lhs = match lattice.index_of(toggled) {
                Some(j) => table[j].clone(),
                None => phi(cd, h, lambda, toggled),
            };
            let rhs = cd.reflect(node, &table[k]);
            if lhs != rhs {
                report.violations.push(CommutationViolation {
                    ideal: ideal.to_bit_string(h.len()),
                    node: node + 1,
                    toggled_then_phi: lhs.to_string(),
                    phi_then_reflected: rhs.to_string(),
                });
            }
        }
    }
    report
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct IsomorphismReport {
    pub ideals: usize,
    pub weights: usize,
    pub problems: Vec<String>,
}

impl IsomorphismReport {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

/// `phi` is a bijection onto the orbit with `I <= J` iff `phi(I) <= phi(J)`.
pub fn verify_phi_isomorphism(
    h: &Heap,
    lattice: &IdealLattice,
    orbit: &OrbitPoset,
    table: &[Weight],
) -> IsomorphismReport {
    let mut report = IsomorphismReport { ideals: lattice.len(), weights: orbit.len(), problems: Vec::new() };
    if lattice.len() != orbit.len() {
        report.problems.push(format!("{} ideals but {} weights", lattice.len(), orbit.len()));
        return report;
    }
    let mut image = Vec::with_capacity(lattice.len());
    let mut hit = vec![false; orbit.len()];
    for (k, w) in table.iter().enumerate() {
        match orbit.index_of(w) {
            Some(u) if !hit[u] => {
                hit[u] = true;
                image.push(u);
            }
            Some(_) => {
                report.problems.push(format!("phi is not injective at {}", lattice.ideals[k].to_bit_string(h.len())));
                return report;
            }
            None => {
                report.problems.push(format!("phi({}) = {w} lies outside the orbit", lattice.ideals[k]));
                return report;
            }
        }
    }
    let leq = orbit.order_matrix();
    for (a, &ia) in lattice.ideals.iter().enumerate() {
        for (b, &ib) in lattice.ideals.iter().enumerate() {
            if ia.is_subset(ib) != leq[image[a]][image[b]] {
                report.problems.push(format!(
                    "order mismatch between {} and {}",
                    ia.to_bit_string(h.len()),
                    ib.to_bit_string(h.len())
                ));
            }
        }
    }
    report
}

/// Ideal generated by the minimal elements of the complement.
pub fn rowmotion(h: &Heap, ideal: OrderIdeal) -> OrderIdeal {
    let mut out = OrderIdeal::EMPTY;
    for p in 0..h.len() {
        if can_toggle_in(h, ideal, p) {
            out = out.with(p);
            for &q in h.below(p) {
                out = out.with(q);
            }
        }
    }
    out
}

/// Rowmotion as toggles from the top of a linear extension down.
pub fn rowmotion_by_toggles(h: &Heap, ideal: OrderIdeal) -> OrderIdeal {
    (0..h.len()).rev().fold(ideal, |acc, p| toggle(h, acc, p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GyrationOrder {
    #[default]
    EvenFirst,
    OddFirst,
}

/// Toggle all elements of one rank parity, then the other.
pub fn gyration(h: &Heap, ideal: OrderIdeal, order: GyrationOrder) -> OrderIdeal {
    let first = match order {
        GyrationOrder::EvenFirst => 0,
        GyrationOrder::OddFirst => 1,
    };
    [first, 1 - first].into_iter().fold(ideal, |acc, parity| {
        (0..h.len()).filter(|&p| h.rank(p) % 2 == parity).fold(acc, |a, p| toggle(h, a, p))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Identity,
    Rowmotion,
    Gyration(GyrationOrder),
}

impl Action {
    pub fn apply(self, h: &Heap, ideal: OrderIdeal) -> OrderIdeal {
        match self {
            Action::Identity => ideal,
            Action::Rowmotion => rowmotion(h, ideal),
            Action::Gyration(order) => gyration(h, ideal, order),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Action::Identity => "identity",
            Action::Rowmotion => "rowmotion",
            Action::Gyration(GyrationOrder::EvenFirst) => "gyration",
            Action::Gyration(GyrationOrder::OddFirst) => "gyration-odd-first",
        }
    }
}

/// Cycles of a map on ideal indices, each starting at its smallest index.
/// Fails unless the map is a bijection of the lattice.
pub fn action_orbits<F>(lattice: &IdealLattice, mut map: F) -> Result<Vec<Vec<usize>>>
where
    F: FnMut(OrderIdeal) -> OrderIdeal,
{
    let n = lattice.len();
    let mut image = Vec::with_capacity(n);
    let mut hit = vec![false; n];
    for &ideal in &lattice.ideals {
        let out = map(ideal);
        let j = lattice
            .index_of(out)
            .ok_or_else(|| Error::Internal(format!("action sends {ideal} outside the lattice")))?;
        if std::mem::replace(&mut hit[j], true) {
            return Err(Error::Internal(format!("action is not injective: {out} has two preimages")));
        }
        image.push(j);
    }
    let mut done = vec![false; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if done[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut k = start;
        while !done[k] {
            done[k] = true;
            cycle.push(k);
            k = image[k];
        }
        orbits.push(cycle);
    }
    Ok(orbits)
}

pub fn orbits_of(h: &Heap, lattice: &IdealLattice, action: Action) -> Result<Vec<Vec<usize>>> {
    action_orbits(lattice, |i| action.apply(h, i))
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeJson {
    pub ideals: Vec<String>,
    pub covers: Vec<IdealCover>,
    pub phi: Vec<Vec<i64>>,
}

impl IdealLattice {
    pub fn to_json(&self, table: &[Weight]) -> LatticeJson {
        LatticeJson {
            ideals: self.ideals.iter().map(|i| i.to_bit_string(self.heap_size)).collect(),
            covers: self.covers.clone(),
            phi: table.iter().map(|w| w.to_ints().unwrap_or_default()).collect(),
        }
    }
}
