//! Weyl orbits of dominant weights, ordered opposite to the root order.
//!
//! The orbit of `lambda` is grown breadth-first under the simple reflections.
//! Whenever `(mu, alpha_i^vee) = 1` the reflection lowers `mu` by `alpha_i`,
//! which is recorded as a cover `mu < mu - alpha_i`. So `lambda` is the bottom
//! and the antidominant weight `w_0 lambda` is the top.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Signed};
use serde::Serialize;

use crate::cartan::{CartanDatum, Weight};
use crate::error::{Error, Result};

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrbitCover {
    pub lower: usize,
    pub upper: usize,
    /// 0-based simple root with `weights[upper] = weights[lower] - alpha_node`.
    pub node: usize,
}

#[derive(Debug, Clone)]
pub struct OrbitPoset {
    pub weights: Vec<Weight>,
    pub covers: Vec<OrbitCover>,
    /// BFS distance from `lambda`.
    pub layer: Vec<usize>,
    pub bottom: usize,
    pub top: usize,
    index: HashMap<Weight, usize>,
}

impl OrbitPoset {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn upper_covers(&self, u: usize) -> impl Iterator<Item = &OrbitCover> {
        self.covers.iter().filter(move |c| c.lower == u)
    }

    /// `leq[u][v]` iff `u <= v`, the reflexive-transitive closure of the covers.
    pub fn order_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for c in &self.covers {
            up[c.lower].push(c.upper);
            indegree[c.upper] += 1;
        }
        // topological order, then propagate descendants backwards
        let mut order = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&u| indegree[u] == 0).collect();
        while let Some(u) = ready.pop() {
            order.push(u);
            for &v in &up[u] {
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    ready.push(v);
                }
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for &u in order.iter().rev() {
            leq[u][u] = true;
            for &v in &up[u] {
                for w in 0..n {
                    if leq[v][w] {
                        leq[u][w] = true;
                    }
                }
            }
        }
        leq
    }
}

pub fn generate_orbit(cd: &CartanDatum, lambda: &Weight, cap: usize) -> Result<OrbitPoset> {
    if lambda.rank() != cd.rank {
        return Err(Error::DimensionMismatch { expected: cd.rank, got: lambda.rank() });
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let mut weights = vec![lambda.clone()];
    let mut layer = vec![0];
    let mut index = HashMap::from([(lambda.clone(), 0usize)]);
    let mut frontier = vec![0usize];
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let mut next: BTreeSet<Weight> = BTreeSet::new();
        for &u in &frontier {
            for i in 0..cd.rank {
                let v = cd.reflect(i, &weights[u]);
                if !index.contains_key(&v) {
                    next.insert(v);
                }
            }
        }
        frontier.clear();
        for w in next {
            if weights.len() >= cap {
                return Err(Error::CapExceeded { what: "orbit size", cap });
            }
            index.insert(w.clone(), weights.len());
            frontier.push(weights.len());
            weights.push(w);
            layer.push(depth);
        }
    }

    let mut covers = Vec::new();
    for (u, w) in weights.iter().enumerate() {
        for i in 0..cd.rank {
            if w.coords[i].is_one() {
                let v = index[&cd.reflect(i, w)];
                covers.push(OrbitCover { lower: u, upper: v, node: i });
            }
        }
    }
    let top = weights
        .iter()
        .position(|w| w.coords.iter().all(|c| !c.is_positive()))
        .ok_or_else(|| Error::Internal("orbit has no antidominant weight".into()))?;
    Ok(OrbitPoset { weights, covers, layer, bottom: 0, top, index })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MinusculeViolation {
    PairingOutOfRange { weight: String, node: usize, value: String },
    ExtraMinimal { weight: String },
    ExtraMaximal { weight: String },
    NoMeet { a: String, b: String },
    NoJoin { a: String, b: String },
    NotDistributive { a: String, b: String, c: String },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct MinusculeReport {
    pub violations: Vec<MinusculeViolation>,
}

impl MinusculeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        match self.violations.first() {
            None => "ok".to_string(),
            Some(v) => format!("{} violation(s), first: {:?}", self.violations.len(), v),
        }
    }
}

/// Bound on pairings, unique extremes, then (if those hold) the lattice and
/// distributive laws by brute force over pairs and triples.
pub fn verify_minuscule(cd: &CartanDatum, orbit: &OrbitPoset) -> MinusculeReport {
    let mut violations = Vec::new();
    for w in &orbit.weights {
        for i in 0..cd.rank {
            if w.coords[i].abs() > One::one() {
                violations.push(MinusculeViolation::PairingOutOfRange {
                    weight: w.to_string(),
                    node: i + 1,
                    value: w.coords[i].to_string(),
                });
            }
        }
    }
    if !violations.is_empty() {
        return MinusculeReport { violations };
    }

    let n = orbit.len();
    let mut has_lower = vec![false; n];
    let mut has_upper = vec![false; n];
    for c in &orbit.covers {
        has_upper[c.lower] = true;
        has_lower[c.upper] = true;
    }
    for u in 0..n {
        if !has_lower[u] && u != orbit.bottom {
            violations.push(MinusculeViolation::ExtraMinimal { weight: orbit.weights[u].to_string() });
        }
        if !has_upper[u] && u != orbit.top {
            violations.push(MinusculeViolation::ExtraMaximal { weight: orbit.weights[u].to_string() });
        }
    }
    if !violations.is_empty() {
        return MinusculeReport { violations };
    }

    let leq = orbit.order_matrix();
    let name = |u: usize| orbit.weights[u].to_string();
    let meet_join = |a: usize, b: usize, lower: bool| -> Option<usize> {
        let bounds: Vec<usize> = (0..n)
            .filter(|&z| if lower { leq[z][a] && leq[z][b] } else { leq[a][z] && leq[b][z] })
            .collect();
        bounds
            .iter()
            .copied()
            .find(|&z| bounds.iter().all(|&y| if lower { leq[y][z] } else { leq[z][y] }))
    };
    let mut meet = vec![vec![0usize; n]; n];
    let mut join = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in a..n {
            match meet_join(a, b, true) {
                Some(m) => {
                    meet[a][b] = m;
                    meet[b][a] = m;
                }
                None => violations.push(MinusculeViolation::NoMeet { a: name(a), b: name(b) }),
            }
            match meet_join(a, b, false) {
                Some(j) => {
                    join[a][b] = j;
                    join[b][a] = j;
                }
                None => violations.push(MinusculeViolation::NoJoin { a: name(a), b: name(b) }),
            }
        }
    }
    if !violations.is_empty() {
        return MinusculeReport { violations };
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                // a ^ (b v c) == (a ^ b) v (a ^ c)
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]] {
                    violations.push(MinusculeViolation::NotDistributive {
                        a: name(a),
                        b: name(b),
                        c: name(c),
                    });
                }
            }
        }
    }
    MinusculeReport { violations }
}

/// Labels along the bottom-to-top saturated chain that always follows the
/// cover with the smallest node.
pub fn saturated_chain(orbit: &OrbitPoset) -> Vec<usize> {
    let mut word = Vec::new();
    let mut u = orbit.bottom;
    while let Some(c) = orbit.upper_covers(u).min_by_key(|c| c.node) {
        word.push(c.node);
        u = c.upper;
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;
    use std::collections::HashSet;

    /// Independent closure oracle on plain integer vectors.
    fn closure_oracle(cartan: &[Vec<i64>], start: Vec<i64>) -> HashSet<Vec<i64>> {
        let mut seen = HashSet::from([start.clone()]);
        let mut stack = vec![start];
        while let Some(w) = stack.pop() {
            for (i, row) in cartan.iter().enumerate() {
                let v: Vec<i64> = w.iter().zip(row).map(|(c, a)| c - w[i] * a).collect();
                if seen.insert(v.clone()) {
                    stack.push(v);
                }
            }
        }
        seen
    }

    fn orbit_of(f: Family, t: usize, node: usize) -> (CartanDatum, OrbitPoset) {
        let cd = CartanDatum::new(f, t).unwrap();
        let o = generate_orbit(&cd, &Weight::fundamental(t, node), DEFAULT_ORBIT_CAP).unwrap();
        (cd, o)
    }

    #[test]
    fn a2_fundamental_orbit() {
        let (cd, o) = orbit_of(Family::A, 2, 0);
        let ws: Vec<Weight> = o.weights.clone();
        assert_eq!(
            ws,
            vec![Weight::from_ints(&[1, 0]), Weight::from_ints(&[-1, 1]), Weight::from_ints(&[0, -1])]
        );
        assert_eq!(o.top, 2);
        assert!(verify_minuscule(&cd, &o).passed());
        assert_eq!(saturated_chain(&o), vec![0, 1]);
    }

    #[test]
    fn orbit_sizes_match_closure_oracle() {
        for (f, t, k, expected) in [
            (Family::A, 1, 0, 2),
            (Family::A, 3, 1, 6),
            (Family::D, 4, 0, 8),
            (Family::D, 5, 4, 16),
            (Family::E, 6, 5, 27),
            (Family::E, 7, 6, 56),
        ] {
            let (cd, o) = orbit_of(f, t, k);
            let mut start = vec![0; t];
            start[k] = 1;
            let oracle = closure_oracle(&cd.cartan, start);
            assert_eq!(oracle.len(), expected);
            assert_eq!(o.len(), expected);
            for w in &o.weights {
                assert!(oracle.contains(&w.to_ints().unwrap()));
            }
        }
    }

    #[test]
    fn covers_are_reflections_and_layers_are_ranks() {
        let (cd, o) = orbit_of(Family::E, 6, 0);
        for c in &o.covers {
            let lowered: Vec<_> = o.weights[c.lower]
                .coords
                .iter()
                .zip(&cd.cartan[c.node])
                .map(|(x, &a)| x - crate::rational::int(a))
                .collect();
            assert_eq!(o.weights[c.upper].coords, lowered);
            assert_eq!(cd.reflect(c.node, &o.weights[c.lower]), o.weights[c.upper]);
            assert_eq!(o.layer[c.upper], o.layer[c.lower] + 1);
        }
        // closure under every s_i
        for w in &o.weights {
            for i in 0..cd.rank {
                assert!(o.index_of(&cd.reflect(i, w)).is_some());
            }
        }
    }

    #[test]
    fn non_minuscule_orbits_are_rejected() {
        let cd = CartanDatum::new(Family::A, 2).unwrap();
        let adj = generate_orbit(&cd, &Weight::from_ints(&[1, 1]), DEFAULT_ORBIT_CAP).unwrap();
        let report = verify_minuscule(&cd, &adj);
        assert!(!report.passed());
        // s_1(1,1) = (-1,2): pairing 2 with node 2
        assert!(report.violations.contains(&MinusculeViolation::PairingOutOfRange {
            weight: "(-1,2)".into(),
            node: 2,
            value: "2".into()
        }));

        let (cd, o) = orbit_of(Family::D, 4, 1);
        let report = verify_minuscule(&cd, &o);
        assert!(matches!(report.violations[0], MinusculeViolation::PairingOutOfRange { .. }));
    }

    #[test]
    fn catalog_nodes_verify_and_others_do_not() {
        let types = [(Family::A, 3), (Family::D, 4), (Family::D, 5), (Family::E, 6), (Family::E, 7)];
        for (f, t) in types {
            let cd = CartanDatum::new(f, t).unwrap();
            let catalog = cd.minuscule_catalog();
            for k in 0..t {
                let o = generate_orbit(&cd, &Weight::fundamental(t, k), DEFAULT_ORBIT_CAP).unwrap();
                assert_eq!(verify_minuscule(&cd, &o).passed(), catalog.contains(&k), "{f}{t} node {}", k + 1);
            }
        }
    }

    #[test]
    fn saturated_chain_tie_break() {
        let (_, o) = orbit_of(Family::A, 3, 1);
        assert_eq!(saturated_chain(&o), vec![1, 0, 2, 1]);
        let (_, o) = orbit_of(Family::A, 1, 0);
        assert_eq!(saturated_chain(&o), vec![0]);
    }

    #[test]
    fn all_maximal_chains_have_equal_length() {
        let (_, o) = orbit_of(Family::D, 5, 0);
        // longest and shortest bottom-to-top path lengths by DP over layers
        let n = o.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&u| o.layer[u]);
        let mut longest = vec![0usize; n];
        let mut shortest = vec![usize::MAX; n];
        shortest[o.bottom] = 0;
        for &u in &order {
            for c in o.upper_covers(u) {
                longest[c.upper] = longest[c.upper].max(longest[u] + 1);
                shortest[c.upper] = shortest[c.upper].min(shortest[u] + 1);
            }
        }
        assert_eq!(longest[o.top], shortest[o.top]);
        assert_eq!(longest[o.top], saturated_chain(&o).len());
    }

    #[test]
    fn errors() {
        let cd = CartanDatum::new(Family::A, 2).unwrap();
        assert!(matches!(
            generate_orbit(&cd, &Weight::from_ints(&[1, -1]), 10),
            Err(Error::NotDominant(_))
        ));
        assert_eq!(
            generate_orbit(&cd, &Weight::from_ints(&[1, 1]), 3).unwrap_err(),
            Error::CapExceeded { what: "orbit size", cap: 3 }
        );
    }
}
