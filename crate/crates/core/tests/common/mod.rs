//! Brute-force oracles shared by the integration tests. Nothing here reuses
//! the library's poset, lattice or Cartan code.

#![allow(dead_code)]

use minuscule::cde::simplex::{LinearProgram, LpOutcome};
use minuscule::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Finite poset as a strict order relation.
#[derive(Debug, Clone)]
pub struct Poset {
    pub less: Vec<Vec<bool>>,
}

impl Poset {
    pub fn len(&self) -> usize {
        self.less.len()
    }

    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Poset {
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            less[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if less[i][k] && less[k][j] {
                        less[i][j] = true;
                    }
                }
            }
        }
        Poset { less }
    }

    pub fn from_heap(h: &minuscule::Heap) -> Poset {
        let n = h.len();
        Poset { less: (0..n).map(|a| (0..n).map(|b| h.less(a, b)).collect()).collect() }
    }

    /// The product of an `a`-chain and a `b`-chain.
    pub fn grid(a: usize, b: usize) -> Poset {
        let n = a * b;
        let less = (0..n)
            .map(|x| (0..n).map(|y| x != y && x / b <= y / b && x % b <= y % b).collect())
            .collect();
        Poset { less }
    }

    pub fn is_ideal(&self, set: u128) -> bool {
        (0..self.len()).all(|p| set >> p & 1 == 0 || (0..self.len()).all(|q| !self.less[q][p] || set >> q & 1 == 1))
    }

    /// Every order ideal, found by deciding elements in a linear extension order.
    pub fn ideals(&self) -> Vec<u128> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&p| (0..n).filter(|&q| self.less[q][p]).count());
        let mut out = Vec::new();
        self.extend(&order, 0, 0, &mut out);
        out.sort_by_key(|&s| (s.count_ones(), s));
        out
    }

    fn extend(&self, order: &[usize], at: usize, set: u128, out: &mut Vec<u128>) {
        if at == order.len() {
            out.push(set);
            return;
        }
        let p = order[at];
        self.extend(order, at + 1, set, out);
        if (0..self.len()).all(|q| !self.less[q][p] || set >> q & 1 == 1) {
            self.extend(order, at + 1, set | 1 << p, out);
        }
    }

    /// `p` can be added to `set` keeping it an ideal.
    pub fn addable(&self, set: u128, p: usize) -> bool {
        set >> p & 1 == 0 && (0..self.len()).all(|q| !self.less[q][p] || set >> q & 1 == 1)
    }

    /// `p` can be removed from `set` keeping it an ideal.
    pub fn removable(&self, set: u128, p: usize) -> bool {
        set >> p & 1 == 1 && (0..self.len()).all(|q| !self.less[p][q] || set >> q & 1 == 0)
    }

    pub fn ddeg(&self, set: u128) -> usize {
        (0..self.len()).filter(|&p| self.removable(set, p)).count()
    }

    pub fn rowmotion(&self, set: u128) -> u128 {
        let n = self.len();
        let mins: Vec<usize> = (0..n).filter(|&p| self.addable(set, p)).collect();
        (0..n).filter(|&p| mins.iter().any(|&m| m == p || self.less[p][m])).fold(0, |s, p| s | 1 << p)
    }

    /// Length of the longest chain ending at `p`.
    pub fn rank(&self, p: usize) -> usize {
        (0..self.len()).filter(|&q| self.less[q][p]).map(|q| self.rank(q) + 1).max().unwrap_or(0)
    }

    pub fn gyration(&self, mut set: u128) -> u128 {
        let ranks: Vec<usize> = (0..self.len()).map(|p| self.rank(p)).collect();
        for parity in [0, 1] {
            for p in (0..self.len()).filter(|&p| ranks[p] % 2 == parity) {
                if self.addable(set, p) || self.removable(set, p) {
                    set ^= 1 << p;
                }
            }
        }
        set
    }

    pub fn uniform_ddeg(&self) -> Rational {
        let ideals = self.ideals();
        let total: usize = ideals.iter().map(|&s| self.ddeg(s)).sum();
        Rational::new(BigInt::from(total), BigInt::from(ideals.len()))
    }

    /// Min and max of expected down-degree over toggle-symmetric distributions.
    pub fn tcde_range(&self) -> (Rational, Rational) {
        let ideals = self.ideals();
        let q = |v: i64| Rational::from_integer(BigInt::from(v));
        let mut constraints = vec![vec![q(1); ideals.len()]];
        let mut rhs = vec![q(1)];
        for p in 0..self.len() {
            constraints.push(
                ideals.iter().map(|&s| q(self.addable(s, p) as i64 - self.removable(s, p) as i64)).collect(),
            );
            rhs.push(q(0));
        }
        let objective = ideals.iter().map(|&s| q(self.ddeg(s) as i64)).collect();
        let lp = LinearProgram { constraints, rhs, objective };
        let value = |o: LpOutcome| match o {
            LpOutcome::Optimal(s) => s.value,
            other => panic!("toggle-symmetric LP: {other:?}"),
        };
        (value(lp.minimize()), value(lp.maximize()))
    }
}

/// Backtracking isomorphism search between two posets.
pub fn isomorphic(p: &Poset, q: &Poset) -> bool {
    fn go(p: &Poset, q: &Poset, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let a = map.len();
        if a == p.len() {
            return true;
        }
        for b in 0..q.len() {
            if used[b] {
                continue;
            }
            let fits = (0..a).all(|x| p.less[x][a] == q.less[map[x]][b] && p.less[a][x] == q.less[b][map[x]]);
            if fits {
                map.push(b);
                used[b] = true;
                if go(p, q, map, used) {
                    return true;
                }
                map.pop();
                used[b] = false;
            }
        }
        false
    }
    p.len() == q.len() && go(p, q, &mut Vec::new(), &mut vec![false; q.len()])
}

/// Every poset on `n` labeled elements whose order refines `0 < 1 < ... < n-1`.
pub fn natural_posets(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let chosen: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
        let closed = Poset::from_relation(n, &chosen);
        let transitive = pairs.iter().enumerate().all(|(k, &(i, j))| closed.less[i][j] == (mask >> k & 1 == 1));
        if transitive {
            out.push(closed);
        }
    }
    out
}

/// Cartan matrix of a simply-laced Dynkin diagram given by its edges (1-based).
pub fn cartan_from_edges(rank: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in edges {
        a[i - 1][j - 1] = -1;
        a[j - 1][i - 1] = -1;
    }
    a
}

pub fn type_a(rank: usize) -> Vec<Vec<i64>> {
    let edges: Vec<(usize, usize)> = (1..rank).map(|i| (i, i + 1)).collect();
    cartan_from_edges(rank, &edges)
}

pub fn type_d(rank: usize) -> Vec<Vec<i64>> {
    let mut edges: Vec<(usize, usize)> = (1..rank - 1).map(|i| (i, i + 1)).collect();
    edges.push((rank - 2, rank));
    cartan_from_edges(rank, &edges)
}

pub fn type_e(rank: usize) -> Vec<Vec<i64>> {
    let mut edges = vec![(1, 3), (2, 4), (3, 4)];
    edges.extend((4..rank).map(|i| (i, i + 1)));
    cartan_from_edges(rank, &edges)
}

pub fn cartan(family: minuscule::Family, rank: usize) -> Vec<Vec<i64>> {
    match family {
        minuscule::Family::A => type_a(rank),
        minuscule::Family::D => type_d(rank),
        minuscule::Family::E => type_e(rank),
    }
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Diagonal entry `k` (0-based) of the inverse, by cofactors.
pub fn inverse_diagonal(m: &[Vec<i64>], k: usize) -> Rational {
    Rational::new(determinant(&minor(m, k, k)), determinant(m))
}

fn minor(m: &[Vec<i64>], row: usize, col: usize) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, &x)| x).collect())
        .collect()
}

/// Inverse by the adjugate.
pub fn inverse(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let det = determinant(m);
    let n = m.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let sign = if (i + j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    Rational::new(sign * determinant(&minor(m, j, i)), det.clone())
                })
                .collect()
        })
        .collect()
}
