//! Simply-laced root data.
//!
//! Node numbering follows Bourbaki. For `E` the chain is `1-3-4-5-6(-7)` with
//! node `2` hanging off the branch node `4`; for `D_t` the chain is
//! `1-2-..-(t-2)` with both `t-1` and `t` attached to `t-2`. Internally nodes
//! are 0-based.
//!
//! Weights live in fundamental-weight coordinates, `m_i = (mu, alpha_i^vee)`.
//! The roots are normalized to squared length 2, so coroots and roots agree
//! and `(omega_i, omega_j)` is the `(i, j)` entry of the inverse Cartan matrix.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, one, zero, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            other => Err(format!("unknown family {other:?} (expected A, D or E)")),
        }
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<Rational>,
}

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight { coords: coords.iter().map(|&c| int(c)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { coords: vec![zero(); rank] }
    }

    /// The fundamental weight `omega_node` (0-based node).
    pub fn fundamental(rank: usize, node: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.coords[node] = one();
        w
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn is_dominant(&self) -> bool {
        self.is_integral() && self.coords.iter().all(|c| !c.is_negative())
    }

    /// Integer coordinates, if the weight is integral and they fit.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    pub family: Family,
    pub rank: usize,
    /// `cartan[i][j] = (alpha_i, alpha_j^vee)`.
    pub cartan: Vec<Vec<i64>>,
    pub inv_cartan: Vec<Vec<Rational>>,
    /// Squared root length, fixed to 2.
    pub omega_sq: Rational,
}

/// Dynkin edges as 1-based node pairs.
fn dynkin_edges(family: Family, rank: usize) -> Result<Vec<(usize, usize)>> {
    let unsupported = || Error::UnsupportedType { family: family.to_string(), rank };
    let chain = |n: usize| (1..n).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match family {
        Family::A if rank >= 1 => Ok(chain(rank)),
        Family::D if rank >= 3 => {
            let mut edges = chain(rank - 1);
            edges.push((rank - 2, rank));
            Ok(edges)
        }
        Family::E if rank == 6 || rank == 7 => {
            let mut edges = vec![(1, 3), (3, 4), (4, 5), (2, 4)];
            edges.extend((5..rank).map(|i| (i, i + 1)));
            Ok(edges)
        }
        _ => Err(unsupported()),
    }
}

/// Gauss-Jordan inverse; `None` if singular.
pub(crate) fn invert(matrix: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { one() } else { zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..2 * n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

impl CartanDatum {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let edges = dynkin_edges(family, rank)?;
        let mut cartan = vec![vec![0i64; rank]; rank];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in edges {
            cartan[a - 1][b - 1] = -1;
            cartan[b - 1][a - 1] = -1;
        }
        let as_rational: Vec<Vec<Rational>> =
            cartan.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect();
        let inv_cartan = invert(&as_rational)
            .ok_or_else(|| Error::Internal(format!("Cartan matrix of {family}{rank} is singular")))?;
        Ok(CartanDatum { family, rank, cartan, inv_cartan, omega_sq: int(2) })
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node < self.rank {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: node + 1, rank: self.rank })
        }
    }

    fn check_dim(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.rank, got: w.rank() })
        }
    }

    /// Whether simple reflections `s_i` and `s_j` fail to commute (including `i == j`).
    pub fn linked(&self, i: usize, j: usize) -> bool {
        self.cartan[i][j] != 0
    }

    /// The simple root `alpha_i` in fundamental coordinates (row `i` of the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::from_ints(&self.cartan[i])
    }

    /// `(omega_i, omega_j)`.
    pub fn fundamental_product(&self, i: usize, j: usize) -> Rational {
        &self.inv_cartan[i][j] * &self.omega_sq / int(2)
    }

    pub fn inner_product(&self, mu: &Weight, nu: &Weight) -> Result<Rational> {
        self.check_dim(mu)?;
        self.check_dim(nu)?;
        let mut acc = zero();
        for (i, m) in mu.coords.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (j, n) in nu.coords.iter().enumerate() {
                if !n.is_zero() {
                    acc += m * n * self.fundamental_product(i, j);
                }
            }
        }
        Ok(acc)
    }

    /// `(mu, alpha_i^vee)`, which is just the `i`-th coordinate.
    pub fn coroot_pairing(&self, mu: &Weight, i: usize) -> Result<Rational> {
        self.check_dim(mu)?;
        self.check_node(i)?;
        Ok(mu.coords[i].clone())
    }

    /// `s_i(mu) = mu - (mu, alpha_i^vee) alpha_i`.
    pub fn simple_reflection(&self, i: usize, mu: &Weight) -> Result<Weight> {
        self.check_dim(mu)?;
        self.check_node(i)?;
        Ok(self.reflect(i, mu))
    }

    /// Unchecked reflection for hot loops; callers guarantee dimensions.
    pub(crate) fn reflect(&self, i: usize, mu: &Weight) -> Weight {
        let m = &mu.coords[i];
        if m.is_zero() {
            return mu.clone();
        }
        let coords = mu
            .coords
            .iter()
            .zip(&self.cartan[i])
            .map(|(c, &a)| if a == 0 { c.clone() } else { c - m * int(a) })
            .collect();
        Weight { coords }
    }

    /// Nodes `k` (0-based) for which `omega_k` is minuscule.
    pub fn minuscule_catalog(&self) -> Vec<usize> {
        let t = self.rank;
        match self.family {
            Family::A => (0..t).collect(),
            Family::D => vec![0, t - 2, t - 1],
            Family::E if t == 6 => vec![0, 5],
            Family::E => vec![6],
        }
    }

    pub fn to_json(&self) -> CartanJson {
        CartanJson {
            family: self.family,
            rank: self.rank,
            matrix: self.cartan.clone(),
            numbering: "bourbaki, 1-based".to_string(),
        }
    }
}

/// Serialized form of a Cartan datum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CartanJson {
    pub family: Family,
    pub rank: usize,
    pub matrix: Vec<Vec<i64>>,
    pub numbering: String,
}
