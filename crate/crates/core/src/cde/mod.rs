//! Distributions on `J(P)`, down-degree expectations, toggle symmetry, and
//! the linear-programming certificate over all toggle-symmetric distributions.

pub mod simplex;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heap::Heap;
use crate::ideals::{orbits_of, Action, IdealLattice};
use crate::rational::{int, serde_fraction, zero, Rational};
use crate::stats::{ddeg, snapshot};

use simplex::{LinearProgram, LpOutcome};

pub const DEFAULT_LP_CAP: usize = 1000;

/// A probability vector indexed like the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    probs: Vec<Rational>,
}

impl Distribution {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.iter().any(|p| p < &zero()) {
            return Err(Error::InvalidDistribution("negative probability".into()));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
        }
        Ok(Distribution { probs })
    }

    /// Normalizes nonnegative integer weights.
    pub fn from_weights(weights: &[BigUint]) -> Result<Self> {
        let total: BigUint = weights.iter().sum();
        if total.is_zero() {
            return Err(Error::InvalidDistribution("all weights are zero".into()));
        }
        let total = Rational::from_integer(total.into());
        Distribution::new(weights.iter().map(|w| Rational::from_integer(w.clone().into()) / &total).collect())
    }

    pub fn point_mass(len: usize, at: usize) -> Self {
        let mut probs = vec![zero(); len];
        probs[at] = Rational::one();
        Distribution { probs }
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.probs.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(k, _)| k)
    }
}

pub fn expectation(mu: &Distribution, f: &[Rational]) -> Result<Rational> {
    if f.len() != mu.len() {
        return Err(Error::DimensionMismatch { expected: mu.len(), got: f.len() });
    }
    Ok(mu.probs.iter().zip(f).filter(|(p, _)| !p.is_zero()).map(|(p, v)| p * v).sum())
}

pub fn ddeg_vector(h: &Heap, lattice: &IdealLattice) -> Vec<Rational> {
    lattice.ideals.iter().map(|&i| int(ddeg(h, i) as i64)).collect()
}

pub fn uni(lattice: &IdealLattice) -> Distribution {
    Distribution::from_weights(&vec![BigUint::one(); lattice.len()]).expect("lattice is nonempty")
}

/// Probability proportional to the number of maximal chains through each
/// ideal, counted by paths in the cover graph.
pub fn maxchain(lattice: &IdealLattice) -> Distribution {
    let n = lattice.len();
    // ideals are sorted by size, so covers go forward in index order
    let mut from_bottom = vec![BigUint::zero(); n];
    let mut to_top = vec![BigUint::zero(); n];
    from_bottom[0] = BigUint::one();
    to_top[n - 1] = BigUint::one();
    let mut covers = lattice.covers.clone();
    covers.sort_by_key(|c| c.lower);
    for c in &covers {
        let add = from_bottom[c.lower].clone();
        from_bottom[c.upper] += add;
    }
    for c in covers.iter().rev() {
        let add = to_top[c.upper].clone();
        to_top[c.lower] += add;
    }
    let weights: Vec<BigUint> = from_bottom.iter().zip(&to_top).map(|(a, b)| a * b).collect();
    Distribution::from_weights(&weights).expect("lattice is nonempty")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChainMode {
    /// `I_0 < I_1 < ... < I_k`.
    #[default]
    Strict,
    /// `I_0 <= I_1 <= ... <= I_k`, an ideal counted once per occurrence.
    Multichain,
}

impl ChainMode {
    pub fn name(self) -> &'static str {
        match self {
            ChainMode::Strict => "strict",
            ChainMode::Multichain => "multi",
        }
    }
}

/// Counts of chains ending at (`down`) and starting from (`up`) each ideal,
/// by number of steps.
pub struct ChainCounter {
    mode: ChainMode,
    max_rank: usize,
    below: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
    down: Vec<Vec<BigUint>>,
    up: Vec<Vec<BigUint>>,
}

impl ChainCounter {
    pub fn new(lattice: &IdealLattice, mode: ChainMode) -> Self {
        let n = lattice.len();
        let related = |a: usize, b: usize| {
            let (ia, ib) = (lattice.ideals[a], lattice.ideals[b]);
            ia.is_subset(ib) && (mode == ChainMode::Multichain || a != b)
        };
        let below = (0..n).map(|a| (0..n).filter(|&b| related(b, a)).collect()).collect();
        let above = (0..n).map(|a| (0..n).filter(|&b| related(a, b)).collect()).collect();
        let ones = vec![BigUint::one(); n];
        ChainCounter {
            mode,
            max_rank: lattice.max_rank(),
            below,
            above,
            down: vec![ones.clone()],
            up: vec![ones],
        }
    }

    fn extend_to(&mut self, steps: usize) {
        while self.down.len() <= steps {
            let prev_down = self.down.last().unwrap();
            let prev_up = self.up.last().unwrap();
            let down = self.below.iter().map(|bs| bs.iter().map(|&b| &prev_down[b]).sum()).collect();
            let up = self.above.iter().map(|bs| bs.iter().map(|&b| &prev_up[b]).sum()).collect();
            self.down.push(down);
            self.up.push(up);
        }
    }

    /// Number of (k-chain, position) pairs at each ideal.
    pub fn weights(&mut self, k: usize) -> Result<Vec<BigUint>> {
        if self.mode == ChainMode::Strict && k > self.max_rank {
            return Err(Error::ChainLengthOutOfRange { k, max: self.max_rank });
        }
        self.extend_to(k);
        let n = self.below.len();
        Ok((0..n).map(|a| (0..=k).map(|m| &self.down[m][a] * &self.up[k - m][a]).sum()).collect())
    }

    pub fn distribution(&mut self, k: usize) -> Result<Distribution> {
        Distribution::from_weights(&self.weights(k)?)
    }
}

pub fn chain_k(lattice: &IdealLattice, k: usize, mode: ChainMode) -> Result<Distribution> {
    ChainCounter::new(lattice, mode).distribution(k)
}

#[derive(Debug, Clone, Serialize)]
pub struct ToggleViolation {
    pub element: usize,
    #[serde(with = "serde_fraction")]
    pub expected_in: Rational,
    #[serde(with = "serde_fraction")]
    pub expected_out: Rational,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ToggleSymmetryReport {
    pub violations: Vec<ToggleViolation>,
}

impl ToggleSymmetryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares `E(mu; T+_p)` with `E(mu; T-_p)` for every element.
pub fn is_toggle_symmetric(h: &Heap, lattice: &IdealLattice, mu: &Distribution) -> ToggleSymmetryReport {
    let n = h.len();
    let mut plus = vec![zero(); n];
    let mut minus = vec![zero(); n];
    for k in mu.support() {
        let snap = snapshot(h, lattice.ideals[k]);
        let p_k = &mu.probs[k];
        for p in 0..n {
            if snap.plus[p] {
                plus[p] += p_k;
            }
            if snap.minus[p] {
                minus[p] += p_k;
            }
        }
    }
    let violations = plus
        .into_iter()
        .zip(minus)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(element, (expected_in, expected_out))| ToggleViolation { element, expected_in, expected_out })
        .collect();
    ToggleSymmetryReport { violations }
}

pub fn orbit_distribution(lattice: &IdealLattice, orbit: &[usize]) -> Result<Distribution> {
    if orbit.is_empty() {
        return Err(Error::InvalidDistribution("empty orbit".into()));
    }
    let mut weights = vec![BigUint::zero(); lattice.len()];
    for &k in orbit {
        weights[k] = BigUint::one();
    }
    Distribution::from_weights(&weights)
}

/// The toggle-symmetric polytope `{mu >= 0, sum mu = 1, E(mu; T_p) = 0}` with
/// an objective over ideals.
pub fn toggle_symmetric_lp(h: &Heap, lattice: &IdealLattice, objective: Vec<Rational>) -> LinearProgram {
    let n = lattice.len();
    let snaps: Vec<_> = lattice.ideals.iter().map(|&i| snapshot(h, i)).collect();
    let mut constraints = vec![vec![int(1); n]];
    let mut rhs = vec![int(1)];
    for p in 0..h.len() {
        constraints.push(snaps.iter().map(|s| int(s.signed(p))).collect());
        rhs.push(zero());
    }
    LinearProgram { constraints, rhs, objective }
}

#[derive(Debug, Clone)]
pub struct LpVertex {
    pub value: Rational,
    pub distribution: Distribution,
    pub basis: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct LpCertificate {
    pub min: LpVertex,
    pub max: LpVertex,
}

impl LpCertificate {
    pub fn is_constant(&self) -> bool {
        self.min.value == self.max.value
    }
}

fn solve(lp: &LinearProgram, maximize: bool) -> Result<LpVertex> {
    let outcome = if maximize { lp.maximize() } else { lp.minimize() };
    match outcome {
        LpOutcome::Optimal(s) => Ok(LpVertex { value: s.value, distribution: Distribution::new(s.x)?, basis: s.basis }),
        LpOutcome::Infeasible => Err(Error::Internal("toggle-symmetric polytope is empty".into())),
        LpOutcome::Unbounded => Err(Error::Internal("LP over a probability simplex is unbounded".into())),
    }
}

/// Optimize an arbitrary objective over the toggle-symmetric polytope.
pub fn lp_vertex(h: &Heap, lattice: &IdealLattice, objective: Vec<Rational>, maximize: bool) -> Result<LpVertex> {
    solve(&toggle_symmetric_lp(h, lattice, objective), maximize)
}

/// Minimum and maximum of `E(mu; ddeg)` over all toggle-symmetric `mu`.
pub fn lp_tcde_certificate(h: &Heap, lattice: &IdealLattice, cap: usize) -> Result<LpCertificate> {
    if lattice.len() > cap {
        return Err(Error::CapExceeded { what: "LP variable count", cap });
    }
    let lp = toggle_symmetric_lp(h, lattice, ddeg_vector(h, lattice));
    Ok(LpCertificate { min: solve(&lp, false)?, max: solve(&lp, true)? })
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitMean {
    pub size: usize,
    #[serde(with = "serde_fraction")]
    pub mean: Rational,
    pub matches: bool,
    pub toggle_symmetric: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomomesyReport {
    pub action: &'static str,
    #[serde(with = "serde_fraction")]
    pub constant: Rational,
    pub orbits: Vec<OrbitMean>,
}

impl HomomesyReport {
    pub fn passed(&self) -> bool {
        self.orbits.iter().all(|o| o.matches && o.toggle_symmetric)
    }
}

/// Mean down-degree over each orbit of `action`, compared with `constant`.
pub fn homomesy_report(h: &Heap, lattice: &IdealLattice, action: Action, constant: &Rational) -> Result<HomomesyReport> {
    let orbits = orbits_of(h, lattice, action)?;
    let f = ddeg_vector(h, lattice);
    let mut rows = Vec::with_capacity(orbits.len());
    for orbit in &orbits {
        let mu = orbit_distribution(lattice, orbit)?;
        let mean = expectation(&mu, &f)?;
        rows.push(OrbitMean {
            size: orbit.len(),
            matches: &mean == constant,
            mean,
            toggle_symmetric: is_toggle_symmetric(h, lattice, &mu).passed(),
        });
    }
    Ok(HomomesyReport { action: action.name(), constant: constant.clone(), orbits: rows })
}
