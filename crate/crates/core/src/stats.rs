//! Down-degree, toggle eligibility indicators, and exact checks of the
//! identities tying them to inner products of weights.
//!
//! Fiber positions `j` are 1-based and follow the heap order of
//! [`Heap::label_fiber`].

use serde::Serialize;

use crate::cartan::{CartanDatum, Weight};
use crate::case::Case;
use crate::heap::Heap;
use crate::ideals::{can_toggle_in, can_toggle_out, OrderIdeal};
use crate::rational::{int, serde_fraction, to_fraction_string, zero, Rational};

/// Number of maximal elements of the ideal, i.e. its down-degree in `J(P)`.
pub fn ddeg(h: &Heap, ideal: OrderIdeal) -> usize {
    ideal.elements().filter(|&p| can_toggle_out(h, ideal, p)).count()
}

/// Number of elements that could be added, i.e. the up-degree in `J(P)`.
pub fn updeg(h: &Heap, ideal: OrderIdeal) -> usize {
    (0..h.len()).filter(|&p| can_toggle_in(h, ideal, p)).count()
}

/// Eligibility indicators `T+_p`, `T-_p` for every element at one ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToggleSnapshot {
    pub plus: Vec<bool>,
    pub minus: Vec<bool>,
}

impl ToggleSnapshot {
    /// `T_p = T+_p - T-_p`.
    pub fn signed(&self, p: usize) -> i64 {
        self.plus[p] as i64 - self.minus[p] as i64
    }
}

pub fn snapshot(h: &Heap, ideal: OrderIdeal) -> ToggleSnapshot {
    ToggleSnapshot {
        plus: (0..h.len()).map(|p| can_toggle_in(h, ideal, p)).collect(),
        minus: (0..h.len()).map(|p| can_toggle_out(h, ideal, p)).collect(),
    }
}

/// `|I ∩ P^i|`.
pub fn f_label(h: &Heap, ideal: OrderIdeal, node: usize) -> usize {
    ideal.elements().filter(|&p| h.label(p) == node).count()
}

/// `2 (lambda, lambda) / Omega^2`.
pub fn tcde_constant(cd: &CartanDatum, lambda: &Weight) -> Rational {
    cd.inner_product(lambda, lambda).expect("lambda has the datum's rank") * int(2) / &cd.omega_sq
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl Comparison {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn root_length_sq(cd: &CartanDatum, node: usize) -> Rational {
    let a = cd.simple_root(node);
    cd.inner_product(&a, &a).expect("root has the datum's rank")
}

fn fundamental_product(cd: &CartanDatum, mu: &Weight, node: usize) -> Rational {
    cd.inner_product(mu, &Weight::fundamental(cd.rank, node)).expect("weight has the datum's rank")
}

/// `2 (lambda, omega_i) / (alpha_i, alpha_i)`.
fn lambda_coefficient(cd: &CartanDatum, lambda: &Weight, node: usize) -> Rational {
    int(2) * fundamental_product(cd, lambda, node) / root_length_sq(cd, node)
}

/// Label-count formula: `f^i(I)` against `2 ((lambda, omega_i) - (phi(I), omega_i)) / (alpha_i, alpha_i)`.
pub fn check_f_formula(case: &Case, k: usize, node: usize) -> Comparison {
    let cd = &case.cartan;
    let lhs = int(f_label(&case.heap, case.lattice.ideals[k], node) as i64);
    let rhs = int(2) * (fundamental_product(cd, &case.lambda, node) - fundamental_product(cd, &case.phi[k], node))
        / root_length_sq(cd, node);
    Comparison { lhs, rhs }
}

/// Signed toggle sum over the fiber against `(phi(I), alpha_i^vee)`.
pub fn check_eq2(case: &Case, k: usize, node: usize) -> Comparison {
    let snap = snapshot(&case.heap, case.lattice.ideals[k]);
    let lhs = int(case.heap.label_fiber(node).iter().map(|&p| snap.signed(p)).sum());
    let rhs = case.phi[k].coords[node].clone();
    Comparison { lhs, rhs }
}

/// `sum_j [(j-1) T+_{p_ij} - j T-_{p_ij}]` against `f^i(I) (phi(I), alpha_i^vee)`.
pub fn check_eq3(case: &Case, k: usize, node: usize) -> Comparison {
    let ideal = case.lattice.ideals[k];
    let snap = snapshot(&case.heap, ideal);
    let lhs: i64 = case
        .heap
        .label_fiber(node)
        .iter()
        .enumerate()
        .map(|(idx, &p)| {
            let j = idx as i64 + 1;
            (j - 1) * snap.plus[p] as i64 - j * snap.minus[p] as i64
        })
        .sum();
    let rhs = int(f_label(&case.heap, ideal, node) as i64) * &case.phi[k].coords[node];
    Comparison { lhs: int(lhs), rhs }
}

/// `X_i(I)` evaluated from the indicators.
pub fn x_statistic(case: &Case, k: usize, node: usize) -> Rational {
    let snap = snapshot(&case.heap, case.lattice.ideals[k]);
    let coeff = lambda_coefficient(&case.cartan, &case.lambda, node);
    let mut acc = zero();
    for (idx, &p) in case.heap.label_fiber(node).iter().enumerate() {
        let j = idx as i64 + 1;
        let signed = int(snap.signed(p));
        acc += int(snap.minus[p] as i64) - int(j - 1) * &signed + &coeff * &signed;
    }
    acc
}

/// `X_i(I)` against `(2 / (alpha_i, alpha_i)) (phi(I), omega_i) (phi(I), alpha_i^vee)`.
pub fn check_x(case: &Case, k: usize, node: usize) -> Comparison {
    let cd = &case.cartan;
    let mu = &case.phi[k];
    let rhs = int(2) / root_length_sq(cd, node) * fundamental_product(cd, mu, node) * &mu.coords[node];
    Comparison { lhs: x_statistic(case, k, node), rhs }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointwiseCheck {
    /// `ddeg(I)` against the constant plus `sum c_ij T_{p_ij}(I)`.
    pub telescoped: Comparison,
    /// `sum_i X_i(I)` against the constant.
    pub x_sum: Comparison,
}

impl PointwiseCheck {
    pub fn holds(&self) -> bool {
        self.telescoped.holds() && self.x_sum.holds()
    }
}

/// `ddeg` differs from the constant by a combination of signed toggle
/// indicators with coefficients `c_ij = (j-1) - 2 (lambda, omega_i) / (alpha_i, alpha_i)`.
pub fn check_pointwise_identity(case: &Case, k: usize) -> PointwiseCheck {
    let cd = &case.cartan;
    let ideal = case.lattice.ideals[k];
    let constant = tcde_constant(cd, &case.lambda);
    let snap = snapshot(&case.heap, ideal);
    let mut combination = constant.clone();
    let mut x_sum = zero();
    for node in 0..cd.rank {
        let coeff = lambda_coefficient(cd, &case.lambda, node);
        for (idx, &p) in case.heap.label_fiber(node).iter().enumerate() {
            let c = int(idx as i64) - &coeff;
            combination += c * int(snap.signed(p));
        }
        x_sum += x_statistic(case, k, node);
    }
    PointwiseCheck {
        telescoped: Comparison { lhs: int(ddeg(&case.heap, ideal) as i64), rhs: combination },
        x_sum: Comparison { lhs: x_sum, rhs: constant },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityFailure {
    pub case: String,
    pub check: &'static str,
    pub ideal: String,
    /// 1-based node, absent for whole-ideal checks.
    pub node: Option<usize>,
    #[serde(with = "serde_fraction")]
    pub lhs: Rational,
    #[serde(with = "serde_fraction")]
    pub rhs: Rational,
}

impl std::fmt::Display for IdentityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {} at ideal {} node {:?}: {} != {}",
            self.case,
            self.check,
            self.ideal,
            self.node,
            to_fraction_string(&self.lhs),
            to_fraction_string(&self.rhs)
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub check: &'static str,
    pub instances: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    fn new(check: &'static str) -> Self {
        IdentityReport { check, instances: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const IDENTITY_CHECKS: [&str; 6] = ["f_formula", "eq2", "eq3", "x_formula", "pointwise", "x_sum"];

/// Every identity at every ideal (and node), one report per identity.
pub fn identity_suite(case: &Case) -> Vec<IdentityReport> {
    let mut reports: Vec<IdentityReport> = IDENTITY_CHECKS.iter().map(|&c| IdentityReport::new(c)).collect();
    let n = case.heap.len();
    let name = case.name();
    let mut record = |slot: usize, k: usize, node: Option<usize>, cmp: Comparison| {
        let r = &mut reports[slot];
        r.instances += 1;
        if !cmp.holds() {
            r.failures.push(IdentityFailure {
                case: name.clone(),
                check: r.check,
                ideal: case.lattice.ideals[k].to_bit_string(n),
                node: node.map(|i| i + 1),
                lhs: cmp.lhs,
                rhs: cmp.rhs,
            });
        }
    };
    for k in 0..case.lattice.len() {
        for node in 0..case.cartan.rank {
            record(0, k, Some(node), check_f_formula(case, k, node));
            record(1, k, Some(node), check_eq2(case, k, node));
            record(2, k, Some(node), check_eq3(case, k, node));
            record(3, k, Some(node), check_x(case, k, node));
        }
        let pw = check_pointwise_identity(case, k);
        record(4, k, None, pw.telescoped);
        record(5, k, None, pw.x_sum);
    }
    reports
}
