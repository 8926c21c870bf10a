use std::fmt;

use crate::cartan::{CartanDatum, Family, Weight};
use crate::error::{Error, Result};
use crate::heap::{build_minuscule_heap, Heap};
use crate::ideals::{enumerate_ideals, phi_table, IdealLattice, DEFAULT_IDEAL_CAP};
use crate::orbit::{OrbitPoset, DEFAULT_ORBIT_CAP};

/// A minuscule weight `omega_node` of a simply-laced type, plus size caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseSpec {
    pub family: Family,
    pub rank: usize,
    /// 0-based node.
    pub node: usize,
    pub max_orbit: usize,
    pub max_ideals: usize,
}

impl CaseSpec {
    /// `node` is 1-based, as written on the command line.
    pub fn new(family: Family, rank: usize, node: usize) -> Result<Self> {
        if node == 0 || node > rank {
            return Err(Error::NodeOutOfRange { node, rank });
        }
        Ok(CaseSpec { family, rank, node: node - 1, max_orbit: DEFAULT_ORBIT_CAP, max_ideals: DEFAULT_IDEAL_CAP })
    }

    pub fn with_caps(mut self, max_orbit: usize, max_ideals: usize) -> Self {
        self.max_orbit = max_orbit;
        self.max_ideals = max_ideals;
        self
    }

    /// A5 nodes 1..=5, D5 nodes 1, 4, 5, ...
    pub fn default_catalog() -> Vec<CaseSpec> {
        let mut out = Vec::new();
        let mut push_type = |family, rank| {
            let cd = CartanDatum::new(family, rank).expect("catalog types are supported");
            for k in cd.minuscule_catalog() {
                out.push(CaseSpec::new(family, rank, k + 1).expect("catalog nodes are in range"));
            }
        };
        for t in 1..=7 {
            push_type(Family::A, t);
        }
        for t in 4..=8 {
            push_type(Family::D, t);
        }
        push_type(Family::E, 6);
        push_type(Family::E, 7);
        out
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{} w{}", self.family, self.rank, self.node + 1)
    }
}

/// Everything built for one minuscule weight.
#[derive(Debug, Clone)]
pub struct Case {
    pub spec: CaseSpec,
    pub cartan: CartanDatum,
    pub lambda: Weight,
    pub orbit: OrbitPoset,
    pub heap: Heap,
    pub lattice: IdealLattice,
    /// `phi` of each ideal, by lattice index.
    pub phi: Vec<Weight>,
}

impl Case {
    pub fn build(spec: CaseSpec) -> Result<Case> {
        let cartan = CartanDatum::new(spec.family, spec.rank)?;
        cartan.check_node(spec.node)?;
        let lambda = Weight::fundamental(spec.rank, spec.node);
        let (orbit, heap) = build_minuscule_heap(&cartan, &lambda, spec.max_orbit)?;
        let lattice = enumerate_ideals(&heap, spec.max_ideals)?;
        let phi = phi_table(&cartan, &heap, &lambda, &lattice);
        Ok(Case { spec, cartan, lambda, orbit, heap, lattice, phi })
    }

    pub fn name(&self) -> String {
        self.spec.to_string()
    }
}
