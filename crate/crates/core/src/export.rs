//! JSON bundles and Graphviz DOT output.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use serde::Serialize;

use crate::cartan::CartanJson;
use crate::case::Case;
use crate::heap::{Heap, HeapJson};
use crate::ideals::LatticeJson;
use crate::orbit::OrbitPoset;

#[derive(Debug, Clone, Serialize)]
pub struct OrbitJson {
    pub weights: Vec<Vec<i64>>,
    /// `(lower, upper, node)` with 1-based nodes.
    pub covers: Vec<(usize, usize, usize)>,
    pub bottom: usize,
    pub top: usize,
}

impl OrbitPoset {
    pub fn to_json(&self) -> OrbitJson {
        OrbitJson {
            weights: self.weights.iter().map(|w| w.to_ints().unwrap_or_default()).collect(),
            covers: self.covers.iter().map(|c| (c.lower, c.upper, c.node + 1)).collect(),
            bottom: self.bottom,
            top: self.top,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Bundle {
    pub case: String,
    pub cartan: CartanJson,
    pub lambda: Vec<i64>,
    pub orbit: OrbitJson,
    pub heap: HeapJson,
    pub lattice: LatticeJson,
}

pub fn bundle(case: &Case) -> Bundle {
    Bundle {
        case: case.name(),
        cartan: case.cartan.to_json(),
        lambda: case.lambda.to_ints().unwrap_or_default(),
        orbit: case.orbit.to_json(),
        heap: case.heap.to_json(),
        lattice: case.lattice.to_json(&case.phi),
    }
}

/// Hasse diagram of the heap, minimal elements at the bottom.
pub fn heap_dot(h: &Heap) -> String {
    let mut s = String::from("digraph heap {\n  rankdir=BT;\n  node [shape=circle];\n");
    for p in 0..h.len() {
        let (label, occ) = h.canonical_name(p);
        let _ = writeln!(s, "  p{p} [label=\"{}\", xlabel=\"{}.{}\"];", label + 1, label + 1, occ);
    }
    for (a, b) in h.covers() {
        let _ = writeln!(s, "  p{a} -> p{b};");
    }
    s.push_str("}\n");
    s
}

/// Hasse diagram of the weight orbit, edges labeled by simple roots.
pub fn orbit_dot(orbit: &OrbitPoset) -> String {
    let mut s = String::from("digraph orbit {\n  rankdir=BT;\n  node [shape=box];\n");
    for (u, w) in orbit.weights.iter().enumerate() {
        let _ = writeln!(s, "  w{u} [label=\"{w}\"];");
    }
    for c in &orbit.covers {
        let _ = writeln!(s, "  w{} -> w{} [label=\"{}\"];", c.lower, c.upper, c.node + 1);
    }
    s.push_str("}\n");
    s
}

/// Write through a temporary sibling and rename, so readers never see a
/// partial file.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;
    use crate::case::CaseSpec;

    #[test]
    fn grid_bundle_and_dot() {
        let case = Case::build(CaseSpec::new(Family::A, 3, 2).unwrap()).unwrap();
        let b = bundle(&case);
        assert_eq!(b.heap.size, 4);
        assert_eq!(b.lattice.ideals.len(), 6);
        assert_eq!(b.orbit.weights[0], vec![0, 1, 0]);
        assert_eq!(b.lattice.phi[0], vec![0, 1, 0]);
        let json = serde_json::to_string(&b).unwrap();
        assert!(json.contains("\"matrix\":[[2,-1,0],[-1,2,-1],[0,-1,2]]"));

        let dot = heap_dot(&case.heap);
        assert_eq!(dot.matches("->").count(), 4);
        assert!(dot.contains("p0 -> p1;"));
        let dot = orbit_dot(&case.orbit);
        assert_eq!(dot.matches("->").count(), 6);
        assert!(dot.contains("w0 [label=\"(0,1,0)\"]"));
    }

    #[test]
    fn atomic_write() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub/out.json");
        write_atomic(&path, "{}").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "{}");
        assert!(!path.with_extension("tmp").exists());
    }
}
