//! The shipped configuration catalog.
//!
//! Only S1 is fully specified in machine-readable form: the internal
//! graph is a triangle x0-x1-x4 sharing the edge x1-x4 with the 4-cycle
//! x1-x2-x3-x4, vertices x0..x3 of host degree 4 and x4 of host degree 5.
//! Further entries can be supplied in the same file format and checked
//! with the `catalog` and `reduce` commands.

use crate::cn::Configuration;
use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub configuration: Configuration,
    pub provenance: &'static str,
}

pub fn s1() -> Configuration {
    let graph = Graph::new(5, &[(0, 1), (0, 4), (1, 2), (1, 4), (2, 3), (3, 4)])
        .expect("S1 edge list is valid");
    Configuration::new("S1", graph, vec![4, 4, 4, 4, 5], 4).expect("S1 degrees are valid")
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![CatalogEntry {
        name: "S1",
        configuration: s1(),
        provenance: "triangle sharing an edge with a 4-face; host degrees (4,4,4,4,5)",
    }]
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cn::{derive_caps, CapVector};

    #[test]
    fn names_unique() {
        let mut names: Vec<_> = entries().iter().map(|e| e.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), entries().len());
    }

    #[test]
    fn shipped_entries_pass_derive_caps() {
        for entry in entries() {
            derive_caps(&entry.configuration).unwrap();
        }
    }

    #[test]
    fn s1_caps() {
        assert_eq!(derive_caps(&s1()).unwrap(), CapVector(vec![1, 2, 1, 1, 1]));
    }

    #[test]
    fn shipped_entries_survive_format_round_trip() {
        use crate::io::{parse_configuration, serialize_configuration};
        for entry in entries() {
            let text = serialize_configuration(&entry.configuration);
            let parsed = parse_configuration(&text).unwrap();
            assert_eq!(serialize_configuration(&parsed), text);
        }
    }
}
