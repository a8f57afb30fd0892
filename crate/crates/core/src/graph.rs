//! Ring lattice plus shortcut set.
//!
//! A [`Network`] is immutable once built. Generators accumulate shortcuts in a
//! [`NetworkBuilder`] and freeze it; [`Network::add_shortcut`] returns a new
//! value. Nodes are labeled `0..L`.

use std::collections::HashSet;
use std::fmt;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Node label. Networks are limited to `u32::MAX` nodes.
pub type Node = u32;

/// Lattice (ring) distance between `i` and `j` on a ring of `size` nodes.
pub fn lattice_distance(size: usize, i: usize, j: usize) -> Result<usize> {
    for node in [i, j] {
        if node >= size {
            return Err(Error::NodeOutOfRange { node, size });
        }
    }
    Ok(ring_distance(size, i, j))
}

/// Unchecked variant of [`lattice_distance`] for hot loops.
#[inline]
pub fn ring_distance(size: usize, i: usize, j: usize) -> usize {
    let diff = i.abs_diff(j);
    diff.min(size - diff)
}

#[inline]
fn ordered(i: Node, j: Node) -> (Node, Node) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// Total lattice length of the shortcuts and its per-node value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortcutLengthSummary {
    pub total_length: u64,
    pub unit_cost: f64,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Network {
    size: usize,
    shortcuts: Vec<(Node, Node)>,
    offsets: Vec<u32>,
    adjacency: Vec<Node>,
}

impl fmt::Debug for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Network")
            .field("size", &self.size)
            .field("shortcuts", &self.shortcuts.len())
            .finish()
    }
}

impl Network {
    /// Plain ring of `size` nodes.
    pub fn new_ring(size: usize) -> Result<Self> {
        Ok(NetworkBuilder::new(size)?.build())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Shortcuts as sorted `(i, j)` pairs with `i < j`.
    pub fn shortcuts(&self) -> &[(Node, Node)] {
        &self.shortcuts
    }

    pub fn shortcut_count(&self) -> usize {
        self.shortcuts.len()
    }

    /// Number of undirected edges, ring included.
    pub fn edge_count(&self) -> usize {
        self.adjacency.len() / 2
    }

    /// Neighbors of `node`, sorted ascending.
    #[inline]
    pub fn neighbors(&self, node: Node) -> &[Node] {
        let n = node as usize;
        &self.adjacency[self.offsets[n] as usize..self.offsets[n + 1] as usize]
    }

    pub fn degree(&self, node: Node) -> usize {
        self.neighbors(node).len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.size as Node).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_adjacent(&self, i: Node, j: Node) -> bool {
        self.neighbors(i).binary_search(&j).is_ok()
    }

    pub fn has_shortcut(&self, i: Node, j: Node) -> bool {
        self.shortcuts.binary_search(&ordered(i, j)).is_ok()
    }

    #[inline]
    pub fn lattice_distance(&self, i: Node, j: Node) -> usize {
        ring_distance(self.size, i as usize, j as usize)
    }

    /// Returns a new network that also contains `{i, j}`.
    pub fn add_shortcut(&self, i: usize, j: usize) -> Result<Network> {
        let mut builder = self.to_builder();
        builder.add_shortcut(i, j)?;
        Ok(builder.build())
    }

    pub fn to_builder(&self) -> NetworkBuilder {
        let mut builder = NetworkBuilder::new(self.size).expect("valid size");
        for &(i, j) in &self.shortcuts {
            builder.insert_unchecked(i, j);
        }
        builder
    }

    pub fn wiring_cost(&self) -> ShortcutLengthSummary {
        let total_length: u64 = self
            .shortcuts
            .iter()
            .map(|&(i, j)| self.lattice_distance(i, j) as u64)
            .sum();
        ShortcutLengthSummary {
            total_length,
            unit_cost: total_length as f64 / self.size as f64,
        }
    }

    /// Canonical text encoding: `{"L":<int>,"shortcuts":[[i,j],...]}` with
    /// sorted pairs and no whitespace.
    pub fn encode(&self) -> String {
        let mut out = String::with_capacity(24 + self.shortcuts.len() * 12);
        out.push_str("{\"L\":");
        out.push_str(&self.size.to_string());
        out.push_str(",\"shortcuts\":[");
        for (n, (i, j)) in self.shortcuts.iter().enumerate() {
            if n > 0 {
                out.push(',');
            }
            out.push('[');
            out.push_str(&i.to_string());
            out.push(',');
            out.push_str(&j.to_string());
            out.push(']');
        }
        out.push_str("]}");
        out
    }

    /// Parses the text encoding and enforces every network invariant.
    /// Surrounding whitespace and pair order are tolerated.
    pub fn decode(text: &str) -> Result<Network> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wire {
            #[serde(rename = "L")]
            size: u64,
            shortcuts: Vec<[u64; 2]>,
        }

        let wire: Wire = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
        let size = usize::try_from(wire.size)
            .ok()
            .filter(|&s| s <= u32::MAX as usize)
            .ok_or_else(|| Error::parse("field L", "size does not fit in 32 bits"))?;
        let mut builder = NetworkBuilder::new(size)?;
        for (index, [i, j]) in wire.shortcuts.into_iter().enumerate() {
            builder
                .add_shortcut(i as usize, j as usize)
                .map_err(|e| Error::parse(format!("shortcut #{index}"), e.to_string()))?;
        }
        Ok(builder.build())
    }
}

/// Mutable accumulation phase for a [`Network`].
#[derive(Debug, Clone)]
pub struct NetworkBuilder {
    size: usize,
    shortcuts: HashSet<(Node, Node)>,
    ends: Vec<u32>,
}

impl NetworkBuilder {
    pub fn new(size: usize) -> Result<Self> {
        if size < 3 {
            return Err(Error::InvalidSize(size));
        }
        if size > u32::MAX as usize {
            return Err(Error::param("L", "exceeds 32-bit node labels"));
        }
        Ok(NetworkBuilder {
            size,
            shortcuts: HashSet::new(),
            ends: vec![0; size],
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn shortcut_count(&self) -> usize {
        self.shortcuts.len()
    }

    pub fn has_shortcut(&self, i: Node, j: Node) -> bool {
        self.shortcuts.contains(&ordered(i, j))
    }

    /// Number of shortcut ends attached to `node`.
    pub fn shortcut_ends(&self, node: Node) -> u32 {
        self.ends[node as usize]
    }

    /// True when `{i, j}` could be added as a new shortcut.
    pub fn is_admissible(&self, i: Node, j: Node) -> bool {
        ring_distance(self.size, i as usize, j as usize) >= 2 && !self.has_shortcut(i, j)
    }

    pub fn add_shortcut(&mut self, i: usize, j: usize) -> Result<()> {
        let r = lattice_distance(self.size, i, j)?;
        let (i, j) = (i as Node, j as Node);
        if r == 0 {
            return Err(Error::SelfLoop(i));
        }
        if r == 1 {
            return Err(Error::RingEdge(i.min(j), i.max(j)));
        }
        if self.has_shortcut(i, j) {
            return Err(Error::DuplicateShortcut(i.min(j), i.max(j)));
        }
        self.insert_unchecked(i, j);
        Ok(())
    }

    /// Adds `{i, j}` unless it is a self-loop, a ring edge or a duplicate.
    /// Returns whether an edge was added.
    pub fn add_if_new(&mut self, i: usize, j: usize) -> bool {
        let (i, j) = (i % self.size, j % self.size);
        if self.is_admissible(i as Node, j as Node) {
            self.insert_unchecked(i as Node, j as Node);
            true
        } else {
            false
        }
    }

    fn insert_unchecked(&mut self, i: Node, j: Node) {
        if self.shortcuts.insert(ordered(i, j)) {
            self.ends[i as usize] += 1;
            self.ends[j as usize] += 1;
        }
    }

    pub fn build(self) -> Network {
        let size = self.size;
        let mut shortcuts: Vec<(Node, Node)> = self.shortcuts.into_iter().collect();
        shortcuts.sort_unstable();

        let mut offsets = Vec::with_capacity(size + 1);
        offsets.push(0u32);
        let mut acc = 0u32;
        for v in 0..size {
            acc += 2 + self.ends[v];
            offsets.push(acc);
        }
        let mut adjacency = vec![0 as Node; acc as usize];
        let mut fill: Vec<u32> = offsets[..size].to_vec();
        let mut push = |a: Node, b: Node| {
            adjacency[fill[a as usize] as usize] = b;
            fill[a as usize] += 1;
        };
        for v in 0..size {
            let next = ((v + 1) % size) as Node;
            push(v as Node, next);
            push(next, v as Node);
        }
        for &(i, j) in &shortcuts {
            push(i, j);
            push(j, i);
        }
        for v in 0..size {
            adjacency[offsets[v] as usize..offsets[v + 1] as usize].sort_unstable();
        }

        Network {
            size,
            shortcuts,
            offsets,
            adjacency,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_basics() {
        let ring = Network::new_ring(5).unwrap();
        assert_eq!(ring.size(), 5);
        assert_eq!(ring.edge_count(), 5);
        assert_eq!(ring.shortcut_count(), 0);

        let tri = Network::new_ring(3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(tri.is_adjacent(i, j));
                }
            }
        }
        assert_eq!(Network::new_ring(2).unwrap_err(), Error::InvalidSize(2));
    }

    #[test]
    fn lattice_distance_examples() {
        assert_eq!(lattice_distance(10, 2, 9).unwrap(), 3);
        assert_eq!(lattice_distance(10, 4, 4).unwrap(), 0);
        assert_eq!(lattice_distance(8, 0, 4).unwrap(), 4);
        assert!(matches!(
            lattice_distance(8, 0, 8),
            Err(Error::NodeOutOfRange { node: 8, size: 8 })
        ));
    }

    #[test]
    fn add_shortcut_errors_are_distinct() {
        let ring = Network::new_ring(10).unwrap();
        let net = ring.add_shortcut(0, 5).unwrap();
        assert_eq!(net.shortcut_count(), 1);
        assert_eq!(ring.shortcut_count(), 0);
        assert_eq!(ring.add_shortcut(0, 1).unwrap_err(), Error::RingEdge(0, 1));
        assert_eq!(ring.add_shortcut(9, 0).unwrap_err(), Error::RingEdge(0, 9));
        assert_eq!(net.add_shortcut(5, 0).unwrap_err(), Error::DuplicateShortcut(0, 5));
        assert_eq!(ring.add_shortcut(3, 3).unwrap_err(), Error::SelfLoop(3));
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let net = Network::new_ring(10)
            .unwrap()
            .add_shortcut(0, 5)
            .unwrap()
            .add_shortcut(2, 7)
            .unwrap();
        assert_eq!(net.neighbors(0), &[1, 5, 9]);
        for v in 0..10 {
            assert!(net.degree(v) >= 2);
            for &u in net.neighbors(v) {
                assert!(net.is_adjacent(u, v));
            }
        }
    }

    #[test]
    fn wiring_cost_examples() {
        let net = Network::new_ring(10).unwrap().add_shortcut(0, 5).unwrap();
        let cost = net.wiring_cost();
        assert_eq!(cost.total_length, 5);
        assert_eq!(cost.unit_cost, 0.5);
        let net = net.add_shortcut(1, 8).unwrap();
        assert_eq!(net.wiring_cost().total_length, 5 + 3);
    }

    #[test]
    fn canonical_encoding() {
        let ring = Network::new_ring(5).unwrap();
        assert_eq!(ring.encode(), r#"{"L":5,"shortcuts":[]}"#);
        let net = ring.add_shortcut(3, 0).unwrap();
        assert_eq!(net.encode(), r#"{"L":5,"shortcuts":[[0,3]]}"#);
        assert_eq!(Network::decode(&net.encode()).unwrap(), net);
    }

    #[test]
    fn decode_enforces_invariants() {
        let err = Network::decode(r#"{"L":5,"shortcuts":[[0,1]]}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { ref position, .. } if position == "shortcut #0"));
        assert!(Network::decode(r#"{"L":5,"shortcuts":[[0,2],[2,0]]}"#).is_err());
        assert!(Network::decode(r#"{"L":5,"shortcuts":[[0,7]]}"#).is_err());
        assert!(Network::decode(r#"{"L":2,"shortcuts":[]}"#).is_err());
        assert!(Network::decode(r#"{"L":5,"shortcuts":[],"x":1}"#).is_err());
        let err = Network::decode("{\"L\":5,\n\"shortcuts\":[[0,2]").unwrap_err();
        assert!(matches!(err, Error::Parse { ref position, .. } if position.starts_with("line 2")));
    }

    #[test]
    fn decode_tolerates_whitespace_and_order() {
        let net = Network::decode(" {\"L\": 8, \"shortcuts\": [[5, 1], [0, 4]]}\n").unwrap();
        assert_eq!(net.shortcuts(), &[(0, 4), (1, 5)]);
    }
}
