//! Weightings, list assignments, orientations and edge labelings.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::scalar::Scalar;

/// Vertex weights; vertices without an entry weigh zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weighting<S> {
    weights: BTreeMap<VertexId, S>,
}

impl<S> Default for Weighting<S> {
    fn default() -> Self {
        Weighting {
            weights: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> Weighting<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_map(weights: BTreeMap<VertexId, S>) -> Self {
        Weighting { weights }
    }

    pub fn set(&mut self, v: VertexId, w: S) {
        self.weights.insert(v, w);
    }

    pub fn get(&self, v: VertexId) -> S {
        self.weights.get(&v).cloned().unwrap_or_else(S::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (VertexId, &S)> {
        self.weights.iter().map(|(&v, w)| (v, w))
    }

    pub fn check_against(&self, g: &Graph) -> Result<()> {
        match self.weights.keys().find(|&&v| !g.has_vertex(v)) {
            Some(v) => Err(Error::Contract(format!("weight given for unknown vertex {v}"))),
            None => Ok(()),
        }
    }
}

/// Per-edge candidate label sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment<S> {
    lists: BTreeMap<Edge, BTreeSet<S>>,
}

impl<S> Default for ListAssignment<S> {
    fn default() -> Self {
        ListAssignment {
            lists: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> ListAssignment<S> {
    /// Every edge gets `{1, ..., max}`.
    pub fn uniform_range(g: &Graph, max: u64) -> Self {
        let range: BTreeSet<S> = (1..=max as i64).map(S::from_int).collect();
        ListAssignment {
            lists: g.edges().map(|e| (e, range.clone())).collect(),
        }
    }

    pub fn from_map(lists: BTreeMap<Edge, BTreeSet<S>>) -> Self {
        ListAssignment { lists }
    }

    pub fn set(&mut self, e: Edge, list: BTreeSet<S>) {
        self.lists.insert(e, list);
    }

    pub fn get(&self, e: Edge) -> Option<&BTreeSet<S>> {
        self.lists.get(&e)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Edge, &BTreeSet<S>)> {
        self.lists.iter().map(|(&e, l)| (e, l))
    }

    /// Keys must be edges of `g`, and with `min_size` every edge of `g`
    /// needs a list of at least that size.
    pub fn check_against(&self, g: &Graph, min_size: Option<usize>) -> Result<()> {
        if let Some(e) = self.lists.keys().find(|&&e| !g.has_edge(e)) {
            return Err(Error::Contract(format!("list given for unknown edge {e}")));
        }
        if let Some(min) = min_size {
            for e in g.edges() {
                let available = self.lists.get(&e).map_or(0, BTreeSet::len);
                if available < min {
                    return Err(Error::Infeasible {
                        edge: e,
                        available,
                        required: min,
                    });
                }
            }
        }
        Ok(())
    }
}

/// A direction for each edge, stored as its head.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Orientation {
    heads: BTreeMap<Edge, VertexId>,
}

impl Orientation {
    /// Every edge points from its smaller to its larger endpoint.
    pub fn ascending(g: &Graph) -> Self {
        Orientation {
            heads: g.edges().map(|e| (e, e.hi())).collect(),
        }
    }

    /// Orients `e` from `tail` to `head`.
    pub fn set(&mut self, tail: VertexId, head: VertexId) -> Result<()> {
        let e = Edge::try_new(tail, head)
            .ok_or_else(|| Error::Contract(format!("cannot orient loop at {tail}")))?;
        self.heads.insert(e, head);
        Ok(())
    }

    pub fn head(&self, e: Edge) -> Option<VertexId> {
        self.heads.get(&e).copied()
    }

    pub fn tail(&self, e: Edge) -> Option<VertexId> {
        self.head(e).and_then(|h| e.other(h))
    }

    pub fn flip(&mut self, e: Edge) {
        if let Some(h) = self.heads.get_mut(&e) {
            *h = e.other(*h).expect("head lies on its edge");
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (Edge, VertexId)> + '_ {
        self.heads.iter().map(|(&e, &h)| (e, h))
    }

    pub fn check_against(&self, g: &Graph) -> Result<()> {
        for (e, h) in self.entries() {
            if !g.has_edge(e) || !e.contains(h) {
                return Err(Error::Contract(format!("orientation entry {e} -> {h} is not an edge")));
            }
        }
        match g.edges().find(|e| !self.heads.contains_key(e)) {
            Some(e) => Err(Error::Contract(format!("edge {e} has no orientation"))),
            None => Ok(()),
        }
    }
}

/// An edge labeling, optionally with an orientation.
///
/// Injectivity is not enforced here; the verifier reports duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling<S> {
    labels: BTreeMap<Edge, S>,
    orientation: Option<Orientation>,
}

impl<S> Default for Labeling<S> {
    fn default() -> Self {
        Labeling {
            labels: BTreeMap::new(),
            orientation: None,
        }
    }
}

impl<S: Scalar> Labeling<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_map(labels: BTreeMap<Edge, S>) -> Self {
        Labeling {
            labels,
            orientation: None,
        }
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = Some(orientation);
        self
    }

    pub fn set(&mut self, e: Edge, label: S) {
        self.labels.insert(e, label);
    }

    pub fn get(&self, e: Edge) -> Option<&S> {
        self.labels.get(&e)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Edge, &S)> {
        self.labels.iter().map(|(&e, l)| (e, l))
    }

    pub fn orientation(&self) -> Option<&Orientation> {
        self.orientation.as_ref()
    }

    pub fn orientation_mut(&mut self) -> Option<&mut Orientation> {
        self.orientation.as_mut()
    }

    pub fn set_orientation(&mut self, orientation: Option<Orientation>) {
        self.orientation = orientation;
    }

    pub fn check_total(&self, g: &Graph) -> Result<()> {
        if let Some(e) = g.edges().find(|e| !self.labels.contains_key(e)) {
            return Err(Error::Contract(format!("edge {e} is unlabeled")));
        }
        if let Some(e) = self.labels.keys().find(|&&e| !g.has_edge(e)) {
            return Err(Error::Contract(format!("label given for unknown edge {e}")));
        }
        Ok(())
    }
}

/// Weighted vertex sums `w(v) + sum of labels at v`.
pub fn vertex_sums<S: Scalar>(
    g: &Graph,
    f: &Labeling<S>,
    w: &Weighting<S>,
) -> Result<BTreeMap<VertexId, S>> {
    f.check_total(g)?;
    let mut sums: BTreeMap<VertexId, S> = g.vertices().map(|v| (v, w.get(v))).collect();
    for (e, label) in f.entries() {
        for v in e.endpoints() {
            let s = sums.get_mut(&v).expect("endpoint is a vertex");
            *s = s.clone() + label.clone();
        }
    }
    Ok(sums)
}

/// Oriented vertex sums: inbound labels minus outbound labels.
pub fn oriented_vertex_sums<S: Scalar>(g: &Graph, f: &Labeling<S>) -> Result<BTreeMap<VertexId, S>> {
    f.check_total(g)?;
    let orientation = f
        .orientation()
        .ok_or_else(|| Error::Contract("labeling has no orientation".into()))?;
    orientation.check_against(g)?;
    let mut sums: BTreeMap<VertexId, S> = g.vertices().map(|v| (v, S::zero())).collect();
    for (e, label) in f.entries() {
        let head = orientation.head(e).expect("checked total");
        let tail = e.other(head).expect("head on edge");
        let h = sums.get_mut(&head).expect("vertex");
        *h = h.clone() + label.clone();
        let t = sums.get_mut(&tail).expect("vertex");
        *t = t.clone() - label.clone();
    }
    Ok(sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    fn labeled(pairs: &[((VertexId, VertexId), i64)]) -> Labeling<i64> {
        Labeling::from_map(pairs.iter().map(|&((u, v), l)| (Edge::new(u, v), l)).collect())
    }

    #[test]
    fn weighted_sums_examples() {
        let p3 = generate::path(3);
        let f = labeled(&[((1, 2), 1), ((2, 3), 2)]);
        let sums = vertex_sums(&p3, &f, &Weighting::zero()).unwrap();
        assert_eq!(sums.values().copied().collect::<Vec<_>>(), vec![1, 3, 2]);

        let k2 = generate::path(2);
        let mut w = Weighting::zero();
        w.set(1, 5);
        let sums = vertex_sums(&k2, &labeled(&[((1, 2), 1)]), &w).unwrap();
        assert_eq!(sums[&1], 6);
        assert_eq!(sums[&2], 1);

        // C3 with 1, 2, 3 on ab, bc, ca
        let c3 = generate::cycle(3);
        let f = labeled(&[((1, 2), 1), ((2, 3), 2), ((3, 1), 3)]);
        let sums = vertex_sums(&c3, &f, &Weighting::zero()).unwrap();
        assert_eq!(sums.values().copied().collect::<Vec<_>>(), vec![4, 3, 5]);
    }

    #[test]
    fn isolated_vertices_keep_their_weight() {
        let g = generate::path(2).with_vertices([9]);
        let mut w = Weighting::zero();
        w.set(9, -4);
        let sums = vertex_sums(&g, &labeled(&[((1, 2), 3)]), &w).unwrap();
        assert_eq!(sums[&9], -4);
    }

    #[test]
    fn oriented_sums_examples() {
        let k2 = generate::path(2);
        let f = labeled(&[((1, 2), 1)]).with_orientation(Orientation::ascending(&k2));
        let sums = oriented_vertex_sums(&k2, &f).unwrap();
        assert_eq!((sums[&1], sums[&2]), (-1, 1));

        let p3 = generate::path(3);
        let f = labeled(&[((1, 2), 1), ((2, 3), 2)]).with_orientation(Orientation::ascending(&p3));
        let sums = oriented_vertex_sums(&p3, &f).unwrap();
        assert_eq!(sums.values().copied().collect::<Vec<_>>(), vec![-1, -1, 2]);

        // cyclic a->b->c->a with labels 1, 2, 3
        let c3 = generate::cycle(3);
        let mut o = Orientation::default();
        o.set(1, 2).unwrap();
        o.set(2, 3).unwrap();
        o.set(3, 1).unwrap();
        let f = labeled(&[((1, 2), 1), ((2, 3), 2), ((3, 1), 3)]).with_orientation(o);
        let sums = oriented_vertex_sums(&c3, &f).unwrap();
        assert_eq!(sums.values().copied().collect::<Vec<_>>(), vec![2, -1, -1]);
    }

    #[test]
    fn contract_errors() {
        let p3 = generate::path(3);
        let partial = labeled(&[((1, 2), 1)]);
        assert!(matches!(
            vertex_sums(&p3, &partial, &Weighting::zero()),
            Err(Error::Contract(_))
        ));
        let full = labeled(&[((1, 2), 1), ((2, 3), 2)]);
        assert!(matches!(oriented_vertex_sums(&p3, &full), Err(Error::Contract(_))));
    }

    #[test]
    fn flipping_negates_only_that_edge() {
        let g = generate::complete(4);
        let f = Labeling::from_map(g.edges().zip(1i64..).collect())
            .with_orientation(Orientation::ascending(&g));
        let before = oriented_vertex_sums(&g, &f).unwrap();
        let e = Edge::new(2, 4);
        let mut flipped = f.clone();
        flipped.orientation_mut().unwrap().flip(e);
        let after = oriented_vertex_sums(&g, &flipped).unwrap();
        let l = *f.get(e).unwrap();
        for v in g.vertices() {
            let expected = match v {
                2 => before[&2] + 2 * l,
                4 => before[&4] - 2 * l,
                _ => before[&v],
            };
            assert_eq!(after[&v], expected);
        }
    }
}
