use serde::Serialize;

use super::{Edge, Graph, VertexId};
use crate::error::{Error, Result};

/// Traversal order of a path or cycle component.
///
/// Paths start at their lower-id endpoint. Cycles start at their smallest
/// vertex and continue towards its smaller neighbor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Walk {
    Path(Vec<VertexId>),
    Cycle(Vec<VertexId>),
}

impl Walk {
    /// Edges in traversal order.
    pub fn edges(&self) -> Vec<Edge> {
        match self {
            Walk::Path(vs) => vs.windows(2).map(|w| Edge::new(w[0], w[1])).collect(),
            Walk::Cycle(vs) => (0..vs.len())
                .map(|i| Edge::new(vs[i], vs[(i + 1) % vs.len()]))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<Edge>,
    /// Present when every vertex of the component has degree at most two.
    pub walk: Option<Walk>,
}

/// Components sorted into the classes used by the degree-two base case:
/// isolated vertices, isolated edges, even components on at least four
/// vertices and odd components.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ComponentDecomposition {
    pub isolated_vertices: Vec<VertexId>,
    pub isolated_edges: Vec<Edge>,
    pub even_components: Vec<Component>,
    pub odd_components: Vec<Component>,
    /// One vertex per odd component missed by the matching; only filled by
    /// [`decompose_with_matching`].
    pub uncovered_vertices: Vec<VertexId>,
}

impl ComponentDecomposition {
    pub fn q(&self) -> usize {
        self.isolated_edges.len()
    }

    pub fn r(&self) -> usize {
        self.even_components.len()
    }

    pub fn s(&self) -> usize {
        self.odd_components.len()
    }

    /// Vertices lying in some edge.
    pub fn non_isolated_count(&self) -> usize {
        2 * self.q()
            + self
                .even_components
                .iter()
                .chain(&self.odd_components)
                .map(|c| c.vertices.len())
                .sum::<usize>()
    }
}

/// A maximum matching `edges` (E') of a graph with maximum degree two, its
/// complement (E'') in greedy labeling order, and the uncovered vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub edges: Vec<Edge>,
    pub complement: Vec<Edge>,
    pub uncovered: Vec<VertexId>,
}

/// A vertex of degree at least three together with three of its edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub vertex: VertexId,
    pub neighbors: [VertexId; 3],
    pub edges: [Edge; 3],
}

fn walk_of(g: &Graph, vertices: &[VertexId]) -> Option<Walk> {
    if vertices.iter().any(|&v| g.degree(v) > 2) {
        return None;
    }
    let start = vertices.iter().copied().find(|&v| g.degree(v) == 1);
    let (first, is_path) = match start {
        Some(v) => (v, true),
        None => (vertices[0], false),
    };
    let mut order = vec![first];
    let mut prev = None;
    let mut cur = first;
    loop {
        let next = g.neighbors(cur).find(|&u| Some(u) != prev && u != first);
        match next {
            Some(u) if order.len() < vertices.len() => {
                order.push(u);
                prev = Some(cur);
                cur = u;
            }
            _ => break,
        }
    }
    Some(if is_path {
        Walk::Path(order)
    } else {
        Walk::Cycle(order)
    })
}

pub fn decompose(g: &Graph) -> ComponentDecomposition {
    let mut out = ComponentDecomposition::default();
    for vertices in g.components() {
        match vertices.len() {
            1 => out.isolated_vertices.push(vertices[0]),
            2 => out.isolated_edges.push(Edge::new(vertices[0], vertices[1])),
            len => {
                let walk = walk_of(g, &vertices);
                let edges = match &walk {
                    Some(w) => w.edges(),
                    None => {
                        let mut es: Vec<Edge> =
                            vertices.iter().flat_map(|&v| g.incident_edges(v)).collect();
                        es.sort_unstable();
                        es.dedup();
                        es
                    }
                };
                let comp = Component {
                    vertices,
                    edges,
                    walk,
                };
                if len % 2 == 0 {
                    out.even_components.push(comp);
                } else {
                    out.odd_components.push(comp);
                }
            }
        }
    }
    out
}

/// Maximum matching of a graph with maximum degree at most two, built
/// component by component by alternating along each path or cycle.
pub fn max_matching_deg2(g: &Graph) -> Result<Matching> {
    if g.max_degree() > 2 {
        return Err(Error::Contract(format!(
            "matching requires maximum degree 2, found {}",
            g.max_degree()
        )));
    }
    let mut out = Matching::default();
    for vertices in g.components() {
        if vertices.len() < 2 {
            continue;
        }
        let walk = walk_of(g, &vertices).expect("degree checked above");
        let edges = walk.edges();
        let (first_matched, uncovered) = match &walk {
            Walk::Path(vs) => (0, (vs.len() % 2 == 1).then(|| vs[vs.len() - 1])),
            Walk::Cycle(vs) if vs.len() % 2 == 1 => (1, Some(vs[0])),
            Walk::Cycle(_) => (0, None),
        };
        let matched_len = vertices.len() / 2;
        for (i, e) in edges.into_iter().enumerate() {
            let matched = i >= first_matched
                && (i - first_matched) % 2 == 0
                && (i - first_matched) / 2 < matched_len;
            if matched {
                out.edges.push(e);
            } else {
                out.complement.push(e);
            }
        }
        out.uncovered.extend(uncovered);
    }
    Ok(out)
}

/// Decomposition with `uncovered_vertices` filled from the chosen matching.
pub fn decompose_with_matching(g: &Graph) -> Result<(ComponentDecomposition, Matching)> {
    let matching = max_matching_deg2(g)?;
    let mut dec = decompose(g);
    dec.uncovered_vertices = matching.uncovered.clone();
    Ok((dec, matching))
}

/// The smallest-id vertex among those of maximum degree, if that degree is
/// at least three, with its edges to its three smallest neighbors.
pub fn find_3plus_vertex(g: &Graph) -> Option<Reduction> {
    let max = g.max_degree();
    if max < 3 {
        return None;
    }
    let vertex = g.vertices().find(|&v| g.degree(v) == max)?;
    let nbrs: Vec<VertexId> = g.neighbors(vertex).take(3).collect();
    let neighbors = [nbrs[0], nbrs[1], nbrs[2]];
    Some(Reduction {
        vertex,
        neighbors,
        edges: neighbors.map(|u| Edge::new(vertex, u)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    fn disjoint(parts: &[Graph]) -> Graph {
        let mut g = Graph::new();
        let mut offset = 0;
        for p in parts {
            for v in p.vertices() {
                g.add_vertex(v + offset);
            }
            for e in p.edges() {
                g.add_edge(e.lo() + offset, e.hi() + offset).unwrap();
            }
            offset += p.vertices().max().unwrap_or(0);
        }
        g
    }

    #[test]
    fn classifies_components() {
        let c5 = decompose(&generate::cycle(5));
        assert_eq!((c5.q(), c5.r(), c5.s()), (0, 0, 1));

        let k2_p4 = decompose(&disjoint(&[generate::path(2), generate::path(4)]));
        assert_eq!((k2_p4.q(), k2_p4.r(), k2_p4.s()), (1, 1, 0));
        assert_eq!(k2_p4.even_components[0].vertices.len(), 4);

        let g = disjoint(&[generate::cycle(3), generate::path(2)]);
        let (dec, m) = decompose_with_matching(&g).unwrap();
        assert_eq!((dec.q(), dec.r(), dec.s()), (1, 0, 1));
        // k = (n - s) / 2 = (5 - 1) / 2
        assert_eq!(m.edges.len(), 2);
        assert_eq!(dec.non_isolated_count(), 5);
    }

    #[test]
    fn matching_on_p4_is_outer_edges() {
        let m = max_matching_deg2(&generate::path(4)).unwrap();
        assert_eq!(m.edges, vec![Edge::new(1, 2), Edge::new(3, 4)]);
        assert_eq!(m.complement, vec![Edge::new(2, 3)]);
        assert!(m.uncovered.is_empty());
    }

    #[test]
    fn odd_cycle_leaves_smallest_vertex() {
        let m = max_matching_deg2(&generate::cycle(3)).unwrap();
        assert_eq!(m.edges.len(), 1);
        assert_eq!(m.complement.len(), 2);
        assert_eq!(m.uncovered, vec![1]);
        assert!(m.edges.iter().all(|e| !e.contains(1)));
    }

    #[test]
    fn odd_path_leaves_high_endpoint() {
        let g = Graph::from_edges([(5, 2), (2, 9), (9, 1), (1, 4)]).unwrap();
        let m = max_matching_deg2(&g).unwrap();
        // walk starts at endpoint 4 (lower than 5)
        assert_eq!(m.uncovered, vec![5]);
        assert_eq!(m.edges, vec![Edge::new(1, 4), Edge::new(2, 9)]);
    }

    #[test]
    fn p5_plus_c4_matching_size() {
        let g = disjoint(&[generate::path(5), generate::cycle(4)]);
        let (dec, m) = decompose_with_matching(&g).unwrap();
        assert_eq!(dec.s(), 1);
        assert_eq!(m.edges.len(), (9 - 1) / 2);
        assert_eq!(m.edges.len() + m.complement.len(), g.m());
    }

    #[test]
    fn matching_rejects_degree_three() {
        assert!(matches!(
            max_matching_deg2(&generate::star(3)),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn cycle_walk_goes_towards_smaller_neighbor() {
        let g = Graph::from_edges([(1, 5), (5, 3), (3, 4), (4, 2), (2, 1)]).unwrap();
        let dec = decompose(&g);
        assert_eq!(
            dec.odd_components[0].walk,
            Some(Walk::Cycle(vec![1, 2, 4, 3, 5]))
        );
    }

    #[test]
    fn three_plus_vertex_choice() {
        let r = find_3plus_vertex(&generate::complete(4)).unwrap();
        assert_eq!(r.vertex, 1);
        assert_eq!(r.neighbors, [2, 3, 4]);
        assert!(find_3plus_vertex(&generate::cycle(6)).is_none());
        let star = generate::star(5);
        let r = find_3plus_vertex(&star).unwrap();
        assert_eq!(r.vertex, 1);
        assert_eq!(r.neighbors, [2, 3, 4]);
    }
}
