//! Standard graph families and an isomorph-free catalog of small graphs.
//! Generated vertex ids are `1..=n`.

use rand::Rng;

use super::{Graph, VertexId};

pub fn empty(n: usize) -> Graph {
    Graph::new().with_vertices(1..=n as VertexId)
}

pub fn path(n: usize) -> Graph {
    let mut g = empty(n);
    for v in 1..n as VertexId {
        g.add_edge(v, v + 1).expect("fresh edge");
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    let mut g = path(n);
    g.add_edge(n as VertexId, 1).expect("fresh edge");
    g
}

pub fn complete(n: usize) -> Graph {
    let mut g = empty(n);
    for u in 1..=n as VertexId {
        for v in u + 1..=n as VertexId {
            g.add_edge(u, v).expect("fresh edge");
        }
    }
    g
}

/// Wheel on `n` vertices: hub `1` joined to a cycle on `2..=n`.
pub fn wheel(n: usize) -> Graph {
    assert!(n >= 4, "wheels need at least four vertices");
    let mut g = empty(n);
    for v in 2..=n as VertexId {
        g.add_edge(1, v).expect("fresh edge");
        let next = if v == n as VertexId { 2 } else { v + 1 };
        g.add_edge(v, next).expect("fresh edge");
    }
    g
}

/// Star with center `1` and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    let mut g = empty(leaves + 1);
    for v in 2..=(leaves + 1) as VertexId {
        g.add_edge(1, v).expect("fresh edge");
    }
    g
}

/// Random graph: each pair is tried with probability `p` in random order and
/// kept only if both endpoints are still below `max_degree`.
pub fn random_capped<R: Rng + ?Sized>(n: usize, p: f64, max_degree: usize, rng: &mut R) -> Graph {
    let mut g = empty(n);
    let mut pairs: Vec<(VertexId, VertexId)> = (1..=n as VertexId)
        .flat_map(|u| (u + 1..=n as VertexId).map(move |v| (u, v)))
        .collect();
    // Fisher-Yates so that the degree cap does not favor low ids.
    for i in (1..pairs.len()).rev() {
        let j = rng.gen_range(0..=i);
        pairs.swap(i, j);
    }
    for (u, v) in pairs {
        if rng.gen_bool(p) && g.degree(u) < max_degree && g.degree(v) < max_degree {
            g.add_edge(u, v).expect("fresh edge");
        }
    }
    g
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn adjacency_from_mask(n: usize, pairs: &[(usize, usize)], mask: u32) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for (bit, &(u, v)) in pairs.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    adj
}

/// Smallest edge mask over relabelings that list vertices by ascending
/// degree; permutations only act inside blocks of equal degree.
fn canonical_mask(n: usize, pairs: &[(usize, usize)], mask: u32) -> u32 {
    let adj = adjacency_from_mask(n, pairs, mask);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| adj[v].count_ones());
    let degrees: Vec<u32> = order.iter().map(|&v| adj[v].count_ones()).collect();

    let mut best = u32::MAX;
    let mut perm = order.clone();
    permute_blocks(&mut perm, &degrees, 0, &mut |p| {
        // p[new_position] = old_vertex
        let mut m = 0u32;
        for (bit, &(u, v)) in pairs.iter().enumerate() {
            if adj[p[u]] >> p[v] & 1 == 1 {
                m |= 1 << bit;
            }
        }
        best = best.min(m);
    });
    best
}

fn permute_blocks(perm: &mut [usize], degrees: &[u32], start: usize, visit: &mut dyn FnMut(&[usize])) {
    if start == perm.len() {
        visit(perm);
        return;
    }
    let mut end = start;
    while end < perm.len() && degrees[end] == degrees[start] {
        end += 1;
    }
    permute_range(perm, degrees, start, end, visit);
}

fn permute_range(
    perm: &mut [usize],
    degrees: &[u32],
    i: usize,
    end: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    if i == end {
        permute_blocks(perm, degrees, end, visit);
        return;
    }
    for j in i..end {
        perm.swap(i, j);
        permute_range(perm, degrees, i + 1, end, visit);
        perm.swap(i, j);
    }
}

/// All graphs on exactly `n` vertices up to isomorphism (`n <= 7`).
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "catalog enumeration is limited to seven vertices");
    let pairs = pair_index(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0..(1u32 << pairs.len()) {
        // canonical forms list vertices by ascending degree, so other masks
        // only repeat classes already reached
        let adj = adjacency_from_mask(n, &pairs, mask);
        if adj.windows(2).any(|w| w[0].count_ones() > w[1].count_ones()) {
            continue;
        }
        let canon = canonical_mask(n, &pairs, mask);
        if seen.insert(canon) {
            let mut g = empty(n);
            for (bit, &(u, v)) in pairs.iter().enumerate() {
                if canon >> bit & 1 == 1 {
                    g.add_edge(u as VertexId + 1, v as VertexId + 1).expect("fresh edge");
                }
            }
            out.push(g);
        }
    }
    out
}

/// Connected graphs on exactly `n` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn family_sizes() {
        assert_eq!(path(5).m(), 4);
        assert_eq!(cycle(5).m(), 5);
        assert_eq!(complete(5).m(), 10);
        assert_eq!(wheel(6).m(), 10);
        assert_eq!(wheel(4), complete(4));
        assert_eq!(star(5).degree(1), 5);
        assert_eq!(empty(3).m(), 0);
    }

    #[test]
    fn catalog_counts_match_known_sequence() {
        // graphs and connected graphs on n unlabeled vertices
        let all: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        let conn: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn seven_vertex_catalog() {
        assert_eq!(all_graphs(7).len(), 1044);
    }

    #[test]
    fn random_respects_cap() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = random_capped(10, 0.6, 3, &mut rng);
            assert!(g.max_degree() <= 3);
            assert_eq!(g.n(), 10);
        }
    }
}
