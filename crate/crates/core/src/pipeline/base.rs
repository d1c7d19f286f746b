//! Base cases for graphs of maximum degree at most two.
//!
//! Both follow the same two stages. Stage 1 greedily labels the complement
//! E'' of a maximum matching, keeping the sums of the uncovered vertices
//! pairwise distinct. Stage 2 labels the matching edges at once through a
//! Nullstellensatz search whose monomial comes from the Vandermonde power
//! coefficient (always nonzero).

use std::collections::{BTreeMap, BTreeSet};

use super::{Context, TraceEvent};
use crate::error::{Error, Result};
use crate::graph::{decompose_with_matching, Edge, Graph, Matching, VertexId};
use crate::labeling::{Labeling, ListAssignment, Orientation, Weighting};
use crate::scalar::Scalar;
use crate::search::{
    pick_candidate_sets, signed_candidates, solve_constraints, ConstraintKind, ConstraintSystem,
    LinearFactor,
};

fn add_to<S: Scalar>(sums: &mut BTreeMap<VertexId, S>, v: VertexId, delta: &S) {
    let s = sums.get_mut(&v).expect("vertex has a sum");
    *s = s.clone() + delta.clone();
}

fn record_base(ctx: &mut Context, g: &Graph) -> Result<Matching> {
    let (dec, matching) = decompose_with_matching(g)?;
    ctx.trace.push(TraceEvent::BaseCase {
        isolated_edges: dec.q(),
        even_components: dec.r(),
        odd_components: dec.s(),
        matching: matching.edges.clone(),
        complement: matching.complement.clone(),
        uncovered: matching.uncovered.clone(),
    });
    Ok(matching)
}

fn check_budget(forbidden: usize, budget: usize, edge: Edge) -> Result<()> {
    if forbidden > budget {
        return Err(Error::Certificate(format!(
            "greedy step on {edge} forbids {forbidden} values, more than the bound {budget}"
        )));
    }
    Ok(())
}

/// Weighted-list base case.
///
/// Greedy stage: each `e = yz` in E'' takes the smallest list value that is
/// unused, keeps `y` and `z` apart from their other neighbor, and keeps an
/// uncovered endpoint apart from the other uncovered vertices. Matching
/// stage: `x_i` for each matching edge `e_i` must avoid the other new labels,
/// the E'' labels, and every sum collision between matching endpoints and
/// with uncovered vertices. The top-degree part of that product is
/// `prod (x_i - x_j)^5 prod x_i^(2s + |E''|)`, so variable `i` (zero based)
/// needs `2(k-1) + i + 2s + |E''| + 1` candidates.
pub(crate) fn base_case_undirected<S: Scalar>(
    g: &Graph,
    w: &Weighting<S>,
    lists: &ListAssignment<S>,
    ctx: &mut Context,
) -> Result<Labeling<S>> {
    let matching = record_base(ctx, g)?;
    let s = matching.uncovered.len();
    let uncovered: BTreeSet<VertexId> = matching.uncovered.iter().copied().collect();
    let mut sums: BTreeMap<VertexId, S> = g.vertices().map(|v| (v, w.get(v))).collect();
    let mut f = Labeling::new();
    let mut used: BTreeSet<S> = BTreeSet::new();
    let budget = matching.complement.len().saturating_sub(1) + 2 + s.saturating_sub(1);

    for &e in &matching.complement {
        let [y, z] = e.endpoints();
        let mut forbidden = used.clone();
        for (a, b) in [(y, z), (z, y)] {
            for u in g.neighbors(a).filter(|&u| u != b) {
                forbidden.insert(sums[&u].clone() - sums[&a].clone());
            }
            if uncovered.contains(&a) {
                for &vj in uncovered.iter().filter(|&&vj| vj != a) {
                    forbidden.insert(sums[&vj].clone() - sums[&a].clone());
                }
            }
        }
        check_budget(forbidden.len(), budget, e)?;
        let label = lists
            .get(e)
            .into_iter()
            .flatten()
            .find(|l| !forbidden.contains(*l))
            .cloned()
            .ok_or_else(|| ctx.failure(format!("greedy stage found no label for {e}")))?;
        ctx.trace.push(TraceEvent::GreedyStep {
            edge: e,
            label: label.to_string(),
            forbidden: forbidden.len(),
            budget,
        });
        add_to(&mut sums, y, &label);
        add_to(&mut sums, z, &label);
        used.insert(label.clone());
        f.set(e, label);
    }

    let k = matching.edges.len();
    if k == 0 {
        return Ok(f);
    }
    let shift = 2 * s + matching.complement.len();
    let mut candidates = Vec::with_capacity(k);
    let mut required = Vec::with_capacity(k);
    for (i, &e) in matching.edges.iter().enumerate() {
        let need = 2 * (k - 1) + i + shift + 1;
        let empty = BTreeSet::new();
        let list = lists.get(e).unwrap_or(&empty);
        if ctx.at_bound {
            candidates.push(pick_candidate_sets(e, list, need)?);
            required.push(need);
        } else {
            candidates.push(list.iter().cloned().collect());
            required.push(0);
        }
    }

    let cs = undirected_matching_system(&matching, &sums, &f, candidates, &required)?;

    let out = solve_constraints(&cs, ctx.search)?;
    ctx.trace.push(TraceEvent::CnStage {
        variables: k,
        set_sizes: cs.candidates().iter().map(Vec::len).collect(),
        nodes: out.nodes_explored,
    });
    let xs = out
        .assignment
        .ok_or_else(|| ctx.failure("matching stage exhausted its candidate product".into()))?;
    for (e, x) in matching.edges.iter().zip(xs) {
        f.set(*e, x);
    }
    Ok(f)
}

/// Oriented base case with labels from `1..=max_label`.
///
/// Every edge starts oriented from its smaller to its larger endpoint. The
/// greedy stage keeps uncovered vertices apart; the matching stage searches
/// signed values `x_i` in `+-{1..max_label}` so that a negative solution means
/// the matching edge is flipped. The top-degree part of the product is
/// `+-2^k prod (x_i^2 - x_j^2)^3 prod x_i^(1 + 2s + 2|E''|)`, so variable `i`
/// needs `2(k-1) + 2i + 1 + 2s + 2|E''| + 1` candidates.
pub(crate) fn base_case_oriented<S: Scalar>(
    g: &Graph,
    max_label: u64,
    ctx: &mut Context,
) -> Result<Labeling<S>> {
    let matching = record_base(ctx, g)?;
    let s = matching.uncovered.len();
    let uncovered: BTreeSet<VertexId> = matching.uncovered.iter().copied().collect();
    let mut sums: BTreeMap<VertexId, S> = g.vertices().map(|v| (v, S::zero())).collect();
    let mut orientation = Orientation::ascending(g);
    let mut f = Labeling::new();
    let mut used: BTreeSet<S> = BTreeSet::new();
    let budget = matching.complement.len().saturating_sub(1) + s.saturating_sub(1);

    for &e in &matching.complement {
        let (tail, head) = (e.lo(), e.hi());
        let mut forbidden = used.clone();
        for (a, sign) in [(tail, -S::one()), (head, S::one())] {
            if uncovered.contains(&a) {
                for &vj in uncovered.iter().filter(|&&vj| vj != a) {
                    forbidden.insert(sign.clone() * (sums[&vj].clone() - sums[&a].clone()));
                }
            }
        }
        check_budget(forbidden.len(), budget, e)?;
        let label = (1..=max_label as i64)
            .map(S::from_int)
            .find(|l| !forbidden.contains(l))
            .ok_or_else(|| ctx.failure(format!("greedy stage found no label for {e}")))?;
        ctx.trace.push(TraceEvent::GreedyStep {
            edge: e,
            label: label.to_string(),
            forbidden: forbidden.len(),
            budget,
        });
        add_to(&mut sums, head, &label);
        add_to(&mut sums, tail, &-label.clone());
        used.insert(label.clone());
        f.set(e, label);
    }

    let k = matching.edges.len();
    if k > 0 {
        let shift = 1 + 2 * s + 2 * matching.complement.len();
        let pool: Vec<S> = signed_candidates(max_label, &BTreeSet::new());
        let mut candidates = Vec::with_capacity(k);
        let mut required = Vec::with_capacity(k);
        for (i, &e) in matching.edges.iter().enumerate() {
            let need = 2 * (k - 1) + 2 * i + shift + 1;
            if ctx.at_bound {
                if pool.len() < need {
                    return Err(Error::Infeasible {
                        edge: e,
                        available: pool.len(),
                        required: need,
                    });
                }
                candidates.push(pool[..need].to_vec());
                required.push(need);
            } else {
                candidates.push(pool.clone());
                required.push(0);
            }
        }

        let cs = oriented_matching_system(&matching, &sums, &f, candidates, &required)?;

        let out = solve_constraints(&cs, ctx.search)?;
        ctx.trace.push(TraceEvent::CnStage {
            variables: k,
            set_sizes: cs.candidates().iter().map(Vec::len).collect(),
            nodes: out.nodes_explored,
        });
        let xs = out
            .assignment
            .ok_or_else(|| ctx.failure("matching stage exhausted its candidate product".into()))?;
        for (e, x) in matching.edges.iter().zip(xs) {
            if x.is_negative() {
                orientation.flip(*e);
                ctx.trace.push(TraceEvent::Flip { edge: *e });
            }
            f.set(*e, x.abs());
        }
    }
    Ok(f.with_orientation(orientation))
}

/// Stage 2 forms for the undirected base case. `sums` include the stage 1
/// labels.
fn undirected_matching_system<S: Scalar>(
    matching: &Matching,
    sums: &BTreeMap<VertexId, S>,
    f: &Labeling<S>,
    candidates: Vec<Vec<S>>,
    required: &[usize],
) -> Result<ConstraintSystem<S>> {
    let k = matching.edges.len();
    let mut cs = ConstraintSystem::new(candidates, required)?;
    let sum = |v: VertexId| sums[&v].clone();
    for i in 0..k {
        for j in i + 1..k {
            cs.push(LinearFactor::difference(ConstraintKind::PairwiseDistinctLabel, i, j, S::zero()))?;
            for u in matching.edges[i].endpoints() {
                for u2 in matching.edges[j].endpoints() {
                    cs.push(LinearFactor::difference(ConstraintKind::SumCollision, i, j, sum(u) - sum(u2)))?;
                }
            }
        }
        for e in &matching.complement {
            let fe = f.get(*e).expect("labeled in stage 1").clone();
            cs.push(LinearFactor::single(ConstraintKind::ForbiddenValue, i, S::one(), -fe))?;
        }
        for u in matching.edges[i].endpoints() {
            for &vj in &matching.uncovered {
                cs.push(LinearFactor::single(ConstraintKind::SumCollision, i, S::one(), sum(u) - sum(vj)))?;
            }
        }
    }
    Ok(cs)
}

/// Stage 2 forms for the oriented base case over signed values; the tail of
/// each matching edge is its smaller endpoint.
fn oriented_matching_system<S: Scalar>(
    matching: &Matching,
    sums: &BTreeMap<VertexId, S>,
    f: &Labeling<S>,
    candidates: Vec<Vec<S>>,
    required: &[usize],
) -> Result<ConstraintSystem<S>> {
    let k = matching.edges.len();
    let mut cs = ConstraintSystem::new(candidates, required)?;
    let sum = |v: VertexId| sums[&v].clone();
    let one = S::one;
    let two = || S::from_int(2);
    let tails: Vec<VertexId> = matching.edges.iter().map(|e| e.lo()).collect();
    let heads: Vec<VertexId> = matching.edges.iter().map(|e| e.hi()).collect();
    for i in 0..k {
        let (p, q) = (tails[i], heads[i]);
        cs.push(LinearFactor::single(ConstraintKind::SumCollision, i, two(), sum(q) - sum(p)))?;
        for j in i + 1..k {
            let (pj, qj) = (tails[j], heads[j]);
            cs.push(LinearFactor::difference(ConstraintKind::PairwiseDistinctLabel, i, j, S::zero()))?;
            cs.push(LinearFactor::sum(ConstraintKind::SignedCollision, i, j, S::zero()))?;
            // head_i vs head_j, head_i vs tail_j, tail_i vs tail_j, tail_i vs head_j
            cs.push(LinearFactor::difference(ConstraintKind::SumCollision, i, j, sum(q) - sum(qj)))?;
            cs.push(LinearFactor::sum(ConstraintKind::SumCollision, i, j, sum(q) - sum(pj)))?;
            cs.push(LinearFactor::difference(ConstraintKind::SumCollision, j, i, sum(p) - sum(pj)))?;
            cs.push(LinearFactor::new(
                ConstraintKind::SumCollision,
                vec![(i, -one()), (j, -one())],
                sum(p) - sum(qj),
            ))?;
        }
        for &vj in &matching.uncovered {
            cs.push(LinearFactor::single(ConstraintKind::SumCollision, i, one(), sum(q) - sum(vj)))?;
            cs.push(LinearFactor::single(ConstraintKind::SumCollision, i, -one(), sum(p) - sum(vj)))?;
        }
        for e in &matching.complement {
            let fe = f.get(*e).expect("labeled in stage 1").clone();
            cs.push(LinearFactor::single(ConstraintKind::ForbiddenValue, i, one(), -fe.clone()))?;
            cs.push(LinearFactor::single(ConstraintKind::ForbiddenValue, i, one(), fe))?;
        }
    }
    Ok(cs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;
    use crate::labeling::oriented_vertex_sums;
    use crate::pipeline::Variant;
    use crate::verify::{verify_quasi_antimagic, VerifyOptions};
    use crate::Rational;
    use crate::search::SearchConfig;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn run_undirected(g: &Graph, w: &Weighting<Rational>) -> (Labeling<Rational>, Context) {
        let k = Variant::WeightedList.bound(g.n());
        let lists = ListAssignment::uniform_range(g, g.m() as u64 + k);
        let mut ctx = Context::standalone(g.n(), k, Variant::WeightedList);
        let f = base_case_undirected(g, w, &lists, &mut ctx).unwrap();
        let report = verify_quasi_antimagic(g, &f, &VerifyOptions::weighted_list(w, &lists)).unwrap();
        assert!(report.ok, "{report:?}");
        (f, ctx)
    }

    fn run_oriented(g: &Graph) -> Labeling<Rational> {
        let k = Variant::Oriented.bound(g.n());
        let max = g.m() as u64 + k;
        let mut ctx = Context::standalone(g.n(), k, Variant::Oriented);
        let f = base_case_oriented(g, max, &mut ctx).unwrap();
        let report = verify_quasi_antimagic(g, &f, &VerifyOptions::quasi_oriented(max)).unwrap();
        assert!(report.ok, "{report:?}");
        f
    }

    #[test]
    fn c3_zero_weights() {
        let (f, ctx) = run_undirected(&generate::cycle(3), &Weighting::zero());
        assert_eq!(f.len(), 3);
        let greedy = ctx.trace.iter().filter(|e| matches!(e, TraceEvent::GreedyStep { .. })).count();
        assert_eq!(greedy, 2);
    }

    #[test]
    fn two_k2_only_matching_stage() {
        let g = Graph::from_edges([(1, 2), (3, 4)]).unwrap();
        let (_, ctx) = run_undirected(&g, &Weighting::zero());
        assert!(!ctx.trace.iter().any(|e| matches!(e, TraceEvent::GreedyStep { .. })));
        assert!(ctx.trace.iter().any(|e| matches!(e, TraceEvent::CnStage { variables: 2, .. })));
    }

    #[test]
    fn p5_c4_equal_weights() {
        let g = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 5), (6, 7), (7, 8), (8, 9), (9, 6)]).unwrap();
        let mut w = Weighting::zero();
        for v in g.vertices() {
            w.set(v, Rational::from_int(3));
        }
        run_undirected(&g, &w);
    }

    #[test]
    fn isolated_vertices_are_ignored() {
        let g = generate::cycle(5).with_vertices([10, 11]);
        run_undirected(&g, &Weighting::zero());
        run_oriented(&g);
    }

    #[test]
    fn oriented_k2_c5_c3c4() {
        let f = run_oriented(&generate::path(2));
        assert_eq!(f.get(Edge::new(1, 2)), Some(&Rational::from_int(1)));

        let c5 = generate::cycle(5);
        let f = run_oriented(&c5);
        assert!(f.entries().all(|(_, l)| *l <= Rational::from_int(8)));

        let g = Graph::from_edges([(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 7), (7, 4)]).unwrap();
        let f = run_oriented(&g);
        let sums = oriented_vertex_sums(&g, &f).unwrap();
        let distinct: BTreeSet<_> = sums.values().collect();
        assert_eq!(distinct.len(), 7);
    }

    /// The certified monomial of each stage 2 product is nonzero, and the
    /// predicates agree with the product on sample points.
    #[test]
    fn matching_system_certificate() {
        let g = Graph::from_edges([(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 7)]).unwrap();
        let matching = crate::graph::max_matching_deg2(&g).unwrap();
        let (k, s, e2) = (matching.edges.len(), matching.uncovered.len(), matching.complement.len());
        assert_eq!((k, s, e2), (3, 1, 3));
        let sums: BTreeMap<VertexId, BigInt> = g.vertices().map(|v| (v, BigInt::from_int(v % 3))).collect();
        let mut f = Labeling::new();
        for (i, e) in matching.complement.iter().enumerate() {
            f.set(*e, BigInt::from_int(10 + i as i64));
        }
        let sets = vec![(-30..=30).map(BigInt::from_int).collect::<Vec<_>>(); k];

        let cs = undirected_matching_system(&matching, &sums, &f, sets.clone(), &[]).unwrap();
        let exps: Vec<u32> = (0..k).map(|i| (2 * (k - 1) + i + 2 * s + e2) as u32).collect();
        let poly = cs.to_polynomial();
        assert_eq!(poly.degree(), Some(exps.iter().sum::<u32>()));
        assert!(!poly.coefficient_of(&exps).is_zero());
        check_agreement(&cs);

        let cs = oriented_matching_system(&matching, &sums, &f, sets, &[]).unwrap();
        let exps: Vec<u32> = (0..k).map(|i| (2 * (k - 1) + 2 * i + 1 + 2 * s + 2 * e2) as u32).collect();
        let poly = cs.to_polynomial();
        assert_eq!(poly.degree(), Some(exps.iter().sum::<u32>()));
        assert!(!poly.coefficient_of(&exps).is_zero());
        check_agreement(&cs);
    }

    fn check_agreement(cs: &ConstraintSystem<BigInt>) {
        let poly = cs.to_polynomial();
        let found = solve_constraints(cs, SearchConfig::default()).unwrap().assignment.unwrap();
        assert!(!poly.eval(&found).is_zero());
        for a in -3..=3 {
            for b in [-2, 1, 2, 4] {
                let x = [a, b, 3].map(BigInt::from_int);
                assert_eq!(cs.satisfied_by(&x), !poly.eval(&x).is_zero());
            }
        }
    }

    #[test]
    fn rejects_degree_three() {
        let g = generate::star(3);
        let mut ctx = Context::standalone(4, 5, Variant::WeightedList);
        let lists = ListAssignment::<Rational>::uniform_range(&g, 8);
        assert!(matches!(
            base_case_undirected(&g, &Weighting::zero(), &lists, &mut ctx),
            Err(Error::Contract(_))
        ));
    }
}
