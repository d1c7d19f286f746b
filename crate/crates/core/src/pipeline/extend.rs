//! Re-inserting a removed edge triple `v u_1, v u_2, v u_3`.
//!
//! The three new labels are the variables of a polynomial with one linear
//! factor per sum collision the new labels could create, across all `n`
//! vertices. Its degree is `4n - 7` (undirected) or `4n - 4` (oriented), and
//! the certified monomial sizes the candidate sets.

use std::collections::{BTreeMap, BTreeSet};

use super::{Context, TraceEvent};
use crate::error::Result;
use crate::graph::{Edge, Graph, Reduction, VertexId};
use crate::labeling::{oriented_vertex_sums, vertex_sums, Labeling, ListAssignment, Orientation, Weighting};
use crate::poly::ReductionMode;
use crate::scalar::Scalar;
use crate::search::{signed_candidates, solve_constraints, ConstraintKind, ConstraintSystem, LinearFactor};

/// Exponents, coefficient, and whether a fallback monomial was used.
type Licence = ([u32; 3], String, bool);

struct SizedSets<S> {
    sets: Vec<Vec<S>>,
    required: Vec<usize>,
    licence: Option<Licence>,
}

/// Candidate sets for the three variables, trimmed to the certified monomial
/// when running at the bound.
fn size_sets<S: Scalar>(
    mode: ReductionMode,
    available: [Vec<S>; 3],
    ctx: &mut Context,
) -> Result<SizedSets<S>> {
    let limits = [available[0].len(), available[1].len(), available[2].len()];
    let cert = match ctx.reduction_exponents(mode, limits) {
        Ok(c) => Some(c),
        Err(e) if ctx.at_bound => return Err(e),
        Err(_) => None,
    };
    match (&cert, ctx.at_bound) {
        (Some((exps, _, _)), true) => {
            let sizes: Vec<usize> = exps.iter().map(|&e| e as usize + 1).collect();
            let sets = available
                .into_iter()
                .zip(&sizes)
                .map(|(set, &n)| set[..n].to_vec())
                .collect();
            Ok(SizedSets {
                sets,
                required: sizes,
                licence: cert,
            })
        }
        _ => Ok(SizedSets {
            sets: available.into_iter().collect(),
            required: vec![0; 3],
            licence: cert,
        }),
    }
}

fn run<S: Scalar>(
    red: &Reduction,
    cs: &ConstraintSystem<S>,
    cert: Option<Licence>,
    ctx: &mut Context,
) -> Result<Vec<S>> {
    let out = solve_constraints(cs, ctx.search)?;
    ctx.trace.push(TraceEvent::Extend {
        vertex: red.vertex,
        exponents: cert.as_ref().map(|c| c.0),
        coefficient: cert.as_ref().map(|c| c.1.clone()),
        set_sizes: cs.candidates().iter().map(Vec::len).collect(),
        nodes: out.nodes_explored,
        fallback_monomial: cert.as_ref().is_some_and(|c| c.2),
    });
    out.assignment.ok_or_else(|| {
        ctx.failure(format!(
            "extension at vertex {} exhausted its candidate product",
            red.vertex
        ))
    })
}

fn others(level: &Graph, red: &Reduction) -> Vec<VertexId> {
    level
        .vertices()
        .filter(|&w| w != red.vertex && !red.neighbors.contains(&w))
        .collect()
}

/// Undirected forms: new labels distinct, and every sum the new labels touch
/// kept apart from every other vertex. `sums` are taken without the triple.
fn undirected_system<S: Scalar>(
    level: &Graph,
    red: &Reduction,
    sums: &BTreeMap<VertexId, S>,
    sets: Vec<Vec<S>>,
    required: &[usize],
) -> Result<ConstraintSystem<S>> {
    let mut cs = ConstraintSystem::new(sets, required)?;
    let s = |v: VertexId| sums[&v].clone();
    let v = red.vertex;
    let u = red.neighbors;
    let one = S::one;
    let all = || vec![(0, one()), (1, one()), (2, one())];
    for i in 0..3 {
        for j in i + 1..3 {
            cs.push(LinearFactor::difference(ConstraintKind::PairwiseDistinctLabel, i, j, S::zero()))?;
            cs.push(LinearFactor::difference(ConstraintKind::SumCollision, i, j, s(u[i]) - s(u[j])))?;
        }
    }
    for w in others(level, red) {
        cs.push(LinearFactor::new(ConstraintKind::SumCollision, all(), s(v) - s(w)))?;
        for (i, &ui) in u.iter().enumerate() {
            cs.push(LinearFactor::single(ConstraintKind::SumCollision, i, one(), s(ui) - s(w)))?;
        }
    }
    for (i, &ui) in u.iter().enumerate() {
        let terms = (0..3).filter(|&j| j != i).map(|j| (j, one())).collect();
        cs.push(LinearFactor::new(ConstraintKind::SumCollision, terms, s(v) - s(ui)))?;
    }
    Ok(cs)
}

/// Oriented forms over signed values: `x_i > 0` adds `x_i` at `v` and
/// subtracts it at `u_i`.
fn oriented_system<S: Scalar>(
    level: &Graph,
    red: &Reduction,
    sums: &BTreeMap<VertexId, S>,
    sets: Vec<Vec<S>>,
    required: &[usize],
) -> Result<ConstraintSystem<S>> {
    let mut cs = ConstraintSystem::new(sets, required)?;
    let s = |v: VertexId| sums[&v].clone();
    let v = red.vertex;
    let u = red.neighbors;
    let one = S::one;
    let all = || vec![(0, one()), (1, one()), (2, one())];
    for i in 0..3 {
        for j in i + 1..3 {
            cs.push(LinearFactor::difference(ConstraintKind::PairwiseDistinctLabel, i, j, S::zero()))?;
            cs.push(LinearFactor::sum(ConstraintKind::PairwiseDistinctLabel, i, j, S::zero()))?;
            cs.push(LinearFactor::difference(ConstraintKind::SumCollision, j, i, s(u[i]) - s(u[j])))?;
        }
    }
    for w in others(level, red) {
        cs.push(LinearFactor::new(ConstraintKind::SumCollision, all(), s(v) - s(w)))?;
        for (i, &ui) in u.iter().enumerate() {
            cs.push(LinearFactor::single(ConstraintKind::SumCollision, i, -one(), s(ui) - s(w)))?;
        }
    }
    for i in 0..3 {
        let mut terms = all();
        terms[i].1 = S::from_int(2);
        cs.push(LinearFactor::new(ConstraintKind::SumCollision, terms, s(v) - s(u[i])))?;
    }
    Ok(cs)
}

/// Extends `f` (a labeling of `level` minus the triple) to all of `level`.
pub(crate) fn extend_undirected<S: Scalar>(
    level: &Graph,
    red: &Reduction,
    f: &Labeling<S>,
    w: &Weighting<S>,
    lists: &ListAssignment<S>,
    ctx: &mut Context,
) -> Result<Labeling<S>> {
    let reduced = level.without_edges(&red.edges);
    let sums = vertex_sums(&reduced, f, w)?;
    let used: BTreeSet<&S> = f.entries().map(|(_, l)| l).collect();
    let available = red.edges.map(|e| {
        lists
            .get(e)
            .into_iter()
            .flatten()
            .filter(|l| !used.contains(l))
            .cloned()
            .collect::<Vec<S>>()
    });
    let sized = size_sets(ReductionMode::Undirected, available, ctx)?;
    let cs = undirected_system(level, red, &sums, sized.sets, &sized.required)?;

    let xs = run(red, &cs, sized.licence, ctx)?;
    let mut out = f.clone();
    for (e, x) in red.edges.iter().zip(xs) {
        out.set(*e, x);
    }
    Ok(out)
}

/// Oriented extension with labels from `1..=max_label`. A positive value
/// orients `u_i -> v`, a negative one `v -> u_i`.
pub(crate) fn extend_oriented<S: Scalar>(
    level: &Graph,
    red: &Reduction,
    f: &Labeling<S>,
    max_label: u64,
    ctx: &mut Context,
) -> Result<Labeling<S>> {
    let reduced = level.without_edges(&red.edges);
    let sums = oriented_vertex_sums(&reduced, f)?;
    let used: BTreeSet<S> = f.entries().map(|(_, l)| l.clone()).collect();
    let pool: Vec<S> = signed_candidates(max_label, &used);
    let available = [pool.clone(), pool.clone(), pool];
    let sized = size_sets(ReductionMode::Oriented, available, ctx)?;
    let cs = oriented_system(level, red, &sums, sized.sets, &sized.required)?;

    let xs = run(red, &cs, sized.licence, ctx)?;
    let mut orientation = f.orientation().cloned().unwrap_or_else(|| Orientation::ascending(&reduced));
    let mut out: BTreeMap<Edge, S> = f.entries().map(|(e, l)| (e, l.clone())).collect();
    let v = red.vertex;
    for ((e, &ui), x) in red.edges.iter().zip(&red.neighbors).zip(xs) {
        if x.is_positive() {
            orientation.set(ui, v)?;
        } else {
            orientation.set(v, ui)?;
        }
        out.insert(*e, x.abs());
    }
    Ok(Labeling::from_map(out).with_orientation(orientation))
}
