//! Finding a point of a candidate-set product at which a product of linear
//! forms does not vanish.
//!
//! Every polynomial the pipeline hands to the Nullstellensatz is a product of
//! linear forms in the unknown labels, so a constraint system keeps those
//! forms as separate predicates. A partial assignment can then be rejected as
//! soon as every variable of some form is fixed. [`ConstraintSystem::to_polynomial`]
//! expands the product back, which lets tests compare both views.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

pub type VarId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstraintKind {
    /// Two new labels coincide.
    PairwiseDistinctLabel,
    /// Two vertex sums coincide.
    SumCollision,
    /// A new label equals an already used one (up to sign when oriented).
    ForbiddenValue,
    /// Two signed labels have the same absolute value.
    SignedCollision,
}

/// The form `constant + sum coefficient * x_var`, required to be nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactor<S> {
    pub terms: Vec<(VarId, S)>,
    pub constant: S,
    pub kind: ConstraintKind,
}

impl<S: Scalar> LinearFactor<S> {
    pub fn new(kind: ConstraintKind, terms: Vec<(VarId, S)>, constant: S) -> Self {
        LinearFactor {
            terms,
            constant,
            kind,
        }
    }

    /// `x_a - x_b + constant`.
    pub fn difference(kind: ConstraintKind, a: VarId, b: VarId, constant: S) -> Self {
        Self::new(kind, vec![(a, S::one()), (b, -S::one())], constant)
    }

    /// `x_a + x_b + constant`.
    pub fn sum(kind: ConstraintKind, a: VarId, b: VarId, constant: S) -> Self {
        Self::new(kind, vec![(a, S::one()), (b, S::one())], constant)
    }

    /// `coefficient * x_a + constant`.
    pub fn single(kind: ConstraintKind, a: VarId, coefficient: S, constant: S) -> Self {
        Self::new(kind, vec![(a, coefficient)], constant)
    }

    pub fn max_var(&self) -> Option<VarId> {
        self.terms.iter().map(|&(v, _)| v).max()
    }

    pub fn eval(&self, assignment: &[S]) -> S {
        self.terms
            .iter()
            .fold(self.constant.clone(), |acc, (v, c)| acc + c.clone() * assignment[*v].clone())
    }
}

/// Candidate sets (in search order) plus the forms that must not vanish.
#[derive(Clone, Debug)]
pub struct ConstraintSystem<S> {
    candidates: Vec<Vec<S>>,
    factors: Vec<LinearFactor<S>>,
    by_depth: Vec<Vec<usize>>,
    constant_violation: bool,
}

impl<S: Scalar> ConstraintSystem<S> {
    /// `required[i]` is the Nullstellensatz set size `t_i + 1` the caller
    /// relies on; a shorter candidate set is a contract error.
    pub fn new(candidates: Vec<Vec<S>>, required: &[usize]) -> Result<Self> {
        for (i, set) in candidates.iter().enumerate() {
            let unique: BTreeSet<&S> = set.iter().collect();
            if unique.len() != set.len() {
                return Err(Error::Contract(format!("candidate set {i} has repeated values")));
            }
            if let Some(&need) = required.get(i) {
                if set.len() < need {
                    return Err(Error::Contract(format!(
                        "candidate set {i} has {} values, {need} required",
                        set.len()
                    )));
                }
            }
        }
        let by_depth = vec![Vec::new(); candidates.len()];
        Ok(ConstraintSystem {
            candidates,
            factors: Vec::new(),
            by_depth,
            constant_violation: false,
        })
    }

    pub fn variables(&self) -> usize {
        self.candidates.len()
    }

    pub fn candidates(&self) -> &[Vec<S>] {
        &self.candidates
    }

    pub fn factors(&self) -> &[LinearFactor<S>] {
        &self.factors
    }

    pub fn push(&mut self, mut factor: LinearFactor<S>) -> Result<()> {
        factor.terms.retain(|(_, c)| !c.is_zero());
        if let Some(&(v, _)) = factor.terms.iter().find(|(v, _)| *v >= self.variables()) {
            return Err(Error::Contract(format!("constraint references undeclared variable {v}")));
        }
        match factor.max_var() {
            Some(depth) => self.by_depth[depth].push(self.factors.len()),
            None => self.constant_violation |= factor.constant.is_zero(),
        }
        self.factors.push(factor);
        Ok(())
    }

    /// Independent check of a complete assignment.
    pub fn satisfied_by(&self, assignment: &[S]) -> bool {
        assignment.len() == self.variables()
            && self
                .factors
                .iter()
                .all(|f| !f.eval(assignment).is_zero())
    }

    /// The product of all forms as a polynomial.
    pub fn to_polynomial(&self) -> Polynomial<S> {
        let k = self.variables();
        let forms: Vec<Polynomial<S>> = self
            .factors
            .iter()
            .map(|f| Polynomial::linear(k, &f.terms, f.constant.clone()))
            .collect();
        Polynomial::product(k, &forms)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Node budget for the backtracking phase.
    pub budget: u64,
    /// Whether to keep enumerating the full product once the budget is spent.
    pub exhaustive_fallback: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: 10_000_000,
            exhaustive_fallback: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome<S> {
    pub assignment: Option<Vec<S>>,
    pub nodes_explored: u64,
    /// The whole product was enumerated without a solution.
    pub exhausted: bool,
}

/// Depth-first search in candidate order, checking each form as soon as its
/// last variable is assigned. Deterministic; the first solution wins.
pub fn solve_constraints<S: Scalar>(
    cs: &ConstraintSystem<S>,
    config: SearchConfig,
) -> Result<SearchOutcome<S>> {
    let k = cs.variables();
    if cs.constant_violation || cs.candidates.iter().any(Vec::is_empty) {
        return Ok(SearchOutcome {
            assignment: None,
            nodes_explored: 0,
            exhausted: true,
        });
    }
    if k == 0 {
        return Ok(SearchOutcome {
            assignment: Some(Vec::new()),
            nodes_explored: 0,
            exhausted: false,
        });
    }

    let mut assignment: Vec<S> = cs.candidates.iter().map(|c| c[0].clone()).collect();
    let mut cursor = vec![0usize; k];
    let mut depth = 0usize;
    let mut nodes = 0u64;

    loop {
        if cursor[depth] == cs.candidates[depth].len() {
            if depth == 0 {
                return Ok(SearchOutcome {
                    assignment: None,
                    nodes_explored: nodes,
                    exhausted: true,
                });
            }
            cursor[depth] = 0;
            depth -= 1;
            cursor[depth] += 1;
            continue;
        }
        nodes += 1;
        if nodes > config.budget && !config.exhaustive_fallback {
            return Err(Error::BudgetExceeded {
                budget: config.budget,
            });
        }
        assignment[depth] = cs.candidates[depth][cursor[depth]].clone();
        let ok = cs.by_depth[depth]
            .iter()
            .all(|&fi| !cs.factors[fi].eval(&assignment).is_zero());
        if !ok {
            cursor[depth] += 1;
        } else if depth + 1 == k {
            return Ok(SearchOutcome {
                assignment: Some(assignment),
                nodes_explored: nodes,
                exhausted: false,
            });
        } else {
            depth += 1;
        }
    }
}

/// The `required_size` smallest values of `list`.
pub fn pick_candidate_sets<S: Scalar>(
    edge: Edge,
    list: &BTreeSet<S>,
    required_size: usize,
) -> Result<Vec<S>> {
    if list.len() < required_size {
        return Err(Error::Infeasible {
            edge,
            available: list.len(),
            required: required_size,
        });
    }
    Ok(list.iter().take(required_size).cloned().collect())
}

/// `1, -1, 2, -2, ...` up to `max`, skipping magnitudes in `excluded`.
pub fn signed_candidates<S: Scalar>(max: u64, excluded: &BTreeSet<S>) -> Vec<S> {
    (1..=max as i64)
        .map(S::from_int)
        .filter(|v| !excluded.contains(v))
        .flat_map(|v| [v.clone(), -v])
        .collect()
}
