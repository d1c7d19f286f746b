//! The two constructive labeling theorems as algorithms.
//!
//! [`solve`] peels off three edges at a vertex of degree at least three until
//! the maximum degree is two, labels that residual graph with the base case
//! and then re-inserts the removed edge triples in reverse order, each through
//! a three-variable Nullstellensatz extension.

mod base;
mod extend;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{find_3plus_vertex, Edge, Graph, Reduction, VertexId};
use crate::labeling::{Labeling, ListAssignment, Weighting};
use crate::poly::{build_h_reduction, certify_reduction_monomial, CoefficientCertificate, ReductionMode};
use crate::scalar::Scalar;
use crate::search::SearchConfig;
use crate::verify::{verify_quasi_antimagic, VerifyOptions, VerifyReport};

use base::{base_case_oriented, base_case_undirected};
use extend::{extend_oriented, extend_undirected};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Weighted-list quasi-antimagic labeling, `k = floor(4n/3)`.
    #[serde(rename = "weighted-list")]
    WeightedList,
    /// Quasi-oriented-antimagic orientation and labeling, `k = floor(2n/3)`.
    #[serde(rename = "oriented")]
    Oriented,
}

impl Variant {
    /// The `k` the construction guarantees on `n` vertices.
    pub fn bound(self, n: usize) -> u64 {
        let n = n as u64;
        match self {
            Variant::WeightedList => 4 * n / 3,
            Variant::Oriented => 2 * n / 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::WeightedList => "weighted-list",
            Variant::Oriented => "oriented",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "weighted-list" => Some(Variant::WeightedList),
            "oriented" => Some(Variant::Oriented),
            _ => None,
        }
    }

    pub fn reduction_mode(self) -> ReductionMode {
        match self {
            Variant::WeightedList => ReductionMode::Undirected,
            Variant::Oriented => ReductionMode::Oriented,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveRequest<S> {
    pub graph: Graph,
    pub variant: Variant,
    /// Ignored by the oriented variant.
    pub weighting: Weighting<S>,
    /// Weighted-list variant only; defaults to `{1, ..., m + k}` per edge.
    pub lists: Option<ListAssignment<S>>,
    /// Run with a smaller (or larger) `k` than the guaranteed bound.
    pub k_override: Option<u64>,
    pub search: SearchConfig,
}

impl<S: Scalar> SolveRequest<S> {
    pub fn new(graph: Graph, variant: Variant) -> Self {
        SolveRequest {
            graph,
            variant,
            weighting: Weighting::zero(),
            lists: None,
            k_override: None,
            search: SearchConfig::default(),
        }
    }

    pub fn with_weighting(mut self, weighting: Weighting<S>) -> Self {
        self.weighting = weighting;
        self
    }

    pub fn with_lists(mut self, lists: ListAssignment<S>) -> Self {
        self.lists = Some(lists);
        self
    }

    pub fn with_k(mut self, k: u64) -> Self {
        self.k_override = Some(k);
        self
    }

    pub fn with_search(mut self, search: SearchConfig) -> Self {
        self.search = search;
        self
    }

    pub fn k(&self) -> u64 {
        self.k_override
            .unwrap_or_else(|| self.variant.bound(self.graph.n()))
    }
}

/// One step of a solve, in execution order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
pub enum TraceEvent {
    Reduce {
        vertex: VertexId,
        edges: [Edge; 3],
        remaining_edges: usize,
    },
    BaseCase {
        isolated_edges: usize,
        even_components: usize,
        odd_components: usize,
        matching: Vec<Edge>,
        complement: Vec<Edge>,
        uncovered: Vec<VertexId>,
    },
    /// A greedy label choice on the matching complement, with the number of
    /// distinct forbidden values and the bound they must respect.
    GreedyStep {
        edge: Edge,
        label: String,
        forbidden: usize,
        budget: usize,
    },
    CnStage {
        variables: usize,
        set_sizes: Vec<usize>,
        nodes: u64,
    },
    /// Below the bound no monomial may fit; the search then runs on the
    /// full available sets without a certificate.
    Extend {
        vertex: VertexId,
        exponents: Option<[u32; 3]>,
        coefficient: Option<String>,
        set_sizes: Vec<usize>,
        nodes: u64,
        fallback_monomial: bool,
    },
    Flip {
        edge: Edge,
    },
}

#[derive(Clone, Debug)]
pub struct SolveResult<S> {
    pub labeling: Labeling<S>,
    pub variant: Variant,
    pub k: u64,
    pub trace: Vec<TraceEvent>,
    pub report: VerifyReport<S>,
}

/// State shared by the stages of one solve.
pub(crate) struct Context {
    /// Vertex count of the input graph; every bound uses it.
    pub n: usize,
    pub k: u64,
    /// `k` meets the guaranteed bound, so every stage must succeed.
    pub at_bound: bool,
    pub search: SearchConfig,
    pub trace: Vec<TraceEvent>,
}

impl Context {
    fn new(n: usize, k: u64, bound: u64, search: SearchConfig) -> Self {
        Context {
            n,
            k,
            at_bound: k >= bound,
            search,
            trace: Vec::new(),
        }
    }

    #[cfg(test)]
    pub(crate) fn standalone(n: usize, k: u64, variant: Variant) -> Self {
        Context::new(n, k, variant.bound(n), SearchConfig::default())
    }

    /// A stage could not complete: a bug when running at the bound, an
    /// expected outcome below it.
    pub fn failure(&self, what: String) -> Error {
        if self.at_bound {
            Error::Certificate(what)
        } else {
            Error::Unsolved(what)
        }
    }

    /// Exponents licensing a three-edge extension whose variables have
    /// `limits[i]` admissible values. Uses the certified `(a, b, c)` when it
    /// is nonzero and fits, otherwise searches the expansion for another
    /// nonzero monomial that fits.
    pub fn reduction_exponents(
        &mut self,
        mode: ReductionMode,
        limits: [usize; 3],
    ) -> Result<([u32; 3], String, bool)> {
        let n = self.n as u32;
        let cert = cached_certificate(n, mode)?;
        let fits = cert.abc.iter().zip(limits).all(|(&e, l)| (e as usize) < l);
        if cert.nonzero && fits {
            return Ok((cert.abc, cert.coefficient.to_string(), false));
        }
        let h = build_h_reduction(n, mode)?;
        match h.find_admissible_monomial(&limits) {
            Some((e, c)) => Ok(([e[0], e[1], e[2]], c.to_string(), true)),
            None => Err(self.failure(format!(
                "no nonzero monomial of the {mode} reduction polynomial for n={n} fits sets of sizes {limits:?}"
            ))),
        }
    }
}

/// Certificates are pure functions of `(n, mode)`; compute each once per process.
fn cached_certificate(n: u32, mode: ReductionMode) -> Result<CoefficientCertificate> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, ReductionMode), CoefficientCertificate>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().expect("certificate cache").get(&(n, mode)) {
        return Ok(c.clone());
    }
    let cert = certify_reduction_monomial(n, mode)?;
    cache
        .lock()
        .expect("certificate cache")
        .insert((n, mode), cert.clone());
    Ok(cert)
}

/// Removes edge triples at 3+-vertices until the maximum degree is two.
/// Returns the graph before each removal with its reduction, and the
/// residual graph.
fn reduce(g: &Graph, trace: &mut Vec<TraceEvent>) -> (Vec<(Graph, Reduction)>, Graph) {
    let mut levels = Vec::new();
    let mut current = g.clone();
    while let Some(red) = find_3plus_vertex(&current) {
        let next = current.without_edges(&red.edges);
        trace.push(TraceEvent::Reduce {
            vertex: red.vertex,
            edges: red.edges,
            remaining_edges: next.m(),
        });
        levels.push((current, red));
        current = next;
    }
    (levels, current)
}

pub fn solve<S: Scalar>(req: &SolveRequest<S>) -> Result<SolveResult<S>> {
    let g = &req.graph;
    let n = g.n();
    let m = g.m() as u64;
    let k = req.k();
    let mut ctx = Context::new(n, k, req.variant.bound(n), req.search);

    match req.variant {
        Variant::WeightedList => {
            req.weighting.check_against(g)?;
            let lists = match &req.lists {
                Some(l) => l.clone(),
                None => ListAssignment::uniform_range(g, m + k),
            };
            lists.check_against(g, Some((m + k) as usize))?;

            let (levels, residual) = reduce(g, &mut ctx.trace);
            let mut f = base_case_undirected(&residual, &req.weighting, &lists, &mut ctx)?;
            for (level, red) in levels.iter().rev() {
                f = extend_undirected(level, red, &f, &req.weighting, &lists, &mut ctx)?;
            }
            let report = verify_quasi_antimagic(g, &f, &VerifyOptions::weighted_list(&req.weighting, &lists))?;
            finish(f, req.variant, ctx, report)
        }
        Variant::Oriented => {
            let (levels, residual) = reduce(g, &mut ctx.trace);
            let mut f = base_case_oriented(&residual, residual.m() as u64 + k, &mut ctx)?;
            for (level, red) in levels.iter().rev() {
                f = extend_oriented(level, red, &f, level.m() as u64 + k, &mut ctx)?;
            }
            let report = verify_quasi_antimagic(g, &f, &VerifyOptions::quasi_oriented(m + k))?;
            finish(f, req.variant, ctx, report)
        }
    }
}

fn finish<S: Scalar>(
    labeling: Labeling<S>,
    variant: Variant,
    ctx: Context,
    report: VerifyReport<S>,
) -> Result<SolveResult<S>> {
    if !report.ok {
        return Err(ctx.failure(format!(
            "final labeling failed verification: {:?}",
            report.violations
        )));
    }
    Ok(SolveResult {
        labeling,
        variant,
        k: ctx.k,
        trace: ctx.trace,
        report,
    })
}
