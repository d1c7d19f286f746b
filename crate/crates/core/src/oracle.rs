//! Brute-force ground truth for small instances.
//!
//! Labels are assigned edge by edge over every injective choice. A branch is
//! cut only when a vertex whose edges are all labeled collides with another
//! such vertex; every complete assignment is then judged by
//! [`verify_quasi_antimagic`], so the oracle is exactly as strict as the
//! verifier.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::labeling::{Labeling, ListAssignment, Orientation, Weighting};
use crate::sample::{adversarial_lists, rng};
use crate::scalar::Scalar;
use crate::verify::{verify_quasi_antimagic, Exemption, LabelDomain, SumMode, VerifyOptions};
use crate::Rational;

pub const DEFAULT_CAP: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleVariant {
    /// Every pair of vertex sums differs.
    Antimagic,
    /// Undirected quasi variant: isolated vertices and `K2` pairs exempt.
    QuasiAntimagic,
    /// Oriented sums, isolated vertices exempt.
    QuasiOriented,
}

impl OracleVariant {
    pub fn name(self) -> &'static str {
        match self {
            OracleVariant::Antimagic => "antimagic",
            OracleVariant::QuasiAntimagic => "quasi-antimagic",
            OracleVariant::QuasiOriented => "quasi-oriented",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "antimagic" => Some(OracleVariant::Antimagic),
            "quasi-antimagic" => Some(OracleVariant::QuasiAntimagic),
            "quasi-oriented" => Some(OracleVariant::QuasiOriented),
            _ => None,
        }
    }

    fn exemption(self) -> Exemption {
        match self {
            OracleVariant::Antimagic => Exemption::None,
            OracleVariant::QuasiAntimagic => Exemption::IsolatedAndK2Pair,
            OracleVariant::QuasiOriented => Exemption::Isolated,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMode {
    Exists,
    FindOne,
    Count,
}

#[derive(Clone, Debug)]
pub struct OracleQuery<S> {
    pub graph: Graph,
    pub variant: OracleVariant,
    /// Labels come from `1..=m+k` unless lists are given.
    pub k: u64,
    pub weighting: Option<Weighting<S>>,
    /// Undirected variants only.
    pub lists: Option<ListAssignment<S>>,
    /// Oriented variant only; `None` searches every orientation.
    pub orientation: Option<Orientation>,
    pub mode: OracleMode,
    /// Refuse instances whose unpruned search space exceeds this.
    pub cap: u128,
}

impl<S: Scalar> OracleQuery<S> {
    pub fn new(graph: Graph, variant: OracleVariant, k: u64) -> Self {
        OracleQuery {
            graph,
            variant,
            k,
            weighting: None,
            lists: None,
            orientation: None,
            mode: OracleMode::Exists,
            cap: DEFAULT_CAP,
        }
    }

    pub fn mode(mut self, mode: OracleMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn weighting(mut self, w: Weighting<S>) -> Self {
        self.weighting = Some(w);
        self
    }

    pub fn lists(mut self, lists: ListAssignment<S>) -> Self {
        self.lists = Some(lists);
        self
    }

    pub fn orientation(mut self, o: Orientation) -> Self {
        self.orientation = Some(o);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleAnswer<S> {
    Exists(bool),
    Found(Option<Labeling<S>>),
    Count(u128),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult<S> {
    pub answer: OracleAnswer<S>,
    pub nodes: u64,
    /// Size of the unpruned search space.
    pub estimate: u128,
}

impl<S> OracleResult<S> {
    pub fn exists(&self) -> bool {
        match &self.answer {
            OracleAnswer::Exists(b) => *b,
            OracleAnswer::Found(f) => f.is_some(),
            OracleAnswer::Count(c) => *c > 0,
        }
    }
}

/// Number of assignments the unpruned search would visit at the leaves,
/// saturating at `u128::MAX`.
fn estimate(sizes: &[usize], signed: bool) -> u128 {
    sizes.iter().fold(1u128, |total, &s| {
        let choices = if signed { 2 * s as u128 } else { s as u128 };
        total.saturating_mul(choices)
    })
}

struct Search<'a, S> {
    g: &'a Graph,
    edges: Vec<Edge>,
    candidates: Vec<Vec<S>>,
    signed: bool,
    weights: Weighting<S>,
    exemption: Exemption,
    /// Vertices whose last incident edge has index `i`.
    completes_at: Vec<Vec<VertexId>>,
    opts_domain: Domain<S>,
    fixed: Option<&'a Orientation>,
    mode: OracleMode,
    nodes: u64,
    count: u128,
    found: Option<Labeling<S>>,
}

enum Domain<S> {
    Range(u64),
    Lists(ListAssignment<S>),
}

impl<S: Scalar> Search<'_, S> {
    /// Sign of an edge's contribution at `v`: +1 at the head, -1 at the tail.
    fn contribution(&self, e: Edge, v: VertexId, value: &S) -> S {
        match (self.signed, self.fixed) {
            (false, None) => value.clone(),
            (_, fixed) => {
                // value sign encodes the orientation in free mode
                let head = match fixed {
                    Some(o) => o.head(e).expect("total orientation"),
                    None if value.is_negative() => e.lo(),
                    None => e.hi(),
                };
                let magnitude = value.abs();
                if v == head {
                    magnitude
                } else {
                    -magnitude
                }
            }
        }
    }

    /// Injectivity is tracked on `used`, which holds magnitudes in free
    /// oriented mode. Returns true to stop the search.
    fn run(
        &mut self,
        i: usize,
        assignment: &mut Vec<S>,
        used: &mut BTreeSet<S>,
        sums: &mut BTreeMap<VertexId, S>,
        done: &mut Vec<VertexId>,
    ) -> bool {
        if i == self.edges.len() {
            return self.leaf(assignment);
        }
        let e = self.edges[i];
        for c in 0..self.candidates[i].len() {
            let value = self.candidates[i][c].clone();
            let magnitude = if self.signed { value.abs() } else { value.clone() };
            if used.contains(&magnitude) {
                continue;
            }
            self.nodes += 1;
            let deltas: Vec<(VertexId, S)> = e
                .endpoints()
                .iter()
                .map(|&v| (v, self.contribution(e, v, &value)))
                .collect();
            for (v, d) in &deltas {
                let s = sums.get_mut(v).expect("vertex");
                *s = s.clone() + d.clone();
            }
            let before = done.len();
            let mut ok = true;
            for &v in &self.completes_at[i + 1] {
                if done.iter().any(|&u| sums[&u] == sums[&v] && !self.exemption.is_exempt(self.g, u, v)) {
                    ok = false;
                    break;
                }
                done.push(v);
            }
            if ok {
                used.insert(magnitude.clone());
                assignment.push(value);
                let stop = self.run(i + 1, assignment, used, sums, done);
                assignment.pop();
                used.remove(&magnitude);
                if stop {
                    return true;
                }
            }
            done.truncate(before);
            for (v, d) in &deltas {
                let s = sums.get_mut(v).expect("vertex");
                *s = s.clone() - d.clone();
            }
        }
        false
    }

    fn labeling(&self, assignment: &[S]) -> Labeling<S> {
        let mut f = Labeling::new();
        let mut orientation = match self.fixed {
            Some(o) => Some(o.clone()),
            None if self.signed => Some(Orientation::ascending(self.g)),
            None => None,
        };
        for (&e, x) in self.edges.iter().zip(assignment) {
            if !self.signed {
                f.set(e, x.clone());
                continue;
            }
            if x.is_negative() {
                if let Some(o) = orientation.as_mut() {
                    o.flip(e);
                }
            }
            f.set(e, x.abs());
        }
        f.set_orientation(orientation);
        f
    }

    /// Returns true to stop the search.
    fn leaf(&mut self, assignment: &[S]) -> bool {
        let f = self.labeling(assignment);
        let mode = if f.orientation().is_some() {
            SumMode::Oriented
        } else {
            SumMode::Weighted(&self.weights)
        };
        let domain = match &self.opts_domain {
            Domain::Range(max) => LabelDomain::Range { max: *max },
            Domain::Lists(l) => LabelDomain::Lists(l),
        };
        let opts = VerifyOptions {
            mode,
            domain,
            exemption: self.exemption,
        };
        let ok = verify_quasi_antimagic(self.g, &f, &opts)
            .map(|r| r.ok)
            .unwrap_or(false);
        if !ok {
            return false;
        }
        match self.mode {
            OracleMode::Count => {
                self.count += 1;
                false
            }
            _ => {
                self.found = Some(f);
                true
            }
        }
    }
}

pub fn brute_force<S: Scalar>(q: &OracleQuery<S>) -> Result<OracleResult<S>> {
    let g = &q.graph;
    let oriented = q.variant == OracleVariant::QuasiOriented;
    if oriented && q.lists.is_some() {
        return Err(Error::Contract("the oriented oracle draws labels from a range, not lists".into()));
    }
    if !oriented && q.orientation.is_some() {
        return Err(Error::Contract("an orientation only applies to the oriented oracle".into()));
    }
    if let Some(w) = &q.weighting {
        w.check_against(g)?;
    }
    if let Some(o) = &q.orientation {
        o.check_against(g)?;
    }

    // Edges ordered by their larger endpoint so vertices complete early.
    let mut edges: Vec<Edge> = g.edges().collect();
    edges.sort_by_key(|e| (e.hi(), e.lo()));
    let max_label = g.m() as u64 + q.k;
    let signed = oriented && q.orientation.is_none();
    let candidates: Vec<Vec<S>> = edges
        .iter()
        .map(|&e| match &q.lists {
            Some(lists) => lists.get(e).map(|l| l.iter().cloned().collect()).unwrap_or_default(),
            None => (1..=max_label as i64)
                .map(S::from_int)
                .flat_map(|x| if signed { vec![x.clone(), -x] } else { vec![x] })
                .collect(),
        })
        .collect();

    let sizes: Vec<usize> = match &q.lists {
        Some(_) => candidates.iter().map(Vec::len).collect(),
        None => (0..edges.len())
            .map(|i| (max_label as usize).saturating_sub(i))
            .collect(),
    };
    let estimate = estimate(&sizes, signed);
    if estimate > q.cap {
        return Err(Error::CapExceeded {
            required: estimate,
            cap: q.cap,
        });
    }

    let mut completes_at = vec![Vec::new(); edges.len() + 1];
    for v in g.vertices() {
        let last = edges.iter().rposition(|e| e.contains(v)).map_or(0, |i| i + 1);
        completes_at[last].push(v);
    }
    let weights = match (&q.weighting, oriented) {
        (Some(w), false) => w.clone(),
        _ => Weighting::zero(),
    };
    let mut sums: BTreeMap<VertexId, S> = g.vertices().map(|v| (v, weights.get(v))).collect();
    let exemption = q.variant.exemption();

    // Vertices with no edges are complete from the start.
    let mut done: Vec<VertexId> = Vec::new();
    for &v in &completes_at[0] {
        if done.iter().any(|&u| sums[&u] == sums[&v] && !exemption.is_exempt(g, u, v)) {
            let answer = match q.mode {
                OracleMode::Exists => OracleAnswer::Exists(false),
                OracleMode::FindOne => OracleAnswer::Found(None),
                OracleMode::Count => OracleAnswer::Count(0),
            };
            return Ok(OracleResult { answer, nodes: 0, estimate });
        }
        done.push(v);
    }

    let mut search = Search {
        g,
        edges,
        candidates,
        signed,
        weights,
        exemption,
        completes_at,
        opts_domain: match &q.lists {
            Some(l) => Domain::Lists(l.clone()),
            None => Domain::Range(max_label),
        },
        fixed: q.orientation.as_ref(),
        mode: q.mode,
        nodes: 0,
        count: 0,
        found: None,
    };
    search.run(0, &mut Vec::new(), &mut BTreeSet::new(), &mut sums, &mut done);

    let answer = match q.mode {
        OracleMode::Exists => OracleAnswer::Exists(search.found.is_some()),
        OracleMode::FindOne => OracleAnswer::Found(search.found.take()),
        OracleMode::Count => OracleAnswer::Count(search.count),
    };
    Ok(OracleResult {
        answer,
        nodes: search.nodes,
        estimate,
    })
}

/// Per-sample smallest `k` with a labeling, for an empirical look at how
/// tight the guaranteed bounds are. Never a proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub variant: OracleVariant,
    pub samples: usize,
    pub k_max: u64,
    /// `None` when no `k <= k_max` worked or the cap was hit.
    pub per_sample: Vec<Option<u64>>,
    /// Smallest `k` that worked for every sample.
    pub min_k: Option<u64>,
    /// Some query hit the size cap, so the report is partial.
    pub capped: bool,
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub variant: OracleVariant,
    pub k_max: u64,
    /// Weightings to try; ignored by the oriented variant. Empty means the
    /// zero weighting.
    pub weightings: Vec<Weighting<Rational>>,
    /// Draw adversarial lists of size `m + k` (pool `m + k + 2`) per sample
    /// and `k` from this seed instead of using the range.
    pub list_seed: Option<u64>,
    pub cap: u128,
}

pub fn sweep_min_k(g: &Graph, config: &SweepConfig) -> SweepReport {
    let weightings = if config.weightings.is_empty() {
        vec![Weighting::zero()]
    } else {
        config.weightings.clone()
    };
    let m = g.m() as u64;
    let mut capped = false;
    let per_sample: Vec<Option<u64>> = weightings
        .iter()
        .enumerate()
        .map(|(i, w)| {
            for k in 0..=config.k_max {
                let mut q = OracleQuery::new(g.clone(), config.variant, k).cap(config.cap);
                if config.variant != OracleVariant::QuasiOriented {
                    q = q.weighting(w.clone());
                    if let Some(seed) = config.list_seed {
                        let mut r = rng(seed ^ ((i as u64) << 32) ^ k);
                        q = q.lists(adversarial_lists(g, (m + k) as usize, 2, &mut r));
                    }
                }
                match brute_force(&q) {
                    Ok(r) if r.exists() => return Some(k),
                    Ok(_) => {}
                    Err(_) => {
                        capped = true;
                        return None;
                    }
                }
            }
            None
        })
        .collect();
    let min_k = per_sample
        .iter()
        .try_fold(0u64, |acc, s| s.map(|k| acc.max(k)));
    SweepReport {
        variant: config.variant,
        samples: weightings.len(),
        k_max: config.k_max,
        per_sample,
        min_k,
        capped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    fn exists(g: Graph, variant: OracleVariant, k: u64) -> bool {
        brute_force(&OracleQuery::<i64>::new(g, variant, k)).unwrap().exists()
    }

    #[test]
    fn c4_antimagic() {
        let r = brute_force(&OracleQuery::<i64>::new(generate::cycle(4), OracleVariant::Antimagic, 0).mode(OracleMode::FindOne)).unwrap();
        let OracleAnswer::Found(Some(f)) = r.answer else {
            panic!("C4 is antimagic");
        };
        let opts = VerifyOptions {
            mode: SumMode::Weighted(&Weighting::zero()),
            domain: LabelDomain::Range { max: 4 },
            exemption: Exemption::None,
        };
        assert!(verify_quasi_antimagic(&generate::cycle(4), &f, &opts).unwrap().ok);
    }

    #[test]
    fn k2() {
        assert!(!exists(generate::path(2), OracleVariant::Antimagic, 0));
        assert!(!exists(generate::path(2), OracleVariant::Antimagic, 5));
        assert!(exists(generate::path(2), OracleVariant::QuasiAntimagic, 0));
        assert!(exists(generate::path(2), OracleVariant::QuasiOriented, 0));
    }

    #[test]
    fn p3_zero_k() {
        assert!(exists(generate::path(3), OracleVariant::Antimagic, 0));
        let c = brute_force(&OracleQuery::<i64>::new(generate::path(3), OracleVariant::Antimagic, 0).mode(OracleMode::Count)).unwrap();
        // labels {1,2} in either order; the middle sum 3 never collides
        assert_eq!(c.answer, OracleAnswer::Count(2));
    }

    #[test]
    fn count_matches_independent_enumeration() {
        // every permutation of 1..=6 on K4, checked directly
        let g = generate::complete(4);
        let edges: Vec<Edge> = g.edges().collect();
        let mut expected = 0u128;
        let mut perm: Vec<i64> = (1..=6).collect();
        permutations(&mut perm, 0, &mut |p| {
            let mut sums = [0i64; 5];
            for (e, &l) in edges.iter().zip(p) {
                sums[e.lo() as usize] += l;
                sums[e.hi() as usize] += l;
            }
            let s: BTreeSet<i64> = sums[1..].iter().copied().collect();
            if s.len() == 4 {
                expected += 1;
            }
        });
        let c = brute_force(&OracleQuery::<i64>::new(g, OracleVariant::Antimagic, 0).mode(OracleMode::Count)).unwrap();
        assert_eq!(c.answer, OracleAnswer::Count(expected));
        assert!(expected > 0);
    }

    fn permutations(v: &mut Vec<i64>, i: usize, visit: &mut dyn FnMut(&[i64])) {
        if i == v.len() {
            visit(v);
            return;
        }
        for j in i..v.len() {
            v.swap(i, j);
            permutations(v, i + 1, visit);
            v.swap(i, j);
        }
    }

    #[test]
    fn oriented_fixed_and_free() {
        // P3 ascending 1->2->3: sums -a, a-b, b with a != b, all three must differ
        let p3 = generate::path(3);
        let fixed = OracleQuery::<i64>::new(p3.clone(), OracleVariant::QuasiOriented, 0)
            .orientation(Orientation::ascending(&p3))
            .mode(OracleMode::Count);
        // labels {1,2}: (1,2) gives -1,-1,2; (2,1) gives -2,1,1
        assert_eq!(brute_force(&fixed).unwrap().answer, OracleAnswer::Count(0));
        let free = OracleQuery::<i64>::new(p3, OracleVariant::QuasiOriented, 0).mode(OracleMode::Count);
        assert!(matches!(brute_force(&free).unwrap().answer, OracleAnswer::Count(c) if c > 0));
    }

    #[test]
    fn negative_list_values_are_distinct_labels() {
        let g = generate::path(2);
        let mut lists = ListAssignment::default();
        lists.set(Edge::new(1, 2), [-1i64, 1].into_iter().collect());
        let q = OracleQuery::new(g, OracleVariant::QuasiAntimagic, 0).lists(lists).mode(OracleMode::Count);
        assert_eq!(brute_force(&q).unwrap().answer, OracleAnswer::Count(2));
    }

    #[test]
    fn found_labeling_keeps_negative_values() {
        let g = generate::path(3);
        let mut lists = ListAssignment::default();
        lists.set(Edge::new(1, 2), [-3i64].into_iter().collect());
        lists.set(Edge::new(2, 3), [-5i64].into_iter().collect());
        let q = OracleQuery::new(g, OracleVariant::Antimagic, 0).lists(lists).mode(OracleMode::FindOne);
        let OracleAnswer::Found(Some(f)) = brute_force(&q).unwrap().answer else {
            panic!("sums -3, -8, -5 are distinct");
        };
        assert_eq!(f.get(Edge::new(1, 2)), Some(&-3));
    }

    #[test]
    fn cap_refuses_with_estimate() {
        let q = OracleQuery::<i64>::new(generate::complete(5), OracleVariant::Antimagic, 0).cap(1000);
        match brute_force(&q) {
            Err(Error::CapExceeded { required, cap: 1000 }) => assert_eq!(required, 3_628_800),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sweep_p3_and_k2() {
        let cfg = SweepConfig {
            variant: OracleVariant::Antimagic,
            k_max: 3,
            weightings: Vec::new(),
            list_seed: None,
            cap: DEFAULT_CAP,
        };
        assert_eq!(sweep_min_k(&generate::path(3), &cfg).min_k, Some(0));
        assert_eq!(sweep_min_k(&generate::path(2), &cfg).min_k, None);
        let quasi = SweepConfig {
            variant: OracleVariant::QuasiAntimagic,
            ..cfg
        };
        assert_eq!(sweep_min_k(&generate::path(2), &quasi).min_k, Some(0));
    }
}
