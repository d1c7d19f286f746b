//! Checks for every antimagic variant: injectivity, label domain and
//! pairwise distinct (weighted or oriented) vertex sums.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::graph::{Edge, Graph, VertexId};
use crate::labeling::{oriented_vertex_sums, vertex_sums, Labeling, ListAssignment, Weighting};
use crate::scalar::Scalar;

/// Which vertex pairs may share a sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exemption {
    /// Every pair of vertices must differ.
    None,
    /// Isolated vertices are exempt (oriented quasi variant).
    Isolated,
    /// Isolated vertices, and the two endpoints of a `K2` component from each
    /// other (undirected quasi variant).
    IsolatedAndK2Pair,
    /// Isolated vertices and both endpoints of a `K2` component from
    /// everything. A relaxed reading of the undirected quasi variant.
    IsolatedAndK2Component,
}

impl Exemption {
    pub fn is_exempt(self, g: &Graph, u: VertexId, v: VertexId) -> bool {
        let isolated = || g.is_isolated(u) || g.is_isolated(v);
        match self {
            Exemption::None => false,
            Exemption::Isolated => isolated(),
            Exemption::IsolatedAndK2Pair => isolated() || g.k2_partner(u) == Some(v),
            Exemption::IsolatedAndK2Component => {
                isolated() || g.k2_partner(u).is_some() || g.k2_partner(v).is_some()
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum SumMode<'a, S> {
    Weighted(&'a Weighting<S>),
    Oriented,
}

#[derive(Clone, Copy, Debug)]
pub enum LabelDomain<'a, S> {
    Any,
    /// Integers in `1..=max`.
    Range { max: u64 },
    Lists(&'a ListAssignment<S>),
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions<'a, S> {
    pub mode: SumMode<'a, S>,
    pub domain: LabelDomain<'a, S>,
    pub exemption: Exemption,
}

impl<'a, S> VerifyOptions<'a, S> {
    /// Weighted-list quasi-antimagic with the strict `K2` reading.
    pub fn weighted_list(w: &'a Weighting<S>, lists: &'a ListAssignment<S>) -> Self {
        VerifyOptions {
            mode: SumMode::Weighted(w),
            domain: LabelDomain::Lists(lists),
            exemption: Exemption::IsolatedAndK2Pair,
        }
    }

    pub fn quasi_oriented(max_label: u64) -> Self {
        VerifyOptions {
            mode: SumMode::Oriented,
            domain: LabelDomain::Range { max: max_label },
            exemption: Exemption::Isolated,
        }
    }
}

/// Values serialize through `Display`, so rationals appear as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case", bound = "S: fmt::Display")]
pub enum Violation<S> {
    DuplicateLabel {
        first: Edge,
        second: Edge,
        #[serde(serialize_with = "as_string")]
        label: S,
    },
    LabelOutOfRange {
        edge: Edge,
        #[serde(serialize_with = "as_string")]
        label: S,
    },
    LabelNotInList {
        edge: Edge,
        #[serde(serialize_with = "as_string")]
        label: S,
    },
    SumCollision {
        first: VertexId,
        second: VertexId,
        #[serde(serialize_with = "as_string")]
        sum: S,
    },
}

fn as_string<S: fmt::Display, Ser: Serializer>(value: &S, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
    ser.collect_str(value)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "S: fmt::Display")]
pub struct VerifyReport<S> {
    pub ok: bool,
    pub violations: Vec<Violation<S>>,
}

impl<S> VerifyReport<S> {
    fn from_violations(violations: Vec<Violation<S>>) -> Self {
        VerifyReport {
            ok: violations.is_empty(),
            violations,
        }
    }
}

/// Runs every check and collects all violations. Errors are reserved for
/// inputs that cannot be checked at all (partial labeling, missing
/// orientation in oriented mode).
pub fn verify_quasi_antimagic<S: Scalar>(
    g: &Graph,
    f: &Labeling<S>,
    opts: &VerifyOptions<'_, S>,
) -> Result<VerifyReport<S>> {
    let sums = match opts.mode {
        SumMode::Weighted(w) => vertex_sums(g, f, w)?,
        SumMode::Oriented => oriented_vertex_sums(g, f)?,
    };
    let mut violations = Vec::new();

    let mut first_use: BTreeMap<&S, Edge> = BTreeMap::new();
    for (e, label) in f.entries() {
        if let Some(&first) = first_use.get(label) {
            violations.push(Violation::DuplicateLabel {
                first,
                second: e,
                label: label.clone(),
            });
        } else {
            first_use.insert(label, e);
        }
    }

    for (e, label) in f.entries() {
        match opts.domain {
            LabelDomain::Any => {}
            LabelDomain::Range { max } => {
                let in_range = label
                    .to_int()
                    .is_some_and(|l| l >= 1 && (l as u64) <= max);
                if !in_range {
                    violations.push(Violation::LabelOutOfRange {
                        edge: e,
                        label: label.clone(),
                    });
                }
            }
            LabelDomain::Lists(lists) => {
                if !lists.get(e).is_some_and(|l| l.contains(label)) {
                    violations.push(Violation::LabelNotInList {
                        edge: e,
                        label: label.clone(),
                    });
                }
            }
        }
    }

    let mut by_sum: BTreeMap<&S, Vec<VertexId>> = BTreeMap::new();
    for (v, s) in &sums {
        by_sum.entry(s).or_default().push(*v);
    }
    for (sum, group) in by_sum {
        for (i, &u) in group.iter().enumerate() {
            for &v in &group[i + 1..] {
                if !opts.exemption.is_exempt(g, u, v) {
                    violations.push(Violation::SumCollision {
                        first: u,
                        second: v,
                        sum: sum.clone(),
                    });
                }
            }
        }
    }

    Ok(VerifyReport::from_violations(violations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;
    use crate::labeling::Orientation;

    fn labeled(g: &Graph, labels: &[i64]) -> Labeling<i64> {
        Labeling::from_map(g.edges().zip(labels.iter().copied()).collect())
    }

    fn undirected<'a>(w: &'a Weighting<i64>, max: u64) -> VerifyOptions<'a, i64> {
        VerifyOptions {
            mode: SumMode::Weighted(w),
            domain: LabelDomain::Range { max },
            exemption: Exemption::IsolatedAndK2Pair,
        }
    }

    #[test]
    fn k2_pair_is_exempt() {
        let k2 = generate::path(2);
        let w = Weighting::zero();
        let report = verify_quasi_antimagic(&k2, &labeled(&k2, &[1]), &undirected(&w, 1)).unwrap();
        assert!(report.ok);

        let strict = VerifyOptions {
            exemption: Exemption::None,
            ..undirected(&w, 1)
        };
        let report = verify_quasi_antimagic(&k2, &labeled(&k2, &[1]), &strict).unwrap();
        assert!(!report.ok);
    }

    #[test]
    fn k2_endpoint_must_differ_from_other_components() {
        // K2 on {1,2} plus P3 on {3,4,5}
        let g = Graph::from_edges([(1, 2), (3, 4), (4, 5)]).unwrap();
        let f = Labeling::from_map(
            [((1, 2), 1), ((3, 4), 2), ((4, 5), 3)]
                .into_iter()
                .map(|((u, v), l)| (Edge::new(u, v), l))
                .collect(),
        );
        let mut w = Weighting::zero();
        w.set(3, 1);
        w.set(5, 1);
        // sums: 1:1 2:1 3:3 4:5 5:4, now give 5 the same sum as 1
        w.set(5, -2);
        let report = verify_quasi_antimagic(&g, &f, &undirected(&w, 10)).unwrap();
        assert_eq!(
            report.violations,
            vec![
                Violation::SumCollision { first: 1, second: 5, sum: 1 },
                Violation::SumCollision { first: 2, second: 5, sum: 1 },
            ]
        );
        let relaxed = VerifyOptions {
            exemption: Exemption::IsolatedAndK2Component,
            ..undirected(&w, 10)
        };
        assert!(verify_quasi_antimagic(&g, &f, &relaxed).unwrap().ok);
    }

    #[test]
    fn duplicate_labels_reported() {
        let p3 = generate::path(3);
        let w = Weighting::zero();
        let report = verify_quasi_antimagic(&p3, &labeled(&p3, &[1, 1]), &undirected(&w, 5)).unwrap();
        assert!(!report.ok);
        assert!(matches!(report.violations[0], Violation::DuplicateLabel { label: 1, .. }));
    }

    #[test]
    fn c4_cyclic_1243_is_antimagic() {
        let c4 = generate::cycle(4);
        let mut f = Labeling::new();
        for (e, l) in [((1, 2), 1), ((2, 3), 2), ((3, 4), 4), ((4, 1), 3)] {
            f.set(Edge::new(e.0, e.1), l);
        }
        let w = Weighting::zero();
        let strict = VerifyOptions {
            exemption: Exemption::None,
            ..undirected(&w, 4)
        };
        assert!(verify_quasi_antimagic(&c4, &f, &strict).unwrap().ok);
        let sums = vertex_sums(&c4, &f, &w).unwrap();
        assert_eq!(sums.values().copied().collect::<Vec<_>>(), vec![4, 3, 6, 7]);
    }

    #[test]
    fn range_and_list_domains() {
        let p3 = generate::path(3);
        let w = Weighting::zero();
        let report = verify_quasi_antimagic(&p3, &labeled(&p3, &[-1, 7]), &undirected(&w, 6)).unwrap();
        assert_eq!(report.violations.len(), 2);

        let mut lists = ListAssignment::default();
        lists.set(Edge::new(1, 2), [1, 2].into_iter().collect());
        lists.set(Edge::new(2, 3), [5].into_iter().collect());
        let opts = VerifyOptions {
            mode: SumMode::Weighted(&w),
            domain: LabelDomain::Lists(&lists),
            exemption: Exemption::IsolatedAndK2Pair,
        };
        let report = verify_quasi_antimagic(&p3, &labeled(&p3, &[2, 4]), &opts).unwrap();
        assert_eq!(
            report.violations,
            vec![Violation::LabelNotInList { edge: Edge::new(2, 3), label: 4 }]
        );
    }

    #[test]
    fn oriented_isolated_exempt_but_k2_not() {
        let g = generate::path(2).with_vertices([3]);
        let f = labeled(&g, &[1]).with_orientation(Orientation::ascending(&g));
        let report = verify_quasi_antimagic(&g, &f, &VerifyOptions::quasi_oriented(1)).unwrap();
        assert!(report.ok);

        // P3 ascending with labels 1, 2: sums -1, -1, 2
        let p3 = generate::path(3);
        let f = labeled(&p3, &[1, 2]).with_orientation(Orientation::ascending(&p3));
        let report = verify_quasi_antimagic(&p3, &f, &VerifyOptions::quasi_oriented(3)).unwrap();
        assert_eq!(
            report.violations,
            vec![Violation::SumCollision { first: 1, second: 2, sum: -1 }]
        );
    }
}
