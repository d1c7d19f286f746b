use antimagic::graph::generate;
use antimagic::oracle::{brute_force, OracleAnswer, OracleMode, OracleQuery, OracleVariant};
use antimagic::pipeline::{solve, SolveRequest, Variant};
use antimagic::sample::{adversarial_weighting, rng};
use antimagic::verify::{verify_quasi_antimagic, Exemption, LabelDomain, SumMode, VerifyOptions};
use antimagic::Rational;

#[test]
fn find_one_outputs_pass_the_verifier() {
    let mut r = rng(17);
    for n in 1..=4 {
        for g in generate::all_graphs(n) {
            let m = g.m() as u64;
            for variant in [OracleVariant::Antimagic, OracleVariant::QuasiAntimagic, OracleVariant::QuasiOriented] {
                let w = adversarial_weighting(&g, &mut r);
                let mut q = OracleQuery::<Rational>::new(g.clone(), variant, 1).mode(OracleMode::FindOne);
                if variant != OracleVariant::QuasiOriented {
                    q = q.weighting(w.clone());
                }
                let OracleAnswer::Found(found) = brute_force(&q).unwrap().answer else {
                    unreachable!()
                };
                let Some(f) = found else { continue };
                let opts = VerifyOptions {
                    mode: match variant {
                        OracleVariant::QuasiOriented => SumMode::Oriented,
                        _ => SumMode::Weighted(&w),
                    },
                    domain: LabelDomain::Range { max: m + 1 },
                    exemption: match variant {
                        OracleVariant::Antimagic => Exemption::None,
                        OracleVariant::QuasiAntimagic => Exemption::IsolatedAndK2Pair,
                        OracleVariant::QuasiOriented => Exemption::Isolated,
                    },
                };
                assert!(verify_quasi_antimagic(&g, &f, &opts).unwrap().ok);
            }
        }
    }
}

#[test]
fn pipeline_success_implies_oracle_existence_with_weights() {
    let mut r = rng(5);
    for n in 2..=4 {
        for g in generate::all_graphs(n) {
            let k = Variant::WeightedList.bound(n);
            let w = adversarial_weighting(&g, &mut r);
            let res = solve(&SolveRequest::new(g.clone(), Variant::WeightedList).with_weighting(w.clone()));
            if res.is_ok() {
                let q = OracleQuery::new(g.clone(), OracleVariant::QuasiAntimagic, k)
                    .weighting(w)
                    .cap(u128::MAX);
                assert!(brute_force(&q).unwrap().exists());
            }
        }
    }
}

#[test]
fn oriented_fixed_orientation_from_pipeline() {
    // the pipeline's orientation admits a labeling, so the fixed-orientation
    // oracle must find one too
    for g in generate::all_graphs(4) {
        let res = solve(&SolveRequest::<Rational>::new(g.clone(), Variant::Oriented)).unwrap();
        let q = OracleQuery::<Rational>::new(g.clone(), OracleVariant::QuasiOriented, res.k)
            .orientation(res.labeling.orientation().unwrap().clone());
        assert!(brute_force(&q).unwrap().exists());
    }
}
