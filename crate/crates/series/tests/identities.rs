use dualcount_series::identities::prove_identity_with;
use dualcount_series::{proof_instances, prove_identity, random_params, Identity, Method, Verdict};

#[test]
fn proof_instances_are_proven_by_clearing() {
    for (id, p) in proof_instances() {
        let r = prove_identity(id, &p).unwrap();
        assert_eq!(r.method, Method::Cleared, "{} {}", id, p);
        assert_eq!(r.verdict, Verdict::Proven, "{} {}", id, p);
    }
}

#[test]
fn random_tuples_are_proven() {
    for (i, id) in [Identity::KF1, Identity::KF2, Identity::KF3, Identity::KF4]
        .into_iter()
        .enumerate()
    {
        for p in random_params(id, 50, 1000 + i as u64) {
            let r = prove_identity(id, &p).unwrap();
            assert_eq!(r.verdict, Verdict::Proven, "{} {}", id, p);
        }
    }
}

#[test]
fn prop_y_vanishes_through_order_200() {
    let r = prove_identity_with(
        Identity::PropY,
        &dualcount_series::Params::None,
        Some(Method::Series),
    )
    .unwrap();
    assert_eq!(r.degree_or_order, 200);
    assert_eq!(r.verdict, Verdict::AgreesToOrder);
}
