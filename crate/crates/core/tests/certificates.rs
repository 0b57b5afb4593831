use lmod_core::cover::Conventions;
use lmod_core::suite::{verify_all, verify_smod_homology, Claim};
use lmod_core::{Context, Oracle, Status, SuiteConfig};

#[test]
fn every_claim_reverifies_from_json() {
    let config = SuiteConfig::default();
    let oracle = Oracle::default();
    for (n, k) in [(1, 3), (2, 3), (2, 4), (3, 3)] {
        let ctx = Context::new(n, k).unwrap();
        for claim in verify_all(&ctx, &config).claims {
            assert_eq!(claim.status, Status::Pass, "{} ({n},{k}): {:?}", claim.id, claim.note);
            let back: Claim = serde_json::from_str(&serde_json::to_string(&claim).unwrap()).unwrap();
            assert_eq!(back, claim);
            assert_eq!(back.reverify(&oracle).unwrap(), Status::Pass, "{}", claim.id);
        }
    }
}

#[test]
fn tampered_matrix_witness_fails() {
    let ctx = Context::new(1, 3).unwrap();
    let mut claim = verify_smod_homology(&ctx, Conventions::default())
        .into_iter()
        .find(|c| c.id == "Hom-conj-t")
        .unwrap();
    let m = &mut claim.witness.as_mut().unwrap().matrices[0].lhs;
    m.set(0, 0, m.get(0, 0) + 1);
    assert_eq!(claim.reverify(&Oracle::default()).unwrap(), Status::Fail);
}

// The homology identities hold for either transvection sign.
#[test]
fn identities_hold_for_both_twist_signs() {
    for (n, k) in [(1, 3), (2, 3), (1, 4), (2, 4), (3, 3), (3, 4)] {
        let ctx = Context::new(n, k).unwrap();
        for claim in verify_smod_homology(&ctx, Conventions { twist_sign: -1 }) {
            assert_eq!(claim.status, Status::Pass, "{} ({n},{k})", claim.id);
        }
    }
}

#[test]
fn word_claims_at_n4() {
    let ctx = Context::new(4, 3).unwrap();
    let run = verify_all(&ctx, &SuiteConfig::default());
    for c in run.claims.iter().filter(|c| c.group != lmod_core::ClaimGroup::Homology) {
        assert_eq!(c.status, Status::Pass, "{}: {:?}", c.id, c.note);
    }
}
