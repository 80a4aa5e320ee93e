//! Golden tests: generated Dynkin diagrams must match the hand-transcribed
//! appendix fixtures for all nine families at N = 2 and N = 3.

use ntoroidal::gim::{dynkin_diagram, nfold_gim, DynkinGraph};
use ntoroidal::rootdata::{affinize, atlas_families, cartan};

fn load_fixture(name: &str) -> DynkinGraph {
    let path = format!(
        "{}/tests/fixtures/gim/{}.json",
        env!("CARGO_MANIFEST_DIR"),
        name
    );
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}

#[test]
fn diagrams_match_transcribed_fixtures() {
    for (family, rank) in atlas_families() {
        let ad = affinize(&cartan(family, rank).unwrap());
        for nfold in [2usize, 3] {
            let m = nfold_gim(&ad, nfold).unwrap();
            let mut got = dynkin_diagram(&m).unwrap();
            got.edges.sort_by_key(|e| (e.a, e.b));
            let fixture = load_fixture(&format!("{family}{rank}_n{nfold}"));
            assert_eq!(
                got, fixture,
                "diagram mismatch for {family}{rank} N={nfold}"
            );
        }
    }
}
