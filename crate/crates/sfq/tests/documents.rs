use std::path::Path;

use sfq::docs::{from_json, to_json, GStructureDocument, IntuitionisticDocument, ModelDocument, ProofDocument};
use sfq_core::generation::{random_structure, GenerationStructure, StructureBounds};
use sfq_core::kripke::w0;
use sfq_core::proofs::corpus::{broken_neg_i2, by_name, corpus};
use sfq_core::proofs::check;
use sfq_core::search::{random_model, rng_from_seed, ModelClass, SearchBounds};
use sfq_core::syntax::Signature;
use sfq_core::transform::gen_to_int;

fn fixture(rel: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)).unwrap()
}

fn sig() -> Signature {
    Signature::from_parts(&["c"], &[("f", 1)], &[("P", 1), ("Q", 0), ("R", 2)]).unwrap()
}

#[test]
fn fixtures_match_their_sources() {
    assert_eq!(fixture("models/w0.json"), to_json(&ModelDocument::from_model(&w0())));
    let basic = by_name("basic_iv").unwrap();
    assert_eq!(fixture("proofs/basic_iv.proof.json"), to_json(&ProofDocument::from_derivation(&basic.derivation)));
    assert_eq!(fixture("proofs/broken_neg_i2.proof.json"), to_json(&ProofDocument::from_derivation(&broken_neg_i2())));
    let single = GenerationStructure::single("W0", w0()).unwrap();
    assert_eq!(fixture("structures/w0.json"), to_json(&GStructureDocument::from_structure(&single)));
}

#[test]
fn fixture_files_are_fixpoints() {
    let text = fixture("models/w0.json");
    let m = from_json::<ModelDocument>(&text).unwrap().to_model().unwrap();
    assert_eq!(to_json(&ModelDocument::from_model(&m)), text);
    for rel in ["structures/w0.json", "structures/w0_chain.json"] {
        let text = fixture(rel);
        let g = from_json::<GStructureDocument>(&text).unwrap().to_structure().unwrap();
        assert_eq!(to_json(&GStructureDocument::from_structure(&g)), text, "{rel}");
    }
    for rel in ["proofs/basic_iv.proof.json", "proofs/broken_neg_i2.proof.json"] {
        let text = fixture(rel);
        let d = from_json::<ProofDocument>(&text).unwrap().to_derivation().unwrap();
        assert_eq!(to_json(&ProofDocument::from_derivation(&d)), text, "{rel}");
    }
}

#[test]
fn random_models_round_trip() {
    for class in [ModelClass::All, ModelClass::Prevalent] {
        let b = SearchBounds::new(sig(), 4, 3, class);
        for seed in 0..200 {
            let m = random_model(seed, &b);
            let text = to_json(&ModelDocument::from_model(&m));
            let back = from_json::<ModelDocument>(&text).unwrap().to_model().unwrap();
            assert_eq!(back, m, "seed {seed}");
            assert_eq!(to_json(&ModelDocument::from_model(&back)), text);
        }
    }
}

#[test]
fn structures_and_intuitionistic_models_round_trip() {
    let b = StructureBounds { signature: sig(), max_generations: 3, max_nodes: 3, max_domain: 2, postconstructive: false };
    let mut rng = rng_from_seed(3);
    for _ in 0..60 {
        let g = random_structure(&mut rng, &b);
        let text = to_json(&GStructureDocument::from_structure(&g));
        let back = from_json::<GStructureDocument>(&text).unwrap().to_structure().unwrap();
        assert_eq!(back, g);
        let i = gen_to_int(&g).unwrap();
        let text = to_json(&IntuitionisticDocument::from_model(&i));
        let back = from_json::<IntuitionisticDocument>(&text).unwrap().to_model().unwrap();
        assert_eq!(back, i);
    }
}

#[test]
fn corpus_derivations_round_trip() {
    for e in corpus() {
        let text = to_json(&ProofDocument::from_derivation(&e.derivation));
        let d = from_json::<ProofDocument>(&text).unwrap().to_derivation().unwrap();
        assert_eq!(check(&d, e.system), check(&e.derivation, e.system), "{}", e.name);
        assert_eq!(to_json(&ProofDocument::from_derivation(&d)), text, "{}", e.name);
    }
}

#[test]
fn malformed_documents_are_rejected() {
    let good = fixture("models/w0.json");
    let extra = good.replacen("\"domain\"", "\"colour\": 1,\n  \"domain\"", 1);
    assert!(from_json::<ModelDocument>(&extra).is_err());
    let dangling = good.replace("\"parent\": \"r\"", "\"parent\": \"q\"");
    assert!(from_json::<ModelDocument>(&dangling).unwrap().to_model().is_err());
    let not_persistent = good.replace("\"k\": {", "\"r\": {");
    let doc = from_json::<ModelDocument>(&not_persistent).unwrap();
    assert!(doc.to_model().is_err(), "E at r but not at k");
    let unknown_rule = fixture("proofs/basic_iv.proof.json").replacen("\"hyp\"", "\"magic\"", 1);
    assert!(from_json::<ProofDocument>(&unknown_rule).unwrap().to_derivation().is_err());
    let chain = fixture("structures/w0_chain.json");
    let shrunk = chain.replacen("\"domain\": [\n          0,\n          1\n        ]", "\"domain\": [\n          1\n        ]", 1);
    assert_ne!(shrunk, chain);
    assert!(from_json::<GStructureDocument>(&shrunk).unwrap().to_structure().is_err());
}
