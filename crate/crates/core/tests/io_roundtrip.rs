use std::sync::Arc;

use anyonic_entropy::fermionic::fermionic_catalog;
use anyonic_entropy::io::*;
use anyonic_entropy::model::{catalog_get, catalog_names, product};
use anyonic_entropy::random::{random_bipartite, random_state, rng};
use anyonic_entropy::Error;

#[test]
fn catalog_models_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in catalog_names() {
        let m = catalog_get(&name).unwrap();
        let p = dir.path().join("m.anyon.json");
        save_model(&m, &p).unwrap();
        let first = std::fs::read(&p).unwrap();
        let back = load_model(&p).unwrap();
        assert_eq!(back, m);
        save_model(&back, &p).unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), first);
    }
}

#[test]
fn random_states_round_trip_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let names = catalog_names();
    for i in 0..100u64 {
        let mut name = names[i as usize % names.len()].clone();
        if i % 10 == 9 {
            name = format!("{name}xFib");
        }
        let m = Arc::new(catalog_get(&name).unwrap());
        let s = random_state(&mut rng(i), m.clone(), 4);
        let p = dir.path().join(format!("s{i}.state.json"));
        save_state(&s, &p).unwrap();
        match load_state(&p).unwrap() {
            LoadedState::Mixed(back) => assert_eq!(back.sectors(), s.sectors()),
            LoadedState::Pure(_) => panic!("expected a mixed state"),
        }
        let psi = random_bipartite(&mut rng(i + 1000), m, 3);
        save_pure_state(&psi, &p).unwrap();
        match load_state(&p).unwrap() {
            LoadedState::Pure(back) => assert_eq!(back.blocks(), psi.blocks()),
            LoadedState::Mixed(_) => panic!("expected a pure state"),
        }
    }
}

#[test]
fn inline_models_for_non_catalog_states() {
    let m = product(&catalog_get("Fib").unwrap(), &catalog_get("K(1)").unwrap()).renamed("custom");
    let s = random_state(&mut rng(5), Arc::new(m.clone()), 2);
    let text = state_json(&s).unwrap();
    assert!(text.contains("\"charges\""));
    match parse_state(&text, "mem").unwrap() {
        LoadedState::Mixed(back) => {
            assert_eq!(**back.model(), m);
            assert_eq!(back.sectors(), s.sectors());
        }
        LoadedState::Pure(_) => unreachable!(),
    }
}

#[test]
fn super_models_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for e in fermionic_catalog().unwrap() {
        let p = dir.path().join("f.json");
        save_super(&e.model, &p).unwrap();
        let back = load_super(&p).unwrap();
        assert_eq!(back.fermion(), e.model.fermion());
        assert_eq!(back.supersectors(), e.model.supersectors());
    }
}

#[test]
fn malformed_files_are_located() {
    let text = "{\n  \"kind\": \"model\",\n  \"version\": 1,\n  \"payload\": {\n    \"name\": 3\n  }\n}\n";
    match parse_model(text, "bad.anyon.json") {
        Err(Error::Parse { path, message }) => {
            assert_eq!(path, "bad.anyon.json");
            assert!(message.contains("line 5"), "{message}");
            assert!(message.contains("payload.name"), "{message}");
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_model("not json", "x"), Err(Error::Parse { .. })));
}
