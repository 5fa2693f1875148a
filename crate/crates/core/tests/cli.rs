#[path = "common/cli_fixtures.rs"]
mod cli_fixtures;

use std::process::Command;

use cli_fixtures::{run, FIXTURES};

use serde_json::Value;
use soleknot::braid::{Braid, ClosureInfo};
use soleknot::freegroup::Word;
use soleknot::knotgrp::{
    abelianize, alexander_polynomial, sphere_closure_presentation, Abelianization, LaurentPoly,
    Presentation,
};
use soleknot::satellite::{satellite_presentation, FiltrationStage, StageExport};
use soleknot::solenoid::PrimeProfile;
use soleknot::torusgrp::{centralizer_generators, TorusElement};

fn structured(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.extend(["--format", "structured"]);
    let r = run(&v);
    assert_eq!(r.code, 0, "{}", r.err);
    serde_json::from_str(&r.out).unwrap()
}

#[test]
fn fixtures_match_exit_codes_and_messages() {
    assert!(FIXTURES.len() >= 20);
    for (args, code, needle) in FIXTURES {
        let r = run(args);
        assert_eq!(
            r.code, *code,
            "{args:?}: stdout {:?} stderr {:?}",
            r.out, r.err
        );
        let stream = if *code == 0 { &r.out } else { &r.err };
        assert!(
            stream.contains(needle),
            "{args:?}: {needle:?} not in {stream:?}"
        );
        if *code != 0 {
            assert!(r.out.is_empty(), "{args:?} wrote to stdout on failure");
        }
    }
}

#[test]
fn budget_env_var_is_honoured() {
    // the flag wins over the environment; both are read per invocation
    std::env::set_var("SOLEKNOT_BUDGET", "5");
    let env_only = run(&["centralizer", "3: s1 s2", "--enumerate"]);
    let flag = run(&[
        "centralizer",
        "3: s1 s2",
        "--enumerate",
        "--budget",
        "1000000",
    ]);
    std::env::remove_var("SOLEKNOT_BUDGET");
    assert_eq!(env_only.code, 1);
    assert!(env_only.err.contains("budget is 5"));
    assert_eq!(flag.code, 0, "{}", flag.err);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_soleknot");
    let ok = Command::new(bin)
        .args(["closure", "2: s1 s1 s1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&ok.stdout),
        "components=1 winding=2 exponent_sum=3 is_knot=true\n"
    );
    let bad = Command::new(bin)
        .args(["centralizer", "2: s1 s1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("closure has 2 components"));
    let quick = Command::new(bin)
        .args(["verify", "--corpus", "quick"])
        .output()
        .unwrap();
    assert_eq!(
        quick.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&quick.stdout)
    );
}

#[test]
fn file_inputs() {
    let dir = std::env::temp_dir().join(format!("soleknot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pres = dir.join("trefoil.pres");
    let braid = dir.join("pattern.braid");
    let trefoil = sphere_closure_presentation(&"2: s1 s1 s1".parse().unwrap()).unwrap();
    std::fs::write(&pres, trefoil.to_string()).unwrap();
    std::fs::write(&braid, "3: s1 S2\n").unwrap();
    let r = run(&[
        "satellite",
        &format!("@{}", pres.display()),
        &format!("@{}", braid.display()),
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let expected = satellite_presentation(&trefoil, &"3: s1 S2".parse().unwrap()).unwrap();
    assert_eq!(r.out.parse::<Presentation>().unwrap(), expected);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn closure_round_trip() {
    for b in ["2: s1 s1 s1", "3: s1 s2", "4: s1 S3", "1:"] {
        let braid: Braid = b.parse().unwrap();
        let r = run(&["closure", b]);
        assert_eq!(
            r.out.trim().parse::<ClosureInfo>().unwrap(),
            braid.closure_info()
        );
        let doc = structured(&["closure", b]);
        let back: ClosureInfo = serde_json::from_value(doc["closure"].clone()).unwrap();
        assert_eq!(back, braid.closure_info());
        assert_eq!(
            doc["braid"].as_str().unwrap().parse::<Braid>().unwrap(),
            braid
        );
    }
}

#[test]
fn act_round_trip() {
    let b: Braid = "3: s1 S2".parse().unwrap();
    let w: Word = "x1 X3 x2".parse().unwrap();
    let expected = b.artin_endo().apply(&w).unwrap();
    let r = run(&["act", "3: s1 S2", "x1 X3 x2"]);
    assert_eq!(r.out.trim().parse::<Word>().unwrap(), expected);
    let doc = structured(&["act", "3: s1 S2", "x1 X3 x2"]);
    assert_eq!(
        serde_json::from_value::<Word>(doc["image"].clone()).unwrap(),
        expected
    );
    // identity image prints as an empty line
    let r = run(&["act", "2: s1", "x1 X1"]);
    assert_eq!(r.out, "\n");
    assert_eq!(r.out.trim().parse::<Word>().unwrap(), Word::identity());
}

#[test]
fn centralizer_round_trip() {
    let b: Braid = "3: s1 s2 s2 s2".parse().unwrap();
    let gens = centralizer_generators(&b).unwrap();
    let r = run(&["centralizer", "3: s1 s2 s2 s2", "--powers", "1"]);
    let field = |key: &str| {
        r.out
            .lines()
            .find_map(|l| l.strip_prefix(key))
            .unwrap()
            .to_string()
    };
    assert_eq!(field("a: ").parse::<TorusElement>().unwrap(), gens.a);
    assert_eq!(field("b: ").parse::<TorusElement>().unwrap(), gens.b);
    assert_eq!(
        field("conjugator:").trim().parse::<Word>().unwrap(),
        gens.a.tail
    );
    assert!(r.out.contains("power_identity -1: true"));
    let doc = structured(&[
        "centralizer",
        "3: s1 s2 s2 s2",
        "--enumerate",
        "--max-texp",
        "3",
        "--max-len",
        "2",
    ]);
    assert_eq!(
        serde_json::from_value::<TorusElement>(doc["a"].clone()).unwrap(),
        gens.a
    );
    assert_eq!(doc["enumeration"]["matches_prediction"], Value::Bool(true));
    for e in doc["enumeration"]["elements"].as_array().unwrap() {
        serde_json::from_value::<TorusElement>(e.clone()).unwrap();
    }
}

#[test]
fn presentation_round_trip() {
    for b in ["2: s1 s1 s1", "3: s1 S2 s1 S2", "4: s1 s2 s3"] {
        let braid: Braid = b.parse().unwrap();
        let p = sphere_closure_presentation(&braid).unwrap();
        let r = run(&["present", b]);
        assert_eq!(r.out.parse::<Presentation>().unwrap(), p);
        let doc = structured(&["present", b]);
        assert_eq!(
            serde_json::from_value::<Presentation>(doc["presentation"].clone()).unwrap(),
            p
        );
        // the torus form is itself a valid presentation
        let r = run(&["present", b, "--ambient", "torus"]);
        let torus: Presentation = r.out.parse().unwrap();
        assert_eq!(torus.rank(), braid.strands() + 1);
    }
}

#[test]
fn satellite_and_filtration_round_trip() {
    let doc = structured(&["satellite", "2: s1 s1 s1", "3: s1 s2 s1 s2"]);
    let p: Presentation = serde_json::from_value(doc["presentation"].clone()).unwrap();
    let text = run(&["satellite", "2: s1 s1 s1", "3: s1 s2 s1 s2"]).out;
    assert_eq!(text.parse::<Presentation>().unwrap(), p);

    let doc = structured(&[
        "filtration",
        "2: s1 s1 s1",
        "2: s1 s1 s1",
        "--depth",
        "3",
        "--repeat",
    ]);
    let stages: Vec<StageExport> = serde_json::from_value(doc["stages"].clone()).unwrap();
    assert_eq!(stages.len(), 4);
    for s in &stages {
        let back = FiltrationStage::try_from(s).unwrap();
        assert_eq!(StageExport::from(&back), *s);
    }
    assert_eq!(doc["h1_transitions"], serde_json::json!([2, 2, 2]));
    let text = run(&[
        "filtration",
        "2: s1 s1 s1",
        "2: s1 s1 s1",
        "--depth",
        "3",
        "--repeat",
    ])
    .out;
    // each block between stage markers re-parses to the exported stage
    let blocks: Vec<&str> = text.split("# stage ").skip(1).collect();
    assert_eq!(blocks.len(), 4);
    for (block, s) in blocks.iter().zip(&stages) {
        let block = format!("# stage {block}");
        assert_eq!(
            block.parse::<Presentation>().unwrap().to_string(),
            s.presentation
        );
    }
}

#[test]
fn homology_and_alexander_round_trip() {
    for k in [
        "2: s1 s1 s1",
        "3: s1 S2 s1 S2",
        "2: s1 s1 s1 s1 s1",
        "gens: a b; rel: a a; rel: b b b",
    ] {
        let p = if k.starts_with("gens") {
            k.parse().unwrap()
        } else {
            sphere_closure_presentation(&k.parse().unwrap()).unwrap()
        };
        let r = run(&["abelianize", k]);
        assert_eq!(
            r.out.trim().parse::<Abelianization>().unwrap(),
            abelianize(&p)
        );
        let doc = structured(&["abelianize", k]);
        assert_eq!(
            serde_json::from_value::<Abelianization>(doc["abelianization"].clone()).unwrap(),
            abelianize(&p)
        );
        if let Ok(d) = alexander_polynomial(&p) {
            let r = run(&["alexander", k]);
            assert_eq!(r.out.trim().parse::<LaurentPoly>().unwrap(), d);
            let doc = structured(&["alexander", k]);
            assert_eq!(
                serde_json::from_value::<LaurentPoly>(doc["polynomial"].clone()).unwrap(),
                d
            );
        }
    }
}

#[test]
fn classify_round_trip() {
    let r = run(&["classify", "pre: 12 5 | per: 2 3", "pre: | per: 6 4"]);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines[0], "equivalent");
    let first: PrimeProfile = lines[1].strip_prefix("first: ").unwrap().parse().unwrap();
    assert_eq!(first.to_string(), "2^inf 3^inf 5^1");
    let doc = structured(&["classify", "pre: 12 5 | per: 2 3", "pre: | per: 6 4"]);
    assert_eq!(doc["first"], "pre: 12 5 | per: 2 3");
    assert_eq!(doc["equivalent"], Value::Bool(true));
}

#[test]
fn output_is_deterministic() {
    let a = run(&[
        "filtration",
        "2: s1 s1 s1",
        "3: s1 s2 s1 s2",
        "--depth",
        "2",
        "--repeat",
    ]);
    let b = run(&[
        "filtration",
        "2: s1 s1 s1",
        "3: s1 s2 s1 s2",
        "--depth",
        "2",
        "--repeat",
    ]);
    assert_eq!(a.out, b.out);
}
