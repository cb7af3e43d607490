use lambdaq_core::verify::CHECK_IDS;
use lambdaq_core::{CheckStatus, Field, LambdaFamily, VerifyOptions};

const CONFIGS: [(&str, &str); 7] = [
    ("Q", "2"),
    ("Q", "1"),
    ("Q", "-1"),
    ("Q", "1/3"),
    ("Fp:5", "2"),
    ("Fp:3", "2"),
    ("Fp:2", "1"),
];

/// The exhaustive ideal scan is meant for the two smallest fields only.
fn expected(id: u8, field: &str) -> CheckStatus {
    if id == 10 && !matches!(field, "Fp:3" | "Fp:2") {
        CheckStatus::Skipped
    } else {
        CheckStatus::Pass
    }
}

#[test]
fn acceptance() {
    let mut bad = Vec::new();
    for (field, q) in CONFIGS {
        let fam = LambdaFamily::new(Field::parse(field, q).unwrap());
        let report = fam.verify(&[], VerifyOptions::default()).unwrap();
        for id in CHECK_IDS {
            let r = report.record(id).unwrap();
            let want = expected(id, field);
            let ok = r.status == want;
            println!(
                "[{}] criterion {id:>2} {:<28} field={field} q={q} status={}",
                if ok { "pass" } else { "FAIL" },
                r.name,
                r.status
            );
            if !ok {
                for d in &r.details {
                    println!("        {d}");
                }
                bad.push(format!("{field} q={q} criterion {id}: {}", r.status));
            }
        }
    }
    assert!(bad.is_empty(), "failing criteria: {bad:#?}");
}
