//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use supersym::suites;
use supersym_core::checks::{self, Family};
use supersym_core::generic;
use supersym_core::report::Report;
use supersym_core::scalar::{int, rat};
use supersym_core::spar::{enumerate_sector, sectors_up_to, Sector};
use supersym_core::transforms::Algebra;
use supersym_core::{Basis, RatFunc};

const LIST_211: [&str; 11] = [
    "[2b]",
    "[2o,0u]",
    "[2u,0o]",
    "[2,0b]",
    "[1b,1]",
    "[2,0o,0u]",
    "[1o,1u]",
    "[1o,1,0u]",
    "[1u,1,0o]",
    "[1,1,0b]",
    "[1,1,0o,0u]",
];

struct Outcome {
    reports: Vec<Report>,
    extra: Vec<String>,
}

impl From<Vec<Report>> for Outcome {
    fn from(reports: Vec<Report>) -> Self {
        Outcome { reports, extra: Vec::new() }
    }
}

fn census() -> Outcome {
    let mut extra = Vec::new();
    let out = Command::new(env!("CARGO_BIN_EXE_supersym"))
        .args(["spar", "list", "--sector", "2,1,1"])
        .output()
        .expect("binary runs");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or_default();
    let listed: Vec<&str> = v["superpartitions"]
        .as_array()
        .map(|a| a.iter().filter_map(|s| s.as_str()).collect())
        .unwrap_or_default();
    if listed != LIST_211 {
        extra.push(format!("spar list 2,1,1 gave {listed:?}"));
    }
    let lib: Vec<String> = enumerate_sector(Sector::new(2, 1, 1)).iter().map(|s| s.to_string()).collect();
    if lib != LIST_211 {
        extra.push(format!("enumeration gave {lib:?}"));
    }
    Outcome { reports: vec![checks::census(6, 3, 3)], extra }
}

fn oracle() -> Outcome {
    let mut r = suites::products(4, 2);
    r.extend(suites::generators(5));
    r.into()
}

fn duality() -> Outcome {
    let one = Algebra::new(int(1));
    let mut r: Vec<Report> = sectors_up_to(4, 2, 2)
        .iter()
        .map(|&s| checks::duality(&one, s, Basis::H))
        .collect();
    let s = Sector::new(2, 1, 1);
    for a in [int(2), rat(1, 3), rat(5, 7)] {
        r.push(checks::duality(&Algebra::new(a), s, Basis::G));
    }
    r.push(checks::duality(&Algebra::new(RatFunc::var()), s, Basis::G));
    r.into()
}

fn kernel() -> Outcome {
    vec![checks::kernel(&int(1), 3, 2, 1), checks::kernel(&int(2), 3, 2, 1)].into()
}

fn involution() -> Outcome {
    let one = Algebra::new(int(1));
    let mut r = Vec::new();
    for s in sectors_up_to(4, 2, 2) {
        r.push(checks::involution_squared(&one, s));
        r.push(checks::involution_power_sums(&one, s));
    }
    r.push(checks::involution_generators(&one, 4));
    r.push(checks::alpha_involution(&Algebra::new(int(2)), Sector::new(3, 1, 1)));
    r.push(checks::alpha_involution(&Algebra::new(RatFunc::var()), Sector::new(3, 1, 1)));
    r.into()
}

fn table2() -> Outcome {
    let one = Algebra::new(int(1));
    let mut r = vec![checks::table2(&one, 5), checks::genfun_identities(&one, 5)];
    for f in [Family::Complete, Family::Elementary, Family::PowerSum] {
        r.push(checks::master_operator(f, 3, 5));
    }
    r.into()
}

fn triangularity() -> Outcome {
    suites::triangularity(4).into()
}

fn generic_n() -> Outcome {
    let one = Algebra::new(int(1));
    let sectors = sectors_up_to(3, 2, 2);
    let mut r: Vec<Report> = sectors.iter().map(|&s| generic::specialization(&one, s)).collect();
    r.push(generic::n_kernel(3, 3, 1, 2));
    for s in generic::n_sectors(3, 1, 2) {
        r.push(generic::n_duality(&s));
    }
    r.push(generic::norm_reductions(&sectors_up_to(4, 2, 2)));
    r.into()
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 sector census", census, Some(Duration::from_secs(1))),
        ("2 golden product", || vec![checks::golden_product()].into(), None),
        ("3 worked example", || vec![checks::worked_example()].into(), None),
        ("4 oracle differential suite", oracle, Some(Duration::from_secs(60))),
        ("5 duality", duality, None),
        ("6 kernel", kernel, Some(Duration::from_secs(120))),
        ("7 involution", involution, None),
        ("8 table and generating functions", table2, None),
        ("9 triangularity", triangularity, None),
        ("10 generic N", generic_n, None),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let t = Instant::now();
        let out = run();
        let dt = t.elapsed();
        let bad: Vec<&Report> = out.reports.iter().filter(|r| !r.passed()).collect();
        let slow = budget.is_some_and(|b| dt > b);
        let pass = bad.is_empty() && out.extra.is_empty() && !slow;
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {} reports, {:.2?}",
            if pass { "PASS" } else { "FAIL" },
            out.reports.len(),
            dt
        );
        for r in bad.iter().take(3) {
            println!("    {} {}: {:?}", r.check, r.sector, r.mismatches.iter().take(3).collect::<Vec<_>>());
        }
        for e in &out.extra {
            println!("    {e}");
        }
        if slow {
            println!("    over budget {:?}", budget.unwrap());
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
