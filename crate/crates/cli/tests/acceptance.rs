//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dualcount_cli::suites::{self, DualityPair, IdentitySelection, SuiteReport};
use dualcount_core::grouprep::standard_groups;
use dualcount_core::lattice::{dual_pair_catalog, DEFAULT_POINT_CAP};
use dualcount_core::GroupSpec;

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_report(r: Result<SuiteReport, dualcount_cli::CliError>) -> Outcome {
    match r {
        Ok(r) if r.passed() => Outcome {
            ok: true,
            detail: format!("{} checks", r.checks),
        },
        Ok(r) => Outcome {
            ok: false,
            detail: format!(
                "{} of {} checks failed, first: {} ({})",
                r.failures.len(),
                r.checks,
                r.failures[0].item,
                r.failures[0].detail
            ),
        },
        Err(e) => Outcome {
            ok: false,
            detail: format!("aborted: {}", e),
        },
    }
}

fn within(mut o: Outcome, took: Duration, limit: Duration) -> Outcome {
    if took > limit {
        o.ok = false;
        o.detail = format!(
            "{}; took {:.1} s, limit {} s",
            o.detail,
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
    o
}

fn c1() -> Outcome {
    let t = Instant::now();
    let o = from_report(suites::duality(DualityPair::SpSo, &standard_groups(), 12));
    within(o, t.elapsed(), Duration::from_secs(60))
}

fn c2() -> Outcome {
    from_report(suites::duality(DualityPair::SuPu, &standard_groups(), 10))
}

fn exceptional() -> [GroupSpec; 3] {
    [
        GroupSpec::BinaryTetrahedral,
        GroupSpec::BinaryOctahedral,
        GroupSpec::BinaryIcosahedral,
    ]
}

fn c3() -> Outcome {
    from_report(suites::duality(DualityPair::PspSpin, &exceptional(), 10))
}

fn c4() -> Outcome {
    from_report(suites::refined(GroupSpec::BinaryOctahedral, 8))
}

fn c5() -> Outcome {
    from_report(Ok(suites::oracle(&standard_groups(), 12)))
}

fn c6() -> Outcome {
    from_report(suites::identities(&IdentitySelection::Sweep {
        only: None,
        random: 50,
        seed: 1000,
    }))
}

fn c7() -> Outcome {
    let mut total = SuiteReport {
        suite: "zn-lattice".into(),
        checks: 0,
        failures: vec![],
    };
    let mut slowest = (String::new(), Duration::ZERO);
    let mut pairs = 0;
    let mut too_slow = Vec::new();
    for p in dual_pair_catalog(8) {
        pairs += 1;
        let t = Instant::now();
        let r = suites::zn_pair(&p, 6, DEFAULT_POINT_CAP);
        let took = t.elapsed();
        if took > slowest.1 {
            slowest = (p.label(), took);
        }
        if took > Duration::from_secs(30) {
            too_slow.push(p.label());
        }
        total.checks += r.checks;
        total.failures.extend(r.failures);
    }
    let mut o = from_report(Ok(total));
    o.detail = format!(
        "{} pairs, {}, slowest {} at {:.2} s",
        pairs,
        o.detail,
        slowest.0,
        slowest.1.as_secs_f64()
    );
    if !too_slow.is_empty() {
        o.ok = false;
        o.detail = format!("{}; over 30 s: {}", o.detail, too_slow.join(", "));
    }
    o
}

fn c8() -> Outcome {
    from_report(Ok(suites::cross_oracle(4, 6, DEFAULT_POINT_CAP)))
}

fn c9() -> Outcome {
    from_report(suites::smatrix(&suites::default_smatrix_cases(), false))
}

fn c10() -> Outcome {
    from_report(Ok(suites::properties(25)))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Sp(n) and SO(2n+1) counts agree, standard groups, n <= 12, under 60 s", c1),
        ("SU(n) and PU(n) counts agree, standard groups, n <= 10", c2),
        ("PSp(n) and Spin(2n+1) counts agree for That, Ohat, Ihat, n <= 10", c3),
        ("refined Ohat sector dimensions agree across the pair, n <= 8", c4),
        ("generating-function coefficients match enumeration, n <= 12", c5),
        ("identity instances and 50 random tuples per family cleared exactly; PropY zero to order 200", c6),
        ("Z_n orbit counts agree for every dual pair of rank <= 8, n <= 6, each under 30 s", c7),
        ("lattice orbit counts match enumeration for Z_n into SU(k), PU(k), U(k), k <= 4, n <= 6", c8),
        ("S-matrix conjugation for A1..A4 (level <= 4), D4, D5, E6 (level <= 2), error < 1e-9", c9),
        ("sum of squared dims, McKay graphs, even moved counts, w2 methods agree up to dim 25", c10),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        all &= o.ok;
        println!(
            "criterion {:>2}: {} {} [{}; {:.2} s]",
            i + 1,
            if o.ok { "PASS" } else { "FAIL" },
            name,
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
