//! One pass/fail line per acceptance criterion; exits non-zero on any failure.

use std::path::Path;
use std::process::ExitCode;

use modtherm_cli::bench;
use modtherm_cli::output::Node;
use modtherm_cli::verify::{self, Check};

struct Criterion {
    id: u32,
    title: &'static str,
    checks: Vec<Check>,
    extra: Vec<(String, bool)>,
}

impl Criterion {
    fn pass(&self) -> bool {
        (!self.checks.is_empty() || !self.extra.is_empty())
            && self.checks.iter().all(|c| c.pass)
            && self.extra.iter().all(|(_, ok)| *ok)
    }
}

fn suite(name: &str) -> Vec<Check> {
    verify::run(name).expect("known suite")
}

fn select(checks: &[Check], pred: impl Fn(&str) -> bool) -> Vec<Check> {
    checks.iter().filter(|c| pred(&c.check)).cloned().collect()
}

fn field(row: &Node, key: &str) -> Option<f64> {
    let Node::Obj(fields) = row else { return None };
    fields.iter().find(|(k, _)| k == key).and_then(|(_, v)| match v {
        Node::Num(x) => Some(*x),
        Node::Int(i) => Some(*i as f64),
        _ => None,
    })
}

/// At tolerance 1e-8 the Bessel expansion must use at least 100 times fewer
/// terms than the box sum, for forms with `u >= 1`.
fn kober_term_ratio() -> Vec<(String, bool)> {
    let mut out = Vec::new();
    for form in [[1.0, 0.0, 1.0], [2.0, 1.0, 3.0], [1.0, 0.5, 2.0]] {
        let rows = match bench::run("kober-vs-direct", Some(form), Some(2.0)) {
            Ok(rows) => rows,
            Err(e) => {
                out.push((format!("form {form:?}: {e}"), false));
                continue;
            }
        };
        let row = rows.iter().find(|r| field(r, "tolerance") == Some(1e-8)).expect("1e-8 row");
        let u = field(row, "u").unwrap_or(0.0);
        let ratio = field(row, "term_ratio").unwrap_or(0.0);
        let err = field(row, "kober_error").unwrap_or(f64::INFINITY);
        out.push((
            format!("form {form:?} u={u:.3}: ratio {ratio:.3e}, error {err:.1e}"),
            u >= 1.0 && ratio >= 100.0 && err <= 1e-8,
        ));
    }
    let artifact = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../bench/kober_vs_direct.csv");
    let ok = std::fs::read_to_string(&artifact).is_ok_and(|s| s.starts_with("tolerance,") && s.lines().count() > 1);
    out.push(("bench/kober_vs_direct.csv present".into(), ok));
    out
}

fn main() -> ExitCode {
    let inversion = suite("inversion");
    let moments = suite("moments");
    let thermal = suite("thermal");
    let mut cocycle = suite("cocycle");
    cocycle.extend(suite("eichler-shimura"));

    let is_special = |c: &str| c.starts_with("psi_bar_2(1)") || c.starts_with("Lerch") || c.contains("contour");
    let odd_high = |c: &str| c.starts_with("odd moment") && [", t=4", ", t=5", ", t=6"].iter().any(|t| c.ends_with(t));

    let criteria = vec![
        Criterion {
            id: 1,
            title: "zeta(3) from the weighted integral of eps_2^sub",
            checks: select(&moments, |c| c.starts_with("zeta(3)")),
            extra: vec![],
        },
        Criterion {
            id: 2,
            title: "odd moment identities for t = 4, 5, 6",
            checks: select(&moments, odd_high),
            extra: vec![],
        },
        Criterion {
            id: 3,
            title: "lemniscate value and Lerch's S_t(i)",
            checks: select(&inversion, |c| c.starts_with("psi_bar_2(1)") || c.starts_with("Lerch")),
            extra: vec![],
        },
        Criterion {
            id: 4,
            title: "exact cocycle algebra",
            checks: cocycle,
            extra: vec![],
        },
        Criterion {
            id: 5,
            title: "Bol identity",
            checks: suite("bol"),
            extra: vec![],
        },
        Criterion {
            id: 6,
            title: "inversion and translation laws",
            checks: select(&inversion, |c| !is_special(c)),
            extra: vec![],
        },
        Criterion {
            id: 7,
            title: "eps_sub against the contour integral",
            checks: select(&inversion, |c| c.contains("contour")),
            extra: vec![],
        },
        Criterion {
            id: 8,
            title: "binary Epstein expansions and the two f3 routes",
            checks: {
                let mut v = suite("kober");
                v.extend(select(&thermal, |c| c.starts_with("f3 Epstein route") || c.starts_with("f3 -> 1/240")));
                v
            },
            extra: vec![],
        },
        Criterion {
            id: 9,
            title: "massive Epstein function",
            checks: suite("massive"),
            extra: vec![],
        },
        Criterion {
            id: 10,
            title: "Guinand relation, Bessel and derivative forms",
            checks: suite("guinand"),
            extra: vec![],
        },
        Criterion {
            id: 11,
            title: "Dirichlet series modular relations and pole residues",
            checks: suite("dirichlet"),
            extra: vec![],
        },
        Criterion {
            id: 12,
            title: "thermal mode sums",
            checks: select(&thermal, |c| {
                c.starts_with("S3 mode sum") || c.starts_with("thermal zeta route") || c.starts_with("single oscillator")
            }),
            extra: vec![],
        },
        Criterion {
            id: 13,
            title: "Bessel expansion needs >= 100x fewer terms at 1e-8",
            checks: vec![],
            extra: kober_term_ratio(),
        },
    ];

    let mut all = true;
    for c in &criteria {
        let pass = c.pass();
        all &= pass;
        let worst = c
            .checks
            .iter()
            .filter_map(|k| k.residual.map(|r| r / k.tolerance.max(f64::MIN_POSITIVE)))
            .fold(0.0f64, f64::max);
        let detail = if c.checks.is_empty() {
            c.extra.iter().map(|(s, _)| s.as_str()).collect::<Vec<_>>().join("; ")
        } else {
            format!("{} checks, worst residual/tolerance {worst:.2e}", c.checks.len())
        };
        println!("criterion {:>2} {}  {}  ({detail})", c.id, if pass { "PASS" } else { "FAIL" }, c.title);
        for k in c.checks.iter().filter(|k| !k.pass) {
            println!("    failed: [{}] {} residual={:?} tol={:e} {}", k.suite, k.check, k.residual, k.tolerance, k.error.as_deref().unwrap_or(""));
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
