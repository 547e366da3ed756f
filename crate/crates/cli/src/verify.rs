//! Verification routines behind `verify-closure` and `verify-all`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use skewbisub::function::DEFAULT_ENUMERATION_CAP;
use skewbisub::oracles::{mean_of, random_box_point, random_chain, DEFAULT_LP_CAP};
use skewbisub::rational::{self, int};
use skewbisub::{
    brute_force_min, check_alpha_bisubmodular, convex_closure, decompose, extension_value, join, meet0,
    minimize, numeric, Error, FractionalPoint, Label, Labeling, MinimizeConfig, Rational, ValueOracle,
};

use crate::format::{point_to_json, report_to_json, witness_to_json};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub point: FractionalPoint,
    pub extension: Rational,
    pub closure: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSummary {
    pub trials: usize,
    pub equal: usize,
    pub first_discrepancy: Option<Discrepancy>,
}

impl ClosureSummary {
    pub fn passed(&self) -> bool {
        self.first_discrepancy.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "trials": self.trials,
            "equal": self.equal,
            "first_discrepancy": self.first_discrepancy.as_ref().map(|d| json!({
                "point": point_to_json(&d.point),
                "f_L": rational::format(&d.extension),
                "closure": rational::format(&d.closure),
            })),
        })
    }
}

/// Compares `f^L` with the LP convex closure at `trials` random box points.
pub fn verify_closure(f: &dyn ValueOracle, trials: usize, seed: u64) -> Result<ClosureSummary, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = ClosureSummary { trials, equal: 0, first_discrepancy: None };
    for _ in 0..trials {
        let x = random_box_point(&mut rng, f.arity(), f.alpha());
        let extension = extension_value(f, &x)?;
        let closure = convex_closure(f, &x)?.value;
        if extension == closure {
            summary.equal += 1;
        } else if summary.first_discrepancy.is_none() {
            summary.first_discrepancy = Some(Discrepancy { point: x, extension, closure });
        }
    }
    Ok(summary)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: &'static str,
    pub status: Status,
    pub detail: Value,
}

#[derive(Debug, Clone)]
pub struct VerifyAll {
    pub lines: Vec<CheckLine>,
}

impl VerifyAll {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.status != Status::Fail)
    }

    pub fn line(&self, name: &str) -> Option<&CheckLine> {
        self.lines.iter().find(|l| l.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checks": self.lines.iter().map(|l| json!({
                "name": l.name,
                "status": l.status.as_str(),
                "detail": l.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn skipped(name: &'static str, why: &str) -> CheckLine {
    CheckLine { name, status: Status::Skipped, detail: json!(why) }
}

/// Largest arity for the exhaustive lattice-identity sweep (`9^5` pairs).
const IDENTITY_MAX_ARITY: usize = 5;

/// Runs every property the instance supports at its size.
pub fn verify_all(f: &dyn ValueOracle, seed: u64) -> Result<VerifyAll, Error> {
    let n = f.arity();
    let alpha = f.alpha().clone();
    let mut lines = Vec::new();
    let enumerable = 3usize.checked_pow(n as u32).is_some_and(|s| s <= DEFAULT_ENUMERATION_CAP);

    if enumerable {
        let w = check_alpha_bisubmodular(f)?;
        lines.push(CheckLine {
            name: "check",
            status: pass_if(w.is_none()),
            detail: w.as_ref().map_or(json!("alpha-bisubmodular"), witness_to_json),
        });
    } else {
        lines.push(skipped("check", "arity above the enumeration cap"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rounds = 1000;
    let mut recovered = 0;
    for _ in 0..rounds {
        let chain = random_chain(&mut rng, n);
        let x = FractionalPoint::new(mean_of(&chain, &alpha), alpha.clone())?;
        if decompose(&x).atoms() == chain.as_slice() {
            recovered += 1;
        }
    }
    lines.push(CheckLine {
        name: "decomposition-round-trip",
        status: pass_if(recovered == rounds),
        detail: json!({ "chains": rounds, "recovered": recovered }),
    });

    if n <= IDENTITY_MAX_ARITY {
        let mut failures = 0usize;
        let mut pairs = 0usize;
        let a_val = alpha.value();
        for a in Labeling::all(n) {
            let na = numeric(&a, &alpha);
            for b in Labeling::all(n) {
                let nb = numeric(&b, &alpha);
                let m = numeric(&meet0(&a, &b)?, &alpha);
                let j0 = numeric(&join(&a, &b, Label::Zero)?, &alpha);
                let j1 = numeric(&join(&a, &b, Label::Pos)?, &alpha);
                let ok = (0..n).all(|j| {
                    &m.coords()[j] + a_val * &j0.coords()[j] + (int(1) - a_val) * &j1.coords()[j]
                        == &na.coords()[j] + &nb.coords()[j]
                });
                failures += usize::from(!ok);
                pairs += 1;
            }
        }
        lines.push(CheckLine {
            name: "lattice-identity",
            status: pass_if(failures == 0),
            detail: json!({ "pairs": pairs, "failures": failures }),
        });
    } else {
        lines.push(skipped("lattice-identity", "arity above 5"));
    }

    if 3usize.checked_pow(n as u32).is_some_and(|s| s <= DEFAULT_LP_CAP) {
        let summary = verify_closure(f, 20, seed)?;
        lines.push(CheckLine { name: "closure", status: pass_if(summary.passed()), detail: summary.to_json() });
    } else {
        lines.push(skipped("closure", "arity above the LP cap"));
    }

    if enumerable {
        let (argmin, min) = brute_force_min(f)?;
        let report = minimize(f, &MinimizeConfig { seed, ..Default::default() })?;
        lines.push(CheckLine {
            name: "brute-force-vs-minimize",
            status: pass_if(report.value == min),
            detail: json!({
                "brute_force": { "minimizer": argmin.to_string(), "value": rational::format(&min) },
                "minimize": report_to_json(&report),
            }),
        });
    } else {
        lines.push(skipped("brute-force-vs-minimize", "arity above the enumeration cap"));
    }

    Ok(VerifyAll { lines })
}
