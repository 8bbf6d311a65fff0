use std::fmt::Write as _;

use satlattice::chain::ExtractionTrace;
use satlattice::constructions::{ConstructionKind, ConstructionReport};
use satlattice::freeness::Certificate;
use satlattice::lattice::render_off_chain;
use satlattice::search::{Catalog, CatalogDiff, SearchOutcome};
use satlattice::witness::AuditReport;
use satlattice::Family;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Positive,
    Negative,
}

impl Outcome {
    pub fn from_verdict(ok: bool) -> Outcome {
        if ok {
            Outcome::Positive
        } else {
            Outcome::Negative
        }
    }

    pub fn code(self) -> u8 {
        match self {
            Outcome::Positive => 0,
            Outcome::Negative => 1,
        }
    }
}

pub struct Report {
    command: &'static str,
    pub outcome: Outcome,
    result: Value,
    human: String,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// `C♭ + {…}` when the chain is present, the full member list otherwise.
fn describe(family: &Family) -> String {
    if family.contains_canonical_chain() {
        format!("C♭ + {{{}}}", render_off_chain(family))
    } else {
        format!("{{{family}}}")
    }
}

fn verdict_line(certificate: &Certificate) -> String {
    match certificate {
        Certificate::Saturated { witnesses } => format!(
            "saturated ({} outside sets, each completes an induced 2C2)",
            witnesses.len()
        ),
        Certificate::NotFree { copy } => format!("not free: contains {copy}"),
        Certificate::Unsaturated { outsider } => {
            format!("not saturated: adding {outsider} creates no induced 2C2")
        }
    }
}

impl Report {
    pub fn verify(family: &Family, certificate: Certificate, outcome: Outcome) -> Report {
        let human = format!(
            "n = {}, {} members: {}\n{}\n",
            family.n(),
            family.len(),
            describe(family),
            verdict_line(&certificate)
        );
        Report {
            command: "verify",
            outcome,
            result: json!({ "family": to_value(family), "certificate": to_value(&certificate) }),
            human,
        }
    }

    pub fn construct(report: ConstructionReport, outcome: Outcome) -> Report {
        let name = match report.spec.kind {
            ConstructionKind::Singletons => "singletons".to_string(),
            ConstructionKind::FStar { i } => format!("F*_{i}"),
        };
        let human = format!(
            "{name}, n = {}: {}\n{}\n",
            report.spec.n,
            describe(&report.family),
            verdict_line(&report.certificate)
        );
        Report {
            command: "construct",
            outcome,
            result: to_value(&report),
            human,
        }
    }

    pub fn search(outcome: &SearchOutcome, smallest: Option<usize>) -> Report {
        let mut human = String::new();
        if let Some(s) = smallest {
            let _ = writeln!(human, "smallest size: {s}");
        }
        for (size, fams) in &outcome.by_size {
            let _ = writeln!(human, "size {size}: {} families", fams.len());
        }
        let _ = writeln!(human, "{} free families visited", outcome.nodes);
        let counts: serde_json::Map<String, Value> = outcome
            .by_size
            .iter()
            .map(|(s, v)| (s.to_string(), json!(v.len())))
            .collect();
        Report {
            command: "search",
            outcome: Outcome::Positive,
            result: json!({
                "n": outcome.n,
                "min_size": outcome.min_size,
                "max_size": outcome.max_size,
                "smallest_size": smallest,
                "counts": counts,
                "nodes": outcome.nodes,
            }),
            human,
        }
    }

    pub fn enumerate(catalog: Catalog) -> Report {
        let mut human = format!(
            "# n = {}, size {}: {} families, {} duality classes ({} self-dual)\n",
            catalog.n,
            catalog.size,
            catalog.families.len(),
            catalog.classes.len(),
            catalog.self_dual_count()
        );
        for class in &catalog.classes {
            let rep = render_off_chain(&catalog.families[class.representative]);
            let partner = if class.is_self_dual() {
                "Itself".to_string()
            } else {
                render_off_chain(&catalog.families[class.partner])
            };
            let _ = writeln!(human, "{rep} | {partner}");
        }
        Report {
            command: "enumerate",
            outcome: Outcome::Positive,
            result: to_value(&catalog),
            human,
        }
    }

    pub fn analyze(report: AuditReport, outcome: Outcome) -> Report {
        let mut h = String::new();
        let _ = writeln!(
            h,
            "n = {}, |F| = {}, s = {} shackles present, k = {} off-chain",
            report.n, report.family_size, report.s, report.k
        );
        for m in &report.missing_shackles {
            let ws: Vec<String> = m.witnesses.iter().map(|w| w.to_string()).collect();
            let _ = writeln!(
                h,
                "missing S_{} = {}: {} configurations, witnesses {}",
                m.index,
                m.set,
                m.configs.len(),
                ws.join(",")
            );
        }
        for l in &report.loads {
            let kind = match l.shackle {
                Some(k) => format!("S_{k}"),
                None => format!("p={} q={}", l.span.p, l.span.q),
            };
            let load: Vec<String> = l.load.iter().map(|i| format!("S_{i}")).collect();
            let _ = writeln!(h, "load of {} ({kind}): {{{}}}", l.set, load.join(","));
        }
        for f in &report.findings {
            let _ = writeln!(h, "finding: {f:?}");
        }
        let _ = writeln!(h, "n-1 <= 2k: {}", report.inequality_holds);
        let _ = writeln!(h, "|F| >= 3n/2 + 1/2: {}", report.size_bound_holds);
        let _ = writeln!(
            h,
            "{}",
            if report.passed() {
                "audit passed"
            } else {
                "audit failed"
            }
        );
        Report {
            command: "analyze",
            outcome,
            result: to_value(&report),
            human: h,
        }
    }

    pub fn extract(family: &Family, chain: Family, trace: ExtractionTrace) -> Report {
        let mut human = String::new();
        let sets: Vec<String> = chain.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(human, "maximal chain: {}", sets.join(" ⊂ "));
        for (lower, upper) in trace.gaps() {
            let _ = writeln!(human, "gap [{lower}, {upper})");
        }
        Report {
            command: "extract-chain",
            outcome: Outcome::Positive,
            result: json!({ "family": to_value(family), "chain": to_value(&chain), "trace": to_value(&trace) }),
            human,
        }
    }

    pub fn failure(command: &'static str, message: String) -> Report {
        Report {
            command,
            outcome: Outcome::Negative,
            human: format!("{message}\n"),
            result: json!({ "error": message }),
        }
    }

    pub fn diff(catalog: &Catalog, diff: &CatalogDiff) -> Report {
        let render = |v: &[Family]| -> Vec<String> { v.iter().map(render_off_chain).collect() };
        let mismatches: Vec<Value> = diff
            .dual_mismatches
            .iter()
            .map(|m| {
                json!({
                    "line": m.line,
                    "family": render_off_chain(&m.family),
                    "stated": render_off_chain(&m.stated),
                    "computed": render_off_chain(&m.computed),
                })
            })
            .collect();
        Report {
            command: "catalog-diff",
            outcome: Outcome::from_verdict(diff.is_empty()),
            result: json!({
                "n": catalog.n,
                "size": catalog.size,
                "families": catalog.families.len(),
                "empty": diff.is_empty(),
                "missing_from_catalog": render(&diff.missing_from_catalog),
                "missing_from_golden": render(&diff.missing_from_golden),
                "dual_mismatches": mismatches,
            }),
            human: diff.to_string(),
        }
    }

    pub fn print(&self, as_json: bool) {
        if as_json {
            let doc = json!({
                "version": concat!("satlattice ", env!("CARGO_PKG_VERSION")),
                "command": self.command,
                "status": if self.outcome == Outcome::Positive { "positive" } else { "negative" },
                "result": self.result,
            });
            println!("{}", serde_json::to_string(&doc).expect("json"));
        } else {
            print!("{}", self.human);
        }
    }
}
