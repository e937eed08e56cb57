//! Report serialization: JSON, TSV and a human-readable summary.

use std::fmt::Write as _;

use crate::report::{Report, SlopeEntry, TaskResult};
use crate::run::bound_text;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

pub fn emit_report(report: &Report, format: Format) -> Result<String, serde_json::Error> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            Ok(s)
        }
        Format::Tsv => Ok(tsv(report)),
    }
}

pub fn parse_report(json: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(json)
}

fn slopes_text(s: &[SlopeEntry]) -> String {
    let parts: Vec<String> = s
        .iter()
        .map(|e| format!("{}:{}", e.slope, e.multiplicity))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Sweep tasks become tables with columns `m`, `max_slope`,
/// `weighted_max`, skipped breaks appearing as `#` comments; other tasks
/// are flattened to `key value` rows. Each task starts with a `#` comment
/// line.
fn tsv(report: &Report) -> String {
    let mut out = String::new();
    for t in &report.tasks {
        let _ = writeln!(out, "# task {}: {}", t.index, t.task);
        if let Some(e) = &t.error {
            let _ = writeln!(out, "error\t{}\t{}", e.category, e.message);
            continue;
        }
        let Some(result) = &t.result else { continue };
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{k}\t{v}");
        };
        match result {
            TaskResult::Sweep { rows, .. } => {
                kv("m", "max_slope\tweighted_max".into());
                for r in rows {
                    if r.status == "skipped" {
                        let note = r.note.as_deref().unwrap_or("");
                        kv(&format!("# skipped m={}:", r.m), note.to_string());
                        continue;
                    }
                    let max = r.max_slope.as_ref().map_or(r.status.clone(), |b| b.to_string());
                    let w = r.weighted_max.as_ref().map_or(r.status.clone(), |w| w.to_string());
                    kv(&r.m.to_string(), format!("{max}\t{w}"));
                }
            }
            TaskResult::Filtration {
                lower_jumps,
                upper_jumps,
                group_order,
                ..
            } => {
                kv("group_order", group_order.to_string());
                let l: Vec<String> = lower_jumps.iter().map(|j| j.to_string()).collect();
                let u: Vec<String> = upper_jumps.iter().map(|j| j.to_string()).collect();
                kv("lower_jumps", l.join(","));
                kv("upper_jumps", u.join(","));
            }
            TaskResult::Slopes { slopes, swan_conductor, .. } => {
                kv("slopes", slopes_text(slopes));
                kv("swan_conductor", swan_conductor.to_string());
            }
            TaskResult::Nearby {
                slopes,
                max_trivial,
                weighted,
                ..
            } => {
                kv("slopes", slopes_text(slopes));
                kv("max_trivial", max_trivial.to_string());
                let w: Vec<String> = weighted.iter().map(|r| r.to_string()).collect();
                kv("weighted", w.join(","));
            }
            TaskResult::Certificate { verdict, c_m, bound, .. } => {
                kv("verdict", verdict.clone());
                kv("c_m", c_m.to_string());
                kv("bound", bound.to_string());
            }
            TaskResult::Tameness { verdict, probes, .. } => {
                kv("verdict", verdict.clone());
                for p in probes {
                    kv(&p.cover, format!("{}\t{}", slopes_text(&p.slopes), p.holds));
                }
            }
        }
    }
    out
}

/// Human-readable summary with decimal approximations.
pub fn summary(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} over F_{} (characteristic {}), precision {}..{}",
        report.engine, report.job.q, report.job.p, report.job.initial_precision, report.job.max_precision
    );
    for t in &report.tasks {
        let line = match (&t.result, &t.error) {
            (_, Some(e)) => format!("FAILED ({}): {}", e.category, e.message),
            (Some(TaskResult::Filtration { upper_jumps, .. }), _) => {
                let u: Vec<String> = upper_jumps.iter().map(|r| format!("{:.4}", r.to_f64())).collect();
                format!("upper jumps [{}]", u.join(", "))
            }
            (Some(TaskResult::Slopes { slopes, swan_conductor, .. }), _) => format!(
                "slopes {}, Swan conductor {:.4}",
                slopes_text(slopes),
                swan_conductor.to_f64()
            ),
            (Some(TaskResult::Nearby { slopes, max_trivial, .. }), _) => format!(
                "nearby slopes {}, max trivial slope {}",
                slopes_text(slopes),
                bound_text(max_trivial)
            ),
            (Some(TaskResult::Certificate { verdict, c_m, bound, .. }), _) => format!(
                "{verdict}: C_M ≈ {:.4}, bound ≈ {:.4}",
                c_m.to_f64(),
                bound.to_f64()
            ),
            (Some(TaskResult::Sweep { rows, .. }), _) => {
                let done: Vec<_> = rows.iter().filter(|r| r.status == "ok").collect();
                let top = done
                    .iter()
                    .filter_map(|r| r.weighted_max.as_ref())
                    .map(|w| w.to_f64())
                    .fold(0.0, f64::max);
                format!(
                    "{} covers, {} skipped, largest weighted slope ≈ {top:.4}",
                    done.len(),
                    rows.iter().filter(|r| r.status == "skipped").count()
                )
            }
            (Some(TaskResult::Tameness { verdict, probes, .. }), _) => {
                format!("{verdict} over {} covers", probes.len())
            }
            (None, None) => String::new(),
        };
        let _ = writeln!(out, "[{}] {}: {line}", t.index, t.task);
    }
    out
}
