//! Executes a job. Tasks run in order; a failing task is recorded in the
//! report and does not stop the ones after it.

use std::sync::Arc;

use ramislope_core::error::Error;
use ramislope_core::extensions::{build, CoverSpec};
use ramislope_core::field::FiniteField;
use ramislope_core::nearby::{
    boundedness_certificate, family_sweep, max_trivial_nearby_slope, pushforward,
    sheaf_representation, tameness_check, tower, weighted_slopes, witness_slopes, SheafSpec,
    SweepOutcome,
};
use ramislope_core::numerics::PiecewiseLinearFn;
use ramislope_core::precision::PrecisionPolicy;
use ramislope_core::ramification::{
    coset_filtration, hasse_arf_check, RamNumber, RamificationFiltration,
};
use ramislope_core::reps::break_decomposition;

use crate::job::{Job, Task};
use crate::report::{
    rats, slope_entries, Bound, CosetJump, JobEcho, NamedCover, NamedSheaf, PiecewiseLinear,
    RamificationNumber, Rat, Report, SweepRow, TaskError, TaskReport, TaskResult, TamenessProbe,
    SCHEMA_VERSION,
};

pub fn engine_version() -> String {
    format!("ramislope {}", ramislope_core::VERSION)
}

fn category(e: &Error) -> &'static str {
    match e {
        Error::PrecisionExhausted(_) => "precision",
        Error::UnsupportedTower(_) | Error::UnsupportedCompositum(_) | Error::FieldTooSmall(_) => {
            "unsupported"
        }
        Error::Domain(_)
        | Error::TameDegree { .. }
        | Error::WildBreak { .. }
        | Error::ZeroCoefficient
        | Error::NotPureSlope(_)
        | Error::GroupMismatch
        | Error::NotAbelian => "invalid_input",
        _ => "internal",
    }
}

fn task_error(e: &Error) -> TaskError {
    TaskError {
        category: category(e).into(),
        message: e.to_string(),
    }
}

fn pl(f: &PiecewiseLinearFn) -> PiecewiseLinear {
    PiecewiseLinear {
        breakpoints: rats(f.breakpoints()),
        values: rats(&f.breakpoint_values()),
        slopes: rats(f.slopes()),
    }
}

struct Runner<'a> {
    job: &'a Job,
    field: Arc<FiniteField>,
    policy: PrecisionPolicy,
}

impl Runner<'_> {
    fn cover(&self, name: &str) -> &CoverSpec {
        self.job.cover(name).expect("validated job")
    }

    fn sheaf(&self, name: &str) -> (&CoverSpec, &SheafSpec) {
        let s = self.job.sheaf(name).expect("validated job");
        (self.cover(&s.cover), &s.spec)
    }

    fn run(&self, task: &Task) -> Result<(TaskResult, Option<i64>), Error> {
        let field = &self.field;
        match task {
            Task::Filtration { cover } => {
                let spec = self.cover(cover);
                let ((c, filt), n) = self.policy.run(|n| {
                    let c = build(field, spec, n)?;
                    let filt = RamificationFiltration::of_cover(&c)?;
                    Ok((c, filt))
                })?;
                let g = c.group();
                let ramification_numbers = (0..g.order())
                    .map(|i| RamificationNumber {
                        element: g.element(i).label.clone(),
                        value: match filt.ramification_number(i) {
                            Some(RamNumber::Finite(v)) => Some(v),
                            _ => None,
                        },
                    })
                    .collect();
                Ok((
                    TaskResult::Filtration {
                        cover: cover.clone(),
                        degree: c.degree(),
                        group_order: g.order() as u64,
                        ramification_numbers,
                        lower_jumps: filt.lower_jumps().to_vec(),
                        upper_jumps: rats(filt.upper_jumps()),
                        phi: pl(filt.phi()),
                        psi: pl(filt.psi()),
                        hasse_arf: hasse_arf_check(&filt)?,
                    },
                    Some(n),
                ))
            }
            Task::Slopes { sheaf } => {
                let (spec, s) = self.sheaf(sheaf);
                let ((dim, slopes), n) = self.policy.run(|n| {
                    let c = build(field, spec, n)?;
                    let rep = sheaf_representation(&c, s)?;
                    let filt = RamificationFiltration::of_cover(&c)?;
                    Ok((rep.dim(), break_decomposition(&rep, &filt)?))
                })?;
                Ok((
                    TaskResult::Slopes {
                        sheaf: sheaf.clone(),
                        cover: self.job.sheaf(sheaf).unwrap().cover.clone(),
                        dimension: dim,
                        swan_conductor: slopes.swan_conductor().into(),
                        slopes: slope_entries(&slopes),
                    },
                    Some(n),
                ))
            }
            Task::Nearby { cover, sheaf } => {
                let f = self.cover(cover);
                let (mono, s) = self.sheaf(sheaf);
                let ((push, max, witnesses, cosets), n) = self.policy.run(|n| {
                    let t = tower(field, f, mono, n)?;
                    let push = pushforward(&t, s)?;
                    let max = max_trivial_nearby_slope(&t)?;
                    let witnesses = witness_slopes(&push)?;
                    let cosets = coset_filtration(&push.filtration, &t.h0)?;
                    Ok((push, max, witnesses, cosets))
                })?;
                let weighted = weighted_slopes(&push.slopes, &max);
                Ok((
                    TaskResult::Nearby {
                        cover: cover.clone(),
                        sheaf: sheaf.clone(),
                        slopes: slope_entries(&push.slopes),
                        max_trivial: (&max).into(),
                        weighted: rats(&weighted),
                        witness_slopes: rats(&witnesses),
                        coset_jumps: cosets
                            .jumps
                            .iter()
                            .map(|(r, k)| CosetJump {
                                jump: r.into(),
                                cosets: *k as u64,
                            })
                            .collect(),
                    },
                    Some(n),
                ))
            }
            Task::Certificate { base_cover, sheaf } => {
                let f = self.cover(base_cover);
                let (mono, s) = self.sheaf(sheaf);
                let (c, n) = self.policy.run(|n| {
                    let t = tower(field, f, mono, n)?;
                    boundedness_certificate(&t, s)
                })?;
                Ok((
                    TaskResult::Certificate {
                        base_cover: base_cover.clone(),
                        sheaf: sheaf.clone(),
                        verdict: "inclusion holds".into(),
                        slopes: slope_entries(&c.slopes),
                        r0: c.r0.into(),
                        r_m: c.r_m.into(),
                        c_m: c.c_m.into(),
                        phi_c_m: c.phi_c_m.into(),
                        bound: c.bound.into(),
                        inclusion_bound: c.inclusion_bound.into(),
                        last_jump: c.last_jump.into(),
                        monodromy_order: c.monodromy_order as u64,
                        inclusion_holds: c.inclusion_holds,
                        trivial_beyond_bound: c.trivial_beyond_bound,
                        concavity_holds: c.concavity_holds,
                    },
                    Some(n),
                ))
            }
            Task::Sweep { p, ms, skipped, sheaf } => {
                let (mono, s) = match sheaf {
                    Some(name) => {
                        let (c, s) = self.sheaf(name);
                        (c.clone(), s.clone())
                    }
                    None => (CoverSpec::Trivial, SheafSpec::Trivial { rank: 1 }),
                };
                let mut all: Vec<u64> = ms.iter().chain(skipped).copied().collect();
                all.sort_unstable();
                let rows = family_sweep(field, &all, &mono, &s, self.policy)
                    .into_iter()
                    .map(sweep_row)
                    .collect::<Vec<_>>();
                let used = rows.iter().filter_map(|r| r.precision_used).max();
                Ok((
                    TaskResult::Sweep {
                        p: *p,
                        sheaf: sheaf.clone(),
                        rows,
                    },
                    used,
                ))
            }
            Task::Tameness { sheaf, covers } => {
                let (mono, s) = self.sheaf(sheaf);
                let specs: Vec<CoverSpec> = covers.iter().map(|c| self.cover(c).clone()).collect();
                let (r, n) = self
                    .policy
                    .run(|n| tameness_check(field, mono, s, &specs, n))?;
                let verdict = if r.consistent_with_tame {
                    "consistent with tame"
                } else {
                    "not tame"
                };
                Ok((
                    TaskResult::Tameness {
                        sheaf: sheaf.clone(),
                        verdict: verdict.into(),
                        probes: r
                            .probes
                            .iter()
                            .zip(covers)
                            .map(|(p, name)| TamenessProbe {
                                cover: name.clone(),
                                slopes: slope_entries(&p.slopes),
                                max_trivial: (&p.max_trivial).into(),
                                holds: p.holds,
                            })
                            .collect(),
                    },
                    Some(n),
                ))
            }
        }
    }
}

fn sweep_row(e: ramislope_core::nearby::SweepEntry) -> SweepRow {
    let mut row = SweepRow {
        m: e.m,
        status: "ok".into(),
        max_slope: None,
        weighted_max: None,
        slopes: Vec::new(),
        weighted: Vec::new(),
        precision_used: None,
        note: None,
    };
    match e.outcome {
        Ok(SweepOutcome::Skipped(why)) => {
            row.status = "skipped".into();
            row.note = Some(why);
        }
        Ok(SweepOutcome::Done {
            slopes,
            max_slope,
            weighted,
            weighted_max,
            precision,
        }) => {
            row.max_slope = Some((&max_slope).into());
            row.weighted_max = weighted_max.map(Rat);
            row.slopes = slope_entries(&slopes);
            row.weighted = rats(&weighted);
            row.precision_used = Some(precision);
        }
        Err(err) => {
            row.status = if err.is_precision() {
                "precision_exhausted".into()
            } else {
                "error".into()
            };
            row.note = Some(err.to_string());
        }
    }
    row
}

pub fn echo(job: &Job, policy: PrecisionPolicy) -> JobEcho {
    JobEcho {
        p: job.base.p,
        q: job.q,
        initial_precision: policy.initial,
        max_precision: policy.cap,
        covers: job
            .covers
            .iter()
            .map(|c| NamedCover {
                name: c.name.clone(),
                spec: c.spec.to_string(),
            })
            .collect(),
        sheaves: job
            .sheaves
            .iter()
            .map(|s| NamedSheaf {
                name: s.name.clone(),
                cover: s.cover.clone(),
                spec: s.spec.to_string(),
            })
            .collect(),
        tasks: job.tasks.iter().map(|t| t.to_string()).collect(),
    }
}

/// Runs every task of a validated job.
pub fn run_job(job: &Job, policy: PrecisionPolicy) -> Report {
    let field = FiniteField::with_order(job.base.p, job.q);
    let tasks = job
        .tasks
        .iter()
        .enumerate()
        .map(|(index, task)| {
            let outcome = field.as_ref().map_err(Clone::clone).and_then(|field| {
                Runner {
                    job,
                    field: field.clone(),
                    policy,
                }
                .run(task)
            });
            match outcome {
                Ok((result, precision_used)) => TaskReport {
                    index,
                    task: task.to_string(),
                    status: "ok".into(),
                    precision_used,
                    result: Some(result),
                    error: None,
                },
                Err(e) => TaskReport {
                    index,
                    task: task.to_string(),
                    status: "error".into(),
                    precision_used: None,
                    result: None,
                    error: Some(task_error(&e)),
                },
            }
        })
        .collect();
    Report {
        schema_version: SCHEMA_VERSION.into(),
        engine: engine_version(),
        job: echo(job, policy),
        tasks,
    }
}

/// Resolved `Bound` for summaries.
pub fn bound_text(b: &Bound) -> String {
    match b {
        Bound::Finite(r) => format!("{r} (≈{:.4})", r.to_f64()),
        Bound::Infinite => "infinity".into(),
    }
}
