use clap::ValueEnum;
use quasi_core::condition::{enumerate_family, make_c1, make_c2, make_c3, make_cx, RelaxationSpec};
use quasi_core::lab::{
    claim1_relaxation, classify_relaxation, classify_report, scan, verify_claim1, verify_claim2, verify_lemma1,
    verify_lemma2, verify_theorem, Example, Params, Status, VerificationReport,
};
use quasi_core::metric::{AffineMap, Point, Space, SpaceTag};
use quasi_core::ring::Rational;
use quasi_core::solver::{apriori_bound_check, picard_iterate, IterationConfig, Verdict};
use quasi_core::{Error, Exec, Result};
use serde::Serialize;

use crate::cli::{Command, ConditionArg, ExampleArg, IterateArgs, MapArg, OptSpecArgs, ScanArgs, Target, VerifyArgs};

pub enum Outcome {
    Report(VerificationReport),
    Enumerate(EnumerateReport),
    Iterate(IterateReport),
}

impl Outcome {
    pub fn status(&self) -> Status {
        match self {
            Outcome::Report(r) => r.status,
            Outcome::Enumerate(_) => Status::Pass,
            Outcome::Iterate(r) => r.status,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EnumeratedSpec {
    pub family: String,
    pub a: u32,
    pub b: u32,
    pub term: String,
    pub example: Example,
}

#[derive(Debug, Serialize)]
pub struct EnumerateReport {
    pub a_max: u32,
    pub b_max: u32,
    pub count: usize,
    pub specs: Vec<EnumeratedSpec>,
}

#[derive(Debug, Serialize)]
pub struct PointOut {
    pub space: SpaceTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Rational>,
}

impl From<&Point> for PointOut {
    fn from(p: &Point) -> Self {
        let value = match p {
            Point::Demo(v) => Some(v.clone()),
            _ => None,
        };
        PointOut { space: p.tag(), exponent: p.exponent(), value }
    }
}

#[derive(Debug, Serialize)]
pub struct StepRow {
    pub step: u64,
    pub dist_sq: Rational,
    /// `None` when no contraction constant applies.
    pub apriori_holds: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct IterateReport {
    pub subject: &'static str,
    pub params: Params,
    pub status: Status,
    pub verdict: Verdict,
    pub final_point: PointOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_point: Option<Rational>,
    pub steps: u64,
    /// `alpha²` when `0 < |alpha| < 1`.
    pub apriori_q_sq: Option<Rational>,
    pub step_distances_sq: Vec<StepRow>,
}

pub fn run(command: &Command, exec: Exec) -> Result<Outcome> {
    match command {
        Command::Verify(args) => verify(args, exec).map(Outcome::Report),
        Command::Scan(args) => run_scan(args, exec).map(Outcome::Report),
        Command::Classify(s) => Ok(Outcome::Report(classify_report(&RelaxationSpec::new(s.family, s.a, s.b)?))),
        Command::Enumerate(caps) => Ok(Outcome::Enumerate(enumerate(caps.a_max, caps.b_max))),
        Command::Iterate(args) => iterate(args).map(Outcome::Iterate),
    }
}

fn verify(args: &VerifyArgs, exec: Exec) -> Result<VerificationReport> {
    match args.target {
        Target::Claim1 => verify_claim1(args.k, args.max_exp, exec),
        Target::Claim2 => verify_claim2(&required_spec(&args.spec)?, args.max_exp, exec),
        Target::Lemma1 => verify_lemma1(args.max_exp, args.max_exp, exec),
        Target::Lemma2 => verify_lemma2(args.max_exp, args.max_exp, exec),
        Target::Theorem => verify_theorem(args.a_max, args.b_max, args.max_exp, exec),
    }
}

fn required_spec(spec: &OptSpecArgs) -> Result<RelaxationSpec> {
    match (spec.family, spec.a, spec.b) {
        (Some(f), Some(a), Some(b)) => RelaxationSpec::new(f, a, b),
        _ => Err(Error::InvalidArgument("--family, --a and --b are all required".into())),
    }
}

fn run_scan(args: &ScanArgs, exec: Exec) -> Result<VerificationReport> {
    let space = match args.example {
        ExampleArg::Pow2 => Space::Pow2,
        ExampleArg::Zeta => Space::Zeta,
    };
    let template = match args.condition {
        ConditionArg::C1 => make_c1(),
        ConditionArg::C2 => make_c2(),
        ConditionArg::C3 => make_c3(),
        ConditionArg::Cx => match args.k {
            Some(k) => make_cx(&claim1_relaxation(k)?),
            None => make_cx(&required_spec(&args.spec)?),
        },
    };
    scan(&space, &template, args.max_exp, exec)
}

fn enumerate(a_max: u32, b_max: u32) -> EnumerateReport {
    let specs: Vec<EnumeratedSpec> = enumerate_family(a_max, b_max)
        .iter()
        .map(|d| EnumeratedSpec {
            family: d.family().name().to_string(),
            a: d.a(),
            b: d.b(),
            term: d.term().to_string(),
            example: classify_relaxation(d),
        })
        .collect();
    EnumerateReport { a_max, b_max, count: specs.len(), specs }
}

fn iterate(args: &IterateArgs) -> Result<IterateReport> {
    let (space, x0) = match args.map {
        MapArg::DemoBanach => {
            let (Some(alpha), Some(beta)) = (&args.alpha, &args.beta) else {
                return Err(Error::InvalidArgument("demo-banach needs --alpha and --beta".into()));
            };
            let x0: Rational = args.x0.parse()?;
            (Space::Demo(AffineMap::new(alpha.clone(), beta.clone())), Point::Demo(x0))
        }
        MapArg::Pow2 | MapArg::Zeta => {
            let n: u64 = args
                .x0
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("x0 must be an exponent, got `{}`", args.x0)))?;
            let space = if args.map == MapArg::Pow2 { Space::Pow2 } else { Space::Zeta };
            let x0 = space.point(n);
            (space, x0)
        }
    };
    let cfg = match &args.divergence_factor {
        Some(f) => IterationConfig::new(args.max_iter, args.tol_sq.clone(), f.clone())?,
        None => IterationConfig::with_tolerance(args.max_iter, args.tol_sq.clone())?,
    };
    let out = picard_iterate(&space, &x0, &cfg)?;

    let (q_sq, fixed_point) = match &space {
        Space::Demo(map) => {
            let q_sq = &map.alpha * &map.alpha;
            (q_sq.is_unit_open().then_some(q_sq), map.fixed_point())
        }
        _ => (None, None),
    };
    let step0 = out.step_distances_sq.first().map(|d| d.value().clone());
    let rows: Vec<StepRow> = out
        .step_distances_sq
        .iter()
        .enumerate()
        .map(|(i, d)| StepRow {
            step: i as u64,
            dist_sq: d.value().clone(),
            apriori_holds: match (&q_sq, &step0) {
                (Some(q), Some(s0)) => Some(apriori_bound_check(q, s0, i as u32, d.value())),
                _ => None,
            },
        })
        .collect();
    let apriori_ok = rows.iter().all(|r| r.apriori_holds != Some(false));

    let mut params = Params::new();
    let map_name = args.map.to_possible_value().expect("no skipped variants");
    params.insert("map".into(), map_name.get_name().into());
    if let (Some(a), Some(b)) = (&args.alpha, &args.beta) {
        params.insert("alpha".into(), a.to_string().into());
        params.insert("beta".into(), b.to_string().into());
    }
    params.insert("x0".into(), args.x0.clone().into());
    params.insert("tol_sq".into(), cfg.tol_sq().to_string().into());
    params.insert("max_iter".into(), cfg.max_iter().into());
    params.insert("divergence_factor".into(), cfg.divergence_factor().to_string().into());

    Ok(IterateReport {
        subject: "ITERATE",
        params,
        status: Status::from_ok(apriori_ok),
        verdict: out.verdict,
        final_point: PointOut::from(&out.final_point),
        fixed_point,
        steps: out.steps,
        apriori_q_sq: q_sq,
        step_distances_sq: rows,
    })
}
