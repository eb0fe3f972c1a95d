//! The `twinefold` command line.
//!
//! Weights are read in fundamental-weight coordinates of the base group and
//! points of `𝔱^κ` in simple-coroot coordinates of the base group.

pub mod output;
pub mod verify;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};

use crate::alcove::{fold_to_alcove, fundamental_alcove, stabilizer_datum, AlcoveNode};
use crate::error::{Error, Result};
use crate::folding::{fold, parse_automorphism, FoldingCase, FoldingContext};
use crate::fusion::{fusion_table_with, DEFAULT_TABLE_BUDGET};
use crate::par::Parallelism;
use crate::rational::{int, parse_rational, RatVec, Rational};
use crate::rootcore::{lattice_quotient, parse_datum, Lattice};
use crate::twining::{adjoint_oracle, random_regular_points, Twining};

use output::*;
use verify::{parse_suite, Suite, VerifyOptions};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(name = "twinefold", version, about = "Folded root systems, twining characters and twining fusion rings")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for the random rational points used in numeric checks.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Job {
    /// Base type and rank, e.g. A5, D4, E6.
    pub group: String,
    /// Diagram automorphism: id, flip, rot, rot2 or swapNM.
    pub automorphism: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Folded and orbit root systems, finite groups and lattice identities.
    Fold {
        #[command(flatten)]
        job: Job,
    },
    /// Walls, ceiling and vertices of the fundamental alcove.
    Alcove {
        #[command(flatten)]
        job: Job,
        /// A point to fold into the alcove, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Centralizer data at a point of the alcove.
    Stabilizer {
        #[command(flatten)]
        job: Job,
        /// Comma-separated simple-coroot coordinates.
        #[arg(allow_hyphen_values = true)]
        point: String,
        /// Fold the point into the alcove first.
        #[arg(long)]
        fold: bool,
    },
    /// The twining character of a fixed dominant weight.
    Char {
        #[command(flatten)]
        job: Job,
        /// Comma-separated Dynkin labels.
        weight: String,
    },
    /// Evaluate a twining character by the Jantzen formula and by its polynomial.
    Eval {
        #[command(flatten)]
        job: Job,
        /// Comma-separated Dynkin labels.
        weight: String,
        /// Comma-separated simple-coroot coordinates; seeded random regular
        /// points are used when absent.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Number of random points.
        #[arg(long, default_value_t = 5)]
        points: usize,
    },
    /// The level-k twining fusion ring.
    Fusion {
        #[command(flatten)]
        job: Job,
        #[arg(long)]
        level: u32,
        /// Largest number of coefficients to compute.
        #[arg(long, default_value_t = DEFAULT_TABLE_BUDGET)]
        budget: usize,
        /// Run on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
    /// Run the self-verification suites.
    Verify {
        /// tables, lattices, characters, fusion or all; empty means all.
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        /// Random points per folding in the character suite.
        #[arg(long, default_value_t = 10)]
        points: usize,
    },
}

/// Exit code and emitted text of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn parse_error(message: String) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: message }
    }
}

/// Failures are split by stage: bad input is a parse error, anything raised
/// afterwards is a computation error.
enum Failure {
    Parse(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn parse_stage<T>(r: Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| Failure::Parse(e.to_string()))
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::parse_error(text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    let format = cli.format;
    match execute(&cli) {
        Ok((text, true)) => Outcome::ok(text),
        Ok((text, false)) => Outcome { code: 1, stdout: text, stderr: "verification failed\n".into() },
        Err(Failure::Parse(m)) => Outcome::parse_error(format!("error: {m}\n")),
        Err(Failure::Compute(e)) => {
            Outcome { code: 1, stdout: render(&ErrorDoc::from(&e), format), stderr: format!("error: {e}\n") }
        }
    }
}

fn job_context(job: &Job) -> std::result::Result<FoldingContext, Failure> {
    let base = parse_stage(parse_datum(&job.group))?;
    let kappa = parse_stage(parse_automorphism(&base, &job.automorphism))?;
    Ok(fold(&base, &kappa)?)
}

fn parse_rationals(s: &str) -> std::result::Result<Vec<Rational>, Failure> {
    parse_stage(s.split(',').map(|x| parse_rational(x.trim())).collect())
}

fn parse_labels(ctx: &FoldingContext, s: &str) -> std::result::Result<Vec<i64>, Failure> {
    let labels: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Failure::Parse(format!("weight label {x:?} is not an integer"))))
        .collect::<std::result::Result<_, _>>()?;
    if labels.len() != ctx.base.rank() {
        return Err(Failure::Parse(format!("expected {} weight labels, got {}", ctx.base.rank(), labels.len())));
    }
    Ok(labels)
}

fn simple_coroot_scales(ctx: &FoldingContext) -> Vec<Rational> {
    (0..ctx.base.rank()).map(|i| int(2) / &ctx.base.gram()[(i, i)]).collect()
}

/// Simple-coroot coordinates to simple-root coordinates.
fn parse_point(ctx: &FoldingContext, s: &str) -> std::result::Result<RatVec, Failure> {
    let c = parse_rationals(s)?;
    if c.len() != ctx.base.rank() {
        return Err(Failure::Parse(format!("expected {} point coordinates, got {}", ctx.base.rank(), c.len())));
    }
    Ok(RatVec(c.iter().zip(simple_coroot_scales(ctx)).map(|(x, s)| x * s).collect()))
}

fn point_view(ctx: &FoldingContext, v: &RatVec) -> PointView {
    let co = RatVec(v.iter().zip(simple_coroot_scales(ctx)).map(|(x, s)| x / s).collect());
    PointView { coroot_coordinates: vector(&co), root_coordinates: vector(v) }
}

fn execute(cli: &Cli) -> std::result::Result<(String, bool), Failure> {
    let f = cli.format;
    let text = match &cli.command {
        Command::Fold { job } => render(&fold_doc(&job_context(job)?, job)?, f),
        Command::Alcove { job, point } => {
            let ctx = job_context(job)?;
            let point = point.as_deref().map(|p| parse_point(&ctx, p)).transpose()?;
            render(&alcove_doc(&ctx, job, point)?, f)
        }
        Command::Stabilizer { job, point, fold } => {
            let ctx = job_context(job)?;
            let xi = parse_point(&ctx, point)?;
            render(&stabilizer_doc(&ctx, job, xi, *fold)?, f)
        }
        Command::Char { job, weight } => {
            let ctx = job_context(job)?;
            let labels = parse_labels(&ctx, weight)?;
            render(&char_doc(&ctx, job, &labels)?, f)
        }
        Command::Eval { job, weight, point, points } => {
            let ctx = job_context(job)?;
            let labels = parse_labels(&ctx, weight)?;
            let (xs, seed) = match point {
                Some(p) => (vec![parse_point(&ctx, p)?], None),
                None => (random_regular_points(&ctx, *points, cli.seed), Some(cli.seed)),
            };
            render(&eval_doc(&ctx, job, &labels, &xs, seed)?, f)
        }
        Command::Fusion { job, level, budget, sequential } => {
            let ctx = job_context(job)?;
            let par = if *sequential { Parallelism::Sequential } else { Parallelism::default() };
            render(&fusion_doc(&ctx, job, *level, *budget, par)?, f)
        }
        Command::Verify { suite, points } => {
            let report = verify::run(*suite, VerifyOptions { seed: cli.seed, points: *points });
            let pass = report.all_pass();
            return Ok((render(&report, f), pass));
        }
    };
    Ok((text, true))
}

fn case_name(case: FoldingCase) -> &'static str {
    match case {
        FoldingCase::Trivial => "trivial",
        FoldingCase::Dual => "dual",
        FoldingCase::EvenA { .. } => "even_a",
    }
}

fn fold_doc(ctx: &FoldingContext, job: &Job) -> Result<FoldDoc> {
    let orbit = &ctx.orbit;
    let (fixed_label, pi1) = ctx.fixed_subgroup_data()?;
    let l = &ctx.lattices;
    let pairs: [(&Lattice, &Lattice, &str); 5] = [
        (&l.lambda_fixed, &l.p_lambda, "Λ_(κ)/Λ^κ"),
        (&l.q_f_co, &l.lambda_fixed, "Λ^κ/Q_F^∨"),
        (&l.p_weights, &l.p_f, "P_F/p(Λ*)"),
        (&l.p_coweights, &l.p_o_co, "P_O^∨/p(P^∨)"),
        (&l.q_o, &l.q_fixed, "Q^κ/Q_O"),
    ];
    let lattice_indices = pairs
        .iter()
        .filter_map(|(sub, sup, name)| {
            lattice_quotient(sub, sup).ok().map(|g| IndexView { quotient: name.to_string(), group: (&g).into() })
        })
        .collect();
    Ok(FoldDoc {
        group: ctx.base.label().to_string(),
        automorphism: job.automorphism.clone(),
        permutation: ctx.kappa.permutation().iter().map(|i| i + 1).collect(),
        order: ctx.kappa.order(),
        case: case_name(ctx.case).into(),
        fixed_dim: ctx.fixed_dim,
        moving_dim: ctx.moving_dim,
        folded: FoldedView {
            label: ctx.folded.label.clone(),
            root_count: ctx.folded.roots.len(),
            simple_roots: vectors(&ctx.folded.simple_roots),
            c_simple_roots: ctx.folded.c_simple_roots.as_deref().map(vectors),
        },
        orbit: OrbitView {
            label: orbit.datum.label().to_string(),
            rank: orbit.datum.rank(),
            simple_roots: vectors(orbit.datum.simple_roots()),
            highest_root: vector(&orbit.highest_root),
            highest_short_root: vector(&orbit.highest_short_root),
            half_sum: vector(&orbit.half_sum),
            weyl_order: ctx.orbit_weyl_order,
        },
        fixed_intersection: (&ctx.fixed_intersection).into(),
        outer_weyl_order: ctx.outer_weyl_order,
        fixed_subgroup: FixedSubgroupView { label: fixed_label, pi1: (&pi1).into() },
        lattice_indices,
        lattice_checks: l.checks().into_iter().map(|c| CheckView { statement: c.statement, holds: c.holds }).collect(),
    })
}

fn alcove_doc(ctx: &FoldingContext, job: &Job, point: Option<RatVec>) -> Result<AlcoveDoc> {
    let a = fundamental_alcove(ctx);
    let fold = match point {
        Some(xi) => {
            let (x, g) = fold_to_alcove(ctx, &xi)?;
            Some(FoldedPointView {
                input: point_view(ctx, &xi),
                image: point_view(ctx, &x),
                linear_word: g.linear.word().iter().map(|i| i + 1).collect(),
                translation: vector(&g.translation),
                sign: g.sign(),
            })
        }
        None => None,
    };
    Ok(AlcoveDoc {
        group: ctx.base.label().to_string(),
        automorphism: job.automorphism.clone(),
        walls: vectors(&a.walls),
        ceiling: vector(&a.ceiling),
        vertices: a.vertices.iter().map(|v| point_view(ctx, v)).collect(),
        fold,
    })
}

fn stabilizer_doc(ctx: &FoldingContext, job: &Job, xi: RatVec, fold: bool) -> Result<StabilizerDoc> {
    let (x, folded_from) = if fold {
        let (x, _) = fold_to_alcove(ctx, &xi)?;
        (x, Some(point_view(ctx, &xi)))
    } else {
        (xi, None)
    };
    let s = stabilizer_datum(ctx, &x)?;
    Ok(StabilizerDoc {
        group: ctx.base.label().to_string(),
        automorphism: job.automorphism.clone(),
        point: point_view(ctx, &x),
        folded_from,
        surviving_nodes: s
            .surviving_nodes
            .iter()
            .map(|n| match n {
                AlcoveNode::Simple(i) => i + 1,
                AlcoveNode::Lowest => 0,
            })
            .collect(),
        subsystem_type: s.subsystem_label,
        subsystem_simple_roots: vectors(&s.subsystem_simple),
        subsystem_root_count: s.subsystem_roots.len(),
        centralizer_type: s.dual_label,
        centralizer_simple_roots: vectors(&s.dual_simple),
        pi1: (&s.pi1).into(),
        pi1_free_rank: s.pi1_free_rank,
    })
}

fn char_doc(ctx: &FoldingContext, job: &Job, labels: &[i64]) -> Result<CharDoc> {
    let tw = Twining::new(ctx)?;
    let chi = tw.character(labels)?;
    let terms: Vec<TermView> = chi
        .poly
        .terms()
        .iter()
        .map(|(k, &m)| TermView { orbit_labels: k.clone(), base_labels: ctx.base_labels(k), multiplicity: m })
        .collect();
    Ok(CharDoc {
        group: ctx.base.label().to_string(),
        automorphism: job.automorphism.clone(),
        base_labels: chi.base_labels,
        orbit_labels: chi.orbit_labels,
        highest_weight: vector(&chi.highest_weight),
        value_at_identity: chi.poly.mass(),
        term_count: terms.len(),
        terms,
    })
}

fn eval_doc(ctx: &FoldingContext, job: &Job, labels: &[i64], xs: &[RatVec], seed: Option<u64>) -> Result<EvalDoc> {
    let tw = Twining::new(ctx)?;
    let chi = tw.character(labels)?;
    let adjoint = ctx.base.integral_labels(ctx.base.highest_root())? == labels;
    let points = xs
        .iter()
        .map(|xi| {
            let j = tw.jantzen_eval(labels, xi)?;
            let p = tw.evaluate(&chi.poly, xi)?;
            let oracle = if adjoint { Some(adjoint_oracle(ctx, xi)?) } else { None };
            Ok(EvalPoint {
                point: point_view(ctx, xi),
                jantzen: complex(j),
                polynomial: complex(p),
                adjoint_oracle: oracle.map(complex),
                deviation: (j - p).norm(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(EvalDoc {
        group: ctx.base.label().to_string(),
        automorphism: job.automorphism.clone(),
        base_labels: chi.base_labels,
        orbit_labels: chi.orbit_labels,
        seed,
        points,
    })
}

fn fusion_doc(ctx: &FoldingContext, job: &Job, level: u32, budget: usize, par: Parallelism) -> Result<FusionDoc> {
    let t = fusion_table_with(ctx, level, budget, par)?;
    let n = t.size();
    let mut entries = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let coefficient = t.coefficients[a][b][c];
                if coefficient != 0 {
                    entries.push(FusionEntry { lambda: a, mu: b, nu: c, coefficient });
                }
            }
        }
    }
    let lv = &t.level;
    Ok(FusionDoc {
        group: ctx.base.label().to_string(),
        automorphism: job.automorphism.clone(),
        level,
        dual_coxeter: lv.dual_coxeter,
        rescale: rational(&lv.rescale),
        comarks: lv.comarks.clone(),
        t_group_order: lv.t_group_order,
        weights: lv
            .level_weights
            .iter()
            .zip(&lv.base_weights)
            .enumerate()
            .map(|(index, (o, b))| LevelWeightView { index, orbit_labels: o.clone(), base_labels: b.clone() })
            .collect(),
        max_residual: t.max_residual,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn json(args: &[&str]) -> (i32, Value) {
        let mut argv = vec!["twinefold"];
        argv.extend_from_slice(args);
        let out = run(argv);
        let v = if out.stdout.is_empty() { Value::Null } else { serde_json::from_str(&out.stdout).unwrap() };
        (out.code, v)
    }

    #[test]
    fn fold_a5() {
        let (code, v) = json(&["fold", "A5", "flip"]);
        assert_eq!(code, 0);
        assert_eq!(v["folded"]["type"], "C3");
        assert_eq!(v["orbit"]["type"], "B3");
        assert_eq!(v["fixed_intersection"]["order"], 4);
    }

    #[test]
    fn parse_errors_exit_with_two() {
        assert_eq!(run(["twinefold", "fold", "Q7", "flip"]).code, 2);
        assert_eq!(run(["twinefold", "char", "A2", "flip", "1,x"]).code, 2);
        assert_eq!(run(["twinefold", "bogus"]).code, 2);
    }

    #[test]
    fn computation_errors_are_structured() {
        let (code, v) = json(&["char", "A2", "flip", "1,0"]);
        assert_eq!(code, 1);
        assert_eq!(v["error"]["kind"], "not_fixed");
    }

    #[test]
    fn points_use_coroot_coordinates() {
        let (code, v) = json(&["stabilizer", "A2", "flip", "1/8,1/8"]);
        assert_eq!(code, 0);
        assert_eq!(v["point"]["root_coordinates"], serde_json::json!(["1/8", "1/8"]));
        let (code, v) = json(&["alcove", "A2", "flip", "--point", "-1/4,-1/4"]);
        assert_eq!(code, 0);
        assert_eq!(v["fold"]["image"]["coroot_coordinates"], serde_json::json!(["1/4", "1/4"]));
    }
}
