use clap::{Args, Subcommand};
use genfree::grouph::{
    f_map, parse_zh, reduce_fully, w_pair, x_relation, GroupHError, LaurentPoly, Monomial, PairElement,
    RelationVector, RightIdealJn,
};
use genfree::{Integer, A, ZH};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::{check_ceiling, CliError, CmdResult, Report};

const MAX_N: (&str, usize) = ("GENFREE_MAX_N", 24);

#[derive(Debug, Args)]
pub struct GrouphArgs {
    #[command(subcommand)]
    pub mode: Mode,
}

#[derive(Debug, Subcommand)]
pub enum Mode {
    /// Check that f kills W_n for every n up to the bound.
    VerifyKernel {
        #[arg(long)]
        max_n: u32,
    },
    /// Check the relations X(p, q) for p < q <= bound, and their last projections.
    Relations {
        #[arg(long)]
        max_q: usize,
    },
    /// Run the complexity descent on a given or random relation vectors.
    Reduce {
        /// Entries separated by `;`, e.g. "z_0 ; -t^2 x_1".
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
        #[arg(long, default_value_t = 10)]
        random: usize,
        #[arg(long, default_value_t = 4)]
        arity: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
    },
    /// Image under the collapse map x_i -> x, t -> t; with --max-n, certify
    /// that the ideal I_n collapses to zero while 1 survives.
    Collapse {
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn lift(e: GroupHError) -> CliError {
    match e {
        GroupHError::InvalidArgument(m) => CliError::Usage(m),
        GroupHError::NotARelation => CliError::Usage("vector is not in the kernel of F_n".into()),
        GroupHError::InvariantViolation(m) => CliError::Invariant(m),
        GroupHError::ResourceLimit(m) => CliError::Resource(m),
    }
}

fn random_zh(rng: &mut ChaCha8Rng) -> ZH {
    let mut u = ZH::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let m = Monomial::from_pairs((0..rng.gen_range(0..=2)).map(|_| (rng.gen_range(-2..=2), rng.gen_range(-1..=1))));
        u = u + ZH::term(rng.gen_range(-1..=1), A::monomial(m, Integer::from(rng.gen_range(-2i64..=2))));
    }
    u
}

/// A random combination of the relations `X(p, q)` with monomial coefficients.
pub fn random_relation(rng: &mut ChaCha8Rng, n: usize) -> RelationVector<Integer> {
    let mut x = RelationVector::zero(n);
    while x.is_zero() {
        for _ in 0..rng.gen_range(1..=3) {
            let q = rng.gen_range(1..n);
            let p = rng.gen_range(0..q);
            let m = Monomial::from_pairs((0..rng.gen_range(0..=1)).map(|_| (rng.gen_range(-2..=2), 1)));
            let c = ZH::term(rng.gen_range(-1..=2), LaurentPoly::monomial(m, Integer::from(rng.gen_range(1i64..=2))));
            x = x.add(&x_relation(p, q, n).expect("p < q < n").mul_right(&c)).expect("same arity");
        }
    }
    x
}

pub fn run(args: &GrouphArgs, report: &mut Report) -> CmdResult {
    match &args.mode {
        Mode::VerifyKernel { max_n } => {
            let limit = crate::report::ceiling(MAX_N.0, MAX_N.1) as u32;
            let mut terms = Vec::new();
            for n in 0..=(*max_n).min(limit) {
                let w: PairElement<Integer> = w_pair(n).map_err(lift)?;
                report.check(format!("f(W_{n}) = 0"), "0", f_map(&w));
                terms.push(w.first.term_count() + w.second.term_count());
            }
            report.data = json!({ "terms": terms });
            check_ceiling("n", MAX_N.0, MAX_N.1, *max_n as usize)?;
        }
        Mode::Relations { max_q } => {
            let limit = crate::report::ceiling(MAX_N.0, MAX_N.1);
            let q_max = (*max_q).min(limit);
            for q in 1..=q_max {
                for p in 0..q {
                    let x = x_relation::<Integer>(p, q, q + 1).map_err(lift)?;
                    let ok = x.validate().is_ok();
                    report.check(format!("X({p},{q}) in kernel"), true, ok);
                }
            }
            for n in 2..=q_max {
                for p in 0..n - 1 {
                    let x = x_relation::<Integer>(p, n - 1, n).map_err(lift)?;
                    let z = -(p as i64);
                    report.check(format!("pi_{n} X({p},{}) = z_{z}", n - 1), ZH::from_a(A::z(z)), x.last());
                }
            }
            check_ceiling("q", MAX_N.0, MAX_N.1, *max_q)?;
        }
        Mode::Reduce { vector, random, arity, seed, max_steps } => {
            let vectors: Vec<RelationVector<Integer>> = match vector {
                Some(text) => {
                    let entries = text
                        .split(';')
                        .map(|s| parse_zh::<Integer>(s.trim()))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| CliError::Usage(e.to_string()))?;
                    vec![RelationVector::new(entries).map_err(lift)?]
                }
                None => {
                    if *arity < 2 {
                        return Err(CliError::Usage("random relations need arity >= 2".into()));
                    }
                    check_ceiling("arity", MAX_N.0, MAX_N.1, *arity)?;
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    (0..*random).map(|_| random_relation(&mut rng, *arity)).collect()
                }
            };
            let mut traces = Vec::new();
            for (k, x) in vectors.iter().enumerate() {
                let (end, trace) = reduce_fully(x, *max_steps).map_err(lift)?;
                let decreasing = trace.windows(2).all(|w| w[1] < w[0]);
                report.check(format!("vector {k} reduces to zero"), true, end.is_zero());
                report.check(format!("vector {k} complexity strictly decreases"), true, decreasing);
                traces.push(trace.iter().map(|c| c.to_string()).collect::<Vec<_>>());
                report.line(format!("vector {k}: {} steps", trace.len()));
            }
            report.data = json!({ "traces": traces });
        }
        Mode::Collapse { element, max_n, samples, seed } => {
            if element.is_none() && max_n.is_none() {
                return Err(CliError::Usage("give --element or --max-n".into()));
            }
            let mut data = serde_json::Map::new();
            if let Some(text) = element {
                let u = parse_zh::<Integer>(text).map_err(|e| CliError::Usage(e.to_string()))?;
                let image = u.eval_collapse();
                report.line(format!("{u} -> {image}"));
                data.insert("image".into(), json!(image.to_string()));
            }
            if let Some(n_max) = max_n {
                check_ceiling("n", MAX_N.0, MAX_N.1, *n_max)?;
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let sample: Vec<ZH> = (0..*samples).map(|_| random_zh(&mut rng)).collect();
                for n in 1..=*n_max {
                    let cert = RightIdealJn::new(n).certificate(&sample).map_err(lift)?;
                    report.check(format!("I_{n} r collapses to 0 ({} products)", cert.ideal_products_checked), true, cert.ideal_collapses_to_zero);
                    report.check(format!("1 survives collapse (n = {n})"), true, cert.unit_survives);
                    report.check(format!("last projections (n = {n})"), true, cert.projections_ok);
                }
            }
            report.data = serde_json::Value::Object(data);
        }
    }
    Ok(())
}
