//! Argument handling for the `chainforge` binary, kept in a library so the
//! integration tests can drive it without spawning a process.

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use serde::Serialize;

use chainforge::constructor::{
    canonical_order, expand_long, expand_pure, expand_short, BlockArray, TaggedShortArray,
};
use chainforge::semantics::{
    assoc_branch, leaf_of, pred_profile, succ_rank, weight_of, ElementAddress,
};
use chainforge::strings::IndexString;
use chainforge::tails::{
    check_conditions, check_with_oracle, cutoff_tails, tail_array, tail_chain,
};
use chainforge::trees::{build_tree, lf, render_ascii, rwt, weight_seq};
use chainforge::verify::{run_all, run_suite, suite_names, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "chainforge",
    version,
    about = "Index-string trees, chain constructors and their tails"
)]
struct Cli {
    /// Print machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Render Tree(S)
    Tree { s: IndexString },
    /// Leaf count lf(S)
    Lf { s: IndexString },
    /// Weight sequence of S
    Wt {
        s: IndexString,
        /// Also print the set of weights
        #[arg(long)]
        rwt: bool,
    },
    /// Expand A(S) over a block array, a tagged short array, or the point
    Expand {
        s: IndexString,
        #[arg(long, conflicts_with = "short")]
        blocks: Option<BlockArray>,
        /// Tagged short array such as 0:U0,1:U1,3:U3
        #[arg(long)]
        short: Option<TaggedShortArray>,
    },
    /// Tail array and tail chain of A(S)[L]
    Tail {
        s: IndexString,
        #[arg(long)]
        blocks: BlockArray,
        /// Also list the tail at every cut-off
        #[arg(long)]
        cutoffs: bool,
    },
    /// Check the uniformity conditions for A(S)[L]
    Check {
        s: IndexString,
        #[arg(long)]
        blocks: BlockArray,
        /// Do not declare the first tails of the blocks isomorphic
        #[arg(long)]
        no_tail_iso: bool,
        /// Also run the cut-off tail oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Describe an element of A(S), e.g. "I(S2(I(.)))"
    Elem {
        s: IndexString,
        address: ElementAddress,
    },
    /// Run the property suites
    Verify {
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        bound: u32,
        #[arg(long, default_value_t = 3)]
        classes: u32,
        /// Random samples for the sampled suites
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Run only the named suite
        #[arg(long)]
        suite: Option<String>,
    },
}

/// Runs one invocation; returns the exit code and everything to print.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match execute(cli.command, cli.json) {
        Ok(out) => out,
        Err(msg) => (EXIT_USAGE, format!("error: {msg}\n")),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn joined<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Serialize)]
struct WeightsOut {
    string: String,
    lf: usize,
    wt: Vec<u32>,
    rwt: Vec<u32>,
}

#[derive(Serialize)]
struct ExpandOut {
    string: String,
    blocks: Option<String>,
    term: String,
    canonical_order: Option<String>,
}

#[derive(Serialize)]
struct TailOut {
    string: String,
    tail_string: String,
    tail_array: String,
    tail_chain: String,
    cutoffs: Option<Vec<String>>,
}

#[derive(Serialize)]
struct ElemOut {
    string: String,
    address: String,
    profile: Vec<bool>,
    succ_rank: usize,
    weight: u32,
    leaf: usize,
    branch: Vec<String>,
}

fn execute(cmd: Command, as_json: bool) -> Result<(i32, String), String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let out = match cmd {
        Command::Tree { s } => {
            let tree = build_tree(&s);
            if as_json {
                json(&tree)
            } else {
                render_ascii(&tree)
            }
        }
        Command::Lf { s } | Command::Wt { s, .. } if as_json => json(&WeightsOut {
            string: s.to_string(),
            lf: lf(&s),
            wt: weight_seq(&s).0,
            rwt: rwt(&s).into_iter().collect(),
        }),
        Command::Lf { s } => format!("{}\n", lf(&s)),
        Command::Wt { s, rwt: with_rwt } => {
            let mut out = format!("{}\n", weight_seq(&s));
            if with_rwt {
                writeln!(out, "rwt {}", joined(rwt(&s))).expect("string write");
            }
            out
        }
        Command::Expand { s, blocks, short } => {
            let (term, order) = match (&blocks, &short) {
                (Some(mm), _) => (expand_long(&s, mm).map_err(|e| err(&e))?, None),
                (None, Some(uu)) => {
                    let term = expand_short(&s, uu).map_err(|e| err(&e))?;
                    let order = canonical_order(&s, uu).map_err(|e| err(&e))?;
                    (term, Some(joined(order)))
                }
                (None, None) => (expand_pure(&s), None),
            };
            if as_json {
                json(&ExpandOut {
                    string: s.to_string(),
                    blocks: blocks
                        .map(|b| b.to_string())
                        .or(short.map(|u| u.to_string())),
                    term: term.to_string(),
                    canonical_order: order,
                })
            } else {
                format!("{term}\n")
            }
        }
        Command::Tail { s, blocks, cutoffs } => {
            let fa = tail_array(&s, &blocks).map_err(|e| err(&e))?;
            let chain = match tail_chain(&s, &blocks) {
                Ok(c) => c,
                Err(e) => return Ok((EXIT_VIOLATION, format!("{e}\n"))),
            };
            let cuts = if cutoffs {
                Some(
                    cutoff_tails(&s, &blocks)
                        .map_err(|e| err(&e))?
                        .iter()
                        .map(|t| t.to_string())
                        .collect::<Vec<_>>(),
                )
            } else {
                None
            };
            let record = TailOut {
                string: s.to_string(),
                tail_string: s.tail_string().to_string(),
                tail_array: fa.to_string(),
                tail_chain: chain.to_string(),
                cutoffs: cuts,
            };
            if as_json {
                json(&record)
            } else {
                let mut out = format!("f_s {}\nf A {}\n", record.tail_array, record.tail_chain);
                for (i, t) in record.cutoffs.iter().flatten().enumerate() {
                    writeln!(out, "cut {i} {t}").expect("string write");
                }
                out
            }
        }
        Command::Check {
            s,
            blocks,
            no_tail_iso,
            oracle,
        } => {
            let report = if oracle {
                check_with_oracle(&s, &blocks, !no_tail_iso)
            } else {
                check_conditions(&s, &blocks, !no_tail_iso)
            }
            .map_err(|e| err(&e))?;
            let code = if report.holds() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            };
            let text = if as_json {
                json(&report)
            } else {
                let show = |ok: bool, w: Option<(usize, usize)>| match (ok, w) {
                    (true, _) => "pass".to_string(),
                    (false, Some((i, j))) => format!("fail at ({i},{j})"),
                    (false, None) => "fail".to_string(),
                };
                let mut out = format!(
                    "condition (a): {}\ncondition (b): {}\n",
                    show(report.condition_a, report.witnesses.a),
                    show(report.condition_b, report.witnesses.b)
                );
                if let Some(u) = report.oracle_uniform {
                    writeln!(out, "oracle: {}", if u { "uniform" } else { "not uniform" })
                        .expect("string write");
                }
                out
            };
            return Ok((code, text));
        }
        Command::Elem { s, address } => {
            let record = ElemOut {
                string: s.to_string(),
                address: address.to_string(),
                profile: pred_profile(&s, &address).map_err(|e| err(&e))?.0,
                succ_rank: succ_rank(&s, &address).map_err(|e| err(&e))?,
                weight: weight_of(&s, &address).map_err(|e| err(&e))?,
                leaf: leaf_of(&s, &address).map_err(|e| err(&e))?,
                branch: assoc_branch(&s, &address)
                    .map_err(|e| err(&e))?
                    .iter()
                    .map(|l| l.to_string())
                    .collect(),
            };
            if as_json {
                json(&record)
            } else {
                let flags: Vec<&str> = record
                    .profile
                    .iter()
                    .map(|&b| if b { "1" } else { "0" })
                    .collect();
                format!(
                    "profile {}\nsuccessor rank {}\nweight {}\nleaf {}\nbranch {}\n",
                    flags.join(""),
                    record.succ_rank,
                    record.weight,
                    record.leaf,
                    record.branch.join(" ")
                )
            }
        }
        Command::Verify {
            max_len,
            bound,
            classes,
            samples,
            suite,
        } => {
            if bound == 0 || classes == 0 || max_len == 0 {
                return Err("--max-len, --bound and --classes must be positive".into());
            }
            let cfg = VerifyConfig {
                max_len,
                bound,
                classes,
                seed: 0,
                samples,
            }
            .with_env_seed();
            let outcomes = match suite {
                Some(name) => vec![run_suite(&name, &cfg).ok_or_else(|| {
                    format!("unknown suite {name}; known: {}", joined(suite_names()))
                })?],
                None => run_all(&cfg),
            };
            let code = if outcomes.iter().all(|o| o.passed()) {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            };
            let text = if as_json {
                json(&outcomes)
            } else {
                let mut out = String::new();
                for o in &outcomes {
                    match &o.counterexample {
                        None => writeln!(out, "PASS {} ({} checked)", o.name, o.checked),
                        Some(cx) => writeln!(out, "FAIL {}: {cx}", o.name),
                    }
                    .expect("string write");
                }
                out
            };
            return Ok((code, text));
        }
    };
    Ok((EXIT_OK, out))
}
