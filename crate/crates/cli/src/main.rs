//! `defrev`: command-line front end for the defeasible logic engine and the
//! superiority-relation revision toolkit.
//!
//! Exit codes: 0 answered (including infeasible results), 1 usage error,
//! 2 input error (parse or invariant), 3 candidate budget exhausted.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use defrev_core::agm::{
    check_expansion_monotony, check_postulate, AuditOptions, PostulateId, Verdict, VerdictStatus,
};
use defrev_core::revision::{Metric, RevisionKind};
use defrev_core::sat::{SatResult, TruthTableResult};
use defrev_core::{
    classify_instance, classify_refutability, compute_tags, contract, expand, gamma_transform,
    parse_dimacs, parse_theory, revise, sat_via_refutability, truth_table_sat, Literal, ProofTag,
    RevisionGoal, RevisionResult, Strategy, Theory, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "defrev",
    about = "Defeasible logic proof tags and preference revision",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Theory file.
    file: PathBuf,
    /// Target literal, e.g. `p` or `~p`.
    #[arg(long)]
    lit: String,
    /// Candidate budget for exhaustive search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker cap for internal search (evaluation is sequential, which
    /// satisfies any cap).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a tagged literal is proved.
    Prove {
        file: PathBuf,
        #[arg(long)]
        lit: String,
        /// Signed tag: +delta, -delta, +phi, -phi, +partial, -partial,
        /// +omega, -omega, +support, -support, +chain, -chain.
        #[arg(long, allow_hyphen_values = true)]
        tag: String,
    },
    /// Print the tag report over the literal universe.
    Extension { file: PathBuf },
    /// Print the tag report restricted to appearing literals.
    Beliefset { file: PathBuf },
    /// Classify a literal against every relation over the rule set.
    Classify {
        file: PathBuf,
        #[arg(long)]
        lit: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// From +partial to -partial by editing the superiority relation.
    Contract {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "targeted")]
        strategy: String,
    },
    /// Make the literal defeasibly provable, starting from +partial of its
    /// complement.
    Revise {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "single_winner")]
        strategy: String,
    },
    /// From -partial to +partial.
    Expand {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "targeted")]
        strategy: String,
    },
    /// Exhaustive minimal search for an arbitrary goal tag.
    Search {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        tag: String,
        /// Minimality metric: tuples or conclusions.
        #[arg(long, default_value = "tuples")]
        metric: String,
    },
    /// Map a 3-CNF formula to its defeasible rule set.
    Gamma {
        cnf: PathBuf,
        /// Write the theory here instead of standard output.
        #[arg(long)]
        emit_theory: Option<PathBuf>,
    },
    /// Decide satisfiability via refutability of the goal literal.
    Sat {
        cnf: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Independent truth-table oracle over the same DIMACS input.
    Oracle { cnf: PathBuf },
    /// Evaluate belief-change postulates.
    Agm {
        file: PathBuf,
        /// Postulate id (e.g. K-2, K*7, LI, HI) or `all`.
        #[arg(long)]
        check: String,
        #[arg(long)]
        lit: String,
        /// Second literal for the pair postulates.
        #[arg(long)]
        lit2: Option<String>,
        /// Second theory for the expansion-monotony postulate.
        #[arg(long)]
        theory2: Option<PathBuf>,
        /// Quantify over all minimal outcomes instead of the deterministic
        /// tie-break.
        #[arg(long)]
        all_minimal: bool,
        /// Directory for violation witness files.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Canonicalize a theory file.
    Fmt {
        file: PathBuf,
        #[arg(long)]
        in_place: bool,
    },
}

enum CliError {
    Usage(String),
    Input(String),
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Budget(m) => m,
        }
    }
}

fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {}", path.display(), e)))
}

fn load_theory(path: &Path) -> Result<Theory, CliError> {
    let text = read_to_string(path)?;
    parse_theory(&text).map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))
}

fn load_cnf(path: &Path) -> Result<defrev_core::CnfFormula, CliError> {
    let text = read_to_string(path)?;
    parse_dimacs(&text).map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))
}

fn parse_literal(s: &str) -> Result<Literal, CliError> {
    let (atom, positive) = match s.strip_prefix('~') {
        Some(rest) => (rest, false),
        None => (s, true),
    };
    Literal::new(atom, positive).map_err(|e| CliError::Usage(format!("bad literal `{}`: {}", s, e)))
}

fn parse_tag(s: &str) -> Result<ProofTag, CliError> {
    ProofTag::from_ascii(s).ok_or_else(|| CliError::Usage(format!("unknown tag `{}`", s)))
}

fn parse_strategy(s: &str, allowed: &[Strategy]) -> Result<Strategy, CliError> {
    let strategy = match s {
        "single_winner" => Strategy::SingleWinner,
        "team_defeater" => Strategy::TeamDefeater,
        "targeted" => Strategy::Targeted,
        "search" => Strategy::Search,
        other => return Err(CliError::Usage(format!("unknown strategy `{}`", other))),
    };
    if !allowed.contains(&strategy) {
        return Err(CliError::Usage(format!(
            "strategy `{}` not applicable to this operation",
            s
        )));
    }
    Ok(strategy)
}

fn revision_report(
    kind: RevisionKind,
    t: &Theory,
    lit: &Literal,
    requested: &str,
    res: &RevisionResult,
) -> String {
    let mut out = String::new();
    let fallback_instance = || {
        classify_instance(
            t,
            &RevisionGoal {
                kind,
                target: lit.clone(),
            },
        )
        .map(|i| i.ascii_name().to_string())
        .unwrap_or_else(|_| "-".to_string())
    };
    match res {
        RevisionResult::Success(o) => {
            out.push_str("status: ok\n");
            out.push_str(&format!(
                "instance: {}\n",
                o.instance.map(|i| i.ascii_name()).unwrap_or("-")
            ));
            out.push_str(&format!("strategy: {}\n", o.strategy.ascii_name()));
            for (w, l) in &o.added {
                out.push_str(&format!("+ ({},{})\n", w, l));
            }
            for (w, l) in &o.removed {
                out.push_str(&format!("- ({},{})\n", w, l));
            }
            out.push_str(&o.theory.serialize());
        }
        RevisionResult::Infeasible {
            instance,
            candidates_examined,
        } => {
            out.push_str("status: infeasible\n");
            let shown = instance
                .map(|i| i.ascii_name().to_string())
                .unwrap_or_else(fallback_instance);
            out.push_str(&format!("instance: {}\n", shown));
            out.push_str(&format!("strategy: {}\n", requested));
            out.push_str(&format!("candidates: {}\n", candidates_examined));
        }
        RevisionResult::ExhaustedBudget { required, budget } => {
            out.push_str("status: exhausted\n");
            out.push_str(&format!("instance: {}\n", fallback_instance()));
            out.push_str(&format!("strategy: {}\n", requested));
            out.push_str(&format!("required: {}\n", required));
            out.push_str(&format!("budget: {}\n", budget));
        }
    }
    out
}

fn run_agm_check(
    id: &PostulateId,
    t: &Theory,
    p: &Literal,
    q: Option<&Literal>,
    theory2: Option<&Theory>,
    opts: &AuditOptions,
    witness_dir: Option<&Path>,
) -> Result<String, CliError> {
    let verdict: Verdict = if id.index == "K+5" {
        match theory2 {
            Some(t2) => check_expansion_monotony(t, t2, p, opts)
                .map_err(|e| CliError::Input(e.to_string()))?,
            None => Verdict {
                status: VerdictStatus::NotApplicable,
                witness: None,
            },
        }
    } else {
        check_postulate(id, t, p, q, opts).map_err(|e| CliError::Input(e.to_string()))?
    };
    let witness_field = match (&verdict.witness, witness_dir) {
        (Some(w), Some(dir)) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::Input(format!("cannot create {}: {}", dir.display(), e)))?;
            let name = id.index.replace(['*', '+', '\''], "_");
            let path = dir.join(format!("{}.witness.txt", name));
            std::fs::write(&path, w.render())
                .map_err(|e| CliError::Input(format!("cannot write witness: {}", e)))?;
            path.display().to_string()
        }
        _ => "-".to_string(),
    };
    Ok(format!(
        "{}\t{}\t{}\n",
        id.index,
        verdict.status.ascii_name(),
        witness_field
    ))
}

fn finish_revision(
    kind: RevisionKind,
    t: &Theory,
    l: &Literal,
    requested: &str,
    res: RevisionResult,
) -> Result<String, CliError> {
    let report = revision_report(kind, t, l, requested, &res);
    if let RevisionResult::ExhaustedBudget { required, budget } = res {
        eprint!("{}", report);
        return Err(CliError::Budget(format!(
            "budget exhausted: requires {} candidates, budget {}",
            required, budget
        )));
    }
    Ok(report)
}

fn format_sat_output(assignment: &[bool]) -> String {
    let mut vals: Vec<String> = assignment
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if v {
                format!("{}", i + 1)
            } else {
                format!("-{}", i + 1)
            }
        })
        .collect();
    vals.push("0".to_string());
    format!("s SATISFIABLE\nv {}\n", vals.join(" "))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Prove { file, lit, tag } => {
            let t = load_theory(&file)?;
            let l = parse_literal(&lit)?;
            let tag = parse_tag(&tag)?;
            let tags = compute_tags(&t);
            Ok(format!("{}\n", tags.holds(tag, &l)))
        }
        Command::Extension { file } => {
            let t = load_theory(&file)?;
            let tags = compute_tags(&t);
            let universe: Vec<Literal> = t.universe().into_iter().collect();
            Ok(tags.report(universe.iter()))
        }
        Command::Beliefset { file } => {
            let t = load_theory(&file)?;
            let tags = compute_tags(&t);
            let appearing: Vec<Literal> = t.appearing_literals().into_iter().collect();
            Ok(tags.report(appearing.iter()))
        }
        Command::Classify { file, lit, budget } => {
            let t = load_theory(&file)?;
            let l = parse_literal(&lit)?;
            let report = classify_refutability(&t, &l, budget);
            let witness = report
                .witness
                .as_ref()
                .map(|s| {
                    s.tuples()
                        .iter()
                        .map(|(w, x)| format!("{}>{}", w, x))
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .filter(|s| !s.is_empty())
                .unwrap_or_else(|| "-".to_string());
            let line = format!(
                "{}\t{}\t{}\t{}\n",
                l,
                report.class.ascii_name(),
                witness,
                report.candidates_examined
            );
            if report.class == defrev_core::RefutabilityClass::ExhaustedBudget {
                eprint!("{}", line);
                return Err(CliError::Budget(format!(
                    "budget exhausted: requires {} candidates",
                    report.required.unwrap_or(0)
                )));
            }
            Ok(line)
        }
        Command::Contract { common, strategy } => {
            let t = load_theory(&common.file)?;
            let l = parse_literal(&common.lit)?;
            let s = parse_strategy(&strategy, &[Strategy::Targeted, Strategy::Search])?;
            let res =
                contract(&t, &l, s, common.budget).map_err(|e| CliError::Input(e.to_string()))?;
            finish_revision(RevisionKind::Contract, &t, &l, s.ascii_name(), res)
        }
        Command::Revise { common, strategy } => {
            let t = load_theory(&common.file)?;
            let l = parse_literal(&common.lit)?;
            let s = parse_strategy(
                &strategy,
                &[
                    Strategy::SingleWinner,
                    Strategy::TeamDefeater,
                    Strategy::Search,
                ],
            )?;
            // the goal literal is named on the command line; the canonical
            // operation starts from its proved complement
            let res = revise(&t, &l.complement(), s, common.budget)
                .map_err(|e| CliError::Input(e.to_string()))?;
            finish_revision(
                RevisionKind::Revise,
                &t,
                &l.complement(),
                s.ascii_name(),
                res,
            )
        }
        Command::Expand { common, strategy } => {
            let t = load_theory(&common.file)?;
            let l = parse_literal(&common.lit)?;
            let s = parse_strategy(&strategy, &[Strategy::Targeted, Strategy::Search])?;
            let res =
                expand(&t, &l, s, common.budget).map_err(|e| CliError::Input(e.to_string()))?;
            finish_revision(RevisionKind::Expand, &t, &l, s.ascii_name(), res)
        }
        Command::Search {
            common,
            tag,
            metric,
        } => {
            let t = load_theory(&common.file)?;
            let l = parse_literal(&common.lit)?;
            let tag = parse_tag(&tag)?;
            let metric = match metric.as_str() {
                "tuples" => Metric::TupleCount,
                "conclusions" => Metric::ConclusionCount,
                other => return Err(CliError::Usage(format!("unknown metric `{}`", other))),
            };
            let res = defrev_core::revision::search_revision_multi(
                &t,
                &[(tag, l.clone())],
                common.budget,
                metric,
            )
            .map_err(|e| CliError::Input(e.to_string()))?;
            // arbitrary goal tags have no canonical kind; the kind below is
            // only the display fallback for infeasible classification
            finish_revision(RevisionKind::Contract, &t, &l, "search", res)
        }
        Command::Gamma { cnf, emit_theory } => {
            let f = load_cnf(&cnf)?;
            let text = gamma_transform(&f).serialize();
            match emit_theory {
                Some(path) => {
                    std::fs::write(&path, &text).map_err(|e| {
                        CliError::Input(format!("cannot write {}: {}", path.display(), e))
                    })?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Sat { cnf, budget } => {
            let f = load_cnf(&cnf)?;
            match sat_via_refutability(&f, budget) {
                SatResult::Sat(a) => Ok(format_sat_output(&a)),
                SatResult::Unsat => Ok("s UNSATISFIABLE\n".to_string()),
                SatResult::ExhaustedBudget { required, budget } => Err(CliError::Budget(format!(
                    "budget exhausted: requires {} candidates, budget {}",
                    required, budget
                ))),
            }
        }
        Command::Oracle { cnf } => {
            let f = load_cnf(&cnf)?;
            match truth_table_sat(&f).map_err(|e| CliError::Input(e.to_string()))? {
                TruthTableResult::Sat(a) => Ok(format_sat_output(&a)),
                TruthTableResult::Unsat => Ok("s UNSATISFIABLE\n".to_string()),
            }
        }
        Command::Agm {
            file,
            check,
            lit,
            lit2,
            theory2,
            all_minimal,
            witness_dir,
            budget,
        } => {
            let t = load_theory(&file)?;
            let p = parse_literal(&lit)?;
            let q = lit2.as_deref().map(parse_literal).transpose()?;
            let t2 = theory2.as_deref().map(load_theory).transpose()?;
            let opts = AuditOptions {
                all_minimal,
                budget,
            };
            let ids: Vec<PostulateId> = if check == "all" {
                PostulateId::catalogue()
            } else {
                vec![PostulateId::parse(&check)
                    .ok_or_else(|| CliError::Usage(format!("unknown postulate `{}`", check)))?]
            };
            let mut out = String::new();
            for id in &ids {
                out.push_str(&run_agm_check(
                    id,
                    &t,
                    &p,
                    q.as_ref(),
                    t2.as_ref(),
                    &opts,
                    witness_dir.as_deref(),
                )?);
            }
            Ok(out)
        }
        Command::Fmt { file, in_place } => {
            let t = load_theory(&file)?;
            let text = t.serialize();
            if in_place {
                std::fs::write(&file, &text).map_err(|e| {
                    CliError::Input(format!("cannot write {}: {}", file.display(), e))
                })?;
                Ok(String::new())
            } else {
                Ok(text)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
