//! `tsetlin`: command-line front end for relation sets, tableaux and module checks.
//!
//! Exit codes: 0 when the check passes, 1 when it fails (the report carries
//! the witness), 2 on input errors.

mod input;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use tsetlin::action::{enumerate_ball, BasisSpec, Engine, FormalVector, Gen};
use tsetlin::gamma::{check_gamma_action, fingerprint, multiplicity_one_check};
use tsetlin::gg::{enumerate_families, gg_relation_set, lp_condition, theorem1_check, Verdict};
use tsetlin::relations::{
    is_admissible, is_noncritical_extended, is_noncritical_set, reduce, rr_reachable, sample_realization,
};
use tsetlin::verifier::{check_defining_relations, frz_check, is_irreducible, FrzOutcome};

use input::{load_family, load_relations, load_tableau, load_top_row, load_vector, InputError};
use report::Outcome;

#[derive(Parser)]
#[command(name = "tsetlin", version, about = "Gelfand-Tsetlin relation sets and modules for gl_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
struct Opts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled realizations and anchor assignments.
    #[arg(long = "seed-rng", global = true, default_value_t = 0)]
    seed_rng: u64,
    #[arg(long, global = true, default_value_t = 2)]
    radius: u32,
    #[arg(long, global = true, default_value_t = 5)]
    samples: usize,
    #[arg(long = "anchor-assignments", global = true, default_value_t = 3)]
    anchor_assignments: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Inputs are file paths or inline JSON.
#[derive(Subcommand)]
enum Command {
    /// Whether a tableau satisfies the interlacing inequalities.
    CheckStandard {
        #[arg(long)]
        seed: String,
    },
    /// Noncriticality of a relation set, or of a tableau with --seed.
    CheckNoncritical {
        #[arg(long)]
        relations: Option<String>,
        #[arg(long)]
        seed: Option<String>,
    },
    /// Indecomposable components of a relation set.
    Decompose {
        #[arg(long)]
        relations: String,
    },
    /// The reduced form of a relation set.
    Reduce {
        #[arg(long)]
        relations: String,
    },
    CheckAdmissible {
        #[arg(long)]
        relations: String,
    },
    SampleRealization {
        #[arg(long)]
        relations: String,
        /// Minimum gap between entries of one component.
        #[arg(long, default_value_t = 1)]
        gap: i64,
    },
    /// Basis tableaux within `--radius` unit shifts of the seed.
    EnumerateBasis {
        #[arg(long)]
        relations: String,
        #[arg(long)]
        seed: String,
    },
    /// Applies a word in the generators, rightmost first, e.g. "e1 f2 E1,3".
    Apply {
        #[arg(long)]
        relations: String,
        #[arg(long)]
        seed: String,
        #[arg(long)]
        word: String,
        /// Vector to act on; defaults to the seed.
        #[arg(long)]
        vector: Option<String>,
    },
    /// Defining relations on the ball around the seed.
    VerifyModule {
        #[arg(long)]
        relations: String,
        #[arg(long)]
        seed: String,
    },
    /// `c_mk T = γ_mk T` for all 1 ≤ k ≤ m ≤ n, or for one (m, k).
    Gamma {
        #[arg(long)]
        relations: String,
        #[arg(long)]
        seed: String,
        #[arg(long, requires = "k")]
        m: Option<usize>,
        #[arg(long, requires = "m")]
        k: Option<usize>,
    },
    Fingerprint {
        #[arg(long)]
        seed: String,
    },
    /// Pairwise distinct fingerprints on the ball around the seed.
    Multiplicity {
        #[arg(long)]
        relations: String,
        #[arg(long)]
        seed: String,
    },
    Irreducible {
        #[arg(long)]
        relations: String,
        #[arg(long)]
        seed: String,
    },
    /// The maximal admissible set realized by a tableau.
    Frz {
        #[arg(long)]
        seed: String,
    },
    /// Module verdict for one index family over a top row.
    GgCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        family: String,
        #[arg(long)]
        top: String,
    },
    /// Verdicts for every index family of size n over a top row.
    GgSweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        top: String,
    },
    /// Sets reachable from the standard set by removing relations at releasable positions.
    RrExplore {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command, &cli.opts) {
        Ok(out) => {
            out.print(cli.opts.format == Format::Json);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: &Command, opts: &Opts) -> Result<Outcome, InputError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed_rng);
    let out = match cmd {
        Command::CheckStandard { seed } => {
            let t = load_tableau(seed)?;
            let ok = t.is_standard();
            Outcome::new(ok, json!({ "standard": ok }), format!("standard: {ok}"))
        }
        Command::CheckNoncritical { relations, seed } => match (relations, seed) {
            (_, Some(seed)) => {
                let t = load_tableau(seed)?;
                let ok = t.is_noncritical();
                Outcome::new(ok, json!({ "noncritical": ok }), format!("noncritical tableau: {ok}"))
            }
            (Some(rel), None) => {
                let c = load_relations(rel)?;
                let plain = is_noncritical_set(&c)?;
                let extended = is_noncritical_extended(&c)?;
                Outcome::new(
                    extended,
                    json!({ "noncritical": plain, "noncritical_extended": extended }),
                    format!("noncritical: {plain}\nnoncritical (extended): {extended}"),
                )
            }
            (None, None) => return Err(InputError::Usage("give --relations or --seed".into())),
        },
        Command::Decompose { relations } => {
            let parts = load_relations(relations)?.decompose();
            let text = parts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("\n");
            Outcome::new(true, json!({ "components": parts }), text)
        }
        Command::Reduce { relations } => {
            let r = reduce(&load_relations(relations)?)?;
            Outcome::new(true, serde_json::to_value(&r)?, r.to_string())
        }
        Command::CheckAdmissible { relations } => {
            let ok = is_admissible(&load_relations(relations)?);
            Outcome::new(ok, json!({ "admissible": ok }), format!("admissible: {ok}"))
        }
        Command::SampleRealization { relations, gap } => {
            let t = sample_realization(&load_relations(relations)?, *gap, &mut rng)?;
            Outcome::new(true, json!({ "rng_seed": opts.seed_rng, "tableau": t }), t.to_string())
        }
        Command::EnumerateBasis { relations, seed } => {
            let b = BasisSpec::new(load_relations(relations)?, load_tableau(seed)?)?;
            let ball = enumerate_ball(&b, opts.radius);
            let text = ball.iter().map(|t| t.compact()).collect::<Vec<_>>().join("\n");
            Outcome::new(true, json!({ "radius": opts.radius, "count": ball.len(), "tableaux": ball }), text)
        }
        Command::Apply { relations, seed, word, vector } => {
            let b = BasisSpec::new(load_relations(relations)?, load_tableau(seed)?)?;
            let word = parse_word(word)?;
            let v = match vector {
                Some(v) => load_vector(v)?,
                None => FormalVector::basis(b.seed().clone()),
            };
            let r = Engine::new(&b).apply_word(&word, &v)?;
            Outcome::new(true, serde_json::to_value(&r)?, r.to_string())
        }
        Command::VerifyModule { relations, seed } => {
            let b = BasisSpec::new(load_relations(relations)?, load_tableau(seed)?)?;
            let r = check_defining_relations(&b, opts.radius)?;
            Outcome::new(r.passed, serde_json::to_value(&r)?, report::verification_text(&r))
        }
        Command::Gamma { relations, seed, m, k } => {
            let b = BasisSpec::new(load_relations(relations)?, load_tableau(seed)?)?;
            let n = b.seed().n();
            let pairs: Vec<(usize, usize)> = match (m, k) {
                (Some(m), Some(k)) => vec![(*m, *k)],
                _ => (1..=n).flat_map(|m| (1..=m).map(move |k| (m, k))).collect(),
            };
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            let mut ok = true;
            for (m, k) in pairs {
                let (pass, defect) = check_gamma_action(&b, b.seed(), m, k)?;
                ok &= pass;
                lines.push(format!("c{m}{k}: {}", if pass { "ok".to_string() } else { format!("defect {defect}") }));
                rows.push(json!({ "m": m, "k": k, "passed": pass, "defect": defect }));
            }
            Outcome::new(ok, json!({ "checks": rows, "passed": ok }), lines.join("\n"))
        }
        Command::Fingerprint { seed } => {
            let f = fingerprint(&load_tableau(seed)?);
            let v = serde_json::to_value(&f)?;
            Outcome::new(true, v.clone(), serde_json::to_string(&v)?)
        }
        Command::Multiplicity { relations, seed } => {
            let b = BasisSpec::new(load_relations(relations)?, load_tableau(seed)?)?;
            let ok = multiplicity_one_check(&b, opts.radius);
            Outcome::new(
                ok,
                json!({ "radius": opts.radius, "distinct_fingerprints": ok }),
                format!("distinct fingerprints (radius {}): {ok}", opts.radius),
            )
        }
        Command::Irreducible { relations, seed } => {
            let ok = is_irreducible(&load_relations(relations)?, &load_tableau(seed)?)?;
            Outcome::new(ok, json!({ "irreducible": ok }), format!("irreducible: {ok}"))
        }
        Command::Frz { seed } => {
            let r = frz_check(&load_tableau(seed)?)?;
            let ok = r.set().is_some();
            let text = match &r {
                FrzOutcome::Maximal(c) => format!("maximal satisfied set is admissible: {c}"),
                FrzOutcome::Unique(c) => format!("unique maximal admissible set: {c}"),
                FrzOutcome::Ambiguous(cs) => format!("{} maximal admissible sets", cs.len()),
                FrzOutcome::None => "no admissible set is realized".to_string(),
            };
            Outcome::new(ok, serde_json::to_value(&r)?, text)
        }
        Command::GgCheck { n, family, top } => {
            let fam = load_family(family)?;
            if fam.n() != *n {
                return Err(InputError::Usage(format!("family has {} pairs, --n {n} needs {}", fam.n() - 1, n - 1)));
            }
            let r = theorem1_check(&fam, &load_top_row(top)?, opts.radius, &mut rng)?;
            Outcome::new(r.verdict.is_module(), serde_json::to_value(&r)?, report::theorem1_text(&r))
        }
        Command::GgSweep { n, top } => {
            let top = load_top_row(top)?;
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            let mut agree = true;
            for fam in enumerate_families(*n) {
                let r = theorem1_check(&fam, &top, opts.radius, &mut rng)?;
                agree &= r.agrees();
                let witness = matches!(r.verdict, Verdict::NotModule { .. });
                lines.push(format!(
                    "{fam}  lp={} admissible={} module={}{}",
                    r.lp_condition,
                    r.admissible,
                    r.verdict.is_module(),
                    if witness { " (witness)" } else { "" }
                ));
                rows.push(json!({
                    "family": fam,
                    "relations": gg_relation_set(&fam),
                    "lp_condition": lp_condition(&fam),
                    "admissible": r.admissible,
                    "module": r.verdict.is_module(),
                    "agrees": r.agrees(),
                }));
            }
            lines.push(format!("three-way agreement: {agree}"));
            Outcome::new(agree, json!({ "families": rows, "agreement": agree }), lines.join("\n"))
        }
        Command::RrExplore { n, limit } => {
            let sets = rr_reachable(*n, *limit);
            let all = sets.iter().all(is_admissible);
            let mut text: Vec<String> = sets.iter().map(|c| c.to_string()).collect();
            text.push(format!("{} sets, all admissible: {all}", sets.len()));
            Outcome::new(all, json!({ "count": sets.len(), "all_admissible": all, "sets": sets }), text.join("\n"))
        }
    };
    Ok(out)
}

fn parse_word(s: &str) -> Result<Vec<Gen>, InputError> {
    s.split_whitespace()
        .map(|g| g.parse::<Gen>().map_err(|e| InputError::Usage(format!("generator {g:?}: {e}"))))
        .collect()
}
