//! Command-line front end for `ratver`.

pub mod problem;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use ratver::ckr::{default_world_bound, idip, Certificate, SearchMode, SearchOptions};
use ratver::epistemic::{common_knowledge_of_rationality, rational_all};
use ratver::objectives::{render, winners};
use ratver::reductions::{
    build_aesat_instance, build_easat_instance, build_sat_instance, build_sat_instance_over,
    parse_qbf, qbf_eval, Reduction,
};
use ratver::strategy::{is_nash, profile_count, NashCheck};
use ratver::verify::{sver, vp_nash_pos, vpckr_p_pos, vpckr_pos, Answer, Verdict};
use ratver::{parse_formula, Arena, Config, Error as CoreError};

use problem::{format_profile, parse_problem, parse_profile, player_label, serialize, Problem};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("line {line}: unknown name `{name}`")]
    UnknownName { line: usize, name: String },
    #[error("missing `spec` line")]
    MissingSpec,
    #[error("missing `objective` line for player {0}")]
    MissingObjective(usize),
    #[error("missing `players` line")]
    MissingPlayers,
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::CountOverflow { .. }) => EXIT_CAP,
            _ => EXIT_INPUT,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ratver",
    version,
    about = "Rational verification of multiplayer graph games"
)]
struct Cli {
    /// Maximum number of positional profiles to enumerate.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Maximum number of candidate models examined by bounded-model search.
    #[arg(long, global = true)]
    search_cap: Option<u64>,
    /// Run on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a problem file and summarize it.
    Validate { file: String },
    /// Print the outcome and winners of a profile.
    Outcome {
        file: String,
        #[arg(long)]
        profile: String,
    },
    /// Check whether a profile's outcome satisfies the specification.
    Sver {
        file: String,
        #[arg(long)]
        profile: String,
    },
    /// Check whether a profile is a Nash equilibrium.
    NashCheck {
        file: String,
        #[arg(long)]
        profile: String,
    },
    /// Does every positional Nash equilibrium satisfy the specification?
    VpNash { file: String },
    /// Does every profile consistent with common knowledge of rationality satisfy the specification?
    VpCkr {
        file: String,
        #[arg(long)]
        trace: bool,
    },
    /// As vp-ckr, over epistemic models with at most `--bound` worlds.
    VpCkrP {
        file: String,
        /// Defaults to |V|·|P|.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Iterated deletion of inferior profiles.
    Idip {
        file: String,
        #[arg(long)]
        trace: bool,
    },
    /// Build a problem file from a formula or QBF.
    Reduce {
        #[arg(value_enum)]
        kind: ReduceKind,
        file: String,
    },
    /// Evaluate a QBF by truth-table expansion.
    EvalQbf { file: String },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Canonical,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReduceKind {
    Sat,
    Aesat,
    Easat,
}

/// Reads a file, or standard input for `-`.
fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    let io = |e: std::io::Error| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    };
    if path == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn load(path: &str, stdin: &mut dyn Read) -> Result<Problem, CliError> {
    parse_problem(&read_input(path, stdin)?)
}

fn certificate_text(arena: &Arena, c: &Certificate) -> String {
    let fr = c.model.frame();
    let mut out = String::new();
    writeln!(
        out,
        "certificate: {} world(s), witness world {}",
        fr.num_worlds(),
        fr.world_name(c.world)
    )
    .unwrap();
    for w in 0..fr.num_worlds() {
        writeln!(
            out,
            "  world {}: {}",
            fr.world_name(w),
            c.model.profile(w).token(arena)
        )
        .unwrap();
    }
    for p in arena.players() {
        let classes: Vec<String> = fr
            .classes(p)
            .iter()
            .map(|cls| {
                cls.iter()
                    .map(|&w| fr.world_name(w))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        writeln!(
            out,
            "  classes of {}: {}",
            player_label(p),
            classes.join(" | ")
        )
        .unwrap();
    }
    out
}

fn verdict_text(arena: &Arena, v: &Verdict) -> String {
    let mut out = String::new();
    writeln!(out, "answer: {}", v.answer).unwrap();
    if v.answer == Answer::YesOneSided {
        writeln!(
            out,
            "note: canonical-only search is one-sided; no violating member was found"
        )
        .unwrap();
    }
    if let Some(w) = &v.witness {
        writeln!(out, "witness:").unwrap();
        for line in format_profile(arena, &w.profile).lines() {
            writeln!(out, "  {line}").unwrap();
        }
        writeln!(out, "outcome: {}", w.lasso.display(arena)).unwrap();
        if let Some(c) = &w.certificate {
            out.push_str(&certificate_text(arena, c));
        }
    }
    let s = &v.stats;
    writeln!(
        out,
        "stats: profiles_examined={} idip_rounds={} models_searched={} empty_rational_set={}",
        s.profiles_examined, s.idip_rounds, s.models_searched, s.empty_rational_set
    )
    .unwrap();
    out
}

fn exit_for(v: &Verdict) -> i32 {
    if v.is_yes() {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn reduction_problem(r: Reduction) -> Problem {
    Problem {
        arena: r.arena,
        objectives: r.objectives,
        spec: r.spec,
        model: None,
    }
}

fn execute(cli: Cli, stdin: &mut dyn Read, out: &mut String) -> Result<i32, CliError> {
    let mut cfg = Config::default();
    if let Some(c) = cli.cap {
        cfg = cfg.with_profile_cap(c);
    }
    if let Some(c) = cli.search_cap {
        cfg = cfg.with_search_cap(c);
    }
    if cli.sequential {
        cfg.parallel = false;
    }
    match cli.command {
        Command::Validate { file } => {
            let p = load(&file, stdin)?;
            let a = &p.arena;
            let edges: usize = a.vertices().map(|v| a.successors(v).len()).sum();
            writeln!(
                out,
                "ok: {} players, {} vertices, {} edges, {} positional profiles",
                a.num_players(),
                a.num_vertices(),
                edges,
                profile_count(a)
            )
            .unwrap();
            for (pl, f) in p.objectives.iter() {
                writeln!(out, "objective {}: {}", pl.0, render(a, f)).unwrap();
            }
            writeln!(out, "spec: {}", render(a, &p.spec)).unwrap();
            if let Some(m) = &p.model {
                let fr = m.frame();
                let names = |ws: Vec<usize>| {
                    ws.iter()
                        .map(|&w| fr.world_name(w))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                let rat = rational_all(a, &p.objectives, m, &cfg)?;
                let ck = common_knowledge_of_rationality(a, &p.objectives, m, &cfg)?;
                writeln!(out, "model: {} worlds", fr.num_worlds()).unwrap();
                writeln!(out, "RAT: {}", names(rat.worlds())).unwrap();
                writeln!(out, "CK RAT: {}", names(ck.worlds())).unwrap();
            }
            Ok(EXIT_YES)
        }
        Command::Outcome { file, profile } => {
            let p = load(&file, stdin)?;
            let s = parse_profile(&p.arena, &read_input(&profile, stdin)?)?;
            let w: Vec<String> = winners(&p.arena, &p.objectives, &s)
                .iter()
                .map(|q| q.0.to_string())
                .collect();
            writeln!(out, "outcome: {}", p.arena.outcome(&s).display(&p.arena)).unwrap();
            writeln!(out, "winners: {{{}}}", w.join(", ")).unwrap();
            Ok(EXIT_YES)
        }
        Command::Sver { file, profile } => {
            let p = load(&file, stdin)?;
            let s = parse_profile(&p.arena, &read_input(&profile, stdin)?)?;
            let ok = sver(&p.arena, &s, &p.spec);
            writeln!(out, "{}", if ok { "yes" } else { "no" }).unwrap();
            writeln!(out, "outcome: {}", p.arena.outcome(&s).display(&p.arena)).unwrap();
            Ok(if ok { EXIT_YES } else { EXIT_NO })
        }
        Command::NashCheck { file, profile } => {
            let p = load(&file, stdin)?;
            let s = parse_profile(&p.arena, &read_input(&profile, stdin)?)?;
            match is_nash(&p.arena, &p.objectives, &s, &cfg)? {
                NashCheck::Equilibrium => {
                    writeln!(out, "equilibrium").unwrap();
                    Ok(EXIT_YES)
                }
                NashCheck::Refuted { player, deviation } => {
                    let dev = s.deviate(player, &deviation)?;
                    writeln!(
                        out,
                        "not an equilibrium: {} loses but wins by deviating to",
                        player_label(player)
                    )
                    .unwrap();
                    for (v, w) in &deviation.choices {
                        writeln!(out, "  {} -> {}", p.arena.name(*v), p.arena.name(*w)).unwrap();
                    }
                    writeln!(
                        out,
                        "deviated outcome: {}",
                        p.arena.outcome(&dev).display(&p.arena)
                    )
                    .unwrap();
                    Ok(EXIT_NO)
                }
            }
        }
        Command::VpNash { file } => {
            let p = load(&file, stdin)?;
            let v = vp_nash_pos(&p.arena, &p.objectives, &p.spec, &cfg)?;
            out.push_str(&verdict_text(&p.arena, &v));
            Ok(exit_for(&v))
        }
        Command::VpCkr { file, trace } => {
            let p = load(&file, stdin)?;
            if trace {
                let (_, t) = idip(&p.arena, &p.objectives, &cfg)?;
                out.push_str(&t.render(&p.arena));
            }
            let v = vpckr_pos(&p.arena, &p.objectives, &p.spec, &cfg)?;
            out.push_str(&verdict_text(&p.arena, &v));
            Ok(exit_for(&v))
        }
        Command::VpCkrP { file, bound, mode } => {
            let p = load(&file, stdin)?;
            let bound = bound.unwrap_or_else(|| default_world_bound(&p.arena));
            let mode = match mode {
                ModeArg::Exact => SearchMode::Exact,
                ModeArg::Canonical => SearchMode::CanonicalOnly,
            };
            writeln!(out, "world bound: {bound}, mode: {mode}").unwrap();
            let v = vpckr_p_pos(
                &p.arena,
                &p.objectives,
                &p.spec,
                bound,
                SearchOptions::new(mode),
                &cfg,
            )?;
            out.push_str(&verdict_text(&p.arena, &v));
            Ok(exit_for(&v))
        }
        Command::Idip { file, trace } => {
            let p = load(&file, stdin)?;
            let (t, tr) = idip(&p.arena, &p.objectives, &cfg)?;
            if trace {
                out.push_str(&tr.render(&p.arena));
            }
            writeln!(out, "survivors: {} of {}", t.len(), profile_count(&p.arena)).unwrap();
            if t.is_empty() {
                writeln!(out, "warning: the fixpoint is empty").unwrap();
            }
            for s in &t {
                writeln!(
                    out,
                    "  {}  {}",
                    s.token(&p.arena),
                    p.arena.outcome(s).display(&p.arena)
                )
                .unwrap();
            }
            Ok(EXIT_YES)
        }
        Command::Reduce { kind, file } => {
            let text = read_input(&file, stdin)?;
            let r = match kind {
                ReduceKind::Aesat => build_aesat_instance(&parse_qbf(&text)?)?,
                ReduceKind::Easat => build_easat_instance(&parse_qbf(&text)?)?,
                ReduceKind::Sat => {
                    let has_prefix = text.lines().any(|l| {
                        let l = l.trim_start();
                        l.starts_with("forall") || l.starts_with("exists")
                    });
                    if has_prefix {
                        let q = parse_qbf(&text)?;
                        let vars: Vec<String> =
                            q.prefix().iter().flat_map(|(_, vs)| vs.clone()).collect();
                        build_sat_instance_over(&vars, q.matrix())?
                    } else {
                        let body: Vec<&str> = text
                            .lines()
                            .map(|l| l.split('#').next().unwrap_or(""))
                            .collect();
                        build_sat_instance(&parse_formula(&body.join(" "))?)?
                    }
                }
            };
            out.push_str(&serialize(&reduction_problem(r)));
            Ok(EXIT_YES)
        }
        Command::EvalQbf { file } => {
            let q = parse_qbf(&read_input(&file, stdin)?)?;
            let v = qbf_eval(&q)?;
            writeln!(out, "{v}").unwrap();
            Ok(if v { EXIT_YES } else { EXIT_NO })
        }
    }
}

/// Runs one invocation; returns the exit code, standard output and standard error.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            let text = e.render().to_string();
            return if e.use_stderr() {
                (code, String::new(), text)
            } else {
                (code, text, String::new())
            };
        }
    };
    let mut out = String::new();
    match execute(cli, stdin, &mut out) {
        Ok(code) => (code, out, String::new()),
        Err(e) => (e.exit_code(), out, format!("error: {e}\n")),
    }
}
