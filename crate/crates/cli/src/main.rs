//! `dwsynth`: command-line front end.
//!
//! Exit status: 0 success, 1 negative verdict, 2 input error, 3 budget exceeded.

mod env;

use std::fmt::Write as _;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dwsynth::arena::{standard_suite, verify_play, ScheduleConfig};
use dwsynth::dataword::{evaluate, Assignment, DataWord, ProcessPools, WordStructure};
use dwsynth::logic::{classify_fragment, parse_formula_file, render_formula, Signature};
use dwsynth::minsky::{
    bounded_halting_search, cheat_strategy, compile_with, reduction_signature, run, strategy_from_run,
    CompileOptions, MinskyMachine, Run, SystemCheat, ENV_PROCESS,
};
use dwsynth::vector_game::{
    compute_minind, decide_grid, lift_check, probe_cut, solve_with_budget, Budget, GameError, GameSpec, MoveCap,
    SolveError,
};

#[derive(Parser)]
#[command(name = "dwsynth", version, about = "First-order synthesis on data words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct BudgetArgs {
    /// Maximum number of game states to solve
    #[arg(long, default_value_t = 10_000_000)]
    max_states: usize,
    /// Maximum number of moves enumerated from one configuration
    #[arg(long, default_value_t = 1_000_000)]
    max_moves: usize,
}

impl BudgetArgs {
    fn budget(self) -> Budget {
        Budget { max_states: self.max_states, moves: MoveCap { max_moves: self.max_moves, ..MoveCap::default() } }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GridFormat {
    Text,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Report the fragment a formula belongs to
    Check {
        formula: PathBuf,
        /// Signature header, used when the file has none
        #[arg(long)]
        sig: Option<String>,
    },
    /// Model-check a formula on a data word
    Eval {
        formula: PathBuf,
        word: PathBuf,
        #[arg(long)]
        sig: Option<String>,
        /// Values for free variables: `x=3` (element index) or `x=@p` (process p)
        #[arg(long, value_delimiter = ',')]
        assign: Vec<String>,
    },
    /// Decide the winner of a vector game
    Solve {
        game: PathBuf,
        #[arg(long)]
        ns: u64,
        #[arg(long)]
        ne: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Winner table over nS in [0,cut] and nE in [0,minind]
    Grid {
        game: PathBuf,
        #[arg(long)]
        cut: u64,
        /// Override the computed threshold
        #[arg(long)]
        minind: Option<u64>,
        /// Worker threads
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: GridFormat,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Print K, d, B and minind for a vector game
    Bounds {
        game: PathBuf,
        /// Also search for a stabilising nS over windows of this width
        #[arg(long)]
        probe_window: Option<u64>,
        #[arg(long, default_value_t = 8)]
        probe_max_ns: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Replay a run of a two-counter machine
    MmRun {
        machine: PathBuf,
        /// Comma-separated transition names
        #[arg(long, value_delimiter = ',')]
        trans: Option<Vec<String>>,
        /// Without --trans, search for a halting run of at most this many steps
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
    },
    /// Compile a machine to its two-variable formula
    MmCompile {
        machine: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Use the verbatim variants of formkos, formbadtarget and formbadzerotest
        #[arg(long)]
        literal: bool,
    },
    /// Play the machine's reduction game and model-check the outcome
    MmPlay {
        machine: PathBuf,
        /// compliant, blocker, premature-oke, oke-after-ko, script:A,B,..., random[:SEED], manual or suite
        #[arg(long, default_value = "compliant")]
        env: String,
        #[arg(long, value_delimiter = ',')]
        trans: Option<Vec<String>>,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
        /// Make System commit one of the cheats S1..S9
        #[arg(long)]
        cheat: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random policies in the suite
        #[arg(long, default_value_t = 20)]
        randoms: u64,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long)]
        max_rounds: Option<usize>,
        /// Write the trace as a data-word file
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long)]
        literal: bool,
    },
    /// Check the Environment strategy lift from nE to nE+1
    LiftCheck {
        game: PathBuf,
        #[arg(long)]
        ns: u64,
        #[arg(long)]
        ne: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

enum Failure {
    Negative,
    Input(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Negative => 1,
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Budget { .. } => Failure::Budget(e.to_string()),
            SolveError::Game(g) => g.into(),
        }
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Overflow(_) => Failure::Budget(e.to_string()),
            _ => input(e),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn colour(verdict: bool) -> String {
    let plain = verdict.to_string();
    if std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty()) || !std::io::stdout().is_terminal() {
        return plain;
    }
    let code = if verdict { 32 } else { 31 };
    format!("\x1b[{code}m{plain}\x1b[0m")
}

fn verdict(out: String, ok: bool) -> Outcome {
    print!("{out}");
    if ok {
        Ok(String::new())
    } else {
        Err(Failure::Negative)
    }
}

fn load_formula(path: &Path, sig: Option<&str>) -> Result<(Signature, dwsynth::logic::Formula), Failure> {
    let fallback = sig.map(Signature::parse_header).transpose().map_err(input)?;
    parse_formula_file(&read(path)?, fallback.as_ref()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_game(path: &Path) -> Result<GameSpec, Failure> {
    GameSpec::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_machine(path: &Path) -> Result<MinskyMachine, Failure> {
    MinskyMachine::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_assignment(items: &[String], s: &WordStructure) -> Result<Assignment, Failure> {
    let mut env = Assignment::new();
    for item in items {
        let (v, val) = item
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("expected `var=value`, got `{item}`")))?;
        let e = match val.strip_prefix('@') {
            Some(p) => s.process_element(p).ok_or_else(|| Failure::Input(format!("unknown process `{p}`")))?,
            None => val.parse().map_err(|e| Failure::Input(format!("bad element `{val}`: {e}")))?,
        };
        env.insert(v.trim().to_string(), e);
    }
    Ok(env)
}

fn halting_run(m: &MinskyMachine, trans: Option<&[String]>, max_steps: usize) -> Result<Run, Failure> {
    match trans {
        Some(names) => run(m, names).map_err(input),
        None => bounded_halting_search(m, max_steps)
            .ok_or_else(|| Failure::Input(format!("no halting run of at most {max_steps} steps")))
    }
}

fn check(formula: &Path, sig: Option<&str>) -> Outcome {
    let (_, f) = load_formula(formula, sig)?;
    let p = classify_fragment(&f);
    let vars: Vec<&str> = p.variables.iter().map(String::as_str).collect();
    Ok(format!(
        "fragment: {}\nvariables: {}\npredicates: {}\ntwo-variable: {}\nsize: {}\n",
        p.label(),
        vars.join(","),
        p.predicates().join(","),
        p.is_two_variable(),
        f.size()
    ))
}

fn eval(formula: &Path, word: &Path, sig: Option<&str>, assign: &[String]) -> Outcome {
    let (sig, f) = load_formula(formula, sig)?;
    let (pools, w) = DataWord::parse_file(&read(word)?).map_err(|e| Failure::Input(format!("{}: {e}", word.display())))?;
    let s = WordStructure::new(&w, &pools, &sig).map_err(input)?;
    let env = parse_assignment(assign, &s)?;
    let v = evaluate(&f, &s, &env).map_err(input)?;
    verdict(format!("{}\n", colour(v)), v)
}

fn mm_run(machine: &Path, trans: Option<&[String]>, max_steps: usize) -> Outcome {
    let m = load_machine(machine)?;
    let r = match trans {
        Some(names) => run(&m, names).map_err(input)?,
        None => match bounded_halting_search(&m, max_steps) {
            Some(r) => r,
            None => return verdict(format!("NO HALTING RUN within {max_steps} steps\n"), false),
        },
    };
    let mut out = format!("start {}\n", r.configs[0]);
    for (t, c) in r.transitions.iter().zip(&r.configs[1..]) {
        writeln!(out, "{t} {c}").unwrap();
    }
    let halted = r.halting;
    writeln!(out, "{} {}", if halted { "HALTED" } else { "STOPPED" }, r.last()).unwrap();
    verdict(out, halted)
}

fn mm_compile(machine: &Path, output: Option<&Path>, literal: bool) -> Outcome {
    let m = load_machine(machine)?;
    let r = compile_with(&m, CompileOptions { literal });
    let text = format!("{}\n{}\n", r.signature, render_formula(&r.phi));
    match output {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            Ok(format!("wrote {}\n", p.display()))
        }
        None => Ok(text),
    }
}

struct PlayArgs<'a> {
    env: &'a str,
    trans: Option<&'a [String]>,
    max_steps: usize,
    cheat: Option<&'a str>,
    seed: u64,
    randoms: u64,
    window: Option<usize>,
    max_rounds: Option<usize>,
    dump: Option<&'a Path>,
    literal: bool,
}

fn mm_play(machine: &Path, a: PlayArgs<'_>) -> Outcome {
    let m = load_machine(machine)?;
    let r = halting_run(&m, a.trans, a.max_steps)?;
    let strat = match a.cheat {
        None => strategy_from_run(&m, &r).map_err(input)?,
        Some(name) => {
            let cheat = SystemCheat::ALL
                .into_iter()
                .find(|c| c.to_string() == name)
                .ok_or_else(|| Failure::Input(format!("unknown cheat `{name}` (expected S1..S9)")))?;
            cheat_strategy(&m, &r, cheat)
                .ok_or_else(|| Failure::Input(format!("run offers no place for cheat {name}")))?
        }
    };
    let phi = compile_with(&m, CompileOptions { literal: a.literal }).phi;
    let sig = reduction_signature(&m);
    let pools = ProcessPools::partitioned(strat.processes(), &[ENV_PROCESS]);
    let mut sched = ScheduleConfig::for_run_len(r.len() + 1);
    if let Some(w) = a.window {
        sched.fairness_window = w.max(1);
    }
    if let Some(n) = a.max_rounds {
        sched.max_rounds = n.max(1);
    }
    let policies = if a.env == "suite" {
        standard_suite(&m, a.randoms, a.seed)
    } else {
        vec![env::parse_policy(a.env, &m, a.seed).map_err(Failure::Input)?]
    };
    let mut report = verify_play(&strat, &phi, &policies, &pools, &sig, sched);
    let seed = env::policy_seed(a.env, a.seed);
    for rec in &mut report.records {
        rec.trace.seed = seed.or_else(|| rec.policy.strip_prefix("random:").and_then(|s| s.parse().ok()));
    }
    let mut out = String::new();
    for rec in &report.records {
        let sat = match &rec.satisfied {
            Ok(v) => colour(*v),
            Err(e) => format!("error ({e})"),
        };
        writeln!(
            out,
            "policy: {}\nlength: {}\nstop: {}\nrounds: {}\ncompatible: {}\nfair: {}\nsatisfied: {sat}",
            rec.policy,
            rec.trace.word.len(),
            rec.trace.stop,
            rec.trace.rounds,
            rec.compatible,
            rec.fair,
        )
        .unwrap();
        if report.records.len() == 1 {
            writeln!(out, "word: {}", rec.trace.word).unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "{}", report.headline()).unwrap();
    if let Some(p) = a.dump {
        let text: String = report.records.iter().map(|r| r.trace.to_dump(&pools)).collect::<Vec<_>>().join("\n");
        std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    }
    let ok = !report.records.is_empty() && report.all_satisfied();
    verdict(out, ok)
}

fn bounds(game: &Path, probe: Option<u64>, max_ns: u64, budget: Budget) -> Outcome {
    let g = load_game(game)?;
    let mut out = format!(
        "K: {}\nd: {}\nB: {}\nminind: {}\n",
        g.max_constant(),
        g.env_letters().len(),
        g.bound(),
        compute_minind(&g)?
    );
    if let Some(w) = probe {
        if w == 0 {
            return Err(Failure::Input("probe window must be at least 1".into()));
        }
        out.push_str(&probe_cut(&g, w, max_ns, budget)?.to_string());
    }
    Ok(out)
}

fn lift(game: &Path, ns: u64, ne: u64, budget: Budget) -> Outcome {
    let g = load_game(game)?;
    let r = lift_check(&g, ns, ne, budget)?;
    let opt = |p: Option<String>| p.unwrap_or_else(|| "n/a".into());
    let out = format!(
        "minind: {}\nbase ({ns},{ne}): {}\nsolver ({ns},{}): {}\nlifted wins exhaustively: {}\nlifted vs optimal System: {}\nstates explored: {}\nok: {}\n",
        r.minind,
        r.base_winner,
        ne + 1,
        r.lifted_solver_winner,
        opt(r.exhaustive_env_wins.map(|b| b.to_string())),
        opt(r.vs_optimal.map(|p| p.to_string())),
        r.states_explored,
        colour(r.ok())
    );
    verdict(out, r.ok())
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Check { formula, sig } => check(&formula, sig.as_deref()),
        Command::Eval { formula, word, sig, assign } => eval(&formula, &word, sig.as_deref(), &assign),
        Command::Solve { game, ns, ne, budget } => {
            let g = load_game(&game)?;
            Ok(format!("{}\n", solve_with_budget(&g, ns, ne, budget.budget())?.winner))
        }
        Command::Grid { game, cut, minind, jobs, format, budget } => {
            let g = load_game(&game)?;
            let report = decide_grid(&g, cut, minind, budget.budget(), jobs)?;
            print!("{}", match format {
                GridFormat::Text => report.render_text(),
                GridFormat::Tsv => report.render_tsv(),
            });
            match report.unknown_cells() {
                0 => Ok(String::new()),
                n => Err(Failure::Budget(format!("{n} cells exceeded the budget"))),
            }
        }
        Command::Bounds { game, probe_window, probe_max_ns, budget } => {
            bounds(&game, probe_window, probe_max_ns, budget.budget())
        }
        Command::MmRun { machine, trans, max_steps } => mm_run(&machine, trans.as_deref(), max_steps),
        Command::MmCompile { machine, output, literal } => mm_compile(&machine, output.as_deref(), literal),
        Command::MmPlay { machine, env, trans, max_steps, cheat, seed, randoms, window, max_rounds, dump, literal } => {
            mm_play(
                &machine,
                PlayArgs {
                    env: &env,
                    trans: trans.as_deref(),
                    max_steps,
                    cheat: cheat.as_deref(),
                    seed,
                    randoms,
                    window,
                    max_rounds,
                    dump: dump.as_deref(),
                    literal,
                },
            )
        }
        Command::LiftCheck { game, ns, ne, budget } => lift(&game, ns, ne, budget.budget()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Negative => {}
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::Budget(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}
