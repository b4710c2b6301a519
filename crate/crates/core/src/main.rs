use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use asyncflow::analysis::{build_diagram, export_dot, fixed_points};
use asyncflow::netparse::load_network;
use asyncflow::theorems::{run_exhaustive, run_fuzz_suite_with, CheckKind, FlowModel, FuzzConfig, Mutant, Reference};
use asyncflow::time::parse_rational;
use asyncflow::{discrete_flow_signal, real_flow_signal, DiscreteCompFn, Network, RealCompFn, State, TimeSeq};

/// Simulate asynchronous Boolean networks and check the laws of their flows.
#[derive(Parser)]
#[command(name = "asyncflow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discrete-time flow from an initial state under a schedule.
    Sim(SimArgs),
    /// Real-time flow, printed as constant pieces.
    Rsim(RsimArgs),
    /// Asynchronous state diagram in DOT format.
    Diagram(DiagramArgs),
    /// States left unchanged by the network.
    Fixpoints { file: PathBuf },
    /// Run the flow law checks on random instances.
    Check(CheckArgs),
}

#[derive(Args)]
struct SimArgs {
    file: PathBuf,
    /// Initial state, coordinate 1 first, e.g. 01.
    #[arg(long)]
    init: String,
    /// Schedule `prefix;(period)`, masks separated by commas, e.g. "01;(11)".
    #[arg(long)]
    alpha: String,
    /// Last step to print.
    #[arg(long)]
    steps: u64,
    /// Also write the trace as JSON ("-" for standard output).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct RsimArgs {
    file: PathBuf,
    #[arg(long)]
    init: String,
    /// Masks applied at the successive instants, e.g. ";(01,10)".
    #[arg(long)]
    alpha: String,
    /// Instants `t0,t1,...;+step`, e.g. "0,1/2;+1".
    #[arg(long, allow_hyphen_values = true)]
    times: String,
    /// Print pieces starting at or before this instant.
    #[arg(long, allow_hyphen_values = true)]
    until: String,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct DiagramArgs {
    file: PathBuf,
    /// Write the DOT graph here instead of standard output.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
    #[arg(long)]
    hide_self_loops: bool,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["file", "random"]))]
struct CheckArgs {
    /// Check every instance on this network.
    file: Option<PathBuf>,
    /// Draw a fresh random network for every instance.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Also check every network of width 1 and 2 against a fixed schedule battery.
    #[arg(long)]
    exhaustive_n2: bool,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Run against a deliberately broken flow implementation.
    #[arg(long, hide = true)]
    mutant: Option<String>,
}

fn read_network(path: &Path) -> Result<Network, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    load_network(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse<T: std::str::FromStr>(what: &str, text: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    text.parse().map_err(|e| format!("{what} {text:?}: {e}"))
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).expect("plain data") + "\n";
    if path == Path::new("-") {
        print!("{text}");
        Ok(())
    } else {
        fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn flow_inputs(file: &Path, init: &str, alpha: &str) -> Result<(Network, State, DiscreteCompFn), String> {
    let net = read_network(file)?;
    let mu: State = parse("state", init)?;
    let alpha: DiscreteCompFn = parse("schedule", alpha)?;
    for (what, width) in [("initial state", mu.width()), ("schedule", alpha.width())] {
        if width != net.width() {
            return Err(format!("{what} has width {width}, network has width {}", net.width()));
        }
    }
    if !alpha.is_progressive() {
        eprintln!(
            "warning: schedule never updates coordinates {:?} after its prefix; the result is a semi-flow",
            alpha.starved_coords()
        );
    }
    Ok((net, mu, alpha))
}

fn sim(args: SimArgs) -> Result<ExitCode, String> {
    let (net, mu, alpha) = flow_inputs(&args.file, &args.init, &args.alpha)?;
    let x = discrete_flow_signal(&net, &mu, &alpha).map_err(|e| e.to_string())?;
    let trace = x.trace(args.steps as i64);
    if args.json.as_deref() != Some(Path::new("-")) {
        println!("{:>6}  {:<w$}  state", "k", "mask", w = net.width().max(4));
        for p in &trace {
            let mask = if p.k < 0 {
                "-".to_string()
            } else {
                alpha.at(p.k as u64).to_string()
            };
            println!("{:>6}  {:<w$}  {}", p.k, mask, p.state, w = net.width().max(4));
        }
    }
    if let Some(path) = &args.json {
        write_json(path, &trace)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn rsim(args: RsimArgs) -> Result<ExitCode, String> {
    let (net, mu, alpha) = flow_inputs(&args.file, &args.init, &args.alpha)?;
    let times: TimeSeq = parse("time sequence", &args.times)?;
    let until = parse_rational(&args.until).map_err(|e| format!("invalid instant {:?}: {e}", args.until))?;
    let rho = RealCompFn::new(alpha, times);
    let y = real_flow_signal(&net, &mu, &rho).map_err(|e| e.to_string())?;
    if args.json.as_deref() != Some(Path::new("-")) {
        for piece in y.intervals(&until) {
            let from = piece.from.map_or("(-inf".to_string(), |t| format!("[{t}"));
            let to = piece.to.map_or("+inf)".to_string(), |t| format!("{t})"));
            println!("{from}, {to}  {}", piece.state);
        }
        match y.eventually_constant() {
            Some(v) => println!("eventually constant: {v}"),
            None => {
                let cycle: Vec<String> = y.cycle_from_periodic_start().iter().map(State::to_string).collect();
                println!(
                    "cycle from {} every {}: {}",
                    y.periodic_since(),
                    y.times().step(),
                    cycle.join(" ")
                );
            }
        }
    }
    if let Some(path) = &args.json {
        write_json(path, &y.trace(&until))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn diagram(args: DiagramArgs) -> Result<ExitCode, String> {
    let net = read_network(&args.file)?;
    let diagram = build_diagram(&net).map_err(|e| e.to_string())?;
    let dot = export_dot(&diagram, args.hide_self_loops);
    match &args.dot {
        Some(path) => fs::write(path, dot).map_err(|e| format!("{}: {e}", path.display()))?,
        None if args.json.is_none() => print!("{dot}"),
        None => {}
    }
    if let Some(path) = &args.json {
        write_json(path, &diagram.to_json())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn fixpoints(file: &Path) -> Result<ExitCode, String> {
    let net = read_network(file)?;
    for mu in fixed_points(&net) {
        println!("{mu}");
    }
    Ok(ExitCode::SUCCESS)
}

fn check(args: CheckArgs) -> Result<ExitCode, String> {
    let network = args.file.as_deref().map(read_network).transpose()?;
    let model: Box<dyn FlowModel> = match &args.mutant {
        None => Box::new(Reference),
        Some(name) => Box::new(Mutant::from_name(name).ok_or_else(|| format!("unknown mutant {name:?}"))?),
    };
    let config = FuzzConfig {
        seed: args.seed,
        trials: args.trials,
        network,
        ..FuzzConfig::default()
    };
    let mut reports = vec![run_fuzz_suite_with(model.as_ref(), &config, &CheckKind::ALL).map_err(|e| e.to_string())?];
    if args.exhaustive_n2 {
        reports.push(run_exhaustive(model.as_ref(), config.k_max).map_err(|e| e.to_string())?);
    }
    if args.json.as_deref() != Some(Path::new("-")) {
        for report in &reports {
            print!("{report}");
        }
    }
    if let Some(path) = &args.json {
        write_json(path, &reports)?;
    }
    let passed = reports.iter().all(|r| r.passed);
    if !passed {
        eprintln!("replay a counterexample with `asyncflow sim` or `asyncflow rsim` using the listed network, init, alpha and times");
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Sim(args) => sim(args),
        Command::Rsim(args) => rsim(args),
        Command::Diagram(args) => diagram(args),
        Command::Fixpoints { file } => fixpoints(&file),
        Command::Check(args) => check(args),
    };
    outcome.unwrap_or_else(|message| {
        eprintln!("error: {}", message.replace('\n', " "));
        ExitCode::from(2)
    })
}
