use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use netquake::attack::run_strategy_until;
use netquake::qre::{qre_estimate_until, QreParams};
use netquake::{Deadline, Error, Graph};
use rayon::prelude::*;

use crate::commands::{load, strategy_params, strategy_spec, y_mode_name};
use crate::record::{
    breakpoints, network_name, round4, sink, tool_version, write_record, Params, ResultRecord,
};
use crate::{BenchArgs, StrategyName, UsageError};

/// A bench column: an attack strategy, optionally interactive, or the sampled estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchStrategy {
    Attack {
        name: StrategyName,
        interactive: bool,
    },
    Qre,
}

impl FromStr for BenchStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        if s == "qre" {
            return Ok(BenchStrategy::Qre);
        }
        let parse = |base: &str| match base {
            "deg" => Some(StrategyName::Deg),
            "betw" => Some(StrategyName::Betw),
            "abet" => Some(StrategyName::Abet),
            "pr" => Some(StrategyName::Pr),
            "ci2" => Some(StrategyName::Ci2),
            "ci3" => Some(StrategyName::Ci3),
            _ => None,
        };
        if let Some(name) = parse(&s) {
            return Ok(BenchStrategy::Attack {
                name,
                interactive: false,
            });
        }
        s.strip_prefix('i')
            .and_then(parse)
            .map(|name| BenchStrategy::Attack {
                name,
                interactive: true,
            })
            .ok_or_else(|| format!("unknown strategy `{s}`"))
    }
}

impl fmt::Display for BenchStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchStrategy::Qre => f.write_str("qre"),
            BenchStrategy::Attack { name, interactive } => {
                let base = match name {
                    StrategyName::Deg => "deg",
                    StrategyName::Betw => "betw",
                    StrategyName::Abet => "abet",
                    StrategyName::Pr => "pr",
                    StrategyName::Ci2 => "ci2",
                    StrategyName::Ci3 => "ci3",
                };
                write!(f, "{}{base}", if *interactive { "i" } else { "" })
            }
        }
    }
}

enum Cell {
    Done(Box<ResultRecord>),
    TimedOut { label: String },
    Failed { label: String, message: String },
}

struct Network {
    name: String,
    graph: Result<Graph, String>,
}

/// Output of one strategy run, before it is wrapped into a record.
struct Run {
    params: Params,
    curve: Vec<f64>,
    r: f64,
    history: Option<Vec<f64>>,
}

fn run_once(
    graph: &Graph,
    strategy: BenchStrategy,
    seed: u64,
    deadline: &Deadline,
) -> netquake::Result<Run> {
    match strategy {
        BenchStrategy::Qre => {
            let params = QreParams {
                seed,
                ..Default::default()
            };
            let resolved = params.resolve(graph.node_count())?;
            let state = qre_estimate_until(graph, &params, deadline)?;
            Ok(Run {
                params: Params {
                    intervals: Some(resolved.intervals),
                    pivots: Some(resolved.pivots),
                    iterations: Some(resolved.iterations),
                    y_mode: Some(y_mode_name(params.rule)),
                    seed,
                    ..Default::default()
                },
                r: state.best_r,
                history: Some(state.history.iter().map(|&r| round4(r)).collect()),
                curve: state.best_materialized,
            })
        }
        BenchStrategy::Attack { name, interactive } => {
            let spec = strategy_spec(name, interactive, graph, None, 0.85).with_seed(seed);
            let outcome = run_strategy_until(graph, &spec, deadline)?;
            Ok(Run {
                params: strategy_params(&spec),
                r: outcome.curve.r,
                history: None,
                curve: outcome.curve.materialized,
            })
        }
    }
}

fn median(mut xs: Vec<u64>) -> u64 {
    xs.sort_unstable();
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        (xs[mid - 1] + xs[mid]) / 2
    }
}

fn run_cell(network: &Network, strategy: BenchStrategy, args: &BenchArgs) -> Cell {
    let graph = match &network.graph {
        Ok(g) => g,
        Err(message) => {
            return Cell::Failed {
                label: strategy.to_string(),
                message: message.clone(),
            }
        }
    };
    let label = match strategy {
        BenchStrategy::Qre => "QRE".to_string(),
        BenchStrategy::Attack { name, interactive } => {
            strategy_spec(name, interactive, graph, None, 0.85).to_string()
        }
    };
    let mut times = Vec::with_capacity(args.repeats);
    let mut first = None;
    for _ in 0..args.repeats {
        let deadline = match args.timeout_s {
            Some(s) => Deadline::after(Duration::from_secs_f64(s)),
            None => Deadline::none(),
        };
        let start = Instant::now();
        match run_once(graph, strategy, args.seed, &deadline) {
            Ok(run) => {
                times.push(start.elapsed().as_millis() as u64);
                first.get_or_insert(run);
            }
            Err(Error::TimedOut) => return Cell::TimedOut { label },
            Err(e) => {
                return Cell::Failed {
                    label,
                    message: e.to_string(),
                }
            }
        }
    }
    let run = first.expect("at least one repeat");
    Cell::Done(Box::new(ResultRecord {
        network_name: network.name.clone(),
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        strategy: label,
        params: run.params,
        r: round4(run.r),
        samples: breakpoints(&run.curve),
        runtime_ms: median(times),
        tool_version: tool_version(),
        history: run.history,
    }))
}

pub fn run(args: &BenchArgs, threads: usize) -> anyhow::Result<()> {
    if args.repeats == 0 {
        return Err(UsageError("--repeats must be at least 1".into()).into());
    }
    if args.timeout_s.is_some_and(|s| !(s.is_finite() && s > 0.0)) {
        return Err(UsageError("--timeout-s must be a positive number".into()).into());
    }
    let networks: Vec<Network> = args
        .inputs
        .iter()
        .map(|path| Network {
            name: network_name(path),
            graph: load(path, args.format).map_err(|e| format!("{e:#}")),
        })
        .collect();
    let jobs: Vec<(usize, BenchStrategy)> = (0..networks.len())
        .flat_map(|i| args.strategies.iter().map(move |&s| (i, s)))
        .collect();
    let cells: Vec<Cell> = if threads > 1 {
        jobs.par_iter()
            .map(|&(i, s)| run_cell(&networks[i], s, args))
            .collect()
    } else {
        jobs.iter()
            .map(|&(i, s)| run_cell(&networks[i], s, args))
            .collect()
    };

    let mut out = sink(args.output.as_deref())?;
    writeln!(out, "network,N,M,strategy,R,runtime_ms")?;
    let mut records = Vec::new();
    for (&(i, _), cell) in jobs.iter().zip(cells) {
        let network = &networks[i];
        let (n, m) = network
            .graph
            .as_ref()
            .map_or((String::new(), String::new()), |g| {
                (g.node_count().to_string(), g.edge_count().to_string())
            });
        match cell {
            Cell::Done(record) => {
                writeln!(
                    out,
                    "{},{n},{m},{},{:.4},{}",
                    network.name, record.strategy, record.r, record.runtime_ms
                )?;
                records.push(*record);
            }
            Cell::TimedOut { label } => {
                writeln!(out, "{},{n},{m},{label},timeout,timeout", network.name)?;
            }
            Cell::Failed { label, message } => {
                eprintln!("{} / {label}: {message}", network.name);
                writeln!(out, "{},{n},{m},{label},error,error", network.name)?;
            }
        }
    }
    out.flush()?;
    if let Some(path) = &args.records {
        write_record(&records, Some(path))?;
    }
    Ok(())
}
