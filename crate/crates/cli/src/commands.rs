use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::Context;
use netquake::attack::{run_strategy, Metric, Mode, StrategySpec};
use netquake::centrality::PageRankParams;
use netquake::io::{load_path, write_edge_list, Format};
use netquake::netgen::{generate_ba, generate_er};
use netquake::qre::{qre_estimate, PivotRule, QreParams};
use netquake::Graph;

use crate::record::{
    breakpoints, network_name, round4, sink, tool_version, write_curve_csv, write_record, Params,
    ResultRecord,
};
use crate::{
    AttackArgs, GenArgs, InputFormat, ModelName, QreArgs, StrategyName, UsageError, YMode,
};

pub fn load(path: &Path, format: Option<InputFormat>) -> anyhow::Result<Graph> {
    let format = match format {
        Some(InputFormat::Edgelist) => Format::EdgeList,
        Some(InputFormat::Gml) => Format::Gml,
        None => Format::from_path(path),
    };
    load_path(path, format).with_context(|| format!("loading {}", path.display()))
}

pub fn default_pivots(n: usize) -> usize {
    PivotRule::Scaled.count(n).min(n.max(1))
}

pub fn strategy_spec(
    name: StrategyName,
    interactive: bool,
    graph: &Graph,
    pivots: Option<usize>,
    damping: f64,
) -> StrategySpec {
    let metric = match name {
        StrategyName::Deg => Metric::Degree,
        StrategyName::Betw => Metric::Betweenness,
        StrategyName::Abet => Metric::ApproxBetweenness {
            pivots: pivots.unwrap_or_else(|| default_pivots(graph.node_count())),
        },
        StrategyName::Pr => Metric::PageRank(PageRankParams {
            damping,
            ..Default::default()
        }),
        StrategyName::Ci2 => Metric::CollectiveInfluence { radius: 2 },
        StrategyName::Ci3 => Metric::CollectiveInfluence { radius: 3 },
    };
    let mode = if interactive {
        Mode::Interactive
    } else {
        Mode::Static
    };
    StrategySpec::new(metric, mode)
}

pub fn strategy_params(spec: &StrategySpec) -> Params {
    let mut params = Params {
        seed: spec.seed,
        ..Default::default()
    };
    if spec.mode == Mode::Interactive {
        params.batch = Some(spec.batch);
    }
    match spec.metric {
        Metric::ApproxBetweenness { pivots } => params.pivots = Some(pivots),
        Metric::PageRank(p) => params.damping = Some(p.damping),
        Metric::CollectiveInfluence { radius } => params.radius = Some(radius),
        Metric::Degree | Metric::Betweenness => {}
    }
    params
}

pub fn qre_params(args: &QreArgs) -> QreParams {
    QreParams {
        intervals: args.x,
        pivots: args.y,
        iterations: args.z,
        seed: args.seed,
        rule: match args.y_mode {
            YMode::Scaled => PivotRule::Scaled,
            YMode::PaperLiteral => PivotRule::PaperLiteral,
        },
    }
}

pub fn y_mode_name(rule: PivotRule) -> &'static str {
    match rule {
        PivotRule::Scaled => "scaled",
        PivotRule::PaperLiteral => "paper_literal",
    }
}

pub fn attack(args: &AttackArgs) -> anyhow::Result<()> {
    let graph = load(&args.input.input, args.input.format)?;
    let spec = strategy_spec(
        args.strategy,
        args.interactive,
        &graph,
        args.pivots,
        args.damping,
    )
    .with_batch(args.batch)
    .with_seed(args.seed);
    spec.validate().map_err(|e| UsageError(e.to_string()))?;
    let start = Instant::now();
    let outcome = run_strategy(&graph, &spec)?;
    let runtime_ms = start.elapsed().as_millis() as u64;
    let curve = &outcome.curve.materialized;
    let record = ResultRecord {
        network_name: network_name(&args.input.input),
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        strategy: spec.to_string(),
        params: strategy_params(&spec),
        r: round4(outcome.curve.r),
        samples: breakpoints(curve),
        runtime_ms,
        tool_version: tool_version(),
        history: None,
    };
    if let Some(path) = &args.curve_csv {
        write_curve_csv(curve, path)?;
    }
    write_record(&record, args.output.as_deref())
}

pub fn qre(args: &QreArgs) -> anyhow::Result<()> {
    let graph = load(&args.input.input, args.input.format)?;
    let params = qre_params(args);
    let resolved = params
        .resolve(graph.node_count())
        .map_err(|e| UsageError(e.to_string()))?;
    let start = Instant::now();
    let state = qre_estimate(&graph, &params)?;
    let runtime_ms = start.elapsed().as_millis() as u64;
    let record = ResultRecord {
        network_name: network_name(&args.input.input),
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        strategy: "QRE".into(),
        params: Params {
            intervals: Some(resolved.intervals),
            pivots: Some(resolved.pivots),
            iterations: Some(resolved.iterations),
            y_mode: Some(y_mode_name(params.rule)),
            seed: args.seed,
            ..Default::default()
        },
        r: round4(state.best_r),
        samples: breakpoints(&state.best_materialized),
        runtime_ms,
        tool_version: tool_version(),
        history: Some(state.history.iter().map(|&r| round4(r)).collect()),
    };
    if let Some(path) = &args.curve_csv {
        write_curve_csv(&state.best_materialized, path)?;
    }
    write_record(&record, args.output.as_deref())
}

pub fn gen(args: &GenArgs) -> anyhow::Result<()> {
    let graph = match args.model {
        ModelName::Ba => {
            let m = args
                .m
                .ok_or_else(|| UsageError("--model ba requires --m".into()))?;
            generate_ba(args.n, m, args.seed)
        }
        ModelName::Er => {
            let p = args
                .p
                .ok_or_else(|| UsageError("--model er requires --p".into()))?;
            generate_er(args.n, p, args.seed)
        }
    }
    .map_err(|e| UsageError(e.to_string()))?;
    let mut out = sink(args.output.as_deref())?;
    write_edge_list(&graph, &mut out)?;
    out.flush()?;
    Ok(())
}
