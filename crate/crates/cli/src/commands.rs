use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fs::OpenOptions;
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{bail, ensure, Context, Result};
use blm_core::bounds::{brute_force_htsp, brute_force_opt};
use blm_core::reductions::{
    build_alternate_blmp, build_alternate_special, build_four_segment_htsp, build_main_blmp, pad_to_4n,
};
use blm_core::{
    lower_bound, placement_cost, square_side, Alphabet, DistanceOracle, HeuristicConfig, Placement, ReductionKind,
    RefinementConfig, SolveReport, DEFAULT_BUDGET, REPORT_COLUMNS,
};

use crate::args::{BenchArgs, BoundArgs, GenerateArgs, RefineArgs, RefineMode, ReportArgs, SolveArgs, TuningArgs};
use crate::files::{read_placement, write_placement, write_text, Instance};
use crate::pipeline::{self, Base, Pipeline, Settings};
use crate::random_probes;

/// Environment variable overriding the exhaustive-search budget.
pub const BUDGET_ENV: &str = "BLM_BRUTE_FORCE_BUDGET";

pub fn generate(args: &GenerateArgs) -> Result<()> {
    let instance = match args.reduction {
        None => {
            let side = args.side.context("--side is required")?;
            ensure!(side >= 1, "--side must be positive");
            let seed = args.seed.context("--seed is required for random instances")?;
            let alphabet = Alphabet::new(args.alphabet.as_deref().unwrap_or("ACGT"))?;
            Instance::grid(random_probes(&alphabet, side * side, args.length, seed)?)?
        }
        Some(kind) => reduction(kind, args)?,
    };
    instance.write(&args.out)
}

fn reduction(kind: ReductionKind, args: &GenerateArgs) -> Result<Instance> {
    if let Some(a) = &args.alphabet {
        ensure!(a == "01", "reductions are binary; --alphabet must be 01");
    }
    if kind == ReductionKind::AlternateSpecial {
        let n = args.n.context("--n is required for alternate_special")?;
        return Instance::grid(build_alternate_special(n)?.probes);
    }
    let source = match &args.source {
        Some(path) => Instance::read(path)?.probes,
        None => {
            let n = args.n.context("--n or --source is required")?;
            let seed = args.seed.context("--seed is required for random source strings")?;
            random_probes(&Alphabet::binary(), n, args.length, seed)?
        }
    };
    let built = match kind {
        ReductionKind::Padded4nHtsp => pad_to_4n(&source)?,
        ReductionKind::MainBlmp => build_main_blmp(&source)?,
        ReductionKind::FourSegmentHtsp => build_four_segment_htsp(&source)?,
        ReductionKind::AlternateBlmp => build_alternate_blmp(&source)?,
        ReductionKind::AlternateSpecial => unreachable!("handled above"),
    };
    Ok(if kind.is_grid() {
        Instance::grid(built.probes)?
    } else {
        Instance::ring(built.probes)
    })
}

fn settings(tuning: &TuningArgs, seed: u64) -> Result<Settings> {
    let heuristic = HeuristicConfig {
        swm_window: tuning.swm_window,
        swm_step: tuning.swm_step,
        repx_lookahead_rows: tuning.lookahead,
        qepx_orientations: tuning.orientations,
        qepx_split: tuning.quadrant_split,
        seed,
    };
    heuristic.validate()?;
    let refinement = RefinementConfig {
        degree: tuning.degree,
        rhra_iterations: tuning.iterations,
        seed,
        ..RefinementConfig::default()
    };
    Ok(Settings {
        heuristic,
        refinement,
        tour: Some(tuning.tour),
    })
}

fn seed_for(needed: bool, seed: Option<u64>, what: &str) -> Result<u64> {
    match seed {
        Some(s) => Ok(s),
        None if needed => bail!("{what} is randomized; pass --seed"),
        None => Ok(0),
    }
}

fn timing(elapsed: Duration, omit: bool) -> Option<f64> {
    (!omit).then_some(elapsed.as_secs_f64())
}

fn test_case_name(args: &ReportArgs, input: &Path) -> String {
    args.test_case.clone().unwrap_or_else(|| {
        input
            .file_stem()
            .map_or_else(|| "instance".to_string(), |s| s.to_string_lossy().into_owned())
    })
}

/// Appends `row` to the CSV at `path`, writing the header into empty files.
pub fn append_report(path: &Path, row: &SolveReport) -> Result<()> {
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening {}", path.display()))?;
    let fresh = file.metadata()?.len() == 0;
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    if fresh {
        writer.write_record(REPORT_COLUMNS)?;
    }
    writer.write_record(row.record())?;
    writer.flush()?;
    Ok(())
}

pub fn report_csv(rows: &[SolveReport]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(REPORT_COLUMNS)?;
    for row in rows {
        writer.write_record(row.record())?;
    }
    Ok(String::from_utf8(writer.into_inner()?)?)
}

fn emit(row: &SolveReport, args: &ReportArgs, placement_on_stdout: bool) -> Result<()> {
    match &args.report {
        Some(path) => append_report(path, row),
        None if placement_on_stdout => {
            eprint!("{}", report_csv(std::slice::from_ref(row))?);
            Ok(())
        }
        None => write_text(Path::new("-"), &report_csv(std::slice::from_ref(row))?),
    }
}

fn on_stdout(out: &Option<std::path::PathBuf>) -> bool {
    out.as_ref().is_some_and(|p| p.as_os_str() == "-")
}

/// Reported starting cost: the input order for plain placements, the base
/// placement when the run refines it.
fn init_cost(pipeline: Pipeline, run: &pipeline::Run, oracle: &DistanceOracle, side: usize) -> Result<u64> {
    if pipeline.is_refined() {
        Ok(run.base_cost)
    } else {
        Ok(placement_cost(&Placement::identity(side), oracle)?)
    }
}

pub fn solve(args: &SolveArgs) -> Result<()> {
    let instance = Instance::read(&args.input)?;
    let side = instance.side()?;
    let pipeline: Pipeline = args.algo.parse()?;
    let seed = seed_for(pipeline.needs_seed(), args.seed, &pipeline.to_string())?;
    let settings = settings(&args.tuning, seed)?;
    let oracle = DistanceOracle::auto(&instance.probes);

    let run = pipeline::run(pipeline, &oracle, side, &settings)?;
    let row = SolveReport {
        test_case: test_case_name(&args.report, &args.input),
        probes: instance.probes.len(),
        lower_bound: if args.report.no_lower_bound {
            None
        } else {
            Some(lower_bound(&oracle, side)?)
        },
        init_cost: init_cost(pipeline, &run, &oracle, side)?,
        algorithm: pipeline.to_string(),
        final_cost: run.final_cost,
        wall_time_seconds: timing(run.elapsed, args.report.omit_time),
        seed,
    };
    if let Some(out) = &args.out {
        write_placement(out, &run.placement)?;
    }
    emit(&row, &args.report, on_stdout(&args.out))
}

pub fn refine(args: &RefineArgs) -> Result<()> {
    let instance = Instance::read(&args.input)?;
    let side = instance.side()?;
    let placement = read_placement(&args.placement, side)?;
    let (hra_step, rhra_step, name) = match args.mode {
        RefineMode::Hra => (true, false, "hra"),
        RefineMode::Rhra => (false, true, "rhra"),
        RefineMode::Both => (true, true, "hra+rhra"),
    };
    let seed = seed_for(rhra_step, args.seed, "rhra")?;
    let config = RefinementConfig {
        degree: args.degree,
        rhra_iterations: args.iterations,
        seed,
        ..RefinementConfig::default()
    };
    let oracle = DistanceOracle::auto(&instance.probes);
    let init_cost = placement_cost(&placement, &oracle)?;

    let start = Instant::now();
    let refined = pipeline::refine(placement, &oracle, hra_step, rhra_step, &config)?;
    let elapsed = start.elapsed();
    let row = SolveReport {
        test_case: test_case_name(&args.report, &args.input),
        probes: instance.probes.len(),
        lower_bound: if args.report.no_lower_bound {
            None
        } else {
            Some(lower_bound(&oracle, side)?)
        },
        init_cost,
        algorithm: name.to_string(),
        final_cost: placement_cost(&refined, &oracle)?,
        wall_time_seconds: timing(elapsed, args.report.omit_time),
        seed,
    };
    if let Some(out) = &args.out {
        write_placement(out, &refined)?;
    }
    emit(&row, &args.report, on_stdout(&args.out))
}

/// Expands `3`, `0..20` style seed lists.
pub fn parse_seeds(items: &[String]) -> Result<Vec<u64>> {
    let mut seeds = Vec::new();
    for item in items {
        match item.split_once("..") {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().with_context(|| format!("bad seed range {item:?}"))?;
                let b: u64 = b.trim().parse().with_context(|| format!("bad seed range {item:?}"))?;
                ensure!(a < b, "empty seed range {item:?}");
                seeds.extend(a..b);
            }
            None => seeds.push(item.trim().parse().with_context(|| format!("bad seed {item:?}"))?),
        }
    }
    Ok(seeds)
}

pub fn bench(args: &BenchArgs) -> Result<()> {
    let pipelines: Vec<Pipeline> = args.algos.iter().map(|a| a.parse()).collect::<Result<_>>()?;
    let seeds = parse_seeds(&args.seeds)?;
    let alphabet = Alphabet::new(&args.alphabet)?;
    let sides: Vec<usize> = args
        .sizes
        .iter()
        .map(|&n| square_side(n).with_context(|| format!("size {n} is not a perfect square")))
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (&size, &side) in args.sizes.iter().zip(&sides) {
        for &seed in &seeds {
            let test_case = format!("t-{seed}");
            let probes = random_probes(&alphabet, size, args.length, seed)?;
            let oracle = DistanceOracle::auto(&probes);
            let settings = settings(&args.tuning, seed)?;
            let lb = if size <= args.lower_bound_max {
                Some(lower_bound(&oracle, side)?)
            } else {
                None
            };
            let input_cost = placement_cost(&Placement::identity(side), &oracle)?;
            let mut bases: HashMap<Base, (Placement, Duration)> = HashMap::new();

            for &pipeline in &pipelines {
                let outcome = (|| -> Result<SolveReport> {
                    let (base, base_time) = match bases.entry(pipeline.base) {
                        Entry::Occupied(e) => e.get().clone(),
                        Entry::Vacant(e) => {
                            let start = Instant::now();
                            let p = pipeline::place(&oracle, side, pipeline.base, &settings)?;
                            e.insert((p, start.elapsed())).clone()
                        }
                    };
                    let base_cost = placement_cost(&base, &oracle)?;
                    let start = Instant::now();
                    let refined = pipeline::refine(base, &oracle, pipeline.hra, pipeline.rhra, &settings.refinement)?;
                    let elapsed = base_time + start.elapsed();
                    Ok(SolveReport {
                        test_case: test_case.clone(),
                        probes: size,
                        lower_bound: lb,
                        init_cost: if pipeline.is_refined() { base_cost } else { input_cost },
                        algorithm: pipeline.to_string(),
                        final_cost: placement_cost(&refined, &oracle)?,
                        wall_time_seconds: timing(elapsed, args.omit_time),
                        seed,
                    })
                })();
                match outcome {
                    Ok(row) => rows.push(row),
                    Err(e) => {
                        eprintln!("{test_case} ({size} probes) {pipeline}: {e:#}");
                        failures.push(format!("{test_case}/{size}/{pipeline}"));
                    }
                }
            }
        }
    }
    write_text(&args.out, &report_csv(&rows)?)?;
    if !failures.is_empty() {
        bail!(
            "{} of {} runs failed: {}",
            failures.len(),
            failures.len() + rows.len(),
            failures.join(", ")
        );
    }
    Ok(())
}

fn budget(args: &BoundArgs) -> Result<u64> {
    if let Some(b) = args.budget {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{BUDGET_ENV}={v:?} is not a number")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

pub fn bound(args: &BoundArgs) -> Result<()> {
    let instance = Instance::read(&args.input)?;
    let oracle = DistanceOracle::auto(&instance.probes);
    let mut text = String::new();
    match instance.side() {
        Ok(side) => {
            text.push_str(&format!("lower_bound {}\n", lower_bound(&oracle, side)?));
            if args.exact {
                let (cost, placement) = brute_force_opt(&oracle, side, budget(args)?)?;
                text.push_str(&format!("optimum {cost}\n"));
                if let Some(out) = &args.out {
                    write_placement(out, &placement)?;
                }
            }
        }
        Err(_) => {
            ensure!(
                args.exact,
                "ring instances have no grid lower bound; pass --exact for the optimal tour"
            );
            let (cost, order) = brute_force_htsp(&oracle, budget(args)?)?;
            text.push_str(&format!("htsp_optimum {cost}\n"));
            if let Some(out) = &args.out {
                let ids: String = order.iter().map(|id| format!("{id}\n")).collect();
                write_text(out, &ids)?;
            }
        }
    }
    print!("{text}");
    Ok(())
}
