use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sssp_frontier::empirical::{dijkstra, geometry_of, run_scaling_experiment, Graph, WeightRange};
use sssp_frontier::format::{parse_count, sig};
use sssp_frontier::frontier::{parse_path_axis, ExponentRange, PathAxisEntry};
use sssp_frontier::report::{
    cost_table_csv, crossover_csv, empirical_csv, ratio_series_csv, ratio_table_csv,
    reproduce_tables, sweep_csv, sweep_svg, zone_map_csv, Metadata, ReportBundle, DISPLAY_DIGITS,
};
use sssp_frontier::scenario::{builtin_scenario, GridMode};
use sssp_frontier::{
    builtin_scenarios, find_crossover, grover_barrier_check, map_zones, run_sweep, Error,
    MarginalBand, ModelRegistry, NGrid, ScalingLaw, Scenario,
};

mod output;

use output::{Failure, Outputs};

#[derive(Parser)]
#[command(
    name = "sssp-frontier",
    version,
    about = "Cost-model frontier analysis for classical and quantum SSSP"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rebuild the sparse cost table and the ratio table, plus figure data
    /// for the four built-in scenarios.
    ReproduceTables {
        #[arg(long, default_value = "calibrated")]
        grid: GridMode,
        #[command(flatten)]
        band: BandArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Evaluate every model over a log-spaced grid of n.
    Sweep {
        /// Built-in scenario name or scenario file; repeatable. Defaults to all built-ins.
        #[arg(long)]
        scenario: Vec<String>,
        #[command(flatten)]
        grid: GridArgs,
        /// Also write an SVG chart per scenario.
        #[arg(long)]
        svg: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Locate the n where two models cost the same.
    Crossover {
        /// Built-in scenario name or scenario file; repeatable. Defaults to all built-ins.
        #[arg(long)]
        scenario: Vec<String>,
        #[arg(long, default_value = "dijkstra")]
        a: String,
        #[arg(long, default_value = "wesolowski")]
        b: String,
        #[arg(long, default_value = "1e2", value_parser = parse_real)]
        nmin: f64,
        #[arg(long, default_value = "1e8", value_parser = parse_real)]
        nmax: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Map the winning family over density exponent and path-length law.
    Zones {
        /// Density exponents as start:end:count (m = 10^(4 - 3a) n^a).
        #[arg(long, default_value = "0.5:2.5:9")]
        alpha: ExponentRange,
        /// Path-length laws: short, long, or power:c:e / polylog:c:e.
        #[arg(long, default_value = "short,long", value_parser = parse_paths)]
        paths: PathList,
        #[arg(long = "ref-n", default_value = "1e6", value_parser = parse_real)]
        ref_n: f64,
        #[command(flatten)]
        band: BandArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run instrumented Dijkstra on generated graphs and fit its work, or
    /// on one graph read from an edge list.
    Empirical {
        /// Scenario whose density law generates the graphs.
        #[arg(long, default_value = "sparse-short", conflicts_with = "graph")]
        scenario: String,
        /// Comma-separated vertex counts.
        #[arg(long, default_value = "256,512,1024,2048,4096,8192,16384", value_delimiter = ',', value_parser = parse_vertices)]
        sizes: Vec<u32>,
        #[arg(long, default_value_t = 3)]
        reps: u32,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// int:lo:hi or real:lo:hi
        #[arg(long, default_value = "int:1:10", value_parser = parse_weights)]
        weights: WeightRange,
        /// Edge-list file to measure instead of generating graphs.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 0, requires = "graph")]
        source: u32,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, value_parser = parse_vertex_count)]
    nmin: Option<u64>,
    #[arg(long, value_parser = parse_vertex_count)]
    nmax: Option<u64>,
    /// Points per decade.
    #[arg(long)]
    ppd: Option<u32>,
}

#[derive(Args)]
struct BandArgs {
    /// Marginal ratio band as lo,hi.
    #[arg(long, default_value = "0.8,1.25", value_parser = parse_band)]
    band: MarginalBand,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "both")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Both,
}

impl Format {
    fn csv(self) -> bool {
        self != Format::Json
    }

    fn json(self) -> bool {
        self != Format::Csv
    }
}

#[derive(Clone)]
struct PathList(Vec<PathAxisEntry>);

fn parse_real(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("expected a finite number, got `{s}`")),
    }
}

fn parse_vertex_count(s: &str) -> Result<u64, Error> {
    parse_count(s)
}

fn parse_vertices(s: &str) -> Result<u32, String> {
    let n = parse_count(s).map_err(|e| e.to_string())?;
    u32::try_from(n).map_err(|_| format!("vertex count {n} does not fit in 32 bits"))
}

fn parse_paths(s: &str) -> Result<PathList, Error> {
    parse_path_axis(s).map(PathList)
}

fn parse_band(s: &str) -> Result<MarginalBand, String> {
    let (lo, hi) = s.split_once(',').ok_or("expected lo,hi")?;
    let (lo, hi) = (parse_real(lo)?, parse_real(hi)?);
    if !(0.0 < lo && lo <= hi) {
        return Err(format!("band needs 0 < lo <= hi, got [{lo}, {hi})"));
    }
    Ok(MarginalBand { lo, hi })
}

fn parse_weights(s: &str) -> Result<WeightRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [kind, lo, hi] = parts[..] else {
        return Err("expected int:lo:hi or real:lo:hi".into());
    };
    match kind {
        "int" => {
            let lo = lo
                .trim()
                .parse()
                .map_err(|_| format!("bad integer `{lo}`"))?;
            let hi = hi
                .trim()
                .parse()
                .map_err(|_| format!("bad integer `{hi}`"))?;
            if lo > hi {
                return Err(format!("weight range needs lo <= hi, got {lo}:{hi}"));
            }
            Ok(WeightRange::Integer { lo, hi })
        }
        "real" => {
            let (lo, hi) = (parse_real(lo)?, parse_real(hi)?);
            if !(0.0 <= lo && lo <= hi) {
                return Err(format!("weight range needs 0 <= lo <= hi, got {lo}:{hi}"));
            }
            Ok(WeightRange::Real { lo, hi })
        }
        other => Err(format!("unknown weight kind `{other}`")),
    }
}

/// A built-in name, or else a path to a scenario file (whose grid, if any,
/// is returned alongside).
fn load_scenario(spec: &str) -> Result<(Scenario, Option<NGrid>), Failure> {
    if let Some(s) = builtin_scenario(spec) {
        return Ok((s, None));
    }
    let path = Path::new(spec);
    if !path.exists() {
        let names: Vec<String> = builtin_scenarios().into_iter().map(|s| s.name).collect();
        return Err(Failure::usage(format!(
            "`{spec}` is neither a built-in scenario ({}) nor a file",
            names.join(", ")
        )));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let def = Scenario::parse_definition(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok((def.scenario, def.grid))
}

fn load_scenarios(specs: &[String]) -> Result<Vec<(Scenario, Option<NGrid>)>, Failure> {
    if specs.is_empty() {
        return Ok(builtin_scenarios().into_iter().map(|s| (s, None)).collect());
    }
    specs.iter().map(|s| load_scenario(s)).collect()
}

fn resolve_grid(args: &GridArgs, file_grid: Option<&NGrid>) -> Result<NGrid, Failure> {
    let base = file_grid.cloned().unwrap_or_default();
    if args.nmin.is_none() && args.nmax.is_none() && args.ppd.is_none() {
        return Ok(base);
    }
    NGrid::log_spaced(
        args.nmin.unwrap_or(base.n_min),
        args.nmax.unwrap_or(base.n_max),
        args.ppd.unwrap_or(base.points_per_decade),
    )
    .map_err(Failure::usage)
}

fn check_model(reg: &ModelRegistry, id: &str) -> Result<(), Failure> {
    reg.get(id).map(|_| ()).map_err(|_| {
        Failure::usage(format!(
            "unknown model `{id}`; available: {}",
            reg.ids().join(", ")
        ))
    })
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    let reg = ModelRegistry::default();
    match cli.command {
        Command::ReproduceTables { grid, band, out } => {
            let tables = reproduce_tables(grid, &band.band)?;
            let mut meta = Metadata::new("reproduce-tables");
            meta.grid_mode = Some(grid);
            let mut bundle = ReportBundle::new(meta);
            let mut files = Outputs::new(&out.out);
            if out.format.csv() {
                files.add("table_costs.csv", cost_table_csv(&tables.costs));
                files.add("table_ratios.csv", ratio_table_csv(&tables.ratios));
            }
            for sc in builtin_scenarios() {
                let sweep = run_sweep(&sc, &NGrid::default(), &reg)?;
                if out.format.csv() {
                    files.add(
                        format!("sweep_{}.csv", file_stem(&sc.name)),
                        sweep_csv(&sweep),
                    );
                }
                bundle.sweeps.push(sweep);
            }
            print_tables(&tables);
            bundle.tables = Some(tables);
            if out.format.json() {
                files.add("report.json", bundle.to_json()?);
            }
            files.commit()
        }
        Command::Sweep {
            scenario,
            grid,
            svg,
            out,
        } => {
            let mut bundle = ReportBundle::new(Metadata::new("sweep"));
            let mut files = Outputs::new(&out.out);
            for (sc, file_grid) in load_scenarios(&scenario)? {
                let g = resolve_grid(&grid, file_grid.as_ref())?;
                let sweep = run_sweep(&sc, &g, &reg)?;
                let stem = file_stem(&sc.name);
                if out.format.csv() {
                    files.add(format!("sweep_{stem}.csv"), sweep_csv(&sweep));
                }
                if svg {
                    files.add(format!("sweep_{stem}.svg"), sweep_svg(&sweep));
                }
                let barrier = grover_barrier_check(&sc, &g, &reg)?;
                if out.format.csv() {
                    files.add(
                        format!("ratio_grover_dijkstra_{stem}.csv"),
                        ratio_series_csv(&barrier),
                    );
                }
                println!(
                    "{}: {} points, n in [{}, {}]",
                    sc.name,
                    sweep.rows.len(),
                    g.n_min,
                    g.n_max
                );
                bundle.sweeps.push(sweep);
                bundle.ratio_series.push(barrier);
            }
            if out.format.json() {
                files.add("report.json", bundle.to_json()?);
            }
            files.commit()
        }
        Command::Crossover {
            scenario,
            a,
            b,
            nmin,
            nmax,
            out,
        } => {
            check_model(&reg, &a)?;
            check_model(&reg, &b)?;
            if !(nmin >= 2.0 && nmin < nmax && nmax <= 1e12) {
                return Err(Failure::usage(format!(
                    "need 2 <= nmin < nmax <= 1e12, got [{nmin}, {nmax}]"
                )));
            }
            let mut bundle = ReportBundle::new(Metadata::new("crossover"));
            for (sc, _) in load_scenarios(&scenario)? {
                let r = find_crossover(&sc, &reg, &a, &b, nmin, nmax)?;
                match &r.crossing {
                    Some(c) => println!(
                        "{}: {a} = {b} at n* = {} (round {}){}",
                        sc.name,
                        sig(c.n_star, 6),
                        c.n_star_rounded,
                        if r.more_crossings {
                            "; further crossings in range"
                        } else {
                            ""
                        }
                    ),
                    None => println!(
                        "{}: no crossing of {a} and {b} in [{nmin}, {nmax}]",
                        sc.name
                    ),
                }
                bundle.crossovers.push(r);
            }
            let mut files = Outputs::new(&out.out);
            if out.format.csv() {
                files.add("crossover.csv", crossover_csv(&bundle.crossovers));
            }
            if out.format.json() {
                files.add("report.json", bundle.to_json()?);
            }
            files.commit()
        }
        Command::Zones {
            alpha,
            paths,
            ref_n,
            band,
            out,
        } => {
            if ref_n < 2.0 {
                return Err(Failure::usage(format!("--ref-n must be >= 2, got {ref_n}")));
            }
            let map = map_zones(&alpha.values(), &paths.0, ref_n, &reg, &band.band)?;
            for cell in &map.cells {
                println!(
                    "alpha {:<6} {:<24} {:<11} winner {:<10} ratio {}",
                    sig(cell.alpha, 4),
                    cell.path_label,
                    cell.classification,
                    cell.winner,
                    sig(cell.ratio, DISPLAY_DIGITS)
                );
            }
            let mut files = Outputs::new(&out.out);
            if out.format.csv() {
                files.add("zones.csv", zone_map_csv(&map));
            }
            let mut bundle = ReportBundle::new(Metadata::new("zones"));
            bundle.zone_maps.push(map);
            if out.format.json() {
                files.add("report.json", bundle.to_json()?);
            }
            files.commit()
        }
        Command::Empirical {
            scenario,
            sizes,
            reps,
            seed,
            weights,
            graph,
            source,
            out,
        } => {
            let mut files = Outputs::new(&out.out);
            if let Some(path) = graph {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
                let g = Graph::parse_edge_list(&text)
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
                if source >= g.n() {
                    return Err(Failure::usage(format!(
                        "--source {source} is not a vertex of a {}-vertex graph",
                        g.n()
                    )));
                }
                let run = dijkstra(&g, source)?;
                let geo = geometry_of(&run);
                println!(
                    "n {} arcs {} reachable {} max hops {} max distance {}",
                    g.n(),
                    g.m(),
                    geo.reachable,
                    geo.hops.max,
                    sig(geo.weighted.max, 6)
                );
                if out.format.csv() {
                    files.add("distances.csv", output::distances_csv(&run));
                }
                if out.format.json() {
                    files.add("run.json", output::run_json(&run, &geo)?);
                }
                return files.commit();
            }
            let (sc, _) = load_scenario(&scenario)?;
            if reps == 0 {
                return Err(Failure::usage("--reps must be at least 1"));
            }
            let law: ScalingLaw = sc.density;
            let exp = run_scaling_experiment(&sizes, &law, weights, seed, reps)?;
            match (exp.fit.slope, exp.fit.r_squared) {
                (Some(slope), Some(r2)) => println!(
                    "{} runs: slope {} R^2 {} constant {}",
                    exp.runs.len(),
                    sig(slope, 4),
                    sig(r2, 6),
                    sig(exp.fit.constant, 4)
                ),
                _ => println!(
                    "{} runs: degenerate fit, constant {}",
                    exp.runs.len(),
                    sig(exp.fit.constant, 4)
                ),
            }
            if out.format.csv() {
                files.add("empirical.csv", empirical_csv(&exp));
            }
            let mut meta = Metadata::new("empirical");
            meta.seeds = vec![seed];
            let mut bundle = ReportBundle::new(meta);
            bundle.empirical.push(exp);
            if out.format.json() {
                files.add("report.json", bundle.to_json()?);
            }
            files.commit()
        }
    }
}

fn print_tables(t: &sssp_frontier::report::Tables) {
    println!("cost table ({} grid)", t.grid_mode);
    print!("{:<14}{:>12}", "scenario", "n");
    for m in &t.costs.models {
        print!("{m:>12}");
    }
    println!("  winner");
    for r in &t.costs.rows {
        print!("{:<14}{:>12}", r.scenario, r.n);
        for &c in &r.costs {
            print!("{:>12}", sig(c, DISPLAY_DIGITS));
        }
        println!("  {}", r.winner);
    }
    println!();
    println!("ratio table ({} grid)", t.grid_mode);
    println!(
        "{:<14}{:>12}{:>12}{:>12}{:>10}  advantage",
        "scenario", "n", "A", "B", "A/B"
    );
    for r in &t.ratios.rows {
        println!(
            "{:<14}{:>12}{:>12}{:>12}{:>10}  {}",
            r.scenario,
            r.n,
            sig(r.best_classical_cost, DISPLAY_DIGITS),
            sig(r.quantum_cost, DISPLAY_DIGITS),
            sig(r.displayed_ratio, DISPLAY_DIGITS),
            r.classification
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
