use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use graph_spectra::bounds::{self, BoundReport, Caps, CurveFamily};
use graph_spectra::cml::{simulate_sync, MapSpec, SyncParams};
use graph_spectra::io::{parse_walk_family, read_graph, GraphFile};
use graph_spectra::neighborhood::neighborhood_graph;
use graph_spectra::partition::{self, OddWalkFamily, Witness, HBAR_CAP, H_CAP};
use graph_spectra::random_walk::walk_trajectory;
use graph_spectra::spectral::spectrum;
use graph_spectra::{CheegerResult, ErrorKind, GraphError, Method, WeightedGraph};
use serde::Serialize;

/// Spectra, Cheeger constants and eigenvalue bounds of weighted graphs.
///
/// Graphs are read as JSON `{"n": N, "edges": [[i, j, w], ...]}` or as an
/// edge list with one `i j w` per line.
#[derive(Parser)]
#[command(name = "graph-spectra", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues and degree-orthonormal eigenfunctions of the normalized Laplacian.
    Spectrum {
        #[command(flatten)]
        io: InputOutput,
    },
    /// Cheeger, dual Cheeger, balance, odd-walk and clustering constants.
    Constants {
        #[command(flatten)]
        io: InputOutput,
        #[command(flatten)]
        caps: CapArgs,
        /// Odd closed walk family JSON {"walks": [[i, ..., i], ...]}; default is shortest odd walks.
        #[arg(long)]
        walks: Option<PathBuf>,
    },
    /// Every eigenvalue bound, as a list of reports.
    Bounds {
        #[command(flatten)]
        io: InputOutput,
        #[command(flatten)]
        caps: CapArgs,
        /// Single neighborhood order; overrides --l-list.
        #[arg(long)]
        l: Option<usize>,
        /// Comma-separated neighborhood orders.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        l_list: Vec<usize>,
        /// Odd closed walk family JSON; default is shortest odd walks.
        #[arg(long)]
        walks: Option<PathBuf>,
    },
    /// The neighborhood graph of order l, as graph JSON.
    Neighborhood {
        #[command(flatten)]
        io: InputOutput,
        /// Neighborhood order (at least 1).
        #[arg(long)]
        l: usize,
    },
    /// Bound curves over a parametric family, as CSV.
    Curves {
        /// Output file; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Output format (default csv).
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Family: example3, example4 or complete.
        #[arg(long, default_value = "example3")]
        family: String,
        /// Comma-separated family parameters (c, or N for complete graphs).
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,3")]
        params: Vec<f64>,
        /// Comma-separated neighborhood orders.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
        l_list: Vec<usize>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Deviation of P^t f from equilibrium with its two decay bounds.
    Walk {
        #[command(flatten)]
        io: InputOutput,
        /// Comma-separated vertex function; default is the indicator of vertex 0.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        f: Option<Vec<f64>>,
        /// Last step t.
        #[arg(long, default_value_t = 50)]
        steps: usize,
        /// Even neighborhood order for the h[l] bound.
        #[arg(long)]
        l: Option<usize>,
    },
    /// Coupled map lattice synchronization: interval, verdicts and spread trajectory.
    Cml {
        #[command(flatten)]
        io: InputOutput,
        /// Local map: logistic:A, tent:S or custom:x0,y0;x1,y1;...
        #[arg(long, default_value = "logistic:4")]
        map: String,
        /// Coupling strength.
        #[arg(long)]
        eps: f64,
        /// Lattice steps per trial.
        #[arg(long, default_value_t = 5000)]
        steps: usize,
        /// Warm-up steps of the single map before each trial.
        #[arg(long, default_value_t = 1000)]
        transient: usize,
        /// Spread below which the lattice counts as synchronized.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Number of perturbed initial conditions.
        #[arg(long, default_value_t = 5)]
        trials: usize,
        /// Base seed; trial k uses seed + k.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Also write the worst trial's spread trajectory CSV here.
        #[arg(long)]
        spread_csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputOutput {
    /// Graph file (JSON or edge list).
    #[arg(long)]
    input: PathBuf,
    /// Output file, written atomically; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Clone, Copy)]
struct CapArgs {
    /// Largest n for exact Cheeger enumeration (at most 24).
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=H_CAP as u64))]
    cap_h: Option<u64>,
    /// Largest n for exact dual Cheeger enumeration (at most 14).
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=HBAR_CAP as u64))]
    cap_hbar: Option<u64>,
}

impl From<CapArgs> for Caps {
    fn from(c: CapArgs) -> Caps {
        Caps {
            h: c.cap_h.map(|v| v as usize),
            hbar: c.cap_hbar.map(|v| v as usize),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    Usage(String),
    Domain(GraphError),
    Io(String),
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::Domain(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn format_or(given: Option<Format>, default: Format, allowed: &[Format]) -> Run<Format> {
    let f = given.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(Failure::Usage("this command does not support the requested --format".into()));
    }
    Ok(f)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn emit(path: Option<&Path>, content: &str) -> Run<()> {
    let io_err = |e: std::io::Error| Failure::Io(e.to_string());
    let Some(path) = path else {
        std::io::stdout().write_all(content.as_bytes()).map_err(io_err)?;
        return Ok(());
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(content.as_bytes()).map_err(io_err)?;
    tmp.persist(path).map_err(|e| Failure::Io(e.error.to_string()))?;
    Ok(())
}

fn walk_family(g: &WeightedGraph, path: Option<&Path>) -> Result<OddWalkFamily, GraphError> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| GraphError::new(ErrorKind::InvalidInput, format!("{}: {e}", p.display())))?;
            let fam = parse_walk_family(&text)?;
            fam.validate(g)?;
            Ok(fam)
        }
        None => partition::default_odd_walk_family(g),
    }
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct ConstantsReport {
    n: usize,
    h: Option<CheegerResult>,
    hbar: Option<CheegerResult>,
    R: Option<CheegerResult>,
    xi: Option<f64>,
    hbar_upper_from_xi: Option<f64>,
    C0: f64,
    W_tri: f64,
    d_bar: f64,
    H: f64,
    /// Clustering coefficient; unweighted loopless graphs only.
    C: Option<f64>,
    errors: BTreeMap<String, String>,
}

fn constants(g: &WeightedGraph, caps: Caps, walks: Option<&Path>) -> Run<ConstantsReport> {
    g.is_connected()
        .then_some(())
        .ok_or_else(|| GraphError::new(ErrorKind::Disconnected, format!("graph has {} components", g.component_count())))?;
    let mut errors = BTreeMap::new();
    let mut note = |key: &str, e: GraphError| {
        errors.insert(key.to_string(), e.to_string());
    };
    let h = partition::cheeger_exact_with_cap(g, caps.h).map_err(|e| note("h", e)).ok();
    let hbar = match partition::dual_cheeger_exact_with_cap(g, caps.hbar) {
        Ok(r) => Some(r),
        Err(e) => {
            note("hbar", e);
            partition::dual_cheeger_greedy_lower(g).map_err(|e| note("hbar_greedy", e)).ok()
        }
    };
    let r = match partition::balance_ratio_exact(g, caps.h) {
        Ok(r) => Some(r),
        Err(e) => {
            note("R", e);
            partition::greedy_balance_partition(g)
                .map(|gb| CheegerResult {
                    value: gb.partition.balance_ratio(),
                    witness: Witness::Bipartition(gb.partition),
                    method: Method::Greedy,
                })
                .map_err(|e| note("R_greedy", e))
                .ok()
        }
    };
    let xi = walk_family(g, walks)
        .and_then(|fam| partition::xi_constant(g, &fam))
        .map_err(|e| note("xi", e))
        .ok();
    let c = g.clustering_coefficient().map_err(|e| note("C", e)).ok();
    let cl = bounds::clustering_constants(g);
    Ok(ConstantsReport {
        n: g.n(),
        h,
        hbar,
        R: r,
        xi: xi.as_ref().map(|x| x.xi),
        hbar_upper_from_xi: xi.as_ref().map(|x| x.hbar_upper),
        C0: cl.c0,
        W_tri: cl.w_tri,
        d_bar: cl.d_bar,
        H: cl.h,
        C: c,
        errors,
    })
}

fn all_bounds(g: &WeightedGraph, caps: Caps, l_list: &[usize], walks: Option<&Path>) -> Run<Vec<BoundReport>> {
    let s = spectrum(g)?;
    let mut out = Vec::new();
    let skip = |name: &str, e: GraphError| eprintln!("warning: skipped {name}: {e}");
    let h = partition::cheeger_exact_with_cap(g, caps.h).map_err(|e| skip("h-based bounds", e)).ok();
    let hb = partition::dual_cheeger_exact_with_cap(g, caps.hbar).map_err(|e| skip("hbar-based bounds", e)).ok();
    if let Some(h) = &h {
        out.push(bounds::cheeger_bounds(h.value)?);
        out.push(bounds::localized_upper(g, &s, h.value));
    }
    if let Some(hb) = &hb {
        out.push(bounds::dual_cheeger_bounds(hb.value)?);
        if let (Some(h), Some(tri)) = (&h, hb.tripartition()) {
            out.push(bounds::combined_lower(g, tri, h.value));
        }
    }
    out.push(bounds::eigenfunction_diameter_upper(g, &s));
    out.push(bounds::clustering_upper(g));
    match walk_family(g, walks) {
        Ok(fam) => {
            out.push(bounds::xi_dual_upper(g, &fam)?);
            out.push(bounds::xi_product_upper(g, &fam)?);
            out.push(bounds::poincare_upper(g, &fam)?);
        }
        Err(e) => skip("odd-walk bounds", e),
    }
    for &l in l_list {
        let lifted: [(&str, Result<BoundReport, GraphError>); 5] = [
            ("neighborhood sandwich", bounds::neighborhood_sandwich(g, l, caps)),
            ("neighborhood upper", bounds::neighborhood_upper_or(g, l, caps)),
            ("neighborhood interval", bounds::neighborhood_interval(g, l, caps)),
            ("gap around one", bounds::gap_around_one(g, l)),
            ("odd dual upper", bounds::dual_odd_upper(g, l, caps)),
        ];
        for (name, r) in lifted {
            match r {
                Ok(r) => out.push(r),
                Err(e) if e.kind == ErrorKind::SizeCapExceeded => skip(&format!("{name} at l = {l}"), e),
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Run<()> {
    match cli.command {
        Command::Spectrum { io } => {
            let fmt = format_or(io.format, Format::Json, &[Format::Json, Format::Csv])?;
            let s = spectrum(&read_graph(&io.input)?)?;
            let text = if fmt == Format::Json {
                json(&s)
            } else {
                let mut t = String::from("k,eigenvalue\n");
                for (k, v) in s.eigenvalues.iter().enumerate() {
                    t.push_str(&format!("{k},{v}\n"));
                }
                t
            };
            emit(io.output.as_deref(), &text)
        }
        Command::Constants { io, caps, walks } => {
            format_or(io.format, Format::Json, &[Format::Json])?;
            let g = read_graph(&io.input)?;
            emit(io.output.as_deref(), &json(&constants(&g, caps.into(), walks.as_deref())?))
        }
        Command::Bounds { io, caps, l, l_list, walks } => {
            format_or(io.format, Format::Json, &[Format::Json])?;
            let l_list = l.map_or(l_list, |l| vec![l]);
            if l_list.contains(&0) {
                return Err(Failure::Usage("neighborhood orders must be at least 1".into()));
            }
            let g = read_graph(&io.input)?;
            emit(io.output.as_deref(), &json(&all_bounds(&g, caps.into(), &l_list, walks.as_deref())?))
        }
        Command::Neighborhood { io, l } => {
            format_or(io.format, Format::Json, &[Format::Json])?;
            if l == 0 {
                return Err(Failure::Usage("--l must be at least 1".into()));
            }
            let gl = neighborhood_graph(&read_graph(&io.input)?, l)?;
            emit(io.output.as_deref(), &json(&GraphFile::from(&gl)))
        }
        Command::Curves { output, format, family, params, l_list, caps } => {
            let fmt = format_or(format, Format::Csv, &[Format::Json, Format::Csv])?;
            let family: CurveFamily = family.parse().map_err(|e: GraphError| Failure::Usage(e.to_string()))?;
            let rows = bounds::bound_curves(family, &params, &l_list, caps.into());
            let text = if fmt == Format::Csv { bounds::curves_csv(&rows) } else { json(&rows) };
            emit(output.as_deref(), &text)
        }
        Command::Walk { io, f, steps, l } => {
            let fmt = format_or(io.format, Format::Csv, &[Format::Json, Format::Csv])?;
            let g = read_graph(&io.input)?;
            let f = f.unwrap_or_else(|| {
                let mut v = vec![0.0; g.n()];
                v[0] = 1.0;
                v
            });
            let tr = walk_trajectory(&g, &f, steps, l)?;
            let text = if fmt == Format::Csv { tr.to_csv() } else { json(&tr) };
            emit(io.output.as_deref(), &text)
        }
        Command::Cml { io, map, eps, steps, transient, tol, trials, seed, spread_csv } => {
            let fmt = format_or(io.format, Format::Json, &[Format::Json, Format::Csv])?;
            let map: MapSpec = map.parse().map_err(|e: GraphError| Failure::Usage(e.to_string()))?;
            let g = read_graph(&io.input)?;
            let params = SyncParams { eps, steps, transient, tol, trials, seed };
            let report = simulate_sync(&g, &map, params)?;
            if let Some(p) = spread_csv {
                emit(Some(&p), &report.spread_csv())?;
            }
            let text = if fmt == Format::Json { json(&report) } else { report.spread_csv() };
            emit(io.output.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => Cli::command().error(clap::error::ErrorKind::ValueValidation, msg).exit(),
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: io: {msg}");
            ExitCode::from(1)
        }
    }
}
