use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use combinf_core::connectivity::{heritability_index, twin_edgewise_correlation, SYMMETRY_TOLERANCE};
use combinf_core::graph::joint_growth_curve;
use combinf_core::{
    compare_msts, exact_pvalue, localize_nodes, mst_from_connectivity, run_experiment, ConnectivityMatrix,
    ExactPValue, MstComparison, SimulationConfig, SortedEdgeWeights, SpanningForest, WeightMode,
};

use crate::error::{CliError, CliResult};
use crate::manifest::CohortManifest;
use crate::matrix_io::{read_matrix, write_matrix};
use crate::svg::growth_curve_svg;

#[derive(Debug, Parser)]
#[command(name = "combinf", version, about = "Exact combinatorial inference on spanning-tree shapes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact P(D >= d) for sequences of length q.
    Pvalue {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        d: usize,
    },
    /// Compare the spanning trees of two connectivity matrices.
    Compare(CompareArgs),
    /// Twin correlations, heritability index and MZ-vs-DZ tree comparison.
    Heritability(HeritabilityArgs),
    /// Simulated comparison of the exact test with sampled permutation tests.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Distance,
    OneMinus,
    MaxTree,
}

impl From<ModeArg> for WeightMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Distance => WeightMode::Distance,
            ModeArg::OneMinus => WeightMode::OneMinus,
            ModeArg::MaxTree => WeightMode::MaxTree,
        }
    }
}

#[derive(Debug, Args)]
pub struct TreeOptions {
    #[arg(long, value_enum, default_value = "one-minus")]
    pub mode: ModeArg,
    #[arg(long)]
    pub localize_center: Option<f64>,
    #[arg(long)]
    pub localize_radius: Option<f64>,
    /// Write the growth-curve plot.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Write both step functions as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Allowed |c_ij - c_ji| when reading matrices.
    #[arg(long, default_value_t = SYMMETRY_TOLERANCE)]
    pub symmetry_tol: f64,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    #[command(flatten)]
    pub tree: TreeOptions,
}

#[derive(Debug, Args)]
pub struct HeritabilityArgs {
    #[arg(long)]
    pub mz: PathBuf,
    #[arg(long)]
    pub dz: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Double-entry Spearman, independent of twin order within pairs.
    #[arg(long)]
    pub symmetrize: bool,
    #[command(flatten)]
    pub tree: TreeOptions,
}

pub fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Pvalue { q, d } => cmd_pvalue(q, d),
        Command::Compare(args) => cmd_compare(&args),
        Command::Heritability(args) => cmd_heritability(&args),
        Command::Simulate { config, out } => cmd_simulate(&config, &out),
    }
}

/// Shortest round-trip decimal, switching to exponent form below 1e-4.
pub fn format_p(v: f64) -> String {
    if v == 0.0 || v >= 1e-4 {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn pvalue_lines(out: &mut String, p: &ExactPValue) {
    let _ = writeln!(out, "p-value: {}", format_p(p.real_value));
    let _ = writeln!(out, "exact: {}", p.fraction_string());
}

pub fn cmd_pvalue(q: usize, d: usize) -> CliResult<String> {
    let p = exact_pvalue(q, d)?;
    let mut out = format!("P(D >= {d}) with q = {q}\n");
    pvalue_lines(&mut out, &p);
    Ok(out)
}

fn read(path: &Path, tol: f64) -> CliResult<ConnectivityMatrix> {
    read_matrix(path, tol).map_err(CliError::Data)
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::data(path.display(), e))
}

fn localize_window(tree: &TreeOptions) -> CliResult<Option<(f64, f64)>> {
    match (tree.localize_center, tree.localize_radius) {
        (Some(c), Some(r)) => Ok(Some((c, r))),
        (None, None) => Ok(None),
        _ => Err(CliError::Usage(
            "--localize-center and --localize-radius must be given together".into(),
        )),
    }
}

fn mismatch_summary(a: &ConnectivityMatrix, b: &ConnectivityMatrix, names: (&str, &str)) -> Option<String> {
    if a.dim() != b.dim() {
        return Some(format!(
            "dimension mismatch: {} is {}x{}, {} is {}x{}",
            names.0,
            a.dim(),
            a.dim(),
            names.1,
            b.dim(),
            b.dim()
        ));
    }
    let diffs: Vec<String> = a
        .labels()
        .iter()
        .zip(b.labels())
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .map(|(i, (x, y))| format!("  node {}: `{x}` vs `{y}`", i + 1))
        .collect();
    if diffs.is_empty() {
        return None;
    }
    let shown = diffs.len().min(10);
    let mut s = format!("{} node label(s) differ between {} and {}:\n", diffs.len(), names.0, names.1);
    s.push_str(&diffs[..shown].join("\n"));
    if diffs.len() > shown {
        let _ = write!(s, "\n  ... and {} more", diffs.len() - shown);
    }
    Some(s)
}

struct TreePair {
    forests: (SpanningForest, SpanningForest),
    weights: (SortedEdgeWeights, SortedEdgeWeights),
    cmp: MstComparison,
}

/// Shared by `compare` and `heritability`: builds both trees, tests them,
/// writes optional plot/CSV and renders the text report.
fn compare_matrices(
    a: &ConnectivityMatrix,
    b: &ConnectivityMatrix,
    names: (&str, &str),
    tree: &TreeOptions,
) -> CliResult<String> {
    let window = localize_window(tree)?;
    if let Some(msg) = mismatch_summary(a, b, names) {
        return Err(CliError::Data(msg));
    }
    let mode: WeightMode = tree.mode.into();
    let (fa, wa) = mst_from_connectivity(a, mode)?;
    let (fb, wb) = mst_from_connectivity(b, mode)?;
    if wa.len() != wb.len() {
        return Err(CliError::Data(format!(
            "trees have different edge counts ({} vs {}); {} has {} component(s), {} has {}",
            wa.len(),
            wb.len(),
            names.0,
            fa.component_count,
            names.1,
            fb.component_count
        )));
    }
    let cmp = compare_msts(&wa, &wb)?;
    let pair = TreePair {
        forests: (fa, fb),
        weights: (wa, wb),
        cmp,
    };

    let mut out = String::new();
    let _ = writeln!(out, "mode: {mode}");
    let _ = writeln!(out, "q: {}", pair.cmp.q);
    let _ = writeln!(out, "D: {}", pair.cmp.d);
    let _ = writeln!(out, "argmax weight: {}", pair.cmp.argmax_weight);
    pvalue_lines(&mut out, &pair.cmp.p_value);
    if pair.cmp.ties_absorbed {
        out.push_str("warning: tied edge weights were absorbed; the exact null assumes tie-free weights\n");
    }
    if let Some((center, radius)) = window {
        let nodes = localize_nodes(&pair.forests.0, &pair.forests.1, center, radius)?;
        let _ = writeln!(out, "nodes within {center} ± {radius}: {}", nodes.len());
        for n in nodes {
            let _ = writeln!(out, "  {n}");
        }
    }
    if let Some(path) = &tree.svg {
        write_file(path, &growth_curve_svg(&pair.weights.0, &pair.weights.1, &pair.cmp, names))?;
    }
    if let Some(path) = &tree.csv {
        let mut csv = format!("weight,{},{}\n", csv_field(names.0), csv_field(names.1));
        for (w, ca, cb) in joint_growth_curve(&pair.weights.0, &pair.weights.1) {
            let _ = writeln!(csv, "{w},{ca},{cb}");
        }
        write_file(path, &csv)?;
    }
    Ok(out)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn cmd_compare(args: &CompareArgs) -> CliResult<String> {
    localize_window(&args.tree)?;
    let a = read(&args.a, args.tree.symmetry_tol)?;
    let b = read(&args.b, args.tree.symmetry_tol)?;
    let names = (stem(&args.a), stem(&args.b));
    compare_matrices(&a, &b, (&names.0, &names.1), &args.tree)
}

fn stem(p: &Path) -> String {
    p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| p.display().to_string())
}

pub fn cmd_heritability(args: &HeritabilityArgs) -> CliResult<String> {
    localize_window(&args.tree)?;
    let tol = args.tree.symmetry_tol;
    let mz = CohortManifest::load_cohort(&args.mz, tol).map_err(CliError::Data)?;
    let dz = CohortManifest::load_cohort(&args.dz, tol).map_err(CliError::Data)?;
    let c_mz = twin_edgewise_correlation(&mz, args.symmetrize)?;
    let c_dz = twin_edgewise_correlation(&dz, args.symmetrize)?;
    if let Some(msg) = mismatch_summary(&c_mz.matrix, &c_dz.matrix, ("MZ", "DZ")) {
        return Err(CliError::Data(msg));
    }
    for (group, r) in [("MZ", &c_mz), ("DZ", &c_dz)] {
        for &(i, j) in &r.degenerate_edges {
            let l = r.matrix.labels();
            log::warn!("{group}: constant twin values on edge {} - {}; correlation set to 0", l[i], l[j]);
        }
    }
    let hi = heritability_index(&c_mz.matrix, &c_dz.matrix)?;

    fs::create_dir_all(&args.out).map_err(|e| CliError::data(args.out.display(), e))?;
    write_matrix(&args.out.join("c_mz.csv"), &c_mz.matrix).map_err(CliError::Data)?;
    write_matrix(&args.out.join("c_dz.csv"), &c_dz.matrix).map_err(CliError::Data)?;
    write_matrix(&args.out.join("hi.csv"), &hi.to_matrix()?).map_err(CliError::Data)?;

    let mut out = format!(
        "pairs: MZ {}, DZ {}\nnodes: {}\nnegative HI edges: {}\n",
        mz.pairs().len(),
        dz.pairs().len(),
        hi.dim(),
        hi.negative_edges().len()
    );
    out.push_str(&compare_matrices(&c_mz.matrix, &c_dz.matrix, ("MZ", "DZ"), &args.tree)?);
    write_file(&args.out.join("report.txt"), &out)?;
    Ok(out)
}

pub fn load_config(path: &Path) -> CliResult<SimulationConfig> {
    let text = fs::read_to_string(path).map_err(|e| CliError::data(path.display(), e))?;
    let cfg: SimulationConfig =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_simulate(config: &Path, out: &Path) -> CliResult<String> {
    let cfg = load_config(config)?;
    let report = run_experiment(&cfg)?;
    fs::create_dir_all(out).map_err(|e| CliError::data(out.display(), e))?;
    let mut json = serde_json::to_string_pretty(&report).map_err(|e| CliError::data("report", e))?;
    json.push('\n');
    let table = report.to_text_table();
    write_file(&out.join("report.json"), &json)?;
    write_file(&out.join("report.txt"), &table)?;
    Ok(table)
}
