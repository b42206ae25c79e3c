use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use localdom::preset::PresetSpec;
use localdom::scalar::parse_rational;
use localdom::{
    gen, run_pipeline, ClassPreset, Graph, Phase3Variant, PipelineConfig,
};
use rayon::prelude::*;
use serde::Serialize;

pub struct PipelineOptions {
    pub preset: String,
    pub params: Option<PathBuf>,
    pub phase3: String,
    pub epsilon: String,
    pub strict: bool,
}

pub struct BenchOptions {
    pub class: String,
    pub count: usize,
    pub sizes: String,
    pub seed: u64,
    pub preset: Option<String>,
    pub epsilon: String,
    pub budget: u64,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let mut out = output(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn load_graph(path: &Path) -> Result<Graph> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Graph::read_edge_list(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

/// Generates an instance of `class`, which is a preset-like name.
pub fn generate(class: &str, n: usize, seed: u64) -> Result<Graph> {
    let parts: Vec<&str> = class.split(':').collect();
    Ok(match parts.as_slice() {
        ["planar"] => gen::gen_planar(n, seed),
        ["triangle-free"] => gen::gen_triangle_free_planar(n, seed),
        ["bipartite"] => gen::gen_bipartite_planar(n, seed),
        ["girth5"] => gen::gen_girth5_planar(n, seed),
        ["outerplanar"] => gen::gen_outerplanar(n, seed),
        ["er", d] => gen::gen_sparse_er(n, d.parse().context("average degree")?, seed),
        ["ggm", gamma, m] => {
            let gamma: usize = gamma.parse().context("gamma")?;
            let m: usize = m.parse().context("m")?;
            if gamma == 0 || m == 0 {
                bail!("ggm needs gamma, m >= 1");
            }
            gen::g_gamma_m(gamma, m)
        }
        _ => bail!("unknown class {class:?}"),
    })
}

pub fn gen(class: &str, n: usize, seed: u64, out: Option<&Path>) -> Result<()> {
    let g = generate(class, n, seed)?;
    let mut w = output(out)?;
    g.write_edge_list(&mut w)?;
    Ok(())
}

fn epsilon(text: &str) -> Result<localdom::Rational> {
    match parse_rational(text) {
        Some(e) if e > localdom::Rational::from_integer(0.into()) => Ok(e),
        _ => bail!("epsilon must be a positive number, got {text:?}"),
    }
}

fn config(opts: &PipelineOptions) -> Result<PipelineConfig> {
    let preset = match &opts.params {
        Some(path) => {
            let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            let spec: PresetSpec = serde_json::from_reader(BufReader::new(file))
                .with_context(|| format!("parsing {}", path.display()))?;
            ClassPreset::from_spec(&spec)?
        }
        None => ClassPreset::by_name(&opts.preset)?,
    };
    let preset = preset.with_epsilon(epsilon(&opts.epsilon)?)?;
    let phase3: Phase3Variant = opts.phase3.parse()?;
    let mut cfg = PipelineConfig::new(preset, phase3);
    cfg.strict = opts.strict;
    Ok(cfg)
}

pub fn run(graph: &Path, opts: &PipelineOptions, out: Option<&Path>) -> Result<bool> {
    let g = load_graph(graph)?;
    let cfg = config(opts)?;
    let run = run_pipeline(&g, &cfg)?;
    let report = run.report(&g, &cfg);
    write_json(&report, out)?;
    Ok(report.dominates)
}

#[derive(Serialize)]
struct Verification {
    gamma: usize,
    alg_size: usize,
    ratio: f64,
    bound: f64,
    within_bound: bool,
    dominates: bool,
}

pub fn verify(graph: &Path, opts: &PipelineOptions, budget: u64, out: Option<&Path>) -> Result<bool> {
    let g = load_graph(graph)?;
    let cfg = config(opts)?;
    let run = run_pipeline(&g, &cfg)?;
    let all: Vec<usize> = g.vertices().collect();
    let gamma = localdom::oracle::exact_min_dominating_set_with_budget(&g, &all, budget)?.len();
    let alg_size = run.selected().len();
    let ratio = ratio(alg_size, gamma);
    let bound = cfg.preset.guarantee(cfg.phase3);
    let v = Verification {
        gamma,
        alg_size,
        ratio,
        bound,
        within_bound: ratio <= bound,
        dominates: run.dominates,
    };
    write_json(&v, out)?;
    Ok(run.dominates)
}

fn ratio(size: usize, gamma: usize) -> f64 {
    if gamma == 0 {
        if size == 0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        size as f64 / gamma as f64
    }
}

/// Parses `lo..hi` (inclusive) or a single size.
fn size_range(text: &str) -> Result<(usize, usize)> {
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse()?, hi.trim().trim_start_matches('=').parse()?),
        None => {
            let n = text.trim().parse()?;
            (n, n)
        }
    };
    if lo > hi {
        bail!("empty size range {text:?}");
    }
    Ok((lo, hi))
}

fn default_preset(class: &str) -> Result<&'static str> {
    Ok(match class.split(':').next().unwrap_or_default() {
        "planar" | "ggm" => "planar",
        "triangle-free" => "triangle-free",
        "bipartite" => "bipartite",
        "girth5" => "girth5",
        "outerplanar" => "outerplanar",
        _ => bail!("class {class:?} has no default preset; pass --preset"),
    })
}

#[derive(Serialize)]
struct BenchRow {
    seed: u64,
    n: usize,
    m: usize,
    gamma: Option<usize>,
    alg_lp: usize,
    alg_greedy: usize,
    ratio_lp: Option<f64>,
    ratio_greedy: Option<f64>,
    rounds_lp: u64,
    rounds_greedy: u64,
}

pub fn bench(opts: &BenchOptions, out: Option<&Path>) -> Result<bool> {
    let (lo, hi) = size_range(&opts.sizes)?;
    let preset_name = match &opts.preset {
        Some(p) => p.clone(),
        None => default_preset(&opts.class)?.to_string(),
    };
    let preset = ClassPreset::by_name(&preset_name)?.with_epsilon(epsilon(&opts.epsilon)?)?;
    let span = hi - lo + 1;
    let rows: Vec<Result<(BenchRow, bool)>> = (0..opts.count)
        .into_par_iter()
        .map(|k| {
            let seed = opts.seed + k as u64;
            let n = lo + (k * span) / opts.count.max(1);
            let g = generate(&opts.class, n, seed)?;
            let lp = run_pipeline(&g, &PipelineConfig::new(preset.clone(), Phase3Variant::Lp))?;
            let greedy = run_pipeline(&g, &PipelineConfig::new(preset.clone(), Phase3Variant::Greedy))?;
            let all: Vec<usize> = g.vertices().collect();
            let gamma = match localdom::oracle::exact_min_dominating_set_with_budget(&g, &all, opts.budget) {
                Ok(z) => Some(z.len()),
                Err(localdom::Error::SearchAborted { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let (alg_lp, alg_greedy) = (lp.selected().len(), greedy.selected().len());
            Ok((
                BenchRow {
                    seed,
                    n: g.n(),
                    m: g.m(),
                    gamma,
                    alg_lp,
                    alg_greedy,
                    ratio_lp: gamma.map(|x| ratio(alg_lp, x)),
                    ratio_greedy: gamma.map(|x| ratio(alg_greedy, x)),
                    rounds_lp: lp.trace.total(),
                    rounds_greedy: greedy.trace.total(),
                },
                lp.dominates && greedy.dominates,
            ))
        })
        .collect();
    let mut writer = csv::Writer::from_writer(output(out)?);
    let mut all_dominate = true;
    for row in rows {
        let (row, ok) = row?;
        all_dominate &= ok;
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(all_dominate)
}
