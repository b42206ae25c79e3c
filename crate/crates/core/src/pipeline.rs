//! The three phases composed, plus the JSON run report.

use log::warn;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::general::{phase1, phase2, Phase2Options, DEFAULT_ENUMERATION_CAP};
use crate::graph::{Graph, Vertex, VertexId};
use crate::greedy::{phase3_greedy, GreedyOutcome, GreedyStep};
use crate::k3t::{phase2_k3t, residual_cap_check};
use crate::local::{initial_states, red_vertices, RoundTrace, Runtime};
use crate::lp::{phase3_lp, LpPhaseOutput};
use crate::preset::{ClassPreset, Phase2Rule, Phase3Variant};

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub preset: ClassPreset,
    pub phase3: Phase3Variant,
    /// Abort on evidence that the input breaks the class promise instead of
    /// warning.
    pub strict: bool,
    pub parallel: bool,
    pub enumeration_cap: u64,
}

impl PipelineConfig {
    pub fn new(preset: ClassPreset, phase3: Phase3Variant) -> Self {
        PipelineConfig {
            preset,
            phase3,
            strict: false,
            parallel: false,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct PipelineRun {
    pub d1: Vec<Vertex>,
    pub d2: Vec<Vertex>,
    pub d3: Vec<Vertex>,
    /// Red vertices entering Phase 3.
    pub red_after_phase2: Vec<Vertex>,
    pub max_residual_after_phase2: usize,
    pub trace: RoundTrace,
    pub greedy: Option<GreedyOutcome>,
    pub lp: Option<LpPhaseOutput>,
    pub warnings: Vec<String>,
    pub dominates: bool,
}

impl PipelineRun {
    /// `D1 ∪ D2 ∪ D3`, sorted.
    pub fn selected(&self) -> Vec<Vertex> {
        let mut all: Vec<Vertex> = self.d1.iter().chain(&self.d2).chain(&self.d3).copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn report(&self, g: &Graph, cfg: &PipelineConfig) -> RunReport {
        let set = |vs: &[Vertex]| SetReport {
            size: vs.len(),
            members: vs.iter().map(|&v| g.id(v)).collect(),
        };
        RunReport {
            preset: cfg.preset.name.clone(),
            phase3: cfg.phase3,
            n: g.n(),
            m: g.m(),
            d1: set(&self.d1),
            d2: set(&self.d2),
            d3: set(&self.d3),
            size: self.selected().len(),
            rounds: RoundsReport {
                total: self.trace.total(),
                phases: self
                    .trace
                    .phases
                    .iter()
                    .map(|(phase, rounds)| PhaseRounds {
                        phase: phase.clone(),
                        rounds: *rounds,
                    })
                    .collect(),
            },
            dominates: self.dominates,
            max_residual_after_phase2: self.max_residual_after_phase2,
            greedy_trace: self.greedy.as_ref().map(|g| g.trace.clone()),
            epsilon: cfg.preset.params.epsilon_f64(),
            guarantee: cfg.preset.guarantee(cfg.phase3),
            warnings: self.warnings.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SetReport {
    pub size: usize,
    pub members: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseRounds {
    pub phase: String,
    pub rounds: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundsReport {
    pub total: u64,
    pub phases: Vec<PhaseRounds>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub preset: String,
    pub phase3: Phase3Variant,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "D1")]
    pub d1: SetReport,
    #[serde(rename = "D2")]
    pub d2: SetReport,
    #[serde(rename = "D3")]
    pub d3: SetReport,
    pub size: usize,
    pub rounds: RoundsReport,
    pub dominates: bool,
    pub max_residual_after_phase2: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub greedy_trace: Option<Vec<GreedyStep>>,
    pub epsilon: f64,
    pub guarantee: f64,
    pub warnings: Vec<String>,
}

/// Runs Phases 1 to 3 on `g`.
pub fn run_pipeline(g: &Graph, cfg: &PipelineConfig) -> Result<PipelineRun> {
    let preset = &cfg.preset;
    let mut rt = Runtime::new(cfg.parallel);
    let mut states = initial_states(g);
    let mut run = PipelineRun {
        d1: phase1(&mut rt, g, &mut states, &preset.params).map_err(|e| e.in_phase("phase1"))?,
        ..PipelineRun::default()
    };

    let phase2_out = match preset.phase2 {
        Phase2Rule::CommonNeighbors { threshold } => {
            let max_b = preset.params.d1_budget();
            Some(phase2_k3t(&mut rt, g, &mut states, threshold, max_b, cfg.strict))
        }
        Phase2Rule::Sequences => {
            let opts = Phase2Options {
                strict: cfg.strict,
                enumeration_cap: cfg.enumeration_cap,
            };
            Some(phase2(&mut rt, g, &mut states, &preset.params, opts))
        }
        Phase2Rule::Skip => None,
    };
    if let Some(out) = phase2_out {
        let out = out.map_err(|e| e.in_phase("phase2"))?;
        run.d2 = out.selected;
        run.warnings.extend(out.warnings);
    }

    let (within, max) = residual_cap_check(&states, preset.residual_cap);
    run.max_residual_after_phase2 = max;
    run.red_after_phase2 = red_vertices(&states);
    if !within {
        let msg = format!("residual degree {max} after phase 2 exceeds cap {}", preset.residual_cap);
        if cfg.strict {
            return Err(Error::PromiseViolated(msg).in_phase("phase2"));
        }
        warn!("{msg}");
        run.warnings.push(msg);
    }

    match cfg.phase3 {
        Phase3Variant::Lp => {
            let out = phase3_lp(&mut rt, g, &mut states, preset, cfg.strict).map_err(|e| e.in_phase("phase3"))?;
            run.d3 = out.selected.clone();
            run.warnings.extend(out.warnings.iter().cloned());
            run.lp = Some(out);
        }
        Phase3Variant::Greedy => {
            let cap = (preset.residual_cap as usize).max(max);
            let out = phase3_greedy(&mut rt, g, &mut states, cap).map_err(|e| e.in_phase("phase3"))?;
            run.d3 = out.selected.clone();
            run.greedy = Some(out);
        }
    }
    run.trace = rt.trace;
    run.dominates = g.is_dominating_set(&run.selected());
    Ok(run)
}
