use serde::Serialize;

use super::{boosted_state, stepper, EvolutionConfig, EvolveError, Method};
use crate::field::{peak_in, ComplexField, Grid};
use crate::models::{GroundState, Model};
use crate::numerics::SpectralGrid;

/// Lobes whose separating minimum exceeds this fraction of the smaller peak
/// density count as overlapping.
const OVERLAP_FRACTION: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub left: f64,
    pub right: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollisionReport {
    /// Cosine similarity of each re-centred `|Ψ|` lobe with `c₀φ₀`, at the
    /// start and at the end of the run (left lobe first).
    pub pre_correlation: [f64; 2],
    pub post_correlation: [f64; 2],
    pub trajectories: Vec<TrajectoryPoint>,
    /// `|M(T) − M(0)|/M(0)`.
    pub mass_drift: f64,
    /// Set when the final state does not split into two separated lobes.
    pub inconclusive: bool,
    #[serde(skip)]
    pub final_field: ComplexField,
}

struct Lobes {
    split: usize,
    separated: bool,
}

fn find_lobes(density: &[f64]) -> Option<Lobes> {
    let n = density.len();
    let top = density.iter().cloned().fold(0.0, f64::max);
    let mut maxima: Vec<usize> = (1..n - 1)
        .filter(|&j| density[j] > density[j - 1] && density[j] >= density[j + 1] && density[j] > 1e-3 * top)
        .collect();
    if maxima.len() < 2 {
        return None;
    }
    maxima.sort_by(|&a, &b| density[b].total_cmp(&density[a]));
    let (i, k) = (maxima[0].min(maxima[1]), maxima[0].max(maxima[1]));
    let split = (i..=k).min_by(|&a, &b| density[a].total_cmp(&density[b]))?;
    let separated = density[split] < OVERLAP_FRACTION * density[i].min(density[k]);
    Some(Lobes { split, separated })
}

fn lobe_correlation(
    gs: &GroundState,
    grid: &Grid,
    amplitude: &[f64],
    density: &[f64],
    range: std::ops::Range<usize>,
) -> f64 {
    let centre = peak_in(grid, density, range.start, range.end);
    let (mut dot, mut aa, mut bb) = (0.0, 0.0, 0.0);
    for j in range {
        let f = gs.norm_const * gs.profile(grid.x(j) - centre);
        dot += amplitude[j] * f;
        aa += amplitude[j] * amplitude[j];
        bb += f * f;
    }
    dot / (aa * bb).sqrt()
}

fn correlations(gs: &GroundState, field: &ComplexField) -> Option<([f64; 2], bool)> {
    let amplitude: Vec<f64> = field.samples.iter().map(|z| z.norm()).collect();
    let density: Vec<f64> = amplitude.iter().map(|a| a * a).collect();
    let lobes = find_lobes(&density)?;
    let n = density.len();
    Some((
        [
            lobe_correlation(gs, &field.grid, &amplitude, &density, 0..lobes.split),
            lobe_correlation(gs, &field.grid, &amplitude, &density, lobes.split..n),
        ],
        lobes.separated,
    ))
}

fn trajectory_point(field: &ComplexField) -> TrajectoryPoint {
    let density: Vec<f64> = field.samples.iter().map(|z| z.norm_sqr()).collect();
    let n = density.len();
    let (left, right) = match find_lobes(&density) {
        Some(l) => (
            peak_in(&field.grid, &density, 0, l.split),
            peak_in(&field.grid, &density, l.split, n),
        ),
        None => {
            let p = field.peak_position();
            (p, p)
        }
    };
    TrajectoryPoint {
        t: field.time,
        left,
        right,
    }
}

/// Two boosted copies of the ground state, started at `∓separation/2` with
/// velocities `v1` (left) and `v2` (right), evolved through their crossing.
pub fn collide(
    model: &Model,
    v1: f64,
    v2: f64,
    separation: f64,
    grid: SpectralGrid,
    config: &EvolutionConfig,
) -> Result<CollisionReport, EvolveError> {
    if v1 == v2 {
        return Err(EvolveError::Precondition("collision needs v1 != v2".into()));
    }
    let l = model.ground.length_scale;
    if !(separation >= 10.0 * l) {
        return Err(EvolveError::Precondition(format!(
            "separation {separation} must be at least 10 length scales ({})",
            10.0 * l
        )));
    }
    if config.method != Method::SplitStep {
        return Err(EvolveError::Config(
            "collisions run on the split-step integrator".into(),
        ));
    }
    let g = Grid::Spectral(grid);
    let gs = &model.ground;
    let left = boosted_state(gs, &g, v1, 0.0, -0.5 * separation);
    let right = boosted_state(gs, &g, v2, 0.0, 0.5 * separation);
    let mut field = ComplexField {
        grid: g,
        samples: left.samples.iter().zip(&right.samples).map(|(a, b)| a + b).collect(),
        time: 0.0,
    };

    let mut s = stepper(model, &g, config)?;
    let mass0 = field.mass();
    let (pre_correlation, _) =
        correlations(gs, &field).ok_or_else(|| EvolveError::Precondition("initial lobes not resolved".into()))?;
    let mut trajectories = vec![trajectory_point(&field)];
    let mut last_good = field.clone();
    for n in 1..=config.steps {
        s.step(&mut field)?;
        field.time = n as f64 * config.dt;
        if !field.is_finite() {
            return Err(EvolveError::NumericalAbort {
                step: n,
                time: field.time,
                last_good: Box::new(last_good),
                diagnostics: Vec::new(),
            });
        }
        if n % config.record_every == 0 || n == config.steps {
            trajectories.push(trajectory_point(&field));
        }
        last_good.clone_from(&field);
    }
    let (post_correlation, inconclusive) = match correlations(gs, &field) {
        Some((c, separated)) => (c, !separated),
        None => ([f64::NAN; 2], true),
    };
    Ok(CollisionReport {
        pre_correlation,
        post_correlation,
        trajectories,
        mass_drift: (field.mass() - mass0).abs() / mass0,
        inconclusive,
        final_field: field,
    })
}
