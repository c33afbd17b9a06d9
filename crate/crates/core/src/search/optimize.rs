use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::simplex::{nelder_mead, NelderMeadOptions};
use crate::entropy::{EntropyKernel, JointDistribution};
use crate::error::{domain, Result};
use crate::frame::{a_map, b_map, c_sym, stv, weights_of, CrossSectionPoint, IngletonFrame};
use crate::par::{map_indexed, Execution};
use crate::polymatroid::{tight_part, SetFunction};

/// Largest alphabet accepted for a single variable.
pub const MAX_ALPHABET: usize = 11;

/// Functions whose value at `N` is at most this are scored as 0.
pub const DEGENERATE_RANK: f64 = 1e-12;

/// Probabilities used for zero cells of a start distribution, in logit space.
const START_FLOOR: f64 = 1e-20;

/// What a search minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Ingleton score of the entropy function.
    RawScore,
    /// Ingleton score of its tight part.
    TightScore,
    /// Ingleton score after tightening and the maps `B`, `A`.
    PipelineScore,
    /// `-(ᾱ + d·(β̄, γ̄, δ̄)) + 10 Σ max(0, -w)` at the cross-section point;
    /// pushes `ᾱ` up while steering along `d`.
    AlphaInDirection { direction: [f64; 3] },
}

impl Objective {
    /// Value at an entropy function; degenerate inputs score 0.
    pub fn evaluate(&self, h: &SetFunction, frame: &IngletonFrame) -> f64 {
        let score = |g: &SetFunction| {
            let top = g.rank();
            if top <= DEGENERATE_RANK {
                0.0
            } else {
                stv(g, frame) / top
            }
        };
        match self {
            Objective::RawScore => score(h),
            Objective::TightScore => score(&tight_part(h)),
            Objective::PipelineScore => score(&reduce(h, frame)),
            Objective::AlphaInDirection { direction } => match section_weights(h, frame) {
                None => 0.0,
                Some(w) => {
                    let penalty: f64 = w.iter().map(|v| (-v).max(0.0)).sum();
                    let along: f64 = direction.iter().zip(&w[1..]).map(|(d, v)| d * v).sum();
                    -(w[0] + along) + 10.0 * penalty
                }
            },
        }
    }
}

fn reduce(h: &SetFunction, frame: &IngletonFrame) -> SetFunction {
    let t = tight_part(h);
    a_map(&b_map(&t, frame).expect("same ground"), frame).expect("same ground")
}

/// Cross-section weights of an entropy function, `None` when degenerate.
fn section_weights(h: &SetFunction, frame: &IngletonFrame) -> Option<[f64; 4]> {
    let c = c_sym(&reduce(h, frame), frame).expect("same ground");
    let top = c.rank();
    if top <= DEGENERATE_RANK {
        return None;
    }
    weights_of(&c.scale(1.0 / top), frame).ok()
}

/// Cross-section point of an entropy function, `None` when degenerate.
pub fn section_point(h: &SetFunction, frame: &IngletonFrame) -> Option<CrossSectionPoint> {
    section_weights(h, frame).map(|w| CrossSectionPoint::new(w, ""))
}

/// A batch of seeded restarts of Nelder–Mead over the probability simplex
/// of a fixed product alphabet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub alphabet_sizes: [usize; 4],
    pub restarts: usize,
    pub budget_evals: usize,
    #[serde(default)]
    pub master_seed: u64,
    pub objective: Objective,
    /// Dense start distributions; restart `r < starts.len()` begins at
    /// `starts[r]`, the others at random logits.
    #[serde(default)]
    pub starts: Vec<Vec<f64>>,
    /// Initial simplex size in logit space.
    #[serde(default = "default_step")]
    pub step: f64,
}

fn default_step() -> f64 {
    1.0
}

impl SearchConfig {
    /// Alphabets `(4,4,4,4)`, 64 restarts, `2·10^4` evaluations each.
    pub fn desk(objective: Objective) -> Self {
        Self {
            alphabet_sizes: [4; 4],
            restarts: 64,
            budget_evals: 20_000,
            master_seed: 0,
            objective,
            starts: Vec::new(),
            step: default_step(),
        }
    }

    pub fn cells(&self) -> usize {
        self.alphabet_sizes.iter().product()
    }

    pub fn validate(&self) -> Result<()> {
        if self
            .alphabet_sizes
            .iter()
            .any(|&s| s == 0 || s > MAX_ALPHABET)
        {
            return domain(format!("alphabet sizes must lie in 1..={MAX_ALPHABET}"));
        }
        if self.alphabet_sizes.iter().all(|&s| s < 2) {
            return domain("at least one alphabet needs two symbols");
        }
        if self.budget_evals == 0 || self.restarts == 0 {
            return domain("restarts and budget must be positive");
        }
        if !(self.step > 0.0) || !self.step.is_finite() {
            return domain(format!("step must be positive, got {}", self.step));
        }
        if let Objective::AlphaInDirection { direction } = self.objective {
            if direction.iter().any(|v| !v.is_finite()) {
                return domain("direction must be finite");
            }
        }
        let cells = self.cells();
        for (r, s) in self.starts.iter().enumerate() {
            if s.len() != cells {
                return domain(format!("start {r} has {} cells, expected {cells}", s.len()));
            }
            let total: f64 = s.iter().sum();
            if s.iter().any(|p| !(*p >= 0.0)) || (total - 1.0).abs() > 1e-9 {
                return domain(format!("start {r} is not a probability vector"));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of restart `index`, independent of how restarts are scheduled.
pub fn restart_seed(master_seed: u64, index: usize) -> u64 {
    mix(mix(master_seed).wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index as u64 + 1)))
}

/// Normalized exponentials, shifted by the maximum for stability.
pub fn softmax(x: &[f64], out: &mut Vec<f64>) {
    let m = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    out.clear();
    out.extend(x.iter().map(|v| (v - m).exp()));
    let total: f64 = out.iter().sum();
    out.iter_mut().for_each(|p| *p /= total);
}

/// Logits of a probability vector; zero cells get a tiny floor.
pub fn logits(probs: &[f64]) -> Vec<f64> {
    probs.iter().map(|p| p.max(START_FLOOR).ln()).collect()
}

/// Best point of one restart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartOutcome {
    pub index: usize,
    pub seed: u64,
    pub value: f64,
    pub evals: usize,
    pub budget_exhausted: bool,
    #[serde(skip)]
    pub probs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_value: f64,
    pub best_distribution: JointDistribution,
    /// `None` when the best distribution is degenerate for the cross-section.
    pub best_point: Option<CrossSectionPoint>,
    pub best_restart: usize,
    pub eval_count: usize,
    /// Seed of every restart, in restart order.
    pub seed_trace: Vec<u64>,
    pub restart_values: Vec<f64>,
    /// True when at least one restart stopped on its budget.
    pub budget_exhausted: bool,
}

struct Evaluator<'a> {
    kernel: EntropyKernel,
    frame: &'a IngletonFrame,
    objective: Objective,
}

impl<'a> Evaluator<'a> {
    fn new(cfg: &SearchConfig, frame: &'a IngletonFrame) -> Result<Self> {
        cfg.validate()?;
        if frame.ground().len() != 4 {
            return domain("searches run over four variables");
        }
        Ok(Self {
            kernel: EntropyKernel::new(frame.ground().clone(), cfg.alphabet_sizes.to_vec())?,
            frame,
            objective: cfg.objective,
        })
    }

    fn entropy(&self, probs: &[f64]) -> SetFunction {
        self.kernel.entropy(probs)
    }
}

/// Runs one restart; `visit` sees every evaluated entropy function.
fn run_restart(
    ev: &Evaluator,
    cfg: &SearchConfig,
    index: usize,
    mut visit: impl FnMut(&SetFunction),
) -> RestartOutcome {
    let seed = restart_seed(cfg.master_seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = cfg.cells();
    let mut x = match cfg.starts.get(index) {
        Some(p) => logits(p),
        None => (0..cells).map(|_| rng.gen_range(-2.0..2.0)).collect(),
    };
    let mut probs = Vec::with_capacity(cells);
    let mut objective = |y: &[f64]| {
        softmax(y, &mut probs);
        let h = ev.entropy(&probs);
        visit(&h);
        ev.objective.evaluate(&h, ev.frame)
    };
    let mut best = f64::INFINITY;
    let mut evals = 0;
    let mut exhausted = false;
    // restart the simplex at the incumbent until it stops improving
    while evals < cfg.budget_evals {
        let opts = NelderMeadOptions {
            step: cfg.step,
            max_evals: cfg.budget_evals - evals,
            diameter_tol: 1e-10,
        };
        let m = nelder_mead(&mut objective, &x, &opts);
        evals += m.evals;
        let improved = m.value < best - 1e-12;
        if m.value < best {
            best = m.value;
            x = m.x;
        }
        if !m.converged {
            exhausted = true;
            break;
        }
        if !improved {
            break;
        }
    }
    let mut p = Vec::with_capacity(cells);
    softmax(&x, &mut p);
    RestartOutcome {
        index,
        seed,
        value: best,
        evals,
        budget_exhausted: exhausted,
        probs: p,
    }
}

/// [`optimize_distribution_with`] on the default execution.
pub fn optimize_distribution(cfg: &SearchConfig, frame: &IngletonFrame) -> Result<SearchResult> {
    optimize_distribution_with(cfg, frame, Execution::default())
}

/// Runs every restart and keeps the lowest value, ties going to the lower
/// restart index. The result does not depend on `exec`.
pub fn optimize_distribution_with(
    cfg: &SearchConfig,
    frame: &IngletonFrame,
    exec: Execution,
) -> Result<SearchResult> {
    let ev = Evaluator::new(cfg, frame)?;
    let outcomes = map_indexed(cfg.restarts, exec, |r| run_restart(&ev, cfg, r, |_| {}));
    let best = outcomes
        .iter()
        .min_by(|a, b| a.value.total_cmp(&b.value).then(a.index.cmp(&b.index)))
        .expect("at least one restart");
    let dist = JointDistribution::from_dense(
        frame.ground().clone(),
        cfg.alphabet_sizes.to_vec(),
        &best.probs,
    )?;
    let h = ev.entropy(&best.probs);
    Ok(SearchResult {
        best_value: best.value,
        best_distribution: dist,
        best_point: section_point(&h, frame),
        best_restart: best.index,
        eval_count: outcomes.iter().map(|o| o.evals).sum(),
        seed_trace: outcomes.iter().map(|o| o.seed).collect(),
        restart_values: outcomes.iter().map(|o| o.value).collect(),
        budget_exhausted: outcomes.iter().any(|o| o.budget_exhausted),
    })
}

/// Options for [`generate_cloud`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CloudOptions {
    /// Emit only the best point of every restart.
    pub optima_only: bool,
    pub exec: Execution,
}

/// Weights below this are treated as outside the tetrahedron.
const CLOUD_SLACK: f64 = 1e-9;

/// One `alpha_in_direction` search per direction (with `cfg.restarts`
/// restarts each); returns the cross-section point of every evaluation that
/// lands in the tetrahedron, in (direction, restart, evaluation) order.
///
/// The objective in `cfg` is ignored.
pub fn generate_cloud(
    directions: &[[f64; 3]],
    cfg: &SearchConfig,
    frame: &IngletonFrame,
    opts: CloudOptions,
) -> Result<Vec<CrossSectionPoint>> {
    if directions.is_empty() {
        return domain("need at least one direction");
    }
    let evs = directions
        .iter()
        .map(|&direction| {
            let c = SearchConfig {
                objective: Objective::AlphaInDirection { direction },
                ..cfg.clone()
            };
            Evaluator::new(&c, frame).map(|e| (e, c))
        })
        .collect::<Result<Vec<_>>>()?;
    let tasks = directions.len() * cfg.restarts;
    let chunks = map_indexed(tasks, opts.exec, |t| {
        let (d, r) = (t / cfg.restarts, t % cfg.restarts);
        let (ev, c) = &evs[d];
        let mut pts = Vec::new();
        let out = run_restart(ev, c, r, |h| {
            if !opts.optima_only {
                if let Some(w) = section_weights(h, frame) {
                    if w.iter().all(|v| *v >= -CLOUD_SLACK) {
                        pts.push(CrossSectionPoint::new(w, ""));
                    }
                }
            }
        });
        if let Some(w) = section_weights(&ev.entropy(&out.probs), frame) {
            if w.iter().all(|v| *v >= -CLOUD_SLACK) {
                pts.push(CrossSectionPoint::new(w, format!("opt d{d} r{r}")));
            }
        }
        pts
    });
    Ok(chunks.into_iter().flatten().collect())
}

/// `count` directions uniform on the unit sphere, from a fixed seed.
pub fn sphere_directions(count: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let z: f64 = rng.gen_range(-1.0..=1.0);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = (1.0 - z * z).sqrt();
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// Pads each variable's alphabet of a distribution up to `sizes` and returns
/// the dense vector, ready for [`SearchConfig::starts`].
pub fn embed_dense(d: &JointDistribution, sizes: &[usize; 4]) -> Result<Vec<f64>> {
    if d.alphabet_sizes().iter().zip(sizes).any(|(a, b)| a > b) || d.alphabet_sizes().len() != 4 {
        return domain(format!(
            "cannot embed alphabets {:?} into {sizes:?}",
            d.alphabet_sizes()
        ));
    }
    let padded = JointDistribution::new(
        d.ground().clone(),
        sizes.to_vec(),
        d.atoms().map(|(c, p)| (c.to_vec(), p)),
    )?;
    Ok(padded.dense())
}
