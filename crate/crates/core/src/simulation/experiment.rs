use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{add_modular_structure, effective_modules, standard_normal_matrix};
use super::permutation::{permutation_test, permutations_for_fraction, run_combinatorial_trial, PermutationOptions, Sampling};
use super::rng::RngStream;
use crate::error::{Error, Result};
use crate::graph::WeightMode;

/// Module counts of the two groups; 0 stands for singleton modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pairing {
    pub a: usize,
    pub b: usize,
}

impl Pairing {
    pub fn label(&self) -> String {
        format!("{} vs. {}", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationConfig {
    /// Images per group.
    pub n: usize,
    /// Nodes.
    pub p: usize,
    pub pairings: Vec<Pairing>,
    /// Noise standard deviation.
    pub sigma: f64,
    pub replications: usize,
    pub permutation_fractions: Vec<f64>,
    pub seed: u64,
    pub add_one: bool,
    pub sampling: Sampling,
    /// How correlations become spanning-tree weights. `distance` uses the
    /// raw correlations directly.
    pub weight_mode: WeightMode,
    /// Both groups of a replication share one base signal `X` and differ only
    /// in modular structure and noise.
    pub shared_signal: bool,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            n: 10,
            p: 40,
            pairings: [(0, 0), (4, 4), (4, 5), (4, 8), (5, 10)]
                .into_iter()
                .map(|(a, b)| Pairing { a, b })
                .collect(),
            sigma: 0.1,
            replications: 100,
            permutation_fractions: vec![0.001, 0.005, 0.01],
            seed: 20180527,
            add_one: false,
            sampling: Sampling::WithReplacement,
            weight_mode: WeightMode::Distance,
            shared_signal: true,
        }
    }
}

fn config_error(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Config {
        pointer: pointer.into(),
        message: message.into(),
    }
}

impl SimulationConfig {
    /// Checks every field; errors carry a JSON pointer to the offending value.
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(config_error("/n", "must be at least 2"));
        }
        if self.p < 2 {
            return Err(config_error("/p", "must be at least 2"));
        }
        if 2 * self.n > 62 {
            return Err(config_error("/n", "pooled sample 2n must not exceed 62"));
        }
        if !self.sigma.is_finite() || self.sigma < 0.0 {
            return Err(config_error("/sigma", "must be finite and nonnegative"));
        }
        if self.replications == 0 {
            return Err(config_error("/replications", "must be at least 1"));
        }
        if self.pairings.is_empty() {
            return Err(config_error("/pairings", "must not be empty"));
        }
        for (i, pr) in self.pairings.iter().enumerate() {
            for (side, k) in [("a", pr.a), ("b", pr.b)] {
                if effective_modules(self.p, k).is_err() {
                    return Err(config_error(
                        format!("/pairings/{i}/{side}"),
                        format!("{k} modules do not evenly divide {} nodes", self.p),
                    ));
                }
            }
        }
        for (i, &f) in self.permutation_fractions.iter().enumerate() {
            if !(f > 0.0 && f <= 1.0) {
                return Err(config_error(
                    format!("/permutation_fractions/{i}"),
                    format!("{f} is outside (0, 1]"),
                ));
            }
        }
        Ok(())
    }

    pub fn method_names(&self) -> Vec<String> {
        std::iter::once("Combinatorial".to_string())
            .chain(self.permutation_fractions.iter().map(|f| format!("Permute {}%", percent(*f))))
            .collect()
    }
}

fn percent(f: f64) -> String {
    let s = format!("{:.4}", f * 100.0);
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportCell {
    pub method: String,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single replication.
    pub std: f64,
    pub p_values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub pairing: Pairing,
    pub label: String,
    pub cells: Vec<ReportCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: SimulationConfig,
    pub rng: String,
    pub methods: Vec<String>,
    pub rows: Vec<ReportRow>,
}

impl ExperimentReport {
    pub fn cell(&self, pairing: &str, method: &str) -> Option<&ReportCell> {
        self.rows
            .iter()
            .find(|r| r.label == pairing)
            .and_then(|r| r.cells.iter().find(|c| c.method == method))
    }

    /// `mean ± std` grid laid out like a results table.
    pub fn to_text_table(&self) -> String {
        let header: Vec<String> = std::iter::once(String::new()).chain(self.methods.iter().cloned()).collect();
        let body: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                std::iter::once(r.label.clone())
                    .chain(r.cells.iter().map(|c| format!("{:.3} ± {:.3}", c.mean, c.std)))
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|k| {
                std::iter::once(&header)
                    .chain(&body)
                    .map(|row| row[k].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for (i, row) in std::iter::once(&header).chain(&body).enumerate() {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            let _ = writeln!(out, "| {} |", cells.join(" | "));
            if i == 0 {
                let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
                let _ = writeln!(out, "|-{}-|", rule.join("-|-"));
            }
        }
        out
    }
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// One replication of one pairing: the combinatorial p-value followed by
/// one permutation p-value per configured fraction.
fn replicate(cfg: &SimulationConfig, pairing_index: usize, replication: usize, counts: &[usize]) -> Result<Vec<f64>> {
    let pairing = cfg.pairings[pairing_index];
    let base = RngStream::new(cfg.seed, replication as u64);
    let tag = |purpose: u64| ((pairing_index as u64) << 32) | purpose;
    let x_a = standard_normal_matrix(cfg.n, cfg.p, &base.fork(tag(0)))?;
    let x_b = if cfg.shared_signal {
        x_a.clone()
    } else {
        standard_normal_matrix(cfg.n, cfg.p, &base.fork(tag(1)))?
    };
    let a = add_modular_structure(&x_a, pairing.a, cfg.sigma, &base.fork(tag(2)))?;
    let b = add_modular_structure(&x_b, pairing.b, cfg.sigma, &base.fork(tag(3)))?;
    let mut out = Vec::with_capacity(1 + counts.len());
    out.push(run_combinatorial_trial(&a, &b, cfg.weight_mode)?.p_value.real_value);
    let opts = PermutationOptions {
        add_one: cfg.add_one,
        sampling: cfg.sampling,
        weight_mode: cfg.weight_mode,
    };
    for (fi, &count) in counts.iter().enumerate() {
        let stream = base.fork(tag(4 + fi as u64));
        out.push(permutation_test(&a, &b, count, &stream, opts)?.p_value);
    }
    Ok(out)
}

/// Runs every pairing for `cfg.replications` replications. Output depends
/// only on `cfg`, not on thread scheduling.
pub fn run_experiment(cfg: &SimulationConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let counts = cfg
        .permutation_fractions
        .iter()
        .map(|&f| permutations_for_fraction(cfg.n, f))
        .collect::<Result<Vec<_>>>()?;
    let methods = cfg.method_names();

    let mut rows = Vec::with_capacity(cfg.pairings.len());
    for (pi, pairing) in cfg.pairings.iter().enumerate() {
        log::info!("pairing {} ({} replications)", pairing.label(), cfg.replications);
        let reps = (0..cfg.replications)
            .into_par_iter()
            .map(|r| replicate(cfg, pi, r, &counts))
            .collect::<Result<Vec<_>>>()?;
        let cells = methods
            .iter()
            .enumerate()
            .map(|(m, name)| {
                let p_values: Vec<f64> = reps.iter().map(|r| r[m]).collect();
                let (mean, std) = mean_std(&p_values);
                ReportCell {
                    method: name.clone(),
                    mean,
                    std,
                    p_values,
                }
            })
            .collect();
        rows.push(ReportRow {
            pairing: *pairing,
            label: pairing.label(),
            cells,
        });
    }
    Ok(ExperimentReport {
        config: cfg.clone(),
        rng: RngStream::ALGORITHM.to_string(),
        methods,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SimulationConfig {
        SimulationConfig {
            n: 4,
            p: 8,
            pairings: vec![Pairing { a: 2, b: 4 }],
            replications: 3,
            permutation_fractions: vec![0.1],
            seed: 7,
            ..Default::default()
        }
    }

    #[test]
    fn validation_pointers() {
        let mut c = small();
        c.replications = 0;
        assert!(matches!(c.validate(), Err(Error::Config { pointer, .. }) if pointer == "/replications"));
        let mut c = small();
        c.pairings[0].b = 3;
        assert!(matches!(c.validate(), Err(Error::Config { pointer, .. }) if pointer == "/pairings/0/b"));
        let mut c = small();
        c.permutation_fractions = vec![0.1, 0.0];
        assert!(matches!(c.validate(), Err(Error::Config { pointer, .. }) if pointer == "/permutation_fractions/1"));
        assert!(SimulationConfig::default().validate().is_ok());
    }

    #[test]
    fn method_names() {
        assert_eq!(
            SimulationConfig::default().method_names(),
            vec!["Combinatorial", "Permute 0.1%", "Permute 0.5%", "Permute 1%"]
        );
    }

    #[test]
    fn report_shape_and_determinism() {
        let r = run_experiment(&small()).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].cells.len(), 2);
        for c in &r.rows[0].cells {
            assert_eq!(c.p_values.len(), 3);
            assert!((0.0..=1.0).contains(&c.mean) && c.std >= 0.0);
        }
        assert_eq!(r, run_experiment(&small()).unwrap());
        let table = r.to_text_table();
        assert!(table.contains("2 vs. 4"));
        assert!(table.contains("Permute 10%"));
    }

    #[test]
    fn single_replication_has_zero_std() {
        let r = run_experiment(&SimulationConfig { replications: 1, ..small() }).unwrap();
        assert!(r.rows[0].cells.iter().all(|c| c.std == 0.0));
    }

    #[test]
    fn config_json_defaults() {
        let c: SimulationConfig = serde_json::from_str(r#"{"replications": 5}"#).unwrap();
        assert_eq!(c.replications, 5);
        assert_eq!(c.p, 40);
        assert!(serde_json::from_str::<SimulationConfig>(r#"{"bogus": 1}"#).is_err());
    }
}
