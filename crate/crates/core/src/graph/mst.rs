use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::kruskal::{kruskal_mst, Edge, SpanningForest, WeightedGraph};
use crate::connectivity::{ConnectivityMatrix, SYMMETRY_TOLERANCE};
use crate::error::{Error, Result};
use crate::exact::{discrepancy, exact_pvalue, ExactPValue, MonotoneSequence};

/// How matrix entries become Kruskal edge weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightMode {
    /// Entries are distances; exact zeros are absent edges.
    Distance,
    /// Entries are similarities; Kruskal runs on `1 - c` over all pairs.
    #[default]
    OneMinus,
    /// Maximum spanning tree on similarities; reported weights are the
    /// original similarities.
    MaxTree,
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightMode::Distance => "distance",
            WeightMode::OneMinus => "one-minus",
            WeightMode::MaxTree => "max-tree",
        })
    }
}

impl FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "distance" => Ok(WeightMode::Distance),
            "one-minus" | "one_minus_similarity" => Ok(WeightMode::OneMinus),
            "max-tree" | "max_tree" => Ok(WeightMode::MaxTree),
            other => Err(Error::InvalidParameter {
                name: "mode",
                reason: format!("unknown weight mode `{other}`"),
            }),
        }
    }
}

/// Tree edge weights in ascending order. Ties are kept (and flagged) rather
/// than rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SortedEdgeWeights {
    pub weights: MonotoneSequence,
}

impl SortedEdgeWeights {
    pub fn from_forest(forest: &SpanningForest) -> Result<Self> {
        let ws = forest.tree_edges.iter().map(|e| e.weight).collect();
        Ok(Self {
            weights: MonotoneSequence::from_unsorted(ws)?,
        })
    }

    pub fn values(&self) -> &[f64] {
        self.weights.values()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Spanning tree of a connectivity matrix under the given weight mode.
pub fn mst_from_connectivity(
    c: &ConnectivityMatrix,
    mode: WeightMode,
) -> Result<(SpanningForest, SortedEdgeWeights)> {
    c.check_symmetric(SYMMETRY_TOLERANCE)?;
    let p = c.dim();
    let mut edges = Vec::with_capacity(p * p.saturating_sub(1) / 2);
    for i in 0..p {
        for j in i + 1..p {
            let v = c.get(i, j);
            match mode {
                WeightMode::Distance if v == 0.0 => {}
                WeightMode::Distance => edges.push(Edge::new(i, j, v)),
                WeightMode::OneMinus => edges.push(Edge::new(i, j, 1.0 - v)),
                WeightMode::MaxTree => edges.push(Edge::new(i, j, -v)),
            }
        }
    }
    let graph = WeightedGraph::new(c.labels().to_vec(), edges)?;
    let mut forest = kruskal_mst(&graph)?;
    if mode == WeightMode::MaxTree {
        for e in &mut forest.tree_edges {
            e.weight = -e.weight;
        }
    }
    let sorted = SortedEdgeWeights::from_forest(&forest)?;
    Ok((forest, sorted))
}

/// Result of testing two spanning trees for equal shape.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MstComparison {
    pub q: usize,
    pub d: usize,
    pub argmax_weight: f64,
    pub p_value: ExactPValue,
    /// Tied weights were absorbed; the exact null assumes tie-free data.
    pub ties_absorbed: bool,
}

pub fn compare_msts(a: &SortedEdgeWeights, b: &SortedEdgeWeights) -> Result<MstComparison> {
    let r = discrepancy(&a.weights, &b.weights)?;
    let p_value = exact_pvalue(r.q, r.d)?;
    if r.ties_absorbed {
        log::warn!("tied edge weights absorbed; exact p-value assumes continuous weights");
    }
    Ok(MstComparison {
        q: r.q,
        d: r.d,
        argmax_weight: r.argmax_location,
        p_value,
        ties_absorbed: r.ties_absorbed,
    })
}

/// Sorted labels of every endpoint of a tree edge (in either forest) whose
/// weight lies in `[center - radius, center + radius]`.
pub fn localize_nodes(
    a: &SpanningForest,
    b: &SpanningForest,
    center: f64,
    radius: f64,
) -> Result<Vec<String>> {
    if !center.is_finite() {
        return Err(Error::InvalidParameter {
            name: "center",
            reason: format!("must be finite, got {center}"),
        });
    }
    if !radius.is_finite() || radius < 0.0 {
        return Err(Error::InvalidParameter {
            name: "radius",
            reason: format!("must be finite and nonnegative, got {radius}"),
        });
    }
    let (lo, hi) = (center - radius, center + radius);
    let mut out = BTreeSet::new();
    for forest in [a, b] {
        for e in &forest.tree_edges {
            if e.weight >= lo && e.weight <= hi {
                out.insert(forest.labels[e.i].clone());
                out.insert(forest.labels[e.j].clone());
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Points `(w_j, j)` of the step function: edges added up to weight `w_j`.
pub fn growth_curve(w: &SortedEdgeWeights) -> Vec<(f64, usize)> {
    w.values().iter().enumerate().map(|(j, &x)| (x, j + 1)).collect()
}

/// Both step functions evaluated at every distinct weight of either tree.
pub fn joint_growth_curve(a: &SortedEdgeWeights, b: &SortedEdgeWeights) -> Vec<(f64, usize, usize)> {
    let mut ts: Vec<f64> = a.values().iter().chain(b.values()).copied().collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let (fa, fb) = (a.weights.step_function(), b.weights.step_function());
    ts.into_iter().map(|t| (t, fa.eval(t), fb.eval(t))).collect()
}
