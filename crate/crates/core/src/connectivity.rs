//! Correlation networks, edge-wise twin correlations and Falconer's
//! heritability index.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance used when checking matrix symmetry.
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// `n x p` observations (rows) by nodes (columns), row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DataMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows < 2 {
            return Err(Error::InvalidParameter {
                name: "rows",
                reason: format!("need at least 2 observations, got {rows}"),
            });
        }
        if cols < 2 {
            return Err(Error::InvalidParameter {
                name: "cols",
                reason: format!("need at least 2 nodes, got {cols}"),
            });
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                left: data.len(),
                right: rows * cols,
            });
        }
        if let Some(k) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry {
                i: k / cols,
                j: k % cols,
                value: data[k],
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<f64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Builds a matrix from the given rows of `self` and `other`, in order.
    /// Row indices `< self.rows()` refer to `self`, the rest to `other`.
    pub fn stack_rows(&self, other: &DataMatrix, picks: &[usize]) -> Result<DataMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: other.cols,
            });
        }
        let mut data = Vec::with_capacity(picks.len() * self.cols);
        for &r in picks {
            if r < self.rows {
                data.extend_from_slice(self.row(r));
            } else {
                data.extend_from_slice(other.row(r - self.rows));
            }
        }
        DataMatrix::new(picks.len(), self.cols, data)
    }
}

/// Default node names `n1 .. np`.
pub fn default_labels(p: usize) -> Vec<String> {
    (1..=p).map(|i| format!("n{i}")).collect()
}

/// Square `p x p` edge-weight matrix with node labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectivityMatrix {
    labels: Vec<String>,
    entries: Vec<f64>,
}

impl ConnectivityMatrix {
    /// Checks shape, label count and finiteness. Symmetry is checked
    /// separately by [`ConnectivityMatrix::check_symmetric`] because the
    /// tolerance is caller-chosen.
    pub fn new(labels: Vec<String>, entries: Vec<f64>) -> Result<Self> {
        let p = labels.len();
        if entries.len() != p * p {
            return Err(Error::LabelCount {
                labels: p,
                dim: (entries.len() as f64).sqrt() as usize,
            });
        }
        if let Some(k) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry {
                i: k / p,
                j: k % p,
                value: entries[k],
            });
        }
        Ok(Self { labels, entries })
    }

    pub fn from_rows(labels: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let p = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != p) {
            return Err(Error::NotSquare {
                rows: p,
                cols: bad.len(),
            });
        }
        if labels.len() != p {
            return Err(Error::LabelCount {
                labels: labels.len(),
                dim: p,
            });
        }
        Self::new(labels, rows.into_iter().flatten().collect())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let p = self.dim();
        &self.entries[i * p..(i + 1) * p]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// First `(i, j)` with `|c_ij - c_ji| > tol`, as an error.
    pub fn check_symmetric(&self, tol: f64) -> Result<()> {
        let p = self.dim();
        for i in 0..p {
            for j in i + 1..p {
                let (a, b) = (self.get(i, j), self.get(j, i));
                if (a - b).abs() > tol {
                    return Err(Error::NotSymmetric { i, j, a, b });
                }
            }
        }
        Ok(())
    }

    pub fn check_same_labels(&self, other: &ConnectivityMatrix) -> Result<()> {
        check_labels(&self.labels, &other.labels)
    }
}

pub(crate) fn check_labels(a: &[String], b: &[String]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    match a.iter().zip(b).position(|(x, y)| x != y) {
        Some(index) => Err(Error::LabelMismatch {
            index,
            left: a[index].clone(),
            right: b[index].clone(),
        }),
        None => Ok(()),
    }
}

/// Sample Pearson correlation between the columns of `x`, with default labels.
pub fn pearson_correlation_matrix(x: &DataMatrix) -> Result<ConnectivityMatrix> {
    let (n, p) = (x.rows(), x.cols());
    let mut centered = vec![0.0; n * p];
    let mut norms = vec![0.0; p];
    for c in 0..p {
        let mean = (0..n).map(|r| x.get(r, c)).sum::<f64>() / n as f64;
        let mut ss = 0.0;
        for r in 0..n {
            let v = x.get(r, c) - mean;
            centered[c * n + r] = v;
            ss += v * v;
        }
        if ss <= 0.0 {
            return Err(Error::ZeroVariance { column: c });
        }
        norms[c] = ss.sqrt();
    }
    let mut entries = vec![0.0; p * p];
    for i in 0..p {
        entries[i * p + i] = 1.0;
        let ci = &centered[i * n..(i + 1) * n];
        for j in i + 1..p {
            let cj = &centered[j * n..(j + 1) * n];
            let dot: f64 = ci.iter().zip(cj).map(|(a, b)| a * b).sum();
            let r = (dot / (norms[i] * norms[j])).clamp(-1.0, 1.0);
            entries[i * p + j] = r;
            entries[j * p + i] = r;
        }
    }
    ConnectivityMatrix::new(default_labels(p), entries)
}

fn pearson(a: &[f64], b: &[f64]) -> Result<f64> {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa <= 0.0 || sbb <= 0.0 {
        return Err(Error::ConstantVector);
    }
    Ok((sab / (saa.sqrt() * sbb.sqrt())).clamp(-1.0, 1.0))
}

/// Midranks (1-based); tied values share the average of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = rank;
        }
        start = end;
    }
    ranks
}

fn is_constant(v: &[f64]) -> bool {
    v.iter().all(|x| *x == v[0])
}

/// Spearman rank correlation with midrank tie handling.
pub fn spearman_correlation(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.len() < 3 {
        return Err(Error::InvalidParameter {
            name: "length",
            reason: format!("need at least 3 points, got {}", a.len()),
        });
    }
    if let Some((i, v)) = a.iter().chain(b).enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFinite { index: i % a.len(), value: *v });
    }
    if is_constant(a) || is_constant(b) {
        return Err(Error::ConstantVector);
    }
    pearson(&average_ranks(a), &average_ranks(b))
}

/// Paired twin connectivity matrices for one zygosity group.
#[derive(Debug, Clone)]
pub struct TwinCohort {
    pairs: Vec<(ConnectivityMatrix, ConnectivityMatrix)>,
}

impl TwinCohort {
    pub const MIN_PAIRS: usize = 3;

    pub fn new(pairs: Vec<(ConnectivityMatrix, ConnectivityMatrix)>) -> Result<Self> {
        if pairs.len() < Self::MIN_PAIRS {
            return Err(Error::CohortTooSmall {
                got: pairs.len(),
                min: Self::MIN_PAIRS,
            });
        }
        let reference = pairs[0].0.labels();
        for (a, b) in &pairs {
            check_labels(reference, a.labels())?;
            check_labels(reference, b.labels())?;
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(ConnectivityMatrix, ConnectivityMatrix)] {
        &self.pairs
    }

    pub fn labels(&self) -> &[String] {
        self.pairs[0].0.labels()
    }

    pub fn dim(&self) -> usize {
        self.pairs[0].0.dim()
    }
}

/// Edge-wise twin correlation and the edges where it was undefined.
#[derive(Debug, Clone)]
pub struct TwinCorrelation {
    pub matrix: ConnectivityMatrix,
    /// Upper-triangle `(i, j)` whose twin vectors were constant; entry set to 0.
    pub degenerate_edges: Vec<(usize, usize)>,
}

/// For each edge, Spearman correlation across pairs between twin-A and
/// twin-B values.
///
/// With `symmetrize`, each pair enters in both orders (double-entry), which
/// makes the estimate independent of how twins were ordered within pairs.
pub fn twin_edgewise_correlation(cohort: &TwinCohort, symmetrize: bool) -> Result<TwinCorrelation> {
    let p = cohort.dim();
    let upper: Vec<(usize, usize)> = (0..p)
        .flat_map(|i| (i + 1..p).map(move |j| (i, j)))
        .collect();
    let values: Vec<Option<f64>> = upper
        .par_iter()
        .map(|&(i, j)| {
            let mut a: Vec<f64> = cohort.pairs.iter().map(|(x, _)| x.get(i, j)).collect();
            let mut b: Vec<f64> = cohort.pairs.iter().map(|(_, y)| y.get(i, j)).collect();
            if symmetrize {
                let (a0, b0) = (a.clone(), b.clone());
                a.extend_from_slice(&b0);
                b.extend_from_slice(&a0);
            }
            spearman_correlation(&a, &b).ok()
        })
        .collect();

    let mut entries = vec![0.0; p * p];
    let mut degenerate_edges = Vec::new();
    for i in 0..p {
        entries[i * p + i] = 1.0;
    }
    for (&(i, j), v) in upper.iter().zip(values) {
        let r = v.unwrap_or_else(|| {
            degenerate_edges.push((i, j));
            0.0
        });
        entries[i * p + j] = r;
        entries[j * p + i] = r;
    }
    if !degenerate_edges.is_empty() {
        log::warn!(
            "{} edge(s) had constant twin vectors; correlation set to 0",
            degenerate_edges.len()
        );
    }
    Ok(TwinCorrelation {
        matrix: ConnectivityMatrix::new(cohort.labels().to_vec(), entries)?,
        degenerate_edges,
    })
}

/// Falconer heritability index `2 (C_MZ - C_DZ)` per edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeritabilityMap {
    pub labels: Vec<String>,
    pub entries: Vec<f64>,
}

impl HeritabilityMap {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim() + j]
    }

    /// Copy with every entry clamped to `[0, 1]`, for display.
    pub fn clamped(&self) -> HeritabilityMap {
        HeritabilityMap {
            labels: self.labels.clone(),
            entries: self.entries.iter().map(|v| v.clamp(0.0, 1.0)).collect(),
        }
    }

    /// Off-diagonal upper-triangle entries below zero.
    pub fn negative_edges(&self) -> Vec<(usize, usize)> {
        let p = self.dim();
        (0..p)
            .flat_map(|i| (i + 1..p).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j) < 0.0)
            .collect()
    }

    pub fn to_matrix(&self) -> Result<ConnectivityMatrix> {
        ConnectivityMatrix::new(self.labels.clone(), self.entries.clone())
    }
}

pub fn heritability_index(mz: &ConnectivityMatrix, dz: &ConnectivityMatrix) -> Result<HeritabilityMap> {
    mz.check_same_labels(dz)?;
    let entries = mz
        .entries()
        .iter()
        .zip(dz.entries())
        .map(|(a, b)| 2.0 * (a - b))
        .collect();
    Ok(HeritabilityMap {
        labels: mz.labels().to_vec(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn matrix(cols: &[Vec<f64>]) -> DataMatrix {
        let n = cols[0].len();
        let data = (0..n).flat_map(|r| cols.iter().map(move |c| c[r])).collect();
        DataMatrix::new(n, cols.len(), data).unwrap()
    }

    #[test]
    fn pearson_duplicate_and_negated_columns() {
        let a = vec![1.0, 4.0, 2.0, 8.0, 5.0];
        let neg: Vec<f64> = a.iter().map(|v| -v).collect();
        let other = vec![3.0, 1.0, 4.0, 1.0, 5.0];
        let c = pearson_correlation_matrix(&matrix(&[a.clone(), a, neg, other])).unwrap();
        assert!((c.get(0, 1) - 1.0).abs() < 1e-12);
        assert!((c.get(0, 2) + 1.0).abs() < 1e-12);
        for i in 0..4 {
            assert_eq!(c.get(i, i), 1.0);
            for j in 0..4 {
                assert_eq!(c.get(i, j), c.get(j, i));
            }
        }
    }

    #[test]
    fn pearson_zero_variance_names_column() {
        let err = pearson_correlation_matrix(&matrix(&[vec![1.0, 2.0, 3.0], vec![2.0; 3]]));
        assert_eq!(err, Err(Error::ZeroVariance { column: 1 }));
    }

    #[test]
    fn pearson_independent_columns_are_weakly_correlated() {
        // Mean |r| for n = 10 independent normals is about 0.26.
        let mut total = 0.0;
        let mut count = 0;
        for seed in 0..50u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let data = (0..10 * 8).map(|_| rng.sample(StandardNormal)).collect();
            let c = pearson_correlation_matrix(&DataMatrix::new(10, 8, data).unwrap()).unwrap();
            for i in 0..8 {
                for j in i + 1..8 {
                    total += c.get(i, j).abs();
                    count += 1;
                }
            }
        }
        let mean = total / count as f64;
        assert!(mean > 0.18 && mean < 0.34, "mean |r| = {mean}");
    }

    #[test]
    fn spearman_examples() {
        let a = [1.0, 2.0, 3.0, 4.0];
        assert!((spearman_correlation(&a, &[1.0, 3.0, 2.0, 4.0]).unwrap() - 0.8).abs() < 1e-12);
        let cubes: Vec<f64> = a.iter().map(|v: &f64| v.powi(3) + 7.0).collect();
        assert!((spearman_correlation(&a, &cubes).unwrap() - 1.0).abs() < 1e-12);
        assert!((spearman_correlation(&a, &[4.0, 3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(spearman_correlation(&a, &[1.0; 4]), Err(Error::ConstantVector));
        assert!(spearman_correlation(&a[..2], &a[..2]).is_err());
        assert!(spearman_correlation(&a, &a[..3]).is_err());
    }

    #[test]
    fn midranks() {
        assert_eq!(average_ranks(&[10.0, 20.0, 10.0, 5.0]), vec![2.5, 4.0, 2.5, 1.0]);
    }

    fn labelled(p: usize, f: impl Fn(usize, usize) -> f64) -> ConnectivityMatrix {
        let entries = (0..p * p).map(|k| {
            let (i, j) = (k / p, k % p);
            if i == j { 0.0 } else { f(i.min(j), i.max(j)) }
        });
        ConnectivityMatrix::new(default_labels(p), entries.collect()).unwrap()
    }

    #[test]
    fn twin_duplicate_gives_one() {
        let pairs = (0..4)
            .map(|s| {
                let m = labelled(3, |i, j| (s * 7 + i * 3 + j) as f64 % 5.0 + s as f64);
                (m.clone(), m)
            })
            .collect();
        let cohort = TwinCohort::new(pairs).unwrap();
        let r = twin_edgewise_correlation(&cohort, false).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((r.matrix.get(i, j) - 1.0).abs() < 1e-12);
            }
        }
        assert!(r.degenerate_edges.is_empty());
    }

    #[test]
    fn twin_single_edge_and_degenerate() {
        let pairs = (1..=3)
            .map(|s| {
                let a = labelled(3, |i, j| if (i, j) == (0, 1) { s as f64 } else { 2.0 });
                (a.clone(), a)
            })
            .collect();
        let r = twin_edgewise_correlation(&TwinCohort::new(pairs).unwrap(), false).unwrap();
        assert!((r.matrix.get(0, 1) - 1.0).abs() < 1e-12);
        assert_eq!(r.matrix.get(0, 2), 0.0);
        assert_eq!(r.degenerate_edges, vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn cohort_validation() {
        let m = labelled(3, |_, _| 1.0);
        assert!(matches!(
            TwinCohort::new(vec![(m.clone(), m.clone()); 2]),
            Err(Error::CohortTooSmall { got: 2, min: 3 })
        ));
        let other =
            ConnectivityMatrix::new(vec!["x".into(), "n2".into(), "n3".into()], vec![0.0; 9]).unwrap();
        assert!(matches!(
            TwinCohort::new(vec![(m.clone(), m.clone()), (m.clone(), other), (m.clone(), m)]),
            Err(Error::LabelMismatch { index: 0, .. })
        ));
    }

    #[test]
    fn heritability_arithmetic() {
        let mz = labelled(2, |_, _| 0.6);
        let dz = labelled(2, |_, _| 0.35);
        let hi = heritability_index(&mz, &dz).unwrap();
        assert!((hi.get(0, 1) - 0.5).abs() < 1e-12);
        let hi = heritability_index(&labelled(2, |_, _| 0.2), &labelled(2, |_, _| 0.5)).unwrap();
        assert!((hi.get(0, 1) + 0.6).abs() < 1e-12);
        assert_eq!(hi.negative_edges(), vec![(0, 1)]);
        assert_eq!(hi.clamped().get(0, 1), 0.0);
        let zero = heritability_index(&mz, &mz).unwrap();
        assert!(zero.entries.iter().all(|v| *v == 0.0));
        let bad = ConnectivityMatrix::new(vec!["a".into(), "b".into()], vec![0.0; 4]).unwrap();
        assert!(heritability_index(&mz, &bad).is_err());
    }

    #[test]
    fn symmetry_check_reports_indices() {
        let m = ConnectivityMatrix::from_rows(
            default_labels(3),
            vec![vec![1.0, 0.5, 0.2], vec![0.5, 1.0, 0.3], vec![0.2, 0.31, 1.0]],
        )
        .unwrap();
        assert!(matches!(m.check_symmetric(1e-9), Err(Error::NotSymmetric { i: 1, j: 2, .. })));
        assert!(m.check_symmetric(0.1).is_ok());
        assert!(matches!(
            ConnectivityMatrix::from_rows(default_labels(2), vec![vec![1.0], vec![1.0, 2.0]]),
            Err(Error::NotSquare { .. })
        ));
    }
}
