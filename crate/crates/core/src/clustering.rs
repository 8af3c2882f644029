//! k-means grouping of bid positions.
//!
//! Both variants seed from `k` distinct population members chosen uniformly
//! without replacement. [`one_step_kmeans`] performs a single
//! assign-and-update pass; [`full_kmeans`] runs Lloyd iterations to
//! convergence. Distance ties go to the lowest cluster index, and a cluster
//! left empty is repaired by taking the member of the largest cluster that
//! lies farthest from that cluster's centroid.

use crate::error::{Error, Result};
use crate::rng::RngStream;

pub const DEFAULT_MAX_ITER: usize = 100;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterAssignment {
    labels: Vec<usize>,
    centroids: Vec<Vec<f64>>,
}

impl ClusterAssignment {
    pub fn k(&self) -> usize {
        self.centroids.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn centroids(&self) -> &[Vec<f64>] {
        &self.centroids
    }

    /// Indices of the points labelled `cluster`, ascending.
    pub fn members(&self, cluster: usize) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == cluster)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k()];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Index of the nearest centre; ties resolve to the lowest index.
pub fn nearest(point: &[f64], centres: &[Vec<f64>]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (c, centre) in centres.iter().enumerate() {
        let d = sq_dist(point, centre);
        if d < best_d {
            best = c;
            best_d = d;
        }
    }
    best
}

fn check_inputs<P: AsRef<[f64]>>(positions: &[P], k: usize) -> Result<usize> {
    let n = positions.len();
    if k == 0 || k > n {
        return Err(Error::ClusterCount { k, n });
    }
    let dim = positions[0].as_ref().len();
    if let Some(p) = positions.iter().find(|p| p.as_ref().len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: p.as_ref().len(),
        });
    }
    Ok(dim)
}

/// `k` distinct indices from `0..n`, uniformly, by a partial Fisher-Yates
/// shuffle (one draw per seed).
pub fn sample_seeds(n: usize, k: usize, rng: &mut RngStream) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + rng.index(n - i);
        idx.swap(i, j);
    }
    idx.truncate(k);
    idx
}

fn assign<P: AsRef<[f64]>>(positions: &[P], centres: &[Vec<f64>]) -> Vec<usize> {
    positions.iter().map(|p| nearest(p.as_ref(), centres)).collect()
}

fn centroid_of<P: AsRef<[f64]>>(positions: &[P], labels: &[usize], cluster: usize, dim: usize) -> Vec<f64> {
    let mut sum = vec![0.0; dim];
    let mut count = 0usize;
    for (p, _) in positions.iter().zip(labels).filter(|(_, &l)| l == cluster) {
        for (s, x) in sum.iter_mut().zip(p.as_ref()) {
            *s += x;
        }
        count += 1;
    }
    if count > 0 {
        sum.iter_mut().for_each(|s| *s /= count as f64);
    }
    sum
}

/// Recomputes centroids as member means, then repairs empty clusters.
fn update<P: AsRef<[f64]>>(positions: &[P], labels: &mut [usize], k: usize, dim: usize) -> Vec<Vec<f64>> {
    let mut centroids: Vec<Vec<f64>> = (0..k).map(|c| centroid_of(positions, labels, c, dim)).collect();
    let mut sizes = vec![0usize; k];
    for &l in labels.iter() {
        sizes[l] += 1;
    }
    for empty in 0..k {
        if sizes[empty] > 0 {
            continue;
        }
        // Largest cluster, lowest index on ties. It has >= 2 members since k <= n.
        let donor = (0..k).fold(0, |best, c| if sizes[c] > sizes[best] { c } else { best });
        let mut far = usize::MAX;
        let mut far_d = f64::NEG_INFINITY;
        for (i, p) in positions.iter().enumerate() {
            if labels[i] == donor {
                let d = sq_dist(p.as_ref(), &centroids[donor]);
                if d > far_d {
                    far = i;
                    far_d = d;
                }
            }
        }
        labels[far] = empty;
        sizes[donor] -= 1;
        sizes[empty] = 1;
        centroids[donor] = centroid_of(positions, labels, donor, dim);
        centroids[empty] = positions[far].as_ref().to_vec();
    }
    centroids
}

/// Single seed-assign-update pass from the given seed indices.
pub fn one_step_kmeans_from_seeds<P: AsRef<[f64]>>(positions: &[P], seeds: &[usize]) -> Result<ClusterAssignment> {
    let k = seeds.len();
    let dim = check_inputs(positions, k)?;
    let centres: Vec<Vec<f64>> = seeds.iter().map(|&s| positions[s].as_ref().to_vec()).collect();
    let mut labels = assign(positions, &centres);
    let centroids = update(positions, &mut labels, k, dim);
    Ok(ClusterAssignment { labels, centroids })
}

pub fn one_step_kmeans<P: AsRef<[f64]>>(positions: &[P], k: usize, rng: &mut RngStream) -> Result<ClusterAssignment> {
    check_inputs(positions, k)?;
    let seeds = sample_seeds(positions.len(), k, rng);
    one_step_kmeans_from_seeds(positions, &seeds)
}

/// Lloyd iterations from the given seed indices. Stops when the labels stop
/// changing, when no centroid moves by `tol` or more, or after `max_iter`
/// passes.
pub fn full_kmeans_from_seeds<P: AsRef<[f64]>>(
    positions: &[P],
    seeds: &[usize],
    max_iter: usize,
    tol: f64,
) -> Result<ClusterAssignment> {
    if max_iter == 0 {
        return Err(Error::Config("full_kmeans needs max_iter >= 1".into()));
    }
    let mut current = one_step_kmeans_from_seeds(positions, seeds)?;
    let k = seeds.len();
    let dim = positions[0].as_ref().len();
    for _ in 1..max_iter {
        let mut labels = assign(positions, &current.centroids);
        let centroids = update(positions, &mut labels, k, dim);
        let unchanged = labels == current.labels;
        let shift = centroids
            .iter()
            .zip(&current.centroids)
            .map(|(a, b)| sq_dist(a, b).sqrt())
            .fold(0.0, f64::max);
        current = ClusterAssignment { labels, centroids };
        if unchanged || shift < tol {
            break;
        }
    }
    Ok(current)
}

pub fn full_kmeans<P: AsRef<[f64]>>(
    positions: &[P],
    k: usize,
    rng: &mut RngStream,
    max_iter: usize,
    tol: f64,
) -> Result<ClusterAssignment> {
    check_inputs(positions, k)?;
    let seeds = sample_seeds(positions.len(), k, rng);
    full_kmeans_from_seeds(positions, &seeds, max_iter, tol)
}

/// Mean of `values` per cluster.
pub fn cluster_mean_values(assignment: &ClusterAssignment, values: &[f64]) -> Result<Vec<f64>> {
    if values.len() != assignment.labels.len() {
        return Err(Error::LengthMismatch(assignment.labels.len(), values.len()));
    }
    let k = assignment.k();
    let mut sums = vec![0.0; k];
    let mut counts = vec![0usize; k];
    for (&l, &v) in assignment.labels.iter().zip(values) {
        sums[l] += v;
        counts[l] += 1;
    }
    Ok(sums
        .into_iter()
        .zip(counts)
        .map(|(s, c)| if c == 0 { f64::NAN } else { s / c as f64 })
        .collect())
}

/// Within-cluster sum of squared distances to the centroids.
pub fn within_cluster_ss<P: AsRef<[f64]>>(positions: &[P], assignment: &ClusterAssignment) -> f64 {
    positions
        .iter()
        .zip(&assignment.labels)
        .map(|(p, &l)| sq_dist(p.as_ref(), &assignment.centroids[l]))
        .sum()
}
