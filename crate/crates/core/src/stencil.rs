//! Exact k-nearest-neighbour stencils.

use std::collections::BinaryHeap;
use std::io::Write;

use crate::domain::NodeSet;
use crate::error::{Error, Result};
use crate::geometry::{dist_sq, Point};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Stencil size `2 * binom(m + d, d)`: twice the monomial basis size.
pub fn stencil_size(m: usize, d: usize) -> usize {
    2 * binomial(m + d, d)
}

const LEAF_SIZE: usize = 12;

enum KdNode {
    Leaf { start: usize, end: usize },
    Split { axis: usize, value: f64, left: usize, right: usize },
}

/// Static kd-tree over a point cloud answering exact k-NN queries.
///
/// Results are ordered by `(distance, index)`, so ties are broken by the
/// smaller node index.
pub struct KdTree<const D: usize> {
    points: Vec<Point<D>>,
    order: Vec<usize>,
    nodes: Vec<KdNode>,
}

#[derive(PartialEq, PartialOrd)]
struct Candidate(f64, usize);

impl Eq for Candidate {}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

impl<const D: usize> KdTree<D> {
    pub fn new(points: &[Point<D>]) -> Self {
        let mut tree = Self { points: points.to_vec(), order: (0..points.len()).collect(), nodes: Vec::new() };
        if !points.is_empty() {
            tree.build(0, points.len());
        }
        tree
    }

    pub fn from_nodes(nodes: &NodeSet<D>) -> Self {
        Self::new(nodes.positions())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn build(&mut self, start: usize, end: usize) -> usize {
        let id = self.nodes.len();
        if end - start <= LEAF_SIZE {
            self.nodes.push(KdNode::Leaf { start, end });
            return id;
        }
        let axis = (0..D)
            .map(|a| {
                let (lo, hi) = self.order[start..end].iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| {
                    (lo.min(self.points[i][a]), hi.max(self.points[i][a]))
                });
                (a, hi - lo)
            })
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .map_or(0, |(a, _)| a);
        let mid = (start + end) / 2;
        let points = &self.points;
        self.order[start..end].select_nth_unstable_by(mid - start, |&i, &j| points[i][axis].total_cmp(&points[j][axis]));
        let value = self.points[self.order[mid]][axis];
        self.nodes.push(KdNode::Leaf { start: 0, end: 0 });
        let left = self.build(start, mid);
        let right = self.build(mid, end);
        self.nodes[id] = KdNode::Split { axis, value, left, right };
        id
    }

    /// The `k` nearest points to `query` as `(index, squared distance)`.
    pub fn knn(&self, query: &Point<D>, k: usize) -> Result<Vec<(usize, f64)>> {
        if k > self.len() {
            return Err(Error::InsufficientNodes { requested: k, available: self.len() });
        }
        if k == 0 {
            return Ok(Vec::new());
        }
        let mut heap = BinaryHeap::with_capacity(k + 1);
        self.search(0, query, k, &mut heap);
        let mut out: Vec<(usize, f64)> = heap.into_iter().map(|Candidate(d, i)| (i, d)).collect();
        out.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        Ok(out)
    }

    fn search(&self, node: usize, q: &Point<D>, k: usize, heap: &mut BinaryHeap<Candidate>) {
        match self.nodes[node] {
            KdNode::Leaf { start, end } => {
                for &i in &self.order[start..end] {
                    let c = Candidate(dist_sq(&self.points[i], q), i);
                    if heap.len() < k {
                        heap.push(c);
                    } else if c < *heap.peek().unwrap() {
                        heap.pop();
                        heap.push(c);
                    }
                }
            }
            KdNode::Split { axis, value, left, right } => {
                let diff = q[axis] - value;
                let (near, far) = if diff < 0.0 { (left, right) } else { (right, left) };
                self.search(near, q, k, heap);
                // equal distances must still be visited for index tie-breaking
                if heap.len() < k || diff * diff <= heap.peek().unwrap().0 {
                    self.search(far, q, k, heap);
                }
            }
        }
    }
}

/// The `n` nearest nodes of a central node, center first.
#[derive(Clone, Debug, PartialEq)]
pub struct Stencil {
    pub center: usize,
    pub neighbors: Vec<usize>,
    /// Distance from the center to the farthest member.
    pub radius: f64,
}

impl Stencil {
    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    /// The first `n` members; still a valid nearest-neighbour stencil.
    pub fn truncated<const D: usize>(&self, n: usize, positions: &[Point<D>]) -> Stencil {
        let n = n.min(self.len());
        let neighbors = self.neighbors[..n].to_vec();
        let c = &positions[self.center];
        let radius = neighbors.iter().map(|&j| dist_sq(c, &positions[j])).fold(0.0, f64::max).sqrt();
        Stencil { center: self.center, neighbors, radius }
    }
}

/// Stencil of every node via the kd-tree.
pub fn find_stencils<const D: usize>(nodes: &NodeSet<D>, n: usize) -> Result<Vec<Stencil>> {
    if n == 0 {
        return Err(Error::Config("stencil size must be at least 1".into()));
    }
    if n > nodes.len() {
        return Err(Error::InsufficientNodes { requested: n, available: nodes.len() });
    }
    let tree = KdTree::from_nodes(nodes);
    (0..nodes.len())
        .map(|i| {
            let hits = tree.knn(nodes.position(i), n)?;
            let mut neighbors: Vec<usize> = hits.iter().map(|&(j, _)| j).collect();
            // coincident nodes could sort ahead of the center
            if neighbors[0] != i {
                let pos = neighbors.iter().position(|&j| j == i).unwrap_or(0);
                neighbors[..=pos].rotate_right(1);
                neighbors[0] = i;
            }
            let radius = hits.last().map_or(0.0, |&(_, d)| d.sqrt());
            Ok(Stencil { center: i, neighbors, radius })
        })
        .collect()
}

/// Debug dump: `node,neighbors` with neighbours separated by spaces.
pub fn write_stencils_csv<W: Write>(stencils: &[Stencil], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["node", "neighbors"])?;
    for s in stencils {
        let ids: Vec<String> = s.neighbors.iter().map(usize::to_string).collect();
        w.write_record([s.center.to_string(), ids.join(" ")])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_knn<const D: usize>(points: &[Point<D>], q: &Point<D>, k: usize) -> Vec<usize> {
        let mut all: Vec<(f64, usize)> = points.iter().enumerate().map(|(i, p)| (dist_sq(p, q), i)).collect();
        all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        all.into_iter().take(k).map(|(_, i)| i).collect()
    }

    #[test]
    fn stencil_sizes() {
        assert_eq!(stencil_size(2, 2), 12);
        assert_eq!(stencil_size(4, 2), 30);
        assert_eq!(stencil_size(0, 3), 2);
        assert_eq!(stencil_size(6, 2), 56);
        assert_eq!(stencil_size(4, 3), 70);
    }

    #[test]
    fn single_point() {
        let tree = KdTree::new(&[[0.3, 0.4]]);
        assert_eq!(tree.knn(&[5.0, 5.0], 1).unwrap(), vec![(0, dist_sq(&[0.3, 0.4], &[5.0, 5.0]))]);
        assert!(matches!(tree.knn(&[0.0, 0.0], 2), Err(Error::InsufficientNodes { .. })));
    }

    #[test]
    fn grid_cross_stencil() {
        let mut nodes = NodeSet::<2>::new();
        for i in 0..5 {
            for j in 0..5 {
                nodes.push_interior([i as f64, j as f64], 1.0);
            }
        }
        let stencils = find_stencils(&nodes, 5).unwrap();
        let s = &stencils[12]; // (2, 2)
        assert_eq!(s.neighbors[0], 12);
        let mut rest = s.neighbors[1..].to_vec();
        rest.sort();
        assert_eq!(rest, vec![7, 11, 13, 17]);
        // ties broken by index
        assert_eq!(&s.neighbors[1..], &[7, 11, 13, 17]);
        assert_eq!(s.radius, 1.0);
    }

    #[test]
    fn extreme_sizes() {
        let mut nodes = NodeSet::<2>::new();
        for i in 0..7 {
            nodes.push_interior([i as f64 * 0.37, (i * i) as f64 * 0.1], 1.0);
        }
        for s in find_stencils(&nodes, 1).unwrap() {
            assert_eq!(s.neighbors, vec![s.center]);
        }
        for s in find_stencils(&nodes, 7).unwrap() {
            let mut all = s.neighbors.clone();
            all.sort();
            assert_eq!(all, (0..7).collect::<Vec<_>>());
            assert_eq!(s.neighbors[0], s.center);
        }
        assert!(find_stencils(&nodes, 8).is_err());
    }

    #[test]
    fn matches_brute_force_on_random_cloud() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let pts: Vec<Point<3>> = (0..1000).map(|_| std::array::from_fn(|_| rng.random::<f64>())).collect();
        let tree = KdTree::new(&pts);
        for _ in 0..100 {
            let q: Point<3> = std::array::from_fn(|_| rng.random::<f64>() * 1.2 - 0.1);
            let got: Vec<usize> = tree.knn(&q, 17).unwrap().into_iter().map(|(i, _)| i).collect();
            assert_eq!(got, brute_knn(&pts, &q, 17));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn stencils_match_brute_force(
            coords in prop::collection::vec((0u8..20, 0u8..20), 10..300),
            n in 1usize..12,
        ) {
            // integer lattice coordinates produce many distance ties
            let unique: std::collections::BTreeSet<_> = coords.into_iter().collect();
            let mut nodes = NodeSet::<2>::new();
            for (x, y) in &unique {
                nodes.push_interior([*x as f64 * 0.1, *y as f64 * 0.1], 0.1);
            }
            let n = n.min(nodes.len());
            let stencils = find_stencils(&nodes, n).unwrap();
            for s in &stencils {
                prop_assert_eq!(s.neighbors.len(), n);
                prop_assert_eq!(s.neighbors[0], s.center);
                let c = nodes.position(s.center);
                let d: Vec<f64> = s.neighbors.iter().map(|&j| dist_sq(c, nodes.position(j))).collect();
                prop_assert!(d.windows(2).all(|w| w[0] <= w[1]));
                prop_assert_eq!(&s.neighbors, &brute_knn(nodes.positions(), c, n));
            }
        }
    }
}
