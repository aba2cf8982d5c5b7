//! Advancing-front node placement.
//!
//! Every accepted node is pushed to a FIFO queue. When a node is expanded,
//! candidates are proposed on a sphere of radius `h(node)` around it; a
//! candidate is accepted iff it lies inside the region and no existing node
//! is closer than `accept_factor * h(candidate)`.

use std::collections::VecDeque;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{add, dist_sq, normalized, scale, Point};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FillConfig {
    /// Candidates are rejected closer than `accept_factor * h` to any node.
    pub accept_factor: f64,
    /// Candidates proposed per expanded node.
    pub candidates: usize,
}

impl FillConfig {
    pub fn for_dimension(d: usize) -> Self {
        Self { accept_factor: 0.9, candidates: if d <= 2 { 15 } else { 30 } }
    }
}

/// Uniform background grid holding node indices in per-cell linked lists.
pub(crate) struct Grid<const D: usize> {
    lo: Point<D>,
    cell: f64,
    dims: [usize; D],
    head: Vec<u32>,
    next: Vec<u32>,
}

const NONE: u32 = u32::MAX;
const MAX_CELLS: f64 = 4.0e6;

impl<const D: usize> Grid<D> {
    pub(crate) fn new(lo: Point<D>, hi: Point<D>, min_cell: f64) -> Self {
        let extent: f64 = (0..D).map(|a| hi[a] - lo[a]).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        let cap = extent / MAX_CELLS.powf(1.0 / D as f64);
        let cell = min_cell.max(cap);
        let dims: [usize; D] = std::array::from_fn(|a| (((hi[a] - lo[a]) / cell).floor() as usize) + 1);
        let total = dims.iter().product();
        Self { lo, cell, dims, head: vec![NONE; total], next: Vec::new() }
    }

    fn coord(&self, x: f64, axis: usize) -> usize {
        let c = ((x - self.lo[axis]) / self.cell).floor();
        (c.max(0.0) as usize).min(self.dims[axis] - 1)
    }

    fn flat(&self, idx: &[usize; D]) -> usize {
        let mut f = 0;
        for a in (0..D).rev() {
            f = f * self.dims[a] + idx[a];
        }
        f
    }

    pub(crate) fn insert(&mut self, id: usize, x: &Point<D>) {
        let idx: [usize; D] = std::array::from_fn(|a| self.coord(x[a], a));
        let f = self.flat(&idx);
        if self.next.len() <= id {
            self.next.resize(id + 1, NONE);
        }
        self.next[id] = self.head[f];
        self.head[f] = id as u32;
    }

    /// True if any stored node is strictly closer than `radius` to `x`.
    pub(crate) fn any_within(&self, x: &Point<D>, radius: f64, positions: &[Point<D>]) -> bool {
        let r2 = radius * radius;
        let lo: [usize; D] = std::array::from_fn(|a| self.coord(x[a] - radius, a));
        let hi: [usize; D] = std::array::from_fn(|a| self.coord(x[a] + radius, a));
        let mut idx = lo;
        loop {
            let mut id = self.head[self.flat(&idx)];
            while id != NONE {
                if dist_sq(&positions[id as usize], x) < r2 {
                    return true;
                }
                id = self.next[id as usize];
            }
            // odometer over the cell block
            let mut a = 0;
            loop {
                if a == D {
                    return false;
                }
                if idx[a] < hi[a] {
                    idx[a] += 1;
                    break;
                }
                idx[a] = lo[a];
                a += 1;
            }
        }
    }
}

/// Candidate directions: evenly spaced with a random rotation on the circle,
/// uniformly random on higher-dimensional spheres.
pub(crate) fn directions<const D: usize>(rng: &mut ChaCha8Rng, count: usize) -> Vec<Point<D>> {
    match D {
        1 => (0..count).map(|i| std::array::from_fn(|_| if i % 2 == 0 { 1.0 } else { -1.0 })).collect(),
        2 => {
            let offset: f64 = rng.random::<f64>() * std::f64::consts::TAU;
            (0..count)
                .map(|i| {
                    let t = offset + std::f64::consts::TAU * i as f64 / count as f64;
                    std::array::from_fn(|a| if a == 0 { t.cos() } else { t.sin() })
                })
                .collect()
        }
        _ => (0..count)
            .map(|_| loop {
                let v: Point<D> = std::array::from_fn(|_| 2.0 * rng.random::<f64>() - 1.0);
                let n2: f64 = v.iter().map(|c| c * c).sum();
                if n2 > 1e-4 && n2 <= 1.0 {
                    break normalized(&v);
                }
            })
            .collect(),
    }
}

/// Runs the advancing front starting from every node already in `positions`.
/// New nodes are appended to `positions` and `spacing`; their indices are
/// returned in acceptance order.
pub(crate) fn advance<const D: usize>(
    positions: &mut Vec<Point<D>>,
    spacing: &mut Vec<f64>,
    grid: &mut Grid<D>,
    inside: impl Fn(&Point<D>) -> bool,
    h: impl Fn(&Point<D>) -> f64,
    cfg: &FillConfig,
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    let mut queue: VecDeque<usize> = (0..positions.len()).collect();
    let mut added = Vec::new();
    while let Some(i) = queue.pop_front() {
        let p = positions[i];
        let r = spacing[i];
        for dir in directions::<D>(rng, cfg.candidates) {
            let c = add(&p, &scale(&dir, r));
            if !inside(&c) {
                continue;
            }
            let hc = h(&c);
            if grid.any_within(&c, cfg.accept_factor * hc, positions) {
                continue;
            }
            let id = positions.len();
            positions.push(c);
            spacing.push(hc);
            grid.insert(id, &c);
            queue.push_back(id);
            added.push(id);
        }
    }
    added
}

/// Parameters in `[0, length]` spaced by the local `h` along a curve.
///
/// For a closed curve, `count = round(∫ dt / h)` nodes are returned, shifted by
/// `phase ∈ [0, 1)` of a step. For an open curve the endpoints are excluded and
/// only the interior division points are returned.
pub(crate) fn stretched_parameters(length: f64, h: impl Fn(f64) -> f64, closed: bool, phase: f64) -> Vec<f64> {
    const SAMPLES: usize = 4096;
    let dt = length / SAMPLES as f64;
    let mut cum = Vec::with_capacity(SAMPLES + 1);
    cum.push(0.0);
    let mut prev = 1.0 / h(0.0);
    for k in 1..=SAMPLES {
        let cur = 1.0 / h(k as f64 * dt);
        let last = *cum.last().unwrap();
        cum.push(last + 0.5 * (prev + cur) * dt);
        prev = cur;
    }
    let total = cum[SAMPLES];
    let steps = (total.round() as usize).max(1);
    let step = total / steps as f64;
    let invert = |target: f64| -> f64 {
        let k = cum.partition_point(|&c| c < target).clamp(1, SAMPLES);
        let (c0, c1) = (cum[k - 1], cum[k]);
        let frac = if c1 > c0 { (target - c0) / (c1 - c0) } else { 0.0 };
        ((k - 1) as f64 + frac) * dt
    };
    if closed {
        (0..steps).map(|i| invert((i as f64 + phase) * step)).collect()
    } else {
        (1..steps).map(|i| invert(i as f64 * step)).collect()
    }
}
