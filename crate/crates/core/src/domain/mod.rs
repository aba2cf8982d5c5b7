//! Scattered node generation on the benchmark domains.

mod fill;
mod nodes;
mod spacing;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use fill::FillConfig;
pub use nodes::NodeSet;
pub use spacing::SpacingFunction;

use crate::error::{Error, Result};
use crate::geometry::{dist, normalized, Point};
use fill::{advance, stretched_parameters, Grid};

/// A bounded region with a boundary discretization rule.
pub trait Domain<const D: usize> {
    /// Strict interior test.
    fn contains(&self, x: &Point<D>) -> bool;

    /// Axis-aligned bounding box `(lo, hi)`.
    fn bounds(&self) -> (Point<D>, Point<D>);

    fn diameter(&self) -> f64;

    /// Distance from `x` to the analytic boundary surface.
    fn boundary_distance(&self, x: &Point<D>) -> f64;

    /// Places nodes on the boundary with local spacing `h`, each carrying its
    /// outward unit normal.
    fn fill_boundary(&self, sf: &SpacingFunction<D>, cfg: &FillConfig, seed: u64) -> Result<NodeSet<D>>;
}

/// Serializable description of the supported domains.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DomainKind {
    Disc2D { center: [f64; 2], radius: f64 },
    Box3D { lo: [f64; 3], hi: [f64; 3] },
}

const INTERIOR_STREAM: u64 = 1;
const FACE_STREAM: u64 = 2;

/// Two-dimensional disc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Disc {
    center: Point<2>,
    radius: f64,
}

impl Disc {
    pub fn new(center: Point<2>, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Config(format!("disc radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn unit() -> Self {
        Self { center: [0.0, 0.0], radius: 1.0 }
    }

    pub fn center(&self) -> Point<2> {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    fn at_angle(&self, t: f64) -> Point<2> {
        [self.center[0] + self.radius * t.cos(), self.center[1] + self.radius * t.sin()]
    }
}

impl Domain<2> for Disc {
    fn contains(&self, x: &Point<2>) -> bool {
        dist(x, &self.center) < self.radius
    }

    fn bounds(&self) -> (Point<2>, Point<2>) {
        let r = self.radius;
        ([self.center[0] - r, self.center[1] - r], [self.center[0] + r, self.center[1] + r])
    }

    fn diameter(&self) -> f64 {
        2.0 * self.radius
    }

    fn boundary_distance(&self, x: &Point<2>) -> f64 {
        (dist(x, &self.center) - self.radius).abs()
    }

    fn fill_boundary(&self, sf: &SpacingFunction<2>, _cfg: &FillConfig, seed: u64) -> Result<NodeSet<2>> {
        let min_h = (0..720)
            .map(|i| sf.eval(&self.at_angle(std::f64::consts::TAU * i as f64 / 720.0)))
            .fold(f64::INFINITY, f64::min);
        if min_h > self.diameter() {
            return Err(Error::TooCoarse { spacing: min_h, diameter: self.diameter() });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phase: f64 = rng.random();
        let arc = |t: f64| sf.eval(&self.at_angle(t / self.radius));
        let mut nodes = NodeSet::new();
        for s in stretched_parameters(std::f64::consts::TAU * self.radius, arc, true, phase) {
            let t = s / self.radius;
            let x = self.at_angle(t);
            nodes.push_boundary(x, [t.cos(), t.sin()], sf.eval(&x));
        }
        Ok(nodes)
    }
}

/// Axis-aligned box in three dimensions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cuboid {
    lo: Point<3>,
    hi: Point<3>,
}

impl Cuboid {
    pub fn new(lo: Point<3>, hi: Point<3>) -> Result<Self> {
        if (0..3).any(|a| !(lo[a] < hi[a])) {
            return Err(Error::Config(format!("box requires lo < hi componentwise, got {lo:?} / {hi:?}")));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> Point<3> {
        self.lo
    }

    pub fn hi(&self) -> Point<3> {
        self.hi
    }

    fn corner(&self, bits: usize) -> Point<3> {
        std::array::from_fn(|a| if bits >> a & 1 == 1 { self.hi[a] } else { self.lo[a] })
    }

    /// Outward normal sum of the faces a boundary point touches.
    fn touching_normal(&self, x: &Point<3>) -> Point<3> {
        std::array::from_fn(|a| {
            if x[a] == self.lo[a] {
                -1.0
            } else if x[a] == self.hi[a] {
                1.0
            } else {
                0.0
            }
        })
    }

    fn fill_face(
        &self,
        nodes: &mut NodeSet<3>,
        axis: usize,
        value: f64,
        sf: &SpacingFunction<3>,
        cfg: &FillConfig,
        rng: &mut ChaCha8Rng,
    ) {
        let (a, b) = ((axis + 1) % 3, (axis + 2) % 3);
        let lift = |p: &Point<2>| -> Point<3> {
            let mut x = [0.0; 3];
            x[axis] = value;
            x[a] = p[0];
            x[b] = p[1];
            x
        };
        let mut positions: Vec<Point<2>> = Vec::new();
        let mut spacing = Vec::new();
        for i in 0..nodes.len() {
            let x = nodes.position(i);
            if x[axis] == value {
                positions.push([x[a], x[b]]);
                spacing.push(nodes.spacing(i));
            }
        }
        let (lo, hi) = ([self.lo[a], self.lo[b]], [self.hi[a], self.hi[b]]);
        let mut grid = Grid::new(lo, hi, sf.fine * cfg.accept_factor);
        for (i, p) in positions.iter().enumerate() {
            grid.insert(i, p);
        }
        let inside = |p: &Point<2>| p[0] > lo[0] && p[0] < hi[0] && p[1] > lo[1] && p[1] < hi[1];
        let added = advance(&mut positions, &mut spacing, &mut grid, inside, |p| sf.eval(&lift(p)), cfg, rng);
        let mut normal = [0.0; 3];
        normal[axis] = if value == self.lo[axis] { -1.0 } else { 1.0 };
        for i in added {
            nodes.push_boundary(lift(&positions[i]), normal, spacing[i]);
        }
    }
}

impl Domain<3> for Cuboid {
    fn contains(&self, x: &Point<3>) -> bool {
        (0..3).all(|a| x[a] > self.lo[a] && x[a] < self.hi[a])
    }

    fn bounds(&self) -> (Point<3>, Point<3>) {
        (self.lo, self.hi)
    }

    fn diameter(&self) -> f64 {
        dist(&self.lo, &self.hi)
    }

    fn boundary_distance(&self, x: &Point<3>) -> f64 {
        (0..3)
            .flat_map(|a| [(x[a] - self.lo[a]).abs(), (x[a] - self.hi[a]).abs()])
            .fold(f64::INFINITY, f64::min)
    }

    fn fill_boundary(&self, sf: &SpacingFunction<3>, cfg: &FillConfig, seed: u64) -> Result<NodeSet<3>> {
        // h grows with distance from its center, so its minimum over a face is
        // attained at the projection of the center onto that face.
        let min_h = (0..3)
            .flat_map(|axis| [self.lo[axis], self.hi[axis]].map(|v| (axis, v)))
            .map(|(axis, v)| {
                let p: Point<3> =
                    std::array::from_fn(|a| if a == axis { v } else { sf.center[a].clamp(self.lo[a], self.hi[a]) });
                sf.eval(&p)
            })
            .fold(f64::INFINITY, f64::min);
        if min_h > self.diameter() {
            return Err(Error::TooCoarse { spacing: min_h, diameter: self.diameter() });
        }

        let mut nodes = NodeSet::new();
        for bits in 0..8 {
            let x = self.corner(bits);
            nodes.push_boundary(x, normalized(&self.touching_normal(&x)), sf.eval(&x));
        }
        for axis in 0..3 {
            for bits in 0..8usize {
                if bits >> axis & 1 == 1 {
                    continue;
                }
                let start = self.corner(bits);
                let end = self.corner(bits | 1 << axis);
                let len = end[axis] - start[axis];
                let along = |t: f64| {
                    let mut x = start;
                    x[axis] += t;
                    x
                };
                for t in stretched_parameters(len, |t| sf.eval(&along(t)), false, 0.0) {
                    let x = along(t);
                    nodes.push_boundary(x, normalized(&self.touching_normal(&x)), sf.eval(&x));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(FACE_STREAM);
        for axis in 0..3 {
            for value in [self.lo[axis], self.hi[axis]] {
                self.fill_face(&mut nodes, axis, value, sf, cfg, &mut rng);
            }
        }
        Ok(nodes)
    }
}

/// Fills the interior of `domain` around an existing boundary discretization.
///
/// Deterministic for a fixed seed. A domain thinner than the local spacing
/// yields the boundary nodes unchanged.
pub fn fill_interior<const D: usize, G: Domain<D> + ?Sized>(
    domain: &G,
    sf: &SpacingFunction<D>,
    boundary: NodeSet<D>,
    seed: u64,
    cfg: &FillConfig,
) -> NodeSet<D> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(INTERIOR_STREAM);
    let (lo, hi) = domain.bounds();
    let mut grid = Grid::new(lo, hi, sf.fine * cfg.accept_factor);
    let mut positions: Vec<Point<D>> = boundary.positions().to_vec();
    let mut spacing: Vec<f64> = boundary.spacings().to_vec();
    for (i, p) in positions.iter().enumerate() {
        grid.insert(i, p);
    }
    let added = advance(&mut positions, &mut spacing, &mut grid, |x| domain.contains(x), |x| sf.eval(x), cfg, &mut rng);
    let mut nodes = boundary;
    for i in added {
        nodes.push_interior(positions[i], spacing[i]);
    }
    nodes
}

/// Boundary followed by interior fill.
pub fn discretize<const D: usize, G: Domain<D> + ?Sized>(
    domain: &G,
    sf: &SpacingFunction<D>,
    seed: u64,
    cfg: &FillConfig,
) -> Result<NodeSet<D>> {
    let boundary = domain.fill_boundary(sf, cfg, seed)?;
    Ok(fill_interior(domain, sf, boundary, seed, cfg))
}

/// Distance from every node to its nearest other node, by brute force.
pub fn nearest_neighbor_distances<const D: usize>(nodes: &NodeSet<D>) -> Vec<f64> {
    let p = nodes.positions();
    (0..p.len())
        .map(|i| {
            (0..p.len())
                .filter(|&j| j != i)
                .map(|j| dist(&p[i], &p[j]))
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}
