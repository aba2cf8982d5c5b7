use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::geometry::Point;

/// Scattered discretization nodes with boundary classification.
///
/// Interior nodes carry a zero normal. The set is immutable once built by the
/// fill routines.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSet<const D: usize> {
    positions: Vec<Point<D>>,
    boundary: Vec<bool>,
    normals: Vec<Point<D>>,
    spacing: Vec<f64>,
}

impl<const D: usize> Default for NodeSet<D> {
    fn default() -> Self {
        Self::new()
    }
}

impl<const D: usize> NodeSet<D> {
    pub fn new() -> Self {
        Self { positions: Vec::new(), boundary: Vec::new(), normals: Vec::new(), spacing: Vec::new() }
    }

    pub fn from_parts(
        positions: Vec<Point<D>>,
        boundary: Vec<bool>,
        normals: Vec<Point<D>>,
        spacing: Vec<f64>,
    ) -> Result<Self> {
        let n = positions.len();
        for len in [boundary.len(), normals.len(), spacing.len()] {
            if len != n {
                return Err(Error::LengthMismatch { expected: n, found: len });
            }
        }
        Ok(Self { positions, boundary, normals, spacing })
    }

    pub fn push_boundary(&mut self, x: Point<D>, normal: Point<D>, h: f64) -> usize {
        self.push(x, true, normal, h)
    }

    pub fn push_interior(&mut self, x: Point<D>, h: f64) -> usize {
        self.push(x, false, [0.0; D], h)
    }

    fn push(&mut self, x: Point<D>, boundary: bool, normal: Point<D>, h: f64) -> usize {
        self.positions.push(x);
        self.boundary.push(boundary);
        self.normals.push(normal);
        self.spacing.push(h);
        self.positions.len() - 1
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Point<D>] {
        &self.positions
    }

    pub fn position(&self, i: usize) -> &Point<D> {
        &self.positions[i]
    }

    pub fn is_boundary(&self, i: usize) -> bool {
        self.boundary[i]
    }

    pub fn boundary_mask(&self) -> &[bool] {
        &self.boundary
    }

    pub fn normal(&self, i: usize) -> &Point<D> {
        &self.normals[i]
    }

    pub fn spacing(&self, i: usize) -> f64 {
        self.spacing[i]
    }

    pub fn spacings(&self) -> &[f64] {
        &self.spacing
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary.iter().filter(|&&b| b).count()
    }

    pub fn interior_count(&self) -> usize {
        self.len() - self.boundary_count()
    }

    pub fn interior_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| !self.boundary[i])
    }

    pub fn boundary_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.boundary[i])
    }

    /// Reorders nodes so that node `order[k]` becomes node `k`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: order.len() });
        }
        Ok(Self {
            positions: order.iter().map(|&i| self.positions[i]).collect(),
            boundary: order.iter().map(|&i| self.boundary[i]).collect(),
            normals: order.iter().map(|&i| self.normals[i]).collect(),
            spacing: order.iter().map(|&i| self.spacing[i]).collect(),
        })
    }

    fn header() -> Vec<String> {
        const AXES: [&str; 3] = ["x", "y", "z"];
        let mut cols: Vec<String> = (0..D).map(|a| AXES.get(a).map_or(format!("x{a}"), |s| s.to_string())).collect();
        cols.push("boundary".into());
        cols.extend((0..D).map(|a| format!("n{}", AXES.get(a).map_or(format!("x{a}"), |s| s.to_string()))));
        cols.push("h".into());
        cols
    }

    /// Writes one row per node: `x,y[,z],boundary,nx,ny[,nz],h`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(Self::header())?;
        for i in 0..self.len() {
            let mut row: Vec<String> = self.positions[i].iter().map(|v| v.to_string()).collect();
            row.push(if self.boundary[i] { "1" } else { "0" }.into());
            row.extend(self.normals[i].iter().map(|v| v.to_string()));
            row.push(self.spacing[i].to_string());
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(reader);
        let expected = Self::header();
        let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        if header != expected {
            return Err(Error::Parse(format!("node CSV header {header:?}, expected {expected:?}")));
        }
        let mut nodes = Self::new();
        for record in r.records() {
            let record = record?;
            let vals: Vec<f64> = record
                .iter()
                .map(|s| s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
                .collect::<Result<_>>()?;
            let x: Point<D> = std::array::from_fn(|a| vals[a]);
            let normal: Point<D> = std::array::from_fn(|a| vals[D + 1 + a]);
            nodes.push(x, vals[D] != 0.0, normal, vals[2 * D + 1]);
        }
        Ok(nodes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let mut nodes = NodeSet::<2>::new();
        nodes.push_boundary([1.0, 0.0], [1.0, 0.0], 0.1);
        nodes.push_interior([0.1 + 0.2, -1.0 / 3.0], 0.05);
        let mut buf = Vec::new();
        nodes.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("x,y,boundary,nx,ny,h\n"));
        let back = NodeSet::<2>::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, nodes);
    }

    #[test]
    fn header_3d() {
        assert_eq!(NodeSet::<3>::header().join(","), "x,y,z,boundary,nx,ny,nz,h");
    }

    #[test]
    fn from_parts_checks_lengths() {
        let err = NodeSet::<2>::from_parts(vec![[0.0; 2]], vec![], vec![[0.0; 2]], vec![1.0]);
        assert!(matches!(err, Err(Error::LengthMismatch { .. })));
    }
}
