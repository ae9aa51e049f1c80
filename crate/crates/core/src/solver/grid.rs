use serde::{Deserialize, Serialize};

use crate::contour::Contour;
use crate::error::{Error, Result};

pub const MIN_NODES: usize = 16;

/// Requested truncation `[-S, S]` with `N` interior nodes and Dirichlet ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub half_width: f64,
    pub nodes: usize,
    /// Enlarge `S` slightly so that the U-contour junctions fall exactly on
    /// nodes. The curvature jumps there, and a node on the jump keeps the
    /// scheme second order.
    pub align_junctions: bool,
}

impl GridSpec {
    pub fn new(half_width: f64, nodes: usize) -> Result<Self> {
        let spec = GridSpec { half_width, nodes, align_junctions: true };
        spec.validate()?;
        Ok(spec)
    }

    pub fn unaligned(self) -> Self {
        GridSpec { align_junctions: false, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return Err(Error::InvalidInput(format!("S must be finite and > 0, got {}", self.half_width)));
        }
        if self.nodes < MIN_NODES {
            return Err(Error::InvalidInput(format!("N must be >= {MIN_NODES}, got {}", self.nodes)));
        }
        Ok(())
    }

    /// Fixes the actual half-width for `contour`.
    pub fn resolve(&self, contour: &Contour) -> Result<ResolvedGrid> {
        self.validate()?;
        if !contour.is_discretizable() {
            return Err(Error::Geometry(
                "the epsilon = 0 contour runs along the branch cut and cannot be discretized".into(),
            ));
        }
        let n = self.nodes;
        let half_width = match contour.junction() {
            Some(j) if self.align_junctions => aligned_half_width(self.half_width, n, j)?,
            _ => self.half_width,
        };
        Ok(ResolvedGrid { half_width, nodes: n, aligned: self.align_junctions && contour.junction().is_some() })
    }
}

/// Smallest `S' >= S` for which `s = +-junction` are nodes.
///
/// Nodes sit at `-S' + k h` with `h = 2S'/(N+1)`, so `junction` is a node iff
/// `S' (2k - N - 1) = junction (N+1)` for an integer `k`.
fn aligned_half_width(s: f64, n: usize, junction: f64) -> Result<f64> {
    let np1 = (n + 1) as f64;
    if junction >= s {
        return Err(Error::Geometry(format!(
            "half-width S = {s} does not reach past the junction at {junction}"
        )));
    }
    let bound = (junction * np1 / s).floor() as i64;
    // m = 2k - N - 1 has the parity of N + 1
    let parity = ((n + 1) % 2) as i64;
    let m = if bound.rem_euclid(2) == parity { bound } else { bound - 1 };
    if m <= 0 {
        return Err(Error::Geometry(format!(
            "grid with N = {n} is too coarse to place the junction at {junction} on a node"
        )));
    }
    Ok(junction * np1 / m as f64)
}

/// A concrete uniform grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResolvedGrid {
    pub half_width: f64,
    pub nodes: usize,
    pub aligned: bool,
}

impl ResolvedGrid {
    pub fn step(&self) -> f64 {
        2.0 * self.half_width / (self.nodes + 1) as f64
    }

    /// Interior nodes, built from the centre outwards so that the set is
    /// exactly symmetric under `s -> -s`.
    pub fn nodes(&self) -> Vec<f64> {
        let h = self.step();
        let n = self.nodes as i64;
        (0..n).map(|i| (2 * i + 1 - n) as f64 * (0.5 * h)).collect()
    }

    /// The `N + 1` cell midpoints between consecutive points of
    /// `-S, s_0, ..., s_{N-1}, S`.
    pub fn midpoints(&self) -> Vec<f64> {
        let h = self.step();
        let n = self.nodes as i64;
        (0..=n).map(|j| (2 * j - n) as f64 * (0.5 * h)).collect()
    }

    /// Same half-width, step halved: `N -> 2N + 1`.
    pub fn refined(&self) -> ResolvedGrid {
        ResolvedGrid { nodes: 2 * self.nodes + 1, ..*self }
    }
}
