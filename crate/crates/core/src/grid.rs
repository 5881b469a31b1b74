//! Uniform node sets carrying sampled fields.

use std::collections::BTreeMap;

use crate::error::{check_len, GwigError, Result};

pub const MIN_RADIAL_NODES: usize = 8;

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(GwigError::Domain {
            name,
            value,
            domain: "(0, inf)",
        })
    }
}

/// Radial nodes `r̆_i = r_min + i h`, `i = 0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    n: usize,
    h: f64,
    r_min: f64,
    fields: BTreeMap<String, Vec<f64>>,
}

impl RadialGrid {
    pub fn new(n: usize, h: f64, r_min: f64) -> Result<Self> {
        if n < MIN_RADIAL_NODES {
            return Err(GwigError::GridTooSmall {
                nodes: n,
                min: MIN_RADIAL_NODES,
            });
        }
        positive("h", h)?;
        if !(r_min.is_finite() && r_min >= 0.0) {
            return Err(GwigError::Domain {
                name: "r_min",
                value: r_min,
                domain: "[0, inf)",
            });
        }
        Ok(Self {
            n,
            h,
            r_min,
            fields: BTreeMap::new(),
        })
    }

    /// `intervals + 1` nodes covering `[r_min, r_max]`.
    pub fn spanning(r_min: f64, r_max: f64, intervals: usize) -> Result<Self> {
        if !(r_max > r_min) {
            return Err(GwigError::Invalid(format!(
                "r_max = {r_max} must exceed r_min = {r_min}"
            )));
        }
        Self::new(intervals + 1, (r_max - r_min) / intervals as f64, r_min)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r(self.n - 1)
    }

    pub fn r(&self, i: usize) -> f64 {
        self.r_min + i as f64 * self.h
    }

    /// True when node 0 is the origin and takes the regularity stencil.
    pub fn includes_origin(&self) -> bool {
        self.r_min == 0.0
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.r(i)).collect()
    }

    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..self.n).map(|i| f(self.r(i))).collect()
    }

    pub fn try_sample(&self, f: impl Fn(f64) -> Result<f64>) -> Result<Vec<f64>> {
        (0..self.n).map(|i| f(self.r(i))).collect()
    }

    pub fn check_field(&self, context: &'static str, u: &[f64]) -> Result<()> {
        check_len(context, self.n, u.len())
    }

    pub fn set_field(&mut self, name: &str, values: Vec<f64>) -> Result<()> {
        self.check_field("RadialGrid::set_field", &values)?;
        self.fields.insert(name.to_owned(), values);
        Ok(())
    }

    pub fn field(&self, name: &str) -> Option<&[f64]> {
        self.fields.get(name).map(Vec::as_slice)
    }
}

/// Row-major `nt × nx` samples, row `k` at time `t_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2 {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Field2 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn same_shape(&self, other: &Field2) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }

    pub fn map2(&self, other: &Field2, f: impl Fn(f64, f64) -> f64) -> Field2 {
        debug_assert!(self.same_shape(other));
        Field2 {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Max-norm over nodes at least `margin` away from every edge.
    pub fn interior_max_abs(&self, margin: usize) -> f64 {
        let mut m: f64 = 0.0;
        for i in margin..self.rows.saturating_sub(margin) {
            for j in margin..self.cols.saturating_sub(margin) {
                m = m.max(self.get(i, j).abs());
            }
        }
        m
    }
}

/// Uniform `(t, x)` lattice for the non-stationary appendix operators.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacetimeGrid1p1 {
    nt: usize,
    nx: usize,
    dt: f64,
    dx: f64,
    t0: f64,
    x0: f64,
    fields: BTreeMap<String, Field2>,
}

impl SpacetimeGrid1p1 {
    /// Courant bound for unit wave speed at λ = 0.
    pub const CFL_MAX: f64 = 1.0;

    pub fn new(nt: usize, nx: usize, dt: f64, dx: f64, t0: f64, x0: f64) -> Result<Self> {
        if nt < 3 || nx < 3 {
            return Err(GwigError::GridTooSmall {
                nodes: nt.min(nx),
                min: 3,
            });
        }
        positive("dt", dt)?;
        positive("dx", dx)?;
        if dt / dx > Self::CFL_MAX {
            return Err(GwigError::Invalid(format!(
                "dt/dx = {} exceeds the CFL bound {}",
                dt / dx,
                Self::CFL_MAX
            )));
        }
        Ok(Self {
            nt,
            nx,
            dt,
            dx,
            t0,
            x0,
            fields: BTreeMap::new(),
        })
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn t(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.dx
    }

    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> Field2 {
        Field2::from_fn(self.nt, self.nx, |k, j| f(self.t(k), self.x(j)))
    }

    pub fn check_field(&self, context: &'static str, u: &Field2) -> Result<()> {
        check_len(context, self.nt, u.rows())?;
        check_len(context, self.nx, u.cols())
    }

    pub fn set_field(&mut self, name: &str, values: Field2) -> Result<()> {
        self.check_field("SpacetimeGrid1p1::set_field", &values)?;
        self.fields.insert(name.to_owned(), values);
        Ok(())
    }

    pub fn field(&self, name: &str) -> Option<&Field2> {
        self.fields.get(name)
    }
}

/// Uniform square-cell `(x, y)` lattice for stationary planar fields.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarGrid {
    nx: usize,
    ny: usize,
    h: f64,
    x0: f64,
    y0: f64,
}

impl PlanarGrid {
    pub fn new(nx: usize, ny: usize, h: f64, x0: f64, y0: f64) -> Result<Self> {
        if nx < 3 || ny < 3 {
            return Err(GwigError::GridTooSmall {
                nodes: nx.min(ny),
                min: 3,
            });
        }
        positive("h", h)?;
        Ok(Self { nx, ny, h, x0, y0 })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.h
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y0 + j as f64 * self.h
    }

    /// Rows index `y`, columns index `x`.
    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> Field2 {
        Field2::from_fn(self.ny, self.nx, |j, i| f(self.x(i), self.y(j)))
    }

    pub fn check_field(&self, context: &'static str, u: &Field2) -> Result<()> {
        check_len(context, self.ny, u.rows())?;
        check_len(context, self.nx, u.cols())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_grid_rejects_small_or_bad() {
        assert!(matches!(
            RadialGrid::new(7, 0.1, 0.0),
            Err(GwigError::GridTooSmall { nodes: 7, .. })
        ));
        assert!(RadialGrid::new(10, 0.0, 0.0).is_err());
        assert!(RadialGrid::new(10, 0.1, -1.0).is_err());
    }

    #[test]
    fn radial_grid_spans_endpoints() {
        let g = RadialGrid::spanning(0.0, 20.0, 4096).unwrap();
        assert_eq!(g.len(), 4097);
        assert_eq!(g.r(0), 0.0);
        assert_eq!(g.r_max(), 20.0);
        assert!(g.includes_origin());
    }

    #[test]
    fn spacetime_grid_enforces_cfl() {
        assert!(SpacetimeGrid1p1::new(10, 10, 0.2, 0.1, 0.0, 0.0).is_err());
        assert!(SpacetimeGrid1p1::new(10, 10, 0.1, 0.1, 0.0, 0.0).is_ok());
    }

    #[test]
    fn named_fields_are_shape_checked() {
        let mut g = RadialGrid::new(10, 0.1, 0.0).unwrap();
        assert!(g.set_field("u", vec![0.0; 9]).is_err());
        g.set_field("u", vec![1.0; 10]).unwrap();
        assert_eq!(g.field("u").unwrap().len(), 10);
    }
}
