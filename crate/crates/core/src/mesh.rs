//! Uniform structured grids and ghost-extended point-value fields.
//!
//! Interior cells are numbered `1..=n` along each axis. Ghost cells occupy
//! `-2..=0` and `n+1..=n+3`. Face `k` (for `k` in `0..=n`) sits at
//! `x_{k+1/2}` and is the right face of cell `k`.

use crate::error::{CellIndex, HwenoError, Result};
use crate::scalar::Real;

/// Ghost layer width on every side.
pub const GHOST: usize = 3;

/// Smallest admissible number of interior cells per axis.
pub const MIN_CELLS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid1D<T> {
    pub x_min: T,
    pub x_max: T,
    pub n_cells: usize,
    pub dx: T,
}

impl<T: Real> UniformGrid1D<T> {
    pub fn new(x_min: T, x_max: T, n_cells: usize) -> Result<Self> {
        if !x_min.is_finite() || !x_max.is_finite() {
            return Err(HwenoError::InvalidGrid("non-finite bounds".into()));
        }
        if x_max <= x_min {
            return Err(HwenoError::InvalidGrid(format!(
                "x_max ({x_max}) must exceed x_min ({x_min})"
            )));
        }
        if n_cells < MIN_CELLS {
            return Err(HwenoError::InvalidGrid(format!(
                "too few cells: {n_cells} < {MIN_CELLS}"
            )));
        }
        let dx = (x_max - x_min) / T::lit(n_cells as f64);
        Ok(Self {
            x_min,
            x_max,
            n_cells,
            dx,
        })
    }

    /// Center of cell `i`; valid for ghost indices too.
    #[inline]
    pub fn center(&self, i: isize) -> T {
        self.x_min + (T::lit(i as f64) - T::lit(0.5)) * self.dx
    }

    /// Position of face `k`, i.e. `x_{k+1/2}`.
    #[inline]
    pub fn face(&self, k: isize) -> T {
        self.x_min + T::lit(k as f64) * self.dx
    }

    pub fn face_count(&self) -> usize {
        self.n_cells + 1
    }

    /// Storage length including both ghost layers.
    pub fn storage_len(&self) -> usize {
        self.n_cells + 2 * GHOST
    }
}

/// Free-function form of [`UniformGrid1D::new`].
pub fn make_grid_1d<T: Real>(x_min: T, x_max: T, n_cells: usize) -> Result<UniformGrid1D<T>> {
    UniformGrid1D::new(x_min, x_max, n_cells)
}

pub fn face_count<T: Real>(grid: &UniformGrid1D<T>) -> usize {
    grid.face_count()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid2D<T> {
    pub x: UniformGrid1D<T>,
    pub y: UniformGrid1D<T>,
}

impl<T: Real> UniformGrid2D<T> {
    pub fn new(x_range: (T, T), nx: usize, y_range: (T, T), ny: usize) -> Result<Self> {
        Ok(Self {
            x: UniformGrid1D::new(x_range.0, x_range.1, nx)?,
            y: UniformGrid1D::new(y_range.0, y_range.1, ny)?,
        })
    }

    pub fn nx(&self) -> usize {
        self.x.n_cells
    }

    pub fn ny(&self) -> usize {
        self.y.n_cells
    }

    #[inline]
    pub fn center(&self, i: isize, j: isize) -> (T, T) {
        (self.x.center(i), self.y.center(j))
    }
}

/// Point values of an `M`-component quantity on a 1D grid, ghosts included.
#[derive(Debug, Clone, PartialEq)]
pub struct Field1D<T, const M: usize> {
    n: usize,
    data: Vec<[T; M]>,
}

impl<T: Copy, const M: usize> Field1D<T, M> {
    pub fn filled(n: usize, value: [T; M]) -> Self {
        Self {
            n,
            data: vec![value; n + 2 * GHOST],
        }
    }

    pub fn n_cells(&self) -> usize {
        self.n
    }

    pub const fn n_components(&self) -> usize {
        M
    }

    #[inline(always)]
    pub fn offset(i: isize) -> usize {
        debug_assert!(i >= -(GHOST as isize) + 1);
        (i + GHOST as isize - 1) as usize
    }

    #[inline(always)]
    pub fn get(&self, i: isize) -> [T; M] {
        self.data[Self::offset(i)]
    }

    #[inline(always)]
    pub fn get_mut(&mut self, i: isize) -> &mut [T; M] {
        &mut self.data[Self::offset(i)]
    }

    #[inline(always)]
    pub fn set(&mut self, i: isize, value: [T; M]) {
        self.data[Self::offset(i)] = value;
    }

    /// All storage, ghosts first and last.
    pub fn as_slice(&self) -> &[[T; M]] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [[T; M]] {
        &mut self.data
    }

    pub fn interior(&self) -> &[[T; M]] {
        &self.data[GHOST..GHOST + self.n]
    }

    pub fn interior_mut(&mut self) -> &mut [[T; M]] {
        let n = self.n;
        &mut self.data[GHOST..GHOST + n]
    }
}

impl<T: Real, const M: usize> Field1D<T, M> {
    pub fn zeros(n: usize) -> Self {
        Self::filled(n, [T::zero(); M])
    }

    /// Samples `f` at interior cell centers; ghosts are zero.
    pub fn from_fn(grid: &UniformGrid1D<T>, mut f: impl FnMut(T) -> [T; M]) -> Self {
        let mut field = Self::zeros(grid.n_cells);
        for i in 1..=grid.n_cells as isize {
            field.set(i, f(grid.center(i)));
        }
        field
    }

    /// Errors on the first non-finite interior value.
    pub fn check_finite(&self, what: &'static str) -> Result<()> {
        for (k, cell) in self.interior().iter().enumerate() {
            if cell.iter().any(|x| !x.is_finite()) {
                return Err(HwenoError::NonFinite {
                    cell: CellIndex::Line(k as isize + 1),
                    at: Default::default(),
                    what,
                });
            }
        }
        Ok(())
    }
}

/// Point values of an `M`-component quantity on a 2D grid, ghosts included.
/// Rows run along x.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D<T, const M: usize> {
    nx: usize,
    ny: usize,
    data: Vec<[T; M]>,
}

impl<T: Copy, const M: usize> Field2D<T, M> {
    pub fn filled(nx: usize, ny: usize, value: [T; M]) -> Self {
        Self {
            nx,
            ny,
            data: vec![value; (nx + 2 * GHOST) * (ny + 2 * GHOST)],
        }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub const fn n_components(&self) -> usize {
        M
    }

    /// Storage length of one row (x direction), ghosts included.
    #[inline(always)]
    pub fn stride(&self) -> usize {
        self.nx + 2 * GHOST
    }

    #[inline(always)]
    pub fn offset(&self, i: isize, j: isize) -> usize {
        let g = GHOST as isize - 1;
        (j + g) as usize * self.stride() + (i + g) as usize
    }

    #[inline(always)]
    pub fn get(&self, i: isize, j: isize) -> [T; M] {
        self.data[self.offset(i, j)]
    }

    #[inline(always)]
    pub fn get_mut(&mut self, i: isize, j: isize) -> &mut [T; M] {
        let o = self.offset(i, j);
        &mut self.data[o]
    }

    #[inline(always)]
    pub fn set(&mut self, i: isize, j: isize, value: [T; M]) {
        let o = self.offset(i, j);
        self.data[o] = value;
    }

    pub fn as_slice(&self) -> &[[T; M]] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [[T; M]] {
        &mut self.data
    }

    /// Storage row `j` including x ghosts.
    pub fn row(&self, j: isize) -> &[[T; M]] {
        let start = self.offset(1 - GHOST as isize, j);
        &self.data[start..start + self.stride()]
    }

    /// Copies storage column `i` (y ghosts included) into `out`.
    pub fn column_into(&self, i: isize, out: &mut Vec<[T; M]>) {
        out.clear();
        let s = self.stride();
        let mut o = self.offset(i, 1 - GHOST as isize);
        for _ in 0..self.ny + 2 * GHOST {
            out.push(self.data[o]);
            o += s;
        }
    }
}

impl<T: Real, const M: usize> Field2D<T, M> {
    pub fn zeros(nx: usize, ny: usize) -> Self {
        Self::filled(nx, ny, [T::zero(); M])
    }

    pub fn from_fn(grid: &UniformGrid2D<T>, mut f: impl FnMut(T, T) -> [T; M]) -> Self {
        let mut field = Self::zeros(grid.nx(), grid.ny());
        for j in 1..=grid.ny() as isize {
            for i in 1..=grid.nx() as isize {
                let (x, y) = grid.center(i, j);
                field.set(i, j, f(x, y));
            }
        }
        field
    }

    pub fn check_finite(&self, what: &'static str) -> Result<()> {
        for j in 1..=self.ny as isize {
            for i in 1..=self.nx as isize {
                if self.get(i, j).iter().any(|x| !x.is_finite()) {
                    return Err(HwenoError::NonFinite {
                        cell: CellIndex::Plane(i, j),
                        at: Default::default(),
                        what,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Solution values `u` and their x-derivatives `v` on a 1D grid.
#[derive(Debug, Clone, PartialEq)]
pub struct State1D<T, const M: usize> {
    pub u: Field1D<T, M>,
    pub v: Field1D<T, M>,
}

impl<T: Real, const M: usize> State1D<T, M> {
    pub fn zeros(n: usize) -> Self {
        Self {
            u: Field1D::zeros(n),
            v: Field1D::zeros(n),
        }
    }

    /// Samples values and derivatives at interior cell centers.
    pub fn from_fn(grid: &UniformGrid1D<T>, mut f: impl FnMut(T) -> ([T; M], [T; M])) -> Self {
        let mut s = Self::zeros(grid.n_cells);
        for i in 1..=grid.n_cells as isize {
            let (u, v) = f(grid.center(i));
            s.u.set(i, u);
            s.v.set(i, v);
        }
        s
    }

    pub fn n_cells(&self) -> usize {
        self.u.n_cells()
    }

    pub fn check_finite(&self) -> Result<()> {
        self.u.check_finite("solution value")?;
        self.v.check_finite("derivative value")
    }
}

/// Solution values `u`, x-derivatives `v` and y-derivatives `w` on a 2D grid.
#[derive(Debug, Clone, PartialEq)]
pub struct State2D<T, const M: usize> {
    pub u: Field2D<T, M>,
    pub v: Field2D<T, M>,
    pub w: Field2D<T, M>,
}

impl<T: Real, const M: usize> State2D<T, M> {
    pub fn zeros(nx: usize, ny: usize) -> Self {
        Self {
            u: Field2D::zeros(nx, ny),
            v: Field2D::zeros(nx, ny),
            w: Field2D::zeros(nx, ny),
        }
    }

    /// Samples `(u, u_x, u_y)` at interior cell centers.
    pub fn from_fn(
        grid: &UniformGrid2D<T>,
        mut f: impl FnMut(T, T) -> ([T; M], [T; M], [T; M]),
    ) -> Self {
        let mut s = Self::zeros(grid.nx(), grid.ny());
        for j in 1..=grid.ny() as isize {
            for i in 1..=grid.nx() as isize {
                let (x, y) = grid.center(i, j);
                let (u, v, w) = f(x, y);
                s.u.set(i, j, u);
                s.v.set(i, j, v);
                s.w.set(i, j, w);
            }
        }
        s
    }

    pub fn nx(&self) -> usize {
        self.u.nx()
    }

    pub fn ny(&self) -> usize {
        self.u.ny()
    }

    pub fn check_finite(&self) -> Result<()> {
        self.u.check_finite("solution value")?;
        self.v.check_finite("x-derivative value")?;
        self.w.check_finite("y-derivative value")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rejects_too_few_cells() {
        assert!(matches!(
            make_grid_1d(0.0, 2.0, 4),
            Err(HwenoError::InvalidGrid(_))
        ));
        assert!(make_grid_1d(0.0, f64::INFINITY, 10).is_err());
        assert!(make_grid_1d(1.0, 0.0, 10).is_err());
    }

    #[test]
    fn cell_and_face_positions() {
        let g = make_grid_1d(-PI, PI, 40).unwrap();
        assert_eq!(g.dx, 2.0 * PI / 40.0);
        assert!((g.center(1) - (-PI + PI / 40.0)).abs() < 1e-15);
        let g = make_grid_1d(0.0f64, 2.0, 20).unwrap();
        assert_eq!(g.face(10), 1.0);
        for k in -2..=22 {
            assert!(((g.face(k) - g.face(k - 1)) - g.dx).abs() <= 4.0 * f64::EPSILON);
        }
    }

    #[test]
    fn face_counts() {
        for (n, expect) in [(40, 41), (5, 6), (1600, 1601)] {
            let g = make_grid_1d(0.0, 1.0, n).unwrap();
            assert_eq!(face_count(&g), expect);
        }
    }

    #[test]
    fn ghost_indexing_covers_storage() {
        let mut f = Field1D::<f64, 2>::zeros(5);
        for i in -2..=8 {
            f.set(i, [i as f64, 0.0]);
        }
        assert_eq!(f.as_slice().len(), 11);
        assert_eq!(f.interior()[0][0], 1.0);
        assert_eq!(f.interior()[4][0], 5.0);

        let mut g = Field2D::<f64, 1>::zeros(5, 6);
        g.set(-2, -2, [1.0]);
        g.set(8, 9, [2.0]);
        assert_eq!(g.as_slice()[0], [1.0]);
        assert_eq!(*g.as_slice().last().unwrap(), [2.0]);
        let mut col = Vec::new();
        g.column_into(8, &mut col);
        assert_eq!(col.len(), 12);
        assert_eq!(col[11], [2.0]);
        assert_eq!(g.row(9).len(), 11);
    }
}
