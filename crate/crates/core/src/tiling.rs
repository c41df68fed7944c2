//! Torus cover maps and tiling verdicts.
//!
//! A periodic set with period `P` tiles `R^d` exactly when its cubes cover
//! the torus `R^d / P Z^d` with multiplicity one everywhere.  Because all
//! offsets live on the grid `(1/q) Z^d` for the common denominator `q`, the
//! cover multiplicity is constant on each half-open grid cell of side
//! `1/q`, so the torus check is a finite exact count.

use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::Rational;
use crate::set::{TranslateSet, Window};
use alloc::vec::Vec;
use num_traits::ToPrimitive;

/// Default limit on torus grid cells; grids above it are refused rather
/// than silently thrashing memory.
pub const DEFAULT_CELL_BUDGET: u64 = 100_000_000;

/// Exact cover multiplicities of a periodic cube system on its torus,
/// one `u32` per grid cell of side `1/q`, in row-major (lexicographic)
/// cell order.
#[derive(Clone, Debug)]
pub struct TorusGrid {
    dim: usize,
    period: Vec<u64>,
    denom: u64,
    cells_per_axis: Vec<u64>,
    multiplicity: Vec<u32>,
    /// Scaled integer offsets, `offset * q`, one per set offset.
    scaled: Vec<Vec<u64>>,
}

impl TorusGrid {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    /// Common denominator `q`: each cube spans `q` cells per axis.
    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn cells_per_axis(&self) -> &[u64] {
        &self.cells_per_axis
    }

    pub fn cell_count(&self) -> usize {
        self.multiplicity.len()
    }

    pub fn multiplicity(&self) -> &[u32] {
        &self.multiplicity
    }

    /// Total mass: must equal `|offsets| * q^d` since each cube covers
    /// exactly `q^d` cells.
    pub fn mass(&self) -> u128 {
        self.multiplicity.iter().map(|&m| u128::from(m)).sum()
    }

    /// Multi-index of a flat cell index.
    fn cell_index(&self, mut flat: usize) -> Vec<u64> {
        let mut idx = alloc::vec![0u64; self.dim];
        for j in (0..self.dim).rev() {
            let m = self.cells_per_axis[j] as usize;
            idx[j] = (flat % m) as u64;
            flat /= m;
        }
        idx
    }

    /// Center of a grid cell, an exact rational point in the period box.
    pub fn cell_center(&self, flat: usize) -> Point {
        let idx = self.cell_index(flat);
        Point::new(
            idx.iter()
                .map(|&i| Rational::new(2 * i as i64 + 1, 2 * self.denom as i64))
                .collect(),
        )
    }

    /// Indices of the offsets whose cube covers the cell, in offset order.
    pub fn covering_offsets(&self, flat: usize) -> Vec<usize> {
        let idx = self.cell_index(flat);
        let q = self.denom;
        self.scaled
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                (0..self.dim).all(|j| {
                    let m = self.cells_per_axis[j];
                    (idx[j] + m - c[j]) % m < q
                })
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// The actual translate of offset `i` whose cube covers the cell: the
    /// canonical offset itself, or its copy from the neighboring period box
    /// when the cube wraps around the torus at this cell.
    pub fn unwrapped_translate(&self, set: &TranslateSet, i: usize, flat: usize) -> Point {
        let idx = self.cell_index(flat);
        let o = &set.offsets()[i];
        Point::new(
            (0..self.dim)
                .map(|j| {
                    if idx[j] >= self.scaled[i][j] {
                        o.coord(j).clone()
                    } else {
                        o.coord(j) - &Rational::from_int(self.period[j] as i64)
                    }
                })
                .collect(),
        )
    }
}

/// Builds the exact cover multiplicity map with the default cell budget.
pub fn torus_cover_map(set: &TranslateSet) -> Result<TorusGrid> {
    torus_cover_map_with_budget(set, DEFAULT_CELL_BUDGET)
}

/// Builds the exact cover multiplicity map, refusing grids above `budget`
/// cells.
pub fn torus_cover_map_with_budget(set: &TranslateSet, budget: u64) -> Result<TorusGrid> {
    let period = set.period().ok_or(Error::NotPeriodic)?;
    let dim = set.dim();
    let q = set
        .common_denominator()
        .to_u64()
        .ok_or(Error::GridTooLarge {
            cells: u128::MAX,
            budget: u128::from(budget),
        })?;
    let cells_per_axis: Vec<u64> = period.iter().map(|&p| p.saturating_mul(q)).collect();
    let mut cells: u128 = 1;
    for &m in &cells_per_axis {
        cells = cells.saturating_mul(u128::from(m));
    }
    // The fill below touches q^d cells per offset.
    let mut fill: u128 = set.offsets().len() as u128;
    for _ in 0..dim {
        fill = fill.saturating_mul(u128::from(q));
    }
    if cells > u128::from(budget) || fill > u128::from(budget) {
        return Err(Error::GridTooLarge {
            cells: cells.max(fill),
            budget: u128::from(budget),
        });
    }
    let total = cells as usize;
    let scaled: Vec<Vec<u64>> = set
        .offsets()
        .iter()
        .map(|o| {
            o.coords()
                .iter()
                .map(|c| {
                    let s = c * &Rational::from_int(q as i64);
                    s.as_integer()
                        .expect("offset times common denominator is integral")
                        .to_u64()
                        .expect("canonical offset is in the period box")
                })
                .collect()
        })
        .collect();
    let mut multiplicity = alloc::vec![0u32; total];
    let strides: Vec<usize> = {
        let mut s = alloc::vec![1usize; dim];
        for j in (0..dim.saturating_sub(1)).rev() {
            s[j] = s[j + 1] * cells_per_axis[j + 1] as usize;
        }
        s
    };
    for c in &scaled {
        // Odometer over the q^d cells of one cube, wrapped per axis.
        let mut r = alloc::vec![0u64; dim];
        loop {
            let mut flat = 0usize;
            for j in 0..dim {
                let idx = (c[j] + r[j]) % cells_per_axis[j];
                flat += idx as usize * strides[j];
            }
            multiplicity[flat] = multiplicity[flat].saturating_add(1);
            let mut axis = dim;
            loop {
                if axis == 0 {
                    break;
                }
                axis -= 1;
                r[axis] += 1;
                if r[axis] < q {
                    break;
                }
                r[axis] = 0;
            }
            if r.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    Ok(TorusGrid {
        dim,
        period: period.to_vec(),
        denom: q,
        cells_per_axis,
        multiplicity,
        scaled,
    })
}

/// Outcome of the exact torus tiling check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TilingVerdict {
    /// Every torus cell is covered exactly once.
    Tiles,
    /// `cell` (a cell center) is covered at least twice; `first` and
    /// `second` are two distinct translates covering it, as unwrapped
    /// members of the represented set.
    Overlap {
        cell: Point,
        first: Point,
        second: Point,
    },
    /// `cell` (a cell center) is covered by no translate.
    Hole { cell: Point },
}

/// Decides whether a periodic set tiles, with an exact cell witness when
/// it does not.
///
/// When the density `|offsets| / prod(P_j)` differs from one, the verdict
/// kind is forced by counting, and the witness is the first cell of that
/// kind; at density one the first cell with multiplicity other than one
/// decides.  Cells are scanned in lexicographic order.
pub fn check_tiling(set: &TranslateSet) -> Result<TilingVerdict> {
    check_tiling_with_budget(set, DEFAULT_CELL_BUDGET)
}

pub fn check_tiling_with_budget(set: &TranslateSet, budget: u64) -> Result<TilingVerdict> {
    let grid = torus_cover_map_with_budget(set, budget)?;
    let mut volume: u128 = 1;
    for &p in grid.period() {
        volume = volume.saturating_mul(u128::from(p));
    }
    let n = set.offsets().len() as u128;
    let want_hole = n < volume;
    let want_overlap = n > volume;
    for (flat, &m) in grid.multiplicity().iter().enumerate() {
        let bad_kind = if want_hole {
            m == 0
        } else if want_overlap {
            m >= 2
        } else {
            m != 1
        };
        if !bad_kind {
            continue;
        }
        let cell = grid.cell_center(flat);
        if m == 0 {
            return Ok(TilingVerdict::Hole { cell });
        }
        let covering = grid.covering_offsets(flat);
        debug_assert!(covering.len() >= 2);
        return Ok(TilingVerdict::Overlap {
            first: grid.unwrapped_translate(set, covering[0], flat),
            second: grid.unwrapped_translate(set, covering[1], flat),
            cell,
        });
    }
    Ok(TilingVerdict::Tiles)
}

/// Exact membership of `p` in the union of cubes of the set.
pub fn covers_point(set: &TranslateSet, p: &Point) -> Result<bool> {
    if p.dim() != set.dim() {
        return Err(Error::DimensionMismatch {
            expected: set.dim(),
            found: p.dim(),
        });
    }
    let one = Rational::one();
    match set.period() {
        None => Ok(set.offsets().iter().any(|t| {
            t.coords()
                .iter()
                .zip(p.coords())
                .all(|(tj, pj)| tj <= pj && pj < &(tj + &one))
        })),
        Some(period) => Ok(set.offsets().iter().any(|t| {
            t.coords().iter().zip(p.coords()).enumerate().all(|(j, (tj, pj))| {
                // p is in some periodic copy of the cube at t exactly when
                // the residue of p_j - t_j mod P_j lands in [0, 1).
                (pj - tj).mod_int(period[j]) < one
            })
        })),
    }
}

/// First uncovered spot of a finite cube system inside a window.
///
/// The cube faces of the set induce a grid of axis-aligned cells on which
/// coverage is constant; the cells are scanned in lexicographic order and
/// the first uncovered cell's center is returned.  `None` means the window
/// is fully covered.
pub fn hole_finder(set: &TranslateSet, w: &Window) -> Result<Option<Point>> {
    if set.is_periodic() {
        return Err(Error::NotFinite);
    }
    if w.dim() != set.dim() {
        return Err(Error::DimensionMismatch {
            expected: set.dim(),
            found: w.dim(),
        });
    }
    let dim = set.dim();
    let one = Rational::one();
    let half = Rational::new(1, 2);
    let mut breaks: Vec<Vec<Rational>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut b = alloc::vec![w.lo(j).clone(), w.hi(j).clone()];
        for t in set.offsets() {
            for v in [t.coord(j).clone(), t.coord(j) + &one] {
                if &v > w.lo(j) && &v < w.hi(j) {
                    b.push(v);
                }
            }
        }
        b.sort();
        b.dedup();
        breaks.push(b);
    }
    let mut idx = alloc::vec![0usize; dim];
    loop {
        let center = Point::new(
            (0..dim)
                .map(|j| &(&breaks[j][idx[j]] + &breaks[j][idx[j] + 1]) * &half)
                .collect(),
        );
        if !covers_point(set, &center)? {
            return Ok(Some(center));
        }
        let mut axis = dim;
        loop {
            if axis == 0 {
                return Ok(None);
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] + 1 < breaks[axis].len() {
                break;
            }
            idx[axis] = 0;
        }
    }
}
