//! Exhaustive enumeration of torus cube tilings by exact cover.
//!
//! Columns are the cells of the torus grid, rows are the candidate
//! translates on the `(1/q)`-grid, and a row covers the `q^d` cells its
//! cube occupies.  Solutions of the exact cover instance are exactly the
//! tilings of the torus by candidate cubes.  The search is dancing links
//! with a deterministic column choice (fewest candidates, ties by lowest
//! cell index), streamed lazily so callers can stop early.

use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::Rational;
use crate::set::TranslateSet;
use crate::tiling::DEFAULT_CELL_BUDGET;
use alloc::vec::Vec;

/// Doubly linked sparse matrix in array form.  Node 0..cols are column
/// headers, node `cols` is the root of the header ring.
struct Dlx {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    col_of: Vec<usize>,
    row_of: Vec<usize>,
    count: Vec<usize>,
    root: usize,
}

impl Dlx {
    fn new(cols: usize) -> Self {
        // Header ring: root -> 0 -> 1 -> ... -> cols-1 -> root.
        let root = cols;
        let n = cols + 1;
        Dlx {
            left: (0..n).map(|i| if i == 0 { root } else { i - 1 }).collect(),
            right: (0..n).map(|i| (i + 1) % n).collect(),
            up: (0..n).collect(),
            down: (0..n).collect(),
            col_of: (0..n).collect(),
            row_of: alloc::vec![usize::MAX; n],
            count: alloc::vec![0; cols],
            root,
        }
    }

    /// Appends a row covering `cols` (strictly ascending); nodes are linked
    /// at the bottom of each column so row order is insertion order.
    fn add_row(&mut self, row_id: usize, cols: &[usize]) {
        debug_assert!(cols.windows(2).all(|w| w[0] < w[1]));
        let base = self.left.len();
        for (i, &c) in cols.iter().enumerate() {
            let node = base + i;
            let prev_in_row = if i == 0 { node } else { node - 1 };
            self.left.push(prev_in_row);
            self.right.push(base); // fixed up below
            let above = self.up[c];
            self.up.push(above);
            self.down.push(c);
            self.down[above] = node;
            self.up[c] = node;
            self.col_of.push(c);
            self.row_of.push(row_id);
            self.count[c] += 1;
        }
        let last = self.left.len() - 1;
        for i in 0..cols.len() {
            let node = base + i;
            self.right[node] = if node == last { base } else { node + 1 };
        }
        self.left[base] = last;
    }

    /// Column with the fewest candidates, ties broken by lowest index;
    /// `None` when no columns remain (a solution).
    fn choose_col(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut c = self.right[self.root];
        while c != self.root {
            if best.map_or(true, |b| self.count[c] < self.count[b]) {
                best = Some(c);
            }
            c = self.right[c];
        }
        best
    }

    fn cover(&mut self, c: usize) {
        self.right[self.left[c]] = self.right[c];
        self.left[self.right[c]] = self.left[c];
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                self.down[self.up[j]] = self.down[j];
                self.up[self.down[j]] = self.up[j];
                self.count[self.col_of[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.count[self.col_of[j]] += 1;
                self.down[self.up[j]] = j;
                self.up[self.down[j]] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        self.right[self.left[c]] = c;
        self.left[self.right[c]] = c;
    }

    /// Covers the columns of every other node in `node`'s row.
    fn cover_row_siblings(&mut self, node: usize) {
        let mut j = self.right[node];
        while j != node {
            self.cover(self.col_of[j]);
            j = self.right[j];
        }
    }

    /// Reverse of `cover_row_siblings`.
    fn uncover_row_siblings(&mut self, node: usize) {
        let mut j = self.left[node];
        while j != node {
            self.uncover(self.col_of[j]);
            j = self.left[j];
        }
    }
}

struct Frame {
    col: usize,
    node: usize,
}

/// Lazy stream of torus tilings, in the deterministic search order.
pub struct TilingEnumeration {
    dlx: Dlx,
    stack: Vec<Frame>,
    descend: bool,
    done: bool,
    dim: usize,
    period: Vec<u64>,
    denom: u64,
    cells_per_axis: Vec<u64>,
    /// Row id -> scaled integer coordinates of the candidate translate.
    rows: Vec<Vec<u64>>,
    dedup: bool,
}

/// Streams every tiling of the torus `R^d / period` by cubes positioned on
/// the grid `(1/denom) Z^d`, with the default cell budget.
///
/// With `dedup` set, only solutions that are lexicographically minimal
/// among all of their torus translates are emitted, one per translation
/// class.
pub fn enumerate_tilings(
    dim: usize,
    period: &[u64],
    denom: u64,
    dedup: bool,
) -> Result<TilingEnumeration> {
    enumerate_tilings_with_budget(dim, period, denom, dedup, DEFAULT_CELL_BUDGET)
}

pub fn enumerate_tilings_with_budget(
    dim: usize,
    period: &[u64],
    denom: u64,
    dedup: bool,
    budget: u64,
) -> Result<TilingEnumeration> {
    if dim == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    if period.len() != dim || period.contains(&0) || denom == 0 {
        return Err(Error::InvalidPeriod);
    }
    let cells_per_axis: Vec<u64> = period.iter().map(|&p| p.saturating_mul(denom)).collect();
    let mut cells: u128 = 1;
    for &m in &cells_per_axis {
        cells = cells.saturating_mul(u128::from(m));
    }
    let mut nodes = cells;
    for _ in 0..dim {
        nodes = nodes.saturating_mul(u128::from(denom));
    }
    if cells > u128::from(budget) || nodes > u128::from(budget) {
        return Err(Error::GridTooLarge {
            cells: cells.max(nodes),
            budget: u128::from(budget),
        });
    }
    let total = cells as usize;
    let strides: Vec<usize> = {
        let mut s = alloc::vec![1usize; dim];
        for j in (0..dim - 1).rev() {
            s[j] = s[j + 1] * cells_per_axis[j + 1] as usize;
        }
        s
    };
    let mut dlx = Dlx::new(total);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rem = flat;
        let mut corner = alloc::vec![0u64; dim];
        for j in (0..dim).rev() {
            let m = cells_per_axis[j] as usize;
            corner[j] = (rem % m) as u64;
            rem /= m;
        }
        let mut covered: Vec<usize> = Vec::with_capacity(nodes as usize / total);
        let mut r = alloc::vec![0u64; dim];
        loop {
            let mut cell = 0usize;
            for j in 0..dim {
                let idx = (corner[j] + r[j]) % cells_per_axis[j];
                cell += idx as usize * strides[j];
            }
            covered.push(cell);
            let mut axis = dim;
            loop {
                if axis == 0 {
                    break;
                }
                axis -= 1;
                r[axis] += 1;
                if r[axis] < denom {
                    break;
                }
                r[axis] = 0;
            }
            if r.iter().all(|&x| x == 0) {
                break;
            }
        }
        covered.sort_unstable();
        covered.dedup();
        let row_id = rows.len();
        dlx.add_row(row_id, &covered);
        rows.push(corner);
    }
    Ok(TilingEnumeration {
        dlx,
        stack: Vec::new(),
        descend: true,
        done: false,
        dim,
        period: period.to_vec(),
        denom,
        cells_per_axis,
        rows,
        dedup,
    })
}

impl TilingEnumeration {
    /// Scaled coordinates of the current solution's translates, sorted.
    fn current_solution(&self) -> Vec<Vec<u64>> {
        let mut sol: Vec<Vec<u64>> = self
            .stack
            .iter()
            .map(|f| self.rows[self.dlx.row_of[f.node]].clone())
            .collect();
        sol.sort_unstable();
        sol
    }

    /// True when `sol` is lexicographically minimal among its translates
    /// under the full torus translation group on the `(1/q)`-grid.
    fn is_canonical(&self, sol: &[Vec<u64>]) -> bool {
        let mut shift = alloc::vec![0u64; self.dim];
        loop {
            if shift.iter().any(|&s| s != 0) {
                let mut moved: Vec<Vec<u64>> = sol
                    .iter()
                    .map(|t| {
                        t.iter()
                            .enumerate()
                            .map(|(j, &c)| (c + shift[j]) % self.cells_per_axis[j])
                            .collect()
                    })
                    .collect();
                moved.sort_unstable();
                if moved.as_slice() < sol {
                    return false;
                }
            }
            let mut axis = self.dim;
            loop {
                if axis == 0 {
                    return true;
                }
                axis -= 1;
                shift[axis] += 1;
                if shift[axis] < self.cells_per_axis[axis] {
                    break;
                }
                shift[axis] = 0;
            }
        }
    }

    fn decode(&self, sol: &[Vec<u64>]) -> TranslateSet {
        let offsets = sol
            .iter()
            .map(|t| {
                Point::new(
                    t.iter()
                        .map(|&c| Rational::new(c as i64, self.denom as i64))
                        .collect(),
                )
            })
            .collect();
        TranslateSet::periodic(self.dim, self.period.clone(), offsets)
            .expect("grid candidates are distinct and in range")
    }
}

impl Iterator for TilingEnumeration {
    type Item = TranslateSet;

    fn next(&mut self) -> Option<TranslateSet> {
        if self.done {
            return None;
        }
        loop {
            if self.descend {
                match self.dlx.choose_col() {
                    None => {
                        // Every cell covered: a solution.  Backtracking
                        // resumes from the stack on the next call.
                        self.descend = false;
                        let sol = self.current_solution();
                        if !self.dedup || self.is_canonical(&sol) {
                            return Some(self.decode(&sol));
                        }
                    }
                    Some(c) => {
                        if self.dlx.count[c] == 0 {
                            // Dead end: this cell is uncoverable.
                            self.descend = false;
                            continue;
                        }
                        self.dlx.cover(c);
                        let node = self.dlx.down[c];
                        self.dlx.cover_row_siblings(node);
                        self.stack.push(Frame { col: c, node });
                    }
                }
            } else {
                match self.stack.pop() {
                    None => {
                        self.done = true;
                        return None;
                    }
                    Some(Frame { col, node }) => {
                        self.dlx.uncover_row_siblings(node);
                        let next = self.dlx.down[node];
                        if next != col {
                            self.dlx.cover_row_siblings(next);
                            self.stack.push(Frame { col, node: next });
                            self.descend = true;
                        } else {
                            self.dlx.uncover(col);
                        }
                    }
                }
            }
        }
    }
}
