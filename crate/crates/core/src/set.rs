//! Translate sets and observation windows.
//!
//! A [`TranslateSet`] describes the cube system `{ [0,1)^d + t : t in T }`
//! either by listing `T` outright (finite mode) or by listing one
//! representative per residue class modulo an integer period vector
//! (periodic mode).  Construction always canonicalizes: periodic offsets are
//! reduced into the fundamental box, translates are sorted
//! lexicographically, and duplicates are rejected.  Every downstream checker
//! leans on that normal form for determinism.

use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::Rational;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

/// Half-open axis-aligned box `[lo_1, hi_1) x ... x [lo_d, hi_d)`.
///
/// Half-open faces match the cube convention, so enumerating a periodic set
/// over one full period box yields exactly one representative per class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Window {
    lo: Vec<Rational>,
    hi: Vec<Rational>,
}

impl Window {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::InvalidWindow);
        }
        if lo.iter().zip(&hi).any(|(l, h)| l >= h) {
            return Err(Error::InvalidWindow);
        }
        Ok(Window { lo, hi })
    }

    /// The box `[-(n+1), n+1)^d`: it contains every translate whose cube can
    /// intersect `[-n, n]^d`, the working region for cutoff `n`.
    pub fn radius(dim: usize, n: u32) -> Self {
        let hi = Rational::from_int(i64::from(n) + 1);
        let lo = -&hi;
        Window {
            lo: (0..dim).map(|_| lo.clone()).collect(),
            hi: (0..dim).map(|_| hi.clone()).collect(),
        }
    }

    /// The radius-`n` box recentered at `x`.
    pub fn radius_about(x: &Point, n: u32) -> Self {
        let r = Rational::from_int(i64::from(n) + 1);
        Window {
            lo: x.coords().iter().map(|c| c - &r).collect(),
            hi: x.coords().iter().map(|c| c + &r).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self, axis: usize) -> &Rational {
        &self.lo[axis]
    }

    pub fn hi(&self, axis: usize) -> &Rational {
        &self.hi[axis]
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim()
            && p.coords()
                .iter()
                .enumerate()
                .all(|(j, c)| &self.lo[j] <= c && c < &self.hi[j])
    }
}

/// Whether a set lists all of its translates or one representative per
/// residue class of an integer lattice.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SetMode {
    Finite,
    Periodic,
}

/// A system of unit-cube translates in canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TranslateSet {
    dim: usize,
    period: Option<Vec<u64>>,
    offsets: Vec<Point>,
}

impl TranslateSet {
    /// A finite set listing every translate.
    pub fn finite(dim: usize, offsets: Vec<Point>) -> Result<Self> {
        TranslateSet {
            dim,
            period: None,
            offsets,
        }
        .canonicalized()
    }

    /// A periodic set: the full system is `offsets + period * Z^d`
    /// componentwise.  Offsets are reduced into `[0, period_j)` per axis.
    pub fn periodic(dim: usize, period: Vec<u64>, offsets: Vec<Point>) -> Result<Self> {
        TranslateSet {
            dim,
            period: Some(period),
            offsets,
        }
        .canonicalized()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> SetMode {
        if self.period.is_some() {
            SetMode::Periodic
        } else {
            SetMode::Finite
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.period.is_some()
    }

    /// Period vector for periodic sets, `None` in finite mode.
    pub fn period(&self) -> Option<&[u64]> {
        self.period.as_deref()
    }

    /// Canonical offset list: sorted, duplicate-free, reduced mod period.
    pub fn offsets(&self) -> &[Point] {
        &self.offsets
    }

    /// Validates structure and rebuilds the normal form: offsets reduced
    /// into the fundamental period box (periodic mode), sorted
    /// lexicographically, duplicates rejected with a witness.
    /// Idempotent on its own output.
    pub fn canonicalized(&self) -> Result<Self> {
        if self.dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if let Some(period) = &self.period {
            if period.len() != self.dim || period.iter().any(|&p| p == 0) {
                return Err(Error::InvalidPeriod);
            }
        }
        for p in &self.offsets {
            if p.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: p.dim(),
                });
            }
        }
        let mut offsets: Vec<Point> = match &self.period {
            None => self.offsets.clone(),
            Some(period) => self
                .offsets
                .iter()
                .map(|p| reduce_mod_period(p, period))
                .collect(),
        };
        offsets.sort();
        for w in offsets.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateTranslate(w[0].clone()));
            }
        }
        Ok(TranslateSet {
            dim: self.dim,
            period: self.period.clone(),
            offsets,
        })
    }

    /// Least common denominator `q >= 1` over all offset coordinates, so the
    /// whole set lives on the grid `(1/q) Z^d`.
    pub fn common_denominator(&self) -> BigInt {
        let mut q = BigInt::one();
        for p in &self.offsets {
            for c in p.coords() {
                q = q.lcm(c.denom());
            }
        }
        q
    }

    /// Membership in the represented (possibly infinite) translate set.
    pub fn contains_translate(&self, p: &Point) -> bool {
        if p.dim() != self.dim {
            return false;
        }
        match &self.period {
            None => self.offsets.binary_search(p).is_ok(),
            Some(period) => self
                .offsets
                .binary_search(&reduce_mod_period(p, period))
                .is_ok(),
        }
    }

    /// All represented translates inside `w`, sorted lexicographically.
    ///
    /// Finite mode filters the list; a window larger than the data simply
    /// returns everything.  Periodic mode expands each class over the exact
    /// integer ranges of period multiples that land in the window.
    pub fn enumerate_window(&self, w: &Window) -> Result<Vec<Point>> {
        if w.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: w.dim(),
            });
        }
        let mut out = match &self.period {
            None => self
                .offsets
                .iter()
                .filter(|p| w.contains(p))
                .cloned()
                .collect::<Vec<_>>(),
            Some(period) => {
                let mut out = Vec::new();
                let mut coords: Vec<Rational> = Vec::with_capacity(self.dim);
                for o in &self.offsets {
                    // Per axis, o_j + P_j k is in [lo_j, hi_j) exactly for
                    // k in [ceil((lo_j - o_j)/P_j), ceil((hi_j - o_j)/P_j)).
                    let ranges: Vec<(BigInt, BigInt)> = (0..self.dim)
                        .map(|j| {
                            let p = Rational::from_int(period[j] as i64);
                            let klo = div_ceil(&(w.lo(j) - o.coord(j)), &p);
                            let khi = div_ceil(&(w.hi(j) - o.coord(j)), &p);
                            (klo, khi)
                        })
                        .collect();
                    if ranges.iter().any(|(klo, khi)| klo >= khi) {
                        continue;
                    }
                    let mut k: Vec<BigInt> = ranges.iter().map(|(klo, _)| klo.clone()).collect();
                    'classes: loop {
                        coords.clear();
                        for j in 0..self.dim {
                            let step = Rational::from_bigint(&k[j] * BigInt::from(period[j]));
                            coords.push(o.coord(j) + &step);
                        }
                        out.push(Point::new(coords.clone()));
                        // Odometer over the per-axis ranges.
                        let mut axis = self.dim;
                        loop {
                            if axis == 0 {
                                break 'classes;
                            }
                            axis -= 1;
                            k[axis] += 1;
                            if k[axis] < ranges[axis].1 {
                                break;
                            }
                            k[axis] = ranges[axis].0.clone();
                        }
                    }
                }
                out
            }
        };
        out.sort();
        Ok(out)
    }

    /// The default window that certifies set-wide pairwise properties.
    ///
    /// Periodic: `[-P_j, 2 P_j)` per axis, i.e. the 3^d block of period
    /// boxes around the fundamental one.  Any violating pair of classes has
    /// a representative pair in this block, because canonical offsets differ
    /// by less than one period per axis.  Finite: a box containing every
    /// translate.
    pub fn verification_window(&self) -> Window {
        match &self.period {
            Some(period) => {
                let lo = period
                    .iter()
                    .map(|&p| Rational::from_int(-(p as i64)))
                    .collect();
                let hi = period
                    .iter()
                    .map(|&p| Rational::from_int(2 * p as i64))
                    .collect();
                Window { lo, hi }
            }
            None => {
                let one = Rational::one();
                let mut lo: Vec<Rational> = (0..self.dim).map(|_| Rational::zero()).collect();
                let mut hi: Vec<Rational> = (0..self.dim).map(|_| Rational::one()).collect();
                for p in &self.offsets {
                    for (j, c) in p.coords().iter().enumerate() {
                        if c < &lo[j] {
                            lo[j] = c.clone();
                        }
                        if &(c + &one) >= &hi[j] {
                            hi[j] = c + &one;
                        }
                    }
                }
                Window { lo, hi }
            }
        }
    }
}

/// `ceil(x / p)` for rational `x` and positive integer-valued rational `p`.
pub(crate) fn div_ceil(x: &Rational, p: &Rational) -> BigInt {
    let num = x.numer() * p.denom();
    let den = x.denom() * p.numer();
    debug_assert!(den.is_positive());
    num.div_ceil(&den)
}

fn reduce_mod_period(p: &Point, period: &[u64]) -> Point {
    Point::new(
        p.coords()
            .iter()
            .zip(period)
            .map(|(c, &m)| c.mod_int(m))
            .collect(),
    )
}
