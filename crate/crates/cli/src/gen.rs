//! Deterministic set generators for tests and the command line.
//!
//! Everything here is reproducible: the random generators take an explicit
//! seed and use a fixed-stream RNG, and all outputs are canonical sets.

use anyhow::{bail, ensure, Result};
use cubespec_core::transforms::{slide, SlideSpec};
use cubespec_core::{Point, Rational, TranslateSet};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The integer lattice `Z^d` as a canonical periodic set.
pub fn gen_lattice(dim: usize) -> TranslateSet {
    assert!(dim >= 1, "lattice dimension must be positive");
    TranslateSet::periodic(dim, vec![1; dim], vec![Point::origin(dim)])
        .expect("the lattice is a valid periodic set")
}

/// Columns over the integer grid: column `m` (first coordinate `m`) is
/// shifted by `shifts[m]` along `axis`.  Tiles for every choice of shifts.
///
/// `axis` is zero-based and must differ from the column axis 0.
pub fn gen_shifted_columns(dim: usize, shifts: &[Rational], axis: usize) -> Result<TranslateSet> {
    ensure!(dim >= 2, "columns need at least two dimensions");
    ensure!(
        (1..dim).contains(&axis),
        "shift axis must be in 1..{dim} (distinct from the column axis 0)"
    );
    ensure!(!shifts.is_empty(), "need at least one column");
    let len = shifts.len() as u64;
    let mut period = vec![1u64; dim];
    period[0] = len;
    let offsets = shifts
        .iter()
        .enumerate()
        .map(|(m, s)| {
            let mut coords = vec![Rational::zero(); dim];
            coords[0] = Rational::from_int(m as i64);
            coords[axis] = s.clone();
            Point::new(coords)
        })
        .collect();
    Ok(TranslateSet::periodic(dim, period, offsets)
        .expect("distinct column abscissas cannot collide"))
}

/// Applies `steps` random sliding maps to `Z^d`.
///
/// Anchors and shifts are rationals with denominators at most 8.  Because
/// every point of `Z^d` lies in one residue class per axis, each step is
/// either the identity or a wholesale translation, so the output is always
/// a (possibly shifted) copy of the lattice; the value of the generator is
/// that the verdict oracles must confirm this on sets whose offsets carry
/// arbitrary small-denominator fractions.
pub fn gen_random_slides(seed: u64, dim: usize, steps: u32) -> TranslateSet {
    gen_random_slides_with_pool(seed, dim, steps, 8)
}

/// Like [`gen_random_slides`] with an explicit denominator pool bound.
///
/// Torus grids subdivide each period axis into `lcm(denominators)` cells,
/// so callers that feed the output to `check_tiling` at d = 3 keep
/// `max_den` small; denominators up to 8 can demand an `lcm` of 840 and a
/// grid of 840³ cells.
pub fn gen_random_slides_with_pool(seed: u64, dim: usize, steps: u32, max_den: i64) -> TranslateSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = gen_lattice(dim);
    for _ in 0..steps {
        let spec = random_slide_spec(&mut rng, dim, max_den);
        set = slide(&set, &spec).expect("slides on an orthogonal tiling cannot collide");
    }
    set
}

/// One random slide: uniformly chosen axis, anchor and shift with
/// denominators at most `max_den`.
pub fn random_slide_spec<R: Rng>(rng: &mut R, dim: usize, max_den: i64) -> SlideSpec {
    SlideSpec {
        axis: rng.gen_range(0..dim),
        anchor: random_rational(rng, max_den),
        shift: random_rational(rng, max_den),
    }
}

fn random_rational<R: Rng>(rng: &mut R, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den.max(1));
    let num = rng.gen_range(-(2 * den)..=2 * den);
    Rational::new(num, den)
}

/// A random lower-unitriangular lattice `A Z^d` (ones on the diagonal,
/// rational entries with denominators at most `max_den` below it),
/// represented as a periodic set.  Such lattices always tile: each slab
/// `x_1 in [k, k+1)` is a shifted copy of a `(d-1)`-dimensional instance.
///
/// The period is the least `M` with `M Z^d` inside the lattice, i.e. the
/// common denominator of `A^{-1}`; the offsets are `A k` over
/// `k in {0..M-1}^d`, reduced into the period box.
pub fn gen_unitriangular(seed: u64, dim: usize, max_den: i64) -> Result<TranslateSet> {
    ensure!(dim >= 1, "dimension must be positive");
    ensure!(max_den >= 1, "denominator bound must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = identity(dim);
    for i in 1..dim {
        for j in 0..i {
            let den = rng.gen_range(1..=max_den);
            let num = rng.gen_range(0..den.max(1));
            a[i][j] = Rational::new(num, den);
        }
    }
    let inv = invert_unitriangular(&a);
    let mut m = 1u64;
    for row in &inv {
        for entry in row {
            let den = entry.denom();
            let den: u64 = u64::try_from(den.clone())
                .map_err(|_| anyhow::anyhow!("denominator out of range"))?;
            m = lcm(m, den.max(1));
        }
    }
    let mut offsets = Vec::new();
    let mut k = vec![0u64; dim];
    loop {
        let coords = (0..dim)
            .map(|i| {
                let mut acc = Rational::zero();
                for (j, kj) in k.iter().enumerate() {
                    acc = &acc + &(&a[i][j] * &Rational::from_int(*kj as i64));
                }
                acc
            })
            .collect();
        offsets.push(Point::new(coords));
        let mut axis = dim;
        loop {
            if axis == 0 {
                let set = TranslateSet::periodic(dim, vec![m; dim], offsets)
                    .expect("lattice points are distinct modulo the period");
                return Ok(set);
            }
            axis -= 1;
            k[axis] += 1;
            if k[axis] < m {
                break;
            }
            k[axis] = 0;
        }
    }
}

fn identity(dim: usize) -> Vec<Vec<Rational>> {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Inverse of a lower-unitriangular matrix via the Neumann series
/// `(I + N)^{-1} = I - N + N^2 - ...`, which terminates because the
/// strictly lower part `N` is nilpotent.
fn invert_unitriangular(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let dim = a.len();
    let mut n = a.to_vec();
    for (i, row) in n.iter_mut().enumerate() {
        row[i] = Rational::zero();
    }
    let mut inv = identity(dim);
    let mut term = identity(dim);
    let mut sign = -1;
    for _ in 1..dim {
        term = mat_mul(&term, &n);
        for i in 0..dim {
            for j in 0..dim {
                let signed = if sign < 0 { -&term[i][j] } else { term[i][j].clone() };
                inv[i][j] = &inv[i][j] + &signed;
            }
        }
        sign = -sign;
    }
    inv
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let dim = a.len();
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for (k, bk) in b.iter().enumerate() {
                        acc = &acc + &(&a[i][k] * &bk[j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Re-represents a periodic set with the period multiplied by `factors`,
/// replicating offsets accordingly.  The set of translates is unchanged;
/// the finer representation exposes smaller translate classes to
/// per-offset edits.
pub fn refine_period(set: &TranslateSet, factors: &[u64]) -> Result<TranslateSet> {
    let Some(period) = set.period() else {
        bail!("only periodic sets can be refined");
    };
    ensure!(
        factors.len() == set.dim() && !factors.contains(&0),
        "need one positive factor per axis"
    );
    let new_period: Vec<u64> = period.iter().zip(factors).map(|(p, f)| p * f).collect();
    let mut offsets = Vec::new();
    let mut k = vec![0u64; set.dim()];
    'replicas: loop {
        for o in set.offsets() {
            let coords = o
                .coords()
                .iter()
                .enumerate()
                .map(|(j, c)| c + &Rational::from_int((k[j] * period[j]) as i64))
                .collect();
            offsets.push(Point::new(coords));
        }
        let mut axis = set.dim();
        loop {
            if axis == 0 {
                break 'replicas;
            }
            axis -= 1;
            k[axis] += 1;
            if k[axis] < factors[axis] {
                break;
            }
            k[axis] = 0;
        }
    }
    Ok(TranslateSet::periodic(set.dim(), new_period, offsets)
        .expect("replicas are distinct inside the refined box"))
}

/// Moves one offset of `set` by `delta` along `axis`, keeping the mode and
/// period.  The workhorse for building deliberately broken sets: moving a
/// translate class of a tiling by a non-integer step creates an overlap
/// (and a hole) whenever the class is a proper part of its cube column —
/// refine the period first so single offsets are small classes.  (With a
/// period of one on the axis, the class is a whole column and the move is
/// a slide, which tiles again.)
pub fn perturb_offset(
    set: &TranslateSet,
    index: usize,
    axis: usize,
    delta: &Rational,
) -> Result<TranslateSet> {
    if index >= set.offsets().len() {
        bail!(
            "offset index {index} out of range ({} offsets)",
            set.offsets().len()
        );
    }
    if axis >= set.dim() {
        bail!("axis {axis} out of range (dim {})", set.dim());
    }
    let mut offsets: Vec<Point> = set.offsets().to_vec();
    offsets[index] = offsets[index].axis_shifted(axis, delta);
    let rebuilt = match set.period() {
        None => TranslateSet::finite(set.dim(), offsets),
        Some(period) => TranslateSet::periodic(set.dim(), period.to_vec(), offsets),
    };
    rebuilt.map_err(|e| anyhow::anyhow!("perturbation collapsed two translates: {e}"))
}
