//! Orthogonality, packing and completeness analysis.
//!
//! For the unit cube `Q = [0,1)^d`, the squared inner product of two
//! exponentials `e_t, e_u` on `L^2(Q)` factors over coordinates:
//!
//! `|<e_t, e_u>|^2 = prod_j phi_sq(t_j - u_j)` with
//! `phi_sq(x) = (sin(pi x) / (pi x))^2`.
//!
//! `phi_sq` vanishes exactly at nonzero integers, so two exponentials are
//! orthogonal if and only if some coordinate gap is a nonzero integer; the
//! corresponding cubes are then disjoint.  Both predicates are decided in
//! exact rational arithmetic.  Floating point appears only in the
//! completeness sums, which are tolerance-qualified on the complete side and
//! carry a proven tail bound on the deficit side.

use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::Rational;
use crate::set::{SetMode, TranslateSet, Window};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::ToPrimitive;

/// `(sin(pi x) / (pi x))^2` with exact handling of the lattice values:
/// exactly `1.0` at zero and exactly `0.0` at nonzero integers.
pub fn phi_sq(x: &Rational) -> f64 {
    if x.is_zero() {
        1.0
    } else if x.is_integer() {
        0.0
    } else {
        sinc_sq(x.to_f64())
    }
}

/// Float kernel for non-lattice arguments.
fn sinc_sq(x: f64) -> f64 {
    let px = PI * x;
    let s = libm::sin(px) / px;
    s * s
}

/// Neumaier compensated accumulator; deterministic for a fixed input order.
#[derive(Clone, Copy, Default)]
struct Acc {
    sum: f64,
    comp: f64,
}

impl Acc {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if libm::fabs(self.sum) >= libm::fabs(v) {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

fn ensure_pair(t: &Point, u: &Point) -> Result<()> {
    if t.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            found: u.dim(),
        });
    }
    if t == u {
        return Err(Error::IdenticalPoints(t.clone()));
    }
    Ok(())
}

/// `|<e_t, e_u>|^2` for distinct translates; exactly zero when some
/// coordinate gap is a nonzero integer.
pub fn pair_inner_sq(t: &Point, u: &Point) -> Result<f64> {
    ensure_pair(t, u)?;
    Ok(mass_term(t, u))
}

/// Product of `phi_sq` over coordinate gaps; no distinctness requirement,
/// so it also evaluates the mass a translate contributes at a sample point.
fn mass_term(x: &Point, t: &Point) -> f64 {
    let mut prod = 1.0;
    for (a, b) in x.coords().iter().zip(t.coords()) {
        prod *= phi_sq(&(a - b));
        if prod == 0.0 {
            return 0.0;
        }
    }
    prod
}

/// Exact test: some coordinate gap is a nonzero integer.
pub fn is_orthogonal_pair(t: &Point, u: &Point) -> Result<bool> {
    ensure_pair(t, u)?;
    Ok(has_nonzero_integer_gap(t, u))
}

fn has_nonzero_integer_gap(t: &Point, u: &Point) -> bool {
    t.coords()
        .iter()
        .zip(u.coords())
        .any(|(a, b)| a != b && (a - b).is_integer())
}

/// Exact test: the half-open cubes at `t` and `u` are disjoint, i.e. some
/// coordinate gap has absolute value at least one.
pub fn is_disjoint_pair(t: &Point, u: &Point) -> Result<bool> {
    ensure_pair(t, u)?;
    let one = Rational::one();
    Ok(t.coords()
        .iter()
        .zip(u.coords())
        .any(|(a, b)| (a - b).abs() >= one))
}

/// Which pairwise property a report speaks about.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ViolationKind {
    /// Pairs whose exponentials are not orthogonal.
    Orthogonality,
    /// Pairs whose cubes overlap.
    Overlap,
}

/// All violating pairs found in a window, lexicographically sorted, each
/// pair ordered `(smaller, larger)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ViolationReport {
    pub kind: ViolationKind,
    pub pairs: Vec<(Point, Point)>,
}

impl ViolationReport {
    pub fn is_clean(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn first(&self) -> Option<&(Point, Point)> {
        self.pairs.first()
    }
}

/// Lists every pair of window translates that fails the integer-gap test.
///
/// Translates are grouped by their vector of coordinate fractional parts.
/// Two translates violate orthogonality exactly when they agree, as values,
/// on every coordinate where their fractional parts agree; so within one
/// group nothing can violate, and across two groups the violating pairs are
/// found by matching on the agreeing coordinates.  This avoids the
/// quadratic all-pairs scan on large windows.
pub fn check_orthogonality(set: &TranslateSet, w: &Window) -> Result<ViolationReport> {
    let pts = set.enumerate_window(w)?;
    Ok(ViolationReport {
        kind: ViolationKind::Orthogonality,
        pairs: violating_pairs(&pts),
    })
}

fn violating_pairs(pts: &[Point]) -> Vec<(Point, Point)> {
    let mut classes: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
    for (i, p) in pts.iter().enumerate() {
        classes.entry(p.fract()).or_default().push(i);
    }
    let classes: Vec<(Point, Vec<usize>)> = classes.into_iter().collect();
    let mut pairs = Vec::new();
    let mut push = |i: usize, j: usize| {
        let (a, b) = (&pts[i], &pts[j]);
        if a < b {
            pairs.push((a.clone(), b.clone()));
        } else {
            pairs.push((b.clone(), a.clone()));
        }
    };
    for a in 0..classes.len() {
        let (ka, ia) = &classes[a];
        for (kb, ib) in classes.iter().skip(a + 1) {
            let agree: Vec<usize> = (0..ka.dim())
                .filter(|&j| ka.coord(j) == kb.coord(j))
                .collect();
            if agree.is_empty() {
                for &i in ia {
                    for &j in ib {
                        push(i, j);
                    }
                }
            } else {
                let mut proj: BTreeMap<Vec<Rational>, Vec<usize>> = BTreeMap::new();
                for &i in ia {
                    let key = agree.iter().map(|&ax| pts[i].coord(ax).clone()).collect();
                    proj.entry(key).or_default().push(i);
                }
                for &j in ib {
                    let key: Vec<Rational> =
                        agree.iter().map(|&ax| pts[j].coord(ax).clone()).collect();
                    if let Some(matches) = proj.get(&key) {
                        for &i in matches {
                            push(i, j);
                        }
                    }
                }
            }
        }
    }
    pairs.sort();
    pairs
}

/// Lists every pair of window translates whose cubes overlap.
///
/// Candidates are narrowed by bucketing translates on their floor vectors;
/// overlapping cubes have floor vectors differing by at most one per axis.
pub fn check_packing(set: &TranslateSet, w: &Window) -> Result<ViolationReport> {
    let pts = set.enumerate_window(w)?;
    Ok(ViolationReport {
        kind: ViolationKind::Overlap,
        pairs: overlapping_pairs(&pts),
    })
}

fn overlapping_pairs(pts: &[Point]) -> Vec<(Point, Point)> {
    use num_bigint::BigInt;
    let dim = if pts.is_empty() { 0 } else { pts[0].dim() };
    let mut buckets: BTreeMap<Vec<BigInt>, Vec<usize>> = BTreeMap::new();
    for (i, p) in pts.iter().enumerate() {
        let key = p.coords().iter().map(Rational::floor).collect();
        buckets.entry(key).or_default().push(i);
    }
    let one = Rational::one();
    let overlaps = |i: usize, j: usize| {
        pts[i]
            .coords()
            .iter()
            .zip(pts[j].coords())
            .all(|(a, b)| (a - b).abs() < one)
    };
    let mut pairs = Vec::new();
    let mut push = |i: usize, j: usize| {
        let (a, b) = (&pts[i], &pts[j]);
        if a < b {
            pairs.push((a.clone(), b.clone()));
        } else {
            pairs.push((b.clone(), a.clone()));
        }
    };
    // Neighbor deltas in {-1,0,1}^d whose first nonzero entry is +1;
    // together with the in-bucket scan this visits each pair once.
    let mut deltas: Vec<Vec<i8>> = Vec::new();
    for code in 0..3usize.pow(dim as u32) {
        let mut c = code;
        let mut d = alloc::vec![0i8; dim];
        for slot in d.iter_mut().rev() {
            *slot = (c % 3) as i8 - 1;
            c /= 3;
        }
        if d.iter().copied().find(|&x| x != 0) == Some(1) {
            deltas.push(d);
        }
    }
    for (key, ids) in &buckets {
        for (a, &i) in ids.iter().enumerate() {
            for &j in &ids[a + 1..] {
                if overlaps(i, j) {
                    push(i, j);
                }
            }
        }
        for delta in &deltas {
            let nkey: Vec<BigInt> = key
                .iter()
                .zip(delta)
                .map(|(k, &e)| k + BigInt::from(e))
                .collect();
            if let Some(nids) = buckets.get(&nkey) {
                for &i in ids {
                    for &j in nids {
                        if overlaps(i, j) {
                            push(i, j);
                        }
                    }
                }
            }
        }
    }
    pairs.sort();
    pairs
}

/// First pair of translates at distance exactly one along a coordinate
/// axis, i.e. two cubes sharing a full face.
///
/// Scans canonical offsets in lexicographic order and axes in ascending
/// order; for periodic sets the twin partner may live in a neighboring
/// period box.  Returns actual translates of the represented set.
pub fn has_face_twin(set: &TranslateSet) -> Option<(Point, Point)> {
    let one = Rational::one();
    for o in set.offsets() {
        for axis in 0..set.dim() {
            let partner = o.axis_shifted(axis, &one);
            if set.contains_translate(&partner) {
                return Some((o.clone(), partner));
            }
        }
    }
    None
}

/// Outcome of a completeness sum at one sample point.
#[derive(Clone, PartialEq, Debug)]
pub enum CompletenessVerdict {
    /// `partial_sum >= 1 - eps - tail_bound`: consistent with the value 1
    /// demanded of a spectrum, up to the stated tolerance.
    CompleteWithin(f64),
    /// `partial_sum + tail_bound <= 1 - delta` for the reported `delta > 0`:
    /// the full series provably misses 1, so the set is not a spectrum.
    DeficitAtLeast(f64),
}

/// One evaluation of `sum_t |<e_x, e_t>|^2` over the radius-`cutoff`
/// window around the sample point.
#[derive(Clone, PartialEq, Debug)]
pub struct CompletenessReport {
    pub sample: Point,
    pub cutoff: u32,
    pub partial_sum: f64,
    pub tail_bound: f64,
    pub verdict: CompletenessVerdict,
}

/// Upper bound on the mass `sum |<e_x, e_t>|^2` over all translates outside
/// the radius-`cutoff` window around `x`, valid for every orthogonal
/// translate system in dimension `dim` and every sample point.
///
/// Classify each coordinate of a tail translate into four roles: escaped
/// above the cutoff, escaped below, or interior with either sign.  Within a
/// role pattern, orthogonality keeps the cubes pairwise disjoint after each
/// coordinate interval is shifted one unit toward the origin, so the pattern
/// mass is dominated by a product of integrals of `min(1, s^-2)`: at most
/// `1/(N-1)` per escaped coordinate and at most `3` per interior one.
/// Summing over the patterns with at least one escaped coordinate gives
///
/// `bound(d, N) = 2^d * ((3 + 1/(N-1))^d - 3^d)`.
///
/// Requires `cutoff >= 2` so the escaped-coordinate integral is `1/(N-1)`.
pub fn orthogonal_tail_bound(dim: usize, cutoff: u32) -> Result<f64> {
    if cutoff < 2 {
        return Err(Error::CutoffTooSmall { cutoff, min: 2 });
    }
    let inv = 1.0 / (f64::from(cutoff) - 1.0);
    let mut with = 1.0;
    let mut without = 1.0;
    for _ in 0..dim {
        with *= 3.0 + inv;
        without *= 3.0;
    }
    let mut pow2 = 1.0;
    for _ in 0..dim {
        pow2 *= 2.0;
    }
    Ok(pow2 * (with - without))
}

/// `C_d = sup_{N >= 2} N * orthogonal_tail_bound(d, N) = 2^(d+1) (4^d - 3^d)`;
/// the supremum sits at `N = 2` because `N * bound(d, N)` is decreasing
/// in `N` term by term.  So the tail decays at least like `C_d / N`.
pub fn tail_constant(dim: usize) -> f64 {
    let mut p4 = 1.0;
    let mut p3 = 1.0;
    let mut p2 = 1.0;
    for _ in 0..dim {
        p4 *= 4.0;
        p3 *= 3.0;
        p2 *= 2.0;
    }
    2.0 * p2 * (p4 - p3)
}

/// Evaluates the partial completeness sum at `x` over the window
/// `[x_j - cutoff - 1, x_j + cutoff + 1)` and attaches a tail bound.
///
/// Finite mode sums the finitely many excluded translates exactly, so the
/// tail bound is the actual remainder.  Periodic mode uses
/// [`orthogonal_tail_bound`], which is why orthogonality is certified
/// set-wide (via the verification window) before summing; a violation is
/// returned as an error with the offending pair.  The series termwise is
/// nonnegative, so `partial_sum + tail_bound < 1` certifies a deficit;
/// `CompleteWithin` is only a tolerance statement, never a certificate.
pub fn completeness_sum(
    set: &TranslateSet,
    x: &Point,
    cutoff: u32,
    eps: f64,
) -> Result<CompletenessReport> {
    ensure_orthogonal_for_sum(set, x, cutoff)?;
    completeness_sum_unchecked(set, x, cutoff, eps)
}

fn ensure_orthogonal_for_sum(set: &TranslateSet, x: &Point, cutoff: u32) -> Result<()> {
    if x.dim() != set.dim() {
        return Err(Error::DimensionMismatch {
            expected: set.dim(),
            found: x.dim(),
        });
    }
    let w = match set.mode() {
        // The 3^d block certifies orthogonality of the whole periodic
        // system, which the tail bound needs.
        SetMode::Periodic => set.verification_window(),
        SetMode::Finite => Window::radius_about(x, cutoff),
    };
    let report = check_orthogonality(set, &w)?;
    if let Some((a, b)) = report.first() {
        return Err(Error::OrthogonalityViolation {
            first: a.clone(),
            second: b.clone(),
        });
    }
    Ok(())
}

fn completeness_sum_unchecked(
    set: &TranslateSet,
    x: &Point,
    cutoff: u32,
    eps: f64,
) -> Result<CompletenessReport> {
    debug_assert!(eps >= 0.0 && eps.is_finite());
    let w = Window::radius_about(x, cutoff);
    let (partial_sum, tail_bound) = match set.mode() {
        SetMode::Finite => {
            let mut inside = Acc::default();
            let mut outside = Acc::default();
            for t in set.offsets() {
                if w.contains(t) {
                    inside.add(mass_term(x, t));
                } else {
                    outside.add(mass_term(x, t));
                }
            }
            (inside.value(), outside.value())
        }
        SetMode::Periodic => {
            let tail = orthogonal_tail_bound(set.dim(), cutoff)?;
            (periodic_partial_sum(set, x, &w)?, tail)
        }
    };
    let verdict = if partial_sum >= 1.0 - eps - tail_bound {
        CompletenessVerdict::CompleteWithin(eps)
    } else {
        CompletenessVerdict::DeficitAtLeast(1.0 - partial_sum - tail_bound)
    };
    Ok(CompletenessReport {
        sample: x.clone(),
        cutoff,
        partial_sum,
        tail_bound,
        verdict,
    })
}

/// The window sum for a periodic set, factored per offset class:
/// `sum_k prod_j phi_sq(x_j - o_j - P_j k_j)` equals
/// `prod_j (sum_{k_j} phi_sq(x_j - o_j - P_j k_j))` over the per-axis
/// ranges of period multiples that land in the window.
///
/// When `x_j - o_j` is an integer the axis factor is exact: every term
/// vanishes except a possible exact hit `x_j - o_j = P_j k`.
fn periodic_partial_sum(set: &TranslateSet, x: &Point, w: &Window) -> Result<f64> {
    let period = set.period().expect("periodic mode");
    let mut total = Acc::default();
    for o in set.offsets() {
        let mut prod = 1.0;
        for j in 0..set.dim() {
            let pj = period[j];
            let pr = Rational::from_int(pj as i64);
            let diff = x.coord(j) - o.coord(j);
            // Same k-range as enumerate_window on this axis.
            let klo = crate::set::div_ceil(&(w.lo(j) - o.coord(j)), &pr);
            let khi = crate::set::div_ceil(&(w.hi(j) - o.coord(j)), &pr);
            let (klo, khi) = match (klo.to_i64(), khi.to_i64()) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(Error::GridTooLarge {
                        cells: u128::MAX,
                        budget: u128::from(u64::MAX),
                    })
                }
            };
            if klo >= khi {
                prod = 0.0;
                break;
            }
            let factor = if diff.is_integer() {
                // Exact axis factor: every term vanishes except a possible
                // lattice hit x_j - o_j = P_j k with k in range.
                let num = diff.as_integer().expect("integer diff");
                let (q, r) = num_integer::Integer::div_mod_floor(
                    &num,
                    &num_bigint::BigInt::from(pj),
                );
                let hit = num_traits::Zero::is_zero(&r)
                    && q >= num_bigint::BigInt::from(klo)
                    && q < num_bigint::BigInt::from(khi);
                if hit {
                    1.0
                } else {
                    0.0
                }
            } else {
                let dx = diff.to_f64();
                let p = pj as f64;
                let mut axis = Acc::default();
                for k in klo..khi {
                    axis.add(sinc_sq(dx - p * (k as f64)));
                }
                axis.value()
            };
            prod *= factor;
            if prod == 0.0 {
                break;
            }
        }
        total.add(prod);
    }
    Ok(total.value())
}

/// Why a set was rejected as a spectrum.
#[derive(Clone, PartialEq, Debug)]
pub enum NotSpectrumWitness {
    /// Two translates whose exponentials fail orthogonality; a spectrum
    /// must be an orthogonal set.
    NonOrthogonalPair { first: Point, second: Point },
    /// A sample point where the completeness series provably misses 1.
    Deficit { sample: Point, deficit: f64 },
}

/// Sample-based spectrum test outcome.
#[derive(Clone, PartialEq, Debug)]
pub enum SpectrumVerdict {
    /// Orthogonal, and every sampled completeness sum is consistent with 1
    /// within the tolerance.  Not a certificate.
    LikelySpectrum,
    /// A certified obstruction: either a non-orthogonal pair or a sample
    /// with a proven completeness deficit.
    NotSpectrum(NotSpectrumWitness),
}

/// Verdict plus the per-sample evidence that produced it.
#[derive(Clone, PartialEq, Debug)]
pub struct SpectrumOutcome {
    pub verdict: SpectrumVerdict,
    pub reports: Vec<CompletenessReport>,
}

/// Tests orthogonality once set-wide, then runs [`completeness_sum`] at
/// every sample.  The verdict is `NotSpectrum` on the first non-orthogonal
/// pair or the first certified deficit (samples in input order); reports
/// for all samples are returned either way.  An empty sample list is
/// vacuously `LikelySpectrum` for an orthogonal set.
pub fn spectrum_verdict(
    set: &TranslateSet,
    samples: &[Point],
    cutoff: u32,
    eps: f64,
) -> Result<SpectrumOutcome> {
    let w = set.verification_window();
    let report = check_orthogonality(set, &w)?;
    if let Some((a, b)) = report.first() {
        return Ok(SpectrumOutcome {
            verdict: SpectrumVerdict::NotSpectrum(NotSpectrumWitness::NonOrthogonalPair {
                first: a.clone(),
                second: b.clone(),
            }),
            reports: Vec::new(),
        });
    }
    let mut reports = Vec::with_capacity(samples.len());
    let mut witness: Option<NotSpectrumWitness> = None;
    for x in samples {
        if x.dim() != set.dim() {
            return Err(Error::DimensionMismatch {
                expected: set.dim(),
                found: x.dim(),
            });
        }
        let report = completeness_sum_unchecked(set, x, cutoff, eps)?;
        if witness.is_none() {
            if let CompletenessVerdict::DeficitAtLeast(delta) = report.verdict {
                witness = Some(NotSpectrumWitness::Deficit {
                    sample: x.clone(),
                    deficit: delta,
                });
            }
        }
        reports.push(report);
    }
    Ok(SpectrumOutcome {
        verdict: match witness {
            Some(w) => SpectrumVerdict::NotSpectrum(w),
            None => SpectrumVerdict::LikelySpectrum,
        },
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn pt(coords: &[&str]) -> Point {
        Point::new(coords.iter().map(|s| rat(s)).collect())
    }

    /// Independent route to the kernel: `|e(x) - 1|^2 / (2 pi x)^2` with
    /// `e(x) = exp(2 pi i x)`, evaluated with real trigonometry.
    fn phi_sq_oracle(x: f64) -> f64 {
        let twopix = 2.0 * PI * x;
        let re = libm::cos(twopix) - 1.0;
        let im = libm::sin(twopix);
        (re * re + im * im) / (twopix * twopix)
    }

    #[test]
    fn kernel_exact_lattice_values() {
        assert_eq!(phi_sq(&rat("0")), 1.0);
        for s in ["1", "-1", "2", "-7", "100"] {
            assert_eq!(phi_sq(&rat(s)), 0.0, "at {s}");
        }
    }

    #[test]
    fn kernel_matches_independent_oracle() {
        for s in ["1/2", "-1/2", "1/3", "3/10", "7/4", "-22/7", "99/10"] {
            let x = rat(s);
            let direct = phi_sq(&x);
            let oracle = phi_sq_oracle(x.to_f64());
            assert!(
                (direct - oracle).abs() < 1e-14,
                "{s}: {direct} vs {oracle}"
            );
        }
    }

    #[test]
    fn kernel_value_at_one_half() {
        // phi_sq(1/2) = 4 / pi^2.
        let expect = 4.0 / (PI * PI);
        assert!((phi_sq(&rat("1/2")) - expect).abs() < 1e-15);
    }

    #[test]
    fn pair_inner_sq_diagonal_shift() {
        // Gap (1/2, 1/2) gives (4/pi^2)^2 = 16/pi^4.
        let v = pair_inner_sq(&pt(&["1/2", "1/2"]), &pt(&["0", "0"])).unwrap();
        let expect = 16.0 / (PI * PI * PI * PI);
        assert!((v - expect).abs() < 1e-15);
    }

    #[test]
    fn pair_inner_sq_exact_zero_on_integer_gap() {
        let v = pair_inner_sq(&pt(&["1", "1/3"]), &pt(&["0", "1/3"])).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn pair_predicates_reject_identical_and_mismatched() {
        let p = pt(&["0", "0"]);
        assert!(matches!(
            pair_inner_sq(&p, &p),
            Err(Error::IdenticalPoints(_))
        ));
        assert!(matches!(
            is_orthogonal_pair(&p, &pt(&["0"])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn orthogonality_iff_inner_product_vanishes() {
        let cases = [
            (pt(&["0", "0"]), pt(&["1", "1/2"]), true),
            (pt(&["0", "0"]), pt(&["1/2", "1/2"]), false),
            (pt(&["1/3", "5"]), pt(&["1/3", "2"]), true),
            (pt(&["1/3", "0"]), pt(&["2/3", "0"]), false),
        ];
        for (t, u, expect) in cases {
            assert_eq!(is_orthogonal_pair(&t, &u).unwrap(), expect, "{t} {u}");
            let inner = pair_inner_sq(&t, &u).unwrap();
            assert_eq!(inner == 0.0, expect, "{t} {u}");
        }
    }

    #[test]
    fn disjoint_pairs() {
        assert!(is_disjoint_pair(&pt(&["0", "0"]), &pt(&["1", "1/2"])).unwrap());
        assert!(!is_disjoint_pair(&pt(&["0", "0"]), &pt(&["1/2", "1/2"])).unwrap());
        // Orthogonal implies disjoint.
        assert!(is_disjoint_pair(&pt(&["1/3", "5"]), &pt(&["1/3", "2"])).unwrap());
    }

    #[test]
    fn orthogonality_scan_flags_exactly_the_bad_pairs() {
        let set = TranslateSet::finite(
            2,
            vec![
                pt(&["0", "0"]),
                pt(&["1", "1/2"]),
                pt(&["1/2", "1/2"]),
                pt(&["0", "1"]),
            ],
        )
        .unwrap();
        let w = set.verification_window();
        let report = check_orthogonality(&set, &w).unwrap();
        // Brute force over all pairs.
        let pts = set.enumerate_window(&w).unwrap();
        let mut brute = vec![];
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if !is_orthogonal_pair(&pts[i], &pts[j]).unwrap() {
                    brute.push((pts[i].clone(), pts[j].clone()));
                }
            }
        }
        brute.sort();
        assert_eq!(report.pairs, brute);
        assert!(!report.is_clean());
    }

    #[test]
    fn packing_scan_matches_brute_force() {
        let set = TranslateSet::finite(
            2,
            vec![
                pt(&["0", "0"]),
                pt(&["1/2", "1/2"]),
                pt(&["2", "0"]),
                pt(&["5/2", "1/3"]),
                pt(&["0", "5"]),
            ],
        )
        .unwrap();
        let w = set.verification_window();
        let report = check_packing(&set, &w).unwrap();
        let pts = set.enumerate_window(&w).unwrap();
        let mut brute = vec![];
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if !is_disjoint_pair(&pts[i], &pts[j]).unwrap() {
                    brute.push((pts[i].clone(), pts[j].clone()));
                }
            }
        }
        brute.sort();
        assert_eq!(report.pairs, brute);
        assert_eq!(report.kind, ViolationKind::Overlap);
    }

    #[test]
    fn face_twin_in_integer_lattice() {
        let set = TranslateSet::periodic(2, vec![1, 1], vec![pt(&["0", "0"])]).unwrap();
        let twin = has_face_twin(&set).unwrap();
        assert_eq!(twin, (pt(&["0", "0"]), pt(&["1", "0"])));
    }

    #[test]
    fn face_twin_within_a_column() {
        let set = TranslateSet::periodic(
            2,
            vec![2, 2],
            vec![
                pt(&["0", "0"]),
                pt(&["0", "1"]),
                pt(&["1", "1/2"]),
                pt(&["1", "3/2"]),
            ],
        )
        .unwrap();
        let twin = has_face_twin(&set).unwrap();
        assert_eq!(twin, (pt(&["0", "0"]), pt(&["0", "1"])));
    }

    #[test]
    fn no_face_twin_in_sparse_set() {
        let set = TranslateSet::finite(2, vec![pt(&["0", "0"]), pt(&["2", "1/2"])]).unwrap();
        assert!(has_face_twin(&set).is_none());
    }

    #[test]
    fn tail_bound_values() {
        // 2^d ((3 + 1/(N-1))^d - 3^d) at small d, N.
        let b = orthogonal_tail_bound(1, 2).unwrap();
        assert!((b - 2.0).abs() < 1e-12);
        let b = orthogonal_tail_bound(2, 2).unwrap();
        assert!((b - 28.0).abs() < 1e-12);
        assert!(matches!(
            orthogonal_tail_bound(2, 1),
            Err(Error::CutoffTooSmall { .. })
        ));
        assert_eq!(tail_constant(1), 4.0);
        assert_eq!(tail_constant(2), 56.0);
        assert_eq!(tail_constant(3), 592.0);
        // N * bound <= C_d with the supremum attained at N = 2.
        for d in 1..=3 {
            for n in 2..=50u32 {
                let v = f64::from(n) * orthogonal_tail_bound(d, n).unwrap();
                assert!(v <= tail_constant(d) + 1e-9, "d={d} n={n}");
            }
            let at2 = 2.0 * orthogonal_tail_bound(d, 2).unwrap();
            assert!((at2 - tail_constant(d)).abs() < 1e-9);
        }
    }

    #[test]
    fn integer_lattice_sum_is_exactly_one_at_lattice_points() {
        let set = TranslateSet::periodic(1, vec![1], vec![pt(&["0"])]).unwrap();
        let report = completeness_sum(&set, &pt(&["0"]), 10, 0.05).unwrap();
        assert_eq!(report.partial_sum, 1.0);
        assert!(matches!(
            report.verdict,
            CompletenessVerdict::CompleteWithin(_)
        ));
    }

    #[test]
    fn integer_lattice_sum_matches_direct_summation() {
        // Direct f64 loop over the same window, summed naively.
        let set = TranslateSet::periodic(1, vec![1], vec![pt(&["0"])]).unwrap();
        let x = rat("3/10");
        for cutoff in [10u32, 100] {
            let report = completeness_sum(&set, &Point::new(vec![x.clone()]), cutoff, 0.05).unwrap();
            let xf = x.to_f64();
            let lo = libm::ceil(xf - f64::from(cutoff) - 1.0) as i64;
            let mut direct = 0.0;
            let mut n = lo;
            while (n as f64) < xf + f64::from(cutoff) + 1.0 {
                direct += phi_sq_oracle(xf - n as f64);
                n += 1;
            }
            assert!(
                (report.partial_sum - direct).abs() < 1e-12,
                "cutoff {cutoff}: {} vs {direct}",
                report.partial_sum
            );
        }
    }

    #[test]
    fn deficit_is_certified_for_punctured_window() {
        // All integer translates in [-20, 20]^2 except the origin; at
        // (1/2, 1/2) the missing term is 16/pi^4 and the tail is the exact
        // remainder (zero outside the data).
        let mut offsets = vec![];
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                if (a, b) != (0, 0) {
                    offsets.push(Point::from_ints(&[a, b]));
                }
            }
        }
        let set = TranslateSet::finite(2, offsets).unwrap();
        let report = completeness_sum(&set, &pt(&["1/2", "1/2"]), 20, 0.05).unwrap();
        assert_eq!(report.tail_bound, 0.0);
        match report.verdict {
            CompletenessVerdict::DeficitAtLeast(delta) => {
                assert!(delta > 0.1, "delta = {delta}");
            }
            ref v => panic!("expected deficit, got {v:?}"),
        }
    }

    #[test]
    fn completeness_rejects_non_orthogonal_sets() {
        let set =
            TranslateSet::finite(1, vec![pt(&["0"]), pt(&["1/2"])]).unwrap();
        let err = completeness_sum(&set, &pt(&["0"]), 5, 0.05).unwrap_err();
        assert!(matches!(err, Error::OrthogonalityViolation { .. }));
    }

    #[test]
    fn spectrum_verdict_on_integer_lattice() {
        let set = TranslateSet::periodic(2, vec![1, 1], vec![pt(&["0", "0"])]).unwrap();
        let samples = vec![pt(&["1/2", "1/3"]), pt(&["0", "0"]), pt(&["3/10", "9/10"])];
        let outcome = spectrum_verdict(&set, &samples, 50, 0.05).unwrap();
        assert_eq!(outcome.verdict, SpectrumVerdict::LikelySpectrum);
        assert_eq!(outcome.reports.len(), 3);
    }

    #[test]
    fn spectrum_verdict_flags_deficit_sample() {
        let mut offsets = vec![];
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                if (a, b) != (0, 0) {
                    offsets.push(Point::from_ints(&[a, b]));
                }
            }
        }
        let set = TranslateSet::finite(2, offsets).unwrap();
        let samples = vec![pt(&["1/2", "1/2"]), pt(&["1/4", "3/4"])];
        let outcome = spectrum_verdict(&set, &samples, 20, 0.05).unwrap();
        match outcome.verdict {
            SpectrumVerdict::NotSpectrum(NotSpectrumWitness::Deficit { sample, deficit }) => {
                assert_eq!(sample, pt(&["1/2", "1/2"]));
                assert!(deficit > 0.1);
            }
            ref v => panic!("unexpected verdict {v:?}"),
        }
        assert_eq!(outcome.reports.len(), 2);
    }

    #[test]
    fn spectrum_verdict_flags_non_orthogonal_pair() {
        let set = TranslateSet::periodic(1, vec![1], vec![pt(&["0"]), pt(&["1/2"])]).unwrap();
        let outcome = spectrum_verdict(&set, &[pt(&["0"])], 10, 0.05).unwrap();
        assert!(matches!(
            outcome.verdict,
            SpectrumVerdict::NotSpectrum(NotSpectrumWitness::NonOrthogonalPair { .. })
        ));
        assert!(outcome.reports.is_empty());
    }

    #[test]
    fn empty_sample_list_is_vacuously_likely() {
        let set = TranslateSet::periodic(1, vec![1], vec![pt(&["0"])]).unwrap();
        let outcome = spectrum_verdict(&set, &[], 10, 0.05).unwrap();
        assert_eq!(outcome.verdict, SpectrumVerdict::LikelySpectrum);
        assert!(outcome.reports.is_empty());
    }
}
