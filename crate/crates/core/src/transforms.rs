//! Structure-preserving transformations of translate sets.
//!
//! The basic move is the sliding map: fix an axis, keep every translate
//! whose axis coordinate differs from an anchor by an integer, and shift
//! all other translates by a constant along that axis.  Sliding preserves
//! tiling, packing and orthogonality, which makes it the workhorse both
//! for normalizing sets (integerization) and for generating test
//! instances.

use crate::analysis::check_orthogonality;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::Rational;
use crate::set::{TranslateSet, Window};
use alloc::vec::Vec;

/// One sliding map: on `axis`, translates with `coord - anchor` integral
/// stay, all others move by `shift`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SlideSpec {
    /// Zero-based axis index.
    pub axis: usize,
    pub anchor: Rational,
    pub shift: Rational,
}

/// Applies a sliding map.
///
/// The anchored class is selected by the fractional part of the axis
/// coordinate relative to `anchor`, so the result does not depend on which
/// representatives a periodic set stores.  If two translates collide in
/// the image (possible only for non-orthogonal inputs) the collision point
/// is reported as an error.
pub fn slide(set: &TranslateSet, spec: &SlideSpec) -> Result<TranslateSet> {
    if spec.axis >= set.dim() {
        return Err(Error::InvalidAxis {
            axis: spec.axis,
            dim: set.dim(),
        });
    }
    let moved: Vec<Point> = set
        .offsets()
        .iter()
        .map(|t| {
            if (t.coord(spec.axis) - &spec.anchor).is_integer() {
                t.clone()
            } else {
                t.axis_shifted(spec.axis, &spec.shift)
            }
        })
        .collect();
    let rebuilt = match set.period() {
        None => TranslateSet::finite(set.dim(), moved),
        Some(period) => TranslateSet::periodic(set.dim(), period.to_vec(), moved),
    };
    rebuilt.map_err(|e| match e {
        Error::DuplicateTranslate(p) => Error::TranslateCollision(p),
        other => other,
    })
}

/// Moves the residue class of `t` along the first axis so that `t` and
/// `u` come to share their first coordinate.
///
/// Both points must be translates of the set and their first coordinates
/// must not differ by an integer (otherwise they are already in the same
/// class and there is nothing to separate).  Realized as a single slide
/// anchored at `u`'s class with shift `u_1 - t_1`; the designated pair
/// afterwards agrees exactly in coordinate one, and the sliding rule
/// preserves tiling and orthogonality verdicts.
pub fn keller_shift(set: &TranslateSet, t: &Point, u: &Point) -> Result<TranslateSet> {
    for p in [t, u] {
        if p.dim() != set.dim() {
            return Err(Error::DimensionMismatch {
                expected: set.dim(),
                found: p.dim(),
            });
        }
        if !set.contains_translate(p) {
            return Err(Error::NotInSet(p.clone()));
        }
    }
    if (t.coord(0) - u.coord(0)).is_integer() {
        return Err(Error::IntegerGap {
            first: t.clone(),
            second: u.clone(),
        });
    }
    slide(
        set,
        &SlideSpec {
            axis: 0,
            anchor: u.coord(0).clone(),
            shift: u.coord(0) - t.coord(0),
        },
    )
}

/// Scan order for the line grid of [`integerize_steps`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LineOrder {
    /// Lexicographic, most negative lines first (the default).
    Ascending,
    /// Reverse lexicographic.
    Descending,
}

/// One recorded integerization move: the grid line that triggered it and
/// the slide that was applied.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerizeStep {
    pub axis: usize,
    /// The line's fixed integer coordinates on the other `d - 1` axes.
    pub line: Vec<i64>,
    pub spec: SlideSpec,
}

/// Slides an orthogonal set axis by axis until every translate inside
/// `[-n, n)^d` has integer coordinates, using anchor-zero slides only.
///
/// For each axis, the grid lines parallel to it through the integer points
/// `{-n, ..., n}` of the other coordinates are visited in order.  All
/// window translates whose cube meets a fixed line share one fractional
/// part on the active axis (orthogonality forces their axis gaps to be
/// integers), so one slide per line lands them on the integer grid.  The
/// applied shifts per axis are chosen from `{-f, 1 - f}` so that their
/// running total stays in `(-1, 1)`; hence no translate moves by a full
/// unit in any coordinate.
pub fn integerize(set: &TranslateSet, n: u32) -> Result<TranslateSet> {
    integerize_steps(set, n, LineOrder::Ascending).map(|(s, _)| s)
}

/// As [`integerize`], also returning the applied moves in order.
pub fn integerize_steps(
    set: &TranslateSet,
    n: u32,
    order: LineOrder,
) -> Result<(TranslateSet, Vec<IntegerizeStep>)> {
    let dim = set.dim();
    // Orthogonality on the verification window certifies it everywhere,
    // which is what licenses the one-fraction-per-line argument below.
    let pre = check_orthogonality(set, &set.verification_window())?;
    if let Some((a, b)) = pre.first() {
        return Err(Error::OrthogonalityViolation {
            first: a.clone(),
            second: b.clone(),
        });
    }
    let window = Window::radius(dim, n);
    let lo = -(i64::from(n));
    let hi = i64::from(n) + 1;
    let mut current = set.clone();
    let mut steps = Vec::new();
    let minus_one = Rational::from_int(-1);
    let one = Rational::one();
    for axis in 0..dim {
        let mut cumulative = Rational::zero();
        let mut pts = current.enumerate_window(&window)?;
        let mut lines = LineGrid::new(dim - 1, lo, hi, order);
        while let Some(line) = lines.next_line() {
            // Lexicographically smallest window translate whose cube meets
            // the line; all translates meeting it carry the same axis
            // fraction under the orthogonality precondition.
            let pick = pts.iter().find(|p| meets_line(p, axis, &line));
            let Some(pick) = pick else { continue };
            let f = pick.coord(axis).fract();
            if f.is_zero() {
                continue;
            }
            // Either candidate lands the class on the integers; take the
            // one that keeps the running total strictly inside (-1, 1).
            let shift = if &cumulative - &f > minus_one {
                -&f
            } else {
                &one - &f
            };
            let spec = SlideSpec {
                axis,
                anchor: Rational::zero(),
                shift,
            };
            current = slide(&current, &spec)?;
            cumulative += &spec.shift;
            debug_assert!(cumulative > minus_one && cumulative < one);
            steps.push(IntegerizeStep {
                axis,
                line,
                spec,
            });
            pts = current.enumerate_window(&window)?;
        }
    }
    #[cfg(debug_assertions)]
    {
        let inner = Window::new(
            (0..dim).map(|_| Rational::from_int(lo)).collect(),
            (0..dim).map(|_| Rational::from_int(i64::from(n))).collect(),
        );
        if let Ok(inner) = inner {
            for p in current.enumerate_window(&inner)? {
                debug_assert!(
                    p.coords().iter().all(Rational::is_integer),
                    "non-integral translate {p} survived integerization"
                );
            }
        }
    }
    Ok((current, steps))
}

/// The cube at `p` meets the axis-parallel line through the integer point
/// `line` exactly when `p_j <= line_j < p_j + 1` on every other axis.
fn meets_line(p: &Point, axis: usize, line: &[i64]) -> bool {
    let mut li = 0;
    for j in 0..p.dim() {
        if j == axis {
            continue;
        }
        let v = Rational::from_int(line[li]);
        li += 1;
        let c = p.coord(j);
        if !(c <= &v && v < c + &Rational::one()) {
            return false;
        }
    }
    true
}

/// Odometer over `{lo, ..., hi-1}^k` in the requested order.
struct LineGrid {
    k: usize,
    lo: i64,
    hi: i64,
    order: LineOrder,
    state: Option<Vec<i64>>,
    started: bool,
}

impl LineGrid {
    fn new(k: usize, lo: i64, hi: i64, order: LineOrder) -> Self {
        LineGrid {
            k,
            lo,
            hi,
            order,
            state: None,
            started: false,
        }
    }

    fn next_line(&mut self) -> Option<Vec<i64>> {
        if !self.started {
            self.started = true;
            let init = match self.order {
                LineOrder::Ascending => self.lo,
                LineOrder::Descending => self.hi - 1,
            };
            self.state = Some(alloc::vec![init; self.k]);
            return self.state.clone();
        }
        let state = self.state.as_mut()?;
        if self.k == 0 {
            self.state = None;
            return None;
        }
        let mut axis = self.k;
        loop {
            if axis == 0 {
                self.state = None;
                return None;
            }
            axis -= 1;
            match self.order {
                LineOrder::Ascending => {
                    state[axis] += 1;
                    if state[axis] < self.hi {
                        break;
                    }
                    state[axis] = self.lo;
                }
                LineOrder::Descending => {
                    state[axis] -= 1;
                    if state[axis] >= self.lo {
                        break;
                    }
                    state[axis] = self.hi - 1;
                }
            }
        }
        self.state.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{check_packing, ViolationKind};
    use crate::tiling::{check_tiling, TilingVerdict};
    use alloc::vec;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn pt(coords: &[&str]) -> Point {
        Point::new(coords.iter().map(|s| rat(s)).collect())
    }

    fn columns_with_shifts() -> TranslateSet {
        // Two columns over period 2: the second shifted by 1/3.
        TranslateSet::periodic(
            2,
            vec![2, 2],
            vec![
                pt(&["0", "0"]),
                pt(&["0", "1"]),
                pt(&["1", "1/3"]),
                pt(&["1", "4/3"]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn anchored_class_stays_put() {
        let set = TranslateSet::periodic(2, vec![1, 1], vec![pt(&["0", "0"])]).unwrap();
        let spec = SlideSpec {
            axis: 0,
            anchor: Rational::zero(),
            shift: rat("1/3"),
        };
        assert_eq!(slide(&set, &spec).unwrap(), set);
    }

    #[test]
    fn unanchored_class_moves() {
        let set = TranslateSet::periodic(2, vec![1, 1], vec![pt(&["0", "0"])]).unwrap();
        let spec = SlideSpec {
            axis: 0,
            anchor: rat("1/2"),
            shift: rat("1/3"),
        };
        let out = slide(&set, &spec).unwrap();
        assert_eq!(out.offsets(), &[pt(&["1/3", "0"])]);
        assert_eq!(check_tiling(&out).unwrap(), TilingVerdict::Tiles);
    }

    #[test]
    fn slide_repairs_shifted_column() {
        // Moving the 1/3-column back to the integers yields a tiling again.
        let set = columns_with_shifts();
        let out = slide(
            &set,
            &SlideSpec {
                axis: 1,
                anchor: Rational::zero(),
                shift: rat("2/3"),
            },
        )
        .unwrap();
        assert_eq!(check_tiling(&out).unwrap(), TilingVerdict::Tiles);
        assert!(out
            .offsets()
            .iter()
            .all(|p| p.coords().iter().all(Rational::is_integer)));
    }

    #[test]
    fn slide_preserves_tiling_and_packing() {
        let set = columns_with_shifts();
        assert_eq!(check_tiling(&set).unwrap(), TilingVerdict::Tiles);
        let out = slide(
            &set,
            &SlideSpec {
                axis: 0,
                anchor: rat("1/5"),
                shift: rat("3/7"),
            },
        )
        .unwrap();
        assert_eq!(check_tiling(&out).unwrap(), TilingVerdict::Tiles);
        let w = out.verification_window();
        let report = check_packing(&out, &w).unwrap();
        assert!(report.is_clean());
        assert_eq!(report.kind, ViolationKind::Overlap);
    }

    #[test]
    fn slide_round_trip_when_everything_moves() {
        // Anchor 1/97 misses every coordinate class, so both slides move
        // the entire set and the second undoes the first.
        let set = columns_with_shifts();
        let a = rat("1/97");
        let b = rat("2/5");
        let once = slide(
            &set,
            &SlideSpec {
                axis: 1,
                anchor: a.clone(),
                shift: b.clone(),
            },
        )
        .unwrap();
        let back = slide(
            &once,
            &SlideSpec {
                axis: 1,
                anchor: &a + &b,
                shift: -&b,
            },
        )
        .unwrap();
        assert_eq!(back, set);
    }

    #[test]
    fn collision_is_reported() {
        let set = TranslateSet::finite(1, vec![pt(&["0"]), pt(&["1/2"])]).unwrap();
        let err = slide(
            &set,
            &SlideSpec {
                axis: 0,
                anchor: Rational::zero(),
                shift: rat("-1/2"),
            },
        )
        .unwrap_err();
        assert_eq!(err, Error::TranslateCollision(pt(&["0"])));
    }

    #[test]
    fn invalid_axis_is_rejected() {
        let set = TranslateSet::finite(1, vec![pt(&["0"])]).unwrap();
        let err = slide(
            &set,
            &SlideSpec {
                axis: 1,
                anchor: Rational::zero(),
                shift: Rational::one(),
            },
        )
        .unwrap_err();
        assert_eq!(err, Error::InvalidAxis { axis: 1, dim: 1 });
    }

    #[test]
    fn keller_shift_aligns_designated_pair() {
        let set = columns_with_shifts();
        let t = pt(&["1", "1/3"]);
        let u = pt(&["0", "0"]);
        // Work on the first axis: rotate the set so the fractional gap sits
        // in coordinate one.  Here t_1 - u_1 = 1 is integral, so the
        // precondition fails.
        assert!(matches!(
            keller_shift(&set, &t, &u),
            Err(Error::IntegerGap { .. })
        ));
        // A set with a fractional first-coordinate gap.
        let set = TranslateSet::periodic(
            2,
            vec![2, 2],
            vec![
                pt(&["0", "0"]),
                pt(&["1", "0"]),
                pt(&["1/3", "1"]),
                pt(&["4/3", "1"]),
            ],
        )
        .unwrap();
        let t = pt(&["1/3", "1"]);
        let u = pt(&["0", "0"]);
        let out = keller_shift(&set, &t, &u).unwrap();
        // The image of t's class now has integer first coordinates.
        assert!(out.offsets().iter().all(|p| p.coord(0).is_integer()));
        assert_eq!(check_tiling(&out).unwrap(), TilingVerdict::Tiles);
    }

    #[test]
    fn keller_shift_validates_membership() {
        let set = TranslateSet::periodic(1, vec![1], vec![pt(&["0"])]).unwrap();
        assert!(matches!(
            keller_shift(&set, &pt(&["1/2"]), &pt(&["0"])),
            Err(Error::NotInSet(_))
        ));
    }

    #[test]
    fn integerize_fixes_integer_sets() {
        let set = TranslateSet::periodic(2, vec![1, 1], vec![pt(&["0", "0"])]).unwrap();
        let (out, steps) = integerize_steps(&set, 3, LineOrder::Ascending).unwrap();
        assert_eq!(out, set);
        assert!(steps.is_empty());
    }

    #[test]
    fn integerize_single_shifted_lattice() {
        let set = TranslateSet::periodic(1, vec![1], vec![pt(&["2/5"])]).unwrap();
        let (out, steps) = integerize_steps(&set, 3, LineOrder::Ascending).unwrap();
        assert_eq!(out.offsets(), &[pt(&["0"])]);
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].spec.shift, rat("-2/5"));
    }

    #[test]
    fn integerize_seven_column_tiling() {
        // Columns x = m with vertical shifts m/7 for m = -3..3 extended
        // periodically with period 7.
        let mut offsets = vec![];
        for m in 0..7i64 {
            offsets.push(Point::new(vec![
                Rational::from_int(m),
                Rational::new(m, 7),
            ]));
        }
        let set = TranslateSet::periodic(2, vec![7, 1], offsets).unwrap();
        assert_eq!(check_tiling(&set).unwrap(), TilingVerdict::Tiles);
        let n = 3;
        let (out, steps) = integerize_steps(&set, n, LineOrder::Ascending).unwrap();
        assert!(!steps.is_empty());
        assert_eq!(check_tiling(&out).unwrap(), TilingVerdict::Tiles);
        let inner = Window::new(
            vec![Rational::from_int(-3), Rational::from_int(-3)],
            vec![Rational::from_int(3), Rational::from_int(3)],
        )
        .unwrap();
        for p in out.enumerate_window(&inner).unwrap() {
            assert!(p.coords().iter().all(Rational::is_integer), "{p}");
        }
    }

    #[test]
    fn integerize_displacement_stays_below_one() {
        // Track each original translate through the recorded slides; no
        // coordinate may move by a full unit or more.
        let mut offsets = vec![];
        for m in 0..5i64 {
            offsets.push(Point::new(vec![
                Rational::from_int(m),
                Rational::new(2 * m, 5),
            ]));
        }
        let set = TranslateSet::periodic(2, vec![5, 1], offsets).unwrap();
        let (out, steps) = integerize_steps(&set, 3, LineOrder::Ascending).unwrap();
        let one = Rational::one();
        for start in set.offsets() {
            let mut p = start.clone();
            for step in &steps {
                if !(p.coord(step.spec.axis) - &step.spec.anchor).is_integer() {
                    p = p.axis_shifted(step.spec.axis, &step.spec.shift);
                }
            }
            let moved = p.sub(start);
            assert!(
                moved.coords().iter().all(|c| c.abs() < one),
                "{start} moved by {moved}"
            );
            assert!(out.contains_translate(&p), "{p} missing from image");
        }
    }

    #[test]
    fn integerize_rejects_non_orthogonal_input() {
        let set = TranslateSet::finite(1, vec![pt(&["0"]), pt(&["1/2"])]).unwrap();
        assert!(matches!(
            integerize(&set, 2),
            Err(Error::OrthogonalityViolation { .. })
        ));
    }

    #[test]
    fn line_order_variants_both_integerize() {
        let set = columns_with_shifts();
        for order in [LineOrder::Ascending, LineOrder::Descending] {
            let (out, _) = integerize_steps(&set, 3, order).unwrap();
            let inner = Window::new(
                vec![Rational::from_int(-3), Rational::from_int(-3)],
                vec![Rational::from_int(3), Rational::from_int(3)],
            )
            .unwrap();
            for p in out.enumerate_window(&inner).unwrap() {
                assert!(p.coords().iter().all(Rational::is_integer));
            }
        }
    }
}
