//! Points of `R^d` with exact rational coordinates.

use crate::rational::Rational;
use alloc::vec::Vec;
use core::fmt;

/// A translate, i.e. the lower corner of a half-open unit cube
/// `[t_1, t_1 + 1) x ... x [t_d, t_d + 1)`.
///
/// Ordering is lexicographic on the coordinates; canonical sets and witness
/// reports rely on it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| Rational::from_int(c)).collect())
    }

    /// Origin of `R^d`.
    pub fn origin(dim: usize) -> Self {
        Point((0..dim).map(|_| Rational::zero()).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coord(&self, axis: usize) -> &Rational {
        &self.0[axis]
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    /// Componentwise sum.  Panics on dimension mismatch; public entry points
    /// validate dimensions before arithmetic.
    pub fn add(&self, rhs: &Point) -> Point {
        assert_eq!(self.dim(), rhs.dim());
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference.  Panics on dimension mismatch.
    pub fn sub(&self, rhs: &Point) -> Point {
        assert_eq!(self.dim(), rhs.dim());
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }

    /// Copy with `shift` added to one coordinate.
    pub fn axis_shifted(&self, axis: usize, shift: &Rational) -> Point {
        let mut coords = self.0.clone();
        coords[axis] = &coords[axis] + shift;
        Point(coords)
    }

    /// Componentwise fractional parts, each in `[0, 1)`.
    pub fn fract(&self) -> Point {
        Point(self.0.iter().map(Rational::fract).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn display_is_tuple_form() {
        let p = Point::new(alloc::vec![Rational::new(1, 2), Rational::from_int(-3)]);
        assert_eq!(p.to_string(), "(1/2, -3)");
    }

    #[test]
    fn lexicographic_order() {
        let a = Point::from_ints(&[0, 5]);
        let b = Point::from_ints(&[1, -5]);
        assert!(a < b);
        let c = Point::new(alloc::vec![Rational::zero(), Rational::new(11, 2)]);
        assert!(a < c);
    }

    #[test]
    fn arithmetic_is_componentwise() {
        let a = Point::from_ints(&[1, 2]);
        let b = Point::new(alloc::vec![Rational::new(1, 2), Rational::new(-1, 3)]);
        let s = a.add(&b);
        assert_eq!(s, Point::new(alloc::vec![Rational::new(3, 2), Rational::new(5, 3)]));
        assert_eq!(s.sub(&b), a);
    }

    #[test]
    fn fract_reduces_each_coordinate() {
        let p = Point::new(alloc::vec![Rational::new(-1, 2), Rational::from_int(7)]);
        assert_eq!(p.fract(), Point::new(alloc::vec![Rational::new(1, 2), Rational::zero()]));
    }
}
