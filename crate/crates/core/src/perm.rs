//! Permutations of `{0, .., n-1}` acting on the right.
//!
//! Products are read left to right: `p * q` first applies `p`, then `q`, so
//! `x^(pq) = (x^p)^q`. Conjugation follows the same convention,
//! `p^x = x^-1 p x`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use crate::Error;

/// A point of a permutation domain.
pub type Point = u32;

/// A bijection on `{0, .., degree-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<Point>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as Point).collect(),
        }
    }

    /// Builds a permutation from its image list, checking that it is a bijection.
    pub fn from_images(images: Vec<Point>) -> Result<Self, Error> {
        let n = images.len();
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        let mut seen = alloc::vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotABijection);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<Point>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[Point]]) -> Result<Self, Error> {
        let mut images: Vec<Point> = (0..degree as Point).collect();
        let mut touched = alloc::vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                if x as usize >= degree || next as usize >= degree {
                    return Err(Error::PointOutOfRange {
                        point: x.max(next),
                        degree,
                    });
                }
                if touched[x as usize] {
                    return Err(Error::NotABijection);
                }
                touched[x as usize] = true;
                images[x as usize] = next;
            }
        }
        Permutation::from_images(images)
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
    /// Points may be separated by spaces or commas.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self, Error> {
        let mut cycles: Vec<Vec<Point>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(String::from(rest)))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(String::from(rest)))?;
            let mut cycle = Vec::new();
            for tok in body[..close].split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let x: Point = tok.parse().map_err(|_| Error::Parse(String::from(tok)))?;
                cycle.push(x);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        let refs: Vec<&[Point]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &refs)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: Point) -> Point {
        self.images[x as usize]
    }

    #[inline]
    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as Point == x)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, Error> {
        check_degree(self.degree(), other.degree())?;
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// In-place `self := self * other`.
    #[inline]
    pub(crate) fn mul_assign_unchecked(&mut self, other: &Permutation) {
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as Point;
        }
        Permutation { images: inv }
    }

    /// `x^-1 * self * x`.
    pub fn conjugate(&self, x: &Permutation) -> Result<Permutation, Error> {
        check_degree(self.degree(), x.degree())?;
        Ok(self.conjugate_unchecked(x))
    }

    pub(crate) fn conjugate_unchecked(&self, x: &Permutation) -> Permutation {
        // i^(x^-1 p x): the image of x(i) is x(p(i)).
        let mut images = alloc::vec![0; self.degree()];
        for (i, &pi) in self.images.iter().enumerate() {
            images[x.images[i] as usize] = x.images[pi as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc.mul_assign_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let n = self.degree();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as Point);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Length of the cycle through `x`.
    pub fn cycle_length(&self, x: Point) -> usize {
        let mut len = 1;
        let mut y = self.image(x);
        while y != x {
            y = self.image(y);
            len += 1;
        }
        len
    }

    pub fn order(&self) -> u128 {
        self.cycles()
            .iter()
            .fold(1u128, |acc, c| lcm(acc, c.len() as u128))
    }

    pub fn smallest_moved_point(&self) -> Option<Point> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as Point != x)
            .map(|(i, _)| i as Point)
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// The permutation induced on `start..start+len`, which must be invariant.
    pub fn restrict(&self, start: usize, len: usize) -> Result<Permutation, Error> {
        let mut images = Vec::with_capacity(len);
        for x in start..start + len {
            let y = self.images[x] as usize;
            if y < start || y >= start + len {
                return Err(Error::NotInvariant);
            }
            images.push((y - start) as Point);
        }
        Ok(Permutation { images })
    }

    /// The permutation induced on the union of the given disjoint ranges,
    /// renumbered consecutively in the order given.
    pub fn restrict_to_ranges(&self, ranges: &[(usize, usize)]) -> Result<Permutation, Error> {
        let mut local = alloc::collections::BTreeMap::new();
        let mut next = 0u32;
        for &(start, len) in ranges {
            for x in start..start + len {
                local.insert(x as Point, next);
                next += 1;
            }
        }
        let mut images = Vec::with_capacity(next as usize);
        for &(start, len) in ranges {
            for x in start..start + len {
                let y = self.images[x];
                images.push(*local.get(&y).ok_or(Error::NotInvariant)?);
            }
        }
        Ok(Permutation { images })
    }

    /// Places `self` on points `offset..offset+degree` of a larger domain.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<Point> = (0..degree as Point).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = x + offset as Point;
        }
        Permutation { images }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on degree mismatch; use [`Permutation::compose`] to get an error instead.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "permutation degree mismatch");
        self.mul_unchecked(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

pub(crate) fn check_degree(left: usize, right: usize) -> Result<(), Error> {
    if left != right {
        Err(Error::DegreeMismatch { left, right })
    } else {
        Ok(())
    }
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
