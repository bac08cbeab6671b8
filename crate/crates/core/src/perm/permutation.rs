use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` stored as its image list.
///
/// Permutations act on the right: `x^g` is written `g.image(x)`, and the
/// product `a * b` first applies `a`, then `b`, so `x^(ab) = (x^a)^b`.
/// Every routine in the crate uses this convention.
///
/// The derived ordering compares image lists lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images<I>(images: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let images: Vec<u32> = images.into_iter().map(|x| x as u32).collect();
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotABijection { degree: n });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Trusted constructor for image lists produced inside the crate.
    pub(crate) fn from_vec_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.iter().map(|&x| x as usize)).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles. One-cycles are allowed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if touched[x] {
                    return Err(Error::NotABijection { degree });
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `x^self`.
    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Product `self * other`, mapping `x` to `other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Permutation) -> Permutation {
        let images = self
            .images
            .iter()
            .map(|&x| other.images[x as usize])
            .collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        // x -> other(self(other^-1(x)))
        let mut images = vec![0u32; self.images.len()];
        for (x, &y) in other.images.iter().enumerate() {
            images[y as usize] = other.images[self.images[x] as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Order of the permutation as the lcm of its cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycles()
            .iter()
            .fold(1u128, |acc, c| lcm(acc, c.len() as u128))
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.image(x) == x
    }

    pub fn least_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i)
    }

    /// Image of a point set, returned sorted.
    pub fn apply_to_set(&self, set: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = set.iter().map(|&x| self.images[x as usize]).collect();
        out.sort_unstable();
        out
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on a degree mismatch; use [`Permutation::compose`] for the
    /// checked form.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("permutation degrees differ")
    }
}

impl fmt::Display for Permutation {
    /// Disjoint-cycle notation; the identity prints as `()`.
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
