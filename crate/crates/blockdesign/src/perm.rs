//! Permutations of the points `1..=n`.
//!
//! Points are 1-based everywhere in the public interface, matching the
//! catalog and design file formats.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    /// `images[i]` is the image of point `i + 1`, itself in `1..=n`.
    images: Vec<usize>,
}

impl Permutation {
    /// The identity permutation on `1..=degree`.
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (1..=degree).collect(),
        }
    }

    /// Builds a permutation from a 1-based image sequence, validating that
    /// it is a bijection on `1..=images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty image sequence".into()));
        }
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            if x == 0 || x > n {
                return Err(Error::InvalidPermutation(format!(
                    "image of {} is {}, outside 1..={}",
                    i + 1,
                    x,
                    n
                )));
            }
            if seen[x - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "image {} occurs more than once",
                    x
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of degree `degree` from disjoint cycles of
    /// 1-based points. Points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let from = cycle[window];
                let to = cycle[(window + 1) % cycle.len()];
                if from == 0 || from > degree {
                    return Err(Error::PointOutOfRange {
                        point: from,
                        degree,
                    });
                }
                if moved[from - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} occurs in two cycles",
                        from
                    )));
                }
                moved[from - 1] = true;
                images[from - 1] = to;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1]
    }

    /// The full 1-based image sequence.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Smallest point moved by this permutation, if any.
    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| x != i + 1)
            .map(|(i, _)| i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Function composition: `(a.compose(b)).image(x) == a.image(b.image(x))`,
    /// i.e. `b` acts first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x - 1]).collect(),
        }
    }

    /// Image of a point set given as a bit mask (bit `p - 1` set for point `p`).
    /// Only meaningful for degrees up to 64.
    pub fn apply_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            out |= 1u64 << (self.images[i] - 1);
            m &= m - 1;
        }
        out
    }

    /// Cycle decomposition on 1-based points, omitting fixed points.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p - 1] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]", self)
    }
}
