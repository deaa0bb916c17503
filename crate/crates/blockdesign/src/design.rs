//! Designs as collections of k-subsets of `1..=v`, built from group orbits
//! and verified exhaustively.
//!
//! Blocks are stored as bit masks (`v <= 64`), kept sorted in the
//! lexicographic order of their sorted point tuples; that order is also the
//! line order of the design file format.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::group::{binomial, PermGroup};
use crate::perm::Permutation;

pub const MAX_POINTS: usize = 64;

/// Compares two point-set masks by their sorted point tuples.
pub fn lex_cmp_masks(a: u64, b: u64) -> Ordering {
    let (mut x, mut y) = (a, b);
    while x != 0 && y != 0 {
        let i = x.trailing_zeros();
        let j = y.trailing_zeros();
        match i.cmp(&j) {
            Ordering::Equal => {
                x &= x - 1;
                y &= y - 1;
            }
            other => return other,
        }
    }
    x.count_ones().cmp(&y.count_ones())
}

pub fn mask_from_points(points: &[usize], v: usize) -> Result<u64> {
    let mut mask = 0u64;
    for &p in points {
        if p == 0 || p > v {
            return Err(Error::PointOutOfRange {
                point: p,
                degree: v,
            });
        }
        if mask & (1 << (p - 1)) != 0 {
            return Err(Error::InvalidArgument(format!("repeated point {}", p)));
        }
        mask |= 1 << (p - 1);
    }
    Ok(mask)
}

pub fn points_from_mask(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize + 1);
        m &= m - 1;
    }
    out
}

/// Verified parameters of a t-design.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DesignParams {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub lambda: u64,
    pub t: u64,
}

impl DesignParams {
    /// For t = 3: `b = lambda v(v-1)(v-2) / (k(k-1)(k-2))` and `r = bk / v`,
    /// with non-integral values reported as infeasible rather than invalid.
    pub fn derive(v: u64, k: u64, lambda: u64) -> Result<DesignParams> {
        if !(3 < k && k < v) {
            return Err(Error::InvalidArgument(format!(
                "need t < k < v with t=3, got v={} k={}",
                v, k
            )));
        }
        let num = lambda
            .checked_mul(v)
            .and_then(|x| x.checked_mul(v - 1))
            .and_then(|x| x.checked_mul(v - 2))
            .ok_or_else(|| Error::InvalidArgument("parameter overflow".into()))?;
        let den = k * (k - 1) * (k - 2);
        if num % den != 0 {
            return Err(Error::InfeasibleParameters {
                v,
                k,
                lambda,
                reason: format!("block count {}/{} is not an integer", num, den),
            });
        }
        let b = num / den;
        if !(b * k).is_multiple_of(v) {
            return Err(Error::InfeasibleParameters {
                v,
                k,
                lambda,
                reason: format!("replication number {}/{} is not an integer", b * k, v),
            });
        }
        Ok(DesignParams {
            v,
            b,
            r: b * k / v,
            k,
            lambda,
            t: 3,
        })
    }

    /// `vr = bk` and `lambda C(v,t) = b C(k,t)`.
    pub fn identities_hold(&self) -> bool {
        self.v * self.r == self.b * self.k
            && self.lambda * binomial(self.v, self.t) == self.b * binomial(self.k, self.t)
    }

    /// `t < k < v - 1`.
    pub fn is_nontrivial(&self) -> bool {
        self.t < self.k && self.k < self.v - 1
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-({},{},{})", self.t, self.v, self.k, self.lambda)
    }
}

/// Outcome of exhaustive verification.
#[derive(Clone, Debug)]
pub enum Verification {
    Design(DesignParams),
    /// Witness pair of t-subsets with differing block counts.
    NotDesign {
        t: u64,
        low_subset: Vec<usize>,
        low_count: u64,
        high_subset: Vec<usize>,
        high_count: u64,
    },
}

impl Verification {
    pub fn params(&self) -> Option<DesignParams> {
        match self {
            Verification::Design(p) => Some(*p),
            Verification::NotDesign { .. } => None,
        }
    }
}

/// A simple design: no repeated blocks, every block of size k.
#[derive(Clone)]
pub struct Design {
    v: usize,
    k: usize,
    blocks: Vec<u64>,
    verified: Option<DesignParams>,
}

impl PartialEq for Design {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.k == other.k && self.blocks == other.blocks
    }
}

impl Eq for Design {}

impl Design {
    pub fn new(v: usize, k: usize, blocks: &[Vec<usize>]) -> Result<Design> {
        let masks = blocks
            .iter()
            .map(|b| mask_from_points(b, v))
            .collect::<Result<Vec<u64>>>()?;
        Design::from_masks(v, k, masks)
    }

    pub fn from_masks(v: usize, k: usize, mut masks: Vec<u64>) -> Result<Design> {
        if v == 0 || v > MAX_POINTS {
            return Err(Error::InvalidArgument(format!(
                "point count {} outside 1..={}",
                v, MAX_POINTS
            )));
        }
        if k == 0 || k > v {
            return Err(Error::InvalidArgument(format!(
                "block size {} outside 1..={}",
                k, v
            )));
        }
        let full: u64 = if v == 64 { !0 } else { (1 << v) - 1 };
        for &m in &masks {
            if m & !full != 0 {
                return Err(Error::InvalidArgument("block outside point set".into()));
            }
            if m.count_ones() as usize != k {
                return Err(Error::InvalidArgument(format!(
                    "block {:?} does not have size {}",
                    points_from_mask(m),
                    k
                )));
            }
        }
        masks.sort_by(|a, b| lex_cmp_masks(*a, *b));
        masks.dedup();
        Ok(Design {
            v,
            k,
            blocks: masks,
            verified: None,
        })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn block_points(&self, index: usize) -> Vec<usize> {
        points_from_mask(self.blocks[index])
    }

    pub fn verified_params(&self) -> Option<DesignParams> {
        self.verified
    }

    /// Exhaustively counts, for every t-subset of the points, the number of
    /// blocks containing it. Returns the parameters iff the count is
    /// constant, with a witness pair otherwise.
    pub fn verify(&self, t: usize) -> Result<Verification> {
        if t == 0 || t > self.v {
            return Err(Error::InvalidArgument(format!(
                "t={} outside 1..={}",
                t, self.v
            )));
        }
        let mut low: Option<(u64, u64)> = None; // (count, subset mask)
        let mut high: Option<(u64, u64)> = None;
        for subset in (1..=self.v).combinations(t) {
            let mask = mask_from_points(&subset, self.v)?;
            let count = self.blocks.iter().filter(|&&b| b & mask == mask).count() as u64;
            if low.is_none_or(|(c, _)| count < c) {
                low = Some((count, mask));
            }
            if high.is_none_or(|(c, _)| count > c) {
                high = Some((count, mask));
            }
        }
        let (low_count, low_mask) = low.unwrap();
        let (high_count, high_mask) = high.unwrap();
        if low_count != high_count {
            return Ok(Verification::NotDesign {
                t: t as u64,
                low_subset: points_from_mask(low_mask),
                low_count,
                high_subset: points_from_mask(high_mask),
                high_count,
            });
        }

        let b = self.blocks.len() as u64;
        // Every point lies in the same number of blocks once the t-subset
        // counts are constant; recount directly rather than trusting that.
        let mut r = 0u64;
        for p in 1..=self.v {
            let mask = 1u64 << (p - 1);
            let count = self.blocks.iter().filter(|&&blk| blk & mask != 0).count() as u64;
            if p == 1 {
                r = count;
            } else if count != r {
                return Ok(Verification::NotDesign {
                    t: 1,
                    low_subset: vec![1],
                    low_count: r,
                    high_subset: vec![p],
                    high_count: count,
                });
            }
        }
        let params = DesignParams {
            v: self.v as u64,
            b,
            r,
            k: self.k as u64,
            lambda: low_count,
            t: t as u64,
        };
        assert!(params.identities_hold(), "double-count identities violated");
        Ok(Verification::Design(params))
    }

    /// Verifies and records the parameters on success.
    pub fn verify_and_record(&mut self, t: usize) -> Result<Verification> {
        let outcome = self.verify(t)?;
        if let Verification::Design(p) = &outcome {
            self.verified = Some(*p);
        }
        Ok(outcome)
    }

    /// All blocks through a point.
    pub fn pencil(&self, point: usize) -> Result<Pencil> {
        if point == 0 || point > self.v {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.v,
            });
        }
        let mask = 1u64 << (point - 1);
        Ok(Pencil {
            point,
            block_indices: (0..self.blocks.len())
                .filter(|&i| self.blocks[i] & mask != 0)
                .collect(),
        })
    }

    /// The design with every block mapped through `sigma`.
    pub fn relabel(&self, sigma: &Permutation) -> Result<Design> {
        if sigma.degree() != self.v {
            return Err(Error::DegreeMismatch {
                expected: self.v,
                found: sigma.degree(),
            });
        }
        let masks = self.blocks.iter().map(|&b| sigma.apply_mask(b)).collect();
        Design::from_masks(self.v, self.k, masks)
    }

    /// Multiset of `|B intersect B'|` over unordered block pairs, as a
    /// histogram indexed by intersection size. Isomorphism-invariant.
    pub fn intersection_histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.k + 1];
        for i in 0..self.blocks.len() {
            for j in (i + 1)..self.blocks.len() {
                hist[(self.blocks[i] & self.blocks[j]).count_ones() as usize] += 1;
            }
        }
        hist
    }

    /// Serializes to the design file format: first line `v k`, then one
    /// block per line as space-separated sorted points, lines in
    /// lexicographic order of the point tuples.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.v, self.k);
        for &b in &self.blocks {
            let points = points_from_mask(b);
            let line = points
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Design> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty design file"))?;
        let mut parts = header.split_whitespace();
        let v: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(1, 1, "expected `v k` header"))?;
        let k: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(1, 1, "expected `v k` header"))?;
        if parts.next().is_some() {
            return Err(Error::parse(1, 1, "trailing tokens after `v k` header"));
        }
        let mut blocks = Vec::new();
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut points = Vec::new();
            for (col, token) in line.split_whitespace().enumerate() {
                let p: usize = token.parse().map_err(|_| {
                    Error::parse(idx + 1, col + 1, format!("bad point {:?}", token))
                })?;
                points.push(p);
            }
            blocks.push(points);
        }
        Design::new(v, k, &blocks)
    }
}

impl fmt::Debug for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Design(v={}, k={}, b={})",
            self.v,
            self.k,
            self.blocks.len()
        )
    }
}

/// The blocks through a fixed point.
#[derive(Clone, Debug)]
pub struct Pencil {
    pub point: usize,
    pub block_indices: Vec<usize>,
}

impl Pencil {
    pub fn size(&self) -> usize {
        self.block_indices.len()
    }
}

/// Orbit of a base block under a group; the resulting design is
/// block-transitive under that group by construction.
pub fn block_orbit(g: &PermGroup, base_block: &[usize]) -> Result<Design> {
    let v = g.degree();
    if v > MAX_POINTS {
        return Err(Error::InvalidArgument(format!(
            "degree {} exceeds {}",
            v, MAX_POINTS
        )));
    }
    if base_block.is_empty() {
        return Err(Error::InvalidArgument("empty base block".into()));
    }
    let start = mask_from_points(base_block, v)?;
    let mut seen: HashSet<u64> = HashSet::new();
    seen.insert(start);
    let mut queue = vec![start];
    while let Some(mask) = queue.pop() {
        for gen in g.generators() {
            let image = gen.apply_mask(mask);
            if seen.insert(image) {
                queue.push(image);
            }
        }
    }
    Design::from_masks(v, base_block.len(), seen.into_iter().collect())
}

/// Closure of a design's block set under a (possibly larger) group: the
/// union of the orbits of its blocks.
pub fn orbit_closure(g: &PermGroup, d: &Design) -> Result<Design> {
    if g.degree() != d.v() {
        return Err(Error::DegreeMismatch {
            expected: d.v(),
            found: g.degree(),
        });
    }
    let mut seen: HashSet<u64> = d.blocks().iter().copied().collect();
    let mut queue: Vec<u64> = d.blocks().to_vec();
    while let Some(mask) = queue.pop() {
        for gen in g.generators() {
            let image = gen.apply_mask(mask);
            if seen.insert(image) {
                queue.push(image);
            }
        }
    }
    Design::from_masks(d.v(), d.k(), seen.into_iter().collect())
}

/// Points and planes of the d-dimensional binary affine space: point `i`
/// is the vector with the bits of `i - 1`, and the blocks are exactly the
/// 4-subsets whose vectors sum to zero. Verifies as 3-(2^d, 4, 1).
pub fn affine_planes_gf2(dim: usize) -> Result<Design> {
    if !(3..=6).contains(&dim) {
        return Err(Error::InvalidArgument(format!(
            "dimension {} outside 3..=6",
            dim
        )));
    }
    let v = 1usize << dim;
    let mut blocks = Vec::new();
    for i in 1..=v {
        for j in (i + 1)..=v {
            for l in (j + 1)..=v {
                let m = (i - 1) ^ (j - 1) ^ (l - 1);
                let p = m + 1;
                if p > l {
                    blocks.push(vec![i, j, l, p]);
                }
            }
        }
    }
    Design::new(v, 4, &blocks)
}

/// All k-subsets of `1..=v`; a trivial (complete) design, handy as a test
/// oracle since its lambda values are binomial coefficients.
pub fn complete_design(v: usize, k: usize) -> Result<Design> {
    let blocks: Vec<Vec<usize>> = (1..=v).combinations(k).collect();
    Design::new(v, k, &blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lex_order_matches_point_tuples() {
        let a = mask_from_points(&[1, 4], 8).unwrap();
        let b = mask_from_points(&[2, 3], 8).unwrap();
        assert_eq!(lex_cmp_masks(a, b), Ordering::Less);
        assert_eq!(lex_cmp_masks(b, a), Ordering::Greater);
        assert_eq!(lex_cmp_masks(a, a), Ordering::Equal);
    }

    #[test]
    fn affine_planes_dim3() {
        let d = affine_planes_gf2(3).unwrap();
        assert_eq!(d.num_blocks(), 14);
        match d.verify(3).unwrap() {
            Verification::Design(p) => {
                assert_eq!((p.v, p.b, p.r, p.k, p.lambda), (8, 14, 7, 4, 1));
                assert!(p.is_nontrivial());
            }
            other => panic!("expected design, got {:?}", other),
        }
        // 56 triples, each in exactly one block.
        assert_eq!(binomial(8, 3), 56);
    }

    #[test]
    fn affine_planes_dim4() {
        let d = affine_planes_gf2(4).unwrap();
        assert_eq!(d.num_blocks(), 140);
        let p = d.verify(3).unwrap().params().unwrap();
        assert_eq!(p.lambda, 1);
        assert_eq!(p.b, 140);
    }

    #[test]
    fn complete_design_lambda() {
        let d = complete_design(6, 4).unwrap();
        let p = d.verify(3).unwrap().params().unwrap();
        assert_eq!(p.lambda, 3); // C(v-3, k-3) = C(3,1)

        // k = v - 1 is trivial by definition, but still verifies.
        let d = complete_design(7, 6).unwrap();
        let p = d.verify(3).unwrap().params().unwrap();
        assert_eq!(p.lambda, 4);
        assert!(!p.is_nontrivial());
    }

    #[test]
    fn single_block_design() {
        let d = Design::new(8, 6, &[vec![1, 2, 3, 4, 5, 6]]).unwrap();
        assert_eq!(d.pencil(1).unwrap().size(), 1);
        assert_eq!(d.pencil(7).unwrap().size(), 0);
        match d.verify(3).unwrap() {
            Verification::NotDesign {
                low_count,
                high_count,
                ..
            } => {
                assert_eq!(low_count, 0);
                assert_eq!(high_count, 1);
            }
            other => panic!("expected failure report, got {:?}", other),
        }
    }

    #[test]
    fn derive_params_examples() {
        let p = DesignParams::derive(16, 6, 140).unwrap();
        assert_eq!((p.b, p.r), (3920, 1470));
        let p = DesignParams::derive(8, 4, 1).unwrap();
        assert_eq!((p.b, p.r), (14, 7));
        match DesignParams::derive(16, 6, 1) {
            Err(Error::InfeasibleParameters { .. }) => {}
            other => panic!("expected infeasible, got {:?}", other.map(|p| p.b)),
        }
    }

    #[test]
    fn block_orbit_under_cyclic_group() {
        let c8 = PermGroup::cyclic(8);
        let d = block_orbit(&c8, &[1, 2]).unwrap();
        assert_eq!(d.num_blocks(), 8);
        let trivial = PermGroup::trivial(8);
        assert_eq!(block_orbit(&trivial, &[2, 5, 7]).unwrap().num_blocks(), 1);
    }

    #[test]
    fn wreath_product_design() {
        let g = crate::catalog::wreath_product_imprimitive(8, 2).unwrap();
        let d = block_orbit(&g, &[1, 2, 3, 4, 9, 10]).unwrap();
        assert_eq!(d.num_blocks(), 3920);
        let p = d.verify(3).unwrap().params().unwrap();
        assert_eq!((p.lambda, p.b, p.r), (140, 3920, 1470));
        assert!(p.is_nontrivial());
        // every block meets the classes {1..8}, {9..16} in sizes {4,2}
        let class1: u64 = 0x00ff;
        for &b in d.blocks() {
            let mut sizes = [(b & class1).count_ones(), (b & (class1 << 8)).count_ones()];
            sizes.sort_unstable();
            assert_eq!(sizes, [2, 4]);
        }
        // double count: sum over blocks of C(k,3) equals lambda * C(v,3)
        assert_eq!(3920 * binomial(6, 3), 140 * binomial(16, 3));
        // pencil size equals r
        assert_eq!(d.pencil(1).unwrap().size(), 1470);
        assert_eq!(d.pencil(16).unwrap().size(), 1470);
    }

    #[test]
    fn subdegrees_of_the_wreath_product() {
        let g = crate::catalog::wreath_product_imprimitive(8, 2).unwrap();
        let profile = g.subdegrees(1).unwrap();
        assert_eq!(profile.orbit_sizes, vec![1, 7, 8]);
        assert_eq!(profile.rank(), 3);
        let other = g.subdegrees(11).unwrap();
        assert_eq!(other.orbit_sizes, vec![1, 7, 8]);
        assert!(!g.is_t_homogeneous(2).unwrap());
        assert!(g.is_t_homogeneous(1).unwrap());
        // orbit-stabilizer check at full scale
        let stab = g.point_stabilizer(1).unwrap();
        assert_eq!(stab.order(), 203_212_800);
    }

    /// Counting pairs inside a stabilizer orbit through the pencil of a
    /// point: for a 3-design, sum over blocks through alpha of
    /// C(|B intersect Gamma|, 2) equals lambda * C(|Gamma|, 2) for every
    /// orbit Gamma of the stabilizer of alpha.
    #[test]
    fn pencil_orbit_counting_identity() {
        let g = crate::catalog::wreath_product_imprimitive(8, 2).unwrap();
        let d = block_orbit(&g, &[1, 2, 3, 4, 9, 10]).unwrap();
        let lambda = 140u64;
        let stab = g.point_stabilizer(1).unwrap();
        let pencil = d.pencil(1).unwrap();
        for orbit in stab.orbits() {
            if orbit == vec![1] {
                continue;
            }
            let gamma = mask_from_points(&orbit, 16).unwrap();
            let total: u64 = pencil
                .block_indices
                .iter()
                .map(|&i| {
                    let mu = (d.blocks()[i] & gamma).count_ones() as u64;
                    mu * (mu - 1) / 2
                })
                .sum();
            let dsize = orbit.len() as u64;
            assert_eq!(total, lambda * dsize * (dsize - 1) / 2);
        }
    }

    #[test]
    fn block_orbit_commutes_with_conjugation() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g = crate::catalog::wreath_product_imprimitive(2, 3).unwrap();
        let base = [1usize, 3, 5];
        let d = block_orbit(&g, &base).unwrap();
        for _ in 0..10 {
            let mut images: Vec<usize> = (1..=6).collect();
            images.shuffle(&mut rng);
            let sigma = Permutation::from_images(images).unwrap();
            let conj_gens: Vec<Permutation> = g
                .generators()
                .iter()
                .map(|x| sigma.compose(x).compose(&sigma.inverse()))
                .collect();
            let conj = PermGroup::new(conj_gens).unwrap();
            let moved_base =
                points_from_mask(sigma.apply_mask(mask_from_points(&base, 6).unwrap()));
            let lhs = block_orbit(&conj, &moved_base).unwrap();
            assert_eq!(lhs, d.relabel(&sigma).unwrap());
        }
    }

    /// Independent oracle for `verify`: a dense 0/1 incidence matrix and
    /// explicit loops, no bit masks anywhere in the counting path.
    fn dense_recount(d: &Design, t: usize) -> Option<(u64, u64, u64)> {
        let (v, b) = (d.v(), d.num_blocks());
        let mut incidence = vec![vec![false; b]; v];
        for (bi, _) in d.blocks().iter().enumerate() {
            for p in d.block_points(bi) {
                incidence[p - 1][bi] = true;
            }
        }
        let mut lambda: Option<u64> = None;
        for subset in (0..v).combinations(t) {
            let count = (0..b)
                .filter(|&bi| subset.iter().all(|&p| incidence[p][bi]))
                .count() as u64;
            match lambda {
                None => lambda = Some(count),
                Some(l) if l != count => return None,
                _ => {}
            }
        }
        let r = (0..b).filter(|&bi| incidence[0][bi]).count() as u64;
        Some((lambda.unwrap(), b as u64, r))
    }

    #[test]
    fn verify_agrees_with_dense_incidence_recount() {
        let wreath = {
            let g = crate::catalog::wreath_product_imprimitive(8, 2).unwrap();
            block_orbit(&g, &[1, 2, 3, 4, 9, 10]).unwrap()
        };
        let fixtures = vec![
            affine_planes_gf2(3).unwrap(),
            affine_planes_gf2(4).unwrap(),
            complete_design(7, 4).unwrap(),
            wreath,
            Design::new(8, 6, &[vec![1, 2, 3, 4, 5, 6]]).unwrap(),
        ];
        for d in &fixtures {
            let via_verify = match d.verify(3).unwrap() {
                Verification::Design(p) => Some((p.lambda, p.b, p.r)),
                Verification::NotDesign { .. } => None,
            };
            assert_eq!(via_verify, dense_recount(d, 3), "{:?}", d);
        }
    }

    #[test]
    fn verify_and_record_stores_parameters() {
        let mut d = affine_planes_gf2(3).unwrap();
        assert!(d.verified_params().is_none());
        d.verify_and_record(3).unwrap();
        let p = d.verified_params().unwrap();
        assert_eq!((p.t, p.lambda), (3, 1));
    }

    #[test]
    fn intersection_histogram_is_relabeling_invariant() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let d = affine_planes_gf2(4).unwrap();
        let hist = d.intersection_histogram();
        for _ in 0..10 {
            let mut images: Vec<usize> = (1..=16).collect();
            images.shuffle(&mut rng);
            let sigma = Permutation::from_images(images).unwrap();
            assert_eq!(d.relabel(&sigma).unwrap().intersection_histogram(), hist);
        }
    }

    #[test]
    fn file_roundtrip_and_order() {
        let d = affine_planes_gf2(3).unwrap();
        let text = d.to_text();
        assert!(text.starts_with("8 4\n"));
        let parsed = Design::parse(&text).unwrap();
        assert_eq!(parsed, d);
        // lines after the header are sorted
        let lines: Vec<&str> = text.lines().skip(1).collect();
        let mut sorted = lines.clone();
        sorted.sort_by(|a, b| {
            let pa: Vec<usize> = a.split_whitespace().map(|x| x.parse().unwrap()).collect();
            let pb: Vec<usize> = b.split_whitespace().map(|x| x.parse().unwrap()).collect();
            pa.cmp(&pb)
        });
        assert_eq!(lines, sorted);
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(
            Design::parse(""),
            Err(Error::Parse { line: 1, .. })
        ));
        match Design::parse("8 4\n1 2 3 x\n") {
            Err(Error::Parse {
                line: 2, column, ..
            }) => assert_eq!(column, 4),
            other => panic!("unexpected {:?}", other.map(|d| d.num_blocks())),
        }
        assert!(Design::parse("8 4\n1 2 3\n").is_err()); // wrong block size
    }

    proptest! {
        #[test]
        fn mask_lex_agrees_with_tuple_order(
            a in proptest::collection::btree_set(1usize..=12, 1..=4),
            b in proptest::collection::btree_set(1usize..=12, 1..=4),
        ) {
            let va: Vec<usize> = a.iter().copied().collect();
            let vb: Vec<usize> = b.iter().copied().collect();
            let ma = mask_from_points(&va, 12).unwrap();
            let mb = mask_from_points(&vb, 12).unwrap();
            prop_assert_eq!(lex_cmp_masks(ma, mb), va.cmp(&vb));
        }
    }
}
