//! Isomorphism classification of designs on up to 24 points.
//!
//! Canonical forms are computed by individualization-refinement: points are
//! first colored by (pencil size, multiset of pairwise block intersections
//! through the point), the ordered partition is refined by block-incidence
//! profiles, and the search branches on the smallest non-singleton cell.
//! Discovered automorphisms prune sibling branches (points in one orbit of
//! the stabilizer of the current prefix lead to the same leaves), and when
//! a leaf reproduces the best labeling the search jumps back to the deepest
//! node shared with the best path. The canonical block list is the
//! lexicographic minimum over the leaves the search keeps, which is the
//! same list for isomorphic designs because every pruning rule commutes
//! with relabeling.

use std::collections::HashMap;

use crate::design::{lex_cmp_masks, Design};
use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const MAX_CANONICAL_POINTS: usize = 24;

/// A canonical relabeling of a design: two designs have equal canonical
/// block lists iff they are isomorphic.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// Relabeled block list, sorted by point tuples.
    pub blocks: Vec<u64>,
    /// Witness: applying this to the original design yields `blocks`.
    pub certificate: Permutation,
}

type Cells = Vec<Vec<usize>>;

fn mix(key: u128) -> u64 {
    let mut x = (key as u64) ^ ((key >> 64) as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Refines an ordered partition until stable under block-incidence
/// profiles.
///
/// A block's profile is the vector of its intersection sizes with the
/// cells, packed 5 bits per cell; a point's signature is the sum of the
/// hashed profiles of the blocks through it, an order-free aggregate that
/// depends only on label-independent data, so the refinement commutes
/// with relabeling. With `want_invariant` the final-round profile
/// histogram and cell shape are returned for use as a node invariant.
fn refine(blocks: &[u64], v: usize, mut cells: Cells, want_invariant: bool) -> (Cells, Vec<u64>) {
    let nb = blocks.len();
    let mut keys: Vec<u128> = vec![0; nb];
    let mut cell_index = vec![0u32; v];
    let mut sig = vec![(0u64, 0u32); v];
    loop {
        for (i, cell) in cells.iter().enumerate() {
            for &p in cell {
                cell_index[p] = i as u32;
            }
        }
        for (bi, &b) in blocks.iter().enumerate() {
            let mut key = 0u128;
            let mut m = b;
            while m != 0 {
                let p = m.trailing_zeros() as usize;
                key += 1u128 << (5 * cell_index[p]);
                m &= m - 1;
            }
            keys[bi] = key;
        }
        sig.fill((0, 0));
        for (bi, &b) in blocks.iter().enumerate() {
            let h = mix(keys[bi]);
            let mut m = b;
            while m != 0 {
                let p = m.trailing_zeros() as usize;
                sig[p].0 = sig[p].0.wrapping_add(h);
                sig[p].1 += 1;
                m &= m - 1;
            }
        }

        let mut new_cells: Cells = Vec::with_capacity(cells.len());
        let mut split = false;
        for cell in &cells {
            if cell.len() == 1 {
                new_cells.push(cell.clone());
                continue;
            }
            let mut ordered = cell.clone();
            ordered.sort_by(|&a, &b| sig[a].cmp(&sig[b]).then(a.cmp(&b)));
            let mut start = 0;
            for i in 1..=ordered.len() {
                if i == ordered.len() || sig[ordered[i]] != sig[ordered[start]] {
                    new_cells.push(ordered[start..i].to_vec());
                    if i - start != cell.len() {
                        split = true;
                    }
                    start = i;
                }
            }
        }
        cells = new_cells;
        if !split {
            if !want_invariant {
                return (cells, Vec::new());
            }
            let mut distinct = keys.clone();
            distinct.sort_unstable();
            let mut inv: Vec<u64> = Vec::with_capacity(2 + cells.len() + 3 * distinct.len());
            inv.push(cells.len() as u64);
            inv.extend(cells.iter().map(|c| c.len() as u64));
            let mut run = 0u64;
            for i in 0..nb {
                run += 1;
                if i + 1 == nb || distinct[i + 1] != distinct[i] {
                    inv.push((distinct[i] >> 64) as u64);
                    inv.push(distinct[i] as u64);
                    inv.push(run);
                    run = 0;
                }
            }
            return (cells, inv);
        }
    }
}

/// Initial point coloring: pencil size together with the multiset of
/// pairwise block intersection sizes over the pencil, grouped into cells
/// ordered by the color key.
fn initial_cells(blocks: &[u64], v: usize, k: usize) -> Cells {
    let mut colors: Vec<(Vec<u64>, usize)> = Vec::with_capacity(v);
    for p in 0..v {
        let bit = 1u64 << p;
        let pencil: Vec<u64> = blocks.iter().copied().filter(|&b| b & bit != 0).collect();
        let mut hist = vec![0u64; k + 1];
        for i in 0..pencil.len() {
            for j in (i + 1)..pencil.len() {
                hist[(pencil[i] & pencil[j]).count_ones() as usize] += 1;
            }
        }
        let mut key = vec![pencil.len() as u64];
        key.extend(hist);
        colors.push((key, p));
    }
    colors.sort();
    let mut cells: Cells = Vec::new();
    let mut prev: Option<&[u64]> = None;
    for (key, p) in &colors {
        if prev == Some(key.as_slice()) {
            cells.last_mut().unwrap().push(*p);
        } else {
            cells.push(vec![*p]);
        }
        prev = Some(key.as_slice());
    }
    cells
}

/// Candidate filtering by child invariant is only worth its refinement
/// cost when the cell is small relative to the block count; the rule
/// depends only on label-independent quantities, so the search tree stays
/// isomorphism-invariant.
const FILTER_COST_LIMIT: usize = 8192;

struct Searcher<'a> {
    blocks: &'a [u64],
    v: usize,
    best_blocks: Option<Vec<u64>>,
    best_labeling: Vec<usize>,
    best_base: Vec<usize>,
    /// Discovered automorphisms as 0-based point maps.
    autos: Vec<Vec<usize>>,
    backjump: Option<usize>,
}

impl<'a> Searcher<'a> {
    fn run(blocks: &'a [u64], v: usize, cells: Cells) -> (Vec<u64>, Vec<usize>) {
        let mut searcher = Searcher {
            blocks,
            v,
            best_blocks: None,
            best_labeling: Vec::new(),
            best_base: Vec::new(),
            autos: Vec::new(),
            backjump: None,
        };
        let (cells, _) = refine(blocks, v, cells, false);
        let mut base = Vec::new();
        searcher.search(cells, &mut base);
        (
            searcher.best_blocks.expect("at least one leaf"),
            searcher.best_labeling,
        )
    }

    /// `cells` is already refined.
    fn search(&mut self, cells: Cells, base: &mut Vec<usize>) {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(target) = target else {
            self.leaf(&cells, base);
            return;
        };
        let depth = base.len();

        let individualize = |p: usize| {
            let mut child = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![p]);
                    child.push(cell.iter().copied().filter(|&q| q != p).collect());
                } else {
                    child.push(cell.clone());
                }
            }
            child
        };

        // On cheap cells, refine every child and keep only the minimal
        // invariant; otherwise refine lazily, after orbit pruning.
        let small = cells[target].len() <= 8
            && cells[target].len() * self.blocks.len() <= FILTER_COST_LIMIT;
        let mut candidates: Vec<(usize, Option<Cells>)> = Vec::new();
        if small {
            let mut refined: Vec<(usize, Cells, Vec<u64>)> = cells[target]
                .iter()
                .map(|&p| {
                    let (child, inv) = refine(self.blocks, self.v, individualize(p), true);
                    (p, child, inv)
                })
                .collect();
            let min_inv = refined.iter().map(|(_, _, inv)| inv.clone()).min().unwrap();
            refined.retain(|(_, _, inv)| *inv == min_inv);
            candidates.extend(refined.into_iter().map(|(p, child, _)| (p, Some(child))));
        } else {
            candidates.extend(cells[target].iter().map(|&p| (p, None)));
        }

        let mut processed: Vec<usize> = Vec::new();
        for (p, child) in candidates {
            if self.in_processed_orbit(&processed, p, base) {
                continue;
            }
            processed.push(p);
            let child =
                child.unwrap_or_else(|| refine(self.blocks, self.v, individualize(p), false).0);
            base.push(p);
            self.search(child, base);
            base.pop();
            if let Some(bj) = self.backjump {
                if bj < depth {
                    return;
                }
                self.backjump = None;
            }
        }
    }

    /// True iff p lies in the orbit of an already-processed sibling under
    /// the discovered automorphisms fixing the current base pointwise.
    fn in_processed_orbit(&self, processed: &[usize], p: usize, base: &[usize]) -> bool {
        if processed.is_empty() || self.autos.is_empty() {
            return false;
        }
        let fixing: Vec<&Vec<usize>> = self
            .autos
            .iter()
            .filter(|a| base.iter().all(|&b| a[b] == b))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        // orbit of p under the fixing automorphisms
        let mut seen = vec![false; self.v];
        seen[p] = true;
        let mut queue = vec![p];
        while let Some(x) = queue.pop() {
            for a in &fixing {
                for y in [a[x], a.iter().position(|&im| im == x).unwrap()] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push(y);
                    }
                }
            }
        }
        processed.iter().any(|&q| seen[q])
    }

    fn leaf(&mut self, cells: &Cells, base: &[usize]) {
        let mut labeling = vec![0usize; self.v];
        for (label, cell) in cells.iter().enumerate() {
            labeling[cell[0]] = label;
        }
        let mut relabeled: Vec<u64> = self
            .blocks
            .iter()
            .map(|&b| {
                let mut out = 0u64;
                let mut m = b;
                while m != 0 {
                    let p = m.trailing_zeros() as usize;
                    out |= 1 << labeling[p];
                    m &= m - 1;
                }
                out
            })
            .collect();
        relabeled.sort_by(|a, b| lex_cmp_masks(*a, *b));

        let Some(best) = &self.best_blocks else {
            self.best_blocks = Some(relabeled);
            self.best_labeling = labeling;
            self.best_base = base.to_vec();
            return;
        };

        let mut ordering = std::cmp::Ordering::Equal;
        for (a, b) in relabeled.iter().zip(best.iter()) {
            ordering = lex_cmp_masks(*a, *b);
            if ordering != std::cmp::Ordering::Equal {
                break;
            }
        }
        match ordering {
            std::cmp::Ordering::Less => {
                self.best_blocks = Some(relabeled);
                self.best_labeling = labeling;
                self.best_base = base.to_vec();
            }
            std::cmp::Ordering::Equal => {
                // labeling and best_labeling witness an automorphism
                let mut inv_best = vec![0usize; self.v];
                for (p, &l) in self.best_labeling.iter().enumerate() {
                    inv_best[l] = p;
                }
                let auto: Vec<usize> = labeling.iter().map(|&l| inv_best[l]).collect();
                debug_assert!(auto.iter().enumerate().any(|(p, &q)| p != q));
                self.autos.push(auto);
                let common = base
                    .iter()
                    .zip(&self.best_base)
                    .take_while(|(a, b)| a == b)
                    .count();
                self.backjump = Some(common);
            }
            std::cmp::Ordering::Greater => {}
        }
    }
}

/// Canonical form of a design on at most 24 points.
pub fn canonical_form(d: &Design) -> Result<CanonicalForm> {
    let v = d.v();
    if v > MAX_CANONICAL_POINTS {
        return Err(Error::InvalidArgument(format!(
            "canonical labeling supports at most {} points, got {}",
            MAX_CANONICAL_POINTS, v
        )));
    }
    if d.blocks().is_empty() {
        return Ok(CanonicalForm {
            blocks: Vec::new(),
            certificate: Permutation::identity(v),
        });
    }
    let cells = initial_cells(d.blocks(), v, d.k());
    let (blocks, labeling) = Searcher::run(d.blocks(), v, cells);
    let certificate =
        Permutation::from_images(labeling.iter().map(|&l| l + 1).collect()).expect("bijective");
    debug_assert_eq!(d.relabel(&certificate).unwrap().blocks(), blocks.as_slice());
    Ok(CanonicalForm {
        blocks,
        certificate,
    })
}

/// Isomorphism test; on success returns a point map sending the first
/// design onto the second.
pub fn are_isomorphic(a: &Design, b: &Design) -> Result<Option<Permutation>> {
    if a.v() != b.v() || a.k() != b.k() || a.num_blocks() != b.num_blocks() {
        return Ok(None);
    }
    let ca = canonical_form(a)?;
    let cb = canonical_form(b)?;
    if ca.blocks != cb.blocks {
        return Ok(None);
    }
    let sigma = cb.certificate.inverse().compose(&ca.certificate);
    debug_assert_eq!(&a.relabel(&sigma).unwrap(), b);
    Ok(Some(sigma))
}

/// Partitions the designs into isomorphism classes, returned as index
/// lists; classes ordered by smallest member. Designs are pre-bucketed by
/// cheap invariants (block count, intersection histogram) before their
/// canonical forms decide equality.
pub fn iso_classes(designs: &[Design]) -> Result<Vec<Vec<usize>>> {
    if designs.is_empty() {
        return Ok(Vec::new());
    }
    let (v, k) = (designs[0].v(), designs[0].k());
    for d in designs {
        if d.v() != v || d.k() != k {
            return Err(Error::MixedParameters(format!(
                "expected ({},{}), found ({},{})",
                v,
                k,
                d.v(),
                d.k()
            )));
        }
    }

    let mut buckets: HashMap<(usize, Vec<u64>), Vec<usize>> = HashMap::new();
    for (i, d) in designs.iter().enumerate() {
        buckets
            .entry((d.num_blocks(), d.intersection_histogram()))
            .or_default()
            .push(i);
    }

    let mut classes: Vec<Vec<usize>> = Vec::new();
    for bucket in buckets.values() {
        let mut by_form: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        for &i in bucket {
            let form = canonical_form(&designs[i])?;
            by_form.entry(form.blocks).or_default().push(i);
        }
        for mut class in by_form.into_values() {
            class.sort_unstable();
            classes.push(class);
        }
    }
    classes.sort_by_key(|c| c[0]);
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{affine_planes_gf2, block_orbit, complete_design};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Exhaustive oracle for the pruned search: same refinement and
    /// candidate filtering, but every child of every node is explored and
    /// the minimum is taken over all leaves. No automorphism pruning, no
    /// backjumps.
    fn canonical_blocks_unpruned(d: &Design) -> Vec<u64> {
        fn walk(blocks: &[u64], v: usize, cells: Cells, best: &mut Option<Vec<u64>>) {
            let target = cells
                .iter()
                .enumerate()
                .filter(|(_, c)| c.len() > 1)
                .min_by_key(|(i, c)| (c.len(), *i))
                .map(|(i, _)| i);
            let Some(target) = target else {
                let mut labeling = vec![0usize; v];
                for (label, cell) in cells.iter().enumerate() {
                    labeling[cell[0]] = label;
                }
                let mut relabeled: Vec<u64> = blocks
                    .iter()
                    .map(|&b| {
                        let mut out = 0u64;
                        let mut m = b;
                        while m != 0 {
                            let p = m.trailing_zeros() as usize;
                            out |= 1 << labeling[p];
                            m &= m - 1;
                        }
                        out
                    })
                    .collect();
                relabeled.sort_by(|a, b| lex_cmp_masks(*a, *b));
                let better =
                    best.as_ref().is_none_or(|b| {
                        relabeled.iter().zip(b.iter()).find_map(|(x, y)| {
                            match lex_cmp_masks(*x, *y) {
                                std::cmp::Ordering::Equal => None,
                                other => Some(other),
                            }
                        }) == Some(std::cmp::Ordering::Less)
                    });
                if better {
                    *best = Some(relabeled);
                }
                return;
            };
            let mut refined: Vec<(Cells, Vec<u64>)> = cells[target]
                .iter()
                .map(|&p| {
                    let mut child = Vec::with_capacity(cells.len() + 1);
                    for (i, cell) in cells.iter().enumerate() {
                        if i == target {
                            child.push(vec![p]);
                            child.push(cell.iter().copied().filter(|&q| q != p).collect());
                        } else {
                            child.push(cell.clone());
                        }
                    }
                    refine(blocks, v, child, true)
                })
                .collect();
            let min_inv = refined.iter().map(|(_, inv)| inv.clone()).min().unwrap();
            refined.retain(|(_, inv)| *inv == min_inv);
            for (child, _) in refined {
                walk(blocks, v, child, best);
            }
        }

        let cells = initial_cells(d.blocks(), d.v(), d.k());
        let (cells, _) = refine(d.blocks(), d.v(), cells, false);
        let mut best = None;
        walk(d.blocks(), d.v(), cells, &mut best);
        best.unwrap()
    }

    /// The order-336 affine Frobenius fixture produces six lambda=12
    /// designs whose pairwise distinctness rests on the canonical form for
    /// two of the pairs; the exhaustive oracle must agree there.
    #[test]
    fn pruned_search_agrees_with_unpruned_on_dense_designs() {
        use crate::commands::pattern_orbit_search;
        use crate::sieve::IntersectionPattern;
        let g = crate::catalog::builtin_fixtures()
            .get("E16F21")
            .unwrap()
            .group();
        let out = pattern_orbit_search(&g, &IntersectionPattern::new(&[4, 2]).unwrap()).unwrap();
        let twelves: Vec<&Design> = out
            .hits
            .iter()
            .filter(|h| h.params.lambda == 12)
            .map(|h| &h.design)
            .collect();
        assert_eq!(twelves.len(), 6);
        let forms: Vec<Vec<u64>> = twelves
            .iter()
            .map(|d| canonical_form(d).unwrap().blocks)
            .collect();
        for (i, d) in twelves.iter().enumerate() {
            assert_eq!(forms[i], canonical_blocks_unpruned(d), "design {}", i);
        }
        // all six are pairwise non-isomorphic
        for i in 0..6 {
            for j in (i + 1)..6 {
                assert_ne!(forms[i], forms[j], "designs {} and {}", i, j);
            }
        }
    }

    #[test]
    fn pruned_search_agrees_with_unpruned_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut fixtures = vec![
            affine_planes_gf2(3).unwrap(),
            Design::new(6, 3, &[vec![1, 2, 3], vec![3, 4, 5], vec![1, 5, 6]]).unwrap(),
            Design::new(
                8,
                4,
                &[
                    vec![1, 2, 3, 4],
                    vec![1, 2, 5, 6],
                    vec![3, 4, 5, 6],
                    vec![5, 6, 7, 8],
                ],
            )
            .unwrap(),
        ];
        let relabeled: Vec<Design> = fixtures
            .iter()
            .map(|d| {
                let mut images: Vec<usize> = (1..=d.v()).collect();
                images.shuffle(&mut rng);
                d.relabel(&Permutation::from_images(images).unwrap())
                    .unwrap()
            })
            .collect();
        fixtures.extend(relabeled);
        for d in &fixtures {
            assert_eq!(
                canonical_form(d).unwrap().blocks,
                canonical_blocks_unpruned(d),
            );
        }
    }

    fn random_relabeling(v: usize, rng: &mut ChaCha8Rng) -> Permutation {
        let mut images: Vec<usize> = (1..=v).collect();
        images.shuffle(rng);
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn canonical_form_certificate_is_valid() {
        let d = affine_planes_gf2(3).unwrap();
        let form = canonical_form(&d).unwrap();
        let relabeled = d.relabel(&form.certificate).unwrap();
        assert_eq!(relabeled.blocks(), form.blocks.as_slice());
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let fixtures = vec![
            affine_planes_gf2(3).unwrap(),
            complete_design(7, 3).unwrap(),
            Design::new(6, 3, &[vec![1, 2, 3], vec![3, 4, 5], vec![1, 5, 6]]).unwrap(),
        ];
        for d in &fixtures {
            let base = canonical_form(d).unwrap();
            for _ in 0..25 {
                let sigma = random_relabeling(d.v(), &mut rng);
                let relabeled = d.relabel(&sigma).unwrap();
                let form = canonical_form(&relabeled).unwrap();
                assert_eq!(form.blocks, base.blocks);
            }
        }
    }

    #[test]
    fn reversal_of_affine_planes_is_isomorphic() {
        let d = affine_planes_gf2(3).unwrap();
        let reversal = Permutation::from_images((1..=8).rev().collect()).unwrap();
        let reversed = d.relabel(&reversal).unwrap();
        let sigma = are_isomorphic(&d, &reversed).unwrap().expect("isomorphic");
        assert_eq!(d.relabel(&sigma).unwrap(), reversed);
    }

    #[test]
    fn different_designs_are_separated() {
        // same (v, k, b): a triangle-free-ish triple system vs one with a
        // repeated pair profile
        let a = Design::new(6, 3, &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let b = Design::new(6, 3, &[vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        assert!(are_isomorphic(&a, &b).unwrap().is_none());
    }

    /// Brute force oracle over all v! relabelings, for small v.
    fn isomorphic_brute(a: &Design, b: &Design) -> bool {
        fn heaps(perm: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
            if n == 1 {
                out.push(perm.clone());
                return;
            }
            for i in 0..n {
                heaps(perm, n - 1, out);
                if n.is_multiple_of(2) {
                    perm.swap(i, n - 1);
                } else {
                    perm.swap(0, n - 1);
                }
            }
        }
        if a.v() != b.v() || a.num_blocks() != b.num_blocks() {
            return false;
        }
        let mut all = Vec::new();
        heaps(&mut (1..=a.v()).collect(), a.v(), &mut all);
        all.iter().any(|images| {
            let sigma = Permutation::from_images(images.clone()).unwrap();
            &a.relabel(&sigma).unwrap() == b
        })
    }

    #[test]
    fn canonical_equality_agrees_with_brute_force_on_6_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut designs = vec![
            Design::new(6, 3, &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap(),
            Design::new(6, 3, &[vec![1, 2, 3], vec![3, 4, 5]]).unwrap(),
            Design::new(6, 3, &[vec![1, 2, 3], vec![1, 4, 5], vec![2, 4, 6]]).unwrap(),
            complete_design(6, 3).unwrap(),
        ];
        // a relabeled copy to guarantee an isomorphic pair is present
        let sigma = random_relabeling(6, &mut rng);
        designs.push(designs[1].relabel(&sigma).unwrap());

        for i in 0..designs.len() {
            for j in (i + 1)..designs.len() {
                let brute = isomorphic_brute(&designs[i], &designs[j]);
                let canon = are_isomorphic(&designs[i], &designs[j]).unwrap().is_some();
                assert_eq!(brute, canon, "pair ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn iso_classes_groups_relabelings() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let base = affine_planes_gf2(3).unwrap();
        let mut designs = vec![base.clone()];
        for _ in 0..3 {
            let sigma = random_relabeling(8, &mut rng);
            designs.push(base.relabel(&sigma).unwrap());
        }
        let classes = iso_classes(&designs).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0], vec![0, 1, 2, 3]);

        let single = iso_classes(&designs[..1]).unwrap();
        assert_eq!(single, vec![vec![0]]);
    }

    #[test]
    fn iso_classes_rejects_mixed_parameters() {
        let a = affine_planes_gf2(3).unwrap();
        let b = complete_design(6, 3).unwrap();
        assert!(matches!(
            iso_classes(&[a, b]),
            Err(Error::MixedParameters(_))
        ));
    }

    #[test]
    fn wreath_design_canonical_form_is_stable() {
        let g = crate::catalog::wreath_product_imprimitive(8, 2).unwrap();
        let d = block_orbit(&g, &[1, 2, 3, 4, 9, 10]).unwrap();
        let base = canonical_form(&d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..3 {
            let sigma = random_relabeling(16, &mut rng);
            let relabeled = d.relabel(&sigma).unwrap();
            assert_eq!(canonical_form(&relabeled).unwrap().blocks, base.blocks);
        }
    }
}
