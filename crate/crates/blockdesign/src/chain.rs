//! Deterministic Schreier-Sims stabilizer chains.
//!
//! The chain is built non-randomized: base points are taken from an optional
//! caller-supplied prefix, then extended with the smallest point moved by any
//! strong generator that still fixes the whole base. With degrees in the low
//! tens this is more than fast enough, and the chain structure is reproducible
//! run to run.

use crate::error::Result;
use crate::perm::Permutation;

struct Level {
    base_point: usize,
    /// Indices into `strong_gens` of the generators fixing all earlier base
    /// points; these generate the stabilizer at this level.
    gens: Vec<usize>,
    /// Orbit of `base_point` under the level generators, ascending.
    orbit: Vec<usize>,
    /// `transversal[p - 1]` maps `base_point` to `p` for p in the orbit.
    transversal: Vec<Option<Permutation>>,
}

pub struct StabilizerChain {
    degree: usize,
    strong_gens: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Builds a chain for `<gens>` with the base forced to start with
    /// `base_prefix` (useful for extracting point stabilizers).
    ///
    /// Generators must be validated and of equal degree `degree`.
    pub fn build(degree: usize, gens: &[Permutation], base_prefix: &[usize]) -> StabilizerChain {
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            debug_assert_eq!(g.degree(), degree);
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }

        let mut base: Vec<usize> = Vec::new();
        for &p in base_prefix {
            debug_assert!(p >= 1 && p <= degree);
            if !base.contains(&p) {
                base.push(p);
            }
        }

        let mut chain = StabilizerChain {
            degree,
            strong_gens: strong,
            levels: Vec::new(),
        };

        loop {
            chain.extend_base(&mut base);
            chain.rebuild_levels(&base);
            match chain.first_schreier_violation() {
                None => break,
                Some(residue) => chain.strong_gens.push(residue),
            }
        }
        chain
    }

    /// Appends base points until every strong generator moves one of them.
    fn extend_base(&self, base: &mut Vec<usize>) {
        'scan: loop {
            for g in &self.strong_gens {
                if base.iter().all(|&b| g.image(b) == b) {
                    let p = g.smallest_moved_point().expect("non-identity generator");
                    base.push(p);
                    continue 'scan;
                }
            }
            return;
        }
    }

    fn rebuild_levels(&mut self, base: &[usize]) {
        self.levels.clear();
        for (i, &b) in base.iter().enumerate() {
            let gens: Vec<usize> = (0..self.strong_gens.len())
                .filter(|&gi| {
                    base[..i]
                        .iter()
                        .all(|&earlier| self.strong_gens[gi].image(earlier) == earlier)
                })
                .collect();
            let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
            transversal[b - 1] = Some(Permutation::identity(self.degree));
            let mut orbit = vec![b];
            let mut head = 0;
            while head < orbit.len() {
                let u = orbit[head];
                head += 1;
                let t_u = transversal[u - 1].clone().unwrap();
                for &gi in &gens {
                    let s = &self.strong_gens[gi];
                    let image = s.image(u);
                    if transversal[image - 1].is_none() {
                        transversal[image - 1] = Some(s.compose(&t_u));
                        orbit.push(image);
                    }
                }
            }
            orbit.sort_unstable();
            self.levels.push(Level {
                base_point: b,
                gens,
                orbit,
                transversal,
            });
        }
    }

    /// Scans Schreier generators level by level and returns the first
    /// non-identity sift residue, in a fixed deterministic order.
    fn first_schreier_violation(&self) -> Option<Permutation> {
        for (i, level) in self.levels.iter().enumerate() {
            for &u in &level.orbit {
                let t_u = level.transversal[u - 1].as_ref().unwrap();
                for &gi in &level.gens {
                    let s = &self.strong_gens[gi];
                    let t_su = level.transversal[s.image(u) - 1].as_ref().unwrap();
                    let schreier = t_su.inverse().compose(&s.compose(t_u));
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, _) = self.sift_from(schreier, i + 1);
                    if !residue.is_identity() {
                        return Some(residue);
                    }
                }
            }
        }
        None
    }

    /// Strips `p` through the chain starting at `level`; returns the residue
    /// and the level index at which sifting stopped (the chain length when
    /// the element stripped all the way through).
    fn sift_from(&self, mut p: Permutation, level: usize) -> (Permutation, usize) {
        for (j, lvl) in self.levels.iter().enumerate().skip(level) {
            let image = p.image(lvl.base_point);
            match &lvl.transversal[image - 1] {
                Some(t) => p = t.inverse().compose(&p),
                None => return (p, j),
            }
        }
        (p, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Group order as the product of the basic orbit sizes.
    ///
    /// Panics if the order exceeds `u128`; the degrees this crate targets
    /// stay far below that.
    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128)
                .expect("group order exceeds u128")
        })
    }

    /// Sift residue of `p` through the full chain; the identity iff `p` is a
    /// member of the group.
    pub fn sift(&self, p: &Permutation) -> Permutation {
        self.sift_from(p.clone(), 0).0
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.sift(p).is_identity()
    }

    /// Strong generators fixing the first `levels` base points pointwise;
    /// for `levels = 1` these generate the stabilizer of the first base point.
    pub fn stabilizer_generators(&self, levels: usize) -> Vec<Permutation> {
        let prefix: Vec<usize> = self.base().into_iter().take(levels).collect();
        self.strong_gens
            .iter()
            .filter(|g| prefix.iter().all(|&b| g.image(b) == b))
            .cloned()
            .collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_gens
    }
}

/// Convenience wrapper used by tests and `PermGroup`.
pub fn chain_order(degree: usize, gens: &[Permutation]) -> Result<u128> {
    Ok(StabilizerChain::build(degree, gens, &[]).order())
}
