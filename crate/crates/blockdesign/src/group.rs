//! Finitely generated permutation groups: orbits, stabilizers, subdegrees,
//! transitivity, homogeneity, and imprimitivity block systems.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::chain::StabilizerChain;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A permutation group given by generators, with a lazily built stabilizer
/// chain. Immutable once constructed; the chain is forced at most once and
/// all queries are safe for concurrent readers.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl PermGroup {
    /// A group from a nonempty list of equal-degree generators.
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyGenerators)?;
        let degree = first.degree();
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    /// The trivial group on `1..=degree`.
    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(vec![Permutation::identity(degree)]).unwrap()
    }

    /// Symmetric group in its natural action.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = vec![];
        if degree >= 2 {
            gens.push(Permutation::from_cycles(degree, &[&[1, 2]]).unwrap());
        }
        if degree >= 3 {
            let cycle: Vec<usize> = (1..=degree).collect();
            gens.push(Permutation::from_cycles(degree, &[&cycle]).unwrap());
        }
        if gens.is_empty() {
            return PermGroup::trivial(degree);
        }
        PermGroup::new(gens).unwrap()
    }

    /// Alternating group in its natural action.
    pub fn alternating(degree: usize) -> Self {
        if degree < 3 {
            return PermGroup::trivial(degree.max(1));
        }
        let mut gens = vec![Permutation::from_cycles(degree, &[&[1, 2, 3]]).unwrap()];
        if degree > 3 {
            // (1 2 3) together with an n-cycle (n odd) or (n-1)-cycle on
            // 2..=n (n even) generates A_n.
            let cycle: Vec<usize> = if degree % 2 == 1 {
                (1..=degree).collect()
            } else {
                (2..=degree).collect()
            };
            gens.push(Permutation::from_cycles(degree, &[&cycle]).unwrap());
        }
        PermGroup::new(gens).unwrap()
    }

    /// Cyclic group generated by the full cycle `(1 2 ... degree)`.
    pub fn cyclic(degree: usize) -> Self {
        if degree < 2 {
            return PermGroup::trivial(degree.max(1));
        }
        let cycle: Vec<usize> = (1..=degree).collect();
        PermGroup::new(vec![Permutation::from_cycles(degree, &[&cycle]).unwrap()]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// The stabilizer chain, built on first use.
    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(self.degree, &self.generators, &[]))
    }

    /// Group order.
    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    /// Membership test by sifting through the stabilizer chain.
    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.chain().contains(p)
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point == 0 || point > self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// Orbit of a point under the generators, ascending.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        self.check_point(point)?;
        let mut seen = vec![false; self.degree];
        seen[point - 1] = true;
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let u = orbit[head];
            head += 1;
            for g in &self.generators {
                let v = g.image(u);
                if !seen[v - 1] {
                    seen[v - 1] = true;
                    orbit.push(v);
                }
            }
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// All orbits, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 1..=self.degree {
            if !seen[p - 1] {
                let orbit = self.orbit(p).unwrap();
                for &q in &orbit {
                    seen[q - 1] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(1)
            .map(|o| o.len() == self.degree)
            .unwrap_or(false)
    }

    /// Stabilizer of a point, with generators extracted from a stabilizer
    /// chain whose base starts at that point.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        self.check_point(point)?;
        let chain = StabilizerChain::build(self.degree, &self.generators, &[point]);
        let gens = chain.stabilizer_generators(1);
        if gens.is_empty() {
            return Ok(PermGroup::trivial(self.degree));
        }
        PermGroup::new(gens)
    }

    /// Sizes of the point-stabilizer orbits. Requires transitivity, so the
    /// profile does not depend on the base point.
    pub fn subdegrees(&self, point: usize) -> Result<SubdegreeProfile> {
        self.check_point(point)?;
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let stab = self.point_stabilizer(point)?;
        let mut sizes: Vec<usize> = stab.orbits().iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        Ok(SubdegreeProfile {
            point,
            orbit_sizes: sizes,
        })
    }

    /// All nontrivial block systems of imprimitivity.
    ///
    /// Minimal systems are found by closing the seed pairs `{1, beta}` under
    /// the generators with a union-find; the full lattice is the closure of
    /// the minimal systems under joins. Empty iff the group is primitive.
    pub fn block_systems(&self) -> Result<Vec<BlockSystem>> {
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let n = self.degree;
        let mut systems: Vec<Vec<usize>> = Vec::new(); // class index per point
        let mut seen: HashSet<Vec<usize>> = HashSet::new();

        for beta in 2..=n {
            if let Some(classes) = self.minimal_congruence(1, beta) {
                if seen.insert(classes.clone()) {
                    systems.push(classes);
                }
            }
        }

        // Close under joins; the join of two invariant partitions is the
        // transitive closure of their union and is again invariant.
        let mut head = 0;
        while head < systems.len() {
            for i in 0..head {
                if let Some(j) = join_partitions(&systems[head], &systems[i], n) {
                    if seen.insert(j.clone()) {
                        systems.push(j);
                    }
                }
            }
            head += 1;
        }

        let mut out: Vec<BlockSystem> = systems
            .into_iter()
            .map(|classes| BlockSystem::from_class_indices(&classes, n))
            .collect();
        out.sort_by(|a, b| {
            a.class_size()
                .cmp(&b.class_size())
                .then_with(|| a.classes().cmp(b.classes()))
        });
        Ok(out)
    }

    /// Finest congruence putting `a` and `b` in one class, or `None` if that
    /// congruence is the universal partition.
    fn minimal_congruence(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let n = self.degree;
        let mut uf = UnionFind::new(n);
        uf.union(a - 1, b - 1);
        let mut queue = vec![(a, b)];
        while let Some((x, y)) = queue.pop() {
            for g in &self.generators {
                let (gx, gy) = (g.image(x), g.image(y));
                if uf.union(gx - 1, gy - 1) {
                    queue.push((gx, gy));
                }
            }
        }
        let classes = uf.class_indices();
        let count = classes.iter().max().unwrap() + 1;
        if count == 1 {
            None
        } else {
            Some(classes)
        }
    }

    /// True iff the group has a single orbit on t-subsets.
    pub fn is_t_homogeneous(&self, t: usize) -> Result<bool> {
        let n = self.degree;
        if t == 0 || t > n / 2 {
            return Err(Error::InvalidArgument(format!(
                "homogeneity degree t={} must satisfy 1 <= t <= {}",
                t,
                n / 2
            )));
        }
        let total = binomial(n as u64, t as u64);
        if n > 64 || total > 2_000_000 {
            return Err(Error::InvalidArgument(format!(
                "orbit closure over {} t-subsets is not feasible",
                total
            )));
        }
        let start: u64 = (0..t).fold(0, |m, i| m | (1 << i));
        let mut seen = HashSet::new();
        seen.insert(start);
        let mut queue = vec![start];
        while let Some(mask) = queue.pop() {
            for g in &self.generators {
                let image = g.apply_mask(mask);
                if seen.insert(image) {
                    queue.push(image);
                }
            }
        }
        Ok(seen.len() as u64 == total)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, {} generators)",
            self.degree,
            self.generators.len()
        )
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// A partition of `1..=n` into `d` classes of size `c`, invariant under the
/// owning group.
#[derive(Clone, PartialEq, Eq)]
pub struct BlockSystem {
    classes: Vec<Vec<usize>>,
}

impl BlockSystem {
    fn from_class_indices(indices: &[usize], n: usize) -> BlockSystem {
        let count = indices.iter().max().unwrap() + 1;
        let mut classes = vec![Vec::new(); count];
        for p in 1..=n {
            classes[indices[p - 1]].push(p);
        }
        classes.sort_by_key(|c| c[0]);
        BlockSystem { classes }
    }

    /// Builds a system from explicit classes, validating shape only (equal
    /// sizes, disjoint, covering).
    pub fn new(classes: Vec<Vec<usize>>, degree: usize) -> Result<BlockSystem> {
        let d = classes.len();
        if d < 2 {
            return Err(Error::InvalidArgument("need at least two classes".into()));
        }
        let c = classes[0].len();
        if c < 2 || c * d != degree {
            return Err(Error::InvalidArgument(
                "classes must be nontrivial, equal-sized and cover the points".into(),
            ));
        }
        let mut seen = vec![false; degree];
        let mut classes = classes;
        for class in &mut classes {
            if class.len() != c {
                return Err(Error::InvalidArgument("classes of unequal size".into()));
            }
            class.sort_unstable();
            for &p in class.iter() {
                if p == 0 || p > degree || seen[p - 1] {
                    return Err(Error::InvalidArgument(
                        "classes must partition the point set".into(),
                    ));
                }
                seen[p - 1] = true;
            }
        }
        classes.sort_by_key(|c| c[0]);
        Ok(BlockSystem { classes })
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_size(&self) -> usize {
        self.classes[0].len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Index of the class containing a point.
    pub fn class_of(&self, point: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.binary_search(&point).is_ok())
            .expect("point in some class")
    }

    /// Class masks for degrees up to 64.
    pub fn class_masks(&self) -> Vec<u64> {
        self.classes
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &p| m | (1 << (p - 1))))
            .collect()
    }

    /// True iff every generator permutes the classes setwise.
    pub fn is_invariant_under(&self, gens: &[Permutation]) -> bool {
        let masks = self.class_masks();
        gens.iter()
            .all(|g| masks.iter().all(|&m| masks.contains(&g.apply_mask(m))))
    }
}

impl fmt::Display for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.class_size(), self.class_count())
    }
}

impl fmt::Debug for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockSystem{:?}", self.classes)
    }
}

/// Multiset of point-stabilizer orbit sizes for a transitive group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdegreeProfile {
    pub point: usize,
    /// Ascending; sums to the degree, with exactly one 1 for the fixed point
    /// when the stabilizer fixes only the base point.
    pub orbit_sizes: Vec<usize>,
}

impl SubdegreeProfile {
    pub fn rank(&self) -> usize {
        self.orbit_sizes.len()
    }

    /// Orbit sizes other than the fixed point itself.
    pub fn nontrivial(&self) -> Vec<usize> {
        let mut sizes = self.orbit_sizes.clone();
        if let Some(pos) = sizes.iter().position(|&s| s == 1) {
            sizes.remove(pos);
        }
        sizes
    }
}

impl fmt::Display for SubdegreeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.orbit_sizes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Returns true if the classes were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    /// Class index per element, numbered by first occurrence.
    fn class_indices(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut index = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for (x, slot) in out.iter_mut().enumerate() {
            let r = self.find(x);
            if index[r] == usize::MAX {
                index[r] = next;
                next += 1;
            }
            *slot = index[r];
        }
        out
    }
}

/// Join of two partitions (transitive closure of their union), or `None`
/// when the join is the universal partition.
fn join_partitions(a: &[usize], b: &[usize], n: usize) -> Option<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for part in [a, b] {
        let mut rep: Vec<Option<usize>> = vec![None; n];
        for (x, &cls) in part.iter().enumerate() {
            match rep[cls] {
                None => rep[cls] = Some(x),
                Some(r) => {
                    uf.union(r, x);
                }
            }
        }
    }
    let classes = uf.class_indices();
    let count = classes.iter().max().unwrap() + 1;
    if count == 1 {
        None
    } else {
        Some(classes)
    }
}
