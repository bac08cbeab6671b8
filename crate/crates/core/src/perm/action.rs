use std::collections::HashMap;
use std::ops::ControlFlow;

use super::chain::StabChain;
use super::group::{PermGroup, DEFAULT_ENUMERATION_BOUND};
use super::Permutation;
use crate::error::{Error, Result};

/// Default cap on the number of sets in an orbit of the set action.
pub const DEFAULT_SET_ORBIT_BOUND: usize = 100_000_000;

impl PermGroup {
    /// The orbit of `x`, sorted.
    pub fn orbit(&self, x: usize) -> Result<Vec<usize>> {
        self.check_point(x)?;
        let mut seen = vec![false; self.degree()];
        let mut out = bfs_orbit(self.generators(), x, &mut seen);
        out.sort_unstable();
        Ok(out)
    }

    /// All orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for x in 0..self.degree() {
            if !seen[x] {
                let mut orb = bfs_orbit(self.generators(), x, &mut seen);
                orb.sort_unstable();
                out.push(orb);
            }
        }
        out
    }

    /// Orbit index of every point, numbering orbits by least element.
    pub fn orbit_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.degree()];
        for (i, orb) in self.orbits().into_iter().enumerate() {
            for x in orb {
                label[x] = i;
            }
        }
        label
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).map(|o| o.len() == self.degree()).unwrap_or(false)
    }

    /// Points fixed by every generator.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&x| self.generators().iter().all(|g| g.fixes(x)))
            .collect()
    }

    pub fn point_stabilizer(&self, x: usize) -> Result<PermGroup> {
        self.pointwise_stabilizer(&[x])
    }

    /// Subgroup fixing every point of `xs`; the order of `xs` is irrelevant.
    pub fn pointwise_stabilizer(&self, xs: &[usize]) -> Result<PermGroup> {
        let mut pts = xs.to_vec();
        pts.sort_unstable();
        pts.dedup();
        if pts.is_empty() {
            return Ok(self.clone());
        }
        let chain = self.chain_with_base(&pts)?;
        Ok(PermGroup::from_chain(chain.subchain(pts.len())))
    }

    /// Smallest block containing `a` and `b`, by union-find closure over
    /// the generators. Returned sorted.
    pub fn minimal_block(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        self.check_point(a)?;
        self.check_point(b)?;
        let mut uf = UnionFind::new(self.degree());
        self.close_partition(&mut uf, a, b);
        let ra = uf.find(a);
        Ok((0..self.degree()).filter(|&x| uf.find(x) == ra).collect())
    }

    fn close_partition(&self, uf: &mut UnionFind, a: usize, b: usize) {
        let mut queue = Vec::new();
        if uf.union(a, b) {
            queue.push((a, b));
        }
        while let Some((x, y)) = queue.pop() {
            for g in self.generators() {
                let (gx, gy) = (g.image(x), g.image(y));
                if uf.union(gx, gy) {
                    queue.push((gx, gy));
                }
            }
        }
    }

    /// Primitivity of a transitive group. Degree one is primitive, and so
    /// is any transitive group of prime degree.
    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.nontrivial_block()?.is_none())
    }

    /// A block strictly between a point and the whole domain, if any.
    pub fn nontrivial_block(&self) -> Result<Option<Vec<usize>>> {
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let n = self.degree();
        if n <= 2 {
            return Ok(None);
        }
        // Blocks through {0, x} for x in one G_0-orbit are G_0-images of
        // each other, so one representative per suborbit suffices.
        let stab = self.point_stabilizer(0)?;
        for orb in stab.orbits() {
            let x = orb[0];
            if x == 0 {
                continue;
            }
            let block = self.minimal_block(0, x)?;
            if block.len() < n {
                return Ok(Some(block));
            }
        }
        Ok(None)
    }

    /// Sizes of the orbits of the stabiliser of 0, ascending; its length is
    /// the rank.
    pub fn rank_and_subdegrees(&self) -> Result<Vec<usize>> {
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let stab = self.point_stabilizer(0)?;
        let mut sizes: Vec<usize> = stab.orbits().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        Ok(sizes)
    }

    /// Orbit of a point set under the induced action on sets.
    pub fn set_orbit(&self, set: &[usize], bound: usize) -> Result<SetOrbit> {
        SetOrbit::new(self, set, bound)
    }

    /// Setwise stabiliser of `s` by Schreier generators along its orbit,
    /// together with the orbit length.
    pub fn setwise_stabilizer_via_orbit(
        &self,
        s: &[usize],
        bound: usize,
    ) -> Result<(PermGroup, usize)> {
        if s.is_empty() {
            return Err(Error::InvalidParameters("empty set".into()));
        }
        let orbit = self.set_orbit(s, bound)?;
        let target = self.order() / orbit.len() as u128;
        let reps = orbit.transversal();
        let mut chain = StabChain::new(self.degree(), &[]);
        'outer: for (i, member) in orbit.members().iter().enumerate() {
            for s_gen in self.generators() {
                if chain.order() == target {
                    break 'outer;
                }
                let image = s_gen.apply_to_set(member);
                let j = orbit.index_of(&image).expect("orbit is closed");
                let h = reps[i].mul_unchecked(s_gen).mul_unchecked(&reps[j].inverse());
                chain.add_generator(&h);
            }
        }
        debug_assert_eq!(chain.order(), target);
        Ok((PermGroup::from_chain(chain), orbit.len()))
    }

    /// Normaliser of `h` in `self` by filtering enumerated elements.
    pub fn normalizer(&self, h: &PermGroup, bound: u128) -> Result<PermGroup> {
        if h.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: h.degree(),
            });
        }
        if !self.contains_group(h) {
            return Err(Error::NotASubgroup);
        }
        if self.order() > bound {
            return Err(Error::BoundExceeded {
                what: "group order for normaliser enumeration",
                bound,
            });
        }
        let mut chain = StabChain::new(self.degree(), &[]);
        let _ = self.for_each_element(|g| {
            if !chain.contains(g)
                && h.generators().iter().all(|x| h.contains(&x.conjugate_by(g)))
            {
                chain.add_generator(g);
            }
            ControlFlow::Continue(())
        });
        Ok(PermGroup::from_chain(chain))
    }

    pub fn normalizer_default(&self, h: &PermGroup) -> Result<PermGroup> {
        self.normalizer(h, DEFAULT_ENUMERATION_BOUND)
    }

    /// Action on an invariant point set, relabelled to `0..|domain|` in
    /// increasing point order.
    pub fn induced_action(&self, domain: &[usize]) -> Result<InducedAction> {
        let mut points = domain.to_vec();
        points.sort_unstable();
        points.dedup();
        if points.is_empty() {
            return Err(Error::InvalidParameters("empty domain".into()));
        }
        let mut local = vec![u32::MAX; self.degree()];
        for (i, &x) in points.iter().enumerate() {
            self.check_point(x)?;
            local[x] = i as u32;
        }
        let mut gens = Vec::with_capacity(self.generators().len());
        for g in self.generators() {
            let mut images = Vec::with_capacity(points.len());
            for &x in &points {
                match local[g.image(x)] {
                    u32::MAX => return Err(Error::NotInvariant),
                    i => images.push(i),
                }
            }
            gens.push(Permutation::from_vec_unchecked(images));
        }
        let group = PermGroup::new(gens)?;
        let kernel_order = self.order() / group.order();
        Ok(InducedAction {
            group,
            points,
            kernel_order,
        })
    }
}

/// A group induced on an invariant subset, with the relabelling.
#[derive(Clone, Debug)]
pub struct InducedAction {
    pub group: PermGroup,
    /// `points[i]` is the original point carrying local label `i`.
    pub points: Vec<usize>,
    pub kernel_order: u128,
}

impl InducedAction {
    pub fn to_local(&self, x: usize) -> Option<usize> {
        self.points.binary_search(&x).ok()
    }

    pub fn to_global(&self, i: usize) -> usize {
        self.points[i]
    }

    /// True when every point stabiliser is trivial.
    pub fn is_semiregular(&self) -> bool {
        is_semiregular(&self.group)
    }

    pub fn is_regular(&self) -> bool {
        self.group.is_transitive() && self.is_semiregular()
    }
}

/// Every orbit has length equal to the group order.
pub fn is_semiregular(g: &PermGroup) -> bool {
    let order = g.order();
    g.orbits().iter().all(|o| o.len() as u128 == order)
}

/// Orbit of a sorted point set, in breadth-first order from the seed with
/// generators applied in input order, plus a Schreier tree.
#[derive(Clone, Debug)]
pub struct SetOrbit {
    members: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    /// `(parent, generator)` for every member but the seed.
    parent: Vec<(usize, usize)>,
    generators: Vec<Permutation>,
}

impl SetOrbit {
    fn new(group: &PermGroup, set: &[usize], bound: usize) -> Result<Self> {
        let mut seed: Vec<u32> = Vec::with_capacity(set.len());
        for &x in set {
            group.check_point(x)?;
            seed.push(x as u32);
        }
        seed.sort_unstable();
        seed.dedup();
        let mut orbit = SetOrbit {
            members: vec![seed.clone()],
            index: HashMap::from([(seed, 0)]),
            parent: vec![(usize::MAX, usize::MAX)],
            generators: group.generators().to_vec(),
        };
        let mut i = 0;
        while i < orbit.members.len() {
            for (gi, g) in group.generators().iter().enumerate() {
                let image = g.apply_to_set(&orbit.members[i]);
                if !orbit.index.contains_key(&image) {
                    if orbit.members.len() >= bound {
                        return Err(Error::BoundExceeded {
                            what: "set orbit length",
                            bound: bound as u128,
                        });
                    }
                    orbit.index.insert(image.clone(), orbit.members.len());
                    orbit.members.push(image);
                    orbit.parent.push((i, gi));
                }
            }
            i += 1;
        }
        Ok(orbit)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Vec<u32>] {
        &self.members
    }

    pub fn index_of(&self, set: &[u32]) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Element carrying the seed to member `i`, by walking the tree.
    pub fn element_to(&self, i: usize) -> Permutation {
        let mut word = Vec::new();
        let mut j = i;
        while j != 0 {
            let (p, g) = self.parent[j];
            word.push(g);
            j = p;
        }
        let degree = self.generators[0].degree();
        word.iter()
            .rev()
            .fold(Permutation::identity(degree), |acc, &g| {
                acc.mul_unchecked(&self.generators[g])
            })
    }

    /// Elements carrying the seed to every member, in orbit order.
    pub fn transversal(&self) -> Vec<Permutation> {
        let degree = self.generators[0].degree();
        let mut reps: Vec<Permutation> = Vec::with_capacity(self.len());
        reps.push(Permutation::identity(degree));
        for j in 1..self.len() {
            let (p, g) = self.parent[j];
            let r = reps[p].mul_unchecked(&self.generators[g]);
            reps.push(r);
        }
        reps
    }
}

fn bfs_orbit(gens: &[Permutation], x: usize, seen: &mut [bool]) -> Vec<usize> {
    let mut out = vec![x];
    seen[x] = true;
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = g.image(out[i]);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out
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

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}
