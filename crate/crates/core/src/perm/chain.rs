//! Base and strong generating set.
//!
//! Deterministic incremental Schreier-Sims. Each level keeps the strong
//! generators fixing the earlier base points, the orbit of its base point
//! and a transversal stored as explicit permutations together with their
//! inverses. Schreier generators already shown to sift are never rechecked:
//! transversal entries are assigned once and orbits only grow.
//!
//! When the group order is known in advance (rebasing an existing chain)
//! construction stops as soon as the product of the orbit lengths reaches
//! it, which is then a complete chain.

use std::ops::ControlFlow;

use super::Permutation;

const ABSENT: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    base_point: u32,
    /// Indices into `StabChain::strong`.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// Position in `orbit` for each point, or `ABSENT`.
    pos: Vec<u32>,
    /// `(u, u^-1)` with `base_point^u = orbit[i]`.
    reps: Vec<(Permutation, Permutation)>,
    /// Schreier generators `(orbit[i], gens[..done[i]])` are known to sift.
    done: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let mut pos = vec![ABSENT; degree];
        pos[base_point] = 0;
        let id = Permutation::identity(degree);
        Level {
            base_point: base_point as u32,
            gens: Vec::new(),
            orbit: vec![base_point as u32],
            pos,
            reps: vec![(id.clone(), id)],
            done: vec![0],
        }
    }

    pub(crate) fn base_point(&self) -> usize {
        self.base_point as usize
    }

    pub(crate) fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    fn push_point(&mut self, point: u32, rep: Permutation) {
        self.pos[point as usize] = self.orbit.len() as u32;
        self.orbit.push(point);
        let inv = rep.inverse();
        self.reps.push((rep, inv));
        self.done.push(0);
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
    target_order: Option<u128>,
}

impl StabChain {
    /// Chain of the trivial group with the given base prefix.
    pub(crate) fn new(degree: usize, prefix: &[usize]) -> Self {
        StabChain {
            degree,
            strong: Vec::new(),
            levels: prefix.iter().map(|&b| Level::new(degree, b)).collect(),
            target_order: None,
        }
    }

    pub(crate) fn from_generators(
        degree: usize,
        gens: &[Permutation],
        prefix: &[usize],
        target_order: Option<u128>,
    ) -> Self {
        let mut chain = StabChain::new(degree, prefix);
        chain.target_order = target_order;
        for g in gens {
            if chain.reached_target() {
                break;
            }
            chain.add_generator(g);
        }
        chain.target_order = None;
        chain
    }

    pub(crate) fn degree(&self) -> usize {
        self.degree
    }

    pub(crate) fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub(crate) fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point()).collect()
    }

    pub(crate) fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub(crate) fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    fn reached_target(&self) -> bool {
        matches!(self.target_order, Some(t) if self.order() == t)
    }

    /// Sifts `g` from level `from`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when it passed every level).
    pub(crate) fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let gamma = h.image(level.base_point());
            match level.pos[gamma] {
                ABSENT => return (h, l),
                i => {
                    if i != 0 {
                        h = h.mul_unchecked(&level.reps[i as usize].1);
                    }
                }
            }
        }
        (h, self.levels.len())
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, l) = self.strip(g, 0);
        l == self.levels.len() && h.is_identity()
    }

    /// Adds `g` to the group; returns false when it was already a member.
    pub(crate) fn add_generator(&mut self, g: &Permutation) -> bool {
        let (y, j) = self.strip(g, 0);
        if y.is_identity() {
            return false;
        }
        self.insert_strong(y, 0, j);
        self.complete(j);
        true
    }

    /// Adds `y` as a strong generator on levels `from..=to`, opening a new
    /// level at its least moved point when `to == levels.len()`.
    fn insert_strong(&mut self, y: Permutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let b = y
                .least_moved_point()
                .expect("identity passed as strong generator");
            self.levels.push(Level::new(self.degree, b));
        }
        let idx = self.strong.len();
        self.strong.push(y);
        for l in from..=to {
            self.levels[l].gens.push(idx);
            self.extend_orbit(l, idx);
        }
    }

    fn extend_orbit(&mut self, l: usize, new_gen: usize) {
        let strong = &self.strong;
        let level = &mut self.levels[l];
        let s = &strong[new_gen];
        let old_len = level.orbit.len();
        for i in 0..old_len {
            let gamma = s.images()[level.orbit[i] as usize];
            if level.pos[gamma as usize] == ABSENT {
                let rep = level.reps[i].0.mul_unchecked(s);
                level.push_point(gamma, rep);
            }
        }
        let mut i = old_len;
        while i < level.orbit.len() {
            for gi in 0..level.gens.len() {
                let g = &strong[level.gens[gi]];
                let gamma = g.images()[level.orbit[i] as usize];
                if level.pos[gamma as usize] == ABSENT {
                    let rep = level.reps[i].0.mul_unchecked(g);
                    level.push_point(gamma, rep);
                }
            }
            i += 1;
        }
    }

    fn complete(&mut self, start: usize) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = start.min(self.levels.len() - 1);
        loop {
            if self.reached_target() {
                return;
            }
            match self.failing_schreier_generator(i) {
                Some((y, j)) => {
                    self.insert_strong(y, i + 1, j);
                    i = j;
                }
                None => {
                    if i == 0 {
                        return;
                    }
                    i -= 1;
                }
            }
        }
    }

    /// Scans unchecked Schreier generators of level `i` and returns the
    /// first residue that does not sift through the deeper levels.
    fn failing_schreier_generator(&mut self, i: usize) -> Option<(Permutation, usize)> {
        let mut idx = 0;
        while idx < self.levels[i].orbit.len() {
            while self.levels[i].done[idx] < self.levels[i].gens.len() {
                let level = &self.levels[i];
                let gi = level.done[idx];
                let s = &self.strong[level.gens[gi]];
                let u_beta = &level.reps[idx].0;
                let gamma = s.image(level.orbit[idx] as usize);
                let (u_gamma, u_gamma_inv) = &level.reps[level.pos[gamma] as usize];
                let sifts_trivially = u_beta
                    .images()
                    .iter()
                    .zip(u_gamma.images())
                    .all(|(&a, &b)| s.images()[a as usize] == b);
                let residue = if sifts_trivially {
                    None
                } else {
                    let h = u_beta.mul_unchecked(s).mul_unchecked(u_gamma_inv);
                    let (y, j) = self.strip(&h, i + 1);
                    (!y.is_identity()).then_some((y, j))
                };
                self.levels[i].done[idx] = gi + 1;
                if residue.is_some() {
                    return residue;
                }
            }
            idx += 1;
        }
        None
    }

    /// The chain of the stabiliser of the first `level` base points.
    pub(crate) fn subchain(&self, level: usize) -> StabChain {
        let levels = &self.levels[level.min(self.levels.len())..];
        let mut used: Vec<usize> = levels.iter().flat_map(|l| l.gens.iter().copied()).collect();
        used.sort_unstable();
        used.dedup();
        let remap = |i: usize| used.binary_search(&i).expect("generator index");
        let strong = used.iter().map(|&i| self.strong[i].clone()).collect();
        let levels = levels
            .iter()
            .map(|l| Level {
                gens: l.gens.iter().map(|&i| remap(i)).collect(),
                ..l.clone()
            })
            .collect();
        StabChain {
            degree: self.degree,
            strong,
            levels,
            target_order: None,
        }
    }

    /// Visits every group element exactly once.
    pub(crate) fn for_each_element<F>(&self, mut f: F) -> ControlFlow<()>
    where
        F: FnMut(&Permutation) -> ControlFlow<()>,
    {
        // g = u_{k-1} ... u_1 u_0, built from the deepest level outwards.
        fn rec<F>(chain: &StabChain, l: usize, acc: &Permutation, f: &mut F) -> ControlFlow<()>
        where
            F: FnMut(&Permutation) -> ControlFlow<()>,
        {
            if l == 0 {
                return f(acc);
            }
            for (u, _) in &chain.levels[l - 1].reps {
                rec(chain, l - 1, &acc.mul_unchecked(u), f)?;
            }
            ControlFlow::Continue(())
        }
        let id = Permutation::identity(self.degree);
        rec(self, self.levels.len(), &id, &mut f)
    }

    /// Element built from one transversal index per level.
    pub(crate) fn element_from_indices(&self, indices: &[usize]) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for (l, &i) in indices.iter().enumerate().rev() {
            acc = acc.mul_unchecked(&self.levels[l].reps[i].0);
        }
        acc
    }

    /// The lexicographically least element of the right coset `H g`, where
    /// this chain describes `H` with base `0, 1, .., m-1` and a trivial
    /// final stabiliser.
    pub(crate) fn lex_min_in_coset(&self, g: &Permutation) -> Permutation {
        let mut x = g.clone();
        for level in &self.levels {
            let best = level
                .orbit
                .iter()
                .enumerate()
                .min_by_key(|&(_, &gamma)| x.images()[gamma as usize])
                .map(|(i, _)| i)
                .unwrap_or(0);
            if best != 0 {
                x = level.reps[best].0.mul_unchecked(&x);
            }
        }
        x
    }
}
