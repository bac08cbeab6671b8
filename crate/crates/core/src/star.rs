//! Property (*), the line space `LS(G)` of the sets `Λ_uv`, transversality
//! and line stabilisers.
//!
//! For a transitive group the scans fix `u = 0` and let `v` run over
//! representatives of the `G_0`-orbits; any other triple is an image of one
//! of these.

use std::collections::{BTreeSet, HashSet};
use std::sync::OnceLock;

use serde::Serialize;

use crate::eprim::is_extremely_primitive;
use crate::error::{Error, Result};
use crate::families::{affine_group_parts, AffineParams};
use crate::gf::numtheory::{as_prime_power, divisors, is_prime};
use crate::linspace::LinearSpace;
use crate::perm::{PermGroup, Permutation, DEFAULT_ENUMERATION_BOUND, DEFAULT_SET_ORBIT_BOUND};

/// A space together with a group of automorphisms of it.
#[derive(Clone, Debug)]
pub struct GroupSpacePair {
    space: LinearSpace,
    group: PermGroup,
    suborbits: OnceLock<Vec<Suborbits>>,
}

/// Orbits of the stabiliser of one point.
#[derive(Clone, Debug)]
struct Suborbits {
    point: usize,
    /// Orbit label of every point.
    label: Vec<u32>,
    sizes: Vec<usize>,
}

impl GroupSpacePair {
    pub fn new(space: LinearSpace, group: PermGroup) -> Result<Self> {
        if !space.group_preserves(&group)? {
            return Err(Error::NotAutomorphisms);
        }
        Ok(GroupSpacePair {
            space,
            group,
            suborbits: OnceLock::new(),
        })
    }

    pub fn space(&self) -> &LinearSpace {
        &self.space
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// Stabiliser orbits at the least point of every orbit of `G`.
    fn suborbits(&self) -> &[Suborbits] {
        self.suborbits.get_or_init(|| {
            self.group
                .orbits()
                .iter()
                .map(|orb| {
                    let point = orb[0];
                    let stab = self.group.point_stabilizer(point).expect("point in range");
                    let orbits = stab.orbits();
                    let mut label = vec![0u32; self.group.degree()];
                    for (i, o) in orbits.iter().enumerate() {
                        for &x in o {
                            label[x] = i as u32;
                        }
                    }
                    Suborbits {
                        point,
                        label,
                        sizes: orbits.iter().map(Vec::len).collect(),
                    }
                })
                .collect()
        })
    }

    /// Calls `f(u, intersection size, orbit size)` for every flag at an
    /// orbit representative and every stabiliser orbit the line meets;
    /// stops at the first `false` and returns `(u, line, orbit, size)`.
    fn for_each_intersection<F>(&self, mut f: F) -> Option<(usize, usize, u32, usize)>
    where
        F: FnMut(usize, usize, usize) -> bool,
    {
        let inc = self.space.incidence();
        for sub in self.suborbits() {
            let u = sub.point;
            for &li in &inc[u] {
                let mut counts: Vec<(u32, usize)> = Vec::new();
                for &x in &self.space.lines()[li as usize] {
                    let l = sub.label[x as usize];
                    match counts.iter_mut().find(|(o, _)| *o == l) {
                        Some((_, c)) => *c += 1,
                        None => counts.push((l, 1)),
                    }
                }
                counts.sort_unstable();
                for (o, c) in counts {
                    let size = sub.sizes[o as usize];
                    if !f(u, c, size) {
                        return Some((u, li as usize, o, c));
                    }
                }
            }
        }
        None
    }

    fn orbit_points(&self, u: usize, label: u32) -> Vec<usize> {
        let sub = self
            .suborbits()
            .iter()
            .find(|s| s.point == u)
            .expect("representative");
        (0..self.group.degree())
            .filter(|&x| sub.label[x] == label)
            .collect()
    }
}

/// A triple `(u, v, w)` with `G_uv <= G_w` but not `G_uw <= G_v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StarCounterexample {
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

/// Returns `None` when the group has Property (*).
pub fn has_property_star(g: &PermGroup) -> Result<Option<StarCounterexample>> {
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    let n = g.degree();
    if n == 1 {
        return Ok(None);
    }
    let stab = g.point_stabilizer(0)?;
    let tree = SchreierForest::new(&stab);
    let mut fixed: Vec<Option<Vec<bool>>> = vec![None; n];
    for &r in &tree.roots {
        if r == 0 {
            continue;
        }
        let mut mask = vec![false; n];
        for x in g.pointwise_stabilizer(&[0, r])?.fixed_points() {
            mask[x] = true;
        }
        fixed[r] = Some(mask);
    }
    for &v in &tree.roots {
        if v == 0 {
            continue;
        }
        let lambda = fixed[v].as_ref().expect("computed");
        for w in (1..n).filter(|&w| lambda[w]) {
            // G_0w = (G_0r)^h with r^h = w and h in G_0, so G_0w fixes v
            // exactly when G_0r fixes v^(h^-1).
            let (r, pre) = tree.pull_back(w, v);
            if !fixed[r].as_ref().expect("computed")[pre] {
                return Ok(Some(StarCounterexample { u: 0, v, w }));
            }
        }
    }
    Ok(None)
}

/// Breadth-first Schreier trees for all orbits of a group.
struct SchreierForest {
    roots: Vec<usize>,
    root_of: Vec<usize>,
    parent: Vec<(usize, usize)>,
    inverses: Vec<crate::Permutation>,
}

impl SchreierForest {
    fn new(g: &PermGroup) -> Self {
        let n = g.degree();
        let gens = g.generators();
        let mut root_of = vec![usize::MAX; n];
        let mut parent = vec![(usize::MAX, usize::MAX); n];
        let mut roots = Vec::new();
        for x in 0..n {
            if root_of[x] != usize::MAX {
                continue;
            }
            roots.push(x);
            root_of[x] = x;
            let mut queue = vec![x];
            let mut i = 0;
            while i < queue.len() {
                let y = queue[i];
                for (gi, s) in gens.iter().enumerate() {
                    let z = s.image(y);
                    if root_of[z] == usize::MAX {
                        root_of[z] = x;
                        parent[z] = (y, gi);
                        queue.push(z);
                    }
                }
                i += 1;
            }
        }
        SchreierForest {
            roots,
            root_of,
            parent,
            inverses: gens.iter().map(|s| s.inverse()).collect(),
        }
    }

    /// With `h` the tree element carrying the root of `w` to `w`, returns
    /// that root and `x^(h^-1)`.
    fn pull_back(&self, w: usize, mut x: usize) -> (usize, usize) {
        let mut node = w;
        let root = self.root_of[w];
        while node != root {
            let (p, gi) = self.parent[node];
            x = self.inverses[gi].image(x);
            node = p;
        }
        (root, x)
    }
}

/// `Λ_uv`: the points fixed by the two-point stabiliser.
pub fn lambda(g: &PermGroup, u: usize, v: usize) -> Result<Vec<usize>> {
    Ok(g.pointwise_stabilizer(&[u, v])?.fixed_points())
}

/// The lines `Λ_uv`, closed under `G`. Refuses groups without Property (*).
pub fn build_ls(g: &PermGroup) -> Result<LinearSpace> {
    if let Some(c) = has_property_star(g)? {
        return Err(Error::PropertyStarFails {
            u: c.u,
            v: c.v,
            w: c.w,
        });
    }
    let n = g.degree();
    if n == 1 {
        return Ok(LinearSpace::single_line(1));
    }
    let stab = g.point_stabilizer(0)?;
    let mut lines: HashSet<Vec<u32>> = HashSet::new();
    for orb in stab.orbits() {
        let v = orb[0];
        if v == 0 {
            continue;
        }
        let line = lambda(g, 0, v)?;
        let as_u32: Vec<u32> = line.iter().map(|&x| x as u32).collect();
        if lines.contains(&as_u32) {
            continue;
        }
        let orbit = g.set_orbit(&line, DEFAULT_SET_ORBIT_BOUND)?;
        lines.extend(orbit.members().iter().cloned());
    }
    LinearSpace::from_lines(n, lines.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransverseWitness {
    pub u: usize,
    pub line: Vec<usize>,
    pub orbit: Vec<usize>,
    pub intersection: usize,
}

/// Every line meets every stabiliser orbit in at most one point. Flags are
/// taken at one point per orbit of the group.
pub fn is_transverse(pair: &GroupSpacePair) -> Option<TransverseWitness> {
    pair.for_each_intersection(|_, c, _| c <= 1)
        .map(|(u, li, o, c)| TransverseWitness {
            u,
            line: pair.space.lines()[li].iter().map(|&x| x as usize).collect(),
            orbit: pair.orbit_points(u, o),
            intersection: c,
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineBlockReport {
    pub holds: bool,
    /// Intersection sizes with nontrivial stabiliser orbits met by a line.
    pub observed: BTreeSet<usize>,
    pub witness: Option<TransverseWitness>,
}

/// For an extremely primitive group: every line meets each nontrivial
/// stabiliser orbit `Δ` in `0`, `1` or `|Δ|` points.
pub fn check_line_block_law(pair: &GroupSpacePair) -> Result<LineBlockReport> {
    if !is_extremely_primitive(&pair.group)?.extremely_primitive {
        return Err(Error::NotExtremelyPrimitive);
    }
    let mut observed = BTreeSet::new();
    let failure = pair.for_each_intersection(|_, c, size| {
        if size > 1 {
            observed.insert(c);
        }
        size == 1 || c <= 1 || c == size
    });
    let witness = failure.map(|(u, li, o, c)| TransverseWitness {
        u,
        line: pair.space.lines()[li].iter().map(|&x| x as usize).collect(),
        orbit: pair.orbit_points(u, o),
        intersection: c,
    });
    Ok(LineBlockReport {
        holds: witness.is_none(),
        observed,
        witness,
    })
}

/// One line orbit covers every line.
pub fn is_line_transitive(pair: &GroupSpacePair) -> Result<bool> {
    let Some(first) = pair.space.lines().first() else {
        return Ok(true);
    };
    let line: Vec<usize> = first.iter().map(|&x| x as usize).collect();
    let orbit = pair.group.set_orbit(&line, DEFAULT_SET_ORBIT_BOUND)?;
    Ok(orbit.len() == pair.space.b())
}

/// Structure of the stabiliser of the line `Λ_uv`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineStabilizerReport {
    pub line: Vec<usize>,
    pub two_point_order: u128,
    /// Pointwise stabiliser `G_[ℓ]`.
    pub kernel_order: u128,
    /// Setwise stabiliser `G_ℓ`.
    pub stabilizer_order: u128,
    pub line_orbit_length: usize,
    pub normalizer_order: u128,
    /// Order of `G_ℓ` induced on `ℓ`.
    pub induced_order: u128,
    pub induced_semiregular: bool,
    pub induced_regular: bool,
    /// `G_[ℓ] = G_uv`.
    pub kernel_is_two_point_stabilizer: bool,
    /// `G_ℓ = N_G(G_uv)`.
    pub stabilizer_is_normalizer: bool,
    /// `|G_ℓ^ℓ| = |N_G(G_uv)| / |G_uv|`.
    pub quotient_order_matches: bool,
}

pub fn line_stabilizer_report(g: &PermGroup, u: usize, v: usize) -> Result<LineStabilizerReport> {
    line_stabilizer_report_bounded(g, u, v, DEFAULT_ENUMERATION_BOUND)
}

pub fn line_stabilizer_report_bounded(
    g: &PermGroup,
    u: usize,
    v: usize,
    bound: u128,
) -> Result<LineStabilizerReport> {
    if u == v {
        return Err(Error::InvalidParameters("u and v must differ".into()));
    }
    if let Some(c) = has_property_star(g)? {
        return Err(Error::PropertyStarFails {
            u: c.u,
            v: c.v,
            w: c.w,
        });
    }
    let guv = g.pointwise_stabilizer(&[u, v])?;
    let line = guv.fixed_points();
    let kernel = g.pointwise_stabilizer(&line)?;
    let (stabilizer, line_orbit_length) = g.setwise_stabilizer_via_orbit(&line, DEFAULT_SET_ORBIT_BOUND)?;
    let normalizer = g.normalizer(&guv, bound)?;
    let induced = stabilizer.induced_action(&line)?;
    Ok(LineStabilizerReport {
        two_point_order: guv.order(),
        kernel_order: kernel.order(),
        stabilizer_order: stabilizer.order(),
        line_orbit_length,
        normalizer_order: normalizer.order(),
        induced_order: induced.group.order(),
        induced_semiregular: induced.is_semiregular(),
        induced_regular: induced.is_regular(),
        kernel_is_two_point_stabilizer: kernel.same_group(&guv),
        stabilizer_is_normalizer: stabilizer.same_group(&normalizer),
        quotient_order_matches: induced.group.order() * guv.order() == normalizer.order(),
        line,
    })
}

/// `x - y` on field labels written in base `p`.
fn label_sub(mut x: usize, mut y: usize, p: usize) -> usize {
    let (mut out, mut place) = (0, 1);
    while x > 0 || y > 0 {
        out += (x % p + p - y % p) % p * place;
        x /= p;
        y /= p;
        place *= p;
    }
    out
}

/// The lines of `ℓ^G` through 0 are the sets `(ℓ - y)h` for `y` in `ℓ` and
/// `h` in `G_0`; they must cover every other point exactly once.
fn lines_through_zero_partition(line: &[usize], p: u64, q: usize, multiplier: Option<&Permutation>) -> bool {
    let mut through_zero: HashSet<Vec<u32>> = HashSet::new();
    for &y in line {
        let mut start: Vec<u32> = line.iter().map(|&x| label_sub(x, y, p as usize) as u32).collect();
        start.sort_unstable();
        let mut cur = start.clone();
        loop {
            let next = multiplier.map(|m| m.apply_to_set(&cur));
            through_zero.insert(cur);
            match next {
                Some(n) if n != start => cur = n,
                _ => break,
            }
        }
    }
    let mut covered = vec![false; q];
    for l in &through_zero {
        for &x in l.iter().filter(|&&x| x != 0) {
            if std::mem::replace(&mut covered[x as usize], true) {
                return false;
            }
        }
    }
    covered[1..].iter().all(|&c| c)
}

/// A line-transitive, non-transverse space found by [`search_orbit_union_spaces`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub params: AffineParams,
    /// The base line: 0 together with one or two orbits of `G_0`.
    pub line: Vec<usize>,
    pub v: usize,
    pub b: usize,
    pub k: usize,
    pub is_projective_plane_of_order_3: bool,
}

/// Scans the groups `C_p^d ⋊ C_t` with `t` a primitive prime divisor of
/// `p^d - 1` and `p^d < max_points` for line sets `ℓ^G` where `ℓ` is 0
/// together with one or two nontrivial `G_0`-orbits. Such a space is never
/// transverse, and it is line-transitive by construction; every hit that is
/// a nontrivial linear space is returned.
pub fn search_orbit_union_spaces(max_points: u64) -> Result<Vec<SearchHit>> {
    let mut hits = Vec::new();
    for q in 2..max_points {
        let Some((p, d)) = as_prime_power(q) else {
            continue;
        };
        for t in divisors(q - 1) {
            if !is_prime(t) || !crate::gf::is_primitive_prime_divisor(t, p, d) {
                continue;
            }
            let params = AffineParams::new(p, d, t, 1)?;
            let (v, k1, k2) = (q as u128, 1 + t as u128, 1 + 2 * t as u128);
            let feasible = |k: u128| (v - 1) % (k - 1) == 0 && (v * (v - 1)) % (k * (k - 1)) == 0;
            if !feasible(k1) && !feasible(k2) {
                continue;
            }
            let parts = affine_group_parts(params)?;
            let g = parts.group();
            let orbits: Vec<Vec<usize>> = g
                .point_stabilizer(0)?
                .orbits()
                .into_iter()
                .filter(|o| o[0] != 0)
                .collect();
            let mut candidates: Vec<Vec<usize>> = Vec::new();
            for (i, a) in orbits.iter().enumerate() {
                if feasible(k1) {
                    candidates.push(a.clone());
                }
                if feasible(k2) {
                    for b in &orbits[i + 1..] {
                        candidates.push(a.iter().chain(b).copied().collect());
                    }
                }
            }
            for mut line in candidates {
                line.push(0);
                line.sort_unstable();
                if !lines_through_zero_partition(&line, p, q as usize, parts.multiplier.as_ref()) {
                    continue;
                }
                let orbit = g.set_orbit(&line, DEFAULT_SET_ORBIT_BOUND)?;
                let k = line.len() as u128;
                if orbit.len() as u128 * k * (k - 1) != v * (v - 1) {
                    continue;
                }
                let Ok(space) = LinearSpace::from_lines(q as usize, orbit.members().to_vec()) else {
                    continue;
                };
                if !space.is_nontrivial() {
                    continue;
                }
                hits.push(SearchHit {
                    params,
                    v: space.v(),
                    b: space.b(),
                    k: line.len(),
                    is_projective_plane_of_order_3: space.v() == 13 && line.len() == 4,
                    line,
                });
            }
        }
    }
    Ok(hits)
}
