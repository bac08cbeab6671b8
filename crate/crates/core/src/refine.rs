//! Refinements of line-transitive spaces: building one from an inner space
//! on a single line, and recovering the inner space from a refinement.
//!
//! An inner space lives on `0..k` where local point `i` is the `i`-th
//! smallest point of the chosen line, the same relabelling as
//! [`PermGroup::induced_action`].

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linspace::{LinearSpace, SpaceParams};
use crate::perm::{InducedAction, PermGroup, DEFAULT_SET_ORBIT_BOUND};
use crate::star::{is_line_transitive, GroupSpacePair};

/// Limits for [`construct_refinement`].
#[derive(Clone, Copy, Debug)]
pub struct RefineOptions {
    /// Largest total number of point-line incidences of the output.
    pub incidence_cap: u128,
    pub set_orbit_bound: usize,
}

impl Default for RefineOptions {
    fn default() -> Self {
        RefineOptions {
            incidence_cap: 100_000_000,
            set_orbit_bound: DEFAULT_SET_ORBIT_BOUND,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Refinement {
    pub space: LinearSpace,
    /// Number of orbits of the group on the lines of `space`.
    pub line_orbits: usize,
    pub line_transitive: bool,
}

/// Summary printed by the command-line tool.
#[derive(Clone, Debug, Serialize)]
pub struct RefinementReport {
    pub parameters: SpaceParams,
    pub line_sizes: Vec<(usize, usize)>,
    pub line_orbits: usize,
    pub line_transitive: bool,
}

impl Refinement {
    pub fn report(&self) -> RefinementReport {
        RefinementReport {
            parameters: self.space.parameters(),
            line_sizes: self.space.line_size_histogram(),
            line_orbits: self.line_orbits,
            line_transitive: self.line_transitive,
        }
    }
}

fn check_line(pair: &GroupSpacePair, line: &[usize]) -> Result<Vec<usize>> {
    let mut sorted = line.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let key: Vec<u32> = sorted.iter().map(|&x| x as u32).collect();
    if !pair.space().contains_line(&key) {
        return Err(Error::NotALine(sorted));
    }
    Ok(sorted)
}

/// `G_ℓ` induced on `ℓ`.
pub fn line_action(pair: &GroupSpacePair, line: &[usize]) -> Result<InducedAction> {
    let line = check_line(pair, line)?;
    let (stab, _) = pair
        .group()
        .setwise_stabilizer_via_orbit(&line, DEFAULT_SET_ORBIT_BOUND)?;
    stab.induced_action(&line)
}

/// The `G`-orbits of the inner lines carried onto `line`.
pub fn construct_refinement(
    pair: &GroupSpacePair,
    line: &[usize],
    inner: &LinearSpace,
    opts: RefineOptions,
) -> Result<Refinement> {
    let line = check_line(pair, line)?;
    if inner.v() != line.len() {
        return Err(Error::InvalidParameters(format!(
            "inner space has {} points but the line has {}",
            inner.v(),
            line.len()
        )));
    }
    let inner_incidences: u128 = inner.lines().iter().map(|l| l.len() as u128).sum();
    if pair.space().b() as u128 * inner_incidences > opts.incidence_cap {
        return Err(Error::BoundExceeded {
            what: "incidences of the refinement (stretch-scale instance)",
            bound: opts.incidence_cap,
        });
    }
    if !is_line_transitive(pair)? {
        return Err(Error::NotLineTransitive);
    }
    let induced = line_action(pair, &line)?;
    if !inner.group_preserves(&induced.group)? {
        return Err(Error::InnerNotInvariant);
    }
    let g = pair.group();
    let mut lines: HashSet<Vec<u32>> = HashSet::new();
    let mut line_orbits = 0;
    for t in inner.lines() {
        let global: Vec<usize> = t.iter().map(|&i| line[i as usize]).collect();
        let key: Vec<u32> = global.iter().map(|&x| x as u32).collect();
        if lines.contains(&key) {
            continue;
        }
        line_orbits += 1;
        let orbit = g.set_orbit(&global, opts.set_orbit_bound)?;
        lines.extend(orbit.members().iter().cloned());
    }
    let space = LinearSpace::from_lines(pair.space().v(), lines.into_iter().collect())?;
    Ok(Refinement {
        space,
        line_transitive: line_orbits == 1,
        line_orbits,
    })
}

/// The lines of `r` inside `line`, as a space on `0..|line|`.
pub fn extract_inner_space(
    r: &LinearSpace,
    pair: &GroupSpacePair,
    line: &[usize],
) -> Result<LinearSpace> {
    let line = check_line(pair, line)?;
    if !r.is_refinement(pair.space())? {
        return Err(Error::NotARefinement);
    }
    if !r.group_preserves(pair.group())? {
        return Err(Error::NotAutomorphisms);
    }
    if !is_line_transitive(pair)? {
        return Err(Error::NotLineTransitive);
    }
    r.restrict_to(&line)
}

/// Rebuilding `r` from its inner space on `line` gives `r` back.
pub fn roundtrip_check(r: &LinearSpace, pair: &GroupSpacePair, line: &[usize]) -> Result<bool> {
    let inner = extract_inner_space(r, pair, line)?;
    let rebuilt = construct_refinement(pair, line, &inner, RefineOptions::default())?;
    Ok(&rebuilt.space == r)
}

/// For a regular group of even order `k` on `0..k`: the two orbits of an
/// index-two subgroup as lines, plus every pair meeting both.
pub fn coset_crosspair_space(regular: &PermGroup) -> Result<LinearSpace> {
    let k = regular.degree();
    if !(regular.is_transitive() && regular.order() == k as u128) {
        return Err(Error::InvalidParameters("group is not regular".into()));
    }
    if !k.is_multiple_of(2) || k < 4 {
        return Err(Error::InvalidParameters(format!("degree {k} is not even and at least 4")));
    }
    let elements = regular.elements(1 << 16)?;
    let half = (k / 2) as u128;
    let mut index_two = None;
    'search: for (i, a) in elements.iter().enumerate() {
        for b in &elements[i..] {
            let h = PermGroup::new(vec![a.clone(), b.clone()])?;
            if h.order() == half {
                index_two = Some(h);
                break 'search;
            }
        }
    }
    let h = index_two.ok_or_else(|| {
        Error::SearchFailed("no index-two subgroup generated by two elements".into())
    })?;
    let coset = h.orbit(0)?;
    let mut inside = vec![false; k];
    for &x in &coset {
        inside[x] = true;
    }
    let other: Vec<usize> = (0..k).filter(|&x| !inside[x]).collect();
    let mut lines = vec![coset.clone(), other.clone()];
    for &a in &coset {
        for &b in &other {
            lines.push(vec![a, b]);
        }
    }
    LinearSpace::validate(k, lines)
}
