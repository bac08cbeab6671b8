//! Fixed inputs shared by the benchmarks.

use epls::families::{build_affine_group, build_psl2_dihedral_coset, AffineParams, DEFAULT_SEED};
use epls::star::build_ls;
use epls::{GroupSpacePair, LinearSpace, PermGroup};

/// Affine group `(p, d, t, e)`.
pub fn affine(p: u64, d: u32, t: u64, e: u32) -> PermGroup {
    build_affine_group(AffineParams::new(p, d, t, e).expect("valid parameters")).expect("builds")
}

/// `PSL_2(16)` on the 120 cosets of a dihedral subgroup.
pub fn psl2_16() -> PermGroup {
    build_psl2_dihedral_coset(17, DEFAULT_SEED).expect("builds").group
}

/// A group together with its line space.
pub fn ls_pair(g: PermGroup) -> GroupSpacePair {
    let s = build_ls(&g).expect("group has the property");
    GroupSpacePair::new(s, g).expect("LS(G) is G-invariant")
}

/// The first line of a space, as points.
pub fn first_line(s: &LinearSpace) -> Vec<usize> {
    s.lines()[0].iter().map(|&x| x as usize).collect()
}
