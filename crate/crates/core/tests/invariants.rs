//! Structural identities checked on every group and space of a fixed corpus.

use std::collections::HashSet;

use epls::families::{
    build_affine_group, build_difference_set_space, build_gscript, build_psl2_dihedral_coset,
    AffineParams, DEFAULT_SEED,
};
use epls::perm::InducedAction;
use epls::star::{build_ls, has_property_star, is_transverse, lambda};
use epls::{GroupSpacePair, LinearSpace, PermGroup, Permutation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn affine(p: u64, d: u32, t: u64, e: u32) -> PermGroup {
    build_affine_group(AffineParams::new(p, d, t, e).unwrap()).unwrap()
}

fn corpus() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("sym4", PermGroup::symmetric(4)),
        ("sym6", PermGroup::symmetric(6)),
        ("sym7", PermGroup::symmetric(7)),
        ("c6", PermGroup::cyclic(6)),
        ("aff-2-2-3-2", affine(2, 2, 3, 2)),
        ("aff-2-4-5-2", affine(2, 4, 5, 2)),
        ("aff-5-2-3-2", affine(5, 2, 3, 2)),
        ("aff-2-3-7-3", affine(2, 3, 7, 3)),
        ("aff-13-1-3-1", affine(13, 1, 3, 1)),
        ("aff-3-2-4-2", affine(3, 2, 4, 2)),
        ("aff-2-8-17-2", affine(2, 8, 17, 2)),
        ("gscript-3", build_gscript(3, 1).unwrap()),
        ("gscript-5", build_gscript(5, 1).unwrap()),
        ("psl2-5", build_psl2_dihedral_coset(5, DEFAULT_SEED).unwrap().group),
        ("psl2-17", build_psl2_dihedral_coset(17, DEFAULT_SEED).unwrap().group),
        ("z13", build_difference_set_space(13, &[0, 1, 3, 9]).unwrap().1),
    ]
}

/// Brute-force closure of the generators, images stored as `u16`.
fn closure(g: &PermGroup) -> HashSet<Vec<u16>> {
    let gens: Vec<Vec<u16>> = g
        .generators()
        .iter()
        .map(|p| p.images().iter().map(|&x| x as u16).collect())
        .collect();
    let id: Vec<u16> = (0..g.degree() as u16).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for s in &gens {
            let y: Vec<u16> = x.iter().map(|&i| s[i as usize]).collect();
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

#[test]
fn order_and_membership_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, g) in corpus() {
        if g.order() > 100_000 {
            continue;
        }
        let elems = closure(&g);
        assert_eq!(g.order(), elems.len() as u128, "{name}");
        for e in elems.iter().take(2_000) {
            let p = Permutation::from_images(e.iter().map(|&x| x as usize)).unwrap();
            assert!(g.contains(&p), "{name}");
        }
        let sym = PermGroup::symmetric(g.degree());
        for _ in 0..500 {
            let x = sym.random_element(&mut rng);
            let key: Vec<u16> = x.images().iter().map(|&i| i as u16).collect();
            assert_eq!(g.contains(&x), elems.contains(&key), "{name}");
        }
    }
}

#[test]
fn orbit_stabilizer_identity() {
    for (name, g) in corpus() {
        for x in 0..g.degree() {
            let orbit = g.orbit(x).unwrap();
            let stab = g.point_stabilizer(x).unwrap();
            assert_eq!(g.order(), orbit.len() as u128 * stab.order(), "{name} at {x}");
        }
    }
}

#[test]
fn minimal_blocks_are_blocks() {
    for (name, g) in corpus() {
        if !g.is_transitive() {
            continue;
        }
        for x in 1..g.degree().min(12) {
            let block = g.minimal_block(0, x).unwrap();
            let set: HashSet<usize> = block.iter().copied().collect();
            for s in g.generators() {
                let image: HashSet<usize> = block.iter().map(|&y| s.image(y)).collect();
                assert!(image == set || image.is_disjoint(&set), "{name}");
            }
            assert_eq!(g.degree() % block.len(), 0, "{name}");
        }
    }
}

/// `G_uv <= G_w` implies `G_uw <= G_v`, over all triples.
fn naive_property_star(g: &PermGroup) -> bool {
    let n = g.degree();
    let two: Vec<Vec<PermGroup>> = (0..n)
        .map(|u| (0..n).map(|v| g.pointwise_stabilizer(&[u, v]).unwrap()).collect())
        .collect();
    let fixes = |h: &PermGroup, x: usize| h.generators().iter().all(|s| s.fixes(x));
    (0..n).all(|u| {
        (0..n).all(|v| {
            (0..n)
                .filter(|&w| w != u)
                .all(|w| !fixes(&two[u][v], w) || fixes(&two[u][w], v))
        })
    })
}

#[test]
fn property_star_matches_naive_scan() {
    let mut verdicts = Vec::new();
    let mut extra = vec![
        // Sym(4) on the six 2-subsets of {0,1,2,3}.
        ("sym4-pairs", {
            let pairs: Vec<[u32; 2]> = (0..4)
                .flat_map(|a| (a + 1..4).map(move |b| [a, b]))
                .collect();
            let act = |p: &Permutation| {
                Permutation::from_images(pairs.iter().map(|s| {
                    let img = p.apply_to_set(s);
                    pairs.iter().position(|t| t[..] == img[..]).unwrap()
                }))
                .unwrap()
            };
            PermGroup::new(PermGroup::symmetric(4).generators().iter().map(act).collect()).unwrap()
        }),
    ];
    let mut all = corpus();
    all.append(&mut extra);
    for (name, g) in all {
        if g.degree() > 32 || !g.is_transitive() {
            continue;
        }
        let fast = has_property_star(&g).unwrap().is_none();
        assert_eq!(fast, naive_property_star(&g), "{name}");
        verdicts.push(fast);
    }
    assert!(verdicts.contains(&true));
    assert!(verdicts.contains(&false));
}

fn line_spaces() -> Vec<(&'static str, PermGroup, LinearSpace)> {
    corpus()
        .into_iter()
        .filter(|(_, g)| g.is_transitive() && has_property_star(g).unwrap().is_none())
        .map(|(name, g)| {
            let s = build_ls(&g).unwrap();
            (name, g, s)
        })
        .collect()
}

#[test]
fn line_spaces_are_linear_and_invariant() {
    let spaces = line_spaces();
    assert!(spaces.len() >= 8);
    for (name, g, s) in &spaces {
        let again = LinearSpace::validate(s.v(), s.lines().iter().map(|l| l.iter().map(|&x| x as usize).collect()).collect());
        assert_eq!(again.as_ref(), Ok(s), "{name}");
        assert!(s.group_preserves(g).unwrap(), "{name}");
        if s.is_regular() && s.is_nontrivial() {
            assert!(s.parameters().identities_hold(), "{name}");
        }
    }
}

#[test]
fn lambda_lines_are_well_defined() {
    for (name, g, s) in line_spaces() {
        for line in s.lines().iter().take(12) {
            let pts: Vec<usize> = line.iter().map(|&x| x as usize).collect();
            for (i, &x) in pts.iter().enumerate().take(4) {
                for &y in &pts[i + 1..] {
                    assert_eq!(lambda(&g, x, y).unwrap(), pts, "{name}");
                }
            }
        }
    }
}

#[test]
fn setwise_stabilizers_of_lines() {
    for (name, g, s) in line_spaces() {
        for line in s.lines() {
            let pts: Vec<usize> = line.iter().map(|&x| x as usize).collect();
            let (stab, orbit) = g.setwise_stabilizer_via_orbit(&pts, 1_000_000).unwrap();
            assert_eq!(g.order(), orbit as u128 * stab.order(), "{name}");
        }
    }
}

#[test]
fn transverse_pairs_have_semiregular_line_actions() {
    let mut checked = 0;
    for (name, g, s) in line_spaces() {
        let pair = GroupSpacePair::new(s.clone(), g.clone()).unwrap();
        if is_transverse(&pair).is_some() {
            continue;
        }
        for line in s.lines().iter().take(20) {
            let pts: Vec<usize> = line.iter().map(|&x| x as usize).collect();
            let (stab, _) = g.setwise_stabilizer_via_orbit(&pts, 1_000_000).unwrap();
            let induced: InducedAction = stab.induced_action(&pts).unwrap();
            assert_eq!(induced.kernel_order * induced.group.order(), stab.order(), "{name}");
            assert!(induced.is_semiregular(), "{name}");
            checked += 1;
        }
        // A transverse pair refines the line space of its group.
        assert!(LinearSpace::pairs(s.v()).is_refinement(&s).unwrap());
    }
    assert!(checked > 0);
}

#[test]
fn extremely_primitive_corpus_falls_in_one_case() {
    use epls::eprim::is_extremely_primitive;
    for (name, g) in corpus() {
        if !is_extremely_primitive(&g).unwrap().extremely_primitive {
            continue;
        }
        let guv = g.pointwise_stabilizer(&[0, 1]).unwrap().order();
        let n = g.degree() as u64;
        let prime_power_degree = epls::gf::numtheory::as_prime_power(n).is_some();
        let psl_case = !prime_power_degree && guv == 2;
        let refinement_case = prime_power_degree && guv > 1;
        let regular_stabilizer_case = guv == 1;
        let cases = [psl_case, refinement_case, regular_stabilizer_case];
        let symmetric = n <= 30 && g.order() == (1..=n as u128).product::<u128>();
        if symmetric {
            continue;
        }
        assert_eq!(cases.iter().filter(|&&c| c).count(), 1, "{name}");
        let s = build_ls(&g).unwrap();
        if regular_stabilizer_case {
            assert_eq!(s, LinearSpace::single_line(g.degree()), "{name}");
        } else {
            let pair = GroupSpacePair::new(s, g.clone()).unwrap();
            assert!(is_transverse(&pair).is_none(), "{name}");
        }
    }
}
