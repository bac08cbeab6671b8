use epls::families::{
    affine_group_parts, build_affine_geometry_lines, build_affine_group, build_difference_set_space,
    build_gscript, build_psl2_dihedral_coset, AffineParams, DEFAULT_SEED,
};
use epls::refine::{
    construct_refinement, coset_crosspair_space, extract_inner_space, line_action, roundtrip_check,
    RefineOptions,
};
use epls::star::{
    build_ls, check_line_block_law, has_property_star, is_line_transitive, is_transverse,
    line_stabilizer_report,
};
use std::collections::BTreeSet;

use epls::gf::FieldCtx;
use epls::{GroupSpacePair, LinearSpace, PermGroup, Permutation};

fn affine(p: u64, d: u32, t: u64, e: u32) -> PermGroup {
    build_affine_group(AffineParams::new(p, d, t, e).unwrap()).unwrap()
}

fn w16() -> (PermGroup, LinearSpace) {
    let g = build_psl2_dihedral_coset(17, DEFAULT_SEED).unwrap().group;
    let s = build_ls(&g).unwrap();
    (g, s)
}

fn first_line(s: &LinearSpace) -> Vec<usize> {
    s.lines()[0].iter().map(|&x| x as usize).collect()
}

#[test]
fn psl2_16_on_120_points() {
    let c = build_psl2_dihedral_coset(17, DEFAULT_SEED).unwrap();
    assert_eq!(c.projective.order(), 4080);
    let g = c.group;
    assert_eq!(g.degree(), 120);
    assert_eq!(g.order(), 4080);
    let stab = g.point_stabilizer(0).unwrap();
    assert_eq!(stab.order(), 34);
    assert_eq!(g.rank_and_subdegrees().unwrap(), vec![1, 17, 17, 17, 17, 17, 17, 17]);
    for v in 1..120 {
        assert_eq!(g.pointwise_stabilizer(&[0, v]).unwrap().order(), 2);
    }
    assert_eq!(has_property_star(&g).unwrap(), None);
}

#[test]
fn psl2_16_line_space() {
    let (g, s) = w16();
    let p = s.parameters();
    assert_eq!((p.v, p.b, p.k, p.r), (120, 255, Some(8), Some(17)));
    let pair = GroupSpacePair::new(s, g.clone()).unwrap();
    assert!(is_line_transitive(&pair).unwrap());
    assert!(is_transverse(&pair).is_none());
    let law = check_line_block_law(&pair).unwrap();
    assert!(law.holds);
    assert!(law.observed.iter().all(|&c| c <= 1));

    let r = line_stabilizer_report(&g, 0, 1).unwrap();
    assert_eq!(r.two_point_order, 2);
    assert_eq!(r.kernel_order, 2);
    assert_eq!(r.stabilizer_order, 16);
    assert_eq!(r.line_orbit_length, 255);
    assert_eq!(r.normalizer_order, 16);
    assert_eq!(r.induced_order, 8);
    assert!(r.induced_regular);
    assert!(r.kernel_is_two_point_stabilizer && r.stabilizer_is_normalizer && r.quotient_order_matches);

    let line = first_line(pair.space());
    let induced = line_action(&pair, &line).unwrap();
    assert_eq!(induced.kernel_order, 2);
    assert!(induced.is_regular());
    // The line stabiliser is elementary abelian: every element squares to 1.
    let (stab, _) = g.setwise_stabilizer_via_orbit(&line, 1_000).unwrap();
    for x in stab.elements(100).unwrap() {
        assert!(x.pow(2).is_identity());
    }
}

#[test]
fn affine_line_spaces() {
    for (p, d, t, e, params) in [
        (2, 4, 5, 2, (16, 20, 4, 5)),
        (2, 8, 17, 2, (256, 272, 16, 17)),
        (2, 2, 3, 2, (4, 6, 2, 3)),
        (2, 6, 9, 2, (64, 72, 8, 9)),
    ] {
        let g = affine(p, d, t, e);
        let s = build_ls(&g).unwrap();
        let sp = s.parameters();
        assert_eq!((sp.v, sp.b, sp.k.unwrap(), sp.r.unwrap()), params, "({p},{d},{t},{e})");
        assert!(sp.identities_hold());
        let pair = GroupSpacePair::new(s, g.clone()).unwrap();
        assert!(is_line_transitive(&pair).unwrap());
        let k = p.pow(d / e);
        let r = line_stabilizer_report(&g, 0, 1).unwrap();
        assert_eq!(r.kernel_order, e as u128);
        assert_eq!(r.stabilizer_order, k as u128 * e as u128);
        assert_eq!(r.induced_order, k as u128);
        assert!(r.induced_regular);
    }
}

#[test]
fn affine_2_4_5_2_space_is_the_affine_plane() {
    let s = build_ls(&affine(2, 4, 5, 2)).unwrap();
    // Oracle: GF(16) as a plane over its subfield F of order 4; lines are
    // a + cF for a in GF(16) and c nonzero.
    let f = FieldCtx::new(2, 4).unwrap();
    let elems: Vec<_> = f.elements().collect();
    let sub: Vec<_> = elems
        .iter()
        .filter(|x| f.pow(x, 4).unwrap() == **x)
        .cloned()
        .collect();
    assert_eq!(sub.len(), 4);
    let mut lines = BTreeSet::new();
    for a in &elems {
        for c in elems.iter().skip(1) {
            let mut l: Vec<u32> = sub
                .iter()
                .map(|x| f.label(&f.add(a, &f.mul(c, x).unwrap()).unwrap()) as u32)
                .collect();
            l.sort_unstable();
            lines.insert(l);
        }
    }
    let built: BTreeSet<Vec<u32>> = s.lines().iter().cloned().collect();
    assert_eq!(built, lines);
    let fixed = affine(2, 4, 5, 2).pointwise_stabilizer(&[0, 1]).unwrap().fixed_points();
    assert_eq!(fixed.len(), 4);
}

#[test]
fn frobenius_type_group_gives_single_line() {
    let g = affine(13, 1, 3, 1);
    assert_eq!(build_ls(&g).unwrap(), LinearSpace::single_line(13));
}

#[test]
fn z13_plane() {
    let (s, g) = build_difference_set_space(13, &[0, 1, 3, 9]).unwrap();
    assert_eq!(has_property_star(&g).unwrap(), None);
    let pair = GroupSpacePair::new(s, g).unwrap();
    let w = is_transverse(&pair).unwrap();
    assert_eq!((w.u, w.line.clone(), w.orbit.clone(), w.intersection), (0, vec![0, 1, 3, 9], vec![1, 3, 9], 3));
    assert!(is_line_transitive(&pair).unwrap());
}

#[test]
fn two_line_orbit_space_on_25_points() {
    // Generators and base lines given with 1-based points.
    let a = [
        [2, 19, 6], [3, 25, 11], [4, 7, 16], [5, 13, 21], [8, 24, 9], [10, 15, 14], [12, 17, 20],
        [18, 23, 22],
    ];
    let b = [
        [1, 2, 3, 5, 4], [6, 7, 8, 10, 9], [11, 12, 13, 15, 14], [16, 17, 18, 20, 19], [21, 22, 23, 25, 24],
    ];
    let zero = |c: &[usize]| c.iter().map(|&x| x - 1).collect::<Vec<_>>();
    let ga = Permutation::from_cycles(25, &a.iter().map(|c| zero(c)).collect::<Vec<_>>()).unwrap();
    let gb = Permutation::from_cycles(25, &b.iter().map(|c| zero(c)).collect::<Vec<_>>()).unwrap();
    let g = PermGroup::new(vec![ga, gb]).unwrap();
    assert_eq!(g.order(), 75);
    assert!(epls::eprim::is_extremely_primitive(&g).unwrap().extremely_primitive);
    let mut lines = Vec::new();
    for l in [zero(&[1, 2, 6, 19]), zero(&[1, 3, 11, 25])] {
        let orbit = g.set_orbit(&l, 1_000).unwrap();
        lines.extend(orbit.members().iter().map(|m| m.iter().map(|&x| x as usize).collect::<Vec<_>>()));
    }
    let s = LinearSpace::validate(25, lines).unwrap();
    let p = s.parameters();
    assert_eq!((p.v, p.k, p.r, p.b), (25, Some(4), Some(8), 50));
    let pair = GroupSpacePair::new(s, g).unwrap();
    assert!(!is_line_transitive(&pair).unwrap());
    let w = is_transverse(&pair).unwrap();
    assert_eq!(w.intersection, 3);
}

#[test]
fn gscript_instances() {
    for (p, d) in [(3, 1), (5, 1), (3, 2), (5, 2)] {
        let g = build_gscript(p, d).unwrap();
        let q = p.pow(d) as u128;
        assert!(g.is_transitive());
        assert_eq!(g.point_stabilizer(0).unwrap().order(), 4 * (q - 1));
        assert!(epls::eprim::is_three_halves_transitive(&g).unwrap());
        assert!(!epls::eprim::is_extremely_primitive(&g).unwrap().extremely_primitive);
    }
}

#[test]
fn ag_refinement_of_the_256_point_space() {
    let g = affine(2, 8, 17, 2);
    let s = build_ls(&g).unwrap();
    let pair = GroupSpacePair::new(s, g.clone()).unwrap();
    let line = first_line(pair.space());
    assert_eq!(line[0], 0);
    let inner = build_affine_geometry_lines(2, 2, 2).unwrap();
    let r = construct_refinement(&pair, &line, &inner, RefineOptions::default()).unwrap();
    assert_eq!(r.space.v(), 256);
    assert!(r.space.lines().iter().all(|l| l.len() == 4));
    assert!(r.space.is_refinement(pair.space()).unwrap());
    assert!(r.space.group_preserves(&g).unwrap());
    // Lines of R inside one parent line are G-equivalent only through the
    // line stabiliser, whose image on the line is the translation group of
    // order 16; it fixes each of the 5 parallel classes.
    assert_eq!(r.line_orbits, 5);
    assert!(!r.line_transitive);
    assert_eq!(r.space.b(), 272 * 20);
    assert_ne!(g.order() % r.space.b() as u128, 0);
    let rp = GroupSpacePair::new(r.space.clone(), g).unwrap();
    assert!(!is_line_transitive(&rp).unwrap());
    assert!(is_transverse(&rp).is_none());
    assert_eq!(extract_inner_space(&r.space, &pair, &line).unwrap(), inner);
    assert!(roundtrip_check(&r.space, &pair, &line).unwrap());
}

#[test]
fn mixed_refinement_of_w16() {
    let (g, s) = w16();
    let pair = GroupSpacePair::new(s, g.clone()).unwrap();
    let line = first_line(pair.space());
    let induced = line_action(&pair, &line).unwrap();
    let inner = coset_crosspair_space(&induced.group).unwrap();
    assert_eq!(inner.line_size_histogram(), vec![(2, 16), (4, 2)]);
    let r = construct_refinement(&pair, &line, &inner, RefineOptions::default()).unwrap();
    assert!(r.space.is_refinement(pair.space()).unwrap());
    assert!(r.space.group_preserves(&g).unwrap());
    assert!(!r.line_transitive);
    let rp = GroupSpacePair::new(r.space.clone(), g).unwrap();
    assert!(!is_line_transitive(&rp).unwrap());
    assert!(is_transverse(&rp).is_none());
    assert!(roundtrip_check(&r.space, &pair, &line).unwrap());
}

#[test]
fn stretch_scale_refinement_is_rejected() {
    // The incidence cap is checked before any group work, so a tight cap on
    // a small pair stands in for a parent with millions of lines.
    let parts = affine_group_parts(AffineParams::new(2, 4, 5, 2).unwrap()).unwrap();
    let g = parts.group();
    let s = build_ls(&g).unwrap();
    let pair = GroupSpacePair::new(s, g).unwrap();
    let line = first_line(pair.space());
    let opts = RefineOptions {
        incidence_cap: 20 * 4 - 1,
        ..RefineOptions::default()
    };
    let err = construct_refinement(&pair, &line, &LinearSpace::single_line(4), opts).unwrap_err();
    assert!(err.to_string().contains("stretch-scale"));
}
