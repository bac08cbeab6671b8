//! Constructors for the concrete groups and seed spaces.
//!
//! Every constructor labels points through the field labelling of
//! [`FieldCtx`]: an element `sum c_i x^i` of `GF(p^d)` is the point
//! `sum c_i p^i`, and a vector `(a, b)` over `GF(q)` is `a + q b`.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::numtheory::{as_prime_power, checked_prime_power, is_prime};
use crate::gf::{FieldCtx, FieldElement};
use crate::linspace::LinearSpace;
use crate::perm::{PermGroup, Permutation};

/// Largest point count accepted by the affine and geometry constructors.
pub const MAX_POINTS: u64 = 1_000_000;

/// Largest number of point-line incidences a constructor will produce.
pub const MAX_INCIDENCES: u128 = 100_000_000;

/// Seed for the random subgroup searches.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// `V ⋊ (C_t ⋊ C_e)` inside `AΓL(1, p^d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AffineParams {
    pub p: u64,
    pub d: u32,
    pub t: u64,
    pub e: u32,
}

impl AffineParams {
    /// Checks `p` prime, `t | p^d - 1` and `e | d`.
    pub fn new(p: u64, d: u32, t: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 || e == 0 || t == 0 {
            return Err(Error::InvalidParameters("d, t and e must be positive".into()));
        }
        let q = checked_prime_power(p, d).ok_or(Error::FieldTooLarge { p, d })?;
        if (q - 1) % t != 0 {
            return Err(Error::InvalidParameters(format!("t = {t} does not divide {}", q - 1)));
        }
        if !d.is_multiple_of(e) {
            return Err(Error::InvalidParameters(format!("e = {e} does not divide d = {d}")));
        }
        Ok(AffineParams { p, d, t, e })
    }

    /// `p^d`.
    pub fn q(&self) -> u64 {
        self.p.pow(self.d)
    }

    pub fn order(&self) -> u128 {
        self.q() as u128 * self.t as u128 * self.e as u128
    }
}

/// The generators of an affine group, kept apart so that subgroups such as
/// `T = H ∩ GL_1` can be formed.
#[derive(Clone, Debug)]
pub struct AffineGroup {
    pub params: AffineParams,
    /// Translations by `1, x, .., x^(d-1)`.
    pub translations: Vec<Permutation>,
    /// Multiplication by `α^((q-1)/t)`, absent when `t = 1`.
    pub multiplier: Option<Permutation>,
    /// `x -> x^(p^(d/e))`, absent when `e = 1`.
    pub frobenius: Option<Permutation>,
}

impl AffineGroup {
    pub fn group(&self) -> PermGroup {
        let mut gens = self.translations.clone();
        gens.extend(self.multiplier.clone());
        gens.extend(self.frobenius.clone());
        PermGroup::new(gens).expect("nonempty generators of one degree")
    }

    /// `H = C_t ⋊ C_e`, the stabiliser of 0.
    pub fn h(&self) -> PermGroup {
        let q = self.params.q() as usize;
        let gens: Vec<Permutation> = self
            .multiplier
            .iter()
            .chain(self.frobenius.iter())
            .cloned()
            .collect();
        if gens.is_empty() {
            PermGroup::trivial(q)
        } else {
            PermGroup::new(gens).expect("valid generators")
        }
    }

    /// `T = C_t`, the multiplicative part of `H`.
    pub fn t_subgroup(&self) -> PermGroup {
        match &self.multiplier {
            Some(m) => PermGroup::new(vec![m.clone()]).expect("valid generator"),
            None => PermGroup::trivial(self.params.q() as usize),
        }
    }
}

fn field_permutation<F>(field: &FieldCtx, f: F) -> Permutation
where
    F: Fn(&FieldElement) -> FieldElement,
{
    let images = field.elements().map(|x| field.label(&f(&x)));
    Permutation::from_images(images.map(|l| l as usize)).expect("field maps are bijections")
}

pub fn affine_group_parts(params: AffineParams) -> Result<AffineGroup> {
    let AffineParams { p, d, t, e } = AffineParams::new(params.p, params.d, params.t, params.e)?;
    let q = params.q();
    if q > MAX_POINTS {
        return Err(Error::InvalidParameters(format!("{q} points exceeds {MAX_POINTS}")));
    }
    let field = FieldCtx::new(p, d)?;
    let translations = (0..d)
        .map(|i| {
            let c = field.element(p.pow(i)).expect("basis label");
            field_permutation(&field, |x| field.add(x, &c).expect("same field"))
        })
        .collect();
    let multiplier = (t > 1).then(|| {
        let w = field
            .pow(&field.primitive_element(), (q - 1) / t)
            .expect("same field");
        field_permutation(&field, |x| field.mul(x, &w).expect("same field"))
    });
    let frobenius = (e > 1).then(|| {
        field_permutation(&field, |x| field.frobenius(x, d / e).expect("same field"))
    });
    Ok(AffineGroup {
        params,
        translations,
        multiplier,
        frobenius,
    })
}

/// The affine group of order `p^d t e` on `p^d` points.
pub fn build_affine_group(params: AffineParams) -> Result<PermGroup> {
    Ok(affine_group_parts(params)?.group())
}

/// Translations of `GF(p^d)^2` extended by the diagonal and antidiagonal
/// matrices of determinant `±1`.
pub fn build_gscript(p: u64, d: u32) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::InvalidParameters("p must be odd".into()));
    }
    if d == 0 {
        return Err(Error::InvalidParameters("d must be positive".into()));
    }
    let q = checked_prime_power(p, d)
        .filter(|&q| q.checked_mul(q).is_some_and(|n| n <= MAX_POINTS))
        .ok_or_else(|| {
            Error::InvalidParameters(format!("p^(2d) exceeds {MAX_POINTS} points"))
        })?;
    let field = FieldCtx::new(p, d)?;
    let elems: Vec<FieldElement> = field.elements().collect();
    let alpha = field.primitive_element();
    let alpha_inv = field.inv(&alpha)?;
    let minus_one = field.neg(&field.one())?;
    let q = q as usize;
    let table = |f: &dyn Fn(&FieldElement) -> FieldElement| -> Vec<usize> {
        elems.iter().map(|x| field.label(&f(x)) as usize).collect()
    };
    let vector_map = |fa: &[usize], fb: &[usize], swap: bool| {
        let images = (0..q * q).map(|label| {
            let (a, b) = (label % q, label / q);
            let (a, b) = (fa[a], fb[b]);
            if swap {
                b + q * a
            } else {
                a + q * b
            }
        });
        Permutation::from_images(images).expect("bijection")
    };
    let id: Vec<usize> = (0..q).collect();
    let mut gens = Vec::new();
    for i in 0..d {
        let c = field.element(p.pow(i))?;
        let shift = table(&|x| field.add(x, &c).expect("same field"));
        gens.push(vector_map(&shift, &id, false));
        gens.push(vector_map(&id, &shift, false));
    }
    let by_alpha = table(&|x| field.mul(x, &alpha).expect("same field"));
    let by_alpha_inv = table(&|x| field.mul(x, &alpha_inv).expect("same field"));
    let negate = table(&|x| field.mul(x, &minus_one).expect("same field"));
    gens.push(vector_map(&by_alpha, &by_alpha_inv, false));
    gens.push(vector_map(&id, &negate, false));
    gens.push(vector_map(&id, &id, true));
    PermGroup::new(gens)
}

/// `PSL_2(q-1)` acting on the cosets of a dihedral subgroup of order `2q`.
#[derive(Clone, Debug)]
pub struct Psl2Coset {
    pub q: u64,
    /// The coset action, of degree `(q-1)(q-2)/2`.
    pub group: PermGroup,
    /// The natural action on the projective line, `∞` labelled `q-1`.
    pub projective: PermGroup,
    /// Element of order `q` on the projective line.
    pub rotation: Permutation,
    /// Involution inverting `rotation`.
    pub reflection: Permutation,
}

/// Fermat primes accepted by [`build_psl2_dihedral_coset`].
pub const PSL2_FERMAT_PRIMES: [u64; 3] = [5, 17, 257];

pub fn build_psl2_dihedral_coset(q: u64, seed: u64) -> Result<Psl2Coset> {
    if !PSL2_FERMAT_PRIMES.contains(&q) {
        return Err(Error::InvalidParameters(format!(
            "q = {q} is not one of the Fermat primes {PSL2_FERMAT_PRIMES:?}"
        )));
    }
    let m = (q - 1).trailing_zeros();
    let field = FieldCtx::new(2, m)?;
    let inf = (q - 1) as usize;
    let on_line = |f: &dyn Fn(&FieldElement) -> Option<FieldElement>, inf_image: usize| {
        let mut images: Vec<usize> = field
            .elements()
            .map(|x| f(&x).map_or(inf, |y| field.label(&y) as usize))
            .collect();
        images.push(inf_image);
        Permutation::from_images(images).expect("projective maps are bijections")
    };
    let one = field.one();
    let alpha = field.primitive_element();
    let shift = on_line(&|x| Some(field.add(x, &one).expect("same field")), inf);
    let scale = on_line(&|x| Some(field.mul(x, &alpha).expect("same field")), inf);
    let invert = on_line(&|x| field.inv(x).ok(), 0);
    let projective = PermGroup::new(vec![shift, scale, invert])?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const TRIES: usize = 5_000_000;
    let rotation = (0..TRIES)
        .map(|_| projective.random_element(&mut rng))
        .find(|g| g.order() == q as u128)
        .ok_or_else(|| Error::SearchFailed(format!("no element of order {q} found")))?;
    let inverse = rotation.inverse();
    let reflection = (0..TRIES)
        .map(|_| projective.random_element(&mut rng))
        .find(|s| s.order() == 2 && rotation.conjugate_by(s) == inverse)
        .ok_or_else(|| Error::SearchFailed("no involution inverting the rotation".into()))?;
    let dihedral = PermGroup::new(vec![rotation.clone(), reflection.clone()])?;
    if dihedral.order() != 2 * q as u128 {
        return Err(Error::SearchFailed("dihedral subgroup has the wrong order".into()));
    }
    let group = coset_action(&projective, &dihedral)?;
    Ok(Psl2Coset {
        q,
        group,
        projective,
        rotation,
        reflection,
    })
}

/// Action of `g` on the right cosets of `h`, numbered in breadth-first
/// order from `h` itself; cosets are keyed by their least element.
pub fn coset_action(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    if !g.contains_group(h) {
        return Err(Error::NotASubgroup);
    }
    let n = g.degree();
    let prefix: Vec<usize> = (0..n).collect();
    let chain = h.chain_with_base(&prefix)?;
    let index = (g.order() / h.order()) as usize;
    let start = chain.lex_min_in_coset(&Permutation::identity(n));
    let mut reps = vec![start.clone()];
    let mut lookup = HashMap::from([(start, 0usize)]);
    let mut images: Vec<Vec<usize>> = vec![Vec::with_capacity(index); g.generators().len()];
    let mut i = 0;
    while i < reps.len() {
        for (gi, y) in g.generators().iter().enumerate() {
            let c = chain.lex_min_in_coset(&(&reps[i] * y));
            let j = match lookup.get(&c) {
                Some(&j) => j,
                None => {
                    reps.push(c.clone());
                    lookup.insert(c, reps.len() - 1);
                    reps.len() - 1
                }
            };
            images[gi].push(j);
        }
        i += 1;
    }
    debug_assert_eq!(reps.len(), index);
    let gens = images
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(gens)
}

/// Validates a perfect difference set modulo `m` and returns the space of
/// its translates with translation by 1 and every multiplier that fixes
/// the line set.
pub fn build_difference_set_space(m: usize, ds: &[usize]) -> Result<(LinearSpace, PermGroup)> {
    if !(3..=10_000).contains(&m) {
        return Err(Error::InvalidParameters(format!("modulus {m} outside 3..=10000")));
    }
    let mut set: Vec<usize> = ds.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() != ds.len() || set.iter().any(|&x| x >= m) {
        return Err(Error::InvalidParameters("residues must be distinct and below m".into()));
    }
    let mut seen = vec![0usize; m];
    for &a in &set {
        for &b in &set {
            if a != b {
                seen[(a + m - b) % m] += 1;
            }
        }
    }
    if seen[1..].iter().any(|&c| c != 1) {
        return Err(Error::InvalidParameters(format!(
            "{set:?} is not a perfect difference set modulo {m}"
        )));
    }
    let lines: Vec<Vec<usize>> = (0..m)
        .map(|i| set.iter().map(|&x| (x + i) % m).collect())
        .collect();
    let space = LinearSpace::validate(m, lines)?;
    let mut gens = vec![Permutation::from_images((0..m).map(|x| (x + 1) % m))?];
    for mu in 2..m {
        if crate::gf::numtheory::gcd(mu as u64, m as u64) != 1 {
            continue;
        }
        let g = Permutation::from_images((0..m).map(|x| x * mu % m))?;
        if space.is_automorphism(&g)? {
            gens.push(g);
        }
    }
    Ok((space, PermGroup::new(gens)?))
}

/// Lines of `AG(n, p^m)`: all one-dimensional affine subspaces.
pub fn build_affine_geometry_lines(p: u64, m: u32, n: u32) -> Result<LinearSpace> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::InvalidParameters("m must be positive".into()));
    }
    if n < 2 {
        return Err(Error::InvalidParameters(
            "dimension must be at least 2; a single affine line is not a geometry".into(),
        ));
    }
    let q = checked_prime_power(p, m)
        .ok_or(Error::FieldTooLarge { p, d: m })?;
    let v = checked_prime_power(q, n)
        .filter(|&v| v <= MAX_POINTS)
        .ok_or_else(|| Error::InvalidParameters(format!("q^n exceeds {MAX_POINTS} points")))?;
    debug_assert!(as_prime_power(q).is_some());
    let incidences = v as u128 * (v as u128 - 1) / (q as u128 - 1);
    if incidences > MAX_INCIDENCES {
        return Err(Error::BoundExceeded {
            what: "incidences of the affine geometry",
            bound: MAX_INCIDENCES,
        });
    }
    let field = FieldCtx::new(p, m)?;
    let q = q as usize;
    let v = v as usize;
    let elems: Vec<FieldElement> = field.elements().collect();
    let add: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| elems.iter().map(|b| field.label(&field.add(a, b).expect("same field")) as usize).collect())
        .collect();
    let mul: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| elems.iter().map(|b| field.label(&field.mul(a, b).expect("same field")) as usize).collect())
        .collect();
    let coords = |mut x: usize| -> Vec<usize> {
        (0..n)
            .map(|_| {
                let c = x % q;
                x /= q;
                c
            })
            .collect()
    };
    let label = |c: &[usize]| c.iter().rev().fold(0usize, |acc, &x| acc * q + x);
    let mut lines = Vec::new();
    let mut seen = vec![false; v];
    for dir in 1..v {
        let dc = coords(dir);
        let lead = dc.iter().rposition(|&c| c != 0).expect("nonzero");
        if dc[lead] != 1 {
            continue;
        }
        seen.iter_mut().for_each(|s| *s = false);
        for start in 0..v {
            if seen[start] {
                continue;
            }
            let sc = coords(start);
            let line: Vec<usize> = (0..q)
                .map(|lambda| {
                    let pt: Vec<usize> = sc
                        .iter()
                        .zip(&dc)
                        .map(|(&s, &d)| add[s][mul[lambda][d]])
                        .collect();
                    label(&pt)
                })
                .collect();
            for &x in &line {
                seen[x] = true;
            }
            lines.push(line);
        }
    }
    LinearSpace::validate(v, lines)
}
