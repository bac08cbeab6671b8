//! Extreme primitivity, the arithmetic classification of the soluble affine
//! case and a survey comparing the two.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{affine_group_parts, AffineParams};
use crate::gf::numtheory::{as_prime_power, divisors, is_primitive_prime_divisor};
use crate::perm::PermGroup;

/// Where the extreme primitivity test stopped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "stage", rename_all = "snake_case")]
pub enum EpStage {
    Passed,
    Intransitive,
    Regular,
    /// A nontrivial block of the whole group.
    Imprimitive { block: Vec<usize> },
    /// A nontrivial block of `G_0` on one of its orbits.
    SuborbitImprimitive { orbit: Vec<usize>, block: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpVerdict {
    pub extremely_primitive: bool,
    pub stage: EpStage,
}

impl EpVerdict {
    fn fail(stage: EpStage) -> Self {
        EpVerdict {
            extremely_primitive: false,
            stage,
        }
    }
}

/// Transitive with all nontrivial subdegrees equal and greater than one.
pub fn is_three_halves_transitive(g: &PermGroup) -> Result<bool> {
    let sub = g.rank_and_subdegrees()?;
    let nontrivial = &sub[1..];
    Ok(!nontrivial.is_empty() && nontrivial[0] > 1 && nontrivial.iter().all(|&s| s == nontrivial[0]))
}

/// Transitive, non-regular, primitive, and `G_0` primitive on each of its
/// nontrivial orbits. Total: failures are reported through the stage.
pub fn is_extremely_primitive(g: &PermGroup) -> Result<EpVerdict> {
    if !g.is_transitive() {
        return Ok(EpVerdict::fail(EpStage::Intransitive));
    }
    if g.order() == g.degree() as u128 {
        return Ok(EpVerdict::fail(EpStage::Regular));
    }
    if let Some(block) = g.nontrivial_block()? {
        return Ok(EpVerdict::fail(EpStage::Imprimitive { block }));
    }
    let stab = g.point_stabilizer(0)?;
    for orbit in stab.orbits() {
        if orbit.len() <= 1 {
            continue;
        }
        let induced = stab.induced_action(&orbit)?;
        if let Some(local) = induced.group.nontrivial_block()? {
            let block = local.iter().map(|&i| induced.to_global(i)).collect();
            return Ok(EpVerdict::fail(EpStage::SuborbitImprimitive { orbit, block }));
        }
    }
    Ok(EpVerdict {
        extremely_primitive: true,
        stage: EpStage::Passed,
    })
}

/// `t` is a primitive prime divisor of `p^d - 1`, and `e = 1` or
/// `p^d - 1 = t (p^(d/e) - 1)`.
pub fn classification_predicate(params: &AffineParams) -> bool {
    let AffineParams { p, d, t, e } = *params;
    is_primitive_prime_divisor(t, p, d)
        && (e == 1 || params.q() as u128 - 1 == t as u128 * (p.pow(d / e) as u128 - 1))
}

/// `e = 1` or `p^d - 1` divides `t (p^(d/e) - 1)`.
pub fn orbit_condition_predicate(params: &AffineParams) -> bool {
    let AffineParams { p, d, t, e } = *params;
    e == 1 || (t as u128 * (p.pow(d / e) as u128 - 1)).is_multiple_of(params.q() as u128 - 1)
}

/// Survey size limit without an explicit override.
pub const DEFAULT_SURVEY_CAP: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRecord {
    pub p: u64,
    pub d: u32,
    pub t: u64,
    pub e: u32,
    pub order: u128,
    pub ep_direct: bool,
    pub ep_formula: bool,
    pub subdegrees: Vec<usize>,
    pub agree: bool,
    pub three_halves: bool,
    /// `T` and `H` have the same orbits.
    pub same_orbits: bool,
    /// All orbits of `H` off 0 have one size.
    pub equal_suborbits: bool,
    pub orbit_condition: bool,
    /// The three conditions above agree.
    pub orbit_conditions_agree: bool,
}

/// Every `(p, d, t, e)` with `2 <= p^d <= max_points`, `t | p^d - 1` and
/// `e | d`, in lexicographic order.
pub fn survey_instances(max_points: u64) -> Vec<AffineParams> {
    let mut out = Vec::new();
    for q in 2..=max_points {
        let Some((p, d)) = as_prime_power(q) else {
            continue;
        };
        for t in divisors(q - 1) {
            for e in divisors(d as u64) {
                out.push(AffineParams::new(p, d, t, e as u32).expect("divisibility holds"));
            }
        }
    }
    out.sort();
    out
}

pub fn survey_instance(params: AffineParams) -> Result<SurveyRecord> {
    let parts = affine_group_parts(params)?;
    let g = parts.group();
    let verdict = is_extremely_primitive(&g)?;
    let ep_formula = classification_predicate(&params);
    let subdegrees = g.rank_and_subdegrees()?;
    let h = parts.h();
    let mut h_orbits = h.orbits();
    let t_orbits = parts.t_subgroup().orbits();
    h_orbits.sort();
    let same_orbits = h_orbits == t_orbits;
    let off_zero: Vec<usize> = h_orbits.iter().filter(|o| o != &&vec![0]).map(Vec::len).collect();
    let equal_suborbits = off_zero.iter().all(|&s| s == off_zero[0]);
    let orbit_condition = orbit_condition_predicate(&params);
    Ok(SurveyRecord {
        p: params.p,
        d: params.d,
        t: params.t,
        e: params.e,
        order: g.order(),
        ep_direct: verdict.extremely_primitive,
        ep_formula,
        agree: verdict.extremely_primitive == ep_formula,
        three_halves: is_three_halves_transitive(&g)?,
        subdegrees,
        same_orbits,
        equal_suborbits,
        orbit_condition,
        orbit_conditions_agree: same_orbits == equal_suborbits && equal_suborbits == orbit_condition,
    })
}

/// Runs [`survey_instance`] over [`survey_instances`] on `jobs` threads
/// (0 means the rayon default). Records come back in instance order.
pub fn survey(max_points: u64, jobs: usize) -> Result<Vec<SurveyRecord>> {
    let instances = survey_instances(max_points);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameters(e.to_string()))?;
    pool.install(|| instances.into_par_iter().map(survey_instance).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_affine_group, build_gscript};

    fn params(p: u64, d: u32, t: u64, e: u32) -> AffineParams {
        AffineParams::new(p, d, t, e).unwrap()
    }

    #[test]
    fn symmetric_groups_are_extremely_primitive() {
        for n in 3..=7 {
            let v = is_extremely_primitive(&PermGroup::symmetric(n)).unwrap();
            assert!(v.extremely_primitive, "Sym({n})");
        }
        let v = is_extremely_primitive(&PermGroup::symmetric(2)).unwrap();
        assert_eq!(v.stage, EpStage::Regular);
    }

    #[test]
    fn gscript_fails_at_the_stabiliser() {
        let v = is_extremely_primitive(&build_gscript(3, 1).unwrap()).unwrap();
        assert!(!v.extremely_primitive);
        assert!(matches!(v.stage, EpStage::SuborbitImprimitive { .. }));
    }

    #[test]
    fn affine_examples() {
        let ep = |p, d, t, e| {
            is_extremely_primitive(&build_affine_group(params(p, d, t, e)).unwrap())
                .unwrap()
                .extremely_primitive
        };
        assert!(!ep(5, 2, 3, 2));
        assert!(ep(2, 4, 5, 2));
        assert!(ep(2, 2, 3, 2));
        assert!(!ep(2, 4, 3, 1));
    }

    #[test]
    fn regular_and_intransitive() {
        let c6 = PermGroup::cyclic(6);
        assert_eq!(is_extremely_primitive(&c6).unwrap().stage, EpStage::Regular);
        assert!(!is_three_halves_transitive(&c6).unwrap());
        let split = PermGroup::new(vec![crate::Permutation::from_cycles(4, &[vec![0, 1]]).unwrap()])
            .unwrap();
        assert_eq!(is_extremely_primitive(&split).unwrap().stage, EpStage::Intransitive);
        assert!(is_three_halves_transitive(&split).is_err());
    }

    #[test]
    fn three_halves() {
        assert!(is_three_halves_transitive(&PermGroup::symmetric(5)).unwrap());
        assert!(is_three_halves_transitive(&build_affine_group(params(2, 4, 5, 2)).unwrap()).unwrap());
    }

    #[test]
    fn predicates() {
        assert!(classification_predicate(&params(2, 2, 3, 2)));
        assert!(!classification_predicate(&params(5, 2, 3, 2)));
        assert!(classification_predicate(&params(7, 5, 2801, 5)));
        assert!(classification_predicate(&params(2, 8, 17, 2)));
        assert!(orbit_condition_predicate(&params(7, 1, 3, 1)));
        assert!(orbit_condition_predicate(&params(2, 15, 1057, 3)));
        assert!(!orbit_condition_predicate(&params(5, 2, 3, 2)));
    }

    #[test]
    fn tiny_survey() {
        let records = survey(4, 1).unwrap();
        let keys: Vec<_> = records.iter().map(|r| (r.p, r.d, r.t, r.e)).collect();
        assert_eq!(
            keys,
            vec![(2, 1, 1, 1), (2, 2, 1, 1), (2, 2, 1, 2), (2, 2, 3, 1), (2, 2, 3, 2), (3, 1, 1, 1), (3, 1, 2, 1)]
        );
        let ep: Vec<_> = records.iter().filter(|r| r.ep_direct).map(|r| (r.p, r.d, r.t, r.e)).collect();
        assert_eq!(ep, vec![(2, 2, 3, 1), (2, 2, 3, 2), (3, 1, 2, 1)]);
        assert!(records.iter().all(|r| r.agree && r.orbit_conditions_agree));
    }
}
