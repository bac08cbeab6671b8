use std::fmt;
use std::ops::ControlFlow;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use super::chain::StabChain;
use super::Permutation;
use crate::error::{Error, Result};

/// Default cap on explicit element enumeration (normalisers, brute force).
pub const DEFAULT_ENUMERATION_BOUND: u128 = 10_000_000;

/// A permutation group given by generators.
///
/// The base and strong generating set is computed on first use and cached;
/// the group is otherwise immutable and may be shared across threads.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<Arc<StabChain>>,
}

impl PermGroup {
    /// Group generated by `gens`, which must be nonempty and of one degree.
    pub fn new(gens: Vec<Permutation>) -> Result<Self> {
        let degree = gens.first().ok_or(Error::EmptyGenerators)?.degree();
        if degree == 0 {
            return Err(Error::InvalidParameters("degree must be positive".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators: gens,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(vec![Permutation::identity(degree.max(1))]).expect("identity generator")
    }

    /// Symmetric group on `degree` points, generated by `(0 1)` and an
    /// `n`-cycle.
    pub fn symmetric(degree: usize) -> Self {
        if degree < 2 {
            return PermGroup::trivial(degree);
        }
        let t = Permutation::from_cycles(degree, &[vec![0, 1]]).expect("transposition");
        let c = Permutation::from_cycles(degree, &[(0..degree).collect()]).expect("cycle");
        PermGroup::new(vec![t, c]).expect("valid generators")
    }

    /// Cyclic group generated by an `n`-cycle, acting regularly.
    pub fn cyclic(degree: usize) -> Self {
        let c = Permutation::from_cycles(degree.max(1), &[(0..degree.max(1)).collect()])
            .expect("cycle");
        PermGroup::new(vec![c]).expect("valid generator")
    }

    /// Wraps an already computed chain; generators become its strong
    /// generators.
    pub(crate) fn from_chain(chain: StabChain) -> Self {
        let degree = chain.degree();
        let mut gens = chain.strong_generators().to_vec();
        if gens.is_empty() {
            gens.push(Permutation::identity(degree));
        }
        let group = PermGroup {
            degree,
            generators: gens,
            chain: OnceLock::new(),
        };
        let _ = group.chain.set(Arc::new(chain));
        group
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            Arc::new(StabChain::from_generators(
                self.degree,
                &self.generators,
                &[],
                None,
            ))
        })
    }

    /// A complete chain whose base starts with `prefix`.
    pub(crate) fn chain_with_base(&self, prefix: &[usize]) -> Result<Arc<StabChain>> {
        for &x in prefix {
            self.check_point(x)?;
        }
        let chain = self.chain();
        if chain.base().starts_with(prefix) {
            return Ok(self.chain.get().expect("initialised").clone());
        }
        Ok(Arc::new(StabChain::from_generators(
            self.degree,
            chain.strong_generators(),
            prefix,
            Some(chain.order()),
        )))
    }

    pub(crate) fn check_point(&self, x: usize) -> Result<()> {
        if x >= self.degree {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// Group order, the product of the fundamental orbit lengths.
    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.chain().strong_generators()
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains(g))
    }

    /// Equality as subgroups of the symmetric group (mutual containment).
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.contains_group(other) && other.contains_group(self)
    }

    /// Uniformly random element drawn through the transversals.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let chain = self.chain();
        let idx: Vec<usize> = chain
            .levels()
            .iter()
            .map(|l| rng.random_range(0..l.orbit().len()))
            .collect();
        chain.element_from_indices(&idx)
    }

    /// Calls `f` on every element; stops early on `Break`.
    pub fn for_each_element<F>(&self, f: F) -> ControlFlow<()>
    where
        F: FnMut(&Permutation) -> ControlFlow<()>,
    {
        self.chain().for_each_element(f)
    }

    /// All elements, refusing groups larger than `bound`.
    pub fn elements(&self, bound: u128) -> Result<Vec<Permutation>> {
        if self.order() > bound {
            return Err(Error::BoundExceeded {
                what: "group order",
                bound,
            });
        }
        let mut out = Vec::with_capacity(self.order() as usize);
        let _ = self.for_each_element(|g| {
            out.push(g.clone());
            ControlFlow::Continue(())
        });
        Ok(out)
    }

    /// Rough memory footprint of the stabiliser chain in bytes: one
    /// permutation and its inverse per point of a full-length orbit.
    pub fn estimated_chain_bytes(degree: usize) -> u128 {
        let d = degree as u128;
        8 * d * d
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}
