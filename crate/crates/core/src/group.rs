//! Permutation groups given by generators, with a lazily built stabilizer
//! chain. Handles are cheap to clone and safe to share across threads.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::chain::StabChain;
use crate::error::{GroupError, Result};
use crate::limits;
use crate::perm::Permutation;

struct Inner {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

#[derive(Clone)]
pub struct PermGroup(Arc<Inner>);

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("gens", &self.0.gens)
            .finish()
    }
}

impl PermGroup {
    /// `<gens>` on `degree` points. Identity generators and repeats are dropped.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(Self::from_gens_unchecked(degree, gens))
    }

    pub fn from_image_arrays(degree: usize, arrays: Vec<Vec<u32>>) -> Result<Self> {
        let gens = arrays
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    pub(crate) fn from_gens_unchecked(degree: usize, gens: Vec<Permutation>) -> Self {
        let mut seen = HashSet::new();
        let gens: Vec<Permutation> = gens
            .into_iter()
            .filter(|g| !g.is_identity() && seen.insert(g.clone()))
            .collect();
        PermGroup(Arc::new(Inner {
            degree,
            gens,
            chain: OnceLock::new(),
        }))
    }

    fn from_chain(chain: StabChain) -> Self {
        let degree = chain.degree();
        let gens = chain.strong_generators().to_vec();
        let cell = OnceLock::new();
        let _ = cell.set(chain);
        PermGroup(Arc::new(Inner {
            degree,
            gens,
            chain: cell,
        }))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_gens_unchecked(degree, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.0.gens
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.0
            .chain
            .get_or_init(|| StabChain::new(self.0.degree, &self.0.gens))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.gens.is_empty()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.chain().orbit_sizes()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.chain().strong_generators()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    fn check_degree(&self, x: &Permutation) -> Result<()> {
        if x.degree() != self.degree() {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree(),
                found: x.degree(),
            });
        }
        Ok(())
    }

    /// Membership by sifting.
    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        self.check_degree(x)?;
        Ok(self.chain().contains(x))
    }

    pub(crate) fn has(&self, x: &Permutation) -> bool {
        self.chain().contains(x)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree() && self.0.gens.iter().all(|g| other.has(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.0.gens;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes_with(&g[j])))
    }

    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        if point >= self.degree() {
            return Err(GroupError::PointOutOfRange {
                point,
                degree: self.degree(),
            });
        }
        let mut seen = vec![false; self.degree()];
        let mut out = vec![point];
        seen[point] = true;
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for g in &self.0.gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        Ok(out)
    }

    /// All orbits, each sorted, in order of least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for p in 0..self.degree() {
            if !seen[p] {
                let orb = self.orbit(p).expect("in range");
                for &x in &orb {
                    seen[x] = true;
                }
                out.push(orb);
            }
        }
        out
    }

    /// Stabilizer of a single point.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        self.pointwise_stabilizer(&[point])
    }

    /// Pointwise stabilizer of `points`, computed by relabelling the domain
    /// so that `points` come first in the base order.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        let n = self.degree();
        let mut first = vec![false; n];
        for &p in points {
            if p >= n {
                return Err(GroupError::PointOutOfRange { point: p, degree: n });
            }
            first[p] = true;
        }
        let mut order: Vec<u32> = (0..n as u32).filter(|&p| first[p as usize]).collect();
        let k = order.len();
        order.extend((0..n as u32).filter(|&p| !first[p as usize]));
        // relabel: old point order[i] becomes i
        let relabel = Permutation::from_images_unchecked({
            let mut r = vec![0u32; n];
            for (i, &p) in order.iter().enumerate() {
                r[p as usize] = i as u32;
            }
            r
        });
        let gens: Vec<Permutation> = self.0.gens.iter().map(|g| g.conjugate_by(&relabel)).collect();
        let chain = StabChain::new(n, &gens);
        let back = relabel.inverse();
        let stab: Vec<Permutation> = chain
            .stabilizer_generators(k)
            .iter()
            .map(|g| g.conjugate_by(&back))
            .collect();
        Ok(PermGroup::from_gens_unchecked(n, stab))
    }

    pub fn join(&self, other: &PermGroup) -> PermGroup {
        let mut chain = self.chain().clone();
        let mut gens = self.0.gens.clone();
        for g in &other.0.gens {
            if chain.extend(g) {
                gens.push(g.clone());
            }
        }
        let out = PermGroup::from_gens_unchecked(self.degree(), gens);
        let _ = out.0.chain.set(chain);
        out
    }

    pub fn join_all<'a>(degree: usize, groups: impl IntoIterator<Item = &'a PermGroup>) -> PermGroup {
        groups
            .into_iter()
            .fold(PermGroup::trivial(degree), |acc, g| acc.join(g))
    }

    /// `<self, x>`.
    pub fn with_element(&self, x: &Permutation) -> PermGroup {
        if self.has(x) {
            return self.clone();
        }
        let mut chain = self.chain().clone();
        chain.extend(x);
        let mut gens = self.0.gens.clone();
        gens.push(x.clone());
        let out = PermGroup::from_gens_unchecked(self.degree(), gens);
        let _ = out.0.chain.set(chain);
        out
    }

    /// Group generated by the elements of an iterator, adding only elements
    /// that are not already members.
    pub fn generated_by<'a>(degree: usize, elems: impl IntoIterator<Item = &'a Permutation>) -> PermGroup {
        let mut chain = StabChain::new(degree, &[]);
        let mut gens = Vec::new();
        for e in elems {
            if chain.extend(e) {
                gens.push(e.clone());
            }
        }
        let out = PermGroup::from_gens_unchecked(degree, gens);
        let _ = out.0.chain.set(chain);
        out
    }

    /// Fails with [`GroupError::CapExceeded`] above the enumeration cap.
    pub fn check_cap(&self, what: &'static str) -> Result<()> {
        let cap = limits::current().enumeration_cap;
        let order = self.order();
        if order > cap {
            return Err(GroupError::CapExceeded { what, order, cap });
        }
        Ok(())
    }

    pub fn for_each_element(&self, f: impl FnMut(&Permutation)) {
        self.chain().for_each_element(f)
    }

    /// All elements; errors above the enumeration cap.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        self.check_cap("element enumeration")?;
        let mut out = Vec::with_capacity(self.order() as usize);
        self.for_each_element(|g| out.push(g.clone()));
        Ok(out)
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }

    /// Conjugate subgroup `g^-1 H g`.
    pub fn conjugate_by(&self, g: &Permutation) -> PermGroup {
        PermGroup::from_gens_unchecked(
            self.degree(),
            self.0.gens.iter().map(|x| x.conjugate_by(g)).collect(),
        )
    }

    /// True when every generator of `g` normalizes `self`.
    pub fn is_normalized_by(&self, g: &PermGroup) -> bool {
        g.generators()
            .iter()
            .all(|x| self.0.gens.iter().all(|n| self.has(&n.conjugate_by(x))))
    }

    pub(crate) fn coset_min(&self, g: &Permutation) -> Permutation {
        self.chain().coset_min(g)
    }
}

/// Smallest normal subgroup of `g` containing `s`.
pub fn normal_closure(g: &PermGroup, s: &PermGroup) -> Result<PermGroup> {
    if !s.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup("normal_closure"));
    }
    Ok(normal_closure_unchecked(g, s.generators()))
}

/// Normal closure of a set of elements under conjugation by `g`'s generators.
pub(crate) fn normal_closure_unchecked(g: &PermGroup, elems: &[Permutation]) -> PermGroup {
    let mut chain = StabChain::new(g.degree(), &[]);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut queue: VecDeque<Permutation> = elems.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        if chain.extend(&x) {
            for t in g.generators() {
                queue.push_back(x.conjugate_by(t));
            }
            gens.push(x);
        }
    }
    let out = PermGroup::from_gens_unchecked(g.degree(), gens);
    let _ = out.0.chain.set(chain);
    out
}

/// `[A, B]`: the normal closure in `<A, B>` of the generator commutators.
pub fn commutator_subgroup(a: &PermGroup, b: &PermGroup, ambient: &PermGroup) -> Result<PermGroup> {
    if !a.is_subgroup_of(ambient) || !b.is_subgroup_of(ambient) {
        return Err(GroupError::NotSubgroup("commutator_subgroup"));
    }
    Ok(commutator_unchecked(a, b))
}

pub(crate) fn commutator_unchecked(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let comms: Vec<Permutation> = a
        .generators()
        .iter()
        .flat_map(|x| b.generators().iter().map(move |y| Permutation::commutator(x, y)))
        .collect();
    normal_closure_unchecked(&a.join(b), &comms)
}

pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    commutator_unchecked(g, g)
}

/// Limit of the derived series.
pub fn perfect_core(g: &PermGroup) -> PermGroup {
    let mut cur = g.clone();
    loop {
        let d = derived_subgroup(&cur);
        if d.order() == cur.order() {
            return cur;
        }
        cur = d;
    }
}

/// `C_G(S)` by filtering the elements of `G`.
pub fn centralizer(g: &PermGroup, s: &PermGroup) -> Result<PermGroup> {
    g.check_cap("centralizer")?;
    if s.degree() != g.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: g.degree(),
            found: s.degree(),
        });
    }
    let sg = s.generators();
    let mut out = PermGroup::trivial(g.degree());
    let mut chain = StabChain::new(g.degree(), &[]);
    let mut gens = Vec::new();
    g.for_each_element(|x| {
        if sg.iter().all(|y| x.commutes_with(y)) && chain.extend(x) {
            gens.push(x.clone());
        }
    });
    if !gens.is_empty() {
        out = PermGroup::from_gens_unchecked(g.degree(), gens);
        let _ = out.0.chain.set(chain);
    }
    Ok(out)
}

pub fn center(g: &PermGroup) -> Result<PermGroup> {
    centralizer(g, g)
}

/// `N_G(S)` by filtering the elements of `G`.
pub fn normalizer(g: &PermGroup, s: &PermGroup) -> Result<PermGroup> {
    g.check_cap("normalizer")?;
    let sg = s.generators();
    let mut elems = Vec::new();
    let mut chain = StabChain::new(g.degree(), &[]);
    g.for_each_element(|x| {
        if !chain.contains(x) && sg.iter().all(|y| s.has(&y.conjugate_by(x))) {
            chain.extend(x);
            elems.push(x.clone());
        }
    });
    let out = PermGroup::from_gens_unchecked(g.degree(), elems);
    let _ = out.0.chain.set(chain);
    Ok(out)
}

/// `A ∩ B` by enumerating the smaller group.
pub fn intersection(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    if a.degree() != b.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: a.degree(),
            found: b.degree(),
        });
    }
    let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    if small.is_subgroup_of(big) {
        return Ok(small.clone());
    }
    small.check_cap("intersection")?;
    let mut chain = StabChain::new(a.degree(), &[]);
    let mut gens = Vec::new();
    small.for_each_element(|x| {
        if big.has(x) && chain.extend(x) {
            gens.push(x.clone());
        }
    });
    let out = PermGroup::from_gens_unchecked(a.degree(), gens);
    let _ = out.0.chain.set(chain);
    Ok(out)
}

pub fn is_normal(n: &PermGroup, g: &PermGroup) -> Result<bool> {
    if !n.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup("is_normal"));
    }
    Ok(n.is_normalized_by(g))
}

impl PermGroup {
    /// Rebuilds the handle from its own strong generators; used where a
    /// stable, canonical generating set is wanted.
    pub fn with_strong_generators(&self) -> PermGroup {
        PermGroup::from_chain(self.chain().clone())
    }
}
