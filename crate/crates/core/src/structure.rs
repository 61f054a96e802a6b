//! Normal structure: minimal normal subgroups, socle, solubility-type
//! predicates and the soluble radical.
//!
//! Minimal normal subgroups are the inclusion-minimal normal closures of
//! prime-order elements. Under the enumeration cap every conjugacy class is
//! visited, which makes the answer exact. Above the cap a seeded descent is
//! used instead: normal closures of prime-order elements drawn from the
//! generators and from uniform random elements are shrunk through derived
//! subgroups, orbit kernels and further random closures until they either
//! fit under the cap (and are finished exactly) or stop shrinking.

use std::collections::{HashMap, HashSet};

use crate::error::{GroupError, Result};
use crate::group::{derived_subgroup, normal_closure_unchecked, PermGroup};
use crate::limits;
use crate::perm::Permutation;
use crate::primes::prime_divisors;
use crate::quotient::quotient_by;

/// `Soc(G)` split into minimal normal pieces.
///
/// Non-abelian minimal normal subgroups are refined into their simple
/// direct factors; abelian ones are kept whole and flagged, and only those
/// not already inside the product of earlier factors are listed, so the
/// factors form a direct decomposition of the socle.
#[derive(Debug, Clone)]
pub struct SocleDecomposition {
    pub socle: PermGroup,
    pub factors: Vec<PermGroup>,
    pub abelian_flags: Vec<bool>,
}

impl SocleDecomposition {
    pub fn nonabelian_factors(&self) -> impl Iterator<Item = &PermGroup> {
        self.factors
            .iter()
            .zip(&self.abelian_flags)
            .filter(|(_, &ab)| !ab)
            .map(|(f, _)| f)
    }
}

/// Prime-order generators of the cyclic subgroups of prime order in `<x>`.
pub(crate) fn prime_order_powers(x: &Permutation) -> Vec<Permutation> {
    let o = x.order();
    prime_divisors(o as u128)
        .into_iter()
        .map(|p| x.pow((o / p) as i64))
        .collect()
}

fn sort_key(h: &PermGroup) -> (u128, Vec<usize>) {
    let support: Vec<usize> = h
        .orbits()
        .into_iter()
        .filter(|o| o.len() > 1)
        .flatten()
        .collect();
    let mut support = support;
    support.sort_unstable();
    (h.order(), support)
}

fn push_unique(list: &mut Vec<PermGroup>, h: PermGroup) -> bool {
    if list.iter().any(|k| k.same_group(&h)) {
        false
    } else {
        list.push(h);
        true
    }
}

fn inclusion_minimal(mut cands: Vec<PermGroup>) -> Vec<PermGroup> {
    cands.sort_by_key(sort_key);
    let mut out: Vec<PermGroup> = Vec::new();
    for c in cands {
        if !out.iter().any(|m| m.is_subgroup_of(&c)) {
            out.push(c);
        }
    }
    out
}

/// Representatives of the `G`-classes of elements of a normal subgroup `m`
/// satisfying `keep` (the subgroup is enumerated in full).
pub(crate) fn class_reps(
    g: &PermGroup,
    m: &PermGroup,
    keep: impl Fn(&Permutation) -> bool,
) -> Result<Vec<Permutation>> {
    let elems = m.elements()?;
    let index: HashMap<&Permutation, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut seen = vec![false; elems.len()];
    let mut reps = Vec::new();
    for i in 0..elems.len() {
        if seen[i] {
            continue;
        }
        if !keep(&elems[i]) {
            continue;
        }
        reps.push(elems[i].clone());
        seen[i] = true;
        let mut stack = vec![elems[i].clone()];
        while let Some(x) = stack.pop() {
            for t in g.generators() {
                let y = x.conjugate_by(t);
                let j = *index
                    .get(&y)
                    .ok_or(GroupError::NotNormal("class enumeration left the subgroup"))?;
                if !seen[j] {
                    seen[j] = true;
                    stack.push(y);
                }
            }
        }
    }
    Ok(reps)
}

/// Minimal normal subgroups of `g` contained in the normal subgroup `m`,
/// by full enumeration of `m`.
fn exact_minimal_normals_within(g: &PermGroup, m: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut cands: Vec<PermGroup> = Vec::new();
    for x in class_reps(g, m, |x| crate::primes::is_prime(x.order()))? {
        push_unique(&mut cands, normal_closure_unchecked(g, &[x]));
    }
    Ok(inclusion_minimal(cands))
}

struct Descent<'a> {
    g: &'a PermGroup,
    found: Vec<PermGroup>,
    /// Members of `found` confirmed by full enumeration.
    exact: Vec<PermGroup>,
    visited: Vec<PermGroup>,
    rng: rand_chacha::ChaCha8Rng,
    samples: usize,
    cap: u128,
}

impl Descent<'_> {
    fn descend(&mut self, m: PermGroup) -> Result<()> {
        if !push_unique(&mut self.visited, m.clone()) {
            return Ok(());
        }
        if m.order() <= self.cap {
            for n in exact_minimal_normals_within(self.g, &m)? {
                push_unique(&mut self.exact, n.clone());
                push_unique(&mut self.found, n);
            }
            return Ok(());
        }
        let mut smaller: Vec<PermGroup> = Vec::new();
        let d = derived_subgroup(&m);
        if d.order() > 1 && d.order() < m.order() {
            push_unique(&mut smaller, d);
        }
        let orbits: Vec<Vec<usize>> = m.orbits().into_iter().filter(|o| o.len() > 1).collect();
        if orbits.len() > 1 {
            for orb in &orbits {
                let inside: HashSet<usize> = orb.iter().copied().collect();
                let rest: Vec<usize> = (0..m.degree()).filter(|x| !inside.contains(x)).collect();
                let k = m.pointwise_stabilizer(&rest)?;
                if k.order() > 1 {
                    let c = normal_closure_unchecked(self.g, k.generators());
                    if c.order() < m.order() {
                        push_unique(&mut smaller, c);
                    }
                }
            }
        }
        if smaller.is_empty() {
            for _ in 0..self.samples {
                let y = m.random_element(&mut self.rng);
                for x in prime_order_powers(&y) {
                    let c = normal_closure_unchecked(self.g, &[x]);
                    if c.order() < m.order() {
                        push_unique(&mut smaller, c);
                    }
                }
                if !smaller.is_empty() {
                    break;
                }
            }
        }
        if smaller.is_empty() {
            push_unique(&mut self.found, m);
            return Ok(());
        }
        for s in smaller {
            self.descend(s)?;
        }
        Ok(())
    }
}

fn large_minimal_normals(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let lim = limits::current();
    let mut rng = lim.rng(0x6d69_6e6e);
    let mut seeds: Vec<Permutation> = g.generators().iter().flat_map(prime_order_powers).collect();
    for _ in 0..lim.random_samples {
        seeds.extend(prime_order_powers(&g.random_element(&mut rng)));
    }
    let mut descent = Descent {
        g,
        found: Vec::new(),
        exact: Vec::new(),
        visited: Vec::new(),
        rng,
        samples: lim.random_samples,
        cap: lim.enumeration_cap,
    };
    let mut covered = PermGroup::trivial(g.degree());
    for x in seeds {
        if covered.has(&x) || descent.found.iter().any(|n| n.has(&x)) {
            continue;
        }
        let m = normal_closure_unchecked(g, &[x]);
        descent.descend(m)?;
        // every minimal normal subgroup inside a product of non-abelian
        // minimal normal subgroups is one of the factors
        let nonabelian: Vec<PermGroup> =
            descent.exact.iter().filter(|n| !n.is_abelian()).cloned().collect();
        covered = PermGroup::join_all(g.degree(), &nonabelian);
    }
    Ok(inclusion_minimal(descent.found))
}

/// All minimal normal subgroups, ordered by order and then support.
pub fn minimal_normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    if g.order() == 1 {
        return Err(GroupError::TrivialInput("minimal_normal_subgroups"));
    }
    if g.order() <= limits::current().enumeration_cap {
        exact_minimal_normals_within(g, g)
    } else {
        large_minimal_normals(g)
    }
}

/// Simple direct factors of a non-abelian minimal normal subgroup `n` of
/// `g`: one minimal normal subgroup of `n` and its `g`-conjugates.
pub fn simple_factors(g: &PermGroup, n: &PermGroup) -> Result<Vec<PermGroup>> {
    if n.is_abelian() {
        return Ok(vec![n.clone()]);
    }
    let first = minimal_normal_subgroups(n)?
        .into_iter()
        .next()
        .expect("nontrivial group has a minimal normal subgroup");
    let mut factors = vec![first];
    let mut i = 0;
    while i < factors.len() {
        for t in g.generators() {
            let c = factors[i].conjugate_by(t);
            push_unique(&mut factors, c);
        }
        i += 1;
    }
    let product: u128 = factors.iter().map(|f| f.order()).product();
    if product != n.order() {
        return Err(GroupError::Internal(format!(
            "simple factors multiply to {product}, minimal normal subgroup has order {}",
            n.order()
        )));
    }
    factors.sort_by_key(sort_key);
    Ok(factors)
}

pub fn socle(g: &PermGroup) -> Result<SocleDecomposition> {
    let mins = minimal_normal_subgroups(g)?;
    let socle = PermGroup::join_all(g.degree(), &mins);
    let mut factors = Vec::new();
    let mut abelian_flags = Vec::new();
    let mut span = PermGroup::trivial(g.degree());
    for n in &mins {
        let ab = n.is_abelian();
        if ab && n.is_subgroup_of(&span) {
            continue;
        }
        span = span.join(n);
        for f in simple_factors(g, n)? {
            factors.push(f);
            abelian_flags.push(ab);
        }
    }
    Ok(SocleDecomposition {
        socle,
        factors,
        abelian_flags,
    })
}

pub fn is_soluble(g: &PermGroup) -> bool {
    let mut cur = g.clone();
    while cur.order() > 1 {
        let d = derived_subgroup(&cur);
        if d.order() == cur.order() {
            return false;
        }
        cur = d;
    }
    true
}

/// Lower central series reaches the identity.
pub fn is_nilpotent(g: &PermGroup) -> bool {
    let mut cur = g.clone();
    while cur.order() > 1 {
        let next = crate::group::commutator_unchecked(&cur, g);
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
    true
}

/// Shared recursion behind the radicals: the largest normal subgroup
/// built by repeatedly factoring out the product of the minimal normal
/// subgroups accepted by `accept`.
pub(crate) fn radical_by(
    g: &PermGroup,
    accept: &dyn Fn(&PermGroup) -> Result<bool>,
) -> Result<PermGroup> {
    if g.order() == 1 {
        return Ok(g.clone());
    }
    let mut chosen = Vec::new();
    for n in minimal_normal_subgroups(g)? {
        if accept(&n)? {
            chosen.push(n);
        }
    }
    if chosen.is_empty() {
        return Ok(PermGroup::trivial(g.degree()));
    }
    let n = PermGroup::join_all(g.degree(), &chosen);
    if n.order() == g.order() {
        return Ok(g.clone());
    }
    let q = quotient_by(g, &n)?;
    let upper = radical_by(q.target(), accept)?;
    q.preimage_subgroup(&upper)
}

/// A minimal normal subgroup `n` is p-soluble when it is abelian or `p`
/// does not divide its order.
pub(crate) fn minimal_normal_is_p_soluble(n: &PermGroup, p: u64) -> bool {
    n.is_abelian() || n.order() % p as u128 != 0
}

pub fn is_p_soluble(g: &PermGroup, p: u64) -> Result<bool> {
    if !crate::primes::is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if g.order() % p as u128 != 0 || is_soluble(g) {
        return Ok(true);
    }
    let mins = minimal_normal_subgroups(g)?;
    if mins.iter().any(|n| !minimal_normal_is_p_soluble(n, p)) {
        return Ok(false);
    }
    let n = PermGroup::join_all(g.degree(), &mins);
    let q = quotient_by(g, &n)?;
    is_p_soluble(q.target(), p)
}

pub fn is_simple(g: &PermGroup) -> Result<bool> {
    g.check_cap("is_simple")?;
    if g.order() == 1 {
        return Ok(false);
    }
    let mins = minimal_normal_subgroups(g)?;
    Ok(mins.len() == 1 && mins[0].order() == g.order())
}

pub fn soluble_radical(g: &PermGroup) -> Result<PermGroup> {
    radical_by(g, &|n| Ok(n.is_abelian()))
}
