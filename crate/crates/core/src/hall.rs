//! Hall π-subgroups: recognition, a two-phase search, heredity checks and
//! the nilpotent Hall `{2,p}` confirmation for simple groups.
//!
//! The exhaustive phase fixes one Sylow subgroup `P` for a prime of `π` and
//! walks every π-subgroup containing `P`, adjoining one coset of π-elements
//! at a time. Hall π-subgroups contain a conjugate of `P`, so every
//! conjugacy class of Hall subgroups meets the walk.

use crate::error::{GroupError, Result};
use crate::group::{intersection, PermGroup};
use crate::limits::{self, EXHAUSTIVE_HALL_SCALE};
use crate::perm::Permutation;
use crate::primes::{is_prime, p_part, prime_divisors, PrimeSet};
use crate::quotient::quotient_by;
use crate::radicals::sylow_subgroup;
use crate::structure::{is_nilpotent, is_simple, is_soluble};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HallStatus {
    Found,
    ProvenAbsent,
    Unknown,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SearchBudget {
    pub random_draws: usize,
    pub subgroups_examined: usize,
    pub exhaustive_completed: bool,
}

#[derive(Debug, Clone)]
pub struct HallSearchResult {
    pub status: HallStatus,
    pub witness: Option<PermGroup>,
    pub budget: SearchBudget,
    /// Why the search stopped short, for `Unknown` results.
    pub note: Option<String>,
}

impl HallSearchResult {
    fn found(witness: PermGroup, budget: SearchBudget) -> Self {
        HallSearchResult {
            status: HallStatus::Found,
            witness: Some(witness),
            budget,
            note: None,
        }
    }
}

pub fn is_hall_subgroup(g: &PermGroup, h: &PermGroup, pi: &PrimeSet) -> Result<bool> {
    if !h.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup("is_hall_subgroup"));
    }
    let index = g.order() / h.order();
    Ok(pi.is_pi_number(h.order()) && pi.complement_part_of(index) == index)
}

/// The π-part of `x`: the power of `x` whose order is the π-part of `|x|`.
fn pi_part_element(x: &Permutation, pi: &PrimeSet) -> Permutation {
    let o = x.order() as u128;
    x.pow(pi.complement_part_of(o) as i64)
}

fn admissible(order: u128, target: u128, pi: &PrimeSet) -> bool {
    target % order == 0 && pi.is_pi_number(order)
}

fn greedy_phase(g: &PermGroup, pi: &PrimeSet, target: u128, budget: &mut SearchBudget) -> Option<PermGroup> {
    let lim = limits::current();
    let mut rng = lim.rng(0x6861_6c6c);
    let restarts = 8;
    let draws = 8 * lim.random_samples;
    for _ in 0..restarts {
        let mut h = PermGroup::trivial(g.degree());
        for _ in 0..draws {
            budget.random_draws += 1;
            let x = pi_part_element(&g.random_element(&mut rng), pi);
            if x.is_identity() || h.has(&x) {
                continue;
            }
            let bigger = h.with_element(&x);
            if admissible(bigger.order(), target, pi) {
                h = bigger;
                if h.order() == target {
                    return Some(h);
                }
            }
        }
    }
    None
}

/// Every Hall π-subgroup of `g` containing a fixed Sylow subgroup for the
/// prime of `π` with the largest share of `|G|`. `stop_at_first` ends the
/// walk at the first hit.
fn hall_overgroups(
    g: &PermGroup,
    pi: &PrimeSet,
    stop_at_first: bool,
    budget: &mut SearchBudget,
) -> Result<Vec<PermGroup>> {
    let target = pi.part_of(g.order());
    let primes: Vec<u64> = prime_divisors(target);
    let Some(&p) = primes.iter().max_by_key(|&&p| p_part(g.order(), p)) else {
        budget.exhaustive_completed = true;
        return Ok(vec![PermGroup::trivial(g.degree())]);
    };
    let elements: Vec<Permutation> = g
        .elements()?
        .into_iter()
        .filter(|x| !x.is_identity() && pi.is_pi_number(x.order() as u128))
        .collect();
    let start = sylow_subgroup(g, p)?;
    let mut visited: Vec<PermGroup> = vec![start.clone()];
    let mut stack = vec![start];
    let mut halls: Vec<PermGroup> = Vec::new();
    while let Some(k) = stack.pop() {
        budget.subgroups_examined += 1;
        if k.order() == target {
            if !halls.iter().any(|h| h.same_group(&k)) {
                halls.push(k);
                if stop_at_first {
                    return Ok(halls);
                }
            }
            continue;
        }
        let mut cosets = std::collections::HashSet::new();
        for x in &elements {
            if k.has(x) || !cosets.insert(k.coset_min(x)) {
                continue;
            }
            let child = k.with_element(x);
            if !admissible(child.order(), target, pi) {
                continue;
            }
            if visited.iter().any(|v| v.same_group(&child)) {
                continue;
            }
            visited.push(child.clone());
            stack.push(child);
        }
    }
    budget.exhaustive_completed = true;
    Ok(halls)
}

/// Two-phase search for a Hall π-subgroup. The exhaustive phase runs when
/// requested or when `g` is soluble, and needs `|G| <= 20000`.
pub fn find_hall_subgroup(g: &PermGroup, pi: &PrimeSet, exhaustive: bool) -> Result<HallSearchResult> {
    let mut budget = SearchBudget::default();
    let target = pi.part_of(g.order());
    if target == 1 {
        budget.exhaustive_completed = true;
        return Ok(HallSearchResult::found(PermGroup::trivial(g.degree()), budget));
    }
    if target == g.order() {
        budget.exhaustive_completed = true;
        return Ok(HallSearchResult::found(g.clone(), budget));
    }
    let primes = prime_divisors(target);
    if primes.len() == 1 && g.order() <= limits::current().enumeration_cap {
        let s = sylow_subgroup(g, primes[0])?;
        return Ok(HallSearchResult::found(s, budget));
    }
    if let Some(h) = greedy_phase(g, pi, target, &mut budget) {
        return Ok(HallSearchResult::found(h, budget));
    }
    if !(exhaustive || is_soluble(g)) {
        return Ok(HallSearchResult {
            status: HallStatus::Unknown,
            witness: None,
            budget,
            note: Some("randomized phase exhausted its budget".into()),
        });
    }
    if g.order() > EXHAUSTIVE_HALL_SCALE {
        return Ok(HallSearchResult {
            status: HallStatus::Unknown,
            witness: None,
            budget,
            note: Some(format!(
                "exhaustive search needs |G| <= {EXHAUSTIVE_HALL_SCALE}, got {}",
                g.order()
            )),
        });
    }
    let halls = hall_overgroups(g, pi, true, &mut budget)?;
    Ok(match halls.into_iter().next() {
        Some(h) => HallSearchResult::found(h, budget),
        None => HallSearchResult {
            status: HallStatus::ProvenAbsent,
            witness: None,
            budget,
            note: None,
        },
    })
}

/// `H ∩ N` is Hall in `N` and `HN/N` is Hall in `G/N`.
pub fn check_hall_heredity(g: &PermGroup, h: &PermGroup, pi: &PrimeSet, n: &PermGroup) -> Result<bool> {
    if !is_hall_subgroup(g, h, pi)? {
        return Err(GroupError::Hypothesis("H is not a Hall subgroup of G".into()));
    }
    if !n.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup("check_hall_heredity"));
    }
    if !n.is_normalized_by(g) {
        return Err(GroupError::NotNormal("check_hall_heredity"));
    }
    let hn = intersection(h, n)?;
    let q = quotient_by(g, n)?;
    let image = q.image_subgroup(h)?;
    Ok(is_hall_subgroup(n, &hn, pi)? && is_hall_subgroup(q.target(), &image, pi)?)
}

/// No Hall `{2,p}`-subgroup of the simple group `s` is nilpotent. Every
/// Hall `{2,p}`-subgroup over a fixed Sylow subgroup is enumerated.
pub fn confirm_no_nilpotent_hall_2p(s: &PermGroup, p: u64) -> Result<bool> {
    if p == 2 || !is_prime(p) {
        return Err(GroupError::Hypothesis(format!("p must be an odd prime, got {p}")));
    }
    if s.order() % p as u128 != 0 {
        return Err(GroupError::Hypothesis(format!("{p} does not divide |S| = {}", s.order())));
    }
    if s.order() > EXHAUSTIVE_HALL_SCALE {
        return Err(GroupError::CapExceeded {
            what: "confirm_no_nilpotent_hall_2p",
            order: s.order(),
            cap: EXHAUSTIVE_HALL_SCALE,
        });
    }
    if !is_simple(s)? {
        return Err(GroupError::Hypothesis("S is not simple".into()));
    }
    let pi = PrimeSet::new(vec![2, p])?;
    let mut budget = SearchBudget::default();
    let halls = hall_overgroups(s, &pi, false, &mut budget)?;
    Ok(halls.iter().all(|h| !is_nilpotent(h)))
}
