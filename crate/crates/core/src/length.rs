//! p-kernel subgroups and the non-p-soluble length.
//!
//! `K_p(G)` is the kernel of the conjugation action of `G` on the simple
//! factors of `Soc(G / R_p(G))`, pulled back to `G` (and `G` itself when `G`
//! is p-soluble). Iterating through quotients gives `K_{p,1} <= K_{p,2} <= ..`
//! and `λ_p(G)` is the number of steps needed to reach a p-soluble quotient.
//! [`lambda_oracle`] recomputes `λ_p` straight from the normal-series
//! definition over the full normal-subgroup lattice.

use crate::error::{GroupError, Result};
use crate::group::{intersection, normal_closure_unchecked, PermGroup};
use crate::hom::ActionHom;
use crate::limits::ORACLE_SCALE;
use crate::perm::Permutation;
use crate::primes::is_prime;
use crate::quotient::quotient_by;
use crate::radicals::p_soluble_radical;
use crate::structure::{class_reps, is_p_soluble, is_soluble, socle};

#[derive(Debug, Clone)]
pub struct KernelSeries {
    pub group: PermGroup,
    pub p: u64,
    /// `K_{p,1} <= .. <= K_{p,λ}`; empty when `G` is p-soluble.
    pub kernels: Vec<PermGroup>,
    pub lambda: usize,
    /// Number of socle factors permuted at each level.
    pub socle_factor_counts: Vec<usize>,
}

impl KernelSeries {
    pub fn kernel_orders(&self) -> Vec<u128> {
        self.kernels.iter().map(|k| k.order()).collect()
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::NotPrime(p))
    }
}

/// Index of the factor equal to `s^g`.
fn conjugate_factor(factors: &[PermGroup], i: usize, g: &Permutation) -> Result<u32> {
    let c = factors[i].conjugate_by(g);
    factors
        .iter()
        .position(|f| f.order() == c.order() && c.is_subgroup_of(f))
        .map(|j| j as u32)
        .ok_or_else(|| GroupError::Internal("socle factors are not permuted by conjugation".into()))
}

/// `K_p(G)` and the number of socle factors it was computed from.
fn p_kernel_detail(g: &PermGroup, p: u64) -> Result<(PermGroup, usize)> {
    let r = p_soluble_radical(g, p)?;
    if r.order() == g.order() {
        return Ok((g.clone(), 0));
    }
    let q = quotient_by(g, &r)?;
    let bar = q.target();
    let soc = socle(bar)?;
    if soc.abelian_flags.iter().any(|&a| a) {
        return Err(GroupError::Internal(
            "abelian minimal normal subgroup above the p-soluble radical".into(),
        ));
    }
    let m = soc.factors.len();
    let images = bar
        .generators()
        .iter()
        .map(|s| {
            let img = (0..m)
                .map(|i| conjugate_factor(&soc.factors, i, s))
                .collect::<Result<Vec<u32>>>()?;
            Permutation::from_images(img)
        })
        .collect::<Result<Vec<_>>>()?;
    let action = ActionHom::new(bar, m, images)?;
    let kernel = q.preimage_subgroup(&action.kernel())?;
    Ok((kernel, m))
}

pub fn p_kernel(g: &PermGroup, p: u64) -> Result<PermGroup> {
    require_prime(p)?;
    Ok(p_kernel_detail(g, p)?.0)
}

pub fn kernel_series(g: &PermGroup, p: u64) -> Result<KernelSeries> {
    require_prime(p)?;
    let mut kernels: Vec<PermGroup> = Vec::new();
    let mut counts = Vec::new();
    let mut cur = PermGroup::trivial(g.degree());
    loop {
        let q = quotient_by(g, &cur)?;
        if is_p_soluble(q.target(), p)? {
            break;
        }
        let (k, m) = p_kernel_detail(q.target(), p)?;
        let next = q.preimage_subgroup(&k)?;
        if next.order() <= cur.order() {
            return Err(GroupError::Internal(format!(
                "kernel series failed to ascend at order {}",
                cur.order()
            )));
        }
        kernels.push(next.clone());
        counts.push(m);
        cur = next;
    }
    Ok(KernelSeries {
        group: g.clone(),
        p,
        lambda: kernels.len(),
        kernels,
        socle_factor_counts: counts,
    })
}

/// `λ_p(G)` via the kernel series.
pub fn non_p_soluble_length(g: &PermGroup, p: u64) -> Result<usize> {
    Ok(kernel_series(g, p)?.lambda)
}

/// Every normal subgroup of `g`: normal closures of single elements, closed
/// under joins and intersections. Sorted by order.
pub fn normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    g.check_cap("normal_subgroups")?;
    let mut lattice: Vec<PermGroup> = vec![PermGroup::trivial(g.degree())];
    for x in class_reps(g, g, |x| !x.is_identity())? {
        let n = normal_closure_unchecked(g, &[x]);
        if !lattice.iter().any(|k| k.same_group(&n)) {
            lattice.push(n);
        }
    }
    let mut i = 0;
    while i < lattice.len() {
        for j in 0..i {
            let (a, b) = (lattice[i].clone(), lattice[j].clone());
            for c in [a.join(&b), intersection(&a, &b)?] {
                if !lattice.iter().any(|k| k.same_group(&c)) {
                    lattice.push(c);
                }
            }
        }
        i += 1;
    }
    lattice.sort_by_key(|k| k.order());
    Ok(lattice)
}

/// True when `q` is a nontrivial direct product of non-abelian simple
/// groups, each of order divisible by `p`.
pub fn is_simple_product_divisible_by(q: &PermGroup, p: u64) -> Result<bool> {
    if q.order() == 1 || is_soluble(q) {
        return Ok(false);
    }
    let soc = socle(q)?;
    Ok(soc.socle.order() == q.order()
        && soc.abelian_flags.iter().all(|&a| !a)
        && soc.factors.iter().all(|f| f.order() % p as u128 == 0))
}

/// `λ_p(G)` as the least number of non-p-soluble factors over all normal
/// series whose factors are p-soluble or products of non-abelian simple
/// groups of order divisible by `p`. Shortest path over the lattice.
pub fn lambda_oracle(g: &PermGroup, p: u64) -> Result<usize> {
    require_prime(p)?;
    if g.order() > ORACLE_SCALE {
        return Err(GroupError::CapExceeded {
            what: "lambda_oracle",
            order: g.order(),
            cap: ORACLE_SCALE,
        });
    }
    let lattice = normal_subgroups(g)?;
    let mut dist: Vec<Option<usize>> = vec![None; lattice.len()];
    dist[0] = Some(0);
    for j in 1..lattice.len() {
        let mut best: Option<usize> = None;
        for i in 0..j {
            let Some(d) = dist[i] else { continue };
            let (lo, hi) = (&lattice[i], &lattice[j]);
            if lo.order() >= hi.order() || !lo.is_subgroup_of(hi) {
                continue;
            }
            let factor = quotient_by(hi, lo)?;
            let cost = if is_p_soluble(factor.target(), p)? {
                0
            } else if is_simple_product_divisible_by(factor.target(), p)? {
                1
            } else {
                continue;
            };
            best = Some(best.map_or(d + cost, |b| b.min(d + cost)));
        }
        dist[j] = best;
    }
    dist.last()
        .copied()
        .flatten()
        .ok_or_else(|| GroupError::Internal("no admissible normal series".into()))
}

/// Outcome of checking `λ_p(K_p(G)) <= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelLemmaCheck {
    pub kernel_order: u128,
    pub kernel_lambda: usize,
    /// `K_p(G)` modulo the preimage of the socle is soluble; `None` when
    /// `G` is p-soluble.
    pub outer_soluble: Option<bool>,
    pub holds: bool,
}

pub fn check_kernel_lemma(g: &PermGroup, p: u64) -> Result<KernelLemmaCheck> {
    require_prime(p)?;
    let k = p_kernel(g, p)?;
    let kernel_lambda = kernel_series(&k, p)?.lambda;
    let r = p_soluble_radical(g, p)?;
    let outer_soluble = if r.order() == g.order() {
        None
    } else {
        let q = quotient_by(g, &r)?;
        let soc = socle(q.target())?;
        let kbar = q.image_subgroup(&k)?;
        let top = quotient_by(&kbar, &soc.socle)?;
        Some(is_soluble(top.target()))
    };
    Ok(KernelLemmaCheck {
        kernel_order: k.order(),
        kernel_lambda,
        outer_soluble,
        holds: kernel_lambda <= 1 && outer_soluble != Some(false),
    })
}
