//! Sylow subgroups, π-cores, the p-soluble radical, the Fitting subgroup,
//! the layer, `F*`, and the Fitting-type series.

use crate::error::{GroupError, Result};
use crate::group::{center, centralizer, normalizer, perfect_core, PermGroup};
use crate::primes::{is_prime, p_part, prime_divisors, PrimeSet};
use crate::quotient::quotient_by;
use crate::structure::{
    is_nilpotent, is_p_soluble, is_soluble, minimal_normal_is_p_soluble, radical_by, socle,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeightKind {
    Fitting,
    GeneralizedFitting,
    PLength,
    TwoLength,
}

/// An ascending normal series from the trivial group to `G` witnessing a
/// height or length value.
#[derive(Debug, Clone)]
pub struct HeightCertificate {
    pub kind: HeightKind,
    /// `series[0]` is trivial, the last term is `G`.
    pub series: Vec<PermGroup>,
    /// For length kinds: whether each factor `series[i+1]/series[i]` is a p-group.
    pub p_factors: Vec<bool>,
    pub height: usize,
}

impl HeightCertificate {
    pub fn orders(&self) -> Vec<u128> {
        self.series.iter().map(|s| s.order()).collect()
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::NotPrime(p))
    }
}

fn is_p_power(n: u128, p: u64) -> bool {
    p_part(n, p) == n
}

pub fn sylow_subgroup(g: &PermGroup, p: u64) -> Result<PermGroup> {
    require_prime(p)?;
    let target = p_part(g.order(), p);
    if target == g.order() {
        return Ok(g.clone());
    }
    let mut sylow = PermGroup::trivial(g.degree());
    if target == 1 {
        return Ok(sylow);
    }
    g.check_cap("sylow_subgroup")?;
    while sylow.order() < target {
        let norm = normalizer(g, &sylow)?;
        let mut grown = None;
        norm.for_each_element(|x| {
            if grown.is_none() && is_p_power(x.order() as u128, p) && !sylow.has(x) {
                grown = Some(x.clone());
            }
        });
        let x = grown.ok_or_else(|| {
            GroupError::Internal("p-subgroup below Sylow order has no growth element".into())
        })?;
        sylow = sylow.with_element(&x);
    }
    Ok(sylow)
}

/// Every Sylow subgroup is normal.
pub fn is_nilpotent_by_sylow(g: &PermGroup) -> Result<bool> {
    for p in prime_divisors(g.order()) {
        if !sylow_subgroup(g, p)?.is_normalized_by(g) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `O_π(G)`.
pub fn pi_core(g: &PermGroup, pi: &PrimeSet) -> Result<PermGroup> {
    radical_by(g, &|n| Ok(pi.is_pi_number(n.order())))
}

/// `O_p(G)`.
pub fn p_core(g: &PermGroup, p: u64) -> Result<PermGroup> {
    require_prime(p)?;
    radical_by(g, &|n| Ok(is_p_power(n.order(), p)))
}

/// `O_{p'}(G)`.
pub fn p_prime_core(g: &PermGroup, p: u64) -> Result<PermGroup> {
    require_prime(p)?;
    radical_by(g, &|n| Ok(n.order() % p as u128 != 0))
}

/// `R_p(G)`, the largest normal p-soluble subgroup.
pub fn p_soluble_radical(g: &PermGroup, p: u64) -> Result<PermGroup> {
    require_prime(p)?;
    radical_by(g, &|n| Ok(minimal_normal_is_p_soluble(n, p)))
}

pub fn fitting_subgroup(g: &PermGroup) -> Result<PermGroup> {
    if is_nilpotent(g) {
        return Ok(g.clone());
    }
    let mut f = PermGroup::trivial(g.degree());
    for p in prime_divisors(g.order()) {
        f = f.join(&p_core(g, p)?);
    }
    Ok(f)
}

/// `E(G)`: with `F = F(G)`, `C = C_G(F)` and `Z = Z(C)`, the layer is the
/// perfect core of the preimage in `C` of `Soc(C/Z)`.
pub fn layer(g: &PermGroup) -> Result<PermGroup> {
    let f = fitting_subgroup(g)?;
    let c = centralizer(g, &f)?;
    let z = center(&c)?;
    if z.order() == c.order() {
        return Ok(PermGroup::trivial(g.degree()));
    }
    let q = quotient_by(&c, &z)?;
    let soc = socle(q.target())?;
    let pre = q.preimage_subgroup(&soc.socle)?;
    Ok(perfect_core(&pre))
}

/// `F*(G) = F(G) E(G)`.
pub fn generalized_fitting(g: &PermGroup) -> Result<PermGroup> {
    Ok(fitting_subgroup(g)?.join(&layer(g)?))
}

/// Iterates `step` through the quotients `G / term` and pulls back.
fn upper_series(
    g: &PermGroup,
    kind: HeightKind,
    step: &dyn Fn(&PermGroup) -> Result<PermGroup>,
) -> Result<HeightCertificate> {
    let mut series = vec![PermGroup::trivial(g.degree())];
    loop {
        let cur = series.last().expect("nonempty").clone();
        if cur.order() == g.order() {
            break;
        }
        let q = quotient_by(g, &cur)?;
        let next = q.preimage_subgroup(&step(q.target())?)?;
        if next.order() <= cur.order() {
            return Err(GroupError::Internal(format!(
                "{kind:?} series failed to ascend at order {}",
                cur.order()
            )));
        }
        series.push(next);
    }
    let height = series.len() - 1;
    Ok(HeightCertificate {
        kind,
        series,
        p_factors: Vec::new(),
        height,
    })
}

/// `h*(G)` with its series; `h*(1) = 0`.
pub fn generalized_fitting_height(g: &PermGroup) -> Result<HeightCertificate> {
    upper_series(g, HeightKind::GeneralizedFitting, &generalized_fitting)
}

/// Fitting height of a soluble group; `h(1) = 0`.
pub fn fitting_height(g: &PermGroup) -> Result<HeightCertificate> {
    if !is_soluble(g) {
        return Err(GroupError::NotSoluble("fitting_height"));
    }
    upper_series(g, HeightKind::Fitting, &fitting_subgroup)
}

/// `l_p(G)` from the upper p-series `1 <= O_{p'} <= O_{p',p} <= ...`.
pub fn p_length(g: &PermGroup, p: u64) -> Result<HeightCertificate> {
    require_prime(p)?;
    if !is_p_soluble(g, p)? {
        return Err(GroupError::NotPSoluble { p });
    }
    let mut series = vec![PermGroup::trivial(g.degree())];
    let mut p_factors = Vec::new();
    let mut want_p = false;
    let mut stalled = 0;
    loop {
        let cur = series.last().expect("nonempty").clone();
        if cur.order() == g.order() {
            break;
        }
        let q = quotient_by(g, &cur)?;
        let core = if want_p {
            p_core(q.target(), p)?
        } else {
            p_prime_core(q.target(), p)?
        };
        if core.order() > 1 {
            series.push(q.preimage_subgroup(&core)?);
            p_factors.push(want_p);
            stalled = 0;
        } else {
            stalled += 1;
            if stalled > 1 {
                return Err(GroupError::Internal("upper p-series stalled".into()));
            }
        }
        want_p = !want_p;
    }
    let height = p_factors.iter().filter(|&&b| b).count();
    Ok(HeightCertificate {
        kind: if p == 2 {
            HeightKind::TwoLength
        } else {
            HeightKind::PLength
        },
        series,
        p_factors,
        height,
    })
}

pub fn two_length(g: &PermGroup) -> Result<HeightCertificate> {
    p_length(g, 2)
}
