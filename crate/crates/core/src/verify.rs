//! Executable checks of the length bounds over concrete `(G, π, p)`
//! instances, the JSON report they produce, and the corpus suite.
//!
//! An instance needs `2 ∈ π`, `p ∈ π` and `p` odd. Checks that need a Hall
//! π-subgroup are skipped, never passed, when none is found.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::parse_group;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::hall::{find_hall_subgroup, HallStatus};
use crate::length::{check_kernel_lemma, kernel_series, KernelLemmaCheck};
use crate::limits::EXHAUSTIVE_HALL_SCALE;
use crate::primes::{is_prime, prime_divisors, PrimeSet};
use crate::radicals::{
    fitting_height, fitting_subgroup, generalized_fitting, generalized_fitting_height, two_length,
};
use crate::structure::is_soluble;

pub const SCHEMA_VERSION: u32 = 1;

/// Splits off cap overruns, which turn a check into a skip.
fn within_caps<T>(r: Result<T>, what: &str) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ (GroupError::CapExceeded { .. } | GroupError::QuotientCapExceeded { .. })) => {
            Ok(Err(format!("{what} not computed: {e}")))
        }
        Err(e) => Err(e),
    }
}

pub fn check_hypotheses(pi: &PrimeSet, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if !pi.contains(2) {
        return Err(GroupError::Hypothesis("π must contain 2".into()));
    }
    if p == 2 {
        return Err(GroupError::Hypothesis("p must be an odd prime".into()));
    }
    if !pi.contains(p) {
        return Err(GroupError::Hypothesis(format!("π must contain p = {p}")));
    }
    Ok(())
}

/// Shared data of one `(G, π, p)` instance.
struct Instance {
    g: PermGroup,
    lambda: usize,
    kernel_orders: Vec<u128>,
    hall_status: HallStatus,
    hall: Option<PermGroup>,
}

impl Instance {
    fn prepare(g: &PermGroup, pi: &PrimeSet, p: u64) -> Result<Self> {
        check_hypotheses(pi, p)?;
        let series = kernel_series(g, p)?;
        let search = find_hall_subgroup(g, pi, g.order() <= EXHAUSTIVE_HALL_SCALE)?;
        Ok(Instance {
            g: g.clone(),
            lambda: series.lambda,
            kernel_orders: series.kernel_orders(),
            hall_status: search.status,
            hall: search.witness,
        })
    }

    fn skip_reason(&self) -> String {
        match self.hall_status {
            HallStatus::ProvenAbsent => "G has no Hall π-subgroup".into(),
            _ => "no Hall π-subgroup found within the search budget".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCheck {
    pub lambda_p: usize,
    pub hall_status: HallStatus,
    pub hall_order: Option<u128>,
    pub h_star_h: Option<usize>,
    /// `None` when skipped.
    pub holds: Option<bool>,
    pub skipped_reason: Option<String>,
}

fn theorem(inst: &Instance) -> Result<TheoremCheck> {
    let mut out = TheoremCheck {
        lambda_p: inst.lambda,
        hall_status: inst.hall_status,
        hall_order: inst.hall.as_ref().map(|h| h.order()),
        h_star_h: None,
        holds: None,
        skipped_reason: None,
    };
    match &inst.hall {
        Some(h) => match within_caps(generalized_fitting_height(h), "h*(H)")? {
            Ok(c) => {
                out.h_star_h = Some(c.height);
                out.holds = Some(inst.lambda <= c.height);
            }
            Err(reason) => out.skipped_reason = Some(reason),
        },
        None => out.skipped_reason = Some(inst.skip_reason()),
    }
    Ok(out)
}

/// `λ_p(G) <= h*(H)` for a Hall π-subgroup `H`.
pub fn verify_theorem(g: &PermGroup, pi: &PrimeSet, p: u64) -> Result<TheoremCheck> {
    theorem(&Instance::prepare(g, pi, p)?)
}

/// Numbers behind the Hall `{2,p}`-subgroup `T` of `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryRoute {
    pub t_order: u128,
    pub fitting_height_t: usize,
    pub l2_t: usize,
}

impl CorollaryRoute {
    pub fn holds(&self, l2_h: usize) -> bool {
        self.fitting_height_t <= 2 * self.l2_t + 1 && self.l2_t <= l2_h
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryCheck {
    pub lambda_p: usize,
    pub l2_h: Option<usize>,
    pub route: Option<CorollaryRoute>,
    /// `λ <= 2 l_2(H) + 1`.
    pub bound_holds: Option<bool>,
    /// The bound and the route checks together; `None` when skipped.
    pub holds: Option<bool>,
    pub skipped_reason: Option<String>,
}

fn corollary(inst: &Instance, p: u64) -> Result<CorollaryCheck> {
    let mut out = CorollaryCheck {
        lambda_p: inst.lambda,
        l2_h: None,
        route: None,
        bound_holds: None,
        holds: None,
        skipped_reason: None,
    };
    let Some(h) = &inst.hall else {
        out.skipped_reason = Some(inst.skip_reason());
        return Ok(out);
    };
    if !is_soluble(h) {
        out.skipped_reason = Some("Hall π-subgroup is insoluble".into());
        return Ok(out);
    }
    let l2 = match within_caps(two_length(h), "l_2(H)")? {
        Ok(c) => c.height,
        Err(reason) => {
            out.skipped_reason = Some(reason);
            return Ok(out);
        }
    };
    out.l2_h = Some(l2);
    let bound = inst.lambda <= 2 * l2 + 1;
    out.bound_holds = Some(bound);
    let pi2 = PrimeSet::new(vec![2, p])?;
    let route = within_caps(
        (|| {
            let Some(t) = find_hall_subgroup(h, &pi2, true)?.witness else {
                return Ok(None);
            };
            Ok(Some(CorollaryRoute {
                t_order: t.order(),
                fitting_height_t: fitting_height(&t)?.height,
                l2_t: two_length(&t)?.height,
            }))
        })(),
        "Hall {2,p}-subgroup of H",
    )?;
    let route = match route {
        Ok(r) => r,
        Err(reason) => {
            out.skipped_reason = Some(reason);
            return Ok(out);
        }
    };
    let route_ok = route.as_ref().is_some_and(|r| r.holds(l2));
    out.route = route;
    out.holds = Some(bound && route_ok);
    Ok(out)
}

/// `λ_p(G) <= 2 l_2(H) + 1` for a soluble Hall π-subgroup `H`, together
/// with the Fitting-height bound for a Hall `{2,p}`-subgroup of `H`.
pub fn verify_corollary(g: &PermGroup, pi: &PrimeSet, p: u64) -> Result<CorollaryCheck> {
    corollary(&Instance::prepare(g, pi, p)?, p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCheck {
    pub kernel_order: u128,
    pub fitting_h_order: Option<u128>,
    pub generalized_fitting_h_order: Option<u128>,
    /// `F(H) <= K_p(G)`.
    pub lemma_f: Option<bool>,
    /// `F*(H) <= K_p(G)`.
    pub proposition: Option<bool>,
    pub skipped_reason: Option<String>,
}

fn chain(inst: &Instance, p: u64) -> Result<ChainCheck> {
    let k = crate::length::p_kernel(&inst.g, p)?;
    let mut out = ChainCheck {
        kernel_order: k.order(),
        fitting_h_order: None,
        generalized_fitting_h_order: None,
        lemma_f: None,
        proposition: None,
        skipped_reason: None,
    };
    let Some(h) = &inst.hall else {
        out.skipped_reason = Some(inst.skip_reason());
        return Ok(out);
    };
    let (f, fs) = match within_caps(
        fitting_subgroup(h).and_then(|f| Ok((f, generalized_fitting(h)?))),
        "F*(H)",
    )? {
        Ok(pair) => pair,
        Err(reason) => {
            out.skipped_reason = Some(reason);
            return Ok(out);
        }
    };
    out.fitting_h_order = Some(f.order());
    out.generalized_fitting_h_order = Some(fs.order());
    out.lemma_f = Some(f.is_subgroup_of(&k));
    out.proposition = Some(fs.is_subgroup_of(&k));
    Ok(out)
}

/// `F(H) <= K_p(G)` and `F*(H) <= K_p(G)`.
pub fn verify_proposition_chain(g: &PermGroup, pi: &PrimeSet, p: u64) -> Result<ChainCheck> {
    chain(&Instance::prepare(g, pi, p)?, p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub name: String,
    pub order: u128,
    pub degree: usize,
}

impl GroupInfo {
    pub fn of(name: &str, g: &PermGroup) -> Self {
        GroupInfo {
            name: name.to_string(),
            order: g.order(),
            degree: g.degree(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallInfo {
    pub status: HallStatus,
    pub order: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelInfo {
    pub order: u128,
    pub lambda: usize,
    pub outer_soluble: Option<bool>,
}

impl From<&KernelLemmaCheck> for KernelInfo {
    fn from(c: &KernelLemmaCheck) -> Self {
        KernelInfo {
            order: c.kernel_order,
            lambda: c.kernel_lambda,
            outer_soluble: c.outer_soluble,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub theorem: Option<bool>,
    pub corollary: Option<bool>,
    pub proposition: Option<bool>,
    #[serde(rename = "lemma_F")]
    pub lemma_f: Option<bool>,
    pub kernel_lemma: Option<bool>,
}

impl Checks {
    pub fn values(&self) -> [Option<bool>; 5] {
        [
            self.theorem,
            self.corollary,
            self.proposition,
            self.lemma_f,
            self.kernel_lemma,
        ]
    }

    pub fn any_failed(&self) -> bool {
        self.values().contains(&Some(false))
    }

    pub fn any_held(&self) -> bool {
        self.values().contains(&Some(true))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub schema: u32,
    pub group: GroupInfo,
    pub p: u64,
    pub pi: PrimeSet,
    pub lambda_p: usize,
    pub kernel_orders: Vec<u128>,
    pub hall: HallInfo,
    #[serde(rename = "h_star_H")]
    pub h_star_h: Option<usize>,
    #[serde(rename = "l2_H")]
    pub l2_h: Option<usize>,
    pub kernel: KernelInfo,
    pub corollary_route: Option<CorollaryRoute>,
    pub checks: Checks,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped_reason: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReportOptions {
    pub corollary: bool,
    pub chain: bool,
}

impl ReportOptions {
    pub fn all() -> Self {
        ReportOptions {
            corollary: true,
            chain: true,
        }
    }
}

pub fn build_report(
    name: &str,
    g: &PermGroup,
    pi: &PrimeSet,
    p: u64,
    opts: ReportOptions,
) -> Result<InvariantReport> {
    let inst = Instance::prepare(g, pi, p)?;
    let th = theorem(&inst)?;
    let lemma = check_kernel_lemma(g, p)?;
    let mut checks = Checks {
        theorem: th.holds,
        kernel_lemma: Some(lemma.holds),
        ..Checks::default()
    };
    let mut l2_h = None;
    let mut route = None;
    let mut skipped = th.skipped_reason.clone();
    if opts.corollary {
        let c = corollary(&inst, p)?;
        checks.corollary = c.holds;
        l2_h = c.l2_h;
        route = c.route;
        if skipped.is_none() {
            skipped = c.skipped_reason;
        }
    }
    if opts.chain {
        let c = chain(&inst, p)?;
        checks.proposition = c.proposition;
        checks.lemma_f = c.lemma_f;
        if skipped.is_none() {
            skipped = c.skipped_reason;
        }
    }
    Ok(InvariantReport {
        schema: SCHEMA_VERSION,
        group: GroupInfo::of(name, g),
        p,
        pi: pi.clone(),
        lambda_p: inst.lambda,
        kernel_orders: inst.kernel_orders,
        hall: HallInfo {
            status: inst.hall_status,
            order: th.hall_order,
        },
        h_star_h: th.h_star_h,
        l2_h,
        kernel: KernelInfo::from(&lemma),
        corollary_route: route,
        checks,
        skipped_reason: skipped,
    })
}

impl InvariantReport {
    /// Flags recomputed from the report's own numbers. Containment checks
    /// carry no numbers and are copied through.
    pub fn recomputed_checks(&self) -> Checks {
        let theorem = self.h_star_h.map(|h| self.lambda_p <= h);
        let corollary = self.l2_h.map(|l2| {
            self.lambda_p <= 2 * l2 + 1 && self.corollary_route.as_ref().is_some_and(|r| r.holds(l2))
        });
        Checks {
            theorem: self.checks.theorem.and(theorem),
            corollary: self.checks.corollary.and(corollary),
            proposition: self.checks.proposition,
            lemma_f: self.checks.lemma_f,
            kernel_lemma: self
                .checks
                .kernel_lemma
                .map(|_| self.kernel.lambda <= 1 && self.kernel.outer_soluble != Some(false)),
        }
    }

    pub fn recheck(&self) -> bool {
        self.recomputed_checks() == self.checks
    }
}

/// Every admissible `(π, p)`: `π` ranges over subsets of the primes
/// dividing `|G|` together with 2 and 3 that contain 2 and an odd prime,
/// `p` over the odd primes of `π`. Sorted.
pub fn valid_instances(g: &PermGroup) -> Vec<(PrimeSet, u64)> {
    let mut primes = prime_divisors(g.order());
    for q in [2, 3] {
        if !primes.contains(&q) {
            primes.push(q);
        }
    }
    primes.sort_unstable();
    let odd: Vec<u64> = primes.iter().copied().filter(|&q| q != 2).collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << odd.len()) {
        let mut set = vec![2];
        set.extend((0..odd.len()).filter(|i| mask >> i & 1 == 1).map(|i| odd[i]));
        let pi = PrimeSet::new(set.clone()).expect("primes");
        for &p in &set[1..] {
            out.push((pi.clone(), p));
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone)]
pub struct SuiteEntry {
    pub name: String,
    pub pi: PrimeSet,
    pub p: u64,
    pub outcome: std::result::Result<InvariantReport, String>,
}

/// Every corpus group of order at most `scale` against every admissible
/// `(π, p)`, run in parallel and sorted by name, then `π`, then `p`.
pub fn run_suite(names: &[&str], scale: u128) -> Result<Vec<SuiteEntry>> {
    let mut jobs = Vec::new();
    for &name in names {
        let g = parse_group(name)?;
        if g.order() > scale {
            continue;
        }
        for (pi, p) in valid_instances(&g) {
            jobs.push((name.to_string(), g.clone(), pi, p));
        }
    }
    let mut entries: Vec<SuiteEntry> = jobs
        .into_par_iter()
        .map(|(name, g, pi, p)| {
            let outcome = build_report(&name, &g, &pi, p, ReportOptions::all()).map_err(|e| e.to_string());
            SuiteEntry { name, pi, p, outcome }
        })
        .collect();
    entries.sort_by(|a, b| (&a.name, &a.pi, a.p).cmp(&(&b.name, &b.pi, b.p)));
    Ok(entries)
}
