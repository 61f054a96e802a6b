//! Corpus-wide checks shared by the acceptance harness. Each returns a
//! one-line summary on success and the first discrepancy on failure.

use std::collections::HashSet;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use hallbound_core::corpus::{parse_group, standard_corpus, wreath_base};
use hallbound_core::group::derived_subgroup;
use hallbound_core::hall::{
    check_hall_heredity, confirm_no_nilpotent_hall_2p, find_hall_subgroup, HallStatus,
};
use hallbound_core::length::{check_kernel_lemma, kernel_series, lambda_oracle, normal_subgroups};
use hallbound_core::quotient::quotient_by;
use hallbound_core::radicals::{
    fitting_subgroup, generalized_fitting, generalized_fitting_height, layer, p_core, p_length,
    p_soluble_radical, sylow_subgroup, two_length,
};
use hallbound_core::structure::{is_p_soluble, is_simple, socle};
use hallbound_core::verify::{run_suite, SuiteEntry};
use hallbound_core::{GroupError, PermGroup, Permutation, PrimeSet};

use super::{Bf, Perm};

pub type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn group(name: &str) -> Result<PermGroup, String> {
    parse_group(name).map_err(|e| format!("{name}: {e}"))
}

fn err<E: std::fmt::Display>(ctx: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

fn corpus_upto(limit: u128) -> Vec<(&'static str, PermGroup)> {
    standard_corpus()
        .into_iter()
        .map(|n| (n, parse_group(n).expect("corpus builds")))
        .filter(|(_, g)| g.order() <= limit)
        .collect()
}

fn primes_of(g: &PermGroup) -> Vec<u64> {
    hallbound_core::primes::prime_divisors(g.order())
}

/// `λ_5(A5 wr A5) = 2` from the structure of its kernel series: the base
/// is a product of five simple factors of order 60, the top quotient is
/// simple of order 60, and the base factors are permuted (so `G` is not a
/// direct product of simple groups and no admissible series has a single
/// non-5-soluble factor).
fn wreath_a5_a5() -> Outcome {
    let g = group("A5 wr A5")?;
    let series = kernel_series(&g, 5).map_err(err("kernel series"))?;
    ensure!(series.lambda == 2, "λ_5(A5 wr A5) = {}", series.lambda);
    let base = wreath_base(&group("A5")?, &group("A5")?);
    ensure!(series.kernels[0].same_group(&base), "K_5,1 is not the base");
    ensure!(series.kernels[1].same_group(&g), "K_5,2 is not G");
    let soc = socle(&g).map_err(err("socle"))?;
    ensure!(soc.factors.len() == 5, "socle has {} factors", soc.factors.len());
    for f in &soc.factors {
        let b = Bf::of(f);
        ensure!(b.order() == 60 && b.minimal_normal_subgroups() == vec![b.all()], "socle factor not simple of order 60");
    }
    ensure!(
        soc.factors.iter().any(|f| !f.is_normalized_by(&g)),
        "socle factors are all normal"
    );
    let q = quotient_by(&g, &base).map_err(err("quotient"))?;
    let top = Bf::of(q.target());
    ensure!(top.order() == 60 && top.minimal_normal_subgroups() == vec![top.all()], "top quotient not simple");
    Ok("λ_5(A5 wr A5)=2".into())
}

pub fn c1_invariant_table() -> Outcome {
    let lambdas: &[(&str, u64, usize)] = &[
        ("A5", 3, 1),
        ("A5", 5, 1),
        ("A5", 2, 1),
        ("S4", 2, 0),
        ("S4", 3, 0),
        ("PSL(2,7)", 3, 1),
        ("A5 wr C2", 3, 1),
    ];
    let mut n = 0;
    for &(name, p, want) in lambdas {
        let g = group(name)?;
        let got = kernel_series(&g, p).map_err(err(name))?.lambda;
        let oracle = super::lambda(&Bf::of(&g), p as usize);
        ensure!(got == want && oracle == want, "λ_{p}({name}): engine {got}, oracle {oracle}, expected {want}");
        n += 1;
    }
    wreath_a5_a5()?;
    n += 1;
    for (name, want) in [("A4", 2), ("S4", 3), ("A5", 1), ("SL(2,5)", 1)] {
        let g = group(name)?;
        let got = generalized_fitting_height(&g).map_err(err(name))?.height;
        let oracle = super::h_star(&Bf::of(&g));
        ensure!(got == want && oracle == want, "h*({name}): engine {got}, oracle {oracle}, expected {want}");
        n += 1;
    }
    for (name, want) in [("S4", 2), ("A4", 1)] {
        let g = group(name)?;
        let got = two_length(&g).map_err(err(name))?.height;
        let oracle = super::shortest_p_length(&Bf::of(&g), 2);
        ensure!(got == want && oracle == Some(want), "l_2({name}): engine {got}, oracle {oracle:?}");
        n += 1;
    }
    let s4 = group("S4")?;
    let b = Bf::of(&s4);
    let f = fitting_subgroup(&s4).map_err(err("F(S4)"))?;
    ensure!(f.order() == 4 && super::set_of(&b, &f) == super::fitting(&b), "F(S4) mismatch");
    let fs = generalized_fitting(&s4).map_err(err("F*(S4)"))?;
    ensure!(fs.order() == 4 && super::set_of(&b, &fs) == super::generalized_fitting(&b), "F*(S4) mismatch");
    let sl = group("SL(2,5)")?;
    let e = layer(&sl).map_err(err("E(SL(2,5))"))?;
    ensure!(e.order() == 120 && super::layer(&Bf::of(&sl)).len() == 120, "E(SL(2,5)) mismatch");
    n += 3;
    Ok(format!("{n} values match engine and brute force"))
}

/// The corpus suite at the enumeration cap, computed once.
pub fn suite() -> &'static Vec<SuiteEntry> {
    static SUITE: OnceLock<Vec<SuiteEntry>> = OnceLock::new();
    SUITE.get_or_init(|| run_suite(&standard_corpus(), 1_000_000).expect("corpus parses"))
}

fn suite_errors() -> Result<(), String> {
    for e in suite() {
        if let Err(msg) = &e.outcome {
            return Err(format!("{} {} p={}: {msg}", e.name, e.pi, e.p));
        }
    }
    Ok(())
}

pub fn c2_theorem_suite() -> Outcome {
    suite_errors()?;
    let mut held = 0;
    let mut skipped = 0;
    for e in suite() {
        let r = e.outcome.as_ref().expect("checked above");
        ensure!(r.recheck(), "{} {} p={}: report flags do not recompute", e.name, e.pi, e.p);
        match (r.hall.status, r.checks.theorem) {
            (_, Some(false)) => {
                return Err(format!("{} {} p={}: λ={} > h*(H)={:?}", e.name, e.pi, e.p, r.lambda_p, r.h_star_h))
            }
            (HallStatus::Found, Some(true)) => held += 1,
            (HallStatus::Found, None) => {
                return Err(format!("{} {} p={}: Hall subgroup found but theorem not evaluated", e.name, e.pi, e.p))
            }
            _ => skipped += 1,
        }
    }
    for (name, pi, p) in [
        ("A5", "2,3", 3),
        ("PSL(2,7)", "2,3", 3),
        ("PSL(2,11)", "2,3", 3),
        ("A5 wr C2", "2,3", 3),
    ] {
        let pi: PrimeSet = pi.parse().expect("prime set");
        let hit = suite()
            .iter()
            .find(|e| e.name == name && e.pi == pi && e.p == p)
            .and_then(|e| e.outcome.as_ref().ok())
            .is_some_and(|r| r.checks.theorem == Some(true));
        ensure!(hit, "required instance ({name}, {pi}, {p}) did not hold");
    }
    for (name, g) in corpus_upto(1_000_000) {
        if !hallbound_core::structure::is_soluble(&g) {
            continue;
        }
        for e in suite().iter().filter(|e| e.name == name) {
            let r = e.outcome.as_ref().expect("checked above");
            ensure!(
                r.hall.status == HallStatus::Found && r.checks.theorem == Some(true),
                "soluble {name} {} p={}: theorem not verified",
                e.pi,
                e.p
            );
        }
    }
    Ok(format!("{held} instances hold, {skipped} skipped without a Hall subgroup, 0 fail"))
}

pub fn c3_corollary_suite() -> Outcome {
    suite_errors()?;
    let mut held = 0;
    for e in suite() {
        let r = e.outcome.as_ref().expect("checked above");
        if r.l2_h.is_none() {
            ensure!(r.checks.corollary != Some(false), "{} {} p={}: corollary failed", e.name, e.pi, e.p);
            continue;
        }
        let route = r
            .corollary_route
            .as_ref()
            .ok_or_else(|| format!("{} {} p={}: no Hall {{2,p}}-subgroup of H", e.name, e.pi, e.p))?;
        ensure!(
            r.checks.corollary == Some(true),
            "{} {} p={}: λ={} l_2(H)={:?} route {route:?}",
            e.name,
            e.pi,
            e.p,
            r.lambda_p,
            r.l2_h
        );
        held += 1;
    }
    ensure!(held > 0, "no instance with a soluble Hall subgroup");
    Ok(format!("{held} instances with soluble H hold, proof route included"))
}

pub fn c4_oracle_equivalences() -> Outcome {
    let groups = corpus_upto(2000);
    let results: Vec<Result<usize, String>> = groups
        .par_iter()
        .map(|(name, g)| -> Result<usize, String> {
            let b = Bf::of(g);
            let mut checks = 0;
            for p in primes_of(g) {
                let ks = kernel_series(g, p).map_err(err(name))?.lambda;
                let lo = lambda_oracle(g, p).map_err(err(name))?;
                let bf = super::lambda(&b, p as usize);
                ensure!(ks == lo && lo == bf, "{name} p={p}: kernel series {ks}, lattice {lo}, brute force {bf}");
                let core = super::set_of(&b, &p_core(g, p).map_err(err(name))?);
                let syl = super::set_of(&b, &sylow_subgroup(g, p).map_err(err(name))?);
                ensure!(
                    core == super::sylow_core(&b, &syl) && core == super::p_core_lattice(&b, p as usize),
                    "{name}: O_{p} differs from the Sylow-conjugate intersection"
                );
                checks += 2;
                if g.order() <= 1000 && is_p_soluble(g, p).map_err(err(name))? {
                    let l = p_length(g, p).map_err(err(name))?.height;
                    let s = super::shortest_p_length(&b, p as usize);
                    ensure!(Some(l) == s, "{name}: l_{p} = {l}, shortest series {s:?}");
                    checks += 1;
                }
            }
            let e = super::set_of(&b, &layer(g).map_err(err(name))?);
            ensure!(e == super::layer(&b), "{name}: layer differs from the subnormal quasisimple product");
            Ok(checks + 1)
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("{total} exact agreements over {} groups", groups.len()))
}

pub fn c5_lemma_properties() -> Outcome {
    suite_errors()?;
    let mut n = 0;
    for e in suite() {
        let r = e.outcome.as_ref().expect("checked above");
        for (what, v) in [("F(H) <= K_p(G)", r.checks.lemma_f), ("F*(H) <= K_p(G)", r.checks.proposition)] {
            ensure!(v != Some(false), "{} {} p={}: {what} fails", e.name, e.pi, e.p);
            n += v.is_some() as usize;
        }
    }
    for name in standard_corpus() {
        let g = group(name)?;
        let mut primes = primes_of(&g);
        for q in [2, 3, 5, 7] {
            if !primes.contains(&q) {
                primes.push(q);
            }
        }
        for p in primes {
            let k = check_kernel_lemma(&g, p).map_err(err(name))?;
            ensure!(k.holds, "{name} p={p}: λ_p(K_p(G)) = {} ({:?})", k.kernel_lambda, k.outer_soluble);
            let lam = kernel_series(&g, p).map_err(err(name))?.lambda;
            let sol = is_p_soluble(&g, p).map_err(err(name))?;
            ensure!((lam == 0) == sol, "{name} p={p}: λ = {lam} but p-soluble = {sol}");
            n += 2;
        }
    }
    for (name, g) in corpus_upto(hallbound_core::limits::EXHAUSTIVE_HALL_SCALE) {
        let normals = normal_subgroups(&g).map_err(err(name))?;
        let mut pis: HashSet<PrimeSet> = hallbound_core::verify::valid_instances(&g)
            .into_iter()
            .map(|(pi, _)| pi)
            .collect();
        for p in primes_of(&g) {
            pis.insert(PrimeSet::single(p).expect("prime"));
        }
        for pi in pis {
            let res = find_hall_subgroup(&g, &pi, true).map_err(err(name))?;
            let Some(h) = res.witness else { continue };
            for nn in &normals {
                let ok = check_hall_heredity(&g, &h, &pi, nn).map_err(err(name))?;
                ensure!(ok, "{name} {pi}: heredity fails for a normal subgroup of order {}", nn.order());
                n += 1;
            }
        }
    }
    Ok(format!("{n} lemma, containment and heredity checks hold"))
}

pub fn c6_cited_result() -> Outcome {
    let mut n = 0;
    for name in ["A5", "A6", "PSL(2,7)", "PSL(2,11)"] {
        let s = group(name)?;
        ensure!(is_simple(&s).map_err(err(name))?, "{name} is not simple");
        for p in primes_of(&s).into_iter().filter(|&p| p != 2) {
            let ok = confirm_no_nilpotent_hall_2p(&s, p).map_err(err(name))?;
            ensure!(ok, "{name} has a nilpotent Hall {{2,{p}}}-subgroup");
            n += 1;
        }
    }
    let a5 = group("A5")?;
    let r = find_hall_subgroup(&a5, &"2,5".parse().expect("set"), true).map_err(err("A5"))?;
    ensure!(r.status == HallStatus::ProvenAbsent, "A5 with {{2,5}}: {:?}", r.status);
    Ok(format!("{n} (S, p) pairs confirmed, A5 {{2,5}} proven absent"))
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Perm {
    let mut v: Perm = (0..n as u32).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    v
}

fn element_set(g: &PermGroup) -> HashSet<Perm> {
    let gens: Vec<Perm> = g.generators().iter().map(|x| x.images().to_vec()).collect();
    let id: Perm = (0..g.degree() as u32).collect();
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for s in &gens {
            let y = super::mul(&x, s);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen
}

/// Groups above the enumeration cap keep whatever the engine can compute;
/// cap errors are counted, anything else fails.
fn within_cap<T>(r: hallbound_core::Result<T>, name: &str, capped: &mut usize) -> Result<Option<T>, String> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(GroupError::CapExceeded { .. } | GroupError::QuotientCapExceeded { .. }) => {
            *capped += 1;
            Ok(None)
        }
        Err(e) => Err(format!("{name}: {e}")),
    }
}

pub fn c7_engine_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut n = 0;
    for (name, g) in corpus_upto(5000) {
        let elems = element_set(&g);
        ensure!(elems.len() as u128 == g.order(), "{name}: |G| = {} but closure has {}", g.order(), elems.len());
        let members: Vec<&Perm> = elems.iter().collect();
        for i in 0..100 {
            let x = if i % 2 == 0 {
                random_perm(&mut rng, g.degree())
            } else {
                members[rng.gen_range(0..members.len())].clone()
            };
            let p = Permutation::from_images(x.clone()).map_err(err(name))?;
            ensure!(g.contains(&p).map_err(err(name))? == elems.contains(&x), "{name}: membership disagrees");
            n += 1;
        }
    }
    for (name, g) in corpus_upto(u128::MAX) {
        for pt in g.base() {
            let orbit = g.orbit(pt).map_err(err(name))?.len() as u128;
            let stab = g.point_stabilizer(pt).map_err(err(name))?.order();
            ensure!(orbit * stab == g.order(), "{name}: orbit-stabilizer fails at {pt}");
            n += 1;
        }
    }
    let mut capped = 0;
    for (name, g) in corpus_upto(u128::MAX) {
        if g.order() == 1 {
            continue;
        }
        let mut avail = |r| within_cap(r, name, &mut capped);
        let mut subs = vec![Some(derived_subgroup(&g))];
        subs.push(avail(fitting_subgroup(&g))?);
        subs.push(avail(generalized_fitting(&g))?);
        subs.push(avail(socle(&g).map(|s| s.socle))?);
        for p in primes_of(&g) {
            subs.push(avail(sylow_subgroup(&g, p))?);
            subs.push(avail(p_soluble_radical(&g, p))?);
            match kernel_series(&g, p) {
                Ok(ks) => subs.extend(ks.kernels.into_iter().map(Some)),
                Err(e) => subs.push(avail(Err(e))?),
            }
        }
        let subs: Vec<PermGroup> = subs.into_iter().flatten().collect();
        for s in &subs {
            ensure!(s.is_subgroup_of(&g), "{name}: computed subgroup escapes G");
            ensure!(g.order() % s.order() == 0, "{name}: subgroup of order {} breaks Lagrange", s.order());
            n += 1;
        }
        for nn in subs.iter().filter(|s| s.order() > 1 && s.is_normalized_by(&g)).take(4) {
            let Some(q) = within_cap(quotient_by(&g, nn), name, &mut capped)? else { continue };
            ensure!(q.kernel().order() * q.target().order() == g.order(), "{name}: |G| != |N| |G/N|");
            for _ in 0..50 {
                let a = g.random_element(&mut rng);
                let b = g.random_element(&mut rng);
                let lhs = q.image(&a.compose(&b).map_err(err(name))?).map_err(err(name))?;
                let rhs = q.image(&a).map_err(err(name))?.compose(&q.image(&b).map_err(err(name))?).map_err(err(name))?;
                ensure!(lhs == rhs, "{name}: quotient map is not a homomorphism");
                ensure!(q.image(&a).map_err(err(name))?.is_identity() == nn.contains(&a).map_err(err(name))?, "{name}: kernel mismatch");
                n += 1;
            }
        }
    }
    Ok(format!("{n} engine invariants hold ({capped} computations above the enumeration cap not attempted)"))
}
