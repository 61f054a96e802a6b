//! Brute-force reference implementations over explicit element lists.
//!
//! Nothing here touches stabilizer chains: groups are closed by repeated
//! multiplication of image arrays, subgroups are sorted index sets, and
//! every structural question is answered by scanning elements.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

pub mod criteria;

use hallbound_core::PermGroup;

pub type Perm = Vec<u32>;
pub type Set = Vec<usize>;

pub fn mul(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn inv(a: &Perm) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

const TABLE_LIMIT: usize = 4000;

/// A group with its multiplication table (products are hashed instead
/// above `TABLE_LIMIT` elements).
pub struct Bf {
    pub elems: Vec<Perm>,
    pub index: HashMap<Perm, usize>,
    table: Vec<u32>,
    inverse: Vec<usize>,
    pub id: usize,
}

impl Bf {
    pub fn new(degree: usize, gens: &[Perm]) -> Bf {
        let id: Perm = (0..degree as u32).collect();
        let mut elems = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let y = mul(&elems[i], g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
            i += 1;
        }
        let n = elems.len();
        assert!(n <= 20_000, "brute force limited to 20000 elements, got {n}");
        let mut table = Vec::new();
        if n <= TABLE_LIMIT {
            table = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[a * n + b] = index[&mul(&elems[a], &elems[b])] as u32;
                }
            }
        }
        let inverse = elems.iter().map(|e| index[&inv(e)]).collect();
        Bf {
            elems,
            index,
            table,
            inverse,
            id: 0,
        }
    }

    pub fn of(g: &PermGroup) -> Bf {
        let gens: Vec<Perm> = g.generators().iter().map(|x| x.images().to_vec()).collect();
        Bf::new(g.degree(), &gens)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn m(&self, a: usize, b: usize) -> usize {
        if self.table.is_empty() {
            self.index[&mul(&self.elems[a], &self.elems[b])]
        } else {
            self.table[a * self.elems.len() + b] as usize
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.m(self.m(self.inv(g), x), g)
    }

    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.m(self.m(self.inv(a), self.inv(b)), self.m(a, b))
    }

    pub fn elem_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.id {
            y = self.m(y, x);
            k += 1;
        }
        k
    }

    pub fn all(&self) -> Set {
        (0..self.order()).collect()
    }

    pub fn trivial(&self) -> Set {
        vec![self.id]
    }

    pub fn closure(&self, seeds: &[usize]) -> Set {
        let gens: Vec<usize> = seeds.iter().copied().filter(|&x| x != self.id).collect();
        let mut inside = vec![false; self.order()];
        inside[self.id] = true;
        let mut list = vec![self.id];
        let mut i = 0;
        while i < list.len() {
            for &g in &gens {
                let y = self.m(list[i], g);
                if !inside[y] {
                    inside[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// A small generating set of the subgroup `s`.
    pub fn gens_of(&self, s: &Set) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = self.trivial();
        for &x in s {
            if cur.binary_search(&x).is_err() {
                gens.push(x);
                cur = self.closure(&gens);
                if cur.len() == s.len() {
                    break;
                }
            }
        }
        gens
    }

    pub fn contains(s: &Set, x: usize) -> bool {
        s.binary_search(&x).is_ok()
    }

    pub fn normal_closure(&self, amb: &Set, seeds: &[usize]) -> Set {
        let amb_gens = self.gens_of(amb);
        let mut gens: Vec<usize> = seeds.to_vec();
        let mut k = self.closure(&gens);
        loop {
            let mut extra = None;
            'scan: for &x in &gens {
                for &g in &amb_gens {
                    let c = self.conj(x, g);
                    if !Self::contains(&k, c) {
                        extra = Some(c);
                        break 'scan;
                    }
                }
            }
            match extra {
                Some(c) => {
                    gens.push(c);
                    k = self.closure(&gens);
                }
                None => return k,
            }
        }
    }

    pub fn is_normal_in(&self, s: &Set, amb: &Set) -> bool {
        let sg = self.gens_of(s);
        self.gens_of(amb)
            .iter()
            .all(|&g| sg.iter().all(|&x| Self::contains(s, self.conj(x, g))))
    }

    pub fn join(&self, a: &Set, b: &Set) -> Set {
        let mut gens = self.gens_of(a);
        gens.extend(self.gens_of(b));
        self.closure(&gens)
    }

    pub fn meet(a: &Set, b: &Set) -> Set {
        a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
    }

    pub fn is_subset(a: &Set, b: &Set) -> bool {
        a.iter().all(|x| b.binary_search(x).is_ok())
    }

    /// One element from each conjugacy class of `amb`.
    pub fn class_reps(&self, amb: &Set) -> Vec<usize> {
        let amb_gens = self.gens_of(amb);
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::new();
        for &x in amb {
            if seen[x] {
                continue;
            }
            reps.push(x);
            let mut stack = vec![x];
            seen[x] = true;
            while let Some(y) = stack.pop() {
                for &g in &amb_gens {
                    let z = self.conj(y, g);
                    if !seen[z] {
                        seen[z] = true;
                        stack.push(z);
                    }
                }
            }
        }
        reps
    }

    /// Every subgroup of `amb` normal in `amb`, sorted by order.
    pub fn normal_subgroups_in(&self, amb: &Set) -> Vec<Set> {
        let mut found: HashSet<Set> = HashSet::new();
        found.insert(self.trivial());
        for x in self.class_reps(amb) {
            found.insert(self.normal_closure(amb, &[x]));
        }
        let mut lattice: Vec<Set> = found.into_iter().collect();
        lattice.sort();
        let mut known: HashSet<Set> = lattice.iter().cloned().collect();
        let mut i = 0;
        while i < lattice.len() {
            for j in 0..i {
                for c in [self.join(&lattice[i], &lattice[j]), Self::meet(&lattice[i], &lattice[j])] {
                    if known.insert(c.clone()) {
                        lattice.push(c);
                    }
                }
            }
            i += 1;
        }
        lattice.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        lattice
    }

    pub fn normal_subgroups(&self) -> Vec<Set> {
        self.normal_subgroups_in(&self.all())
    }

    pub fn minimal_normal_subgroups(&self) -> Vec<Set> {
        let lattice = self.normal_subgroups();
        let nontrivial: Vec<&Set> = lattice.iter().filter(|s| s.len() > 1).collect();
        nontrivial
            .iter()
            .filter(|s| !nontrivial.iter().any(|t| t.len() < s.len() && Self::is_subset(t, s)))
            .map(|s| (*s).clone())
            .collect()
    }

    /// `[a, b]` for subgroups normalizing each other.
    pub fn commutator(&self, a: &Set, b: &Set) -> Set {
        let ag = self.gens_of(a);
        let bg = self.gens_of(b);
        let seeds: Vec<usize> = ag
            .iter()
            .flat_map(|&x| bg.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.comm(x, y))
            .collect();
        let amb = self.join(a, b);
        self.normal_closure(&amb, &seeds)
    }

    pub fn derived(&self, s: &Set) -> Set {
        self.commutator(s, s)
    }

    pub fn perfect_core(&self, s: &Set) -> Set {
        let mut cur = s.clone();
        loop {
            let d = self.derived(&cur);
            if d.len() == cur.len() {
                return cur;
            }
            cur = d;
        }
    }

    pub fn is_soluble(&self, s: &Set) -> bool {
        self.perfect_core(s).len() == 1
    }

    pub fn is_abelian(&self, s: &Set) -> bool {
        let g = self.gens_of(s);
        g.iter().all(|&a| g.iter().all(|&b| self.m(a, b) == self.m(b, a)))
    }

    pub fn is_nilpotent(&self, s: &Set) -> bool {
        let mut cur = s.clone();
        while cur.len() > 1 {
            let next = self.commutator(&cur, s);
            if next.len() == cur.len() {
                return false;
            }
            cur = next;
        }
        true
    }

    pub fn centralizer_in(&self, amb: &Set, t: &Set) -> Set {
        let tg = self.gens_of(t);
        amb.iter()
            .copied()
            .filter(|&x| tg.iter().all(|&y| self.m(x, y) == self.m(y, x)))
            .collect()
    }

    pub fn center(&self, s: &Set) -> Set {
        self.centralizer_in(s, s)
    }

    pub fn conjugate_set(&self, s: &Set, g: usize) -> Set {
        let mut out: Set = s.iter().map(|&x| self.conj(x, g)).collect();
        out.sort_unstable();
        out
    }

    /// `G/N` acting on the right cosets of `N`, with the map from elements
    /// of `G` to elements of the quotient.
    pub fn quotient(&self, n: &Set) -> (Bf, Vec<usize>) {
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for x in 0..self.order() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            for &k in n {
                coset_of[self.m(k, x)] = reps.len();
            }
            reps.push(x);
        }
        let action = |x: usize| -> Perm {
            reps.iter()
                .map(|&r| coset_of[self.m(r, x)] as u32)
                .collect()
        };
        let gens: Vec<Perm> = self.gens_of(&self.all()).into_iter().map(action).collect();
        let q = Bf::new(reps.len(), &gens);
        let map = (0..self.order()).map(|x| q.index[&action(x)]).collect();
        (q, map)
    }

    pub fn preimage(map: &[usize], t: &Set) -> Set {
        (0..map.len()).filter(|&x| Self::contains(t, map[x])).collect()
    }
}

fn p_power(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Largest normal nilpotent subgroup.
pub fn fitting(bf: &Bf) -> Set {
    let nil: Vec<Set> = bf
        .normal_subgroups()
        .into_iter()
        .filter(|s| bf.is_nilpotent(s))
        .collect();
    let top = nil.last().expect("trivial subgroup is nilpotent").clone();
    assert!(nil.iter().all(|s| Bf::is_subset(s, &top)));
    top
}

fn is_quasisimple(bf: &Bf, s: &Set) -> bool {
    if s.len() == 1 || bf.derived(s).len() != s.len() {
        return false;
    }
    let z = bf.center(s);
    z.len() < s.len()
        && bf
            .normal_subgroups_in(s)
            .iter()
            .all(|n| n.len() == s.len() || Bf::is_subset(n, &z))
}

/// Product of the subnormal quasisimple subgroups, found by descending
/// through perfect cores of normal subgroups of normal subgroups.
pub fn layer(bf: &Bf) -> Set {
    let mut components: Vec<Set> = Vec::new();
    let mut visited: HashSet<Set> = HashSet::new();
    let start = bf.perfect_core(&bf.all());
    let mut stack = vec![start];
    while let Some(s) = stack.pop() {
        if s.len() == 1 || !visited.insert(s.clone()) {
            continue;
        }
        if is_quasisimple(bf, &s) {
            components.push(s.clone());
        }
        for n in bf.normal_subgroups_in(&s) {
            let p = bf.perfect_core(&n);
            if p.len() > 1 && p.len() < s.len() {
                stack.push(p);
            }
        }
    }
    components
        .iter()
        .fold(bf.trivial(), |acc, c| bf.join(&acc, c))
}

pub fn generalized_fitting(bf: &Bf) -> Set {
    bf.join(&fitting(bf), &layer(bf))
}

/// Orders of the ascending series obtained by iterating `step` through
/// quotients, starting with the trivial group.
pub fn upper_series(bf: &Bf, step: &dyn Fn(&Bf) -> Set) -> Vec<usize> {
    let mut term = bf.trivial();
    let mut orders = vec![1];
    while term.len() < bf.order() {
        let (q, map) = bf.quotient(&term);
        let next = Bf::preimage(&map, &step(&q));
        assert!(next.len() > term.len(), "series stalled");
        term = next;
        orders.push(term.len());
    }
    orders
}

pub fn h_star(bf: &Bf) -> usize {
    upper_series(bf, &generalized_fitting).len() - 1
}

pub fn fitting_height(bf: &Bf) -> usize {
    upper_series(bf, &fitting).len() - 1
}

/// Largest normal p-subgroup, read off the normal-subgroup lattice.
pub fn p_core_lattice(bf: &Bf, p: usize) -> Set {
    bf.normal_subgroups()
        .into_iter()
        .filter(|s| p_power(s.len(), p))
        .max_by_key(|s| s.len())
        .expect("trivial subgroup")
}

/// Intersection of all conjugates of `sylow`.
pub fn sylow_core(bf: &Bf, sylow: &Set) -> Set {
    let mut core = sylow.clone();
    for g in 0..bf.order() {
        core = Bf::meet(&core, &bf.conjugate_set(sylow, g));
    }
    core
}

/// Least number of p-factors over normal series whose factors are
/// p-groups or p'-groups; `None` when no such series exists.
pub fn shortest_p_length(bf: &Bf, p: usize) -> Option<usize> {
    let lattice = bf.normal_subgroups();
    let mut dist: Vec<Option<usize>> = vec![None; lattice.len()];
    dist[0] = Some(0);
    for j in 1..lattice.len() {
        for i in 0..j {
            let Some(d) = dist[i] else { continue };
            if lattice[i].len() >= lattice[j].len() || !Bf::is_subset(&lattice[i], &lattice[j]) {
                continue;
            }
            let idx = lattice[j].len() / lattice[i].len();
            let cost = if p_power(idx, p) {
                1
            } else if idx % p != 0 {
                0
            } else {
                continue;
            };
            let cand = d + cost;
            if dist[j].is_none_or(|b| cand < b) {
                dist[j] = Some(cand);
            }
        }
    }
    *dist.last().unwrap()
}

/// `hi / lo` is p-soluble: every chief factor of `G` between them is
/// abelian or of order prime to `p`.
fn factor_p_soluble(bf: &Bf, lattice: &[Set], lo: &Set, hi: &Set, p: usize) -> bool {
    let mut cur = lo.clone();
    while cur.len() < hi.len() {
        let next = lattice
            .iter()
            .find(|m| m.len() > cur.len() && Bf::is_subset(&cur, m) && Bf::is_subset(m, hi))
            .expect("hi itself lies above cur")
            .clone();
        let g = bf.gens_of(&next);
        let abelian = g
            .iter()
            .all(|&a| g.iter().all(|&b| Bf::contains(&cur, bf.comm(a, b))));
        if !abelian && (next.len() / cur.len()) % p == 0 {
            return false;
        }
        cur = next;
    }
    true
}

/// `hi / lo` is a direct product of non-abelian simple groups of order
/// divisible by `p`: it is the product of its own minimal normal
/// subgroups, each non-abelian with order divisible by `p`.
fn factor_semisimple_p(bf: &Bf, lo: &Set, hi: &Set, p: usize) -> bool {
    let lo_gens = bf.gens_of(lo);
    let mut closures: HashSet<Set> = HashSet::new();
    for x in bf.class_reps(hi) {
        if Bf::contains(lo, x) {
            continue;
        }
        let mut seeds = lo_gens.clone();
        seeds.push(x);
        closures.insert(bf.normal_closure(hi, &seeds));
    }
    let closures: Vec<Set> = closures.into_iter().collect();
    let minimal: Vec<&Set> = closures
        .iter()
        .filter(|k| !closures.iter().any(|t| t.len() < k.len() && Bf::is_subset(t, k)))
        .collect();
    let mut product = lo.clone();
    for k in &minimal {
        let g = bf.gens_of(k);
        let abelian = g
            .iter()
            .all(|&a| g.iter().all(|&b| Bf::contains(lo, bf.comm(a, b))));
        if abelian || (k.len() / lo.len()) % p != 0 {
            return false;
        }
        product = bf.join(&product, k);
    }
    product.len() == hi.len()
}

/// Least number of non-p-soluble factors over admissible normal series.
pub fn lambda(bf: &Bf, p: usize) -> usize {
    let lattice = bf.normal_subgroups();
    let mut dist: Vec<Option<usize>> = vec![None; lattice.len()];
    dist[0] = Some(0);
    for j in 1..lattice.len() {
        for i in 0..j {
            let Some(d) = dist[i] else { continue };
            let (lo, hi) = (&lattice[i], &lattice[j]);
            if lo.len() >= hi.len() || !Bf::is_subset(lo, hi) {
                continue;
            }
            let cost = if factor_p_soluble(bf, &lattice, lo, hi, p) {
                0
            } else if factor_semisimple_p(bf, lo, hi, p) {
                1
            } else {
                continue;
            };
            if dist[j].is_none_or(|b| d + cost < b) {
                dist[j] = Some(d + cost);
            }
        }
    }
    dist.last().unwrap().expect("a chief series is always admissible")
}

pub fn is_p_soluble(bf: &Bf, p: usize) -> bool {
    let lattice = bf.normal_subgroups();
    factor_p_soluble(bf, &lattice, &bf.trivial(), &bf.all(), p)
}

/// Index set of the elements of `h` inside `bf`.
pub fn set_of(bf: &Bf, h: &PermGroup) -> Set {
    let gens: Vec<usize> = h
        .generators()
        .iter()
        .map(|x| bf.index[&x.images().to_vec()])
        .collect();
    bf.closure(&gens)
}

pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
