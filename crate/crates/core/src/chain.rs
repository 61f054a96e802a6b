//! Stabilizer chain over the fixed base order `0, 1, .., n-1`.
//!
//! Only levels with a nontrivial basic orbit are stored. A strong generator
//! belongs to every level whose base point is at most its first moved
//! point, so the generators of the stabilizer of `0..k` are exactly the
//! strong generators whose first moved point is `>= k`.

use rand::Rng;

use crate::perm::Permutation;

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Indices into `StabChain::strong`.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// For each point of the orbit, the strong generator that reached it.
    schreier: Vec<u32>,
    /// Schreier generators for `orbit[..done_points] x gens[..done_gens]` are known to sift.
    done_points: usize,
    done_gens: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct StabChain {
    degree: usize,
    strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    first_moved: Vec<usize>,
    levels: Vec<Level>,
}

impl StabChain {
    pub(crate) fn new(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            first_moved: Vec::new(),
            levels: Vec::new(),
        };
        for g in gens {
            chain.extend(g);
        }
        chain
    }

    /// Adds `g` to the group and restores the strong generating property.
    /// Returns false when `g` was already a member.
    pub(crate) fn extend(&mut self, g: &Permutation) -> bool {
        match self.sift(g.clone(), 0) {
            None => false,
            Some((residue, _)) => {
                self.add_strong(residue);
                self.complete();
                true
            }
        }
    }

    pub(crate) fn degree(&self) -> usize {
        self.degree
    }

    pub(crate) fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub(crate) fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub(crate) fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub(crate) fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Generators of the pointwise stabilizer of `0..k`.
    pub(crate) fn stabilizer_generators(&self, k: usize) -> Vec<Permutation> {
        self.strong
            .iter()
            .zip(&self.first_moved)
            .filter(|(_, &fm)| fm >= k)
            .map(|(g, _)| g.clone())
            .collect()
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g.clone(), 0).is_none()
    }

    /// Divides `h` through the levels starting at `from`. Returns `None` when
    /// `h` reduces to the identity, else the residue and the point where the
    /// residue must open or enlarge a level (its first moved point).
    fn sift(&self, mut h: Permutation, from: usize) -> Option<(Permutation, usize)> {
        let mut li = from;
        let mut pos = if from == 0 {
            0
        } else {
            self.levels[from - 1].base + 1
        };
        loop {
            let m = (pos..self.degree).find(|&x| h.apply(x) != x)?;
            if li == self.levels.len() || m < self.levels[li].base {
                return Some((h, m));
            }
            let level = &self.levels[li];
            let b = level.base;
            let mut x = h.apply(b);
            if level.schreier[x] == NONE {
                return Some((h, b));
            }
            while x != b {
                let s = level.schreier[x] as usize;
                h = h.mul(&self.strong_inv[s]);
                x = self.strong_inv[s].apply(x);
            }
            pos = b + 1;
            li += 1;
        }
    }

    fn level_index(&self, base: usize) -> Result<usize, usize> {
        self.levels.binary_search_by_key(&base, |l| l.base)
    }

    fn add_strong(&mut self, g: Permutation) {
        let fm = g.first_moved().expect("strong generator must be nontrivial");
        let idx = self.strong.len();
        self.strong_inv.push(g.inverse());
        self.strong.push(g);
        self.first_moved.push(fm);
        if let Err(pos) = self.level_index(fm) {
            let gens: Vec<usize> = (0..idx)
                .filter(|&i| self.first_moved[i] >= fm)
                .collect();
            let mut schreier = vec![NONE; self.degree];
            schreier[fm] = ROOT;
            self.levels.insert(
                pos,
                Level {
                    base: fm,
                    gens,
                    orbit: vec![fm as u32],
                    schreier,
                    done_points: 0,
                    done_gens: 0,
                },
            );
            self.bfs(pos, 0);
        }
        for li in 0..self.levels.len() {
            if self.levels[li].base > fm {
                break;
            }
            self.levels[li].gens.push(idx);
            self.grow_orbit(li, idx);
        }
    }

    fn grow_orbit(&mut self, li: usize, new_gen: usize) {
        let strong = &self.strong;
        let level = &mut self.levels[li];
        let old = level.orbit.len();
        let g = &strong[new_gen];
        for i in 0..old {
            let y = g.apply(level.orbit[i] as usize);
            if level.schreier[y] == NONE {
                level.schreier[y] = new_gen as u32;
                level.orbit.push(y as u32);
            }
        }
        self.bfs(li, old);
    }

    /// Closes the orbit of level `li` under all its generators, starting
    /// from orbit position `from`.
    fn bfs(&mut self, li: usize, from: usize) {
        let strong = &self.strong;
        let level = &mut self.levels[li];
        let mut i = from;
        while i < level.orbit.len() {
            let x = level.orbit[i] as usize;
            for &gi in &level.gens {
                let y = strong[gi].apply(x);
                if level.schreier[y] == NONE {
                    level.schreier[y] = gi as u32;
                    level.orbit.push(y as u32);
                }
            }
            i += 1;
        }
    }

    /// Transversal element of level `li` mapping its base point to `x`.
    fn transversal(&self, li: usize, x: usize) -> Permutation {
        let level = &self.levels[li];
        let mut path = Vec::new();
        let mut y = x;
        while level.schreier[y] != ROOT {
            let s = level.schreier[y] as usize;
            path.push(s);
            y = self.strong_inv[s].apply(y);
        }
        let mut u = Permutation::identity(self.degree);
        for &s in path.iter().rev() {
            u = u.mul(&self.strong[s]);
        }
        u
    }

    fn check_level(&self, li: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[li];
        for xi in 0..level.orbit.len() {
            let gen_start = if xi < level.done_points {
                level.done_gens
            } else {
                0
            };
            if gen_start >= level.gens.len() {
                continue;
            }
            let ux = self.transversal(li, level.orbit[xi] as usize);
            for &gi in &level.gens[gen_start..] {
                let h = ux.mul(&self.strong[gi]);
                if let Some(res) = self.sift(h, li) {
                    return Some(res);
                }
            }
        }
        None
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let li = i - 1;
            match self.check_level(li) {
                None => {
                    let level = &mut self.levels[li];
                    level.done_points = level.orbit.len();
                    level.done_gens = level.gens.len();
                    i -= 1;
                }
                Some((residue, point)) => {
                    self.add_strong(residue);
                    i = self.level_index(point).expect("level created") + 1;
                }
            }
        }
    }

    /// Finds a member whose action on the points `0..k` agrees with `t`
    /// there. Only levels with base point below `k` are used.
    pub(crate) fn lift_prefix(&self, t: &Permutation, k: usize) -> Option<Permutation> {
        let mut h = t.clone();
        let mut acc = Permutation::identity(self.degree);
        for level in self.levels.iter().take_while(|l| l.base < k) {
            let b = level.base;
            if (0..b).any(|x| h.apply(x) != x) {
                return None;
            }
            let mut x = h.apply(b);
            if level.schreier[x] == NONE {
                return None;
            }
            while x != b {
                let s = level.schreier[x] as usize;
                h = h.mul(&self.strong_inv[s]);
                acc = self.strong[s].mul(&acc);
                x = self.strong_inv[s].apply(x);
            }
        }
        if (0..k).all(|x| h.apply(x) == x) {
            Some(acc)
        } else {
            None
        }
    }

    /// All transversals, level by level.
    pub(crate) fn transversals(&self) -> Vec<Vec<Permutation>> {
        (0..self.levels.len())
            .map(|li| {
                self.levels[li]
                    .orbit
                    .iter()
                    .map(|&x| self.transversal(li, x as usize))
                    .collect()
            })
            .collect()
    }

    /// Calls `f` on every element exactly once.
    pub(crate) fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        let trans = self.transversals();
        // g = u_k * .. * u_1, deepest level applied first
        fn rec(
            trans: &[Vec<Permutation>],
            depth: usize,
            acc: &Permutation,
            f: &mut dyn FnMut(&Permutation),
        ) {
            if depth == 0 {
                f(acc);
                return;
            }
            for u in &trans[depth - 1] {
                rec(trans, depth - 1, &acc.mul(u), f);
            }
        }
        let id = Permutation::identity(self.degree);
        rec(&trans, trans.len(), &id, &mut f);
    }

    /// Uniformly distributed element.
    pub(crate) fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for li in (0..self.levels.len()).rev() {
            let orbit = &self.levels[li].orbit;
            let x = orbit[rng.gen_range(0..orbit.len())] as usize;
            g = g.mul(&self.transversal(li, x));
        }
        g
    }

    /// Lexicographically least element of the right coset `N g`, where
    /// this chain describes `N`.
    pub(crate) fn coset_min(&self, g: &Permutation) -> Permutation {
        let mut cur = g.clone();
        for li in 0..self.levels.len() {
            let level = &self.levels[li];
            let best = level
                .orbit
                .iter()
                .map(|&y| y as usize)
                .min_by_key(|&y| cur.apply(y))
                .expect("orbit contains its base point");
            if best != level.base {
                cur = self.transversal(li, best).mul(&cur);
            }
        }
        cur
    }
}
