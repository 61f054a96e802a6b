//! Named groups and product constructions, all as explicit permutation
//! generators.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr  := wterm ( ("x" | "×") wterm )*
//! wterm := atom ( "wr" atom )*
//! atom  := Cn | D2n | Sn | An | V4 | PSL(2,q) | SL(2,q) | F(p,d) | "(" expr ")"
//! ```
//!
//! `wr` binds tighter than `x`; both associate to the left. In `B wr T`
//! the top group `T` acts on its natural points.

use std::fmt;
use std::str::FromStr;

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::primes::{factorize, is_prime};

pub const MAX_SYMMETRIC_DEGREE: usize = 10;
pub const MAX_PSL_FIELD: u64 = 13;
pub const MAX_SL_FIELD: u64 = 5;
pub const MAX_CONSTRUCTION_DEGREE: usize = 4096;
pub const MAX_HANDLE_ORDER: u128 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Named(String),
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    Wreath(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn build(&self) -> Result<PermGroup> {
        let g = match self {
            GroupSpec::Named(name) => make_named(name)?,
            GroupSpec::Direct(a, b) => direct_product(&a.build()?, &b.build()?)?,
            GroupSpec::Wreath(a, b) => wreath_product(&a.build()?, &b.build()?)?,
        };
        if g.order() > MAX_HANDLE_ORDER {
            return Err(GroupError::OutOfRange(format!(
                "{self} has order {} > {MAX_HANDLE_ORDER}",
                g.order()
            )));
        }
        Ok(g)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(s: &GroupSpec, f: &mut fmt::Formatter<'_>, in_wreath: bool) -> fmt::Result {
            match s {
                GroupSpec::Named(n) => write!(f, "{n}"),
                GroupSpec::Direct(..) => write!(f, "({s})"),
                GroupSpec::Wreath(..) if in_wreath => write!(f, "({s})"),
                GroupSpec::Wreath(..) => write!(f, "{s}"),
            }
        }
        match self {
            GroupSpec::Named(n) => write!(f, "{n}"),
            GroupSpec::Direct(a, b) => {
                match **a {
                    GroupSpec::Direct(..) => write!(f, "{a}")?,
                    _ => wrap(a, f, false)?,
                }
                write!(f, " x ")?;
                wrap(b, f, false)
            }
            GroupSpec::Wreath(a, b) => {
                match **a {
                    GroupSpec::Wreath(..) => write!(f, "{a}")?,
                    _ => wrap(a, f, true)?,
                }
                write!(f, " wr ")?;
                wrap(b, f, true)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Atom(String),
    Times,
    Wr,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' {
            out.push(Token::Open);
            i += 1;
        } else if c == ')' {
            out.push(Token::Close);
            i += 1;
        } else if c == '×' || (c == 'x' && !chars.get(i + 1).is_some_and(|d| d.is_alphanumeric())) {
            out.push(Token::Times);
            i += 1;
        } else if c == 'w' && chars.get(i + 1) == Some(&'r') {
            out.push(Token::Wr);
            i += 2;
        } else if c.is_ascii_uppercase() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            // parameterized families: PSL(2,7), SL(2,5), F(7,3)
            if i < chars.len() && chars[i] == '(' && chars[start..i].iter().all(|c| c.is_ascii_uppercase()) {
                while i < chars.len() && chars[i] != ')' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(GroupError::Parse(format!("unclosed parameter list in `{s}`")));
                }
                i += 1;
            }
            let atom: String = chars[start..i].iter().filter(|c| !c.is_whitespace()).collect();
            out.push(Token::Atom(atom));
        } else {
            return Err(GroupError::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<GroupSpec> {
        let mut lhs = self.wterm()?;
        while self.peek() == Some(&Token::Times) {
            self.pos += 1;
            let rhs = self.wterm()?;
            lhs = GroupSpec::Direct(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn wterm(&mut self) -> Result<GroupSpec> {
        let mut lhs = self.atom()?;
        while self.peek() == Some(&Token::Wr) {
            self.pos += 1;
            let rhs = self.atom()?;
            lhs = GroupSpec::Wreath(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<GroupSpec> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Atom(a)) => {
                self.pos += 1;
                Ok(GroupSpec::Named(a))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(GroupError::Parse("expected `)`".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(GroupError::Parse(format!("expected a group, found {other:?}"))),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        if tokens.is_empty() {
            return Err(GroupError::Parse("empty group spec".into()));
        }
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(GroupError::Parse(format!("trailing input in `{s}`")));
        }
        Ok(e)
    }
}

/// Parses and builds a group from the corpus grammar.
pub fn parse_group(s: &str) -> Result<PermGroup> {
    s.parse::<GroupSpec>()?.build()
}

fn cycle(n: usize, pts: &[usize]) -> Permutation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    for (i, &a) in pts.iter().enumerate() {
        images[a] = pts[(i + 1) % pts.len()] as u32;
    }
    Permutation::from_images_unchecked(images)
}

fn parse_params(name: &str, prefix: &str) -> Option<Vec<u64>> {
    let rest = name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
    rest.split(',').map(|t| t.trim().parse().ok()).collect()
}

fn parse_index(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 || n > MAX_CONSTRUCTION_DEGREE {
        return Err(GroupError::OutOfRange(format!("C{n}")));
    }
    let pts: Vec<usize> = (0..n).collect();
    PermGroup::new(n, vec![cycle(n, &pts)])
}

/// Dihedral group of order `2n` on `n` points (`n >= 3`).
pub fn dihedral(n: usize) -> Result<PermGroup> {
    if !(3..=MAX_CONSTRUCTION_DEGREE).contains(&n) {
        return Err(GroupError::OutOfRange(format!("D{}", 2 * n)));
    }
    let rot: Vec<usize> = (0..n).collect();
    let refl = Permutation::from_images_unchecked((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect());
    PermGroup::new(n, vec![cycle(n, &rot), refl])
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(GroupError::OutOfRange(format!("S{n}")));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let pts: Vec<usize> = (0..n).collect();
    PermGroup::new(n, vec![cycle(n, &[0, 1]), cycle(n, &pts)])
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(GroupError::OutOfRange(format!("A{n}")));
    }
    let gens = (2..n).map(|i| cycle(n, &[0, 1, i])).collect();
    PermGroup::new(n, gens)
}

/// Arithmetic in the field with `q = p^k` elements, elements encoded as
/// base-`p` digit strings of polynomial coefficients.
struct FiniteField {
    q: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl FiniteField {
    fn new(q: u64) -> Result<Self> {
        let f = factorize(q as u128);
        if f.len() != 1 {
            return Err(GroupError::OutOfRange(format!("{q} is not a prime power")));
        }
        let (p, k) = (f[0].0 as usize, f[0].1 as usize);
        let q = q as usize;
        let digits = |mut x: usize| -> Vec<usize> {
            let mut d = vec![0; k];
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let encode = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
        // monic irreducible of degree k: no roots suffices for k <= 3
        let modulus: Vec<usize> = if k == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|low| {
                    let mut m = digits(low);
                    m.push(1);
                    m
                })
                .find(|m| {
                    (0..p).all(|x| {
                        m.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) != 0
                    })
                })
                .ok_or_else(|| GroupError::Internal("no irreducible polynomial".into()))?
        };
        let mulpoly = |a: &[usize], b: &[usize]| -> Vec<usize> {
            let mut prod = vec![0; 2 * k];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            for deg in (k..2 * k).rev() {
                let c = prod[deg];
                if c != 0 {
                    for (i, &m) in modulus.iter().enumerate() {
                        let idx = deg - k + i;
                        prod[idx] = (prod[idx] + p * p - c * m % p) % p;
                    }
                }
            }
            prod.truncate(k);
            prod
        };
        let mut add = vec![vec![0; q]; q];
        let mut mul = vec![vec![0; q]; q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a][b] = encode(&s);
                mul[a][b] = encode(&mulpoly(&da, &db));
            }
        }
        Ok(FiniteField { q, add, mul })
    }

    fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add[a][b] == 0).expect("additive inverse")
    }

    fn inv(&self, a: usize) -> usize {
        (1..self.q).find(|&b| self.mul[a][b] == 1).expect("nonzero element")
    }

    fn primitive(&self) -> usize {
        (1..self.q)
            .find(|&g| {
                let mut x = g;
                let mut ord = 1;
                while x != 1 {
                    x = self.mul[x][g];
                    ord += 1;
                }
                ord == self.q - 1
            })
            .expect("multiplicative group is cyclic")
    }
}

/// `PSL(2, q)` on the `q + 1` points of the projective line; point `q` is ∞.
pub fn psl2(q: u64) -> Result<PermGroup> {
    if !(2..=MAX_PSL_FIELD).contains(&q) {
        return Err(GroupError::OutOfRange(format!("PSL(2,{q})")));
    }
    let field = FiniteField::new(q)?;
    let q = field.q;
    let inf = q;
    // x -> (a x + b) / (c x + d)
    let mobius = |a: usize, b: usize, c: usize, d: usize| -> Permutation {
        let image = |x: usize| -> usize {
            let (num, den) = if x == inf {
                (a, c)
            } else {
                (field.add[field.mul[a][x]][b], field.add[field.mul[c][x]][d])
            };
            if den == 0 {
                inf
            } else {
                field.mul[num][field.inv(den)]
            }
        };
        Permutation::from_images_unchecked((0..=q).map(|x| image(x) as u32).collect())
    };
    let one = 1;
    let mut gens = vec![
        mobius(one, one, 0, one),
        mobius(0, field.neg(one), one, 0),
    ];
    if !is_prime(q as u64) {
        let w = field.primitive();
        gens.push(mobius(field.mul[w][w], 0, 0, one));
    }
    PermGroup::new(q + 1, gens)
}

/// `SL(2, q)` acting on the `q^2 - 1` nonzero row vectors.
pub fn sl2(q: u64) -> Result<PermGroup> {
    if !(2..=MAX_SL_FIELD).contains(&q) {
        return Err(GroupError::OutOfRange(format!("SL(2,{q})")));
    }
    let field = FiniteField::new(q)?;
    let q = field.q;
    let vectors: Vec<(usize, usize)> = (0..q)
        .flat_map(|a| (0..q).map(move |b| (a, b)))
        .filter(|&v| v != (0, 0))
        .collect();
    let index = |v: (usize, usize)| vectors.iter().position(|&w| w == v).expect("nonzero");
    let matrix = |m: [[usize; 2]; 2]| -> Permutation {
        Permutation::from_images_unchecked(
            vectors
                .iter()
                .map(|&(x, y)| {
                    let u = field.add[field.mul[x][m[0][0]]][field.mul[y][m[1][0]]];
                    let v = field.add[field.mul[x][m[0][1]]][field.mul[y][m[1][1]]];
                    index((u, v)) as u32
                })
                .collect(),
        )
    };
    let mut gens = vec![matrix([[1, 1], [0, 1]]), matrix([[0, field.neg(1)], [1, 0]])];
    if !is_prime(q as u64) {
        let w = field.primitive();
        gens.push(matrix([[w, 0], [0, field.inv(w)]]));
    }
    PermGroup::new(vectors.len(), gens)
}

/// Frobenius group `C_p ⋊ C_d` on `p` points, `d | p - 1`.
pub fn frobenius(p: u64, d: u64) -> Result<PermGroup> {
    if !is_prime(p) || d == 0 || (p - 1) % d != 0 || p as usize > MAX_CONSTRUCTION_DEGREE {
        return Err(GroupError::OutOfRange(format!("F({p},{d})")));
    }
    let n = p as usize;
    // multiplier of order d modulo p
    let mult = (1..p)
        .find(|&a| {
            let mut x = a;
            let mut ord = 1;
            while x != 1 {
                x = x * a % p;
                ord += 1;
            }
            ord == d
        })
        .expect("cyclic unit group");
    let shift: Vec<usize> = (0..n).collect();
    let scale = Permutation::from_images_unchecked((0..p).map(|x| (x * mult % p) as u32).collect());
    PermGroup::new(n, vec![cycle(n, &shift), scale])
}

pub fn klein_four() -> PermGroup {
    PermGroup::new(
        4,
        vec![
            Permutation::from_images_unchecked(vec![1, 0, 3, 2]),
            Permutation::from_images_unchecked(vec![2, 3, 0, 1]),
        ],
    )
    .expect("degree 4")
}

pub fn make_named(name: &str) -> Result<PermGroup> {
    let name = name.trim();
    let unknown = || GroupError::UnknownName(name.to_string());
    if name == "V4" {
        return Ok(klein_four());
    }
    if let Some(params) = parse_params(name, "PSL") {
        return match params[..] {
            [2, q] => psl2(q),
            _ => Err(GroupError::OutOfRange(name.into())),
        };
    }
    if let Some(params) = parse_params(name, "SL") {
        return match params[..] {
            [2, q] => sl2(q),
            _ => Err(GroupError::OutOfRange(name.into())),
        };
    }
    if let Some(params) = parse_params(name, "F") {
        return match params[..] {
            [p, d] => frobenius(p, d),
            _ => Err(GroupError::OutOfRange(name.into())),
        };
    }
    if let Some(n) = parse_index(name, "C") {
        return cyclic(n);
    }
    if let Some(n) = parse_index(name, "D") {
        if n % 2 != 0 {
            return Err(GroupError::OutOfRange(name.into()));
        }
        return dihedral(n / 2);
    }
    if let Some(n) = parse_index(name, "S") {
        return symmetric(n);
    }
    if let Some(n) = parse_index(name, "A") {
        return alternating(n);
    }
    Err(unknown())
}

/// `A × B` on the disjoint union of the two domains.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let n = a.degree() + b.degree();
    if n > MAX_CONSTRUCTION_DEGREE {
        return Err(GroupError::OutOfRange(format!("product degree {n}")));
    }
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| g.extend(n)).collect();
    gens.extend(b.generators().iter().map(|g| g.shifted(a.degree(), n)));
    PermGroup::new(n, gens)
}

/// Embeddings of the two factors of `direct_product(a, b)`.
pub fn direct_factors(a: &PermGroup, b: &PermGroup) -> (PermGroup, PermGroup) {
    let n = a.degree() + b.degree();
    (
        PermGroup::from_gens_unchecked(n, a.generators().iter().map(|g| g.extend(n)).collect()),
        PermGroup::from_gens_unchecked(
            n,
            b.generators().iter().map(|g| g.shifted(a.degree(), n)).collect(),
        ),
    )
}

/// `B wr T`: imprimitive action on `k = deg T` blocks of `deg B` points.
pub fn wreath_product(base: &PermGroup, top: &PermGroup) -> Result<PermGroup> {
    let m = base.degree();
    let k = top.degree();
    let n = m * k;
    if n > MAX_CONSTRUCTION_DEGREE {
        return Err(GroupError::OutOfRange(format!("wreath degree {n}")));
    }
    let mut gens = wreath_base_generators(base, k);
    for t in top.generators() {
        gens.push(Permutation::from_images_unchecked(
            (0..n)
                .map(|x| (t.apply(x / m) * m + x % m) as u32)
                .collect(),
        ));
    }
    PermGroup::new(n, gens)
}

fn wreath_base_generators(base: &PermGroup, k: usize) -> Vec<Permutation> {
    let m = base.degree();
    (0..k)
        .flat_map(|block| {
            base.generators()
                .iter()
                .map(move |g| g.shifted(block * m, m * k))
        })
        .collect()
}

/// The base group `B^k` of `B wr T`.
pub fn wreath_base(base: &PermGroup, top: &PermGroup) -> PermGroup {
    PermGroup::from_gens_unchecked(
        base.degree() * top.degree(),
        wreath_base_generators(base, top.degree()),
    )
}

/// Names making up the standard verification corpus, smallest first.
pub fn standard_corpus() -> Vec<&'static str> {
    vec![
        "C1", "C2", "C3", "V4", "C6", "S3", "D8", "C2 wr C2", "D10", "A4", "C12", "D12",
        "F(5,4)", "F(7,3)", "S4", "SL(2,3)", "A4 x C3", "A5", "S3 wr C2", "S5", "SL(2,5)",
        "PSL(2,7)", "A5 x C6", "A6", "A5 x C7", "PSL(2,11)", "PSL(2,13)", "S4 wr C2", "A7",
        "A5 x A5", "A5 wr C2", "A5 wr A5",
    ]
}
