//! Uniform set families: predicates, compression, materialization from
//! generators, and brute-force oracles used to cross-check the exact counts.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::setcore::{
    all_rsets, compress_set, masks_of_size, prefix_dominated, Generator, Params, RSet, MAX_N,
};

/// Largest `binom(n, r)` that the enumerating oracles will walk.
pub const ORACLE_LIMIT: u128 = 10_000_000;

pub(crate) fn binom_u128(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

pub(crate) fn check_oracle_guard(n: u32, r: u32) -> Result<()> {
    let size = binom_u128(n, r);
    if size > ORACLE_LIMIT {
        return Err(Error::Guard {
            what: format!("enumerating [{n}]^({r}) ({size} sets)"),
            limit: format!("binom(n, r) <= {ORACLE_LIMIT}"),
        });
    }
    Ok(())
}

/// A family of `r`-subsets of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    n: u32,
    r: u32,
    members: BTreeSet<RSet>,
}

impl Family {
    /// Validates uniform size, containment in `[n]`, and absence of duplicates.
    pub fn new(n: u32, r: u32, members: impl IntoIterator<Item = RSet>) -> Result<Self> {
        if r == 0 || r > n || n > MAX_N {
            return Err(Error::InvalidParams(format!(
                "family of {r}-subsets of [{n}]"
            )));
        }
        let mut set = BTreeSet::new();
        for a in members {
            if a.len() != r as usize {
                return Err(Error::InvalidSet(format!("{a:?} is not an {r}-set")));
            }
            if a.max_element() > n {
                return Err(Error::InvalidSet(format!("{a:?} is not inside [1, {n}]")));
            }
            if !set.insert(a) {
                return Err(Error::InvalidSet(format!("duplicate member {a:?}")));
            }
        }
        Ok(Family { n, r, members: set })
    }

    /// Parses a family literal: set literals separated by `;`. An empty or
    /// blank literal is the empty family.
    pub fn parse(n: u32, r: u32, literal: &str) -> Result<Self> {
        let members = literal
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<RSet>>>()?;
        Family::new(n, r, members)
    }

    /// The star `{A : 1 ∈ A}`.
    pub fn star(n: u32, r: u32) -> Result<Self> {
        let members = masks_of_size(n, r)
            .filter(|m| m & 1 != 0)
            .map(|m| RSet::from_mask(m).expect("nonempty"));
        Family::new(n, r, members)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: &RSet) -> bool {
        self.members.contains(a)
    }

    pub fn members(&self) -> impl Iterator<Item = &RSet> {
        self.members.iter()
    }

    /// `Σ_A Σ_i a_i`, strictly decreased by every effective compression step.
    pub fn potential(&self) -> u64 {
        self.members.iter().map(RSet::weight).sum()
    }

    pub fn is_intersecting(&self) -> bool {
        let masks: Vec<u64> = self.members.iter().map(RSet::mask).collect();
        masks
            .iter()
            .enumerate()
            .all(|(x, &a)| masks[x + 1..].iter().all(|&b| a & b != 0))
    }

    pub fn is_left_compressed(&self) -> bool {
        let n = self.n;
        self.members.iter().all(|a| {
            (1..n).all(|i| {
                (i + 1..=n).all(|j| {
                    let c = compress_set(a, i, j, n).expect("indices validated by loop bounds");
                    self.members.contains(&c)
                })
            })
        })
    }

    /// `C_ij(F)`: each member is compressed unless its image is already present.
    pub fn compress(&self, i: u32, j: u32) -> Result<Family> {
        if i == 0 || i >= j || j > self.n {
            return Err(Error::BadIndices { i, j, n: self.n });
        }
        let mut out = BTreeSet::new();
        for a in &self.members {
            let c = compress_set(a, i, j, self.n)?;
            if self.members.contains(&c) {
                out.insert(*a);
            } else {
                out.insert(c);
            }
        }
        debug_assert_eq!(out.len(), self.members.len());
        Ok(Family {
            n: self.n,
            r: self.r,
            members: out,
        })
    }

    /// Compresses to a fixed point, returning the potential after each step
    /// that changed the family (starting with the initial potential).
    pub fn fully_compress_traced(&self) -> (Family, Vec<u64>) {
        let mut cur = self.clone();
        let mut trace = vec![cur.potential()];
        'restart: loop {
            for i in 1..self.n {
                for j in i + 1..=self.n {
                    let next = cur
                        .compress(i, j)
                        .expect("indices validated by loop bounds");
                    if next != cur {
                        cur = next;
                        trace.push(cur.potential());
                        continue 'restart;
                    }
                }
            }
            return (cur, trace);
        }
    }

    pub fn fully_compress(&self) -> Family {
        self.fully_compress_traced().0
    }

    /// True iff no `r`-subset of `[n]` outside the family meets every member.
    pub fn is_maximal_intersecting(&self) -> Result<bool> {
        if !self.is_intersecting() {
            return Err(Error::NotIntersecting);
        }
        check_oracle_guard(self.n, self.r)?;
        let masks: Vec<u64> = self.members.iter().map(RSet::mask).collect();
        Ok(masks_of_size(self.n, self.r).all(|b| {
            let b_set = RSet::from_mask(b).expect("nonempty");
            self.members.contains(&b_set) || masks.iter().any(|&a| a & b == 0)
        }))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for a in &self.members {
            if !first {
                f.write_str(";")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family[n={}, r={}]{{{self}}}", self.n, self.r)
    }
}

/// `⟨G⟩ = {A ∈ [n]^(r) : A ≺ G for some G}`.
pub fn materialize(gens: &[Generator], p: Params) -> Result<Family> {
    check_oracle_guard(p.n(), p.r())?;
    check_generators(gens, p)?;
    let members = masks_of_size(p.n(), p.r())
        .filter(|&a| gens.iter().any(|g| prefix_dominated(a, g.mask())))
        .map(|a| RSet::from_mask(a).expect("nonempty"));
    Family::new(p.n(), p.r(), members)
}

/// Superset generation `{A ∈ [n]^(r) : A ⊇ G for some G}`.
pub fn materialize_superset(gens: &[RSet], p: Params) -> Result<Family> {
    check_oracle_guard(p.n(), p.r())?;
    let members = masks_of_size(p.n(), p.r())
        .filter(|&a| gens.iter().any(|g| g.mask() & !a == 0))
        .map(|a| RSet::from_mask(a).expect("nonempty"));
    Family::new(p.n(), p.r(), members)
}

fn check_generators(gens: &[Generator], p: Params) -> Result<()> {
    for g in gens {
        if g.len() > p.r() as usize || g.as_set().max_element() > 2 * p.r() {
            return Err(Error::InvalidSet(format!(
                "generator {g:?} is not a subset of [2r] = [{}] of size <= r",
                2 * p.r()
            )));
        }
    }
    Ok(())
}

/// `|⟨G⟩(X)|` by walking every `r`-subset of `[n]`.
pub fn oracle_count(gens: &[Generator], p: Params, x: &RSet) -> Result<u64> {
    if x.contains(1) {
        return Err(Error::InvalidX(format!("{x:?} contains 1")));
    }
    if x.max_element() > p.n() {
        return Err(Error::InvalidX(format!(
            "{x:?} is not inside [2, {}]",
            p.n()
        )));
    }
    check_oracle_guard(p.n(), p.r())?;
    check_generators(gens, p)?;
    let xm = x.mask();
    Ok(masks_of_size(p.n(), p.r())
        .filter(|&a| a & xm != 0 && gens.iter().any(|g| prefix_dominated(a, g.mask())))
        .count() as u64)
}

/// A random intersecting family of `r`-subsets of `[n]`, grown greedily from a
/// shuffled order and stopped at a random size.
pub fn random_intersecting_family<R: Rng + ?Sized>(rng: &mut R, n: u32, r: u32) -> Result<Family> {
    let mut pool = all_rsets(n, r);
    pool.shuffle(rng);
    let target = rng.gen_range(1..=pool.len());
    let mut chosen: Vec<RSet> = Vec::new();
    for a in pool {
        if chosen.len() >= target {
            break;
        }
        if chosen.iter().all(|b| a.intersects(b)) {
            chosen.push(a);
        }
    }
    Family::new(n, r, chosen)
}

/// Fixed-width bitset over set indices.
#[derive(Clone, PartialEq, Eq)]
struct IndexSet(Vec<u64>);

impl IndexSet {
    fn new(len: usize) -> Self {
        IndexSet(vec![0; len.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }
    fn meets(&self, other: &IndexSet) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
    fn iter_from(&self, start: usize) -> impl Iterator<Item = usize> + '_ {
        (start..self.0.len() * 64).filter(move |&i| self.contains(i))
    }
}

struct LcifSearch {
    sets: Vec<RSet>,
    lower: Vec<Vec<usize>>,
    disjoint: Vec<IndexSet>,
    found: Vec<IndexSet>,
}

impl LcifSearch {
    fn pending_alive(&self, t: usize, chosen: &IndexSet, pending: &[usize]) -> bool {
        pending.iter().all(|&p| {
            chosen.meets(&self.disjoint[p])
                || self.disjoint[p]
                    .iter_from(t)
                    .any(|q| !chosen.meets(&self.disjoint[q]))
        })
    }

    fn dfs(&mut self, t: usize, chosen: &mut IndexSet, pending: &mut Vec<usize>) {
        if !self.pending_alive(t, chosen, pending) {
            return;
        }
        if t == self.sets.len() {
            self.found.push(chosen.clone());
            return;
        }
        let eligible =
            self.lower[t].iter().all(|&c| chosen.contains(c)) && !chosen.meets(&self.disjoint[t]);
        if !eligible {
            self.dfs(t + 1, chosen, pending);
            return;
        }
        let saved = chosen.clone();
        chosen.insert(t);
        self.dfs(t + 1, chosen, pending);
        *chosen = saved;

        pending.push(t);
        self.dfs(t + 1, chosen, pending);
        pending.pop();
    }
}

/// Every maximal left-compressed intersecting family of `[n]^(r)`, found by a
/// direct search over down-sets of the compression order. Independent of the
/// generator machinery; intended for small instances only.
pub fn search_maximal_lcifs(n: u32, r: u32) -> Result<Vec<Family>> {
    const SEARCH_LIMIT: u128 = 400;
    if r == 0 || r > n || n > MAX_N {
        return Err(Error::InvalidParams(format!(
            "family of {r}-subsets of [{n}]"
        )));
    }
    let total = binom_u128(n, r);
    if total > SEARCH_LIMIT {
        return Err(Error::Guard {
            what: format!("direct search over [{n}]^({r}) ({total} sets)"),
            limit: format!("binom(n, r) <= {SEARCH_LIMIT}"),
        });
    }
    let sets = all_rsets(n, r);
    let index: HashMap<RSet, usize> = sets.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let lower = sets
        .iter()
        .map(|a| a.lower_covers().map(|c| index[&c]).collect())
        .collect();
    let disjoint = sets
        .iter()
        .map(|a| {
            let mut d = IndexSet::new(sets.len());
            for (i, b) in sets.iter().enumerate() {
                if !a.intersects(b) {
                    d.insert(i);
                }
            }
            d
        })
        .collect();
    let mut search = LcifSearch {
        sets,
        lower,
        disjoint,
        found: Vec::new(),
    };
    let mut chosen = IndexSet::new(search.sets.len());
    search.dfs(0, &mut chosen, &mut Vec::new());
    let families = search
        .found
        .iter()
        .map(|bits| {
            let members = search
                .sets
                .iter()
                .enumerate()
                .filter(|(i, _)| bits.contains(*i))
                .map(|(_, a)| *a);
            Family::new(n, r, members)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(families)
}
