//! Maximal left-compressed intersecting families of `[2r]^(r)` and their
//! canonical generator antichains.
//!
//! At `n = 2r` two `r`-sets are disjoint exactly when they are complements of
//! each other, so a maximal left-compressed intersecting family is a down-set
//! of the compression order that holds exactly one set from every
//! complementary pair. Each such family extends uniquely to every larger `n`,
//! and its generators (the maximal members with their trailing run
//! `r+s+1, ..., 2r` cut off) describe all of those extensions at once.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::family::{binom_u128, materialize, Family};
use crate::setcore::{all_rsets, prefix_dominated, Generator, Params, RSet};

/// Largest `r` enumerated without an explicit override.
pub const DEFAULT_MAX_R: u32 = 5;

/// A canonically ordered antichain of generators under `≺`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GenAntichain {
    gens: Vec<Generator>,
}

impl GenAntichain {
    /// Sorts the generators canonically and checks that they are distinct,
    /// pairwise `≺`-incomparable and pairwise intersecting.
    pub fn new(mut gens: Vec<Generator>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidSet("empty generator antichain".into()));
        }
        gens.sort();
        for (x, g) in gens.iter().enumerate() {
            for h in &gens[x + 1..] {
                if g == h {
                    return Err(Error::InvalidSet(format!("duplicate generator {g:?}")));
                }
                if prefix_dominated(g.mask(), h.mask()) || prefix_dominated(h.mask(), g.mask()) {
                    return Err(Error::InvalidSet(format!(
                        "generators {g:?} and {h:?} are comparable"
                    )));
                }
                if g.mask() & h.mask() == 0 {
                    return Err(Error::InvalidSet(format!(
                        "generators {g:?} and {h:?} are disjoint"
                    )));
                }
            }
        }
        Ok(GenAntichain { gens })
    }

    /// Parses `1,2|2,4,5`.
    pub fn parse(literal: &str, r: u32) -> Result<Self> {
        let gens = literal
            .split('|')
            .map(|g| Generator::parse(g, r))
            .collect::<Result<Vec<_>>>()?;
        GenAntichain::new(gens)
    }

    /// `{{1}}`, generating the star.
    pub fn star() -> Self {
        GenAntichain {
            gens: vec![Generator::new(RSet::new(&[1]).expect("valid"), 1).expect("valid")],
        }
    }

    /// `{[2, r+1], {1, r+1}}`, generating the Hilton-Milner family. For
    /// `r = 2` the second generator is dominated and the antichain is `{23}`.
    pub fn hilton_milner(r: u32) -> Result<Self> {
        let tail = Generator::new(RSet::range(2, r + 1)?, r)?;
        let head = Generator::new(RSet::new(&[1, r + 1])?, r)?;
        GenAntichain::reduced(vec![tail, head])
    }

    /// Drops every generator that another one generates, then validates.
    pub fn reduced(mut gens: Vec<Generator>) -> Result<Self> {
        gens.sort();
        gens.dedup();
        let keep: Vec<Generator> = gens
            .iter()
            .filter(|g| {
                !gens
                    .iter()
                    .any(|h| h != *g && prefix_dominated(g.mask(), h.mask()))
            })
            .copied()
            .collect();
        GenAntichain::new(keep)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_star(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].mask() == 1
    }
}

impl AsRef<[Generator]> for GenAntichain {
    fn as_ref(&self) -> &[Generator] {
        &self.gens
    }
}

impl Ord for GenAntichain {
    /// Fewer generators first, then lexicographic on the generator lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.gens
            .len()
            .cmp(&other.gens.len())
            .then_with(|| self.gens.cmp(&other.gens))
    }
}

impl PartialOrd for GenAntichain {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GenAntichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, g) in self.gens.iter().enumerate() {
            if x > 0 {
                f.write_str("|")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GenAntichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{self}⟩")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub antichain: GenAntichain,
    /// `|⟨G⟩|` at `n = 2r`.
    pub size2r: BigUint,
}

/// All maximal left-compressed intersecting families for one `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    r: u32,
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Assembles a catalog, sorting entries canonically. Structural checks
    /// happen in [`crate::catalog::parse`].
    pub(crate) fn from_entries(r: u32, mut entries: Vec<CatalogEntry>) -> Self {
        entries.sort_by(|a, b| a.antichain.cmp(&b.antichain));
        Catalog { r, entries }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn antichains(&self) -> impl Iterator<Item = &GenAntichain> {
        self.entries.iter().map(|e| &e.antichain)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Truncates a maximal member `A` of a family in `[2r]^(r)` to `a_1 ... a_s`,
/// `s` the greatest index with `a_s < r + s`.
fn truncate(a: &RSet, r: u32) -> Option<RSet> {
    let elems = a.to_vec();
    let s = (1..=elems.len())
        .rev()
        .find(|&s| elems[s - 1] < r + s as u32)?;
    RSet::new(&elems[..s]).ok()
}

fn antichain_from_down_set(members: &[RSet], r: u32) -> Result<GenAntichain> {
    let n = 2 * r;
    let present: std::collections::HashSet<RSet> = members.iter().copied().collect();
    let mut gens = Vec::new();
    for a in members {
        if a.upper_covers(n).any(|u| present.contains(&u)) {
            continue;
        }
        let t = truncate(a, r).ok_or_else(|| {
            Error::NotMaximalLcif(format!("{a:?} is the final segment [r+1, 2r]"))
        })?;
        gens.push(Generator::new(t, r)?);
    }
    GenAntichain::new(gens)
}

/// Recovers the generator antichain of a maximal left-compressed intersecting
/// subfamily of `[2r]^(r)`.
pub fn extract_generators(f: &Family) -> Result<GenAntichain> {
    let r = f.r();
    if f.n() != 2 * r {
        return Err(Error::NotMaximalLcif(format!(
            "ground set [{}] is not [2r] = [{}]",
            f.n(),
            2 * r
        )));
    }
    if !f.is_left_compressed() {
        return Err(Error::NotMaximalLcif(
            "family is not left-compressed".into(),
        ));
    }
    if !f.is_intersecting() {
        return Err(Error::NotMaximalLcif("family is not intersecting".into()));
    }
    if !f.is_maximal_intersecting()? {
        return Err(Error::NotMaximalLcif("family is not maximal".into()));
    }
    let members: Vec<RSet> = f.members().copied().collect();
    antichain_from_down_set(&members, r)
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn zero(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }
    fn or(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }
    fn meets(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
}

struct PairSearch {
    len: usize,
    down: Vec<Bits>,
    up: Vec<Bits>,
    comp: Vec<usize>,
    found: Vec<Bits>,
}

impl PairSearch {
    fn dfs(&mut self, from: usize, inside: Bits, outside: Bits) {
        let Some(t) = (from..self.len).find(|&t| !inside.get(t) && !outside.get(t)) else {
            self.found.push(inside);
            return;
        };
        let c = self.comp[t];
        // t joins the down-set: so does everything below it, and the
        // complements of those (everything above comp(t)) leave.
        let in_a = inside.or(&self.down[t]);
        let out_a = outside.or(&self.up[c]);
        if !in_a.meets(&out_a) {
            self.dfs(t + 1, in_a, out_a);
        }
        let in_b = inside.or(&self.down[c]);
        let out_b = outside.or(&self.up[t]);
        if !in_b.meets(&out_b) {
            self.dfs(t + 1, in_b, out_b);
        }
    }
}

/// Enumerates every maximal left-compressed intersecting family of
/// `[2r]^(r)` as a canonical generator antichain.
pub fn enumerate_mlcif(r: u32, override_guard: bool) -> Result<Catalog> {
    if r < 2 {
        return Err(Error::InvalidParams(format!("r = {r}, need r >= 2")));
    }
    if r > 32 {
        return Err(Error::InvalidParams(format!("r = {r}, need 2r <= 64")));
    }
    if r > DEFAULT_MAX_R && !override_guard {
        return Err(Error::Guard {
            what: format!("catalog enumeration for r = {r}"),
            limit: format!("r <= {DEFAULT_MAX_R}"),
        });
    }
    let n = 2 * r;
    let sets = all_rsets(n, r);
    let len = sets.len();
    let index: HashMap<RSet, usize> = sets.iter().enumerate().map(|(i, a)| (*a, i)).collect();

    // Lex order is a linear extension of the compression order, so closures
    // can be accumulated over covers in one pass each way.
    let mut down: Vec<Bits> = Vec::with_capacity(len);
    for (i, a) in sets.iter().enumerate() {
        let mut b = Bits::zero(len);
        b.set(i);
        for c in a.lower_covers() {
            b = b.or(&down[index[&c]]);
        }
        down.push(b);
    }
    let mut up: Vec<Bits> = vec![Bits::zero(len); len];
    for (i, a) in sets.iter().enumerate().rev() {
        let mut b = Bits::zero(len);
        b.set(i);
        for c in a.upper_covers(n) {
            b = b.or(&up[index[&c]]);
        }
        up[i] = b;
    }
    let full = crate::setcore::RSet::range(1, n)?.mask();
    let comp = sets
        .iter()
        .map(|a| index[&RSet::from_mask(full & !a.mask()).expect("r < 2r")])
        .collect();

    let mut search = PairSearch {
        len,
        down,
        up,
        comp,
        found: Vec::new(),
    };
    search.dfs(0, Bits::zero(len), Bits::zero(len));

    let size2r = BigUint::from(binom_u128(n - 1, r - 1));
    let entries = search
        .found
        .iter()
        .map(|bits| {
            let members: Vec<RSet> = (0..len).filter(|&i| bits.get(i)).map(|i| sets[i]).collect();
            debug_assert_eq!(BigUint::from(members.len()), size2r);
            Ok(CatalogEntry {
                antichain: antichain_from_down_set(&members, r)?,
                size2r: BigUint::from(members.len()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Catalog::from_entries(r, entries))
}

/// Checks that `entry` generates, at this `n`, a maximal left-compressed
/// intersecting family whose trace on `[2r]^(r)` is the family it generates
/// at `n = 2r`.
pub fn unique_extension_check(entry: &GenAntichain, r: u32, n: u32) -> Result<bool> {
    let p = Params::new(n, r)?;
    let base = materialize(entry.generators(), Params::new(2 * r, r)?)?;
    let ext = materialize(entry.generators(), p)?;
    if !ext.is_intersecting() || !ext.is_left_compressed() || !ext.is_maximal_intersecting()? {
        return Ok(false);
    }
    let trace = Family::new(
        2 * r,
        r,
        ext.members().filter(|a| a.max_element() <= 2 * r).copied(),
    )?;
    Ok(trace == base)
}
