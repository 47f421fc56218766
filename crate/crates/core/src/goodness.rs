//! Deciding which hitting sets `X` are good.
//!
//! `X` is good at `(n, r)` when no left-compressed intersecting family beats
//! the star on `|A(X)|`. Every such family sits inside a maximal one, and the
//! maximal ones at any `n >= 2r` are exactly the families generated by the
//! catalog for `r`, so a verdict is a comparison against every catalog entry.
//!
//! Counts depend on a family only through its [`CountVector`] for
//! `X ∩ [2, 2r]`, and are monotone in each of `h_i` and `g_i - h_i`. Entries
//! are therefore grouped by vector, and questions of the form "does any family
//! beat the star" are answered on the Pareto front of the distinct vectors.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::census::{
    binom, diff_poly_from_vectors, sign_threshold, star_count, star_vector, CountVector, Profile,
    SignClass, XSet,
};
use crate::error::{Error, Result};
use crate::mlcif::{Catalog, GenAntichain};
use crate::setcore::{mask_leq, masks_of_size, range_mask, Params, RSet};

/// Largest `n - 1` for which [`Classifier::minimal_good`] runs without an
/// override: the search space is every subset of `[2, n]`.
pub const MINIMAL_GOOD_MAX_BITS: u32 = 20;

/// A catalog family that beats the star on `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub antichain: GenAntichain,
    pub family_count: BigUint,
    pub star_count: BigUint,
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Compared against every catalog family.
    Catalog,
    /// `|X| > r`, answered by Borg's theorem (a) without consulting the catalog.
    LargeX,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub x: XSet,
    pub params: Params,
    pub good: bool,
    pub star_count: BigUint,
    /// Every violating family, in catalog order. Empty iff `good`.
    pub witnesses: Vec<Witness>,
    pub basis: Basis,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventualVerdict {
    pub x: XSet,
    pub eventually_good: bool,
    /// Smallest `N` with `X` good at every `n >= N`; present iff
    /// `eventually_good`.
    pub threshold: Option<u32>,
    /// Sign of `|S(X)| - |A(X)|` in `n` for every catalog family.
    pub per_family: Vec<(GenAntichain, SignClass)>,
}

/// The decision content of an [`EventualVerdict`] without the per-family list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EventualSummary {
    pub eventually_good: bool,
    pub threshold: Option<u32>,
    /// When not eventually good: the smallest `n` from which `X` is bad at
    /// every larger `n`.
    pub bad_from: Option<u32>,
}

/// Binomial weights turning a count vector into `|A(X)|` at fixed `n` and
/// outside count `o`.
struct Weights {
    full: Vec<BigUint>,
    diff: Vec<BigUint>,
}

impl Weights {
    fn new(p: Params, outside: u32) -> Self {
        let r = i64::from(p.r());
        let e = i64::from(p.excess());
        let o = i64::from(outside);
        let (full, diff) = (1..=r)
            .map(|i| {
                let full = binom(e, r - i);
                let miss = binom(e - o, r - i);
                (full.clone(), full - miss)
            })
            .unzip();
        Weights { full, diff }
    }

    fn eval(&self, cv: &CountVector) -> BigUint {
        let mut total = BigUint::zero();
        for (i, (full, diff)) in self.full.iter().zip(&self.diff).enumerate() {
            total += full * cv.h[i] + diff * (cv.g[i] - cv.h[i]);
        }
        total
    }
}

/// `a` is componentwise at most `b` in `(h, g - h)`.
fn dominated(a: &CountVector, b: &CountVector) -> bool {
    (0..a.g.len()).all(|i| a.h[i] <= b.h[i] && a.g[i] - a.h[i] <= b.g[i] - b.h[i])
}

/// Catalog entries sharing one count vector.
#[derive(Debug, Clone)]
struct Group {
    vector: CountVector,
    members: Vec<usize>,
}

/// Catalog families with their generated levels precomputed, ready to answer
/// goodness questions for one `r`.
pub struct Classifier {
    catalog: Arc<Catalog>,
    profiles: Vec<Profile>,
}

impl fmt::Debug for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Classifier")
            .field("r", &self.catalog.r())
            .field("families", &self.catalog.len())
            .finish()
    }
}

/// All families grouped by their count vector for one inside part.
pub struct InsideView<'c> {
    classifier: &'c Classifier,
    inside: u64,
    groups: Vec<Group>,
    /// Indices into `groups` of the Pareto-maximal vectors.
    front: Vec<usize>,
}

impl Classifier {
    pub fn new(catalog: Arc<Catalog>) -> Result<Self> {
        let r = catalog.r();
        let profiles = catalog
            .entries()
            .par_iter()
            .map(|e| Profile::new(e.antichain.generators(), r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Classifier { catalog, profiles })
    }

    pub fn r(&self) -> u32 {
        self.catalog.r()
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    fn check_x(&self, x: &XSet) -> Result<()> {
        if x.r() != self.r() {
            return Err(Error::InvalidX(format!(
                "X was reduced for r = {}, catalog has r = {}",
                x.r(),
                self.r()
            )));
        }
        Ok(())
    }

    fn check_params(&self, p: Params) -> Result<()> {
        if p.r() != self.r() {
            return Err(Error::InvalidParams(format!(
                "r = {} but the catalog has r = {}",
                p.r(),
                self.r()
            )));
        }
        Ok(())
    }

    /// Groups the catalog by count vector for the inside part `inside ⊆ [2, 2r]`.
    pub fn view(&self, inside: u64) -> Result<InsideView<'_>> {
        if inside & !range_mask(2, 2 * self.r()) != 0 {
            return Err(Error::InvalidX(format!(
                "inside part {inside:#x} is not contained in [2, {}]",
                2 * self.r()
            )));
        }
        let mut index: HashMap<CountVector, usize> = HashMap::new();
        let mut groups: Vec<Group> = Vec::new();
        for (k, profile) in self.profiles.iter().enumerate() {
            let v = profile.count_vector(inside);
            match index.get(&v) {
                Some(&gi) => groups[gi].members.push(k),
                None => {
                    index.insert(v.clone(), groups.len());
                    groups.push(Group {
                        vector: v,
                        members: vec![k],
                    });
                }
            }
        }
        let front = (0..groups.len())
            .filter(|&a| {
                !groups
                    .iter()
                    .enumerate()
                    .any(|(b, other)| b != a && dominated(&groups[a].vector, &other.vector))
            })
            .collect();
        Ok(InsideView {
            classifier: self,
            inside,
            groups,
            front,
        })
    }

    /// Verdict at `p` with every violating family. `|X| > r` is answered by
    /// Borg's theorem (a) unless `confirm_large` asks for the full comparison.
    pub fn classify_at(&self, x: &XSet, p: Params, confirm_large: bool) -> Result<Verdict> {
        self.check_x(x)?;
        self.check_params(p)?;
        x.check_at(p)?;
        if x.len() > self.r() as usize && !confirm_large {
            return Ok(Verdict {
                x: *x,
                params: p,
                good: true,
                star_count: star_count(x, p)?,
                witnesses: Vec::new(),
                basis: Basis::LargeX,
            });
        }
        self.view(x.inside_mask())?.classify_at(x, p)
    }

    pub fn is_good_at(&self, x: &XSet, p: Params) -> Result<bool> {
        self.check_x(x)?;
        self.view(x.inside_mask())?.is_good_at(x, p)
    }

    pub fn classify_eventual(&self, x: &XSet) -> Result<EventualVerdict> {
        self.check_x(x)?;
        self.view(x.inside_mask())?.classify_eventual(x)
    }

    pub fn eventual_summary(&self, x: &XSet) -> Result<EventualSummary> {
        self.check_x(x)?;
        self.view(x.inside_mask())?.eventual_summary(x)
    }

    /// `|⟨G⟩|` at `p` for every catalog entry, in catalog order.
    pub fn family_sizes(&self, p: Params) -> Result<Vec<BigUint>> {
        self.check_params(p)?;
        let w = Weights::new(p, 0);
        let view = self.view(0)?;
        let mut sizes = vec![BigUint::zero(); self.catalog.len()];
        for g in &view.groups {
            let s = w
                .full
                .iter()
                .zip(&g.vector.g)
                .fold(BigUint::zero(), |acc, (f, &gi)| acc + f * gi);
            for &k in &g.members {
                sizes[k] = s.clone();
            }
        }
        Ok(sizes)
    }

    /// Good `X ⊆ [2, n]` (of size `size` if given) with no other good set of
    /// the same size below them in the shift order. Sorted by size, then
    /// lexicographically.
    pub fn minimal_good(
        &self,
        p: Params,
        size: Option<usize>,
        override_guard: bool,
    ) -> Result<Vec<RSet>> {
        self.check_params(p)?;
        let n = p.n();
        if n - 1 > MINIMAL_GOOD_MAX_BITS && !override_guard {
            return Err(Error::Guard {
                what: format!("minimal-good search over subsets of [2, {n}]"),
                limit: format!("2^(n-1) <= 2^{MINIMAL_GOOD_MAX_BITS}"),
            });
        }
        let sizes: Vec<u32> = match size {
            Some(s) if s == 0 || s > (n - 1) as usize => {
                return Err(Error::InvalidX(format!(
                    "size {s} is outside [1, {}]",
                    n - 1
                )))
            }
            Some(s) => vec![s as u32],
            None => (1..n).collect(),
        };
        let mut views: HashMap<u64, InsideView<'_>> = HashMap::new();
        let mut out = Vec::new();
        for k in sizes {
            let mut sets: Vec<u64> = masks_of_size(n - 1, k).map(|m| m << 1).collect();
            // Lower covers have smaller weight, so they are settled first.
            sets.sort_by_key(|&m| (RSet::from_mask(m).map(|s| s.weight()).unwrap_or(0), m));
            let mut below_good: HashMap<u64, bool> = HashMap::new();
            for &m in &sets {
                let x = XSet::from_raw(&RSet::from_mask(m)?, p.r())?;
                if let std::collections::hash_map::Entry::Vacant(e) = views.entry(x.inside_mask()) {
                    e.insert(self.view(x.inside_mask())?);
                }
                let good = views[&x.inside_mask()].is_good_at(&x, p)?;
                let set = RSet::from_mask(m)?;
                let lower_good = set
                    .lower_covers()
                    .filter(|c| !c.contains(1))
                    .any(|c| below_good[&c.mask()]);
                if good && !lower_good {
                    out.push(set);
                }
                below_good.insert(m, good || lower_good);
            }
        }
        out.sort();
        Ok(out)
    }
}

impl InsideView<'_> {
    fn check(&self, x: &XSet) -> Result<()> {
        self.classifier.check_x(x)?;
        if x.inside_mask() != self.inside {
            return Err(Error::InvalidX(format!(
                "{x} does not match the view's inside part"
            )));
        }
        Ok(())
    }

    /// Number of distinct count vectors among the catalog families.
    pub fn distinct_vectors(&self) -> usize {
        self.groups.len()
    }

    pub fn front_len(&self) -> usize {
        self.front.len()
    }

    pub fn classify_at(&self, x: &XSet, p: Params) -> Result<Verdict> {
        self.check(x)?;
        x.check_at(p)?;
        let star = star_count(x, p)?;
        let w = Weights::new(p, x.outside());
        let mut violators: Vec<(usize, BigUint)> = Vec::new();
        for g in &self.groups {
            let c = w.eval(&g.vector);
            if c > star {
                violators.extend(g.members.iter().map(|&k| (k, c.clone())));
            }
        }
        violators.sort_by_key(|(k, _)| *k);
        let entries = self.classifier.catalog.entries();
        let witnesses: Vec<Witness> = violators
            .into_iter()
            .map(|(k, c)| Witness {
                antichain: entries[k].antichain.clone(),
                family_count: c,
                star_count: star.clone(),
            })
            .collect();
        Ok(Verdict {
            x: *x,
            params: p,
            good: witnesses.is_empty(),
            star_count: star,
            witnesses,
            basis: Basis::Catalog,
        })
    }

    pub fn is_good_at(&self, x: &XSet, p: Params) -> Result<bool> {
        self.check(x)?;
        self.classifier.check_params(p)?;
        x.check_at(p)?;
        let star = star_count(x, p)?;
        let w = Weights::new(p, x.outside());
        Ok(self
            .front
            .iter()
            .all(|&gi| w.eval(&self.groups[gi].vector) <= star))
    }

    fn sign_of(&self, x: &XSet, gi: usize) -> SignClass {
        let poly = diff_poly_from_vectors(&star_vector(x), &self.groups[gi].vector, x);
        sign_threshold(&poly)
    }

    /// Lowers a polynomial threshold while the exact comparison stays good.
    fn tighten(&self, x: &XSet, mut n0: u32) -> Result<u32> {
        let floor = x.min_n();
        let r = self.classifier.r();
        while n0 > floor && self.is_good_at(x, Params::new(n0 - 1, r)?)? {
            n0 -= 1;
        }
        Ok(n0)
    }

    pub fn classify_eventual(&self, x: &XSet) -> Result<EventualVerdict> {
        self.check(x)?;
        let signs: Vec<SignClass> = (0..self.groups.len())
            .map(|gi| self.sign_of(x, gi))
            .collect();
        let mut per_family: Vec<(usize, SignClass)> = self
            .groups
            .iter()
            .zip(&signs)
            .flat_map(|(g, s)| g.members.iter().map(move |&k| (k, *s)))
            .collect();
        per_family.sort_by_key(|(k, _)| *k);
        let eventually_good = !signs
            .iter()
            .any(|s| matches!(s, SignClass::EventuallyNegative { .. }));
        let threshold = if eventually_good {
            let bound = signs
                .iter()
                .filter_map(|s| match s {
                    SignClass::NonnegFrom(n) => Some(*n),
                    _ => None,
                })
                .fold(x.min_n(), u32::max);
            Some(self.tighten(x, bound)?)
        } else {
            None
        };
        let entries = self.classifier.catalog.entries();
        Ok(EventualVerdict {
            x: *x,
            eventually_good,
            threshold,
            per_family: per_family
                .into_iter()
                .map(|(k, s)| (entries[k].antichain.clone(), s))
                .collect(),
        })
    }

    /// Same decision as [`InsideView::classify_eventual`], computed on the
    /// Pareto front only.
    pub fn eventual_summary(&self, x: &XSet) -> Result<EventualSummary> {
        self.check(x)?;
        let mut bound = x.min_n();
        let mut bad_from: Option<u32> = None;
        for &gi in &self.front {
            match self.sign_of(x, gi) {
                SignClass::AlwaysNonneg => {}
                SignClass::NonnegFrom(n) => bound = bound.max(n),
                SignClass::EventuallyNegative { negative_from, .. } => {
                    bad_from = Some(bad_from.map_or(negative_from, |b| b.min(negative_from)));
                }
            }
        }
        if bad_from.is_some() {
            return Ok(EventualSummary {
                eventually_good: false,
                threshold: None,
                bad_from,
            });
        }
        Ok(EventualSummary {
            eventually_good: true,
            threshold: Some(self.tighten(x, bound)?),
            bad_from: None,
        })
    }
}

/// The characterization of eventually good `X` with `|X| <= r`.
///
/// For `r = 2` the two-element case reads `X ≠ {2, 3}`, which given
/// `X ⊄ [2, 3]` always holds.
pub fn theorem_main_predicate(x: &XSet, r: u32) -> Result<bool> {
    if x.r() != r {
        return Err(Error::InvalidX(format!("X was reduced for r = {}", x.r())));
    }
    if x.len() > r as usize {
        return Err(Error::InvalidX(format!(
            "|X| = {} > r = {r}; such X are good by Borg's theorem (a)",
            x.len()
        )));
    }
    if x.outside() == 0 && x.inside_mask() & !range_mask(2, r + 1) == 0 {
        return Ok(false);
    }
    let (two, three) = (x.contains_inside(2), x.contains_inside(3));
    Ok(match x.len() {
        1 => true,
        2 if r == 2 => true,
        2 => !two && !three,
        3 => !(two && three),
        _ => true,
    })
}

/// Borg (a): `|X| > r` forces goodness.
pub fn borg_a(x: &XSet, r: u32) -> bool {
    x.len() > r as usize
}

/// `{2k, 2k+2, ..., 2r}`, good for every `k <= r` by Borg (c).
pub fn borg_c_set(k: u32, r: u32) -> Result<RSet> {
    if k == 0 || k > r {
        return Err(Error::InvalidParams(format!("k = {k} outside [1, {r}]")));
    }
    RSet::new(&(k..=r).map(|i| 2 * i).collect::<Vec<_>>())
}

/// Borg (d) at `n = 2r`: an `r`-set `X ⊆ [2, 2r]` is good iff
/// `{2, 4, ..., 2r} <= X`.
pub fn borg_d_predicate(x: &RSet, r: u32) -> Result<bool> {
    if x.len() != r as usize || x.contains(1) || x.max_element() > 2 * r {
        return Err(Error::InvalidX(format!(
            "{x:?} is not an {r}-subset of [2, {}]",
            2 * r
        )));
    }
    Ok(mask_leq(borg_c_set(1, r)?.mask(), x.mask()))
}

/// Borg (e) for `n > 2r` and `|X| = r`.
pub fn borg_e_predicate(x: &XSet, r: u32) -> Result<bool> {
    if x.r() != r || x.len() != r as usize {
        return Err(Error::InvalidX(format!("{x} is not of size r = {r}")));
    }
    let hm = x.outside() == 0 && x.inside_mask() == range_mask(2, r + 1);
    let two_three = x.contains_inside(2) && x.contains_inside(3);
    Ok(match r {
        2 => !(x.outside() == 0 && x.inside_mask() == range_mask(2, 3)),
        3 => !two_three,
        _ => !hm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::eval_from_vector;
    use crate::family::oracle_count;
    use crate::mlcif::enumerate_mlcif;

    fn classifier(r: u32) -> Classifier {
        Classifier::new(Arc::new(enumerate_mlcif(r, false).unwrap())).unwrap()
    }

    fn raw(r: u32, elems: &[u32]) -> XSet {
        XSet::from_raw(&RSet::new(elems).unwrap(), r).unwrap()
    }

    fn p(n: u32, r: u32) -> Params {
        Params::new(n, r).unwrap()
    }

    #[test]
    fn classify_at_examples() {
        let c = classifier(3);
        for x in [&[2, 3, 9][..], &[3, 9]] {
            let v = c.classify_at(&raw(3, x), p(10, 3), false).unwrap();
            assert!(!v.good);
            assert!(v.witnesses.iter().any(|w| w.antichain.to_string() == "2,3"));
            assert!(v.witnesses.iter().all(|w| w.family_count > w.star_count));
        }
        let v = c.classify_at(&raw(3, &[2, 4, 6]), p(8, 3), false).unwrap();
        assert!(v.good && v.witnesses.is_empty());
    }

    #[test]
    fn large_x_shortcut_and_confirmation() {
        let c = classifier(3);
        let x = raw(3, &[2, 3, 4, 5]);
        let quick = c.classify_at(&x, p(6, 3), false).unwrap();
        assert_eq!(quick.basis, Basis::LargeX);
        let full = c.classify_at(&x, p(6, 3), true).unwrap();
        assert_eq!(full.basis, Basis::Catalog);
        assert!(quick.good && full.good);
    }

    #[test]
    fn weights_match_census_evaluation() {
        let c = classifier(3);
        for inside in [0b1100u64, 0b100100, 0b111110] {
            let view = c.view(inside).unwrap();
            for o in 0..=3 {
                let Ok(x) = XSet::new(inside, o, 3) else {
                    continue;
                };
                for n in (6 + o)..=12 {
                    let w = Weights::new(p(n, 3), o);
                    for g in &view.groups {
                        assert_eq!(
                            w.eval(&g.vector),
                            eval_from_vector(&g.vector, &x, p(n, 3)).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn classify_at_matches_materialized_counts() {
        let r = 3;
        let c = classifier(r);
        for n in 6..=10 {
            for m in 1..(1u64 << (n - 1)) {
                let xr = RSet::from_mask(m << 1).unwrap();
                if xr.len() > 3 {
                    continue;
                }
                let x = XSet::from_raw(&xr, r).unwrap();
                let v = c.classify_at(&x, p(n, r), false).unwrap();
                let star = oracle_count(GenAntichain::star().generators(), p(n, r), &xr).unwrap();
                let brute: Vec<String> = c
                    .catalog()
                    .antichains()
                    .filter(|a| oracle_count(a.generators(), p(n, r), &xr).unwrap() > star)
                    .map(|a| a.to_string())
                    .collect();
                let got: Vec<String> = v
                    .witnesses
                    .iter()
                    .map(|w| w.antichain.to_string())
                    .collect();
                assert_eq!(got, brute, "n={n} X={xr:?}");
            }
        }
    }

    #[test]
    fn eventual_examples() {
        let c = classifier(3);
        let v = c.classify_eventual(&raw(3, &[5])).unwrap();
        assert!(v.eventually_good);
        let v = c.classify_eventual(&raw(3, &[2, 3, 4])).unwrap();
        assert!(!v.eventually_good && v.threshold.is_none());
        let v = c.classify_eventual(&raw(3, &[2, 4, 6])).unwrap();
        assert_eq!(v.threshold, Some(6));
        assert_eq!(v.per_family.len(), 6);
    }

    #[test]
    fn eventual_threshold_is_tight() {
        for r in [3, 4] {
            let c = classifier(r);
            for inside in 0..(1u64 << (2 * r - 1)) {
                for o in 0..=2 {
                    let Ok(x) = XSet::new(inside << 1, o, r) else {
                        continue;
                    };
                    let v = c.classify_eventual(&x).unwrap();
                    let s = c.eventual_summary(&x).unwrap();
                    assert_eq!(s.eventually_good, v.eventually_good, "{x}");
                    assert_eq!(s.threshold, v.threshold, "{x}");
                    if let Some(n0) = v.threshold {
                        for n in n0..n0 + 4 {
                            assert!(c.is_good_at(&x, p(n, r)).unwrap(), "{x} n={n}");
                        }
                        if n0 > x.min_n() {
                            assert!(!c.is_good_at(&x, p(n0 - 1, r)).unwrap(), "{x}");
                        }
                    }
                    if let Some(b) = s.bad_from {
                        for n in b..b + 4 {
                            assert!(!c.is_good_at(&x, p(n, r)).unwrap(), "{x} n={n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn eventual_matches_main_predicate() {
        for r in [3, 4] {
            let c = classifier(r);
            for inside in 1..(1u64 << (2 * r - 1)) {
                let x = XSet::new(inside << 1, 0, r).unwrap();
                if x.len() > r as usize {
                    continue;
                }
                let v = c.classify_eventual(&x).unwrap();
                assert_eq!(
                    v.eventually_good,
                    theorem_main_predicate(&x, r).unwrap(),
                    "{x}"
                );
            }
        }
    }

    #[test]
    fn main_predicate_examples() {
        assert!(!theorem_main_predicate(&raw(4, &[2, 3, 9]), 4).unwrap());
        assert!(theorem_main_predicate(&raw(4, &[4, 9]), 4).unwrap());
        assert!(theorem_main_predicate(&raw(5, &[2, 3, 4, 5, 12]), 5).unwrap());
        assert!(!theorem_main_predicate(&raw(3, &[2, 4]), 3).unwrap());
        assert!(theorem_main_predicate(&raw(2, &[2, 4]), 2).unwrap());
        assert!(!theorem_main_predicate(&raw(2, &[2, 3]), 2).unwrap());
        assert!(theorem_main_predicate(&raw(3, &[2, 3, 4, 9]), 3).is_err());
    }

    #[test]
    fn minimal_good_examples() {
        let c = classifier(3);
        let found = c.minimal_good(p(6, 3), Some(3), false).unwrap();
        assert!(found.contains(&RSet::new(&[2, 4, 6]).unwrap()), "{found:?}");
        assert!(c.minimal_good(p(6, 3), Some(0), false).is_err());
    }

    #[test]
    fn minimal_good_guard() {
        let c = classifier(2);
        assert!(matches!(
            c.minimal_good(p(22, 2), Some(1), false),
            Err(Error::Guard { .. })
        ));
    }

    #[test]
    fn borg_predicates() {
        assert_eq!(borg_c_set(2, 4).unwrap(), RSet::new(&[4, 6, 8]).unwrap());
        assert!(borg_d_predicate(&RSet::new(&[2, 4, 6]).unwrap(), 3).unwrap());
        assert!(!borg_d_predicate(&RSet::new(&[2, 3, 6]).unwrap(), 3).unwrap());
        assert!(!borg_e_predicate(&raw(3, &[2, 3, 7]), 3).unwrap());
        assert!(borg_e_predicate(&raw(4, &[2, 3, 4, 9]), 4).unwrap());
        assert!(!borg_e_predicate(&raw(4, &[2, 3, 4, 5]), 4).unwrap());
        assert!(borg_a(&raw(3, &[2, 3, 4, 5]), 3));
    }

    #[test]
    fn hilton_milner_beats_star_by_one() {
        for r in 3..=4 {
            let c = classifier(r);
            let hm = GenAntichain::hilton_milner(r).unwrap();
            for inside in 1..(1u64 << r) {
                let x = XSet::new(inside << 1, 0, r).unwrap();
                for n in 2 * r..=2 * r + 3 {
                    let v = c.classify_at(&x, p(n, r), true).unwrap();
                    let w = v
                        .witnesses
                        .iter()
                        .find(|w| w.antichain == hm)
                        .expect("HM witness");
                    assert_eq!(w.family_count, &w.star_count + 1u32);
                }
            }
        }
    }
}
