//! Exact counting of `|⟨G⟩(X)|` without materializing the family.
//!
//! A member of `⟨G⟩ ⊆ [n]^(r)` splits into its trace `S = A ∩ [2r]` and a
//! completion drawn from `[2r+1, n]`. Whether `A ≺ G` depends only on `S`, and
//! since every generator lives in `[2r]` the elements beyond `2r` are
//! interchangeable. So with `e = n - 2r`, `k = r - |S|` and `o` the number of
//! elements of `X` beyond `2r`,
//!
//! ```text
//! |⟨G⟩(X)| = Σ_i  h_i·C(e, r-i) + (g_i - h_i)·(C(e, r-i) - C(e-o, r-i))
//! ```
//!
//! where `g_i` counts generated `i`-subsets of `[2r]` and `h_i` those that
//! also meet `X ∩ [2, 2r]`. With `o = 0` only the `h_i` terms survive.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::setcore::{masks_of_size, prefix_dominated, range_mask, Generator, Params, RSet};

/// A hitting set reduced to its trace on `[2, 2r]` and the number of its
/// elements beyond `2r`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct XSet {
    inside: u64,
    outside: u32,
    r: u32,
}

impl XSet {
    pub fn new(inside: u64, outside: u32, r: u32) -> Result<Self> {
        if !(2..=32).contains(&r) {
            return Err(Error::InvalidParams(format!("r = {r}")));
        }
        if inside & 1 != 0 {
            return Err(Error::InvalidX("X contains 1".into()));
        }
        if inside & !range_mask(2, 2 * r) != 0 {
            return Err(Error::InvalidX(format!(
                "inside part {:?} is not contained in [2, {}]",
                RSet::from_mask(inside)?,
                2 * r
            )));
        }
        if inside == 0 && outside == 0 {
            return Err(Error::InvalidX("X is empty".into()));
        }
        Ok(XSet { inside, outside, r })
    }

    /// Reduces a raw hitting set `X ⊆ [2, n]`.
    pub fn from_raw(x: &RSet, r: u32) -> Result<Self> {
        if x.contains(1) {
            return Err(Error::InvalidX(format!("{x:?} contains 1")));
        }
        let inner = range_mask(2, 2 * r);
        XSet::new(x.mask() & inner, (x.mask() & !inner).count_ones(), r)
    }

    /// The canonical raw representative: the inside part plus
    /// `2r+1, ..., 2r+o`.
    pub fn realize(&self) -> RSet {
        let outer = range_mask(2 * self.r + 1, 2 * self.r + self.outside);
        RSet::from_mask(self.inside | outer).expect("nonempty by construction")
    }

    pub fn inside_mask(&self) -> u64 {
        self.inside
    }

    pub fn inside(&self) -> Option<RSet> {
        RSet::from_mask(self.inside).ok()
    }

    pub fn outside(&self) -> u32 {
        self.outside
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `|X|`.
    pub fn len(&self) -> usize {
        self.inside.count_ones() as usize + self.outside as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_inside(&self, k: u32) -> bool {
        (1..=64).contains(&k) && self.inside & (1u64 << (k - 1)) != 0
    }

    /// Smallest `n` at which this `X` fits in `[2, n]`.
    pub fn min_n(&self) -> u32 {
        2 * self.r + self.outside
    }

    /// Validates against concrete parameters.
    pub fn check_at(&self, p: Params) -> Result<()> {
        if p.r() != self.r {
            return Err(Error::InvalidX(format!(
                "X was reduced for r = {}, used with r = {}",
                self.r,
                p.r()
            )));
        }
        if self.outside > p.excess() {
            return Err(Error::InvalidX(format!(
                "{} elements beyond 2r = {} do not fit in [{}, {}]",
                self.outside,
                2 * self.r,
                2 * self.r + 1,
                p.n()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for XSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.inside() {
            Some(s) => write!(f, "{{{s}}}")?,
            None => f.write_str("{}")?,
        }
        write!(f, "+{}", self.outside)
    }
}

impl fmt::Debug for XSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XSet{self}")
    }
}

/// `binom(a, b)`, zero when `b < 0` or `a < b`.
pub fn binom(a: i64, b: i64) -> BigUint {
    if b < 0 || a < b {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Per-level counts of generated subsets of `[2r]`: `g[i-1]` of size `i`, and
/// `h[i-1]` of those meeting the inside part of `X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountVector {
    pub g: Vec<u64>,
    pub h: Vec<u64>,
}

/// The generated subsets of `[2r]` grouped by size, reusable across many `X`.
#[derive(Debug, Clone)]
pub struct Profile {
    r: u32,
    levels: Vec<Vec<u64>>,
}

impl Profile {
    pub fn new(gens: &[Generator], r: u32) -> Result<Self> {
        for g in gens {
            Generator::new(*g.as_set(), r)?;
        }
        let levels = (1..=r)
            .map(|i| {
                masks_of_size(2 * r, i)
                    .filter(|&a| gens.iter().any(|g| prefix_dominated(a, g.mask())))
                    .collect()
            })
            .collect();
        Ok(Profile { r, levels })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn count_vector(&self, inside: u64) -> CountVector {
        let g = self.levels.iter().map(|l| l.len() as u64).collect();
        let h = self
            .levels
            .iter()
            .map(|l| l.iter().filter(|&&a| a & inside != 0).count() as u64)
            .collect();
        CountVector { g, h }
    }
}

pub fn count_vector(gens: &[Generator], x: &XSet, r: u32) -> Result<CountVector> {
    if x.r() != r {
        return Err(Error::InvalidX(format!("X was reduced for r = {}", x.r())));
    }
    Ok(Profile::new(gens, r)?.count_vector(x.inside_mask()))
}

/// The star's count vector: `{1} ∪ T` for every `T ⊆ [2, 2r]`.
pub fn star_vector(x: &XSet) -> CountVector {
    let r = x.r();
    let m = u64::from(2 * r - 1);
    let hit = u64::from(x.inside_mask().count_ones());
    let choose = |a: u64, b: u64| crate::family::binom_u128(a as u32, b as u32) as u64;
    let g = (1..=u64::from(r)).map(|i| choose(m, i - 1)).collect();
    let h = (1..=u64::from(r))
        .map(|i| choose(m, i - 1) - choose(m - hit, i - 1))
        .collect();
    CountVector { g, h }
}

/// `|⟨G⟩(X)|` at `p` from a precomputed count vector.
pub fn eval_from_vector(cv: &CountVector, x: &XSet, p: Params) -> Result<BigUint> {
    x.check_at(p)?;
    let r = i64::from(p.r());
    let e = i64::from(p.excess());
    let o = i64::from(x.outside());
    let mut total = BigUint::zero();
    for i in 1..=r {
        let k = r - i;
        let full = binom(e, k);
        let miss = binom(e - o, k);
        let (g, h) = (cv.g[i as usize - 1], cv.h[i as usize - 1]);
        total += &full * h + (full - miss) * (g - h);
    }
    Ok(total)
}

pub fn eval_count(gens: &[Generator], x: &XSet, p: Params) -> Result<BigUint> {
    eval_from_vector(&count_vector(gens, x, p.r())?, x, p)
}

pub fn star_count(x: &XSet, p: Params) -> Result<BigUint> {
    eval_from_vector(&star_vector(x), x, p)
}

/// `binom(n-1, r-1) - binom(n-1-|X|, r-1)`.
pub fn star_closed_form(x: &XSet, p: Params) -> Result<BigUint> {
    x.check_at(p)?;
    let n = i64::from(p.n());
    let r = i64::from(p.r());
    Ok(binom(n - 1, r - 1) - binom(n - 1 - x.len() as i64, r - 1))
}

/// `|⟨G⟩|` at `p`.
pub fn family_size(gens: &[Generator], p: Params) -> Result<BigUint> {
    let profile = Profile::new(gens, p.r())?;
    let cv = profile.count_vector(0);
    let r = i64::from(p.r());
    let e = i64::from(p.excess());
    Ok((1..=r).fold(BigUint::zero(), |acc, i| {
        acc + binom(e, r - i) * cv.g[i as usize - 1]
    }))
}

/// An exact polynomial in `e = n - 2r`, stored as integer coefficients of
/// `scale · p(e)` in ascending powers of `e`. Meaningful for
/// `e >= min_excess`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountPoly {
    coeffs: Vec<BigInt>,
    scale: BigInt,
    base: u32,
    min_excess: u32,
}

fn trim(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

/// Coefficients of `(e - c)(e - c - 1)...(e - c - k + 1)`.
fn shifted_falling(c: i64, k: i64) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for j in 0..k {
        let root = BigInt::from(c + j);
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (d, a) in poly.iter().enumerate() {
            next[d + 1] += a;
            next[d] -= a * &root;
        }
        poly = next;
    }
    poly
}

fn factorial(k: i64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

impl CountPoly {
    /// `scale · p(e)` for the polynomial in `e`, `coeffs` ascending.
    pub fn new(coeffs: Vec<BigInt>, scale: BigInt, base: u32, min_excess: u32) -> Self {
        CountPoly {
            coeffs: trim(coeffs),
            scale,
            base,
            min_excess,
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// `2r`: `n = base + e`.
    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn min_excess(&self) -> u32 {
        self.min_excess
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `scale · p(e)`.
    pub fn eval_scaled(&self, e: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * e + c)
    }

    /// `p(n - 2r)`, exactly.
    pub fn value_at(&self, n: u32) -> Result<BigInt> {
        if n < self.base + self.min_excess {
            return Err(Error::InvalidParams(format!(
                "n = {n} is below the polynomial's domain start {}",
                self.base + self.min_excess
            )));
        }
        let scaled = self.eval_scaled(&BigInt::from(n - self.base));
        let (q, rem) = (&scaled / &self.scale, &scaled % &self.scale);
        debug_assert!(
            rem.is_zero(),
            "scaled value {scaled} not divisible by {}",
            self.scale
        );
        Ok(q)
    }
}

/// `|S(X)| - |⟨G⟩(X)|` as an exact polynomial in `e = n - 2r`, valid for
/// every `n >= 2r + |X \ [2r]|`.
pub fn diff_poly(gens: &[Generator], x: &XSet, r: u32) -> Result<CountPoly> {
    let fam = count_vector(gens, x, r)?;
    Ok(diff_poly_from_vectors(&star_vector(x), &fam, x))
}

pub fn diff_poly_from_vectors(star: &CountVector, fam: &CountVector, x: &XSet) -> CountPoly {
    let r = i64::from(x.r());
    let o = i64::from(x.outside());
    let scale = factorial(r - 1);
    let mut coeffs = vec![BigInt::zero(); r as usize];
    for i in 1..=r {
        let k = r - i;
        let idx = i as usize - 1;
        let mult = &scale / factorial(k);
        // scale·C(e, k) = mult·(e)_k and scale·C(e - o, k) = mult·(e - o)_k.
        let full_w = BigInt::from(star.g[idx]) - BigInt::from(fam.g[idx]);
        let miss_w = (BigInt::from(star.g[idx]) - BigInt::from(star.h[idx]))
            - (BigInt::from(fam.g[idx]) - BigInt::from(fam.h[idx]));
        for (d, c) in shifted_falling(0, k).into_iter().enumerate() {
            coeffs[d] += c * &mult * &full_w;
        }
        for (d, c) in shifted_falling(o, k).into_iter().enumerate() {
            coeffs[d] -= c * &mult * &miss_w;
        }
    }
    CountPoly::new(coeffs, scale, 2 * x.r(), x.outside())
}

/// Sign of a count polynomial over the integers `n` in its domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignClass {
    /// Nonnegative at every `n` in the domain.
    AlwaysNonneg,
    /// Negative somewhere, but nonnegative for every `n >=` this value.
    NonnegFrom(u32),
    /// Negative for all large `n`: first at `first_negative`, and at every
    /// `n >= negative_from`.
    EventuallyNegative {
        first_negative: u32,
        negative_from: u32,
    },
}

/// Smallest `t >= 0` with `t^k · den >= num` (all nonnegative).
fn ceil_root_ratio(num: &BigInt, den: &BigInt, k: u32) -> BigInt {
    let q = (num + den - BigInt::one()) / den;
    let mut t = q.nth_root(k);
    while t.pow(k) * den < *num {
        t += 1;
    }
    t
}

/// An integer bound `B` with every real root of `p` in `[-B, B]`: the smaller
/// of Cauchy's `1 + max|c_k / c_d|` and Fujiwara's `2 max |c_{d-k} / c_d|^(1/k)`.
pub fn root_bound(p: &CountPoly) -> BigInt {
    let Some(d) = p.degree() else {
        return BigInt::zero();
    };
    if d == 0 {
        return BigInt::zero();
    }
    let lead = p.coeffs[d].abs();
    let max_c = p.coeffs[..d]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_default();
    let cauchy = BigInt::one() + (&max_c + &lead - BigInt::one()) / &lead;
    let fujiwara = (1..=d)
        .map(|k| ceil_root_ratio(&p.coeffs[d - k].abs(), &lead, k as u32))
        .max()
        .unwrap_or_default()
        * 2;
    cauchy.min(fujiwara)
}

/// Exact sign classification: every integer up to the root bound is checked
/// directly, and beyond it the leading coefficient decides.
pub fn sign_threshold(p: &CountPoly) -> SignClass {
    let Some(d) = p.degree() else {
        return SignClass::AlwaysNonneg;
    };
    let start = u64::from(p.min_excess);
    let bound = root_bound(p)
        .to_u64()
        .expect("root bound fits in u64 for count polynomials");
    let last = bound.max(start);
    let mut first_neg = None;
    let mut last_neg = None;
    let mut last_nonneg = None;
    for e in start..=last {
        if p.eval_scaled(&BigInt::from(e)).sign() == Sign::Minus {
            first_neg.get_or_insert(e);
            last_neg = Some(e);
        } else {
            last_nonneg = Some(e);
        }
    }
    let to_n = |e: u64| p.base + e as u32;
    if p.coeffs[d].sign() == Sign::Plus {
        match last_neg {
            None => SignClass::AlwaysNonneg,
            Some(e) => SignClass::NonnegFrom(to_n(e + 1)),
        }
    } else {
        let first = first_neg.unwrap_or(last + 1);
        let from = last_nonneg.map_or(start, |e| e + 1);
        SignClass::EventuallyNegative {
            first_negative: to_n(first),
            negative_from: to_n(from),
        }
    }
}
