//! Exhaustive consistency suites. Each suite returns one record per claim and
//! parameter point; a failing claim carries the first counterexample found.
//! Only guard and catalog failures are errors.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::CatalogStore;
use crate::census::{
    binom, count_vector, diff_poly, eval_count, star_closed_form, star_count, XSet,
};
use crate::error::{Error, Result};
use crate::family::{
    materialize, materialize_superset, oracle_count, random_intersecting_family,
    search_maximal_lcifs,
};
use crate::goodness::{
    borg_c_set, borg_d_predicate, borg_e_predicate, theorem_main_predicate, Classifier, InsideView,
    MINIMAL_GOOD_MAX_BITS,
};
use crate::mlcif::{extract_generators, unique_extension_check, Catalog, GenAntichain};
use crate::setcore::{masks_of_size, range_mask, Generator, Params, RSet};

/// Largest outside count swept by the threshold suite.
pub const THRESHOLD_MAX_OUTSIDE: u32 = 4;
/// Catalogs above this size are sampled by the per-entry lemma checks.
pub const FULL_CHECK_ENTRIES: usize = 20;

const SEED: u64 = 0x1c1f;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Borg,
    Main,
    Thresholds,
    Ekr,
    Lemmas,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Borg,
        Suite::Main,
        Suite::Thresholds,
        Suite::Ekr,
        Suite::Lemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Borg => "borg",
            Suite::Main => "main",
            Suite::Thresholds => "thresholds",
            Suite::Ekr => "ekr",
            Suite::Lemmas => "lemmas",
        }
    }

    pub fn default_r(self) -> RangeInclusive<u32> {
        match self {
            Suite::Borg => 2..=3,
            Suite::Main => 3..=4,
            Suite::Thresholds => 2..=5,
            Suite::Ekr | Suite::Lemmas => 2..=4,
        }
    }

    /// The `n` values checked at `r` when no range is given.
    pub fn default_n(self, r: u32) -> RangeInclusive<u32> {
        match self {
            Suite::Borg => 2 * r..=10.max(2 * r),
            Suite::Main => 2 * r + 2..=2 * r + 6,
            Suite::Thresholds => 2 * r + 2..=2 * r + 8,
            Suite::Ekr => 2 * r..=2 * r + 4,
            Suite::Lemmas => 2 * r..=2 * r + 6,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse {
                what: "suite name",
                input: s.to_string(),
                reason: "expected one of borg, main, thresholds, ekr, lemmas".into(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimRecord {
    pub claim: &'static str,
    pub params: Vec<(&'static str, String)>,
    pub status: Status,
    /// Number of instances checked.
    pub checked: u64,
    pub counterexample: Option<String>,
    /// Extra measured data, reported regardless of status.
    pub detail: Option<String>,
}

impl fmt::Display for ClaimRecord {
    /// `claim=<id>; <params>; status=<s>; checked=<k>[; detail=..][; counterexample=..]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "claim={}", self.claim)?;
        for (k, v) in &self.params {
            write!(f, "; {k}={v}")?;
        }
        write!(f, "; status={}; checked={}", self.status, self.checked)?;
        if let Some(d) = &self.detail {
            write!(f, "; detail={d}")?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, "; counterexample={c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: Suite,
    pub records: Vec<ClaimRecord>,
    /// Claims left out of this run and why.
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }
}

/// Accumulates one claim's checks.
struct Claim {
    id: &'static str,
    params: Vec<(&'static str, String)>,
    checked: u64,
    counterexample: Option<String>,
    detail: Option<String>,
}

impl Claim {
    fn new(id: &'static str, params: Vec<(&'static str, String)>) -> Self {
        Claim {
            id,
            params,
            checked: 0,
            counterexample: None,
            detail: None,
        }
    }

    fn check(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(counterexample());
        }
    }

    fn finish(self) -> ClaimRecord {
        ClaimRecord {
            claim: self.id,
            params: self.params,
            status: if self.counterexample.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            checked: self.checked,
            counterexample: self.counterexample,
            detail: self.detail,
        }
    }
}

fn range_str(r: &RangeInclusive<u32>) -> String {
    if r.start() == r.end() {
        r.start().to_string()
    } else {
        format!("{}..{}", r.start(), r.end())
    }
}

fn good_word(good: bool) -> &'static str {
    if good {
        "good"
    } else {
        "bad"
    }
}

/// Runs suites against catalogs from one store, reusing classifiers.
pub struct Verifier<'s> {
    store: &'s CatalogStore,
    classifiers: HashMap<u32, Arc<Classifier>>,
}

impl<'s> Verifier<'s> {
    pub fn new(store: &'s CatalogStore) -> Self {
        Verifier {
            store,
            classifiers: HashMap::new(),
        }
    }

    fn catalog(&self, r: u32) -> Result<Arc<Catalog>> {
        self.store.get(r)
    }

    pub fn classifier(&mut self, r: u32) -> Result<Arc<Classifier>> {
        if let Some(c) = self.classifiers.get(&r) {
            return Ok(Arc::clone(c));
        }
        let c = Arc::new(Classifier::new(self.catalog(r)?)?);
        self.classifiers.insert(r, Arc::clone(&c));
        Ok(c)
    }

    /// Runs `suite` for every `r` in `rs` (the suite default when `None`). An
    /// explicit `ns` is intersected with each suite's valid `n` at that `r`.
    pub fn run(
        &mut self,
        suite: Suite,
        rs: Option<RangeInclusive<u32>>,
        ns: Option<RangeInclusive<u32>>,
    ) -> Result<Report> {
        let rs = rs.unwrap_or_else(|| suite.default_r());
        let mut report = Report {
            suite,
            records: Vec::new(),
            notes: Vec::new(),
        };
        for r in rs {
            let default = suite.default_n(r);
            let n_range = match &ns {
                Some(ns) => (*ns.start()).max(*default.start())..=*ns.end(),
                None => default,
            };
            match suite {
                Suite::Borg => self.borg(r, n_range, &mut report)?,
                Suite::Main => self.main(r, n_range, &mut report)?,
                Suite::Thresholds => self.thresholds(r, n_range, &mut report)?,
                Suite::Ekr => self.ekr(r, n_range, &mut report)?,
                Suite::Lemmas => self.lemmas(r, n_range, &mut report)?,
            }
        }
        Ok(report)
    }

    fn borg(&mut self, r: u32, ns: RangeInclusive<u32>, report: &mut Report) -> Result<()> {
        let c = self.classifier(r)?;
        for n in ns {
            if n - 1 > MINIMAL_GOOD_MAX_BITS {
                return Err(Error::Guard {
                    what: format!("borg suite over subsets of [2, {n}]"),
                    limit: format!("n - 1 <= {MINIMAL_GOOD_MAX_BITS}"),
                });
            }
            let p = Params::new(n, r)?;
            let good = goodness_table(&c, p)?;
            let params = || vec![("r", r.to_string()), ("n", n.to_string())];
            let set = |m: u64| RSet::from_mask(m).expect("nonempty");

            let mut a = Claim::new("borg-a", params());
            for (&m, &g) in &good {
                if m.count_ones() > r {
                    a.check(g, || format!("X={{{}}} is bad", set(m)));
                }
            }
            report.records.push(a.finish());

            let mut b = Claim::new("borg-b", params());
            for (&m, &g) in &good {
                if !g {
                    continue;
                }
                for up in set(m).upper_covers(n) {
                    b.check(good[&up.mask()], || {
                        format!("X={{{}}} good but X'={{{up}}} bad", set(m))
                    });
                }
            }
            report.records.push(b.finish());

            let mut cc = Claim::new("borg-c", params());
            for k in 1..=r {
                let s = borg_c_set(k, r)?;
                cc.check(good[&s.mask()], || format!("X={{{s}}} is bad"));
            }
            report.records.push(cc.finish());

            let mut de = Claim::new(if n == 2 * r { "borg-d" } else { "borg-e" }, params());
            for (&m, &g) in &good {
                if m.count_ones() != r {
                    continue;
                }
                let expected = if n == 2 * r {
                    borg_d_predicate(&set(m), r)?
                } else {
                    borg_e_predicate(&XSet::from_raw(&set(m), r)?, r)?
                };
                de.check(g == expected, || {
                    format!(
                        "X={{{}}} is {} but predicted {}",
                        set(m),
                        good_word(g),
                        good_word(expected)
                    )
                });
            }
            report.records.push(de.finish());
        }
        Ok(())
    }

    fn main(&mut self, r: u32, ns: RangeInclusive<u32>, report: &mut Report) -> Result<()> {
        let c = self.classifier(r)?;
        let mut cases = Vec::new();
        for inside in masks_below(r) {
            for o in 0..=2 {
                let Ok(x) = XSet::new(inside, o, r) else {
                    continue;
                };
                if x.len() <= r as usize {
                    cases.push((x, theorem_main_predicate(&x, r)?));
                }
            }
        }
        let mut eventual = Claim::new("main-eventual", vec![("r", r.to_string())]);
        let mut at_n: Vec<Claim> = ns
            .clone()
            .map(|n| {
                Claim::new(
                    "main-at-n",
                    vec![("r", r.to_string()), ("n", n.to_string())],
                )
            })
            .collect();
        let mut views: HashMap<u64, InsideView<'_>> = HashMap::new();
        for (x, expected) in &cases {
            let view = match views.get(&x.inside_mask()) {
                Some(v) => v,
                None => {
                    views.insert(x.inside_mask(), c.view(x.inside_mask())?);
                    &views[&x.inside_mask()]
                }
            };
            let v = view.classify_eventual(x)?;
            eventual.check(v.eventually_good == *expected, || {
                format!(
                    "X={x} eventually {} but predicted {}",
                    good_word(v.eventually_good),
                    good_word(*expected)
                )
            });
            for (claim, n) in at_n.iter_mut().zip(ns.clone()) {
                if n < x.min_n() {
                    continue;
                }
                let g = view.is_good_at(x, Params::new(n, r)?)?;
                claim.check(g == *expected, || {
                    format!(
                        "X={x} is {} at n={n} but predicted {}",
                        good_word(g),
                        good_word(*expected)
                    )
                });
            }
        }
        report.records.push(eventual.finish());
        report.records.extend(at_n.into_iter().map(Claim::finish));
        Ok(())
    }

    fn thresholds(&mut self, r: u32, ns: RangeInclusive<u32>, report: &mut Report) -> Result<()> {
        let c = self.classifier(r)?;
        let params = vec![
            ("r", r.to_string()),
            ("n", range_str(&ns)),
            ("max_outside", THRESHOLD_MAX_OUTSIDE.to_string()),
        ];
        let mut direct = Claim::new("threshold-direct", params.clone());
        let mut beyond = Claim::new("threshold-beyond", params);
        let mut worst: Option<(u32, XSet)> = None;
        for inside in masks_below(r) {
            let view = c.view(inside)?;
            for o in 0..=THRESHOLD_MAX_OUTSIDE {
                let Ok(x) = XSet::new(inside, o, r) else {
                    continue;
                };
                let expected = x.len() > r as usize || theorem_main_predicate(&x, r)?;
                let lo = (*ns.start()).max(x.min_n());
                for n in lo..=*ns.end() {
                    let g = view.is_good_at(&x, Params::new(n, r)?)?;
                    direct.check(g == expected, || {
                        format!(
                            "X={x} is {} at n={n} but predicted {}",
                            good_word(g),
                            good_word(expected)
                        )
                    });
                }
                let s = view.eventual_summary(&x)?;
                if let Some(t) = s.threshold.filter(|&t| t > x.min_n()) {
                    if worst.is_none_or(|(w, _)| t > w) {
                        worst = Some((t, x));
                    }
                }
                let ok = if expected {
                    s.eventually_good && s.threshold.is_some_and(|t| t <= lo)
                } else {
                    !s.eventually_good && s.bad_from.is_some_and(|b| b <= ns.end() + 1)
                };
                beyond.check(ok, || {
                    format!(
                        "X={x} predicted {}, eventually_good={} threshold={:?} bad_from={:?}",
                        good_word(expected),
                        s.eventually_good,
                        s.threshold,
                        s.bad_from
                    )
                });
            }
        }
        beyond.detail = Some(match worst {
            Some((t, x)) => format!("max_binding_threshold={t},at={x}"),
            None => "max_binding_threshold=none".into(),
        });
        report.records.push(direct.finish());
        report.records.push(beyond.finish());
        Ok(())
    }

    fn ekr(&mut self, r: u32, ns: RangeInclusive<u32>, report: &mut Report) -> Result<()> {
        let c = self.classifier(r)?;
        for n in ns {
            let p = Params::new(n, r)?;
            let star = binom(i64::from(n) - 1, i64::from(r) - 1);
            let mut claim = Claim::new("ekr", vec![("r", r.to_string()), ("n", n.to_string())]);
            for (entry, size) in c.catalog().entries().iter().zip(c.family_sizes(p)?) {
                let ok = if entry.antichain.is_star() {
                    size == star
                } else if n > 2 * r {
                    size < star
                } else {
                    size <= star
                };
                claim.check(ok, || {
                    format!("gens={} size={size} star={star}", entry.antichain)
                });
            }
            report.records.push(claim.finish());
        }
        Ok(())
    }

    fn lemmas(&mut self, r: u32, ns: RangeInclusive<u32>, report: &mut Report) -> Result<()> {
        let catalog = self.catalog(r)?;
        let (entries, sampled) = sample_entries(&catalog, r);
        let scope = if sampled { "sampled" } else { "all" };
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ u64::from(r));

        let mut oracle = Claim::new(
            "oracle-equivalence",
            vec![
                ("r", r.to_string()),
                ("n", range_str(&ns)),
                ("entries", scope.into()),
            ],
        );
        let mut poly = Claim::new("difference-polynomial", vec![("r", r.to_string())]);
        let per_n = if sampled { 50 } else { 200 };
        for n in ns.clone() {
            let p = Params::new(n, r)?;
            for _ in 0..per_n {
                let raw = random_x(&mut rng, r, n);
                let x = XSet::from_raw(&raw, r)?;
                for e in &entries {
                    let gens = e.generators();
                    let fast = eval_count(gens, &x, p)?;
                    let slow = BigUint::from(oracle_count(gens, p, &raw)?);
                    oracle.check(fast == slow, || {
                        format!("gens={e} n={n} X={{{raw}}} formula={fast} oracle={slow}")
                    });
                    let d = diff_poly(gens, &x, r)?;
                    let direct = num_bigint::BigInt::from(star_count(&x, p)?)
                        - num_bigint::BigInt::from(fast);
                    poly.check(d.value_at(n)? == direct, || format!("gens={e} n={n} X={x}"));
                }
            }
        }
        report.records.push(oracle.finish());
        report.records.push(poly.finish());

        let mut restriction = Claim::new("polynomial-restriction", vec![("r", r.to_string())]);
        let mut star = Claim::new("star-closed-form", vec![("r", r.to_string())]);
        for inside in masks_below(r) {
            for o in 0..=2 {
                let Ok(x) = XSet::new(inside, o, r) else {
                    continue;
                };
                for n in x.min_n()..=2 * r + 6 {
                    let p = Params::new(n, r)?;
                    let s = star_count(&x, p)?;
                    star.check(
                        s == star_closed_form(&x, p)?
                            && s == eval_count(GenAntichain::star().generators(), &x, p)?,
                        || format!("n={n} X={x}"),
                    );
                    if o != 0 {
                        continue;
                    }
                    for e in &entries {
                        let cv = count_vector(e.generators(), &x, r)?;
                        let sum = (1..=r).fold(BigUint::default(), |acc, i| {
                            acc + binom(i64::from(n - 2 * r), i64::from(r - i))
                                * cv.h[i as usize - 1]
                        });
                        restriction.check(sum == eval_count(e.generators(), &x, p)?, || {
                            format!("gens={e} n={n} X={x}")
                        });
                    }
                }
            }
        }
        report.records.push(restriction.finish());
        report.records.push(star.finish());

        self.hilton_milner(r, report)?;
        if r >= 3 {
            counterexample_formulas(r, report)?;
        } else {
            report
                .notes
                .push("counterexample formulas need r >= 3; skipped at r=2".into());
        }

        let mut extraction = Claim::new(
            "extraction-round-trip",
            vec![("r", r.to_string()), ("entries", scope.into())],
        );
        let mut unique = Claim::new(
            "unique-extension",
            vec![("r", r.to_string()), ("entries", scope.into())],
        );
        let mut newgen = Claim::new(
            "new-generators",
            vec![("r", r.to_string()), ("entries", scope.into())],
        );
        for e in &entries {
            let base = materialize(e.generators(), Params::new(2 * r, r)?)?;
            let back = extract_generators(&base)?;
            extraction.check(back == *e, || format!("gens={e} extracted={back}"));
            for n in 2 * r + 1..=2 * r + 2 {
                unique.check(unique_extension_check(e, r, n)?, || {
                    format!("gens={e} n={n}")
                });
            }
            for n in 2 * r + 1..=2 * r + 4 {
                let f = materialize(e.generators(), Params::new(n, r)?)?;
                newgen.check(f.is_intersecting(), || format!("gens={e} n={n}"));
            }
        }
        report.records.push(extraction.finish());
        report.records.push(unique.finish());
        report.records.push(newgen.finish());

        if r <= 3 {
            old_generators(r, report)?;
        } else {
            report.notes.push(format!(
                "old-generators pair sweep runs for r <= 3; skipped at r={r}"
            ));
        }
        if r <= 4 {
            report.records.push(bijection(&catalog, r)?);
            compression(r, &mut rng, report)?;
        } else {
            report.notes.push(format!(
                "bijection and compression checks run for r <= 4; skipped at r={r}"
            ));
        }
        Ok(())
    }

    fn hilton_milner(&mut self, r: u32, report: &mut Report) -> Result<()> {
        let c = self.classifier(r)?;
        let hm = GenAntichain::hilton_milner(r)?;
        let mut claim = Claim::new(
            "hilton-milner",
            vec![
                ("r", r.to_string()),
                ("n", format!("{}..{}", 2 * r, 2 * r + 4)),
            ],
        );
        for inside in 1..(1u64 << r) {
            let x = XSet::new(inside << 1, 0, r)?;
            let view = c.view(x.inside_mask())?;
            for n in 2 * r..=2 * r + 4 {
                let v = view.classify_at(&x, Params::new(n, r)?)?;
                let w = v.witnesses.iter().find(|w| w.antichain == hm);
                claim.check(
                    w.is_some_and(|w| w.family_count == &w.star_count + 1u32),
                    || {
                        format!(
                            "X={x} n={n} witness={:?}",
                            w.map(|w| (&w.family_count, &w.star_count))
                        )
                    },
                );
            }
        }
        report.records.push(claim.finish());
        Ok(())
    }
}

/// Every inside part `⊆ [2, 2r]`, the empty one included.
fn masks_below(r: u32) -> impl Iterator<Item = u64> {
    (0..(1u64 << (2 * r - 1))).map(|m| m << 1)
}

/// Goodness of every nonempty `X ⊆ [2, n]`, keyed by mask.
fn goodness_table(c: &Classifier, p: Params) -> Result<HashMap<u64, bool>> {
    let n = p.n();
    let mut views: HashMap<u64, InsideView<'_>> = HashMap::new();
    let mut out = HashMap::new();
    for m in 1..(1u64 << (n - 1)) {
        let raw = RSet::from_mask(m << 1)?;
        let x = XSet::from_raw(&raw, p.r())?;
        if let std::collections::hash_map::Entry::Vacant(e) = views.entry(x.inside_mask()) {
            e.insert(c.view(x.inside_mask())?);
        }
        out.insert(m << 1, views[&x.inside_mask()].is_good_at(&x, p)?);
    }
    Ok(out)
}

/// All entries for small catalogs, a seeded sample of them otherwise.
fn sample_entries(c: &Catalog, r: u32) -> (Vec<GenAntichain>, bool) {
    if c.len() <= FULL_CHECK_ENTRIES {
        return (c.antichains().cloned().collect(), false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED.rotate_left(r));
    let mut idx = sample(&mut rng, c.len(), FULL_CHECK_ENTRIES).into_vec();
    idx.sort_unstable();
    (
        idx.into_iter()
            .map(|i| c.entries()[i].antichain.clone())
            .collect(),
        true,
    )
}

/// A uniformly random inside part and outside count, with the outside
/// elements placed at random in `[2r+1, n]`.
fn random_x<R: Rng>(rng: &mut R, r: u32, n: u32) -> RSet {
    loop {
        let inside = rng.gen::<u64>() & range_mask(2, 2 * r);
        let m = rng.gen_range(0..=n - 2 * r);
        let outside = sample(rng, (n - 2 * r) as usize, m as usize)
            .into_iter()
            .fold(0u64, |acc, i| acc | 1u64 << (2 * r as usize + i));
        if let Ok(x) = RSet::from_mask(inside | outside) {
            return x;
        }
    }
}

fn counterexample_formulas(r: u32, report: &mut Report) -> Result<()> {
    let b = |a: u32, k: u32| binom(i64::from(a), i64::from(k));
    let star_gens = GenAntichain::star();
    let fam_gens = GenAntichain::parse("2,3", r)?;
    let mut c23k = Claim::new(
        "counterexample-23k",
        vec![
            ("r", r.to_string()),
            ("n", format!("{}..{}", 2 * r, 2 * r + 6)),
        ],
    );
    let mut c3j = Claim::new(
        "counterexample-3j",
        vec![
            ("r", r.to_string()),
            ("n", format!("{}..{}", 2 * r, 2 * r + 6)),
        ],
    );
    for n in 2 * r..=2 * r + 6 {
        let p = Params::new(n, r)?;
        let picks: BTreeSet<u32> = [r + 2, 2 * r, 2 * r + 1, n]
            .into_iter()
            .filter(|&k| k <= n)
            .collect();
        for k in picks {
            let x = RSet::new(&[2, 3, k])?;
            let xs = XSet::from_raw(&x, r)?;
            let s = eval_count(star_gens.generators(), &xs, p)?;
            let f = eval_count(fam_gens.generators(), &xs, p)?;
            let s_sum = b(n - 2, r - 2) + b(n - 3, r - 2) + b(n - 4, r - 2);
            let f_sum = b(n - 2, r - 2) + b(n - 3, r - 2) + b(n - 3, r - 2);
            let s_oracle = BigUint::from(oracle_count(star_gens.generators(), p, &x)?);
            let f_oracle = BigUint::from(oracle_count(fam_gens.generators(), p, &x)?);
            c23k.check(
                s == s_sum && f == f_sum && s == s_oracle && f == f_oracle && f > s,
                || format!("n={n} X={{{x}}} star={s} sum={s_sum} family={f} sum={f_sum}"),
            );

            let x = RSet::new(&[3, k])?;
            let xs = XSet::from_raw(&x, r)?;
            let s = eval_count(star_gens.generators(), &xs, p)?;
            let f = eval_count(fam_gens.generators(), &xs, p)?;
            let s_sum = b(n - 2, r - 2) + b(n - 3, r - 2);
            let f_sum = b(n - 2, r - 2) + b(n - 3, r - 2) + b(n - 4, r - 3);
            let s_oracle = BigUint::from(oracle_count(star_gens.generators(), p, &x)?);
            let f_oracle = BigUint::from(oracle_count(fam_gens.generators(), p, &x)?);
            c3j.check(
                s == s_sum && f == f_sum && s == s_oracle && f == f_oracle && f > s,
                || format!("n={n} X={{{x}}} star={s} sum={s_sum} family={f} sum={f_sum}"),
            );
        }
    }
    report.records.push(c23k.finish());
    report.records.push(c3j.finish());
    Ok(())
}

/// Same-size sets `G' <= G` for some `G` in `gens`.
fn down_closure(gens: &[RSet]) -> Vec<RSet> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<RSet> = gens.to_vec();
    while let Some(g) = stack.pop() {
        if out.insert(g) {
            stack.extend(g.lower_covers());
        }
    }
    out.into_iter().collect()
}

fn pairwise_intersecting(sets: &[RSet]) -> bool {
    sets.iter()
        .enumerate()
        .all(|(i, a)| sets[i..].iter().all(|b| a.intersects(b)))
}

/// Both generation rules, over every pair of candidate generators.
fn old_generators(r: u32, report: &mut Report) -> Result<()> {
    let cands: Vec<RSet> = (1..=r)
        .flat_map(|k| masks_of_size(2 * r, k))
        .map(RSet::from_mask)
        .collect::<Result<_>>()?;
    for n in [2 * r, 2 * r + 2] {
        let p = Params::new(n, r)?;
        let params = || vec![("r", r.to_string()), ("n", n.to_string())];
        let mut sup = Claim::new("old-generators", params());
        let mut prec = Claim::new("old-generators-prec", params());
        for (i, a) in cands.iter().enumerate() {
            for b in &cands[i..] {
                let pair = [*a, *b];
                let f = materialize_superset(&pair, p)?;
                sup.check(f.is_intersecting() == a.intersects(b), || {
                    format!("G={{{a}}},{{{b}}}")
                });

                let gens = [Generator::new(*a, r)?, Generator::new(*b, r)?];
                let f = materialize(&gens, p)?;
                let closure = down_closure(&pair);
                let same = f == materialize_superset(&closure, p)?;
                prec.check(
                    same && f.is_intersecting() == pairwise_intersecting(&closure),
                    || format!("G={{{a}}},{{{b}}}"),
                );
            }
        }
        report.records.push(sup.finish());
        report.records.push(prec.finish());
    }
    Ok(())
}

fn bijection(catalog: &Catalog, r: u32) -> Result<ClaimRecord> {
    let n = 2 * r + 2;
    let p = Params::new(n, r)?;
    let direct: BTreeSet<Vec<RSet>> = search_maximal_lcifs(n, r)?
        .iter()
        .map(|f| f.members().copied().collect())
        .collect();
    let mut claim = Claim::new(
        "bijection",
        vec![("r", r.to_string()), ("n", n.to_string())],
    );
    let mut via_catalog = BTreeSet::new();
    for a in catalog.antichains() {
        let members: Vec<RSet> = materialize(a.generators(), p)?.members().copied().collect();
        claim.check(direct.contains(&members), || {
            format!("gens={a} not found by direct search")
        });
        via_catalog.insert(members);
    }
    claim.check(
        direct.len() == via_catalog.len() && via_catalog.len() == catalog.len(),
        || {
            format!(
                "direct search found {}, catalog has {}",
                direct.len(),
                catalog.len()
            )
        },
    );
    claim.detail = Some(format!("families={}", direct.len()));
    Ok(claim.finish())
}

fn compression(r: u32, rng: &mut ChaCha8Rng, report: &mut Report) -> Result<()> {
    const FAMILIES: usize = 1000;
    let params = || vec![("r", r.to_string()), ("families", FAMILIES.to_string())];
    let mut each = Claim::new("compression", params());
    let mut full = Claim::new("fully-compress", params());
    for _ in 0..FAMILIES {
        let n = rng.gen_range(2 * r..=10.max(2 * r));
        let f = random_intersecting_family(rng, n, r)?;
        for i in 1..n {
            for j in i + 1..=n {
                let g = f.compress(i, j)?;
                each.check(g.is_intersecting() && g.len() == f.len(), || {
                    format!("n={n} i={i} j={j} family={{{f}}}")
                });
            }
        }
        let (g, trace) = f.fully_compress_traced();
        let decreasing = trace.windows(2).all(|w| w[1] < w[0]);
        full.check(
            decreasing && g.is_left_compressed() && g.is_intersecting() && g.len() == f.len(),
            || format!("n={n} family={{{f}}}"),
        );
    }
    report.records.push(each.finish());
    report.records.push(full.finish());
    Ok(())
}

/// Convenience wrapper over a fresh [`Verifier`].
pub fn verify_suite(
    store: &CatalogStore,
    suite: Suite,
    rs: Option<RangeInclusive<u32>>,
    ns: Option<RangeInclusive<u32>>,
) -> Result<Report> {
    Verifier::new(store).run(suite, rs, ns)
}
