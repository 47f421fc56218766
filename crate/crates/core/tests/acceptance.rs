//! Acceptance criteria, one PASS/FAIL line each. Counts are recomputed here by
//! brute force over all r-subsets wherever that is feasible, so a criterion
//! does not rest on the formula engine alone.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcif::census::eval_count;
use lcif::family::{materialize, oracle_count, random_intersecting_family, search_maximal_lcifs};
use lcif::goodness::theorem_main_predicate;
use lcif::verify::{Status, Suite, Verifier};
use lcif::{CatalogStore, Classifier, GenAntichain, Params, RSet, XSet};

type Check = std::result::Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn FnOnce() -> Check + 'a>);

// ---- brute force ----

/// All `r`-subsets of `[n]` as masks (element k at bit k-1), increasing.
fn rsets(n: u32, r: u32) -> Vec<u64> {
    let mut out = Vec::new();
    if r == 0 || r > n {
        return out;
    }
    let mut m: u64 = (1 << r) - 1;
    while m < 1 << n {
        out.push(m);
        let c = m & m.wrapping_neg();
        let s = m + c;
        m = (((m ^ s) >> 2) / c) | s;
    }
    out
}

fn elems(m: u64) -> Vec<u32> {
    (0..64)
        .filter(|&i| m >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

fn mask(xs: &[u32]) -> u64 {
    xs.iter().fold(0, |acc, &k| acc | 1 << (k - 1))
}

/// `a` is generated by `g`: the first |g| elements of `a` sit positionwise
/// at or below those of `g`.
fn generated(a: &[u32], g: &[u32]) -> bool {
    a.len() >= g.len() && a.iter().zip(g).all(|(x, y)| x <= y)
}

fn gen_lists(g: &GenAntichain) -> Vec<Vec<u32>> {
    g.generators().iter().map(|x| x.as_set().to_vec()).collect()
}

/// Members of the family generated by `gens` in `[n]^(r)`.
fn brute_family(gens: &[Vec<u32>], n: u32, r: u32) -> Vec<u64> {
    rsets(n, r)
        .into_iter()
        .filter(|&a| {
            let a = elems(a);
            gens.iter().any(|g| generated(&a, g))
        })
        .collect()
}

fn meeting(family: &[u64], x: u64) -> u64 {
    family.iter().filter(|&&a| a & x != 0).count() as u64
}

fn binom(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// Bitmap over the index of `[n]^(r)`.
fn bitmap(family: &[u64], index: &std::collections::HashMap<u64, usize>, words: usize) -> Vec<u64> {
    let mut b = vec![0u64; words];
    for a in family {
        let i = index[a];
        b[i / 64] |= 1 << (i % 64);
    }
    b
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn classifier(store: &CatalogStore, r: u32) -> Arc<Classifier> {
    Arc::new(Classifier::new(store.get(r).unwrap()).unwrap())
}

// ---- criteria ----

fn c1_catalog() -> Check {
    let expected = |lits: &[&str]| -> BTreeSet<Vec<Vec<u32>>> {
        lits.iter()
            .map(|a| {
                a.split(',')
                    .map(|g| g.chars().map(|c| c.to_digit(10).unwrap()).collect())
                    .collect()
            })
            .collect()
    };
    let mut timings = Vec::new();
    for (r, want) in [
        (
            3,
            expected(&["1", "23", "345", "14,234", "13,235,145", "12,245"]),
        ),
        (2, expected(&["1", "23"])),
    ] {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_lcif"))
            .args(["--structured", "enumerate", "--r", &r.to_string()])
            .env_remove("LCIF_CACHE_DIR")
            .output()
            .map_err(|e| e.to_string())?;
        let took = start.elapsed();
        ensure(out.status.success(), || {
            format!("r={r}: exit {:?}", out.status)
        })?;
        ensure(took < Duration::from_secs(1), || {
            format!("r={r}: took {took:?}")
        })?;
        timings.push(format!("r={r}:{:.0}ms", took.as_secs_f64() * 1e3));
        let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
        let listed: Vec<Vec<Vec<u32>>> = text
            .lines()
            .filter_map(|l| l.split("; ").find_map(|kv| kv.strip_prefix("gens=")))
            .map(|gens| {
                gens.split('|')
                    .map(|g| {
                        let mut v: Vec<u32> = g.split(',').map(|k| k.parse().unwrap()).collect();
                        v.sort_unstable();
                        v
                    })
                    .collect()
            })
            .collect();
        let found: BTreeSet<Vec<Vec<u32>>> = listed
            .iter()
            .map(|a| {
                let mut a = a.clone();
                a.sort();
                a
            })
            .collect();
        let want: BTreeSet<Vec<Vec<u32>>> = want
            .into_iter()
            .map(|mut a| {
                a.sort();
                a
            })
            .collect();
        ensure(listed.len() == want.len() && found == want, || {
            format!("r={r}: listed {listed:?}")
        })?;
        // Canonical order: fewer generators first, then lexicographic.
        let keyed: Vec<(usize, &Vec<Vec<u32>>)> = listed.iter().map(|a| (a.len(), a)).collect();
        ensure(keyed.windows(2).all(|w| w[0] < w[1]), || {
            format!("r={r}: not in canonical order")
        })?;
    }
    Ok(format!("antichains exact; {}", timings.join(" ")))
}

fn c2_minimal_good(store: &CatalogStore) -> Check {
    let (r, n) = (5, 10);
    let c = classifier(store, r);
    let p = Params::new(n, r).unwrap();
    let mut found = Vec::new();
    for (size, want) in [(2, vec![7, 10]), (3, vec![5, 8, 10])] {
        let got: Vec<Vec<u32>> = c
            .minimal_good(p, Some(size), false)
            .map_err(|e| e.to_string())?
            .iter()
            .map(RSet::to_vec)
            .collect();
        ensure(got == [want.clone()], || {
            format!("size {size}: got {got:?}")
        })?;
        found.push(format!("{want:?}"));
    }

    // Independent recomputation: goodness of every 2- and 3-subset of
    // [2, 10] from brute-force counts over all catalog families.
    let sets = rsets(n, r);
    let index = sets.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let words = sets.len().div_ceil(64);
    let families: Vec<Vec<u64>> = c
        .catalog()
        .antichains()
        .map(|g| bitmap(&brute_family(&gen_lists(g), n, r), &index, words))
        .collect();
    let star = bitmap(&brute_family(&[vec![1]], n, r), &index, words);
    let count = |fam: &[u64], x: &[u64]| -> u32 {
        fam.iter().zip(x).map(|(a, b)| (a & b).count_ones()).sum()
    };
    for (size, want) in [(2u32, vec![7, 10]), (3, vec![5, 8, 10])] {
        let mut good = Vec::new();
        for x in rsets(n - 1, size) {
            let x = x << 1;
            let meets: Vec<u64> = sets.iter().filter(|&&a| a & x != 0).copied().collect();
            let xb = bitmap(&meets, &index, words);
            let s = count(&star, &xb);
            if families.iter().all(|f| count(f, &xb) <= s) {
                good.push(elems(x));
            }
        }
        let below = |y: &Vec<u32>, x: &Vec<u32>| y != x && y.iter().zip(x).all(|(a, b)| a <= b);
        let minimal: Vec<&Vec<u32>> = good
            .iter()
            .filter(|x| !good.iter().any(|y| below(y, x)))
            .collect();
        ensure(minimal == [&want], || {
            format!("brute force size {size}: minimal {minimal:?}")
        })?;
    }
    Ok(format!(
        "{} unique; confirmed by brute force over {} families",
        found.join(" "),
        families.len()
    ))
}

fn c3_thresholds(store: &CatalogStore) -> Check {
    let mut v = Verifier::new(store);
    let report = v
        .run(Suite::Thresholds, Some(2..=5), None)
        .map_err(|e| e.to_string())?;
    let mut checked = 0;
    let mut binding = Vec::new();
    for rec in &report.records {
        ensure(rec.status == Status::Pass, || rec.to_string())?;
        checked += rec.checked;
        if let Some(d) = &rec.detail {
            let r = &rec.params.iter().find(|(k, _)| *k == "r").unwrap().1;
            binding.push(format!(
                "r={r}:{}",
                d.trim_start_matches("max_binding_threshold=")
            ));
        }
    }
    ensure(report.records.len() == 8, || {
        format!("{} records", report.records.len())
    })?;

    // Eventual classification agrees with the predicate for r in {3, 4}.
    let main = v
        .run(Suite::Main, Some(3..=4), None)
        .map_err(|e| e.to_string())?;
    ensure(main.passed(), || {
        main.failures()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    })?;
    for r in 3..=4 {
        let c = v.classifier(r).map_err(|e| e.to_string())?;
        for inside in (0..1u64 << (2 * r - 1)).map(|m| m << 1) {
            for o in 0..=2 {
                let Ok(x) = XSet::new(inside, o, r) else {
                    continue;
                };
                if x.len() > r as usize {
                    continue;
                }
                let e = c.classify_eventual(&x).map_err(|e| e.to_string())?;
                let want = theorem_main_predicate(&x, r).map_err(|e| e.to_string())?;
                ensure(e.eventually_good == want, || {
                    format!("r={r} X={x}: eventual {}", e.eventually_good)
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} checks; binding thresholds {}",
        binding.join(" ")
    ))
}

fn c4_counterexamples() -> Check {
    let mut checked = 0;
    let star = GenAntichain::star();
    let fam = GenAntichain::parse("2,3", 3).unwrap();
    for r in 3..=5 {
        for n in 2 * r..=2 * r + 6 {
            let p = Params::new(n, r).unwrap();
            let star_members = brute_family(&[vec![1]], n, r);
            let fam_members = brute_family(&[vec![2, 3]], n, r);
            let lib = |g: &GenAntichain, x: &[u32]| -> u64 {
                let xs = XSet::from_raw(&RSet::new(x).unwrap(), r).unwrap();
                eval_count(g.generators(), &xs, p)
                    .unwrap()
                    .try_into()
                    .unwrap()
            };
            for k in r + 2..=n {
                let x = [2, 3, k];
                let s_sum = binom(n - 2, r - 2) + binom(n - 3, r - 2) + binom(n - 4, r - 2);
                let f_sum = binom(n - 2, r - 2) + 2 * binom(n - 3, r - 2);
                let (s, f) = (lib(&star, &x), lib(&fam, &x));
                let (sb, fb) = (
                    meeting(&star_members, mask(&x)),
                    meeting(&fam_members, mask(&x)),
                );
                ensure(
                    s == s_sum && sb == s_sum && f == f_sum && fb == f_sum && f > s,
                    || {
                        format!(
                            "r={r} n={n} X=23{k}: star {s}/{sb}/{s_sum} family {f}/{fb}/{f_sum}"
                        )
                    },
                )?;

                let x = [3, k];
                let s_sum = binom(n - 2, r - 2) + binom(n - 3, r - 2);
                let f_sum = s_sum + binom(n - 4, r - 3);
                let (s, f) = (lib(&star, &x), lib(&fam, &x));
                let (sb, fb) = (
                    meeting(&star_members, mask(&x)),
                    meeting(&fam_members, mask(&x)),
                );
                ensure(
                    s == s_sum && sb == s_sum && f == f_sum && fb == f_sum && f > s,
                    || {
                        format!(
                            "r={r} n={n} X=3,{k}: star {s}/{sb}/{s_sum} family {f}/{fb}/{f_sum}"
                        )
                    },
                )?;
                checked += 2;
            }
        }
    }
    Ok(format!(
        "{checked} (r, n, X) instances: formula = sum = brute force, family > star"
    ))
}

fn random_x(rng: &mut ChaCha8Rng, n: u32) -> RSet {
    loop {
        let m = rng.gen::<u64>() & (((1u64 << (n - 1)) - 1) << 1);
        if m != 0 {
            return RSet::from_mask(m).unwrap();
        }
    }
}

fn c5_oracle(store: &CatalogStore) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_00c5);
    let mut checked = 0u64;
    let mut distinct = BTreeSet::new();
    let mut run = |r: u32,
                   entries: Vec<GenAntichain>,
                   ns: std::ops::RangeInclusive<u32>,
                   per: usize|
     -> Check {
        for g in &entries {
            let lists = gen_lists(g);
            for n in ns.clone() {
                let p = Params::new(n, r).unwrap();
                let members = brute_family(&lists, n, r);
                for _ in 0..per {
                    let x = random_x(&mut rng, n);
                    let xs = XSet::from_raw(&x, r).map_err(|e| e.to_string())?;
                    distinct.insert((r, n, x.mask()));
                    let formula: u64 = eval_count(g.generators(), &xs, p)
                        .unwrap()
                        .try_into()
                        .unwrap();
                    let oracle = oracle_count(g.generators(), p, &x).map_err(|e| e.to_string())?;
                    let brute = meeting(&members, x.mask());
                    ensure(formula == oracle && oracle == brute, || {
                        format!("r={r} n={n} gens={g} X={x}: formula {formula} oracle {oracle} brute {brute}")
                    })?;
                    checked += 1;
                }
            }
        }
        Ok(String::new())
    };
    let c3 = store.get(3).unwrap();
    run(3, c3.antichains().cloned().collect(), 6..=12, 200)?;
    let c4 = store.get(4).unwrap();
    let mut pick = ChaCha8Rng::seed_from_u64(0x5eed_00c5 + 4);
    let mut idx = rand::seq::index::sample(&mut pick, c4.len(), 20).into_vec();
    idx.sort_unstable();
    let sampled: Vec<GenAntichain> = idx
        .iter()
        .map(|&i| c4.entries()[i].antichain.clone())
        .collect();
    run(4, sampled, 8..=12, 50)?;
    Ok(format!(
        "{checked} comparisons ({} distinct X), formula = oracle = brute force",
        distinct.len()
    ))
}

fn c6_bijection(store: &CatalogStore) -> Check {
    let mut sizes = Vec::new();
    for r in 2..=4 {
        let n = 2 * r + 2;
        let direct: BTreeSet<Vec<u64>> = search_maximal_lcifs(n, r)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|f| {
                let mut v: Vec<u64> = f.members().map(RSet::mask).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let catalog = store.get(r).unwrap();
        let p = Params::new(n, r).unwrap();
        let mut via = BTreeSet::new();
        for g in catalog.antichains() {
            let mut lib: Vec<u64> = materialize(g.generators(), p)
                .unwrap()
                .members()
                .map(RSet::mask)
                .collect();
            lib.sort_unstable();
            ensure(lib == brute_family(&gen_lists(g), n, r), || {
                format!("r={r}: materialize({g}) differs")
            })?;
            via.insert(lib);
        }
        ensure(via.len() == catalog.len() && via == direct, || {
            format!("r={r} n={n}: direct {} catalog {}", direct.len(), via.len())
        })?;
        sizes.push(format!("r={r}:{}", direct.len()));
    }
    Ok(format!(
        "direct search = catalog at n=2r+2 ({})",
        sizes.join(" ")
    ))
}

fn intersecting(f: &[u64]) -> bool {
    f.iter()
        .enumerate()
        .all(|(i, a)| f[i..].iter().all(|b| a & b != 0))
}

fn left_compressed(f: &[u64]) -> bool {
    let set: BTreeSet<u64> = f.iter().copied().collect();
    f.iter().all(|&a| {
        elems(a).into_iter().all(|j| {
            (1..j)
                .filter(|&i| a >> (i - 1) & 1 == 0)
                .all(|i| set.contains(&(a & !(1 << (j - 1)) | 1 << (i - 1))))
        })
    })
}

fn c7_properties(store: &CatalogStore) -> Check {
    // Compression.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_00c7);
    let mut pairs = 0u64;
    for t in 0..1000 {
        let r = 2 + t % 3;
        let n = rng.gen_range(2 * r..=10);
        let f = random_intersecting_family(&mut rng, n, r).map_err(|e| e.to_string())?;
        let masks: Vec<u64> = f.members().map(RSet::mask).collect();
        ensure(intersecting(&masks), || {
            format!("generator produced a non-intersecting family {f}")
        })?;
        for i in 1..n {
            for j in i + 1..=n {
                let g: Vec<u64> = f
                    .compress(i, j)
                    .unwrap()
                    .members()
                    .map(RSet::mask)
                    .collect();
                ensure(intersecting(&g) && g.len() == masks.len(), || {
                    format!("C_{i}{j} on {f}")
                })?;
                pairs += 1;
            }
        }
        let (g, trace) = f.fully_compress_traced();
        let gm: Vec<u64> = g.members().map(RSet::mask).collect();
        ensure(trace.windows(2).all(|w| w[1] < w[0]), || {
            format!("potential {trace:?} on {f}")
        })?;
        ensure(
            intersecting(&gm) && left_compressed(&gm) && gm.len() == masks.len(),
            || format!("fully_compress on {f}"),
        )?;
    }

    // EKR over every catalog family.
    let mut ekr = 0u64;
    for r in 2..=5 {
        let c = classifier(store, r);
        for n in [2 * r, 2 * r + 2] {
            let p = Params::new(n, r).unwrap();
            let star = binom(n - 1, r - 1);
            let lib = c.family_sizes(p).map_err(|e| e.to_string())?;
            for (g, size) in c.catalog().antichains().zip(lib) {
                let brute = brute_family(&gen_lists(g), n, r).len() as u64;
                let ok = size == brute.into()
                    && if g.is_star() {
                        brute == star
                    } else if n > 2 * r {
                        brute < star
                    } else {
                        brute <= star
                    };
                ensure(ok, || {
                    format!("r={r} n={n} gens={g}: size {size} brute {brute} star {star}")
                })?;
                ekr += 1;
            }
        }
    }

    // Hilton-Milner beats the star by exactly one on every X in [2, r+1].
    let mut hm = 0u64;
    for r in 3..=5 {
        let c = classifier(store, r);
        let gens = GenAntichain::hilton_milner(r).unwrap();
        for n in 2 * r..=2 * r + 4 {
            let p = Params::new(n, r).unwrap();
            let sets = rsets(n, r);
            let head = mask(&(2..=r + 1).collect::<Vec<_>>());
            let family: Vec<u64> = sets
                .iter()
                .copied()
                .filter(|&a| (a & 1 == 1 && a & head != 0) || a == head)
                .collect();
            let star: Vec<u64> = sets.iter().copied().filter(|&a| a & 1 == 1).collect();
            ensure(family == brute_family(&gen_lists(&gens), n, r), || {
                format!("r={r} n={n}: HM generators")
            })?;
            for x in (1..1u64 << r).map(|m| m << 1) {
                let (f, s) = (meeting(&family, x), meeting(&star, x));
                ensure(f == s + 1, || {
                    format!("r={r} n={n} X={:?}: {f} vs star {s}", elems(x))
                })?;
                let xs = XSet::from_raw(&RSet::from_mask(x).unwrap(), r).unwrap();
                let v = c.classify_at(&xs, p, false).map_err(|e| e.to_string())?;
                let w = v.witnesses.iter().find(|w| w.antichain == gens);
                ensure(
                    w.is_some_and(|w| w.family_count == f.into() && w.star_count == s.into()),
                    || format!("r={r} n={n} X={:?}: classifier witness {w:?}", elems(x)),
                )?;
                hm += 1;
            }
        }
    }
    Ok(format!(
        "{pairs} compressions over 1000 families; {ekr} EKR sizes; {hm} HM instances"
    ))
}

fn main() -> ExitCode {
    let store = CatalogStore::in_memory();
    let criteria: [Criterion<'_>; 7] = [
        (
            "C1 catalog reproduction",
            Duration::from_secs(2),
            Box::new(c1_catalog),
        ),
        (
            "C2 minimal good sets r=5 n=10",
            Duration::from_secs(300),
            Box::new(|| c2_minimal_good(&store)),
        ),
        (
            "C3 threshold n >= 2r+2",
            Duration::from_secs(600),
            Box::new(|| c3_thresholds(&store)),
        ),
        (
            "C4 counterexample formulas",
            Duration::from_secs(600),
            Box::new(c4_counterexamples),
        ),
        (
            "C5 oracle equivalence",
            Duration::from_secs(600),
            Box::new(|| c5_oracle(&store)),
        ),
        (
            "C6 description bijection",
            Duration::from_secs(600),
            Box::new(|| c6_bijection(&store)),
        ),
        (
            "C7 property suites",
            Duration::from_secs(600),
            Box::new(|| c7_properties(&store)),
        ),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            })
            .and_then(|d| {
                let t = start.elapsed();
                if t <= limit {
                    Ok(d)
                } else {
                    Err(format!("took {t:?}, limit {limit:?}"))
                }
            });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(d) => println!("PASS  {name}  [{secs:.2}s]  {d}"),
            Err(e) => {
                failed += 1;
                println!("FAIL  {name}  [{secs:.2}s]  {e}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
