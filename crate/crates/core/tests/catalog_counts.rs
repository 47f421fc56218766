use std::collections::BTreeSet;

use lcif::family::{materialize, search_maximal_lcifs};
use lcif::mlcif::enumerate_mlcif;
use lcif::{Family, Params};

fn member_masks(f: &Family) -> Vec<u64> {
    let mut v: Vec<u64> = f.members().map(|a| a.mask()).collect();
    v.sort_unstable();
    v
}

/// Families generated by the catalog must be exactly the families found by
/// the direct down-set search, compared member by member.
fn agrees_with_search(r: u32) -> usize {
    let catalog = enumerate_mlcif(r, false).unwrap();
    let p = Params::new(2 * r, r).unwrap();
    let from_catalog: BTreeSet<Vec<u64>> = catalog
        .antichains()
        .map(|g| member_masks(&materialize(g.generators(), p).unwrap()))
        .collect();
    assert_eq!(
        from_catalog.len(),
        catalog.len(),
        "distinct antichains gave equal families"
    );
    let from_search: BTreeSet<Vec<u64>> = search_maximal_lcifs(2 * r, r)
        .unwrap()
        .iter()
        .map(member_masks)
        .collect();
    assert_eq!(from_catalog, from_search, "r={r}");
    catalog.len()
}

#[test]
fn catalog_sizes_small() {
    assert_eq!(agrees_with_search(2), 2);
    assert_eq!(agrees_with_search(3), 6);
    assert_eq!(agrees_with_search(4), 72);
}

#[test]
fn catalog_size_r5() {
    assert_eq!(agrees_with_search(5), 37145);
}

#[test]
fn every_catalog_family_is_maximal_at_2r() {
    for r in 2..=4 {
        let p = Params::new(2 * r, r).unwrap();
        for g in enumerate_mlcif(r, false).unwrap().antichains() {
            let f = materialize(g.generators(), p).unwrap();
            assert!(f.is_intersecting() && f.is_left_compressed());
            assert!(f.is_maximal_intersecting().unwrap(), "{g}");
            assert_eq!(f.len() as u64 * 2, binom(2 * r, r), "{g}");
        }
    }
}

fn binom(n: u32, k: u32) -> u64 {
    (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1))
}
