//! Shared catalog of small synthetic spectra for the integration suites.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use cotilt::{BassSpec, Ring, SpectrumPoset};

pub fn synthetic(
    labels: &[&str],
    pairs: &[(&str, &str)],
    bass: Option<BassSpec>,
) -> Ring {
    let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    let pairs: Vec<(String, String)> = pairs
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    Ring::synthetic(SpectrumPoset::new(labels, &pairs, None, None, bass).unwrap())
}

pub fn gorenstein(labels: &[&str], pairs: &[(&str, &str)]) -> Ring {
    synthetic(labels, pairs, Some(BassSpec::GorensteinHeights))
}

/// Explicit Bass data naming nodes per degree.
pub fn explicit_bass(
    labels: &[&str],
    pairs: &[(&str, &str)],
    bass: &[(usize, &[&str])],
) -> Ring {
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let map: BTreeMap<usize, BTreeSet<usize>> = bass
        .iter()
        .map(|(deg, nodes)| (*deg, nodes.iter().map(|l| index[l]).collect()))
        .collect();
    synthetic(labels, pairs, Some(BassSpec::Explicit(map)))
}

/// A chain 0 < p1 < .. < p_{k-1} on k nodes.
pub fn chain(k: usize) -> Ring {
    let labels: Vec<String> = (0..k).map(|i| format!("p{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let pairs: Vec<(&str, &str)> = (0..k - 1).map(|i| (refs[i], refs[i + 1])).collect();
    gorenstein(&refs, &pairs)
}

/// One minimal prime under k maximal ideals.
pub fn dedekind(k: usize) -> Ring {
    let mut labels = vec!["0".to_string()];
    labels.extend((1..=k).map(|i| format!("m{i}")));
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let pairs: Vec<(&str, &str)> = (1..=k).map(|i| ("0", refs[i])).collect();
    gorenstein(&refs, &pairs)
}

/// 0 < a, b < m: one maximal ideal over two incomparable height-one primes.
pub fn diamond() -> Ring {
    gorenstein(
        &["0", "a", "b", "m"],
        &[("0", "a"), ("0", "b"), ("a", "m"), ("b", "m")],
    )
}

/// 0 < a, b < m1, m2: two maximal ideals sharing both middle primes.
pub fn double_diamond() -> Ring {
    gorenstein(
        &["0", "a", "b", "m1", "m2"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("a", "m1"),
            ("b", "m1"),
            ("a", "m2"),
            ("b", "m2"),
        ],
    )
}

/// 0 < q < m1 and 0 < q < m2: one shared height-one prime.
pub fn shared_middle() -> Ring {
    gorenstein(&["0", "q", "m1", "m2"], &[("0", "q"), ("q", "m1"), ("q", "m2")])
}

/// Seven nodes: two height-one branches each carrying two maximal ideals.
pub fn two_branch_tree() -> Ring {
    gorenstein(
        &["0", "a", "b", "m1", "m2", "m3", "m4"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("a", "m1"),
            ("a", "m2"),
            ("b", "m3"),
            ("b", "m4"),
        ],
    )
}

/// An antichain of k maximal-and-minimal nodes with no required primes, so
/// every subset tuple that nests is a characteristic sequence.
pub fn free_antichain(k: usize) -> Ring {
    let labels: Vec<String> = (0..k).map(|i| format!("m{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    explicit_bass(&refs, &[], &[])
}

/// The catalog driven by the exhaustive round-trip and counting suites.
pub fn catalog() -> Vec<(String, Ring)> {
    vec![
        ("chain-2".into(), chain(2)),
        ("chain-3".into(), chain(3)),
        ("chain-4".into(), chain(4)),
        ("antichain-gorenstein-3".into(), {
            gorenstein(&["m0", "m1", "m2"], &[])
        }),
        ("free-antichain-3".into(), free_antichain(3)),
        ("free-antichain-4".into(), free_antichain(4)),
        ("dedekind-2".into(), dedekind(2)),
        ("dedekind-3".into(), dedekind(3)),
        ("dedekind-4".into(), dedekind(4)),
        ("dedekind-7".into(), dedekind(7)),
        ("diamond".into(), diamond()),
        ("double-diamond".into(), double_diamond()),
        ("shared-middle".into(), shared_middle()),
        ("two-branch-tree".into(), two_branch_tree()),
        ("diamond-free-bass".into(), {
            explicit_bass(
                &["0", "a", "b", "m"],
                &[("0", "a"), ("0", "b"), ("a", "m"), ("b", "m")],
                &[(0, &["0"])],
            )
        }),
    ]
}
