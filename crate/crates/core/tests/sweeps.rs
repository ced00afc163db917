//! Exhaustive sweeps over small leg triples.

use std::collections::BTreeSet;

use ptvertex_core::boxconfig::{brute_force_submodules, enumerate_components, validate_configuration};
use ptvertex_core::characters::{con_parity_pair, edge_characters, redistributed_vertex_character};
use ptvertex_core::localization::cy_specialization_check;
use ptvertex_core::partitions::{LegTriple, Partition2D};

fn triples(max_total: u32, max_nonempty: usize) -> Vec<LegTriple> {
    let mut out = Vec::new();
    for a in 0..=max_total {
        for b in 0..=max_total - a {
            for c in 0..=max_total - a - b {
                for p in Partition2D::all_of_size(a) {
                    for q in Partition2D::all_of_size(b) {
                        for r in Partition2D::all_of_size(c) {
                            let l = LegTriple::new(p.clone(), q.clone(), r.clone());
                            if l.nonempty_count() <= max_nonempty {
                                out.push(l);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn enumerator_matches_submodule_search() {
    for legs in triples(4, 3) {
        let mut ours: Vec<(u32, u32)> =
            enumerate_components(&legs, 4).iter().map(|r| (r.length, r.dimension)).collect();
        ours.sort();
        let census = brute_force_submodules(&legs, 4);
        assert_eq!(ours, census.families, "legs {}", legs);
        assert!(!census.non_axis_forcing, "legs {}", legs);
    }
}

#[test]
fn records_are_closed_and_graded() {
    for legs in triples(3, 3) {
        let recs = enumerate_components(&legs, 4);
        assert_eq!(recs.iter().filter(|r| r.length == 0).count(), 1, "legs {}", legs);
        for r in &recs {
            assert_eq!(r.euler_char, 1u64 << r.dimension);
            assert!(validate_configuration(&r.config).is_valid(), "legs {}", legs);
        }
    }
}

#[test]
fn enumeration_commutes_with_rotation() {
    for legs in triples(3, 3) {
        let rotated: BTreeSet<_> = enumerate_components(&legs, 3).iter().map(|r| r.config.rotate()).collect();
        let direct: BTreeSet<_> = enumerate_components(&legs.rotate(), 3).into_iter().map(|r| r.config).collect();
        assert_eq!(rotated, direct, "legs {}", legs);
    }
}

#[test]
fn vertex_characters_are_finite() {
    for legs in triples(4, 3) {
        for r in enumerate_components(&legs, 3) {
            redistributed_vertex_character(&r).unwrap_or_else(|e| panic!("legs {}: {}", legs, e));
        }
    }
}

#[test]
fn edge_characters_are_finite() {
    for n in 0..=5 {
        for mu in Partition2D::all_of_size(n) {
            for m in -4..=4 {
                for mp in -4..=4 {
                    edge_characters(&mu, (m, mp)).unwrap_or_else(|e| panic!("{} {:?}: {}", mu, (m, mp), e));
                }
            }
        }
    }
}

#[test]
fn con_is_even_and_stable() {
    for legs in triples(3, 2) {
        for r in enumerate_components(&legs, 6) {
            let (a, b) = con_parity_pair(&r);
            assert_eq!(a.rem_euclid(2), 0, "legs {} {:?}", legs, r.config);
            assert_eq!(a.rem_euclid(2), b.rem_euclid(2), "legs {}", legs);
        }
    }
}

#[test]
fn cy_specialization_small_legs() {
    for legs in triples(3, 2) {
        let r = cy_specialization_check(&legs, 4, false).unwrap();
        assert!(r.matches(), "legs {} {:?}", legs, r.mismatches);
    }
}

#[test]
fn sweep_covers_every_triple() {
    // Coefficient of x^4 in P(x)^3 / (1 - x), with P = 1 + x + 2x^2 + 3x^3 + 5x^4.
    let p = [1u32, 1, 2, 3, 5];
    let mut want = 0;
    for a in 0..5 {
        for b in 0..5 - a {
            for c in 0..5 - a - b {
                want += p[a] * p[b] * p[c];
            }
        }
    }
    assert_eq!(triples(4, 3).len() as u32, want);
}
