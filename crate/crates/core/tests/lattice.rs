use biram::groups::{close_group, reduce_generators, GroupAction};
use biram::lattice::{
    check_bicayley_axioms, expected_count, generator_system, is_scalar, level, neighbor_related,
    GeneratorSystem, LambdaGroup, LatticeKind, LatticeSpec, Mode,
};
use biram::bigraph::schreier_from_system;
use std::collections::{BTreeSet, HashSet};

const INERT: [(LatticeKind, u32); 4] = [
    (LatticeKind::Eisenstein, 2),
    (LatticeKind::Eisenstein, 5),
    (LatticeKind::Gauss, 3),
    (LatticeKind::Mumford, 3),
];

fn system(kind: LatticeKind, p: u32) -> GeneratorSystem {
    generator_system(kind, p, Mode::InertBigraph).unwrap()
}

#[test]
fn inert_generators_are_exact_similitudes() {
    for (kind, p) in INERT {
        let spec = LatticeSpec::new(kind);
        let s = system(kind, p);
        let pp = p as usize;
        assert_eq!(s.scaled_gens.len(), pp * (pp * pp * pp + 1), "{kind:?} p={p}");
        assert_eq!(s.scaled_gens.len(), expected_count(p, Mode::InertBigraph));
        let distinct: HashSet<_> = s.scaled_gens.iter().collect();
        assert_eq!(distinct.len(), s.scaled_gens.len());
        for t in &s.scaled_gens {
            assert!(spec.is_similitude(t, (p * p) as i64), "{kind:?} p={p}: {t:?}");
            assert!(!is_scalar(t));
            assert!(spec.congruence(t));
            assert_eq!(level(t, p as i64, 1), 2);
        }
    }
}

#[test]
fn partition_shape_and_inverse_maps() {
    for (kind, p) in INERT {
        let s = system(kind, p);
        let pp = p as usize;
        assert_eq!(s.classes.len(), pp * pp * pp + 1);
        assert!(s.classes.iter().all(|c| c.len() == pp));
        for i in 0..s.scaled_gens.len() {
            assert_eq!(s.inverse[s.inverse[i]], i, "inverse is an involution");
        }
        for (ci, c) in s.classes.iter().enumerate() {
            assert!(c.iter().all(|&t| s.class_of[t] == ci));
        }
    }
}

#[test]
fn inverse_matches_projective_inverse() {
    for (kind, p) in INERT {
        let spec = LatticeSpec::new(kind);
        let s = system(kind, p);
        for (i, t) in s.scaled_gens.iter().enumerate() {
            let inv = spec.projective_inverse(t);
            assert_eq!(inv, spec.canonical(&s.scaled_gens[s.inverse[i]]));
        }
    }
}

#[test]
fn bicayley_axioms_hold_in_lambda() {
    for (kind, p) in INERT {
        let spec = LatticeSpec::new(kind);
        let s = system(kind, p);
        let group = LambdaGroup { spec: &spec };
        let elems: Vec<_> = s.scaled_gens.iter().map(|t| spec.canonical(t)).collect();
        assert_eq!(check_bicayley_axioms(&group, &elems, &s.classes), Ok(()), "{kind:?} p={p}");
    }
}

#[test]
fn neighbor_relation_is_an_equivalence() {
    let spec = LatticeSpec::new(LatticeKind::Mumford);
    let s = system(LatticeKind::Mumford, 3);
    let n = s.scaled_gens.len();
    let rel = |a: usize, b: usize| a == b || neighbor_related(&spec, 3, &s.scaled_gens[a], &s.scaled_gens[b]);
    for a in 0..n {
        for b in 0..n {
            assert_eq!(rel(a, b), rel(b, a));
            assert_eq!(rel(a, b), s.class_of[a] == s.class_of[b]);
        }
    }
}

/// The identity and s, s' meet at one right vertex of the Cayley bigraph exactly
/// when s and s' lie in the same class.
#[test]
fn partition_agrees_with_common_right_neighbours() {
    let spec = LatticeSpec::new(LatticeKind::Eisenstein);
    let s = system(LatticeKind::Eisenstein, 2);
    let rg = reduce_generators(&spec, &s, 5).unwrap();
    assert!(rg.injective);
    let cl = close_group(&rg, 2_000_000).unwrap();
    let g = schreier_from_system(&GroupAction::regular(&cl), &s).unwrap();
    let elem_of_gen: Vec<usize> = (0..s.scaled_gens.len()).map(|i| cl.right_mul(0, i)).collect();
    let mut from_graph: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for e in g.edges_at_left(0) {
        let r = g.edge_right[e] as usize;
        let others: BTreeSet<usize> = g.right_members[r]
            .iter()
            .map(|&f| g.left_of(f as usize))
            .filter(|&x| x != 0)
            .map(|x| elem_of_gen.iter().position(|&y| y == x).unwrap())
            .collect();
        from_graph.insert(others);
    }
    let from_lattice: BTreeSet<BTreeSet<usize>> =
        s.classes.iter().map(|c| c.iter().copied().collect()).collect();
    assert_eq!(from_graph, from_lattice);
}

#[test]
fn split_colours_pair_with_inverses() {
    let s = generator_system(LatticeKind::Eisenstein, 7, Mode::SplitComplex).unwrap();
    let spec = LatticeSpec::new(LatticeKind::Eisenstein);
    assert_eq!(s.scaled_gens.len(), 114);
    assert_eq!(s.color_class(1).len(), 57);
    assert_eq!(s.color_class(2).len(), 57);
    for (i, t) in s.scaled_gens.iter().enumerate() {
        assert!(spec.is_similitude(t, 7));
        assert_eq!(s.colors[s.inverse[i]], 3 - s.colors[i]);
    }
}

#[test]
fn split_prime_rejected_in_inert_mode() {
    assert!(generator_system(LatticeKind::Eisenstein, 7, Mode::InertBigraph).is_err());
    assert!(generator_system(LatticeKind::Mumford, 2, Mode::InertBigraph).is_err());
    assert!(generator_system(LatticeKind::Gauss, 2, Mode::InertBigraph).is_err());
}
