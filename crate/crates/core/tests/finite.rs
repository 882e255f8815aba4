mod common;

use common::{brute_force_principal, fixture, generator_fixtures, least_labels, product};
use congkit::finite::fixtures::{monoid_from_table_file, parse_table, serialize_table};
use congkit::finite::{
    all_pairs, congruence_lattice, distinct_principal_congruences, families, froidure_pin, join_partitions,
    monoid_from_elements, principal_congruence, CongruenceKind, CongruencePartition, FiniteMonoid, Transformation,
};
use congkit::Word;

const KINDS: [CongruenceKind; 3] = [CongruenceKind::Right, CongruenceKind::Left, CongruenceKind::TwoSided];

fn fp(gens: Vec<Transformation>) -> FiniteMonoid {
    froidure_pin(&gens, None).unwrap()
}

#[test]
fn sizes() {
    assert_eq!(fp(vec![Transformation::identity(4)]).size(), 1);
    assert_eq!(fp(families::full_transformation_monoid(3)).size(), 27);
    assert_eq!(fp(families::order_preserving_monoid(4)).size(), 35);
    assert_eq!(monoid_from_elements(&families::all_matrices(2, 3)).unwrap().size(), 512);
    assert!(froidure_pin(&families::full_transformation_monoid(4), Some(100)).is_err());
}

#[test]
fn principal_congruence_examples() {
    let t3 = fp(families::full_transformation_monoid(3));
    for kind in KINDS {
        assert_eq!(
            principal_congruence(&t3, (5, 5), kind),
            CongruencePartition::trivial(27)
        );
    }
    // {1, a} with a idempotent
    let m = fp(vec![common::transformation(vec![0, 0])]);
    assert_eq!(m.size(), 2);
    assert_eq!(
        principal_congruence(&m, (0, 1), CongruenceKind::Right),
        CongruencePartition::universal(2)
    );
    let trivial = monoid_from_table_file("1\n0\n", true).unwrap();
    assert!(distinct_principal_congruences(&trivial, &all_pairs(&trivial), CongruenceKind::Right).is_empty());
}

#[test]
fn published_principal_counts() {
    let count = |m: &FiniteMonoid| distinct_principal_congruences(m, &all_pairs(m), CongruenceKind::Right).len();
    assert_eq!(count(&fp(families::catalan_monoid(4))), 67);
    assert_eq!(count(&fp(families::catalan_monoid(5))), 641);
    assert_eq!(count(&fp(families::order_preserving_monoid(3))), 18);
}

#[test]
fn published_lattice_sizes() {
    let t3 = fp(families::full_transformation_monoid(3));
    assert_eq!(
        congruence_lattice(&t3, CongruenceKind::TwoSided, true).unwrap().len(),
        7
    );
    let p2 = monoid_from_table_file(&fixture("p2.table"), true).unwrap();
    assert_eq!(
        congruence_lattice(&p2, CongruenceKind::TwoSided, false).unwrap().len(),
        13
    );
}

#[test]
fn join_partitions_examples() {
    let p = CongruencePartition::from_labels(&[0, 0, 1, 1]);
    let q = CongruencePartition::from_labels(&[0, 1, 0, 1]);
    assert_eq!(join_partitions(&p, &p).unwrap(), p);
    assert_eq!(join_partitions(&p, &CongruencePartition::trivial(4)).unwrap(), p);
    assert_eq!(join_partitions(&p, &q).unwrap(), CongruencePartition::universal(4));
    assert!(join_partitions(&p, &CongruencePartition::trivial(3)).is_err());
}

#[test]
fn principal_congruences_match_brute_force() {
    let monoids = [
        fp(families::catalan_monoid(3)),
        fp(families::full_transformation_monoid(2)),
        fp(families::symmetric_group(3)),
        fp(families::order_preserving_monoid(2)),
    ];
    for m in &monoids {
        for kind in KINDS {
            for (x, y) in all_pairs(m) {
                let got = principal_congruence(m, (x, y), kind);
                assert_eq!(got.least(), least_labels(&brute_force_principal(m, (x, y), kind)));
            }
        }
    }
}

#[test]
fn principal_congruences_are_compatible_on_their_side() {
    for (name, m) in generator_fixtures() {
        if m.size() > 40 {
            continue;
        }
        for kind in KINDS {
            for pair in all_pairs(&m).into_iter().step_by(7) {
                let c = principal_congruence(&m, pair, kind);
                assert!(c.same_class(pair.0, pair.1));
                for x in 0..m.size() as u32 {
                    for a in 0..m.generator_count() as u32 {
                        let y = c.least()[x as usize];
                        if kind != CongruenceKind::Left {
                            assert!(c.same_class(m.right_mul(x, a), m.right_mul(y, a)), "{name}");
                        }
                        if kind != CongruenceKind::Right {
                            assert!(c.same_class(m.left_mul(x, a), m.left_mul(y, a)), "{name}");
                        }
                    }
                }
            }
        }
    }
}

/// Layers of words in short-lex order; the first word reaching each
/// element must be its stored normal form.
#[test]
fn words_are_shortlex_minimal() {
    let monoids = [
        fp(families::catalan_monoid(4)),
        fp(families::order_preserving_monoid(3)),
        fp(families::symmetric_group(4)),
        fp(families::full_transformation_monoid(3)),
    ];
    for m in monoids {
        assert!(m.size() <= 50);
        assert!(m.word(0).is_empty());
        let k = m.generator_count() as u32;
        let max_len = (0..m.size() as u32).map(|x| m.word(x).len()).max().unwrap();
        let mut first: Vec<Option<Word>> = vec![None; m.size()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..=max_len {
            for w in &layer {
                let x = m.evaluate(w) as usize;
                if first[x].is_none() {
                    first[x] = Some(w.clone());
                }
            }
            layer = layer
                .iter()
                .flat_map(|w| (0..k).map(move |a| w.iter().copied().chain([a]).collect()))
                .collect();
        }
        for x in 0..m.size() as u32 {
            assert_eq!(first[x as usize].as_deref(), Some(m.word(x)));
            assert_eq!(m.evaluate(m.word(x)), x);
        }
    }
}

#[test]
fn presentation_relations_hold() {
    for (name, m) in generator_fixtures() {
        for (u, v) in m.presentation().relations() {
            assert_eq!(m.evaluate(u), m.evaluate(v), "{name}");
        }
    }
}

#[test]
fn multiplication_agrees_with_words() {
    let m = fp(families::symmetric_inverse_monoid(3));
    for x in 0..m.size() as u32 {
        for y in 0..m.size() as u32 {
            assert_eq!(m.product(x, y), product(&m, x, y));
        }
    }
}

#[test]
fn table_round_trip() {
    let m = fp(families::catalan_monoid(4));
    let text = serialize_table(&m);
    let back = monoid_from_table_file(&text, true).unwrap();
    assert_eq!(back.size(), m.size());
    assert_eq!(serialize_table(&back), text);
    assert!(parse_table("2\n0 1\n1\n").is_err());
    // not associative: a row that breaks (xy)z = x(yz)
    assert!(monoid_from_table_file("3\n0 1 2\n1 2 0\n2 1 0\n", true).is_err());
}
