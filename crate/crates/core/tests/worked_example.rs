//! The seven-map commutative semigroup with a unique idempotent of rank 3.

use transemi::tree::{
    build_tree, element_order, format_word, nullify_with, s_partition, words, LeafMatching,
};
use transemi::{SemigroupSet, Transformation};

const MAPS: [[usize; 7]; 7] = [
    [1, 7, 4, 4, 4, 4, 7],
    [4, 1, 7, 7, 7, 7, 1],
    [7, 4, 1, 1, 1, 1, 4],
    [1, 7, 4, 4, 4, 3, 7],
    [7, 3, 1, 1, 1, 1, 4],
    [1, 7, 4, 4, 4, 5, 7],
    [7, 5, 1, 1, 1, 1, 4],
];

fn example() -> SemigroupSet<Transformation> {
    let maps = MAPS
        .iter()
        .map(|m| Transformation::from_one_based(m).unwrap())
        .collect();
    SemigroupSet::from_elements(7, maps).unwrap()
}

fn one_based(points: &[usize]) -> Vec<usize> {
    points.iter().map(|x| x + 1).collect()
}

fn display(words: &[Vec<usize>]) -> Vec<String> {
    let mut out: Vec<String> = words.iter().map(|w| format_word(w)).collect();
    out.sort();
    out
}

#[test]
fn is_a_commutative_semigroup_with_one_idempotent() {
    let s = example();
    assert!(s.is_closed());
    assert!(s.is_commutative());
    assert_eq!(
        s.idempotents(),
        vec![Transformation::from_one_based(&MAPS[0]).unwrap()]
    );
    assert_eq!(one_based(&s.image_union()), vec![1, 3, 4, 5, 7]);
}

#[test]
fn restriction_to_the_idempotent_image_is_cyclic_of_order_three() {
    let g = example().restrict_set(&[0, 3, 6]).unwrap();
    assert_eq!(g.len(), 3);
    assert!(g.is_group());
    assert_eq!(
        g.classify_small_abelian_group(),
        Some(transemi::GroupClass::C3)
    );
}

#[test]
fn layering_order_and_words() {
    let s = example();
    let p = s_partition(&s).unwrap();
    let blocks: Vec<Vec<usize>> = p.blocks.iter().map(|b| one_based(b)).collect();
    assert_eq!(blocks, vec![vec![1, 4, 7], vec![3, 5], vec![2, 6]]);
    let order = element_order(&p);
    assert_eq!(one_based(&order), vec![1, 4, 7, 3, 5, 2, 6]);
    assert_eq!(
        display(&words(&s, &order)),
        vec!["1474473", "1474474", "1474475", "4717717", "7141131", "7141141", "7141151"]
    );
}

#[test]
fn tree_shape() {
    let s = example();
    let order = element_order(&s_partition(&s).unwrap());
    let tree = build_tree(&s, &order).unwrap();
    assert_eq!(tree.leaf_count(), 7);
    assert_eq!(display(&tree.branchings()), vec!["147447", "71411", "ε"]);
    let profile = tree.level_profile();
    assert_eq!(profile.trunk_length, 0);
    let linear: Vec<usize> = (0..7)
        .filter(|&i| profile.kinds[i] == transemi::tree::LevelKind::Linear)
        .map(|i| order[i] + 1)
        .collect();
    assert_eq!(linear, vec![4, 7, 3, 5]);
    assert!(tree.check_label_invariant(3).is_ok());
    assert!(tree.check_linear_level_invariant(3).is_ok());
}

const EXPECTED_OUTPUT: [&str; 7] = [
    "1111111", "1111114", "1111117", "1111411", "1114111", "1114141", "1114171",
];

/// The replacement on the window 1,4,7,3 (window indices 0..4): the zero
/// and the two maps sending the last, resp. the third, window point to the
/// second.
fn published_replacement() -> SemigroupSet<Transformation> {
    let maps = [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
        .iter()
        .map(|m| Transformation::new(m.to_vec()).unwrap())
        .collect();
    SemigroupSet::from_elements(4, maps).unwrap()
}

#[test]
fn nullify_with_published_replacement() {
    let s = example();
    let m = published_replacement();
    let report = nullify_with(&s, Some(&m), LeafMatching::Lexicographic).unwrap();
    assert_eq!(one_based(&report.window), vec![1, 4, 7, 3]);
    assert_eq!(display(&report.prefixes), vec!["147", "471", "714"]);
    let words: Vec<Vec<usize>> = report
        .output
        .iter()
        .map(|b| transemi::tree::word_of(b, &report.order))
        .collect();
    assert_eq!(display(&words), EXPECTED_OUTPUT);
    assert_eq!(report.output.len(), 7);
    assert_eq!(
        report.output.is_null().unwrap(),
        Some(Transformation::constant(7, 0).unwrap())
    );
}

#[test]
fn default_replacement_coincides_with_published_one() {
    let s = example();
    let report = nullify_with(&s, None, LeafMatching::Lexicographic).unwrap();
    assert_eq!(report.replacement, published_replacement());
    let words: Vec<Vec<usize>> = report
        .output
        .iter()
        .map(|b| transemi::tree::word_of(b, &report.order))
        .collect();
    assert_eq!(display(&words), EXPECTED_OUTPUT);
}

#[test]
fn spliced_level_kinds_do_not_depend_on_matching() {
    let s = example();
    let a = nullify_with(&s, None, LeafMatching::Lexicographic).unwrap();
    let b = nullify_with(&s, None, LeafMatching::Reversed).unwrap();
    assert_eq!(a.spliced_profile.kinds, b.spliced_profile.kinds);
    assert_eq!(a.spliced_profile.trunk_length, 1);
    assert_eq!(a.contracted.level_profile().trunk_length, 3);
}
