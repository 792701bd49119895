use num_rational::BigRational;
use proptest::prelude::*;

use nichols_gk::admissibility::{gkdim_space, Contributions, Verdict};
use nichols_gk::frontend::{parse_spaces, print_spec, report};
use nichols_gk::realization::principal_realization;
use nichols_gk::scalar::{FieldTag, MonoScalar};
use nichols_gk::space::{braiding_matrix, natural_field, BraidedSpaceSpec, PairData, Sign};
use nichols_gk::symmetrizer::{m_sigma, m_sigma_word, omega, Mode, Permutation};

const LABELS: [&str; 6] = ["-1", "zeta(3)", "zeta(3)^2", "zeta(4)", "1", "q"];
const EDGES: [&str; 5] = ["-1", "zeta(3)", "zeta(3)^2", "zeta(4)^3", "q^-1"];
const GHOSTS: [(i64, i64); 4] = [(1, 1), (2, 1), (3, 1), (3, 2)];

#[derive(Clone, Debug)]
struct Shape {
    blocks: Vec<bool>,
    points: Vec<usize>,
    edges: Vec<(usize, usize, usize)>,
    ghosts: Vec<(usize, usize, usize)>,
}

fn arb_shape() -> impl Strategy<Value = Shape> {
    (
        prop::collection::vec(any::<bool>(), 0..3),
        prop::collection::vec(0..LABELS.len(), 1..5),
        prop::collection::vec((0usize..4, 0usize..4, 0..EDGES.len()), 0..4),
        prop::collection::vec((0usize..2, 0usize..4, 0..GHOSTS.len()), 0..3),
    )
        .prop_map(|(blocks, points, edges, ghosts)| Shape {
            blocks,
            points,
            edges,
            ghosts,
        })
}

fn m(s: &str) -> MonoScalar {
    s.parse().unwrap()
}

/// The space of a shape, with every id prefixed. Repeated or degenerate
/// edges are dropped, as are ghost edges to missing blocks or points.
fn build(shape: &Shape, prefix: &str) -> BraidedSpaceSpec {
    let mut s = BraidedSpaceSpec::new(format!("{prefix}space"));
    for (k, plus) in shape.blocks.iter().enumerate() {
        s = s.block(&format!("{prefix}b{k}"), if *plus { Sign::Plus } else { Sign::Minus });
    }
    for (k, l) in shape.points.iter().enumerate() {
        s = s.point(&format!("{prefix}p{k}"), m(LABELS[*l]));
    }
    let n = shape.points.len();
    let mut used = Vec::new();
    for &(a, b, l) in &shape.edges {
        let (a, b) = (a % n, b % n);
        if a == b || used.contains(&(a.min(b), a.max(b))) {
            continue;
        }
        used.push((a.min(b), a.max(b)));
        s = s.pair(PairData::qtilde(&format!("{prefix}p{a}"), &format!("{prefix}p{b}"), m(EDGES[l])));
    }
    let mut linked = Vec::new();
    for &(b, p, g) in &shape.ghosts {
        if b >= shape.blocks.len() || linked.contains(&(b, p % n)) {
            continue;
        }
        linked.push((b, p % n));
        let (num, den) = GHOSTS[g];
        s = s.ghost_edge(
            &format!("{prefix}b{b}"),
            &format!("{prefix}p{}", p % n),
            BigRational::new(num.into(), den.into()),
        );
    }
    s
}

fn verdict(s: &BraidedSpaceSpec) -> Verdict {
    gkdim_space(s, &Contributions::default()).unwrap()
}

fn union(a: &BraidedSpaceSpec, b: &BraidedSpaceSpec) -> BraidedSpaceSpec {
    let mut s = a.clone();
    s.name = "union".into();
    s.blocks.extend(b.blocks.iter().cloned());
    s.points.extend(b.points.iter().cloned());
    s.pairs.extend(b.pairs.iter().cloned());
    s
}

fn reversed(s: &BraidedSpaceSpec) -> BraidedSpaceSpec {
    let mut r = s.clone();
    r.blocks.reverse();
    r.points.reverse();
    r.pairs.reverse();
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gkdim_adds_over_disjoint_unions(x in arb_shape(), y in arb_shape()) {
        let (a, b) = (build(&x, "l"), build(&y, "r"));
        let (va, vb) = (verdict(&a), verdict(&b));
        let vu = verdict(&union(&a, &b));
        prop_assert_eq!(vu.total, va.total + vb.total);
        prop_assert_eq!(vu.components.len(), va.components.len() + vb.components.len());
        prop_assert_eq!(vu.is_admissible(), va.is_admissible() && vb.is_admissible());
    }

    #[test]
    fn classification_ignores_declaration_order(x in arb_shape()) {
        let s = build(&x, "");
        let (v, w) = (verdict(&s), verdict(&reversed(&s)));
        prop_assert_eq!(v.total, w.total);
        prop_assert_eq!(v.clauses(), w.clauses());
        prop_assert_eq!(v.is_admissible(), w.is_admissible());
    }

    #[test]
    fn printing_round_trips(x in arb_shape()) {
        let s = build(&x, "");
        let text = print_spec(&s);
        let back = parse_spaces(&text).unwrap().remove(0);
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(print_spec(&back), text);
    }

    #[test]
    fn reports_are_byte_stable(x in arb_shape()) {
        let s = build(&x, "");
        let text = report(&verdict(&s));
        prop_assert_eq!(report(&verdict(&s.clone())), text.clone());
        prop_assert!(serde_json::from_str::<serde_json::Value>(&text).is_ok());
    }

    #[test]
    fn realization_rebuilds_the_braiding(x in arb_shape()) {
        let s = build(&x, "");
        let r = principal_realization(&s).unwrap();
        let tag = natural_field(&s);
        prop_assume!(tag.is_ok());
        let tag = tag.unwrap();
        let rebuilt = r.rebuild_braiding(tag).unwrap();
        prop_assert_eq!(rebuilt.matrix(), braiding_matrix(&s, tag).unwrap().matrix());
    }

    #[test]
    fn symmetrizer_recursion_matches_literal_sum(labels in prop::collection::vec(0usize..4, 1..3), e in 0..EDGES.len() - 1) {
        let shape = Shape { blocks: vec![], points: labels, edges: vec![(0, 1, e)], ghosts: vec![] };
        let op = braiding_matrix(&build(&shape, ""), FieldTag::Cyclo(12)).unwrap();
        for n in 0..=3 {
            prop_assert_eq!(omega(&op, n, Mode::Recursive).unwrap(), omega(&op, n, Mode::Literal).unwrap());
        }
    }

    #[test]
    fn reduced_words_agree(plus in any::<bool>(), label in 0usize..4) {
        let shape = Shape { blocks: vec![plus], points: vec![label], edges: vec![], ghosts: vec![(0, 0, 0)] };
        let op = braiding_matrix(&build(&shape, ""), FieldTag::Cyclo(12)).unwrap();
        for p in Permutation::all(3) {
            let reference = m_sigma(&op, 3, &p).unwrap();
            for w in p.reduced_words() {
                prop_assert_eq!(&m_sigma_word(&op, 3, &w).unwrap(), &reference);
            }
        }
    }
}
