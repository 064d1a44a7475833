use proptest::prelude::*;

use sftkit::lattice::{block_distance, sublattice_points, Block, Coord, Sublattice};
use sftkit::sft::{
    count_patterns, count_patterns_backtracking, format_pattern, is_locally_valid, load_sft, parse_pattern,
    save_sft, AxisRule, CompletionProblem, Pattern, SearchBudget, SftDefinition, SymbolTable,
};
use sftkit::structure::{count_periodic_points, PeriodSpec};
use sftkit::wire::build_wire_shift;

fn sft_strategy(max_dim: usize, max_symbols: usize) -> impl Strategy<Value = SftDefinition> {
    (1..=max_dim, 1..=max_symbols).prop_flat_map(|(d, n)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), n * n), d).prop_map(move |tables| {
            let rules = tables
                .iter()
                .map(|t| AxisRule::from_fn(n, |a, b| t[a as usize * n + b as usize]))
                .collect();
            SftDefinition::new("random", SymbolTable::numbered(n).unwrap(), rules).unwrap()
        })
    })
}

fn block_strategy(d: usize, max_extent: usize) -> impl Strategy<Value = Block> {
    (
        prop::collection::vec(-5i64..5, d),
        prop::collection::vec(1..=max_extent, d),
    )
        .prop_map(|(lo, ext)| Block::with_origin(Coord::new(lo), &ext).unwrap())
}

fn pattern_on(block: Block, n: usize) -> impl Strategy<Value = Pattern> {
    let len = block.len();
    prop::collection::vec(0..n as u8, len).prop_map(move |cells| Pattern::new(block.clone(), cells).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn definition_document_round_trips(x in sft_strategy(3, 5)) {
        let text = save_sft(&x);
        let back = load_sft(&text).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(save_sft(&back), text);
    }

    #[test]
    fn local_validity_is_translation_invariant(
        (x, p) in sft_strategy(2, 3).prop_flat_map(|x| {
            let d = x.dim();
            let n = x.alphabet_size();
            (Just(x), block_strategy(d, 3).prop_flat_map(move |b| pattern_on(b, n)))
        }),
        shift in prop::collection::vec(-20i64..20, 2),
    ) {
        let t = Coord::new(shift[..x.dim()].to_vec());
        prop_assert_eq!(is_locally_valid(&x, &p).unwrap(), is_locally_valid(&x, &p.translate(&t)).unwrap());
    }

    #[test]
    fn pattern_files_round_trip(
        (x, p) in sft_strategy(3, 4).prop_flat_map(|x| {
            let d = x.dim();
            let n = x.alphabet_size();
            (Just(x), block_strategy(d, 3).prop_flat_map(move |b| pattern_on(b, n)))
        })
    ) {
        let text = format_pattern(&p, x.symbols()).unwrap();
        prop_assert_eq!(parse_pattern(&text, x.symbols()).unwrap(), p);
    }

    #[test]
    fn frontier_and_backtracking_counts_agree(
        (x, b) in sft_strategy(2, 4).prop_flat_map(|x| {
            let d = x.dim();
            (Just(x), block_strategy(d, 4))
        })
    ) {
        prop_assert_eq!(count_patterns(&x, &b).unwrap(), count_patterns_backtracking(&x, &b).unwrap());
    }

    #[test]
    fn counts_are_submultiplicative(x in sft_strategy(2, 3), a in 1usize..4, b in 1usize..4, h in 1usize..3) {
        let shape = |w: usize| {
            let mut e = vec![w];
            e.extend(std::iter::repeat_n(h, x.dim() - 1));
            Block::from_extents(&e).unwrap()
        };
        let whole = count_patterns(&x, &shape(a + b)).unwrap();
        let parts = count_patterns(&x, &shape(a)).unwrap() * count_patterns(&x, &shape(b)).unwrap();
        prop_assert!(whole <= parts);
    }

    #[test]
    fn block_distance_is_symmetric_and_translation_invariant(
        b1 in block_strategy(2, 4),
        b2 in block_strategy(2, 4),
        t in prop::collection::vec(-9i64..9, 2),
    ) {
        let d12 = block_distance(&b1, &b2).unwrap();
        prop_assert_eq!(d12, block_distance(&b2, &b1).unwrap());
        let t = Coord::new(t);
        prop_assert_eq!(d12, block_distance(&b1.translate(&t), &b2.translate(&t)).unwrap());
        let brute = b1
            .iter()
            .flat_map(|p| b2.iter().map(move |q| p.sub(&q).linf_norm()))
            .min()
            .unwrap();
        prop_assert_eq!(d12, brute);
    }

    #[test]
    fn sublattice_points_match_membership(
        g in (-3i64..=3, -3i64..=3).prop_filter("primitive", |(a, b)| num_gcd(*a, *b) == 1),
        window in block_strategy(2, 7),
    ) {
        let l = Sublattice::from_generators(vec![Coord::from([g.0, g.1])]).unwrap();
        let mut listed = sublattice_points(&l, &window).unwrap();
        listed.sort();
        let mut brute: Vec<Coord> = window.iter().filter(|c| l.contains(c)).collect();
        brute.sort();
        prop_assert_eq!(listed, brute);
    }

    #[test]
    fn periodic_counts_grow_with_multiples(x in sft_strategy(2, 3), p in prop::collection::vec(1usize..3, 2), m in prop::collection::vec(1usize..3, 2)) {
        prop_assume!(x.dim() == 2);
        let q: Vec<usize> = p.iter().zip(&m).map(|(a, b)| a * b).collect();
        let (p, q) = (PeriodSpec::new(p).unwrap(), PeriodSpec::new(q).unwrap());
        prop_assert!(p.divides(&q));
        prop_assert!(count_periodic_points(&x, &p).unwrap() <= count_periodic_points(&x, &q).unwrap());
    }

    #[test]
    fn rotating_wire_patterns_keeps_them_valid(k in 1usize..4, w in 1usize..5, h in 1usize..5, seed in any::<u64>()) {
        let ws = build_wire_shift(k).unwrap();
        let block = Block::from_extents(&[w, h]).unwrap();
        let p = CompletionProblem::new(ws.sft(), &block).unwrap()
            .solve_random(SearchBudget::default(), seed)
            .found()
            .unwrap();
        let r = ws.rotate_pattern(&p).unwrap();
        prop_assert_eq!(r.block().extents(), vec![h, w]);
        prop_assert!(is_locally_valid(ws.sft(), &r).unwrap());
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}
