use std::collections::BTreeSet;

use bitprobe_core::tables::{table_a_len, table_b_len, table_c_len};
use bitprobe_core::{
    a_index, assign_blocks, b_index, build, c_index, group_members, query, BlockAddr, ElementAddr,
    Params, TableId,
};
use proptest::prelude::*;

#[test]
fn table_indices_are_bijective() {
    for b in 2..=6 {
        let p = Params::new(b).unwrap();
        let g = p.grid_side();

        let a: BTreeSet<u64> = (1..=b)
            .flat_map(|s| (0..g).flat_map(move |y| (0..g).map(move |x| BlockAddr::new(s, x, y))))
            .map(|blk| a_index(&p, &blk))
            .collect();
        assert_eq!(a, (0..table_a_len(&p)).collect());

        let c: BTreeSet<u64> = (0..g)
            .flat_map(|y| (0..g).flat_map(move |x| (0..b).map(move |i| (x, y, i))))
            .map(|(x, y, i)| c_index(&p, x, y, i))
            .collect();
        assert_eq!(c, (0..table_c_len(&p)).collect());

        let mut seen = BTreeSet::new();
        for l in p.all_lines() {
            for i in 0..b {
                assert!(seen.insert(b_index(&p, &l, i)));
            }
        }
        assert_eq!(seen, (0..table_b_len(&p)).collect());
    }
}

#[test]
fn table_sizes_closed_form() {
    for b in 2..=16u64 {
        let p = Params::new(b).unwrap();
        assert_eq!(table_a_len(&p), b.pow(5));
        assert_eq!(table_c_len(&p), b.pow(5));
        let g1 = b * b - 1;
        assert_eq!(table_b_len(&p), b * (g1 * b * (b + 3) / 2 + b));
    }
}

fn params() -> impl Strategy<Value = Params> {
    (2u64..=5).prop_map(|b| Params::new(b).unwrap())
}

fn params_and_set(max: usize) -> impl Strategy<Value = (Params, Vec<u64>)> {
    params().prop_flat_map(move |p| {
        let m = p.universe_size();
        (Just(p), prop::collection::vec(0..m, 0..=max))
    })
}

proptest! {
    #[test]
    fn ordinal_roundtrip((p, n) in params().prop_flat_map(|p| (Just(p), 0..p.universe_size()))) {
        let e = p.element_from_ordinal(n).unwrap();
        prop_assert!(p.check_element(&e).is_ok());
        prop_assert_eq!(p.element_to_ordinal(&e).unwrap(), n);
        // the block number is the A index
        prop_assert_eq!(a_index(&p, &e.block), n / p.b());
    }

    #[test]
    fn queries_match_membership((p, set) in params_and_set(4)) {
        let elems: Vec<ElementAddr> = set.iter().map(|&n| p.element_from_ordinal(n).unwrap()).collect();
        let st = build(&p, &elems).unwrap();
        for &n in &set {
            let out = query(&st, &p.element_from_ordinal(n).unwrap()).unwrap();
            prop_assert!(out.member);
            prop_assert!(out.trace.follows_decision_tree());
        }
        // every element sharing a block, line or coordinate with a member
        for &n in &set {
            let e = p.element_from_ordinal(n).unwrap();
            let line = e.block.line();
            let near = p.line_points(&line)
                .map(|(x, y)| BlockAddr::new(e.block.s, x, y))
                .chain((1..=p.b()).map(|s| BlockAddr::new(s, e.block.x, e.block.y)));
            for blk in near {
                for i in 0..p.b() {
                    let f = ElementAddr { block: blk, i };
                    let want = elems.contains(&f);
                    prop_assert_eq!(query(&st, &f).unwrap().member, want);
                }
            }
        }
    }

    #[test]
    fn build_is_order_and_duplicate_insensitive((p, set) in params_and_set(4)) {
        let elems: Vec<ElementAddr> = set.iter().map(|&n| p.element_from_ordinal(n).unwrap()).collect();
        let mut shuffled: Vec<ElementAddr> = elems.iter().rev().copied().collect();
        shuffled.extend(elems.iter().take(2));
        prop_assert_eq!(build(&p, &elems).unwrap(), build(&p, &shuffled).unwrap());
    }

    #[test]
    fn assignment_ignores_member_counts((p, set) in params_and_set(4), extra in 0u64..8) {
        let elems: Vec<ElementAddr> = set.iter().map(|&n| p.element_from_ordinal(n).unwrap()).collect();
        let blocks: Vec<BlockAddr> = group_members(&p, &elems).unwrap().into_keys().collect();
        // one member per block, varying the index
        let sparse: Vec<ElementAddr> = blocks.iter().map(|&block| ElementAddr { block, i: extra % p.b() }).collect();
        let sparse_blocks: Vec<BlockAddr> = group_members(&p, &sparse).unwrap().into_keys().collect();
        prop_assert_eq!(&blocks, &sparse_blocks);
        let asg = assign_blocks(&p, &blocks).unwrap();
        prop_assert!(asg.is_valid(&blocks));

        let st_full = build(&p, &elems).unwrap();
        let st_sparse = build(&p, &sparse).unwrap();
        // same routing in A, whatever each block holds
        prop_assert_eq!(st_full.table(TableId::A), st_sparse.table(TableId::A));
    }
}

/// One member per block for a hand-built configuration of each label, every
/// element of the universe queried.
#[test]
fn every_case_label_answers_correctly() {
    use bitprobe_core::{classify, CaseLabel};
    let b = |s, x, y| BlockAddr::new(s, x, y);
    let configs = [
        (
            CaseLabel::I,
            vec![b(1, 0, 0), b(2, 5, 1), b(3, 2, 7), b(1, 8, 3)],
        ),
        (
            CaseLabel::II,
            vec![b(2, 1, 1), b(2, 3, 2), b(2, 5, 3), b(2, 7, 4)],
        ),
        (
            CaseLabel::IIIA,
            vec![b(1, 0, 0), b(1, 1, 1), b(1, 2, 2), b(2, 0, 0)],
        ),
        (
            CaseLabel::IIIB,
            vec![b(1, 1, 0), b(1, 2, 1), b(2, 2, 1), b(2, 4, 2)],
        ),
        (
            CaseLabel::IVA,
            vec![b(1, 0, 0), b(1, 3, 3), b(2, 0, 0), b(3, 0, 0)],
        ),
        (
            CaseLabel::IVB,
            vec![b(1, 0, 0), b(1, 3, 3), b(2, 0, 0), b(2, 3, 3)],
        ),
        (
            CaseLabel::IVCi,
            vec![b(1, 0, 0), b(1, 3, 3), b(2, 0, 0), b(2, 2, 2)],
        ),
        (
            CaseLabel::IVCii,
            vec![b(1, 0, 0), b(1, 3, 3), b(2, 0, 0), b(2, 3, 1)],
        ),
        (
            CaseLabel::IVD,
            vec![b(1, 0, 0), b(1, 3, 3), b(2, 1, 0), b(2, 1, 1)],
        ),
    ];
    let p = Params::new(3).unwrap();
    for (label, blocks) in configs {
        assert_eq!(classify(&blocks), label);
        for i in 0..p.b() {
            let set: Vec<ElementAddr> = blocks
                .iter()
                .map(|&block| ElementAddr { block, i })
                .collect();
            let st = build(&p, &set).unwrap();
            for n in 0..p.universe_size() {
                let e = p.element_from_ordinal(n).unwrap();
                assert_eq!(
                    query(&st, &e).unwrap().member,
                    set.contains(&e),
                    "{label} {e:?}"
                );
            }
        }
    }
}
