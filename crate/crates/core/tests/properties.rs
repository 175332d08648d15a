//! Property tests of the matroid oracles and wrappers on small random
//! matroids, checked against exhaustive enumeration.

use proptest::prelude::*;

use omi::matroid::{
    contract, find_circuit, in_span, rank, restrict, AnyMatroid, GraphicMatroid, PartitionMatroid,
    UniformMatroid,
};
use omi::{Element, ElementSet, Matroid};

const MAX_M: usize = 8;

fn subset(mask: u32, m: usize) -> Vec<Element> {
    (0..m).filter(|i| mask & (1 << i) != 0).map(Element).collect()
}

fn indep(m: &AnyMatroid, mask: u32) -> bool {
    m.is_independent(&subset(mask, m.ground_size())).unwrap()
}

fn partition() -> impl Strategy<Value = AnyMatroid> {
    (1..=MAX_M, 1..=4usize)
        .prop_flat_map(|(m, classes)| {
            (
                prop::collection::vec(0..classes, m),
                prop::collection::vec(1..=3usize, classes),
            )
        })
        .prop_map(|(class_of, caps)| PartitionMatroid::new(class_of, caps).unwrap().into())
}

fn graphic() -> impl Strategy<Value = AnyMatroid> {
    (2..=5usize, 1..=MAX_M)
        .prop_flat_map(|(n, m)| (Just(n), prop::collection::vec((0..n, 0..n), m)))
        .prop_map(|(n, edges)| GraphicMatroid::new(n, edges).unwrap().into())
}

fn uniform() -> impl Strategy<Value = AnyMatroid> {
    (1..=MAX_M)
        .prop_flat_map(|m| (Just(m), 0..=m))
        .prop_map(|(m, k)| UniformMatroid::new(m, k).into())
}

fn any_matroid() -> impl Strategy<Value = AnyMatroid> {
    prop_oneof![partition(), graphic(), uniform()]
}

fn with_masks() -> impl Strategy<Value = (AnyMatroid, u32, u32)> {
    any_matroid().prop_flat_map(|m| {
        let full = (1u32 << m.ground_size()) - 1;
        (Just(m), 0..=full, 0..=full)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn independence_axioms(m in any_matroid()) {
        let n = m.ground_size();
        let table: Vec<bool> = (0..1u32 << n).map(|mask| indep(&m, mask)).collect();
        prop_assert!(table[0]);
        for a in 0..1u32 << n {
            if !table[a as usize] {
                continue;
            }
            for i in 0..n {
                if a & (1 << i) != 0 {
                    prop_assert!(table[(a & !(1 << i)) as usize], "hereditary at {a:b}");
                }
            }
            for b in 0..1u32 << n {
                if table[b as usize] && b.count_ones() > a.count_ones() {
                    let grows = (0..n).any(|i| b & !a & (1 << i) != 0 && table[(a | 1 << i) as usize]);
                    prop_assert!(grows, "exchange fails for {a:b} and {b:b}");
                }
            }
        }
    }

    #[test]
    fn rank_is_submodular_and_bounded((m, a, b) in with_masks()) {
        let n = m.ground_size();
        let r = |mask: u32| rank(&m, &subset(mask, n)).unwrap();
        prop_assert!(r(a) <= a.count_ones() as usize);
        prop_assert!(r(a & b) <= r(a));
        prop_assert!(r(a) + r(b) >= r(a | b) + r(a & b));
    }

    #[test]
    fn circuits_are_minimal((m, a, _) in with_masks()) {
        let n = m.ground_size();
        // grow an independent set inside a, then test every outside element
        let mut st = m.incremental();
        for e in subset(a, n) {
            st.try_add(e);
        }
        let base: ElementSet = st.members().iter().copied().collect();
        drop(st);
        for e in (0..n).map(Element).filter(|&e| !base.contains(e)) {
            let spanned = in_span(&m, base.as_slice(), e).unwrap();
            match find_circuit(&m, &base, e) {
                Ok(c) => {
                    prop_assert!(spanned);
                    prop_assert!(c.contains(e));
                    prop_assert!(!m.is_independent(c.as_slice()).unwrap());
                    for x in c.iter() {
                        let rest: Vec<Element> = c.iter().filter(|&y| y != x).collect();
                        prop_assert!(m.is_independent(&rest).unwrap(), "circuit {c:?} not minimal at {x:?}");
                    }
                }
                Err(_) => prop_assert!(!spanned),
            }
        }
    }

    #[test]
    fn contraction_and_restriction_match_definitions((m, a, b) in with_masks()) {
        let n = m.ground_size();
        let mut st = m.incremental();
        for e in subset(a, n) {
            st.try_add(e);
        }
        let t: ElementSet = st.members().iter().copied().collect();
        drop(st);
        let c = contract(&m, &t).unwrap();
        let x: Vec<Element> = subset(b, n).into_iter().filter(|&e| !t.contains(e)).collect();
        let mut joined = x.clone();
        joined.extend(t.iter());
        prop_assert_eq!(c.is_independent(&x).unwrap(), m.is_independent(&joined).unwrap());
        prop_assert!(t.iter().all(|e| !c.contains(e)));

        let keep: ElementSet = subset(b, n).into_iter().collect();
        let r = restrict(&m, &keep).unwrap();
        let inside: Vec<Element> = subset(a & b, n);
        prop_assert_eq!(r.is_independent(&inside).unwrap(), m.is_independent(&inside).unwrap());
        let outside = (0..n).map(Element).find(|&e| !keep.contains(e));
        if let Some(e) = outside {
            prop_assert!(!r.contains(e));
            prop_assert!(r.is_independent(&[e]).is_err());
        }
    }

    #[test]
    fn call_counts_are_exact((m, a, b) in with_masks()) {
        let n = m.ground_size();
        let before = m.calls();
        for mask in [a, b, a | b] {
            m.is_independent(&subset(mask, n)).unwrap();
        }
        prop_assert_eq!(m.calls() - before, 3);
        let before = m.calls();
        let mut st = m.incremental();
        for e in subset(a, n) {
            st.can_add(e);
        }
        drop(st);
        prop_assert_eq!(m.calls() - before, u64::from(a.count_ones()));
    }

    #[test]
    fn incremental_agrees_with_set_oracle((m, a, _) in with_masks()) {
        let n = m.ground_size();
        let mut st = m.incremental();
        let mut members: Vec<Element> = Vec::new();
        for e in subset(a, n) {
            let mut with = members.clone();
            with.push(e);
            let expect = m.is_independent(&with).unwrap();
            prop_assert_eq!(st.try_add(e), expect);
            if expect {
                members.push(e);
            }
            prop_assert_eq!(st.members(), members.as_slice());
        }
    }
}
